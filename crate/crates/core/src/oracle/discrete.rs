//! Memoryless finite-alphabet interference channels.
//!
//! Text format (whitespace separated, `#` starts a comment):
//!
//! ```text
//! # |X1| |X2| |Y1| |Y2|
//! 2 2 2 2
//! # one row per (x1, x2), lexicographic: (0,0), (0,1), (1,0), (1,1)
//! # columns are (y1, y2), lexicographic: (0,0), (0,1), (1,0), (1,1)
//! 0.81 0.09 0.09 0.01
//! ...
//! ```

use std::fmt;
use std::str::FromStr;

use crate::channel::Receiver;
use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 4;

/// Transition table `W(y1, y2 | x1, x2)` applied independently per letter.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteIC {
    x1: usize,
    x2: usize,
    y1: usize,
    y2: usize,
    table: Vec<f64>,
}

impl DiscreteIC {
    /// `sizes` is `[|X1|, |X2|, |Y1|, |Y2|]`; `table` is row-major in the
    /// order of the text format.
    pub fn new(sizes: [usize; 4], table: Vec<f64>) -> Result<Self> {
        if sizes.iter().any(|&s| s == 0 || s > MAX_ALPHABET) {
            return Err(Error::InvalidChannelTable(format!(
                "alphabet sizes must be in 1..={MAX_ALPHABET}, got {sizes:?}"
            )));
        }
        let [x1, x2, y1, y2] = sizes;
        let (rows, cols) = (x1 * x2, y1 * y2);
        if table.len() != rows * cols {
            return Err(Error::InvalidChannelTable(format!(
                "expected {} entries, got {}",
                rows * cols,
                table.len()
            )));
        }
        for (r, row) in table.chunks_exact(cols).enumerate() {
            if let Some(v) = row.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(Error::InvalidChannelTable(format!("row {r} has entry {v}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidChannelTable(format!("row {r} sums to {sum}")));
            }
        }
        Ok(Self {
            x1,
            x2,
            y1,
            y2,
            table,
        })
    }

    /// Binary channel where each receiver sees its own bit flipped by noise
    /// with probability `noise_flip`, and additionally by the other sender's
    /// bit when it is 1 with probability `interference_flip`. The two
    /// receivers' outputs are conditionally independent.
    pub fn binary_flip(noise_flip: f64, interference_flip: f64) -> Result<Self> {
        for v in [noise_flip, interference_flip] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidChannelTable(format!("flip probability {v}")));
            }
        }
        let flip = |other: usize| {
            if other == 0 {
                noise_flip
            } else {
                interference_flip * (1.0 - noise_flip) + (1.0 - interference_flip) * noise_flip
            }
        };
        let mut table = Vec::with_capacity(16);
        for x1 in 0..2 {
            for x2 in 0..2 {
                for y1 in 0..2 {
                    for y2 in 0..2 {
                        let f1 = flip(x2);
                        let f2 = flip(x1);
                        let p1 = if y1 == x1 { 1.0 - f1 } else { f1 };
                        let p2 = if y2 == x2 { 1.0 - f2 } else { f2 };
                        table.push(p1 * p2);
                    }
                }
            }
        }
        Self::new([2, 2, 2, 2], table)
    }

    pub fn input_size(&self, user: Receiver) -> usize {
        match user {
            Receiver::One => self.x1,
            Receiver::Two => self.x2,
        }
    }

    pub fn output_size(&self, user: Receiver) -> usize {
        match user {
            Receiver::One => self.y1,
            Receiver::Two => self.y2,
        }
    }

    pub fn w(&self, y1: usize, y2: usize, x1: usize, x2: usize) -> f64 {
        self.table[((x1 * self.x2 + x2) * self.y1 + y1) * self.y2 + y2]
    }

    /// `W_1(y1 | x1, x2)`.
    pub fn marginal1(&self, y1: usize, x1: usize, x2: usize) -> f64 {
        (0..self.y2).map(|y2| self.w(y1, y2, x1, x2)).sum()
    }

    /// `W_2(y2 | x1, x2)`.
    pub fn marginal2(&self, y2: usize, x1: usize, x2: usize) -> f64 {
        (0..self.y1).map(|y1| self.w(y1, y2, x1, x2)).sum()
    }

    /// Marginal of `user`'s output given its own letter and the other
    /// sender's letter.
    pub fn marginal(&self, user: Receiver, y: usize, own: usize, other: usize) -> f64 {
        match user {
            Receiver::One => self.marginal1(y, own, other),
            Receiver::Two => self.marginal2(y, other, own),
        }
    }

    pub fn sizes(&self) -> [usize; 4] {
        [self.x1, self.x2, self.y1, self.y2]
    }
}

impl FromStr for DiscreteIC {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace);
        let mut sizes = [0usize; 4];
        for size in &mut sizes {
            let tok = tokens
                .next()
                .ok_or_else(|| Error::InvalidChannelTable("missing alphabet sizes".into()))?;
            *size = tok
                .parse()
                .map_err(|_| Error::InvalidChannelTable(format!("bad alphabet size `{tok}`")))?;
        }
        let table = tokens
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::InvalidChannelTable(format!("bad probability `{t}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        Self::new(sizes, table)
    }
}

impl fmt::Display for DiscreteIC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# |X1| |X2| |Y1| |Y2|")?;
        writeln!(f, "{} {} {} {}", self.x1, self.x2, self.y1, self.y2)?;
        for row in self.table.chunks_exact(self.y1 * self.y2) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
