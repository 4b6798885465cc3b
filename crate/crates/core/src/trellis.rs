//! Encoder state machines and the synchronized joint trellis of two senders.
//!
//! Conventions, fixed so that branch tables are reproducible bit for bit:
//!
//! * a code bit `b` is sent as the antipodal symbol `(-1)^b` (bit 0 -> `+1`);
//! * the state of a feed-forward encoder is the content of its shift register,
//!   newest input bit in the least significant position;
//! * branches are stored state-major: the branch leaving state `s` with drive
//!   pattern `u` sits at index `s * 2^b + u`, where bit `i` of `u` is the
//!   `i`-th drive bit of the section;
//! * a joint state is numbered `s1 * |S2| + s2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported encoder memory (65536 states).
pub const MAX_MEMORY: usize = 16;

/// Generator polynomials of a rate-1/n feed-forward convolutional encoder.
///
/// Coefficients are stored lowest degree first. In the octal text form the
/// leftmost binary digit of each value (written without leading zeros) is the
/// coefficient of `D^0`, so `"7,5"` is `[1 + D + D^2, 1 + D^2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    polynomials: Vec<Vec<u8>>,
    memory: usize,
}

impl GeneratorMatrix {
    pub fn new(polynomials: Vec<Vec<u8>>) -> Result<Self> {
        if polynomials.is_empty() {
            return Err(Error::EmptyGenerator);
        }
        let mut memory = 0;
        for (idx, poly) in polynomials.iter().enumerate() {
            if let Some(&c) = poly.iter().find(|&&c| c > 1) {
                return Err(Error::InvalidPolynomial(format!(
                    "coefficient {c} in polynomial {idx} is not binary"
                )));
            }
            let degree = poly
                .iter()
                .rposition(|&c| c == 1)
                .ok_or(Error::ZeroPolynomial(idx))?;
            memory = memory.max(degree);
        }
        if memory > MAX_MEMORY {
            return Err(Error::MemoryTooLarge {
                memory,
                max: MAX_MEMORY,
            });
        }
        Ok(Self {
            polynomials,
            memory,
        })
    }

    /// Parses comma- or whitespace-separated octal values such as `"7,5"`.
    pub fn from_octal(text: &str) -> Result<Self> {
        let mut polynomials = Vec::new();
        for (idx, token) in text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            let value = u64::from_str_radix(token, 8)
                .map_err(|_| Error::InvalidPolynomial(token.to_string()))?;
            if value == 0 {
                return Err(Error::ZeroPolynomial(idx));
            }
            let len = 64 - value.leading_zeros() as usize;
            polynomials.push(
                (0..len)
                    .map(|k| ((value >> (len - 1 - k)) & 1) as u8)
                    .collect(),
            );
        }
        Self::new(polynomials)
    }

    pub fn polynomials(&self) -> &[Vec<u8>] {
        &self.polynomials
    }

    /// Maximum polynomial degree.
    pub fn memory(&self) -> usize {
        self.memory
    }

    /// Number of code bits per input bit.
    pub fn outputs(&self) -> usize {
        self.polynomials.len()
    }

    fn tap_masks(&self) -> Vec<u64> {
        self.polynomials
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .fold(0u64, |m, (k, &c)| m | (u64::from(c) << k))
            })
            .collect()
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, poly) in self.polynomials.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            let value = poly.iter().fold(0u64, |v, &c| (v << 1) | u64::from(c));
            write!(f, "{value:o}")?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_octal(s)
    }
}

/// One trellis branch: a state transition labelled with the drive bits that
/// select it and the antipodal symbols it emits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub s_minus: usize,
    pub s_plus: usize,
    pub drive: Vec<u8>,
    pub symbols: Vec<i8>,
}

/// Finite-state machine of one sender.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trellis {
    num_states: usize,
    drive_bits: usize,
    uses: usize,
    branches: Vec<Branch>,
}

fn bit_to_symbol(bit: u8) -> i8 {
    if bit == 0 {
        1
    } else {
        -1
    }
}

impl Trellis {
    /// Shift-register trellis of a feed-forward convolutional encoder.
    pub fn convolutional(g: &GeneratorMatrix) -> Self {
        let memory = g.memory();
        let state_mask = (1u64 << memory) - 1;
        let masks = g.tap_masks();
        let num_states = 1usize << memory;
        let mut branches = Vec::with_capacity(num_states * 2);
        for state in 0..num_states {
            for u in 0..2u64 {
                let register = ((state as u64) << 1) | u;
                let symbols = masks
                    .iter()
                    .map(|m| bit_to_symbol(((register & m).count_ones() & 1) as u8))
                    .collect();
                branches.push(Branch {
                    s_minus: state,
                    s_plus: (register & state_mask) as usize,
                    drive: vec![u as u8],
                    symbols,
                });
            }
        }
        Self {
            num_states,
            drive_bits: 1,
            uses: g.outputs(),
            branches,
        }
    }

    /// Single-state trellis sending `bits_per_section` i.u.d. bits uncoded.
    pub fn iud(bits_per_section: usize) -> Result<Self> {
        if bits_per_section == 0 {
            return Err(Error::ZeroBitsPerSection);
        }
        if bits_per_section > MAX_MEMORY {
            return Err(Error::SizeGuard(format!(
                "{bits_per_section} uncoded bits per section exceeds {MAX_MEMORY}"
            )));
        }
        let branches = (0..1usize << bits_per_section)
            .map(|u| {
                let drive: Vec<u8> = (0..bits_per_section)
                    .map(|i| ((u >> i) & 1) as u8)
                    .collect();
                let symbols = drive.iter().map(|&b| bit_to_symbol(b)).collect();
                Branch {
                    s_minus: 0,
                    s_plus: 0,
                    drive,
                    symbols,
                }
            })
            .collect();
        Ok(Self {
            num_states: 1,
            drive_bits: bits_per_section,
            uses: bits_per_section,
            branches,
        })
    }

    /// Zero-rate sender: one state, one branch, always `+1`.
    pub fn constant(uses: usize) -> Self {
        Self {
            num_states: 1,
            drive_bits: 0,
            uses,
            branches: vec![Branch {
                s_minus: 0,
                s_plus: 0,
                drive: Vec::new(),
                symbols: vec![1; uses],
            }],
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn drive_bits(&self) -> usize {
        self.drive_bits
    }

    /// Channel uses emitted per section.
    pub fn uses_per_section(&self) -> usize {
        self.uses
    }

    /// Outgoing branches per state, `2^drive_bits`.
    pub fn fanout(&self) -> usize {
        1 << self.drive_bits
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn outgoing(&self, state: usize) -> &[Branch] {
        let f = self.fanout();
        &self.branches[state * f..(state + 1) * f]
    }

    /// Branch leaving `state` under drive pattern `pattern`.
    pub fn branch(&self, state: usize, pattern: usize) -> &Branch {
        &self.branches[state * self.fanout() + pattern]
    }

    /// Merges `sections` consecutive sections into one; the state space is
    /// unchanged.
    pub fn compose(&self, sections: usize) -> Self {
        assert!(sections >= 1, "composition needs at least one section");
        if sections == 1 {
            return self.clone();
        }
        let drive_bits = self.drive_bits * sections;
        let mut branches = Vec::with_capacity(self.num_states << drive_bits);
        for state in 0..self.num_states {
            for pattern in 0..1usize << drive_bits {
                let mut current = state;
                let mut drive = Vec::with_capacity(drive_bits);
                let mut symbols = Vec::with_capacity(self.uses * sections);
                for k in 0..sections {
                    let sub = (pattern >> (k * self.drive_bits)) & (self.fanout() - 1);
                    let b = self.branch(current, sub);
                    drive.extend_from_slice(&b.drive);
                    symbols.extend_from_slice(&b.symbols);
                    current = b.s_plus;
                }
                branches.push(Branch {
                    s_minus: state,
                    s_plus: current,
                    drive,
                    symbols,
                });
            }
        }
        Self {
            num_states: self.num_states,
            drive_bits,
            uses: self.uses * sections,
            branches,
        }
    }

    /// Symbols emitted from the all-zero state for a whole number of sections
    /// worth of drive bits.
    pub fn encode(&self, drive: &[u8]) -> Result<Vec<i8>> {
        if self.drive_bits == 0 || !drive.len().is_multiple_of(self.drive_bits) {
            return Err(Error::LengthMismatch {
                expected: self.drive_bits.max(1) * (drive.len() / self.drive_bits.max(1)),
                got: drive.len(),
            });
        }
        let mut state = 0;
        let mut out = Vec::with_capacity(drive.len() / self.drive_bits * self.uses);
        for chunk in drive.chunks(self.drive_bits) {
            let pattern = chunk
                .iter()
                .enumerate()
                .fold(0usize, |p, (i, &b)| p | (usize::from(b & 1) << i));
            let b = self.branch(state, pattern);
            out.extend_from_slice(&b.symbols);
            state = b.s_plus;
        }
        Ok(out)
    }
}

/// Branch of the joint trellis, carrying both senders' labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointBranch {
    pub s_minus: usize,
    pub s_plus: usize,
    pub drive1: Vec<u8>,
    pub drive2: Vec<u8>,
    pub symbols1: Vec<i8>,
    pub symbols2: Vec<i8>,
}

/// Synchronized product of two sender trellises.
///
/// Both component trellises are kept in their section-aligned form so the
/// conditional recursions can run over either sender alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointTrellis {
    first: Trellis,
    second: Trellis,
    branches: Vec<JointBranch>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl JointTrellis {
    /// Forms the product trellis. When the two senders emit a different
    /// number of channel uses per section, each is first composed to the
    /// least common multiple.
    pub fn product(t1: &Trellis, t2: &Trellis) -> Self {
        let (l1, l2) = (t1.uses_per_section(), t2.uses_per_section());
        let lcm = l1 / gcd(l1, l2) * l2;
        let first = t1.compose(lcm / l1);
        let second = t2.compose(lcm / l2);
        let s2 = second.num_states();
        let mut branches =
            Vec::with_capacity(first.num_states() * s2 * first.fanout() * second.fanout());
        for a in 0..first.num_states() {
            for b in 0..s2 {
                for ba in first.outgoing(a) {
                    for bb in second.outgoing(b) {
                        branches.push(JointBranch {
                            s_minus: a * s2 + b,
                            s_plus: ba.s_plus * s2 + bb.s_plus,
                            drive1: ba.drive.clone(),
                            drive2: bb.drive.clone(),
                            symbols1: ba.symbols.clone(),
                            symbols2: bb.symbols.clone(),
                        });
                    }
                }
            }
        }
        Self {
            first,
            second,
            branches,
        }
    }

    pub fn num_states(&self) -> usize {
        self.first.num_states() * self.second.num_states()
    }

    pub fn uses_per_section(&self) -> usize {
        self.first.uses_per_section()
    }

    pub fn drive_bits(&self) -> usize {
        self.first.drive_bits() + self.second.drive_bits()
    }

    pub fn fanout(&self) -> usize {
        1 << self.drive_bits()
    }

    pub fn branches(&self) -> &[JointBranch] {
        &self.branches
    }

    pub fn outgoing(&self, state: usize) -> &[JointBranch] {
        let f = self.fanout();
        &self.branches[state * f..(state + 1) * f]
    }

    /// Section-aligned trellis of sender 1 or 2.
    pub fn component(&self, sender: u8) -> &Trellis {
        match sender {
            1 => &self.first,
            2 => &self.second,
            _ => panic!("sender index must be 1 or 2, got {sender}"),
        }
    }
}

/// Text form of a sender scheme: `iud:<bits>` or `conv:<octal polys>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scheme {
    Iud(usize),
    Conv(GeneratorMatrix),
}

impl Scheme {
    pub fn trellis(&self) -> Result<Trellis> {
        match self {
            Scheme::Iud(bits) => Trellis::iud(*bits),
            Scheme::Conv(g) => Ok(Trellis::convolutional(g)),
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(':') {
            Some(("iud", bits)) => {
                let bits: usize = bits
                    .trim()
                    .parse()
                    .map_err(|_| Error::UnknownScheme(s.to_string()))?;
                if bits == 0 {
                    return Err(Error::ZeroBitsPerSection);
                }
                Ok(Scheme::Iud(bits))
            }
            Some(("conv", polys)) => Ok(Scheme::Conv(GeneratorMatrix::from_octal(polys)?)),
            _ => Err(Error::UnknownScheme(s.to_string())),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Iud(bits) => write!(f, "iud:{bits}"),
            Scheme::Conv(g) => write!(f, "conv:{g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g75() -> GeneratorMatrix {
        GeneratorMatrix::from_octal("7,5").unwrap()
    }

    #[test]
    fn octal_parsing() {
        let g = g75();
        assert_eq!(g.polynomials(), &[vec![1, 1, 1], vec![1, 0, 1]]);
        assert_eq!(g.memory(), 2);
        assert_eq!(g.to_string(), "7,5");
        assert_eq!(GeneratorMatrix::from_octal("133 171").unwrap().memory(), 6);
    }

    #[test]
    fn generator_rejects_bad_input() {
        assert_eq!(GeneratorMatrix::new(vec![]), Err(Error::EmptyGenerator));
        assert_eq!(
            GeneratorMatrix::new(vec![vec![1], vec![0, 0]]),
            Err(Error::ZeroPolynomial(1))
        );
        assert_eq!(GeneratorMatrix::from_octal(""), Err(Error::EmptyGenerator));
        assert_eq!(
            GeneratorMatrix::from_octal("7,0"),
            Err(Error::ZeroPolynomial(1))
        );
        assert!(matches!(
            GeneratorMatrix::from_octal("7,9"),
            Err(Error::InvalidPolynomial(_))
        ));
        assert!(GeneratorMatrix::new(vec![vec![2]]).is_err());
    }

    #[test]
    fn conv_75_shape() {
        let t = Trellis::convolutional(&g75());
        assert_eq!(t.num_states(), 4);
        assert_eq!(t.branches().len(), 8);
        assert_eq!(t.uses_per_section(), 2);
    }

    #[test]
    fn identity_encoder() {
        let t = Trellis::convolutional(&GeneratorMatrix::new(vec![vec![1]]).unwrap());
        assert_eq!(t.num_states(), 1);
        assert_eq!(t.branches().len(), 2);
        assert_eq!(t.uses_per_section(), 1);
        assert_eq!(t.branches()[0].symbols, vec![1]);
        assert_eq!(t.branches()[1].symbols, vec![-1]);
    }

    #[test]
    fn two_state_hand_simulation() {
        let g = GeneratorMatrix::new(vec![vec![1], vec![1, 1]]).unwrap();
        let t = Trellis::convolutional(&g);
        assert_eq!(t.encode(&[1, 0, 1]).unwrap(), vec![-1, -1, 1, -1, -1, -1]);
    }

    #[test]
    fn iud_trellis() {
        let t = Trellis::iud(2).unwrap();
        assert_eq!(
            (t.num_states(), t.branches().len(), t.uses_per_section()),
            (1, 4, 2)
        );
        let t = Trellis::iud(1).unwrap();
        assert_eq!(t.branches()[0].symbols, vec![1]);
        assert_eq!(t.branches()[1].symbols, vec![-1]);
        assert_eq!(Trellis::iud(0), Err(Error::ZeroBitsPerSection));
    }

    #[test]
    fn product_shapes() {
        let cc = Trellis::convolutional(&g75());
        let un1 = Trellis::iud(1).unwrap();
        let un2 = Trellis::iud(2).unwrap();

        let jt = JointTrellis::product(&cc, &un2);
        assert_eq!(
            (jt.num_states(), jt.branches().len(), jt.uses_per_section()),
            (4, 32, 2)
        );
        // Uncoded sender with one bit per section is aligned to two uses.
        let jt = JointTrellis::product(&cc, &un1);
        assert_eq!(
            (jt.num_states(), jt.branches().len(), jt.uses_per_section()),
            (4, 32, 2)
        );
        let jt = JointTrellis::product(&un1, &un1);
        assert_eq!(
            (jt.num_states(), jt.branches().len(), jt.uses_per_section()),
            (1, 4, 1)
        );
        let jt = JointTrellis::product(&cc, &cc);
        assert_eq!(
            (jt.num_states(), jt.branches().len(), jt.uses_per_section()),
            (16, 64, 2)
        );
    }

    #[test]
    fn joint_state_numbering() {
        let cc = Trellis::convolutional(&g75());
        let jt = JointTrellis::product(&cc, &cc);
        for (idx, b) in jt.branches().iter().enumerate() {
            assert_eq!(idx / jt.fanout(), b.s_minus);
            let (a, c) = (b.s_minus / 4, b.s_minus % 4);
            let ba = cc.branch(a, usize::from(b.drive1[0]));
            let bc = cc.branch(c, usize::from(b.drive2[0]));
            assert_eq!(b.s_plus, ba.s_plus * 4 + bc.s_plus);
            assert_eq!(b.symbols1, ba.symbols);
            assert_eq!(b.symbols2, bc.symbols);
        }
    }

    #[test]
    fn scheme_strings() {
        assert_eq!("iud:2".parse::<Scheme>().unwrap(), Scheme::Iud(2));
        assert_eq!(
            "conv:7,5".parse::<Scheme>().unwrap().to_string(),
            "conv:7,5"
        );
        assert!(matches!(
            "ldpc:3".parse::<Scheme>(),
            Err(Error::UnknownScheme(_))
        ));
        assert!(matches!(
            "iud:x".parse::<Scheme>(),
            Err(Error::UnknownScheme(_))
        ));
        assert!(matches!(
            "conv:8".parse::<Scheme>(),
            Err(Error::InvalidPolynomial(_))
        ));
    }
}
