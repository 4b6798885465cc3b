//! Rate regions as unions of origin-anchored rectangles, with the
//! time-sharing frontier.

use crate::channel::{ChannelParams, Receiver};
use crate::error::{Error, Result};
use crate::infodensity::{estimate_mi_breakdown, noise_model_mi, Estimation};
use crate::trellis::{GeneratorMatrix, JointTrellis, Trellis};

/// Label of the frontier endpoint on the `r2` axis.
pub const AXIS_R2: &str = "axis_r2";
/// Label of the frontier endpoint on the `r1` axis.
pub const AXIS_R1: &str = "axis_r1";

/// `[0, r1] x [0, r2]`, the rectangle contributed by one input pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Rectangle {
    pub label: String,
    pub r1: f64,
    pub r2: f64,
    pub r1_stderr: f64,
    pub r2_stderr: f64,
}

impl Rectangle {
    pub fn new(label: impl Into<String>, r1: f64, r2: f64) -> Self {
        Self {
            label: label.into(),
            r1,
            r2,
            r1_stderr: 0.0,
            r2_stderr: 0.0,
        }
    }

    pub fn with_stderr(mut self, r1_stderr: f64, r2_stderr: f64) -> Self {
        self.r1_stderr = r1_stderr;
        self.r2_stderr = r2_stderr;
        self
    }

    pub fn dominates(&self, q1: f64, q2: f64) -> bool {
        q1 <= self.r1 && q2 <= self.r2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub label: String,
    pub r1: f64,
    pub r2: f64,
}

/// Union of rectangles together with its time-sharing closure.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    pub rectangles: Vec<Rectangle>,
    /// Upper-right convex hull from `(0, max r2)` to `(max r1, 0)`, sorted by
    /// `r1`.
    pub frontier: Vec<Vertex>,
    /// Pareto-maximal corners of the plain union, sorted by `r1`.
    pub staircase: Vec<Vertex>,
}

/// `(a - o) x (b - o)`
fn cross(o: &Vertex, a: &Vertex, b: &Vertex) -> f64 {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

fn is_axis(label: &str) -> bool {
    label == AXIS_R1 || label == AXIS_R2
}

pub fn assemble(corners: &[Rectangle]) -> Result<RateRegion> {
    if corners.is_empty() {
        return Err(Error::EmptyRegion);
    }
    for c in corners {
        if !(c.r1.is_finite() && c.r2.is_finite() && c.r1 >= 0.0 && c.r2 >= 0.0) {
            return Err(Error::InvalidCorner {
                label: c.label.clone(),
            });
        }
    }
    let max_r1 = corners.iter().map(|c| c.r1).fold(0.0, f64::max);
    let max_r2 = corners.iter().map(|c| c.r2).fold(0.0, f64::max);

    let mut points: Vec<Vertex> = corners
        .iter()
        .map(|c| Vertex {
            label: c.label.clone(),
            r1: c.r1,
            r2: c.r2,
        })
        .collect();
    points.push(Vertex {
        label: AXIS_R2.into(),
        r1: 0.0,
        r2: max_r2,
    });
    points.push(Vertex {
        label: AXIS_R1.into(),
        r1: max_r1,
        r2: 0.0,
    });
    // r1 ascending, r2 descending; among coincident points corner labels win
    // over axis labels, then lexicographic order.
    points.sort_by(|a, b| {
        a.r1.total_cmp(&b.r1)
            .then(b.r2.total_cmp(&a.r2))
            .then(is_axis(&a.label).cmp(&is_axis(&b.label)))
            .then(a.label.cmp(&b.label))
    });
    points.dedup_by(|later, kept| later.r1 == kept.r1 && later.r2 == kept.r2);

    let mut frontier: Vec<Vertex> = Vec::with_capacity(points.len());
    for p in &points {
        while frontier.len() >= 2
            && cross(
                &frontier[frontier.len() - 2],
                &frontier[frontier.len() - 1],
                p,
            ) >= 0.0
        {
            frontier.pop();
        }
        frontier.push(p.clone());
    }

    let mut by_r1_desc: Vec<&Vertex> = points.iter().filter(|p| !is_axis(&p.label)).collect();
    by_r1_desc.sort_by(|a, b| b.r1.total_cmp(&a.r1).then(b.r2.total_cmp(&a.r2)));
    let mut staircase: Vec<Vertex> = Vec::new();
    let mut best_r2 = f64::NEG_INFINITY;
    for p in by_r1_desc {
        if p.r2 > best_r2 {
            best_r2 = p.r2;
            staircase.push(p.clone());
        }
    }
    staircase.reverse();

    Ok(RateRegion {
        rectangles: corners.to_vec(),
        frontier,
        staircase,
    })
}

impl RateRegion {
    /// Largest `r2` reachable at `r1` by time sharing, or `None` outside
    /// `[0, max r1]`.
    pub fn frontier_height(&self, r1: f64) -> Option<f64> {
        let last = self.frontier.last()?;
        if r1 < 0.0 || r1 > last.r1 {
            return None;
        }
        let mut height = f64::NEG_INFINITY;
        for w in self.frontier.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if r1 < a.r1 || r1 > b.r1 {
                continue;
            }
            let h = if b.r1 == a.r1 {
                a.r2.max(b.r2)
            } else {
                a.r2 + (b.r2 - a.r2) * (r1 - a.r1) / (b.r1 - a.r1)
            };
            height = height.max(h);
        }
        if self.frontier.len() == 1 {
            height = self.frontier[0].r2;
        }
        Some(height)
    }

    /// Whether `(q1, q2)` is achievable by one rectangle or by time sharing.
    pub fn contains(&self, q1: f64, q2: f64) -> bool {
        if q1 < 0.0 || q2 < 0.0 {
            return false;
        }
        if self.rectangles.iter().any(|r| r.dominates(q1, q2)) {
            return true;
        }
        matches!(self.frontier_height(q1), Some(h) if q2 <= h + 1e-12)
    }

    /// Whether `(q1, q2)` lies in the plain union of rectangles.
    pub fn union_contains(&self, q1: f64, q2: f64) -> bool {
        q1 >= 0.0 && q2 >= 0.0 && self.rectangles.iter().any(|r| r.dominates(q1, q2))
    }
}

/// Treat-interference-as-noise corner, labelled `C`.
pub fn point_c(params: &ChannelParams) -> Result<Rectangle> {
    Ok(Rectangle::new(
        "C",
        noise_model_mi(params, Receiver::One)?,
        noise_model_mi(params, Receiver::Two)?,
    ))
}

/// Corner achieved when sender 1 uses `scheme1` and sender 2 uses `scheme2`,
/// with both coordinates estimated on the same simulated blocks.
pub fn scheme_corner(
    label: &str,
    scheme1: &Trellis,
    scheme2: &Trellis,
    params: &ChannelParams,
    est: &Estimation,
) -> Result<Rectangle> {
    let jt = JointTrellis::product(scheme1, scheme2);
    let r1 = estimate_mi_breakdown(&jt, params, Receiver::One, est)?.mutual_information;
    let r2 = estimate_mi_breakdown(&jt, params, Receiver::Two, est)?.mutual_information;
    Ok(Rectangle::new(label, r1.value, r2.value).with_stderr(r1.std_error, r2.std_error))
}

/// Corners `A` (sender 1 convolutional `[1+D+D^2, 1+D^2]`, sender 2 uncoded)
/// and `B` (the mirrored assignment).
pub fn point_a_b(params: &ChannelParams, est: &Estimation) -> Result<(Rectangle, Rectangle)> {
    let cc = Trellis::convolutional(&GeneratorMatrix::from_octal("7,5")?);
    let un = Trellis::iud(1)?;
    let a = scheme_corner("A", &cc, &un, params, est)?;
    let b = scheme_corner("B", &un, &cc, params, est)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(v: &[Vertex]) -> Vec<(f64, f64)> {
        v.iter().map(|v| (v.r1, v.r2)).collect()
    }

    #[test]
    fn two_corners_give_time_sharing_segment() {
        let r = assemble(&[Rectangle::new("A", 0.5, 0.2), Rectangle::new("B", 0.2, 0.5)]).unwrap();
        assert_eq!(
            coords(&r.frontier),
            vec![(0.0, 0.5), (0.2, 0.5), (0.5, 0.2), (0.5, 0.0)]
        );
        assert_eq!(r.frontier[1].label, "B");
        assert_eq!(r.frontier[2].label, "A");
        assert!(r.contains(0.35, 0.35));
        assert!(!r.union_contains(0.35, 0.35));
        assert!(!r.contains(0.36, 0.36));
    }

    #[test]
    fn single_corner() {
        let r = assemble(&[Rectangle::new("X", 0.3, 0.7)]).unwrap();
        assert_eq!(
            coords(&r.frontier),
            vec![(0.0, 0.7), (0.3, 0.7), (0.3, 0.0)]
        );
        assert_eq!(coords(&r.staircase), vec![(0.3, 0.7)]);
    }

    #[test]
    fn dominated_corner_is_ignored() {
        let base = [Rectangle::new("A", 0.5, 0.2), Rectangle::new("B", 0.2, 0.5)];
        let mut more = base.to_vec();
        more.push(Rectangle::new("D", 0.1, 0.1));
        assert_eq!(
            assemble(&base).unwrap().frontier,
            assemble(&more).unwrap().frontier
        );
        assert_eq!(
            assemble(&base).unwrap().staircase,
            assemble(&more).unwrap().staircase
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(assemble(&[]), Err(Error::EmptyRegion));
        assert!(matches!(
            assemble(&[Rectangle::new("N", -0.1, 0.2)]),
            Err(Error::InvalidCorner { .. })
        ));
        assert!(assemble(&[Rectangle::new("N", f64::NAN, 0.2)]).is_err());
    }

    #[test]
    fn corner_on_axis_keeps_its_label() {
        let r = assemble(&[Rectangle::new("A", 0.5, 0.0), Rectangle::new("B", 0.0, 0.4)]).unwrap();
        assert_eq!(coords(&r.frontier), vec![(0.0, 0.4), (0.5, 0.0)]);
        assert_eq!(r.frontier[0].label, "B");
        assert_eq!(r.frontier[1].label, "A");
    }

    #[test]
    fn point_c_is_symmetric() {
        let p = ChannelParams::from_db(7.0, 7.0, 0.5).unwrap();
        let c = point_c(&p).unwrap();
        assert_eq!(c.r1, c.r2);
        assert_eq!(c.label, "C");
    }
}
