//! Provably deep lines and planes in 3D: centerpoints of vertical splits
//! joined into a line, and ham sandwich cuts of lifted six-sector triples
//! for planes.

use num_traits::Zero;
use crate::constructions::centerpoint::centerpoint;
use crate::constructions::hamsandwich::ham_sandwich_3d_seeded;
use crate::constructions::sixsector::six_sector_partition;
use crate::depth::{regression_depth, DepthCertificate};
use crate::error::{Error, Result};
use crate::geometry::{Flat, Hyperplane, Point, Vector};
use crate::scalar::scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeepLineStrategy {
    /// Split at the median abscissa and join the two centerpoints.
    /// Guarantee ⌈⌊n/2⌋/4⌉.
    Median,
    /// Overlapping pieces: two rays of ⌈2n/5⌉ points with a shared middle
    /// segment, joined at the centerpoints of the two overlapping sets.
    /// Guarantee min(⌈(n−r)/4⌉, 2⌈(n−r)/4⌉ − m), weaker than the median
    /// split at roughly n/10; kept for comparison.
    ThreePiece,
}

/// Construct a line of guaranteed regression depth in 3D. Returns the
/// line, the guarantee implied by the construction, and the exact
/// certificate (which is never below the guarantee).
pub fn construct_deep_line_3d(
    xs: &[Point],
    strategy: DeepLineStrategy,
) -> Result<(Flat, usize, DepthCertificate)> {
    if xs.is_empty() {
        return Err(Error::InvalidInput("deep line of an empty set".into()));
    }
    for p in xs {
        if p.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: p.dim(),
            });
        }
    }
    let n = xs.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| xs[a].coord(0).cmp(xs[b].coord(0)).then_with(|| a.cmp(&b)));
    let (low, high, guarantee) = match strategy {
        DeepLineStrategy::Median => {
            let h = n / 2;
            let low: Vec<Point> = order[..h].iter().map(|&i| xs[i].clone()).collect();
            let high: Vec<Point> = order[n - h..].iter().map(|&i| xs[i].clone()).collect();
            (low, high, h.div_ceil(4).max(1))
        }
        DeepLineStrategy::ThreePiece => {
            let r = (2 * n).div_ceil(5).min(n / 2);
            let m = n - 2 * r;
            let s = n - r; // size of each overlapping set
            let low: Vec<Point> = order[..s].iter().map(|&i| xs[i].clone()).collect();
            let high: Vec<Point> = order[r..].iter().map(|&i| xs[i].clone()).collect();
            let g1 = s.div_ceil(4) as i64;
            let guarantee = g1.min(2 * g1 - m as i64).max(1) as usize;
            (low, high, guarantee)
        }
    };
    if low.is_empty() || high.is_empty() {
        // One or two points: any non-vertical line through the first point
        // (or both) has depth >= 1.
        let flat = line_through_points(xs);
        let cert = regression_depth(&flat, 1, xs)?;
        return Ok((flat, 1, cert));
    }
    let c1 = centerpoint(&low)?;
    let mut c2 = centerpoint(&high)?;
    if c1.coord(0) == c2.coord(0) {
        // Overlapping pieces can share an abscissa range; fall back to the
        // centerpoint of the disjoint upper ray.
        let r = n - low.len();
        let ray: Vec<Point> = order[r.max(low.len())..]
            .iter()
            .map(|&i| xs[i].clone())
            .collect();
        if !ray.is_empty() {
            c2 = centerpoint(&ray)?;
        }
    }
    let flat = if c1 == c2 || c1.coord(0) == c2.coord(0) {
        // Degenerate: any non-vertical line through the common point.
        Flat::line(
            c1.clone(),
            Vector(vec![scalar(1), scalar(0), scalar(0)]),
        )?
    } else {
        Flat::line(c1.clone(), c2.sub(&c1))?
    };
    let cert = regression_depth(&flat, 1, xs)?;
    if cert.depth < guarantee {
        return Err(Error::VerificationFailed {
            construction: "deep line 3D",
            details: format!("depth {} below the guarantee {guarantee}", cert.depth),
        });
    }
    Ok((flat, guarantee, cert))
}

fn line_through_points(xs: &[Point]) -> Flat {
    if xs.len() >= 2 && xs[0].coord(0) != xs[1].coord(0) {
        return Flat::line(xs[0].clone(), xs[1].sub(&xs[0])).expect("distinct points");
    }
    Flat::line(
        xs[0].clone(),
        Vector(vec![scalar(1), scalar(0), scalar(0)]),
    )
    .expect("unit direction")
}

/// Construct a plane of guaranteed regression depth ⌈⌊n/6⌋/2⌉ in 3D:
/// six-sector the projections, lift the alternating triple, and take a
/// non-vertical ham sandwich cut of the three lifted subsets.
pub fn construct_deep_plane_3d(
    xs: &[Point],
    seed: u64,
) -> Result<(Flat, usize, DepthCertificate)> {
    for p in xs {
        if p.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: p.dim(),
            });
        }
    }
    let n = xs.len();
    if n < 6 {
        return Err(Error::InvalidInput(format!(
            "deep plane construction needs at least 6 points, got {n}"
        )));
    }
    let projections: Vec<Point> = xs
        .iter()
        .map(|p| Point::xy(p.coord(0).clone(), p.coord(1).clone()))
        .collect();
    let witness = six_sector_partition(&projections, seed)?;
    let lift = |idx: &[usize]| -> Vec<Point> { idx.iter().map(|&i| xs[i].clone()).collect() };
    let (a, b, c) = (
        lift(&witness.triple[0]),
        lift(&witness.triple[1]),
        lift(&witness.triple[2]),
    );
    let h = ham_sandwich_3d_seeded(&a, &b, &c, seed, 2_000_000, true)?;
    let flat = plane_to_flat(&h)?;
    let guarantee = (n / 6).div_ceil(2).max(1);
    let cert = regression_depth(&flat, 2, xs)?;
    if cert.depth < guarantee {
        return Err(Error::VerificationFailed {
            construction: "deep plane 3D",
            details: format!("depth {} below the guarantee {guarantee}", cert.depth),
        });
    }
    Ok((flat, guarantee, cert))
}

/// A non-vertical plane hyperplane as a 2-flat.
pub(crate) fn plane_to_flat(h: &Hyperplane) -> Result<Flat> {
    let n = &h.normal.0;
    if n.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: n.len(),
        });
    }
    // Two independent directions orthogonal to the normal.
    let u = if !n[0].is_zero() || !n[1].is_zero() {
        Vector(vec![-n[1].clone(), n[0].clone(), scalar(0)])
    } else {
        Vector(vec![scalar(1), scalar(0), scalar(0)])
    };
    let v = h.normal.cross(&u);
    // A point on the plane.
    let idx = n
        .iter()
        .position(|c| !c.is_zero())
        .expect("hyperplane normals are nonzero");
    let mut coords = vec![scalar(0); 3];
    coords[idx] = &h.offset / &n[idx];
    let anchor = Point::new(coords)?;
    Flat::plane(anchor, u, v)
}
