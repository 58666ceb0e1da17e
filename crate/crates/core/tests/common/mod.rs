//! Shared brute-force oracle for depth computations, used by both the
//! oracle-equivalence tests and the acceptance suite.
//!
//! The oracle enumerates a provably complete superset of candidate wedge
//! boundaries (all data-incident hyperplanes plus all pairwise normal
//! combinations, which include a member of every angular gap) and counts
//! memberships with its own rational arithmetic. It shares only the basic
//! `Point`/`Flat` types with the library, not the sweep or its sign
//! bookkeeping.

use num_traits::{Signed, Zero};
use regdepth::geometry::{AffineFlat, Point};
use regdepth::scalar::{scalar, Scalar};

/// A raw oriented hyperplane for the oracle: coefficients plus offset.
#[derive(Clone, Debug)]
pub struct RawPlane {
    pub n: Vec<Scalar>,
    pub c: Scalar,
}

impl RawPlane {
    pub fn sign(&self, p: &Point) -> i8 {
        let mut acc = Scalar::zero();
        for (a, b) in self.n.iter().zip(p.coords()) {
            acc += a * b;
        }
        acc -= &self.c;
        if acc.is_positive() {
            1
        } else if acc.is_negative() {
            -1
        } else {
            0
        }
    }
}

pub fn through(n: Vec<Scalar>, anchor: &Point) -> Option<RawPlane> {
    if n.iter().all(|v| v.is_zero()) {
        return None;
    }
    let c = n
        .iter()
        .zip(anchor.coords())
        .map(|(a, b)| a * b)
        .fold(Scalar::zero(), |acc, v| acc + v);
    Some(RawPlane { n, c })
}

pub fn vsub(a: &Point, b: &Point) -> Vec<Scalar> {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| x - y)
        .collect()
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vneg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

pub fn cross(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// All pairwise ±u ± v combinations: for angularly consecutive event
/// normals these include a member strictly inside the gap, so the result
/// covers every combinatorial position of the pencil.
pub fn with_combinations(mut normals: Vec<Vec<Scalar>>, extra: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let events = normals.clone();
    for (i, u) in events.iter().enumerate() {
        for v in events.iter().skip(i + 1) {
            normals.push(vadd(u, v));
            normals.push(vadd(u, &vneg(v)));
            normals.push(vadd(&vneg(u), v));
            normals.push(vadd(&vneg(u), &vneg(v)));
        }
    }
    normals.extend(extra.iter().cloned());
    normals
}

/// Candidate hyperplanes through an affine flat (oracle route).
pub fn oracle_pencil(af: &AffineFlat, xs: &[Point]) -> Vec<RawPlane> {
    let d = af.dim();
    let anchor = af.anchor();
    let mut out = Vec::new();
    match (d, af.k()) {
        (2, 1) => {
            let dir = &af.span()[0];
            let n = vec![-dir.0[1].clone(), dir.0[0].clone()];
            out.extend(through(n, anchor));
        }
        (3, 2) => {
            let n = af.span()[0].cross(&af.span()[1]).0;
            out.extend(through(n, anchor));
        }
        (2, 0) => {
            let mut events = Vec::new();
            for p in xs {
                let w = vsub(p, anchor);
                let n = vec![-w[1].clone(), w[0].clone()];
                if !n.iter().all(|v| v.is_zero()) {
                    events.push(n);
                }
            }
            let axes = vec![vec![scalar(1), scalar(0)], vec![scalar(0), scalar(1)]];
            for n in with_combinations(events, &axes) {
                out.extend(through(n, anchor));
            }
        }
        (3, 1) => {
            let v = &af.span()[0].0;
            let e1 = if !v[0].is_zero() || !v[1].is_zero() {
                vec![-v[1].clone(), v[0].clone(), scalar(0)]
            } else {
                vec![scalar(1), scalar(0), scalar(0)]
            };
            let e2 = cross(v, &e1);
            let mut events = Vec::new();
            for p in xs {
                let n = cross(v, &vsub(p, anchor));
                if !n.iter().all(|c| c.is_zero()) {
                    events.push(n);
                }
            }
            for n in with_combinations(events, &[e1, e2]) {
                out.extend(through(n, anchor));
            }
        }
        (3, 0) => {
            // Axis sub-pencils around lines through the apex and each data
            // point, with tilted neighbours of every member.
            let mut axes: Vec<Vec<Scalar>> = Vec::new();
            for p in xs {
                let w = vsub(p, anchor);
                if w.iter().all(|c| c.is_zero()) {
                    continue;
                }
                axes.push(w);
            }
            axes.push(vec![scalar(1), scalar(0), scalar(0)]);
            axes.push(vec![scalar(0), scalar(1), scalar(0)]);
            axes.push(vec![scalar(0), scalar(0), scalar(1)]);
            for w in &axes {
                let e1 = if !w[0].is_zero() || !w[1].is_zero() {
                    vec![-w[1].clone(), w[0].clone(), scalar(0)]
                } else {
                    vec![scalar(1), scalar(0), scalar(0)]
                };
                let e2 = cross(w, &e1);
                let mut events = Vec::new();
                for p in xs {
                    let n = cross(w, &vsub(p, anchor));
                    if !n.iter().all(|c| c.is_zero()) {
                        events.push(n);
                    }
                }
                for n in with_combinations(events, &[e1, e2]) {
                    if let Some(base) = through(n.clone(), anchor) {
                        // Tilt off the axis in both directions, exactly.
                        for side in [1i64, -1] {
                            let tilted = tilt(&base, w, side, anchor, xs);
                            out.push(tilted);
                        }
                        out.push(base);
                    }
                }
            }
        }
        _ => panic!("oracle: unsupported flat"),
    }
    out
}

/// Rotate `base` about the axis (anchor, w) by an exact amount small
/// enough to keep every strictly-signed point on its side.
pub fn tilt(base: &RawPlane, w: &[Scalar], side: i64, anchor: &Point, xs: &[Point]) -> RawPlane {
    let mut gamma: Option<Scalar> = None;
    for p in xs {
        let r = {
            let mut acc = Scalar::zero();
            for (a, b) in base.n.iter().zip(p.coords()) {
                acc += a * b;
            }
            acc - &base.c
        };
        if r.is_zero() {
            continue;
        }
        let t = w
            .iter()
            .zip(vsub(p, anchor).iter())
            .map(|(a, b)| a * b)
            .fold(Scalar::zero(), |acc, v| acc + v);
        let denom = if t.abs() > Scalar::from_integer(1.into()) {
            t.abs()
        } else {
            Scalar::from_integer(1.into())
        };
        let bound = r.abs() / (Scalar::from_integer(2.into()) * denom);
        if gamma.as_ref().map(|g| bound < *g).unwrap_or(true) {
            gamma = Some(bound);
        }
    }
    let g = gamma.unwrap_or_else(|| Scalar::from_integer(1.into()))
        * Scalar::from_integer(side.into());
    let n: Vec<Scalar> = base
        .n
        .iter()
        .zip(w)
        .map(|(a, b)| a + b * &g)
        .collect();
    let c = n
        .iter()
        .zip(anchor.coords())
        .map(|(a, b)| a * b)
        .fold(Scalar::zero(), |acc, v| acc + v);
    RawPlane { n, c }
}

/// Candidate vertical boundaries (oracle route): every data abscissa, all
/// pairwise midpoints, positions outside the data range, and None for the
/// hyperplane at infinity.
pub fn oracle_verticals(d: usize, j: usize, xs: &[Point]) -> Vec<Option<RawPlane>> {
    let mut out: Vec<Option<RawPlane>> = vec![None];
    if j == d - 1 {
        return out;
    }
    let vertical_at = |c: Scalar| -> RawPlane {
        let mut n = vec![Scalar::zero(); d];
        n[0] = scalar(1);
        RawPlane { n, c }
    };
    if (d == 2 && j == 0) || (d == 3 && j == 1) {
        let mut cs: Vec<Scalar> = xs.iter().map(|p| p.coord(0).clone()).collect();
        let base = cs.clone();
        for (i, a) in base.iter().enumerate() {
            for b in base.iter().skip(i + 1) {
                cs.push((a + b) / Scalar::from_integer(2.into()));
            }
        }
        if let (Some(lo), Some(hi)) = (base.iter().min(), base.iter().max()) {
            cs.push(lo - scalar(1));
            cs.push(hi + scalar(1));
        }
        out.extend(cs.into_iter().map(|c| Some(vertical_at(c))));
        return out;
    }
    // d == 3, j == 0: vertical planes from the projected 2D pencils around
    // every projection, plus shifted neighbours of every candidate.
    let projections: Vec<Point> =
        xs.iter().map(|p| Point::xy(p.coord(0).clone(), p.coord(1).clone())).collect();
    for apex in &projections {
        let mut events = Vec::new();
        for q in &projections {
            let w = vsub(q, apex);
            let n = vec![-w[1].clone(), w[0].clone()];
            if !n.iter().all(|v| v.is_zero()) {
                events.push(n);
            }
        }
        let axes = vec![vec![scalar(1), scalar(0)], vec![scalar(0), scalar(1)]];
        for n2 in with_combinations(events, &axes) {
            if n2.iter().all(|v| v.is_zero()) {
                continue;
            }
            let n3 = vec![n2[0].clone(), n2[1].clone(), scalar(0)];
            let c = &n2[0] * apex.coord(0) + &n2[1] * apex.coord(1);
            let base = RawPlane { n: n3, c };
            // Shift off incident points both ways.
            let mut min_abs: Option<Scalar> = None;
            for p in xs {
                let mut acc = Scalar::zero();
                for (a, b) in base.n.iter().zip(p.coords()) {
                    acc += a * b;
                }
                acc -= &base.c;
                if !acc.is_zero() {
                    let v = acc.abs();
                    if min_abs.as_ref().map(|m| v < *m).unwrap_or(true) {
                        min_abs = Some(v);
                    }
                }
            }
            let delta = min_abs.unwrap_or_else(|| scalar(1)) / Scalar::from_integer(2.into());
            for side in [1i64, -1] {
                out.push(Some(RawPlane {
                    n: base.n.clone(),
                    c: &base.c - &delta * Scalar::from_integer(side.into()),
                }));
            }
            out.push(Some(base));
        }
    }
    out
}

pub fn wedge_count(h1: &RawPlane, h2: &Option<RawPlane>, same: bool, xs: &[Point]) -> usize {
    xs.iter()
        .filter(|p| {
            let s1 = h1.sign(p) as i16;
            let s2 = h2.as_ref().map(|h| h.sign(p) as i16).unwrap_or(1);
            if same {
                s1 * s2 >= 0
            } else {
                s1 * s2 <= 0
            }
        })
        .count()
}

/// Oracle regression depth: full enumeration over the candidate superset.
pub fn oracle_regression_depth(af: &AffineFlat, k: usize, xs: &[Point]) -> usize {
    if af.is_vertical(k) {
        return 0;
    }
    let d = af.dim();
    let h1s = oracle_pencil(af, xs);
    let h2s = oracle_verticals(d, d - k - 1, xs);
    let mut best = usize::MAX;
    for h1 in &h1s {
        for h2 in &h2s {
            for same in [true, false] {
                best = best.min(wedge_count(h1, h2, same, xs));
            }
        }
    }
    best
}

/// Oracle crossing distance between two affine flats.
pub fn oracle_crossing(af: &AffineFlat, ag: &AffineFlat, xs: &[Point]) -> usize {
    let h1s = oracle_pencil(af, xs);
    let h2s: Vec<Option<RawPlane>> = oracle_pencil(ag, xs).into_iter().map(Some).collect();
    let mut best = usize::MAX;
    for h1 in &h1s {
        for h2 in &h2s {
            for same in [true, false] {
                best = best.min(wedge_count(h1, h2, same, xs));
            }
        }
    }
    best
}

