//! Candidate hyperplanes through a flat.
//!
//! The minimum of a closed double-wedge count over all hyperplanes through
//! a flat is piecewise constant along any pencil parameter, with
//! breakpoints exactly at the data-incident members. Enumerating the event
//! members plus one member strictly inside every gap therefore covers every
//! combinatorial position. For two-parameter families (vertical planes in
//! 3D, planes through a 3D point) the minimum is attained on a
//! full-dimensional cell, every such cell is adjacent to an edge of the
//! incidence arrangement, and edges are between-members of the
//! one-parameter sub-pencils; the two perturbed neighbours of each edge
//! complete the enumeration.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{AffineFlat, Flat, Hyperplane, Point, Vector};
use crate::kernel::{
    cross3, dot, perp2, scale_dataset, sub, sweep_pencil, with_scaled, Int, MemberKind,
    PencilEvent, Scaled, SweepMember, VerticalSweep,
};
use crate::scalar::Scalar;

/// One candidate wedge boundary: a concrete hyperplane or the hyperplane
/// at infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CandidateBoundary {
    Affine(Hyperplane),
    AtInfinity,
}

/// How a stream member perturbs its base hyperplane.
#[derive(Clone, Debug)]
pub(crate) enum MemberVariant<T> {
    Exact,
    /// Base plane translated off its incident points; incident points get
    /// sign `side`.
    Shifted { side: i8 },
    /// Base plane rotated about the axis through the anchor with the given
    /// direction; points on the axis at parameter t get sign
    /// `side * sign(t)`.
    Tilted { axis_dir: Vec<T>, side: i8 },
}

/// A hyperplane through a pencil anchor together with per-point signs.
pub(crate) struct MemberView<'a, T> {
    pub signs: &'a [i8],
    pub normal: &'a [T],
    pub anchor: &'a Point,
    pub variant: MemberVariant<T>,
}

/// Materialize a member view as a concrete rational hyperplane. Shift and
/// tilt magnitudes are chosen exactly, small enough to preserve the sign
/// of every point not incident to the base plane.
pub(crate) fn materialize<T: Int>(
    normal: &[T],
    anchor: &Point,
    variant: &MemberVariant<T>,
    xs: &[Point],
) -> Result<Hyperplane> {
    let n_rat = Vector(
        normal
            .iter()
            .map(|v| Scalar::from_integer(v.to_big()))
            .collect(),
    );
    let anchor_vec = Vector(anchor.coords().to_vec());
    let offset = n_rat.dot(&anchor_vec);
    match variant {
        MemberVariant::Exact => Hyperplane::new(n_rat, offset),
        MemberVariant::Shifted { side } => {
            let base = Hyperplane::new(n_rat, offset)?;
            let mut min_abs: Option<Scalar> = None;
            for p in xs {
                let r = base.residual(p);
                if !r.is_zero() {
                    let a = r.abs();
                    if min_abs.as_ref().map(|m| a < *m).unwrap_or(true) {
                        min_abs = Some(a);
                    }
                }
            }
            let delta = min_abs.unwrap_or_else(|| Scalar::one());
            let half = delta / Scalar::from_integer(BigInt::from(2));
            let shift = half * Scalar::from_integer(BigInt::from(*side));
            Hyperplane::new(base.normal, base.offset - shift)
        }
        MemberVariant::Tilted { axis_dir, side } => {
            let base = Hyperplane::new(n_rat.clone(), offset)?;
            let w = Vector(
                axis_dir
                    .iter()
                    .map(|v| Scalar::from_integer(v.to_big()))
                    .collect(),
            );
            let mut gamma: Option<Scalar> = None;
            for p in xs {
                let r = base.residual(p);
                if r.is_zero() {
                    continue;
                }
                let t = w.dot(&p.sub(anchor));
                let denom = if t.abs() > Scalar::one() {
                    t.abs()
                } else {
                    Scalar::one()
                };
                let bound = r.abs() / (Scalar::from_integer(BigInt::from(2)) * denom);
                if gamma.as_ref().map(|g| bound < *g).unwrap_or(true) {
                    gamma = Some(bound);
                }
            }
            let g = gamma.unwrap_or_else(Scalar::one) * Scalar::from_integer(BigInt::from(*side));
            let normal2 = n_rat.add(&w.scale(&g));
            let offset2 = normal2.dot(&anchor_vec);
            Hyperplane::new(normal2, offset2)
        }
    }
}

// ---------------------------------------------------------------------------
// Stream builders.
// ---------------------------------------------------------------------------

/// Sweep the pencil of lines through a 2D apex. `pts2` are (projections
/// of) the dataset; signs are reported against every dataset index.
pub(crate) fn point2_sweep<T: Int>(pts2: &[[T; 2]], apex: &[T; 2]) -> Vec<SweepMember<T>> {
    let mut events = Vec::new();
    for (i, p) in pts2.iter().enumerate() {
        let w = [p[0].clone() - apex[0].clone(), p[1].clone() - apex[1].clone()];
        if w[0].sign() == 0 && w[1].sign() == 0 {
            continue;
        }
        let n = perp2(&w);
        let chart = [n[0].clone(), n[1].clone()];
        events.push(PencilEvent::canonical(chart, n, vec![i]));
    }
    let fresh = |normal: &[T]| -> Vec<i8> {
        let off = normal[0].clone() * apex[0].clone() + normal[1].clone() * apex[1].clone();
        pts2.iter()
            .map(|p| {
                (normal[0].clone() * p[0].clone() + normal[1].clone() * p[1].clone()
                    - off.clone())
                .sign()
            })
            .collect()
    };
    let fallback = vec![T::from_big(&BigInt::one()), T::zero()];
    sweep_pencil(events, fresh, |n| perp2(n), &fallback)
}

/// Sweep the pencil of planes through a 3D line.
pub(crate) fn line3_sweep<T: Int>(
    pts: &[Vec<T>],
    anchor: &[T],
    dir: &[T],
) -> Vec<SweepMember<T>> {
    let e1: Vec<T> = if dir[0].sign() != 0 || dir[1].sign() != 0 {
        vec![-dir[1].clone(), dir[0].clone(), T::zero()]
    } else {
        vec![T::from_big(&BigInt::one()), T::zero(), T::zero()]
    };
    let e2 = cross3(dir, &e1);
    let mut events = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let w = sub(p, anchor);
        let n = cross3(dir, &w);
        if n.iter().all(|v| v.sign() == 0) {
            continue; // on the line
        }
        let chart = [dot(&n, &e1), dot(&n, &e2)];
        events.push(PencilEvent::canonical(chart, n, vec![i]));
    }
    let fresh = |normal: &[T]| -> Vec<i8> {
        let off = dot(normal, anchor);
        pts.iter()
            .map(|p| (dot(normal, p) - off.clone()).sign())
            .collect()
    };
    let second = |n: &[T]| -> Vec<T> {
        if cross3(&e1, n).iter().any(|v| v.sign() != 0) {
            e1.clone()
        } else {
            e2.clone()
        }
    };
    sweep_pencil(events, fresh, second, &e1)
}

/// Visit every member of the two-parameter family of vertical planes in
/// 3D: for each distinct data projection, the sub-pencil of vertical
/// planes through it, with both shifted neighbours of each between member.
pub(crate) fn visit_vertical_planes<T: Int>(
    s: &Scaled<T>,
    xs: &[Point],
    mut visit: impl FnMut(&MemberView<'_, T>),
) {
    debug_assert_eq!(s.dim, 3);
    let proj: Vec<[T; 2]> = s
        .pts
        .iter()
        .map(|p| [p[0].clone(), p[1].clone()])
        .collect();
    let mut seen: Vec<usize> = Vec::new();
    for i in 0..proj.len() {
        if seen
            .iter()
            .any(|&j| proj[j][0] == proj[i][0] && proj[j][1] == proj[i][1])
        {
            continue;
        }
        seen.push(i);
        let apex = &proj[i];
        let members = point2_sweep(&proj, apex);
        for m in &members {
            let lifted: Vec<T> = vec![m.normal[0].clone(), m.normal[1].clone(), T::zero()];
            let view = MemberView {
                signs: &m.signs,
                normal: &lifted,
                anchor: &xs[i],
                variant: MemberVariant::Exact,
            };
            visit(&view);
            if m.kind == MemberKind::Between {
                for side in [1i8, -1] {
                    let shifted: Vec<i8> = m
                        .signs
                        .iter()
                        .map(|&v| if v == 0 { side } else { v })
                        .collect();
                    let view = MemberView {
                        signs: &shifted,
                        normal: &lifted,
                        anchor: &xs[i],
                        variant: MemberVariant::Shifted { side },
                    };
                    visit(&view);
                }
            }
        }
    }
}

/// Visit every member of the two-parameter pencil of planes through a 3D
/// point: for each axis through the apex and a data point, the sub-pencil
/// of planes through that axis, with both tilted neighbours of each
/// between member.
pub(crate) fn visit_point3_pencil<T: Int>(
    s: &Scaled<T>,
    apex_scaled: &[T],
    apex: &Point,
    mut visit: impl FnMut(&MemberView<'_, T>),
) {
    debug_assert_eq!(s.dim, 3);
    let mut axes: Vec<Vec<T>> = Vec::new();
    for p in &s.pts {
        let w = sub(p, apex_scaled);
        if w.iter().all(|v| v.sign() == 0) {
            continue;
        }
        if axes
            .iter()
            .any(|a| cross3(a, &w).iter().all(|v| v.sign() == 0))
        {
            continue;
        }
        axes.push(w);
    }
    if axes.is_empty() {
        // All points coincide with the apex: a single plane covers every
        // combinatorial position; its tilts cover nothing new but keep the
        // orientation conventions uniform.
        let normal = vec![T::zero(), T::zero(), T::from_big(&BigInt::one())];
        let signs: Vec<i8> = s
            .pts
            .iter()
            .map(|p| (dot(&normal, p) - dot(&normal, apex_scaled)).sign())
            .collect();
        let view = MemberView {
            signs: &signs,
            normal: &normal,
            anchor: apex,
            variant: MemberVariant::Exact,
        };
        visit(&view);
        return;
    }
    for axis in &axes {
        let members = line3_sweep(&s.pts, apex_scaled, axis);
        // Points on the axis, with their parameter sign.
        let on_axis: Vec<(usize, i8)> = s
            .pts
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                let w = sub(p, apex_scaled);
                if cross3(axis, &w).iter().all(|v| v.sign() == 0) {
                    Some((i, dot(axis, &w).sign()))
                } else {
                    None
                }
            })
            .collect();
        for m in &members {
            let view = MemberView {
                signs: &m.signs,
                normal: &m.normal,
                anchor: apex,
                variant: MemberVariant::Exact,
            };
            visit(&view);
            if m.kind == MemberKind::Between {
                for side in [1i8, -1] {
                    let mut tilted = m.signs.to_vec();
                    for &(i, t) in &on_axis {
                        tilted[i] = side * t;
                    }
                    let view = MemberView {
                        signs: &tilted,
                        normal: &m.normal,
                        anchor: apex,
                        variant: MemberVariant::Tilted {
                            axis_dir: axis.clone(),
                            side,
                        },
                    };
                    visit(&view);
                }
            }
        }
    }
}

/// Visit the full pencil of hyperplanes through an affine flat, covering
/// every combinatorial position relative to the dataset.
pub(crate) fn visit_flat_pencil<T: Int>(
    s: &Scaled<T>,
    af: &AffineFlat,
    mut visit: impl FnMut(&MemberView<'_, T>),
) -> Result<()> {
    let anchor_scaled = s.scale_point(af.anchor());
    match (s.dim, af.k()) {
        (2, 0) => {
            let pts2: Vec<[T; 2]> = s
                .pts
                .iter()
                .map(|p| [p[0].clone(), p[1].clone()])
                .collect();
            let apex = [anchor_scaled[0].clone(), anchor_scaled[1].clone()];
            for m in point2_sweep(&pts2, &apex) {
                visit(&MemberView {
                    signs: &m.signs,
                    normal: &m.normal,
                    anchor: af.anchor(),
                    variant: MemberVariant::Exact,
                });
            }
        }
        (2, 1) | (3, 2) => {
            // The unique containing hyperplane.
            let normal: Vec<T> = match af.k() {
                1 => {
                    let dir: Vec<T> =
                        af.span()[0].0.iter().map(|c| s.scale_scalar(c)).collect();
                    perp2(&dir)
                }
                _ => {
                    let u: Vec<T> = af.span()[0].0.iter().map(|c| s.scale_scalar(c)).collect();
                    let v: Vec<T> = af.span()[1].0.iter().map(|c| s.scale_scalar(c)).collect();
                    cross3(&u, &v)
                }
            };
            let off = dot(&normal, &anchor_scaled);
            let signs: Vec<i8> = s
                .pts
                .iter()
                .map(|p| (dot(&normal, p) - off.clone()).sign())
                .collect();
            visit(&MemberView {
                signs: &signs,
                normal: &normal,
                anchor: af.anchor(),
                variant: MemberVariant::Exact,
            });
        }
        (3, 1) => {
            let dir: Vec<T> = af.span()[0].0.iter().map(|c| s.scale_scalar(c)).collect();
            for m in line3_sweep(&s.pts, &anchor_scaled, &dir) {
                visit(&MemberView {
                    signs: &m.signs,
                    normal: &m.normal,
                    anchor: af.anchor(),
                    variant: MemberVariant::Exact,
                });
            }
        }
        (3, 0) => {
            visit_point3_pencil(s, &anchor_scaled, af.anchor(), visit);
        }
        (d, k) => {
            return Err(Error::UnsupportedFlatPair(format!(
                "pencil through a {k}-flat in dimension {d}"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Public candidate enumeration.
// ---------------------------------------------------------------------------

/// All combinatorially distinct hyperplanes through a flat, relative to a
/// dataset. Every count vector achievable by some hyperplane containing
/// the flat is achieved by a member of the returned list (or the list's
/// negations; orientation is projective).
pub fn pencil_candidates(f: &Flat, xs: &[Point]) -> Result<Vec<CandidateBoundary>> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let d = xs[0].dim();
    for p in xs {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    match f {
        Flat::Affine(af) => {
            if af.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: af.dim(),
                });
            }
            if af.k() == d - 1 {
                return Ok(vec![CandidateBoundary::Affine(af.containing_hyperplane()?)]);
            }
            let extras = flat_scalars(af);
            let data = scale_dataset(xs, &extras, d);
            with_scaled!(&data, s => affine_pencil_members(s, af, xs))
        }
        Flat::VerticalInfinity { j } => vertical_candidates(*j, d, xs),
    }
}

pub(crate) fn flat_scalars(af: &AffineFlat) -> Vec<Scalar> {
    let mut extras: Vec<Scalar> = af.anchor().coords().to_vec();
    for v in af.span() {
        extras.extend(v.0.iter().cloned());
    }
    extras
}

fn affine_pencil_members<T: Int>(
    s: &Scaled<T>,
    af: &AffineFlat,
    xs: &[Point],
) -> Result<Vec<CandidateBoundary>> {
    let anchor_scaled = s.scale_point(af.anchor());
    let mut out = Vec::new();
    match (s.dim, af.k()) {
        (2, 0) => {
            let pts2: Vec<[T; 2]> = s
                .pts
                .iter()
                .map(|p| [p[0].clone(), p[1].clone()])
                .collect();
            let apex = [anchor_scaled[0].clone(), anchor_scaled[1].clone()];
            for m in point2_sweep(&pts2, &apex) {
                out.push(CandidateBoundary::Affine(materialize(
                    &m.normal,
                    af.anchor(),
                    &MemberVariant::Exact,
                    xs,
                )?));
            }
        }
        (3, 1) => {
            let dir: Vec<T> = af.span()[0]
                .0
                .iter()
                .map(|c| s.scale_scalar(c))
                .collect();
            for m in line3_sweep(&s.pts, &anchor_scaled, &dir) {
                out.push(CandidateBoundary::Affine(materialize(
                    &m.normal,
                    af.anchor(),
                    &MemberVariant::Exact,
                    xs,
                )?));
            }
        }
        (3, 0) => {
            let mut res: Result<()> = Ok(());
            visit_point3_pencil(s, &anchor_scaled, af.anchor(), |view| {
                if res.is_err() {
                    return;
                }
                match materialize(view.normal, view.anchor, &view.variant, xs) {
                    Ok(h) => out.push(CandidateBoundary::Affine(h)),
                    Err(e) => res = Err(e),
                }
            });
            res?;
        }
        (d, k) => {
            return Err(Error::UnsupportedFlatPair(format!(
                "pencil through a {k}-flat in dimension {d}"
            )));
        }
    }
    Ok(out)
}

fn vertical_candidates(j: usize, d: usize, xs: &[Point]) -> Result<Vec<CandidateBoundary>> {
    if j >= d {
        return Err(Error::InvalidFlat(format!(
            "flat at vertical infinity of dimension {j} does not exist in dimension {d}"
        )));
    }
    if j == d - 1 {
        // Only the hyperplane at infinity contains the whole hyperplane at
        // infinity.
        return Ok(vec![CandidateBoundary::AtInfinity]);
    }
    if (d == 2 && j == 0) || (d == 3 && j == 1) {
        // Hyperplanes x = c.
        let data = scale_dataset(xs, &[], d);
        let out = with_scaled!(&data, s => {
            let vs = VerticalSweep::new(&s.pts);
            let mut out = Vec::new();
            for t in 0..vs.group_x.len() {
                out.push(CandidateBoundary::Affine(Hyperplane::vertical_at(
                    d,
                    s.unscale(&vs.group_x[t]),
                )));
                if t + 1 < vs.group_x.len() {
                    let mid = crate::kernel::halve(vs.group_x[t].clone() + vs.group_x[t + 1].clone());
                    out.push(CandidateBoundary::Affine(Hyperplane::vertical_at(
                        d,
                        s.unscale(&mid),
                    )));
                }
            }
            out
        });
        let mut out = out;
        out.push(CandidateBoundary::AtInfinity);
        return Ok(out);
    }
    // d == 3, j == 0: all vertical planes.
    let data = scale_dataset(xs, &[], 3);
    let mut out = with_scaled!(&data, s => {
        let mut out = Vec::new();
        let mut res: Result<()> = Ok(());
        visit_vertical_planes(s, xs, |view| {
            if res.is_err() {
                return;
            }
            match materialize(view.normal, view.anchor, &view.variant, xs) {
                Ok(h) => out.push(CandidateBoundary::Affine(h)),
                Err(e) => res = Err(e),
            }
        });
        res?;
        out
    });
    out.push(CandidateBoundary::AtInfinity);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::orient;
    use crate::geometry::Sign;

    #[test]
    fn origin_pencil_has_two_events_and_two_betweens() {
        let xs = vec![Point::xy_i(1, 0), Point::xy_i(0, 1)];
        let f = Flat::point(Point::xy_i(0, 0));
        let cands = pencil_candidates(&f, &xs).unwrap();
        // 2 event lines + 2 between lines; with both orientations these are
        // the 4 + 4 oriented members of the full circle, antipodal
        // identified.
        assert_eq!(cands.len(), 4);
        for c in &cands {
            match c {
                CandidateBoundary::Affine(h) => {
                    assert_eq!(orient(h, &Point::xy_i(0, 0)).unwrap(), Sign::Zero);
                }
                CandidateBoundary::AtInfinity => panic!("unexpected sentinel"),
            }
        }
    }

    #[test]
    fn vertical_family_events_and_midpoints() {
        let xs = vec![Point::xyz_i(0, 5, 1), Point::xyz_i(2, -1, 3)];
        let f = Flat::VerticalInfinity { j: 1 };
        let cands = pencil_candidates(&f, &xs).unwrap();
        // planes x = 0, 1, 2 plus the sentinel
        assert_eq!(cands.len(), 4);
        let mut xs_seen = Vec::new();
        for c in &cands {
            if let CandidateBoundary::Affine(h) = c {
                assert!(h.normal.0[1].is_zero() && h.normal.0[2].is_zero());
                xs_seen.push(h.offset.clone());
            }
        }
        use crate::scalar::scalar;
        assert_eq!(xs_seen, vec![scalar(0), scalar(1), scalar(2)]);
        assert!(matches!(cands[3], CandidateBoundary::AtInfinity));
    }

    #[test]
    fn line3_pencil_size_bounds() {
        // A line through 2 of 5 points: between 5 and 10 members.
        let xs = vec![
            Point::xyz_i(0, 0, 0),
            Point::xyz_i(1, 0, 0),
            Point::xyz_i(0, 1, 2),
            Point::xyz_i(3, -1, 1),
            Point::xyz_i(-2, 2, 5),
        ];
        let f = Flat::line(
            Point::xyz_i(0, 0, 0),
            Vector(vec![
                crate::scalar::scalar(1),
                crate::scalar::scalar(0),
                crate::scalar::scalar(0),
            ]),
        )
        .unwrap();
        let cands = pencil_candidates(&f, &xs).unwrap();
        assert!(cands.len() >= 5 && cands.len() <= 10, "{}", cands.len());
    }

    #[test]
    fn empty_dataset_gives_empty_candidates() {
        let f = Flat::point(Point::xy_i(0, 0));
        assert!(pencil_candidates(&f, &[]).unwrap().is_empty());
    }
}
