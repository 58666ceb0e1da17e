//! Exact crossing distance and regression depth via closed double-wedge
//! minimization, with witness certificates.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    AffineFlat, DoubleWedge, Flat, Hyperplane, Pairing, Point, Vector,
};
use crate::kernel::{scale_dataset, with_scaled, Int, Scaled, VerticalSweep};
use crate::pencil::{
    flat_scalars, materialize, visit_flat_pencil, visit_vertical_planes, MemberVariant,
};
use crate::scalar::{scalar, Scalar};

/// A depth value together with the closed double wedge attaining it.
#[derive(Clone, Debug)]
pub struct DepthCertificate {
    pub depth: usize,
    pub witness: DepthWitness,
    /// Indices of the dataset points inside the witness, ascending.
    pub contained_indices: Vec<usize>,
}

/// Witness for a depth value.
///
/// A vertical flat is a nonfit outright; the certificate records a
/// vertical hyperplane containing it instead of a wedge, since when data
/// points lie on that hyperplane no point-free wedge exists.
#[derive(Clone, Debug)]
pub enum DepthWitness {
    Wedge(DoubleWedge),
    VerticalFlat { containing: Hyperplane },
}

impl DepthCertificate {
    pub fn wedge(&self) -> Option<&DoubleWedge> {
        match &self.witness {
            DepthWitness::Wedge(w) => Some(w),
            DepthWitness::VerticalFlat { .. } => None,
        }
    }
}

/// Best candidate tracked during minimization, in scaled space.
struct Best<T> {
    count: usize,
    h1_normal: Vec<T>,
    h1_anchor: Point,
    h1_variant: MemberVariant<T>,
    h2: H2Spec<T>,
    pairing: Pairing,
}

enum H2Spec<T> {
    Plane {
        normal: Vec<T>,
        anchor: Point,
        variant: MemberVariant<T>,
    },
    VerticalAt(Scalar),
    Sentinel,
}

fn assemble<T: Int>(best: Best<T>, xs: &[Point], dim: usize) -> Result<DepthCertificate> {
    let h1 = materialize(&best.h1_normal, &best.h1_anchor, &best.h1_variant, xs)?;
    let h2 = match best.h2 {
        H2Spec::Plane {
            normal,
            anchor,
            variant,
        } => Some(materialize(&normal, &anchor, &variant, xs)?),
        H2Spec::VerticalAt(c) => Some(Hyperplane::vertical_at(dim, c)),
        H2Spec::Sentinel => None,
    };
    let wedge = DoubleWedge {
        h1,
        h2,
        pairing: best.pairing,
    };
    let contained_indices = wedge.contained_indices(xs)?;
    if contained_indices.len() != best.count {
        return Err(Error::VerificationFailed {
            construction: "depth certificate",
            details: format!(
                "witness recount {} does not match minimized count {}",
                contained_indices.len(),
                best.count
            ),
        });
    }
    Ok(DepthCertificate {
        depth: best.count,
        witness: DepthWitness::Wedge(wedge),
        contained_indices,
    })
}

fn count_same(s1: &[i8], s2: &[i8]) -> usize {
    s1.iter().zip(s2).filter(|(a, b)| **a * **b >= 0).count()
}

fn count_opposite(s1: &[i8], s2: &[i8]) -> usize {
    s1.iter().zip(s2).filter(|(a, b)| **a * **b <= 0).count()
}

/// The crossing distance between two flats: the minimum number of points
/// in a closed double wedge with one bounding hyperplane through each
/// flat. Symmetric in its flat arguments.
pub fn crossing_distance(f: &Flat, g: &Flat, xs: &[Point]) -> Result<DepthCertificate> {
    match (f, g) {
        (Flat::VerticalInfinity { .. }, Flat::Affine(_)) => crossing_distance(g, f, xs),
        (Flat::VerticalInfinity { .. }, Flat::VerticalInfinity { .. }) => Err(
            Error::UnsupportedFlatPair("both flats at vertical infinity".into()),
        ),
        (Flat::Affine(af), Flat::VerticalInfinity { j }) => affine_vs_vertical(af, *j, xs),
        (Flat::Affine(af), Flat::Affine(ag)) => affine_vs_affine(af, ag, xs),
    }
}

fn check_dims(d: usize, xs: &[Point]) -> Result<()> {
    if d != 2 && d != 3 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: d,
        });
    }
    for p in xs {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    Ok(())
}

fn affine_vs_vertical(af: &AffineFlat, j: usize, xs: &[Point]) -> Result<DepthCertificate> {
    let d = af.dim();
    check_dims(d, xs)?;
    if j >= d {
        return Err(Error::InvalidFlat(format!(
            "flat at vertical infinity of dimension {j} does not exist in dimension {d}"
        )));
    }
    let extras = flat_scalars(af);
    let data = scale_dataset(xs, &extras, d);
    if j == d - 1 {
        return with_scaled!(&data, s => halfspace_driver(s, af, xs));
    }
    if (d == 2 && j == 0) || (d == 3 && j == 1) {
        return with_scaled!(&data, s => pencil_vertical_driver(s, af, xs));
    }
    // d == 3, j == 0: the two-parameter family of vertical planes.
    match af.k() {
        1 | 2 => with_scaled!(&data, s => plane_vertical2_driver(s, af, xs)),
        k => Err(Error::UnsupportedFlatPair(format!(
            "{k}-flat against the two-parameter vertical family"
        ))),
    }
}

/// Minimum over closed halfspaces whose boundary contains the flat.
fn halfspace_driver<T: Int>(
    s: &Scaled<T>,
    af: &AffineFlat,
    xs: &[Point],
) -> Result<DepthCertificate> {
    let mut best_count = usize::MAX;
    let mut best: Option<Best<T>> = None;
    visit_flat_pencil(s, af, |view| {
        let plus = view.signs.iter().filter(|&&v| v >= 0).count();
        let minus = view.signs.iter().filter(|&&v| v <= 0).count();
        for (count, pairing) in [(plus, Pairing::Same), (minus, Pairing::Opposite)] {
            if count < best_count {
                best_count = count;
                best = Some(Best {
                    count,
                    h1_normal: view.normal.to_vec(),
                    h1_anchor: view.anchor.clone(),
                    h1_variant: view.variant.clone(),
                    h2: H2Spec::Sentinel,
                    pairing,
                });
            }
        }
    })?;
    assemble(best.expect("pencil visit produced no members"), xs, s.dim)
}

/// Pencil through the flat against hyperplanes `x = c` plus the sentinel.
fn pencil_vertical_driver<T: Int>(
    s: &Scaled<T>,
    af: &AffineFlat,
    xs: &[Point],
) -> Result<DepthCertificate> {
    let vs = VerticalSweep::new(&s.pts);
    let mut best_count = usize::MAX;
    let mut best: Option<Best<T>> = None;
    visit_flat_pencil(s, af, |view| {
        let vb = vs.min_for_row(view.signs);
        if vb.count < best_count {
            best_count = vb.count;
            let h2 = match vs.candidate_x(vb.cand) {
                Some(x) => H2Spec::VerticalAt(s.unscale(&x)),
                None => H2Spec::Sentinel,
            };
            best = Some(Best {
                count: vb.count,
                h1_normal: view.normal.to_vec(),
                h1_anchor: view.anchor.clone(),
                h1_variant: view.variant.clone(),
                h2,
                pairing: if vb.same_pairing {
                    Pairing::Same
                } else {
                    Pairing::Opposite
                },
            });
        }
    })?;
    assemble(best.expect("pencil visit produced no members"), xs, s.dim)
}

/// Flat (plane or line in 3D) against the two-parameter vertical family.
fn plane_vertical2_driver<T: Int>(
    s: &Scaled<T>,
    af: &AffineFlat,
    xs: &[Point],
) -> Result<DepthCertificate> {
    let mut rows: Vec<(Vec<i8>, Vec<T>, Point, MemberVariant<T>)> = Vec::new();
    visit_flat_pencil(s, af, |view| {
        rows.push((
            view.signs.to_vec(),
            view.normal.to_vec(),
            view.anchor.clone(),
            view.variant.clone(),
        ));
    })?;
    let mut best_count = usize::MAX;
    let mut best: Option<Best<T>> = None;
    for (s1, h1_normal, h1_anchor, h1_variant) in &rows {
        visit_vertical_planes(s, xs, |view| {
            for (count, pairing) in [
                (count_same(s1, view.signs), Pairing::Same),
                (count_opposite(s1, view.signs), Pairing::Opposite),
            ] {
                if count < best_count {
                    best_count = count;
                    best = Some(Best {
                        count,
                        h1_normal: h1_normal.clone(),
                        h1_anchor: h1_anchor.clone(),
                        h1_variant: h1_variant.clone(),
                        h2: H2Spec::Plane {
                            normal: view.normal.to_vec(),
                            anchor: view.anchor.clone(),
                            variant: view.variant.clone(),
                        },
                        pairing,
                    });
                }
            }
        });
        // Sentinel boundary.
        let plus = s1.iter().filter(|&&v| v >= 0).count();
        let minus = s1.iter().filter(|&&v| v <= 0).count();
        for (count, pairing) in [(plus, Pairing::Same), (minus, Pairing::Opposite)] {
            if count < best_count {
                best_count = count;
                best = Some(Best {
                    count,
                    h1_normal: h1_normal.clone(),
                    h1_anchor: h1_anchor.clone(),
                    h1_variant: h1_variant.clone(),
                    h2: H2Spec::Sentinel,
                    pairing,
                });
            }
        }
    }
    assemble(best.expect("pencil visit produced no members"), xs, s.dim)
}

fn affine_vs_affine(af: &AffineFlat, ag: &AffineFlat, xs: &[Point]) -> Result<DepthCertificate> {
    let d = af.dim();
    check_dims(d, xs)?;
    if ag.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: ag.dim(),
        });
    }
    let supported = |k: usize| (d == 2 && k <= 1) || (d == 3 && (k == 1 || k == 2));
    if !supported(af.k()) || !supported(ag.k()) {
        return Err(Error::UnsupportedFlatPair(format!(
            "{}-flat against {}-flat in dimension {d}",
            af.k(),
            ag.k()
        )));
    }
    let mut extras = flat_scalars(af);
    extras.extend(flat_scalars(ag));
    let data = scale_dataset(xs, &extras, d);
    with_scaled!(&data, s => pair_driver(s, af, ag, xs))
}

type OwnedRow<T> = (Vec<i8>, Vec<T>, Point, MemberVariant<T>);

fn collect_rows<T: Int>(s: &Scaled<T>, flat: &AffineFlat) -> Result<Vec<OwnedRow<T>>> {
    let mut rows = Vec::new();
    visit_flat_pencil(s, flat, |view| {
        rows.push((
            view.signs.to_vec(),
            view.normal.to_vec(),
            view.anchor.clone(),
            view.variant.clone(),
        ));
    })?;
    Ok(rows)
}

fn pair_driver<T: Int>(
    s: &Scaled<T>,
    af: &AffineFlat,
    ag: &AffineFlat,
    xs: &[Point],
) -> Result<DepthCertificate> {
    let rows_f = collect_rows(s, af)?;
    let rows_g = collect_rows(s, ag)?;
    let mut best_count = usize::MAX;
    let mut best: Option<Best<T>> = None;
    for (s1, n1, a1, v1) in &rows_f {
        for (s2, n2, a2, v2) in &rows_g {
            for (count, pairing) in [
                (count_same(s1, s2), Pairing::Same),
                (count_opposite(s1, s2), Pairing::Opposite),
            ] {
                if count < best_count {
                    best_count = count;
                    best = Some(Best {
                        count,
                        h1_normal: n1.clone(),
                        h1_anchor: a1.clone(),
                        h1_variant: v1.clone(),
                        h2: H2Spec::Plane {
                            normal: n2.clone(),
                            anchor: a2.clone(),
                            variant: v2.clone(),
                        },
                        pairing,
                    });
                }
            }
        }
    }
    assemble(best.expect("pencil visits produced no members"), xs, s.dim)
}

/// Count-only regression depth of a non-vertical line in 3D against a
/// pre-scaled dataset: the pencil sweep against the vertical boundaries,
/// without witness assembly. The heuristic search calls this in a loop.
pub(crate) fn line3_depth_count<T: Int>(
    s: &Scaled<T>,
    vs: &VerticalSweep<T>,
    anchor: &[T],
    dir: &[T],
) -> usize {
    let members = crate::pencil::line3_sweep(&s.pts, anchor, dir);
    let mut best = usize::MAX;
    for m in &members {
        let vb = vs.min_for_row(&m.signs);
        best = best.min(vb.count);
    }
    best
}

/// The regression depth of an affine k-flat: its crossing distance from
/// the (d−k−1)-flat at vertical infinity. Vertical flats are nonfits and
/// have depth zero.
pub fn regression_depth(f: &Flat, k: usize, xs: &[Point]) -> Result<DepthCertificate> {
    let af = f
        .affine()
        .ok_or_else(|| Error::InvalidFlat("regression depth of a flat at infinity".into()))?;
    if af.k() != k {
        return Err(Error::InvalidFlat(format!(
            "flat has dimension {}, expected k = {k}",
            af.k()
        )));
    }
    let d = af.dim();
    check_dims(d, xs)?;
    if k >= d {
        return Err(Error::InvalidFlat(format!(
            "k = {k} out of range for dimension {d}"
        )));
    }
    if af.is_vertical(k) {
        return vertical_zero_certificate(af, k);
    }
    crossing_distance(f, &Flat::VerticalInfinity { j: d - k - 1 }, xs)
}

fn vertical_zero_certificate(af: &AffineFlat, k: usize) -> Result<DepthCertificate> {
    let d = af.dim();
    // A vertical hyperplane containing the flat: its normal lives in the
    // independent subspace, orthogonal to the projected span.
    let proj: Vec<Vec<Scalar>> = af.span().iter().map(|v| v.0[..k].to_vec()).collect();
    let normal_ind: Vec<Scalar> = match k {
        1 => vec![scalar(1)],
        2 => {
            let nonzero = proj.iter().find(|p| p.iter().any(|c| !c.is_zero()));
            match nonzero {
                Some(p) => vec![-p[1].clone(), p[0].clone()],
                None => vec![scalar(1), scalar(0)],
            }
        }
        _ => unreachable!("points are never vertical"),
    };
    let mut normal = normal_ind;
    normal.resize(d, scalar(0));
    let normal = Vector(normal);
    let offset = normal.dot(&Vector(af.anchor().coords().to_vec()));
    let containing = Hyperplane::new(normal, offset)?;
    Ok(DepthCertificate {
        depth: 0,
        witness: DepthWitness::VerticalFlat { containing },
        contained_indices: Vec::new(),
    })
}

/// Location (halfspace, Tukey) depth of a point: the minimum number of
/// points in a closed halfspace whose boundary passes through it.
pub fn tukey_depth(p: &Point, xs: &[Point]) -> Result<DepthCertificate> {
    regression_depth(&Flat::point(p.clone()), 0, xs)
}

/// Minimum over closed halfspaces containing the flat of the number of
/// points of `subset` they contain. The minimization restricts to
/// halfspaces whose boundary contains the flat (any containing halfspace
/// can be shrunk onto the flat without gaining points).
pub fn flat_halfspace_depth(f: &Flat, subset: &[Point]) -> Result<usize> {
    let af = f
        .affine()
        .ok_or_else(|| Error::InvalidFlat("halfspace depth of a flat at infinity".into()))?;
    if subset.is_empty() {
        return Ok(0);
    }
    let d = af.dim();
    Ok(crossing_distance(f, &Flat::VerticalInfinity { j: d - 1 }, subset)?.depth)
}

/// Randomized audit of a depth certificate: samples `trials` random double
/// wedges bounded by a hyperplane through the flat and a vertical
/// hyperplane, and reports whether none contained fewer than `cert.depth`
/// points.
pub fn certify_not_deeper(
    cert: &DepthCertificate,
    f: &Flat,
    k: usize,
    xs: &[Point],
    trials: usize,
    seed: u64,
) -> Result<bool> {
    let af = match f.affine() {
        Some(af) => af,
        None => return Ok(true),
    };
    if cert.depth == 0 {
        return Ok(true);
    }
    let d = af.dim();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let min_x = xs
        .iter()
        .map(|p| p.coord(0).clone())
        .min()
        .unwrap_or_else(|| scalar(0));
    let max_x = xs
        .iter()
        .map(|p| p.coord(0).clone())
        .max()
        .unwrap_or_else(|| scalar(0));
    for _ in 0..trials {
        let h1 = random_plane_through(af, &mut rng, d)?;
        let h2 = if rng.random_range(0..4) == 0 {
            None
        } else {
            Some(random_vertical(d, k, &min_x, &max_x, &mut rng))
        };
        let pairing = if rng.random_bool(0.5) {
            Pairing::Same
        } else {
            Pairing::Opposite
        };
        let wedge = DoubleWedge { h1, h2, pairing };
        let mut count = 0usize;
        for p in xs {
            if wedge.contains(p)? {
                count += 1;
            }
        }
        if count < cert.depth {
            return Ok(false);
        }
    }
    Ok(true)
}

fn random_plane_through(af: &AffineFlat, rng: &mut ChaCha12Rng, d: usize) -> Result<Hyperplane> {
    let rand_i = |rng: &mut ChaCha12Rng| -> i64 { rng.random_range(-1000..=1000) };
    match (d, af.k()) {
        (2, 1) | (3, 2) => af.containing_hyperplane(),
        (2, 0) => loop {
            let n = Vector(vec![scalar(rand_i(rng)), scalar(rand_i(rng))]);
            if !n.is_zero() {
                let off = n.dot(&Vector(af.anchor().coords().to_vec()));
                return Hyperplane::new(n, off);
            }
        },
        (3, 0) => loop {
            let n = Vector(vec![
                scalar(rand_i(rng)),
                scalar(rand_i(rng)),
                scalar(rand_i(rng)),
            ]);
            if !n.is_zero() {
                let off = n.dot(&Vector(af.anchor().coords().to_vec()));
                return Hyperplane::new(n, off);
            }
        },
        (3, 1) => {
            // Random member of the plane pencil around the line.
            let v = &af.span()[0];
            let e1 = if !v.0[0].is_zero() || !v.0[1].is_zero() {
                Vector(vec![-v.0[1].clone(), v.0[0].clone(), scalar(0)])
            } else {
                Vector(vec![scalar(1), scalar(0), scalar(0)])
            };
            let e2 = v.cross(&e1);
            loop {
                let a = scalar(rand_i(rng));
                let b = scalar(rand_i(rng));
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let n = e1.scale(&a).add(&e2.scale(&b));
                if n.is_zero() {
                    continue;
                }
                let off = n.dot(&Vector(af.anchor().coords().to_vec()));
                return Hyperplane::new(n, off);
            }
        }
        (d, k) => Err(Error::UnsupportedFlatPair(format!(
            "random hyperplane through a {k}-flat in dimension {d}"
        ))),
    }
}

fn random_vertical(
    d: usize,
    k: usize,
    min_x: &Scalar,
    max_x: &Scalar,
    rng: &mut ChaCha12Rng,
) -> Hyperplane {
    let mut rand_ratio = |lo: i64, hi: i64| -> Scalar {
        Scalar::new(
            num_bigint::BigInt::from(rng.random_range(lo..=hi)),
            num_bigint::BigInt::from(997i64),
        )
    };
    if d == 3 && k == 2 {
        // Random vertical plane: normal (a, b, 0).
        loop {
            let a = rand_ratio(-997_000, 997_000);
            let b = rand_ratio(-997_000, 997_000);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let n = Vector(vec![a, b, scalar(0)]);
            let off = rand_ratio(-997_000, 997_000);
            return Hyperplane { normal: n, offset: off };
        }
    }
    // Hyperplane x = c with c spanning the data range plus slack.
    let lo = min_x - scalar(1);
    let hi = max_x + scalar(1);
    let t = rand_ratio(0, 997);
    let c = &lo + (hi - &lo) * t;
    Hyperplane::vertical_at(d, c)
}
