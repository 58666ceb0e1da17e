//! Deepest-flat search: the exact deepest regression line in the plane, a
//! certified heuristic for 3D flats, and the sampling-based approximation.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::bounds::deep_flat_constant;
use crate::constructions::{
    construct_deep_line_3d, construct_deep_plane_3d, DeepLineStrategy,
};
use crate::constructions::{line_to_flat, materialize_pair_line, PairVariant};
use crate::depth::{line3_depth_count, regression_depth, DepthCertificate};
use crate::error::{Error, Result};
use crate::geometry::{Flat, Point, Vector};
use crate::kernel::{scale_dataset, with_scaled, Int, Scaled, VerticalSweep};
use crate::scalar::{scalar, Scalar};

/// The exact deepest regression line of a planar point set.
///
/// The search space is every line through two data points together with
/// four symbolically perturbed variants each (two tilts about the
/// midpoint, two parallel shifts); the returned depth is certified by the
/// exact evaluator and is never below the catline bound ⌈n/3⌉.
pub fn deepest_line_2d(xs: &[Point]) -> Result<(Flat, DepthCertificate)> {
    if xs.is_empty() {
        return Err(Error::InvalidInput("deepest line of an empty set".into()));
    }
    for p in xs {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: p.dim(),
            });
        }
    }
    let n = xs.len();
    if n == 1 {
        let flat = Flat::line(xs[0].clone(), Vector(vec![scalar(1), scalar(0)]))?;
        let cert = regression_depth(&flat, 1, xs)?;
        return Ok((flat, cert));
    }
    let data = scale_dataset(xs, &[], 2);
    let (best_depth, i, j, variant) = with_scaled!(&data, s => scan_pairs(s));
    if i == j {
        // All points coincide: any line through the common point.
        let flat = Flat::line(xs[0].clone(), Vector(vec![scalar(1), scalar(0)]))?;
        let cert = regression_depth(&flat, 1, xs)?;
        return Ok((flat, cert));
    }
    let line = with_scaled!(&data, s => {
        materialize_pair_line(s, xs, i, j, variant.to_pair_variant())
    })?;
    let flat = line_to_flat(&line)?;
    let cert = regression_depth(&flat, 1, xs)?;
    if cert.depth != best_depth {
        return Err(Error::VerificationFailed {
            construction: "deepest line",
            details: format!(
                "materialized candidate has depth {}, scan computed {best_depth}",
                cert.depth
            ),
        });
    }
    Ok((flat, cert))
}

/// Scan all pair-line candidates and return the maximizer description.
fn scan_pairs<T: Int>(s: &Scaled<T>) -> (usize, usize, usize, PairVariantId) {
    let n = s.pts.len();
    let vs = VerticalSweep::new(&s.pts);
    let mut base = vec![0i8; n];
    let mut row = vec![0i8; n];
    let mut best = (0usize, 0usize, 1usize, PairVariantId::Base);
    let mut best_depth = 0usize;
    let mut have = false;
    for i in 0..n {
        for j in i + 1..n {
            let dx = s.pts[j][0].clone() - s.pts[i][0].clone();
            let dy = s.pts[j][1].clone() - s.pts[i][1].clone();
            if dx.sign() == 0 && dy.sign() == 0 {
                continue;
            }
            // A vertical base line is a nonfit; only its tilts compete.
            let vertical_base = dx.sign() == 0;
            // Base line through i and j: normal (-dy, dx).
            let off = dy.clone() * s.pts[i][0].clone() - dx.clone() * s.pts[i][1].clone();
            for (idx, p) in s.pts.iter().enumerate() {
                base[idx] =
                    (dy.clone() * p[0].clone() - dx.clone() * p[1].clone() - off.clone()).sign();
            }
            // Negate: normal = (-dy, dx) gives -(the above); the sign
            // convention only matters consistently per row.
            for b in base.iter_mut() {
                *b = -*b;
            }
            let mid = [
                crate::kernel::halve(s.pts[i][0].clone() + s.pts[j][0].clone()),
                crate::kernel::halve(s.pts[i][1].clone() + s.pts[j][1].clone()),
            ];
            for variant in PairVariantId::ALL {
                if vertical_base && !matches!(variant, PairVariantId::TiltPlus | PairVariantId::TiltMinus) {
                    continue;
                }
                fill_variant(&mut row, &base, variant, s, &[dx.clone(), dy.clone()], &mid);
                let vb = vs.min_for_row(&row);
                if !have || vb.count > best_depth {
                    have = true;
                    best_depth = vb.count;
                    best = (best_depth, i, j, variant);
                }
            }
        }
    }
    if !have {
        // All points coincide: any line through them.
        return (n, 0, 0, PairVariantId::Base);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PairVariantId {
    Base,
    ShiftPlus,
    ShiftMinus,
    TiltPlus,
    TiltMinus,
}

impl PairVariantId {
    pub(crate) const ALL: [PairVariantId; 5] = [
        PairVariantId::Base,
        PairVariantId::ShiftPlus,
        PairVariantId::ShiftMinus,
        PairVariantId::TiltPlus,
        PairVariantId::TiltMinus,
    ];

    pub(crate) fn side(self) -> i8 {
        match self {
            PairVariantId::ShiftPlus | PairVariantId::TiltPlus => 1,
            PairVariantId::ShiftMinus | PairVariantId::TiltMinus => -1,
            PairVariantId::Base => 0,
        }
    }

    pub(crate) fn to_pair_variant(self) -> PairVariant {
        match self {
            PairVariantId::Base => PairVariant::Base,
            PairVariantId::ShiftPlus => PairVariant::Shift(1),
            PairVariantId::ShiftMinus => PairVariant::Shift(-1),
            PairVariantId::TiltPlus => PairVariant::Tilt(1),
            PairVariantId::TiltMinus => PairVariant::Tilt(-1),
        }
    }
}

fn fill_variant<T: Int>(
    row: &mut [i8],
    base: &[i8],
    variant: PairVariantId,
    s: &Scaled<T>,
    dir: &[T],
    mid: &[T; 2],
) {
    match variant {
        PairVariantId::Base => row.copy_from_slice(base),
        PairVariantId::ShiftPlus | PairVariantId::ShiftMinus => {
            let side = variant.side();
            for (r, &b) in row.iter_mut().zip(base) {
                *r = if b == 0 { side } else { b };
            }
        }
        PairVariantId::TiltPlus | PairVariantId::TiltMinus => {
            let side = variant.side();
            for (idx, (r, &b)) in row.iter_mut().zip(base).enumerate() {
                if b != 0 {
                    *r = b;
                } else {
                    let t = (s.pts[idx][0].clone() - mid[0].clone()) * dir[0].clone()
                        + (s.pts[idx][1].clone() - mid[1].clone()) * dir[1].clone();
                    *r = side * t.sign();
                }
            }
        }
    }
}

/// Heuristic deepest k-flat in 3D: best of the guaranteed constructions,
/// flats through data tuples, and seeded random perturbations, up to
/// `budget` exact evaluations. The returned depth is an exact certificate
/// of the returned flat and a lower bound on the true maximum.
pub fn deepest_flat_heuristic_3d(
    xs: &[Point],
    k: usize,
    budget: usize,
    seed: u64,
) -> Result<(Flat, DepthCertificate)> {
    if budget == 0 {
        return Err(Error::InvalidInput("heuristic budget must be positive".into()));
    }
    if k != 1 && k != 2 {
        return Err(Error::InvalidFlat(format!("heuristic supports k in {{1,2}}, got {k}")));
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
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut spent = 0usize;
    let mut best: Option<(Flat, DepthCertificate)> = None;
    let consider = |flat: Flat, spent: &mut usize, best: &mut Option<(Flat, DepthCertificate)>| -> Result<()> {
        if *spent >= budget {
            return Ok(());
        }
        *spent += 1;
        let af = flat.affine().expect("heuristic candidates are affine");
        if af.is_vertical(k) {
            return Ok(());
        }
        let cert = regression_depth(&flat, k, xs)?;
        if best.as_ref().map(|(_, c)| cert.depth > c.depth).unwrap_or(true) {
            *best = Some((flat, cert));
        }
        Ok(())
    };
    // Guaranteed constructions first.
    if k == 1 {
        for strategy in [DeepLineStrategy::Median, DeepLineStrategy::ThreePiece] {
            if let Ok((flat, _, cert)) = construct_deep_line_3d(xs, strategy) {
                spent += 1;
                if best.as_ref().map(|(_, c)| cert.depth > c.depth).unwrap_or(true) {
                    best = Some((flat, cert));
                }
            }
        }
    } else if let Ok((flat, _, cert)) = construct_deep_plane_3d(xs, seed) {
        spent += 1;
        if best.as_ref().map(|(_, c)| cert.depth > c.depth).unwrap_or(true) {
            best = Some((flat, cert));
        }
    }
    // Flats through data tuples, in seeded random order. Lines are
    // evaluated count-only over a pre-scaled dataset; the winner gets a
    // full certificate at the end.
    if k == 1 {
        let jitter_grid = crate::scalar::ratio(1, 1000);
        let data = scale_dataset(xs, &[jitter_grid], 3);
        let (flat, cert) =
            with_scaled!(&data, s => line_candidates_scan(s, xs, budget, &mut spent, seed, best.as_ref().map(|(_, c)| c.depth)))?;
        if let Some(flat) = flat {
            let cert = cert.expect("scan winners carry a count");
            if best.as_ref().map(|(_, c)| cert.depth > c.depth).unwrap_or(true) {
                best = Some((flat, cert));
            }
        }
    } else {
        let mut triples: Vec<(usize, usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    triples.push((i, j, l));
                }
            }
        }
        triples.shuffle(&mut rng);
        for (i, j, l) in triples {
            if spent >= budget {
                break;
            }
            let u = xs[j].sub(&xs[i]);
            let v = xs[l].sub(&xs[i]);
            if let Ok(flat) = Flat::plane(xs[i].clone(), u, v) {
                consider(flat, &mut spent, &mut best)?;
            }
        }
    }
    // Seeded local search around the best flat found so far.
    while k == 2 && spent < budget {
        let Some((flat, _)) = &best else { break };
        let af = flat.affine().unwrap().clone();
        let jitter = |rng: &mut ChaCha12Rng, v: &Scalar| -> Scalar {
            v + Scalar::new(
                BigInt::from(rng.random_range(-50i64..=50)),
                BigInt::from(1000),
            )
        };
        let anchor = Point::new(
            af.anchor().coords().iter().map(|c| jitter(&mut rng, c)).collect(),
        )?;
        let span: Vec<Vector> = af
            .span()
            .iter()
            .map(|w| Vector(w.0.iter().map(|c| jitter(&mut rng, c)).collect()))
            .collect();
        let candidate = match span.len() {
            1 => Flat::line(anchor, span.into_iter().next().unwrap()),
            _ => {
                let mut it = span.into_iter();
                Flat::plane(anchor, it.next().unwrap(), it.next().unwrap())
            }
        };
        match candidate {
            Ok(flat) => consider(flat, &mut spent, &mut best)?,
            Err(_) => spent += 1,
        }
    }
    best.ok_or_else(|| Error::InvalidInput("no usable candidate flat".into()))
}

/// Count-only scan of 3D line candidates: all data pairs in seeded random
/// order, then jittered variants of the best pair, against a pre-scaled
/// dataset. Returns the winner with its full certificate.
#[allow(clippy::type_complexity)]
fn line_candidates_scan<T: Int>(
    s: &Scaled<T>,
    xs: &[Point],
    budget: usize,
    spent: &mut usize,
    seed: u64,
    incumbent: Option<usize>,
) -> Result<(Option<Flat>, Option<DepthCertificate>)> {
    let n = xs.len();
    let vs = VerticalSweep::new(&s.pts);
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x117e);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut best_count = 0usize;
    let mut best_desc: Option<(Vec<T>, Vec<T>)> = None;
    let eval = |anchor: Vec<T>, dir: Vec<T>, spent: &mut usize,
                    best_count: &mut usize, best_desc: &mut Option<(Vec<T>, Vec<T>)>| {
        if dir[0].sign() == 0 {
            return; // vertical
        }
        *spent += 1;
        let count = line3_depth_count(s, &vs, &anchor, &dir);
        if best_desc.is_none() || count > *best_count {
            *best_count = count;
            *best_desc = Some((anchor, dir));
        }
    };
    for (i, j) in pairs {
        if *spent >= budget {
            break;
        }
        let dir = crate::kernel::sub(&s.pts[j], &s.pts[i]);
        if dir.iter().all(|v| v.sign() == 0) {
            continue;
        }
        eval(s.pts[i].clone(), dir, spent, &mut best_count, &mut best_desc);
    }
    // Jittered local search on the scaled grid (factor is a multiple of
    // 1000, so thousandth-grid jitters stay integral).
    let unit = T::from_big(&(&s.factor / num_bigint::BigInt::from(1000)));
    while *spent < budget {
        let Some((anchor, dir)) = best_desc.clone() else { break };
        let jig = |v: &T, rng: &mut ChaCha12Rng| -> T {
            v.clone() + unit.clone() * T::from_big(&num_bigint::BigInt::from(rng.random_range(-50i64..=50)))
        };
        let anchor2: Vec<T> = anchor.iter().map(|v| jig(v, &mut rng)).collect();
        let dir2: Vec<T> = dir.iter().map(|v| jig(v, &mut rng)).collect();
        if dir2.iter().all(|v| v.sign() == 0) {
            *spent += 1;
            continue;
        }
        eval(anchor2, dir2, spent, &mut best_count, &mut best_desc);
    }
    let Some((anchor, dir)) = best_desc else {
        return Ok((None, None));
    };
    if let Some(inc) = incumbent {
        if best_count <= inc {
            return Ok((None, None));
        }
    }
    let anchor_pt = Point::new(anchor.iter().map(|v| s.unscale(v)).collect())?;
    let dir_vec = crate::geometry::Vector(
        dir.iter().map(|v| Scalar::from_integer(v.to_big())).collect(),
    );
    let flat = Flat::line(anchor_pt, dir_vec)?;
    let cert = regression_depth(&flat, 1, xs)?;
    if cert.depth != best_count {
        return Err(Error::VerificationFailed {
            construction: "heuristic line scan",
            details: format!(
                "materialized winner has depth {}, scan computed {best_count}",
                cert.depth
            ),
        });
    }
    Ok((Some(flat), Some(cert)))
}

/// Parameters of the sampling-based approximation.
#[derive(Clone, Debug)]
pub struct ApproxParams {
    pub delta: Scalar,
    /// delta / (2 R(d,k)), exactly.
    pub epsilon: Scalar,
    pub sample_size: usize,
    pub seed: u64,
}

/// Multiplier `c` in the sample size `c·ε⁻²·ln(1/ε)`.
pub const SAMPLE_SIZE_CONSTANT: u32 = 8;

impl ApproxParams {
    /// Theory-sized parameters: ε = δ/(2R(d,k)) and a sample of
    /// `8·ε⁻²·ln(1/ε)` points, capped at n.
    pub fn new(delta: Scalar, d: u32, k: u32, n: usize, seed: u64) -> Result<ApproxParams> {
        if delta <= Scalar::zero() || delta >= Scalar::one() {
            return Err(Error::InvalidInput(format!("delta must be in (0,1), got {delta}")));
        }
        let r = deep_flat_constant(d, k).ok_or_else(|| {
            Error::UnsupportedFlatPair(format!("no deep-flat constant for d={d}, k={k}"))
        })?;
        let epsilon = &delta / Scalar::from_integer(BigInt::from(2 * r));
        let eps_f = epsilon.numer().to_f64().unwrap_or(0.0) / epsilon.denom().to_f64().unwrap_or(1.0);
        let raw = SAMPLE_SIZE_CONSTANT as f64 / (eps_f * eps_f) * (1.0 / eps_f).ln();
        let sample_size = (raw.ceil() as usize).max(1).min(n);
        Ok(ApproxParams {
            delta,
            epsilon,
            sample_size,
            seed,
        })
    }

    /// Same ε bookkeeping with an explicit sample size (still capped at
    /// n). The (1−δ) guarantee is then empirical rather than implied by
    /// the ε-approximation bound.
    pub fn with_sample_size(mut self, m: usize, n: usize) -> ApproxParams {
        self.sample_size = m.max(1).min(n);
        self
    }
}

/// Uniform random sample without replacement of `params.sample_size`
/// points, deterministic per seed. When the sample size reaches n the
/// dataset itself is returned and the approximation is exact.
pub fn epsilon_sample(xs: &[Point], params: &ApproxParams) -> Vec<Point> {
    let n = xs.len();
    if params.sample_size >= n {
        return xs.to_vec();
    }
    let mut rng = ChaCha12Rng::seed_from_u64(params.seed);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng);
    let mut chosen: Vec<usize> = idx[..params.sample_size].to_vec();
    chosen.sort_unstable();
    chosen.into_iter().map(|i| xs[i].clone()).collect()
}

/// Budget for the 3D sub-solver inside the approximation.
const APPROX_HEURISTIC_BUDGET: usize = 20_000;

/// Sampling-based deepest flat: solve the deepest-flat problem on an
/// ε-approximation sample and certify the winner on the full dataset.
/// For d = 2, k = 1 the sub-solver is exact and the returned depth is
/// within (1−δ) of the maximum with the sampling success probability;
/// in 3D the sub-solver is the certified heuristic and the (1−δ) factor
/// is empirical.
pub fn approx_deepest(
    xs: &[Point],
    k: usize,
    params: &ApproxParams,
) -> Result<(Flat, DepthCertificate)> {
    if xs.is_empty() {
        return Err(Error::InvalidInput("approximation of an empty set".into()));
    }
    let d = xs[0].dim();
    let sample = epsilon_sample(xs, params);
    let flat = match (d, k) {
        (2, 1) => deepest_line_2d(&sample)?.0,
        (3, 1) | (3, 2) => {
            deepest_flat_heuristic_3d(&sample, k, APPROX_HEURISTIC_BUDGET, params.seed)?.0
        }
        _ => {
            return Err(Error::UnsupportedFlatPair(format!(
                "approximate deepest {k}-flat in dimension {d}"
            )))
        }
    };
    let cert = regression_depth(&flat, k, xs)?;
    Ok((flat, cert))
}
