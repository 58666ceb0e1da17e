//! Internal exact-integer machinery behind the depth computations.
//!
//! Rational inputs are scaled by twice the common denominator so that
//! every predicate (orientations, angular comparisons, midpoints) is an
//! exact integer computation. Datasets with small coordinates run on
//! `i128`; anything that could overflow falls back to `BigInt` through
//! the same generic code.
//!
//! The magnitude budget for the `i128` path: scaled coordinates are
//! bounded by 2^39, pencil normals by ~2^85 (one cross product plus
//! sums), and orientation values by ~2^126, which fits.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::geometry::Point;
use crate::scalar::{denominator_lcm, Scalar};

/// Largest scaled coordinate magnitude allowed on the i128 path. Pencil
/// chart values multiply four coordinates (and a small constant), so the
/// budget keeps degree-4 products inside i128: 192·(2^29)^4 < 2^125.
const SMALL_LIMIT: i128 = 1i128 << 29;

/// Exact signed integer arithmetic, implemented by `i128` and `BigInt`.
pub(crate) trait Int:
    Clone
    + Ord
    + std::fmt::Debug
    + Zero
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
    fn sign(&self) -> i8;
    /// Exact sign of a0·b1 − a1·b0, which may overflow the backend type.
    fn cross_sign(a0: &Self, a1: &Self, b0: &Self, b1: &Self) -> i8;
}

impl Int for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("value exceeds i128 budget")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn sign(&self) -> i8 {
        match self.cmp(&0) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }
    fn cross_sign(a0: &Self, a1: &Self, b0: &Self, b1: &Self) -> i8 {
        let p_sign = a0.signum() as i8 * b1.signum() as i8;
        let q_sign = a1.signum() as i8 * b0.signum() as i8;
        let p = mul_wide(a0.unsigned_abs(), b1.unsigned_abs());
        let q = mul_wide(a1.unsigned_abs(), b0.unsigned_abs());
        let p_zero = p == (0, 0);
        let q_zero = q == (0, 0);
        let ps = if p_zero { 0 } else { p_sign };
        let qs = if q_zero { 0 } else { q_sign };
        // sign(p·ps − q·qs)
        match (ps, qs) {
            (a, b) if a > b => 1,
            (a, b) if a < b => -1,
            (0, 0) => 0,
            (1, 1) => match p.cmp(&q) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
            },
            (-1, -1) => match p.cmp(&q) {
                std::cmp::Ordering::Greater => -1,
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Equal => 0,
            },
            _ => unreachable!(),
        }
    }
}

impl Int for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn sign(&self) -> i8 {
        Signed::signum(self).to_i8().unwrap_or(0)
    }
    fn cross_sign(a0: &Self, a1: &Self, b0: &Self, b1: &Self) -> i8 {
        Int::sign(&(a0 * b1 - a1 * b0))
    }
}

pub(crate) fn dot<T: Int>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub(crate) fn sub<T: Int>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub(crate) fn add<T: Int>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub(crate) fn neg<T: Int>(a: &[T]) -> Vec<T> {
    a.iter().map(|x| -x.clone()).collect()
}

/// 3D cross product.
pub(crate) fn cross3<T: Int>(a: &[T], b: &[T]) -> Vec<T> {
    vec![
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

/// Counterclockwise perpendicular in 2D.
pub(crate) fn perp2<T: Int>(a: &[T]) -> Vec<T> {
    vec![-a[1].clone(), a[0].clone()]
}

/// A dataset (plus any auxiliary scalars) scaled to integers.
pub(crate) struct Scaled<T> {
    pub dim: usize,
    pub pts: Vec<Vec<T>>,
    /// All coordinates were multiplied by this (even) factor.
    pub factor: BigInt,
}

impl<T: Int> Scaled<T> {
    pub fn scale_scalar(&self, x: &Scalar) -> T {
        let v = x.numer() * &self.factor / x.denom();
        debug_assert_eq!(&Scalar::new(v.clone(), self.factor.clone()), x);
        T::from_big(&v)
    }

    pub fn scale_point(&self, p: &Point) -> Vec<T> {
        p.coords().iter().map(|c| self.scale_scalar(c)).collect()
    }

    /// Convert a scaled value back to the unscaled rational.
    pub fn unscale(&self, v: &T) -> Scalar {
        Scalar::new(v.to_big(), self.factor.clone())
    }
}

pub(crate) enum ScaledData {
    Small(Scaled<i128>),
    Big(Scaled<BigInt>),
}

/// Scale a dataset together with any extra scalars that must share the
/// common denominator (flat anchors, spans, hyperplane coefficients).
/// `dim` must be passed explicitly so that empty datasets keep the flat's
/// ambient dimension.
pub(crate) fn scale_dataset(xs: &[Point], extra: &[Scalar], dim: usize) -> ScaledData {
    let all = xs
        .iter()
        .flat_map(|p| p.coords().iter())
        .chain(extra.iter());
    let factor = denominator_lcm(all) * BigInt::from(2);
    let mut big_pts: Vec<Vec<BigInt>> = Vec::with_capacity(xs.len());
    let mut max_mag = BigInt::zero();
    let mut track = |v: &BigInt| {
        let m = v.abs();
        if m > max_mag {
            max_mag = m;
        }
    };
    for p in xs {
        let row: Vec<BigInt> = p
            .coords()
            .iter()
            .map(|c| c.numer() * &factor / c.denom())
            .collect();
        row.iter().for_each(&mut track);
        big_pts.push(row);
    }
    for e in extra {
        track(&(e.numer() * &factor / e.denom()));
    }
    if max_mag < BigInt::from(SMALL_LIMIT) {
        let pts = big_pts
            .iter()
            .map(|row| row.iter().map(|v| v.to_i128().unwrap()).collect())
            .collect();
        ScaledData::Small(Scaled {
            dim,
            pts,
            factor,
        })
    } else {
        ScaledData::Big(Scaled {
            dim,
            pts: big_pts,
            factor,
        })
    }
}

/// Scale a dataset onto the `BigInt` backend unconditionally. Used where
/// intermediate products exceed the i128 degree budget (the six-sector
/// search multiplies up to six coordinates together).
pub(crate) fn scale_dataset_big(xs: &[Point], extra: &[Scalar], dim: usize) -> Scaled<BigInt> {
    let all = xs
        .iter()
        .flat_map(|p| p.coords().iter())
        .chain(extra.iter());
    let factor = denominator_lcm(all) * BigInt::from(2);
    let pts = xs
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .map(|c| c.numer() * &factor / c.denom())
                .collect()
        })
        .collect();
    Scaled { dim, pts, factor }
}

/// Dispatch a generic kernel over the two integer backends.
macro_rules! with_scaled {
    ($data:expr, $name:ident => $body:expr) => {
        match $data {
            $crate::kernel::ScaledData::Small($name) => $body,
            $crate::kernel::ScaledData::Big($name) => $body,
        }
    };
}
pub(crate) use with_scaled;

// ---------------------------------------------------------------------------
// One-parameter pencil sweeps.
// ---------------------------------------------------------------------------

/// Whether a chart direction is canonical: angle in [0, π), i.e. y > 0,
/// or y == 0 and x > 0.
pub(crate) fn chart_is_canonical<T: Int>(v: &[T; 2]) -> bool {
    let sy = v[1].sign();
    sy > 0 || (sy == 0 && v[0].sign() > 0)
}

/// Strict angular order on canonical chart vectors (both in [0, π)).
/// Chart products are degree 8 in the coordinates, which overflows i128;
/// the backend compares the two products exactly (256-bit arithmetic on
/// the i128 path, BigInt otherwise).
pub(crate) fn chart_cmp<T: Int>(a: &[T; 2], b: &[T; 2]) -> std::cmp::Ordering {
    match T::cross_sign(&a[0], &a[1], &b[0], &b[1]) {
        1 => std::cmp::Ordering::Less,
        -1 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    }
}

/// 256-bit magnitude of |a·b| for u128 factors: (hi, lo).
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = (1u128 << 64) - 1;
    let (ah, al) = (a >> 64, a & MASK);
    let (bh, bl) = (b >> 64, b & MASK);
    let ll = al * bl;
    let lh = al * bh;
    let hl = ah * bl;
    let hh = ah * bh;
    let (mid, c1) = lh.overflowing_add(hl);
    let mut hi = hh + ((c1 as u128) << 64);
    let (lo, c2) = ll.overflowing_add((mid & MASK) << 64);
    hi += (mid >> 64) + c2 as u128;
    (hi, lo)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum MemberKind {
    Event,
    Between,
}

/// One hyperplane of a swept pencil, with the orientation sign of every
/// dataset point against it.
pub(crate) struct SweepMember<T> {
    pub kind: MemberKind,
    /// Normal in the ambient space (2 or 3 entries); the member hyperplane
    /// passes through the pencil anchor.
    pub normal: Vec<T>,
    pub signs: Vec<i8>,
}

/// An event of the sweep: the chart direction at which the rotating
/// hyperplane passes through one or more data points. Chart and normal
/// must be canonicalized together (flip both or neither).
pub(crate) struct PencilEvent<T> {
    pub chart: [T; 2],
    pub normal: Vec<T>,
    pub pts: Vec<usize>,
}

impl<T: Int> PencilEvent<T> {
    pub fn canonical(chart: [T; 2], normal: Vec<T>, pts: Vec<usize>) -> PencilEvent<T> {
        if chart_is_canonical(&chart) {
            PencilEvent { chart, normal, pts }
        } else {
            PencilEvent {
                chart: [-chart[0].clone(), -chart[1].clone()],
                normal: neg(&normal),
                pts,
            }
        }
    }
}

/// Sweep a one-parameter pencil.
///
/// `fresh` computes the sign of every dataset point against the pencil
/// member with a given normal. `second_member` produces a pencil normal
/// independent of a given one (used when all events coincide), and
/// `fallback_normal` when there are no events at all.
pub(crate) fn sweep_pencil<T: Int>(
    mut events: Vec<PencilEvent<T>>,
    fresh: impl Fn(&[T]) -> Vec<i8>,
    second_member: impl Fn(&[T]) -> Vec<T>,
    fallback_normal: &[T],
) -> Vec<SweepMember<T>> {
    // Merge events sharing a direction.
    events.sort_by(|a, b| chart_cmp(&a.chart, &b.chart));
    let mut merged: Vec<PencilEvent<T>> = Vec::with_capacity(events.len());
    for ev in events {
        match merged.last_mut() {
            Some(last) if chart_cmp(&last.chart, &ev.chart) == std::cmp::Ordering::Equal => {
                last.pts.extend(ev.pts);
            }
            _ => merged.push(ev),
        }
    }
    let e = merged.len();
    if e == 0 {
        let signs = fresh(fallback_normal);
        return vec![SweepMember {
            kind: MemberKind::Between,
            normal: fallback_normal.to_vec(),
            signs,
        }];
    }
    if e == 1 {
        let ev = &merged[0];
        let other = second_member(&ev.normal);
        let mut signs = fresh(&other);
        let between = SweepMember {
            kind: MemberKind::Between,
            normal: other,
            signs: signs.clone(),
        };
        for &i in &ev.pts {
            signs[i] = 0;
        }
        return vec![
            SweepMember {
                kind: MemberKind::Event,
                normal: ev.normal.clone(),
                signs,
            },
            between,
        ];
    }

    // The continuous half-circle frame runs from the first event angle to
    // its antipode; every constructed member normal below lies in that
    // frame, so signs stay consistent under single flips at each event.
    // Signs are seeded at the first between member, whose frame extends
    // back to the first event.
    let first_between = add(&merged[0].normal, &merged[1].normal);
    let mut current = fresh(&first_between);
    let mut out = Vec::with_capacity(2 * e);
    let mut ev0_signs = current.clone();
    for &i in &merged[0].pts {
        ev0_signs[i] = 0;
    }
    out.push(SweepMember {
        kind: MemberKind::Event,
        normal: merged[0].normal.clone(),
        signs: ev0_signs,
    });
    out.push(SweepMember {
        kind: MemberKind::Between,
        normal: first_between,
        signs: current.clone(),
    });
    for j in 1..e {
        let ev = &merged[j];
        let mut ev_signs = current.clone();
        for &i in &ev.pts {
            ev_signs[i] = 0;
        }
        out.push(SweepMember {
            kind: MemberKind::Event,
            normal: ev.normal.clone(),
            signs: ev_signs,
        });
        for &i in &ev.pts {
            current[i] = -current[i];
        }
        let btw_normal = if j + 1 < e {
            add(&merged[j].normal, &merged[j + 1].normal)
        } else {
            // Wrap-around member between the last event and the antipode
            // of the first.
            sub(&merged[e - 1].normal, &merged[0].normal)
        };
        out.push(SweepMember {
            kind: MemberKind::Between,
            normal: btw_normal,
            signs: current.clone(),
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Vertical sweep: hyperplanes x = c plus the sentinel at infinity.
// ---------------------------------------------------------------------------

/// Candidate position of the vertical wedge boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum VertCand {
    /// x equals the t-th distinct data abscissa.
    AtGroup(usize),
    /// Midpoint between distinct abscissas t and t+1.
    Midpoint(usize),
    /// The hyperplane at infinity.
    Sentinel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct VertBest {
    pub count: usize,
    pub cand: VertCand,
    pub same_pairing: bool,
}

/// Sorted-abscissa view of a dataset for sweeping vertical boundaries.
pub(crate) struct VerticalSweep<T> {
    /// Point indices sorted by x.
    pub order: Vec<usize>,
    /// Start offset (into `order`) of each distinct-x group.
    pub group_start: Vec<usize>,
    /// Distinct abscissas, scaled.
    pub group_x: Vec<T>,
}

impl<T: Int> VerticalSweep<T> {
    pub fn new(xs: &[Vec<T>]) -> VerticalSweep<T> {
        let mut order: Vec<usize> = (0..xs.len()).collect();
        order.sort_by(|&a, &b| xs[a][0].cmp(&xs[b][0]));
        let mut group_start = Vec::new();
        let mut group_x = Vec::new();
        for (pos, &i) in order.iter().enumerate() {
            if group_x.last() != Some(&xs[i][0]) {
                group_start.push(pos);
                group_x.push(xs[i][0].clone());
            }
        }
        VerticalSweep {
            order,
            group_start,
            group_x,
        }
    }

    fn group_range(&self, t: usize) -> std::ops::Range<usize> {
        let end = self
            .group_start
            .get(t + 1)
            .copied()
            .unwrap_or(self.order.len());
        self.group_start[t]..end
    }

    /// Minimum closed double-wedge count over all vertical boundary
    /// positions and both pairings, for a fixed sign row of the other
    /// boundary. Ties resolve to the earliest candidate in scan order
    /// (groups and midpoints left to right, then the sentinel), `Same`
    /// pairing before `Opposite`.
    pub fn min_for_row(&self, s1: &[i8]) -> VertBest {
        let mut zeros = 0usize;
        let mut pos_total = 0usize;
        let mut neg_total = 0usize;
        for &s in s1 {
            match s {
                0 => zeros += 1,
                1 => pos_total += 1,
                _ => neg_total += 1,
            }
        }
        let mut best = VertBest {
            count: usize::MAX,
            cand: VertCand::Sentinel,
            same_pairing: true,
        };
        let mut consider = |count: usize, cand: VertCand, same_pairing: bool| {
            if count < best.count {
                best = VertBest {
                    count,
                    cand,
                    same_pairing,
                };
            }
        };
        let mut pos_left = 0usize;
        let mut neg_left = 0usize;
        for t in 0..self.group_x.len() {
            let mut g_pos = 0usize;
            let mut g_neg = 0usize;
            for p in self.group_range(t).map(|j| self.order[j]) {
                match s1[p] {
                    1 => g_pos += 1,
                    -1 => g_neg += 1,
                    _ => {}
                }
            }
            let on_v = g_pos + g_neg;
            // Boundary at this abscissa.
            consider(
                zeros + on_v + (pos_total - pos_left - g_pos) + neg_left,
                VertCand::AtGroup(t),
                true,
            );
            consider(
                zeros + on_v + (neg_total - neg_left - g_neg) + pos_left,
                VertCand::AtGroup(t),
                false,
            );
            pos_left += g_pos;
            neg_left += g_neg;
            // Midpoint between this abscissa and the next.
            if t + 1 < self.group_x.len() {
                consider(
                    zeros + (pos_total - pos_left) + neg_left,
                    VertCand::Midpoint(t),
                    true,
                );
                consider(
                    zeros + (neg_total - neg_left) + pos_left,
                    VertCand::Midpoint(t),
                    false,
                );
            }
        }
        consider(zeros + pos_total, VertCand::Sentinel, true);
        consider(zeros + neg_total, VertCand::Sentinel, false);
        best
    }

    /// The scaled abscissa of a candidate, when finite. Midpoints stay
    /// integral because all coordinates carry an even scale factor.
    pub fn candidate_x(&self, cand: VertCand) -> Option<T> {
        match cand {
            VertCand::AtGroup(t) => Some(self.group_x[t].clone()),
            VertCand::Midpoint(t) => {
                let sum = self.group_x[t].clone() + self.group_x[t + 1].clone();
                Some(halve(sum))
            }
            VertCand::Sentinel => None,
        }
    }
}

/// Halve an even integer exactly.
pub(crate) fn halve<T: Int>(v: T) -> T {
    // Division is not part of the Int trait; reconstruct via BigInt.
    let b = v.to_big();
    debug_assert!((&b % BigInt::from(2)).is_zero());
    T::from_big(&(b / BigInt::from(2)))
}
