//! Discrete ham sandwich cuts in 2D and 3D, by exact candidate search.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use num_traits::Zero;
use crate::constructions::{
    materialize_pair_line, pair_base_row, pair_variant_row, scaled_midpoint, PairVariant,
};
use crate::error::{Error, Result};
use crate::geometry::{orient, Hyperplane, Point, Sign};
use crate::kernel::{cross3, dot, scale_dataset, sub, with_scaled, Int, Scaled};
use crate::pencil::{materialize, MemberVariant};
use crate::scalar::scalar;

/// Whether the strict side counts of `row`, restricted to a subset, are a
/// valid bisection of it.
fn bisects(row: &[i8], idx: &[usize]) -> bool {
    let above = idx.iter().filter(|&&i| row[i] > 0).count();
    let below = idx.iter().filter(|&&i| row[i] < 0).count();
    above <= idx.len() / 2 && below <= idx.len() / 2
}

fn verify_cut(h: &Hyperplane, xs: &[Point], idx: &[usize]) -> Result<bool> {
    let mut above = 0usize;
    let mut below = 0usize;
    for &i in idx {
        match orient(h, &xs[i])? {
            Sign::Positive => above += 1,
            Sign::Negative => below += 1,
            Sign::Zero => {}
        }
    }
    Ok(above <= idx.len() / 2 && below <= idx.len() / 2)
}

/// A line with at most ⌊|a|/2⌋ points of `a` strictly on each open side,
/// and likewise for `b`. Exact search over lines through one point of
/// each set plus perturbed variants.
pub fn ham_sandwich_2d(a: &[Point], b: &[Point]) -> Result<Hyperplane> {
    let mut xs: Vec<Point> = a.to_vec();
    xs.extend_from_slice(b);
    let a_idx: Vec<usize> = (0..a.len()).collect();
    let b_idx: Vec<usize> = (a.len()..xs.len()).collect();
    ham_sandwich_within(&xs, &a_idx, &b_idx, false)
}

/// Ham sandwich cut of two index subsets of a full dataset. Perturbation
/// magnitudes are sized against the whole dataset, so the returned line
/// coincides with the matching candidate of any other search over `xs`.
pub(crate) fn ham_sandwich_within(
    xs: &[Point],
    a_idx: &[usize],
    b_idx: &[usize],
    require_nonvertical: bool,
) -> Result<Hyperplane> {
    if a_idx.is_empty() && b_idx.is_empty() {
        return Hyperplane::new(
            crate::geometry::Vector(vec![scalar(0), scalar(1)]),
            scalar(0),
        );
    }
    let data = scale_dataset(xs, &[], 2);
    with_scaled!(&data, s => hs2d_search(s, xs, a_idx, b_idx, require_nonvertical))
}

fn hs2d_search<T: Int>(
    s: &Scaled<T>,
    xs: &[Point],
    a_idx: &[usize],
    b_idx: &[usize],
    require_nonvertical: bool,
) -> Result<Hyperplane> {
    let pts2: Vec<[T; 2]> = s
        .pts
        .iter()
        .map(|p| [p[0].clone(), p[1].clone()])
        .collect();
    let try_pairs = |pairs: &mut dyn Iterator<Item = (usize, usize)>| -> Result<Option<Hyperplane>> {
        for (i, j) in pairs {
            let Some((_, base)) = pair_base_row(&pts2, i, j) else {
                continue;
            };
            let dir = [
                pts2[j][0].clone() - pts2[i][0].clone(),
                pts2[j][1].clone() - pts2[i][1].clone(),
            ];
            let mid = scaled_midpoint(&pts2[i], &pts2[j]);
            for variant in PairVariant::ALL {
                let row = pair_variant_row(&base, variant, &pts2, &dir, &mid);
                if !bisects(&row, a_idx) || !bisects(&row, b_idx) {
                    continue;
                }
                let h = materialize_pair_line(s, xs, i, j, variant)?;
                if require_nonvertical && h.normal.0[1].is_zero() {
                    continue;
                }
                if verify_cut(&h, xs, a_idx)? && verify_cut(&h, xs, b_idx)? {
                    return Ok(Some(h));
                }
            }
        }
        Ok(None)
    };
    // Lines through one point of each set.
    let mut cross_pairs = a_idx
        .iter()
        .flat_map(|&i| b_idx.iter().map(move |&j| (i, j)))
        .filter(|(i, j)| i != j);
    if let Some(h) = try_pairs(&mut cross_pairs)? {
        return Ok(h);
    }
    // Degenerate inputs: fall back to all pairs of the union.
    let mut union: Vec<usize> = a_idx.iter().chain(b_idx.iter()).copied().collect();
    union.sort_unstable();
    union.dedup();
    let mut all_pairs = union
        .iter()
        .enumerate()
        .flat_map(|(pos, &i)| union[pos + 1..].iter().map(move |&j| (i, j)))
        .filter(|(i, j)| i != j);
    if let Some(h) = try_pairs(&mut all_pairs)? {
        return Ok(h);
    }
    // All points coincide: any non-vertical line through the common point.
    if let Some(&i) = union.first() {
        let h = Hyperplane::new(
            crate::geometry::Vector(vec![scalar(0), scalar(1)]),
            xs[i].coord(1).clone(),
        )?;
        if verify_cut(&h, xs, a_idx)? && verify_cut(&h, xs, b_idx)? {
            return Ok(h);
        }
    }
    Err(Error::SearchBudgetExhausted {
        construction: "ham sandwich 2D",
        diagnostics: format!(
            "no bisecting line among {} x {} candidates",
            a_idx.len(),
            b_idx.len()
        ),
    })
}

/// A plane with at most ⌊|s|/2⌋ points of each of the three sets strictly
/// per open side. Randomized search order over planes through one point
/// of each set, with perturbed variants, verified exactly.
pub fn ham_sandwich_3d(a: &[Point], b: &[Point], c: &[Point]) -> Result<Hyperplane> {
    ham_sandwich_3d_seeded(a, b, c, 0, 2_000_000, false)
}

pub fn ham_sandwich_3d_seeded(
    a: &[Point],
    b: &[Point],
    c: &[Point],
    seed: u64,
    budget: usize,
    require_nonvertical: bool,
) -> Result<Hyperplane> {
    let mut xs: Vec<Point> = a.to_vec();
    xs.extend_from_slice(b);
    xs.extend_from_slice(c);
    let a_idx: Vec<usize> = (0..a.len()).collect();
    let b_idx: Vec<usize> = (a.len()..a.len() + b.len()).collect();
    let c_idx: Vec<usize> = (a.len() + b.len()..xs.len()).collect();
    let data = scale_dataset(&xs, &[], 3);
    with_scaled!(&data, s => hs3d_search(
        s, &xs, &a_idx, &b_idx, &c_idx, seed, budget, require_nonvertical
    ))
}

#[allow(clippy::too_many_arguments)]
fn hs3d_search<T: Int>(
    s: &Scaled<T>,
    xs: &[Point],
    a_idx: &[usize],
    b_idx: &[usize],
    c_idx: &[usize],
    seed: u64,
    budget: usize,
    require_nonvertical: bool,
) -> Result<Hyperplane> {
    let sets = [a_idx, b_idx, c_idx];
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for &i in a_idx {
        for &j in b_idx {
            for &k in c_idx {
                if i != j && j != k && i != k {
                    triples.push((i, j, k));
                }
            }
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    triples.shuffle(&mut rng);
    let mut spent = 0usize;
    let mut best_violation = usize::MAX;
    for (i, j, k) in triples {
        if spent >= budget {
            break;
        }
        let u = sub(&s.pts[j], &s.pts[i]);
        let v = sub(&s.pts[k], &s.pts[i]);
        let normal = cross3(&u, &v);
        if normal.iter().all(|t| t.sign() == 0) {
            continue; // collinear triple
        }
        let off = dot(&normal, &s.pts[i]);
        let base: Vec<i8> = s
            .pts
            .iter()
            .map(|p| (dot(&normal, p) - off.clone()).sign())
            .collect();
        // Variants: exact, two shifts, and two tilts about each triple edge.
        let edges = [(i, j), (i, k), (j, k)];
        let mut candidates: Vec<(Vec<i8>, MemberVariant<T>, Point)> = Vec::new();
        candidates.push((base.clone(), MemberVariant::Exact, xs[i].clone()));
        for side in [1i8, -1] {
            let row: Vec<i8> = base
                .iter()
                .map(|&t| if t == 0 { side } else { t })
                .collect();
            candidates.push((row, MemberVariant::Shifted { side }, xs[i].clone()));
        }
        for (p, q) in edges {
            let w = sub(&s.pts[q], &s.pts[p]);
            for side in [1i8, -1] {
                let row: Vec<i8> = base
                    .iter()
                    .enumerate()
                    .map(|(idx, &t)| {
                        if t != 0 {
                            t
                        } else {
                            side * dot(&w, &sub(&s.pts[idx], &s.pts[p])).sign()
                        }
                    })
                    .collect();
                candidates.push((
                    row,
                    MemberVariant::Tilted {
                        axis_dir: w.clone(),
                        side,
                    },
                    xs[p].clone(),
                ));
            }
        }
        for (row, variant, anchor) in candidates {
            spent += 1;
            let violation: usize = sets
                .iter()
                .map(|idx| {
                    let above = idx.iter().filter(|&&t| row[t] > 0).count();
                    let below = idx.iter().filter(|&&t| row[t] < 0).count();
                    let half = idx.len() / 2;
                    above.saturating_sub(half) + below.saturating_sub(half)
                })
                .sum();
            if violation > 0 {
                best_violation = best_violation.min(violation);
                continue;
            }
            let h = materialize(&normal, &anchor, &variant, xs)?;
            if require_nonvertical && h.normal.0[2].is_zero() {
                continue;
            }
            if sets
                .iter()
                .map(|idx| verify_cut(&h, xs, idx))
                .collect::<Result<Vec<bool>>>()?
                .iter()
                .all(|&ok| ok)
            {
                return Ok(h);
            }
        }
    }
    // Degenerate fallback: all points collinear. Any plane containing the
    // common line leaves every strict side empty.
    if let Some(h) = collinear_fallback(s, xs, require_nonvertical)? {
        return Ok(h);
    }
    Err(Error::SearchBudgetExhausted {
        construction: "ham sandwich 3D",
        diagnostics: format!(
            "budget {budget} exhausted after {spent} checks; best remaining violation {best_violation}"
        ),
    })
}

fn collinear_fallback<T: Int>(
    s: &Scaled<T>,
    xs: &[Point],
    require_nonvertical: bool,
) -> Result<Option<Hyperplane>> {
    let Some(first) = s.pts.first() else {
        return Ok(Some(Hyperplane::new(
            crate::geometry::Vector(vec![scalar(0), scalar(0), scalar(1)]),
            scalar(0),
        )?));
    };
    let dir = s
        .pts
        .iter()
        .map(|p| sub(p, first))
        .find(|w| w.iter().any(|t| t.sign() != 0));
    let Some(dir) = dir else {
        // All points coincide: the horizontal plane through them.
        let normal = crate::geometry::Vector(vec![scalar(0), scalar(0), scalar(1)]);
        let off = normal.dot(&crate::geometry::Vector(xs[0].coords().to_vec()));
        return Ok(Some(Hyperplane::new(normal, off)?));
    };
    // Check all points are on the line (first, dir).
    for p in &s.pts {
        let w = sub(p, first);
        if cross3(&dir, &w).iter().any(|t| t.sign() != 0) {
            return Ok(None);
        }
    }
    // A plane through the line: normal orthogonal to dir. Prefer one with
    // a nonzero vertical component when asked for nonvertical output.
    let axes = [
        [one::<T>(), T::zero(), T::zero()],
        [T::zero(), one::<T>(), T::zero()],
        [T::zero(), T::zero(), one::<T>()],
    ];
    let mut fallback: Option<Vec<T>> = None;
    for axis in &axes {
        let n = cross3(&dir, &axis[..]);
        if n.iter().all(|t| t.sign() == 0) {
            continue;
        }
        if require_nonvertical && n[2].sign() == 0 {
            fallback.get_or_insert(n);
            continue;
        }
        return Ok(Some(materialize(&n, &xs[0], &MemberVariant::Exact, xs)?));
    }
    match fallback {
        Some(n) => Ok(Some(materialize(&n, &xs[0], &MemberVariant::Exact, xs)?)),
        None => Ok(None),
    }
}

fn one<T: Int>() -> T {
    T::from_big(&num_bigint::BigInt::from(1))
}
