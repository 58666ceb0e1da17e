//! Three concurrent lines subdividing a planar point set into six sectors
//! of near-equal size, whose alternating sectors form a nontransversal
//! triple.
//!
//! Search: the first two lines are halving lines in candidate directions
//! (directions spanned by point pairs, their perpendiculars and sums, plus
//! seeded random directions). Their crossing fixes the center. When two
//! opposite quadrants already hold a sixth of the points each, the third
//! line must simultaneously halve the two remaining quadrants — a single
//! angular sweep around the center. Every accepted configuration is
//! re-checked by exact assignment and the alternating triple verified
//! nontransversal.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::constructions::transversal::is_transversal_triple;
use crate::error::{Error, Result};
use crate::geometry::{orient, Hyperplane, Point, Sign, Vector};
use crate::kernel::{scale_dataset_big, Int, Scaled};
use crate::scalar::Scalar;

/// Witness of a successful six-sector subdivision.
#[derive(Clone, Debug)]
pub struct SixSectorWitness {
    pub center: Point,
    /// Three concurrent lines through the center.
    pub lines: [Hyperplane; 3],
    /// Sector index (0..6, counterclockwise) of every point; points on a
    /// boundary ray belong to the sector that starts at that ray, and a
    /// point coinciding with the center is assigned sector 0.
    pub sector_assignment: Vec<u8>,
    /// The alternating sectors 0, 2, 4 — a nontransversal triple.
    pub triple: [Vec<usize>; 3],
}

impl SixSectorWitness {
    pub fn sector_counts(&self) -> [usize; 6] {
        let mut counts = [0usize; 6];
        for &s in &self.sector_assignment {
            counts[s as usize] += 1;
        }
        counts
    }
}

struct Candidate {
    normal1: Vec<BigInt>,
    normal2: Vec<BigInt>,
    normal3: Vec<BigInt>,
    /// Center in scaled coordinates: (x, y) over the common denominator.
    cx: BigInt,
    cy: BigInt,
    den: BigInt,
}

/// Subdivide by three concurrent lines into sectors whose sizes differ by
/// at most one (exactly n/6 when 6 | n and no point is concurrent with
/// the construction), with the alternating triple nontransversal.
pub fn six_sector_partition(xs: &[Point], seed: u64) -> Result<SixSectorWitness> {
    let n = xs.len();
    if n < 6 {
        return Err(Error::InvalidInput(format!(
            "six-sector subdivision needs at least 6 points, got {n}"
        )));
    }
    for p in xs {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: p.dim(),
            });
        }
    }
    let s = scale_dataset_big(xs, &[], 2);
    let dirs = candidate_directions(&s, seed);
    let lo = n / 6;
    let hi = n.div_ceil(6);
    // Precompute the halving line and its side vector per direction.
    let lines: Vec<Option<(Vec<BigInt>, BigInt, Vec<i8>)>> = dirs
        .iter()
        .map(|u| {
            halving_line(&s, u).map(|(normal, off)| {
                let sides: Vec<i8> = s.pts.iter().map(|p| side(&normal, &off, p)).collect();
                (normal, off, sides)
            })
        })
        .collect();
    let mut best_imbalance = usize::MAX;
    let mut combos = 0usize;
    let budget = 6000usize;
    'search: for i1 in 0..dirs.len() {
        let Some((n1, c1, s1)) = &lines[i1] else {
            continue;
        };
        for i2 in i1 + 1..dirs.len() {
            if combos >= budget {
                break 'search;
            }
            let Some((n2, c2, s2)) = &lines[i2] else {
                continue;
            };
            // Center: intersection of the two lines, as a ratio over den.
            let den = &n1[0] * &n2[1] - &n1[1] * &n2[0];
            if den.is_zero() {
                continue; // parallel
            }
            combos += 1;
            let cx = c1 * &n2[1] - c2 * &n1[1];
            let cy = &n1[0] * c2 - &n2[0] * c1;
            let (cx, cy, den) = if den.is_negative() {
                (-cx, -cy, -den)
            } else {
                (cx, cy, den)
            };
            for whole_positive in [true, false] {
                // whole_positive: quadrants (+,-) and (-,+) stay whole and
                // the third line sweeps through (+,+) and (-,-); otherwise
                // the roles swap.
                let in_split_a = |a: i8, b: i8| {
                    if whole_positive {
                        a > 0 && b > 0
                    } else {
                        a > 0 && b < 0
                    }
                };
                let in_whole = |a: i8, b: i8| {
                    a != 0 && b != 0 && !in_split_a(a, b) && !in_split_a(-a, -b)
                };
                let whole1: usize = (0..n)
                    .filter(|&i| in_whole(s1[i], s2[i]) && s1[i] > 0)
                    .count();
                let whole2: usize = (0..n)
                    .filter(|&i| in_whole(s1[i], s2[i]) && s1[i] < 0)
                    .count();
                let on_lines = (0..n).filter(|&i| s1[i] == 0 || s2[i] == 0).count();
                best_imbalance =
                    best_imbalance.min(whole1.abs_diff(n / 6) + whole2.abs_diff(n / 6));
                if whole1 + on_lines < lo || whole1 > hi + on_lines {
                    continue;
                }
                if whole2 + on_lines < lo || whole2 > hi + on_lines {
                    continue;
                }
                // Directions of candidate third rays: points of split
                // quadrant A directly, points of the opposite split
                // quadrant via their antipodes.
                let mut zone: Vec<(Vec<BigInt>, bool)> = Vec::new();
                for i in 0..n {
                    let (a, b) = (s1[i], s2[i]);
                    if a == 0 || b == 0 {
                        continue;
                    }
                    let is_a = in_split_a(a, b);
                    let is_c = in_split_a(-a, -b);
                    if !is_a && !is_c {
                        continue;
                    }
                    let mut w = vec![&s.pts[i][0] * &den - &cx, &s.pts[i][1] * &den - &cy];
                    if is_c {
                        w = vec![-&w[0], -&w[1]];
                    }
                    zone.push((w, is_a));
                }
                // Boundary rays of the split cone, oriented into it and
                // ordered counterclockwise.
                let r1 = cone_ray(&dirs[i1], n2, whole_positive, true);
                let r2 = cone_ray(&dirs[i2], n1, whole_positive, false);
                let (ray_start, ray_end) = if cone_cmp(&r1, &r2) == std::cmp::Ordering::Less {
                    (r1, r2)
                } else {
                    (r2, r1)
                };
                zone.sort_by(|a, b| cone_cmp(&a.0, &b.0));
                let total_a = zone.iter().filter(|z| z.1).count();
                let total_c = zone.len() - total_a;
                let mut before_a = 0usize;
                let mut before_c = 0usize;
                for g in 0..=zone.len() {
                    if g > 0 {
                        if zone[g - 1].1 {
                            before_a += 1;
                        } else {
                            before_c += 1;
                        }
                    }
                    let splits = [
                        before_a,
                        total_a - before_a,
                        before_c,
                        total_c - before_c,
                    ];
                    if splits
                        .iter()
                        .any(|&v| v + on_lines < lo || v > hi + on_lines)
                    {
                        continue;
                    }
                    let prev = if g == 0 { &ray_start } else { &zone[g - 1].0 };
                    let next = if g == zone.len() {
                        &ray_end
                    } else {
                        &zone[g].0
                    };
                    if cone_cmp(prev, next) != std::cmp::Ordering::Less {
                        continue;
                    }
                    let w = vec![&prev[0] + &next[0], &prev[1] + &next[1]];
                    if w.iter().all(|v| v.is_zero()) {
                        continue;
                    }
                    let cand = Candidate {
                        normal1: n1.clone(),
                        normal2: n2.clone(),
                        normal3: vec![-&w[1], w[0].clone()],
                        cx: cx.clone(),
                        cy: cy.clone(),
                        den: den.clone(),
                    };
                    if let Some(witness) = finish(&s, xs, &cand, lo, hi)? {
                        return Ok(witness);
                    }
                }
            }
        }
    }
    Err(Error::SearchBudgetExhausted {
        construction: "six-sector subdivision",
        diagnostics: format!(
            "no balanced nontransversal configuration in {combos} direction pairs \
             (best whole-quadrant imbalance {best_imbalance})"
        ),
    })
}

fn side(normal: &[BigInt], offset: &BigInt, p: &[BigInt]) -> i8 {
    Int::sign(&(&normal[0] * &p[0] + &normal[1] * &p[1] - offset))
}

/// Total angular order inside an open halfplane cone (span < π).
fn cone_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    let c: BigInt = &a[0] * &b[1] - &a[1] * &b[0];
    match Int::sign(&c) {
        1 => std::cmp::Ordering::Less,
        -1 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    }
}

/// A boundary ray of the split cone: the direction of one of the two
/// lines, oriented so that it points into the cone's closure. The split
/// cone is {v : n1·v > 0, n2·v > 0} when whole_positive and
/// {v : n1·v > 0, n2·v < 0} otherwise; the ray along each line must
/// satisfy the other line's strict inequality.
fn cone_ray(
    u: &[BigInt],
    other_normal: &[BigInt],
    whole_positive: bool,
    is_first: bool,
) -> Vec<BigInt> {
    let dot = &u[0] * &other_normal[0] + &u[1] * &other_normal[1];
    let want_positive = whole_positive || !is_first;
    let flip = (Int::sign(&dot) > 0) != want_positive;
    if flip {
        vec![-&u[0], -&u[1]]
    } else {
        u.to_vec()
    }
}

/// Exact verification of a candidate: assign sectors, check the balance
/// band and the nontransversal triple, build the witness.
fn finish(
    s: &Scaled<BigInt>,
    xs: &[Point],
    cand: &Candidate,
    lo: usize,
    hi: usize,
) -> Result<Option<SixSectorWitness>> {
    let n = xs.len();
    // Six rays in counterclockwise order.
    let u1 = vec![-&cand.normal1[1], cand.normal1[0].clone()];
    let u2 = vec![-&cand.normal2[1], cand.normal2[0].clone()];
    let u3 = vec![-&cand.normal3[1], cand.normal3[0].clone()];
    let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(6);
    for u in [&u1, &u2, &u3] {
        rays.push(u.clone());
        rays.push(vec![-&u[0], -&u[1]]);
    }
    rays.sort_by(|a, b| full_circle_cmp(a, b));
    let mut assignment = vec![0u8; n];
    for i in 0..n {
        let w = vec![
            &s.pts[i][0] * &cand.den - &cand.cx,
            &s.pts[i][1] * &cand.den - &cand.cy,
        ];
        if w.iter().all(|v| v.is_zero()) {
            assignment[i] = 0;
            continue;
        }
        // Largest ray not angularly past w.
        let mut sector = 5;
        for (r, ray) in rays.iter().enumerate() {
            match full_circle_cmp(ray, &w) {
                std::cmp::Ordering::Less | std::cmp::Ordering::Equal => sector = r,
                std::cmp::Ordering::Greater => break,
            }
        }
        assignment[i] = sector as u8;
    }
    let mut counts = [0usize; 6];
    for &a in &assignment {
        counts[a as usize] += 1;
    }
    if counts.iter().any(|&c| c < lo || c > hi) {
        return Ok(None);
    }
    let triple: [Vec<usize>; 3] = [
        (0..n).filter(|&i| assignment[i] == 0).collect(),
        (0..n).filter(|&i| assignment[i] == 2).collect(),
        (0..n).filter(|&i| assignment[i] == 4).collect(),
    ];
    let sets: Vec<Vec<Point>> = triple
        .iter()
        .map(|idx| idx.iter().map(|&i| xs[i].clone()).collect())
        .collect();
    if is_transversal_triple(&sets[0], &sets[1], &sets[2])?.0 {
        return Ok(None);
    }
    // Materialize the witness in unscaled coordinates.
    let factor = Scalar::from_integer(s.factor.clone());
    let center = Point::xy(
        Scalar::new(cand.cx.clone(), cand.den.clone()) / &factor,
        Scalar::new(cand.cy.clone(), cand.den.clone()) / &factor,
    );
    let line = |normal: &[BigInt]| -> Result<Hyperplane> {
        let nv = Vector(vec![
            Scalar::from_integer(normal[0].clone()),
            Scalar::from_integer(normal[1].clone()),
        ]);
        let off = nv.dot(&Vector(center.coords().to_vec()));
        Hyperplane::new(nv, off)
    };
    let lines = [
        line(&cand.normal1)?,
        line(&cand.normal2)?,
        line(&cand.normal3)?,
    ];
    for l in &lines {
        if orient(l, &center)? != Sign::Zero {
            return Err(Error::VerificationFailed {
                construction: "six-sector subdivision",
                details: "line misses the common center".into(),
            });
        }
    }
    Ok(Some(SixSectorWitness {
        center,
        lines,
        sector_assignment: assignment,
        triple,
    }))
}

/// Angular order over the full circle: upper halfplane (including the
/// positive x-axis) first, then the lower.
fn full_circle_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    let half = |v: &[BigInt]| -> u8 {
        let sy = Int::sign(&v[1]);
        if sy > 0 || (sy == 0 && Int::sign(&v[0]) > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c: BigInt = &a[0] * &b[1] - &a[1] * &b[0];
        match Int::sign(&c) {
            1 => std::cmp::Ordering::Less,
            -1 => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Equal,
        }
    })
}

/// Halving line with the given direction: no point strictly below half,
/// none strictly above half. Normals and offsets stay integral (the
/// midpoint trick doubles the normal).
fn halving_line(s: &Scaled<BigInt>, u: &[BigInt]) -> Option<(Vec<BigInt>, BigInt)> {
    let n = s.pts.len();
    let normal = vec![-&u[1], u[0].clone()];
    let mut dots: Vec<BigInt> = s
        .pts
        .iter()
        .map(|p| &normal[0] * &p[0] + &normal[1] * &p[1])
        .collect();
    dots.sort();
    if n % 2 == 0 {
        let a = &dots[n / 2 - 1];
        let b = &dots[n / 2];
        if a < b {
            // Strictly between the two medians: double the normal so the
            // offset stays integral.
            let normal2 = vec![&normal[0] * 2, &normal[1] * 2];
            return Some((normal2, a + b));
        }
        // Tie: a point sits on the line.
        Some((normal, a.clone()))
    } else {
        Some((normal, dots[n / 2].clone()))
    }
}

/// Candidate directions: spanned pairs, their perpendiculars, sums of
/// angularly adjacent pairs, and seeded random directions.
fn candidate_directions(s: &Scaled<BigInt>, seed: u64) -> Vec<Vec<BigInt>> {
    let n = s.pts.len();
    let mut dirs: Vec<Vec<BigInt>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |d: Vec<BigInt>, dirs: &mut Vec<Vec<BigInt>>| {
        if d[0].is_zero() && d[1].is_zero() {
            return;
        }
        // Canonical direction for dedup.
        let flip = Int::sign(&d[1]) < 0 || (Int::sign(&d[1]) == 0 && Int::sign(&d[0]) < 0);
        let c = if flip { vec![-&d[0], -&d[1]] } else { d };
        let g = num_integer::gcd(c[0].abs(), c[1].abs());
        let key = if g.is_zero() {
            (c[0].clone(), c[1].clone())
        } else {
            (&c[0] / &g, &c[1] / &g)
        };
        if seen.insert(key.clone()) {
            dirs.push(vec![key.0, key.1]);
        }
    };
    let cap = 700usize;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let d = vec![&s.pts[j][0] - &s.pts[i][0], &s.pts[j][1] - &s.pts[i][1]];
            push(d.clone(), &mut dirs);
            push(vec![-&d[1], d[0].clone()], &mut dirs);
            if dirs.len() >= cap {
                break 'outer;
            }
        }
    }
    // Sums of angularly adjacent directions widen the search between
    // pair slopes.
    let mut sorted = dirs.clone();
    sorted.sort_by(|a, b| cone_cmp(a, b));
    for w in sorted.windows(2) {
        push(vec![&w[0][0] + &w[1][0], &w[0][1] + &w[1][1]], &mut dirs);
        if dirs.len() >= cap + 200 {
            break;
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for _ in 0..24 {
        let d = vec![
            BigInt::from(rng.random_range(-997i64..=997)),
            BigInt::from(rng.random_range(-997i64..=997)),
        ];
        push(d, &mut dirs);
    }
    dirs.shuffle(&mut rng);
    dirs.truncate(96);
    dirs
}
