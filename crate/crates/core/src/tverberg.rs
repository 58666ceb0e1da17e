//! Planar Tverberg partitions and verification of the flat Tverberg
//! property.
//!
//! The planar construction takes a centerpoint c, sorts the points
//! angularly around it, and forms the parts {j, j+m, j+2m}. A point of
//! depth at least m admits no open halfplane with more than n−m points,
//! while any halfplane avoiding such a triple would have to cover a run
//! of more than 2m consecutive angular positions, so every triple's hull
//! contains c. A bounded swap repair covers degenerate inputs.

use num_traits::Zero;

use crate::constructions::centerpoint;
use crate::depth::{regression_depth, tukey_depth};
use crate::error::{Error, Result};
use crate::geometry::{Flat, Point};
use crate::scalar::Scalar;

/// Disjoint index subsets of a dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionFamily {
    pub parts: Vec<Vec<usize>>,
    pub kind: PartitionKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionKind {
    VerticalThirds,
    SixSector,
    MedianSplit,
    Tverberg,
}

impl PartitionFamily {
    /// Validates that parts are pairwise disjoint subsets of 0..n.
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for part in &self.parts {
            for &i in part {
                if i >= n {
                    return Err(Error::InvalidInput(format!(
                        "part index {i} out of range for {n} points"
                    )));
                }
                if seen[i] {
                    return Err(Error::OverlappingParts { index: i });
                }
                seen[i] = true;
            }
        }
        Ok(())
    }
}

/// A flat together with a partition in which it has nonzero depth
/// everywhere.
#[derive(Clone, Debug)]
pub struct TverbergResult {
    pub flat: Flat,
    pub parts: PartitionFamily,
    pub per_part_depth: Vec<usize>,
}

/// Tverberg partition of a planar point set: ⌊n/3⌋ parts (the last
/// absorbing the ≤ 2 leftover points) whose closed convex hulls all
/// contain the returned point, which is a verified centerpoint, so its
/// location depth is at least ⌈n/3⌉.
pub fn tverberg_partition_2d(xs: &[Point]) -> Result<TverbergResult> {
    let n = xs.len();
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "Tverberg partition needs at least 3 points, got {n}"
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
    let c = centerpoint(xs)?;
    // Angular order around c; points coinciding with c join the last part
    // afterwards (their presence cannot remove c from any hull).
    let mut coincident: Vec<usize> = Vec::new();
    let mut around: Vec<usize> = Vec::new();
    for (i, p) in xs.iter().enumerate() {
        if p == &c {
            coincident.push(i);
        } else {
            around.push(i);
        }
    }
    around.sort_by(|&a, &b| angular_cmp(&c, &xs[a], &xs[b]).then(a.cmp(&b)));
    let m = n / 3;
    if around.len() < 3 * m {
        // More than n - 3⌊n/3⌋ points coincide with c: hulls are trivial.
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let chunk = around.len() / m.max(1);
        let _ = chunk;
        // Distribute all points round-robin; every part keeps a
        // coincident copy of c when possible.
        let mut all: Vec<usize> = coincident.iter().chain(around.iter()).copied().collect();
        all.sort_unstable();
        for (pos, i) in all.iter().enumerate() {
            if pos < m {
                parts.push(vec![*i]);
            } else {
                parts[pos % m].push(*i);
            }
        }
        return finish(xs, c, parts);
    }
    let mut parts: Vec<Vec<usize>> = (0..m)
        .map(|j| vec![around[j], around[j + m], around[j + 2 * m]])
        .collect();
    for &i in around[3 * m..].iter().chain(coincident.iter()) {
        parts[m - 1].push(i);
    }
    // Verification plus bounded swap repair.
    let mut bad: Vec<usize> = failing_parts(xs, &c, &parts)?;
    let mut budget = n * n;
    while let Some(&b) = bad.first() {
        if budget == 0 {
            return Err(Error::SearchBudgetExhausted {
                construction: "Tverberg partition",
                diagnostics: format!("{} parts still miss the center", bad.len()),
            });
        }
        let mut repaired = false;
        'repair: for other in 0..parts.len() {
            if other == b {
                continue;
            }
            for bi in 0..parts[b].len() {
                for oi in 0..parts[other].len() {
                    if budget == 0 {
                        break 'repair;
                    }
                    budget -= 1;
                    let (x, y) = (parts[b][bi], parts[other][oi]);
                    parts[b][bi] = y;
                    parts[other][oi] = x;
                    if part_contains(xs, &c, &parts[b])? && part_contains(xs, &c, &parts[other])? {
                        repaired = true;
                        break 'repair;
                    }
                    parts[b][bi] = x;
                    parts[other][oi] = y;
                }
            }
        }
        if !repaired {
            return Err(Error::SearchBudgetExhausted {
                construction: "Tverberg partition",
                diagnostics: "no swap restores the failing part".into(),
            });
        }
        bad = failing_parts(xs, &c, &parts)?;
    }
    finish(xs, c, parts)
}

fn finish(xs: &[Point], c: Point, parts: Vec<Vec<usize>>) -> Result<TverbergResult> {
    let family = PartitionFamily {
        parts,
        kind: PartitionKind::Tverberg,
    };
    family.validate(xs.len())?;
    let flat = Flat::point(c);
    let per_part_depth = verify_flat_tverberg(&flat, 0, &family, xs)?;
    if let Some(pos) = per_part_depth.iter().position(|&d| d == 0) {
        return Err(Error::VerificationFailed {
            construction: "Tverberg partition",
            details: format!("part {pos} does not contain the center"),
        });
    }
    Ok(TverbergResult {
        flat,
        parts: family,
        per_part_depth,
    })
}

fn failing_parts(xs: &[Point], c: &Point, parts: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        if !part_contains(xs, c, part)? {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// Closed-hull membership of the center, decided by the exact depth
/// engine: depth >= 1 within the part means every closed halfplane
/// through c meets it.
fn part_contains(xs: &[Point], c: &Point, part: &[usize]) -> Result<bool> {
    let subset: Vec<Point> = part.iter().map(|&i| xs[i].clone()).collect();
    Ok(tukey_depth(c, &subset)?.depth >= 1)
}

/// Angular comparison of two points around a center: upper halfplane
/// (including the positive x-ray) before lower, then by exact cross sign.
fn angular_cmp(c: &Point, a: &Point, b: &Point) -> std::cmp::Ordering {
    let (ax, ay) = (a.coord(0) - c.coord(0), a.coord(1) - c.coord(1));
    let (bx, by) = (b.coord(0) - c.coord(0), b.coord(1) - c.coord(1));
    let half = |x: &Scalar, y: &Scalar| -> u8 {
        if y > &Scalar::zero() || (y.is_zero() && x > &Scalar::zero()) {
            0
        } else {
            1
        }
    };
    half(&ax, &ay).cmp(&half(&bx, &by)).then_with(|| {
        let cross = &ax * &by - &ay * &bx;
        if cross > Scalar::zero() {
            std::cmp::Ordering::Less
        } else if cross < Scalar::zero() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    })
}

/// Depth of the flat within each part of a partition. The caller checks
/// positivity; zero pinpoints the failing part.
pub fn verify_flat_tverberg(
    f: &Flat,
    k: usize,
    parts: &PartitionFamily,
    xs: &[Point],
) -> Result<Vec<usize>> {
    parts.validate(xs.len())?;
    let mut out = Vec::with_capacity(parts.parts.len());
    for part in &parts.parts {
        let subset: Vec<Point> = part.iter().map(|&i| xs[i].clone()).collect();
        out.push(regression_depth(f, k, &subset)?.depth);
    }
    Ok(out)
}

/// Partition a dataset into parts in which a given non-vertical line has
/// nonzero depth: points on the line become singletons, and points off it
/// form sign-alternating triples in abscissa order. Realizes the catline
/// pairing: on catline inputs the part count reaches ⌈n/3⌉.
pub fn line_pinning_parts(line: &Flat, xs: &[Point]) -> Result<PartitionFamily> {
    let af = line
        .affine()
        .ok_or_else(|| Error::InvalidFlat("pinning parts of a flat at infinity".into()))?;
    let h = af.containing_hyperplane()?;
    let mut zeros: Vec<usize> = Vec::new();
    let mut signed: Vec<(usize, i8)> = Vec::new();
    for (i, p) in xs.iter().enumerate() {
        match crate::geometry::orient(&h, p)? {
            crate::geometry::Sign::Zero => zeros.push(i),
            crate::geometry::Sign::Positive => signed.push((i, 1)),
            crate::geometry::Sign::Negative => signed.push((i, -1)),
        }
    }
    signed.sort_by(|a, b| {
        xs[a.0]
            .coord(0)
            .cmp(xs[b.0].coord(0))
            .then(a.0.cmp(&b.0))
    });
    let mut parts: Vec<Vec<usize>> = zeros.into_iter().map(|i| vec![i]).collect();
    // Greedy alternating triples (s, -s, s) in abscissa order.
    let mut used = vec![false; signed.len()];
    for start in 0..signed.len() {
        if used[start] {
            continue;
        }
        let s0 = signed[start].1;
        let mut mid = None;
        for j in start + 1..signed.len() {
            if !used[j] && signed[j].1 == -s0 {
                mid = Some(j);
                break;
            }
        }
        let Some(mid) = mid else { continue };
        let mut last = None;
        for j in mid + 1..signed.len() {
            if !used[j] && signed[j].1 == s0 {
                last = Some(j);
                break;
            }
        }
        let Some(last) = last else { continue };
        used[start] = true;
        used[mid] = true;
        used[last] = true;
        parts.push(vec![signed[start].0, signed[mid].0, signed[last].0]);
    }
    // Leftovers keep depth positive when attached to any existing part.
    let leftovers: Vec<usize> = (0..signed.len())
        .filter(|&j| !used[j])
        .map(|j| signed[j].0)
        .collect();
    if parts.is_empty() {
        if leftovers.is_empty() {
            return Err(Error::InvalidInput("empty dataset".into()));
        }
        parts.push(leftovers);
    } else if !leftovers.is_empty() {
        let last = parts.len() - 1;
        parts[last].extend(leftovers);
    }
    Ok(PartitionFamily {
        parts,
        kind: PartitionKind::VerticalThirds,
    })
}
