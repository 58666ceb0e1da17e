//! Exact decision of whether three planar point sets have a common
//! cutting line.
//!
//! A line cuts a set when both open sides contain one of its points.
//! Cutting is an open condition, constant on the cells of the incidence
//! arrangement; the members of every point's pencil plus the two shifted
//! neighbours of each between member meet every cell, so the decision is
//! exact.

use crate::error::{Error, Result};
use crate::geometry::{Hyperplane, Point};
use crate::kernel::{scale_dataset, with_scaled, Int, MemberKind, Scaled};
use crate::pencil::{materialize, point2_sweep, MemberVariant};

/// Returns whether some line cuts all three sets, and a witness line when
/// one exists.
pub fn is_transversal_triple(
    s1: &[Point],
    s2: &[Point],
    s3: &[Point],
) -> Result<(bool, Option<Hyperplane>)> {
    for set in [s1, s2, s3] {
        // A set with fewer than two distinct points can never be cut.
        if set.len() < 2 {
            return Ok((false, None));
        }
        if set.iter().all(|p| p == &set[0]) {
            return Ok((false, None));
        }
        for p in set {
            if p.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: p.dim(),
                });
            }
        }
    }
    let mut xs: Vec<Point> = s1.to_vec();
    xs.extend_from_slice(s2);
    xs.extend_from_slice(s3);
    let ranges = [0..s1.len(), s1.len()..s1.len() + s2.len(), s1.len() + s2.len()..xs.len()];
    let data = scale_dataset(&xs, &[], 2);
    with_scaled!(&data, s => search(s, &xs, &ranges))
}

fn cuts_all(row: &[i8], ranges: &[std::ops::Range<usize>; 3]) -> bool {
    ranges.iter().all(|r| {
        let mut pos = false;
        let mut neg = false;
        for i in r.clone() {
            match row[i] {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
            if pos && neg {
                return true;
            }
        }
        false
    })
}

fn search<T: Int>(
    s: &Scaled<T>,
    xs: &[Point],
    ranges: &[std::ops::Range<usize>; 3],
) -> Result<(bool, Option<Hyperplane>)> {
    let pts2: Vec<[T; 2]> = s
        .pts
        .iter()
        .map(|p| [p[0].clone(), p[1].clone()])
        .collect();
    let mut seen: Vec<usize> = Vec::new();
    for q in 0..pts2.len() {
        if seen
            .iter()
            .any(|&o| pts2[o][0] == pts2[q][0] && pts2[o][1] == pts2[q][1])
        {
            continue;
        }
        seen.push(q);
        let apex = [pts2[q][0].clone(), pts2[q][1].clone()];
        for m in point2_sweep(&pts2, &apex) {
            if cuts_all(&m.signs, ranges) {
                let h = materialize(&m.normal, &xs[q], &MemberVariant::Exact, xs)?;
                return Ok((true, Some(h)));
            }
            if m.kind == MemberKind::Between {
                for side in [1i8, -1] {
                    let row: Vec<i8> = m
                        .signs
                        .iter()
                        .map(|&v| if v == 0 { side } else { v })
                        .collect();
                    if cuts_all(&row, ranges) {
                        let h =
                            materialize(&m.normal, &xs[q], &MemberVariant::Shifted { side }, xs)?;
                        return Ok((true, Some(h)));
                    }
                }
            }
        }
    }
    Ok((false, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{orient, Sign};

    fn straddling_sets() -> (Vec<Point>, Vec<Point>, Vec<Point>) {
        let mk = |x0: i64| {
            vec![
                Point::xy_i(x0, 1),
                Point::xy_i(x0 + 1, -1),
                Point::xy_i(x0 + 2, 2),
            ]
        };
        (mk(0), mk(10), mk(20))
    }

    #[test]
    fn straddling_sets_are_transversal() {
        let (a, b, c) = straddling_sets();
        let (cut, witness) = is_transversal_triple(&a, &b, &c).unwrap();
        assert!(cut);
        let h = witness.unwrap();
        for set in [&a, &b, &c] {
            let pos = set
                .iter()
                .any(|p| orient(&h, p).unwrap() == Sign::Positive);
            let neg = set
                .iter()
                .any(|p| orient(&h, p).unwrap() == Sign::Negative);
            assert!(pos && neg, "witness fails to cut a set");
        }
    }

    #[test]
    fn singletons_cannot_be_cut() {
        let a = vec![Point::xy_i(0, 0)];
        let b = vec![Point::xy_i(1, 0), Point::xy_i(2, 0)];
        let c = vec![Point::xy_i(3, 0), Point::xy_i(4, 0)];
        assert!(!is_transversal_triple(&a, &b, &c).unwrap().0);
    }

    #[test]
    fn coincident_set_cannot_be_cut() {
        let a = vec![Point::xy_i(5, 5), Point::xy_i(5, 5)];
        let b = vec![Point::xy_i(1, 0), Point::xy_i(2, 3)];
        let c = vec![Point::xy_i(3, 0), Point::xy_i(4, -2)];
        assert!(!is_transversal_triple(&a, &b, &c).unwrap().0);
    }

    #[test]
    fn well_separated_clusters_are_not_transversal() {
        // Three tight clusters at the vertices of a triangle: any line
        // leaves at least one cluster strictly on one side.
        let cluster = |cx: i64, cy: i64| {
            vec![
                Point::xy_i(cx, cy),
                Point::xy_i(cx + 1, cy),
                Point::xy_i(cx, cy + 1),
            ]
        };
        let a = cluster(0, 0);
        let b = cluster(100, 0);
        let c = cluster(50, 90);
        assert!(!is_transversal_triple(&a, &b, &c).unwrap().0);
    }
}
