//! Exact low-dimensional linear feasibility via randomized incremental LP.
//!
//! Dimensions 1 to 3, rational arithmetic throughout. Used by the
//! centerpoint construction; the feasible regions there are intersections
//! of order-statistic halfplanes, always bounded by an explicit box.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::scalar::Scalar;

/// Constraint `a · x >= b`.
#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub a: Vec<Scalar>,
    pub b: Scalar,
}

impl Constraint {
    fn satisfied(&self, x: &[Scalar]) -> bool {
        dot(&self.a, x) >= self.b
    }
}

fn dot(a: &[Scalar], x: &[Scalar]) -> Scalar {
    a.iter()
        .zip(x)
        .map(|(u, v)| u * v)
        .fold(Scalar::zero(), |acc, t| acc + t)
}

/// Find a point with `a·x >= b` for every constraint and `|x_i| <= bound`,
/// minimizing a fixed generic objective. Returns `None` when infeasible.
pub(crate) fn feasible_point(
    dim: usize,
    constraints: &[Constraint],
    bound: &Scalar,
    seed: u64,
) -> Option<Vec<Scalar>> {
    let mut order: Vec<usize> = (0..constraints.len()).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let cons: Vec<Constraint> = order.into_iter().map(|i| constraints[i].clone()).collect();
    // A generic objective keeps the recursion's optima unique enough in
    // practice; any feasible optimum serves.
    let objective: Vec<Scalar> = (0..dim)
        .map(|i| Scalar::new((2 + i as i64).into(), (3 + 2 * i as i64).into()))
        .collect();
    lp(dim, &cons, &objective, bound)
}

/// Minimize `c · x` subject to the constraints inside the box. Seidel's
/// recursion: start from the box optimum, and re-solve on the boundary of
/// each violated constraint.
fn lp(dim: usize, cons: &[Constraint], c: &[Scalar], bound: &Scalar) -> Option<Vec<Scalar>> {
    if dim == 1 {
        return lp1(cons, &c[0], bound);
    }
    // Box optimum.
    let mut x: Vec<Scalar> = c
        .iter()
        .map(|ci| {
            if ci.is_zero() || ci > &Scalar::zero() {
                -bound.clone()
            } else {
                bound.clone()
            }
        })
        .collect();
    for (i, con) in cons.iter().enumerate() {
        if con.satisfied(&x) {
            continue;
        }
        // The optimum moves onto this constraint's boundary. Substitute
        // x_p = (b - sum_{j != p} a_j x_j) / a_p.
        let p = pivot(&con.a)?;
        let ap = con.a[p].clone();
        // Reduced rows over the remaining coordinates.
        let reduce = |row: &[Scalar], rhs: &Scalar| -> (Vec<Scalar>, Scalar) {
            let coef = &row[p] / &ap;
            let mut out = Vec::with_capacity(dim - 1);
            for j in 0..dim {
                if j != p {
                    out.push(&row[j] - &coef * &con.a[j]);
                }
            }
            (out, rhs - coef * &con.b)
        };
        let mut sub_cons: Vec<Constraint> = Vec::with_capacity(i + 2);
        for prev in &cons[..i] {
            let (a, b) = reduce(&prev.a, &prev.b);
            sub_cons.push(Constraint { a, b });
        }
        // The box constraint on the substituted coordinate.
        for sign in [1i64, -1] {
            let mut row = vec![Scalar::zero(); dim];
            row[p] = Scalar::from_integer(sign.into());
            let (a, b) = reduce(&row, &-bound.clone());
            sub_cons.push(Constraint { a, b });
        }
        let sub_c: Vec<Scalar> = {
            let coef = &c[p] / &ap;
            (0..dim)
                .filter(|&j| j != p)
                .map(|j| &c[j] - &coef * &con.a[j])
                .collect()
        };
        let y = lp(dim - 1, &sub_cons, &sub_c, bound)?;
        // Reassemble the full point.
        let mut full = Vec::with_capacity(dim);
        let mut yi = y.iter();
        for j in 0..dim {
            if j == p {
                full.push(Scalar::zero()); // placeholder, filled below
            } else {
                full.push(yi.next().unwrap().clone());
            }
        }
        let rest: Scalar = (0..dim)
            .filter(|&j| j != p)
            .map(|j| &con.a[j] * &full[j])
            .fold(Scalar::zero(), |acc, t| acc + t);
        full[p] = (&con.b - rest) / ap;
        x = full;
    }
    Some(x)
}

fn pivot(a: &[Scalar]) -> Option<usize> {
    a.iter().position(|v| !v.is_zero())
}

fn lp1(cons: &[Constraint], c: &Scalar, bound: &Scalar) -> Option<Vec<Scalar>> {
    let mut lo = -bound.clone();
    let mut hi = bound.clone();
    for con in cons {
        let a = &con.a[0];
        if a.is_zero() {
            if con.b > Scalar::zero() {
                return None;
            }
            continue;
        }
        let t = &con.b / a;
        if a > &Scalar::zero() {
            if t > lo {
                lo = t;
            }
        } else if t < hi {
            hi = t;
        }
    }
    if lo > hi {
        return None;
    }
    let x = if c < &Scalar::zero() { hi } else { lo };
    Some(vec![x])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, scalar};

    fn con(a: &[i64], b: i64) -> Constraint {
        Constraint {
            a: a.iter().map(|&v| scalar(v)).collect(),
            b: scalar(b),
        }
    }

    #[test]
    fn feasible_triangle() {
        // x >= 0, y >= 0, x + y <= 1
        let cons = vec![con(&[1, 0], 0), con(&[0, 1], 0), con(&[-1, -1], -1)];
        let x = feasible_point(2, &cons, &scalar(10), 1).unwrap();
        for c in &cons {
            assert!(c.satisfied(&x), "{x:?} violates {c:?}");
        }
    }

    #[test]
    fn infeasible_pair() {
        let cons = vec![con(&[1, 0], 2), con(&[-1, 0], -1)]; // x >= 2 and x <= 1
        assert!(feasible_point(2, &cons, &scalar(10), 1).is_none());
    }

    #[test]
    fn three_dimensional_corner() {
        let cons = vec![
            con(&[1, 0, 0], 1),
            con(&[0, 1, 0], 1),
            con(&[0, 0, 1], 1),
            con(&[-1, -1, -1], -4),
        ];
        let x = feasible_point(3, &cons, &scalar(10), 2).unwrap();
        for c in &cons {
            assert!(c.satisfied(&x));
        }
    }

    #[test]
    fn rational_constraints_pin_a_point() {
        let cons = vec![
            Constraint {
                a: vec![scalar(1), scalar(0)],
                b: ratio(1, 3),
            },
            Constraint {
                a: vec![scalar(-1), scalar(0)],
                b: ratio(-1, 3),
            },
            Constraint {
                a: vec![scalar(0), scalar(1)],
                b: ratio(1, 3),
            },
            Constraint {
                a: vec![scalar(0), scalar(-1)],
                b: ratio(-1, 3),
            },
        ];
        let x = feasible_point(2, &cons, &scalar(5), 3).unwrap();
        assert_eq!(x[0], ratio(1, 3));
        assert_eq!(x[1], ratio(1, 3));
    }
}
