//! Centerpoints: points of location depth at least ⌈n/(d+1)⌉.
//!
//! The construction solves a linear feasibility problem over directional
//! order-statistic constraints and verifies the result with the exact
//! depth engine. In 2D the constraint directions are the pair normals,
//! whose halfplanes carve out exactly the depth region; in 3D constraints
//! are generated lazily by cutting planes taken from the verifier's own
//! witness halfspaces. Degenerate (lower-dimensional) inputs reduce to
//! the affine hull first.

use num_traits::Zero;

use crate::depth::tukey_depth;
use crate::error::{Error, Result};
use crate::geometry::{rank, DoubleWedge, Pairing, Point, Vector};
use crate::kernel::{with_scaled, Int, Scaled};
use crate::lp::{feasible_point, Constraint};
use crate::scalar::{scalar, Scalar};

/// A point of Tukey depth at least ⌈n/(d+1)⌉, verified exactly.
pub fn centerpoint(xs: &[Point]) -> Result<Point> {
    if xs.is_empty() {
        return Err(Error::InvalidInput("centerpoint of an empty set".into()));
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
    let n = xs.len();
    let r = n.div_ceil(d + 1);
    let c = construct(xs, d)?;
    let cert = tukey_depth(&c, xs)?;
    if cert.depth < r {
        return Err(Error::VerificationFailed {
            construction: "centerpoint",
            details: format!("depth {} below the guarantee {r}", cert.depth),
        });
    }
    Ok(c)
}

fn construct(xs: &[Point], d: usize) -> Result<Point> {
    // Reduce to the affine hull.
    let base = &xs[0];
    let diffs: Vec<Vector> = xs.iter().skip(1).map(|p| p.sub(base)).collect();
    let hull_dim = rank(&diffs);
    if hull_dim == 0 {
        return Ok(base.clone());
    }
    if hull_dim == 1 {
        return Ok(median_on_line(xs, base, &diffs));
    }
    if hull_dim == 2 && d == 3 {
        return planar_subset_centerpoint(xs, base, &diffs);
    }
    match d {
        2 => centerpoint_2d(xs),
        3 => centerpoint_3d(xs),
        _ => unreachable!(),
    }
}

/// Median point of collinear points: depth ⌈n/2⌉ in any ambient dimension.
fn median_on_line(xs: &[Point], base: &Point, diffs: &[Vector]) -> Point {
    let dir = diffs
        .iter()
        .find(|v| !v.is_zero())
        .expect("hull dimension 1 implies a nonzero difference");
    let c = dir.0.iter().position(|v| !v.is_zero()).unwrap();
    let mut ts: Vec<Scalar> = xs
        .iter()
        .map(|p| (p.coord(c) - base.coord(c)) / &dir.0[c])
        .collect();
    ts.sort();
    let t = ts[(ts.len() - 1) / 2].clone();
    base.add(&dir.scale(&t))
}

/// Points spanning a plane inside 3-space: solve the planar problem in
/// hull coordinates and map back. In-plane depth ⌈n/3⌉ lower-bounds the
/// ambient depth since every ambient halfspace meets the plane in a
/// halfplane or contains it.
fn planar_subset_centerpoint(xs: &[Point], base: &Point, diffs: &[Vector]) -> Result<Point> {
    let mut u: Option<&Vector> = None;
    let mut v: Option<&Vector> = None;
    for w in diffs {
        if w.is_zero() {
            continue;
        }
        match u {
            None => u = Some(w),
            Some(uu) => {
                if rank(&[uu.clone(), w.clone()]) == 2 {
                    v = Some(w);
                    break;
                }
            }
        }
    }
    let (u, v) = (u.unwrap().clone(), v.unwrap().clone());
    // Two coordinate rows making [u v] invertible.
    let mut rows = None;
    'outer: for r1 in 0..3 {
        for r2 in r1 + 1..3 {
            let det = &u.0[r1] * &v.0[r2] - &u.0[r2] * &v.0[r1];
            if !det.is_zero() {
                rows = Some((r1, r2, det));
                break 'outer;
            }
        }
    }
    let (r1, r2, det) = rows.expect("independent vectors have an invertible minor");
    let flat_coords: Vec<Point> = xs
        .iter()
        .map(|p| {
            let w = p.sub(base);
            let a = (&w.0[r1] * &v.0[r2] - &w.0[r2] * &v.0[r1]) / &det;
            let b = (&u.0[r1] * &w.0[r2] - &u.0[r2] * &w.0[r1]) / &det;
            Point::xy(a, b)
        })
        .collect();
    let c2 = centerpoint_2d(&flat_coords)?;
    Ok(base
        .add(&u.scale(c2.coord(0)))
        .add(&v.scale(c2.coord(1))))
}

/// Full-dimensional planar centerpoint: the depth region is the
/// intersection of the order-statistic halfplanes over pair normals.
fn centerpoint_2d(xs: &[Point]) -> Result<Point> {
    let n = xs.len();
    let r = n.div_ceil(3);
    let data = crate::kernel::scale_dataset(xs, &[], 2);
    let cons = with_scaled!(&data, s => pair_normal_constraints(s, r));
    let bound = coord_bound(xs);
    if let Some(cp) = float_candidate(2, &cons, &bound) {
        if tukey_depth(&cp, xs)?.depth >= r {
            return Ok(cp);
        }
    }
    feasible_point(2, &cons, &bound, 0x2dc)
        .map(|c| Point::xy(c[0].clone(), c[1].clone()))
        .ok_or_else(|| Error::VerificationFailed {
            construction: "centerpoint",
            details: "order-statistic constraints were infeasible".into(),
        })
}

fn pair_normal_constraints<T: Int>(s: &Scaled<T>, r: usize) -> Vec<Constraint> {
    let n = s.pts.len();
    let mut cons = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let dx = s.pts[j][0].clone() - s.pts[i][0].clone();
            let dy = s.pts[j][1].clone() - s.pts[i][1].clone();
            if dx.sign() == 0 && dy.sign() == 0 {
                continue;
            }
            let u = [-dy, dx];
            for flip in [false, true] {
                let (ux, uy) = if flip {
                    (-u[0].clone(), -u[1].clone())
                } else {
                    (u[0].clone(), u[1].clone())
                };
                let mut dots: Vec<T> = s
                    .pts
                    .iter()
                    .map(|p| ux.clone() * p[0].clone() + uy.clone() * p[1].clone())
                    .collect();
                dots.sort();
                let q = &dots[r - 1];
                // u·x >= q, with u scaled and coordinates unscaled: divide
                // the offset by the factor once more.
                cons.push(Constraint {
                    a: vec![s.unscale(&ux) * factor(s), s.unscale(&uy) * factor(s)],
                    b: s.unscale(q),
                });
            }
        }
    }
    cons
}

/// Scale factor as a scalar: constraints use the scaled normals directly
/// against unscaled coordinates, so offsets divide by the factor once.
fn factor<T: Int>(s: &Scaled<T>) -> Scalar {
    Scalar::from_integer(s.factor.clone())
}

fn coord_bound(xs: &[Point]) -> Scalar {
    let mut m = Scalar::zero();
    for p in xs {
        for c in p.coords() {
            let a = if c < &Scalar::zero() { -c.clone() } else { c.clone() };
            if a > m {
                m = a;
            }
        }
    }
    m + scalar(1)
}

/// Full-dimensional 3D centerpoint by cutting planes over directional
/// order-statistic constraints. Axis and pair-difference directions seed
/// the LP; each failed verification adds a violated constraint found
/// among the data-triple normals, which are the facet directions of the
/// depth region, so their coefficients stay small and progress is
/// guaranteed (each round adds a constraint not yet present).
fn centerpoint_3d(xs: &[Point]) -> Result<Point> {
    let n = xs.len();
    let r = n.div_ceil(4);
    let bound = coord_bound(xs);
    let data = crate::kernel::scale_dataset(xs, &[], 3);
    let mut cons: Vec<Constraint> = Vec::new();
    for axis in 0..3 {
        for sign in [1i64, -1] {
            let mut u = vec![scalar(0); 3];
            u[axis] = scalar(sign);
            cons.push(order_stat_constraint(&u, xs, r));
        }
    }
    with_scaled!(&data, s => seed_triple_constraints(s, r, &mut cons));
    // A float solve of the same constraints, verified exactly, usually
    // ends the search before any exact LP runs.
    if let Some(cp) = float_candidate(3, &cons, &bound) {
        if tukey_depth(&cp, xs)?.depth >= r {
            return Ok(cp);
        }
    }
    for round in 0..300usize {
        let c = feasible_point(3, &cons, &bound, 0x3dc + round as u64).ok_or_else(|| {
            Error::VerificationFailed {
                construction: "centerpoint",
                details: "order-statistic constraints were infeasible".into(),
            }
        })?;
        let cp = Point::xyz(c[0].clone(), c[1].clone(), c[2].clone());
        let cert = tukey_depth(&cp, xs)?;
        if cert.depth >= r {
            return Ok(cp);
        }
        let cut = with_scaled!(&data, s => violated_triple_cut(s, &c, r));
        match cut {
            Some(con) => cons.push(con),
            None => {
                // Degenerate level configuration: fall back to the exact
                // witness direction once.
                let Some(DoubleWedge { h1, pairing, .. }) = cert.wedge().cloned() else {
                    unreachable!("points are never vertical flats");
                };
                let w: Vec<Scalar> = match pairing {
                    Pairing::Same => h1.normal.0.clone(),
                    Pairing::Opposite => h1.normal.0.iter().map(|v| -v).collect(),
                };
                let u: Vec<Scalar> = w.iter().map(|v| -v).collect();
                cons.push(order_stat_constraint(&u, xs, r));
            }
        }
    }
    Err(Error::VerificationFailed {
        construction: "centerpoint",
        details: "cutting-plane iteration did not converge".into(),
    })
}

/// Float-arithmetic feasible point of the constraint set: an average of
/// several f64 LP vertices under different objectives, snapped to a
/// dyadic grid. Soundness comes from the exact verification of the
/// result, never from the float arithmetic.
fn float_candidate(dim: usize, cons: &[Constraint], bound: &Scalar) -> Option<Point> {
    fn to_f(v: &Scalar) -> Option<f64> {
        let n = v.numer().to_string().parse::<f64>().ok()?;
        let d = v.denom().to_string().parse::<f64>().ok()?;
        let r = n / d;
        r.is_finite().then_some(r)
    }
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::with_capacity(cons.len());
    for c in cons {
        let mut a = Vec::with_capacity(dim);
        for v in &c.a {
            a.push(to_f(v)?);
        }
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            continue;
        }
        let b = to_f(&c.b)? / norm;
        for x in a.iter_mut() {
            *x /= norm;
        }
        rows.push((a, b));
    }
    let m = to_f(bound)?;
    // Seidel's expected-linear behavior needs a random insertion order.
    {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0xf10a7);
        rows.shuffle(&mut rng);
    }
    let objectives: [[f64; 3]; 4] = [
        [1.0, 0.7, 0.3],
        [-1.0, 0.2, -0.6],
        [0.3, -1.0, 0.9],
        [-0.4, 0.8, 1.0],
    ];
    let mut acc = vec![0.0f64; dim];
    let mut got = 0usize;
    for obj in &objectives {
        if let Some(x) = lp_f64(dim, &rows, &obj[..dim], m) {
            for (a, v) in acc.iter_mut().zip(&x) {
                *a += v;
            }
            got += 1;
        }
    }
    if got == 0 {
        return None;
    }
    let grid = (1i64 << 20) as f64;
    let coords: Vec<Scalar> = acc
        .iter()
        .map(|v| {
            let snapped = (v / got as f64 * grid).round();
            if !snapped.is_finite() || snapped.abs() > 9e17 {
                return None;
            }
            Some(Scalar::new(
                num_bigint::BigInt::from(snapped as i64),
                num_bigint::BigInt::from(1i64 << 20),
            ))
        })
        .collect::<Option<Vec<_>>>()?;
    Point::new(coords).ok()
}

/// Seidel LP in f64: minimize c·x within the box and the constraints.
fn lp_f64(dim: usize, cons: &[(Vec<f64>, f64)], c: &[f64], bound: f64) -> Option<Vec<f64>> {
    const EPS: f64 = 1e-9;
    if dim == 1 {
        let mut lo = -bound;
        let mut hi = bound;
        for (a, b) in cons {
            if a[0].abs() < 1e-12 {
                if *b > EPS {
                    return None;
                }
                continue;
            }
            let t = b / a[0];
            if a[0] > 0.0 {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
        if lo > hi + EPS {
            return None;
        }
        return Some(vec![if c[0] < 0.0 { hi } else { lo }]);
    }
    let mut x: Vec<f64> = c
        .iter()
        .map(|ci| if *ci > 0.0 { -bound } else { bound })
        .collect();
    for (i, (a, b)) in cons.iter().enumerate() {
        let slack = a.iter().zip(&x).map(|(u, v)| u * v).sum::<f64>() - b;
        if slack >= -EPS {
            continue;
        }
        let p = a
            .iter()
            .enumerate()
            .max_by(|u, v| u.1.abs().partial_cmp(&v.1.abs()).unwrap())
            .map(|(idx, _)| idx)?;
        if a[p].abs() < 1e-12 {
            return None;
        }
        let reduce = |row: &[f64], rhs: f64| -> (Vec<f64>, f64) {
            let coef = row[p] / a[p];
            let mut out = Vec::with_capacity(dim - 1);
            for j in 0..dim {
                if j != p {
                    out.push(row[j] - coef * a[j]);
                }
            }
            (out, rhs - coef * b)
        };
        let mut sub: Vec<(Vec<f64>, f64)> = Vec::with_capacity(i + 2);
        for (pa, pb) in &cons[..i] {
            sub.push(reduce(pa, *pb));
        }
        for sign in [1.0f64, -1.0] {
            let mut row = vec![0.0; dim];
            row[p] = sign;
            sub.push(reduce(&row, -bound));
        }
        let sub_c: Vec<f64> = {
            let coef = c[p] / a[p];
            (0..dim)
                .filter(|&j| j != p)
                .map(|j| c[j] - coef * a[j])
                .collect()
        };
        let y = lp_f64(dim - 1, &sub, &sub_c, bound)?;
        let mut full = Vec::with_capacity(dim);
        let mut yi = y.iter();
        for j in 0..dim {
            if j == p {
                full.push(0.0);
            } else {
                full.push(*yi.next().unwrap());
            }
        }
        let rest: f64 = (0..dim).filter(|&j| j != p).map(|j| a[j] * full[j]).sum();
        full[p] = (b - rest) / a[p];
        x = full;
    }
    Some(x)
}

/// Eagerly add order-statistic constraints for a deterministic sample of/// Eagerly add order-statistic constraints for a deterministic sample of
/// data-triple normals (all of them up to ~8k). These are the facet
/// directions of the depth region, so the first LP point usually
/// verifies outright.
fn seed_triple_constraints<T: Int>(s: &Scaled<T>, r: usize, cons: &mut Vec<Constraint>) {
    let n = s.pts.len();
    if n < 3 {
        return;
    }
    let total = n * (n - 1) * (n - 2) / 6;
    let budget = 4000usize;
    let stride = (total / budget).max(1);
    let mut counter = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            let u = crate::kernel::sub(&s.pts[j], &s.pts[i]);
            for k in j + 1..n {
                counter += 1;
                if counter % stride != 0 {
                    continue;
                }
                let v = crate::kernel::sub(&s.pts[k], &s.pts[i]);
                let normal = crate::kernel::cross3(&u, &v);
                if normal.iter().all(|t| t.sign() == 0) {
                    continue;
                }
                for flip in [false, true] {
                    let w: Vec<T> = if flip {
                        normal.iter().map(|t| -t.clone()).collect()
                    } else {
                        normal.clone()
                    };
                    let mut dots: Vec<T> = s.pts.iter().map(|p| crate::kernel::dot(&w, p)).collect();
                    let (_, q, _) = dots.select_nth_unstable(r - 1);
                    let q = q.clone();
                    cons.push(Constraint {
                        a: w.iter().map(|t| Scalar::from_integer(t.to_big())).collect(),
                        b: s.unscale(&q),
                    });
                }
            }
        }
    }
}

/// Scan the data-triple normals for an order-statistic constraint that
/// the query point violates, entirely in integers: with the query written
/// as numerators over a common denominator, `u·c < q` becomes
/// `u·c_num · factor < q_scaled · den`.
fn violated_triple_cut<T: Int>(s: &Scaled<T>, c: &[Scalar], r: usize) -> Option<Constraint> {
    use num_bigint::BigInt;
    let den = crate::scalar::denominator_lcm(c.iter());
    let c_num: Vec<BigInt> = c.iter().map(|v| v.numer() * &den / v.denom()).collect();
    let n = s.pts.len();
    for i in 0..n {
        for j in i + 1..n {
            let u = crate::kernel::sub(&s.pts[j], &s.pts[i]);
            for k in j + 1..n {
                let v = crate::kernel::sub(&s.pts[k], &s.pts[i]);
                let normal = crate::kernel::cross3(&u, &v);
                if normal.iter().all(|t| t.sign() == 0) {
                    continue;
                }
                for flip in [false, true] {
                    let w: Vec<T> = if flip {
                        normal.iter().map(|t| -t.clone()).collect()
                    } else {
                        normal.clone()
                    };
                    let mut dots: Vec<T> = s.pts.iter().map(|p| crate::kernel::dot(&w, p)).collect();
                    let (_, q, _) = dots.select_nth_unstable(r - 1);
                    let q = q.clone();
                    // u·c in integers.
                    let lhs: BigInt = w
                        .iter()
                        .zip(&c_num)
                        .map(|(a, b)| a.to_big() * b)
                        .sum::<BigInt>()
                        * &s.factor;
                    let rhs = q.to_big() * &den;
                    if lhs < rhs {
                        return Some(Constraint {
                            a: w.iter().map(|t| Scalar::from_integer(t.to_big())).collect(),
                            b: s.unscale(&q),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Constraint `u·x >= (r-th smallest of u·p over the data)`.
fn order_stat_constraint(u: &[Scalar], xs: &[Point], r: usize) -> Constraint {
    let mut dots: Vec<Scalar> = xs
        .iter()
        .map(|p| {
            u.iter()
                .zip(p.coords())
                .map(|(a, b)| a * b)
                .fold(Scalar::zero(), |acc, t| acc + t)
        })
        .collect();
    dots.sort();
    Constraint {
        a: u.to_vec(),
        b: dots[r - 1].clone(),
    }
}
