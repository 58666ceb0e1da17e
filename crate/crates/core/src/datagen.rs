//! Seeded dataset generators, including the extremal five-group
//! configuration whose deepest line stays at n/5.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::scalar::{ratio, scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Independent coordinates uniform on a grid in [-1000, 1000].
    UniformBox { d: usize, distinct_x: bool },
    /// Exact rational points on the unit circle near equally spaced
    /// angles (lattice points on a large circle, rescaled).
    CircleEquispaced,
    /// Central projection of near-uniform sphere directions onto a plane:
    /// heavy-tailed planar data.
    SphereProjection,
    /// Clusters of nearby points around random centers.
    Clusters { d: usize, clusters: usize, spread_thousandths: i64 },
    /// Points on a random non-vertical line with distinct abscissas.
    Collinear { d: usize },
    /// A planted deep flat: for k = 1 two coincident clusters spanning a
    /// line; for k = 2 points on a non-vertical plane.
    PlantedFlat { k: usize },
    /// Five groups of nearly parallel, closely spaced dual planes whose
    /// primal points admit no line of depth above n/5. Requires 5 | n.
    R31LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
}

/// Within-group slope tilt of the five-group configuration.
pub const R31_TILT: (i64, i64) = (1, 100);

pub fn generate(spec: &GeneratorSpec) -> Result<Vec<Point>> {
    if spec.n == 0 {
        return Err(Error::InvalidSpec("n must be positive".into()));
    }
    match &spec.kind {
        GeneratorKind::UniformBox { d, distinct_x } => {
            uniform_box(spec.n, *d, spec.seed, *distinct_x)
        }
        GeneratorKind::CircleEquispaced => circle_equispaced(spec.n),
        GeneratorKind::SphereProjection => sphere_projection(spec.n, spec.seed),
        GeneratorKind::Clusters {
            d,
            clusters,
            spread_thousandths,
        } => cluster_points(spec.n, *d, *clusters, *spread_thousandths, spec.seed),
        GeneratorKind::Collinear { d } => collinear(spec.n, *d, spec.seed),
        GeneratorKind::PlantedFlat { k } => planted_flat(spec.n, *k, spec.seed),
        GeneratorKind::R31LowerBound => r31_lower_bound(spec.n),
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d != 2 && d != 3 {
        return Err(Error::InvalidSpec(format!("dimension {d} unsupported")));
    }
    Ok(())
}

fn uniform_box(n: usize, d: usize, seed: u64, distinct_x: bool) -> Result<Vec<Point>> {
    check_dim(d)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        loop {
            let coords: Vec<Scalar> = (0..d)
                .map(|_| ratio(rng.random_range(-1_000_000..=1_000_000), 1000))
                .collect();
            if distinct_x && !seen.insert(coords[0].clone()) {
                continue;
            }
            out.push(Point::new(coords)?);
            break;
        }
    }
    Ok(out)
}

/// Lattice points on the circle of radius 5·13·17·29, rescaled to the
/// unit circle. The radius has enough representations as a sum of two
/// squares to pick a point within a degree of every target angle for
/// n ≤ 150, so the output is exactly on the unit circle and nearly
/// equally spaced.
fn circle_equispaced(n: usize) -> Result<Vec<Point>> {
    let r: i64 = 5 * 13 * 17 * 29; // 32045
    let mut lattice: Vec<(i64, i64)> = Vec::new();
    for x in -r..=r {
        let y2 = r * r - x * x;
        let y = (y2 as f64).sqrt().round() as i64;
        for cand in [y, -y] {
            if x * x + cand * cand == r * r && (cand != 0 || x.abs() == r) {
                lattice.push((x, cand));
            }
        }
    }
    lattice.sort_unstable();
    lattice.dedup();
    if lattice.len() < n {
        return Err(Error::InvalidSpec(format!(
            "only {} circle lattice points available for n = {n}",
            lattice.len()
        )));
    }
    // Sort by angle, then pick the nearest unused point per target angle.
    let mut by_angle: Vec<(f64, (i64, i64))> = lattice
        .iter()
        .map(|&(x, y)| ((y as f64).atan2(x as f64), (x, y)))
        .collect();
    by_angle.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut used = vec![false; by_angle.len()];
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let theta = -std::f64::consts::PI + std::f64::consts::TAU * (j as f64) / (n as f64);
        let mut best: Option<(f64, usize)> = None;
        for (idx, (angle, _)) in by_angle.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let dist = (angle - theta).abs();
            if best.map(|(b, _)| dist < b).unwrap_or(true) {
                best = Some((dist, idx));
            }
        }
        let (_, idx) = best.expect("enough lattice points");
        used[idx] = true;
        let (x, y) = by_angle[idx].1;
        out.push(Point::xy(ratio(x, r), ratio(y, r)));
    }
    Ok(out)
}

fn sphere_projection(n: usize, seed: u64) -> Result<Vec<Point>> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let grid = 1i64 << 20;
    let snap = |v: f64| -> Scalar {
        Scalar::new(BigInt::from((v * grid as f64).round() as i64), BigInt::from(grid))
    };
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        // Uniform direction on the sphere, rejecting near-equatorial ones
        // to cap the projected magnitudes.
        let z: f64 = rng.random_range(-1.0..1.0);
        if z.abs() < 0.05 {
            continue;
        }
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let s = (1.0 - z * z).sqrt();
        let (x, y) = (s * theta.cos(), s * theta.sin());
        out.push(Point::xy(snap(x / z), snap(y / z)));
    }
    Ok(out)
}

fn cluster_points(
    n: usize,
    d: usize,
    clusters: usize,
    spread_thousandths: i64,
    seed: u64,
) -> Result<Vec<Point>> {
    check_dim(d)?;
    if clusters == 0 {
        return Err(Error::InvalidSpec("cluster count must be positive".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let centers: Vec<Vec<i64>> = (0..clusters)
        .map(|_| (0..d).map(|_| rng.random_range(-900_000..=900_000)).collect())
        .collect();
    let spread = spread_thousandths.max(0);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let c = &centers[i % clusters];
        let coords: Vec<Scalar> = c
            .iter()
            .map(|&v| ratio(v + rng.random_range(-spread..=spread), 1000))
            .collect();
        out.push(Point::new(coords)?);
    }
    Ok(out)
}

fn collinear(n: usize, d: usize, seed: u64) -> Result<Vec<Point>> {
    check_dim(d)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let anchor: Vec<i64> = (0..d).map(|_| rng.random_range(-1000..=1000)).collect();
    let mut dir: Vec<i64> = (0..d).map(|_| rng.random_range(-50..=50)).collect();
    dir[0] = rng.random_range(1..=50); // non-vertical, distinct abscissas
    let mut ts: Vec<i64> = Vec::with_capacity(n);
    let mut seen = std::collections::HashSet::new();
    while ts.len() < n {
        let t = rng.random_range(-5000..=5000);
        if seen.insert(t) {
            ts.push(t);
        }
    }
    Ok(ts
        .into_iter()
        .map(|t| {
            Point::new(
                anchor
                    .iter()
                    .zip(&dir)
                    .map(|(&a, &v)| ratio(a * 100 + t * v, 100))
                    .collect(),
            )
            .expect("dimension checked")
        })
        .collect())
}

fn planted_flat(n: usize, k: usize, seed: u64) -> Result<Vec<Point>> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    match k {
        1 => {
            // Two coincident clusters spanning a non-vertical line.
            let a = Point::xyz_i(
                rng.random_range(-500..0),
                rng.random_range(-500..=500),
                rng.random_range(-500..=500),
            );
            let b = Point::xyz_i(
                rng.random_range(1..=500),
                rng.random_range(-500..=500),
                rng.random_range(-500..=500),
            );
            Ok((0..n)
                .map(|i| if i % 2 == 0 { a.clone() } else { b.clone() })
                .collect())
        }
        2 => {
            // Points on z = alpha x + beta y + gamma with distinct (x, y).
            let alpha = ratio(rng.random_range(-300..=300), 100);
            let beta = ratio(rng.random_range(-300..=300), 100);
            let gamma = ratio(rng.random_range(-300..=300), 100);
            let mut seen = std::collections::HashSet::new();
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let x = rng.random_range(-100_000..=100_000);
                let y = rng.random_range(-100_000..=100_000);
                if !seen.insert((x, y)) {
                    continue;
                }
                let xs = ratio(x, 100);
                let ys = ratio(y, 100);
                let z = &alpha * &xs + &beta * &ys + &gamma;
                out.push(Point::xyz(xs, ys, z));
            }
            Ok(out)
        }
        _ => Err(Error::InvalidSpec(format!("planted flat supports k in {{1,2}}, got {k}"))),
    }
}

/// Anchor segments of the five dual-plane groups in the two sections.
/// Group order: C, A1, A2, B1, B2 with base slopes 0, 2, 5, -6, -8.
/// Anchors spread over half of the designated segment, which keeps all
/// pairwise within-group crossings on the segment itself.
struct GroupLayout {
    slope: Scalar,
    /// Anchor start and abscissa extent in the x = +1 section.
    a_start: Scalar,
    a_extent: Scalar,
    /// Anchor start and abscissa extent in the x = -1 section.
    b_start: Scalar,
    b_extent: Scalar,
}

fn r31_layout() -> [GroupLayout; 5] {
    let g = |slope: i64, a0: Scalar, ae: Scalar, b0: Scalar, be: Scalar| GroupLayout {
        slope: scalar(slope),
        a_start: a0,
        a_extent: ae,
        b_start: b0,
        b_extent: be,
    };
    // Narrow extents keep each group closely spaced: wide groups open
    // deep joint cells between bundles.
    [
        // C: along the triangle base in both sections.
        g(0, ratio(1, 2), ratio(1, 25), ratio(1, 4), ratio(1, 25)),
        // A1: section a: inner segment from the base crossing toward the
        // A1-A2 crossing; section b: along its triangle side.
        g(2, ratio(5, 2), ratio(1, 25), scalar(0), ratio(1, 25)),
        // A2: section a: inner segment from the A1-A2 crossing toward
        // B1; section b: along its triangle side.
        g(5, scalar(4), ratio(1, 25), scalar(3), ratio(1, 25)),
        // B1: section a: along its triangle side; section b: inner
        // segment from the base crossing toward the B1-B2 crossing.
        g(-6, scalar(10), ratio(-1, 25), ratio(17, 6), ratio(-1, 25)),
        // B2: section a: along its triangle side; section b: inner
        // segment from the B1-B2 crossing toward A1.
        g(-8, scalar(0), ratio(-1, 25), ratio(5, 2), ratio(-1, 25)),
    ]
}

/// The five-group configuration: every member is a dual plane described
/// by its trace lines in the sections x = 1 and x = -1, whose slope (the
/// y-coefficient) is shared between sections. At x = 1 the A groups cross
/// inside the triangle of B1, B2 and C; at x = -1 the roles of the A and
/// B groups are exchanged.
fn r31_lower_bound(n: usize) -> Result<Vec<Point>> {
    if n % 5 != 0 {
        return Err(Error::InvalidSpec(format!(
            "the five-group configuration needs 5 | n, got {n}"
        )));
    }
    let g = n / 5;
    let tau = ratio(R31_TILT.0, R31_TILT.1);
    let mut out = Vec::with_capacity(n);
    for layout in r31_layout() {
        // Anchor abscissas: a_start + extent·t/(2g) spans half of each
        // segment, so pairwise crossings at a_start + extent·(t+t')/(2g)
        // stay on it. Base slopes at t = 0 keep the triangle-side anchors
        // exactly on the base lines.
        for t in 0..g {
            let tt = scalar(t as i64);
            let frac = &tt / scalar(2 * g as i64);
            let slope = &layout.slope + &tau * &tt;
            let au = &layout.a_start + &layout.a_extent * &frac;
            let av = base_height(&layout.slope, &layout.a_start, &au);
            let bu = &layout.b_start + &layout.b_extent * &frac;
            let bv = base_height(&layout.slope, &layout.b_start, &bu);
            let intercept_a = &av - &slope * &au;
            let intercept_b = &bv - &slope * &bu;
            let two = scalar(2);
            let p1 = (&intercept_a - &intercept_b) / &two;
            let p3 = -(&intercept_a + &intercept_b) / &two;
            out.push(Point::xyz(p1, slope, p3));
        }
    }
    Ok(out)
}

/// Height of the group's anchor segment above its start abscissa: the
/// segments lie on the base (t = 0) member's line, which passes through
/// (start, start_height) with the base slope; for the inner segments the
/// start heights are baked into the layout starts below.
fn base_height(slope: &Scalar, seg_start: &Scalar, u: &Scalar) -> Scalar {
    // Segment start heights per construction: C and the triangle sides
    // all start on lines whose value at the start abscissa is fixed by
    // the base-line equations; expressing the anchor as a point of the
    // base line keeps every anchor on its segment exactly.
    // v(u) = v(seg_start) + slope·(u − seg_start); v(seg_start) values are
    // encoded by the caller via the segment tables.
    slope * (u - seg_start) + seg_start_height(slope, seg_start)
}

fn seg_start_height(slope: &Scalar, seg_start: &Scalar) -> Scalar {
    // Start heights of the anchor segments, section by section:
    //   slope 0 (C): height 0 at both starts.
    //   slope 2 (A1): section a starts at (5/2, 0); section b at (0, 0).
    //   slope 5 (A2): section a at (4, 3); section b at (3, 0).
    //   slope -6 (B1): section a at (10, 0); section b at (17/6, 0).
    //   slope -8 (B2): section a at (0, 0); section b at (5/2, 2).
    let z = Scalar::zero();
    if slope == &scalar(5) && seg_start == &scalar(4) {
        return scalar(3);
    }
    if slope == &scalar(-8) && seg_start == &ratio(5, 2) {
        return scalar(2);
    }
    z
}

/// Exact check: all abscissas distinct.
pub fn check_distinct_x(xs: &[Point]) -> bool {
    let mut seen: Vec<&Scalar> = xs.iter().map(|p| p.coord(0)).collect();
    seen.sort();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// Exact check on planar data (or projections): no three points collinear.
pub fn check_no_three_collinear(xs: &[Point]) -> bool {
    let n = xs.len();
    for i in 0..n {
        for j in i + 1..n {
            let u = xs[j].sub(&xs[i]);
            for p in xs.iter().skip(j + 1) {
                let v = p.sub(&xs[i]);
                if (&u.0[0] * &v.0[1] - &u.0[1] * &v.0[0]).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// The section trace of a dual point: the x = s section line (slope,
/// intercept) of its dual plane.
pub fn section_trace(p: &Point, s: i64) -> (Scalar, Scalar) {
    let slope = p.coord(1).clone();
    let intercept = p.coord(0) * scalar(s) - p.coord(2);
    (slope, intercept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_box_deterministic_and_distinct() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::UniformBox {
                d: 2,
                distinct_x: true,
            },
            n: 50,
            seed: 3,
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a, b);
        assert!(check_distinct_x(&a));
    }

    #[test]
    fn circle_points_are_exactly_on_the_unit_circle() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::CircleEquispaced,
            n: 12,
            seed: 0,
        };
        let xs = generate(&spec).unwrap();
        assert_eq!(xs.len(), 12);
        for p in &xs {
            let norm = p.coord(0) * p.coord(0) + p.coord(1) * p.coord(1);
            assert_eq!(norm, scalar(1));
        }
        // Near-equal spacing: all consecutive angular gaps within 40% of
        // the target.
        let mut angles: Vec<f64> = xs
            .iter()
            .map(|p| {
                let x: f64 = p.coord(0).numer().to_string().parse::<f64>().unwrap()
                    / p.coord(0).denom().to_string().parse::<f64>().unwrap();
                let y: f64 = p.coord(1).numer().to_string().parse::<f64>().unwrap()
                    / p.coord(1).denom().to_string().parse::<f64>().unwrap();
                y.atan2(x)
            })
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let target = std::f64::consts::TAU / 12.0;
        for w in angles.windows(2) {
            let gap = w[1] - w[0];
            assert!((gap - target).abs() < 0.4 * target, "gap {gap}");
        }
    }

    #[test]
    fn planted_line_three_d() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::PlantedFlat { k: 1 },
            n: 20,
            seed: 5,
        };
        let xs = generate(&spec).unwrap();
        let distinct: std::collections::HashSet<_> =
            xs.iter().map(|p| format!("{p:?}")).collect();
        assert_eq!(distinct.len(), 2);
    }

    #[test]
    fn r31_requires_divisibility() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::R31LowerBound,
            n: 61,
            seed: 0,
        };
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn r31_sections_have_the_prescribed_structure() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::R31LowerBound,
            n: 60,
            seed: 0,
        };
        let xs = generate(&spec).unwrap();
        assert_eq!(xs.len(), 60);
        assert!(check_distinct_x(&xs), "dual points share an x coordinate");
        let g = 12;
        let group = |i: usize| -> Vec<&Point> { xs[i * g..(i + 1) * g].iter().collect() };
        let (c, a1, a2, b1, b2) = (group(0), group(1), group(2), group(3), group(4));

        let cross = |p: &Point, q: &Point, s: i64| -> Option<(Scalar, Scalar)> {
            let (m1, i1) = section_trace(p, s);
            let (m2, i2) = section_trace(q, s);
            if m1 == m2 {
                return None;
            }
            let u = (&i2 - &i1) / (&m1 - &m2);
            let v = &m1 * &u + &i1;
            Some((u, v))
        };

        // Section x = +1: triangle of the B groups and C; base members
        // are the first of each group.
        let tri_a = |u: &Scalar, v: &Scalar| -> bool {
            // Interior of the triangle c: v = 0, b1: v = -6(u - 10),
            // b2: v = -8u (base members at t = 0).
            v > &scalar(0)
                && (v.clone() + scalar(6) * u - scalar(60)) < scalar(0)
                && (v.clone() + scalar(8) * u) > scalar(0)
        };
        for p in &a1 {
            for q in &a2 {
                let (u, v) = cross(p, q, 1).expect("distinct slopes");
                assert!(tri_a(&u, &v), "A crossing outside the section-a triangle");
            }
        }
        // A members cross the B2 side line outside the triangle.
        for p in a1.iter().chain(a2.iter()) {
            for q in &b2 {
                let (u, v) = cross(p, q, 1).expect("distinct slopes");
                assert!(!tri_a(&u, &v), "A x B2 crossing inside the triangle");
            }
        }

        // Section x = -1: triangle of the A groups and C.
        let tri_b = |u: &Scalar, v: &Scalar| -> bool {
            // Interior of c: v = 0, a1: v = 2u, a2: v = 5(u - 3).
            v > &scalar(0)
                && (v.clone() - scalar(2) * u) < scalar(0)
                && (v.clone() - scalar(5) * u + scalar(15)) > scalar(0)
        };
        for p in &b1 {
            for q in &b2 {
                let (u, v) = cross(p, q, -1).expect("distinct slopes");
                assert!(tri_b(&u, &v), "B crossing outside the section-b triangle");
            }
        }
        for p in b1.iter().chain(b2.iter()) {
            for q in &a2 {
                let (u, v) = cross(p, q, -1).expect("distinct slopes");
                assert!(!tri_b(&u, &v), "B x A2 crossing inside the triangle");
            }
        }
        let _ = c;
    }

    #[test]
    fn sphere_projection_is_planar_and_seeded() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::SphereProjection,
            n: 30,
            seed: 77,
        };
        let a = generate(&spec).unwrap();
        assert_eq!(a, generate(&spec).unwrap());
        assert!(a.iter().all(|p| p.dim() == 2));
    }

    #[test]
    fn collinear_is_collinear() {
        let spec = GeneratorSpec {
            kind: GeneratorKind::Collinear { d: 3 },
            n: 12,
            seed: 9,
        };
        let xs = generate(&spec).unwrap();
        assert!(check_distinct_x(&xs));
        let u = xs[1].sub(&xs[0]);
        for p in &xs[2..] {
            let v = p.sub(&xs[0]);
            let c = u.cross(&v);
            assert!(c.is_zero());
        }
    }
}
