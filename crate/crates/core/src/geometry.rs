//! Geometric kernel: points, hyperplanes, flats and double wedges.
//!
//! Ambient dimension is 2 or 3. By convention the leading coordinates of a
//! point are the independent variables and the trailing ones dependent; a
//! k-flat is *vertical* when its projection onto the first k coordinates is
//! not full-dimensional.

use num_traits::Zero;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{scalar, Scalar};

/// Exact sign of a predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Scalar) -> Sign {
        match x.numer().sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A point with exact rational coordinates, dimension 2 or 3.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<Scalar>,
}

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Result<Point> {
        match coords.len() {
            2 | 3 => Ok(Point { coords }),
            got => Err(Error::DimensionMismatch { expected: 2, got }),
        }
    }

    pub fn xy(x: Scalar, y: Scalar) -> Point {
        Point { coords: vec![x, y] }
    }

    pub fn xyz(x: Scalar, y: Scalar, z: Scalar) -> Point {
        Point {
            coords: vec![x, y, z],
        }
    }

    /// 2D point from machine integers.
    pub fn xy_i(x: i64, y: i64) -> Point {
        Point::xy(scalar(x), scalar(y))
    }

    /// 3D point from machine integers.
    pub fn xyz_i(x: i64, y: i64, z: i64) -> Point {
        Point::xyz(scalar(x), scalar(y), scalar(z))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn sub(&self, other: &Point) -> Vector {
        Vector(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn add(&self, v: &Vector) -> Point {
        Point {
            coords: self
                .coords
                .iter()
                .zip(&v.0)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A direction vector with exact rational components.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Scalar::zero(), |acc, x| acc + x)
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }

    /// Counterclockwise perpendicular of a 2D vector.
    pub fn perp(&self) -> Vector {
        assert_eq!(self.0.len(), 2);
        Vector(vec![-self.0[1].clone(), self.0[0].clone()])
    }

    /// 3D cross product.
    pub fn cross(&self, other: &Vector) -> Vector {
        assert_eq!(self.0.len(), 3);
        let (a, b) = (&self.0, &other.0);
        Vector(vec![
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ])
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ">")
    }
}

/// An oriented hyperplane `{p : normal·p >= offset}` is the positive side.
///
/// Negating both fields swaps the positive and negative sides.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hyperplane {
    pub normal: Vector,
    pub offset: Scalar,
}

impl Hyperplane {
    pub fn new(normal: Vector, offset: Scalar) -> Result<Hyperplane> {
        if normal.is_zero() {
            return Err(Error::InvalidFlat("hyperplane normal is zero".into()));
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// The same hyperplane with sides swapped.
    pub fn negate(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.neg(),
            offset: -self.offset.clone(),
        }
    }

    /// Signed residual `normal·p − offset`.
    pub fn residual(&self, p: &Point) -> Scalar {
        self.normal
            .0
            .iter()
            .zip(p.coords())
            .map(|(n, c)| n * c)
            .fold(Scalar::zero(), |acc, x| acc + x)
            - &self.offset
    }

    /// Vertical line `x = c` in 2D or plane `x = c` in 3D (normal along
    /// the first independent axis).
    pub fn vertical_at(dim: usize, c: Scalar) -> Hyperplane {
        let mut n = vec![Scalar::zero(); dim];
        n[0] = scalar(1);
        Hyperplane {
            normal: Vector(n),
            offset: c,
        }
    }
}

/// Exact orientation of a point against a hyperplane: the sign of
/// `normal·p − offset`.
pub fn orient(h: &Hyperplane, p: &Point) -> Result<Sign> {
    if h.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            got: p.dim(),
        });
    }
    Ok(Sign::of(&h.residual(p)))
}

/// Dual of a 2D point: `(a, b)` maps to the line `y = a·x − b`,
/// represented as the hyperplane `a·x − y >= b`.
pub fn dualize_2d(p: &Point) -> Result<Hyperplane> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.dim(),
        });
    }
    Hyperplane::new(
        Vector(vec![p.coord(0).clone(), -scalar(1)]),
        p.coord(1).clone(),
    )
}

/// Dual of a non-vertical 2D line: `y = a·x − b` maps back to `(a, b)`.
pub fn dualize_2d_line(h: &Hyperplane) -> Result<Point> {
    if h.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: h.dim(),
        });
    }
    let ny = &h.normal.0[1];
    if ny.is_zero() {
        return Err(Error::VerticalDual);
    }
    // normal = (nx, ny), offset c: line nx·x + ny·y = c, i.e.
    // y = (-nx/ny)·x + c/ny, so a = -nx/ny and b = -c/ny.
    let a = -(&h.normal.0[0] / ny);
    let b = -(&h.offset / ny);
    Point::new(vec![a, b])
}

/// An affine k-flat: anchor point plus k linearly independent directions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineFlat {
    anchor: Point,
    span: Vec<Vector>,
}

impl AffineFlat {
    pub fn new(anchor: Point, span: Vec<Vector>) -> Result<AffineFlat> {
        let d = anchor.dim();
        if span.len() >= d {
            return Err(Error::InvalidFlat(format!(
                "a {}-flat does not fit in dimension {d}",
                span.len()
            )));
        }
        for v in &span {
            if v.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: v.dim(),
                });
            }
        }
        if rank(&span) != span.len() {
            return Err(Error::InvalidFlat(
                "span vectors are linearly dependent".into(),
            ));
        }
        Ok(AffineFlat { anchor, span })
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn span(&self) -> &[Vector] {
        &self.span
    }

    /// Flat dimension k.
    pub fn k(&self) -> usize {
        self.span.len()
    }

    pub fn dim(&self) -> usize {
        self.anchor.dim()
    }

    /// Whether the flat's projection onto the first `k_independent`
    /// coordinates fails to be full-dimensional.
    pub fn is_vertical(&self, k_independent: usize) -> bool {
        if k_independent == 0 {
            return false;
        }
        let proj: Vec<Vector> = self
            .span
            .iter()
            .map(|v| Vector(v.0[..k_independent].to_vec()))
            .collect();
        rank(&proj) < k_independent
    }

    /// The unique hyperplane containing a (d−1)-flat.
    pub fn containing_hyperplane(&self) -> Result<Hyperplane> {
        let d = self.dim();
        if self.k() != d - 1 {
            return Err(Error::InvalidFlat(format!(
                "{}-flat in dimension {d} has no unique containing hyperplane",
                self.k()
            )));
        }
        let normal = match d {
            2 => self.span[0].perp(),
            3 => self.span[0].cross(&self.span[1]),
            _ => unreachable!(),
        };
        let offset = normal.dot(&Vector(self.anchor.coords().to_vec()));
        Hyperplane::new(normal, offset)
    }

    /// Whether a point lies on the flat (exact).
    pub fn contains(&self, p: &Point) -> bool {
        // p - anchor must be in the span: rank does not grow.
        let mut vecs = self.span.clone();
        vecs.push(p.sub(&self.anchor));
        rank(&vecs) == self.k()
    }
}

/// Exact rank of a set of rational vectors by Gaussian elimination.
pub fn rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].dim();
    let mut rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.0.clone()).collect();
    let mut r = 0;
    for c in 0..cols {
        if let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            rows.swap(r, pivot);
            let head = rows[r][c].clone();
            for i in r + 1..rows.len() {
                if !rows[i][c].is_zero() {
                    let factor = &rows[i][c] / &head;
                    for j in c..cols {
                        let sub = &factor * &rows[r][j];
                        rows[i][j] = &rows[i][j] - sub;
                    }
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
    }
    r
}

/// A k-flat: either affine, or the j-flat at vertical infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Flat {
    Affine(AffineFlat),
    /// The (d−k−1)-flat at vertical infinity for the dataset's k; `j` is
    /// its dimension d−k−1.
    VerticalInfinity { j: usize },
}

impl Flat {
    pub fn point(p: Point) -> Flat {
        Flat::Affine(AffineFlat {
            span: Vec::new(),
            anchor: p,
        })
    }

    pub fn line(anchor: Point, dir: Vector) -> Result<Flat> {
        Ok(Flat::Affine(AffineFlat::new(anchor, vec![dir])?))
    }

    pub fn plane(anchor: Point, u: Vector, v: Vector) -> Result<Flat> {
        Ok(Flat::Affine(AffineFlat::new(anchor, vec![u, v])?))
    }

    pub fn affine(&self) -> Option<&AffineFlat> {
        match self {
            Flat::Affine(f) => Some(f),
            Flat::VerticalInfinity { .. } => None,
        }
    }

    pub fn k(&self) -> Option<usize> {
        self.affine().map(|f| f.k())
    }
}

/// Which two of the four sign quadrants a double wedge selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// (h1⁺ ∩ h2⁺) ∪ (h1⁻ ∩ h2⁻)
    Same,
    /// (h1⁺ ∩ h2⁻) ∪ (h1⁻ ∩ h2⁺)
    Opposite,
}

impl Pairing {
    pub const BOTH: [Pairing; 2] = [Pairing::Same, Pairing::Opposite];
}

/// The closed region between two projective hyperplanes.
///
/// `h2 == None` denotes the hyperplane at infinity: the wedge degenerates
/// to one closed halfspace bounded by `h1` (`Same` selects h1⁺, `Opposite`
/// selects h1⁻). Membership is closed: points on either boundary belong to
/// both pairings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubleWedge {
    pub h1: Hyperplane,
    pub h2: Option<Hyperplane>,
    pub pairing: Pairing,
}

impl DoubleWedge {
    /// Closed membership predicate.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        let s1 = orient(&self.h1, p)?.to_i8();
        let s2 = match &self.h2 {
            Some(h2) => orient(h2, p)?.to_i8(),
            None => 1,
        };
        Ok(match self.pairing {
            Pairing::Same => s1 as i16 * s2 as i16 >= 0,
            Pairing::Opposite => s1 as i16 * s2 as i16 <= 0,
        })
    }

    /// Indices of the dataset points inside the wedge.
    pub fn contained_indices(&self, xs: &[Point]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, p) in xs.iter().enumerate() {
            if self.contains(p)? {
                out.push(i);
            }
        }
        Ok(out)
    }
}
