//! Constructive existence results: centerpoints, ham sandwich cuts, the
//! catline, six-sector partitions, and deep lines and planes in 3D.
//!
//! Every construction is post-verified by the exact depth engine; a
//! construction that returns without error satisfies its stated guarantee.

mod catline;
mod centerpoint;
mod deep3d;
mod hamsandwich;
mod sixsector;
mod transversal;

pub use catline::catline;
pub use centerpoint::centerpoint;
pub use deep3d::{construct_deep_line_3d, construct_deep_plane_3d, DeepLineStrategy};
pub use hamsandwich::{ham_sandwich_2d, ham_sandwich_3d, ham_sandwich_3d_seeded};
pub use sixsector::{six_sector_partition, SixSectorWitness};
pub use transversal::is_transversal_triple;

pub(crate) use catline::line_to_flat;

use crate::error::Result;
use crate::geometry::{Hyperplane, Point};
use crate::kernel::{halve, perp2, Int, Scaled};
use crate::pencil::{materialize, MemberVariant};
use crate::scalar::Scalar;

/// Perturbation flavors of the line through two data points. The concrete
/// perturbation magnitudes are sized against a full dataset, so two
/// modules enumerating the same (i, j, variant) triple over the same
/// dataset produce identical hyperplanes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PairVariant {
    Base,
    /// Translate off the incident points; incident points get this sign.
    Shift(i8),
    /// Rotate about the midpoint; points on the base line at parameter t
    /// from the midpoint get sign `side * sign(t)`.
    Tilt(i8),
}

impl PairVariant {
    pub const ALL: [PairVariant; 5] = [
        PairVariant::Base,
        PairVariant::Shift(1),
        PairVariant::Shift(-1),
        PairVariant::Tilt(1),
        PairVariant::Tilt(-1),
    ];
}

/// Sign row of a pair-line variant, derived from the base row without
/// rational arithmetic. `dir` is the scaled direction from point i to
/// point j; `mid2` their scaled midpoint (exact: scale factors are even).
pub(crate) fn pair_variant_row<T: Int>(
    base: &[i8],
    variant: PairVariant,
    pts2: &[[T; 2]],
    dir: &[T; 2],
    mid2: &[T; 2],
) -> Vec<i8> {
    match variant {
        PairVariant::Base => base.to_vec(),
        PairVariant::Shift(side) => base
            .iter()
            .map(|&v| if v == 0 { side } else { v })
            .collect(),
        PairVariant::Tilt(side) => base
            .iter()
            .enumerate()
            .map(|(idx, &v)| {
                if v != 0 {
                    return v;
                }
                let t = (pts2[idx][0].clone() - mid2[0].clone()) * dir[0].clone()
                    + (pts2[idx][1].clone() - mid2[1].clone()) * dir[1].clone();
                side * t.sign()
            })
            .collect(),
    }
}

/// Base sign row of the line through scaled points i and j. Returns None
/// when the two points coincide.
pub(crate) fn pair_base_row<T: Int>(
    pts2: &[[T; 2]],
    i: usize,
    j: usize,
) -> Option<([T; 2], Vec<i8>)> {
    let dir = [
        pts2[j][0].clone() - pts2[i][0].clone(),
        pts2[j][1].clone() - pts2[i][1].clone(),
    ];
    if dir[0].sign() == 0 && dir[1].sign() == 0 {
        return None;
    }
    let nv = perp2(&dir[..]);
    let normal = [nv[0].clone(), nv[1].clone()];
    let off = normal[0].clone() * pts2[i][0].clone() + normal[1].clone() * pts2[i][1].clone();
    let row: Vec<i8> = pts2
        .iter()
        .map(|p| {
            (normal[0].clone() * p[0].clone() + normal[1].clone() * p[1].clone() - off.clone())
                .sign()
        })
        .collect();
    Some((normal, row))
}

/// Materialize a pair-line variant as a concrete rational hyperplane,
/// with perturbation magnitudes sized against `xs`.
pub(crate) fn materialize_pair_line<T: Int>(
    s: &Scaled<T>,
    xs: &[Point],
    i: usize,
    j: usize,
    variant: PairVariant,
) -> Result<Hyperplane> {
    let pi = s.scale_point(&xs[i]);
    let pj = s.scale_point(&xs[j]);
    let dir: Vec<T> = vec![pj[0].clone() - pi[0].clone(), pj[1].clone() - pi[1].clone()];
    let normal = perp2(&dir);
    match variant {
        PairVariant::Base => materialize(&normal, &xs[i], &MemberVariant::Exact, xs),
        PairVariant::Shift(side) => {
            materialize(&normal, &xs[i], &MemberVariant::Shifted { side }, xs)
        }
        PairVariant::Tilt(side) => {
            let two = Scalar::from_integer(2.into());
            let mid = Point::xy(
                (xs[i].coord(0) + xs[j].coord(0)) / &two,
                (xs[i].coord(1) + xs[j].coord(1)) / &two,
            );
            materialize(
                &normal,
                &mid,
                &MemberVariant::Tilted {
                    axis_dir: dir,
                    side,
                },
                xs,
            )
        }
    }
}

/// Scaled midpoint of two scaled points (exact: factors are even).
pub(crate) fn scaled_midpoint<T: Int>(a: &[T], b: &[T]) -> [T; 2] {
    [
        halve(a[0].clone() + b[0].clone()),
        halve(a[1].clone() + b[1].clone()),
    ]
}
