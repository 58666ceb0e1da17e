//! The table of known constants for nontransversal families, deep flats
//! and flat Tverberg partitions in dimensions 2 and 3.
//!
//! P(d) — the fraction constant for nontransversal families of d+1
//! subsets; R(d,k) — the depth-fraction constant for deep k-flats;
//! T(d,k) — the part-count constant for flat Tverberg partitions.

use crate::scalar::{ratio, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// P(d): every point set has d+1 subsets of ≥ n/P(d) points with no
    /// hyperplane transversal.
    NontransversalFamily,
    /// R(d,k): a k-flat of regression depth ≥ n/R(d,k) always exists.
    DeepFlat,
    /// T(d,k): a k-flat with a partition into n/T(d,k) parts of nonzero
    /// depth each always exists.
    FlatTverberg,
}

impl Quantity {
    pub fn symbol(self) -> &'static str {
        match self {
            Quantity::NontransversalFamily => "P",
            Quantity::DeepFlat => "R",
            Quantity::FlatTverberg => "T",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    ProvenExact,
    ProvenUpper,
    ProvenLower,
    Conjectured,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::ProvenExact => "proven-exact",
            Status::ProvenUpper => "proven-upper",
            Status::ProvenLower => "proven-lower",
            Status::Conjectured => "conjectured",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Integer(u32),
    /// An exact non-rational expression with a rational interval that
    /// provably encloses it.
    Expression {
        text: &'static str,
        enclosure: (Scalar, Scalar),
    },
}

impl BoundValue {
    pub fn render(&self) -> String {
        match self {
            BoundValue::Integer(v) => v.to_string(),
            BoundValue::Expression { text, enclosure } => {
                format!("{text} in [{}, {}]", enclosure.0, enclosure.1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub quantity: Quantity,
    pub d: u32,
    /// None for P (which depends on d only).
    pub k: Option<u32>,
    pub value: BoundValue,
    pub status: Status,
    pub note: &'static str,
}

impl BoundEntry {
    pub fn render(&self) -> String {
        let key = match self.k {
            Some(k) => format!("{}({},{})", self.quantity.symbol(), self.d, k),
            None => format!("{}({})", self.quantity.symbol(), self.d),
        };
        let rel = match self.status {
            Status::ProvenExact | Status::Conjectured => "=",
            Status::ProvenUpper => "<=",
            Status::ProvenLower => ">=",
        };
        format!("{key} {rel} {} [{}] {}", self.value.render(), self.status.label(), self.note)
    }
}

/// The full table of known values.
#[derive(Debug, Clone)]
pub struct BoundsTable {
    entries: Vec<BoundEntry>,
}

impl Default for BoundsTable {
    fn default() -> Self {
        BoundsTable::standard()
    }
}

impl BoundsTable {
    pub fn standard() -> BoundsTable {
        use BoundValue::*;
        use Quantity::*;
        use Status::*;
        let e = |quantity, d, k, value, status, note| BoundEntry {
            quantity,
            d,
            k,
            value,
            status,
            note,
        };
        let entries = vec![
            e(
                NontransversalFamily,
                1,
                None,
                Integer(2),
                ProvenExact,
                "the median splits collinear points into two uncuttable halves",
            ),
            e(
                NontransversalFamily,
                2,
                None,
                Integer(6),
                ProvenUpper,
                "three concurrent lines cutting the plane into equal sixths",
            ),
            e(
                NontransversalFamily,
                2,
                None,
                Expression {
                    text: "pi/(2*arcsin(1/3))",
                    enclosure: (ratio(46222, 10000), ratio(46223, 10000)),
                },
                ProvenLower,
                "spherical projection argument; approximately 4.622",
            ),
            e(DeepFlat, 2, Some(0), Integer(3), ProvenExact, "centerpoint"),
            e(DeepFlat, 2, Some(1), Integer(3), ProvenExact, "catline"),
            e(DeepFlat, 3, Some(0), Integer(4), ProvenExact, "centerpoint"),
            e(
                DeepFlat,
                3,
                Some(2),
                Integer(4),
                ProvenExact,
                "deep regression hyperplanes exist with the centerpoint fraction",
            ),
            e(
                DeepFlat,
                3,
                Some(1),
                Integer(6),
                ProvenUpper,
                "(d-k+1)*P(k) via the median split and center transversals",
            ),
            e(
                DeepFlat,
                3,
                Some(1),
                Integer(5),
                ProvenUpper,
                "2d-1 via overlapping ray pieces",
            ),
            e(
                DeepFlat,
                3,
                Some(1),
                Integer(5),
                ProvenExact,
                "matching lower bound from five groups of nearly parallel planes",
            ),
            e(
                DeepFlat,
                2,
                Some(1),
                Integer(3),
                Conjectured,
                "(k+1)(d-k)+1",
            ),
            e(
                DeepFlat,
                3,
                Some(1),
                Integer(5),
                Conjectured,
                "(k+1)(d-k)+1",
            ),
            e(
                DeepFlat,
                3,
                Some(2),
                Integer(4),
                Conjectured,
                "(k+1)(d-k)+1",
            ),
            e(FlatTverberg, 2, Some(0), Integer(3), ProvenExact, "Tverberg points"),
            e(FlatTverberg, 3, Some(0), Integer(4), ProvenExact, "Tverberg points"),
            e(
                FlatTverberg,
                2,
                Some(1),
                Integer(3),
                ProvenExact,
                "catline pairing",
            ),
            e(
                FlatTverberg,
                2,
                Some(1),
                Integer(6),
                ProvenUpper,
                "d(d+1) for hyperplanes",
            ),
            e(
                FlatTverberg,
                3,
                Some(2),
                Integer(12),
                ProvenUpper,
                "d(d+1) for hyperplanes",
            ),
            e(
                FlatTverberg,
                3,
                Some(2),
                Integer(6),
                ProvenUpper,
                "improved hyperplane bound in dimension 3",
            ),
        ];
        BoundsTable { entries }
    }

    pub fn entries(&self) -> &[BoundEntry] {
        &self.entries
    }

    pub fn lookup(&self, quantity: Quantity, d: u32, k: Option<u32>) -> Vec<&BoundEntry> {
        self.entries
            .iter()
            .filter(|e| e.quantity == quantity && e.d == d && e.k == k)
            .collect()
    }

    /// Best proven value usable as a guarantee denominator: the exact
    /// value when known, otherwise the smallest proven upper bound.
    pub fn proven_value(&self, quantity: Quantity, d: u32, k: Option<u32>) -> Option<u32> {
        let mut exact = None;
        let mut upper: Option<u32> = None;
        for e in self.lookup(quantity, d, k) {
            if let BoundValue::Integer(v) = e.value {
                match e.status {
                    Status::ProvenExact => exact = Some(v),
                    Status::ProvenUpper => {
                        upper = Some(upper.map_or(v, |u: u32| u.min(v)));
                    }
                    _ => {}
                }
            }
        }
        exact.or(upper)
    }
}

/// The proven deep-flat constant R(d,k) used by guarantees and the
/// approximation algorithm.
pub fn deep_flat_constant(d: u32, k: u32) -> Option<u32> {
    BoundsTable::standard().proven_value(Quantity::DeepFlat, d, Some(k))
}
