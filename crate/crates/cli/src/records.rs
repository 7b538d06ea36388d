//! JSON shapes that exist only at the command line.

use serde::{Deserialize, Serialize};

use charvar::criterion::Genericity;
use charvar::factorint::RationalRoot;
use charvar::families::TraceValue;
use charvar::ring::UniPoly;
use charvar::twobridge::Fraction;

/// A polynomial with its canonical text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyRecord<P> {
    pub family: String,
    pub n: i64,
    pub text: String,
    pub polynomial: P,
}

/// A 2×2 matrix as four canonical strings `[e11, e12, e21, e22]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub word: String,
    pub power: i64,
    pub parabolic: bool,
    pub entries: [String; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub n: i64,
    pub trace: TraceValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRootsRecord {
    pub polynomial: UniPoly,
    pub roots: Vec<RationalRoot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFractionRecord {
    pub entries: Vec<i64>,
    pub value: Fraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceRecord {
    pub a: Fraction,
    pub b: Fraction,
    pub equivalent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityRecord {
    pub family: String,
    pub n: i64,
    pub genericity: Genericity,
}
