//! JSON transfer shapes. Every numeric payload is a string in the
//! canonical element syntax of its ring, so values survive any ring
//! exactly and serialization is byte-stable: parsing a canonical document
//! and re-serializing reproduces it verbatim (struct fields keep their
//! declared order, elements print canonically).

use serde::{Deserialize, Serialize};

use crate::classify::BijectionReport;
use crate::clifford::{AlgebraMap, AlgebraStructure4};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::quadform::{BilinearForm3, QuadraticForm3, Similarity};
use crate::ring::{Ring, RingElement};

fn parse_ring(s: &str) -> Result<Ring> {
    Ring::parse(s)
}

fn parse_elem(ring: &Ring, s: &str) -> Result<RingElement> {
    RingElement::parse(ring, s)
}

/// A ternary quadratic form: coefficients (a₁, a₂, a₃, u₂₃, u₁₃, u₁₂).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub ring: String,
    pub coeffs: [String; 6],
}

impl FormJson {
    pub fn from_form(q: &QuadraticForm3) -> Self {
        FormJson {
            ring: q.ring().to_string(),
            coeffs: std::array::from_fn(|t| q.coeffs()[t].to_string()),
        }
    }

    pub fn to_form(&self) -> Result<QuadraticForm3> {
        let ring = parse_ring(&self.ring)?;
        let mut coeffs = Vec::with_capacity(6);
        for s in &self.coeffs {
            coeffs.push(parse_elem(&ring, s)?);
        }
        let arr: [RingElement; 6] = coeffs.try_into().expect("six coefficients");
        Ok(QuadraticForm3::new(&ring, arr))
    }
}

/// A bilinear form as its 3×3 matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearJson {
    pub ring: String,
    pub matrix: [[String; 3]; 3],
}

impl BilinearJson {
    pub fn from_bilinear(b: &BilinearForm3) -> Self {
        BilinearJson {
            ring: b.ring().to_string(),
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| b.matrix().at(i, j).to_string())
            }),
        }
    }

    pub fn to_bilinear(&self) -> Result<BilinearForm3> {
        let ring = parse_ring(&self.ring)?;
        let mut rows = Vec::with_capacity(3);
        for row in &self.matrix {
            let mut r = Vec::with_capacity(3);
            for s in row {
                r.push(parse_elem(&ring, s)?);
            }
            rows.push(r);
        }
        Ok(BilinearForm3::new(Mat::from_rows(&ring, rows)))
    }
}

/// A rank-4 algebra by its structure constants: `constants[i][j][k]` is
/// the coefficient of f_k in fᵢ·fⱼ (index 0 is the unit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub ring: String,
    pub constants: [[[String; 4]; 4]; 4],
}

impl AlgebraJson {
    pub fn from_algebra(a: &AlgebraStructure4) -> Self {
        AlgebraJson {
            ring: a.ring().to_string(),
            constants: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    std::array::from_fn(|k| a.constant(i, j, k).to_string())
                })
            }),
        }
    }

    pub fn to_algebra(&self) -> Result<AlgebraStructure4> {
        let ring = parse_ring(&self.ring)?;
        let mut c: Vec<[[RingElement; 4]; 4]> = Vec::with_capacity(4);
        for plane in &self.constants {
            let mut rows: Vec<[RingElement; 4]> = Vec::with_capacity(4);
            for row in plane {
                let mut r = Vec::with_capacity(4);
                for s in row {
                    r.push(parse_elem(&ring, s)?);
                }
                rows.push(r.try_into().expect("four entries"));
            }
            c.push(rows.try_into().expect("four rows"));
        }
        let c: [[[RingElement; 4]; 4]; 4] = c.try_into().expect("four planes");
        Ok(AlgebraStructure4::new(&ring, c))
    }
}

/// A unit-preserving linear map between rank-4 algebras (column-action
/// matrix on coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub ring: String,
    pub matrix: [[String; 4]; 4],
}

impl MapJson {
    pub fn from_map(m: &AlgebraMap) -> Self {
        MapJson {
            ring: m.ring().to_string(),
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| m.matrix().at(i, j).to_string())
            }),
        }
    }

    pub fn to_map(&self) -> Result<AlgebraMap> {
        let ring = parse_ring(&self.ring)?;
        let mut rows = Vec::with_capacity(4);
        for row in &self.matrix {
            let mut r = Vec::with_capacity(4);
            for s in row {
                r.push(parse_elem(&ring, s)?);
            }
            rows.push(r);
        }
        let m = Mat::from_rows(&ring, rows);
        if m.at(0, 0) != &ring.one()
            || (1..4).any(|i| !m.at(i, 0).is_zero())
        {
            return Err(Error::Parse("map must fix the unit column".into()));
        }
        Ok(AlgebraMap::new(m))
    }
}

/// A similarity (g, l): the matrix g and the multiplier l.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityJson {
    pub ring: String,
    pub g: [[String; 3]; 3],
    pub l: String,
}

impl SimilarityJson {
    pub fn from_similarity(s: &Similarity) -> Self {
        SimilarityJson {
            ring: s.l().ring().to_string(),
            g: std::array::from_fn(|i| {
                std::array::from_fn(|j| s.g().at(i, j).to_string())
            }),
            l: s.l().to_string(),
        }
    }

    pub fn to_similarity(&self) -> Result<Similarity> {
        let ring = parse_ring(&self.ring)?;
        let mut rows = Vec::with_capacity(3);
        for row in &self.g {
            let mut r = Vec::with_capacity(3);
            for s in row {
                r.push(parse_elem(&ring, s)?);
            }
            rows.push(r);
        }
        Similarity::new(Mat::from_rows(&ring, rows), parse_elem(&ring, &self.l)?)
    }
}

/// Output of the `d0` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D0Json {
    pub d0: String,
    pub semiregular: bool,
}

/// Output of the `semiregular` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiregularJson {
    pub semiregular: bool,
}

/// Output of the `classify` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyJson {
    pub field: String,
    pub witt_classes: usize,
    pub orbit_classes: usize,
    pub equal: bool,
    pub semiregular_classes: usize,
    pub azumaya_classes: usize,
}

impl ClassifyJson {
    pub fn from_report(r: &BijectionReport) -> Self {
        ClassifyJson {
            field: r.field.clone(),
            witt_classes: r.witt_classes,
            orbit_classes: r.orbit_classes,
            equal: r.equal,
            semiregular_classes: r.semiregular_classes,
            azumaya_classes: r.azumaya_classes,
        }
    }
}

/// One line of the semiregular/Azumaya agreement report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreeLineJson {
    #[serde(rename = "B")]
    pub b: BilinearJson,
    pub d0: String,
    pub semiregular: bool,
    pub azumaya: bool,
    pub agree: bool,
}

impl AgreeLineJson {
    pub fn from_line(l: &crate::azumaya::AgreeLine) -> Self {
        AgreeLineJson {
            b: BilinearJson::from_bilinear(&l.b),
            d0: l.d0.to_string(),
            semiregular: l.semiregular,
            azumaya: l.azumaya,
            agree: l.agree(),
        }
    }
}

/// One line of `verify` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResultJson {
    pub suite: String,
    pub pass: bool,
}

/// Output of the `autgroup` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroupJson {
    pub ring: String,
    pub order: usize,
    pub automorphisms: Vec<[[String; 4]; 4]>,
}

/// Error envelope: every domain failure prints as {"error": "<Name>"}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub error: String,
}

impl ErrorJson {
    pub fn from_error(e: &Error) -> Self {
        ErrorJson { error: e.name().to_string() }
    }
}
