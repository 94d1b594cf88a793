//! JSON documents for inputs and reports. Integers are written as decimal
//! strings and rationals as "p/q" strings; plain JSON integers are accepted
//! on input.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounded::{BasicSet, BinomialSet, KSets, LaurentPoly, ProblemSpec, SetSpec, TcReport, Tentacle};
use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::fan::Fan2D;
use crate::filtration::{FiltrationLevel, LevelDimension, StabilityReport};
use crate::hilbert::{Relation, SemigroupBasis};
use crate::linalg::{
    format_rational, parse_integer, parse_rational, Inertia, LatticeVector, Side, SymmetricRationalMatrix,
};
use crate::surface::IitakaResult;

/// An arbitrary-precision integer, serialized as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

/// A rational number, serialized as "p/q" (or "p" when integral).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Text(String),
    Integer(i64),
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RawNumber::deserialize(d)? {
            RawNumber::Integer(i) => Ok(Int(i.into())),
            RawNumber::Text(t) => parse_integer(&t).map(Int).map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RawNumber::deserialize(d)? {
            RawNumber::Integer(i) => Ok(Rat(BigRational::from_integer(i.into()))),
            RawNumber::Text(t) => parse_rational(&t).map(Rat).map_err(serde::de::Error::custom),
        }
    }
}

pub type VecDoc = Vec<Int>;

pub fn vec_doc(v: &LatticeVector) -> VecDoc {
    v.coords().iter().cloned().map(Int).collect()
}

pub fn vecs_doc(vs: &[LatticeVector]) -> Vec<VecDoc> {
    vs.iter().map(vec_doc).collect()
}

fn to_vector(side: Side, v: &[Int]) -> Result<LatticeVector> {
    LatticeVector::new(side, v.iter().map(|x| x.0.clone()).collect())
}

fn to_vectors(side: Side, vs: &[VecDoc]) -> Result<Vec<LatticeVector>> {
    vs.iter().map(|v| to_vector(side, v)).collect()
}

fn parse_side(s: &Option<String>, default: Side) -> Result<Side> {
    match s.as_deref() {
        None => Ok(default),
        Some("M") => Ok(Side::M),
        Some("N") => Ok(Side::N),
        Some(other) => Err(Error::Malformed(format!("side must be \"M\" or \"N\", got {other:?}"))),
    }
}

fn side_str(s: Side) -> String {
    s.to_string()
}

/// Parses a JSON document, reporting syntax errors with line and column.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// {"rank", "side", "generators", "inequalities"}. On input either list may
/// be given; when both are, they must describe the same cone.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<VecDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<VecDoc>>,
}

impl ConeDoc {
    pub fn from_cone(c: &RationalCone) -> Self {
        ConeDoc {
            rank: Some(c.rank()),
            side: Some(side_str(c.side())),
            generators: Some(vecs_doc(&c.generators())),
            inequalities: Some(vecs_doc(&c.inequalities())),
        }
    }

    pub fn to_cone(&self, default_side: Side) -> Result<RationalCone> {
        let side = parse_side(&self.side, default_side)?;
        let first_len = self
            .generators
            .iter()
            .chain(self.inequalities.iter())
            .flatten()
            .map(|v| v.len())
            .next();
        let rank = match (self.rank, first_len) {
            (Some(r), _) => r,
            (None, Some(r)) => r,
            (None, None) => return Err(Error::Malformed("a cone needs a rank or at least one vector".into())),
        };
        let from_gens = match &self.generators {
            Some(g) => Some(RationalCone::from_generators(side, rank, &to_vectors(side, g)?)?),
            None => None,
        };
        let from_ineqs = match &self.inequalities {
            Some(i) => Some(RationalCone::from_inequalities(
                side,
                rank,
                &to_vectors(side.dual(), i)?,
            )?),
            None => None,
        };
        match (from_gens, from_ineqs) {
            (Some(a), Some(b)) if a != b => Err(Error::Malformed(
                "the generators and inequalities of the cone disagree".into(),
            )),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Err(Error::Malformed("a cone needs generators or inequalities".into())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDoc {
    pub rays: Vec<VecDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
}

impl FanDoc {
    pub fn from_fan(f: &Fan2D) -> Self {
        FanDoc {
            rays: vecs_doc(f.rays()),
            complete: Some(f.is_complete()),
        }
    }

    pub fn to_fan(&self) -> Result<Fan2D> {
        let fan = Fan2D::new(&to_vectors(Side::N, &self.rays)?)?;
        if self.complete.is_some_and(|c| c != fan.is_complete()) {
            return Err(Error::Malformed(format!(
                "the fan is declared {}complete but is {}",
                if fan.is_complete() { "not " } else { "" },
                if fan.is_complete() { "complete" } else { "not complete" }
            )));
        }
        Ok(fan)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemigroupDoc {
    pub generators: Vec<VecDoc>,
    pub lineality: Vec<VecDoc>,
}

impl SemigroupDoc {
    pub fn from_basis(b: &SemigroupBasis) -> Self {
        SemigroupDoc {
            generators: vecs_doc(b.generators()),
            lineality: vecs_doc(b.lineality_units()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exp: VecDoc,
    pub coef: Rat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    pub terms: Vec<TermDoc>,
}

impl PolyDoc {
    pub fn to_poly(&self, rank: usize) -> Result<LaurentPoly> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((to_vector(Side::M, &t.exp)?, t.coef.0.clone())))
            .collect::<Result<Vec<_>>>()?;
        LaurentPoly::from_terms(rank, terms)
    }

    pub fn from_poly(p: &LaurentPoly) -> Self {
        PolyDoc {
            terms: p
                .terms()
                .map(|(e, c)| TermDoc {
                    exp: vec_doc(e),
                    coef: Rat(c.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SetDoc {
    Binomial { gammas: Vec<VecDoc>, constants: Vec<Rat> },
    Tentacle { v: VecDoc },
    Basic { polys: Vec<PolyDoc> },
}

impl SetDoc {
    pub fn to_set(&self) -> Result<SetSpec> {
        match self {
            SetDoc::Binomial { gammas, constants } => Ok(SetSpec::Binomial(BinomialSet::new(
                to_vectors(Side::M, gammas)?,
                constants.iter().map(|c| c.0.clone()).collect(),
            )?)),
            SetDoc::Tentacle { v } => Ok(SetSpec::Tentacle(Tentacle::new(to_vector(Side::N, v)?)?)),
            SetDoc::Basic { polys } => Ok(SetSpec::Basic(BasicSet::new(
                polys.iter().map(|p| p.to_poly(2)).collect::<Result<_>>()?,
            )?)),
        }
    }

    pub fn from_set(s: &SetSpec) -> Self {
        match s {
            SetSpec::Binomial(b) => SetDoc::Binomial {
                gammas: vecs_doc(b.gammas()),
                constants: b.constants().iter().cloned().map(Rat).collect(),
            },
            SetSpec::Tentacle(t) => SetDoc::Tentacle { v: vec_doc(t.v()) },
            SetSpec::Basic(b) => SetDoc::Basic {
                polys: b.polys().iter().map(PolyDoc::from_poly).collect(),
            },
        }
    }
}

/// {"sigma": cone, "set": set, "fan"?: fan}. The optional fan replaces the
/// canonical adapted fan where a command needs one.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub sigma: ConeDoc,
    pub set: SetDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanDoc>,
}

impl ProblemDoc {
    pub fn to_spec(&self) -> Result<ProblemSpec> {
        ProblemSpec::new(self.sigma.to_cone(Side::N)?, self.set.to_set()?)
    }

    pub fn to_fan(&self) -> Result<Option<Fan2D>> {
        self.fan.as_ref().map(FanDoc::to_fan).transpose()
    }
}

/// A symmetric matrix, either bare or as {"matrix": [...]}.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixDoc {
    Bare(Vec<Vec<Rat>>),
    Wrapped { matrix: Vec<Vec<Rat>> },
}

impl MatrixDoc {
    pub fn to_matrix(&self) -> Result<SymmetricRationalMatrix> {
        let (MatrixDoc::Bare(rows) | MatrixDoc::Wrapped { matrix: rows }) = self;
        SymmetricRationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect())
    }

    pub fn from_matrix(a: &SymmetricRationalMatrix) -> Self {
        MatrixDoc::Wrapped {
            matrix: a
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(Rat).collect())
                .collect(),
        }
    }
}

/// {"fan": fan, "t": [rays]}: a smooth complete fan and the rays of the
/// removed curves.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub fan: FanDoc,
    pub t: Vec<VecDoc>,
}

impl SurfaceDoc {
    pub fn t_rays(&self) -> Result<Vec<LatticeVector>> {
        to_vectors(Side::N, &self.t)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KSetsDoc {
    pub k: ConeDoc,
    pub k0: ConeDoc,
    pub equal: bool,
}

impl KSetsDoc {
    pub fn from_ksets(k: &KSets) -> Self {
        KSetsDoc {
            k: ConeDoc::from_cone(&k.k),
            k0: ConeDoc::from_cone(&k.k0),
            equal: k.equal,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TcReportDoc {
    pub status: String,
    pub witness_ray: Option<VecDoc>,
    pub reason: String,
}

impl TcReportDoc {
    pub fn from_report(r: &TcReport) -> Self {
        TcReportDoc {
            status: r.status.to_string(),
            witness_ray: r.witness_ray.as_ref().map(vec_doc),
            reason: r.reason.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InertiaDoc {
    pub inertia: [usize; 3],
    pub determinant: Rat,
}

impl InertiaDoc {
    pub fn new(a: &SymmetricRationalMatrix, i: &Inertia) -> Self {
        InertiaDoc {
            inertia: i.as_array(),
            determinant: Rat(a.determinant()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IitakaDoc {
    pub trdeg: u8,
    pub ring_shape: String,
    pub inertia: Option<[usize; 3]>,
    pub geometric_case: String,
}

impl IitakaDoc {
    pub fn from_result(r: &IitakaResult) -> Self {
        IitakaDoc {
            trdeg: r.trdeg,
            ring_shape: r.ring_shape.as_str().to_string(),
            inertia: r.signature_route.map(|i| i.as_array()),
            geometric_case: r.geometric_case.as_str().to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelDoc {
    pub n: u64,
    pub dim: String,
    pub module_generators: Vec<VecDoc>,
}

impl LevelDoc {
    pub fn from_level(l: &FiltrationLevel) -> Self {
        LevelDoc {
            n: l.n,
            dim: match &l.dimension {
                LevelDimension::Finite(d) => d.to_string(),
                LevelDimension::Infinite { .. } => "infinite".to_string(),
            },
            module_generators: vecs_doc(&l.generators.generators),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilityDoc {
    pub levels: Vec<LevelDoc>,
    pub verdict: String,
}

impl StabilityDoc {
    pub fn from_report(r: &StabilityReport) -> Self {
        StabilityDoc {
            levels: r.levels.iter().map(LevelDoc::from_level).collect(),
            verdict: r.verdict.to_string(),
        }
    }
}

pub fn relations_doc(rels: &[Relation]) -> Vec<Vec<Int>> {
    rels.iter()
        .map(|r| r.coeffs.iter().cloned().map(Int).collect())
        .collect()
}
