//! JSON documents read and written by the command line.

use serde::{Deserialize, Serialize};

use spinrep::glclass::GlFactor;
use spinrep::intertwine::{Script, SignedEntry, StepReport};
use spinrep::orbits::{orbit_dim, OrbitColumns};
use spinrep::rewriter::{BaseCase, InductionStep, NormalizedBase};
use spinrep::scalar::{fmt_q, parse_q};
use spinrep::spinclass::pairs_to_param;
use spinrep::spinclass::{Certificate, TableRow, Verdict, Witness};
use spinrep::weyl::{to_langlands, LanglandsPair};
use spinrep::{Family, GenuineParam, HalfInt, StringPairs, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn to_q(&self) -> Result<Q, String> {
        match self {
            Scalar::Int(n) => Ok(Q::from_integer(*n)),
            Scalar::Text(s) => parse_q(s).map_err(|e| e.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsDoc {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

impl PairsDoc {
    pub fn from_pairs(p: &StringPairs) -> Self {
        PairsDoc {
            x: p.x().to_vec(),
            y: p.y().to_vec(),
        }
    }
}

/// A parameter given either by (μ, ν) or by string pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamDocument {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<PairsDoc>,
}

impl ParamDocument {
    pub fn to_param(&self) -> Result<GenuineParam, String> {
        let family: Family = self.group.parse().map_err(|e: spinrep::Error| e.to_string())?;
        let param = match (&self.mu, &self.nu, &self.pairs) {
            (Some(mu), Some(nu), None) => {
                if mu.len() != nu.len() {
                    return Err(format!("mu has {} entries but nu has {}", mu.len(), nu.len()));
                }
                let mu = mu
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let v = s.to_q().map_err(|e| format!("mu[{i}]: {e}"))?;
                        HalfInt::from_q(v).ok_or_else(|| format!("mu[{i}] = {} is not in ½ℤ", fmt_q(&v)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let nu = nu
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.to_q().map_err(|e| format!("nu[{i}]: {e}")))
                    .collect::<Result<Vec<_>, _>>()?;
                GenuineParam::new(family, mu, nu).map_err(|e| e.to_string())?
            }
            (None, None, Some(p)) => {
                let pairs = StringPairs::new(family, p.x.clone(), p.y.clone()).map_err(|e| e.to_string())?;
                pairs_to_param(&pairs)
            }
            _ => return Err("give either both mu and nu, or pairs".into()),
        };
        if let Some(r) = self.rank {
            if r != param.group.rank {
                return Err(format!("rank {r} does not match {} coordinates", param.group.rank));
            }
        }
        Ok(param)
    }
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn hs(v: &[HalfInt]) -> Vec<String> {
    v.iter().map(|h| h.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanglandsDoc {
    pub lambda_l: Vec<String>,
    pub lambda_r: Vec<String>,
}

impl LanglandsDoc {
    pub fn new(lp: &LanglandsPair) -> Self {
        LanglandsDoc {
            lambda_l: qs(&lp.lambda_l),
            lambda_r: qs(&lp.lambda_r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    /// "spin-relevant" or "bottom-layer".
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<i64>,
    pub weight: Vec<String>,
}

impl WitnessDoc {
    fn new(w: &Witness) -> Self {
        match w {
            Witness::SpinRelevant { ktype, weight } => WitnessDoc {
                kind: "spin-relevant".into(),
                index: Some(ktype.q),
                block: None,
                weight: hs(weight),
            },
            Witness::BottomLayer { r, ones, weight } => WitnessDoc {
                kind: "bottom-layer".into(),
                index: Some(*ones),
                block: Some(*r),
                weight: hs(weight),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlFactorDoc {
    pub block: i64,
    pub kind: String,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<String>,
    pub twist: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinDoc {
    pub len: u32,
    pub gl_rank: u32,
    pub x: u32,
    pub y: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDoc {
    pub columns: Vec<u32>,
    pub rows: Vec<u32>,
    pub ambient: u32,
    pub dim: i64,
}

impl OrbitDoc {
    pub fn new(o: &OrbitColumns) -> Self {
        OrbitDoc {
            columns: o.cols.clone(),
            rows: o.rows(),
            ambient: o.ambient,
            dim: orbit_dim(o),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub gl_factors: Vec<GlFactorDoc>,
    pub stein: Vec<SteinDoc>,
    pub core: Option<PairsDoc>,
    pub orbit: Option<OrbitDoc>,
}

impl CertificateDoc {
    fn new(c: &Certificate) -> Self {
        let gl_factors = c
            .gl
            .iter()
            .flat_map(|b| {
                b.factors.iter().map(move |f| match f {
                    GlFactor::TrivialString { a, twist } => GlFactorDoc {
                        block: b.r,
                        kind: "trivial-string".into(),
                        size: *a,
                        shift: None,
                        twist: *twist,
                    },
                    GlFactor::SteinPair { a, t, twist } => GlFactorDoc {
                        block: b.r,
                        kind: "stein-pair".into(),
                        size: 2 * a,
                        shift: Some(fmt_q(t)),
                        twist: *twist,
                    },
                })
            })
            .collect();
        let (stein, core, orbit) = match &c.half {
            Some(h) => (
                h.stein
                    .iter()
                    .map(|s| SteinDoc {
                        len: s.len,
                        gl_rank: s.gl_rank(),
                        x: s.x,
                        y: s.y,
                    })
                    .collect(),
                h.core.as_ref().map(PairsDoc::from_pairs),
                h.orbit.as_ref().map(OrbitDoc::new),
            ),
            None => (Vec::new(), None, None),
        };
        CertificateDoc {
            gl_factors,
            stein,
            core,
            orbit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub column: (u32, u32),
    pub label: u32,
    pub before: PairsDoc,
    pub after: PairsDoc,
}

impl StepDoc {
    pub fn new(s: &InductionStep) -> Self {
        StepDoc {
            column: s.column,
            label: s.label,
            before: PairsDoc::from_pairs(&s.before),
            after: PairsDoc::from_pairs(&s.after),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDoc {
    pub case: String,
    pub values: Vec<u32>,
    pub witness_index: u32,
}

impl BaseDoc {
    pub fn new(family: Family, b: BaseCase) -> Self {
        let (case, values) = match b {
            BaseCase::CaseI { a, b } => ("I", vec![a, b]),
            BaseCase::CaseII { c, d, e, f } => ("II", vec![c, d, e, f]),
        };
        BaseDoc {
            case: case.into(),
            values,
            witness_index: b.witness_index(family),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptDoc {
    pub steps: Vec<StepDoc>,
    pub stein_columns: Vec<(u32, u32)>,
    pub base: Option<BaseDoc>,
    pub base_column: Option<usize>,
    pub final_pairs: PairsDoc,
}

impl TranscriptDoc {
    pub fn new(nb: &NormalizedBase) -> Self {
        let family = nb.final_pairs.family();
        TranscriptDoc {
            steps: nb.steps.iter().map(StepDoc::new).collect(),
            stein_columns: nb.stein_columns.clone(),
            base: nb.base.map(|b| BaseDoc::new(family, b)),
            base_column: nb.base_column,
            final_pairs: PairsDoc::from_pairs(&nb.final_pairs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDocument {
    pub group: String,
    pub status: String,
    pub reason: Option<String>,
    pub pairs: Option<PairsDoc>,
    pub witness: Option<WitnessDoc>,
    pub certificate: Option<CertificateDoc>,
    pub transcript: Option<TranscriptDoc>,
    pub langlands: LanglandsDoc,
}

pub fn status_name(v: &Verdict) -> &'static str {
    match v.status {
        spinrep::Status::NotGenuine => "NotGenuine",
        spinrep::Status::NotHermitian => "NotHermitian",
        spinrep::Status::Unitary => "Unitary",
        spinrep::Status::NonUnitary => "NonUnitary",
    }
}

impl VerdictDocument {
    pub fn new(p: &GenuineParam, v: &Verdict) -> Self {
        VerdictDocument {
            group: p.group.to_string(),
            status: status_name(v).into(),
            reason: v.reason.as_ref().map(|r| r.to_string()),
            pairs: v.pairs.as_ref().map(PairsDoc::from_pairs),
            witness: v.witness.as_ref().map(WitnessDoc::new),
            certificate: v.certificate.as_ref().map(CertificateDoc::new),
            transcript: v.reduction.as_ref().map(TranscriptDoc::new),
            langlands: LanglandsDoc::new(&to_langlands(p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowDoc {
    pub pairs: PairsDoc,
    pub langlands: LanglandsDoc,
    pub status: String,
    pub strict: bool,
    pub witness: Option<usize>,
}

impl TableRowDoc {
    pub fn new(r: &TableRow) -> Self {
        TableRowDoc {
            pairs: PairsDoc::from_pairs(&r.pairs),
            langlands: LanglandsDoc::new(&r.langlands),
            status: status_name(&r.verdict).into(),
            strict: r.strict,
            witness: r.verdict.witness.as_ref().and_then(|w| w.eta_index()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReportDoc {
    pub step: String,
    pub well_defined: bool,
    pub injective: bool,
    pub scalar: Option<String>,
    pub reason: String,
    pub state: Vec<String>,
}

fn entry(e: &SignedEntry) -> String {
    e.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptDoc {
    pub name: String,
    pub start: Vec<String>,
    pub steps: Vec<StepReportDoc>,
    pub certified: bool,
}

impl ScriptDoc {
    pub fn new(s: &Script, reports: &[StepReport]) -> Self {
        ScriptDoc {
            name: s.name.clone(),
            start: s.start.iter().map(entry).collect(),
            steps: reports
                .iter()
                .map(|r| StepReportDoc {
                    step: r.mv.to_string(),
                    well_defined: r.well_defined,
                    injective: r.injective,
                    scalar: r.scalar.as_ref().map(fmt_q),
                    reason: r.reason.clone(),
                    state: r.state.iter().map(entry).collect(),
                })
                .collect(),
            certified: reports.iter().all(StepReport::ok),
        }
    }
}
