//! The classification report shared by the definite and semidefinite
//! pipelines, and the dispatcher choosing between them.

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{factor_quasiunipotent, CyclotomicFactorization, Spectrum, VarianceRelation};
use crate::error::{Error, Result};
use crate::lattice::TriangularSeed;
use crate::linalg::{char_poly, Definiteness, IntPolynomial};
use crate::rational::{serde_bigint, serde_rational_opt, Rational};
use crate::semidef::SemidefReport;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    /// A distinguished matrix of the named singularity type.
    Distinguished { label: String },
    /// The orbit belonging to Coxeter elements of the tubular system `D4^(1,1)`.
    D4Tubular,
    NotDistinguished { reason: String },
    /// No classification available for this kind of seed.
    OutOfScope { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub seed: TriangularSeed,
    pub rank: usize,
    pub connected: bool,
    pub definiteness: Definiteness,
    /// `tr(S⁻¹Sᵗ)`.
    #[serde(with = "serde_bigint")]
    pub trace: BigInt,
    pub monodromy_char_poly: IntPolynomial,
    pub factorization: Option<CyclotomicFactorization>,
    pub spectrum: Option<Spectrum>,
    #[serde(with = "serde_rational_opt")]
    pub variance: Option<Rational>,
    /// `(α_n - α_1)/12`.
    #[serde(with = "serde_rational_opt")]
    pub variance_bound: Option<Rational>,
    pub variance_relation: Option<VarianceRelation>,
    pub ade_type: Option<String>,
    pub carter_class: Option<String>,
    pub semidefinite: Option<SemidefReport>,
    pub table_row: Option<String>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn base(
        seed: &TriangularSeed,
        definiteness: Definiteness,
        trace: BigInt,
        monodromy_char_poly: IntPolynomial,
        factorization: Option<CyclotomicFactorization>,
    ) -> Self {
        ClassificationReport {
            schema: SCHEMA,
            seed: seed.clone(),
            rank: seed.rank(),
            connected: seed.is_connected(),
            definiteness,
            trace,
            monodromy_char_poly,
            factorization,
            spectrum: None,
            variance: None,
            variance_bound: None,
            variance_relation: None,
            ade_type: None,
            carter_class: None,
            semidefinite: None,
            table_row: None,
            verdict: Verdict::OutOfScope { reason: "not classified".into() },
            notes: Vec::new(),
        }
    }

    pub fn set_spectrum(&mut self, sp: Spectrum) {
        self.variance = Some(sp.variance());
        self.variance_bound = Some(sp.variance_bound());
        self.variance_relation = Some(sp.variance_relation());
        self.spectrum = Some(sp);
    }
}

/// Runs the definite or semidefinite classifier, or reports the basic
/// invariants of an indefinite seed.
pub fn analyze(seed: &TriangularSeed) -> Result<ClassificationReport> {
    if !seed.is_connected() {
        return Err(Error::Disconnected);
    }
    match seed.definiteness() {
        Definiteness::PositiveDefinite => crate::roots::classify_definite(seed),
        Definiteness::PositiveSemidefiniteDegenerate => crate::semidef::classify_semidefinite(seed),
        Definiteness::Other => {
            let m = seed.monodromy();
            let cp = char_poly(&m)?;
            let fact = factor_quasiunipotent(&cp).ok();
            let mut r = ClassificationReport::base(seed, Definiteness::Other, m.trace()?, cp, fact.clone());
            r.notes.push(match fact {
                Some(_) => "monodromy is quasiunipotent".into(),
                None => "monodromy is not quasiunipotent".into(),
            });
            r.notes.push("which indefinite matrices are distinguished is only conjectured".into());
            r.verdict = Verdict::OutOfScope {
                reason: "indefinite: outside the definite and semidefinite classification".into(),
            };
            Ok(r)
        }
    }
}
