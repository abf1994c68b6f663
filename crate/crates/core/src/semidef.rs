//! Positive semidefinite case: radical, quotient root lattice, the
//! `(k_a, k_b)` bookkeeping, trace-table membership and the tubular
//! classifier.

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{factor_quasiunipotent, spectrum_from_monodromy, CyclotomicFactorization, Spectrum, VarianceRelation};
use crate::error::{Error, Result};
use crate::lattice::{FormParity, LatticeVector, TriangularSeed};
use crate::linalg::{char_poly, complete_basis, integer_kernel, row_hermite, Definiteness, IntMatrix, IntPolynomial};
use crate::rational::{serde_bigint, serde_rational, Rational};
use crate::report::{ClassificationReport, Verdict};
use crate::roots::{recognize_ade, ADEType, Family};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidefReport {
    /// Primitive basis of `Rad(S + Sᵗ)`, in row Hermite form.
    pub radical: Vec<LatticeVector>,
    pub quotient_rank: usize,
    pub quotient_gram: IntMatrix,
    pub quotient_type: ADEType,
    /// Char poly of the automorphism induced by `-M` on the quotient.
    pub quotient_char_poly: IntPolynomial,
    pub quotient_factorization: CyclotomicFactorization,
    pub k_a: usize,
    pub k_b: usize,
    #[serde(with = "serde_bigint")]
    pub trace: BigInt,
    pub spectrum: Spectrum,
    #[serde(with = "serde_rational")]
    pub variance: Rational,
    #[serde(with = "serde_rational")]
    pub variance_bound: Rational,
}

/// Gram matrix of the images of `complement` in the quotient lattice.
pub fn quotient_gram(g: &IntMatrix, complement: &[Vec<BigInt>]) -> Result<IntMatrix> {
    let k = complement.len();
    let mut out = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            out.set(i, j, g.bilinear(&complement[i], &complement[j])?);
        }
    }
    Ok(out)
}

/// Matrix of the map induced by `a` on `Z^n / span(radical)`, in the basis
/// given by the images of `complement`. `radical ++ complement` must be a
/// basis of `Z^n` and `a` must map the radical into itself.
pub fn induced_map(a: &IntMatrix, radical: &[Vec<BigInt>], complement: &[Vec<BigInt>]) -> Result<IntMatrix> {
    let n = a.rows();
    let r = radical.len();
    let basis: Vec<Vec<BigInt>> = radical.iter().chain(complement).cloned().collect();
    let b = IntMatrix::from_fn(n, n, |i, j| basis[j][i].clone());
    let coords = b.unimodular_inverse()?;
    let image = coords.mul(&a.mul(&b)?)?;
    for j in 0..r {
        if (r..n).any(|i| !image.get(i, j).is_zero()) {
            return Err(Error::Internal("map does not preserve the radical".into()));
        }
    }
    Ok(IntMatrix::from_fn(n - r, n - r, |i, j| image.get(r + i, r + j).clone()))
}

fn require_semidef_connected(seed: &TriangularSeed) -> Result<()> {
    if !seed.is_connected() {
        return Err(Error::Disconnected);
    }
    if seed.definiteness() != Definiteness::PositiveSemidefiniteDegenerate {
        return Err(Error::NotSemidefiniteDegenerate);
    }
    Ok(())
}

/// Radical, quotient lattice and the induced Weyl group element.
pub fn semidef_decompose(seed: &TriangularSeed) -> Result<SemidefReport> {
    require_semidef_connected(seed)?;
    let n = seed.rank();
    let g = seed.intersection_form(FormParity::Even);
    let completion = complete_basis(&integer_kernel(&g), n)?;
    let radical = row_hermite(&completion.saturated);
    let complement = completion.complement;
    let qg = quotient_gram(&g, &complement)?;
    let quotient_type = recognize_ade(&qg)?;
    let minus_m = seed.monodromy().neg();
    let induced = induced_map(&minus_m, &radical, &complement)?;
    let qcp = char_poly(&induced)?;
    let qf = factor_quasiunipotent(&qcp)?;
    let k_a = qf.multiplicity(1) as usize;
    let rad = radical.len();
    if rad < k_a || !(rad - k_a).is_multiple_of(2) {
        return Err(Error::Internal(format!("radical rank {rad} incompatible with k_a = {k_a}")));
    }
    let k_b = (rad - k_a) / 2;
    let spectrum = spectrum_from_monodromy(seed)?;
    Ok(SemidefReport {
        radical: radical.into_iter().map(LatticeVector).collect(),
        quotient_rank: n - rad,
        quotient_gram: qg,
        quotient_type,
        quotient_char_poly: qcp,
        quotient_factorization: qf,
        k_a,
        k_b,
        trace: seed.monodromy_trace(),
        variance: spectrum.variance(),
        variance_bound: spectrum.variance_bound(),
        spectrum,
    })
}

/// Outcome of matching against the table of semidefinite cases with
/// `tr(S⁻¹Sᵗ) ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceTableMatch {
    MatchesRow { row: String },
    TraceBelowOne,
}

fn phi(pairs: &[(u64, u32)]) -> IntPolynomial {
    CyclotomicFactorization::from_pairs(pairs).product()
}

fn t_plus_one_pow(e: u32) -> IntPolynomial {
    IntPolynomial::binomial(1, 1).pow(e)
}

/// Every row of the table whose pattern the report satisfies.
fn table71_rows(r: &SemidefReport) -> Vec<String> {
    let nb = r.quotient_rank;
    let p = &r.quotient_char_poly;
    let tr = r.trace.to_i64().unwrap_or(i64::MAX);
    let (ka, kb) = (r.k_a, r.k_b);
    let mut rows = Vec::new();
    match r.quotient_type.family {
        Family::A => {}
        Family::D => {
            // r_3 D_2, n̄ = 2 r_3
            if nb.is_multiple_of(2) && nb >= 4 {
                let r3 = nb / 2;
                if *p == t_plus_one_pow(nb as u32) && ka == 0 && kb == r3 - 1 && tr == 2 {
                    rows.push(format!("D_{nb}: {r3}D_2"));
                }
            }
            // r_4 D_2 + D_b, n̄ = 2 r_4 + b
            for r4 in 1..=nb / 2 {
                let Some(b) = nb.checked_sub(2 * r4) else { break };
                if b < 3 {
                    continue;
                }
                let expected = t_plus_one_pow(2 * r4 as u32)
                    .mul(&IntPolynomial::binomial(b - 1, 1))
                    .mul(&IntPolynomial::binomial(1, 1));
                if *p == expected && ka == 0 && kb == r4 && tr == 1 {
                    rows.push(format!("D_{nb}: {r4}D_2+D_{b}"));
                }
            }
            // A_c + r_3 D_2, n̄ = c + 1 + 2 r_3
            for r3 in 1..=nb / 2 {
                let Some(c) = nb.checked_sub(1 + 2 * r3) else { break };
                if c < 1 {
                    continue;
                }
                let expected = IntPolynomial::binomial(c + 1, -1).mul(&t_plus_one_pow(2 * r3 as u32));
                if *p == expected && ka == 1 && kb == r3 - 1 && tr == 1 {
                    rows.push(format!("D_{nb}: A_{c}+{r3}D_2"));
                }
            }
        }
        Family::E => {
            let table: [(usize, &str, &[(u64, u32)], usize, usize); 7] = [
                (6, "3A_2", &[(3, 3)], 0, 1),
                (6, "2A_2+A_1", &[(1, 1), (2, 1), (3, 2)], 1, 0),
                (7, "2A_3+A_1", &[(2, 3), (4, 2)], 0, 1),
                (7, "7A_1", &[(2, 7)], 0, 3),
                (7, "A_3+A_2+A_1", &[(1, 1), (2, 2), (3, 1), (4, 1)], 1, 0),
                (8, "A_5+A_2+A_1", &[(2, 2), (3, 2), (6, 1)], 0, 1),
                (8, "A_4+A_2+A_1", &[(1, 1), (2, 1), (3, 1), (5, 1)], 1, 0),
            ];
            for (rank, u, f, a, b) in table {
                if nb == rank && *p == phi(f) && ka == a && kb == b && tr == 1 {
                    rows.push(format!("E_{rank}: {u}"));
                }
            }
        }
    }
    rows
}

/// For `tr(S⁻¹Sᵗ) ≥ 1`, the unique table row the report matches.
pub fn trace_table_check(report: &SemidefReport) -> Result<TraceTableMatch> {
    if report.trace < BigInt::one() {
        return Ok(TraceTableMatch::TraceBelowOne);
    }
    let rows = table71_rows(report);
    match rows.len() {
        1 => Ok(TraceTableMatch::MatchesRow { row: rows.into_iter().next().unwrap() }),
        0 => Err(Error::NoRowMatches(format!(
            "quotient {}, -M̄ char poly {}, k_a = {}, k_b = {}, trace {}",
            report.quotient_type, report.quotient_factorization, report.k_a, report.k_b, report.trace
        ))),
        _ => Err(Error::Internal(format!("several rows match: {}", rows.join(", ")))),
    }
}

/// The four rows allowed by the variance inequality: quotient type, char
/// poly of the induced element, `k_a`, `k_b`, verdict label, required trace.
fn table72() -> [(ADEType, &'static str, IntPolynomial, usize, usize, &'static str, i64); 4] {
    let t = |f, n| ADEType { family: f, rank: n };
    [
        (t(Family::D, 4), "2D_2", phi(&[(2, 4)]), 0, 1, "D4^(1,1)", 2),
        (t(Family::E, 6), "3A_2", phi(&[(3, 3)]), 0, 1, "Ẽ_6", 1),
        (t(Family::E, 7), "2A_3+A_1", phi(&[(2, 3), (4, 2)]), 0, 1, "Ẽ_7", 1),
        (t(Family::E, 8), "A_5+A_2+A_1", phi(&[(2, 2), (3, 2), (6, 1)]), 0, 1, "Ẽ_8", 1),
    ]
}

/// Decides distinguishedness of a semidefinite seed through the variance
/// inequality, then identifies the tubular type.
pub fn classify_semidefinite(seed: &TriangularSeed) -> Result<ClassificationReport> {
    let sd = semidef_decompose(seed)?;
    let m = seed.monodromy();
    let cp = char_poly(&m)?;
    let fact = factor_quasiunipotent(&cp)?;
    let mut report =
        ClassificationReport::base(seed, Definiteness::PositiveSemidefiniteDegenerate, sd.trace.clone(), cp, Some(fact));
    report.set_spectrum(sd.spectrum.clone());
    report.ade_type = Some(sd.quotient_type.to_string());
    report.table_row = match trace_table_check(&sd)? {
        TraceTableMatch::MatchesRow { row } => Some(row),
        TraceTableMatch::TraceBelowOne => None,
    };
    let relation = sd.spectrum.variance_relation();
    if relation == VarianceRelation::Greater {
        report.verdict = Verdict::NotDistinguished { reason: "VarianceFails".into() };
        report.semidefinite = Some(sd);
        return Ok(report);
    }
    let row = table72()
        .into_iter()
        .find(|(ty, _, p, ka, kb, _, _)| *ty == sd.quotient_type && *p == sd.quotient_char_poly && *ka == sd.k_a && *kb == sd.k_b);
    let Some((ty, u, _, _, _, label, trace)) = row else {
        return Err(Error::VarianceHoldsButNoRow(format!(
            "quotient {}, -M̄ char poly {}, k_a = {}, k_b = {}",
            sd.quotient_type, sd.quotient_factorization, sd.k_a, sd.k_b
        )));
    };
    if sd.trace != BigInt::from(trace) {
        return Err(Error::Internal(format!("{label} requires trace {trace}, found {}", sd.trace)));
    }
    report.verdict = if ty.family == Family::D {
        Verdict::D4Tubular
    } else {
        Verdict::Distinguished { label: label.into() }
    };
    report.notes.push(format!("quotient {ty}, subroot lattice {u}"));
    report.semidefinite = Some(sd);
    Ok(report)
}

/// Individual checks on a candidate automorphism `G` (columns are images
/// of the basis vectors).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismCheck {
    /// `Gᵗ·(S+Sᵗ)·G = S+Sᵗ`.
    pub preserves_form: bool,
    /// `G·M = M·G`.
    pub commutes_with_monodromy: bool,
    /// `det G = ±1`.
    pub unimodular: bool,
    /// `Gᵗ·S·G = Sᵗ`.
    pub transposes_seed: bool,
}

impl AutomorphismCheck {
    pub fn all(&self) -> bool {
        self.preserves_form && self.commutes_with_monodromy && self.unimodular && self.transposes_seed
    }
}

pub fn check_automorphism(seed: &TriangularSeed, g: &IntMatrix) -> Result<AutomorphismCheck> {
    let s = seed.matrix();
    let i0 = seed.intersection_form(FormParity::Even);
    let m = seed.monodromy();
    let gt = g.transpose();
    Ok(AutomorphismCheck {
        preserves_form: gt.mul(&i0)?.mul(g)? == i0,
        commutes_with_monodromy: g.mul(&m)? == m.mul(g)?,
        unimodular: g.determinant()?.abs().is_one(),
        transposes_seed: gt.mul(s)?.mul(g)? == s.transpose(),
    })
}

/// The automorphism of the `D4^(1,1)` lattice with `g(e_i) = e_i + f_1`
/// for `i ≤ 4`, `g(e_5) = -2e_5 + 3e_6`, `g(e_6) = -e_5 + 2e_6`, where
/// `f_1 = e_5 - e_6`.
pub fn transposing_automorphism() -> IntMatrix {
    IntMatrix::from_rows(&[
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [1, 1, 1, 1, -2, -1],
        [-1, -1, -1, -1, 3, 2],
    ])
}

/// `g` maps the standard basis of the `D4^(1,1)` lattice to a basis with
/// the transposed matrix.
pub fn transposing_automorphism_check(d4_seed: &TriangularSeed) -> bool {
    d4_seed.rank() == 6
        && check_automorphism(d4_seed, &transposing_automorphism())
            .map(|c| c.all())
            .unwrap_or(false)
}

/// Radical basis in row Hermite form, convenience for callers.
pub fn radical_basis(seed: &TriangularSeed) -> Vec<Vec<BigInt>> {
    row_hermite(&integer_kernel(&seed.intersection_form(FormParity::Even)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::seed;
    use crate::rational::rat;

    #[test]
    fn d4_tubular_decomposition() {
        let s = seed("D4^(1,1)").unwrap();
        let r = semidef_decompose(&s).unwrap();
        assert_eq!(r.radical.len(), 2);
        assert_eq!(r.quotient_type.to_string(), "D_4");
        assert_eq!((r.k_a, r.k_b), (0, 1));
        let span: Vec<Vec<BigInt>> = r.radical.iter().map(|v| v.0.clone()).collect();
        // f_1 and f_2 lie in the span, which is saturated.
        let f1: Vec<BigInt> = [0, 0, 0, 0, 1, -1].iter().map(|&x| BigInt::from(x)).collect();
        let f2: Vec<BigInt> = vec![BigInt::one(); 6];
        let h = row_hermite(&span);
        assert_eq!(row_hermite(&[f1, f2]), h);
    }

    #[test]
    fn e6_tubular_decomposition() {
        let r = semidef_decompose(&seed("E6^(1,1)").unwrap()).unwrap();
        assert_eq!(r.quotient_type.to_string(), "E_6");
        assert_eq!((r.k_a, r.k_b), (0, 1));
        assert_eq!(r.quotient_factorization, CyclotomicFactorization::from_pairs(&[(3, 3)]));
    }

    #[test]
    fn classification_of_tubular_seeds() {
        let d4 = classify_semidefinite(&seed("D4^(1,1)").unwrap()).unwrap();
        assert_eq!(d4.verdict, Verdict::D4Tubular);
        assert_eq!(d4.trace, BigInt::from(2));
        assert_eq!(d4.variance, Some(rat(1, 12)));
        let e6 = classify_semidefinite(&seed("E6^(1,1)").unwrap()).unwrap();
        assert_eq!(e6.verdict, Verdict::Distinguished { label: "Ẽ_6".into() });
        assert_eq!(e6.table_row.as_deref(), Some("E_6: 3A_2"));
    }

    #[test]
    fn guard_on_definite_input() {
        let a2 = TriangularSeed::from_rows(&[[1, -1], [0, 1]]);
        assert_eq!(semidef_decompose(&a2).unwrap_err(), Error::NotSemidefiniteDegenerate);
    }

    #[test]
    fn transposing_automorphism_example() {
        let s = seed("D4^(1,1)").unwrap();
        assert!(transposing_automorphism_check(&s));
        let id = check_automorphism(&s, &IntMatrix::identity(6)).unwrap();
        assert!(!id.transposes_seed);
    }
}
