//! Cyclotomic polynomials, recognition of products of them, and spectra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num::{Integer, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::TriangularSeed;
use crate::linalg::{char_poly, Definiteness, IntPolynomial};
use crate::rational::{int, rat, serde_rational_vec, Rational};

static CACHE: Lazy<Mutex<HashMap<u64, IntPolynomial>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Euler's totient.
pub fn totient(mut m: u64) -> u64 {
    let mut out = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// `Φ_m`, by dividing `x^m - 1` by `Φ_d` for the proper divisors `d` of `m`.
pub fn cyclotomic_poly(m: u64) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(p) = CACHE.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut p = IntPolynomial::binomial(m as usize, -1);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = p.div_exact(&cyclotomic_poly(d)).expect("Φ_d divides x^m - 1");
    }
    CACHE.lock().unwrap().insert(m, p.clone());
    p
}

/// `Π Φ_m^{μ_m}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicFactorization {
    pub phi: BTreeMap<u64, u32>,
}

impl CyclotomicFactorization {
    pub fn from_pairs(pairs: &[(u64, u32)]) -> Self {
        let mut phi = BTreeMap::new();
        for &(m, mu) in pairs {
            if mu > 0 {
                *phi.entry(m).or_insert(0) += mu;
            }
        }
        CyclotomicFactorization { phi }
    }

    /// From a list of indices with repetition, e.g. `[1, 2, 2, 3]`.
    pub fn from_indices(ms: &[u64]) -> Self {
        Self::from_pairs(&ms.iter().map(|&m| (m, 1)).collect::<Vec<_>>())
    }

    pub fn multiplicity(&self, m: u64) -> u32 {
        self.phi.get(&m).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.phi.iter().map(|(&m, &mu)| totient(m) * u64::from(mu)).sum()
    }

    pub fn product(&self) -> IntPolynomial {
        self.phi
            .iter()
            .fold(IntPolynomial::one(), |acc, (&m, &mu)| acc.mul(&cyclotomic_poly(m).pow(mu)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, &mu) in &other.phi {
            *out.phi.entry(m).or_insert(0) += mu;
        }
        out
    }
}

impl fmt::Display for CyclotomicFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phi.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .phi
            .iter()
            .map(|(m, mu)| if *mu == 1 { format!("Φ{m}") } else { format!("Φ{m}^{mu}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Writes a monic integer polynomial as a product of cyclotomic polynomials.
///
/// Trial division by `Φ_m` for every `m ≤ 2·deg² + 6` with `φ(m)` at most
/// the remaining degree; fails if anything nonconstant is left.
pub fn factor_quasiunipotent(p: &IntPolynomial) -> Result<CyclotomicFactorization> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let deg = p.degree() as u64;
    let bound = 2 * deg * deg + 6;
    let mut rest = p.clone();
    let mut phi = BTreeMap::new();
    for m in 1..=bound {
        if rest.degree() == 0 {
            break;
        }
        if totient(m) > rest.degree() as u64 {
            continue;
        }
        let c = cyclotomic_poly(m);
        while let Some(q) = rest.div_exact(&c) {
            *phi.entry(m).or_insert(0) += 1;
            rest = q;
        }
    }
    if rest.degree() != 0 {
        return Err(Error::NotQuasiunipotent);
    }
    Ok(CyclotomicFactorization { phi })
}

/// Sorted spectral numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spectrum {
    #[serde(with = "serde_rational_vec")]
    alphas: Vec<Rational>,
}

impl Spectrum {
    /// Sorts the values.
    pub fn new(mut alphas: Vec<Rational>) -> Self {
        alphas.sort();
        Spectrum { alphas }
    }

    pub fn zeros(n: usize) -> Self {
        Spectrum { alphas: vec![Rational::zero(); n] }
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// `α_i + α_{n+1-i} = 0` for all `i`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.alphas.len();
        (0..n).all(|i| (&self.alphas[i] + &self.alphas[n - 1 - i]).is_zero())
    }

    /// `Σ α_j²`.
    pub fn nn_variance(&self) -> Rational {
        self.alphas.iter().map(|a| a * a).sum()
    }

    /// `(1/n)·Σ α_j²`; the mean vanishes for symmetric spectra.
    pub fn variance(&self) -> Rational {
        if self.alphas.is_empty() {
            return Rational::zero();
        }
        self.nn_variance() / int(self.alphas.len() as i64)
    }

    /// `α_n - α_1`.
    pub fn span(&self) -> Rational {
        match (self.alphas.first(), self.alphas.last()) {
            (Some(a), Some(b)) => b - a,
            _ => Rational::zero(),
        }
    }

    /// `(α_n - α_1)/12`.
    pub fn variance_bound(&self) -> Rational {
        self.span() / int(12)
    }

    pub fn variance_relation(&self) -> VarianceRelation {
        VarianceRelation::compare(&self.variance(), &self.variance_bound())
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alphas.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// How `Var(Sp)` compares with `(α_n - α_1)/12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarianceRelation {
    Less,
    Equal,
    Greater,
}

impl VarianceRelation {
    pub fn compare(var: &Rational, bound: &Rational) -> Self {
        match var.cmp(bound) {
            std::cmp::Ordering::Less => VarianceRelation::Less,
            std::cmp::Ordering::Equal => VarianceRelation::Equal,
            std::cmp::Ordering::Greater => VarianceRelation::Greater,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            VarianceRelation::Less => "<",
            VarianceRelation::Equal => "=",
            VarianceRelation::Greater => ">",
        }
    }
}

/// Reduces `x` modulo 1 into `[-1/2, 1/2)`.
fn centered(x: &Rational) -> Rational {
    let half = rat(1, 2);
    let shifted = x + &half;
    let frac = &shifted - shifted.floor();
    frac - half
}

/// Spectral numbers `α` with `e^{-2πi(α + shift)}` running over the roots,
/// each normalized into `[-1/2, 1/2]`. The class `α ≡ 1/2` is split evenly
/// between `-1/2` and `1/2`, reporting its multiplicity through `odd` if
/// that is impossible.
fn angles(f: &CyclotomicFactorization, shift: &Rational, odd: impl Fn(u32) -> Error) -> Result<Spectrum> {
    let mut out = Vec::new();
    let mut boundary = 0u32;
    let half = rat(1, 2);
    for (&m, &mu) in &f.phi {
        for j in (1..=m).filter(|j| j.gcd(&m) == 1) {
            // root e^{2πij/m} = e^{-2πi(α + shift)}
            let a = centered(&(rat(-(j as i64), m as i64) - shift));
            if a == -half.clone() {
                boundary += mu;
            } else {
                out.extend(std::iter::repeat_n(a, mu as usize));
            }
        }
    }
    if boundary % 2 == 1 {
        return Err(odd(boundary));
    }
    for _ in 0..boundary / 2 {
        out.push(-half.clone());
        out.push(half.clone());
    }
    Ok(Spectrum::new(out))
}

/// Spectrum of a seed: `e^{-2πiα_j}` are the eigenvalues of the monodromy.
pub fn spectrum_from_monodromy(seed: &TriangularSeed) -> Result<Spectrum> {
    if seed.definiteness() == Definiteness::Other {
        return Err(Error::NotSemidefinite);
    }
    let p = char_poly(&seed.monodromy())?;
    let f = factor_quasiunipotent(&p)?;
    angles(&f, &Rational::zero(), Error::OddMinusOneMultiplicity)
}

/// `Sp(g)`: `e^{-2πi(α_j + 1/2)}` are the roots of `g`.
pub fn spectrum_of_polynomial(g: &IntPolynomial) -> Result<Spectrum> {
    let f = factor_quasiunipotent(g)?;
    spectrum_of_factorization(&f)
}

pub fn spectrum_of_factorization(f: &CyclotomicFactorization) -> Result<Spectrum> {
    angles(f, &rat(1, 2), Error::OddUnitMultiplicity)
}

/// Sum of `cos(2πα_j)`, in floating point.
pub fn cosine_sum(sp: &Spectrum) -> f64 {
    sp.alphas()
        .iter()
        .map(|a| (2.0 * std::f64::consts::PI * crate::rational::to_f64(a)).cos())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn sp(xs: &[&str]) -> Spectrum {
        Spectrum::new(xs.iter().map(|s| parse_rational(s).unwrap()).collect())
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), p(&[-1, 1]));
        assert_eq!(cyclotomic_poly(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(totient(12), 4);
        assert_eq!(totient(1), 1);
    }

    #[test]
    fn factorization_examples() {
        let f = factor_quasiunipotent(&p(&[-1, 1, -1, 1])).unwrap();
        assert_eq!(f, CyclotomicFactorization::from_pairs(&[(1, 1), (4, 1)]));
        assert_eq!(factor_quasiunipotent(&p(&[1, -3, 1])), Err(Error::NotQuasiunipotent));
        assert_eq!(factor_quasiunipotent(&p(&[1, 2])), Err(Error::NotMonic));
        assert_eq!(factor_quasiunipotent(&IntPolynomial::one()).unwrap().phi.len(), 0);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"phi":{"1":1,"4":1}}"#);
    }

    #[test]
    fn spectra_of_seeds() {
        let a2 = TriangularSeed::from_rows(&[[1, -1], [0, 1]]);
        assert_eq!(spectrum_from_monodromy(&a2).unwrap(), sp(&["-1/6", "1/6"]));
        let a3 = TriangularSeed::from_rows(&[[1, -1, 0], [0, 1, -1], [0, 0, 1]]);
        assert_eq!(spectrum_from_monodromy(&a3).unwrap(), sp(&["-1/4", "0", "1/4"]));
        let bad = TriangularSeed::from_rows(&[[1, -3], [0, 1]]);
        assert_eq!(spectrum_from_monodromy(&bad), Err(Error::NotSemidefinite));
    }

    #[test]
    fn spectra_of_polynomials() {
        assert_eq!(spectrum_of_polynomial(&IntPolynomial::binomial(3, 1)).unwrap(), sp(&["-1/3", "0", "1/3"]));
        assert_eq!(spectrum_of_polynomial(&p(&[1, 1, 1])).unwrap(), sp(&["-1/6", "1/6"]));
        assert_eq!(spectrum_of_polynomial(&p(&[1, -2, 1])).unwrap(), sp(&["-1/2", "1/2"]));
        assert_eq!(spectrum_of_polynomial(&p(&[-1, 1])), Err(Error::OddUnitMultiplicity(1)));
    }

    #[test]
    fn variance_of_a2() {
        let s = sp(&["-1/6", "1/6"]);
        assert_eq!(s.variance(), rat(1, 36));
        assert_eq!(s.variance_bound(), rat(1, 36));
        assert_eq!(s.variance_relation(), VarianceRelation::Equal);
        assert!(s.is_symmetric());
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"["-1/6","1/6"]"#);
    }
}
