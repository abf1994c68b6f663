//! Matrices on the HOR simplex: palindromic cyclotomic polynomials `p`,
//! the companion matrix `R_(b)(p)`, the banded seed `S_(b)(p)` with
//! `(-1)^b S⁻¹Sᵗ = Rⁿ`, their spectra, and chain type singularities.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{factor_quasiunipotent, CyclotomicFactorization, Spectrum, VarianceRelation};
use crate::error::{Error, Result};
use crate::lattice::{validate_seed, TriangularSeed};
use crate::linalg::{char_poly, IntMatrix, IntPolynomial};
use crate::moments::{bernoulli_moments, gamma4_upper_bound};
use crate::verify::Check;
use crate::rational::{format_rational, int, rat, serde_bigint, serde_rational, serde_rational_vec, Rational};

/// Largest `n` accepted by [`hor_realizable`].
pub const REALIZABLE_MAX_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorPolynomial {
    pub b: u8,
    pub p: IntPolynomial,
    pub factorization: CyclotomicFactorization,
    /// `0 ≤ β_1 ≤ ... ≤ β_n ≤ 1`, the roots being `e^{-2πiβ_j}`.
    #[serde(with = "serde_rational_vec")]
    pub betas: Vec<Rational>,
}

impl HorPolynomial {
    pub fn n(&self) -> usize {
        self.p.degree()
    }
}

/// Index of the partner of position `j` (0-based) under the symmetry
/// `j ↔ n+b-j` (1-based); `None` for the fixed first entry when `b = 2`.
fn partner(n: usize, b: u8, j: usize) -> Option<usize> {
    match b {
        1 => Some(n - 1 - j),
        _ if j == 0 => None,
        _ => Some(n - j),
    }
}

/// Free parameters left in `β` once the symmetries are imposed.
pub fn free_parameters(n: usize, b: u8) -> usize {
    (0..n)
        .filter(|&j| matches!(partner(n, b, j), Some(q) if q > j))
        .count()
}

/// Dimension of the simplex of degree-`n` HOR polynomials.
pub fn simplex_dimension(n: usize, b: u8) -> usize {
    match (b, n % 2) {
        (1, 0) => n / 2,
        (2, 0) => (n - 2) / 2,
        _ => (n - 1) / 2,
    }
}

pub fn hor_validate(p: &IntPolynomial, b: u8) -> Result<HorPolynomial> {
    if b != 1 && b != 2 {
        return Err(Error::Precondition(format!("b must be 1 or 2, got {b}")));
    }
    if !p.is_monic() || p.degree() == 0 {
        return Err(Error::NotMonic);
    }
    let n = p.degree();
    let sign = if b == 1 { BigInt::one() } else { -BigInt::one() };
    if (0..=n).any(|j| p.coeff(n - j) != &sign * p.coeff(j)) {
        return Err(Error::NotPalindromic(b));
    }
    let factorization = factor_quasiunipotent(p)?;
    let ones = factorization.multiplicity(1) as usize;
    if b == 2 && ones == 0 {
        return Err(Error::MissingRootAtOne);
    }
    let mut betas = Vec::with_capacity(n);
    for (&m, &mu) in &factorization.phi {
        if m == 1 {
            continue;
        }
        for k in (1..m).filter(|k| k.gcd(&m) == 1) {
            // e^{2πik/m} = e^{-2πiβ}
            let beta = rat((m - k) as i64, m as i64);
            betas.extend(std::iter::repeat_n(beta, mu as usize));
        }
    }
    // the root 1 sits at β = 0 and β = 1, paired by the symmetry
    let zeros = if b == 2 { ones.div_ceil(2) } else { ones / 2 };
    betas.extend(std::iter::repeat_n(Rational::zero(), zeros));
    betas.extend(std::iter::repeat_n(Rational::one(), ones - zeros));
    betas.sort();
    for j in 0..n {
        if let Some(q) = partner(n, b, j) {
            if &betas[j] + &betas[q] != Rational::one() {
                return Err(Error::SymmetryViolated(format!("β_{} + β_{} ≠ 1", j + 1, q + 1)));
            }
        } else if !betas[j].is_zero() {
            return Err(Error::SymmetryViolated("β_1 ≠ 0".into()));
        }
    }
    Ok(HorPolynomial { b, p: p.clone(), factorization, betas })
}

/// Product of `Φ_m` for the listed `m`, validated.
pub fn hor_from_cyclotomic(ms: &[u64], b: u8) -> Result<HorPolynomial> {
    hor_validate(&CyclotomicFactorization::from_indices(ms).product(), b)
}

/// A random HOR polynomial of degree between 1 and `max_n`: `Φ_1` with the
/// parity demanded by `b`, then random `Φ_m` (`2 ≤ m ≤ 60`) that fit.
pub fn random_hor_polynomial<R: rand::Rng>(rng: &mut R, max_n: usize) -> Result<HorPolynomial> {
    let b: u8 = rng.gen_range(1..=2);
    let target = rng.gen_range(1..=max_n);
    let mut ms: Vec<u64> = Vec::new();
    let ones = if b == 2 { 1 + 2 * rng.gen_range(0..=(target - 1) / 4) } else { 2 * rng.gen_range(0..=target / 4) };
    ms.extend(std::iter::repeat_n(1, ones));
    let mut degree = ones;
    for _ in 0..64 {
        let m = rng.gen_range(2..=60u64);
        let d = crate::cyclotomic::totient(m) as usize;
        if degree + d <= target {
            ms.push(m);
            degree += d;
        }
    }
    if degree == 0 {
        ms.push(2);
    }
    ms.sort();
    hor_from_cyclotomic(&ms, b)
}

/// Companion matrix: first row `-p_{n-1}, ..., -p_0`, identity below.
pub fn companion_r(hp: &HorPolynomial) -> IntMatrix {
    let n = hp.n();
    IntMatrix::from_fn(n, n, |i, j| {
        if i == 0 {
            -hp.p.coeff(n - 1 - j)
        } else if j + 1 == i {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// Banded seed with `S_{i,i+k} = p_{n-k}`.
pub fn banded_s(hp: &HorPolynomial) -> TriangularSeed {
    let n = hp.n();
    let m = IntMatrix::from_fn(n, n, |i, j| match j.cmp(&i) {
        std::cmp::Ordering::Less => BigInt::zero(),
        std::cmp::Ordering::Equal => BigInt::one(),
        std::cmp::Ordering::Greater => hp.p.coeff(n - (j - i)),
    });
    validate_seed(m).expect("banded matrix is unit upper triangular")
}

/// `(-1)^b S⁻¹Sᵗ = Rⁿ`.
pub fn verify_power_identity(hp: &HorPolynomial) -> bool {
    let s = banded_s(hp);
    let lhs = if hp.b.is_multiple_of(2) { s.monodromy() } else { s.monodromy().neg() };
    match companion_r(hp).pow(hp.n() as u32) {
        Ok(rn) => rn == lhs,
        Err(_) => false,
    }
}

/// `α̃_j = nβ_j - (j - b/2)` in the order of the `β_j`.
pub fn hor_spectrum_unordered(hp: &HorPolynomial) -> Result<Vec<Rational>> {
    let n = hp.n();
    let half_b = rat(hp.b as i64, 2);
    let alphas: Vec<Rational> = hp
        .betas
        .iter()
        .enumerate()
        .map(|(j, beta)| int(n as i64) * beta - (int(j as i64 + 1) - &half_b))
        .collect();
    for j in 0..n {
        let ok = match partner(n, hp.b, j) {
            Some(q) => (&alphas[j] + &alphas[q]).is_zero(),
            None => alphas[j].is_zero(),
        };
        if !ok {
            return Err(Error::SymmetryViolated(format!("α̃_{} = {}", j + 1, format_rational(&alphas[j]))));
        }
    }
    Ok(alphas)
}

pub fn hor_spectrum(hp: &HorPolynomial) -> Result<Spectrum> {
    Ok(Spectrum::new(hor_spectrum_unordered(hp)?))
}

/// Whether the multiset can be ordered with the HOR symmetries,
/// `α̃_{j+1} ≥ α̃_j - 1` and, for `b = 1`, `α̃_1 ≥ -1/2`. Exhaustive search,
/// limited to `n ≤ 12`.
pub fn hor_realizable(values: &[Rational], b: u8) -> Result<bool> {
    let n = values.len();
    if b != 1 && b != 2 {
        return Err(Error::Precondition(format!("b must be 1 or 2, got {b}")));
    }
    if n > REALIZABLE_MAX_N {
        return Err(Error::Precondition(format!("realizability search limited to n ≤ {REALIZABLE_MAX_N}")));
    }
    if n == 0 {
        return Ok(true);
    }
    let mut pool = values.to_vec();
    pool.sort();
    let mut slots: Vec<Option<Rational>> = vec![None; n];
    Ok(place(&mut slots, &mut pool, 0, b))
}

fn chain_ok(slots: &[Option<Rational>], j: usize) -> bool {
    let one = Rational::one();
    let left = j.checked_sub(1).and_then(|i| slots[i].as_ref().map(|a| (a, slots[j].as_ref().unwrap())));
    let right = slots.get(j + 1).and_then(|x| x.as_ref()).map(|c| (slots[j].as_ref().unwrap(), c));
    left.is_none_or(|(a, c)| *c >= a - &one) && right.is_none_or(|(a, c)| *c >= a - &one)
}

fn take(pool: &mut Vec<Rational>, v: &Rational) -> bool {
    match pool.iter().position(|x| x == v) {
        Some(i) => {
            pool.remove(i);
            true
        }
        None => false,
    }
}

fn place(slots: &mut [Option<Rational>], pool: &mut Vec<Rational>, j: usize, b: u8) -> bool {
    let n = slots.len();
    if j == n {
        return true;
    }
    if slots[j].is_some() {
        return place(slots, pool, j + 1, b);
    }
    let mut candidates = pool.clone();
    candidates.dedup();
    if j == 0 && b == 2 {
        candidates.retain(|v| v.is_zero());
    }
    for v in candidates {
        if j == 0 && b == 1 && v < rat(-1, 2) {
            continue;
        }
        take(pool, &v);
        slots[j] = Some(v.clone());
        let q = partner(n, b, j);
        let mut paired = true;
        if let Some(q) = q.filter(|&q| q != j) {
            let w = -v.clone();
            if take(pool, &w) {
                slots[q] = Some(w);
            } else {
                paired = false;
            }
        } else if q == Some(j) && !v.is_zero() {
            paired = false;
        }
        let q_ok = q.is_none_or(|q| slots[q].is_none() || chain_ok(slots, q));
        if paired && chain_ok(slots, j) && q_ok && place(slots, pool, j + 1, b) {
            return true;
        }
        if let Some(q) = q.filter(|&q| q != j) {
            if let Some(w) = slots[q].take() {
                pool.push(w);
            }
        }
        slots[j] = None;
        pool.push(v);
        pool.sort();
    }
    false
}

/// Exponents `(a_0, ..., a_m)` of `x_0^{a_0} + Σ x_{i-1} x_i^{a_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTypeSpec {
    pub exponents: Vec<u64>,
}

impl ChainTypeSpec {
    /// Requires `a_0 ≥ 2`, `a_i ≥ 1` and all weights in `(0, 1/2]`.
    pub fn new(exponents: Vec<u64>) -> Result<Self> {
        match exponents.first() {
            None => return Err(Error::InvalidExponents("empty exponent list".into())),
            Some(&a0) if a0 < 2 => return Err(Error::InvalidExponents(format!("a_0 = {a0} < 2"))),
            _ => {}
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidExponents("exponents must be positive".into()));
        }
        let spec = ChainTypeSpec { exponents };
        let half = rat(1, 2);
        if let Some(w) = spec.weights().into_iter().find(|w| !w.is_positive() || *w > half) {
            return Err(Error::WeightOutOfRange(format_rational(&w)));
        }
        Ok(spec)
    }

    pub fn m(&self) -> usize {
        self.exponents.len() - 1
    }

    /// `r_{-1} = 1, r_k = a_0 ⋯ a_k`.
    pub fn r(&self) -> Vec<BigInt> {
        let mut r = vec![BigInt::one()];
        for &a in &self.exponents {
            let next = r.last().unwrap() * BigInt::from(a);
            r.push(next);
        }
        r
    }

    /// `b ≡ m+1 mod 2`.
    pub fn b(&self) -> u8 {
        if self.m().is_multiple_of(2) {
            1
        } else {
            2
        }
    }

    /// `Σ_{l=-1}^{m} (-1)^{m-l} r_l`.
    pub fn milnor_number(&self) -> BigInt {
        let m = self.m();
        self.r()
            .into_iter()
            .enumerate()
            .map(|(i, r)| if (m + 1 - i).is_multiple_of(2) { r } else { -r })
            .sum()
    }

    /// `w_0 = 1/a_0`, `w_i = (1 - w_{i-1})/a_i`.
    pub fn weights(&self) -> Vec<Rational> {
        let mut w: Vec<Rational> = Vec::with_capacity(self.exponents.len());
        for (i, &a) in self.exponents.iter().enumerate() {
            let prev = if i == 0 { Rational::zero() } else { w[i - 1].clone() };
            w.push((Rational::one() - prev) / int(a as i64));
        }
        w
    }

    /// `m + 1 - 2 Σ w_i`.
    pub fn nu(&self) -> Rational {
        int(self.m() as i64 + 1) - int(2) * self.weights().into_iter().sum::<Rational>()
    }
}

impl std::str::FromStr for ChainTypeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let exps = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad exponent {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        ChainTypeSpec::new(exps)
    }
}

/// `p = Π_{l=-1}^{m} (x^{r_l} - 1)^{(-1)^{m-l}}`, validated with the
/// spec's `b`.
pub fn chain_type(spec: &ChainTypeSpec) -> Result<HorPolynomial> {
    let m = spec.m();
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for (i, r) in spec.r().into_iter().enumerate() {
        let r = r.to_usize().ok_or_else(|| Error::InvalidExponents("r_l too large".into()))?;
        let f = IntPolynomial::binomial(r, -1);
        if (m + 1 - i).is_multiple_of(2) {
            num = num.mul(&f);
        } else {
            den = den.mul(&f);
        }
    }
    let p = num
        .div_exact(&den)
        .ok_or_else(|| Error::InexactDivision(format!("exponents {:?}", spec.exponents)))?;
    if BigInt::from(p.degree()) != spec.milnor_number() {
        return Err(Error::Internal("degree differs from the Milnor number".into()));
    }
    hor_validate(&p, spec.b())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub exponents: Vec<u64>,
    pub b: u8,
    pub milnor_number: usize,
    pub polynomial: IntPolynomial,
    pub factorization: CyclotomicFactorization,
    #[serde(with = "serde_rational_vec")]
    pub weights: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub nu: Rational,
    pub seed: TriangularSeed,
    pub power_identity: bool,
    pub spectrum: Spectrum,
    #[serde(with = "serde_rational")]
    pub gamma2: Rational,
    #[serde(with = "serde_rational")]
    pub gamma4: Rational,
    #[serde(with = "serde_rational")]
    pub gamma4_closed_form: Rational,
    #[serde(with = "serde_rational")]
    pub gamma4_upper_bound: Rational,
}

impl ChainReport {
    /// `Γ_2 = 0`, the closed form for `Γ_4`, its bounds, `ν = α_n - α_1`
    /// and the matrix identity.
    pub fn consistent(&self) -> bool {
        self.power_identity
            && self.gamma2.is_zero()
            && self.gamma4 == self.gamma4_closed_form
            && !self.gamma4.is_negative()
            && self.gamma4 <= self.gamma4_upper_bound
            && self.spectrum.span() == self.nu
    }
}

pub fn chain_report(spec: &ChainTypeSpec) -> Result<ChainReport> {
    let hp = chain_type(spec)?;
    let n = hp.n();
    let spectrum = hor_spectrum(&hp)?;
    let weights = spec.weights();
    let nu = spec.nu();
    let bm = bernoulli_moments(&spectrum, &nu, 2);
    Ok(ChainReport {
        exponents: spec.exponents.clone(),
        b: hp.b,
        milnor_number: n,
        seed: banded_s(&hp),
        power_identity: verify_power_identity(&hp),
        gamma2: bm.gamma[1].clone(),
        gamma4: bm.gamma[2].clone(),
        gamma4_closed_form: crate::moments::gamma4_closed_form(&weights, n as u64)?,
        gamma4_upper_bound: gamma4_upper_bound(n as u64, &nu),
        polynomial: hp.p,
        factorization: hp.factorization,
        weights,
        nu,
        spectrum,
    })
}

/// Every valid exponent tuple with at most `max_m + 1` entries and Milnor
/// number at most `max_n`, in lexicographic order.
pub fn chain_tuples(max_m: usize, max_n: u64) -> Vec<ChainTypeSpec> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u64>> = (2..=max_n + 1).map(|a| vec![a]).collect();
    stack.reverse();
    while let Some(t) = stack.pop() {
        // Weights are inherited by extensions and n = Π(1/w_i - 1) only
        // grows with weights in (0, 1/2], so both failures prune the subtree.
        let Ok(spec) = ChainTypeSpec::new(t) else { continue };
        if spec.milnor_number() > BigInt::from(max_n) {
            continue;
        }
        if spec.m() < max_m {
            for a in (1..=max_n + 1).rev() {
                let mut c = spec.exponents.clone();
                c.push(a);
                stack.push(c);
            }
        }
        out.push(spec);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
/// Invariants of `S_(b)(p)` for a product `p` of cyclotomic polynomials.
pub struct HorCase {
    pub n: usize,
    pub b: u8,
    pub cyclotomic_indices: Vec<u64>,
    #[serde(with = "serde_rational_vec")]
    pub betas: Vec<Rational>,
    pub seed: TriangularSeed,
    /// `(-1)^b S⁻¹Sᵗ = Rⁿ`.
    pub power_identity: bool,
    #[serde(with = "serde_bigint")]
    pub trace: BigInt,
    pub monodromy_factorization: CyclotomicFactorization,
    #[serde(with = "serde_rational_vec")]
    pub unordered_spectrum: Vec<Rational>,
    pub spectrum: Spectrum,
    #[serde(with = "serde_rational")]
    pub variance: Rational,
    pub variance_relation: VarianceRelation,
    #[serde(with = "serde_rational")]
    pub gamma2: Rational,
    #[serde(with = "serde_rational")]
    pub gamma4: Rational,
    #[serde(with = "serde_rational")]
    pub gamma4_upper_bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub cases: Vec<HorCase>,
    pub checks: Vec<Check>,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `(n, b, Φ-indices)` of the three HOR matrices with trace 1 and the
/// variance inequality but indefinite `S + Sᵗ`.
pub const COUNTEREXAMPLES: [(usize, u8, &[u64]); 3] = [
    (22, 2, &[1, 2, 3, 4, 8, 12, 16]),
    (24, 1, &[5, 8, 15, 30]),
    (25, 2, &[1, 6, 11, 28]),
];

/// `48 β_j` for the first example.
pub const S1_BETA_TILDE: [i64; 22] = [0, 3, 4, 6, 9, 12, 15, 16, 18, 20, 21, 24, 27, 28, 30, 32, 33, 36, 39, 42, 44, 45];

/// `24 α̃_j` in the order of the `β_j`, first example.
pub const S1_ALPHA_TILDE: [i64; 22] = [0, 9, -4, -6, 3, 12, 21, 8, 6, 4, -9, 0, 9, -4, -6, -8, -21, -12, -3, 6, 4, -9];

/// `24 α_j`, sorted, first example.
pub const S1_SPECTRUM: [i64; 22] = [-21, -12, -9, -9, -8, -6, -6, -4, -4, -3, 0, 0, 3, 4, 4, 6, 6, 8, 9, 9, 12, 21];

/// Exact `Γ_4(Sp(S_1), α_22 - α_1)`, `0.33754...`.
pub fn s1_gamma4() -> Rational {
    rat(7777, 23040)
}

pub fn hor_case(ms: &[u64], b: u8) -> Result<HorCase> {
    let hp = hor_from_cyclotomic(ms, b)?;
    let n = hp.n();
    let seed = banded_s(&hp);
    let unordered = hor_spectrum_unordered(&hp)?;
    let spectrum = Spectrum::new(unordered.clone());
    let nu = spectrum.span();
    let bm = bernoulli_moments(&spectrum, &nu, 2);
    Ok(HorCase {
        n,
        b,
        cyclotomic_indices: ms.to_vec(),
        power_identity: verify_power_identity(&hp),
        betas: hp.betas.clone(),
        trace: seed.monodromy_trace(),
        monodromy_factorization: factor_quasiunipotent(&char_poly(&seed.monodromy())?)?,
        variance: spectrum.variance(),
        variance_relation: spectrum.variance_relation(),
        gamma2: bm.gamma[1].clone(),
        gamma4: bm.gamma[2].clone(),
        gamma4_upper_bound: gamma4_upper_bound(n as u64, &nu),
        unordered_spectrum: unordered,
        spectrum,
        seed,
    })
}

fn scaled(xs: &[i64], d: i64) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x, d)).collect()
}

/// Rebuilds the three counterexamples and checks every value listed for them.
pub fn reproduce_hor_counterexamples() -> Result<CounterexampleReport> {
    let cases = COUNTEREXAMPLES
        .iter()
        .map(|&(_, b, ms)| hor_case(ms, b))
        .collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();
    let one = BigInt::one();
    for (i, c) in cases.iter().enumerate() {
        let tag = format!("S_{}", i + 1);
        checks.push(Check::new(format!("{tag} rank"), c.n == COUNTEREXAMPLES[i].0, c.n.to_string()));
        checks.push(Check::new(format!("{tag} (-1)^b S⁻¹Sᵗ = Rⁿ"), c.power_identity, ""));
        checks.push(Check::new(format!("{tag} trace"), c.trace == one, c.trace.to_string()));
        let expected = if i == 2 { VarianceRelation::Less } else { VarianceRelation::Equal };
        checks.push(Check::new(
            format!("{tag} variance relation"),
            c.variance_relation == expected,
            format!("Var {} {} {}", format_rational(&c.variance), c.variance_relation.symbol(), format_rational(&c.spectrum.variance_bound())),
        ));
    }
    let s1 = &cases[0];
    checks.push(Check::new("S_1 betas", s1.betas == scaled(&S1_BETA_TILDE, 48), ""));
    checks.push(Check::new("S_1 unordered spectrum", s1.unordered_spectrum == scaled(&S1_ALPHA_TILDE, 24), ""));
    checks.push(Check::new("S_1 spectrum", s1.spectrum.alphas() == scaled(&S1_SPECTRUM, 24).as_slice(), s1.spectrum.to_string()));
    let fact = CyclotomicFactorization::from_pairs(&[(1, 2), (2, 2), (3, 1), (4, 2), (6, 2), (8, 2)]);
    checks.push(Check::new("S_1 monodromy char poly", s1.monodromy_factorization == fact, s1.monodromy_factorization.to_string()));
    checks.push(Check::new("S_1 variance", s1.variance == rat(7, 48), format_rational(&s1.variance)));
    checks.push(Check::new("S_1 gamma_2", s1.gamma2.is_zero(), format_rational(&s1.gamma2)));
    let approx = crate::rational::to_f64(&s1.gamma4);
    checks.push(Check::new(
        "S_1 gamma_4",
        s1.gamma4 == s1_gamma4() && (approx * 1e4).floor() == 3375.0,
        format!("{} = {approx:.6}", format_rational(&s1.gamma4)),
    ));
    checks.push(Check::new(
        "S_1 gamma_4 exceeds n·ν/240",
        s1.gamma4_upper_bound == rat(77, 480) && s1.gamma4 > s1.gamma4_upper_bound,
        format!("{} > {}", format_rational(&s1.gamma4), format_rational(&s1.gamma4_upper_bound)),
    ));
    checks.push(Check::new("S_2 gamma_2", cases[1].gamma2.is_zero(), format_rational(&cases[1].gamma2)));
    checks.push(Check::new("S_3 gamma_2 negative", cases[2].gamma2.is_negative(), format_rational(&cases[2].gamma2)));
    Ok(CounterexampleReport { cases, checks })
}
