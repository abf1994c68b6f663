//! Positive definite case: ADE recognition, root enumeration, Carter classes
//! and the trace/variance classifier.

use std::fmt;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{factor_quasiunipotent, spectrum_from_monodromy, VarianceRelation};
use crate::data::{class_rows, ClassRow};
use crate::error::{Error, Result};
use crate::lattice::{FormParity, LatticeVector, TriangularSeed};
use crate::linalg::{char_poly, definiteness, Definiteness, IntMatrix, IntPolynomial};
use crate::rational::Rational;
use crate::report::{ClassificationReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ADEType {
    pub family: Family,
    pub rank: usize,
}

impl ADEType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(ADEType { family, rank })
        } else {
            Err(Error::Precondition(format!("no root system {}_{rank}", family.letter())))
        }
    }

    /// `|R|` for the type.
    pub fn root_count(self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1),
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, _) => 240,
        }
    }

    /// Determinant of the Gram matrix.
    pub fn determinant(self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::D => 4,
            Family::E => 9 - self.rank,
        }
    }

    pub fn seed(self) -> TriangularSeed {
        match self.family {
            Family::A => crate::data::a_seed(self.rank),
            Family::D => crate::data::d_seed(self.rank),
            Family::E => crate::data::e_seed(self.rank),
        }
    }
}

impl fmt::Display for ADEType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family.letter(), self.rank)
    }
}

/// Graph on the indices with an edge wherever `g_ij ≠ 0`.
fn gram_connected(g: &IntMatrix) -> bool {
    let n = g.rows();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && !g.get(i, j).is_zero() {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Type of an irreducible root lattice from its rank and Gram determinant.
pub fn recognize_ade(g: &IntMatrix) -> Result<ADEType> {
    g.require_square()?;
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = g.rows();
    if (0..n).any(|i| g.get(i, i) != &BigInt::from(2)) {
        return Err(Error::Precondition("Gram matrix must have diagonal 2".into()));
    }
    if definiteness(g)? != Definiteness::PositiveDefinite {
        return Err(Error::NotPositiveDefinite);
    }
    if !gram_connected(g) {
        return Err(Error::Disconnected);
    }
    let det = g.determinant()?;
    let d = det.to_usize();
    let not_root = || Error::NotARootLattice { rank: n, det: det.to_string() };
    match d {
        Some(d) if d == n + 1 => ADEType::new(Family::A, n),
        Some(4) if n >= 4 => ADEType::new(Family::D, n),
        Some(3) if n == 6 => ADEType::new(Family::E, 6),
        Some(2) if n == 7 => ADEType::new(Family::E, 7),
        Some(1) if n == 8 => ADEType::new(Family::E, 8),
        _ => Err(not_root()),
    }
    .map_err(|_| not_root())
}

/// All vectors of norm 2 in a positive definite lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSet {
    /// Both signs, in lexicographic order.
    pub roots: Vec<LatticeVector>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Roots whose first nonzero coordinate is positive.
    pub fn positive(&self) -> impl Iterator<Item = &LatticeVector> {
        self.roots
            .iter()
            .filter(|v| v.0.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()))
    }
}

/// Largest integer `x` with `x² ≤ r` for `r ≥ 0`.
fn isqrt_floor(r: &Rational) -> BigInt {
    let fl = r.floor().to_integer();
    let mut x = fl.sqrt();
    while Rational::from_integer(&x * &x) > *r {
        x -= 1;
    }
    while Rational::from_integer((&x + 1) * (&x + 1)) <= *r {
        x += 1;
    }
    x
}

/// Integers `x` with `(x + c)² ≤ r`.
fn interval(c: &Rational, r: &Rational) -> (BigInt, BigInt) {
    // |x + c| ≤ √r; widen by one from the integer square root, then trim.
    let s = isqrt_floor(r) + 1;
    let mut lo = (-c).floor().to_integer() - &s;
    let mut hi = (-c).ceil().to_integer() + &s;
    let fits = |x: &BigInt| {
        let y = Rational::from_integer(x.clone()) + c;
        &y * &y <= *r
    };
    while lo <= hi && !fits(&lo) {
        lo += 1;
    }
    while hi >= lo && !fits(&hi) {
        hi -= 1;
    }
    (lo, hi)
}

/// Every integer vector `v` with `vᵗ·g·v = 2`.
///
/// Fincke–Pohst enumeration over the exact decomposition
/// `vᵗgv = Σ_i q_ii·(v_i + Σ_{j>i} q_ij v_j)²`, last coordinate first. The
/// bound on the last coordinate is `2·(g⁻¹)_nn`, the inverse-Gram bound.
pub fn enumerate_roots(g: &IntMatrix) -> Result<RootSet> {
    g.require_square()?;
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if definiteness(g)? != Definiteness::PositiveDefinite {
        return Err(Error::NotPositiveDefinite);
    }
    let n = g.rows();
    let mut q: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| Rational::from_integer(g.get(i, j).clone())).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    let target = Rational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    enumerate_level(&q, n, &target, &mut x, &mut out);
    out.sort();
    let roots = out
        .into_iter()
        .filter(|v| g.bilinear(v, v).map(|q| q == BigInt::from(2)).unwrap_or(false))
        .map(LatticeVector)
        .collect();
    Ok(RootSet { roots })
}

fn enumerate_level(q: &[Vec<Rational>], level: usize, rem: &Rational, x: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
    if level == 0 {
        if x.iter().any(|v| !v.is_zero()) {
            out.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    let n = x.len();
    let c: Rational = (i + 1..n).map(|j| &q[i][j] * Rational::from_integer(x[j].clone())).sum();
    let r = rem / &q[i][i];
    let (lo, hi) = interval(&c, &r);
    let mut v = lo;
    while v <= hi {
        let y = Rational::from_integer(v.clone()) + &c;
        let rest = rem - &q[i][i] * &y * &y;
        x[i] = v.clone();
        enumerate_level(q, i, &rest, x, out);
        v += 1;
    }
    x[i] = BigInt::zero();
}

/// A conjugacy class of quasi-Coxeter elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarterClass {
    pub symbol: String,
    pub char_poly: IntPolynomial,
    pub trace: i64,
    pub coxeter: bool,
}

impl From<ClassRow> for CarterClass {
    fn from(r: ClassRow) -> Self {
        CarterClass { symbol: r.symbol, char_poly: r.char_poly, trace: r.trace, coxeter: r.coxeter }
    }
}

fn require_definite_connected(seed: &TriangularSeed) -> Result<()> {
    if !seed.is_connected() {
        return Err(Error::Disconnected);
    }
    if seed.definiteness() != Definiteness::PositiveDefinite {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(())
}

/// Char poly of `-M`, the Weyl group element `s_{e_1}···s_{e_n}`.
pub fn weyl_char_poly(seed: &TriangularSeed) -> IntPolynomial {
    char_poly(&seed.monodromy()).expect("square").negate_variable()
}

/// Class of `-M` among the quasi-Coxeter classes of the recognized type,
/// matched by characteristic polynomial.
pub fn carter_class(seed: &TriangularSeed) -> Result<CarterClass> {
    require_definite_connected(seed)?;
    let ty = recognize_ade(&seed.intersection_form(FormParity::Even))?;
    let p = weyl_char_poly(seed);
    class_rows(ty.family.letter(), ty.rank)
        .into_iter()
        .find(|r| r.char_poly == p)
        .map(CarterClass::from)
        .ok_or_else(|| Error::UnknownClass(p.to_string()))
}

/// Decides distinguishedness of a positive definite seed by the trace of
/// the monodromy and, independently, by the variance equality; the two
/// must agree.
pub fn classify_definite(seed: &TriangularSeed) -> Result<ClassificationReport> {
    require_definite_connected(seed)?;
    let gram = seed.intersection_form(FormParity::Even);
    let ty = recognize_ade(&gram)?;
    let m = seed.monodromy();
    let trace = m.trace()?;
    let cp = char_poly(&m)?;
    let factorization = factor_quasiunipotent(&cp)?;
    let spectrum = spectrum_from_monodromy(seed)?;
    let relation = spectrum.variance_relation();
    let by_trace = trace.is_one();
    let by_variance = relation == VarianceRelation::Equal;
    if by_trace != by_variance {
        return Err(Error::Internal(format!(
            "trace {trace} and variance relation {} disagree",
            relation.symbol()
        )));
    }
    let (class, note) = match carter_class(seed) {
        Ok(c) => (Some(c), None),
        Err(Error::UnknownClass(p)) => (None, Some(format!("-M has characteristic polynomial {p}, not quasi-Coxeter"))),
        Err(e) => return Err(e),
    };
    let verdict = if by_trace {
        Verdict::Distinguished { label: ty.to_string() }
    } else {
        Verdict::NotDistinguished { reason: "trace of monodromy is not 1 and the variance inequality is strict".into() }
    };
    let mut report = ClassificationReport::base(seed, Definiteness::PositiveDefinite, trace, cp, Some(factorization));
    report.verdict = verdict;
    report.ade_type = Some(ty.to_string());
    report.carter_class = class.map(|c| c.symbol);
    report.set_spectrum(spectrum);
    report.notes.extend(note);
    Ok(report)
}
