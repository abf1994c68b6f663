//! The action of `Br_n ⋉ {±1}^n` on triangular matrices and on basis
//! tuples, and breadth-first orbit enumeration.
//!
//! Words are applied left to right: the first token acts first.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{validate_seed, FormParity, LatticeVector, TriangularSeed};
use crate::linalg::IntMatrix;

/// One generator of `Br_n ⋉ {±1}^n`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BraidToken {
    /// `σ_j` (or `σ_j⁻¹` when `inverse`), `1 ≤ j ≤ n-1`.
    Sigma { j: usize, inverse: bool },
    /// `δ_j`, `1 ≤ j ≤ n`.
    Delta { j: usize },
}

impl BraidToken {
    pub fn sigma(j: usize) -> Self {
        BraidToken::Sigma { j, inverse: false }
    }

    pub fn sigma_inv(j: usize) -> Self {
        BraidToken::Sigma { j, inverse: true }
    }

    pub fn delta(j: usize) -> Self {
        BraidToken::Delta { j }
    }

    pub fn inverse(self) -> Self {
        match self {
            BraidToken::Sigma { j, inverse } => BraidToken::Sigma { j, inverse: !inverse },
            d => d,
        }
    }

    pub fn check_rank(self, n: usize) -> Result<()> {
        let (index, ok) = match self {
            BraidToken::Sigma { j, .. } => (j, j >= 1 && j < n),
            BraidToken::Delta { j } => (j, j >= 1 && j <= n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, rank: n })
        }
    }

    /// All `3n-2` generators in a fixed order: `s1..s(n-1)`, `S1..S(n-1)`,
    /// `d1..dn`.
    pub fn all(n: usize) -> Vec<BraidToken> {
        let mut out = Vec::with_capacity(3 * n);
        out.extend((1..n).map(BraidToken::sigma));
        out.extend((1..n).map(BraidToken::sigma_inv));
        out.extend((1..=n).map(BraidToken::delta));
        out
    }

    /// The `2n-2` braid generators without sign changes.
    pub fn sigmas(n: usize) -> Vec<BraidToken> {
        let mut out = Vec::with_capacity(2 * n);
        out.extend((1..n).map(BraidToken::sigma));
        out.extend((1..n).map(BraidToken::sigma_inv));
        out
    }
}

impl fmt::Display for BraidToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidToken::Sigma { j, inverse: false } => write!(f, "s{j}"),
            BraidToken::Sigma { j, inverse: true } => write!(f, "S{j}"),
            BraidToken::Delta { j } => write!(f, "d{j}"),
        }
    }
}

impl FromStr for BraidToken {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad braid token {s:?}"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let j: usize = chars.as_str().parse().map_err(|_| bad())?;
        if j == 0 {
            return Err(bad());
        }
        match head {
            's' => Ok(BraidToken::sigma(j)),
            'S' => Ok(BraidToken::sigma_inv(j)),
            'd' => Ok(BraidToken::delta(j)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for BraidToken {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BraidToken {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BraidWord(pub Vec<BraidToken>);

impl BraidWord {
    pub fn new(tokens: Vec<BraidToken>) -> Self {
        BraidWord(tokens)
    }

    pub fn tokens(&self) -> &[BraidToken] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word undoing this one.
    pub fn inverse(&self) -> Self {
        BraidWord(self.0.iter().rev().map(|t| t.inverse()).collect())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(BraidWord)
    }
}

/// The `2×2` block of `C_{n,j}(a)` (or of its inverse) used for one step.
fn sigma_block(a: &IntMatrix, token: BraidToken) -> Option<(usize, [[BigInt; 2]; 2])> {
    match token {
        BraidToken::Sigma { j, inverse: false } => {
            let x = -a.get(j - 1, j).clone();
            Some((j - 1, [[x, BigInt::one()], [BigInt::one(), BigInt::zero()]]))
        }
        BraidToken::Sigma { j, inverse: true } => {
            let x = a.get(j - 1, j).clone();
            Some((j - 1, [[BigInt::zero(), BigInt::one()], [BigInt::one(), -x]]))
        }
        BraidToken::Delta { .. } => None,
    }
}

/// `C·A·C` for a symmetric `C` that differs from the identity only in the
/// block at rows/columns `p, p+1`.
fn conjugate_block(a: &IntMatrix, p: usize, c: &[[BigInt; 2]; 2]) -> IntMatrix {
    let n = a.rows();
    let q = p + 1;
    let mut m = a.clone();
    for k in 0..n {
        let (x, y) = (a.get(p, k), a.get(q, k));
        m.set(p, k, &c[0][0] * x + &c[0][1] * y);
        m.set(q, k, &c[1][0] * x + &c[1][1] * y);
    }
    let rows = m.clone();
    for k in 0..n {
        let (x, y) = (rows.get(k, p), rows.get(k, q));
        m.set(k, p, x * &c[0][0] + y * &c[1][0]);
        m.set(k, q, x * &c[0][1] + y * &c[1][1]);
    }
    m
}

/// Applies one generator to a matrix.
pub fn act_on_matrix(seed: &TriangularSeed, token: BraidToken) -> Result<TriangularSeed> {
    let n = seed.rank();
    token.check_rank(n)?;
    let a = seed.matrix();
    let out = match token {
        BraidToken::Delta { j } => {
            let mut m = a.clone();
            for k in 0..n {
                if k != j - 1 {
                    m.set(j - 1, k, -a.get(j - 1, k).clone());
                    m.set(k, j - 1, -a.get(k, j - 1).clone());
                }
            }
            m
        }
        sigma => {
            let (p, block) = sigma_block(a, sigma).expect("sigma token");
            conjugate_block(a, p, &block)
        }
    };
    validate_seed(out).map_err(|_| Error::Internal(format!("{token} produced a non-triangular matrix")))
}

/// Applies a whole word, first token first.
pub fn act_on_matrix_word(seed: &TriangularSeed, word: &BraidWord) -> Result<TriangularSeed> {
    word.0.iter().try_fold(seed.clone(), |acc, &t| act_on_matrix(&acc, t))
}

/// Ordered tuple of lattice vectors, e.g. a distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisTuple(pub Vec<LatticeVector>);

impl BasisTuple {
    pub fn standard(n: usize) -> Self {
        BasisTuple((0..n).map(|i| LatticeVector::basis(n, i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate matrix with the vectors as rows.
    pub fn as_rows(&self) -> IntMatrix {
        let n = self.0.len();
        let m = self.0.first().map_or(0, |v| v.len());
        IntMatrix::from_fn(n, m, |i, j| self.0[i].0[j].clone())
    }

    pub fn is_basis(&self) -> bool {
        let m = self.as_rows();
        m.is_square() && m.determinant().map(|d| d.abs_is_one()).unwrap_or(false)
    }

    /// `S'_ij = L(v_j, v_i)`, the triangular matrix of the tuple.
    pub fn gram(&self, seed: &TriangularSeed) -> Result<IntMatrix> {
        let n = self.0.len();
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, seed.l_pairing(&self.0[j], &self.0[i])?);
            }
        }
        Ok(out)
    }
}

trait AbsIsOne {
    fn abs_is_one(&self) -> bool;
}

impl AbsIsOne for BigInt {
    fn abs_is_one(&self) -> bool {
        self.is_one() || (-self).is_one()
    }
}

/// Applies one generator to a tuple of vectors in the lattice of `seed`.
///
/// The braid move is realized through the reflection (`k = 0`) or the
/// transvection (`k = 1`) of the neighboring vector: `σ_j` replaces `v_j` by
/// `s_{v_j}(v_{j+1})` and `σ_j⁻¹` replaces `v_{j+1}` by `s_{v_{j+1}}⁻¹(v_j)`.
/// On triangular tuples both choices give `v_{j+1} - L(v_{j+1}, v_j)·v_j`
/// and `v_j - L(v_{j+1}, v_j)·v_{j+1}`.
pub fn act_on_tuple(seed: &TriangularSeed, tuple: &BasisTuple, token: BraidToken, k: u8) -> Result<BasisTuple> {
    let parity = FormParity::from_index(k)?;
    let n = tuple.len();
    token.check_rank(n)?;
    if tuple.0.iter().any(|v| v.len() != seed.rank()) {
        return Err(Error::DimensionMismatch("tuple vectors do not match the seed rank".into()));
    }
    let mut v = tuple.0.clone();
    match token {
        BraidToken::Delta { j } => v[j - 1] = v[j - 1].neg(),
        BraidToken::Sigma { j, inverse: false } => {
            let (p, q) = (j - 1, j);
            let c = seed.pairing(parity, &v[p], &v[q])?;
            v[p] = v[q].sub_scaled(&c, &v[p]);
            v[q] = tuple.0[p].clone();
        }
        BraidToken::Sigma { j, inverse: true } => {
            let (p, q) = (j - 1, j);
            // s⁻¹ equals s for k = 0; for k = 1 the transvection is inverted
            // by flipping the sign of the pairing.
            let mut c = seed.pairing(parity, &v[q], &v[p])?;
            if parity == FormParity::Odd {
                c = -c;
            }
            v[q] = v[p].sub_scaled(&c, &v[q]);
            v[p] = tuple.0[q].clone();
        }
    }
    Ok(BasisTuple(v))
}

/// Applying `word` to the standard basis and recomputing its matrix agrees
/// with applying `word` to the matrix directly.
pub fn equivariance_check(seed: &TriangularSeed, word: &BraidWord) -> bool {
    let run = || -> Result<bool> {
        let mut tuple = BasisTuple::standard(seed.rank());
        for &t in word.tokens() {
            tuple = act_on_tuple(seed, &tuple, t, 0)?;
        }
        let direct = act_on_matrix_word(seed, word)?;
        Ok(&tuple.gram(seed)? == direct.matrix())
    };
    run().unwrap_or(false)
}

/// Limits for [`enumerate_orbit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitBudget {
    pub max_states: usize,
    pub max_abs_entry: i64,
}

impl Default for OrbitBudget {
    fn default() -> Self {
        OrbitBudget { max_states: 100_000, max_abs_entry: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitStatus {
    /// Closed under every generator.
    Exhausted,
    /// A state or entry limit stopped the search before closure.
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub matrix: IntMatrix,
    /// Word carrying the seed to `matrix`.
    pub word: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub seed: TriangularSeed,
    pub status: OrbitStatus,
    pub size: usize,
    pub states_expanded: usize,
    pub max_entry_seen: i64,
    pub budget: OrbitBudget,
    /// Visited matrices in discovery order, the seed first.
    pub orbit: Vec<OrbitEntry>,
}

impl OrbitReport {
    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.orbit.iter().any(|e| &e.matrix == m)
    }

    pub fn matrices(&self) -> impl Iterator<Item = &IntMatrix> {
        self.orbit.iter().map(|e| &e.matrix)
    }
}

/// Dense `i64` matrix used as the compact state of the search.
#[derive(Clone)]
struct Small {
    n: usize,
    a: Vec<i64>,
}

impl Small {
    fn from_seed(seed: &TriangularSeed) -> Option<Self> {
        let n = seed.rank();
        let a = seed.matrix().entries().iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>()?;
        Some(Small { n, a })
    }

    fn key(&self) -> Vec<i64> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            out.extend_from_slice(&self.a[i * n + i + 1..(i + 1) * n]);
        }
        out
    }

    fn from_key(n: usize, key: &[i64]) -> Self {
        let mut a = vec![0; n * n];
        let mut it = key.iter();
        for i in 0..n {
            a[i * n + i] = 1;
            for j in i + 1..n {
                a[i * n + j] = *it.next().unwrap();
            }
        }
        Small { n, a }
    }

    fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| BigInt::from(self.a[i * self.n + j]))
    }

    /// Same action as [`act_on_matrix`]; `None` on `i64` overflow.
    fn act(&self, token: BraidToken) -> Option<Self> {
        let n = self.n;
        let mut m = self.clone();
        match token {
            BraidToken::Delta { j } => {
                let p = j - 1;
                for k in 0..n {
                    if k != p {
                        m.a[p * n + k] = -m.a[p * n + k];
                        m.a[k * n + p] = -m.a[k * n + p];
                    }
                }
            }
            BraidToken::Sigma { j, inverse } => {
                let (p, q) = (j - 1, j);
                let c = if inverse {
                    [[0, 1], [1, -self.a[p * n + q]]]
                } else {
                    [[self.a[p * n + q].checked_neg()?, 1], [1, 0]]
                };
                let lin = |x: i64, y: i64, c0: i64, c1: i64| -> Option<i64> {
                    x.checked_mul(c0)?.checked_add(y.checked_mul(c1)?)
                };
                for k in 0..n {
                    let (x, y) = (self.a[p * n + k], self.a[q * n + k]);
                    m.a[p * n + k] = lin(x, y, c[0][0], c[0][1])?;
                    m.a[q * n + k] = lin(x, y, c[1][0], c[1][1])?;
                }
                let rows = m.a.clone();
                for k in 0..n {
                    let (x, y) = (rows[k * n + p], rows[k * n + q]);
                    m.a[k * n + p] = lin(x, y, c[0][0], c[1][0])?;
                    m.a[k * n + q] = lin(x, y, c[0][1], c[1][1])?;
                }
            }
        }
        debug_assert!((0..n).all(|i| m.a[i * n + i] == 1 && (0..i).all(|j| m.a[i * n + j] == 0)));
        Some(m)
    }
}

struct Search {
    keys: Vec<Vec<i64>>,
    parent: Vec<Option<(usize, BraidToken)>>,
    index: HashMap<Vec<i64>, usize>,
    status: OrbitStatus,
    expanded: usize,
    max_entry_seen: i64,
}

fn bfs(seed: &TriangularSeed, tokens: &[BraidToken], budget: OrbitBudget) -> Search {
    let n = seed.rank();
    let mut search = Search {
        keys: Vec::new(),
        parent: Vec::new(),
        index: HashMap::new(),
        status: OrbitStatus::Exhausted,
        expanded: 0,
        max_entry_seen: 0,
    };
    let Some(start) = Small::from_seed(seed) else {
        search.status = OrbitStatus::BudgetExceeded;
        return search;
    };
    let k0 = start.key();
    search.max_entry_seen = k0.iter().map(|x| x.abs()).max().unwrap_or(0);
    if search.max_entry_seen > budget.max_abs_entry || budget.max_states == 0 {
        search.status = OrbitStatus::BudgetExceeded;
        if budget.max_states == 0 {
            return search;
        }
    }
    search.index.insert(k0.clone(), 0);
    search.keys.push(k0);
    search.parent.push(None);

    let mut head = 0;
    while head < search.keys.len() {
        let cur = Small::from_key(n, &search.keys[head]);
        search.expanded += 1;
        for &t in tokens {
            let Some(next) = cur.act(t) else {
                search.status = OrbitStatus::BudgetExceeded;
                continue;
            };
            let key = next.key();
            if search.index.contains_key(&key) {
                continue;
            }
            let big = key.iter().map(|x| x.abs()).max().unwrap_or(0);
            search.max_entry_seen = search.max_entry_seen.max(big);
            if big > budget.max_abs_entry || search.keys.len() >= budget.max_states {
                search.status = OrbitStatus::BudgetExceeded;
                continue;
            }
            search.index.insert(key.clone(), search.keys.len());
            search.keys.push(key);
            search.parent.push(Some((head, t)));
        }
        head += 1;
    }
    search
}

fn word_to(search: &Search, mut i: usize) -> BraidWord {
    let mut tokens = Vec::new();
    while let Some((p, t)) = search.parent[i] {
        tokens.push(t);
        i = p;
    }
    tokens.reverse();
    BraidWord(tokens)
}

/// Breadth-first closure of `seed` under all `3n-2` generators.
///
/// A neighbor is dropped (and the status becomes `BudgetExceeded`) when it
/// has an entry of absolute value above `max_abs_entry` or when
/// `max_states` matrices have already been recorded. The search itself is
/// sequential so that reports are reproducible token for token.
pub fn enumerate_orbit(seed: &TriangularSeed, budget: OrbitBudget) -> OrbitReport {
    let tokens = BraidToken::all(seed.rank());
    let search = bfs(seed, &tokens, budget);
    let n = seed.rank();
    let orbit: Vec<OrbitEntry> = (0..search.keys.len())
        .map(|i| OrbitEntry { matrix: Small::from_key(n, &search.keys[i]).to_matrix(), word: word_to(&search, i) })
        .collect();
    OrbitReport {
        seed: seed.clone(),
        status: search.status,
        size: orbit.len(),
        states_expanded: search.expanded,
        max_entry_seen: search.max_entry_seen,
        budget,
        orbit,
    }
}

/// Number of matrices in the orbit, without materializing witnesses.
pub fn orbit_size(seed: &TriangularSeed, budget: OrbitBudget) -> (usize, OrbitStatus) {
    let s = bfs(seed, &BraidToken::all(seed.rank()), budget);
    (s.keys.len(), s.status)
}

/// Every sign change of every orbit member can be realized by braids alone:
/// the orbit under the `σ`-generators is closed under each `δ_j`.
///
/// Requires all orbit entries in `{0, ±1}`.
pub fn signs_via_braids_check(seed: &TriangularSeed, budget: OrbitBudget) -> Result<bool> {
    let n = seed.rank();
    let search = bfs(seed, &BraidToken::sigmas(n), OrbitBudget { max_abs_entry: budget.max_abs_entry.max(1), ..budget });
    if search.max_entry_seen > 1 {
        return Err(Error::Precondition("orbit contains entries outside {0, ±1}".into()));
    }
    if search.status != OrbitStatus::Exhausted {
        return Err(Error::Precondition("braid orbit exceeds the budget".into()));
    }
    for key in &search.keys {
        let a = Small::from_key(n, key);
        for j in 1..=n {
            let d = a.act(BraidToken::delta(j)).expect("sign change cannot overflow");
            if !search.index.contains_key(&d.key()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
