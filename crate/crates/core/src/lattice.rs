//! Unimodular bilinear lattices with a triangular basis.
//!
//! A seed `S` is a unit upper-triangular integer matrix. It determines the
//! lattice `Z^n` with bilinear form `L(a, b) = aᵗ·Sᵗ·b`, so that
//! `L(e_j, e_i) = S_ij`. Everything else (intersection forms, monodromy,
//! reflections) is expressed in the coordinates of the standard basis.

use std::collections::VecDeque;
use std::fmt;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{definiteness, triangular_inverse, Definiteness, IntMatrix};

/// Unit upper-triangular integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct TriangularSeed {
    s: IntMatrix,
}

impl<'de> Deserialize<'de> for TriangularSeed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = IntMatrix::deserialize(d)?;
        validate_seed(m).map_err(serde::de::Error::custom)
    }
}

/// Accepts a square matrix that is unit upper-triangular.
pub fn validate_seed(raw: IntMatrix) -> Result<TriangularSeed> {
    raw.require_square()?;
    if !raw.is_unit_upper_triangular() {
        return Err(Error::NotUnitUpperTriangular);
    }
    Ok(TriangularSeed { s: raw })
}

/// Which intersection form: `0` symmetric, `1` skew.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormParity {
    Even,
    Odd,
}

impl FormParity {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            0 => Ok(FormParity::Even),
            1 => Ok(FormParity::Odd),
            _ => Err(Error::Precondition(format!("form index must be 0 or 1, got {k}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            FormParity::Even => 0,
            FormParity::Odd => 1,
        }
    }
}

impl TriangularSeed {
    /// Convenience constructor for literal matrices; panics if invalid.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        validate_seed(IntMatrix::from_rows(rows)).expect("literal seed must be unit upper-triangular")
    }

    /// Unit upper-triangular matrix with the given strictly-upper entries,
    /// listed row by row.
    pub fn from_upper(n: usize, upper: &[i64]) -> Result<Self> {
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::DimensionMismatch(format!(
                "{} upper entries for rank {n}",
                upper.len()
            )));
        }
        let mut m = IntMatrix::identity(n);
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, BigInt::from(*it.next().unwrap()));
            }
        }
        Ok(TriangularSeed { s: m })
    }

    pub fn identity(n: usize) -> Self {
        TriangularSeed { s: IntMatrix::identity(n) }
    }

    pub fn rank(&self) -> usize {
        self.s.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.s
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.s
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.s.get(i, j)
    }

    /// Strictly upper entries row by row.
    pub fn upper_entries(&self) -> Vec<BigInt> {
        let n = self.rank();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.s.get(i, j).clone());
            }
        }
        out
    }

    /// Coordinate matrix of `L`, which is `Sᵗ`.
    pub fn l_form(&self) -> IntMatrix {
        self.s.transpose()
    }

    /// `L(a, b)`.
    pub fn l_pairing(&self, a: &LatticeVector, b: &LatticeVector) -> Result<BigInt> {
        self.check_len(a)?;
        self.check_len(b)?;
        // aᵗ Sᵗ b = bᵗ S a
        self.s.bilinear(&b.0, &a.0)
    }

    /// `S + Sᵗ` for the even form, `S - Sᵗ` for the odd one.
    pub fn intersection_form(&self, k: FormParity) -> IntMatrix {
        let t = self.s.transpose();
        match k {
            FormParity::Even => self.s.add(&t).expect("square"),
            FormParity::Odd => self.s.sub(&t).expect("square"),
        }
    }

    pub fn pairing(&self, k: FormParity, a: &LatticeVector, b: &LatticeVector) -> Result<BigInt> {
        self.check_len(a)?;
        self.check_len(b)?;
        self.intersection_form(k).bilinear(&a.0, &b.0)
    }

    /// Monodromy `S⁻¹·Sᵗ`; its columns are the images of the basis vectors.
    pub fn monodromy(&self) -> IntMatrix {
        let inv = triangular_inverse(&self.s).expect("seed is unit upper-triangular");
        inv.mul(&self.s.transpose()).expect("square")
    }

    /// `tr(S⁻¹Sᵗ)`.
    pub fn monodromy_trace(&self) -> BigInt {
        self.monodromy().trace().expect("square")
    }

    pub fn definiteness(&self) -> Definiteness {
        definiteness(&self.intersection_form(FormParity::Even)).expect("S + Sᵗ is symmetric")
    }

    pub fn diagram(&self) -> CoxeterDynkinDiagram {
        cdd(self)
    }

    pub fn is_connected(&self) -> bool {
        self.diagram().is_connected()
    }

    fn check_len(&self, v: &LatticeVector) -> Result<()> {
        if v.0.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in rank {}",
                v.0.len(),
                self.rank()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TriangularSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.s.fmt(f)
    }
}

pub fn monodromy(seed: &TriangularSeed) -> IntMatrix {
    seed.monodromy()
}

pub fn intersection_form(seed: &TriangularSeed, k: FormParity) -> IntMatrix {
    seed.intersection_form(k)
}

/// Coordinates of a lattice element in the triangular basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LatticeVector(#[serde(with = "crate::rational::serde_bigint_vec")] pub Vec<BigInt>);

impl LatticeVector {
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::one();
        LatticeVector(v)
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        LatticeVector(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - k·other`
    pub fn sub_scaled(&self, k: &BigInt, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - k * b).collect())
    }
}

/// Weighted graph on vertices `1..=n` with an edge `i -- j` of weight `S_ij`
/// whenever that entry is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDynkinDiagram {
    pub vertices: usize,
    /// `(i, j, weight)` with `i < j`, 1-based.
    pub edges: Vec<(usize, usize, i64)>,
}

pub fn cdd(seed: &TriangularSeed) -> CoxeterDynkinDiagram {
    use num::ToPrimitive;
    let n = seed.rank();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = seed.entry(i, j);
            if !w.is_zero() {
                edges.push((i + 1, j + 1, w.to_i64().expect("edge weight fits in i64")));
            }
        }
    }
    CoxeterDynkinDiagram { vertices: n, edges }
}

impl CoxeterDynkinDiagram {
    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices];
        for &(i, j, _) in &self.edges {
            adj[i - 1].push(j - 1);
            adj[j - 1].push(i - 1);
        }
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Graphviz rendering: solid edges for negative weights, dashed for
    /// positive ones, each labeled with its weight.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{}\" {{\n", name.replace('"', "'"));
        out.push_str("  node [shape=circle];\n");
        for v in 1..=self.vertices {
            out.push_str(&format!("  {v};\n"));
        }
        for &(i, j, w) in &self.edges {
            let style = if w < 0 { "solid" } else { "dashed" };
            out.push_str(&format!("  {i} -- {j} [label=\"{w}\", style={style}];\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Coordinate matrix of `s_a^{(k)}: b ↦ b - I^{(k)}(a, b)·a`.
pub fn reflection_matrix(seed: &TriangularSeed, k: FormParity, a: &LatticeVector) -> Result<IntMatrix> {
    seed.check_len(a)?;
    let form = seed.intersection_form(k);
    if k == FormParity::Even {
        let aa = form.bilinear(&a.0, &a.0)?;
        if aa != BigInt::from(2) {
            return Err(Error::NotARoot(aa.to_string()));
        }
    }
    let n = seed.rank();
    // row vector aᵗ I
    let at_i: Vec<BigInt> = (0..n)
        .map(|j| (0..n).map(|i| &a.0[i] * form.get(i, j)).sum())
        .collect();
    Ok(IntMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { BigInt::one() } else { BigInt::zero() };
        delta - &a.0[i] * &at_i[j]
    }))
}

/// `s_a^{(k)}(b) = b - I^{(k)}(a, b)·a`; `a` must be a root for `k = 0`.
pub fn apply_reflection(
    seed: &TriangularSeed,
    k: FormParity,
    a: &LatticeVector,
    b: &LatticeVector,
) -> Result<LatticeVector> {
    seed.check_len(b)?;
    if k == FormParity::Even {
        let aa = seed.pairing(k, a, a)?;
        if aa != BigInt::from(2) {
            return Err(Error::NotARoot(aa.to_string()));
        }
    }
    let c = seed.pairing(k, a, b)?;
    Ok(b.sub_scaled(&c, a))
}

/// Checks `s_{e_1}···s_{e_n} = (-1)^{k+1}·M` for the basis reflections
/// (`k = 0`) or transvections (`k = 1`).
pub fn reflection_product_check(seed: &TriangularSeed, k: FormParity) -> bool {
    let n = seed.rank();
    let mut prod = IntMatrix::identity(n);
    for i in 0..n {
        let r = reflection_matrix(seed, k, &LatticeVector::basis(n, i)).expect("basis vectors are roots");
        prod = prod.mul(&r).expect("square");
    }
    let m = seed.monodromy();
    let expected = match k {
        FormParity::Even => m.neg(),
        FormParity::Odd => m,
    };
    prod == expected
}

/// `true` when `vᵗ·g·v` is even for all `v`, i.e. `g` has even diagonal.
pub fn has_even_diagonal(g: &IntMatrix) -> bool {
    (0..g.rows()).all(|i| (g.get(i, i) % BigInt::from(2)).is_zero())
}

/// Largest absolute off-diagonal entry of a seed.
pub fn max_abs_off_diagonal(seed: &TriangularSeed) -> BigInt {
    seed.upper_entries().into_iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> TriangularSeed {
        TriangularSeed::from_rows(&[[1, -1], [0, 1]])
    }

    fn a3() -> TriangularSeed {
        TriangularSeed::from_rows(&[[1, -1, 0], [0, 1, -1], [0, 0, 1]])
    }

    #[test]
    fn validation() {
        assert!(validate_seed(IntMatrix::from_rows(&[[1, -1], [0, 1]])).is_ok());
        assert_eq!(
            validate_seed(IntMatrix::from_rows(&[[1, 0], [1, 1]])),
            Err(Error::NotUnitUpperTriangular)
        );
        assert_eq!(
            validate_seed(IntMatrix::from_rows(&[[2, 0], [0, 1]])),
            Err(Error::NotUnitUpperTriangular)
        );
    }

    #[test]
    fn monodromy_examples() {
        let m = a2().monodromy();
        assert_eq!(m, IntMatrix::from_rows(&[[0, 1], [-1, 1]]));
        assert_eq!(a2().monodromy_trace(), BigInt::from(1));
        assert_eq!(TriangularSeed::identity(3).monodromy(), IntMatrix::identity(3));
        let m3 = a3().monodromy();
        assert_eq!(m3, IntMatrix::from_rows(&[[0, 0, 1], [-1, 0, 1], [0, -1, 1]]));
        assert_eq!(m3.trace().unwrap(), BigInt::from(1));
    }

    #[test]
    fn intersection_form_examples() {
        assert_eq!(a2().intersection_form(FormParity::Even), IntMatrix::from_rows(&[[2, -1], [-1, 2]]));
        assert_eq!(a2().intersection_form(FormParity::Odd), IntMatrix::from_rows(&[[0, -1], [1, 0]]));
        assert_eq!(
            TriangularSeed::identity(3).intersection_form(FormParity::Even),
            IntMatrix::identity(3).scale(&BigInt::from(2))
        );
    }

    #[test]
    fn diagram_examples() {
        let d = a3().diagram();
        assert_eq!(d.edges, vec![(1, 2, -1), (2, 3, -1)]);
        assert!(d.is_connected());
        let id = TriangularSeed::identity(2).diagram();
        assert!(id.edges.is_empty());
        assert!(!id.is_connected());
        let dot = a3().diagram().to_dot("A3");
        assert!(dot.contains("1 -- 2 [label=\"-1\", style=solid]"));
        let pos = TriangularSeed::from_rows(&[[1, 2], [0, 1]]).diagram().to_dot("x");
        assert!(pos.contains("style=dashed"));
    }

    #[test]
    fn reflection_examples() {
        let e1 = LatticeVector::basis(2, 0);
        let e2 = LatticeVector::basis(2, 1);
        let sum = LatticeVector::from_i64(&[1, 1]);
        assert_eq!(apply_reflection(&a2(), FormParity::Even, &e1, &e2).unwrap(), sum);
        assert_eq!(apply_reflection(&a2(), FormParity::Even, &e1, &e1).unwrap(), e1.neg());
        assert_eq!(apply_reflection(&a2(), FormParity::Odd, &e1, &e2).unwrap(), sum);
        let not_root = LatticeVector::from_i64(&[1, 0, 1]);
        assert!(matches!(
            apply_reflection(&a3(), FormParity::Even, &not_root, &LatticeVector::basis(3, 0)),
            Err(Error::NotARoot(_))
        ));
    }

    #[test]
    fn product_identity_examples() {
        assert!(reflection_product_check(&a2(), FormParity::Even));
        assert!(reflection_product_check(&a3(), FormParity::Odd));
        assert!(reflection_product_check(&a3(), FormParity::Even));
    }

    #[test]
    fn l_pairing_convention() {
        // L(e_2, e_1) = S_12
        let s = a2();
        let v = s.l_pairing(&LatticeVector::basis(2, 1), &LatticeVector::basis(2, 0)).unwrap();
        assert_eq!(v, BigInt::from(-1));
        let w = s.l_pairing(&LatticeVector::basis(2, 0), &LatticeVector::basis(2, 1)).unwrap();
        assert_eq!(w, BigInt::zero());
    }
}
