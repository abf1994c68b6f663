//! Embedded reference data: seed matrices of the ADE and tubular diagrams and
//! the characteristic polynomials of the quasi-Coxeter classes.
//!
//! The shipped `data/reference.json` is produced by [`generate`]; a test
//! keeps the two in sync (`BILAT_REGENERATE=1` rewrites the file).

use std::collections::BTreeMap;

use num::{BigInt, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::lattice::TriangularSeed;
use crate::linalg::{IntMatrix, IntPolynomial};

/// `Π (t^k + c)^e` with `c = ±1` and `e` possibly negative.
pub type ClosedForm = Vec<(u32, i8, i32)>;

/// Expands a closed form; every division must be exact.
pub fn expand_closed_form(form: &[(u32, i8, i32)]) -> IntPolynomial {
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for &(k, c, e) in form {
        let f = IntPolynomial::binomial(k as usize, i64::from(c)).pow(e.unsigned_abs());
        if e >= 0 {
            num = num.mul(&f);
        } else {
            den = den.mul(&f);
        }
    }
    num.div_exact(&den).expect("closed form divides exactly")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub symbol: String,
    pub family: char,
    pub rank: usize,
    /// `[k, c, e]` triples of `Π (t^k + c)^e`.
    pub closed_form: ClosedForm,
    pub char_poly: IntPolynomial,
    pub trace: i64,
    /// The Coxeter class of the lattice.
    pub coxeter: bool,
}

impl ClassRow {
    fn new(symbol: String, family: char, rank: usize, closed_form: ClosedForm, coxeter: bool) -> Self {
        let char_poly = expand_closed_form(&closed_form);
        assert_eq!(char_poly.degree(), rank, "{symbol}: degree must equal rank");
        let trace = -char_poly.coeff(rank.saturating_sub(1));
        let trace = if rank == 0 { 0 } else { i64::try_from(trace).expect("small trace") };
        ClassRow { symbol, family, rank, closed_form, char_poly, trace, coxeter }
    }
}

/// Rows for type `A_n`: only the Coxeter class.
pub fn a_rows(n: usize) -> Vec<ClassRow> {
    vec![ClassRow::new(format!("A_{n}"), 'A', n, vec![(n as u32 + 1, -1, 1), (1, -1, -1)], true)]
}

/// Rows for type `D_n`: the Coxeter class and `D_n(a_j)`, `1 ≤ j < ⌊n/2⌋`.
pub fn d_rows(n: usize) -> Vec<ClassRow> {
    assert!(n >= 4, "D_n needs n >= 4");
    let k = n as u32;
    let mut rows = vec![ClassRow::new(format!("D_{n}"), 'D', n, vec![(k - 1, 1, 1), (1, 1, 1)], true)];
    for j in 1..(k / 2) {
        rows.push(ClassRow::new(format!("D_{n}(a_{j})"), 'D', n, vec![(k - 1 - j, 1, 1), (j + 1, 1, 1)], false));
    }
    rows
}

fn e_rows() -> Vec<ClassRow> {
    let table: [(&str, usize, &[(u32, i8, i32)]); 17] = [
        ("E_6", 6, &[(6, 1, 1), (3, -1, 1), (2, 1, -1), (1, -1, -1)]),
        ("E_6(a_1)", 6, &[(9, -1, 1), (3, -1, -1)]),
        ("E_6(a_2)", 6, &[(6, -1, 1), (3, 1, 1), (2, -1, -1), (1, 1, -1)]),
        ("E_7", 7, &[(9, 1, 1), (1, 1, 1), (3, 1, -1)]),
        ("E_7(a_1)", 7, &[(7, 1, 1)]),
        ("E_7(a_2)", 7, &[(6, 1, 1), (3, 1, 1), (2, 1, -1)]),
        ("E_7(a_3)", 7, &[(5, 1, 1), (3, 1, 1), (1, 1, -1)]),
        ("E_7(a_4)", 7, &[(3, 1, 3), (1, 1, -2)]),
        ("E_8", 8, &[(15, 1, 1), (1, 1, 1), (5, 1, -1), (3, 1, -1)]),
        ("E_8(a_1)", 8, &[(12, 1, 1), (4, 1, -1)]),
        ("E_8(a_2)", 8, &[(10, 1, 1), (2, 1, -1)]),
        ("E_8(a_3)", 8, &[(6, 1, 2), (2, 1, -2)]),
        ("E_8(a_4)", 8, &[(9, 1, 1), (1, 1, -1)]),
        ("E_8(a_5)", 8, &[(15, -1, 1), (1, -1, 1), (5, -1, -1), (3, -1, -1)]),
        ("E_8(a_6)", 8, &[(5, 1, 2), (1, 1, -2)]),
        ("E_8(a_7)", 8, &[(6, 1, 1), (3, 1, 2), (2, 1, -1), (1, 1, -2)]),
        ("E_8(a_8)", 8, &[(3, 1, 4), (1, 1, -4)]),
    ];
    table
        .iter()
        .map(|(s, n, f)| ClassRow::new(s.to_string(), 'E', *n, f.to_vec(), !s.contains('(')))
        .collect()
}

/// Unit upper-triangular seed with `S_ij = w` for each listed edge
/// `(i, j, w)` (1-based, either order).
pub fn seed_from_edges(n: usize, edges: &[(usize, usize, i64)]) -> TriangularSeed {
    let mut m = IntMatrix::identity(n);
    for &(a, b, w) in edges {
        let (i, j) = (a.min(b) - 1, a.max(b) - 1);
        m.set(i, j, BigInt::from(w));
    }
    crate::lattice::validate_seed(m).expect("edge seed is unit upper-triangular")
}

fn path(n: usize) -> Vec<(usize, usize, i64)> {
    (1..n).map(|i| (i, i + 1, -1)).collect()
}

/// `A_n`: path `1 - 2 - ... - n`.
pub fn a_seed(n: usize) -> TriangularSeed {
    seed_from_edges(n, &path(n))
}

/// `D_n`: path `1 - ... - (n-1)` with `n` attached to `n-2`.
pub fn d_seed(n: usize) -> TriangularSeed {
    assert!(n >= 4);
    let mut e = path(n - 1);
    e.push((n - 2, n, -1));
    seed_from_edges(n, &e)
}

/// `E_n`: path `1 - ... - (n-1)` with `n` attached to `3`.
pub fn e_seed(n: usize) -> TriangularSeed {
    assert!((6..=8).contains(&n));
    let mut e = path(n - 1);
    e.push((3, n, -1));
    seed_from_edges(n, &e)
}

/// The four tubular diagrams; solid edges `-1`, the dashed double edge `+2`
/// between the last two vertices.
pub fn tubular_seeds() -> Vec<(String, TriangularSeed)> {
    let d4 = seed_from_edges(
        6,
        &[(1, 5, -1), (2, 5, -1), (3, 5, -1), (4, 5, -1), (1, 6, -1), (2, 6, -1), (3, 6, -1), (4, 6, -1), (5, 6, 2)],
    );
    let e6 = seed_from_edges(
        8,
        &[(2, 1, -1), (1, 7, -1), (7, 3, -1), (3, 4, -1), (7, 5, -1), (5, 6, -1), (8, 1, -1), (8, 3, -1), (8, 5, -1), (7, 8, 2)],
    );
    let e7 = seed_from_edges(
        9,
        &[
            (3, 2, -1),
            (2, 1, -1),
            (1, 8, -1),
            (8, 4, -1),
            (4, 5, -1),
            (5, 6, -1),
            (8, 7, -1),
            (9, 1, -1),
            (9, 4, -1),
            (9, 7, -1),
            (8, 9, 2),
        ],
    );
    let e8 = seed_from_edges(
        10,
        &[
            (5, 4, -1),
            (4, 3, -1),
            (3, 2, -1),
            (2, 1, -1),
            (1, 9, -1),
            (9, 6, -1),
            (6, 7, -1),
            (9, 8, -1),
            (10, 1, -1),
            (10, 6, -1),
            (10, 8, -1),
            (9, 10, 2),
        ],
    );
    vec![
        ("D4^(1,1)".into(), d4),
        ("E6^(1,1)".into(), e6),
        ("E7^(1,1)".into(), e7),
        ("E8^(1,1)".into(), e8),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceData {
    pub schema: u32,
    /// Seeds of the ADE diagrams up to rank 8 and of the tubular diagrams.
    pub seeds: BTreeMap<String, TriangularSeed>,
    /// Quasi-Coxeter classes for every type up to rank 12.
    pub classes: Vec<ClassRow>,
}

/// Builds the reference data from the closed forms and edge lists.
pub fn generate() -> ReferenceData {
    let mut seeds = BTreeMap::new();
    for n in 1..=8 {
        seeds.insert(format!("A_{n}"), a_seed(n));
    }
    for n in 4..=8 {
        seeds.insert(format!("D_{n}"), d_seed(n));
    }
    for n in 6..=8 {
        seeds.insert(format!("E_{n}"), e_seed(n));
    }
    for (name, s) in tubular_seeds() {
        seeds.insert(name, s);
    }
    let mut classes = Vec::new();
    for n in 1..=12 {
        classes.extend(a_rows(n));
    }
    for n in 4..=12 {
        classes.extend(d_rows(n));
    }
    classes.extend(e_rows());
    ReferenceData { schema: 1, seeds, classes }
}

pub fn generate_json() -> String {
    let mut s = serde_json::to_string_pretty(&generate()).expect("serializable");
    s.push('\n');
    s
}

pub const SHIPPED_JSON: &str = include_str!("../data/reference.json");

static DATA: Lazy<ReferenceData> =
    Lazy::new(|| serde_json::from_str(SHIPPED_JSON).expect("shipped reference data parses"));

pub fn reference() -> &'static ReferenceData {
    &DATA
}

/// A named seed from the embedded data, e.g. `"E_7"` or `"E8^(1,1)"`.
pub fn seed(name: &str) -> Option<TriangularSeed> {
    DATA.seeds.get(name).cloned()
}

/// All quasi-Coxeter class rows of one type; `A` and `D` rows beyond the
/// embedded range are generated on demand.
pub fn class_rows(family: char, rank: usize) -> Vec<ClassRow> {
    let embedded: Vec<ClassRow> =
        DATA.classes.iter().filter(|r| r.family == family && r.rank == rank).cloned().collect();
    if !embedded.is_empty() {
        return embedded;
    }
    match family {
        'A' if rank >= 1 => a_rows(rank),
        'D' if rank >= 4 => d_rows(rank),
        _ => Vec::new(),
    }
}

/// Trace of a monic polynomial's companion: minus the subleading coefficient.
pub fn poly_trace(p: &IntPolynomial) -> BigInt {
    if p.degree() == 0 {
        BigInt::zero()
    } else {
        -p.coeff(p.degree() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_data_is_current() {
        let fresh = generate_json();
        if std::env::var_os("BILAT_REGENERATE").is_some() {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/reference.json");
            std::fs::write(path, &fresh).unwrap();
            return;
        }
        assert_eq!(SHIPPED_JSON, fresh, "run with BILAT_REGENERATE=1 to refresh data/reference.json");
    }

    #[test]
    fn closed_forms_expand() {
        // (t^9 - 1)/(t^3 - 1) = t^6 + t^3 + 1
        assert_eq!(expand_closed_form(&[(9, -1, 1), (3, -1, -1)]), IntPolynomial::from_i64(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(a_rows(3)[0].char_poly, IntPolynomial::from_i64(&[1, 1, 1, 1]));
        assert_eq!(d_rows(4)[0].char_poly, IntPolynomial::from_i64(&[1, 1, 0, 1, 1]));
    }

    #[test]
    fn class_traces_match_table() {
        let expected = [
            ("E_6", -1),
            ("E_6(a_1)", 0),
            ("E_6(a_2)", 1),
            ("E_7", -1),
            ("E_7(a_1)", 0),
            ("E_7(a_2)", 0),
            ("E_7(a_3)", 1),
            ("E_7(a_4)", 2),
            ("E_8", -1),
            ("E_8(a_1)", 0),
            ("E_8(a_2)", 0),
            ("E_8(a_3)", 0),
            ("E_8(a_4)", 1),
            ("E_8(a_5)", 1),
            ("E_8(a_6)", 2),
            ("E_8(a_7)", 2),
            ("E_8(a_8)", 4),
        ];
        let rows = e_rows();
        for (sym, tr) in expected {
            let row = rows.iter().find(|r| r.symbol == sym).unwrap();
            assert_eq!(row.trace, tr, "{sym}");
        }
        for n in 4..=12 {
            for r in d_rows(n) {
                assert_eq!(r.trace, if r.coxeter { -1 } else { 0 }, "{}", r.symbol);
            }
        }
        for n in 1..=12 {
            assert_eq!(a_rows(n)[0].trace, -1);
        }
    }

    #[test]
    fn polynomials_distinct_within_type() {
        for fam in ['D', 'E'] {
            for n in 4..=12 {
                let rows = class_rows(fam, n);
                for (i, a) in rows.iter().enumerate() {
                    for b in &rows[i + 1..] {
                        assert_ne!(a.char_poly, b.char_poly, "{} vs {}", a.symbol, b.symbol);
                    }
                }
            }
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(seed("A_2").unwrap(), TriangularSeed::from_rows(&[[1, -1], [0, 1]]));
        assert!(seed("E8^(1,1)").is_some());
        assert_eq!(class_rows('A', 20).len(), 1);
        assert_eq!(class_rows('D', 13).len(), 6);
        assert!(class_rows('E', 9).is_empty());
    }
}
