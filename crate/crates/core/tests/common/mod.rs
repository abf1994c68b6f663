//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's algorithms; inputs and outputs are plain
//! vectors so results can be compared against library values.
#![allow(dead_code)]

pub mod strategies;

use num::integer::gcd;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

pub fn qi(p: i64) -> Q {
    Q::from_integer(BigInt::from(p))
}

// ---- integer polynomials, coefficients low to high ----

pub type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient by a monic divisor if the remainder vanishes.
pub fn poly_div_exact(a: &[i64], b: &[i64]) -> Option<Poly> {
    assert_eq!(*b.last().unwrap(), 1, "monic divisor");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return None;
    }
    let dq = r.len() - b.len();
    let mut quot = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = r[k + b.len() - 1];
        quot[k] = c;
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= c * y;
        }
    }
    r.iter().all(|&x| x == 0).then(|| trim(quot))
}

/// `(-1)^deg·p(-t)`: the char poly of `-A` from that of `A`.
pub fn negate_var(p: &[i64]) -> Poly {
    let deg = p.len() - 1;
    p.iter()
        .enumerate()
        .map(|(i, &c)| if (deg - i) % 2 == 1 { -c } else { c })
        .collect()
}

/// `t^k + c`.
pub fn binomial(k: usize, c: i64) -> Poly {
    let mut p = vec![0i64; k + 1];
    p[0] = c;
    p[k] = 1;
    p
}

pub fn cyclotomic(m: u64) -> Poly {
    let mut p = binomial(m as usize, -1);
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic(d)).unwrap();
        }
    }
    p
}

/// `Π (t^k + c)^e` with possibly negative exponents.
pub fn closed_form(factors: &[(usize, i64, i32)]) -> Poly {
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for &(k, c, e) in factors {
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                num = poly_mul(&num, &binomial(k, c));
            } else {
                den = poly_mul(&den, &binomial(k, c));
            }
        }
    }
    poly_div_exact(&num, &den).expect("closed form is a polynomial")
}

/// Multiplicities of `Φ_m` in `p`, or `None` if `p` has another factor.
pub fn cyclotomic_multiplicities(p: &[i64]) -> Option<Vec<(u64, usize)>> {
    let mut rest = p.to_vec();
    let mut out = Vec::new();
    let mut m = 1u64;
    while rest.len() > 1 && m <= 2000 {
        let phi = cyclotomic(m);
        let mut e = 0;
        while let Some(r) = poly_div_exact(&rest, &phi) {
            rest = r;
            e += 1;
        }
        if e > 0 {
            out.push((m, e));
        }
        m += 1;
    }
    (rest == [1] || rest == [-1]).then_some(out)
}

/// Sorted spectrum: each root `λ = e^{-2πiα}` of `p` contributes `α`
/// centered in `(-1/2, 1/2)`; values at `±1/2` alternate, `-1/2` first.
pub fn spectrum_of_poly(p: &[i64]) -> Option<Vec<Q>> {
    let mut alphas = Vec::new();
    let mut halves = 0usize;
    for (m, e) in cyclotomic_multiplicities(p)? {
        for k in 0..m as i64 {
            if gcd(k, m as i64) != 1 && !(m == 1 && k == 0) {
                continue;
            }
            // λ = e^{2πik/m}, so α ≡ -k/m.
            let mut a = q(-k, m as i64);
            while a < q(-1, 2) {
                a += qi(1);
            }
            while a > q(1, 2) {
                a -= qi(1);
            }
            for _ in 0..e {
                if a == q(1, 2) || a == q(-1, 2) {
                    halves += 1;
                } else {
                    alphas.push(a.clone());
                }
            }
        }
    }
    for i in 0..halves {
        alphas.push(if i % 2 == 0 { q(-1, 2) } else { q(1, 2) });
    }
    alphas.sort();
    Some(alphas)
}

pub fn power_sum(alphas: &[Q], k: i32) -> Q {
    alphas.iter().map(|a| num::pow::pow(a.clone(), k as usize)).sum()
}

pub fn span(alphas: &[Q]) -> Q {
    alphas.last().unwrap() - alphas.first().unwrap()
}

/// `Γ_0 ... Γ_6` from their expansions in power sums.
pub fn bernoulli_moments(alphas: &[Q], nu: &Q) -> [Q; 4] {
    let v = |k| power_sum(alphas, k);
    let (v0, v2, v4, v6) = (qi(alphas.len() as i64), v(2), v(4), v(6));
    let nu2 = nu * nu;
    let nu3 = &nu2 * nu;
    let g2 = &v2 - &v0 * nu * q(1, 12);
    let g4 = &v4 - &v2 * nu * q(1, 2) + &v0 * (nu * q(1, 120) + &nu2 * q(1, 48));
    let g6 = &v6 - &v4 * nu * q(5, 4) + &v2 * (nu * q(1, 8) + &nu2 * q(5, 16))
        - &v0 * (nu * q(1, 252) + &nu2 * q(1, 96) + &nu3 * q(5, 576));
    [v0, g2, g4, g6]
}

// ---- integer matrices as Vec<Vec<i64>> ----

pub type Mat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| a[i][l].checked_mul(b[l][j]).expect("entries stay small")).sum())
                .collect()
        })
        .collect()
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn mat_scale(a: &Mat, k: i64) -> Mat {
    a.iter().map(|r| r.iter().map(|x| k * x).collect()).collect()
}

pub fn mat_pow(a: &Mat, e: usize) -> Mat {
    (0..e).fold(identity(a.len()), |acc, _| mat_mul(&acc, a))
}

/// Inverse of a unit upper-triangular matrix by back substitution.
pub fn unit_upper_inverse(s: &Mat) -> Mat {
    let n = s.len();
    let mut inv = identity(n);
    for col in 0..n {
        for i in (0..col).rev() {
            let acc: i64 = (i + 1..=col).map(|k| s[i][k] * inv[k][col]).sum();
            inv[i][col] = -acc;
        }
    }
    inv
}

/// `S⁻¹·Sᵗ`.
pub fn monodromy(s: &Mat) -> Mat {
    mat_mul(&unit_upper_inverse(s), &transpose(s))
}

pub fn trace(a: &Mat) -> i64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn sym(s: &Mat) -> Mat {
    mat_add(s, &transpose(s))
}

/// Characteristic polynomial `det(t - A)` by Faddeev–LeVerrier over Q.
pub fn char_poly(a: &Mat) -> Poly {
    let n = a.len();
    let aq: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
    let mul = |x: &Vec<Vec<Q>>, y: &Vec<Vec<Q>>| -> Vec<Vec<Q>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect())
            .collect()
    };
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for k in 1..=n {
        let am = mul(&aq, &m);
        let tr: Q = (0..n).map(|i| am[i][i].clone()).sum();
        let c = -tr / qi(k as i64);
        coeffs[n - k] = c.clone();
        m = am;
        for i in 0..n {
            m[i][i] += &c;
        }
    }
    coeffs.iter().map(|c| c.to_integer().to_i64().expect("integer coefficients")).collect()
}

/// Evaluates a polynomial at a square matrix (Horner).
pub fn poly_at_matrix(p: &[i64], a: &Mat) -> Mat {
    let n = a.len();
    let mut acc = vec![vec![0i64; n]; n];
    for &c in p.iter().rev() {
        acc = mat_add(&mat_mul(&acc, a), &mat_scale(&identity(n), c));
    }
    acc
}

/// Determinant over Q by Gaussian elimination.
pub fn det(a: &Mat) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    d.to_integer().to_i64().unwrap()
}

/// All leading principal minors positive.
pub fn positive_definite(g: &Mat) -> bool {
    (1..=g.len()).all(|k| {
        let sub: Mat = g[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&sub) > 0
    })
}

/// Connectivity of the graph with an edge wherever `S_ij ≠ 0`, `i < j`.
pub fn connected(s: &Mat) -> bool {
    let n = s.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && (s[i][j] != 0 || s[j][i] != 0) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// Unit upper-triangular matrix from its strictly upper entries, row by row.
pub fn from_upper(n: usize, upper: &[i64]) -> Mat {
    let mut s = identity(n);
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            s[i][j] = *it.next().unwrap();
        }
    }
    s
}

/// Every assignment of `{-1,0,1}` to the strictly upper entries.
pub fn all_unit_seeds(n: usize) -> impl Iterator<Item = Mat> {
    let k = n * (n - 1) / 2;
    (0..3usize.pow(k as u32)).map(move |mut code| {
        let upper: Vec<i64> = (0..k)
            .map(|_| {
                let d = (code % 3) as i64 - 1;
                code /= 3;
                d
            })
            .collect();
        from_upper(n, &upper)
    })
}

/// Number of `x` with `xᵗ·G·x = 2`, found by scanning the box
/// `|x_i| ≤ ⌊√(2·(G⁻¹)_ii)⌋` (the largest coordinate a norm-2 vector
/// can have).
pub fn count_norm_two(g: &Mat) -> usize {
    let n = g.len();
    let d = det(g);
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let idx: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let minor: Mat = idx.iter().map(|&r| idx.iter().map(|&c| g[r][c]).collect()).collect();
            let cof = if n == 1 { 1 } else { det(&minor) };
            // (G⁻¹)_ii = cof/d; largest b with b² ≤ 2·cof/d.
            let mut b = 0i64;
            while (b + 1) * (b + 1) * d <= 2 * cof {
                b += 1;
            }
            b
        })
        .collect();
    let mut x = vec![0i64; n];
    let mut count = 0;
    scan(g, &bounds, 0, &mut x, &mut count);
    count
}

fn scan(g: &Mat, bounds: &[i64], i: usize, x: &mut Vec<i64>, count: &mut usize) {
    let n = g.len();
    if i == n {
        let norm: i64 = (0..n).map(|a| (0..n).map(|b| x[a] * g[a][b] * x[b]).sum::<i64>()).sum();
        if norm == 2 {
            *count += 1;
        }
        return;
    }
    for v in -bounds[i]..=bounds[i] {
        x[i] = v;
        scan(g, bounds, i + 1, x, count);
    }
    x[i] = 0;
}

/// Roots as the orbit of the basis vectors under the simple reflections
/// `s_i(x) = x - (xᵗGe_i)e_i`.
pub fn reflection_closure(g: &Mat) -> usize {
    use std::collections::BTreeSet;
    let n = g.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if seen.insert(e.clone()) {
            stack.push(e);
        }
    }
    while let Some(x) = stack.pop() {
        for i in 0..n {
            let c: i64 = (0..n).map(|a| x[a] * g[a][i]).sum();
            let mut y = x.clone();
            y[i] -= c;
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

pub fn to_i64_rows(m: &bilat_core::IntMatrix) -> Mat {
    m.to_i64_rows().expect("small entries")
}

pub fn lib_poly(p: &bilat_core::IntPolynomial) -> Poly {
    p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
}

pub fn lib_spectrum(sp: &bilat_core::cyclotomic::Spectrum) -> Vec<Q> {
    sp.alphas().to_vec()
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

pub fn to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

/// Primitivity of a lattice basis: the gcd of its maximal minors is 1.
pub fn primitive(basis: &[Vec<i64>]) -> bool {
    let k = basis.len();
    if k == 0 {
        return true;
    }
    let n = basis[0].len();
    let mut g = 0i64;
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let minor: Mat = basis.iter().map(|v| cols.iter().map(|&c| v[c]).collect()).collect();
        g = gcd(g, det(&minor));
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return g == 1;
            }
            i -= 1;
            if cols[i] < n - k + i {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Rank over Q by fraction-free elimination.
pub fn rank(a: &Mat) -> usize {
    let mut m: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let f = &m[i][c] / &m[r][c];
            for j in c..cols {
                let d = &f * &m[r][j];
                m[i][j] -= d;
            }
        }
        r += 1;
    }
    r
}
