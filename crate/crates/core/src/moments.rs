//! Higher moments of a spectrum, Bernoulli numbers and the Bernoulli
//! moments `Γ_2k(Sp, ν)` defined by
//! `Σ Γ_2k t^2k/(2k)! = V(Sp) · exp(ν · log((t/2)/sinh(t/2)))`.

use std::sync::Mutex;

use num::{BigInt, One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Spectrum;
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, is_nonpositive_integer, rat, serde_rational, serde_rational_vec, to_f64, Rational};

static BERNOULLI: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(vec![Rational::one()]));

fn binomials(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..m {
        let next = &row[k] * BigInt::from(m - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `B_m` from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`, `B_0 = 1` (so `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap();
    while cache.len() <= m {
        let k = cache.len();
        let c = binomials(k + 1);
        let s: Rational = (0..k).map(|j| Rational::from_integer(c[j].clone()) * &cache[j]).sum();
        cache.push(-s / int(k as i64 + 1));
    }
    cache[m].clone()
}

/// `B_2k`.
pub fn bernoulli_number(two_k: usize) -> Rational {
    bernoulli(two_k)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentVector {
    /// `V_0, V_2, ..., V_2K`.
    #[serde(with = "serde_rational_vec")]
    pub v: Vec<Rational>,
}

impl MomentVector {
    pub fn k(&self) -> usize {
        self.v.len() - 1
    }

    /// `V_2k`.
    pub fn get(&self, k: usize) -> &Rational {
        &self.v[k]
    }
}

/// Power sums `V_2k = Σ α_j^2k` for `k ≤ K`.
pub fn moments(sp: &Spectrum, k_max: usize) -> MomentVector {
    let squares: Vec<Rational> = sp.alphas().iter().map(|a| a * a).collect();
    let mut powers = vec![Rational::one(); squares.len()];
    let mut v = Vec::with_capacity(k_max + 1);
    for _ in 0..=k_max {
        v.push(powers.iter().sum());
        for (p, s) in powers.iter_mut().zip(&squares) {
            *p *= s;
        }
    }
    MomentVector { v }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BernoulliMomentVector {
    #[serde(with = "serde_rational")]
    pub nu: Rational,
    /// `Γ_0, Γ_2, ..., Γ_2K`.
    #[serde(with = "serde_rational_vec")]
    pub gamma: Vec<Rational>,
}

impl BernoulliMomentVector {
    /// `Γ_2k`.
    pub fn get(&self, k: usize) -> &Rational {
        &self.gamma[k]
    }

    /// `(-1)^k Γ_2k ≥ 0` for every computed `k`.
    pub fn alternating_nonnegative(&self) -> bool {
        self.gamma
            .iter()
            .enumerate()
            .all(|(k, g)| if k % 2 == 0 { !g.is_negative() } else { !g.is_positive() })
    }
}

/// Coefficients `c_i` of `t^i` (i ≤ deg) of `exp(g)` for a series with
/// `g_0 = 0`, using `f' = g'f`.
fn series_exp(g: &[Rational]) -> Vec<Rational> {
    let deg = g.len() - 1;
    let mut f = vec![Rational::zero(); deg + 1];
    f[0] = Rational::one();
    for n in 1..=deg {
        let mut s = Rational::zero();
        for k in 1..=n {
            if !g[k].is_zero() && !f[n - k].is_zero() {
                s += int(k as i64) * &g[k] * &f[n - k];
            }
        }
        f[n] = s / int(n as i64);
    }
    f
}

/// Ordinary coefficients of `log((t/2)/sinh(t/2)) = Σ -B_2k/(2k) t^2k/(2k)!`
/// up to `t^2K`.
fn log_series(k_max: usize) -> Vec<Rational> {
    let mut g = vec![Rational::zero(); 2 * k_max + 1];
    for k in 1..=k_max {
        let denom = Rational::from_integer(factorial(2 * k) * BigInt::from(2 * k));
        g[2 * k] = -bernoulli(2 * k) / denom;
    }
    g
}

/// `exp(ν · log((t/2)/sinh(t/2)))` up to `t^2K`, ordinary coefficients.
fn weight_series(nu: &Rational, k_max: usize) -> Vec<Rational> {
    let g: Vec<Rational> = log_series(k_max).into_iter().map(|c| c * nu).collect();
    series_exp(&g)
}

/// Exact `Γ_0, ..., Γ_2K`.
pub fn bernoulli_moments(sp: &Spectrum, nu: &Rational, k_max: usize) -> BernoulliMomentVector {
    bernoulli_moments_of(&moments(sp, k_max), nu)
}

/// Same, from precomputed power sums.
pub fn bernoulli_moments_of(v: &MomentVector, nu: &Rational) -> BernoulliMomentVector {
    let k_max = v.k();
    let w = weight_series(nu, k_max);
    let fact: Vec<BigInt> = (0..=2 * k_max).map(factorial).collect();
    let gamma = (0..=k_max)
        .map(|k| {
            // coefficient of t^2k in V(t)·W(t), times (2k)!
            let c: Rational = (0..=k)
                .map(|l| &v.v[l] / Rational::from_integer(fact[2 * l].clone()) * &w[2 * (k - l)])
                .sum();
            c * Rational::from_integer(fact[2 * k].clone())
        })
        .collect();
    BernoulliMomentVector { nu: nu.clone(), gamma }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitSequence {
    /// Terms for `k = 1..=K`.
    pub terms: Vec<f64>,
    /// `Σ cos(2π α_j)`.
    pub target: f64,
}

impl LimitSequence {
    pub fn last_error(&self) -> f64 {
        self.terms.last().map_or(f64::NAN, |t| (t - self.target).abs())
    }
}

/// `(-1)^k Γ_2k (2π)^2k Γ(ν) / (2·(2k)!·(2k)^(ν-1))` for `k = 1..=K`, which
/// tends to `Σ cos(2π α_j)`. Floating point, diagnostic only.
pub fn limit_sequence(sp: &Spectrum, nu: &Rational, k_max: usize) -> Result<LimitSequence> {
    if is_nonpositive_integer(nu) {
        return Err(Error::NonpositiveIntegerNu(format_rational(nu)));
    }
    let bm = bernoulli_moments(sp, nu, k_max);
    let nu_f = to_f64(nu);
    let gamma_nu = statrs::function::gamma::gamma(nu_f);
    let two_pi = 2.0 * std::f64::consts::PI;
    let terms = (1..=k_max)
        .map(|k| {
            // Γ_2k/(2k)! stays exact until the final conversion.
            let c = to_f64(&(&bm.gamma[k] / Rational::from_integer(factorial(2 * k))));
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let tk = (2 * k) as f64;
            sign * c * two_pi.powi(2 * k as i32) * gamma_nu / (2.0 * tk.powf(nu_f - 1.0))
        })
        .collect();
    let target = sp.alphas().iter().map(|a| (two_pi * to_f64(a)).cos()).sum();
    Ok(LimitSequence { terms, target })
}

/// `(1/30) · n · Σ (1/2 - w_i) w_i (1 - w_i)` for weights in `(0, 1/2]`.
pub fn gamma4_closed_form(weights: &[Rational], n: u64) -> Result<Rational> {
    let half = rat(1, 2);
    let mut s = Rational::zero();
    for w in weights {
        if !w.is_positive() || *w > half {
            return Err(Error::WeightOutOfRange(format_rational(w)));
        }
        s += (&half - w) * w * (Rational::one() - w);
    }
    Ok(s * int(n as i64) / int(30))
}

/// `(1/240) · n · ν`.
pub fn gamma4_upper_bound(n: u64, nu: &Rational) -> Rational {
    int(n as i64) * nu / int(240)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(xs: &[(i64, i64)]) -> Spectrum {
        Spectrum::new(xs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_number(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn power_sums() {
        let m = moments(&sp(&[(-1, 4), (0, 1), (1, 4)]), 2);
        assert_eq!(m.v, vec![int(3), rat(1, 8), rat(1, 128)]);
        assert_eq!(moments(&Spectrum::zeros(5), 3).v, vec![int(5), int(0), int(0), int(0)]);
    }

    #[test]
    fn low_order_moments() {
        let a2 = sp(&[(-1, 6), (1, 6)]);
        let g = bernoulli_moments(&a2, &rat(1, 3), 3);
        assert_eq!(g.gamma[0], int(2));
        assert_eq!(g.gamma[1], Rational::zero());
        let a3 = sp(&[(-1, 4), (0, 1), (1, 4)]);
        let g = bernoulli_moments(&a3, &rat(1, 2), 2);
        assert_eq!(g.gamma[1], Rational::zero());
        assert_eq!(g.gamma[2], rat(3, 640));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(gamma4_closed_form(&[rat(1, 3), rat(1, 3)], 4).unwrap(), rat(4, 405));
        assert_eq!(gamma4_closed_form(&[rat(1, 2)], 1).unwrap(), Rational::zero());
        assert_eq!(gamma4_closed_form(&[rat(1, 4)], 3).unwrap(), rat(3, 640));
        assert!(matches!(gamma4_closed_form(&[rat(2, 3)], 1), Err(Error::WeightOutOfRange(_))));
    }

    #[test]
    fn limit_guard() {
        let a2 = sp(&[(-1, 6), (1, 6)]);
        assert!(matches!(limit_sequence(&a2, &int(0), 5), Err(Error::NonpositiveIntegerNu(_))));
        assert!(matches!(limit_sequence(&a2, &int(-3), 5), Err(Error::NonpositiveIntegerNu(_))));
    }
}
