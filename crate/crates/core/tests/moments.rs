mod common;

use bilat_core::cyclotomic::{spectrum_from_monodromy, Spectrum};
use bilat_core::data::a_seed;
use bilat_core::hor::hor_case;
use bilat_core::moments::{
    bernoulli, bernoulli_moments, bernoulli_number, gamma4_closed_form, gamma4_upper_bound, limit_sequence, moments,
};
use bilat_core::Error;
use common::{q, qi, Q};
use rand::{Rng, SeedableRng};

#[test]
fn bernoulli_numbers() {
    assert_eq!(bernoulli_number(0), qi(1));
    assert_eq!(bernoulli_number(2), q(1, 6));
    assert_eq!(bernoulli_number(4), q(-1, 30));
    assert_eq!(bernoulli_number(12), q(-691, 2730));
    assert_eq!(bernoulli(3), qi(0));
    // Sign pattern (-1)^(k-1) B_2k > 0.
    for k in 1..=15 {
        let b = bernoulli_number(2 * k);
        assert_eq!(b > qi(0), k % 2 == 1, "B_{}", 2 * k);
    }
}

#[test]
fn power_moments() {
    let a3 = Spectrum::new(vec![q(-1, 4), qi(0), q(1, 4)]);
    let v = moments(&a3, 2);
    assert_eq!((v.get(0), v.get(1), v.get(2)), (&qi(3), &q(1, 8), &q(1, 128)));

    let z = moments(&Spectrum::zeros(5), 3);
    assert_eq!(z.get(0), &qi(5));
    assert!((1..=3).all(|k| z.get(k) == &qi(0)));

    let s1 = hor_case(&[1, 2, 3, 4, 8, 12, 16], 2).unwrap();
    assert_eq!(moments(&s1.spectrum, 1).get(1), &q(77, 24));
    assert_eq!(s1.variance, q(7, 48));
}

#[test]
fn gamma_values() {
    let a2 = Spectrum::new(vec![q(-1, 6), q(1, 6)]);
    let bm = bernoulli_moments(&a2, &q(1, 3), 3);
    assert_eq!(bm.get(0), &qi(2));
    assert_eq!(bm.get(1), &qi(0));

    let a3 = spectrum_from_monodromy(&a_seed(3)).unwrap();
    let bm = bernoulli_moments(&a3, &q(1, 2), 2);
    assert_eq!(bm.get(1), &qi(0));
    assert_eq!(bm.get(2), &q(3, 640));
    assert!(bm.alternating_nonnegative());
}

/// The literal value 27/80 does not survive exact evaluation; the exact
/// value is 7777/23040 = 0.33754..., whose decimal prefix matches 0.3375.
#[test]
fn counterexample_gamma4_exact_value() {
    let s1 = hor_case(&[1, 2, 3, 4, 8, 12, 16], 2).unwrap();
    let nu = q(7, 4);
    assert_eq!(s1.spectrum.span(), nu);
    let alphas = common::lib_spectrum(&s1.spectrum);
    let want = common::bernoulli_moments(&alphas, &nu);
    let bm = bernoulli_moments(&s1.spectrum, &nu, 3);
    assert_eq!(bm.get(2), &want[2]);
    assert_eq!(bm.get(2), &q(7777, 23040));
    assert_ne!(bm.get(2), &q(27, 80));
    let f = common::to_f64(bm.get(2));
    assert!((0.3375..0.3376).contains(&f), "{f}");
    assert!(bm.get(2) > &q(77, 480));
    assert_eq!(gamma4_upper_bound(22, &nu), q(77, 480));
}

#[test]
fn closed_forms_on_random_spectra() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=12);
        let alphas: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-60..=60), rng.gen_range(1..=60))).collect();
        let nu = q(rng.gen_range(1..=90), rng.gen_range(1..=30));
        let want = common::bernoulli_moments(&alphas, &nu);
        let got = bernoulli_moments(&Spectrum::new(alphas), &nu, 3);
        for k in 0..4 {
            assert_eq!(got.get(k), &want[k], "Γ_{}", 2 * k);
        }
    }
}

#[test]
fn gamma4_closed_forms() {
    // A_2^(m+1) weights: (1/30)·2^(m+1)(m+1)/27.
    for m in 0..6u32 {
        let w = vec![q(1, 3); m as usize + 1];
        let n = 2u64.pow(m + 1);
        let want = q(1, 30) * qi(n as i64 * (m as i64 + 1)) / qi(27);
        assert_eq!(gamma4_closed_form(&w, n).unwrap(), want);
    }
    assert_eq!(gamma4_closed_form(&[q(1, 3), q(1, 3)], 4).unwrap(), q(4, 405));
    assert_eq!(gamma4_closed_form(&[q(1, 2)], 1).unwrap(), qi(0));
    assert_eq!(gamma4_closed_form(&[q(1, 4)], 3).unwrap(), q(3, 640));
    assert!(matches!(gamma4_closed_form(&[q(2, 3)], 1), Err(Error::WeightOutOfRange(_))));
}

#[test]
fn limit_sequences() {
    let a2 = Spectrum::new(vec![q(-1, 6), q(1, 6)]);
    let l = limit_sequence(&a2, &q(1, 3), 30).unwrap();
    assert_eq!(l.terms.len(), 30);
    assert!((l.target - 1.0).abs() < 1e-12);
    assert!(l.last_error() < 2e-2, "{}", l.last_error());

    let a3 = Spectrum::new(vec![q(-1, 4), qi(0), q(1, 4)]);
    let l = limit_sequence(&a3, &q(1, 2), 30).unwrap();
    assert!((l.target - 1.0).abs() < 1e-12);
    assert!(l.last_error() < 2.5e-2, "{}", l.last_error());
    // Error shrinks like 1/k, so Richardson extrapolation lands much closer.
    let l60 = limit_sequence(&a3, &q(1, 2), 60).unwrap();
    let rich = 2.0 * l60.terms[59] - l60.terms[29];
    assert!((rich - l60.target).abs() < 1e-3, "{rich}");
    let errs: Vec<f64> = [10, 20, 30].iter().map(|&k| (l60.terms[k - 1] - l60.target).abs()).collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");

    assert!(matches!(limit_sequence(&a2, &qi(0), 5), Err(Error::NonpositiveIntegerNu(_))));
    assert!(matches!(limit_sequence(&a2, &qi(-2), 5), Err(Error::NonpositiveIntegerNu(_))));
}
