//! proptest strategies shared by the property suites.

use proptest::prelude::*;

use bilat_core::braid::{BraidToken, BraidWord};
use bilat_core::data::{a_seed, d_seed, e_seed, tubular_seeds};
use bilat_core::TriangularSeed;

use super::{from_upper, Mat};

/// Unit upper-triangular matrices of rank 2..=`max_n` with entries in
/// `-bound..=bound`.
pub fn seed_mat(max_n: usize, bound: i64) -> impl Strategy<Value = Mat> {
    (2usize..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * (n - 1) / 2).prop_map(move |u| from_upper(n, &u))
    })
}

pub fn seed(max_n: usize, bound: i64) -> impl Strategy<Value = TriangularSeed> {
    seed_mat(max_n, bound).prop_map(|m| TriangularSeed::from_rows(&m))
}

pub fn token(n: usize) -> impl Strategy<Value = BraidToken> {
    prop_oneof![
        4 => (1..n, any::<bool>()).prop_map(|(j, inverse)| BraidToken::Sigma { j, inverse }),
        1 => (1..=n).prop_map(|j| BraidToken::Delta { j }),
    ]
}

pub fn word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(token(n), 0..=max_len).prop_map(BraidWord::new)
}

/// A seed together with a braid word of matching rank.
pub fn seed_and_word(max_n: usize, bound: i64, max_len: usize) -> impl Strategy<Value = (TriangularSeed, BraidWord)> {
    seed(max_n, bound).prop_flat_map(move |s| {
        let n = s.rank();
        (Just(s), word(n, max_len))
    })
}

/// Seeds whose monodromy has all eigenvalues on the unit circle: the
/// ADE diagrams of ranks 2 to 8 and the tubular ones.
pub fn semidefinite_seeds() -> Vec<TriangularSeed> {
    let mut v: Vec<TriangularSeed> = (2..=8).map(a_seed).collect();
    v.extend((4..=8).map(d_seed));
    v.extend((6..=8).map(e_seed));
    v.extend(tubular_seeds().into_iter().map(|(_, s)| s));
    v
}

pub fn semidefinite_seed_and_word(max_len: usize) -> impl Strategy<Value = (TriangularSeed, BraidWord)> {
    prop::sample::select(semidefinite_seeds()).prop_flat_map(move |s| {
        let n = s.rank();
        (Just(s), word(n, max_len))
    })
}
