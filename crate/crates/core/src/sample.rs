//! Seeded random elements for property checks and scans.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::element::GroupElement;
use crate::structure::{GarsideStructure, Simple};

pub use rand::SeedableRng;
pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_proper_simple(st: &GarsideStructure, rng: &mut SampleRng) -> Simple {
    let n = st.simple_count();
    st.simple(rng.gen_range(1..n - 1)).unwrap()
}

/// Product of `len` random proper simples or their inverses, `len` drawn
/// uniformly from `0..=max_len`. Its word length is at most `max_len`.
pub fn random_element(
    st: &Arc<GarsideStructure>,
    rng: &mut SampleRng,
    max_len: usize,
) -> GroupElement {
    let len = rng.gen_range(0..=max_len);
    random_element_of_length(st, rng, len)
}

pub fn random_element_of_length(
    st: &Arc<GarsideStructure>,
    rng: &mut SampleRng,
    len: usize,
) -> GroupElement {
    let mut tokens = Vec::with_capacity(len);
    for _ in 0..len {
        let s = random_proper_simple(st, rng);
        tokens.push((s, if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    GroupElement::normalize(st, &tokens).expect("simples belong to the structure")
}

/// Product of `len` random proper simples.
pub fn random_positive(
    st: &Arc<GarsideStructure>,
    rng: &mut SampleRng,
    len: usize,
) -> GroupElement {
    let simples: Vec<Simple> = (0..len).map(|_| random_proper_simple(st, rng)).collect();
    GroupElement::from_simples(st, &simples)
}
