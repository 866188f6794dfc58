//! Seeded random elements for property checks. All sampling goes through
//! `ChaCha8Rng` so reports are reproducible from the seed alone.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::freealg::{Letter, NcPoly, Word};
use crate::scalar::{CurvePoint, Scalar};

pub use rand::SeedableRng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform length in `0..=max_len`, then uniform letters.
pub fn random_word(rng: &mut SampleRng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Letter::ALL[rng.gen_range(0..5)]).collect()
}

/// One coefficient from `{1, -1, 2, -2, q, p}`.
pub fn random_coefficient(rng: &mut SampleRng, point: &CurvePoint) -> Scalar {
    match rng.gen_range(0..6) {
        0 => Scalar::from(1),
        1 => Scalar::from(-1),
        2 => Scalar::from(2),
        3 => Scalar::from(-2),
        4 => point.q().clone(),
        _ => point.p().clone(),
    }
}

/// A sum of one to three random terms. May be zero when the point makes a
/// coefficient vanish.
pub fn random_element(rng: &mut SampleRng, point: &CurvePoint, max_len: usize) -> NcPoly {
    let terms = rng.gen_range(1..=3);
    let mut f = NcPoly::zero();
    for _ in 0..terms {
        let c = random_coefficient(rng, point);
        f.add_term(random_word(rng, max_len), c);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let pt = CurvePoint::from_t(&2.into());
        let a: Vec<_> = {
            let mut r = rng(7);
            (0..20).map(|_| random_element(&mut r, &pt, 6)).collect()
        };
        let b: Vec<_> = {
            let mut r = rng(7);
            (0..20).map(|_| random_element(&mut r, &pt, 6)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|f| f.max_len() <= 6));
    }
}
