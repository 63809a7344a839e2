//! Seeded random test data: pairs of monomial-ideal quotients in four
//! variables whose dimensions sum below the ring dimension and whose tensor
//! product has finite length.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{EngineError, Result};
use crate::field::FieldSpec;
use crate::module::FPModule;
use crate::ring::{parse_polynomial, MonomialOrder, QuotientRing, RingSpec};

pub fn vanishing_suite_ring() -> Arc<QuotientRing> {
    let base = RingSpec::new(
        FieldSpec::QQ,
        vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
        MonomialOrder::Grevlex,
    )
    .expect("fixed ring spec");
    QuotientRing::polynomial(&base)
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng, ring: &Arc<QuotientRing>) -> Result<FPModule> {
    let ngens = rng.gen_range(2..=4usize);
    let mut gens = Vec::with_capacity(ngens);
    for _ in 0..ngens {
        // biased toward pure powers so finite-colength sums show up often
        let text = if rng.gen_bool(0.6) {
            let v = rng.gen_range(1..=4u32);
            let e = rng.gen_range(1..=2u32);
            format!("x{v}^{e}")
        } else {
            let a = rng.gen_range(1..=4u32);
            let b = rng.gen_range(1..=4u32);
            format!("x{a}*x{b}")
        };
        gens.push(parse_polynomial(&ring.base, &text)?);
    }
    FPModule::cyclic(ring, gens)
}

/// Deterministic stream of pairs (M, N) over QQ[x1..x4] with
/// dim M + dim N < 4 and l(M tensor N) finite, by rejection sampling.
pub fn random_vanishing_pairs(seed: u64, count: usize) -> Result<Vec<(FPModule, FPModule)>> {
    let ring = vanishing_suite_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0u32;
    while out.len() < count {
        attempts += 1;
        if attempts > 20_000 {
            return Err(EngineError::ResourceLimitExceeded(
                "rejection sampling for the vanishing suite stalled".into(),
            ));
        }
        let m = random_monomial_ideal(&mut rng, &ring)?;
        let n = random_monomial_ideal(&mut rng, &ring)?;
        let dm = m.krull_dim()?;
        let dn = n.krull_dim()?;
        if dm < 0 || dn < 0 || dm + dn >= 4 {
            continue;
        }
        if m.tensor(&n)?.krull_dim()? > 0 {
            continue;
        }
        out.push((m, n));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_are_deterministic_for_a_fixed_seed() {
        let a = random_vanishing_pairs(7, 3).unwrap();
        let b = random_vanishing_pairs(7, 3).unwrap();
        assert_eq!(a.len(), 3);
        for ((m1, n1), (m2, n2)) in a.iter().zip(&b) {
            assert_eq!(
                format!("{:?}", m1.presentation.matrix),
                format!("{:?}", m2.presentation.matrix)
            );
            assert_eq!(
                format!("{:?}", n1.presentation.matrix),
                format!("{:?}", n2.presentation.matrix)
            );
        }
    }

    #[test]
    fn pairs_satisfy_the_sampling_contract() {
        for (m, n) in random_vanishing_pairs(42, 5).unwrap() {
            let dm = m.krull_dim().unwrap();
            let dn = n.krull_dim().unwrap();
            assert!(dm >= 0 && dn >= 0 && dm + dn < 4, "dims {dm} {dn}");
            assert!(m.tensor(&n).unwrap().krull_dim().unwrap() <= 0);
        }
    }
}
