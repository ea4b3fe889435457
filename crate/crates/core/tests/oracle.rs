//! Completion against a classical Buchberger run on finite expansions.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dgb_core::completion::{sigma_gbasis_adaptive, sigma_gbasis_truncated, verify_sigma_gbasis, CompletionOptions, Status};
use dgb_core::reduction::{Reducers, ShiftPolicy};
use dgb_core::shift::enumerate_up_to_degree;
use dgb_core::Monomial;

use common::{buchberger, VarIndex};

/// Minimal generators of the monomial ideal spanned by the shifted leading
/// monomials of order at most `d`.
fn truncated_lms(lms: &[Monomial], rank: usize, d: u64) -> BTreeSet<Monomial> {
    let mut all = Vec::new();
    for m in lms {
        let Some(o) = m.ord().finite() else {
            all.push(m.clone());
            continue;
        };
        if o > d {
            continue;
        }
        for s in enumerate_up_to_degree(rank, d - o) {
            all.push(m.shifted(&s));
        }
    }
    all.iter().filter(|m| !all.iter().any(|n| n != *m && n.divides(m))).cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn truncated_run_matches_expansion(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rank = rng.gen_range(1..=2);
        let symbols = rng.gen_range(1..=2);
        let ring = common::random_ring(&mut rng, symbols, rank);
        let n = ring.signature().symbols().len();
        let ord = rng.gen_range(0..=1u64);
        let d = ord + rng.gen_range(0..=2u64);
        let count = rng.gen_range(1..=2);
        let gens: Vec<_> = (0..count).map(|_| common::random_ord_homogeneous(&mut rng, &ring, ord, 2)).collect();

        let t = sigma_gbasis_truncated(&ring, &gens, d as i64).unwrap();
        prop_assert_eq!(t.status, Status::CompleteUpToOrder(d));
        let ours = truncated_lms(&t.leading_monomials(), rank, d);

        let index = VarIndex::up_to_degree(n, rank, d);
        let mut expansion = Vec::new();
        for g in &gens {
            for s in enumerate_up_to_degree(rank, d - ord) {
                expansion.push(index.to_dense(&g.shifted(&s)).unwrap());
            }
        }
        let order = index.ring_order(&ring);
        let gb = buchberger(&order, &expansion);
        let theirs: BTreeSet<Monomial> = gb.iter().map(|f| index.exp_to_monomial(&f[0].0)).collect();
        prop_assert_eq!(ours, theirs);
    }

    #[test]
    fn adaptive_result_is_a_basis_of_the_input(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rank = rng.gen_range(1..=2);
        let ring = common::random_ring(&mut rng, 1, rank);
        let gens: Vec<_> = (0..2).map(|_| common::random_ord_homogeneous(&mut rng, &ring, 1, 2)).collect();
        let opts = CompletionOptions { max_pairs: 500, max_order: 6, ..Default::default() };
        let b = sigma_gbasis_adaptive(&ring, &gens, &opts).unwrap();
        if b.status == Status::Complete {
            prop_assert!(verify_sigma_gbasis(&ring, &b.elements).unwrap().is_basis);
            let reducers = Reducers::new(&ring, b.elements.iter().cloned());
            for g in &gens {
                prop_assert!(reducers.reduce_full(&ring, g, ShiftPolicy::Unbounded, None).is_zero());
            }
        }
    }
}
