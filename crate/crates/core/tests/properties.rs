mod common;

use common::{fixtures, PROPERTIES};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config { cases: 20, rng_seed: RngSeed::Fixed(0), failure_persistence: None, ..Config::default() }
}

fn run(name: &str, seed: u64) -> Result<(), TestCaseError> {
    let check = PROPERTIES.iter().find(|(n, _)| *n == name).unwrap().1;
    for f in fixtures() {
        check(&f.gc, seed).map_err(|w| TestCaseError::fail(format!("{}: {w}", f.name)))?;
    }
    Ok(())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ideal_is_stable(seed in any::<u64>()) {
        run("ideal stability", seed)?;
    }

    #[test]
    fn transpositions_twist_places(seed in any::<u64>()) {
        run("twisted commutation", seed)?;
    }

    #[test]
    fn places_are_homomorphisms(seed in any::<u64>()) {
        run("place homomorphism", seed)?;
    }

    #[test]
    fn transpositions_satisfy_coxeter_relations(seed in any::<u64>()) {
        run("braid relations", seed)?;
    }

    #[test]
    fn relations_lie_in_ideal(seed in any::<u64>()) {
        run("relation membership", seed)?;
    }

    #[test]
    fn matrix_action_respects_hermitian_space(seed in any::<u64>()) {
        run("Mat_m(A) action", seed)?;
    }
}
