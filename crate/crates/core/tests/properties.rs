mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(label: &str, v: Vec<String>) -> Result<(), TestCaseError> {
    prop_assert!(v.is_empty(), "{label}: {v:?}");
    Ok(())
}

#[test]
fn bundled_diagrams_with_canonical_states() {
    let mut bad = Vec::new();
    for (name, d) in bundled_diagrams() {
        for v in diagram_violations(&d) {
            bad.push(format!("{name}: {v}"));
        }
        for st in canonical_states(&d) {
            for v in pair_violations(&d, &st) {
                bad.push(format!("{name} {st}: {v}"));
            }
        }
    }
    assert!(bad.is_empty(), "{} violations, first {:?}", bad.len(), &bad[..bad.len().min(10)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn random_braid_pairs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (strands, word, d) = random_braid(&mut rng, 12);
        let st = random_state(&mut rng, d.crossing_count());
        let label = format!("{strands} {word:?} {st}");
        report(&label, pair_violations(&d, &st))?;
        report(&label, oracle_violations(&d, &st))?;
        report(&label, diagram_violations(&d))?;
    }

    #[test]
    fn mirror_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, _, d) = random_braid(&mut rng, 10);
        prop_assert_eq!(d.mirror().mirror(), d.clone());
        prop_assert_eq!(d.mirror().writhe(), -d.writhe());
    }

    #[test]
    fn pd_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, _, d) = random_braid(&mut rng, 10);
        let again = statesurf::parse_pd(&d.to_pd_string()).unwrap();
        prop_assert_eq!(again, d);
    }
}
