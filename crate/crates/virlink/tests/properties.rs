//! Property tests over randomly generated valid codes.

use proptest::prelude::{any, proptest, ProptestConfig};
use proptest::{prop_assert, prop_assert_eq};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use virlink::codes::{
    canonical_form, canonical_key, canonical_relabel, parse_gauss, serialize_gauss, validate,
    GaussCode, Passage, Sign, Symbol,
};
use virlink::invariants::fingerprint;
use virlink::moves::{apply_move, enumerate_moves};
use virlink::surface::{carter_embed, StabilizeKind};

/// Any placement of n label pairs (equal signs, one O one U) across k
/// components is a valid code.
fn random_code(seed: u64, max_crossings: usize, max_components: usize) -> GaussCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(0..=max_crossings);
    let k = rng.gen_range(1..=max_components);
    let mut symbols = Vec::new();
    for label in 1..=n as u32 {
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        symbols.push(Symbol::new(label, Passage::Over, sign));
        symbols.push(Symbol::new(label, Passage::Under, sign));
    }
    symbols.shuffle(&mut rng);
    let mut components = vec![Vec::new(); k];
    for s in symbols {
        components[rng.gen_range(0..k)].push(s);
    }
    GaussCode { components }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_serialize_round_trip(seed in any::<u64>()) {
        let code = random_code(seed, 6, 3);
        prop_assert!(validate(&code).is_valid());
        let text = serialize_gauss(&code);
        prop_assert_eq!(parse_gauss(&text).unwrap(), code);
    }

    #[test]
    fn relabel_idempotent_and_size_preserving(seed in any::<u64>()) {
        let code = random_code(seed, 6, 3);
        let once = canonical_relabel(&code);
        prop_assert_eq!(canonical_relabel(&once), once.clone());
        prop_assert_eq!(once.crossing_count(), code.crossing_count());
        prop_assert_eq!(once.component_count(), code.component_count());
    }

    #[test]
    fn canonical_key_rotation_invariant(seed in any::<u64>()) {
        let code = random_code(seed, 5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdead);
        let rotated = GaussCode {
            components: code
                .components
                .iter()
                .map(|c| {
                    if c.is_empty() {
                        Vec::new()
                    } else {
                        let r = rng.gen_range(0..c.len());
                        (0..c.len()).map(|i| c[(i + r) % c.len()]).collect()
                    }
                })
                .collect(),
        };
        prop_assert_eq!(canonical_key(&code), canonical_key(&rotated));
        prop_assert_eq!(canonical_form(&canonical_form(&code)), canonical_form(&code));
    }

    #[test]
    fn every_move_preserves_fingerprint(seed in any::<u64>()) {
        let code = random_code(seed, 4, 2);
        let fp = fingerprint(&code);
        for (spec, next) in enumerate_moves(&code, code.crossing_count() + 2) {
            prop_assert!(validate(&next).is_valid(), "{:?} broke validity", spec);
            prop_assert_eq!(fingerprint(&next), fp.clone(), "{:?} changed fingerprint", spec);
        }
    }

    #[test]
    fn every_move_inverts_exactly(seed in any::<u64>()) {
        let code = random_code(seed, 5, 3);
        for (spec, next) in enumerate_moves(&code, code.crossing_count() + 2) {
            let inv = spec.inverse(&code);
            let back = apply_move(&next, &inv);
            prop_assert!(back.is_ok(), "inverse of {:?} inapplicable: {:?}", spec, back.err());
            prop_assert_eq!(
                canonical_relabel(&back.unwrap()),
                canonical_relabel(&code),
                "{:?} did not round-trip",
                spec
            );
        }
    }

    #[test]
    fn destabilization_restores_carter(seed in any::<u64>()) {
        let code = random_code(seed, 5, 2);
        let base = carter_embed(&code);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbeef);
        let mut d = base.clone();
        for _ in 0..rng.gen_range(0..5) {
            let faces = d.faces().len();
            let kind = if faces >= 2 && rng.gen_bool(0.5) {
                let a = rng.gen_range(0..faces);
                let mut b = rng.gen_range(0..faces - 1);
                if b >= a {
                    b += 1;
                }
                (a, StabilizeKind::SplitWalkPair { other: b })
            } else {
                (rng.gen_range(0..faces), StabilizeKind::AddHandle)
            };
            d = d.stabilize(kind.0, kind.1).unwrap();
        }
        let back = d.destabilize_fully();
        prop_assert_eq!(&back, &base);
        prop_assert_eq!(back.canonical_key(), base.canonical_key());
        prop_assert_eq!(back.supporting_genus(), base.supporting_genus());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn removal_moves_found_from_both_sides(seed in any::<u64>()) {
        // applying any addition yields a code from which some removal
        // returns to the original
        let code = random_code(seed, 3, 2);
        let key = canonical_key(&code);
        for (spec, next) in enumerate_moves(&code, code.crossing_count() + 2) {
            if matches!(spec, virlink::moves::MoveSpec::R1Add { .. } | virlink::moves::MoveSpec::R2Add { .. }) {
                let found = enumerate_moves(&next, next.crossing_count())
                    .into_iter()
                    .any(|(_, back)| canonical_key(&back) == key);
                prop_assert!(found, "no removal undoes {:?}", spec);
            }
        }
    }
}
