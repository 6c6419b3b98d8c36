use charstack::invariants::{stay_reflection_group, t_of_walk, walk_invariants, Track};
use charstack::lattice::{quotient_group, Sublattice};
use charstack::matrix::IntMatrix;
use charstack::motive::MotiveClass;
use charstack::oracle::{group_order_bruteforce, recursive_walk_count};
use charstack::rootsys::{Isogeny, RootDatum};
use charstack::walks::{enumerate_walks, InstructionWord, Step};
use num_bigint::BigInt;
use proptest::prelude::*;

const TYPES: [&str; 4] = ["A1", "A2", "B2", "G2"];

fn datum(i: usize) -> RootDatum {
    RootDatum::parse(TYPES[i], Isogeny::SimplyConnected).unwrap()
}

/// A type index, a word over its letters, and a start element index.
fn word_and_start(max_len: usize) -> impl Strategy<Value = (usize, Vec<usize>, usize)> {
    (0..TYPES.len()).prop_flat_map(move |t| {
        let n = datum(t).rank();
        (Just(t), prop::collection::vec(0..n, 0..=max_len), 0..12usize)
    })
}

fn laurent() -> impl Strategy<Value = MotiveClass> {
    prop::collection::vec((-3i64..6, -20i64..20), 0..6).prop_map(|v| MotiveClass::from_coeffs(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mass_identity((t, word, s) in word_and_start(9)) {
        let d = datum(t);
        let elems = d.weyl_elements().unwrap();
        let start = elems[s % elems.len()];
        let mut sum = MotiveClass::zero();
        for w in enumerate_walks(&d, &InstructionWord::new(word.clone()), &start, None).unwrap() {
            let term = &MotiveClass::q_minus_one_pow(w.count(Step::Stay) as u32)
                * &MotiveClass::monomial(1, w.count(Step::Up) as i64);
            sum += &term;
        }
        prop_assert_eq!(sum, MotiveClass::monomial(1, word.len() as i64));
    }

    #[test]
    fn walk_count_matches_recursion((t, word, s) in word_and_start(10)) {
        let d = datum(t);
        let elems = d.weyl_elements().unwrap();
        let start = elems[s % elems.len()];
        let walks = enumerate_walks(&d, &InstructionWord::new(word.clone()), &start, None).unwrap();
        prop_assert_eq!(walks.len() as u128, recursive_walk_count(&d, &word, &start).unwrap());
        prop_assert!(walks.len() <= 1 << word.len());
    }

    #[test]
    fn tracks_agree_on_closed_walks((t, word, _s) in word_and_start(10)) {
        let d = datum(t);
        let e = d.identity();
        for w in enumerate_walks(&d, &InstructionWord::new(word), &e, Some(&e)).unwrap() {
            prop_assert_eq!(stay_reflection_group(&d, &w, Track::Pi), stay_reflection_group(&d, &w, Track::P));
            let (a, b) = (t_of_walk(&d, &w, Track::Pi), t_of_walk(&d, &w, Track::P));
            prop_assert!(a.is_sublattice_of(&b) && b.is_sublattice_of(&a));
        }
    }

    #[test]
    fn surjectivity_three_ways((t, word, s) in word_and_start(8)) {
        let d = datum(t);
        let elems = d.weyl_elements().unwrap();
        let start = elems[s % elems.len()];
        for w in enumerate_walks(&d, &InstructionWord::new(word), &start, None).unwrap() {
            let inv = walk_invariants(&d, &w);
            prop_assert_eq!(inv.surjective, inv.z_p.is_finite());
            prop_assert_eq!(inv.surjective, inv.s_p.is_finite());
            prop_assert_eq!(inv.surjective, inv.pi1_p.is_finite());
        }
    }

    #[test]
    fn quotient_order_matches_coset_count(entries in prop::collection::vec(-4i64..5, 4), extra in prop::collection::vec(-3i64..4, 2)) {
        let sub = IntMatrix::from_i64_rows(&[vec![entries[0], entries[1]], vec![entries[2], entries[3]]]);
        let amb = IntMatrix::from_i64_rows(&[vec![1, extra[0]], vec![0, extra[1].abs().max(1)]]);
        let amb_lat = Sublattice::from_generators(&amb);
        let sub_lat = Sublattice::from_generators(&sub).intersect(&amb_lat).unwrap();
        prop_assume!(sub_lat.is_full_rank());
        let order = quotient_group(&amb_lat, &sub_lat).unwrap().order().unwrap();
        prop_assume!(order <= BigInt::from(64));
        prop_assert_eq!(group_order_bruteforce(&amb, &sub_lat.generators()).unwrap(), order);
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent(), q in 2i64..9) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a * &b).eval_int(q), a.eval_int(q) * b.eval_int(q));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(MotiveClass::from_json(&a.to_json()).unwrap(), a);
    }
}

#[test]
fn walk_counts_exhaustive() {
    for t in 0..TYPES.len() {
        let d = datum(t);
        let n = d.rank();
        for len in 0..=8u32 {
            for idx in 0..n.pow(len) {
                let word: Vec<usize> = (0..len).map(|k| idx / n.pow(k) % n).collect();
                let e = d.identity();
                let walks = enumerate_walks(&d, &InstructionWord::new(word.clone()), &e, None).unwrap();
                assert_eq!(walks.len() as u128, recursive_walk_count(&d, &word, &e).unwrap(), "{word:?}");
            }
        }
    }
}
