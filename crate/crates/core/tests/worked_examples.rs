use charstack::invariants::walk_invariants;
use charstack::lattice::FiniteAbelianGroup;
use charstack::rootsys::{sp4, Isogeny, RootDatum};
use charstack::walks::{InstructionWord, Step, Walk};
use num_bigint::BigInt;

fn steps(s: &str) -> Vec<Step> {
    s.split_whitespace().map(|t| Step::parse(t).unwrap()).collect()
}

fn c2() -> RootDatum {
    RootDatum::parse("C2", Isogeny::SimplyConnected).unwrap()
}

fn sp4_table_one(d: &RootDatum) -> Walk {
    let word = InstructionWord::new(vec![0, 0, 0, 1, 0, 0, 0, 1]);
    Walk::from_steps(d, word, d.identity(), steps("U S D U U S D D")).unwrap()
}

fn sp4_table_two(d: &RootDatum) -> Walk {
    let word = InstructionWord::new(vec![0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0]);
    Walk::from_steps(d, word, d.identity(), steps("U S D U U S U U D D S D D U S D")).unwrap()
}

#[test]
fn sp4_first_table_tracks() {
    let d = c2();
    let (p, pi) = sp4_table_one(&d).track_words(&d);
    assert_eq!(p[1..], ["s1", "s1", "e", "s2", "s1s2", "s1s2", "s2", "e"]);
    assert_eq!(pi[1..], ["s1", "e", "s1", "s2s1", "s1s2s1", "s2s1", "s1s2s1", "s2s1s2s1"]);
}

#[test]
fn sp4_second_table_tracks() {
    let d = c2();
    let (p, pi) = sp4_table_two(&d).track_words(&d);
    assert_eq!(
        p[1..],
        [
            "s1", "s1", "e", "s2", "s1s2", "s1s2", "s2s1s2", "s1s2s1s2", "s2s1s2", "s1s2", "s1s2", "s2", "e",
            "s1", "s1", "e"
        ]
    );
    assert_eq!(
        pi[1..],
        [
            "s1", "e", "s1", "s2s1", "s1s2s1", "s2s1", "s1", "e", "s1", "s2s1", "s1s2s1", "s2s1", "s1", "e",
            "s1", "e"
        ]
    );
}

#[test]
fn sp4_first_table_invariants() {
    let d = c2();
    let inv = walk_invariants(&d, &sp4_table_one(&d));
    assert!(inv.surjective);
    assert!(inv.pi1_p.is_trivial());
    let diags: Vec<[BigInt; 4]> = inv.t_p.basis_vectors().iter().map(|v| sp4::coweight_to_diag(v)).collect();
    let t_expected = charstack::lattice::Sublattice::from_vectors(
        4,
        &[vec![0, 1, 0, -1], vec![1, 0, -1, 0]]
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect::<Vec<_>>(),
    );
    let t_ours = charstack::lattice::Sublattice::from_vectors(4, &diags.iter().map(|d| d.to_vec()).collect::<Vec<_>>());
    assert_eq!(t_ours.basis_vectors(), t_expected.basis_vectors());
    let s = inv.s_p.group().unwrap();
    assert_eq!(s, FiniteAbelianGroup::from_cyclic_orders(&[BigInt::from(2), BigInt::from(2)]));
    assert_eq!(inv.z_p, FiniteAbelianGroup::cyclic(2));
}

#[test]
fn sp4_second_table_invariants() {
    let d = c2();
    let inv = walk_invariants(&d, &sp4_table_two(&d));
    assert!(inv.surjective);
    assert!(inv.pi1_p.is_trivial());
    let s = inv.s_p.group().unwrap();
    assert_eq!(s, FiniteAbelianGroup::from_cyclic_orders(&[BigInt::from(2), BigInt::from(2)]));
    assert_eq!(inv.z_p, FiniteAbelianGroup::cyclic(2));
}
