use charstack::motive::{naive_motive, MotiveClass, StackSpec};
use charstack::oracle::{ff_count_rank1, FiniteFieldSpec};
use charstack::rootsys::{Isogeny, RootDatum};
use charstack::Error;

fn a1(g: usize, k: usize) -> StackSpec {
    let d = RootDatum::parse("A1", Isogeny::SimplyConnected).unwrap();
    StackSpec::new(d, g, vec![vec![]; k - 1]).unwrap()
}

/// Every admissible eigenvalue tuple of length `k` over `F_q`.
fn admissible(q: usize, g: usize, k: usize) -> Vec<FiniteFieldSpec> {
    let units: Vec<u8> = (1..q as u8).collect();
    let tuples: Vec<Vec<u8>> = match k {
        1 => units.iter().map(|&z| vec![z]).collect(),
        _ => units.iter().flat_map(|&a| units.iter().map(move |&b| vec![a, b])).collect(),
    };
    tuples
        .into_iter()
        .map(|eigenvalues| FiniteFieldSpec { q, genus: g, eigenvalues })
        .filter(|s| !matches!(ff_count_rank1(&FiniteFieldSpec { genus: 0, ..s.clone() }), Err(Error::Precondition(_))))
        .collect()
}

fn agree(g: usize, k: usize, qs: &[usize]) -> usize {
    let m: MotiveClass = naive_motive(&a1(g, k)).unwrap();
    let mut checked = 0;
    for &q in qs {
        for spec in admissible(q, g, k).into_iter().take(2) {
            assert_eq!(ff_count_rank1(&spec).unwrap(), m.eval_int(q as i64), "g={g} k={k} {spec:?}");
            checked += 1;
        }
    }
    checked
}

#[test]
fn genus_one_one_puncture() {
    assert_eq!(agree(1, 1, &[7, 9, 11, 13]), 8);
}

#[test]
fn genus_one_two_punctures() {
    assert!(agree(1, 2, &[7, 9, 11, 13]) >= 2);
}

#[test]
fn genus_two() {
    assert_eq!(agree(2, 1, &[7, 11]), 4);
}

#[test]
fn genus_zero_two_punctures_is_empty() {
    assert!(agree(0, 2, &[11, 13]) >= 1);
}

#[test]
fn small_fields_have_no_generic_regular_class() {
    assert!(admissible(3, 1, 1).is_empty());
    assert!(admissible(5, 1, 1).is_empty());
}
