use charstack::motive::{
    cell_class, mirror_check, naive_motive, stack_dimension, stringy_motive, CellEnumerator, CellGeometry,
    HandleTwists, MotiveClass, StackSpec, TwistSpec,
};
use charstack::rootsys::{Isogeny, RootDatum, WordSection};
use charstack::walks::{cell_word, enumerate_walks, CellIndex, Handle, Step};
use charstack::Error;

fn sc(t: &str) -> RootDatum {
    RootDatum::parse(t, Isogeny::SimplyConnected).unwrap()
}

fn spec(t: &str, g: usize, levis: Vec<Vec<usize>>) -> StackSpec {
    StackSpec::new(sc(t), g, levis).unwrap()
}

#[test]
fn a1_genus_one_cells() {
    let s = spec("A1", 1, vec![]);
    let d = &s.datum;
    let (e, s1) = (d.identity(), d.simple_reflection(0));
    let cell = |a, b| CellIndex { handles: vec![Handle { pi1: a, pi2: b, twist: e }], punctures: vec![] };
    let walks = |c: &CellIndex| {
        let w = cell_word(d, c, WordSection::LexLeast).unwrap();
        enumerate_walks(d, &w.unipotent_word, &e, Some(&e)).unwrap()
    };
    let es = cell(e, s1);
    let w = walks(&es);
    assert_eq!(w.len(), 1);
    assert_eq!(cell_class(&s, &es, &w[0]).unwrap(), MotiveClass::from_coeffs(&[(1, 2)]));
    let ss = cell(s1, s1);
    let stay = walks(&ss).into_iter().find(|w| w.count(Step::Stay) == 2).unwrap();
    assert_eq!(cell_class(&s, &ss, &stay).unwrap(), MotiveClass::q_minus_one_pow(2));
    let ee = cell(e, e);
    assert_eq!(cell_class(&s, &ee, &walks(&ee)[0]).unwrap(), MotiveClass::zero());
}

#[test]
fn rank_one_stringy_with_trivial_twist_is_naive() {
    for (g, k) in [(0, 3), (1, 1), (1, 2), (2, 1)] {
        let s = spec("A1", g, vec![vec![]; k - 1]);
        assert_eq!(stringy_motive(&s).unwrap().class, naive_motive(&s).unwrap(), "g={g} k={k}");
    }
}

#[test]
fn degree_is_dimension() {
    let cases = [
        ("A1", 1, vec![]),
        ("A1", 2, vec![]),
        ("A1", 0, vec![vec![], vec![]]),
        ("A2", 1, vec![]),
        ("B2", 1, vec![]),
        ("C2", 0, vec![vec![], vec![0]]),
        ("G2", 1, vec![]),
    ];
    for (t, g, levis) in cases {
        let s = spec(t, g, levis);
        let m = naive_motive(&s).unwrap();
        assert_eq!(m.degree(), Some(stack_dimension(&s)), "{t} g={g}");
        assert!(m.leading_coeff().unwrap() > &0.into());
    }
}

#[test]
fn bookkeeping_identity_on_every_cell() {
    for (t, g, levis) in [("A2", 1, vec![vec![0]]), ("B2", 1, vec![vec![1]]), ("G2", 1, vec![])] {
        let s = spec(t, g, levis);
        let cells = CellEnumerator::new(&s).unwrap();
        let e = s.datum.identity();
        for i in 0..cells.len() {
            let c = cells.cell(i);
            let word = cell_word(&s.datum, &c, s.section).unwrap().unipotent_word;
            for w in enumerate_walks(&s.datum, &word, &e, Some(&e)).unwrap() {
                CellGeometry::new(&s, &c, &w).check().unwrap();
            }
        }
    }
}

#[test]
fn corrupted_geometry_is_rejected() {
    let s = spec("A1", 1, vec![]);
    let cells = CellEnumerator::new(&s).unwrap();
    let c = cells.cell(1);
    let e = s.datum.identity();
    let word = cell_word(&s.datum, &c, s.section).unwrap().unipotent_word;
    let w = &enumerate_walks(&s.datum, &word, &e, Some(&e)).unwrap()[0];
    let mut geo = CellGeometry::new(&s, &c, w);
    geo.u_p += 1;
    assert!(matches!(geo.check(), Err(Error::Verification(_))));
    geo.u_p -= 1;
    geo.i_p += 1;
    assert!(matches!(geo.check(), Err(Error::Verification(_))));
}

#[test]
fn parallel_sum_is_deterministic() {
    let base = spec("B2", 1, vec![vec![0]]).with_twist(TwistSpec::Full).with_handle_twists(HandleTwists::AssumeIdentity);
    let one = stringy_motive(&base).unwrap();
    let four = stringy_motive(&base.clone().with_jobs(4)).unwrap();
    assert_eq!(one.class, four.class);
    assert_eq!(one.terms.len(), four.terms.len());
    assert_eq!(naive_motive(&base).unwrap(), naive_motive(&base.with_jobs(4)).unwrap());
}

#[test]
fn rank_two_mirror_is_conditional() {
    for t in ["A2", "B2", "C2"] {
        let s = spec(t, 1, vec![]).with_twist(TwistSpec::Full);
        let (r, dual) = mirror_check(&s).unwrap();
        assert!(r.equal(), "{t}: {}", r.to_json(&s.datum, &dual));
        assert_eq!(r.validity().tag(), "conditional");
    }
}

#[test]
fn explicit_twist_rule_matches_identity_convention() {
    let s = spec("C2", 1, vec![]).with_twist(TwistSpec::Full);
    let by_rule = s.clone().with_handle_twists(HandleTwists::Rule(std::sync::Arc::new(|d: &RootDatum, pairs: &[_]| {
        vec![d.identity(); pairs.len()]
    })));
    let conv = s.with_handle_twists(HandleTwists::AssumeIdentity);
    assert_eq!(stringy_motive(&by_rule).unwrap().class, stringy_motive(&conv).unwrap().class);
}
