//! Golden checks against the worked examples of the theory, plus the
//! invariant sweeps, under a wall-clock budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::duality::dual_walk;
use crate::invariants::walk_invariants;
use crate::lattice::FiniteAbelianGroup;
use crate::motive::{mirror_check, naive_motive, MotiveClass, StackSpec, TwistSpec};
use crate::oracle::{admissible_eigenvalues, ff_count_rank1, FiniteFieldSpec};
use crate::rootsys::{Isogeny, RootDatum};
use crate::walks::{enumerate_walks, for_each_walk, CellIndex, InstructionWord, Step, Walk};
use crate::Result;

/// The three walks of `a,b,b,a` in A2 from `e`, as `p` tracks.
pub const A2_WALKS: [[&str; 5]; 3] = [
    ["e", "s1", "s2s1", "s1", "e"],
    ["e", "s1", "s2s1", "s1", "s1"],
    ["e", "s1", "s2s1", "s2s1", "s1s2s1"],
];

pub struct Sp4Table {
    pub word: &'static [usize],
    pub steps: &'static str,
    pub p: &'static [&'static str],
    pub pi: &'static [&'static str],
}

pub const SP4_TABLES: [Sp4Table; 2] = [
    Sp4Table {
        word: &[0, 0, 0, 1, 0, 0, 0, 1],
        steps: "U S D U U S D D",
        p: &["s1", "s1", "e", "s2", "s1s2", "s1s2", "s2", "e"],
        pi: &["s1", "e", "s1", "s2s1", "s1s2s1", "s2s1", "s1s2s1", "s2s1s2s1"],
    },
    Sp4Table {
        word: &[0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0],
        steps: "U S D U U S U U D D S D D U S D",
        p: &[
            "s1", "s1", "e", "s2", "s1s2", "s1s2", "s2s1s2", "s1s2s1s2", "s2s1s2", "s1s2", "s1s2", "s2", "e", "s1",
            "s1", "e",
        ],
        pi: &[
            "s1", "e", "s1", "s2s1", "s1s2s1", "s2s1", "s1", "e", "s1", "s2s1", "s1s2s1", "s2s1", "s1", "e", "s1",
            "e",
        ],
    },
];

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
    pub budget: Duration,
    pub overrun: bool,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        !self.overrun && self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.all_pass(),
            "budget_secs": self.budget.as_secs_f64(),
            "overrun": self.overrun,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "pass": c.pass,
                "detail": c.detail,
                "elapsed_secs": c.elapsed.as_secs_f64(),
            })).collect::<Vec<_>>(),
        })
    }
}

type Check = (&'static str, fn() -> Result<(bool, String)>);

pub fn checks() -> Vec<Check> {
    vec![
        ("A2 walks of a,b,b,a", check_a2_walks),
        ("Sp4 first table", || check_sp4(0)),
        ("Sp4 second table", || check_sp4(1)),
        ("Sp4 invariants", check_sp4_invariants),
        ("stratification mass identity", check_mass_identity),
        ("type A sweep", check_type_a),
        ("duality sweep", check_duality),
        ("rank one mirror identities", check_rank_one_mirror),
        ("finite field oracle", check_oracle),
    ]
}

/// Runs every check, skipping the rest once `budget` is spent.
pub fn verify_paper_suite(budget: Duration) -> SuiteReport {
    let start = Instant::now();
    let mut out = Vec::new();
    let mut overrun = false;
    for (name, f) in checks() {
        if start.elapsed() > budget {
            overrun = true;
            out.push(CheckResult {
                name: name.into(),
                pass: false,
                detail: "skipped: budget exhausted".into(),
                elapsed: Duration::ZERO,
            });
            continue;
        }
        let t = Instant::now();
        let (pass, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        out.push(CheckResult { name: name.into(), pass, detail, elapsed: t.elapsed() });
    }
    overrun |= start.elapsed() > budget;
    SuiteReport { checks: out, budget, overrun }
}

fn sc(ty: &str) -> Result<RootDatum> {
    RootDatum::parse(ty, Isogeny::SimplyConnected)
}

fn diff(expected: &[&str], got: &[String]) -> String {
    expected
        .iter()
        .zip(got)
        .enumerate()
        .filter(|(_, (e, g))| *e != g)
        .map(|(k, (e, g))| format!("row {}: expected {e}, got {g}", k + 1))
        .collect::<Vec<_>>()
        .join("; ")
}

fn check_a2_walks() -> Result<(bool, String)> {
    let d = sc("A2")?;
    let word = InstructionWord::new(d.parse_word("a,b,b,a")?);
    let walks = enumerate_walks(&d, &word, &d.identity(), None)?;
    let got: BTreeSet<Vec<String>> = walks.iter().map(|w| w.p().iter().map(|x| d.render(x)).collect()).collect();
    let want: BTreeSet<Vec<String>> = A2_WALKS.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    Ok((got == want, format!("{} walks; expected {want:?}, got {got:?}", walks.len())))
}

pub fn sp4_walk(d: &RootDatum, table: &Sp4Table) -> Result<Walk> {
    let steps = table.steps.split_whitespace().map(Step::parse).collect::<Result<Vec<_>>>()?;
    Walk::from_steps(d, InstructionWord::new(table.word.to_vec()), d.identity(), steps)
        .map_err(|v| crate::Error::Verification(format!("table walk invalid: {v}")))
}

fn check_sp4(i: usize) -> Result<(bool, String)> {
    let d = sc("C2")?;
    let t = &SP4_TABLES[i];
    let (p, pi) = sp4_walk(&d, t)?.track_words(&d);
    let (dp, dpi) = (diff(t.p, &p[1..]), diff(t.pi, &pi[1..]));
    let pass = dp.is_empty() && dpi.is_empty() && p.len() == t.p.len() + 1;
    let detail = if pass { "p and pi rows identical".to_string() } else { format!("p: {dp} | pi: {dpi}") };
    Ok((pass, detail))
}

fn check_sp4_invariants() -> Result<(bool, String)> {
    let d = sc("C2")?;
    let two = FiniteAbelianGroup::from_cyclic_orders(&[BigInt::from(2)]);
    let klein = FiniteAbelianGroup::from_cyclic_orders(&[BigInt::from(2), BigInt::from(2)]);
    let mut notes = Vec::new();
    let mut pass = true;
    for (i, t) in SP4_TABLES.iter().enumerate() {
        let inv = walk_invariants(&d, &sp4_walk(&d, t)?);
        let s = inv.s_p.group()?;
        let s_mod_z = inv.s_p.quotient(&d.center())?;
        let ok = inv.surjective && inv.pi1_p.is_trivial() && s == klein && inv.z_p == two && s_mod_z == inv.z_p;
        pass &= ok;
        notes.push(format!("table {}: S={} pi1={} Z={} S/Z={}", i + 1, s, inv.pi1_p, inv.z_p, s_mod_z));
    }
    Ok((pass, notes.join("; ")))
}

/// `sum_p (q-1)^{|S_p|} q^{|U_p|} = q^len` for every word up to `max_len`.
pub fn mass_identity(d: &RootDatum, max_len: usize) -> Result<usize> {
    let n = d.rank();
    let mut words = 0;
    for len in 0..=max_len {
        for idx in 0..n.pow(len as u32) {
            let word: Vec<usize> = (0..len).map(|k| idx / n.pow(k as u32) % n).collect();
            for start in d.weyl_elements()? {
                let mut sum = MotiveClass::zero();
                for_each_walk(d, &word, *start, |v| {
                    let stays = v.steps.iter().filter(|s| **s == Step::Stay).count() as u32;
                    let ups = v.steps.iter().filter(|s| **s == Step::Up).count() as i64;
                    sum += &(&MotiveClass::q_minus_one_pow(stays) * &MotiveClass::monomial(1, ups));
                });
                if sum != MotiveClass::monomial(1, len as i64) {
                    return Err(crate::Error::Verification(format!("word {word:?} from {}: {sum}", d.render(start))));
                }
            }
            words += 1;
        }
    }
    Ok(words)
}

fn check_mass_identity() -> Result<(bool, String)> {
    let mut notes = Vec::new();
    for ty in ["A1", "A2", "B2"] {
        notes.push(format!("{ty}: {} words", mass_identity(&sc(ty)?, 6)?));
    }
    Ok((true, notes.join(", ")))
}

/// Surjective walks of every word up to `max_len` from every start have
/// trivial `Z(p)` and `pi_1(p)`; returns the number checked.
pub fn type_a_sweep(d: &RootDatum, max_len: usize) -> Result<usize> {
    let n = d.rank();
    let mut checked = 0;
    for len in 0..=max_len {
        for idx in 0..n.pow(len as u32) {
            let word = InstructionWord::new((0..len).map(|k| idx / n.pow(k as u32) % n).collect());
            for start in d.weyl_elements()? {
                for w in enumerate_walks(d, &word, start, None)? {
                    let inv = walk_invariants(d, &w);
                    if !inv.surjective {
                        continue;
                    }
                    if !inv.z_p.is_trivial() || !inv.pi1_p.is_trivial() {
                        return Err(crate::Error::Verification(format!(
                            "{word} steps {:?}: Z={} pi1={}",
                            w.steps(),
                            inv.z_p,
                            inv.pi1_p
                        )));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn check_type_a() -> Result<(bool, String)> {
    let a1 = type_a_sweep(&sc("A1")?, 8)?;
    let a2 = type_a_sweep(&sc("A2")?, 8)?;
    let a3 = type_a_sweep(&sc("A3")?, 6)?;
    Ok((true, format!("surjective walks checked: A1 {a1}, A2 {a2}, A3 {a3}")))
}

/// Walk level duality and the involution on one walk; `None` when it holds.
pub fn walk_duality_failure(d: &RootDatum, w: &Walk) -> Result<Option<String>> {
    let pair = dual_walk(d, &CellIndex::default(), w)?;
    let (a, b) = (walk_invariants(d, w), walk_invariants(&pair.target, &pair.dual_walk));
    let back = dual_walk(&pair.target, &pair.dual_cell, &pair.dual_walk)?;
    let mut bad = Vec::new();
    if b.z_p != a.pi1_p.dual() {
        bad.push(format!("Z(p*)={} pi1(p)={}", b.z_p, a.pi1_p));
    }
    if b.pi1_p != a.z_p.dual() {
        bad.push(format!("pi1(p*)={} Z(p)={}", b.pi1_p, a.z_p));
    }
    if back.dual_walk != *w {
        bad.push("(p*)* != p".into());
    }
    Ok(if bad.is_empty() { None } else { Some(format!("{} {:?}: {}", w.word(), w.steps(), bad.join(", "))) })
}

/// Samples `count` walks of random words over `d` with a fixed seed.
pub fn sample_walks(d: &RootDatum, count: usize, seed: u64) -> Result<Vec<Walk>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elems = d.weyl_elements()?.to_vec();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let len = rng.gen_range(1..=10);
        let word = InstructionWord::new((0..len).map(|_| rng.gen_range(0..d.rank())).collect());
        let start = elems[rng.gen_range(0..elems.len())];
        let walks = enumerate_walks(d, &word, &start, None)?;
        out.push(walks[rng.gen_range(0..walks.len())].clone());
    }
    Ok(out)
}

fn check_duality() -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (ty, seed) in [("B2", 11), ("C2", 12)] {
        let d = sc(ty)?;
        for w in sample_walks(&d, 120, seed)? {
            failures.extend(walk_duality_failure(&d, &w)?);
            checked += 1;
        }
    }
    let d = sc("A2")?;
    for len in 0..=6u32 {
        for idx in 0..2usize.pow(len) {
            let word = InstructionWord::new((0..len).map(|k| idx >> k & 1).collect());
            for start in d.weyl_elements()? {
                for w in enumerate_walks(&d, &word, start, None)? {
                    failures.extend(walk_duality_failure(&d, &w)?);
                    checked += 1;
                }
            }
        }
    }
    let pass = failures.is_empty();
    Ok((pass, if pass { format!("{checked} walks") } else { failures.join("; ") }))
}

fn check_rank_one_mirror() -> Result<(bool, String)> {
    let mut notes = Vec::new();
    let mut pass = true;
    for (g, k) in [(1, 1), (1, 2), (2, 1)] {
        let spec = StackSpec::new(sc("A1")?, g, vec![vec![]; k - 1])?.with_twist(TwistSpec::Full);
        let (r, _) = mirror_check(&spec)?;
        pass &= r.equal();
        notes.push(format!("g={g} k={k}: {} vs {}", r.lhs.class, r.rhs.class));
    }
    Ok((pass, notes.join("; ")))
}

fn check_oracle() -> Result<(bool, String)> {
    let spec = StackSpec::new(sc("A1")?, 1, vec![])?;
    let m = naive_motive(&spec)?;
    let mut notes = Vec::new();
    let mut pass = true;
    for q in [3usize, 5, 7, 9, 11, 13] {
        let zs = admissible_eigenvalues(q)?;
        let Some(&z) = zs.first() else {
            notes.push(format!("q={q}: no generic regular eigenvalue"));
            continue;
        };
        let c = ff_count_rank1(&FiniteFieldSpec { q, genus: 1, eigenvalues: vec![z] })?;
        let v = m.eval_int(q as i64);
        pass &= c == v;
        notes.push(format!("q={q}: count {c}, motive {v}"));
    }
    Ok((pass, notes.join("; ")))
}
