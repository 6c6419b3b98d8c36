//! Instruction words, walks on the Bruhat graph, and the unipotent word of a
//! character-stack cell.
//!
//! A word `a_1 ... a_l` is consumed first to last. From `p_0 = start`, step
//! `k` multiplies on the left by `s = s_{a_k}`: when `l(s p_{k-1}) > l(p_{k-1})`
//! the walk must go up to `s p_{k-1}`; otherwise it either goes down to
//! `s p_{k-1}` or stays at `p_{k-1}`. Independently `pi_k = s pi_{k-1}`, so
//! `pi_k = s_{a_k} ... s_{a_1}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{invalid, Result};
use crate::matrix::IntMatrix;
use crate::rootsys::{RootDatum, WeylElement, WordSection};

/// Letters (0-based simple-root indices) in processing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct InstructionWord {
    pub letters: Vec<usize>,
}

impl InstructionWord {
    pub fn new(letters: Vec<usize>) -> Self {
        InstructionWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn validate(&self, datum: &RootDatum) -> Result<()> {
        match self.letters.iter().find(|&&l| l >= datum.rank()) {
            Some(l) => invalid(format!("letter a{} out of range for rank {}", l + 1, datum.rank())),
            None => Ok(()),
        }
    }

    pub fn reversed(&self) -> InstructionWord {
        InstructionWord { letters: self.letters.iter().rev().copied().collect() }
    }
}

impl fmt::Display for InstructionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| format!("a{}", l + 1)).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
    Stay,
}

impl Step {
    pub fn tag(self) -> &'static str {
        match self {
            Step::Up => "U",
            Step::Down => "D",
            Step::Stay => "S",
        }
    }

    pub fn parse(s: &str) -> Result<Step> {
        match s.trim().to_ascii_lowercase().as_str() {
            "u" | "up" => Ok(Step::Up),
            "d" | "down" => Ok(Step::Down),
            "s" | "stay" => Ok(Step::Stay),
            other => invalid(format!("unknown step {other:?}")),
        }
    }
}

/// A walk with its tracks `p_0..p_l` and `pi_0..pi_l`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Walk {
    word: InstructionWord,
    steps: Vec<Step>,
    p: Vec<WeylElement>,
    pi: Vec<WeylElement>,
}

impl Walk {
    /// Assembles a walk from raw parts without checking it; see
    /// [`validate_walk`].
    pub fn from_parts(word: InstructionWord, steps: Vec<Step>, p: Vec<WeylElement>, pi: Vec<WeylElement>) -> Walk {
        Walk { word, steps, p, pi }
    }

    /// Builds the tracks implied by `steps` and validates the result.
    pub fn from_steps(
        datum: &RootDatum,
        word: InstructionWord,
        start: WeylElement,
        steps: Vec<Step>,
    ) -> std::result::Result<Walk, WalkViolation> {
        if word.validate(datum).is_err() {
            return Err(WalkViolation { index: 0, kind: ViolationKind::InvalidLetter });
        }
        if steps.len() != word.len() {
            return Err(WalkViolation { index: 0, kind: ViolationKind::LengthMismatch });
        }
        let mut p = vec![start];
        let mut pi = vec![datum.identity()];
        for (k, (&a, &step)) in word.letters.iter().zip(&steps).enumerate() {
            let cur = p[k];
            p.push(if step == Step::Stay { cur } else { datum.left_mul_simple(a, &cur) });
            pi.push(datum.left_mul_simple(a, &pi[k]));
        }
        let walk = Walk { word, steps, p, pi };
        validate_walk(datum, &walk, None)?;
        Ok(walk)
    }

    pub fn word(&self) -> &InstructionWord {
        &self.word
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn p(&self) -> &[WeylElement] {
        &self.p
    }

    pub fn pi(&self) -> &[WeylElement] {
        &self.pi
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> &WeylElement {
        &self.p[0]
    }

    pub fn end(&self) -> &WeylElement {
        self.p.last().expect("p_0 always present")
    }

    /// 1-based positions with the given step.
    pub fn positions(&self, step: Step) -> Vec<usize> {
        self.steps.iter().enumerate().filter(|(_, &s)| s == step).map(|(k, _)| k + 1).collect()
    }

    pub fn ups(&self) -> Vec<usize> {
        self.positions(Step::Up)
    }

    pub fn downs(&self) -> Vec<usize> {
        self.positions(Step::Down)
    }

    pub fn stays(&self) -> Vec<usize> {
        self.positions(Step::Stay)
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    /// Renders the tracks the way one writes them by hand: each element is
    /// obtained from its predecessor by prepending the new letter when
    /// going up and cancelling it when it leads the previous word. Falls
    /// back to the lex-least reduced word when no cancellation is visible.
    pub fn track_words(&self, datum: &RootDatum) -> (Vec<String>, Vec<String>) {
        let render = |track: &[WeylElement]| -> Vec<String> {
            let mut cur = datum.minimal_word(&track[0]).letters;
            let mut out = vec![word_string(&cur)];
            for (k, &a) in self.word.letters.iter().enumerate() {
                let (prev, next) = (&track[k], &track[k + 1]);
                if next != prev {
                    if next.length() > prev.length() {
                        cur.insert(0, a);
                    } else if cur.first() == Some(&a) {
                        cur.remove(0);
                    } else {
                        cur = datum.minimal_word(next).letters;
                    }
                }
                out.push(word_string(&cur));
            }
            out
        };
        (render(&self.p), render(&self.pi))
    }

    pub fn to_json(&self, datum: &RootDatum) -> Value {
        let (p, pi) = self.track_words(datum);
        json!({
            "word": self.word.letters.iter().map(|l| format!("a{}", l + 1)).collect::<Vec<_>>(),
            "steps": self.steps.iter().map(|s| s.tag()).collect::<Vec<_>>(),
            "p": p,
            "pi": pi,
        })
    }
}

/// `s1s2s1` style rendering of 0-based letters; `e` for the empty word.
pub fn word_string(letters: &[usize]) -> String {
    if letters.is_empty() {
        return "e".into();
    }
    letters.iter().map(|l| format!("s{}", l + 1)).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    InvalidLetter,
    LengthMismatch,
    StartMismatch,
    /// A step that could go up was tagged down or stay.
    ForcedUpIgnored,
    /// A step tagged up does not increase length, or one tagged down does
    /// not decrease it.
    WrongDirection,
    PTrackMismatch,
    PiTrackMismatch,
    EndMismatch,
}

/// First failing position (1-based step index; 0 for whole-walk issues).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WalkViolation {
    pub index: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for WalkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at step {}", self.kind, self.index)
    }
}

/// Checks every walk invariant and reports the first failing step.
pub fn validate_walk(
    datum: &RootDatum,
    walk: &Walk,
    expected_end: Option<&WeylElement>,
) -> std::result::Result<(), WalkViolation> {
    let l = walk.word.len();
    if walk.word.validate(datum).is_err() {
        return Err(WalkViolation { index: 0, kind: ViolationKind::InvalidLetter });
    }
    if walk.steps.len() != l || walk.p.len() != l + 1 || walk.pi.len() != l + 1 {
        return Err(WalkViolation { index: 0, kind: ViolationKind::LengthMismatch });
    }
    if !walk.pi[0].is_identity() {
        return Err(WalkViolation { index: 0, kind: ViolationKind::PiTrackMismatch });
    }
    for k in 0..l {
        let a = walk.word.letters[k];
        let cur = &walk.p[k];
        let up = datum.goes_up(cur, a);
        let step = walk.steps[k];
        let at = k + 1;
        if up && step != Step::Up {
            return Err(WalkViolation { index: at, kind: ViolationKind::ForcedUpIgnored });
        }
        if !up && step == Step::Up {
            return Err(WalkViolation { index: at, kind: ViolationKind::WrongDirection });
        }
        let expect = if step == Step::Stay { *cur } else { datum.left_mul_simple(a, cur) };
        if walk.p[k + 1] != expect {
            return Err(WalkViolation { index: at, kind: ViolationKind::PTrackMismatch });
        }
        if walk.pi[k + 1] != datum.left_mul_simple(a, &walk.pi[k]) {
            return Err(WalkViolation { index: at, kind: ViolationKind::PiTrackMismatch });
        }
    }
    if let Some(end) = expected_end {
        if walk.end() != end {
            return Err(WalkViolation { index: l, kind: ViolationKind::EndMismatch });
        }
    }
    Ok(())
}

/// A walk being generated: step tags and the `p` track so far.
pub struct WalkView<'a> {
    pub word: &'a [usize],
    pub steps: &'a [Step],
    pub p: &'a [WeylElement],
}

/// Depth-first generation of every walk of `word` from `start`, calling
/// `visit` on each complete walk. At each free step Stay is explored before
/// Down.
pub fn for_each_walk(datum: &RootDatum, word: &[usize], start: WeylElement, mut visit: impl FnMut(&WalkView)) {
    let mut steps = Vec::with_capacity(word.len());
    let mut p = Vec::with_capacity(word.len() + 1);
    p.push(start);
    dfs(datum, word, &mut steps, &mut p, &mut visit);
}

fn dfs(
    datum: &RootDatum,
    word: &[usize],
    steps: &mut Vec<Step>,
    p: &mut Vec<WeylElement>,
    visit: &mut impl FnMut(&WalkView),
) {
    let k = steps.len();
    if k == word.len() {
        visit(&WalkView { word, steps, p });
        return;
    }
    let a = word[k];
    let cur = p[k];
    let next = datum.left_mul_simple(a, &cur);
    if next.length() > cur.length() {
        steps.push(Step::Up);
        p.push(next);
        dfs(datum, word, steps, p, visit);
    } else {
        steps.push(Step::Stay);
        p.push(cur);
        dfs(datum, word, steps, p, visit);
        steps.pop();
        p.pop();
        steps.push(Step::Down);
        p.push(next);
        dfs(datum, word, steps, p, visit);
    }
    steps.pop();
    p.pop();
}

/// All walks of `word` from `start`, optionally only those ending at `end`,
/// in the deterministic Stay-before-Down order.
pub fn enumerate_walks(
    datum: &RootDatum,
    word: &InstructionWord,
    start: &WeylElement,
    end: Option<&WeylElement>,
) -> Result<Vec<Walk>> {
    word.validate(datum)?;
    let mut pi = vec![datum.identity()];
    for (k, &a) in word.letters.iter().enumerate() {
        let next = datum.left_mul_simple(a, &pi[k]);
        pi.push(next);
    }
    let mut out = Vec::new();
    for_each_walk(datum, &word.letters, *start, |v| {
        if end.is_none_or(|e| v.p.last() == Some(e)) {
            out.push(Walk { word: word.clone(), steps: v.steps.to_vec(), p: v.p.to_vec(), pi: pi.clone() });
        }
    });
    Ok(out)
}

/// One handle `(pi_1, pi_2, w)` of a cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Handle {
    pub pi1: WeylElement,
    pub pi2: WeylElement,
    pub twist: WeylElement,
}

/// A nice puncture: its Levi subset and coset representative.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Puncture {
    pub levi: Vec<usize>,
    pub rep: WeylElement,
}

/// Cell index: one triple per handle and one coset representative per nice
/// puncture; the final regular puncture is implicit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CellIndex {
    pub handles: Vec<Handle>,
    pub punctures: Vec<Puncture>,
}

impl CellIndex {
    pub fn genus(&self) -> usize {
        self.handles.len()
    }

    pub fn to_json(&self, datum: &RootDatum) -> Value {
        json!({
            "handles": self.handles.iter().map(|h| json!({
                "pi1": datum.render(&h.pi1),
                "pi2": datum.render(&h.pi2),
                "w": datum.render(&h.twist),
            })).collect::<Vec<_>>(),
            "punctures": self.punctures.iter().map(|p| json!({
                "levi": p.levi.iter().map(|i| format!("a{}", i + 1)).collect::<Vec<_>>(),
                "pi": datum.render(&p.rep),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The commutator letters of a cell and the unipotent word its walks follow.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CellWord {
    pub commutator_letters: Vec<Handle>,
    pub unipotent_word: InstructionWord,
}

/// Builds the unipotent word: for each handle
/// `word(pi1) word(pi2) word(pi1)^t word(pi2)^t`, then `word(pi) word(pi)^t`
/// for each nice puncture, where `word` is the reduced word of the section
/// and `^t` reverses.
pub fn cell_word(datum: &RootDatum, cell: &CellIndex, section: WordSection) -> Result<CellWord> {
    let mut letters = Vec::new();
    let word = |w: &WeylElement| datum.reduced_word(w, section).letters;
    for h in &cell.handles {
        let (a, b) = (word(&h.pi1), word(&h.pi2));
        letters.extend(&a);
        letters.extend(&b);
        letters.extend(a.iter().rev());
        letters.extend(b.iter().rev());
    }
    for (j, p) in cell.punctures.iter().enumerate() {
        if let Some(&i) = p.levi.iter().find(|&&i| i >= datum.rank()) {
            return invalid(format!("Levi letter a{} out of range", i + 1));
        }
        if !datum.is_minimal_coset_rep(&p.rep, &p.levi) {
            return invalid(format!(
                "puncture {}: {} is not the minimal representative of its coset",
                j + 1,
                datum.render(&p.rep)
            ));
        }
        let a = word(&p.rep);
        letters.extend(&a);
        letters.extend(a.iter().rev());
    }
    Ok(CellWord { commutator_letters: cell.handles.clone(), unipotent_word: InstructionWord::new(letters) })
}

/// Columns of the differential of the torus map of a cell, in `t(Z)`
/// coordinates: `p_k^{-1} h_{a_k}` for each stay `k`, then for every handle
/// the images `p_l^{-1}(id - pi_j) b` of the basis `b` of `t(Z)`. Zero and
/// repeated columns are dropped. The first group spans `T(p)`, all of them
/// together span `T_beta(p)`.
pub fn torus_map_matrix(datum: &RootDatum, cell: &CellIndex, walk: &Walk) -> IntMatrix {
    let n = datum.rank();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    let push = |c: Vec<BigInt>, cols: &mut Vec<Vec<BigInt>>| {
        if c.iter().any(|x| !x.is_zero()) && !cols.contains(&c) {
            cols.push(c);
        }
    };
    for k in walk.stays() {
        let a = walk.word.letters[k - 1];
        let pinv = datum.inverse(&walk.p[k - 1]);
        let h = datum.simple_coroot_in_cochars(a);
        push(datum.cochar_action(&pinv).mul_vec(&h).expect("square"), &mut cols);
    }
    let last_inv = datum.cochar_action(&datum.inverse(walk.end()));
    for h in &cell.handles {
        for pi in [&h.pi1, &h.pi2] {
            let act = datum.cochar_action(pi);
            for b in 0..n {
                let mut c: Vec<BigInt> = (0..n).map(|i| -act.get(i, b).clone()).collect();
                c[b] += 1;
                push(last_inv.mul_vec(&c).expect("square"), &mut cols);
            }
        }
    }
    IntMatrix::from_columns(n, &cols)
}
