//! Motive classes as Laurent polynomials in `q`, per-cell contributions,
//! and the naive and stringy motives of character stacks.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::{cell_invariants, twisted_sectors, TwistRule};
use crate::lattice::{quotient_group, Sublattice, TorusSubgroup};
use crate::rootsys::{Isogeny, RootDatum, WeylElement, WordSection};
use crate::walks::{cell_word, enumerate_walks, torus_map_matrix, CellIndex, Handle, Puncture, Walk};

/// A finitely supported Laurent polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MotiveClass {
    coeffs: BTreeMap<i64, BigInt>,
}

impl MotiveClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut m = Self::zero();
        m.add_term(e, c.into());
        m
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `(q - 1)^k`.
    pub fn q_minus_one_pow(k: u32) -> Self {
        (Self::q() - Self::one()).pow(k)
    }

    pub fn from_coeffs(pairs: &[(i64, i64)]) -> Self {
        let mut m = Self::zero();
        for &(e, c) in pairs {
            m.add_term(e, c.into());
        }
        m
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, BigInt> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut m = Self::zero();
        for (&e, v) in &self.coeffs {
            m.add_term(e, v * c);
        }
        m
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&e, c) in &self.coeffs {
            let p = if e >= 0 {
                num_traits::pow(q.clone(), e as usize)
            } else {
                num_traits::pow(q.recip(), (-e) as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, q: i64) -> BigRational {
        self.eval(&BigRational::from_integer(q.into()))
    }

    /// Coefficients read in reverse equal the originals up to a shift.
    pub fn is_palindromic(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.coeffs.keys().next().copied(), self.degree()) else {
            return true;
        };
        self.coeffs.iter().all(|(&e, c)| self.coeff(lo + hi - e) == *c)
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> =
            self.coeffs.iter().map(|(e, c)| (e.to_string(), crate::matrix::int_json(c))).collect();
        json!({ "coeffs": map })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::InvalidInput("expected {\"coeffs\": {...}}".into()))?;
        let mut m = Self::zero();
        for (k, c) in obj {
            let e: i64 = k.parse().map_err(|_| Error::InvalidInput(format!("bad exponent {k}")))?;
            let c: BigInt = match c {
                Value::Number(n) => n.to_string().parse(),
                Value::String(s) => s.parse(),
                _ => return Err(Error::InvalidInput("bad coefficient".into())),
            }
            .map_err(|_| Error::InvalidInput("bad coefficient".into()))?;
            m.add_term(e, c);
        }
        Ok(m)
    }

    fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for MotiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl Add for &MotiveClass {
    type Output = MotiveClass;
    fn add(self, rhs: &MotiveClass) -> MotiveClass {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MotiveClass {
    type Output = MotiveClass;
    fn add(self, rhs: MotiveClass) -> MotiveClass {
        &self + &rhs
    }
}

impl AddAssign<&MotiveClass> for MotiveClass {
    fn add_assign(&mut self, rhs: &MotiveClass) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for &MotiveClass {
    type Output = MotiveClass;
    fn neg(self) -> MotiveClass {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &MotiveClass {
    type Output = MotiveClass;
    fn sub(self, rhs: &MotiveClass) -> MotiveClass {
        self + &(-rhs)
    }
}

impl Sub for MotiveClass {
    type Output = MotiveClass;
    fn sub(self, rhs: MotiveClass) -> MotiveClass {
        &self - &rhs
    }
}

impl Mul for &MotiveClass {
    type Output = MotiveClass;
    fn mul(self, rhs: &MotiveClass) -> MotiveClass {
        let mut out = MotiveClass::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for MotiveClass {
    type Output = MotiveClass;
    fn mul(self, rhs: MotiveClass) -> MotiveClass {
        &self * &rhs
    }
}

impl std::iter::Sum for MotiveClass {
    fn sum<I: Iterator<Item = MotiveClass>>(iter: I) -> MotiveClass {
        iter.fold(MotiveClass::zero(), |mut acc, m| {
            acc += &m;
            acc
        })
    }
}

/// The E-polynomial image of a class, a polynomial in `uv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPolynomial(pub MotiveClass);

impl fmt::Display for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render("(uv)"))
    }
}

/// Substitutes `q -> uv`.
pub fn e_specialize(m: &MotiveClass) -> EPolynomial {
    EPolynomial(m.clone())
}

/// Chooses the handle twists `w_i` of a cell from its handle pairs.
pub type TwistFn = Arc<dyn Fn(&RootDatum, &[(WeylElement, WeylElement)]) -> Vec<WeylElement> + Send + Sync>;

#[derive(Clone, Default)]
pub enum HandleTwists {
    /// Twists are unknown: refuse where they would matter.
    #[default]
    Unspecified,
    /// Use `w_i = e` everywhere and flag results where it matters.
    AssumeIdentity,
    /// Explicit twists per cell.
    Rule(TwistFn),
}

impl HandleTwists {
    fn rule(&self) -> TwistRule {
        match self {
            HandleTwists::Unspecified => TwistRule::Unknown,
            HandleTwists::AssumeIdentity => TwistRule::AssumeIdentity,
            HandleTwists::Rule(_) => TwistRule::Given,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            HandleTwists::Unspecified => "unspecified",
            HandleTwists::AssumeIdentity => "identity-convention",
            HandleTwists::Rule(_) => "explicit",
        }
    }
}

/// The twist subgroup `F` of the center.
#[derive(Clone, Debug)]
pub enum TwistSpec {
    Trivial,
    Full,
    /// `Lambda_F` given by characters on `t(Z)`.
    Explicit(TorusSubgroup),
}

impl TwistSpec {
    pub fn subgroup(&self, datum: &RootDatum) -> TorusSubgroup {
        match self {
            TwistSpec::Trivial => TorusSubgroup::trivial(datum.rank()),
            TwistSpec::Full => datum.center(),
            TwistSpec::Explicit(t) => t.clone(),
        }
    }

    /// `trivial`, `full`, or the smallest subgroup containing a central
    /// element written in `t(Z)` coordinates, e.g. `1/2,0`.
    pub fn parse(datum: &RootDatum, s: &str) -> Result<TwistSpec> {
        match s.trim() {
            "trivial" | "1" => Ok(TwistSpec::Trivial),
            "full" | "Z" => Ok(TwistSpec::Full),
            other => {
                let x = other
                    .split(',')
                    .map(|t| t.trim().parse::<BigRational>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::InvalidInput(format!("cannot read F = {other:?}")))?;
                if x.len() != datum.rank() {
                    return Err(Error::InvalidInput(format!("F generator needs {} coordinates", datum.rank())));
                }
                if !datum.center().contains(&x) {
                    return Err(Error::InvalidInput(format!("{other} is not central")));
                }
                let mut best: Option<(TorusSubgroup, BigInt)> = None;
                for f in crate::duality::central_subgroups(datum)? {
                    if f.contains(&x) {
                        let c = f.cardinality()?;
                        if best.as_ref().is_none_or(|(_, b)| c < *b) {
                            best = Some((f, c));
                        }
                    }
                }
                Ok(TwistSpec::Explicit(best.expect("Z(G) contains x").0))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            TwistSpec::Trivial => "trivial".into(),
            TwistSpec::Full => "full".into(),
            TwistSpec::Explicit(t) => format!("explicit {}", t.characters().to_json()),
        }
    }
}

/// A generic parabolic character stack: genus, the Levi types of the nice
/// punctures (a regular puncture is always added), and the twist `F`.
#[derive(Clone)]
pub struct StackSpec {
    pub datum: RootDatum,
    pub genus: usize,
    pub punctures: Vec<Vec<usize>>,
    pub twist: TwistSpec,
    pub twists: HandleTwists,
    pub section: WordSection,
    /// Genericity of the classes is assumed, never computed.
    pub generic_assumed: bool,
    /// Worker threads; 1 means sequential.
    pub jobs: usize,
}

impl StackSpec {
    pub fn new(datum: RootDatum, genus: usize, punctures: Vec<Vec<usize>>) -> Result<StackSpec> {
        for levi in &punctures {
            for &i in levi {
                if i >= datum.rank() {
                    return Err(Error::InvalidInput(format!("Levi letter a{} out of range", i + 1)));
                }
            }
        }
        Ok(StackSpec {
            datum,
            genus,
            punctures,
            twist: TwistSpec::Trivial,
            twists: HandleTwists::Unspecified,
            section: WordSection::LexLeast,
            generic_assumed: true,
            jobs: 1,
        })
    }

    pub fn with_twist(mut self, twist: TwistSpec) -> Self {
        self.twist = twist;
        self
    }

    pub fn with_section(mut self, section: WordSection) -> Self {
        self.section = section;
        self
    }

    pub fn with_handle_twists(mut self, twists: HandleTwists) -> Self {
        self.twists = twists;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    /// Number of punctures including the regular one.
    pub fn k(&self) -> usize {
        self.punctures.len() + 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.datum.cartan_type().to_string(),
            "isogeny": self.datum.isogeny().label(),
            "genus": self.genus,
            "k": self.k(),
            "punctures": self.punctures.iter().map(|l| l.iter().map(|i| format!("a{}", i + 1)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "F": self.twist.label(),
            "handle_twists": self.twists.label(),
            "section": match self.section { WordSection::LexLeast => "lex-least", WordSection::LexGreatest => "lex-greatest" },
            "generic_assumed": self.generic_assumed,
        })
    }
}

/// `d = (2g-2) dim G + sum_j (dim G - dim Z(C_j))`, the last class regular.
pub fn stack_dimension(spec: &StackSpec) -> i64 {
    let d = &spec.datum;
    let dim_g = d.dimension() as i64;
    let n = d.rank() as i64;
    let nice: i64 = spec.punctures.iter().map(|l| dim_g - (n + d.levi_root_count(l) as i64)).sum();
    (2 * spec.genus as i64 - 2) * dim_g + nice + (dim_g - n)
}

/// Bookkeeping data of one cell and walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellGeometry {
    pub d: i64,
    pub r: i64,
    pub i_p: i64,
    pub u_p: i64,
    pub r_beta: i64,
}

impl CellGeometry {
    pub fn new(spec: &StackSpec, cell: &CellIndex, walk: &Walk) -> CellGeometry {
        let datum = &spec.datum;
        let n = datum.rank() as i64;
        let dim_g = datum.dimension() as i64;
        let r = datum.num_positive_roots() as i64;
        let handles: i64 = cell
            .handles
            .iter()
            .map(|h| dim_g - n - h.pi1.length() as i64 - h.pi2.length() as i64)
            .sum();
        let punctures: i64 = cell
            .punctures
            .iter()
            .map(|p| (dim_g - n - datum.levi_root_count(&p.levi) as i64) / 2 - p.rep.length() as i64)
            .sum();
        CellGeometry {
            d: stack_dimension(spec),
            r,
            i_p: (2 * cell.genus() as i64 - 2) * n + walk.stays().len() as i64,
            u_p: walk.ups().len() as i64,
            r_beta: handles + punctures,
        }
    }

    /// `d - i_p` even and `|U_p| + R_beta = (d - i_p)/2 + r`.
    pub fn check(&self) -> Result<()> {
        let diff = self.d - self.i_p;
        if diff < 0 || diff % 2 != 0 {
            return Err(Error::Verification(format!("d - i_p = {diff} is not even and non-negative: {self:?}")));
        }
        if self.u_p + self.r_beta != diff / 2 + self.r {
            return Err(Error::Verification(format!("bookkeeping identity fails: {self:?}")));
        }
        Ok(())
    }

    /// `(q-1)^{i_p} q^{(d - i_p)/2}`.
    pub fn monomial(&self) -> MotiveClass {
        &MotiveClass::q_minus_one_pow(self.i_p.max(0) as u32) * &MotiveClass::monomial(1, (self.d - self.i_p) / 2)
    }
}

/// `|pi_1,beta(p)|`, or `None` when the cell misses part of `T`.
fn pi1_beta_order(datum: &RootDatum, cell: &CellIndex, walk: &Walk) -> Option<BigInt> {
    let t = Sublattice::from_generators(&torus_map_matrix(datum, cell, walk));
    if !t.is_full_rank() {
        return None;
    }
    quotient_group(&Sublattice::full(datum.rank()), &t).ok()?.order()
}

/// The naive class of one cell and walk; zero when not surjective.
pub fn cell_class(spec: &StackSpec, cell: &CellIndex, walk: &Walk) -> Result<MotiveClass> {
    let Some(order) = pi1_beta_order(&spec.datum, cell, walk) else {
        return Ok(MotiveClass::zero());
    };
    let geo = CellGeometry::new(spec, cell, walk);
    geo.check()?;
    Ok(geo.monomial().scale(&order))
}

/// Cells of a spec in a fixed order: handles `(pi_1, pi_2)` over `W^2`
/// then one minimal coset representative per nice puncture.
pub struct CellEnumerator {
    weyl: Vec<WeylElement>,
    reps: Vec<Vec<WeylElement>>,
    levis: Vec<Vec<usize>>,
    genus: usize,
    total: u128,
}

impl CellEnumerator {
    pub fn new(spec: &StackSpec) -> Result<CellEnumerator> {
        let weyl = spec.datum.weyl_elements()?.to_vec();
        let reps =
            spec.punctures.iter().map(|l| spec.datum.minimal_coset_reps(l)).collect::<Result<Vec<_>>>()?;
        let mut total: u128 = 1;
        for _ in 0..2 * spec.genus {
            total = total.saturating_mul(weyl.len() as u128);
        }
        for r in &reps {
            total = total.saturating_mul(r.len() as u128);
        }
        Ok(CellEnumerator { weyl, reps, levis: spec.punctures.clone(), genus: spec.genus, total })
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Cell number `idx`, with its handle pairs (twists still `e`).
    pub fn cell(&self, mut idx: u128) -> CellIndex {
        let mut pick = |n: usize| {
            let i = (idx % n as u128) as usize;
            idx /= n as u128;
            i
        };
        let mut handles = Vec::with_capacity(self.genus);
        let e = self.weyl[0];
        for _ in 0..self.genus {
            let a = self.weyl[pick(self.weyl.len())];
            let b = self.weyl[pick(self.weyl.len())];
            handles.push(Handle { pi1: a, pi2: b, twist: e });
        }
        let punctures = self
            .reps
            .iter()
            .zip(&self.levis)
            .map(|(r, l)| Puncture { levi: l.clone(), rep: r[pick(r.len())] })
            .collect();
        CellIndex { handles, punctures }
    }
}

/// Largest number of cells a motive computation will visit.
pub const CELL_BUDGET: u128 = 5_000_000;

fn apply_twists(spec: &StackSpec, cell: &mut CellIndex) -> Result<()> {
    if let HandleTwists::Rule(f) = &spec.twists {
        let pairs: Vec<(WeylElement, WeylElement)> = cell.handles.iter().map(|h| (h.pi1, h.pi2)).collect();
        let ws = f(&spec.datum, &pairs);
        if ws.len() != pairs.len() {
            return Err(Error::InvalidInput("twist rule returned the wrong number of twists".into()));
        }
        for (h, w) in cell.handles.iter_mut().zip(ws) {
            h.twist = w;
        }
    }
    Ok(())
}

fn walks_of(spec: &StackSpec, cell: &CellIndex) -> Result<Vec<Walk>> {
    let word = cell_word(&spec.datum, cell, spec.section)?;
    let e = spec.datum.identity();
    enumerate_walks(&spec.datum, &word.unipotent_word, &e, Some(&e))
}

fn run_cells<T: Send>(
    spec: &StackSpec,
    f: impl Fn(CellIndex) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    let cells = CellEnumerator::new(spec)?;
    if cells.len() > CELL_BUDGET {
        return Err(Error::Budget(format!("{} cells exceed the budget {CELL_BUDGET}", cells.len())));
    }
    let total = cells.len() as u64;
    let job = |idx: u64| -> Result<T> {
        let mut cell = cells.cell(idx as u128);
        apply_twists(spec, &mut cell)?;
        f(cell)
    };
    #[cfg(feature = "parallel")]
    if spec.jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        // collect keeps index order, so the reduction below is deterministic
        return pool.install(|| (0..total).into_par_iter().map(job).collect());
    }
    (0..total).map(job).collect()
}

/// Sum of the cell classes over all cells and surjective walks.
pub fn naive_motive(spec: &StackSpec) -> Result<MotiveClass> {
    let parts = run_cells(spec, |cell| {
        let mut acc = MotiveClass::zero();
        for w in walks_of(spec, &cell)? {
            acc += &cell_class(spec, &cell, &w)?;
        }
        Ok(acc)
    })?;
    Ok(parts.into_iter().sum())
}

/// Whether a stringy result rests on unproven statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    /// Rank one, or only untwisted sectors occur.
    Unconditional,
    /// Uses the fixed-locus identity for twisted sectors in rank >= 2.
    Conditional,
}

impl Validity {
    pub fn tag(self) -> &'static str {
        match self {
            Validity::Unconditional => "unconditional",
            Validity::Conditional => "conditional",
        }
    }
}

/// One contributing cell and walk of a stringy sum.
#[derive(Clone, Debug)]
pub struct CellTerm {
    pub cell: CellIndex,
    pub steps: String,
    pub i_p: i64,
    pub m1: BigInt,
    pub m2: BigInt,
}

#[derive(Clone, Debug)]
pub struct StringyMotive {
    pub class: MotiveClass,
    pub validity: Validity,
    /// Some result relies on `w_i = e` where the twists matter.
    pub identity_convention: bool,
    pub terms: Vec<CellTerm>,
}

impl StringyMotive {
    pub fn to_json(&self, datum: &RootDatum) -> Value {
        json!({
            "motive": self.class.to_json(),
            "display": self.class.to_string(),
            "validity": self.validity.tag(),
            "identity_twist_convention": self.identity_convention,
            "cells": self.terms.iter().map(|t| json!({
                "cell": t.cell.to_json(datum),
                "steps": t.steps,
                "i_p": t.i_p,
                "m1": crate::matrix::int_json(&t.m1),
                "m2": crate::matrix::int_json(&t.m2),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `sum m1(F) m2(F) (q-1)^{i_p} q^{(d-i_p)/2}` over surjective cells.
pub fn stringy_motive(spec: &StackSpec) -> Result<StringyMotive> {
    let datum = &spec.datum;
    let f = spec.twist.subgroup(datum);
    let rule = spec.twists.rule();
    let parts = run_cells(spec, |cell| {
        let mut terms = Vec::new();
        let mut acc = MotiveClass::zero();
        let mut convention = false;
        for w in walks_of(spec, &cell)? {
            if !cell_invariants(datum, &cell, &w)?.surjective {
                continue;
            }
            let geo = CellGeometry::new(spec, &cell, &w);
            geo.check()?;
            let ts = twisted_sectors(datum, &cell, &w, &f, rule)?;
            convention |= ts.identity_convention;
            acc += &geo.monomial().scale(&(&ts.m1 * &ts.m2));
            terms.push(CellTerm {
                cell: cell.clone(),
                steps: w.steps().iter().map(|s| s.tag()).collect(),
                i_p: geo.i_p,
                m1: ts.m1,
                m2: ts.m2,
            });
        }
        Ok((acc, terms, convention))
    })?;
    let mut class = MotiveClass::zero();
    let mut terms = Vec::new();
    let mut identity_convention = false;
    for (a, t, c) in parts {
        class += &a;
        terms.extend(t);
        identity_convention |= c;
    }
    let validity = if datum.rank() == 1 || terms.iter().all(|t| t.m1.is_one()) {
        Validity::Unconditional
    } else {
        Validity::Conditional
    };
    Ok(StringyMotive { class, validity, identity_convention, terms })
}

/// Both sides of the mirror identity and their difference.
#[derive(Clone, Debug)]
pub struct MirrorReport {
    pub lhs: StringyMotive,
    pub rhs: StringyMotive,
    pub difference: MotiveClass,
}

impl MirrorReport {
    pub fn equal(&self) -> bool {
        self.difference.is_zero()
    }

    /// Exponent and coefficients of the highest differing term.
    pub fn first_difference(&self) -> Option<(i64, BigInt, BigInt)> {
        let e = self.difference.degree()?;
        Some((e, self.lhs.class.coeff(e), self.rhs.class.coeff(e)))
    }

    pub fn validity(&self) -> Validity {
        if self.lhs.validity == Validity::Unconditional && self.rhs.validity == Validity::Unconditional {
            Validity::Unconditional
        } else {
            Validity::Conditional
        }
    }

    pub fn to_json(&self, datum: &RootDatum, dual: &RootDatum) -> Value {
        let mut v = json!({
            "equal": self.equal(),
            "validity": self.validity().tag(),
            "lhs": self.lhs.to_json(datum),
            "rhs": self.rhs.to_json(dual),
            "difference": self.difference.to_json(),
        });
        if let Some((e, a, b)) = self.first_difference() {
            v["first_difference"] = json!({"exponent": e, "lhs": a.to_string(), "rhs": b.to_string()});
        }
        v
    }
}

/// Stringy motive of `G/F` against that of the simply connected dual with
/// the twist `(Z(G)/F)^v`. Levi subsets carry over index by index.
pub fn mirror_check(spec: &StackSpec) -> Result<(MirrorReport, RootDatum)> {
    if !spec.datum.is_simply_connected() {
        return Err(Error::Precondition("mirror check needs a simply connected source".into()));
    }
    let f = spec.twist.subgroup(&spec.datum);
    let dual = spec.datum.langlands_dual(Isogeny::SimplyConnected)?;
    let f_dual = crate::duality::dual_twist(&spec.datum, &f)?;
    let twists = match &spec.twists {
        HandleTwists::Rule(r) => {
            let r = r.clone();
            HandleTwists::Rule(Arc::new(move |d: &RootDatum, pairs: &[(WeylElement, WeylElement)]| {
                let back: Vec<(WeylElement, WeylElement)> =
                    pairs.iter().map(|(a, b)| (a.to_dual(), b.to_dual())).collect();
                r(d, &back).into_iter().map(|w| w.to_dual()).collect()
            }))
        }
        other => other.clone(),
    };
    let dual_spec = StackSpec {
        datum: dual.clone(),
        genus: spec.genus,
        punctures: spec.punctures.clone(),
        twist: TwistSpec::Explicit(f_dual),
        twists,
        section: spec.section,
        generic_assumed: spec.generic_assumed,
        jobs: spec.jobs,
    };
    let lhs = stringy_motive(spec)?;
    let rhs = stringy_motive(&dual_spec)?;
    let difference = &lhs.class - &rhs.class;
    Ok((MirrorReport { lhs, rhs, difference }, dual))
}
