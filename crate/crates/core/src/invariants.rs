//! Lattice and group invariants of walks and cells.
//!
//! Cocharacters are in `t(Z)` coordinates, roots in simple-root
//! coordinates. Torus subgroups are cut out by characters (see
//! [`TorusSubgroup`]).

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{
    quotient_group, rat_vec_json, smith_normal_form, FiniteAbelianGroup, Sublattice, TorusSubgroup,
};
use crate::matrix::IntMatrix;
use crate::rootsys::{RootDatum, WeylElement};
use crate::walks::{torus_map_matrix, CellIndex, CellWord, Handle, Walk};

/// Which track conjugates the stay data: `pi_k^{-1}` or `p_k^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Track {
    Pi,
    P,
}

fn conjugator(datum: &RootDatum, walk: &Walk, k: usize, track: Track) -> WeylElement {
    let w = match track {
        Track::Pi => walk.pi()[k],
        Track::P => walk.p()[k],
    };
    datum.inverse(&w)
}

/// `w^{-1} h_{a_k}` over the stays `k`, in `t(Z)` coordinates.
pub fn stay_coroots(datum: &RootDatum, walk: &Walk, track: Track) -> Vec<Vec<BigInt>> {
    walk.stays()
        .into_iter()
        .map(|k| {
            let a = walk.word().letters[k - 1];
            let act = datum.cochar_action(&conjugator(datum, walk, k, track));
            act.mul_vec(&datum.simple_coroot_in_cochars(a)).expect("square")
        })
        .collect()
}

/// `w^{-1} alpha_{a_k}` over the stays `k`, in simple-root coordinates.
pub fn stay_roots(datum: &RootDatum, walk: &Walk, track: Track) -> Vec<Vec<i64>> {
    let n = datum.rank();
    walk.stays()
        .into_iter()
        .map(|k| {
            let a = walk.word().letters[k - 1];
            conjugator(datum, walk, k, track).act_root(&crate::rootsys::unit(n, a))
        })
        .collect()
}

/// `T(p)` generated from the chosen track.
pub fn t_of_walk(datum: &RootDatum, walk: &Walk, track: Track) -> Sublattice {
    Sublattice::from_vectors(datum.rank(), &stay_coroots(datum, walk, track))
}

/// Subgroup of `W` generated by `gens`.
pub fn generated_subgroup(datum: &RootDatum, gens: &[WeylElement]) -> HashSet<WeylElement> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(datum.identity());
    queue.push_back(datum.identity());
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let v = datum.mul(&w, g);
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// `W(p)`: generated by the reflections `w^{-1} s_{a_k} w` over the stays.
pub fn stay_reflection_group(datum: &RootDatum, walk: &Walk, track: Track) -> HashSet<WeylElement> {
    let gens: Vec<WeylElement> = walk
        .stays()
        .into_iter()
        .map(|k| {
            let winv = conjugator(datum, walk, k, track);
            let w = datum.inverse(&winv);
            let s = datum.simple_reflection(walk.word().letters[k - 1]);
            datum.mul(&datum.mul(&winv, &s), &w)
        })
        .collect();
    generated_subgroup(datum, &gens)
}

#[derive(Clone, Debug)]
pub struct WalkInvariants {
    pub t_p: Sublattice,
    pub q_p: Sublattice,
    pub z_p: FiniteAbelianGroup,
    pub pi1_p: FiniteAbelianGroup,
    pub s_p: TorusSubgroup,
    pub surjective: bool,
}

impl WalkInvariants {
    pub fn to_json(&self) -> Value {
        json!({
            "T_p": self.t_p.to_json(),
            "Q_p": self.q_p.to_json(),
            "Z_p": self.z_p.to_json(),
            "pi1_p": self.pi1_p.to_json(),
            "S_p": self.s_p.to_json(),
            "surjective": self.surjective,
        })
    }
}

fn big_rows(v: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn walk_invariants(datum: &RootDatum, walk: &Walk) -> WalkInvariants {
    let n = datum.rank();
    let t_p = t_of_walk(datum, walk, Track::Pi);
    let roots = stay_roots(datum, walk, Track::Pi);
    let q_p = Sublattice::from_vectors(n, &big_rows(&roots));
    let full = Sublattice::full(n);
    let z_p = quotient_group(&full, &q_p).expect("Q(p) lies in Q");
    let pi1_p = quotient_group(&full, &t_p).expect("T(p) lies in t(Z)");
    let s_p = TorusSubgroup::from_characters(datum.root_characters(&roots));
    let surjective = t_p.is_full_rank();
    WalkInvariants { t_p, q_p, z_p, pi1_p, s_p, surjective }
}

/// `w_k` lies in the subgroup generated by the `pi`s of earlier handles.
pub fn well_twisted(datum: &RootDatum, word: &CellWord) -> bool {
    handles_well_twisted(datum, &word.commutator_letters)
}

pub fn handles_well_twisted(datum: &RootDatum, handles: &[Handle]) -> bool {
    let mut gens: Vec<WeylElement> = Vec::new();
    for h in handles {
        if !h.twist.is_identity() && !generated_subgroup(datum, &gens).contains(&h.twist) {
            return false;
        }
        gens.push(h.pi1);
        gens.push(h.pi2);
    }
    true
}

#[derive(Clone, Debug)]
pub struct CellInvariants {
    pub walk: WalkInvariants,
    pub t_beta: Sublattice,
    pub pi1_beta: FiniteAbelianGroup,
    /// `Q ∩ Q_beta(p)`.
    pub q_beta: Sublattice,
    pub z_beta: FiniteAbelianGroup,
    /// `S(p)` cut down to the points whose `pi_l` conjugate is fixed by
    /// every handle letter.
    pub s_beta: TorusSubgroup,
    pub s_tilde: TorusSubgroup,
    /// The torus map of the cell hits all of `T`.
    pub surjective: bool,
}

impl CellInvariants {
    /// `S_beta(p) / Z(G)`; differs from `z_beta` when a handle letter has a
    /// disconnected fixed locus.
    pub fn s_beta_mod_center(&self, datum: &RootDatum) -> Result<FiniteAbelianGroup> {
        self.s_beta.quotient(&datum.center())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "walk": self.walk.to_json(),
            "T_beta": self.t_beta.to_json(),
            "pi1_beta": self.pi1_beta.to_json(),
            "Q_beta": self.q_beta.to_json(),
            "Z_beta": self.z_beta.to_json(),
            "S_beta": self.s_beta.to_json(),
            "S_tilde": self.s_tilde.to_json(),
            "surjective": self.surjective,
        })
    }
}

fn minus_identity(m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        let v = out.get(i, i) - 1;
        out.set(i, i, v);
    }
    out
}

/// Characters of `{u : (pi - id) pi_l u in L}` for every handle letter,
/// where `chars` cuts out `L`.
fn handle_constraints(datum: &RootDatum, cell: &CellIndex, walk: &Walk, chars: &IntMatrix) -> Result<IntMatrix> {
    let n = datum.rank();
    let last = datum.cochar_action(walk.end());
    let mut out = IntMatrix::zeros(0, n);
    for h in &cell.handles {
        for pi in [&h.pi1, &h.pi2] {
            let m = minus_identity(&datum.cochar_action(pi)).mul(&last)?;
            out = out.vstack(&chars.mul(&m)?)?;
        }
    }
    Ok(out)
}

pub fn cell_invariants(datum: &RootDatum, cell: &CellIndex, walk: &Walk) -> Result<CellInvariants> {
    if !handles_well_twisted(datum, &cell.handles) {
        return Err(Error::Precondition("cell word is not well-twisted".into()));
    }
    let n = datum.rank();
    let inv = walk_invariants(datum, walk);
    let t_beta = inv.t_p.sum(&Sublattice::from_generators(&torus_map_matrix(datum, cell, walk)))?;
    let pi1_beta = quotient_group(&Sublattice::full(n), &t_beta)?;

    let last = walk.end();
    let mut extra: Vec<Vec<BigInt>> = Vec::new();
    for h in &cell.handles {
        for pi in [&h.pi1, &h.pi2] {
            let pinv = datum.inverse(pi);
            for i in 0..n {
                let e = crate::rootsys::unit(n, i);
                let moved = pinv.act_root(&e);
                let diff: Vec<i64> = moved.iter().zip(&e).map(|(a, b)| a - b).collect();
                extra.push(last.act_root(&diff).into_iter().map(BigInt::from).collect());
            }
        }
    }
    let q_beta = inv.q_p.sum(&Sublattice::from_vectors(n, &extra).saturation())?;
    let z_beta = quotient_group(&Sublattice::full(n), &q_beta)?;

    let center = datum.center();
    let s_beta = TorusSubgroup::from_characters(
        inv.s_p.characters().vstack(&handle_constraints(datum, cell, walk, &IntMatrix::identity(n))?)?,
    );
    let s_tilde = TorusSubgroup::from_characters(
        inv.s_p.characters().vstack(&handle_constraints(datum, cell, walk, center.characters())?)?,
    );
    let surjective = t_beta.is_full_rank();
    Ok(CellInvariants { walk: inv, t_beta, pi1_beta, q_beta, z_beta, s_beta, s_tilde, surjective })
}

/// How the handle twists `w_i` of a cell are to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistRule {
    /// The twists stored in the cell are authoritative.
    Given,
    /// Treat every `w_i` as `e` and flag the result when that matters.
    AssumeIdentity,
    /// The twists are unknown; refuse when they would matter.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct Sector {
    /// Representative of the class in `t(Z)` coordinates, in `[0,1)`.
    pub rep: Vec<BigRational>,
    pub trivial: bool,
    /// `(pi - id) pi_l rep` modulo `t(Z)` for each handle letter.
    pub defects: Vec<Vec<BigRational>>,
    /// Fermionic shift, known in rank one.
    pub fermionic_shift: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct TwistedSectors {
    pub m1: BigInt,
    pub m2: BigInt,
    pub sectors: Vec<Sector>,
    /// The result relies on the convention `w_i = e`.
    pub identity_convention: bool,
}

impl TwistedSectors {
    pub fn to_json(&self) -> Value {
        json!({
            "m1": crate::matrix::int_json(&self.m1),
            "m2": crate::matrix::int_json(&self.m2),
            "identity_convention": self.identity_convention,
            "sectors": self.sectors.iter().map(|s| json!({
                "rep": rat_vec_json(&s.rep),
                "trivial": s.trivial,
                "defects": s.defects.iter().map(|d| rat_vec_json(d)).collect::<Vec<_>>(),
                "fermionic_shift": s.fermionic_shift,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Upper bound on the number of sector elements enumerated.
pub const SECTOR_CAP: usize = 1 << 16;

fn frac(v: Vec<BigRational>) -> Vec<BigRational> {
    v.into_iter().map(|x| &x - x.floor()).collect()
}

/// The twisted sectors of a cell for the central subgroup `f`.
pub fn twisted_sectors(
    datum: &RootDatum,
    cell: &CellIndex,
    walk: &Walk,
    f: &TorusSubgroup,
    rule: TwistRule,
) -> Result<TwistedSectors> {
    let n = datum.rank();
    let center = datum.center();
    if f.torus_rank() != n || !f.is_subgroup_of(&center) {
        return Err(Error::InvalidInput("F must be a subgroup of Z(G)".into()));
    }
    let f_trivial = f.same_subgroup(&TorusSubgroup::trivial(n));
    let ambiguous = n >= 2 && cell.genus() >= 2 && !f_trivial;
    if ambiguous && rule == TwistRule::Unknown {
        return Err(Error::Precondition(
            "handle twists are needed for F != 1 at genus >= 2 in rank >= 2".into(),
        ));
    }
    let ci = cell_invariants(datum, cell, walk)?;
    if !ci.s_tilde.is_finite() {
        return Err(Error::Infinite("S~ is positive-dimensional; the cell is not surjective".into()));
    }
    let l_f = TorusSubgroup::from_characters(
        ci.s_tilde.characters().vstack(&handle_constraints(datum, cell, walk, f.characters())?)?,
    );
    let m1 = l_f.cardinality()? / datum.center_order();

    let m2 = if f_trivial {
        ci.pi1_beta.order().ok_or_else(|| Error::Infinite("pi_1,beta is infinite".into()))?
    } else {
        let lambda = f.overlattice()?;
        let last_inv = datum.cochar_action(&datum.inverse(walk.end())).to_rational();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for h in &cell.handles {
            let w = if rule == TwistRule::Given { h.twist } else { datum.identity() };
            let winv = datum.inverse(&w);
            for pi in [&h.pi1, &h.pi2] {
                let conj = datum.mul(&datum.mul(&w, pi), &winv);
                let m = last_inv.mul(&minus_identity(&datum.cochar_action(&conj)).to_rational())?.mul(&lambda)?;
                let m = m
                    .to_integer()
                    .ok_or_else(|| Error::Verification("(w pi w^-1 - id) Q^* left t(Z)".into()))?;
                cols.extend(m.column_vectors());
            }
        }
        let lat = ci.t_beta.sum(&Sublattice::from_vectors(n, &cols))?;
        lat.index_in(&Sublattice::full(n))?
    };

    let last = datum.cochar_action(walk.end());
    let letters: Vec<IntMatrix> = cell
        .handles
        .iter()
        .flat_map(|h| [h.pi1, h.pi2])
        .map(|pi| minus_identity(&datum.cochar_action(&pi)).mul(&last).expect("square"))
        .collect();
    let mut sectors: Vec<Sector> = Vec::new();
    for y in l_f.elements(SECTOR_CAP)? {
        if sectors.iter().any(|s| {
            let d: Vec<BigRational> = s.rep.iter().zip(&y).map(|(a, b)| a - b).collect();
            center.contains(&d)
        }) {
            continue;
        }
        let trivial = center.contains(&y);
        let defects = letters.iter().map(|m| frac(m.to_rational().mul_vec(&y))).collect();
        let fermionic_shift = (n == 1).then(|| {
            if trivial {
                0
            } else {
                2 * cell.genus() as i64 + cell.punctures.len() as i64 + 1 - 2
            }
        });
        sectors.push(Sector { rep: y, trivial, defects, fermionic_shift });
    }
    if BigInt::from(sectors.len()) != m1 {
        return Err(Error::Verification(format!("{} sectors but m1 = {m1}", sectors.len())));
    }
    Ok(TwistedSectors { m1, m2, sectors, identity_convention: ambiguous && rule == TwistRule::AssumeIdentity })
}

/// The tilde variants: `Z~_beta = S~ / Z(G)`, and `T~_beta`, `pi~_1,beta`
/// built from `Q^*` instead of `t(Z)`.
#[derive(Clone, Debug)]
pub struct TildeInvariants {
    pub z_tilde: FiniteAbelianGroup,
    pub t_tilde: Sublattice,
    pub pi1_tilde: FiniteAbelianGroup,
}

impl TildeInvariants {
    pub fn to_json(&self) -> Value {
        json!({
            "Z_tilde": self.z_tilde.to_json(),
            "T_tilde": self.t_tilde.to_json(),
            "pi1_tilde": self.pi1_tilde.to_json(),
        })
    }
}

pub fn tilde_invariants(datum: &RootDatum, cell: &CellIndex, walk: &Walk, rule: TwistRule) -> Result<TildeInvariants> {
    let n = datum.rank();
    let ci = cell_invariants(datum, cell, walk)?;
    let center = datum.center();
    let z_tilde = ci.s_tilde.quotient(&center)?;
    let coweights = center.overlattice()?;
    let last_inv = datum.cochar_action(&datum.inverse(walk.end())).to_rational();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for h in &cell.handles {
        let w = if rule == TwistRule::Given { h.twist } else { datum.identity() };
        let wm = datum.cochar_action(&w).to_rational();
        for pi in [&h.pi1, &h.pi2] {
            let m = last_inv
                .mul(&wm)?
                .mul(&minus_identity(&datum.cochar_action(pi)).to_rational())?
                .mul(&coweights)?;
            let m = m
                .to_integer()
                .ok_or_else(|| Error::Verification("(pi - id) Q^* left t(Z)".into()))?;
            cols.extend(m.column_vectors());
        }
    }
    let t_tilde = ci.walk.t_p.sum(&Sublattice::from_vectors(n, &cols))?;
    let pi1_tilde = quotient_group(&Sublattice::full(n), &t_tilde)?;
    Ok(TildeInvariants { z_tilde, t_tilde, pi1_tilde })
}

/// Explicit class representatives `C_j = E(y_j)` with their Levi types.
#[derive(Clone, Debug, Default)]
pub struct GenericityQuery {
    /// `y_j` in simple-coroot coordinates with the Levi subset fixing it.
    pub classes: Vec<(Vec<BigRational>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Genericity {
    Generic,
    /// A product `sum_j w_j y_j` (in `t(Z)` coordinates) landing in a proper
    /// `T_S`, with a basis of `t_S`.
    NotGeneric { product: Vec<BigRational>, span: Vec<Vec<BigInt>> },
    Undecided,
}

fn in_parabolic(datum: &RootDatum, w: &WeylElement, levi: &[usize]) -> bool {
    datum.minimal_word(w).letters.iter().all(|l| levi.contains(l))
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let mut v: Vec<BigInt> = v.into_iter().map(|x| x / &g).collect();
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x < &BigInt::zero()) {
        v = v.into_iter().map(|x| -x).collect();
    }
    v
}

/// Proper rational subspaces spanned by differences of coroots (and zero),
/// as saturated lattices.
fn proper_spans(datum: &RootDatum) -> Vec<Sublattice> {
    let n = datum.rank();
    let mut hs: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]];
    for c in datum.positive_coroots() {
        let y: Vec<BigInt> = datum
            .cochar_basis_inverse()
            .mul_vec(&c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
            .expect("square");
        hs.push(y.iter().map(|x| -x).collect());
        hs.push(y);
    }
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for a in &hs {
        for b in &hs {
            let d = primitive(a.iter().zip(b).map(|(x, y)| x - y).collect());
            if d.iter().any(|x| !x.is_zero()) && !gens.contains(&d) {
                gens.push(d);
            }
        }
    }
    let zero = Sublattice::zero(n);
    let mut seen: Vec<Sublattice> = vec![zero.clone()];
    let mut frontier = vec![zero];
    while let Some(s) = frontier.pop() {
        for g in &gens {
            if s.saturation().contains(g) {
                continue;
            }
            let t = Sublattice::from_vectors(n, &[s.basis_vectors(), vec![g.clone()]].concat()).saturation();
            if t.rank() < n && !seen.contains(&t) {
                seen.push(t.clone());
                frontier.push(t);
            }
        }
    }
    seen
}

/// Membership test `x in t_S (x) Q + 1/2 Q^v + t(Z)`.
struct SpanTest {
    span: Sublattice,
    proj: IntMatrix,
    image: Sublattice,
}

impl SpanTest {
    fn new(datum: &RootDatum, span: Sublattice) -> SpanTest {
        let n = datum.rank();
        let d = span.rank();
        let proj = if d == 0 {
            IntMatrix::identity(n)
        } else {
            let (u, _, _) = smith_normal_form(&span.generators().transpose());
            IntMatrix::from_rows((d..n).map(|i| u.row(i).to_vec()).collect(), n)
        };
        // 2 t(Z) + Q^v, the doubled lattice
        let mut lat: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::from(2) } else { BigInt::zero() }).collect())
            .collect();
        lat.extend((0..n).map(|i| datum.simple_coroot_in_cochars(i)));
        let image_vecs: Vec<Vec<BigInt>> = lat.iter().map(|v| proj.mul_vec(v).expect("dims")).collect();
        let image = Sublattice::from_vectors(n - d, &image_vecs);
        SpanTest { span, proj, image }
    }

    fn contains(&self, x: &[BigRational]) -> bool {
        let two = BigRational::from_integer(BigInt::from(2));
        let doubled: Vec<BigRational> = x.iter().map(|v| v * &two).collect();
        let projected = self.proj.to_rational().mul_vec(&doubled);
        if projected.iter().any(|v| !v.is_integer()) {
            return false;
        }
        let ints: Vec<BigInt> = projected.into_iter().map(|v| v.to_integer()).collect();
        self.image.contains(&ints)
    }
}

/// Largest rank at which genericity is checked.
pub const GENERICITY_MAX_RANK: usize = 3;

/// Checks that no `sum_j w_j y_j` lies in a proper `T_S` (translated by the
/// finite torus part `E(1/2 Q^v)` of the Tits group).
pub fn is_generic(datum: &RootDatum, query: &GenericityQuery, budget: u64) -> Result<Genericity> {
    let n = datum.rank();
    if query.classes.is_empty() {
        return Err(Error::InvalidInput("no classes given".into()));
    }
    if n > GENERICITY_MAX_RANK {
        return Ok(Genericity::Undecided);
    }
    let weyl = datum.weyl_elements()?;
    let mut orbits: Vec<Vec<Vec<BigRational>>> = Vec::new();
    for (j, (y, levi)) in query.classes.iter().enumerate() {
        if y.len() != n {
            return Err(Error::Dimension(format!("class {} has {} coordinates", j + 1, y.len())));
        }
        let u = datum.coroot_to_cochar_coords(y);
        let mut orbit: Vec<Vec<BigRational>> = Vec::new();
        for w in weyl {
            let wy = w.act_coroot_rational(y);
            let diff = datum.coroot_to_cochar_coords(
                &wy.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>(),
            );
            let fixes = diff.iter().all(|v| v.is_integer());
            if fixes != in_parabolic(datum, w, levi) {
                return Err(Error::InvalidInput(format!(
                    "class {} is not nice for its Levi type: stabilizer differs at {}",
                    j + 1,
                    datum.render(w)
                )));
            }
            let wu = frac(datum.coroot_to_cochar_coords(&wy));
            if !orbit.contains(&wu) {
                orbit.push(wu);
            }
        }
        if j == 0 {
            orbit = vec![frac(u)];
        }
        orbits.push(orbit);
    }
    let spans: Vec<SpanTest> = proper_spans(datum).into_iter().map(|s| SpanTest::new(datum, s)).collect();
    let work = orbits.iter().fold(spans.len() as u128, |acc, o| acc.saturating_mul(o.len() as u128));
    if work > budget as u128 {
        return Ok(Genericity::Undecided);
    }
    let mut idx = vec![0usize; orbits.len()];
    loop {
        let mut sum = vec![BigRational::zero(); n];
        for (o, &i) in orbits.iter().zip(&idx) {
            for (s, v) in sum.iter_mut().zip(&o[i]) {
                *s += v;
            }
        }
        for t in &spans {
            if t.contains(&sum) {
                return Ok(Genericity::NotGeneric { product: frac(sum), span: t.span.basis_vectors() });
            }
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(Genericity::Generic);
            }
            idx[j] += 1;
            if idx[j] < orbits[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

pub fn genericity_json(g: &Genericity) -> Value {
    match g {
        Genericity::Generic => json!({"generic": true}),
        Genericity::Undecided => json!({"generic": null, "reason": "budget"}),
        Genericity::NotGeneric { product, span } => json!({
            "generic": false,
            "product": rat_vec_json(product),
            "span": span.iter().map(|v| v.iter().map(crate::matrix::int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
    }
}
