//! Duality of walks and cells: roots become coroots, steps are kept.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::{cell_invariants, tilde_invariants, twisted_sectors, walk_invariants, TwistRule};
use crate::lattice::{FiniteAbelianGroup, TorusSubgroup};
use crate::matrix::IntMatrix;
use crate::rootsys::{Isogeny, RootDatum};
use crate::walks::{CellIndex, Handle, Puncture, Walk};

/// A walk together with its dual on the Langlands dual datum.
#[derive(Clone)]
pub struct DualPair {
    pub source: RootDatum,
    pub cell: CellIndex,
    pub walk: Walk,
    pub target: RootDatum,
    pub dual_cell: CellIndex,
    pub dual_walk: Walk,
    /// False for a non simply connected source, where the map only goes
    /// one way (through the universal cover).
    pub involutive: bool,
}

pub fn dual_cell(cell: &CellIndex) -> CellIndex {
    CellIndex {
        handles: cell
            .handles
            .iter()
            .map(|h| Handle { pi1: h.pi1.to_dual(), pi2: h.pi2.to_dual(), twist: h.twist.to_dual() })
            .collect(),
        punctures: cell.punctures.iter().map(|p| Puncture { levi: p.levi.clone(), rep: p.rep.to_dual() }).collect(),
    }
}

/// The dual walk: same letters, same steps, on the simply connected dual.
pub fn dual_walk(datum: &RootDatum, cell: &CellIndex, walk: &Walk) -> Result<DualPair> {
    let target = datum.langlands_dual(Isogeny::SimplyConnected)?;
    let dual = Walk::from_steps(&target, walk.word().clone(), walk.start().to_dual(), walk.steps().to_vec())
        .map_err(|v| Error::Verification(format!("dual walk invalid: {v}")))?;
    let mapped: Vec<_> = walk.p().iter().map(|w| w.to_dual()).collect();
    if dual.p() != mapped.as_slice() {
        return Err(Error::Verification("dual walk tracks differ from the dual of the tracks".into()));
    }
    Ok(DualPair {
        source: datum.clone(),
        cell: cell.clone(),
        walk: walk.clone(),
        target,
        dual_cell: dual_cell(cell),
        dual_walk: dual,
        involutive: datum.is_simply_connected(),
    })
}

/// The twist `(Z/F)^v` on the dual side: the annihilator of `Lambda_F`
/// under the pairing `x^T A u`.
pub fn dual_twist(datum: &RootDatum, f: &TorusSubgroup) -> Result<TorusSubgroup> {
    if !datum.is_simply_connected() {
        return Err(Error::Precondition("dual twist needs a simply connected source".into()));
    }
    let basis = f.overlattice()?;
    let ab = datum.cartan_int_matrix().to_rational().mul(&basis)?;
    let chars = ab
        .transpose()
        .to_integer()
        .ok_or_else(|| Error::Verification("A Lambda_F is not integral".into()))?;
    Ok(TorusSubgroup::from_characters(chars))
}

/// One comparison in a duality report.
#[derive(Clone, Debug)]
pub struct DualityCheck {
    pub name: &'static str,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, Default)]
pub struct DualityReport {
    pub checks: Vec<DualityCheck>,
}

impl DualityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn group(&mut self, name: &'static str, lhs: &FiniteAbelianGroup, rhs: &FiniteAbelianGroup) {
        self.checks.push(DualityCheck { name, pass: lhs == &rhs.dual(), lhs: lhs.to_json(), rhs: rhs.to_json() });
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.all_pass(),
            "checks": self.checks.iter().map(|c| json!({
                "lemma": c.name,
                "pass": c.pass,
                "lhs": c.lhs,
                "rhs": c.rhs,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks the duality lemmas on one surjective cell of a simply connected
/// datum for the twist `f`.
pub fn verify_duality(
    datum: &RootDatum,
    cell: &CellIndex,
    walk: &Walk,
    f: &TorusSubgroup,
    rule: TwistRule,
) -> Result<DualityReport> {
    if !datum.is_simply_connected() {
        return Err(Error::Precondition("duality checks need a simply connected datum".into()));
    }
    let pair = dual_walk(datum, cell, walk)?;
    let (d2, c2, w2) = (&pair.target, &pair.dual_cell, &pair.dual_walk);
    let src = cell_invariants(datum, cell, walk)?;
    let dst = cell_invariants(d2, c2, w2)?;
    if !src.surjective || !dst.surjective {
        return Err(Error::Precondition(format!(
            "cell is not surjective (source {}, dual {})",
            src.surjective, dst.surjective
        )));
    }
    let mut report = DualityReport::default();
    let (a, b) = (walk_invariants(datum, walk), walk_invariants(d2, w2));
    report.group("Z(p*) = pi_1(p)^*", &b.z_p, &a.pi1_p);
    report.group("pi_1(p*) = Z(p)^*", &b.pi1_p, &a.z_p);
    let pairs = [("stays", walk.stays(), w2.stays()), ("ups", walk.ups(), w2.ups())];
    for (name, x, y) in pairs {
        report.checks.push(DualityCheck { name, pass: x == y, lhs: json!(x), rhs: json!(y) });
    }
    if cell.genus() > 0 || !cell.punctures.is_empty() {
        let ta = tilde_invariants(datum, cell, walk, rule)?;
        let tb = tilde_invariants(d2, c2, w2, rule)?;
        report.group("pi_1,beta(p*) = Z~_beta(p)^*", &dst.pi1_beta, &ta.z_tilde);
        report.group("pi~_1,beta(p*) = (S_beta(p)/Z(G))^*", &tb.pi1_tilde, &src.s_beta_mod_center(datum)?);
        report.group("S_beta(p*)/Z = pi~_1,beta(p)^*", &dst.s_beta_mod_center(d2)?, &ta.pi1_tilde);
        report.group("Z~_beta(p*) = pi_1,beta(p)^*", &tb.z_tilde, &src.pi1_beta);
    }
    let f_dual = dual_twist(datum, f)?;
    let here = twisted_sectors(datum, cell, walk, f, rule)?;
    let there = twisted_sectors(d2, c2, w2, &f_dual, rule)?;
    let prod = |m1: &num_bigint::BigInt, m2: &num_bigint::BigInt| m1 * m2;
    let (l, r) = (prod(&here.m1, &here.m2), prod(&there.m1, &there.m2));
    report.checks.push(DualityCheck {
        name: "m1 m2 (p, F) = m1 m2 (p*, (Z/F)^v)",
        pass: l == r,
        lhs: json!({"m1": here.m1.to_string(), "m2": here.m2.to_string()}),
        rhs: json!({"m1": there.m1.to_string(), "m2": there.m2.to_string()}),
    });
    Ok(report)
}

/// All subgroups `F` of `Z(G)`, each given as a torus subgroup. Small
/// centers only (at most a few dozen elements).
pub fn central_subgroups(datum: &RootDatum) -> Result<Vec<TorusSubgroup>> {
    let n = datum.rank();
    let center = datum.center();
    let elems = center.elements(4096)?;
    let mut out: Vec<TorusSubgroup> = Vec::new();
    // every subgroup of a group with at most two generators is generated by
    // at most two elements
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i..] {
            let mut basis = crate::matrix::RatMatrix::identity(n);
            let mut cols: Vec<Vec<num_rational::BigRational>> = (0..n).map(|j| basis.column(j)).collect();
            cols.push(x.clone());
            cols.push(y.clone());
            basis = lattice_basis(n, &cols)?;
            let sub = TorusSubgroup::from_overlattice(&basis)?;
            if !out.iter().any(|s| s.same_subgroup(&sub)) {
                out.push(sub);
            }
        }
    }
    Ok(out)
}

/// A basis of the lattice spanned by rational vectors (full rank).
fn lattice_basis(n: usize, cols: &[Vec<num_rational::BigRational>]) -> Result<crate::matrix::RatMatrix> {
    use num_integer::Integer;
    use num_traits::One;
    let den = cols
        .iter()
        .flatten()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Vec<num_bigint::BigInt>> = cols
        .iter()
        .map(|c| c.iter().map(|x| (x * num_rational::BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let lat = crate::lattice::Sublattice::from_vectors(n, &ints);
    let basis: IntMatrix = lat.generators();
    Ok(basis.to_rational().scale(&num_rational::BigRational::new(num_bigint::BigInt::one(), den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::{enumerate_walks, InstructionWord, Step};

    fn datum(t: &str) -> RootDatum {
        RootDatum::parse(t, Isogeny::SimplyConnected).unwrap()
    }

    #[test]
    fn involution_on_b2() {
        let d = datum("B2");
        let word = InstructionWord::new(vec![0, 1, 0, 1, 1, 0, 1, 0]);
        for w in enumerate_walks(&d, &word, &d.identity(), None).unwrap() {
            let pair = dual_walk(&d, &CellIndex::default(), &w).unwrap();
            let back = dual_walk(&pair.target, &pair.dual_cell, &pair.dual_walk).unwrap();
            assert_eq!(back.dual_walk, w);
            assert_eq!(back.target.cartan_matrix(), d.cartan_matrix());
        }
    }

    #[test]
    fn a1_genus_one_never_stay() {
        let d = datum("A1");
        let s = d.simple_reflection(0);
        let cell = CellIndex { handles: vec![Handle { pi1: d.identity(), pi2: s, twist: d.identity() }], punctures: vec![] };
        let w = Walk::from_steps(&d, InstructionWord::new(vec![0, 0]), d.identity(), vec![Step::Up, Step::Down]).unwrap();
        for f in central_subgroups(&d).unwrap() {
            let r = verify_duality(&d, &cell, &w, &f, TwistRule::Given).unwrap();
            assert!(r.all_pass(), "{}", r.to_json());
        }
    }

    #[test]
    fn trivial_walk_is_rejected() {
        let d = datum("A1");
        let w = Walk::from_steps(&d, InstructionWord::default(), d.identity(), vec![]).unwrap();
        let err = verify_duality(&d, &CellIndex::default(), &w, &d.center(), TwistRule::Given).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn central_subgroups_of_a3() {
        let d = datum("A3");
        assert_eq!(central_subgroups(&d).unwrap().len(), 3);
    }
}
