//! Exact lattice arithmetic over `Z`: Hermite and Smith normal forms,
//! sublattices of `Z^n`, finitely generated abelian quotients, and finite
//! subgroups of a torus described by the characters that cut them out.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{int_json, rat_json, IntMatrix, RatMatrix};

/// Row Hermite normal form with transform: returns `(H, U, rank)` with
/// `U * m = H`, `U` unimodular, `H` in row echelon form with positive pivots
/// and entries above each pivot reduced into `[0, pivot)`. The first `rank`
/// rows of `H` are nonzero, the rest are zero.
pub fn row_hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = false;
        loop {
            let piv = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()));
            let Some(piv) = piv else { break };
            found = true;
            h.swap_rows(r, piv);
            u.swap_rows(r, piv);
            let mut clean = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_floor(h.get(r, c));
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, c).div_floor(h.get(r, c));
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u, r)
}

/// Smith normal form: returns `(U, D, V)` with `U * m * V = D`, `U` and `V`
/// unimodular, `D` diagonal with nonnegative entries `d_1 | d_2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                // a smaller remainder appeared in row or column t: make it the pivot
                let mut bi = (t, t);
                for i in t + 1..rows {
                    if !d.get(i, t).is_zero() && d.get(i, t).abs() < d.get(bi.0, bi.1).abs() {
                        bi = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !d.get(t, j).is_zero() && d.get(t, j).abs() < d.get(bi.0, bi.1).abs() {
                        bi = (t, j);
                    }
                }
                d.swap_rows(t, bi.0);
                u.swap_rows(t, bi.0);
                d.swap_cols(t, bi.1);
                v.swap_cols(t, bi.1);
                continue;
            }
            let piv = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).mod_floor(&piv).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (u, d, v)
}

/// Nonzero diagonal entries of the Smith form of `m`, in divisibility order.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let (_, d, _) = smith_normal_form(m);
    (0..d.rows().min(d.cols()))
        .map(|i| d.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    row_hnf(m).2
}

/// A `Z`-basis of `{x in Z^n : m x = 0}` for an `a x n` matrix `m`.
pub fn right_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    left_kernel(&m.transpose())
}

/// A `Z`-basis of `{y in Z^a : y m = 0}` for an `a x n` matrix `m`.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (_, u, r) = row_hnf(m);
    (r..m.rows()).map(|i| u.row(i).to_vec()).collect()
}

/// A finitely generated abelian group `Z^free_rank + sum Z/d_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FiniteAbelianGroup {
    /// Normalizes arbitrary cyclic orders into invariant factors; zeros count
    /// as free summands and ones are dropped.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let free_rank = orders.iter().filter(|d| d.is_zero()).count();
        let diag: Vec<BigInt> = orders.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        let mut m = IntMatrix::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        let invariant_factors = elementary_divisors(&m).into_iter().filter(|d| !d.is_one()).collect();
        FiniteAbelianGroup { invariant_factors, free_rank }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { invariant_factors: vec![], free_rank: 0 }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[BigInt::from(n)])
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Isomorphism class of the Pontryagin dual of the torsion part. For
    /// finite groups this is the group itself up to a non-canonical
    /// isomorphism, which is all the comparisons here need.
    pub fn dual(&self) -> Self {
        FiniteAbelianGroup { invariant_factors: self.invariant_factors.clone(), free_rank: self.free_rank }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "invariant_factors": self.invariant_factors.iter().map(int_json).collect::<Vec<_>>(),
            "free_rank": self.free_rank,
        })
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// A sublattice of `Z^n`, stored by its row Hermite basis so that equality
/// and hashing are representation independent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    /// The lattice generated by the columns of an `n x m` matrix.
    pub fn from_generators(gens: &IntMatrix) -> Self {
        Self::from_row_generators(&gens.transpose())
    }

    /// The lattice generated by the given vectors of `Z^n`.
    pub fn from_vectors(n: usize, vectors: &[Vec<BigInt>]) -> Self {
        Self::from_row_generators(&IntMatrix::from_rows(vectors.to_vec(), n))
    }

    fn from_row_generators(rows: &IntMatrix) -> Self {
        let n = rows.cols();
        let (h, _, r) = row_hnf(rows);
        let basis = IntMatrix::from_rows((0..r).map(|i| h.row(i).to_vec()).collect(), n);
        Sublattice { ambient_rank: n, basis }
    }

    pub fn full(n: usize) -> Self {
        Sublattice { ambient_rank: n, basis: IntMatrix::identity(n) }
    }

    pub fn zero(n: usize) -> Self {
        Sublattice { ambient_rank: n, basis: IntMatrix::zeros(0, n) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    /// Hermite basis vectors.
    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.row_vectors()
    }

    /// `n x rank` matrix whose columns are the Hermite basis.
    pub fn generators(&self) -> IntMatrix {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        let mut col = 0;
        for i in 0..self.rank() {
            while self.basis.get(i, col).is_zero() {
                if !rest[col].is_zero() {
                    return None;
                }
                col += 1;
            }
            let (q, r) = rest[col].div_rem(self.basis.get(i, col));
            if !r.is_zero() {
                return None;
            }
            for j in col..self.ambient_rank {
                let d = self.basis.get(i, j) * &q;
                rest[j] -= d;
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    fn check_ambient(&self, other: &Sublattice) -> Result<()> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::Dimension(format!(
                "sublattices of Z^{} and Z^{}",
                self.ambient_rank, other.ambient_rank
            )));
        }
        Ok(())
    }

    pub fn is_sublattice_of(&self, other: &Sublattice) -> bool {
        self.ambient_rank == other.ambient_rank
            && (0..self.rank()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        self.check_ambient(other)?;
        Ok(Self::from_row_generators(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Sublattice) -> Result<Sublattice> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        let ra = self.rank();
        let gens: Vec<Vec<BigInt>> = left_kernel(&stacked)
            .into_iter()
            .map(|y| {
                let x = IntMatrix::from_rows(vec![y[..ra].to_vec()], ra);
                x.mul(&self.basis).expect("shapes agree").row(0).to_vec()
            })
            .collect();
        Ok(Self::from_vectors(self.ambient_rank, &gens))
    }

    /// `{x in Z^n : map x in target}` for an `m x n` integer map.
    pub fn preimage(map: &IntMatrix, target: &Sublattice) -> Result<Sublattice> {
        if map.rows() != target.ambient_rank {
            return Err(Error::Dimension("preimage map does not land in the target ambient".into()));
        }
        let n = map.cols();
        let mut neg = target.basis.clone();
        for i in 0..neg.rows() {
            neg.negate_row(i);
        }
        let stacked = map.transpose().vstack(&neg)?;
        let gens: Vec<Vec<BigInt>> = left_kernel(&stacked).into_iter().map(|y| y[..n].to_vec()).collect();
        Ok(Self::from_vectors(n, &gens))
    }

    /// Image under an `m x n` integer map.
    pub fn image(&self, map: &IntMatrix) -> Result<Sublattice> {
        if map.cols() != self.ambient_rank {
            return Err(Error::Dimension("image map has the wrong source".into()));
        }
        Ok(Self::from_generators(&map.mul(&self.generators())?))
    }

    /// `(L tensor Q) intersected with Z^n`.
    pub fn saturation(&self) -> Sublattice {
        let n = self.ambient_rank;
        let perp = right_kernel(&self.basis);
        if perp.is_empty() {
            return Self::full(n);
        }
        let perp = IntMatrix::from_rows(perp, n);
        Self::from_vectors(n, &right_kernel(&perp))
    }

    /// Coordinates of `self`'s basis in `sup`'s basis, as a `rank x sup.rank` matrix.
    fn relative_basis(&self, sup: &Sublattice) -> Result<IntMatrix> {
        self.check_ambient(sup)?;
        let rows = (0..self.rank())
            .map(|i| {
                sup.coordinates(self.basis.row(i))
                    .ok_or_else(|| Error::Containment("lattice is not contained in the ambient".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_rows(rows, sup.rank()))
    }

    /// Index `[sup : self]`; errors when it is infinite.
    pub fn index_in(&self, sup: &Sublattice) -> Result<BigInt> {
        quotient_group(sup, self)?
            .order()
            .ok_or_else(|| Error::Infinite("index of a lower-rank sublattice".into()))
    }

    /// The dual lattice `{y in Q^n : <b, y> in Z for every basis vector b}`,
    /// as the columns of a rational matrix. Requires full rank.
    pub fn dual(&self) -> Result<RatMatrix> {
        if !self.is_full_rank() {
            return Err(Error::Infinite("dual of a lower-rank lattice".into()));
        }
        self.basis.to_rational().inverse()
    }

    pub fn to_json(&self) -> Value {
        self.basis.to_json()
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `ambient / sub` by invariant factors. Errors unless `sub` is contained in
/// `ambient`.
pub fn quotient_group(ambient: &Sublattice, sub: &Sublattice) -> Result<FiniteAbelianGroup> {
    let rel = sub.relative_basis(ambient)?;
    let divisors = elementary_divisors(&rel);
    let free_rank = ambient.rank() - divisors.len();
    let mut g = FiniteAbelianGroup::from_cyclic_orders(&divisors);
    g.free_rank = free_rank;
    Ok(g)
}

/// A closed subgroup `{exp(2 pi i u) : K u in Z^M}` of the torus
/// `t / t(Z)`, with `u` in coordinates of a basis of `t(Z)`. The rows of `K`
/// are characters. When `K` has full column rank the group is finite and
/// equals `L / Z^n` for the rational overlattice `L = {u : K u in Z^M}`.
#[derive(Clone, Debug)]
pub struct TorusSubgroup {
    rank: usize,
    characters: IntMatrix,
}

impl TorusSubgroup {
    pub fn from_characters(characters: IntMatrix) -> Self {
        TorusSubgroup { rank: characters.cols(), characters }
    }

    /// The whole torus of rank `n` (no constraints).
    pub fn whole(n: usize) -> Self {
        Self::from_characters(IntMatrix::zeros(0, n))
    }

    /// The trivial subgroup, overlattice `t(Z)` itself.
    pub fn trivial(n: usize) -> Self {
        Self::from_characters(IntMatrix::identity(n))
    }

    /// The subgroup with the given overlattice (columns of `basis`), which
    /// must contain `Z^n`.
    pub fn from_overlattice(basis: &RatMatrix) -> Result<Self> {
        let inv = basis.inverse()?;
        let chars = inv
            .to_integer()
            .ok_or_else(|| Error::Containment("overlattice does not contain t(Z)".into()))?;
        Ok(Self::from_characters(chars))
    }

    pub fn torus_rank(&self) -> usize {
        self.rank
    }

    pub fn characters(&self) -> &IntMatrix {
        &self.characters
    }

    pub fn intersect(&self, other: &TorusSubgroup) -> Result<TorusSubgroup> {
        if self.rank != other.rank {
            return Err(Error::Dimension("torus subgroups of different tori".into()));
        }
        Ok(Self::from_characters(self.characters.vstack(&other.characters)?))
    }

    /// `{u : f u in self}` for an integer endomorphism `f` of `t(Z)`.
    pub fn preimage(&self, f: &IntMatrix) -> Result<TorusSubgroup> {
        Ok(Self::from_characters(self.characters.mul(f)?))
    }

    /// Dimension of the identity component.
    pub fn dimension(&self) -> usize {
        self.rank - rank(&self.characters)
    }

    pub fn is_finite(&self) -> bool {
        self.dimension() == 0
    }

    /// The component group; equals the whole group when it is finite.
    pub fn component_group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_cyclic_orders(&elementary_divisors(&self.characters))
    }

    /// The group itself, erroring when it has positive dimension.
    pub fn group(&self) -> Result<FiniteAbelianGroup> {
        if !self.is_finite() {
            return Err(Error::Infinite(format!("torus subgroup of dimension {}", self.dimension())));
        }
        Ok(self.component_group())
    }

    pub fn cardinality(&self) -> Result<BigInt> {
        Ok(self.group()?.order().expect("finite"))
    }

    /// Columns form a basis of `L = {u : K u in Z^M}`; requires finiteness.
    pub fn overlattice(&self) -> Result<RatMatrix> {
        if !self.is_finite() {
            return Err(Error::Infinite("overlattice of a positive-dimensional subgroup".into()));
        }
        let (_, d, v) = smith_normal_form(&self.characters);
        let n = self.rank;
        let mut scale = RatMatrix::zeros(n, n);
        for i in 0..n {
            scale.set(i, i, BigRational::new(BigInt::one(), d.get(i, i).clone()));
        }
        v.to_rational().mul(&scale)
    }

    pub fn contains(&self, u: &[BigRational]) -> bool {
        (0..self.characters.rows()).all(|i| {
            let s: BigRational = self
                .characters
                .row(i)
                .iter()
                .zip(u)
                .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                .sum();
            s.is_integer()
        })
    }

    /// `self` is a subgroup of `other` iff every character of `other` is an
    /// integer combination of characters of `self`.
    pub fn is_subgroup_of(&self, other: &TorusSubgroup) -> bool {
        if self.rank != other.rank {
            return false;
        }
        let mine = Sublattice::from_vectors(self.rank, &self.characters.row_vectors());
        (0..other.characters.rows()).all(|i| mine.contains(other.characters.row(i)))
    }

    pub fn same_subgroup(&self, other: &TorusSubgroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// `self / sub` for finite subgroups with `sub` contained in `self`.
    pub fn quotient(&self, sub: &TorusSubgroup) -> Result<FiniteAbelianGroup> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::Containment("quotient by a non-subgroup".into()));
        }
        let big = self.overlattice()?;
        let small = sub.overlattice()?;
        let rel = big
            .inverse()?
            .mul(&small)?
            .to_integer()
            .ok_or_else(|| Error::Containment("overlattice coordinates are not integral".into()))?;
        Ok(FiniteAbelianGroup::from_cyclic_orders(&elementary_divisors(&rel)))
    }

    /// Coset representatives `u` in `[0,1)^n`, sorted; requires finiteness.
    pub fn elements(&self, cap: usize) -> Result<Vec<Vec<BigRational>>> {
        let order = self.cardinality()?;
        if order > BigInt::from(cap) {
            return Err(Error::Budget(format!("{order} elements exceed the cap {cap}")));
        }
        let (_, d, v) = smith_normal_form(&self.characters);
        let n = self.rank;
        let orders: Vec<BigInt> = (0..n).map(|i| d.get(i, i).clone()).collect();
        let mut out = Vec::new();
        let mut digits = vec![BigInt::zero(); n];
        loop {
            let z: Vec<BigRational> =
                (0..n).map(|i| BigRational::new(digits[i].clone(), orders[i].clone())).collect();
            let u: Vec<BigRational> = (0..n)
                .map(|r| {
                    let s: BigRational =
                        (0..n).map(|c| BigRational::from_integer(v.get(r, c).clone()) * &z[c]).sum();
                    &s - s.floor()
                })
                .collect();
            out.push(u);
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < orders[i] {
                    break;
                }
                digits[i] = BigInt::zero();
                i += 1;
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "characters": self.characters.to_json(),
            "dimension": self.dimension(),
            "component_group": self.component_group().to_json(),
        });
        if let Ok(l) = self.overlattice() {
            v["overlattice"] = l.to_json();
        }
        v
    }
}

/// JSON for a rational vector.
pub fn rat_vec_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_snf(a: &IntMatrix) -> IntMatrix {
        let (u, d, v) = smith_normal_form(a);
        assert_eq!(u.mul(a).unwrap().mul(&v).unwrap(), d);
        assert!(u.det().unwrap().abs().is_one());
        assert!(v.det().unwrap().abs().is_one());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert!(d.get(i, j).is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d.get(i, i).clone()).collect();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        d
    }

    #[test]
    fn smith_examples() {
        assert_eq!(check_snf(&IntMatrix::identity(3)), IntMatrix::identity(3));
        assert_eq!(check_snf(&m(&[vec![0, 2], vec![1, 1]])), m(&[vec![1, 0], vec![0, 2]]));
        assert!(check_snf(&IntMatrix::zeros(2, 3)).is_zero());
        let d = check_snf(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(d, m(&[vec![2, 0, 0], vec![0, 6, 0], vec![0, 0, 12]]));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = Sublattice::from_vectors(2, &[big(&[2, 0]), big(&[0, 2])]);
        let b = Sublattice::from_vectors(2, &[big(&[2, 2]), big(&[0, -2]), big(&[4, 0])]);
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_examples() {
        let z2 = Sublattice::full(2);
        let swap = Sublattice::from_vectors(2, &[big(&[0, 1]), big(&[1, 0])]);
        assert!(quotient_group(&z2, &swap).unwrap().is_trivial());
        let two = Sublattice::from_vectors(2, &[big(&[2, 0]), big(&[0, 2])]);
        let g = quotient_group(&z2, &two).unwrap();
        assert_eq!(g.invariant_factors(), &big(&[2, 2])[..]);
        assert_eq!(two.index_in(&z2).unwrap(), BigInt::from(4));
        // root lattice of C2 in E11*, E22* coordinates modulo <2e1, 2e2>
        let roots = Sublattice::from_vectors(2, &[big(&[0, 2]), big(&[1, -1])]);
        assert_eq!(quotient_group(&roots, &two).unwrap(), FiniteAbelianGroup::cyclic(2));
        assert!(quotient_group(&two, &roots).is_err());
    }

    #[test]
    fn free_rank_of_quotient() {
        let line = Sublattice::from_vectors(3, &[big(&[1, 1, 0])]);
        let g = quotient_group(&Sublattice::full(3), &line).unwrap();
        assert_eq!(g.free_rank(), 2);
        assert!(g.invariant_factors().is_empty());
        assert!(line.index_in(&Sublattice::full(3)).is_err());
    }

    #[test]
    fn sum_intersect_preimage() {
        let a = Sublattice::from_vectors(2, &[big(&[2, 0]), big(&[0, 3])]);
        let b = Sublattice::from_vectors(2, &[big(&[3, 0]), big(&[0, 2])]);
        assert_eq!(a.sum(&Sublattice::zero(2)).unwrap(), a);
        assert_eq!(a.sum(&b).unwrap(), Sublattice::full(2));
        assert_eq!(
            a.intersect(&b).unwrap(),
            Sublattice::from_vectors(2, &[big(&[6, 0]), big(&[0, 6])])
        );
        // x -> -2x on Z, preimage of Z is Z, preimage of 4Z is 2Z
        let f = m(&[vec![-2]]);
        assert_eq!(Sublattice::preimage(&f, &Sublattice::full(1)).unwrap(), Sublattice::full(1));
        let four = Sublattice::from_vectors(1, &[big(&[4])]);
        assert_eq!(
            Sublattice::preimage(&f, &four).unwrap(),
            Sublattice::from_vectors(1, &[big(&[2])])
        );
    }

    #[test]
    fn saturation_and_dual() {
        let l = Sublattice::from_vectors(3, &[big(&[2, 2, 0]), big(&[0, 0, 3])]);
        assert_eq!(l.saturation(), Sublattice::from_vectors(3, &[big(&[1, 1, 0]), big(&[0, 0, 1])]));
        let two = Sublattice::from_vectors(2, &[big(&[2, 0]), big(&[0, 2])]);
        let d = two.dual().unwrap();
        assert_eq!(d.get(0, 0), &BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn torus_subgroups() {
        // kernel of the characters 2e1, 2e2 on a rank-two torus
        let s = TorusSubgroup::from_characters(m(&[vec![2, 0], vec![0, 2]]));
        assert_eq!(s.group().unwrap().invariant_factors(), &big(&[2, 2])[..]);
        assert_eq!(s.elements(16).unwrap().len(), 4);
        let l = s.overlattice().unwrap();
        let back = TorusSubgroup::from_overlattice(&l).unwrap();
        assert!(back.same_subgroup(&s));
        assert!(TorusSubgroup::trivial(2).is_subgroup_of(&s));
        assert!(!s.is_subgroup_of(&TorusSubgroup::trivial(2)));
        let line = TorusSubgroup::from_characters(m(&[vec![1, -1]]));
        assert_eq!(line.dimension(), 1);
        assert!(line.cardinality().is_err());
        assert_eq!(line.intersect(&s).unwrap().cardinality().unwrap(), BigInt::from(2));
    }
}
