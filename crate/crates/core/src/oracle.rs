//! Brute-force cross-checks that share no code with the main pipeline:
//! point counts of rank one character stacks over finite fields, recursive
//! walk counts and coset-enumeration indices.
//!
//! Point counts are divided by `|SL_2(F_q)|`. For generic eigenvalues the
//! group acts with finite stabilizers equal to the center, and stabilizers of
//! connected groups have no nontrivial torsors over a finite field (Lang), so
//! the ratio is the point count of the quotient stack.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::Sublattice;
use crate::matrix::IntMatrix;
use crate::rootsys::{RootDatum, WeylElement};

/// A finite field with at most 13 elements, by addition and multiplication
/// tables on `0..q`. Element 0 is zero and 1 is one.
#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    p: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: usize) -> Result<FiniteField> {
        let (p, deg) = match q {
            2 | 3 | 5 | 7 | 11 | 13 => (q, 1),
            4 => (2, 2),
            8 => (2, 3),
            9 => (3, 2),
            _ => return Err(Error::Unsupported(format!("no field table for q = {q}"))),
        };
        // F_p[t]/(m(t)); elements are base-p digit vectors
        let modulus: Vec<usize> = match (p, deg) {
            (_, 1) => vec![],
            (2, 2) => vec![1, 1],    // t^2 = t + 1
            (2, 3) => vec![1, 1, 0], // t^3 = t + 1
            (3, 2) => vec![2, 0],    // t^2 = -1
            _ => unreachable!(),
        };
        let digits = |x: usize| -> Vec<usize> { (0..deg).map(|i| (x / p.pow(i as u32)) % p).collect() };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add = vec![vec![0u8; q]; q];
        let mut mul = vec![vec![0u8; q]; q];
        for x in 0..q {
            for y in 0..q {
                let (a, b) = (digits(x), digits(y));
                let s: Vec<usize> = a.iter().zip(&b).map(|(u, v)| (u + v) % p).collect();
                add[x][y] = encode(&s) as u8;
                let mut prod = vec![0usize; 2 * deg];
                for i in 0..deg {
                    for j in 0..deg {
                        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
                    }
                }
                for top in (deg..2 * deg).rev() {
                    let c = prod[top];
                    prod[top] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        prod[top - deg + i] = (prod[top - deg + i] + c * m) % p;
                    }
                }
                mul[x][y] = encode(&prod[..deg]) as u8;
            }
        }
        let neg = (0..q).map(|x| (0..q).find(|&y| add[x][y] == 0).unwrap() as u8).collect();
        let inv = (0..q).map(|x| if x == 0 { 0 } else { (1..q).find(|&y| mul[x][y] == 1).unwrap() as u8 }).collect();
        let field = FiniteField { q, p, add, mul, neg, inv };
        field.check_axioms()?;
        Ok(field)
    }

    fn check_axioms(&self) -> Result<()> {
        for x in 1..self.q {
            if self.mul[x][self.inv[x] as usize] != 1 {
                return Err(Error::Verification(format!("F_{}: {x} has no inverse", self.q)));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn mult_order(&self, a: u8) -> usize {
        let mut x = a;
        for k in 1..self.q {
            if x == 1 {
                return k;
            }
            x = self.mul(x, a);
        }
        0
    }

    pub fn is_square(&self, a: u8) -> bool {
        (0..self.q as u8).any(|x| self.mul(x, x) == a)
    }
}

type Mat = [u8; 4];

struct Sl2<'a> {
    f: &'a FiniteField,
}

impl Sl2<'_> {
    fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        let f = self.f;
        let e = |a: u8, b: u8, c: u8, d: u8| f.add(f.mul(a, b), f.mul(c, d));
        [
            e(x[0], y[0], x[1], y[2]),
            e(x[0], y[1], x[1], y[3]),
            e(x[2], y[0], x[3], y[2]),
            e(x[2], y[1], x[3], y[3]),
        ]
    }

    fn inv(&self, x: &Mat) -> Mat {
        [x[3], self.f.neg(x[1]), self.f.neg(x[2]), x[0]]
    }

    fn commutator(&self, x: &Mat, y: &Mat) -> Mat {
        self.mul(&self.mul(x, y), &self.mul(&self.inv(x), &self.inv(y)))
    }

    fn index(&self, x: &Mat) -> usize {
        let q = self.f.q;
        ((x[0] as usize * q + x[1] as usize) * q + x[2] as usize) * q + x[3] as usize
    }

    fn elements(&self) -> Vec<Mat> {
        let f = self.f;
        let q = f.q as u8;
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        if f.sub(f.mul(a, d), f.mul(b, c)) == 1 {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    /// The conjugacy class of `diag(z, z^{-1})`.
    fn class_of_diag(&self, elems: &[Mat], z: u8) -> Vec<Mat> {
        let d = [z, 0, 0, self.f.inv(z)];
        let mut seen = vec![false; self.f.q.pow(4)];
        let mut out = Vec::new();
        for g in elems {
            let c = self.mul(&self.mul(g, &d), &self.inv(g));
            let i = self.index(&c);
            if !seen[i] {
                seen[i] = true;
                out.push(c);
            }
        }
        out
    }
}

/// Input of the rank one point count: `SL_2` over `F_q`, genus `g`, and the
/// eigenvalues `zeta_j` of the regular semisimple punctures
/// `diag(zeta_j, zeta_j^{-1})`.
#[derive(Clone, Debug)]
pub struct FiniteFieldSpec {
    pub q: usize,
    pub genus: usize,
    /// Field elements by table index; for prime `q` the index is the residue.
    pub eigenvalues: Vec<u8>,
}

/// Raw enumeration stops past this many loop iterations.
pub const ORACLE_CAP: u64 = 100_000_000;

/// Why an eigenvalue choice is rejected.
fn check_eigenvalues(f: &FiniteField, zs: &[u8]) -> Result<()> {
    for &z in zs {
        if z == 0 || (z as usize) >= f.q {
            return Err(Error::InvalidInput(format!("{z} is not a unit of F_{}", f.q)));
        }
        if f.mul(z, z) == 1 {
            return Err(Error::Precondition(format!("eigenvalue {z} is not regular in F_{}", f.q)));
        }
    }
    // sum of +-y_j must avoid (1/2) Z h, i.e. products of zeta_j^{+-1} avoid +-1
    let k = zs.len();
    for signs in 0..(1u32 << k) {
        let mut prod = 1u8;
        for (j, &z) in zs.iter().enumerate() {
            prod = f.mul(prod, if signs >> j & 1 == 1 { f.inv(z) } else { z });
        }
        if k > 1 && (prod == 1 || prod == f.neg(1)) {
            return Err(Error::Precondition(format!("eigenvalues {zs:?} are not generic: a product is +-1")));
        }
    }
    // the half principal series see the quadratic character of the product;
    // only the square case is counted by the motive
    let prod = zs.iter().fold(1u8, |acc, &z| f.mul(acc, z));
    if !f.is_square(prod) {
        return Err(Error::Precondition(format!(
            "product of eigenvalues is a non-square in F_{}; the count is not the motive's",
            f.q
        )));
    }
    Ok(())
}

/// Eigenvalues admissible for a single regular puncture over `F_q`.
pub fn admissible_eigenvalues(q: usize) -> Result<Vec<u8>> {
    let f = FiniteField::new(q)?;
    Ok((1..q as u8).filter(|&z| check_eigenvalues(&f, &[z]).is_ok()).collect())
}

/// `#{x_i, y_i, z_j : prod [x_i, y_i] prod z_j = 1, z_j in C_j} / |SL_2(F_q)|`.
pub fn ff_count_rank1(spec: &FiniteFieldSpec) -> Result<BigRational> {
    let f = FiniteField::new(spec.q)?;
    if spec.genus > 2 || spec.eigenvalues.is_empty() || spec.eigenvalues.len() > 2 {
        return Err(Error::Unsupported("oracle covers g <= 2 and one or two punctures".into()));
    }
    if spec.genus == 2 && spec.eigenvalues.len() == 2 {
        return Err(Error::Unsupported("oracle covers g = 2 with one puncture only".into()));
    }
    check_eigenvalues(&f, &spec.eigenvalues)?;
    let g = Sl2 { f: &f };
    let elems = g.elements();
    let n = elems.len() as u64;
    let classes: Vec<Vec<Mat>> = spec.eigenvalues.iter().map(|&z| g.class_of_diag(&elems, z)).collect();
    let total: u128 = match (spec.genus, classes.len()) {
        (0, 1) => 0,
        (0, 2) => {
            // z_1 z_2 = 1
            let mut cnt = 0u128;
            let mut member = vec![false; f.q.pow(4)];
            classes[1].iter().for_each(|c| member[g.index(c)] = true);
            for z in &classes[0] {
                if member[g.index(&g.inv(z))] {
                    cnt += 1;
                }
            }
            cnt
        }
        (1, 1) => {
            budget(n * n)?;
            let mut member = vec![false; f.q.pow(4)];
            classes[0].iter().for_each(|c| member[g.index(c)] = true);
            let mut cnt = 0u128;
            for x in &elems {
                for y in &elems {
                    if member[g.index(&g.inv(&g.commutator(x, y)))] {
                        cnt += 1;
                    }
                }
            }
            cnt
        }
        (1, 2) => {
            let hist = commutator_histogram(&g, &elems)?;
            let mut cnt = 0u128;
            budget((classes[0].len() * classes[1].len()) as u64)?;
            for a in &classes[0] {
                for b in &classes[1] {
                    cnt += hist[g.index(&g.inv(&g.mul(a, b)))] as u128;
                }
            }
            cnt
        }
        (2, 1) => {
            let hist = commutator_histogram(&g, &elems)?;
            budget(n * classes[0].len() as u64)?;
            let mut cnt = 0u128;
            for a in &elems {
                let ha = hist[g.index(a)] as u128;
                if ha == 0 {
                    continue;
                }
                for z in &classes[0] {
                    cnt += ha * hist[g.index(&g.inv(&g.mul(a, z)))] as u128;
                }
            }
            cnt
        }
        _ => unreachable!(),
    };
    Ok(BigRational::new(BigInt::from(total), BigInt::from(n)))
}

fn budget(iters: u64) -> Result<()> {
    if iters > ORACLE_CAP {
        return Err(Error::Budget(format!("{iters} iterations exceed the oracle cap {ORACLE_CAP}")));
    }
    Ok(())
}

/// Number of pairs `(x, y)` with `[x, y] = c`, indexed by `c`.
fn commutator_histogram(g: &Sl2, elems: &[Mat]) -> Result<Vec<u64>> {
    budget((elems.len() * elems.len()) as u64)?;
    let mut hist = vec![0u64; g.f.q.pow(4)];
    for x in elems {
        for y in elems {
            hist[g.index(&g.commutator(x, y))] += 1;
        }
    }
    Ok(hist)
}

pub fn oracle_json(spec: &FiniteFieldSpec, value: &BigRational) -> Value {
    json!({
        "q": spec.q,
        "genus": spec.genus,
        "eigenvalues": spec.eigenvalues,
        "ratio": crate::matrix::rat_json(value),
    })
}

/// Walk count by recursion on `v = p(2 rho^v)`: the step is forced up when
/// `<alpha_a, v> > 0` and branches otherwise.
pub fn recursive_walk_count(datum: &RootDatum, word: &[usize], start: &WeylElement) -> Result<u128> {
    if let Some(&a) = word.iter().find(|&&a| a >= datum.rank()) {
        return Err(Error::InvalidInput(format!("letter a{} out of range", a + 1)));
    }
    let n = datum.rank();
    let mut rho2 = vec![0i64; n];
    for c in datum.positive_coroots() {
        for (r, x) in rho2.iter_mut().zip(c) {
            *r += x;
        }
    }
    let v = start.act_coroot(&rho2);
    Ok(count_from(datum.cartan_matrix(), word, v))
}

fn count_from(cartan: &[Vec<i64>], word: &[usize], v: Vec<i64>) -> u128 {
    let Some((&a, rest)) = word.split_first() else {
        return 1;
    };
    let pair: i64 = cartan[a].iter().zip(&v).map(|(x, y)| x * y).sum();
    let mut reflected = v.clone();
    reflected[a] -= pair;
    if pair > 0 {
        count_from(cartan, rest, reflected)
    } else {
        count_from(cartan, rest, v) + count_from(cartan, rest, reflected)
    }
}

/// Largest box `D^n` scanned by the coset count.
pub const BOX_CAP: u64 = 10_000_000;

/// `[ambient : sub]` for integer lattices given by generator columns, by
/// counting the points of each in the box `[0, D)^n` where `D Z^n` lies in
/// `sub`.
pub fn group_order_bruteforce(ambient: &IntMatrix, sub: &IntMatrix) -> Result<BigInt> {
    let n = ambient.rows();
    if sub.rows() != n {
        return Err(Error::Dimension("ambient and sub live in different ranks".into()));
    }
    let amb = Sublattice::from_generators(ambient);
    let sb = Sublattice::from_generators(sub);
    if !sb.is_full_rank() {
        return Err(Error::Infinite("sub has infinite index".into()));
    }
    if !sb.is_sublattice_of(&amb) {
        return Err(Error::Containment("sub is not contained in ambient".into()));
    }
    let basis = sb.generators();
    let d = basis.det()?.abs();
    let side = d.to_u64().filter(|&d| d > 0).ok_or_else(|| Error::Budget("box too large".into()))?;
    let volume = side.checked_pow(n as u32).filter(|&v| v <= BOX_CAP);
    let Some(volume) = volume else {
        return Err(Error::Budget(format!("box {side}^{n} exceeds {BOX_CAP}")));
    };
    let (mut in_amb, mut in_sub) = (0u64, 0u64);
    let mut point = vec![BigInt::zero(); n];
    for idx in 0..volume {
        let mut r = idx;
        for x in point.iter_mut() {
            *x = BigInt::from(r % side);
            r /= side;
        }
        if amb.contains(&point) {
            in_amb += 1;
            if sb.contains(&point) {
                in_sub += 1;
            }
        }
    }
    Ok(BigInt::from(in_amb / in_sub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Isogeny;

    #[test]
    fn field_tables() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
            let f = FiniteField::new(q).unwrap();
            let units = (1..q as u8).filter(|&x| f.mult_order(x) == q - 1).count();
            assert!(units > 0, "F_{q} has a generator");
        }
        assert!(FiniteField::new(6).is_err());
    }

    #[test]
    fn sl2_orders() {
        for q in [3, 5, 9] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(Sl2 { f: &f }.elements().len(), q * (q * q - 1));
        }
    }

    #[test]
    fn genus_one_counts() {
        let r = |v: i64| BigRational::from_integer(v.into());
        let c = ff_count_rank1(&FiniteFieldSpec { q: 7, genus: 1, eigenvalues: vec![2] }).unwrap();
        assert_eq!(c, r(78));
        let err = ff_count_rank1(&FiniteFieldSpec { q: 7, genus: 1, eigenvalues: vec![3] });
        assert!(matches!(err, Err(Error::Precondition(_))));
        assert!(admissible_eigenvalues(3).unwrap().is_empty());
        assert!(admissible_eigenvalues(5).unwrap().is_empty());
    }

    #[test]
    fn walk_counts() {
        let d = RootDatum::parse("A2", Isogeny::SimplyConnected).unwrap();
        assert_eq!(recursive_walk_count(&d, &[], &d.identity()).unwrap(), 1);
        assert_eq!(recursive_walk_count(&d, &[0, 1, 1, 0], &d.identity()).unwrap(), 3);
    }

    #[test]
    fn coset_counts() {
        let id = IntMatrix::identity(2);
        let two = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(group_order_bruteforce(&id, &two).unwrap(), 4.into());
        assert_eq!(group_order_bruteforce(&id, &id).unwrap(), 1.into());
        // C2 root lattice in e-coordinates over <2e1, 2e2>
        let roots = IntMatrix::from_i64_rows(&[vec![1, 2, 1], vec![-1, 0, 1]]);
        assert_eq!(group_order_bruteforce(&roots, &two).unwrap(), 2.into());
        assert!(matches!(
            group_order_bruteforce(&id, &IntMatrix::from_i64_rows(&[vec![1], vec![0]])),
            Err(Error::Infinite(_))
        ));
    }
}
