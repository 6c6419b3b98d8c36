//! Root data of semisimple types, Weyl-group arithmetic, reduced words,
//! minimal coset representatives and Langlands duals.
//!
//! Conventions: `cartan[i][j] = <alpha_i, h_j>`. Roots are written in the
//! simple-root basis, coweights in the simple-coroot basis, and the pairing
//! is `<x, y> = x^T A y`. So `s_i(alpha_j) = alpha_j - A[j][i] alpha_i` and
//! `s_i(h_j) = h_j - A[i][j] h_i`.
//!
//! Numbering follows Bourbaki except for `B_n` and `C_n`, where the double
//! bond joins `alpha_1` and `alpha_2`: `alpha_1` is the short simple root of
//! `B_n` and the long simple root of `C_n`. With this choice the Cartan
//! matrix of `C_n` is the transpose of that of `B_n`, and `C_2` matches the
//! symplectic coordinates `alpha_1 = 2E22*`, `alpha_2 = E11* - E22*`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::lattice::TorusSubgroup;
use crate::matrix::{IntMatrix, RatMatrix};

pub const MAX_RANK: usize = 8;
const MAX_TABULATED: usize = 50_000;
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            return invalid(format!("no Cartan type {series:?}{rank}"));
        }
        if rank > MAX_RANK {
            return Err(Error::Unsupported(format!("rank {rank} exceeds {MAX_RANK}")));
        }
        Ok(CartanType { series, rank })
    }

    pub fn cartan_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
        }
        let mut bond = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.series {
            Series::A | Series::B | Series::C => {
                for i in 0..n - 1 {
                    bond(i, i + 1);
                }
            }
            Series::D => {
                for i in 0..n - 2 {
                    bond(i, i + 1);
                }
                bond(n - 3, n - 1);
            }
            Series::F => {
                bond(0, 1);
                bond(1, 2);
                bond(2, 3);
            }
            Series::G => bond(0, 1),
            Series::E => return Err(Error::Unsupported("exceptional types E6-E8".into())),
        }
        match self.series {
            Series::B => a[1][0] = -2,
            Series::C => a[0][1] = -2,
            Series::F => a[1][2] = -2,
            Series::G => a[1][0] = -3,
            _ => {}
        }
        Ok(a)
    }

    /// Degrees minus one of the basic invariants.
    pub fn exponents(&self) -> Vec<u64> {
        let n = self.rank as u64;
        match self.series {
            Series::A => (1..=n).collect(),
            Series::B | Series::C => (0..n).map(|i| 2 * i + 1).collect(),
            Series::D => {
                let mut e: Vec<u64> = (0..n - 1).map(|i| 2 * i + 1).collect();
                e.push(n - 1);
                e.sort();
                e
            }
            Series::G => vec![1, 5],
            Series::F => vec![1, 5, 7, 11],
            Series::E => match n {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        self.exponents().iter().sum::<u64>() as usize
    }

    pub fn weyl_order(&self) -> u128 {
        self.exponents().iter().map(|&e| (e + 1) as u128).product()
    }

    /// Type of the Langlands dual.
    pub fn dual(&self) -> CartanType {
        let series = match self.series {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        };
        CartanType { series, rank: self.rank }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return invalid(format!("unknown Cartan type {s:?}")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("unknown Cartan type {s:?}")))?;
        CartanType::new(series, rank)
    }
}

/// Choice of the cocharacter lattice `t(Z)` between `Q^v` and `P^v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    /// Basis of `t(Z)` as the columns of a rational matrix in simple-coroot
    /// coordinates.
    Explicit(RatMatrix),
}

impl Isogeny {
    pub fn label(&self) -> &'static str {
        match self {
            Isogeny::SimplyConnected => "sc",
            Isogeny::Adjoint => "ad",
            Isogeny::Explicit(_) => "explicit",
        }
    }
}

/// An element of the Weyl group, stored as its action matrices on the root
/// lattice (simple-root basis) and on the coweights (simple-coroot basis).
/// Equality is matrix equality.
#[derive(Clone, Copy)]
pub struct WeylElement {
    n: u8,
    len: u16,
    root: [i16; MAX_RANK * MAX_RANK],
    coroot: [i16; MAX_RANK * MAX_RANK],
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.root == other.root
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.root.hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.len, self.root).cmp(&(other.n, other.len, other.root))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(len {}, {:?})", self.len, self.root_matrix())
    }
}

impl WeylElement {
    pub fn rank(&self) -> usize {
        self.n as usize
    }

    pub fn length(&self) -> usize {
        self.len as usize
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    fn at(m: &[i16; 64], n: usize, i: usize, j: usize) -> i64 {
        m[i * n + j] as i64
    }

    /// Action on the root lattice in the simple-root basis.
    pub fn root_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| Self::at(&self.root, n, i, j)).collect()).collect()
    }

    /// Action on coweights in the simple-coroot basis.
    pub fn coroot_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| Self::at(&self.coroot, n, i, j)).collect()).collect()
    }

    pub fn act_root(&self, x: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| Self::at(&self.root, n, i, j) * x[j]).sum()).collect()
    }

    pub fn act_coroot(&self, y: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| Self::at(&self.coroot, n, i, j) * y[j]).sum()).collect()
    }

    pub fn act_coroot_rational(&self, y: &[BigRational]) -> Vec<BigRational> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(BigInt::from(Self::at(&self.coroot, n, i, j))) * &y[j])
                    .sum()
            })
            .collect()
    }

    pub fn coroot_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64_rows(&self.coroot_matrix())
    }

    pub fn root_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64_rows(&self.root_matrix())
    }

    /// The same abstract element viewed in the Langlands dual datum, where
    /// roots and coroots trade places.
    pub fn to_dual(&self) -> WeylElement {
        WeylElement { n: self.n, len: self.len, root: self.coroot, coroot: self.root }
    }
}

/// Which reduced word represents a Weyl element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum WordSection {
    /// Lexicographically least by simple-root index.
    #[default]
    LexLeast,
    /// Lexicographically greatest; used to check independence of the choice.
    LexGreatest,
}

/// A reduced word `s_{a_1} ... s_{a_m}` (0-based letters).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
}

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for &l in &self.letters {
            write!(f, "s{}", l + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone)]
struct WeylTable {
    elements: Vec<WeylElement>,
    index: HashMap<WeylElement, usize>,
}

/// A semisimple root datum: Cartan matrix plus the lattice `t(Z)`.
#[derive(Clone)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    cochar_basis: RatMatrix,
    cochar_basis_inv: IntMatrix,
    isogeny: Isogeny,
    /// `det(A) * rho^v` in simple-coroot coordinates; pairs positively with
    /// every positive root.
    rho_check: Vec<i64>,
    table: Option<WeylTable>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum({}, {})", self.cartan_type, self.isogeny.label())
    }
}

impl RootDatum {
    pub fn new(cartan_type: CartanType, isogeny: Isogeny) -> Result<RootDatum> {
        let cartan = cartan_type.cartan_matrix()?;
        Self::from_cartan(cartan_type, cartan, isogeny)
    }

    /// Convenience constructor: `RootDatum::parse("C2", Isogeny::SimplyConnected)`.
    pub fn parse(ty: &str, isogeny: Isogeny) -> Result<RootDatum> {
        Self::new(ty.parse()?, isogeny)
    }

    pub fn from_cartan(cartan_type: CartanType, cartan: Vec<Vec<i64>>, isogeny: Isogeny) -> Result<RootDatum> {
        let n = cartan.len();
        if n == 0 || n > MAX_RANK || cartan.iter().any(|r| r.len() != n) {
            return invalid("Cartan matrix must be square of size 1..=8");
        }
        for i in 0..n {
            for j in 0..n {
                if (i == j && cartan[i][j] != 2) || (i != j && cartan[i][j] > 0) {
                    return invalid("not a Cartan matrix");
                }
            }
        }
        let a = IntMatrix::from_i64_rows(&cartan);
        let a_inv = a.to_rational().inverse()?;
        let cochar_basis = match &isogeny {
            Isogeny::SimplyConnected => RatMatrix::identity(n),
            Isogeny::Adjoint => a_inv.clone(),
            Isogeny::Explicit(b) => {
                if b.rows() != n || b.cols() != n {
                    return Err(Error::Dimension("cocharacter basis must be n x n".into()));
                }
                b.clone()
            }
        };
        let inv = cochar_basis
            .inverse()
            .map_err(|_| Error::InvalidInput("cocharacter basis is singular".into()))?;
        let cochar_basis_inv = inv
            .to_integer()
            .ok_or_else(|| Error::InvalidInput("t(Z) does not contain the coroot lattice".into()))?;
        if !a.to_rational().mul(&cochar_basis)?.is_integral() {
            return invalid("t(Z) is not contained in the coweight lattice");
        }
        let (positive_roots, positive_coroots) = positive_system(&cartan);
        if positive_roots.len() != cartan_type.num_positive_roots() && cartan == cartan_type.cartan_matrix()? {
            return Err(Error::Verification("positive root count disagrees with the type".into()));
        }
        let det = a.det()?;
        let ones: Vec<BigRational> = vec![BigRational::one(); n];
        let rho = a_inv.mul_vec(&ones);
        let rho_check = rho
            .iter()
            .map(|x| {
                let v = x * BigRational::from_integer(det.clone());
                i64::try_from(v.to_integer()).expect("small")
            })
            .collect();
        let mut datum = RootDatum {
            cartan_type,
            cartan,
            positive_roots,
            positive_coroots,
            cochar_basis,
            cochar_basis_inv,
            isogeny,
            rho_check,
            table: None,
        };
        if cartan_type.weyl_order() <= MAX_TABULATED as u128 {
            datum.table = Some(datum.build_table());
        }
        Ok(datum)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64_rows(&self.cartan)
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `dim G` for the semisimple group.
    pub fn dimension(&self) -> usize {
        self.rank() + 2 * self.num_positive_roots()
    }

    pub fn isogeny(&self) -> &Isogeny {
        &self.isogeny
    }

    pub fn is_simply_connected(&self) -> bool {
        self.cochar_basis_inv.is_square() && self.cochar_basis_inv.det().map(|d| d.abs() == BigInt::one()).unwrap_or(false)
    }

    /// Basis of `t(Z)` (columns) in simple-coroot coordinates.
    pub fn cochar_basis(&self) -> &RatMatrix {
        &self.cochar_basis
    }

    /// Inverse of [`Self::cochar_basis`]: converts simple-coroot coordinates
    /// into `t(Z)` coordinates. Integral because `Q^v` lies in `t(Z)`.
    pub fn cochar_basis_inverse(&self) -> &IntMatrix {
        &self.cochar_basis_inv
    }

    /// `<x, y> = x^T A y` for a root-lattice vector and a coweight.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| x[i] * self.cartan[i][j] * y[j]).sum::<i64>()).sum()
    }

    /// A simple coroot `h_i` in `t(Z)` coordinates.
    pub fn simple_coroot_in_cochars(&self, i: usize) -> Vec<BigInt> {
        self.cochar_basis_inv.column(i)
    }

    /// Coroot-side action of `w` in `t(Z)` coordinates.
    pub fn cochar_action(&self, w: &WeylElement) -> IntMatrix {
        let b = &self.cochar_basis;
        let m = self.cochar_basis_inv.to_rational().mul(&w.coroot_int_matrix().to_rational()).unwrap();
        m.mul(b).unwrap().to_integer().expect("Weyl group preserves t(Z)")
    }

    /// Converts a `t(Z)`-coordinate vector back to simple-coroot coordinates.
    pub fn cochar_to_coroot_coords(&self, u: &[BigRational]) -> Vec<BigRational> {
        self.cochar_basis.mul_vec(u)
    }

    pub fn coroot_to_cochar_coords(&self, y: &[BigRational]) -> Vec<BigRational> {
        self.cochar_basis_inv.to_rational().mul_vec(y)
    }

    /// Characters given by root-lattice vectors, as rows acting on `t(Z)`
    /// coordinates: the row of `x` is `x^T A B`.
    pub fn root_characters(&self, roots: &[Vec<i64>]) -> IntMatrix {
        let n = self.rank();
        let x = IntMatrix::from_i64_rows(roots);
        let x = if roots.is_empty() { IntMatrix::zeros(0, n) } else { x };
        let xa = x.mul(&self.cartan_int_matrix()).unwrap();
        xa.to_rational().mul(&self.cochar_basis).unwrap().to_integer().expect("roots are characters of T")
    }

    /// The center `Z(G)` as the subgroup cut out by all simple roots.
    pub fn center(&self) -> TorusSubgroup {
        let n = self.rank();
        let simple: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        TorusSubgroup::from_characters(self.root_characters(&simple))
    }

    pub fn center_order(&self) -> BigInt {
        self.center().cardinality().expect("semisimple center is finite")
    }

    // ---- Weyl group ----

    fn make(&self, root: [i16; 64], coroot: [i16; 64]) -> WeylElement {
        let n = self.rank();
        let mut len = 0u16;
        for beta in &self.positive_roots {
            let first = (0..n)
                .map(|i| (0..n).map(|j| root[i * n + j] as i64 * beta[j]).sum::<i64>())
                .find(|&c| c != 0)
                .unwrap_or(0);
            if first < 0 {
                len += 1;
            }
        }
        WeylElement { n: n as u8, len, root, coroot }
    }

    pub fn identity(&self) -> WeylElement {
        let n = self.rank();
        let mut m = [0i16; 64];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        WeylElement { n: n as u8, len: 0, root: m, coroot: m }
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.left_mul_simple(i, &self.identity())
    }

    fn check_letter(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return invalid(format!("simple root index {} out of range for rank {}", i + 1, self.rank()));
        }
        Ok(())
    }

    /// `l(s_i w) > l(w)`, equivalently `w^{-1}(alpha_i)` is positive.
    pub fn goes_up(&self, w: &WeylElement, i: usize) -> bool {
        // <w^{-1} alpha_i, rho^v> = <alpha_i, w rho^v>
        let wr = w.act_coroot(&self.rho_check);
        let s: i64 = (0..self.rank()).map(|j| self.cartan[i][j] * wr[j]).sum();
        s > 0
    }

    /// `s_i w`; only row `i` of each matrix changes.
    pub fn left_mul_simple(&self, i: usize, w: &WeylElement) -> WeylElement {
        let n = self.rank();
        let up = self.goes_up(w, i);
        let mut out = *w;
        for k in 0..n {
            let mut r = w.root[i * n + k] as i64;
            let mut c = w.coroot[i * n + k] as i64;
            for j in 0..n {
                r -= self.cartan[j][i] * w.root[j * n + k] as i64;
                c -= self.cartan[i][j] * w.coroot[j * n + k] as i64;
            }
            out.root[i * n + k] = r as i16;
            out.coroot[i * n + k] = c as i16;
        }
        out.len = if up { w.len + 1 } else { w.len - 1 };
        out
    }

    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let n = self.rank();
        let mut root = [0i16; 64];
        let mut coroot = [0i16; 64];
        for i in 0..n {
            for j in 0..n {
                let mut r = 0i64;
                let mut c = 0i64;
                for k in 0..n {
                    r += a.root[i * n + k] as i64 * b.root[k * n + j] as i64;
                    c += a.coroot[i * n + k] as i64 * b.coroot[k * n + j] as i64;
                }
                root[i * n + j] = r as i16;
                coroot[i * n + j] = c as i16;
            }
        }
        self.make(root, coroot)
    }

    /// `s_{a_1} ... s_{a_m}` for 0-based letters.
    pub fn from_word(&self, letters: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &l in letters.iter().rev() {
            self.check_letter(l)?;
            w = self.left_mul_simple(l, &w);
        }
        Ok(w)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let word = self.reduced_word(w, WordSection::LexLeast);
        let mut rev = word.letters;
        rev.reverse();
        self.from_word(&rev).expect("letters in range")
    }

    /// Reduced word for `w` under the given section, by peeling left descents.
    pub fn reduced_word(&self, w: &WeylElement, section: WordSection) -> ReducedWord {
        let mut cur = *w;
        let mut letters = Vec::with_capacity(w.length());
        while !cur.is_identity() {
            let descents = (0..self.rank()).filter(|&i| !self.goes_up(&cur, i));
            let i = match section {
                WordSection::LexLeast => descents.min(),
                WordSection::LexGreatest => descents.max(),
            }
            .expect("non-identity element has a left descent");
            letters.push(i);
            cur = self.left_mul_simple(i, &cur);
        }
        ReducedWord { letters }
    }

    /// Lex-least reduced word (the fixed section).
    pub fn minimal_word(&self, w: &WeylElement) -> ReducedWord {
        self.reduced_word(w, WordSection::LexLeast)
    }

    /// Renders `w` by its lex-least reduced word, e.g. `s1s2` or `e`.
    pub fn render(&self, w: &WeylElement) -> String {
        self.minimal_word(w).to_string()
    }

    /// `l(w s_i) < l(w)`, i.e. `w(alpha_i)` is negative.
    pub fn has_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        let col = w.act_root(&unit(self.rank(), i));
        col.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
    }

    fn build_table(&self) -> WeylTable {
        let mut elements = vec![self.identity()];
        let mut index = HashMap::new();
        index.insert(self.identity(), 0);
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head];
            head += 1;
            for i in 0..self.rank() {
                let v = self.left_mul_simple(i, &w);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(v) {
                    e.insert(elements.len());
                    elements.push(v);
                }
            }
        }
        let mut keyed: Vec<(usize, ReducedWord, WeylElement)> =
            elements.iter().map(|w| (w.length(), self.minimal_word(w), *w)).collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let elements: Vec<WeylElement> = keyed.into_iter().map(|k| k.2).collect();
        let index = elements.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        WeylTable { elements, index }
    }

    fn table(&self) -> Result<&WeylTable> {
        self.table.as_ref().ok_or_else(|| {
            Error::Unsupported(format!(
                "Weyl group of {} has {} elements, too many to enumerate",
                self.cartan_type,
                self.cartan_type.weyl_order()
            ))
        })
    }

    /// All Weyl group elements, ordered by length and then by minimal word.
    pub fn weyl_elements(&self) -> Result<&[WeylElement]> {
        Ok(&self.table()?.elements)
    }

    pub fn weyl_order(&self) -> usize {
        self.table.as_ref().map_or(self.cartan_type.weyl_order() as usize, |t| t.elements.len())
    }

    /// Position of `w` in [`Self::weyl_elements`].
    pub fn element_index(&self, w: &WeylElement) -> Result<usize> {
        self.table()?
            .index
            .get(w)
            .copied()
            .ok_or_else(|| Error::InvalidInput("element not in this Weyl group".into()))
    }

    /// Minimal-length representatives of `W / W_I`, one per coset.
    pub fn minimal_coset_reps(&self, levi: &[usize]) -> Result<Vec<WeylElement>> {
        for &i in levi {
            self.check_letter(i)?;
        }
        Ok(self
            .weyl_elements()?
            .iter()
            .filter(|w| levi.iter().all(|&i| !self.has_right_descent(w, i)))
            .copied()
            .collect())
    }

    pub fn is_minimal_coset_rep(&self, w: &WeylElement, levi: &[usize]) -> bool {
        levi.iter().all(|&i| !self.has_right_descent(w, i))
    }

    /// Number of roots (both signs) in the sub-root system spanned by `levi`.
    pub fn levi_root_count(&self, levi: &[usize]) -> usize {
        2 * self
            .positive_roots
            .iter()
            .filter(|b| b.iter().enumerate().all(|(j, &c)| c == 0 || levi.contains(&j)))
            .count()
    }

    /// Langlands dual datum: transposed Cartan matrix, roots and coroots
    /// exchanged, with the given cocharacter lattice.
    pub fn langlands_dual(&self, isogeny: Isogeny) -> Result<RootDatum> {
        let n = self.rank();
        let at: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.cartan[j][i]).collect()).collect();
        RootDatum::from_cartan(self.cartan_type.dual(), at, isogeny)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "type": self.cartan_type.to_string(),
            "isogeny": self.isogeny.label(),
            "cartan_matrix": self.cartan,
            "cochar_basis": self.cochar_basis.to_json(),
        })
    }

    // ---- parsing ----

    /// Parses a simple-root letter: `a1`..`a8`, `s1`.., a bare index, or a
    /// single-letter alias `a`, `b`, `c`, ...
    pub fn parse_letter(&self, token: &str) -> Result<usize> {
        let t = token.trim();
        let idx = if let Some(rest) = t.strip_prefix('a').or_else(|| t.strip_prefix('s')) {
            if rest.is_empty() {
                if t == "a" {
                    Some(1)
                } else {
                    None
                }
            } else {
                rest.parse::<usize>().ok()
            }
        } else if t.len() == 1 && t.chars().all(|c| c.is_ascii_lowercase()) {
            Some((t.as_bytes()[0] - b'a') as usize + 1)
        } else {
            t.parse::<usize>().ok()
        };
        match idx {
            Some(i) if i >= 1 && i <= self.rank() => Ok(i - 1),
            _ => invalid(format!("unknown letter {t:?} for rank {}", self.rank())),
        }
    }

    /// Parses a comma-separated word of letters.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(vec![]);
        }
        s.split(',').map(|t| self.parse_letter(t)).collect()
    }

    /// Parses a Weyl element written as a product of simple reflections:
    /// `e`, `s1s2s1`, or a comma-separated word such as `a,b,a`.
    pub fn parse_element(&self, s: &str) -> Result<WeylElement> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "1" || s == "id" {
            return Ok(self.identity());
        }
        let letters = if s.contains(',') {
            self.parse_word(s)?
        } else if s.starts_with('s') && s[1..].split('s').all(|p| p.parse::<usize>().is_ok()) {
            s[1..].split('s').map(|p| self.parse_letter(p)).collect::<Result<Vec<_>>>()?
        } else {
            vec![self.parse_letter(s)?]
        };
        self.from_word(&letters)
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Positive roots and matching positive coroots, by closing the simple roots
/// under simple reflections while staying positive.
fn positive_system(cartan: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    let mut coroots = roots.clone();
    let mut seen: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut head = 0;
    while head < roots.len() {
        let (x, y) = (roots[head].clone(), coroots[head].clone());
        head += 1;
        for i in 0..n {
            let cx: i64 = (0..n).map(|j| x[j] * cartan[j][i]).sum();
            let cy: i64 = (0..n).map(|j| cartan[i][j] * y[j]).sum();
            let mut nx = x.clone();
            nx[i] -= cx;
            let mut ny = y.clone();
            ny[i] -= cy;
            if nx.iter().all(|&c| c >= 0) && nx.iter().any(|&c| c > 0) && !seen.contains_key(&nx) {
                seen.insert(nx.clone(), roots.len());
                roots.push(nx);
                coroots.push(ny);
            }
        }
    }
    let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = roots.into_iter().zip(coroots).collect();
    pairs.sort_by(|a, b| (a.0.iter().sum::<i64>(), &a.0).cmp(&(b.0.iter().sum::<i64>(), &b.0)));
    pairs.into_iter().unzip()
}

/// Symplectic coordinates for `C_2`, matching `T = diag(x, y, 1/x, 1/y)`.
pub mod sp4 {
    use num_bigint::BigInt;

    /// A coweight in simple-coroot coordinates `(c1, c2)` as the diagonal
    /// `(x, y, -x, -y)`, using `h_1 = diag(0,1,0,-1)` and `h_2 = diag(1,-1,-1,1)`.
    pub fn coweight_to_diag(y: &[BigInt]) -> [BigInt; 4] {
        let x0 = y[1].clone();
        let x1 = &y[0] - &y[1];
        [x0.clone(), x1.clone(), -x0, -x1]
    }

    /// A root-lattice vector `(c1, c2)` as coefficients of `(E11*, E22*)`,
    /// using `alpha_1 = 2E22*` and `alpha_2 = E11* - E22*`.
    pub fn root_to_e_coords(x: &[i64]) -> [i64; 2] {
        [x[1], 2 * x[0] - x[1]]
    }
}
