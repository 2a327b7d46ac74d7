//! Finite Coxeter systems with exact arithmetic, plus words and heaps.
//!
//! Elements of the reflection types act on the root lattice through matrices
//! over Z[phi]; the golden part is only nonzero for H3, so the
//! crystallographic types stay in plain integers. Dihedral types I2(m) use a
//! closed-form rotation/reflection presentation instead, which keeps large m
//! cheap. Lengths, descents, and reducedness checks are exact throughout;
//! no floating point is involved.
//!
//! Letters in a [`Word`] are numbered from 1, matching the usual s_1, s_2,
//! .. generator names. Internal matrix and root data is 0-indexed.

use crate::poset::{ideal_cap, Poset, PosetError};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("unknown Coxeter type tag {0:?}")]
    UnknownType(String),
    #[error("rank {0} is not valid for series {1}")]
    InvalidRank(usize, char),
    #[error("letter {letter} out of range 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("word is not reduced")]
    NotReduced,
    #[error("element is not fully commutative")]
    NotFullyCommutative,
    #[error(
        "element length {len} and group order {order} both exceed the search bounds \
         (length <= {max_len} or order <= {max_order})"
    )]
    FeasibilityGuard { len: usize, order: u128, max_len: usize, max_order: u128 },
    #[error("operation requires a crystallographic type, got {0}")]
    NotCrystallographic(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub type Result<T> = std::result::Result<T, CoxeterError>;

/// A word in the generators; letters run from 1 to the rank.
pub type Word = Vec<usize>;

/// An element of Z[phi], stored as `a + b*phi` with phi^2 = phi + 1.
///
/// The representation is unique (phi is irrational), so derived equality and
/// hashing agree with numeric equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GoldInt {
    pub a: i64,
    pub b: i64,
}

impl GoldInt {
    pub const ZERO: GoldInt = GoldInt { a: 0, b: 0 };
    pub const ONE: GoldInt = GoldInt { a: 1, b: 0 };
    pub const PHI: GoldInt = GoldInt { a: 0, b: 1 };

    pub fn int(a: i64) -> Self {
        GoldInt { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact sign: -1, 0, or 1.
    pub fn signum(self) -> i32 {
        // a + b*phi = (p + q*sqrt5) / 2 with p = 2a + b, q = b.
        let p = 2 * self.a + self.b;
        let q = self.b;
        if p >= 0 && q >= 0 {
            return if p == 0 && q == 0 { 0 } else { 1 };
        }
        if p <= 0 && q <= 0 {
            return -1;
        }
        // Mixed signs: compare p^2 against 5 q^2 (equality cannot happen for
        // nonzero q since sqrt5 is irrational, but keep it total).
        let pp = (p as i128) * (p as i128);
        let qq = 5 * (q as i128) * (q as i128);
        let big_is_q = qq > pp;
        match (p > 0, big_is_q) {
            (true, false) => 1,
            (true, true) => -1,
            (false, true) => 1,
            (false, false) => {
                if pp == qq {
                    0
                } else {
                    -1
                }
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * (1.0 + 5f64.sqrt()) / 2.0
    }
}

impl std::ops::Add for GoldInt {
    type Output = GoldInt;
    fn add(self, o: GoldInt) -> GoldInt {
        GoldInt { a: self.a + o.a, b: self.b + o.b }
    }
}

impl std::ops::Sub for GoldInt {
    type Output = GoldInt;
    fn sub(self, o: GoldInt) -> GoldInt {
        GoldInt { a: self.a - o.a, b: self.b - o.b }
    }
}

impl std::ops::Neg for GoldInt {
    type Output = GoldInt;
    fn neg(self) -> GoldInt {
        GoldInt { a: -self.a, b: -self.b }
    }
}

impl std::ops::Mul for GoldInt {
    type Output = GoldInt;
    fn mul(self, o: GoldInt) -> GoldInt {
        // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        GoldInt {
            a: self.a * o.a + self.b * o.b,
            b: self.a * o.b + self.b * o.a + self.b * o.b,
        }
    }
}

impl PartialOrd for GoldInt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldInt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl fmt::Debug for GoldInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}phi"),
            (a, b) => write!(f, "{a}{}{}phi", if b < 0 { "-" } else { "+" }, b.abs()),
        }
    }
}

/// Supported Coxeter types.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TypeTag {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    H3,
    I2(usize),
}

impl TypeTag {
    pub fn rank(self) -> usize {
        match self {
            TypeTag::A(n) | TypeTag::B(n) | TypeTag::D(n) => n,
            TypeTag::E6 => 6,
            TypeTag::E7 => 7,
            TypeTag::H3 => 3,
            TypeTag::I2(_) => 2,
        }
    }

    pub fn is_crystallographic(self) -> bool {
        matches!(
            self,
            TypeTag::A(_) | TypeTag::B(_) | TypeTag::D(_) | TypeTag::E6 | TypeTag::E7
        )
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::A(n) => write!(f, "A{n}"),
            TypeTag::B(n) => write!(f, "B{n}"),
            TypeTag::D(n) => write!(f, "D{n}"),
            TypeTag::E6 => write!(f, "E6"),
            TypeTag::E7 => write!(f, "E7"),
            TypeTag::H3 => write!(f, "H3"),
            TypeTag::I2(m) => write!(f, "I2:{m}"),
        }
    }
}

impl FromStr for TypeTag {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CoxeterError::UnknownType(s.to_string());
        if s == "E6" {
            return Ok(TypeTag::E6);
        }
        if s == "E7" {
            return Ok(TypeTag::E7);
        }
        if s == "H3" {
            return Ok(TypeTag::H3);
        }
        if let Some(m) = s.strip_prefix("I2:") {
            let m: usize = m.parse().map_err(|_| bad())?;
            return Ok(TypeTag::I2(m));
        }
        let (series, n) = s.split_at(1);
        let n: usize = n.parse().map_err(|_| bad())?;
        match series {
            "A" => Ok(TypeTag::A(n)),
            "B" => Ok(TypeTag::B(n)),
            "D" => Ok(TypeTag::D(n)),
            _ => Err(bad()),
        }
    }
}

/// A group element. Reflection types carry the matrix of their action on the
/// root lattice in the simple-root basis (row-major, column j = image of
/// alpha_{j+1}); I2(m) elements are a rotation amount with a reflection flag.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupElement {
    Matrix(Vec<GoldInt>),
    Dihedral { rot: u32, refl: bool },
}

/// The heap of a word: one poset element per letter position, ordered by
/// "earlier and non-commuting", with the letters kept as labels.
#[derive(Clone, Debug)]
pub struct Heap {
    pub poset: Poset,
    /// `labels[p]` is the (1-based) letter at position p.
    pub labels: Vec<usize>,
}

enum Realization {
    Reflection { cartan: Vec<Vec<GoldInt>>, pos_roots: Vec<Vec<GoldInt>> },
    Dihedral { m: usize, dist: Vec<u32> },
}

/// A finite Coxeter system of one of the supported types.
pub struct CoxeterSystem {
    tag: TypeTag,
    rank: usize,
    coxeter_matrix: Vec<Vec<u32>>,
    realization: Realization,
}

const GUARD_MAX_LEN: usize = 16;
const GUARD_MAX_ORDER: u128 = 1_000_000;

impl CoxeterSystem {
    pub fn new(tag: TypeTag) -> Result<Self> {
        match tag {
            TypeTag::A(n) if n < 1 => return Err(CoxeterError::InvalidRank(n, 'A')),
            TypeTag::B(n) if n < 2 => return Err(CoxeterError::InvalidRank(n, 'B')),
            TypeTag::D(n) if n < 2 => return Err(CoxeterError::InvalidRank(n, 'D')),
            TypeTag::I2(m) if m < 2 => return Err(CoxeterError::InvalidRank(m, 'I')),
            _ => {}
        }
        let rank = tag.rank();
        let mut m = vec![vec![2u32; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let edge = |mm: &mut Vec<Vec<u32>>, i: usize, j: usize, order: u32| {
            mm[i][j] = order;
            mm[j][i] = order;
        };
        match tag {
            TypeTag::A(n) => {
                for i in 1..n {
                    edge(&mut m, i - 1, i, 3);
                }
            }
            TypeTag::B(n) => {
                edge(&mut m, 0, 1, 4);
                for i in 2..n {
                    edge(&mut m, i - 1, i, 3);
                }
            }
            TypeTag::D(n) => {
                // Fork: nodes 1 and 2 both attach to 3, then a chain 3..n.
                if n >= 3 {
                    edge(&mut m, 0, 2, 3);
                    edge(&mut m, 1, 2, 3);
                }
                for i in 3..n {
                    edge(&mut m, i - 1, i, 3);
                }
            }
            TypeTag::E6 => {
                for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)] {
                    edge(&mut m, i - 1, j - 1, 3);
                }
            }
            TypeTag::E7 => {
                // Chain 1-3-4-5-6-7 with node 2 hanging off node 5; node 1 is
                // the end whose removal leaves E6.
                for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 5)] {
                    edge(&mut m, i - 1, j - 1, 3);
                }
            }
            TypeTag::H3 => {
                edge(&mut m, 0, 1, 5);
                edge(&mut m, 1, 2, 3);
            }
            TypeTag::I2(order) => {
                edge(&mut m, 0, 1, order as u32);
            }
        }

        let realization = match tag {
            TypeTag::I2(order) => {
                let dist = dihedral_distances(order);
                Realization::Dihedral { m: order, dist }
            }
            _ => {
                let cartan = cartan_matrix(tag, &m);
                let pos_roots = enumerate_positive_roots(&cartan);
                Realization::Reflection { cartan, pos_roots }
            }
        };
        Ok(CoxeterSystem { tag, rank, coxeter_matrix: m, realization })
    }

    pub fn tag(&self) -> TypeTag {
        self.tag
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coxeter matrix entry m(s_i, s_j), 1-based.
    pub fn coxeter_entry(&self, i: usize, j: usize) -> u32 {
        self.coxeter_matrix[i - 1][j - 1]
    }

    fn check_letter(&self, letter: usize) -> Result<()> {
        if letter == 0 || letter > self.rank {
            Err(CoxeterError::LetterOutOfRange { letter, rank: self.rank })
        } else {
            Ok(())
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.realization {
            Realization::Reflection { .. } => {
                let mut mat = vec![GoldInt::ZERO; self.rank * self.rank];
                for i in 0..self.rank {
                    mat[i * self.rank + i] = GoldInt::ONE;
                }
                GroupElement::Matrix(mat)
            }
            Realization::Dihedral { .. } => GroupElement::Dihedral { rot: 0, refl: false },
        }
    }

    /// The generator s_i, 1-based.
    pub fn generator(&self, i: usize) -> Result<GroupElement> {
        self.check_letter(i)?;
        match &self.realization {
            Realization::Reflection { cartan, .. } => {
                let k = i - 1;
                let mut mat = vec![GoldInt::ZERO; self.rank * self.rank];
                for r in 0..self.rank {
                    for c in 0..self.rank {
                        let mut v = if r == c { GoldInt::ONE } else { GoldInt::ZERO };
                        if r == k {
                            v = v - cartan[k][c];
                        }
                        mat[r * self.rank + c] = v;
                    }
                }
                Ok(GroupElement::Matrix(mat))
            }
            Realization::Dihedral { .. } => {
                // s_1 is the reflection rho_0, s_2 is rho_1.
                Ok(GroupElement::Dihedral { rot: (i - 1) as u32, refl: true })
            }
        }
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match (x, y) {
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => {
                let n = self.rank;
                let mut out = vec![GoldInt::ZERO; n * n];
                for r in 0..n {
                    for k in 0..n {
                        let ark = a[r * n + k];
                        if ark.is_zero() {
                            continue;
                        }
                        for c in 0..n {
                            out[r * n + c] = out[r * n + c] + ark * b[k * n + c];
                        }
                    }
                }
                GroupElement::Matrix(out)
            }
            (
                &GroupElement::Dihedral { rot: a, refl: ra },
                &GroupElement::Dihedral { rot: b, refl: rb },
            ) => {
                let m = self.dihedral_order() as i64;
                // tau_a tau_b = tau_{a+b}; tau_a rho_b = rho_{a+b};
                // rho_a tau_b = rho_{a-b}; rho_a rho_b = tau_{a-b}.
                let (rot, refl) = match (ra, rb) {
                    (false, false) => (a as i64 + b as i64, false),
                    (false, true) => (a as i64 + b as i64, true),
                    (true, false) => (a as i64 - b as i64, true),
                    (true, true) => (a as i64 - b as i64, false),
                };
                GroupElement::Dihedral { rot: rot.rem_euclid(m) as u32, refl }
            }
            _ => unreachable!("elements of one system share a representation"),
        }
    }

    fn dihedral_order(&self) -> usize {
        match &self.realization {
            Realization::Dihedral { m, .. } => *m,
            _ => unreachable!(),
        }
    }

    /// Image of the simple root alpha_i (1-based) under the element, in
    /// simple-root coordinates. Reflection types only.
    fn root_image(&self, g: &GroupElement, i: usize) -> Vec<GoldInt> {
        match g {
            GroupElement::Matrix(mat) => {
                (0..self.rank).map(|r| mat[r * self.rank + (i - 1)]).collect()
            }
            GroupElement::Dihedral { .. } => unreachable!(),
        }
    }

    pub fn length(&self, g: &GroupElement) -> usize {
        match (&self.realization, g) {
            (Realization::Reflection { pos_roots, .. }, GroupElement::Matrix(mat)) => {
                let n = self.rank;
                pos_roots
                    .iter()
                    .filter(|root| {
                        let image: Vec<GoldInt> = (0..n)
                            .map(|r| {
                                (0..n).fold(GoldInt::ZERO, |acc, c| {
                                    acc + mat[r * n + c] * root[c]
                                })
                            })
                            .collect();
                        is_negative_vec(&image)
                    })
                    .count()
            }
            (Realization::Dihedral { dist, .. }, &GroupElement::Dihedral { rot, refl }) => {
                dist[rot as usize + self.dihedral_order() * (refl as usize)] as usize
            }
            _ => unreachable!(),
        }
    }

    /// Whether right-multiplying by s_i (1-based) shortens the element.
    pub fn has_right_descent(&self, g: &GroupElement, i: usize) -> bool {
        match g {
            GroupElement::Matrix(_) => is_negative_vec(&self.root_image(g, i)),
            GroupElement::Dihedral { .. } => {
                let gs = self.multiply(g, &self.generator(i).expect("valid letter"));
                self.length(&gs) < self.length(g)
            }
        }
    }

    pub fn element_of_word(&self, word: &Word) -> Result<GroupElement> {
        let mut g = self.identity();
        for &letter in word {
            g = self.multiply(&g, &self.generator(letter)?);
        }
        Ok(g)
    }

    pub fn length_of_word(&self, word: &Word) -> Result<usize> {
        Ok(self.length(&self.element_of_word(word)?))
    }

    pub fn is_reduced(&self, word: &Word) -> Result<bool> {
        Ok(self.length_of_word(word)? == word.len())
    }

    /// A reduced word for the longest element, built by greedy ascent
    /// (always appending the smallest length-increasing generator).
    pub fn longest_element_word(&self) -> Word {
        let mut g = self.identity();
        let mut word = Vec::new();
        'outer: loop {
            for i in 1..=self.rank {
                if !self.has_right_descent(&g, i) {
                    g = self.multiply(&g, &self.generator(i).expect("valid letter"));
                    word.push(i);
                    continue 'outer;
                }
            }
            return word;
        }
    }

    pub fn group_order(&self) -> u128 {
        fn fact(n: u128) -> u128 {
            (2..=n).fold(1u128, |acc, k| acc.saturating_mul(k))
        }
        match self.tag {
            TypeTag::A(n) => fact(n as u128 + 1),
            TypeTag::B(n) => fact(n as u128).saturating_mul(1u128 << n.min(120)),
            TypeTag::D(n) => fact(n as u128).saturating_mul(1u128 << (n - 1).min(120)),
            TypeTag::E6 => 51_840,
            TypeTag::E7 => 2_903_040,
            TypeTag::H3 => 120,
            TypeTag::I2(m) => 2 * m as u128,
        }
    }

    /// Number of reduced words of the element spelled by `word` (which need
    /// not be reduced itself), by descent recursion memoized on elements.
    ///
    /// Only the weak-order interval below the element is visited, but as a
    /// precaution the call is refused when both the element length and the
    /// group order are large.
    pub fn red_word_count(&self, word: &Word) -> Result<u128> {
        let g = self.element_of_word(word)?;
        let len = self.length(&g);
        let order = self.group_order();
        if len > GUARD_MAX_LEN && order > GUARD_MAX_ORDER {
            return Err(CoxeterError::FeasibilityGuard {
                len,
                order,
                max_len: GUARD_MAX_LEN,
                max_order: GUARD_MAX_ORDER,
            });
        }
        let mut memo = HashMap::new();
        Ok(self.red_count_rec(&g, len, &mut memo))
    }

    fn red_count_rec(
        &self,
        g: &GroupElement,
        len: usize,
        memo: &mut HashMap<GroupElement, u128>,
    ) -> u128 {
        if len == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(g) {
            return c;
        }
        let mut total = 0u128;
        for i in 1..=self.rank {
            if self.has_right_descent(g, i) {
                let shorter = self.multiply(g, &self.generator(i).expect("valid letter"));
                total += self.red_count_rec(&shorter, len - 1, memo);
            }
        }
        memo.insert(g.clone(), total);
        total
    }

    /// The heap of `word`: position p precedes position q when p comes
    /// earlier and their letters do not commute (equal letters included).
    pub fn heap_from_word(&self, word: &Word) -> Result<Heap> {
        for &letter in word {
            self.check_letter(letter)?;
        }
        let mut pairs = Vec::new();
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                if self.coxeter_matrix[word[i] - 1][word[j] - 1] != 2 {
                    pairs.push((i, j));
                }
            }
        }
        let poset = Poset::from_covers(word.len(), &pairs)?;
        Ok(Heap { poset, labels: word.clone() })
    }

    /// Whether the element spelled by the reduced word `word` is fully
    /// commutative, i.e. no reduced word for it contains a braid factor
    /// s t s .. of length m(s, t) >= 3.
    ///
    /// Criterion on the heap: the element fails exactly when some pair
    /// s != t with m(s, t) >= 3 has a convex chain of m(s, t) alternating
    /// s/t positions.
    pub fn is_fully_commutative_word(&self, word: &Word) -> Result<bool> {
        if !self.is_reduced(word)? {
            return Err(CoxeterError::NotReduced);
        }
        let heap = self.heap_from_word(word)?;
        let n = word.len();
        for s in 1..=self.rank {
            for t in s + 1..=self.rank {
                let braid = self.coxeter_matrix[s - 1][t - 1] as usize;
                if braid < 3 {
                    continue;
                }
                // Positions labeled s or t form a chain, in word order.
                let chain: Vec<usize> =
                    (0..n).filter(|&p| word[p] == s || word[p] == t).collect();
                if chain.len() < braid {
                    continue;
                }
                for window in chain.windows(braid) {
                    let alternating =
                        window.windows(2).all(|w| word[w[0]] != word[w[1]]);
                    if !alternating {
                        continue;
                    }
                    let (first, last) = (window[0], window[braid - 1]);
                    let convex = (0..n).all(|z| {
                        window.contains(&z)
                            || !(heap.poset.lt(first, z) && heap.poset.lt(z, last))
                    });
                    if convex {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Number of reduced words of the fully commutative element spelled by
    /// `word`, as the number of linear extensions of its heap. Errors if the
    /// word is not reduced or the element is not fully commutative.
    pub fn fc_red_word_count(&self, word: &Word) -> Result<u128> {
        if !self.is_fully_commutative_word(word)? {
            return Err(CoxeterError::NotFullyCommutative);
        }
        let heap = self.heap_from_word(word)?;
        Ok(heap.poset.count_linear_extensions(ideal_cap())?)
    }

    /// Cartan integers `[i][j] = <alpha_{j+1}, alpha_{i+1}^vee>` (0-based).
    /// Crystallographic types only.
    pub fn cartan_int(&self) -> Result<Vec<Vec<i64>>> {
        if !self.tag.is_crystallographic() {
            return Err(CoxeterError::NotCrystallographic(self.tag.to_string()));
        }
        match &self.realization {
            Realization::Reflection { cartan, .. } => Ok(cartan
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| {
                            debug_assert_eq!(x.b, 0);
                            x.a
                        })
                        .collect()
                })
                .collect()),
            Realization::Dihedral { .. } => unreachable!(),
        }
    }

    /// All positive roots in simple-root coordinates, sorted. Crystallographic
    /// types only.
    pub fn positive_roots_int(&self) -> Result<Vec<Vec<i64>>> {
        if !self.tag.is_crystallographic() {
            return Err(CoxeterError::NotCrystallographic(self.tag.to_string()));
        }
        match &self.realization {
            Realization::Reflection { pos_roots, .. } => Ok(pos_roots
                .iter()
                .map(|root| root.iter().map(|x| x.a).collect())
                .collect()),
            Realization::Dihedral { .. } => unreachable!(),
        }
    }

    /// The roots `beta_p = s_{k_1} .. s_{k_{p-1}}(alpha_{k_p})` of a reduced
    /// word, in simple-root coordinates; these are exactly the inversions of
    /// the element. Errors with [`CoxeterError::NotReduced`] as soon as a
    /// beta comes out negative. Crystallographic types only.
    pub fn inversion_roots(&self, word: &Word) -> Result<Vec<Vec<i64>>> {
        if !self.tag.is_crystallographic() {
            return Err(CoxeterError::NotCrystallographic(self.tag.to_string()));
        }
        let mut prefix = self.identity();
        let mut out = Vec::new();
        for &letter in word {
            self.check_letter(letter)?;
            let beta = self.root_image(&prefix, letter);
            if is_negative_vec(&beta) {
                return Err(CoxeterError::NotReduced);
            }
            out.push(beta.iter().map(|x| x.a).collect());
            prefix = self.multiply(&prefix, &self.generator(letter)?);
        }
        Ok(out)
    }

    /// Number of positive roots (for reflection types) or m (for I2).
    pub fn positive_root_count(&self) -> usize {
        match &self.realization {
            Realization::Reflection { pos_roots, .. } => pos_roots.len(),
            Realization::Dihedral { m, .. } => *m,
        }
    }
}

/// Demazure (0-Hecke) product of a word in the symmetric group on n points:
/// each letter is applied only when it lengthens the permutation. Returns
/// one-line notation with values 1..=n.
pub fn demazure_product_type_a(n: usize, word: &[usize]) -> Result<Vec<usize>> {
    let mut w: Vec<usize> = (1..=n).collect();
    for &k in word {
        if k == 0 || k + 1 > n {
            return Err(CoxeterError::LetterOutOfRange { letter: k, rank: n.saturating_sub(1) });
        }
        if w[k - 1] < w[k] {
            w.swap(k - 1, k);
        }
    }
    Ok(w)
}

fn is_negative_vec(v: &[GoldInt]) -> bool {
    v.iter().all(|x| x.signum() <= 0) && v.iter().any(|x| x.signum() < 0)
}

/// Cartan-like matrix c[i][j] = <alpha_j, alpha_i^vee> (0-based) for the
/// reflection types. For equal-length simple roots the entry for an edge of
/// order m is -2cos(pi/m): -1 for m = 3 and -phi for m = 5. Type B gets the
/// usual asymmetric pair -2 / -1 on its double edge, with alpha_1 short.
fn cartan_matrix(tag: TypeTag, coxeter: &[Vec<u32>]) -> Vec<Vec<GoldInt>> {
    let rank = coxeter.len();
    let mut c = vec![vec![GoldInt::ZERO; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            c[i][j] = match coxeter[i][j] {
                1 => GoldInt::int(2),
                2 => GoldInt::ZERO,
                3 => GoldInt::int(-1),
                4 => {
                    debug_assert!(matches!(tag, TypeTag::B(_)));
                    // <alpha_2, alpha_1^vee> = -2 against the short root.
                    if i == 0 {
                        GoldInt::int(-2)
                    } else {
                        GoldInt::int(-1)
                    }
                }
                5 => -GoldInt::PHI,
                m => unreachable!("unsupported edge order {m}"),
            };
        }
    }
    c
}

/// All positive roots, by closing the simple roots under simple reflections
/// and keeping the nonnegative ones. Sorted for determinism.
fn enumerate_positive_roots(cartan: &[Vec<GoldInt>]) -> Vec<Vec<GoldInt>> {
    let rank = cartan.len();
    let mut seen: HashSet<Vec<GoldInt>> = HashSet::new();
    let mut queue: VecDeque<Vec<GoldInt>> = VecDeque::new();
    for i in 0..rank {
        let mut e = vec![GoldInt::ZERO; rank];
        e[i] = GoldInt::ONE;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(root) = queue.pop_front() {
        for i in 0..rank {
            // s_i(v) = v - <v, alpha_i^vee> alpha_i changes coordinate i only.
            let pairing =
                (0..rank).fold(GoldInt::ZERO, |acc, j| acc + cartan[i][j] * root[j]);
            let mut image = root.clone();
            image[i] = image[i] - pairing;
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut positives: Vec<Vec<GoldInt>> = seen
        .into_iter()
        .filter(|v| v.iter().all(|x| x.signum() >= 0))
        .collect();
    positives.sort();
    positives
}

/// Word lengths of all 2m dihedral elements, indexed rot + m * refl.
fn dihedral_distances(m: usize) -> Vec<u32> {
    let code = |rot: i64, refl: bool| -> usize {
        rot.rem_euclid(m as i64) as usize + m * (refl as usize)
    };
    let mut dist = vec![u32::MAX; 2 * m];
    let mut queue = VecDeque::new();
    dist[code(0, false)] = 0;
    queue.push_back((0i64, false));
    while let Some((rot, refl)) = queue.pop_front() {
        let d = dist[code(rot, refl)];
        // Right multiplication by rho_b sends tau_a to rho_{a+b} and rho_a
        // to tau_{a-b}; the generators are rho_0 and rho_1.
        for b in [0i64, 1] {
            let (nrot, nrefl) = if refl { (rot - b, false) } else { (rot + b, true) };
            let c = code(nrot, nrefl);
            if dist[c] == u32::MAX {
                dist[c] = d + 1;
                queue.push_back((nrot, nrefl));
            }
        }
    }
    dist
}
