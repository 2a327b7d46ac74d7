//! Increasing tableaux on finite posets and their jeu-de-taquin calculus.
//!
//! A tableau lives on a skew shape: a pair of nested order ideals of an
//! ambient poset. The slide operation here is the set-valued variant, where
//! a hole meeting several equal letters absorbs all of them and multiplies.
//! Rectification, infusion, reading words, the doubling map onto symmetric
//! grids, and the correspondence with plane partitions all build on it.

use crate::poset::{Drawing, ElementSet, OrderIdeal, PlanePartition, Poset, PosetError};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableauError {
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("entries are not strictly increasing: {0}")]
    NotIncreasing(String),
    #[error("slide cells must be maximal in the inner ideal")]
    NotMaximalCells,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub type Result<T> = std::result::Result<T, TableauError>;

/// A strictly increasing filling of the skew shape `outer` minus `inner`.
///
/// `entries[x]` is the letter at cell x, and 0 everywhere outside the shape.
/// Strictness is required along every comparability of the ambient poset
/// between two shape cells, not just along covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncreasingTableau {
    pub inner: OrderIdeal,
    pub outer: OrderIdeal,
    pub entries: Vec<u32>,
}

impl IncreasingTableau {
    pub fn new(
        poset: &Poset,
        inner: OrderIdeal,
        outer: OrderIdeal,
        entries: Vec<u32>,
    ) -> Result<Self> {
        let n = poset.len();
        if inner.universe() != n || outer.universe() != n || entries.len() != n {
            return Err(TableauError::Shape(format!(
                "universe sizes disagree with a poset of {n} elements"
            )));
        }
        if !poset.is_ideal(&inner) || !poset.is_ideal(&outer) {
            return Err(TableauError::Shape("inner and outer must be order ideals".into()));
        }
        if !inner.is_subset(&outer) {
            return Err(TableauError::Shape("inner must be contained in outer".into()));
        }
        for x in 0..n {
            let in_shape = outer.contains(x) && !inner.contains(x);
            if in_shape && entries[x] == 0 {
                return Err(TableauError::Shape(format!("cell {x} has no entry")));
            }
            if !in_shape && entries[x] != 0 {
                return Err(TableauError::Shape(format!("entry outside the shape at {x}")));
            }
        }
        let t = IncreasingTableau { inner, outer, entries };
        t.check_increasing(poset)?;
        Ok(t)
    }

    fn check_increasing(&self, poset: &Poset) -> Result<()> {
        let cells = self.cells();
        for &x in &cells {
            for &y in &cells {
                if poset.lt(x, y) && self.entries[x] >= self.entries[y] {
                    return Err(TableauError::NotIncreasing(format!(
                        "cells {x} < {y} hold {} >= {}",
                        self.entries[x], self.entries[y]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Shape cells in increasing id order.
    pub fn cells(&self) -> Vec<usize> {
        self.outer.difference(&self.inner).members()
    }

    pub fn shape(&self) -> ElementSet {
        self.outer.difference(&self.inner)
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Whether every letter 1..=N appears exactly once, N the cell count.
    pub fn is_standard(&self) -> bool {
        let mut seen: Vec<u32> = self.cells().iter().map(|&x| self.entries[x]).collect();
        seen.sort_unstable();
        seen.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// The multiset of letters used, deduplicated and sorted.
    pub fn letter_set(&self) -> Vec<u32> {
        let mut letters: Vec<u32> =
            self.cells().iter().map(|&x| self.entries[x]).collect();
        letters.sort_unstable();
        letters.dedup();
        letters
    }
}

/// The filling of an ideal where each cell receives the length of the
/// longest chain of the ideal ending at it. This is the unique increasing
/// tableau of that shape with smallest possible entries.
pub fn minimal_tableau(poset: &Poset, ideal: &OrderIdeal) -> Result<IncreasingTableau> {
    if !poset.is_ideal(ideal) {
        return Err(TableauError::Shape("minimal tableau needs an order ideal".into()));
    }
    let mut entries = vec![0u32; poset.len()];
    for &x in poset.topo_order() {
        if !ideal.contains(x) {
            continue;
        }
        let below = poset
            .lower_covers(x)
            .iter()
            .filter(|&&y| ideal.contains(y))
            .map(|&y| entries[y])
            .max()
            .unwrap_or(0);
        entries[x] = below + 1;
    }
    IncreasingTableau::new(poset, ElementSet::empty(poset.len()), ideal.clone(), entries)
}

/// Flips every cell holding `a` that sits next to a `b` in the Hasse
/// diagram, and vice versa, simultaneously. Cells holding anything else are
/// untouched.
fn swap_values(poset: &Poset, board: &mut [i64], a: i64, b: i64) {
    debug_assert_ne!(a, b);
    let mut flips = Vec::new();
    for x in 0..board.len() {
        let target = match board[x] {
            v if v == a => b,
            v if v == b => a,
            _ => continue,
        };
        let next_to = poset
            .upper_covers(x)
            .iter()
            .chain(poset.lower_covers(x).iter())
            .any(|&y| board[y] == target);
        if next_to {
            flips.push((x, target));
        }
    }
    for (x, v) in flips {
        board[x] = v;
    }
}

const HOLE: i64 = -1;

/// One jeu-de-taquin slide of `t` into the chosen cells, which must be
/// maximal elements of the inner ideal. Holes exchange with the letters in
/// increasing order; the result's inner shape loses the chosen cells and the
/// outer shape loses the cells where holes come to rest.
pub fn jdt_slide(
    poset: &Poset,
    t: &IncreasingTableau,
    cells: &ElementSet,
) -> Result<IncreasingTableau> {
    if cells.universe() != poset.len() {
        return Err(TableauError::Shape("slide cells from a different poset".into()));
    }
    for c in cells.iter() {
        let maximal_in_inner = t.inner.contains(c)
            && poset.upper_covers(c).iter().all(|&y| !t.inner.contains(y));
        if !maximal_in_inner {
            return Err(TableauError::NotMaximalCells);
        }
    }
    let mut board: Vec<i64> = t.entries.iter().map(|&v| v as i64).collect();
    for c in cells.iter() {
        board[c] = HOLE;
    }
    for a in 1..=t.max_entry() {
        swap_values(poset, &mut board, HOLE, a as i64);
    }
    let inner = t.inner.difference(cells);
    let mut outer = t.outer.clone();
    let mut entries = vec![0u32; poset.len()];
    for (x, &v) in board.iter().enumerate() {
        if v == HOLE {
            outer.remove(x);
        } else if v > 0 {
            entries[x] = v as u32;
        }
    }
    IncreasingTableau::new(poset, inner, outer, entries)
        .map_err(|e| TableauError::Invalid(format!("slide produced a bad tableau: {e}")))
}

/// Rectifies `t` by sliding into the cells of `order`, a straight-shape
/// increasing tableau filling exactly `t.inner`, largest letter first.
pub fn rectify(
    poset: &Poset,
    t: &IncreasingTableau,
    order: &IncreasingTableau,
) -> Result<IncreasingTableau> {
    if !order.is_straight() || order.outer != t.inner {
        return Err(TableauError::Shape(
            "rectification order must fill the inner shape".into(),
        ));
    }
    let mut current = t.clone();
    for a in (1..=order.max_entry()).rev() {
        let cells = ElementSet::from_members(
            poset.len(),
            order.cells().into_iter().filter(|&x| order.entries[x] == a),
        );
        if cells.is_empty() {
            continue;
        }
        current = jdt_slide(poset, &current, &cells)?;
    }
    Ok(current)
}

/// Rectifies with the minimal tableau of the inner shape as slide order.
pub fn rectify_with_minimal(poset: &Poset, t: &IncreasingTableau) -> Result<IncreasingTableau> {
    let order = minimal_tableau(poset, &t.inner)?;
    rectify(poset, t, &order)
}

/// Infusion of the nested pair (t, u), where `t` fills an ideal and `u`
/// fills a skew shape directly above it. The letters of `t` sweep outward
/// through `u`, largest first, each meeting the letters of `u` in increasing
/// order. Returns the rectified form of `u` and the record tableau left at
/// the top; applying infusion to the result gives back (t, u).
pub fn infusion(
    poset: &Poset,
    t: &IncreasingTableau,
    u: &IncreasingTableau,
) -> Result<(IncreasingTableau, IncreasingTableau)> {
    if t.outer != u.inner {
        return Err(TableauError::Shape(
            "infusion needs the first shape's outer ideal to be the second's inner".into(),
        ));
    }
    let mut board: Vec<i64> = u.entries.iter().map(|&v| v as i64).collect();
    for x in t.cells() {
        board[x] = -(t.entries[x] as i64);
    }
    for a in (1..=t.max_entry()).rev() {
        for b in 1..=u.max_entry() {
            swap_values(poset, &mut board, -(a as i64), b as i64);
        }
    }
    let n = poset.len();
    let mut mid = t.inner.clone();
    let mut first_entries = vec![0u32; n];
    let mut second_entries = vec![0u32; n];
    for (x, &v) in board.iter().enumerate() {
        if v > 0 {
            mid.insert(x);
            first_entries[x] = v as u32;
        } else if v < 0 {
            second_entries[x] = (-v) as u32;
        }
    }
    let first = IncreasingTableau::new(poset, t.inner.clone(), mid.clone(), first_entries)
        .map_err(|e| TableauError::Invalid(format!("infusion output is malformed: {e}")))?;
    let second = IncreasingTableau::new(poset, mid, u.outer.clone(), second_entries)
        .map_err(|e| TableauError::Invalid(format!("infusion record is malformed: {e}")))?;
    Ok((first, second))
}

/// Reads the shape's entries column by column, left to right, each column
/// bottom to top. The drawing must present the shape faithfully: covers
/// between shape cells are exactly the one-step moves right or down.
pub fn reading_word(
    poset: &Poset,
    t: &IncreasingTableau,
    drawing: &Drawing,
) -> Result<Vec<u32>> {
    if drawing.coords.len() != poset.len() {
        return Err(TableauError::Shape("drawing does not match the poset".into()));
    }
    let cells = t.cells();
    {
        let mut seen = HashSet::new();
        for &x in &cells {
            if !seen.insert(drawing.coords[x]) {
                return Err(TableauError::Shape("drawing repeats a cell".into()));
            }
        }
        let grid_adjacent = |x: usize, y: usize| {
            let (r1, c1) = drawing.coords[x];
            let (r2, c2) = drawing.coords[y];
            (r2 == r1 + 1 && c2 == c1) || (r2 == r1 && c2 == c1 + 1)
        };
        for &x in &cells {
            for &y in &cells {
                let covered = poset.upper_covers(x).contains(&y);
                if covered != grid_adjacent(x, y) {
                    return Err(TableauError::Shape(
                        "drawing is not a row-and-column presentation of the shape".into(),
                    ));
                }
            }
        }
    }
    let mut order = cells;
    order.sort_by_key(|&x| {
        let (r, c) = drawing.coords[x];
        (c, std::cmp::Reverse(r))
    });
    Ok(order.iter().map(|&x| t.entries[x]).collect())
}

/// Unfolds a tableau on a shifted shape (drawn with row <= column) onto the
/// full grid, placing the entry of cell (r, c) at both (r, c) and (c, r).
pub fn double_to_grid(
    shifted: &Poset,
    t: &IncreasingTableau,
    shifted_drawing: &Drawing,
    grid: &Poset,
    grid_drawing: &Drawing,
) -> Result<IncreasingTableau> {
    if !t.is_straight() {
        return Err(TableauError::Shape("doubling needs a straight shape".into()));
    }
    if shifted_drawing.coords.len() != shifted.len()
        || grid_drawing.coords.len() != grid.len()
    {
        return Err(TableauError::Shape("drawing does not match its poset".into()));
    }
    let mut by_coord = std::collections::HashMap::new();
    for x in t.cells() {
        let (r, c) = shifted_drawing.coords[x];
        if r > c {
            return Err(TableauError::Shape(
                "shifted drawing must keep row <= column".into(),
            ));
        }
        by_coord.insert((r, c), t.entries[x]);
    }
    let mut outer = ElementSet::empty(grid.len());
    let mut entries = vec![0u32; grid.len()];
    for g in 0..grid.len() {
        let (r, c) = grid_drawing.coords[g];
        if let Some(&v) = by_coord.get(&(r.min(c), r.max(c))) {
            outer.insert(g);
            entries[g] = v;
        }
    }
    IncreasingTableau::new(grid, ElementSet::empty(grid.len()), outer, entries)
}

/// Turns a plane partition on a graded poset into the increasing tableau
/// adding each cell's rank to its value. A plane partition of height ell
/// becomes a tableau with entries at most ell plus the poset height.
pub fn pp_to_it(poset: &Poset, pp: &PlanePartition) -> Result<IncreasingTableau> {
    if !poset.is_plane_partition(pp) {
        return Err(TableauError::Invalid("not a plane partition of this poset".into()));
    }
    let rf = poset.rank_function()?;
    let entries: Vec<u32> = (0..poset.len()).map(|x| pp.values[x] + rf.rank[x]).collect();
    IncreasingTableau::new(
        poset,
        ElementSet::empty(poset.len()),
        ElementSet::full(poset.len()),
        entries,
    )
}

/// Inverse of [`pp_to_it`]: subtracts each cell's rank, checking that the
/// result fits within height `ell`.
pub fn it_to_pp(poset: &Poset, t: &IncreasingTableau, ell: u32) -> Result<PlanePartition> {
    if !t.is_straight() || t.outer != ElementSet::full(poset.len()) {
        return Err(TableauError::Shape(
            "plane partitions correspond to full straight shapes".into(),
        ));
    }
    let rf = poset.rank_function()?;
    let mut values = vec![0u32; poset.len()];
    for x in 0..poset.len() {
        let rank = rf.rank[x];
        let v = t.entries[x];
        if v < rank || v > rank + ell {
            return Err(TableauError::Invalid(format!(
                "entry {v} at cell {x} is outside rank {rank} plus height {ell}"
            )));
        }
        values[x] = v - rank;
    }
    Ok(PlanePartition { ell, values })
}

/// Visits every increasing tableau of the given shape with entries bounded
/// by `m`, stopping with an error if more than `cap` exist.
pub fn for_each_increasing(
    poset: &Poset,
    inner: &OrderIdeal,
    outer: &OrderIdeal,
    m: u32,
    cap: u64,
    mut f: impl FnMut(&[u32]),
) -> Result<u64> {
    if !poset.is_ideal(inner) || !poset.is_ideal(outer) || !inner.is_subset(outer) {
        return Err(TableauError::Shape("enumeration needs nested ideals".into()));
    }
    let shape = outer.difference(inner);
    let cells: Vec<usize> =
        poset.topo_order().iter().copied().filter(|&x| shape.contains(x)).collect();
    // Longest chain strictly above each cell within the shape, for pruning.
    let mut above = vec![0u32; poset.len()];
    for &x in cells.iter().rev() {
        above[x] = cells
            .iter()
            .filter(|&&y| poset.lt(x, y))
            .map(|&y| above[y] + 1)
            .max()
            .unwrap_or(0);
    }
    fn rec(
        poset: &Poset,
        cells: &[usize],
        i: usize,
        entries: &mut Vec<u32>,
        m: u32,
        above: &[u32],
        count: &mut u64,
        cap: u64,
        f: &mut impl FnMut(&[u32]),
    ) -> Result<()> {
        if i == cells.len() {
            *count += 1;
            if *count > cap {
                return Err(TableauError::Poset(PosetError::ExplosionGuard { cap }));
            }
            f(entries);
            return Ok(());
        }
        let x = cells[i];
        let lo = cells[..i]
            .iter()
            .filter(|&&y| poset.lt(y, x))
            .map(|&y| entries[y])
            .max()
            .unwrap_or(0)
            + 1;
        let hi = m.saturating_sub(above[x]);
        for v in lo..=hi {
            entries[x] = v;
            rec(poset, cells, i + 1, entries, m, above, count, cap, f)?;
        }
        entries[x] = 0;
        Ok(())
    }
    let mut count = 0;
    let mut entries = vec![0u32; poset.len()];
    rec(poset, &cells, 0, &mut entries, m, &above, &mut count, cap, &mut f)?;
    Ok(count)
}

/// All standard fillings of the shape: bijections to 1..=N that increase
/// along the order, obtained from linear extensions of the induced subposet.
pub fn standard_tableaux(
    poset: &Poset,
    inner: &OrderIdeal,
    outer: &OrderIdeal,
    cap: u64,
) -> Result<Vec<IncreasingTableau>> {
    if !poset.is_ideal(inner) || !poset.is_ideal(outer) || !inner.is_subset(outer) {
        return Err(TableauError::Shape("enumeration needs nested ideals".into()));
    }
    let shape = outer.difference(inner);
    let (induced, ids) = poset.induced(&shape);
    let mut out = Vec::new();
    for ext in induced.linear_extensions(cap)? {
        let mut entries = vec![0u32; poset.len()];
        for (pos, &local) in ext.iter().enumerate() {
            entries[ids[local]] = pos as u32 + 1;
        }
        out.push(IncreasingTableau {
            inner: inner.clone(),
            outer: outer.clone(),
            entries,
        });
    }
    Ok(out)
}

/// A random increasing filling of the shape, drawn bottom-up with each entry
/// uniform in a window of `slack + 1` letters strictly above the entries
/// already fixed below it. Every increasing filling whose letters fit the
/// windows can occur; larger `slack` spreads the alphabet out more.
pub fn random_increasing(
    poset: &Poset,
    inner: &OrderIdeal,
    outer: &OrderIdeal,
    slack: u32,
    rng: &mut (impl rand::Rng + ?Sized),
) -> Result<IncreasingTableau> {
    if !poset.is_ideal(inner) || !poset.is_ideal(outer) || !inner.is_subset(outer) {
        return Err(TableauError::Shape("sampling needs nested ideals".into()));
    }
    let shape = outer.difference(inner);
    let mut entries = vec![0u32; poset.len()];
    for &x in poset.topo_order() {
        if !shape.contains(x) {
            continue;
        }
        let lo = poset
            .lower_covers(x)
            .iter()
            .filter(|&&y| shape.contains(y))
            .map(|&y| entries[y])
            .max()
            .unwrap_or(0);
        entries[x] = rng.random_range(lo + 1..=lo + 1 + slack);
    }
    IncreasingTableau::new(poset, inner.clone(), outer.clone(), entries)
}

/// Outcome of a bounded word-equivalence search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Equivalence {
    Equivalent,
    Distinct,
    Inconclusive,
}

/// Searches for a chain of K-theoretic Knuth moves from `a` to `b`:
/// repetition collapse xx ~ x, the braid-like xyx ~ yxy, and the two Knuth
/// triple moves; `weak` additionally allows swapping the first two letters.
/// The search explores words up to `max_len` letters and `max_states`
/// visited words. `Distinct` is only reported when the full equivalence
/// class was exhausted within the bounds.
pub fn kknuth_equivalent_bounded(
    a: &[u32],
    b: &[u32],
    weak: bool,
    max_len: usize,
    max_states: usize,
) -> Equivalence {
    let set = |w: &[u32]| {
        let mut s: Vec<u32> = w.to_vec();
        s.sort_unstable();
        s.dedup();
        s
    };
    // Every move preserves the set of letters used.
    if set(a) != set(b) {
        return Equivalence::Distinct;
    }
    if a == b {
        return Equivalence::Equivalent;
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    seen.insert(a.to_vec());
    queue.push_back(a.to_vec());
    let mut truncated = false;
    while let Some(w) = queue.pop_front() {
        let push = |next: Vec<u32>,
                        seen: &mut HashSet<Vec<u32>>,
                        queue: &mut VecDeque<Vec<u32>>,
                        truncated: &mut bool| {
            if seen.len() >= max_states {
                *truncated = true;
                return;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        };
        let mut neighbors: Vec<Vec<u32>> = Vec::new();
        for i in 0..w.len() {
            if i + 1 < w.len() && w[i] == w[i + 1] {
                let mut v = w.clone();
                v.remove(i);
                neighbors.push(v);
            }
            if w.len() < max_len {
                let mut v = w.clone();
                v.insert(i, w[i]);
                neighbors.push(v);
            } else {
                truncated = true;
            }
            if i + 2 < w.len() {
                let (p, q, r) = (w[i], w[i + 1], w[i + 2]);
                if p == r && p != q {
                    let mut v = w.clone();
                    v[i] = q;
                    v[i + 1] = p;
                    v[i + 2] = q;
                    neighbors.push(v);
                }
                if q.min(r) < p && p < q.max(r) {
                    let mut v = w.clone();
                    v.swap(i + 1, i + 2);
                    neighbors.push(v);
                }
                if p.min(q) < r && r < p.max(q) {
                    let mut v = w.clone();
                    v.swap(i, i + 1);
                    neighbors.push(v);
                }
            }
        }
        if weak && w.len() >= 2 && w[0] != w[1] {
            let mut v = w.clone();
            v.swap(0, 1);
            neighbors.push(v);
        }
        for next in neighbors {
            if next == b {
                return Equivalence::Equivalent;
            }
            push(next, &mut seen, &mut queue, &mut truncated);
        }
    }
    if truncated {
        Equivalence::Inconclusive
    } else {
        Equivalence::Distinct
    }
}
