//! Structure coefficients for products of Schubert classes on a minuscule
//! poset, in both cohomology and K-theory.
//!
//! The cohomological coefficient counts standard tableaux of a skew shape
//! that rectify to one fixed standard filling of the target shape. Its
//! K-theoretic refinement counts increasing tableaux that rectify to the
//! minimal tableau of the target, signed by the parity of the excess
//! `|v| - |w| - |u|`. Full product expansions assemble these coefficients
//! over all candidate shapes, and for multiplicity-free cohomological
//! products a Möbius-function formula on the lattice of ideals provides the
//! same expansion by an independent route.

use crate::catalog::recognize_minuscule;
use crate::poset::{ideal_cap, ElementSet, OrderIdeal, Poset, PosetError};
use crate::tableaux::{
    for_each_increasing, minimal_tableau, rectify, standard_tableaux, IncreasingTableau,
    TableauError,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum KTheoryError {
    #[error("the ambient poset is not a cataloged minuscule poset")]
    NotMinusculeAmbient,
    #[error("degree mismatch: |v| = {v} but |w| + |u| = {w} + {u}")]
    SizeMismatch { w: usize, u: usize, v: usize },
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

pub type Result<T> = std::result::Result<T, KTheoryError>;

/// A signed expansion of a product of two Schubert classes, keyed by the
/// order ideal naming each basis element. Terms are sorted by size, then by
/// ideal; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KExpansion {
    terms: Vec<(OrderIdeal, i64)>,
}

impl KExpansion {
    fn from_pairs(pairs: impl IntoIterator<Item = (OrderIdeal, i64)>) -> Self {
        let mut terms: Vec<(OrderIdeal, i64)> =
            pairs.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by_key(|(v, _)| (v.len(), v.clone()));
        KExpansion { terms }
    }

    pub fn terms(&self) -> &[(OrderIdeal, i64)] {
        &self.terms
    }

    pub fn coefficient(&self, v: &OrderIdeal) -> i64 {
        self.terms.iter().find(|(y, _)| y == v).map_or(0, |&(_, c)| c)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn require_minuscule(ambient: &Poset) -> Result<()> {
    if recognize_minuscule(ambient).is_none() {
        return Err(KTheoryError::NotMinusculeAmbient);
    }
    Ok(())
}

/// Runs `f` on each increasing tableau of shape `v/w` that rectifies to the
/// minimal tableau of shape `u`, returning how many there were.
///
/// Rectification preserves the set of letters a tableau uses, and the
/// minimal tableau of `u` uses each letter up to the height of `u` exactly
/// once as a set. A tableau can therefore only rectify to it if its letters
/// are precisely 1 up to that height, so enumerating fillings in that
/// alphabet loses nothing.
pub(crate) fn for_each_c_tableau(
    ambient: &Poset,
    w: &OrderIdeal,
    u: &OrderIdeal,
    v: &OrderIdeal,
    mut f: impl FnMut(&IncreasingTableau),
) -> Result<u64> {
    let target = minimal_tableau(ambient, u)?;
    let order = minimal_tableau(ambient, w)?;
    let m = target.max_entry();
    if u.is_empty() {
        if v == w {
            let empty = IncreasingTableau::new(
                ambient,
                w.clone(),
                v.clone(),
                vec![0; ambient.len()],
            )?;
            f(&empty);
            return Ok(1);
        }
        return Ok(0);
    }
    if m >= 64 {
        return Err(KTheoryError::Shape(format!("alphabet of {m} letters is too large")));
    }
    let cells: Vec<usize> = v.difference(w).members();
    let full: u64 = ((1u64 << m) - 1) << 1;
    let mut count = 0u64;
    let mut failure = None;
    for_each_increasing(ambient, w, v, m, ideal_cap(), |entries| {
        if failure.is_some() {
            return;
        }
        let mut used = 0u64;
        for &x in &cells {
            used |= 1 << entries[x];
        }
        if used != full {
            return;
        }
        let candidate = IncreasingTableau {
            inner: w.clone(),
            outer: v.clone(),
            entries: entries.to_vec(),
        };
        match rectify(ambient, &candidate, &order) {
            Ok(r) if r.outer == *u && r.entries == target.entries => {
                f(&candidate);
                count += 1;
            }
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(count)
}

/// All increasing tableaux of shape `v/w` rectifying to the minimal tableau
/// of shape `u`. Their signed count is the K-theoretic structure
/// coefficient at `v` of the product of the classes of `w` and `u`.
pub fn c_set(
    ambient: &Poset,
    w: &OrderIdeal,
    u: &OrderIdeal,
    v: &OrderIdeal,
) -> Result<Vec<IncreasingTableau>> {
    require_minuscule(ambient)?;
    let mut out = Vec::new();
    for_each_c_tableau(ambient, w, u, v, |t| out.push(t.clone()))?;
    Ok(out)
}

/// The K-theoretic structure coefficient at `v`: the size of the
/// rectification class, with sign the parity of `|v| - |w| - |u|`.
pub fn k_coefficient(
    ambient: &Poset,
    w: &OrderIdeal,
    u: &OrderIdeal,
    v: &OrderIdeal,
) -> Result<i64> {
    require_minuscule(ambient)?;
    k_coefficient_inner(ambient, w, u, v)
}

fn k_coefficient_inner(
    ambient: &Poset,
    w: &OrderIdeal,
    u: &OrderIdeal,
    v: &OrderIdeal,
) -> Result<i64> {
    let count = for_each_c_tableau(ambient, w, u, v, |_| {})? as i64;
    let excess = v.len() as i64 - w.len() as i64 - u.len() as i64;
    Ok(if excess % 2 == 0 { count } else { -count })
}

/// The cohomological structure coefficient at `v`: the number of standard
/// tableaux of shape `v/w` rectifying to one fixed standard filling of `u`.
/// Defined only in the top degree `|v| = |w| + |u|`.
///
/// Both the target filling and the rectification order are the first
/// standard tableau of their shape in enumeration order. On a minuscule
/// poset the count does not depend on either choice; tests check this by
/// exhausting the alternatives on small shapes.
pub fn coh_coefficient(
    ambient: &Poset,
    w: &OrderIdeal,
    u: &OrderIdeal,
    v: &OrderIdeal,
) -> Result<u64> {
    require_minuscule(ambient)?;
    coh_coefficient_inner(ambient, w, u, v)
}

fn coh_coefficient_inner(
    ambient: &Poset,
    w: &OrderIdeal,
    u: &OrderIdeal,
    v: &OrderIdeal,
) -> Result<u64> {
    if v.len() != w.len() + u.len() {
        return Err(KTheoryError::SizeMismatch { w: w.len(), u: u.len(), v: v.len() });
    }
    let target = first_standard(ambient, u)?;
    let order = first_standard(ambient, w)?;
    let mut count = 0;
    for t in standard_tableaux(ambient, w, v, ideal_cap())? {
        let r = rectify(ambient, &t, &order)?;
        if r.outer == *u && r.entries == target.entries {
            count += 1;
        }
    }
    Ok(count)
}

/// The first standard filling of a straight shape in enumeration order.
fn first_standard(ambient: &Poset, shape: &OrderIdeal) -> Result<IncreasingTableau> {
    let empty = ElementSet::empty(ambient.len());
    standard_tableaux(ambient, &empty, shape, ideal_cap())?
        .into_iter()
        .next()
        .ok_or_else(|| KTheoryError::Shape("shape admits no standard filling".into()))
}

/// The expansion of the product of the classes of `w` and `u` in the basis
/// of structure sheaves: every ideal `v ⊇ w` of the ambient poset with a
/// nonzero coefficient, computed independently per candidate.
pub fn k_product_expansion(
    ambient: &Poset,
    w: &OrderIdeal,
    u: &OrderIdeal,
) -> Result<KExpansion> {
    require_minuscule(ambient)?;
    let mut candidates = Vec::new();
    ambient.for_each_ideal(ideal_cap(), |y| {
        if w.is_subset(y) && y.len() >= w.len() + u.len() {
            candidates.push(y.clone());
        }
    })?;
    let pairs = candidates
        .into_par_iter()
        .map(|v| k_coefficient_inner(ambient, w, u, &v).map(|c| (v, c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(KExpansion::from_pairs(pairs))
}

/// The cohomological expansion of the product of the classes of `w` and
/// `u`: coefficients in the top degree `|v| = |w| + |u|` only.
pub fn coh_product_expansion(
    ambient: &Poset,
    w: &OrderIdeal,
    u: &OrderIdeal,
) -> Result<KExpansion> {
    require_minuscule(ambient)?;
    let mut candidates = Vec::new();
    ambient.for_each_ideal(ideal_cap(), |y| {
        if w.is_subset(y) && y.len() == w.len() + u.len() {
            candidates.push(y.clone());
        }
    })?;
    let pairs = candidates
        .into_par_iter()
        .map(|v| coh_coefficient_inner(ambient, w, u, &v).map(|c| (v, c as i64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(KExpansion::from_pairs(pairs))
}

/// The K-theoretic expansion read off a multiplicity-free cohomological
/// product: coefficients are the Möbius weights of the up-closure of the
/// support inside the lattice of ideals, with a bottom adjoined below. The
/// caller certifies multiplicity-freeness of the support.
pub fn knutson_expansion(ambient: &Poset, coh_terms: &[OrderIdeal]) -> Result<KExpansion> {
    let pairs = ambient.mobius_hat(coh_terms, ideal_cap())?;
    Ok(KExpansion::from_pairs(pairs))
}
