//! Bijections between the plane partitions of a minuscule poset and those
//! of its partner root poset.
//!
//! Each cataloged triple embeds both posets into a common ambient minuscule
//! poset: X sits between the ideals u and v, Y sits on the ideal w. A plane
//! partition on X becomes an increasing tableau, rides the embedding into
//! the skew shape v/u, rectifies to the straight shape w, and drops back to
//! a plane partition on Y by subtracting ranks. Because exactly one tableau
//! of shape v/w rectifies to the minimal tableau of u, infusion against
//! that tableau recovers the input, giving the inverse map.

use crate::catalog::{build_triple, CatalogError, DoppelTriple, TripleFamily};
use crate::poset::{ideal_cap, ElementSet, PlanePartition, PosetError};
use crate::tableaux::{self, IncreasingTableau, TableauError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DoppelError {
    #[error("bad input: {0}")]
    Input(String),
    #[error("rectification landed on the wrong shape: {0}")]
    ShapeAssertionFailed(String),
    #[error("infusion did not reproduce the rectification order: {0}")]
    InfusionMismatch(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

pub type Result<T> = std::result::Result<T, DoppelError>;

/// A triple fixed at one height, together with the derived data both maps
/// share: the rectification order on u and the common alphabet bound.
#[derive(Clone, Debug)]
pub struct BijectionContext {
    pub triple: DoppelTriple,
    pub ell: u32,
    /// Largest letter any tableau in the pipeline can carry: `ell` plus the
    /// common height of X, Y, and the subposet on w.
    pub m: u32,
    /// Minimal tableau of u, the slide order used by every rectification.
    order: IncreasingTableau,
}

impl BijectionContext {
    pub fn new(family: &TripleFamily, ell: u32) -> Result<Self> {
        Self::with_triple(build_triple(family)?, ell)
    }

    pub fn with_triple(triple: DoppelTriple, ell: u32) -> Result<Self> {
        let height = triple.y.rank_function()?.height;
        let order = tableaux::minimal_tableau(&triple.ambient.poset, &triple.u)?;
        Ok(BijectionContext { triple, ell, m: ell + height, order })
    }

    fn check_height(&self, pp: &PlanePartition) -> Result<()> {
        if pp.ell != self.ell {
            return Err(DoppelError::Input(format!(
                "partition of height {} in a context built at height {}",
                pp.ell, self.ell
            )));
        }
        Ok(())
    }

    /// Maps a plane partition on X to one on Y: convert to a tableau, embed
    /// in the skew shape v/u, rectify, read off the result along w.
    pub fn forward(&self, pp: &PlanePartition) -> Result<PlanePartition> {
        self.check_height(pp)?;
        let t = &self.triple;
        let amb = &t.ambient.poset;
        let it_x = tableaux::pp_to_it(&t.x.poset, pp)?;

        let mut entries = vec![0u32; amb.len()];
        for (i, &a) in t.theta.iter().enumerate() {
            entries[a] = it_x.entries[i];
        }
        let embedded =
            IncreasingTableau::new(amb, t.u.clone(), t.v.clone(), entries)?;
        let rectified = tableaux::rectify(amb, &embedded, &self.order)?;
        if rectified.outer != t.w {
            return Err(DoppelError::ShapeAssertionFailed(format!(
                "rectifying {:?} produced the ideal {:?} instead of w",
                pp.values,
                rectified.outer.members()
            )));
        }

        let entries_y: Vec<u32> =
            t.chi.iter().map(|&a| rectified.entries[a]).collect();
        let it_y = IncreasingTableau::new(
            &t.y,
            ElementSet::empty(t.y.len()),
            ElementSet::full(t.y.len()),
            entries_y,
        )?;
        Ok(tableaux::it_to_pp(&t.y, &it_y, self.ell)?)
    }

    /// Maps a plane partition on Y back to one on X: place it on w, push it
    /// outward through the stored tableau of shape v/w by infusion, and pull
    /// the record back through the embedding of X. The infusion must leave
    /// the minimal tableau of u behind; anything else means the input was
    /// not in the image of [`Self::forward`].
    pub fn inverse(&self, pp: &PlanePartition) -> Result<PlanePartition> {
        self.check_height(pp)?;
        let t = &self.triple;
        let amb = &t.ambient.poset;
        let it_y = tableaux::pp_to_it(&t.y, pp)?;

        let mut entries = vec![0u32; amb.len()];
        for (yv, &a) in t.chi.iter().enumerate() {
            entries[a] = it_y.entries[yv];
        }
        let on_w = IncreasingTableau::new(
            amb,
            ElementSet::empty(amb.len()),
            t.w.clone(),
            entries,
        )?;
        let (first, second) = tableaux::infusion(amb, &on_w, &t.u_tableau)?;
        if first.outer != t.u || first.entries != self.order.entries {
            return Err(DoppelError::InfusionMismatch(format!(
                "pushing {:?} outward left {:?} on {:?} rather than the \
                 minimal tableau of u",
                pp.values,
                first.entries,
                first.outer.members()
            )));
        }

        let entries_x: Vec<u32> =
            t.theta.iter().map(|&a| second.entries[a]).collect();
        let it_x = IncreasingTableau::new(
            &t.x.poset,
            ElementSet::empty(t.x.poset.len()),
            ElementSet::full(t.x.poset.len()),
            entries_x,
        )?;
        Ok(tableaux::it_to_pp(&t.x.poset, &it_x, self.ell)?)
    }

    /// Exhaustively checks that the maps form a pair of mutually inverse
    /// bijections at this height, that the two sides agree in number with
    /// the counting formula, and that standard fillings go to standard
    /// fillings. Failures carry a witness; the report lists at most a
    /// screenful of them.
    pub fn verify(&self) -> Result<VerifyReport> {
        const MAX_LISTED: usize = 20;
        let cap = ideal_cap();
        let x = &self.triple.x.poset;
        let y = &self.triple.y;
        let mut failures: Vec<String> = Vec::new();
        let report = |failures: &mut Vec<String>, msg: String| {
            if failures.len() < MAX_LISTED {
                failures.push(msg);
            } else if failures.len() == MAX_LISTED {
                failures.push("further failures suppressed".into());
            }
        };

        let partitions_x = x.count_pp(self.ell)?;
        let partitions_y = y.count_pp(self.ell)?;
        if partitions_x != partitions_y {
            report(
                &mut failures,
                format!(
                    "X carries {partitions_x} partitions of height {} but Y \
                     carries {partitions_y}",
                    self.ell
                ),
            );
        }

        let mut inputs: Vec<Vec<u32>> = Vec::new();
        x.for_each_pp(self.ell, cap, |vals| inputs.push(vals.to_vec()))?;
        if inputs.len() as u64 != partitions_x {
            report(
                &mut failures,
                format!(
                    "enumeration found {} partitions of X but the counting \
                     formula gives {partitions_x}",
                    inputs.len()
                ),
            );
        }

        let outcomes: Vec<std::result::Result<(Vec<u32>, Option<String>), String>> =
            inputs
                .par_iter()
                .map(|vals| {
                    let pp = PlanePartition { ell: self.ell, values: vals.clone() };
                    let image = self
                        .forward(&pp)
                        .map_err(|e| format!("forward failed on {vals:?}: {e}"))?;
                    let round = match self.inverse(&image) {
                        Err(e) => Some(format!(
                            "inverse failed on the image of {vals:?}: {e}"
                        )),
                        Ok(back) if back.values != *vals => Some(format!(
                            "{vals:?} round-tripped to {:?}",
                            back.values
                        )),
                        Ok(_) => None,
                    };
                    Ok((image.values, round))
                })
                .collect();

        let mut image_of: HashMap<Vec<u32>, usize> = HashMap::new();
        for (idx, outcome) in outcomes.into_iter().enumerate() {
            match outcome {
                Err(msg) => report(&mut failures, msg),
                Ok((image, round)) => {
                    if let Some(msg) = round {
                        report(&mut failures, msg);
                    }
                    if let Some(&prev) = image_of.get(&image) {
                        report(
                            &mut failures,
                            format!(
                                "inputs {:?} and {:?} share the image {image:?}",
                                inputs[prev], inputs[idx]
                            ),
                        );
                    } else {
                        image_of.insert(image, idx);
                    }
                }
            }
        }
        let distinct_images = image_of.len() as u64;

        let mut targets: HashSet<Vec<u32>> = HashSet::new();
        y.for_each_pp(self.ell, cap, |vals| {
            targets.insert(vals.to_vec());
        })?;
        for target in &targets {
            if !image_of.contains_key(target) {
                report(&mut failures, format!("nothing maps to {target:?}"));
            }
        }
        for image in image_of.keys() {
            if !targets.contains(image) {
                report(
                    &mut failures,
                    format!("{image:?} is not a partition of Y"),
                );
            }
        }

        // Standard fillings use every letter once, which pins their height:
        // the cell count minus the common height. Rerun the maps there.
        let height = self.m - self.ell;
        let ell_std = x.len() as u32 - height;
        let std_context;
        let std_ctx = if self.ell == ell_std {
            self
        } else {
            std_context = BijectionContext::with_triple(self.triple.clone(), ell_std)?;
            &std_context
        };
        let standard_fillings = tableaux::standard_tableaux(
            x,
            &ElementSet::empty(x.len()),
            &ElementSet::full(x.len()),
            cap,
        )?;
        let standard_x = standard_fillings.len() as u64;
        let standard_y_count = y.count_linear_extensions(cap)?;
        let standard_y = u64::try_from(standard_y_count).unwrap_or(u64::MAX);
        if u128::from(standard_x) != standard_y_count {
            report(
                &mut failures,
                format!(
                    "{standard_x} standard fillings of X against \
                     {standard_y_count} of Y"
                ),
            );
        }

        let standard_outcomes: Vec<std::result::Result<Vec<u32>, String>> =
            standard_fillings
                .par_iter()
                .map(|t| {
                    let pp = tableaux::it_to_pp(x, t, ell_std)
                        .map_err(|e| format!("a standard filling of X does not fit at height {ell_std}: {e}"))?;
                    let image = std_ctx
                        .forward(&pp)
                        .map_err(|e| format!("forward failed on the standard filling {:?}: {e}", t.entries))?;
                    let it = tableaux::pp_to_it(y, &image)
                        .map_err(|e| format!("the image of a standard filling is malformed: {e}"))?;
                    if !it.is_standard() {
                        return Err(format!(
                            "the standard filling {:?} maps to the non-standard {:?}",
                            t.entries, image.values
                        ));
                    }
                    Ok(image.values)
                })
                .collect();
        let mut standard_images: HashSet<Vec<u32>> = HashSet::new();
        for outcome in standard_outcomes {
            match outcome {
                Err(msg) => report(&mut failures, msg),
                Ok(image) => {
                    if !standard_images.insert(image.clone()) {
                        report(
                            &mut failures,
                            format!(
                                "two standard fillings share the image {image:?}"
                            ),
                        );
                    }
                }
            }
        }

        Ok(VerifyReport {
            pass: failures.is_empty(),
            counts: VerifyCounts {
                partitions_x,
                partitions_y,
                distinct_images,
                standard_x,
                standard_y,
            },
            failures,
        })
    }

    /// Round-trips `samples` randomly drawn plane partitions of X. A cheap
    /// spot check for parameters too large to verify exhaustively; failures
    /// carry a witness, capped at a screenful.
    pub fn spot_check(
        &self,
        samples: u64,
        rng: &mut (impl rand::Rng + ?Sized),
    ) -> Result<SpotCheckReport> {
        const MAX_LISTED: usize = 20;
        let x = &self.triple.x.poset;
        let y = &self.triple.y;
        let mut failures = Vec::new();
        for _ in 0..samples {
            if failures.len() > MAX_LISTED {
                break;
            }
            let pp = x.random_pp(self.ell, rng);
            let vals = &pp.values;
            match self.forward(&pp) {
                Err(e) => failures.push(format!("forward failed on {vals:?}: {e}")),
                Ok(image) => {
                    if !y.is_plane_partition(&image) {
                        failures.push(format!(
                            "{vals:?} maps to {:?}, which is not a partition of Y",
                            image.values
                        ));
                        continue;
                    }
                    match self.inverse(&image) {
                        Err(e) => failures.push(format!(
                            "inverse failed on the image of {vals:?}: {e}"
                        )),
                        Ok(back) if back.values != *vals => failures.push(format!(
                            "{vals:?} round-tripped to {:?}",
                            back.values
                        )),
                        Ok(_) => {}
                    }
                }
            }
        }
        if failures.len() > MAX_LISTED {
            failures.truncate(MAX_LISTED);
            failures.push("further failures suppressed".into());
        }
        Ok(SpotCheckReport { pass: failures.is_empty(), samples, failures })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCounts {
    pub partitions_x: u64,
    pub partitions_y: u64,
    pub distinct_images: u64,
    pub standard_x: u64,
    pub standard_y: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub counts: VerifyCounts,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpotCheckReport {
    pub pass: bool,
    pub samples: u64,
    pub failures: Vec<String>,
}
