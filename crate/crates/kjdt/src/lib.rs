//! K-theoretic jeu de taquin on minuscule posets.
//!
//! The library is organized bottom-up:
//!
//! * [`poset`] — finite posets, order ideals, plane partitions, linear
//!   extensions, Möbius functions, isomorphism testing.
//! * [`coxeter`] — Coxeter systems with exact arithmetic, words, heaps,
//!   reduced word counting, Demazure products.
//! * [`catalog`] — the minuscule posets, the coincidental root posets, and
//!   the embedded triples (X, Y, Z) used by the bijections.
//! * [`tableaux`] — increasing tableaux, swaps, jeu-de-taquin slides,
//!   rectification, infusion, reading words, doubling.
//! * [`ktheory`] — structure coefficients of minuscule K-theory via
//!   rectification sets, product expansions, and the Möbius shortcut.
//! * [`doppel`] — the doppelganger bijections between plane partition
//!   families, with exhaustive and sampled verification.
//!
//! Everything is exact integer (or golden-rational) arithmetic; there is no
//! floating point anywhere in the computation paths.

pub mod catalog;
pub mod coxeter;
pub mod doppel;
pub mod ktheory;
pub mod poset;
pub mod tableaux;
