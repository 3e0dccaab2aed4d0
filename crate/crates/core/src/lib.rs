//! Exact-arithmetic engine for higher cluster categories of type A, realized
//! through their polygon model.
//!
//! The library computes the Grothendieck group of the d-cluster category of
//! A_n three independent ways — Auslander–Reiten mesh relations, explicit
//! relations coming from a fan-shaped tilting set, and the kernel lattice of
//! index vectors — and checks them against the closed-form classification.

pub mod arquiver;
pub mod derived;
pub mod intlattice;
pub mod k0;
pub mod polygon;
