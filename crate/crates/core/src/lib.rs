//! Commutative algebra over prime fields, aimed at one job: rebuilding a
//! degree 19, genus 12 curve in P^7 from a plane model and checking, by exact
//! computation, that it is cut out by quadrics as a scheme while its
//! homogeneous ideal needs two cubic generators.
//!
//! Layers, bottom up: [`arith`] (F_p and dense matrices), [`poly`],
//! [`groebner`], [`hilbert`], [`fatpoints`], [`image`], plus the closed-form
//! [`bounds`] calculators and the end-to-end [`pipeline`].

pub mod arith;
pub mod bounds;
pub mod error;
pub mod fatpoints;
pub mod groebner;
pub mod hilbert;
pub mod image;
pub mod parallel;
pub mod pipeline;
pub mod poly;

pub use error::{Error, Result};
