//! Solvers and device models for boolean knapsack problems on an analogue
//! optical gate array.
//!
//! The crate has four parts:
//!
//! * [`knapsack`] — exact and truncation-based approximate solvers for the
//!   three knapsack variants, plus a brute-force oracle,
//! * [`optics`] — Gaussian-beam geometry: divergence, beam broadening, shift
//!   granularity and mirror-size constraints, and a device sizing routine,
//! * [`sim`] — a stage-by-stage simulation of the optical gate array
//!   (splitting, plate shifts, saturating amplification, phase alignment,
//!   CCD pixel readout),
//! * [`cost`] — implementation/energy/time estimates for the optical device
//!   and for a deterministic processor, with a traceable formula record.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cost;
pub mod knapsack;
pub mod optics;
pub mod sim;
