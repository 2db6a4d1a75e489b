//! Risk stratification laboratory for revascularization decisions.
//!
//! Everything in this crate is pure computation over in-memory data: synthetic
//! cohort generation with planted ground truth, feature-matrix construction,
//! raster ECG trace extraction and embedding, L1 logistic regression and
//! gradient boosted trees, feature selection, nested cross-validated ROC/AUC
//! evaluation against a configurable additive baseline score, probability
//! calibration, and distillation of fitted models into additive look-up
//! tables. File formats and the command line live in the companion
//! `uarisk-cli` crate.
//!
//! The crate is `no_std` (with `alloc`) so the algorithms can be embedded
//! anywhere; all randomness flows from explicit 64-bit seeds and results are
//! bit-reproducible across runs and platforms.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cohort;
pub mod ecg;
pub mod eval;
pub mod explain;
pub mod ingest;
pub mod models;
pub mod select;
pub mod special;
pub mod util;
