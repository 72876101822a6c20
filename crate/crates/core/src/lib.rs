//! Harmonic frames generated by subsets of finite abelian groups.
//!
//! The crate builds the frame `f_x = (rho_{g_1}(x), ..., rho_{g_m}(x)) / sqrt(m)`
//! for a generator subset `S = {g_1, ..., g_m}` of `G = Z_{n1} + ... + Z_{nk}`,
//! places `S` in the difference-set taxonomy and checks the measured angle
//! profile against closed-form predictions.

pub mod difference;
pub mod error;
pub mod group;
pub mod harmonic;
pub mod number_theory;
pub mod predictions;
pub mod search;
pub mod symbolic;
pub mod tables;
pub mod tolerance;
pub mod verify;

pub use difference::{classify, difference_counts, Classification, DiffCounts, NestedChain};
pub use error::{Error, Result};
pub use group::{abelian_groups_of_order, CharacterValue, Element, GroupSpec, Subgroup};

pub use harmonic::{AngleProfile, Angularity, FrameAngle, FrameReport, FrameSpec, ModulationOperator};
pub use number_theory::{GaussSumValue, ResidueClass};
pub use predictions::{AnglePrediction, PredictionClass};
pub use search::{Filter, SearchJob, SearchMode, SearchReport};


pub use symbolic::QuadraticSurd;
