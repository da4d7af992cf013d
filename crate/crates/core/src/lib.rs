//! Simulation toolkit for critical configuration models with power-law degrees
//! (`τ ∈ (3,4)`): degree sequences, configuration-model pairing, breadth-first
//! exploration walks, thinned Lévy limits, percolation and window sweeps, and
//! augmented multiplicative coalescents.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amc;
pub mod analysis;
pub mod components;
pub mod config_model;
pub mod degrees;
pub mod dsu;
pub mod error;
pub mod exploration;
pub mod io;
pub mod levy;
pub mod numerics;
pub mod percolation;
pub mod rng;
pub mod weights;

pub use amc::{simulate, AmcEvent, AmcTrajectory, AttributeRule, Particle, ParticleSystem};
pub use analysis::{
    chi_square_gof, chi_square_two_sample, compare_to_limit, d_u, ks_two_sample, ord, total_variation, OrderedPairVector,
    Report,
};
pub use components::{components_from_edges, ComponentSummary};
pub use config_model::{pair_half_edges, sample_simple, simplicity, MultiGraph};

pub use degrees::{
    check_assumptions, compute_lambda0, compute_nu, gen_deterministic, gen_iid_gamma, scaling_constants,
    tail_quantile, AssumptionReport, DegreeSequence, GammaCoupling, LimitLaw, PowerLawSpec, ScalingConstants,
    SlowlyVarying,
};
pub use error::{Error, Result};
pub use exploration::{explore, surplus_process, ExplorationWalk};
pub use levy::{excursions, reflect, sample_marks, sample_path, ExcursionSet, LevyPath, ThetaSpec};
pub use percolation::{
    dynamic_sweep, explode, modified_sweep, percolate_direct, percolate_explosion, verify_percolated_assumptions,
    ExplodedDegrees, WindowSnapshot,
};
pub use rng::{stream, SimRng};
pub use weights::{WeightRule, WeightSpec};
