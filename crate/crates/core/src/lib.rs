//! Simulation and optimization of heralded cat-state generation from a
//! single-mode squeezed vacuum mixed with two single ancilla photons on a
//! pair of identical beam splitters.
//!
//! The crate is organized around one redundancy principle: every analytic
//! quantity (heralded states, normalization factors, outcome probabilities)
//! has an independent brute-force counterpart in [`oracle`], and the two are
//! held to agree at tight tolerances by [`validate`] and the test suites.
//!
//! - [`states`] — squeezed vacuum and cat-state targets in the Fock basis.
//! - [`series`] — truncated power-series calculus for normalization factors.
//! - [`oracle`] — exact beam-splitter cascade with photon-number projection.
//! - [`herald`] — closed-form heralded states and probabilities.
//! - [`optimizer`] — fidelity maximization, sweeps, baselines and gains.
//! - [`validate`] — runnable equivalence suites aggregating the cross-checks.

pub mod error;
pub mod herald;
pub mod math;
pub mod optimizer;
pub mod oracle;
pub mod series;
pub mod states;
pub mod validate;

pub use error::{Error, Result};
pub use herald::{
    conditional_state, herald_amplitude, herald_probability, normalization_direct,
    normalization_series, quadratic_weights, unnormalized_amplitude, HeraldPattern,
    QuadraticWeights,
};
pub use optimizer::{
    baseline00, gain_curves, optimize_fidelity, sweep_beta, BaselineOutcome, BaselinePoint,
    BaselineSettings, GainMetrics, OptimizationResult, OptimizerSettings, SearchBox,
};
pub use oracle::{
    bs_apply, bs_element, cascade_herald, herald_distribution, BeamSplitterParams, CascadeParams,
    HeraldOutcome,
};
pub use series::{z_series, TruncatedSeries};
pub use states::{
    fidelity, scs_state, smsv_state, CutoffPolicy, FockVector, Parity, ScsSign, ScsTarget,
    SqueezeAnchor, SqueezeParams,
};
pub use validate::SuiteReport;
