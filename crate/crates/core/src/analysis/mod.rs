//! Boundedness classifiers, predicted growth exponents, exact norm sweeps
//! and exponent fitting.

mod classify;
mod fit;
mod ray;
mod sweep;

pub use classify::{
    classify_hankel_product, classify_single, classify_toeplitz_product, MatchedCase, Property, SingleKind, Verdict,
};
pub use fit::{fit_exponent, ExponentReport};
pub use ray::{default_base, predicted_exponent, GrowthKind, Prediction, RaySpec, TSchedule};
pub use sweep::{
    corroborate, image_squared_norm, norm_sweep, ratio_stabilization, AnalysisConfig, Corroboration, NormSample,
};
