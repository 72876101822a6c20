//! Numeric tolerances shared across the crate.
//!
//! Every threshold used by a check lives here so that the library, the CLI
//! and the test suites agree on what "equal" means.

/// Absolute tolerance for comparing character sums (group and subgroup sums).
pub const CHARACTER_SUM: f64 = 1e-9;

/// Modulus of a character value must be 1 within this bound.
pub const UNIT_MODULUS: f64 = 1e-12;

/// Default clustering tolerance for frame-angle magnitudes.
pub const ANGLE_CLUSTER: f64 = 1e-7;

/// Two angle clusters closer than this multiple of the clustering
/// tolerance raise the ambiguity flag.
pub const CLUSTER_AMBIGUITY_FACTOR: f64 = 10.0;

/// Welch-bound equality for the ETF test.
pub const WELCH_EQUALITY: f64 = 1e-7;

/// Entrywise deviation allowed for the frame operator `(n/m) I`.
pub const TIGHTNESS: f64 = 1e-9;

/// Tight-frame identity `sum tau * alpha^2 = (n - m)/m` on angle profiles.
pub const TIGHT_IDENTITY: f64 = 1e-8;

/// Modulation-operator identities (orthogonality, inversion, angle encoding).
pub const MODULATION: f64 = 1e-8;

/// Closed-form modulation entries against their definitional sums.
pub const MODULATION_ENTRY: f64 = 1e-9;

/// Integrality slack for multiplicities recovered from angle pairs.
pub const MULTIPLICITY_INTEGRALITY: f64 = 1e-6;

/// Gauss sums against their closed forms.
pub const GAUSS_SUM: f64 = 1e-9;

/// Table rows against their closed-form predictors.
pub const TABLE_ROW: f64 = 1e-10;

/// Angle-set matching during exhaustive search.
pub const ANGLE_MATCH: f64 = 1e-7;

/// Predicted angle values against brute-force profiles.
pub const PREDICTION: f64 = 1e-8;
