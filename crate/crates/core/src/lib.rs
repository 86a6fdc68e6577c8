//! Analysis of positive periodic solutions of Abel equations
//! x' = A(t) x^3 + B(t) x^2: exact real-root counting for the certificate
//! polynomials, concrete coefficient families, variational integration of
//! the return map, cycle location and classification, semistability
//! certificates, and the trigonometric specialization with its analysis
//! at infinity.

pub mod abelmodel;
pub mod criteria;
pub mod cycles;
pub mod flow;
pub mod realroots;
pub mod trig;

pub use abelmodel::{
    check_c1, derived_functions, uniqueness_precheck, CoefficientFamily, DerivedFunctions,
    ModelError, UniquenessPrecheck, ZeroPoint, ZeroStructure,
};
pub use criteria::{
    alpha_beta_diagnostics, certify_c2, certify_c3, criteria_report, semistability_verdict,
    CriteriaError, CriteriaReport, SemistabilityVerdict, Verdict,
};
pub use cycles::{
    find_closed_solutions, hopf_coefficients, hopf_coefficients_fitted, lambda_curve,
    Classification, CycleError, CycleRecord, CycleSearch, FamilyTemplate, HopfCoefficients,
    LambdaSample, MonotoneParam,
};
pub use flow::{
    bounded_supremum, integrate_over, integrate_with_variations, BoundedSupremum, FlowError,
    FlowResult, FlowStatus, IntegratorOptions, Trajectory,
};
pub use realroots::{
    budan_fourier_bound, discriminant, isolate_real_roots, rat, rat_from_f64, rat_to_f64,
    refine_root, resultant, sturm_count, Interval, Rat, RatPoly, RootError, Sign,
};
pub use trig::{
    infinity_analysis, no_c3_witness, normalize, q_and_region, InfinityReport, NormalizeOutcome,
    QRegionReport, Region, TrigError, WitnessOutcome,
};
