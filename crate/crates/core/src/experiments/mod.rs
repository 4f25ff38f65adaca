//! One runner per statement. Unconditional statements are checked and a
//! violation lands in [`ClaimOutput::failures`]; statements that rest on
//! hypothesis `(m)` only produce scaled reports and log-log fits.

mod conditional;
mod fit;
mod grid;
mod remarks;
mod report;
mod theorem2;
mod zeta;

pub use conditional::{
    run_claim_en1, run_claim_m, run_claim_m_with, run_lemma_a, run_lemma_b_residual, run_lemma_c,
    run_lemma_d, upper_residual, UpperResidual, LEMMA_B_CONSTANT,
};
pub use fit::{fit_exponent, RegressionFit, MIN_FIT_POINTS};
pub use grid::{parse_count, GridSpec, DEFAULT_DELTA, DEFAULT_EPSILON};
pub use remarks::{
    remark1_terms, remark2_identity, run_remark1_sum, run_remark2, Remark1Terms, REMARK1_CONSTANT,
};
pub use report::{
    fits_to_json, reports_to_json, to_csv, to_plot_data, CheckFailure, ClaimId, ClaimOutput,
    ClaimReport, OutputHeader, Scale, Tier, CSV_HEADER,
};
pub use theorem2::{
    build_h, check_decomposition, check_hypothesis, decompositions, pair_integral, run_h_max,
    run_mobius_variant, run_theorem2, ASpec, Decomposition, HMax, BOUNDEDNESS_FACTOR,
    DECOMPOSITION_LIMIT, HYPOTHESIS_GROWTH_FACTOR, HYPOTHESIS_RATIO_CAP,
};
pub use zeta::{run_zeta_check, zeta_real, ZetaCheck, MIN_ZETA_LIMIT};
