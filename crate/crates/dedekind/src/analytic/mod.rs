//! Euler products, series algebra and the sum-to-product identities behind
//! the resonated moment asymptotics.

mod afunc;
mod eta;
mod identities;
mod laurent;
mod suite;

pub use afunc::{a_func, AValue};
pub use eta::{
    decompose_l, eta_case, eta_closed_form_1, eta_jet, eta_p, eta_p_complex, eta_p_deriv,
    eta_product, eta_product_complex, gp_ratio, gp_ratio_at, EtaCase, EtaIndex, EtaJet,
    EtaProduct, EulerProductSpec,
};
pub use identities::{
    h_abs_sum, multiplicative_identity_check, predicted_product, rankin_tail_center,
    rankin_tail_right, triple_weight, ProductKind, RankinTail,
};
pub use laurent::{
    polygamma_quarter, residue_integrand, residue_lemma, residue_lemma_with, zeta_laurent,
    LaurentSeries, ResidueFactors, ResidueMode,
};
pub use suite::{
    admissible_triples, eta_closed_form_deviations, identity_suite, multiplicative_deviations,
    residue_contour_deviation, residue_lower_order, small_supports, Check, SuiteReport,
    RESIDUE_CONFIGS,
};
