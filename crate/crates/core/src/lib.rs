//! A numerical laboratory for diagonal multilinear operators between
//! finite sections of lp spaces: exact exponent arithmetic, Walsh-matrix
//! constructions, certified norm computations for the bounded / extendible /
//! integral / nuclear ideals, and the classification of admissible diagonal
//! sequences.

pub mod classify;
pub mod error;
pub mod exponents;
pub mod ideals;
pub mod matrices;
pub mod multilinear;
pub mod norms;
pub mod report;

pub use classify::{
    classify_forms, classify_operators, coincidence_tables, growth_scan, power_membership,
    Classification, Membership, ScanIdeal, SpaceTag, Strictness,
};
pub use error::{DmlError, Result};
pub use exponents::{holder_r, nuclear_t, Exponent, HolderResult, Rat};
pub use ideals::{
    bh_norm_certified, extendible_lower_diagnostic, extendible_upper_linfty,
    extendible_upper_sqrt, integral_lower_duality, nuclear_integral_exact,
    nuclear_upper_factorization, phi_extendibility_certificate, DiagonalIdealNorms,
    FactorizationCertificate,
};
pub use matrices::{apply_xi, fourier, hadamard, verify_walsh, xi_norm_bound, Field, WalshMatrix};
pub use multilinear::{
    bh_evaluate, bh_form, composition_identity_check, phi_form, xi_map, DenseForm,
    DiagonalOperator, LinearMap, SlotMap,
};
pub use norms::{
    alternating_ascent_norm, diagonal_ascent_norm, diagonal_norm_exact, lp_norm,
    operator_norm_ascent, operator_norm_to_linf_exact, partial_lu_norm, vertex_bruteforce_norm,
    vertex_bruteforce_operator_norm, weak_s_norm, AscentOptions, CertKind, NormCertificate,
    Witness, DEFAULT_SEED,
};
pub use report::{fmt17, render_chain, Report};
