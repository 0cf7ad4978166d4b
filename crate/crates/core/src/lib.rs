//! Exact arithmetic for discrete Laguerre-Sobolev orthogonal polynomials.
//!
//! Given an integer `alpha >= m` and an m x m rational mass matrix M, the
//! crate builds the polynomials R_1..R_m, the Casorati determinant Omega,
//! the orthogonal family q_n for the bilinear form
//! `<p, q> = integral p q x^{alpha-m} e^{-x} dx + jet(p) M jet(q)^T`,
//! and the differential operator of order 2(deg S + deg Omega + 1) for which
//! the q_n are eigenfunctions with eigenvalues P_S(n). Everything is computed
//! and verified in exact rational arithmetic; there is no floating point in
//! this crate.
//!
//! The alpha-weighted rank of M predicts deg Omega (and with it the operator
//! order) from span tests alone; see [`awr`].
//!
//! ```
//! use lagsob_core::prelude::*;
//!
//! let spec = reference_spec();
//! let result = construct(&spec, 6).unwrap();
//! let report = verify_left_orthogonality(&spec, &result, 6);
//! assert!(report.passed());
//! ```

pub mod awr;
pub mod calculus;
pub mod diffop;
pub mod error;
pub mod io;
pub mod laguerre;
pub mod matrix;
pub mod operator;
pub mod par;
pub mod poly;
pub mod rational;
pub mod reference;
pub mod report;
pub mod sobolev;

pub mod prelude {
    pub use crate::awr::{degree_matches_awr, degree_survey, weighted_rank, WeightedRank};
    pub use crate::calculus::{indefinite_sum, interpolate, nonneg_integer_root_free, RootScan};
    pub use crate::diffop::{doperator_image, poly_of_op, DiffOp, DOperatorSpec};
    pub use crate::error::{Error, Result};
    pub use crate::laguerre::{
        dalpha_op, laguerre_jet0, laguerre_poly, weight_moment, LaguerreFamily,
    };
    pub use crate::matrix::{span_member, PolyMatrix, RationalMatrix};
    pub use crate::operator::{
        assemble_dqs, build_mh, verify_all, verify_eigen, OperatorBundle,
    };
    pub use crate::poly::{rising_poly, Poly};
    pub use crate::rational::{
        factorial, format_rational, parse_rational, pochhammer, rat, rat_int, Rational,
    };
    pub use crate::reference::{reference_data, reference_spec};
    pub use crate::report::{CheckResult, Report, Status};
    pub use crate::sobolev::{
        betas_via_system, build_qn, build_r, casorati, construct, general_sobolev,
        sobolev_form, verify_left_orthogonality, CasoratiData, ConstructionResult,
        GeneralSobolevSpec, RSystem, SobolevSpec,
    };
}
