//! Transition coefficients and classification at the first critical Rayleigh number.

pub mod hopf;
pub mod real;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TransitionType {
    /// Continuous: an attractor bifurcates on R > R_c.
    TypeI,
    /// Jump: no nearby attractor past the threshold.
    TypeII,
    /// Mixed: capture and escape regions coexist.
    TypeIII,
}

impl std::fmt::Display for TransitionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TransitionType::TypeI => "Type-I",
            TransitionType::TypeII => "Type-II",
            TransitionType::TypeIII => "Type-III",
        })
    }
}
