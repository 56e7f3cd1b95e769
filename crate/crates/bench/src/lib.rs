//! Shared fixtures for the benchmarks.

use qsobolev::QContext;

/// `(q, a, λ, μ) = (1/2, -1, 1, 1)` with derivative order `j`.
pub fn default_context(j: usize) -> QContext {
    QContext::parse("1/2", "-1", "1", "1", j).expect("valid parameters")
}

/// `(q, a, λ, μ) = (1/3, -2, 1/2, 2)` with derivative order `j`.
pub fn second_context(j: usize) -> QContext {
    QContext::parse("1/3", "-2", "1/2", "2", j).expect("valid parameters")
}
