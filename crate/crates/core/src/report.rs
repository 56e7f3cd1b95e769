//! Structured outcomes of residual checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qpoly::{BiPoly, Ell, Poly, RatFun};
use crate::scalar::ZRat;

/// Witnesses longer than this are cut, keeping the head.
const WITNESS_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for the record, never counted as a failure.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Info => "info",
        })
    }
}

/// One checked identity at one index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub n: usize,
    pub ell: Option<i8>,
    pub j: usize,
    pub params: String,
    pub status: Status,
    /// Set on checks that only make sense when both masses vanish.
    pub classical: bool,
    /// The nonzero residual (or the error) behind a failure.
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn new(identity: &str, n: usize, ell: Option<Ell>, j: usize, params: &str, status: Status) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            n,
            ell: ell.map(Ell::sign),
            j,
            params: params.to_string(),
            status,
            classical: false,
            witness: None,
            note: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        let mut w: String = w.into();
        if w.len() > WITNESS_LIMIT {
            let cut = (0..=WITNESS_LIMIT).rev().find(|&i| w.is_char_boundary(i)).unwrap_or(0);
            w.truncate(cut);
            w.push_str(" ...");
        }
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn classical(mut self) -> Self {
        self.classical = true;
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail
    }

    /// Deterministic ordering: identity, then n, then ℓ.
    pub fn sort_key(&self) -> (String, usize, i8) {
        (self.identity.clone(), self.n, self.ell.unwrap_or(0))
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<4} {:<28} n={:<2}", self.status, self.identity, self.n)?;
        match self.ell {
            Some(l) => write!(f, " ell={l:+}")?,
            None => write!(f, "       ")?,
        }
        if self.classical {
            write!(f, " [classical]")?;
        }
        if let Some(note) = &self.note {
            write!(f, " {note}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n     witness: {w}")?;
        }
        Ok(())
    }
}

/// Anything that is zero exactly when an identity holds.
pub trait Residual {
    fn vanishes(&self) -> bool;
    fn witness(&self) -> String;
}

impl Residual for Poly<ZRat> {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn witness(&self) -> String {
        self.to_string()
    }
}

impl Residual for RatFun<ZRat> {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    /// The numerator; the denominator carries no information about failure.
    fn witness(&self) -> String {
        self.num().to_string()
    }
}

impl Residual for BiPoly<ZRat> {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn witness(&self) -> String {
        let parts: Vec<String> = self
            .x_coeffs()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| format!("x^{k}: ({p})"))
            .collect();
        parts.join(" + ")
    }
}

impl Residual for bool {
    fn vanishes(&self) -> bool {
        *self
    }
    fn witness(&self) -> String {
        "check returned false".into()
    }
}

/// All records of one run, sorted.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub params: String,
    pub records: Vec<IdentityReport>,
}

impl SuiteReport {
    pub fn new(params: String, mut records: Vec<IdentityReport>) -> Self {
        records.sort_by_key(IdentityReport::sort_key);
        SuiteReport { params, records }
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.records.iter().filter(|r| r.is_failure())
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.records.extend(other.records);
        self.records.sort_by_key(IdentityReport::sort_key);
    }
}
