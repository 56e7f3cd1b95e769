//! Deliberate corruption of one coefficient formula, used to prove that the
//! verification suite is not vacuous.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{rat, Field};

/// A coefficient formula that can be perturbed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    C1,
    D1,
    C2,
    D2,
    E1,
    F1,
    E2,
    F2,
    E3,
    F3,
    E4,
    F4,
    Theta,
    Xi,
    TtrrAlpha,
    TtrrBeta,
    TtrrGamma,
    HoloR,
    HoloS,
    HoloT,
}

impl Fault {
    pub const ALL: [Fault; 20] = [
        Fault::C1,
        Fault::D1,
        Fault::C2,
        Fault::D2,
        Fault::E1,
        Fault::F1,
        Fault::E2,
        Fault::F2,
        Fault::E3,
        Fault::F3,
        Fault::E4,
        Fault::F4,
        Fault::Theta,
        Fault::Xi,
        Fault::TtrrAlpha,
        Fault::TtrrBeta,
        Fault::TtrrGamma,
        Fault::HoloR,
        Fault::HoloS,
        Fault::HoloT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::C1 => "c1",
            Fault::D1 => "d1",
            Fault::C2 => "c2",
            Fault::D2 => "d2",
            Fault::E1 => "e1",
            Fault::F1 => "f1",
            Fault::E2 => "e2",
            Fault::F2 => "f2",
            Fault::E3 => "e3",
            Fault::F3 => "f3",
            Fault::E4 => "e4",
            Fault::F4 => "f4",
            Fault::Theta => "theta",
            Fault::Xi => "xi",
            Fault::TtrrAlpha => "ttrr-alpha",
            Fault::TtrrBeta => "ttrr-beta",
            Fault::TtrrGamma => "ttrr-gamma",
            Fault::HoloR => "holonomic-r",
            Fault::HoloS => "holonomic-s",
            Fault::HoloT => "holonomic-t",
        }
    }

    /// The additive perturbation applied to the target.
    pub fn epsilon<F: Field>() -> F {
        F::from_rational(&rat(1, 1000))
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fault> {
        let key = s.trim().to_ascii_lowercase();
        Fault::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| {
                let names: Vec<_> = Fault::ALL.iter().map(|t| t.name()).collect();
                Error::InvalidContext(format!(
                    "unknown fault target `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for t in Fault::ALL {
            assert_eq!(t.name().parse::<Fault>().unwrap(), t);
        }
        assert!("nope".parse::<Fault>().is_err());
    }
}
