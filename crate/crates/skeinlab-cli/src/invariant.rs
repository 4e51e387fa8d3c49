use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use skeinlab::bt_algebra::{theta_trace, Theta_trace};
use skeinlab::classical::{homflypt, jones};
use skeinlab::diagram::{BraidWord, DiagramError, LinkDiagram};
use skeinlab::poly::LaurentFraction;
use skeinlab::theta::{theta_partition, theta_skein_with, SplitNormalization, Theta_partition, Theta_skein_with};
use skeinlab::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    #[value(name = "V")]
    V,
    #[value(name = "P")]
    P,
    #[value(name = "theta")]
    Theta,
    #[value(name = "Theta")]
    BigTheta,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::V => "V",
            Invariant::P => "P",
            Invariant::Theta => "theta",
            Invariant::BigTheta => "Theta",
        })
    }
}

impl FromStr for Invariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "V" => Ok(Invariant::V),
            "P" => Ok(Invariant::P),
            "theta" => Ok(Invariant::Theta),
            "Theta" => Ok(Invariant::BigTheta),
            other => Err(format!("unknown invariant {other:?} (expected V, P, theta or Theta)")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Route {
    #[default]
    Partition,
    Skein,
    Trace,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Partition => "partition",
            Route::Skein => "skein",
            Route::Trace => "trace",
        })
    }
}

/// The trace route needs the braid word itself; the others use the diagram. V and P
/// ignore the route.
pub fn compute(
    d: Option<&LinkDiagram>,
    braid: Option<&BraidWord>,
    inv: Invariant,
    route: Route,
    norm: SplitNormalization,
) -> Result<LaurentFraction> {
    if route != Route::Trace {
        // tied braids have no diagram; only the trace sees their ties
        let d = d.ok_or(Error::Diagram(DiagramError::TieLettersPresent))?;
        return match (inv, route) {
            (Invariant::V, _) => jones(d),
            (Invariant::P, _) => homflypt(d),
            (Invariant::Theta, Route::Skein) => theta_skein_with(d, norm),
            (Invariant::Theta, _) => theta_partition(d),
            (Invariant::BigTheta, Route::Skein) => Theta_skein_with(d, norm),
            (Invariant::BigTheta, _) => Theta_partition(d),
        };
    }
    match (inv, route) {
        (Invariant::V | Invariant::P, _) => {
            compute(d, braid, inv, Route::Partition, norm)
        }
        _ => {
            let w = braid.ok_or_else(|| {
                Error::MissingData("the trace route needs a braid word input".into())
            })?;
            if inv == Invariant::Theta {
                theta_trace(w, w.has_ties())
            } else {
                Theta_trace(w, w.has_ties())
            }
        }
    }
}
