//! Translations of source formalisms into exact operators.

pub mod ael;
pub mod lp;
pub mod wadf;

pub use ael::{ael_operator, AelTheory, Formula};
pub use lp::{fitting_approximator, lp_operator, lp_oracle, LpOracle, NormalLogicProgram, Rule};
pub use wadf::{wadf_operator, Expr, Wadf, WadfSpace};

use serde_json::Value;

use crate::order::PosetSpec;
use crate::{Error, Result};

/// Any of the accepted JSON inputs, recognised by its keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Poset(PosetSpec),
    Program(NormalLogicProgram),
    Ael(AelTheory),
    Wadf(Wadf),
}

impl Source {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let has = |k: &str| value.get(k).is_some();
        if has("rules") {
            Ok(Source::Program(NormalLogicProgram::from_json(text)?))
        } else if has("sentences") {
            Ok(Source::Ael(AelTheory::from_json(text)?))
        } else if has("acceptance") {
            Ok(Source::Wadf(Wadf::from_json(text)?))
        } else if has("elements") {
            let spec: PosetSpec = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Source::Poset(spec))
        } else {
            Err(Error::Parse(
                "unrecognised input: expected a poset (elements), program (rules), AEL theory (sentences) or wADF (acceptance)"
                    .into(),
            ))
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Source::Poset(_) => "poset",
            Source::Program(_) => "program",
            Source::Ael(_) => "ael",
            Source::Wadf(_) => "wadf",
        }
    }
}
