//! Normal logic programs: the immediate-consequence operator on interpretations,
//! the Fitting approximator, and a brute-force reference solver.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::{Approximator, ExactOperator};
use crate::framework::ApproximationFramework;
use crate::interval::IntervalFramework;
use crate::order::{mask_name, powerset_lattice_capped, Elem, SetOrder, DEFAULT_MAX_ELEMENTS};
use crate::{Error, Result};

/// The reference solver enumerates interpretations, so it is kept small.
pub const ORACLE_MAX_ATOMS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub head: String,
    #[serde(default)]
    pub pos: Vec<String>,
    #[serde(default)]
    pub neg: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalLogicProgram {
    pub atoms: Vec<String>,
    pub rules: Vec<Rule>,
}

/// A rule over atom bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MaskRule {
    pub head: usize,
    pub pos: usize,
    pub neg: usize,
}

impl NormalLogicProgram {
    pub fn from_json(text: &str) -> Result<Self> {
        let p: NormalLogicProgram = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        p.compile()?;
        Ok(p)
    }

    /// Builds a program over atoms `a0, a1, …` from bitmask rules.
    pub fn from_masks(atoms: &[&str], rules: &[MaskRule]) -> Self {
        let pick = |mask: usize| -> Vec<String> {
            atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a.to_string()).collect()
        };
        NormalLogicProgram {
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
            rules: rules
                .iter()
                .map(|r| Rule { head: atoms[r.head].to_string(), pos: pick(r.pos), neg: pick(r.neg) })
                .collect(),
        }
    }

    /// Rules as bitmasks over the atom list; rejects unknown or duplicate atoms.
    pub fn compile(&self) -> Result<Vec<MaskRule>> {
        if self.atoms.len() >= usize::BITS as usize {
            return Err(Error::CapExceeded { what: "atom set".into(), size: self.atoms.len(), cap: 63 });
        }
        let mut index = HashMap::new();
        for (i, a) in self.atoms.iter().enumerate() {
            if index.insert(a.as_str(), i).is_some() {
                return Err(Error::Parse(format!("duplicate atom {a}")));
            }
        }
        let lookup = |a: &str| {
            index.get(a).copied().ok_or_else(|| Error::Parse(format!("rule mentions undeclared atom {a}")))
        };
        let mask = |atoms: &[String]| atoms.iter().try_fold(0usize, |m, a| Ok::<_, Error>(m | 1 << lookup(a)?));
        self.rules
            .iter()
            .map(|r| Ok(MaskRule { head: lookup(&r.head)?, pos: mask(&r.pos)?, neg: mask(&r.neg)? }))
            .collect()
    }

    pub fn interpretation_name(&self, mask: usize) -> String {
        mask_name(&self.atoms, mask)
    }
}

impl fmt::Display for NormalLogicProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            let body: Vec<String> =
                r.pos.iter().cloned().chain(r.neg.iter().map(|a| format!("not {a}"))).collect();
            if body.is_empty() {
                writeln!(f, "{}.", r.head)?;
            } else {
                writeln!(f, "{} :- {}.", r.head, body.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Heads of rules whose positive body holds in `pos_in` and whose negative
/// body is disjoint from `neg_in`.
pub fn derive(rules: &[MaskRule], pos_in: usize, neg_in: usize) -> usize {
    rules
        .iter()
        .filter(|r| r.pos & !pos_in == 0 && r.neg & neg_in == 0)
        .fold(0, |acc, r| acc | 1 << r.head)
}

/// The lattice of interpretations ordered by inclusion; element `i` is the
/// interpretation with bitmask `i`.
pub fn interpretation_lattice(p: &NormalLogicProgram, max_elements: usize) -> Result<Arc<crate::order::FinitePoset>> {
    Ok(Arc::new(powerset_lattice_capped(&p.atoms, SetOrder::Subset, usize::BITS as usize - 1, max_elements)?))
}

/// The immediate-consequence operator `T_P`.
pub fn lp_operator(p: &NormalLogicProgram) -> Result<ExactOperator> {
    lp_operator_capped(p, DEFAULT_MAX_ELEMENTS)
}

pub fn lp_operator_capped(p: &NormalLogicProgram, max_elements: usize) -> Result<ExactOperator> {
    let rules = p.compile()?;
    let lattice = interpretation_lattice(p, max_elements)?;
    ExactOperator::from_fn(lattice, |x| Elem::new(derive(&rules, x.index(), x.index())))
}

/// The Fitting approximator: the lower bound derives from what is certainly
/// true and not possibly true, the upper bound from what is possibly true and
/// not certainly true.
pub fn fitting_approximator<'a>(
    p: &NormalLogicProgram,
    fw: &'a IntervalFramework,
) -> Result<Approximator<'a, IntervalFramework>> {
    let rules = p.compile()?;
    if fw.exact().len() != 1 << p.atoms.len() {
        return Err(Error::Precondition("interval framework is not over this program's interpretations".into()));
    }
    Ok(Approximator::new(fw, "fitting", move |x| {
        let (low, high) = (x.alb().index(), x.aub().index());
        let l = derive(&rules, low, high);
        let u = derive(&rules, high, low);
        fw.interval(Elem::new(l), Elem::new(u)).expect("Fitting preserves consistency")
    }))
}

/// Reference semantics of a program, computed directly on bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOracle {
    /// Interpretations equal to the least model of their reduct.
    pub answer_sets: Vec<usize>,
    /// Interpretations closed under one application of the rules.
    pub supported_models: Vec<usize>,
    /// Atoms true in the well-founded model.
    pub wf_lower: usize,
    /// Atoms not false in the well-founded model.
    pub wf_upper: usize,
}

/// Least model of the positive program obtained by deleting every rule whose
/// negative body meets `context` and then every negative literal.
fn reduct_least_model(rules: &[MaskRule], context: usize) -> usize {
    let mut model = 0usize;
    loop {
        let next = rules
            .iter()
            .filter(|r| r.neg & context == 0 && r.pos & !model == 0)
            .fold(model, |acc, r| acc | 1 << r.head);
        if next == model {
            return model;
        }
        model = next;
    }
}

pub fn lp_oracle(p: &NormalLogicProgram) -> Result<LpOracle> {
    let n = p.atoms.len();
    if n > ORACLE_MAX_ATOMS {
        return Err(Error::CapExceeded { what: "oracle atom set".into(), size: n, cap: ORACLE_MAX_ATOMS });
    }
    let rules = p.compile()?;
    let all = 0..1usize << n;
    let answer_sets = all.clone().filter(|&i| reduct_least_model(&rules, i) == i).collect();
    let supported_models = all.filter(|&i| derive(&rules, i, i) == i).collect();

    // Alternating fixpoint: the true atoms are the least fixpoint of the
    // monotone Γ², the non-false atoms are Γ of that.
    let mut lower = 0usize;
    loop {
        let next = reduct_least_model(&rules, reduct_least_model(&rules, lower));
        if next == lower {
            break;
        }
        lower = next;
    }
    let upper = reduct_least_model(&rules, lower);
    Ok(LpOracle { answer_sets, supported_models, wf_lower: lower, wf_upper: upper })
}
