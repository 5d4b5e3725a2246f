//! Autoepistemic theories without nested modalities.
//!
//! A belief state is a set of interpretations; the lattice of belief states is
//! ordered by reverse inclusion, so the least element is the set of all
//! interpretations. Interpretation `i` makes atom `k` true iff bit `k` of `i`
//! is set, and belief state `X` is the element whose index has bit `i` set for
//! every interpretation `i ∈ X`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::ExactOperator;
use crate::order::{mask_name, powerset_lattice_capped, Elem, FinitePoset, SetOrder, DEFAULT_MAX_ELEMENTS};
use crate::{Error, Result};

/// Formula syntax tree. In JSON each node is a single-key object, e.g.
/// `{"iff": [{"atom": "q"}, {"not": {"K": {"atom": "p"}}}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    #[serde(rename = "K")]
    K(Box<Formula>),
}

impl Formula {
    pub fn atom(a: &str) -> Self {
        Formula::Atom(a.to_string())
    }

    pub fn negate(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn k(f: Formula) -> Self {
        Formula::K(Box::new(f))
    }

    fn is_objective(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(f) => f.is_objective(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_objective),
            Formula::Iff(a, b) => a.is_objective() && b.is_objective(),
            Formula::K(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AelTheory {
    pub atoms: Vec<String>,
    pub sentences: Vec<Formula>,
}

/// A formula with atoms resolved and every modal subformula replaced by the
/// set of interpretations satisfying its (objective) argument.
enum Compiled {
    Atom(usize),
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
    /// Bitmask over interpretations.
    Known(u128),
}

impl Compiled {
    fn eval(&self, interp: usize, belief: usize) -> bool {
        match self {
            Compiled::Atom(k) => interp >> k & 1 == 1,
            Compiled::Not(f) => !f.eval(interp, belief),
            Compiled::And(fs) => fs.iter().all(|f| f.eval(interp, belief)),
            Compiled::Or(fs) => fs.iter().any(|f| f.eval(interp, belief)),
            Compiled::Iff(a, b) => a.eval(interp, belief) == b.eval(interp, belief),
            Compiled::Known(models) => belief as u128 & !models == 0,
        }
    }
}

impl AelTheory {
    pub fn from_json(text: &str) -> Result<Self> {
        let t: AelTheory = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        t.compile()?;
        Ok(t)
    }

    pub fn interpretation_count(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn interpretation_name(&self, i: usize) -> String {
        mask_name(&self.atoms, i)
    }

    fn compile(&self) -> Result<Vec<Compiled>> {
        if self.atoms.len() > 7 {
            // 2^7 interpretations is the widest bitmask we evaluate over; the
            // belief-state lattice hits the element cap long before that.
            return Err(Error::CapExceeded { what: "AEL atom set".into(), size: self.atoms.len(), cap: 7 });
        }
        let mut index = HashMap::new();
        for (i, a) in self.atoms.iter().enumerate() {
            if index.insert(a.as_str(), i).is_some() {
                return Err(Error::Parse(format!("duplicate atom {a}")));
            }
        }
        let n = self.interpretation_count();
        let compile = |f: &Formula| self.compile_formula(f, &index, n);
        self.sentences.iter().map(compile).collect()
    }

    fn compile_formula(&self, f: &Formula, index: &HashMap<&str, usize>, n: usize) -> Result<Compiled> {
        let rec = |g: &Formula| self.compile_formula(g, index, n);
        Ok(match f {
            Formula::Atom(a) => Compiled::Atom(
                *index.get(a.as_str()).ok_or_else(|| Error::Parse(format!("formula mentions undeclared atom {a}")))?,
            ),
            Formula::Not(g) => Compiled::Not(Box::new(rec(g)?)),
            Formula::And(gs) => Compiled::And(gs.iter().map(rec).collect::<Result<_>>()?),
            Formula::Or(gs) => Compiled::Or(gs.iter().map(rec).collect::<Result<_>>()?),
            Formula::Iff(a, b) => Compiled::Iff(Box::new(rec(a)?), Box::new(rec(b)?)),
            Formula::K(g) => {
                if !g.is_objective() {
                    return Err(Error::UnsupportedFormula("nested K operators are not supported".into()));
                }
                let inner = rec(g)?;
                let models = (0..n).filter(|&i| inner.eval(i, 0)).fold(0u128, |m, i| m | 1 << i);
                Compiled::Known(models)
            }
        })
    }
}

/// The belief-state lattice of a theory: all sets of interpretations,
/// ordered by `⊇`.
pub fn belief_lattice(t: &AelTheory, max_elements: usize) -> Result<Arc<FinitePoset>> {
    let interps: Vec<String> = (0..t.interpretation_count()).map(|i| t.interpretation_name(i)).collect();
    Ok(Arc::new(powerset_lattice_capped(&interps, SetOrder::Superset, usize::BITS as usize - 1, max_elements)?))
}

/// Maps a belief state to the interpretations satisfying every sentence when
/// each `K φ` is read as "φ holds in every interpretation of the state".
pub fn ael_operator(t: &AelTheory) -> Result<ExactOperator> {
    ael_operator_capped(t, DEFAULT_MAX_ELEMENTS)
}

pub fn ael_operator_capped(t: &AelTheory, max_elements: usize) -> Result<ExactOperator> {
    let sentences = t.compile()?;
    let lattice = belief_lattice(t, max_elements)?;
    let n = t.interpretation_count();
    ExactOperator::from_fn(lattice, |x| {
        let belief = x.index();
        let image = (0..n)
            .filter(|&i| sentences.iter().all(|s| s.eval(i, belief)))
            .fold(0usize, |m, i| m | 1 << i);
        Elem::new(image)
    })
}

/// Belief state containing exactly the interpretations accepted by `keep`.
pub fn belief_state(t: &AelTheory, keep: impl Fn(usize) -> bool) -> Elem {
    Elem::new((0..t.interpretation_count()).filter(|&i| keep(i)).fold(0, |m, i| m | 1 << i))
}
