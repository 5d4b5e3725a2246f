//! Weighted abstract dialectical frameworks with acceptance conditions given
//! as expression trees over the values of parent arguments.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::ExactOperator;
use crate::order::{product_components, product_index, product_poset_capped, Elem, FinitePoset, PosetSpec};
use crate::order::DEFAULT_MAX_ELEMENTS;
use crate::{Error, Result};

/// Acceptance expression. JSON nodes: `{"const": v}`, `{"parent": a}`,
/// `{"glb": [..]}`, `{"lub": [..]}` and
/// `{"table": {"parents": [..], "rows": [{"when": [..], "then": v}, ..]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expr {
    Const(String),
    Parent(String),
    Glb(Vec<Expr>),
    Lub(Vec<Expr>),
    Table(Table),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub parents: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub when: Vec<String>,
    pub then: String,
}

impl Expr {
    /// Built only from constants, parents and glbs.
    pub fn is_glb_only(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Parent(_) => true,
            Expr::Glb(es) => es.iter().all(Expr::is_glb_only),
            Expr::Lub(_) | Expr::Table(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wadf {
    pub arguments: Vec<String>,
    pub values: PosetSpec,
    pub acceptance: BTreeMap<String, Expr>,
}

/// Expression with names resolved to argument positions and value elements.
enum Node {
    Const(Elem),
    Parent(usize),
    Glb(Vec<Node>),
    Lub(Vec<Node>),
    Table { parents: Vec<usize>, sizes: Vec<usize>, rows: Vec<Elem> },
}

impl Node {
    fn eval(&self, values: &FinitePoset, state: &[usize]) -> std::result::Result<Elem, String> {
        match self {
            Node::Const(v) => Ok(*v),
            Node::Parent(i) => Ok(Elem::new(state[*i])),
            Node::Glb(es) | Node::Lub(es) => {
                let mut set = values.empty_set();
                for e in es {
                    set.insert(e.eval(values, state)?);
                }
                let (op, result) =
                    if matches!(self, Node::Glb(_)) { ("glb", values.glb(&set)) } else { ("lub", values.lub(&set)) };
                result.ok_or_else(|| format!("{op} of {} is undefined", values.format_set(&set)))
            }
            Node::Table { parents, sizes, rows } => {
                let key: Vec<usize> = parents.iter().map(|&p| state[p]).collect();
                Ok(rows[product_index(sizes, &key)])
            }
        }
    }
}

impl Wadf {
    pub fn from_json(text: &str) -> Result<Self> {
        let w: Wadf = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        w.compile(&FinitePoset::from_spec(&w.values)?)?;
        Ok(w)
    }

    pub fn value_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_spec(&self.values)
    }

    /// True when every acceptance condition is built from constants, parents
    /// and glbs, which makes the operator monotone.
    pub fn is_glb_only(&self) -> bool {
        self.acceptance.values().all(Expr::is_glb_only)
    }

    fn compile(&self, values: &FinitePoset) -> Result<Vec<Node>> {
        let mut index = HashMap::new();
        for (i, a) in self.arguments.iter().enumerate() {
            if index.insert(a.as_str(), i).is_some() {
                return Err(Error::Parse(format!("duplicate argument {a}")));
            }
        }
        if let Some(extra) = self.acceptance.keys().find(|k| !index.contains_key(k.as_str())) {
            return Err(Error::Parse(format!("acceptance condition for undeclared argument {extra}")));
        }
        self.arguments
            .iter()
            .map(|a| {
                let expr = self
                    .acceptance
                    .get(a)
                    .ok_or_else(|| Error::Parse(format!("argument {a} has no acceptance condition")))?;
                compile_expr(expr, &index, values).map_err(|e| match e {
                    Error::Parse(msg) => Error::Parse(format!("acceptance of {a}: {msg}")),
                    other => other,
                })
            })
            .collect()
    }
}

fn compile_expr(e: &Expr, index: &HashMap<&str, usize>, values: &FinitePoset) -> Result<Node> {
    let arg = |a: &str| index.get(a).copied().ok_or_else(|| Error::Parse(format!("unknown parent {a}")));
    let value = |v: &str| values.elem(v).map_err(|_| Error::Parse(format!("unknown value {v}")));
    Ok(match e {
        Expr::Const(v) => Node::Const(value(v)?),
        Expr::Parent(a) => Node::Parent(arg(a)?),
        Expr::Glb(es) => Node::Glb(es.iter().map(|e| compile_expr(e, index, values)).collect::<Result<_>>()?),
        Expr::Lub(es) => Node::Lub(es.iter().map(|e| compile_expr(e, index, values)).collect::<Result<_>>()?),
        Expr::Table(t) => {
            let parents: Vec<usize> = t.parents.iter().map(|p| arg(p)).collect::<Result<_>>()?;
            let sizes = vec![values.len(); parents.len()];
            let total = values.len().checked_pow(parents.len() as u32).unwrap_or(usize::MAX);
            if total > DEFAULT_MAX_ELEMENTS {
                return Err(Error::CapExceeded { what: "acceptance table".into(), size: total, cap: DEFAULT_MAX_ELEMENTS });
            }
            let mut rows: Vec<Option<Elem>> = vec![None; total];
            for row in &t.rows {
                if row.when.len() != parents.len() {
                    return Err(Error::Parse(format!("table row {:?} does not match parents {:?}", row.when, t.parents)));
                }
                let key: Vec<usize> = row.when.iter().map(|v| value(v).map(Elem::index)).collect::<Result<_>>()?;
                let slot = &mut rows[product_index(&sizes, &key)];
                if slot.is_some() {
                    return Err(Error::Parse(format!("table row {:?} appears twice", row.when)));
                }
                *slot = Some(value(&row.then)?);
            }
            if let Some(gap) = rows.iter().position(Option::is_none) {
                let missing: Vec<&str> =
                    product_components(&sizes, gap).into_iter().map(|c| values.name(Elem::new(c))).collect();
                return Err(Error::Parse(format!("table has no row for {missing:?}")));
            }
            Node::Table { parents, sizes, rows: rows.into_iter().flatten().collect() }
        }
    })
}

/// The product space of a framework and the decoding of its elements.
#[derive(Debug)]
pub struct WadfSpace {
    pub arguments: Vec<String>,
    pub values: Arc<FinitePoset>,
    pub states: Arc<FinitePoset>,
}

impl WadfSpace {
    pub fn new(w: &Wadf, max_elements: usize) -> Result<Self> {
        let values = Arc::new(w.value_poset()?);
        let factors = vec![values.as_ref(); w.arguments.len()];
        let states = Arc::new(product_poset_capped(&factors, max_elements)?);
        Ok(WadfSpace { arguments: w.arguments.clone(), values, states })
    }

    fn sizes(&self) -> Vec<usize> {
        vec![self.values.len(); self.arguments.len()]
    }

    /// The value an exact state assigns to `argument`.
    pub fn value_of(&self, state: Elem, argument: &str) -> Result<&str> {
        let i = self
            .arguments
            .iter()
            .position(|a| a == argument)
            .ok_or_else(|| Error::ElementNotFound(argument.to_string()))?;
        Ok(self.values.name(Elem::new(product_components(&self.sizes(), state.index())[i])))
    }

    pub fn state(&self, assignment: &[&str]) -> Result<Elem> {
        let comps: Vec<usize> = assignment.iter().map(|v| self.values.elem(v).map(Elem::index)).collect::<Result<_>>()?;
        if comps.len() != self.arguments.len() {
            return Err(Error::Parse(format!("expected {} values", self.arguments.len())));
        }
        Ok(Elem::new(product_index(&self.sizes(), &comps)))
    }
}

/// The operator assigning each argument the value of its acceptance condition
/// under the current state. Evaluated eagerly on every state, so an undefined
/// lub anywhere is reported at construction.
pub fn wadf_operator(w: &Wadf) -> Result<(WadfSpace, ExactOperator)> {
    wadf_operator_capped(w, DEFAULT_MAX_ELEMENTS)
}

pub fn wadf_operator_capped(w: &Wadf, max_elements: usize) -> Result<(WadfSpace, ExactOperator)> {
    let space = WadfSpace::new(w, max_elements)?;
    let nodes = w.compile(&space.values)?;
    let sizes = space.sizes();
    let mut table = Vec::with_capacity(space.states.len());
    for x in space.states.elements() {
        let state = product_components(&sizes, x.index());
        let mut out = Vec::with_capacity(nodes.len());
        for (node, arg) in nodes.iter().zip(&w.arguments) {
            let v = node.eval(&space.values, &state).map_err(|msg| {
                Error::Evaluation(format!("acceptance of {arg} at {}: {msg}", space.states.name(x)))
            })?;
            out.push(v.index());
        }
        table.push(Elem::new(product_index(&sizes, &out)));
    }
    let op = ExactOperator::new(space.states.clone(), table)?;
    Ok((space, op))
}

#[cfg(test)]
mod tests {
    use super::*;

    const REVIEW: &str = r#"{
        "arguments": ["significance", "methodology", "status"],
        "values": {
            "elements": ["indifferent", "tendency-accept", "tendency-reject", "accept", "borderline", "reject"],
            "hasse": [["indifferent", "tendency-accept"], ["indifferent", "tendency-reject"],
                      ["tendency-accept", "accept"], ["tendency-accept", "borderline"],
                      ["tendency-reject", "borderline"], ["tendency-reject", "reject"]]
        },
        "acceptance": {
            "significance": {"const": "accept"},
            "methodology": {"const": "borderline"},
            "status": {"glb": [{"parent": "significance"}, {"parent": "methodology"}]}
        }
    }"#;

    #[test]
    fn review_status_is_tendency_accept() {
        let w = Wadf::from_json(REVIEW).unwrap();
        let (space, op) = wadf_operator(&w).unwrap();
        assert_eq!(space.states.len(), 216);
        for x in space.states.elements().filter(|&x| space.value_of(x, "significance").unwrap() == "accept") {
            let y = op.apply(x);
            if space.value_of(x, "methodology").unwrap() == "borderline" {
                assert_eq!(space.value_of(y, "status").unwrap(), "tendency-accept");
            }
        }
        let fixed = op.fixpoints();
        assert_eq!(fixed.len(), 1);
        let fp = fixed.iter().next().unwrap();
        assert_eq!(space.states.name(fp), "(accept,borderline,tendency-accept)");
        assert!(w.is_glb_only());
        assert!(op.monotonicity_witness().is_none());
    }

    #[test]
    fn glb_with_the_least_value() {
        let w = Wadf::from_json(REVIEW).unwrap();
        let (space, op) = wadf_operator(&w).unwrap();
        let x = space.state(&["indifferent", "indifferent", "reject"]).unwrap();
        assert_eq!(space.value_of(op.apply(x), "status").unwrap(), "indifferent");
    }

    fn with_status(expr: &str) -> String {
        REVIEW.replace(r#"{"glb": [{"parent": "significance"}, {"parent": "methodology"}]}"#, expr)
    }

    #[test]
    fn undefined_lub_names_the_argument() {
        let w = Wadf::from_json(&with_status(r#"{"lub": [{"parent": "significance"}, {"const": "reject"}]}"#)).unwrap();
        match wadf_operator(&w) {
            Err(Error::Evaluation(msg)) => assert!(msg.contains("acceptance of status"), "{msg}"),
            other => panic!("expected evaluation error, got {other:?}"),
        }
    }

    #[test]
    fn tables_must_be_total() {
        let partial = with_status(r#"{"table": {"parents": ["significance"], "rows": [{"when": ["accept"], "then": "accept"}]}}"#);
        let err = Wadf::from_json(&partial).unwrap_err();
        assert!(err.to_string().contains("no row"), "{err}");
    }

    #[test]
    fn total_table_copies_its_parent() {
        let names = ["indifferent", "tendency-accept", "tendency-reject", "accept", "borderline", "reject"];
        let rows: Vec<String> = names.iter().map(|v| format!(r#"{{"when": ["{v}"], "then": "{v}"}}"#)).collect();
        let table = format!(r#"{{"table": {{"parents": ["methodology"], "rows": [{}]}}}}"#, rows.join(","));
        let w = Wadf::from_json(&with_status(&table)).unwrap();
        assert!(!w.is_glb_only());
        let (space, op) = wadf_operator(&w).unwrap();
        let x = space.state(&["reject", "tendency-reject", "accept"]).unwrap();
        assert_eq!(space.value_of(op.apply(x), "status").unwrap(), "tendency-reject");
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(Wadf::from_json(&with_status(r#"{"parent": "novelty"}"#)).is_err());
        assert!(Wadf::from_json(&with_status(r#"{"const": "great"}"#)).is_err());
        assert!(Wadf::from_json(&REVIEW.replace(r#""status": {"#, r#""novelty": {"#)).is_err());
    }
}
