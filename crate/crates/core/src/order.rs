//! Finite partially ordered sets.
//!
//! Elements are opaque string identifiers. The order relation is stored
//! reflexively and transitively closed as one up-set and one down-set bitset
//! per element, so every primitive below reduces to bitset operations.
//!
//! Only finite posets are represented. In that setting every subset is
//! closed (all chains are finite and contain their bounds), and a poset is
//! chain-complete exactly when it has a least element.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default cap on the number of elements of any constructed poset.
pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

/// Default cap on the number of atoms of a powerset lattice.
pub const DEFAULT_MAX_ATOMS: usize = 16;

/// Index of an element inside its owning [`FinitePoset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub fn new(index: usize) -> Self {
        Elem(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of elements of one poset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemSet(FixedBitSet);

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElemSet(bits)
    }

    pub fn singleton(universe: usize, e: Elem) -> Self {
        let mut s = Self::empty(universe);
        s.insert(e);
        s
    }

    pub fn from_elems(universe: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(universe);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.0.contains(e.index())
    }

    pub fn insert(&mut self, e: Elem) {
        self.0.insert(e.index());
    }

    pub fn remove(&mut self, e: Elem) {
        self.0.remove(e.index());
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.ones().map(Elem::new)
    }

    /// The single member, if the set has exactly one.
    pub fn as_singleton(&self) -> Option<Elem> {
        let mut it = self.iter();
        match (it.next(), it.next()) {
            (Some(e), None) => Some(e),
            _ => None,
        }
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &ElemSet) {
        self.0.difference_with(&other.0);
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

/// Whether a powerset is ordered by inclusion or by reverse inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetOrder {
    Subset,
    Superset,
}

/// Flags describing which completeness properties a poset has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PosetClassification {
    pub has_least: bool,
    pub is_cpo: bool,
    pub is_bounded_complete: bool,
    pub is_complete_lattice: bool,
}

impl fmt::Display for PosetClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_complete_lattice {
            "complete lattice"
        } else if self.is_bounded_complete {
            "bounded-complete cpo"
        } else if self.is_cpo {
            "cpo (not bounded-complete)"
        } else {
            "poset without least element"
        };
        f.write_str(kind)
    }
}

/// Poset input format: `{"elements": [...], "hasse": [["x", "y"], ...]}` where
/// each pair means `x` is covered by `y`. Any generating relation is accepted;
/// the reflexive-transitive closure is taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub hasse: Vec<(String, String)>,
}

/// An explicit finite poset.
#[derive(Clone)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset").field("elements", &self.names).finish()
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    /// Builds a poset from a generating relation, closing it reflexively and
    /// transitively. Cycles are rejected.
    pub fn from_hasse<S: AsRef<str>>(elements: &[S], hasse: &[(S, S)]) -> Result<Self> {
        Self::from_hasse_capped(elements, hasse, DEFAULT_MAX_ELEMENTS)
    }

    pub fn from_hasse_capped<S: AsRef<str>>(
        elements: &[S],
        hasse: &[(S, S)],
        max_elements: usize,
    ) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = Self::index_names(&names, max_elements)?;
        let n = names.len();
        let mut covers: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (x, y) in hasse {
            let xi = lookup(&index, x.as_ref())?;
            let yi = lookup(&index, y.as_ref())?;
            covers[xi.index()].push(yi.index());
        }
        let mut up = Vec::with_capacity(n);
        for start in 0..n {
            let mut seen = FixedBitSet::with_capacity(n);
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(x) = stack.pop() {
                for &y in &covers[x] {
                    if !seen.put(y) {
                        stack.push(y);
                    }
                }
            }
            up.push(ElemSet(seen));
        }
        Self::from_up_sets(names, index, up)
    }

    pub fn from_spec(spec: &PosetSpec) -> Result<Self> {
        Self::from_hasse(&spec.elements, &spec.hasse)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: PosetSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    /// Builds a poset from a complete order predicate. The predicate must
    /// already be a partial order; this is verified.
    pub fn from_leq_fn(
        names: Vec<String>,
        max_elements: usize,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let index = Self::index_names(&names, max_elements)?;
        let n = names.len();
        let mut up = Vec::with_capacity(n);
        for x in 0..n {
            let mut bits = FixedBitSet::with_capacity(n);
            for y in 0..n {
                if leq(x, y) {
                    bits.insert(y);
                }
            }
            up.push(ElemSet(bits));
        }
        let poset = Self::from_up_sets(names, index, up)?;
        poset.verify_transitive()?;
        Ok(poset)
    }

    fn index_names(names: &[String], max_elements: usize) -> Result<HashMap<String, Elem>> {
        if names.len() > max_elements {
            return Err(Error::CapExceeded {
                what: "poset".into(),
                size: names.len(),
                cap: max_elements,
            });
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), Elem::new(i)).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate identifier {name:?}")));
            }
        }
        Ok(index)
    }

    fn from_up_sets(names: Vec<String>, index: HashMap<String, Elem>, up: Vec<ElemSet>) -> Result<Self> {
        let n = names.len();
        let mut down = vec![ElemSet::empty(n); n];
        for (x, ups) in up.iter().enumerate() {
            if !ups.contains(Elem::new(x)) {
                return Err(Error::InvalidPoset(format!("{} is not related to itself", names[x])));
            }
            for y in ups.iter() {
                down[y.index()].insert(Elem::new(x));
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y.index() != x && up[y.index()].contains(Elem::new(x)) {
                    return Err(Error::InvalidPoset(format!(
                        "cycle between {} and {}",
                        names[x],
                        names[y.index()]
                    )));
                }
            }
        }
        Ok(FinitePoset { names, index, up, down })
    }

    fn verify_transitive(&self) -> Result<()> {
        for x in 0..self.len() {
            for y in self.up[x].iter() {
                if !self.up[y.index()].is_subset(&self.up[x]) {
                    return Err(Error::InvalidPoset(format!(
                        "relation is not transitive through {} <= {}",
                        self.names[x],
                        self.names[y.index()]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.len()).map(Elem::new)
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem(&self, name: &str) -> Result<Elem> {
        lookup(&self.index, name)
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet> {
        let mut s = self.empty_set();
        for name in names {
            s.insert(self.elem(name.as_ref())?);
        }
        Ok(s)
    }

    pub fn empty_set(&self) -> ElemSet {
        ElemSet::empty(self.len())
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x.index()].contains(y)
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn leq_named(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.leq(self.elem(x)?, self.elem(y)?))
    }

    pub fn comparable(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `↑x`
    pub fn up_set(&self, x: Elem) -> &ElemSet {
        &self.up[x.index()]
    }

    /// `↓x`
    pub fn down_set(&self, x: Elem) -> &ElemSet {
        &self.down[x.index()]
    }

    pub fn upper_bounds(&self, s: &ElemSet) -> ElemSet {
        let mut ub = self.all();
        for x in s.iter() {
            ub.intersect_with(&self.up[x.index()]);
        }
        ub
    }

    pub fn lower_bounds(&self, s: &ElemSet) -> ElemSet {
        let mut lb = self.all();
        for x in s.iter() {
            lb.intersect_with(&self.down[x.index()]);
        }
        lb
    }

    /// The least element of `s`, if it has one.
    pub fn minimum_of(&self, s: &ElemSet) -> Option<Elem> {
        s.iter().find(|&x| s.is_subset(&self.up[x.index()]))
    }

    /// The greatest element of `s`, if it has one.
    pub fn maximum_of(&self, s: &ElemSet) -> Option<Elem> {
        s.iter().find(|&x| s.is_subset(&self.down[x.index()]))
    }

    /// Least upper bound; `lub(∅)` is the least element.
    pub fn lub(&self, s: &ElemSet) -> Option<Elem> {
        self.minimum_of(&self.upper_bounds(s))
    }

    /// Greatest lower bound; `glb(∅)` is the greatest element.
    pub fn glb(&self, s: &ElemSet) -> Option<Elem> {
        self.maximum_of(&self.lower_bounds(s))
    }

    pub fn lub2(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.minimum_of(&self.up[x.index()].intersection(&self.up[y.index()]))
    }

    pub fn glb2(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.maximum_of(&self.down[x.index()].intersection(&self.down[y.index()]))
    }

    pub fn least(&self) -> Option<Elem> {
        self.minimum_of(&self.all())
    }

    pub fn greatest(&self) -> Option<Elem> {
        self.maximum_of(&self.all())
    }

    /// Elements of `s` with nothing strictly below them in `s`.
    pub fn min_set(&self, s: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for x in s.iter() {
            let below = self.down[x.index()].intersection(s);
            if below.len() == 1 {
                out.insert(x);
            }
        }
        out
    }

    /// Elements of `s` with nothing strictly above them in `s`.
    pub fn max_set(&self, s: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for x in s.iter() {
            let above = self.up[x.index()].intersection(s);
            if above.len() == 1 {
                out.insert(x);
            }
        }
        out
    }

    pub fn is_chain(&self, s: &ElemSet) -> bool {
        s.iter().all(|x| {
            let comparable = self.up[x.index()].union(&self.down[x.index()]);
            s.is_subset(&comparable)
        })
    }

    pub fn is_antichain(&self, s: &ElemSet) -> bool {
        s.iter().all(|x| {
            let mut comparable = self.up[x.index()].union(&self.down[x.index()]);
            comparable.intersect_with(s);
            comparable.len() == 1
        })
    }

    /// `x ≤ y ≤ z` with `x, z ∈ s` implies `y ∈ s`.
    pub fn is_convex(&self, s: &ElemSet) -> bool {
        let between = self.upper_closure(s).intersection(&self.lower_closure(s));
        between.is_subset(s)
    }

    /// `↓s`
    pub fn lower_closure(&self, s: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for x in s.iter() {
            out.union_with(&self.down[x.index()]);
        }
        out
    }

    /// `↑s`
    pub fn upper_closure(&self, s: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for x in s.iter() {
            out.union_with(&self.up[x.index()]);
        }
        out
    }

    /// Completeness flags. For finite posets every pair having a glb is
    /// equivalent to every nonempty subset having one.
    pub fn classify(&self) -> PosetClassification {
        let has_least = self.least().is_some();
        let is_bounded_complete = has_least
            && self
                .elements()
                .all(|x| self.elements().skip(x.index() + 1).all(|y| self.glb2(x, y).is_some()));
        PosetClassification {
            has_least,
            is_cpo: has_least,
            is_bounded_complete,
            is_complete_lattice: is_bounded_complete && self.greatest().is_some(),
        }
    }

    /// The same elements with the order reversed.
    pub fn dual(&self) -> FinitePoset {
        FinitePoset {
            names: self.names.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Renders a set as `{a, b}` with identifiers in sorted order.
    pub fn format_set(&self, s: &ElemSet) -> String {
        let mut names: Vec<&str> = s.iter().map(|e| self.name(e)).collect();
        names.sort_unstable();
        format!("{{{}}}", names.join(", "))
    }

    pub fn sorted_names(&self, s: &ElemSet) -> Vec<String> {
        let mut names: Vec<String> = s.iter().map(|e| self.name(e).to_string()).collect();
        names.sort_unstable();
        names
    }

    /// Hasse diagram of the order, in the input format.
    pub fn to_spec(&self) -> PosetSpec {
        let mut hasse = Vec::new();
        for x in self.elements() {
            for y in self.up[x.index()].iter() {
                if x == y {
                    continue;
                }
                let mut strictly_between = self.up[x.index()].intersection(&self.down[y.index()]);
                strictly_between.remove(x);
                strictly_between.remove(y);
                if strictly_between.is_empty() {
                    hasse.push((self.name(x).to_string(), self.name(y).to_string()));
                }
            }
        }
        PosetSpec { elements: self.names.clone(), hasse }
    }
}

fn lookup(index: &HashMap<String, Elem>, name: &str) -> Result<Elem> {
    index.get(name).copied().ok_or_else(|| Error::ElementNotFound(name.to_string()))
}

/// Renders the subset of `atoms` selected by `mask` as `{a,b}`.
pub fn mask_name<S: AsRef<str>>(atoms: &[S], mask: usize) -> String {
    let parts: Vec<&str> = atoms
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, a)| a.as_ref())
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// All subsets of `atoms`. Element `i` is the subset whose bitmask is `i`.
pub fn powerset_lattice<S: AsRef<str>>(atoms: &[S], order: SetOrder) -> Result<FinitePoset> {
    powerset_lattice_capped(atoms, order, DEFAULT_MAX_ATOMS, DEFAULT_MAX_ELEMENTS)
}

pub fn powerset_lattice_capped<S: AsRef<str>>(
    atoms: &[S],
    order: SetOrder,
    max_atoms: usize,
    max_elements: usize,
) -> Result<FinitePoset> {
    if atoms.len() > max_atoms {
        return Err(Error::CapExceeded { what: "atom set".into(), size: atoms.len(), cap: max_atoms });
    }
    let size = 1usize << atoms.len();
    if size > max_elements {
        return Err(Error::CapExceeded { what: "powerset".into(), size, cap: max_elements });
    }
    let names = (0..size).map(|m| mask_name(atoms, m)).collect();
    FinitePoset::from_leq_fn(names, max_elements, |x, y| match order {
        SetOrder::Subset => x & !y == 0,
        SetOrder::Superset => y & !x == 0,
    })
}

/// Pointwise product. Elements are listed lexicographically with the first
/// factor most significant and are named `(x1,x2,...)`.
pub fn product_poset(factors: &[&FinitePoset]) -> Result<FinitePoset> {
    product_poset_capped(factors, DEFAULT_MAX_ELEMENTS)
}

pub fn product_poset_capped(factors: &[&FinitePoset], max_elements: usize) -> Result<FinitePoset> {
    let mut size: usize = 1;
    for f in factors {
        size = size.checked_mul(f.len()).filter(|&s| s <= max_elements).ok_or_else(|| {
            Error::CapExceeded { what: "product poset".into(), size: usize::MAX, cap: max_elements }
        })?;
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let mut names = Vec::with_capacity(size);
    for i in 0..size {
        let parts: Vec<&str> = product_components(&sizes, i)
            .into_iter()
            .zip(factors)
            .map(|(c, f)| f.name(Elem::new(c)))
            .collect();
        names.push(format!("({})", parts.join(",")));
    }
    FinitePoset::from_leq_fn(names, max_elements, |x, y| {
        let xs = product_components(&sizes, x);
        let ys = product_components(&sizes, y);
        factors
            .iter()
            .zip(xs.iter().zip(&ys))
            .all(|(f, (&a, &b))| f.leq(Elem::new(a), Elem::new(b)))
    })
}

/// Decodes a product index into factor indices.
pub fn product_components(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &n) in out.iter_mut().zip(sizes).rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

/// Encodes factor indices into a product index.
pub fn product_index(sizes: &[usize], components: &[usize]) -> usize {
    components.iter().zip(sizes).fold(0, |acc, (&c, &n)| acc * n + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vee() -> FinitePoset {
        FinitePoset::from_hasse(&["bot", "a", "b"], &[("bot", "a"), ("bot", "b")]).unwrap()
    }

    fn diamond() -> FinitePoset {
        FinitePoset::from_hasse(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap()
    }

    fn review_values() -> FinitePoset {
        FinitePoset::from_hasse(
            &["indifferent", "tendency-accept", "tendency-reject", "accept", "borderline", "reject"],
            &[
                ("indifferent", "tendency-accept"),
                ("indifferent", "tendency-reject"),
                ("tendency-accept", "accept"),
                ("tendency-accept", "borderline"),
                ("tendency-reject", "borderline"),
                ("tendency-reject", "reject"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn leq_on_vee() {
        let p = vee();
        assert!(p.leq_named("bot", "a").unwrap());
        assert!(p.leq_named("a", "a").unwrap());
        assert!(!p.leq_named("a", "b").unwrap());
        assert_eq!(p.leq_named("a", "zzz"), Err(Error::ElementNotFound("zzz".into())));
    }

    #[test]
    fn bounds() {
        let p = vee();
        let a = p.elem("a").unwrap();
        assert_eq!(p.lub(&p.set_of(&["bot", "a"]).unwrap()), Some(a));
        assert_eq!(p.lub(&p.set_of(&["a", "b"]).unwrap()), None);
        assert_eq!(p.glb(&p.set_of(&["a", "b"]).unwrap()), p.elem("bot").ok());
        assert_eq!(p.glb(&p.set_of(&["b"]).unwrap()), p.elem("b").ok());
        assert_eq!(p.lub(&p.empty_set()), p.elem("bot").ok());
        assert_eq!(p.glb(&p.empty_set()), None);

        let q = diamond();
        assert_eq!(q.lub(&q.set_of(&["a", "b"]).unwrap()), q.elem("top").ok());

        let v = review_values();
        assert_eq!(
            v.glb(&v.set_of(&["accept", "borderline"]).unwrap()),
            v.elem("tendency-accept").ok()
        );
    }

    #[test]
    fn extremal_subsets() {
        let p = vee();
        let all = p.all();
        assert_eq!(p.max_set(&all), p.set_of(&["a", "b"]).unwrap());
        assert_eq!(p.min_set(&all), p.set_of(&["bot"]).unwrap());
        assert!(p.max_set(&p.empty_set()).is_empty());
    }

    #[test]
    fn shape_predicates() {
        let p = vee();
        assert!(p.is_antichain(&p.set_of(&["a", "b"]).unwrap()));
        assert!(!p.is_antichain(&p.set_of(&["bot", "b"]).unwrap()));
        assert!(p.is_convex(&p.set_of(&["bot", "a"]).unwrap()));
        assert!(!p.is_chain(&p.all()));
        assert!(p.is_chain(&p.set_of(&["bot", "a"]).unwrap()));

        let q = diamond();
        assert!(!q.is_convex(&q.set_of(&["bot", "top"]).unwrap()));
    }

    #[test]
    fn closures() {
        let p = vee();
        assert_eq!(p.lower_closure(&p.set_of(&["a"]).unwrap()), p.set_of(&["bot", "a"]).unwrap());
        assert_eq!(p.upper_closure(&p.set_of(&["bot"]).unwrap()), p.all());
        assert!(p.lower_closure(&p.empty_set()).is_empty());
    }

    #[test]
    fn classification() {
        let c = vee().classify();
        assert_eq!(
            c,
            PosetClassification {
                has_least: true,
                is_cpo: true,
                is_bounded_complete: true,
                is_complete_lattice: false
            }
        );
        let v = review_values().classify();
        assert!(v.is_bounded_complete && !v.is_complete_lattice);

        let chain = FinitePoset::from_hasse(&["0", "1"], &[("0", "1")]).unwrap();
        assert!(chain.classify().is_complete_lattice);

        // two incomparable minimal elements
        let vee = FinitePoset::from_hasse(&["x", "y", "z"], &[("x", "z"), ("y", "z")]).unwrap();
        assert!(!vee.classify().has_least);

        // {a, b} has lower bounds c and d but no greatest one
        let bowtie = FinitePoset::from_hasse(
            &["bot", "c", "d", "a", "b"],
            &[("bot", "c"), ("bot", "d"), ("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")],
        )
        .unwrap();
        let c = bowtie.classify();
        assert!(c.is_cpo && !c.is_bounded_complete);
    }

    #[test]
    fn rejects_cycles_and_duplicates() {
        assert!(matches!(
            FinitePoset::from_hasse(&["x", "y"], &[("x", "y"), ("y", "x")]),
            Err(Error::InvalidPoset(_))
        ));
        assert!(matches!(
            FinitePoset::from_hasse(&["x", "x"], &[]),
            Err(Error::InvalidPoset(_))
        ));
        assert!(matches!(
            FinitePoset::from_hasse(&["x"], &[("x", "w")]),
            Err(Error::ElementNotFound(_))
        ));
        assert!(matches!(
            FinitePoset::from_leq_fn(vec!["x".into(), "y".into(), "z".into()], 10, |a, b| a == b
                || (a == 0 && b == 1)
                || (a == 1 && b == 2)),
            Err(Error::InvalidPoset(_))
        ));
    }

    #[test]
    fn powersets() {
        let one = powerset_lattice(&["p"], SetOrder::Subset).unwrap();
        assert_eq!(one.len(), 2);
        assert!(one.leq_named("{}", "{p}").unwrap());

        let two = powerset_lattice(&["p", "q"], SetOrder::Subset).unwrap();
        assert_eq!(two.len(), 4);
        assert_eq!(two.max_set(&two.set_of(&["{p}", "{q}"]).unwrap()).len(), 2);
        assert_eq!(two.lub(&two.set_of(&["{p}", "{q}"]).unwrap()), two.elem("{p,q}").ok());

        let interps: Vec<String> = (0..8).map(|m| mask_name(&["p", "q", "r"], m)).collect();
        let beliefs = powerset_lattice(&interps, SetOrder::Superset).unwrap();
        assert_eq!(beliefs.len(), 256);
        assert!(beliefs.classify().is_complete_lattice);
        assert_eq!(beliefs.least(), Some(Elem::new(255)));
        assert_eq!(beliefs.greatest(), Some(Elem::new(0)));

        let atoms: Vec<String> = (0..17).map(|i| format!("a{i}")).collect();
        assert!(matches!(
            powerset_lattice(&atoms, SetOrder::Subset),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            powerset_lattice(&atoms[..13], SetOrder::Subset),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn products() {
        let chain = FinitePoset::from_hasse(&["0", "1"], &[("0", "1")]).unwrap();
        let diamond = product_poset(&[&chain, &chain]).unwrap();
        assert_eq!(diamond.len(), 4);
        assert!(diamond.classify().is_complete_lattice);
        assert!(!diamond.leq_named("(0,1)", "(1,0)").unwrap());
        assert!(diamond.leq_named("(0,1)", "(1,1)").unwrap());

        let v = review_values();
        let vv = product_poset(&[&v, &v]).unwrap();
        assert_eq!(vv.len(), 36);
        let c = vv.classify();
        assert!(c.is_bounded_complete && !c.is_complete_lattice);

        let single = product_poset(&[&v]).unwrap();
        assert_eq!(single.len(), v.len());
        for x in v.elements() {
            for y in v.elements() {
                assert_eq!(v.leq(x, y), single.leq(x, y));
            }
        }
        assert_eq!(product_components(&[6, 6, 6], 2 * 36 + 5 * 6 + 1), vec![2, 5, 1]);
        assert_eq!(product_index(&[6, 6, 6], &[2, 5, 1]), 2 * 36 + 5 * 6 + 1);
    }

    #[test]
    fn poset_json_round_trip() {
        let p = diamond();
        let spec = p.to_spec();
        assert_eq!(spec.hasse.len(), 4);
        assert_eq!(FinitePoset::from_spec(&spec).unwrap(), p);
        let json = r#"{"elements": ["bot", "a", "b"], "hasse": [["bot", "a"], ["bot", "b"]]}"#;
        assert_eq!(FinitePoset::from_json(json).unwrap(), vee());
    }
}
