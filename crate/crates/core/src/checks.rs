//! Exhaustive (or, past the enumeration caps, sampled) verification of the
//! approximation-framework axioms and of the flower propositions.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flower::{flower_closure, is_flower, MAX_ENUMERABLE_EXACT};
use crate::framework::{Approx, ApproximationFramework, Bound, Pool};
use crate::order::{Elem, ElemSet, FinitePoset};
use crate::report::Report;

/// Pair searches are exhaustive up to this many items.
const PAIR_LIMIT: usize = 1500;
/// Triple searches are exhaustive up to this many items.
const TRIPLE_LIMIT: usize = 120;
/// Subsets are enumerated exhaustively for bases up to this size.
const SUBSET_LIMIT: usize = 12;
/// Subsets of `U` for the glb property are enumerated up to this size.
const GLB_SUBSET_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    /// Number of random probes per check once enumeration is out of reach.
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { samples: 400, seed: 0 }
    }
}

impl CheckConfig {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Runs `f` over all ordered pairs, or over random pairs when there are too many.
fn search_pairs<T>(
    items: &[T],
    cfg: &CheckConfig,
    salt: u64,
    mut f: impl FnMut(&T, &T) -> Option<String>,
) -> (bool, Option<String>) {
    let n = items.len();
    if n <= PAIR_LIMIT {
        let w = (0..n).find_map(|i| (0..n).find_map(|j| f(&items[i], &items[j])));
        return (true, w);
    }
    let mut rng = cfg.rng(salt);
    let w = (0..cfg.samples * 500)
        .find_map(|_| f(&items[rng.random_range(0..n)], &items[rng.random_range(0..n)]));
    (false, w)
}

fn search_triples<T>(
    items: &[T],
    cfg: &CheckConfig,
    salt: u64,
    mut f: impl FnMut(&T, &T, &T) -> Option<String>,
) -> (bool, Option<String>) {
    let n = items.len();
    if n <= TRIPLE_LIMIT {
        let w = (0..n).find_map(|i| {
            (0..n).find_map(|j| (0..n).find_map(|k| f(&items[i], &items[j], &items[k])))
        });
        return (true, w);
    }
    let mut rng = cfg.rng(salt);
    let w = (0..cfg.samples * 500).find_map(|_| {
        let mut pick = || &items[rng.random_range(0..n)];
        f(pick(), pick(), pick())
    });
    (false, w)
}

/// Nonempty subsets of `0..n` as index lists: all of them when `n` is small,
/// otherwise random ones.
fn index_subsets(n: usize, cfg: &CheckConfig, salt: u64, with_empty: bool) -> (bool, Vec<Vec<usize>>) {
    let start = if with_empty { 0 } else { 1 };
    if n <= SUBSET_LIMIT {
        let subsets = (start..1u32 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        return (true, subsets);
    }
    let mut rng = cfg.rng(salt);
    let mut subsets: Vec<Vec<usize>> = (0..cfg.samples)
        .map(|_| {
            let size = rng.random_range(1..=n.min(6));
            (0..size).map(|_| rng.random_range(0..n)).collect()
        })
        .collect();
    if with_empty {
        subsets.push(Vec::new());
    }
    (false, subsets)
}

struct Bounds<F: ApproximationFramework> {
    lows: Vec<F::Low>,
    ups: Vec<F::Up>,
    lows_exhaustive: bool,
    ups_exhaustive: bool,
}

fn bounds<F: ApproximationFramework>(fw: &F, pool: &Pool<F>) -> Bounds<F> {
    let (lows, lows_exhaustive) = match fw.enumerate_low() {
        Some(l) => (l, true),
        None => {
            let mut l: Vec<F::Low> = pool.items.iter().map(|x| x.alb().clone()).collect();
            l.push(fw.low_bottom());
            l.sort();
            l.dedup();
            (l, false)
        }
    };
    let (ups, ups_exhaustive) = match fw.enumerate_up() {
        Some(u) => (u, true),
        None => {
            let mut u: Vec<F::Up> = pool.items.iter().map(|x| x.aub().clone()).collect();
            u.extend(lows.iter().map(|l| fw.up_least_above(l)));
            u.push(fw.up_top());
            u.sort();
            u.dedup();
            (u, false)
        }
    };
    Bounds { lows, ups, lows_exhaustive, ups_exhaustive }
}

fn tagged<F: ApproximationFramework>(b: &Bounds<F>) -> Vec<Bound<F::Low, F::Up>> {
    b.lows
        .iter()
        .cloned()
        .map(Bound::Low)
        .chain(b.ups.iter().cloned().map(Bound::Up))
        .collect()
}

fn fmt_bound<F: ApproximationFramework>(fw: &F, b: &Bound<F::Low, F::Up>) -> String {
    match b {
        Bound::Low(l) => format!("ALB {}", fw.format_low(l)),
        Bound::Up(u) => format!("AUB {}", fw.format_up(u)),
    }
}

/// The least element of `candidates` among those satisfying `is_bound`,
/// with respect to `leq`, by brute force.
fn least_of<T: Clone>(candidates: &[T], is_bound: impl Fn(&T) -> bool, leq: impl Fn(&T, &T) -> bool) -> Option<T> {
    let bounds: Vec<&T> = candidates.iter().filter(|c| is_bound(c)).collect();
    bounds.iter().find(|b| bounds.iter().all(|c| leq(b, c))).map(|b| (*b).clone())
}

fn greatest_of<T: Clone>(candidates: &[T], is_bound: impl Fn(&T) -> bool, leq: impl Fn(&T, &T) -> bool) -> Option<T> {
    least_of(candidates, is_bound, |a, b| leq(b, a))
}

fn brute_low_lub<F: ApproximationFramework>(fw: &F, lows: &[F::Low], s: &[F::Low]) -> Option<F::Low> {
    least_of(lows, |c| s.iter().all(|x| fw.low_leq(x, c)), |a, b| fw.low_leq(a, b))
}

/// `⟨L ∪ U, ≼⟩` is a partial order with `⊥ ∈ L` least and `⊤ ∈ U` greatest,
/// `L` is a bounded-complete cpo and `U` a complete lattice.
pub fn check_order_preamble<F: ApproximationFramework>(fw: &F, cfg: &CheckConfig) -> Report {
    let pool = Pool::new(fw, cfg.samples, cfg.seed);
    order_preamble(fw, &bounds(fw, &pool), cfg)
}

fn order_preamble<F: ApproximationFramework>(fw: &F, b: &Bounds<F>, cfg: &CheckConfig) -> Report {
    let mut report = Report::new();
    let all = tagged(b);
    let complete = b.lows_exhaustive && b.ups_exhaustive;
    let leq = |x: &Bound<F::Low, F::Up>, y: &Bound<F::Low, F::Up>| fw.bound_leq(x, y);

    let w = all.iter().find(|x| !leq(x, x)).map(|x| format!("{} is not below itself", fmt_bound(fw, x)));
    report.record("order: reflexive", complete, w);

    let (ex, w) = search_pairs(&all, cfg, 1, |x, y| {
        (x != y && leq(x, y) && leq(y, x))
            .then(|| format!("{} and {} are mutually below each other", fmt_bound(fw, x), fmt_bound(fw, y)))
    });
    report.record("order: antisymmetric", complete && ex, w);

    let (ex, w) = search_triples(&all, cfg, 2, |x, y, z| {
        (leq(x, y) && leq(y, z) && !leq(x, z)).then(|| {
            format!("{} ≼ {} ≼ {} but not transitively", fmt_bound(fw, x), fmt_bound(fw, y), fmt_bound(fw, z))
        })
    });
    report.record("order: transitive", complete && ex, w);

    let bottom = Bound::Low(fw.low_bottom());
    let w = all.iter().find(|x| !leq(&bottom, x)).map(|x| format!("⊥ is not below {}", fmt_bound(fw, x)));
    report.record("order: ⊥ ∈ L is least", complete, w);

    let top = Bound::Up(fw.up_top());
    let w = all.iter().find(|x| !leq(x, &top)).map(|x| format!("{} is not below ⊤", fmt_bound(fw, x)));
    report.record("order: ⊤ ∈ U is greatest", complete, w);

    // L: every pair has a glb; lubs, when they exist, agree with low_lub.
    let lows = &b.lows;
    let (ex, w) = search_pairs(lows, cfg, 3, |x, y| {
        let glb = greatest_of(lows, |c| fw.low_leq(c, x) && fw.low_leq(c, y), |p, q| fw.low_leq(p, q));
        if glb.is_none() {
            return Some(format!("ALBs {} and {} have no glb", fw.format_low(x), fw.format_low(y)));
        }
        let pair = [x.clone(), y.clone()];
        let brute = brute_low_lub(fw, lows, &pair);
        let claimed = fw.low_lub(&pair);
        (brute != claimed).then(|| {
            format!(
                "lub of ALBs {} and {}: computed {:?}, brute force {:?}",
                fw.format_low(x),
                fw.format_low(y),
                claimed.map(|l| fw.format_low(&l)),
                brute.map(|l| fw.format_low(&l))
            )
        })
    });
    let w = w.or_else(|| {
        (fw.low_lub(&[]) != Some(fw.low_bottom())).then(|| "lub of no ALBs is not ⊥".to_string())
    });
    report.record("order: L is a bounded-complete cpo", b.lows_exhaustive && ex, w);

    // U: every pair has a glb and a lub; up_glb agrees with brute force.
    let ups = &b.ups;
    let (ex, w) = search_pairs(ups, cfg, 4, |x, y| {
        let claimed = fw.up_glb(&[x.clone(), y.clone()]);
        if b.ups_exhaustive {
            let glb = greatest_of(ups, |c| fw.up_leq(c, x) && fw.up_leq(c, y), |p, q| fw.up_leq(p, q));
            let lub = least_of(ups, |c| fw.up_leq(x, c) && fw.up_leq(y, c), |p, q| fw.up_leq(p, q));
            if lub.is_none() {
                return Some(format!("AUBs {} and {} have no lub", fw.format_up(x), fw.format_up(y)));
            }
            (glb.as_ref() != Some(&claimed)).then(|| {
                format!(
                    "glb of AUBs {} and {}: computed {}, brute force {:?}",
                    fw.format_up(x),
                    fw.format_up(y),
                    fw.format_up(&claimed),
                    glb.map(|u| fw.format_up(&u))
                )
            })
        } else {
            (!fw.up_leq(&claimed, x) || !fw.up_leq(&claimed, y)).then(|| {
                format!("computed glb {} is not below {} and {}", fw.format_up(&claimed), fw.format_up(x), fw.format_up(y))
            })
        }
    });
    let w = w.or_else(|| (fw.up_glb(&[]) != fw.up_top()).then(|| "glb of no AUBs is not ⊤".to_string()));
    report.record("order: U is a complete lattice", b.ups_exhaustive && ex, w);
    report
}

/// The five bullets of the composition-poset definition, plus `≤p` being a
/// partial order whose bounds move in opposite directions.
pub fn check_composition_poset<F: ApproximationFramework>(fw: &F, cfg: &CheckConfig) -> Report {
    let pool = Pool::new(fw, cfg.samples, cfg.seed);
    composition_poset(fw, &pool, &bounds(fw, &pool), cfg)
}

fn composition_poset<F: ApproximationFramework>(
    fw: &F,
    pool: &Pool<F>,
    b: &Bounds<F>,
    cfg: &CheckConfig,
) -> Report {
    let mut report = Report::new();
    let complete = b.lows_exhaustive && b.ups_exhaustive;
    let fa = |x: &Approx<F>| fw.format_approximant(x);
    let pairs: Vec<(F::Low, F::Up)> = b
        .lows
        .iter()
        .flat_map(|l| b.ups.iter().map(move |u| (l.clone(), u.clone())))
        .filter(|(l, u)| fw.low_up_leq(l, u))
        .collect();

    // With the whole space listed, results must also land inside it.
    let members: Option<BTreeSet<&Approx<F>>> = pool.exhaustive.then(|| pool.items.iter().collect());
    let w = pairs.iter().find_map(|(l, u)| {
        let (ls, us) = (fw.format_low(l), fw.format_up(u));
        match fw.recompose(l, u) {
            None => Some(format!("({ls}, {us}) is undefined although {ls} ≼ {us}")),
            Some(x) if members.as_ref().is_some_and(|m| !m.contains(&x)) => {
                Some(format!("({ls}, {us}) = {} is not an approximant", fa(&x)))
            }
            Some(_) => None,
        }
    });
    report.record("composition 1: (l, u) is an approximant whenever l ≼ u", complete, w);

    let w = pairs.iter().find_map(|(l, u)| {
        let x = fw.recompose(l, u)?;
        (!fw.low_leq(l, x.alb()) || !fw.up_leq(x.aub(), u))
            .then(|| format!("({}, {}) = {} loses information", fw.format_low(l), fw.format_up(u), fa(&x)))
    });
    report.record("composition 2: recomposition never loses information", complete, w);

    let (ex, w) = search_triples(&pairs, cfg, 5, |(l1, u), (l2, u2), _| {
        if u != u2 || !fw.low_leq(l1, l2) {
            return None;
        }
        let (x, y) = (fw.recompose(l1, u)?, fw.recompose(l2, u)?);
        (!fw.precision_leq(&x, &y)).then(|| {
            format!("{a} ≼ {b} but ({a}, {u}) = {x} ≰p {y}", a = fw.format_low(l1), b = fw.format_low(l2), u = fw.format_up(u), x = fa(&x), y = fa(&y))
        })
    });
    let (ex3, w) = if pairs.len() <= TRIPLE_LIMIT { (ex, w) } else { grouped_monotone_low(fw, &pairs, cfg) };
    report.record("composition 3: (l, u) monotone in l", complete && ex3, w);

    let (ex, w) = search_pairs(&pairs, cfg, 6, |(l, u1), (l2, u2)| {
        if l != l2 || !fw.up_leq(u1, u2) {
            return None;
        }
        let (x, y) = (fw.recompose(l, u2)?, fw.recompose(l, u1)?);
        (!fw.precision_leq(&x, &y)).then(|| {
            format!("{a} ≼ {b} but ({l}, {b}) = {x} ≰p {y}", a = fw.format_up(u1), b = fw.format_up(u2), l = fw.format_low(l), x = fa(&x), y = fa(&y))
        })
    });
    report.record("composition 4: (l, u) antitone in u", complete && ex, w);

    let w = pool.items.iter().find_map(|x| {
        let back = fw.recompose(x.alb(), x.aub());
        (back.as_ref() != Some(x)).then(|| {
            format!("{} recomposes to {:?}", fa(x), back.map(|y| fa(&y)))
        })
    });
    report.record("composition 5: every approximant is the recomposition of its bounds", pool.exhaustive, w);

    let items = &pool.items;
    let w = items.iter().find(|x| !fw.precision_leq(x, x)).map(|x| format!("{} ≰p itself", fa(x)));
    let (ex_a, wa) = search_pairs(items, cfg, 7, |x, y| {
        (x != y && fw.precision_leq(x, y) && fw.precision_leq(y, x)).then(|| format!("{} and {} are ≤p-equivalent", fa(x), fa(y)))
    });
    let (ex_t, wt) = search_triples(items, cfg, 8, |x, y, z| {
        (fw.precision_leq(x, y) && fw.precision_leq(y, z) && !fw.precision_leq(x, z))
            .then(|| format!("{} ≤p {} ≤p {} but not transitively", fa(x), fa(y), fa(z)))
    });
    report.record("precision order is a partial order", pool.exhaustive && ex_a && ex_t, w.or(wa).or(wt));

    let (ex, w) = search_pairs(items, cfg, 9, |x, y| {
        let ordered = fw.low_leq(x.alb(), y.alb())
            && fw.low_up_leq(y.alb(), y.aub())
            && fw.up_leq(y.aub(), x.aub());
        (fw.precision_leq(x, y) && !ordered)
            .then(|| format!("{} ≤p {} but their bounds are not nested", fa(x), fa(y)))
    });
    report.record("precision nests bounds: X↓ ≼ Y↓ ≼ Y↑ ≼ X↑", pool.exhaustive && ex, w);
    report
}

/// Bullet 3 for large pair sets: only pairs sharing an AUB matter, so group first.
fn grouped_monotone_low<F: ApproximationFramework>(
    fw: &F,
    pairs: &[(F::Low, F::Up)],
    cfg: &CheckConfig,
) -> (bool, Option<String>) {
    let mut groups: BTreeMap<&F::Up, Vec<&F::Low>> = BTreeMap::new();
    for (l, u) in pairs {
        groups.entry(u).or_default().push(l);
    }
    let mut exhaustive = true;
    for (u, lows) in groups {
        let (ex, w) = search_pairs(&lows, cfg, 10, |l1, l2| {
            if !fw.low_leq(l1, l2) {
                return None;
            }
            let (x, y) = (fw.recompose(l1, u)?, fw.recompose(l2, u)?);
            (!fw.precision_leq(&x, &y)).then(|| {
                format!(
                    "{a} ≼ {b} but ({a}, {u}) = {x} ≰p {y}",
                    a = fw.format_low(l1),
                    b = fw.format_low(l2),
                    u = fw.format_up(u),
                    x = fw.format_approximant(&x),
                    y = fw.format_approximant(&y)
                )
            })
        });
        exhaustive &= ex;
        if w.is_some() {
            return (exhaustive, w);
        }
    }
    (exhaustive, None)
}

/// Chains of `lows` (as index lists): all of them when `lows` is small, random
/// ones otherwise. The empty chain is included.
fn chains<F: ApproximationFramework>(fw: &F, lows: &[F::Low], cfg: &CheckConfig) -> (bool, Vec<Vec<usize>>) {
    let n = lows.len();
    let comparable = |i: usize, j: usize| fw.low_leq(&lows[i], &lows[j]) || fw.low_leq(&lows[j], &lows[i]);
    if n <= SUBSET_LIMIT {
        let out = (0..1u32 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| s.iter().all(|&i| s.iter().all(|&j| comparable(i, j))))
            .collect();
        return (true, out);
    }
    let mut rng = cfg.rng(11);
    let mut out = vec![Vec::new()];
    for _ in 0..cfg.samples {
        let mut chain = vec![rng.random_range(0..n)];
        loop {
            let top = *chain.last().expect("nonempty");
            let above: Vec<usize> =
                (0..n).filter(|&j| j != top && fw.low_leq(&lows[top], &lows[j])).collect();
            match above.choose(&mut rng) {
                Some(&j) if rng.random_bool(0.7) => chain.push(j),
                _ => break,
            }
        }
        out.push(chain);
    }
    (false, out)
}

/// For every `u ∈ U` and chain `S ⊆ L` below `u`, `lub S ≼ u`.
pub fn check_chain_ilp<F: ApproximationFramework>(fw: &F, cfg: &CheckConfig) -> Report {
    let pool = Pool::new(fw, cfg.samples, cfg.seed);
    chain_ilp(fw, &bounds(fw, &pool), cfg)
}

fn chain_ilp<F: ApproximationFramework>(fw: &F, b: &Bounds<F>, cfg: &CheckConfig) -> Report {
    let (ex, chains) = chains(fw, &b.lows, cfg);
    let w = chains.iter().find_map(|idx| {
        let s: Vec<F::Low> = idx.iter().map(|&i| b.lows[i].clone()).collect();
        let names = || s.iter().map(|l| fw.format_low(l)).collect::<Vec<_>>().join(", ");
        b.ups.iter().find_map(|u| {
            if !s.iter().all(|l| fw.low_up_leq(l, u)) {
                return None;
            }
            match fw.low_lub(&s) {
                None => Some(format!("chain {{{}}} below {} has no lub", names(), fw.format_up(u))),
                Some(lub) if !fw.low_up_leq(&lub, u) => Some(format!(
                    "chain {{{}}} is below {} but its lub {} is not",
                    names(),
                    fw.format_up(u),
                    fw.format_low(&lub)
                )),
                Some(_) => None,
            }
        })
    });
    let mut report = Report::new();
    report.record("chain interlattice lub property", ex && b.lows_exhaustive && b.ups_exhaustive, w);
    report
}

/// For every approximant `X` and `l ≼ X↑`, `lub{X↓, l}` exists and is `≼ X↑`.
pub fn check_weak_ilp<F: ApproximationFramework>(fw: &F, cfg: &CheckConfig) -> Report {
    let pool = Pool::new(fw, cfg.samples, cfg.seed);
    weak_ilp(fw, &pool, &bounds(fw, &pool), cfg)
}

fn weak_ilp<F: ApproximationFramework>(fw: &F, pool: &Pool<F>, b: &Bounds<F>, cfg: &CheckConfig) -> Report {
    let check = |x: &Approx<F>, l: &F::Low| {
        if !fw.low_up_leq(l, x.aub()) {
            return None;
        }
        match fw.low_lub(&[x.alb().clone(), l.clone()]) {
            None => Some(format!("{} and ALB {} have no lub", fw.format_approximant(x), fw.format_low(l))),
            Some(lub) if !fw.low_up_leq(&lub, x.aub()) => Some(format!(
                "ALB {} ≼ AUB of {} but lub {} is not",
                fw.format_low(l),
                fw.format_approximant(x),
                fw.format_low(&lub)
            )),
            Some(_) => None,
        }
    };
    let total = pool.items.len() * b.lows.len();
    let (ex, w) = if total <= 2_000_000 {
        (true, pool.items.iter().find_map(|x| b.lows.iter().find_map(|l| check(x, l))))
    } else {
        let mut rng = cfg.rng(12);
        let w = (0..cfg.samples * 500).find_map(|_| {
            let x = pool.items.choose(&mut rng).expect("nonempty pool");
            check(x, b.lows.choose(&mut rng).expect("nonempty L"))
        });
        (false, w)
    };
    let mut report = Report::new();
    report.record("weak interlattice lub property", ex && pool.exhaustive && b.lows_exhaustive, w);
    report
}

/// Nonempty sets of approximants sharing an AUB have a lub with that AUB and
/// with the lub of their ALBs as ALB.
pub fn check_abstract_ilp<F: ApproximationFramework>(fw: &F, cfg: &CheckConfig) -> Report {
    let pool = Pool::new(fw, cfg.samples, cfg.seed);
    abstract_ilp(fw, &pool, cfg)
}

fn abstract_ilp<F: ApproximationFramework>(fw: &F, pool: &Pool<F>, cfg: &CheckConfig) -> Report {
    let mut groups: BTreeMap<&F::Up, Vec<&Approx<F>>> = BTreeMap::new();
    for x in &pool.items {
        groups.entry(x.aub()).or_default().push(x);
    }
    let brute = pool.exhaustive && pool.items.len() <= 3000;
    let mut exhaustive = brute;
    let mut witness = None;
    for (salt, (u, members)) in groups.into_iter().enumerate() {
        let (ex, subsets) = index_subsets(members.len(), cfg, 100 + salt as u64, false);
        exhaustive &= ex;
        witness = subsets.iter().find_map(|idx| {
            let s: Vec<Approx<F>> = idx.iter().map(|&i| members[i].clone()).collect();
            let names = || s.iter().map(|x| fw.format_approximant(x)).collect::<Vec<_>>().join(", ");
            let lub = fw.lub_approximants(&s);
            if brute {
                let oracle = least_of(
                    &pool.items,
                    |y| s.iter().all(|x| fw.precision_leq(x, y)),
                    |p, q| fw.precision_leq(p, q),
                );
                if oracle != lub {
                    return Some(format!(
                        "lub of {{{}}}: computed {:?}, brute force {:?}",
                        names(),
                        lub.map(|y| fw.format_approximant(&y)),
                        oracle.map(|y| fw.format_approximant(&y))
                    ));
                }
            }
            let Some(lub) = lub else {
                return Some(format!("{{{}}} share AUB {} but have no lub", names(), fw.format_up(u)));
            };
            let albs: Vec<F::Low> = s.iter().map(|x| x.alb().clone()).collect();
            let expected_alb = fw.low_lub(&albs);
            (lub.aub() != u || expected_alb.as_ref() != Some(lub.alb())).then(|| {
                format!(
                    "lub of {{{}}} is {}, expected ALB {:?} and AUB {}",
                    names(),
                    fw.format_approximant(&lub),
                    expected_alb.map(|l| fw.format_low(&l)),
                    fw.format_up(u)
                )
            })
        });
        if witness.is_some() {
            break;
        }
    }
    let mut report = Report::new();
    report.record("abstract interlattice lub property", exhaustive, witness);
    report
}

/// `l ≼ u` for every `u ∈ S` implies `l ≼ glb S`.
pub fn check_glb_property<F: ApproximationFramework>(fw: &F, cfg: &CheckConfig) -> Report {
    let pool = Pool::new(fw, cfg.samples, cfg.seed);
    glb_property(fw, &bounds(fw, &pool), cfg)
}

fn glb_property<F: ApproximationFramework>(fw: &F, b: &Bounds<F>, cfg: &CheckConfig) -> Report {
    let check = |l: &F::Low, s: &[F::Up]| {
        if !s.iter().all(|u| fw.low_up_leq(l, u)) {
            return None;
        }
        let glb = fw.up_glb(s);
        (!fw.low_up_leq(l, &glb)).then(|| {
            let names: Vec<String> = s.iter().map(|u| fw.format_up(u)).collect();
            format!(
                "ALB {} is below each of {{{}}} but not below their glb {}",
                fw.format_low(l),
                names.join(", "),
                fw.format_up(&glb)
            )
        })
    };
    let ups = &b.ups;
    // With U listed completely, pairs plus the empty set suffice: glbs of
    // larger sets are iterated pairwise glbs, which are themselves in U.
    let (ex, w) = if ups.len() <= GLB_SUBSET_LIMIT {
        let (ex, subsets) = index_subsets(ups.len(), cfg, 13, true);
        let w = subsets.iter().find_map(|idx| {
            let s: Vec<F::Up> = idx.iter().map(|&i| ups[i].clone()).collect();
            b.lows.iter().find_map(|l| check(l, &s))
        });
        (ex, w)
    } else if ups.len() * ups.len() * b.lows.len() <= 4_000_000 {
        let w = b.lows.iter().find_map(|l| {
            check(l, &[]).or_else(|| {
                ups.iter().find_map(|u1| ups.iter().find_map(|u2| check(l, &[u1.clone(), u2.clone()])))
            })
        });
        (true, w)
    } else {
        let mut rng = cfg.rng(14);
        let w = (0..cfg.samples * 500).find_map(|_| {
            let l = b.lows.choose(&mut rng).expect("nonempty L");
            let k = rng.random_range(0..4);
            let s: Vec<F::Up> = (0..k).map(|_| ups.choose(&mut rng).expect("nonempty U").clone()).collect();
            check(l, &s)
        });
        (false, w)
    };
    let mut report = Report::new();
    report.record("interlattice glb property", ex && b.lows_exhaustive && b.ups_exhaustive, w);
    report
}

/// The four conditions under which the approximation space approximates the
/// exact space, and `is_exact` against its order-theoretic definition.
pub fn check_approximates_relation<F: ApproximationFramework>(fw: &F, cfg: &CheckConfig) -> Report {
    let pool = Pool::new(fw, cfg.samples, cfg.seed);
    approximates_relation(fw, &pool, &bounds(fw, &pool), cfg)
}

fn approximates_relation<F: ApproximationFramework>(
    fw: &F,
    pool: &Pool<F>,
    b: &Bounds<F>,
    cfg: &CheckConfig,
) -> Report {
    let mut report = Report::new();
    let exact = fw.exact();
    let fa = |x: &Approx<F>| fw.format_approximant(x);

    let (ex, w) = search_pairs(&pool.items, cfg, 15, |x, y| {
        if !fw.precision_leq(x, y) {
            return None;
        }
        let (mx, my) = (fw.approximated(x), fw.approximated(y));
        (!my.is_subset(&mx)).then(|| format!("{} ≤p {} but {} approximates more", fa(x), fa(y), fa(y)))
    });
    report.record("approximates 1: anti-monotone in precision", pool.exhaustive && ex, w);

    let top = fw.up_top();
    let w = b.lows.iter().find_map(|l| {
        let x = fw.recompose(l, &top)?;
        let m = fw.approximated(&x);
        (m != exact.upper_closure(&m)).then(|| format!("members of {} are not upward closed", fa(&x)))
    });
    report.record("approximates 2: (l, ⊤) approximates an up-set", b.lows_exhaustive, w);

    let bottom = fw.low_bottom();
    let w = b.ups.iter().find_map(|u| {
        let x = fw.recompose(&bottom, u)?;
        let m = fw.approximated(&x);
        (m != exact.lower_closure(&m)).then(|| format!("members of {} are not downward closed", fa(&x)))
    });
    report.record("approximates 3: (⊥, u) approximates a down-set", b.ups_exhaustive, w);

    let w = pool.items.iter().find_map(|x| {
        let n = fw.approximated(x).len();
        (fw.is_exact(x) != (n == 1))
            .then(|| format!("{} approximates {n} elements but is_exact says {}", fa(x), fw.is_exact(x)))
    });
    report.record("approximates 4: exact iff exactly one element approximated", pool.exhaustive, w);

    // Exact: ≤p-maximal, or below exactly one ≤p-maximal approximant.
    let w = if pool.exhaustive {
        let items = &pool.items;
        let maximal: Vec<&Approx<F>> = items
            .iter()
            .filter(|x| !items.iter().any(|y| fw.strictly_more_precise(x, y)))
            .collect();
        items.iter().find_map(|x| {
            let above = maximal.iter().filter(|m| fw.precision_leq(x, m)).count();
            let by_definition = maximal.contains(&x) || above == 1;
            (fw.is_exact(x) != by_definition)
                .then(|| format!("is_exact({}) = {} disagrees with the definition", fa(x), fw.is_exact(x)))
        })
    } else {
        pool.items.iter().find_map(|x| {
            let refined = exact.elements().map(|e| fw.exact_approximant(e)).find(|y| fw.strictly_more_precise(x, y));
            (fw.is_exact(x) && refined.is_some())
                .then(|| format!("{} is called exact but is refined by {}", fa(x), fa(&refined.expect("some"))))
        })
    };
    report.record("exactness matches ≤p-maximality", pool.exhaustive, w);
    report
}

/// Every check on one framework.
pub fn check_framework<F: ApproximationFramework>(fw: &F, cfg: &CheckConfig) -> Report {
    let pool = Pool::new(fw, cfg.samples, cfg.seed);
    let b = bounds(fw, &pool);
    let mut report = order_preamble(fw, &b, cfg);
    report.extend(composition_poset(fw, &pool, &b, cfg));
    report.extend(chain_ilp(fw, &b, cfg));
    report.extend(weak_ilp(fw, &pool, &b, cfg));
    report.extend(abstract_ilp(fw, &pool, cfg));
    report.extend(glb_property(fw, &b, cfg));
    report.extend(approximates_relation(fw, &pool, &b, cfg));
    report
}

fn subsets_of(n: usize) -> impl Iterator<Item = ElemSet> {
    (0..1u64 << n).map(move |m| ElemSet::from_elems(n, (0..n).filter(|i| m >> i & 1 == 1).map(Elem::new)))
}

fn below_some(p: &FinitePoset, x: Elem, u: &ElemSet) -> bool {
    u.iter().any(|m| p.leq(x, m))
}

/// The four flower propositions, stated directly on sets of exact elements and
/// checked by brute force, together with the agreement of `fw` with them.
/// The composition-order part of the preamble is included, since every
/// proposition is phrased through it.
pub fn verify_flower_propositions<F>(fw: &F, cfg: &CheckConfig) -> Report
where
    F: ApproximationFramework<Low = Elem, Up = ElemSet>,
{
    let exact = fw.exact();
    let n = exact.len();
    if n > MAX_ENUMERABLE_EXACT {
        let mut report = check_order_preamble(fw, cfg);
        let pool = Pool::new(fw, cfg.samples, cfg.seed);
        let b = bounds(fw, &pool);
        report.extend(chain_ilp(fw, &b, cfg).prefixed("proposition 1"));
        report.extend(weak_ilp(fw, &pool, &b, cfg).prefixed("proposition 2"));
        report.extend(abstract_ilp(fw, &pool, cfg).prefixed("proposition 3"));
        report.extend(glb_property(fw, &b, cfg).prefixed("proposition 4"));
        return report;
    }
    let mut report = check_order_preamble(fw, cfg);
    let subsets: Vec<ElemSet> = subsets_of(n).collect();
    let antichains: Vec<&ElemSet> = subsets.iter().filter(|s| !s.is_empty() && exact.is_antichain(s)).collect();
    let flowers: Vec<&ElemSet> = subsets.iter().filter(|s| is_flower(exact, s)).collect();
    let chains: Vec<&ElemSet> = subsets.iter().filter(|s| exact.is_chain(s)).collect();

    // 1: a chain below an antichain has its lub below the antichain.
    let w = antichains.iter().find_map(|u| {
        chains.iter().find_map(|s| {
            if !s.iter().all(|l| below_some(exact, l, u)) {
                return None;
            }
            match exact.lub(s) {
                Some(lub) if below_some(exact, lub, u) && fw.low_up_leq(&lub, u) => None,
                lub => Some(format!(
                    "chain {} lies below {} but its lub {:?} does not",
                    exact.format_set(s),
                    exact.format_set(u),
                    lub.map(|e| exact.name(e).to_string())
                )),
            }
        })
    });
    report.record("proposition 1: chain lub stays below an AUB", true, w);

    // 2: l below a maximal element of X joins with glb X below Max X.
    let w = flowers.iter().find_map(|x| {
        let glb = exact.glb(x).expect("flowers have a glb");
        let max = exact.max_set(x);
        let decomposed = fw.cover(x).map(|y| (*y.alb(), y.aub().clone()));
        if decomposed != Some((glb, max.clone())) {
            return Some(format!("{} does not decompose into its glb and maximal elements", exact.format_set(x)));
        }
        exact.elements().find_map(|l| {
            if !below_some(exact, l, &max) {
                return None;
            }
            match exact.lub2(l, glb) {
                Some(j) if below_some(exact, j, &max) => None,
                j => Some(format!(
                    "{} lies below Max {} but lub with {} is {:?}",
                    exact.name(l),
                    exact.format_set(x),
                    exact.name(glb),
                    j.map(|e| exact.name(e).to_string())
                )),
            }
        })
    });
    report.record("proposition 2: weak lub property for flowers", true, w);

    // 3: flowers with the same maximal elements have a lub (the largest flower
    // inside all of them) with that AUB and the lub of their glbs as ALB.
    let mut by_max: BTreeMap<ElemSet, Vec<&ElemSet>> = BTreeMap::new();
    for x in &flowers {
        by_max.entry(exact.max_set(x)).or_default().push(x);
    }
    let mut exhaustive = true;
    let mut w = None;
    for (salt, (max, group)) in by_max.iter().enumerate() {
        let (ex, idx_sets) = index_subsets(group.len(), cfg, 200 + salt as u64, false);
        exhaustive &= ex;
        w = idx_sets.iter().find_map(|idx| {
            let s: Vec<&ElemSet> = idx.iter().map(|&i| group[i]).collect();
            let names = || s.iter().map(|x| exact.format_set(x)).collect::<Vec<_>>().join(", ");
            let glbs = ElemSet::from_elems(n, s.iter().map(|x| exact.glb(x).expect("flower")));
            let inside: Vec<&&ElemSet> = flowers.iter().filter(|y| s.iter().all(|x| y.is_subset(x))).collect();
            let lub = inside.iter().find(|y| inside.iter().all(|z| z.is_subset(y)));
            let Some(lub) = lub else {
                return Some(format!("flowers {{{}}} have no lub", names()));
            };
            let ok = exact.lub(&glbs) == exact.glb(lub) && exact.max_set(lub) == *max;
            let fw_lub = fw.lub_approximants(
                &s.iter().map(|x| fw.cover(x).expect("nonempty")).collect::<Vec<_>>(),
            );
            let fw_ok = fw_lub.map(|y| fw.approximated(&y)).as_ref() == Some(**lub);
            (!ok || !fw_ok).then(|| format!("flowers {{{}}} with lub {}", names(), exact.format_set(lub)))
        });
        if w.is_some() {
            break;
        }
    }
    report.record("proposition 3: flowers sharing an AUB", exhaustive, w);

    // 4: l below some element of every antichain in S is below some element
    // of their glb, the antichain with the largest down-set inside all of theirs.
    let (ex, idx_sets) = if antichains.len() <= GLB_SUBSET_LIMIT {
        index_subsets(antichains.len(), cfg, 16, true)
    } else {
        let mut sets: Vec<Vec<usize>> = vec![Vec::new()];
        for i in 0..antichains.len() {
            for j in i..antichains.len() {
                sets.push(vec![i, j]);
            }
        }
        (true, sets)
    };
    let w = idx_sets.iter().find_map(|idx| {
        let s: Vec<ElemSet> = idx.iter().map(|&i| antichains[i].clone()).collect();
        let downs: Vec<ElemSet> = s.iter().map(|u| exact.lower_closure(u)).collect();
        let fits = |a: &ElemSet| {
            let d = exact.lower_closure(a);
            downs.iter().all(|du| d.is_subset(du))
        };
        let candidates: Vec<&&ElemSet> = antichains.iter().filter(|a| fits(a)).collect();
        let glb = candidates.iter().find(|a| {
            let d = exact.lower_closure(a);
            candidates.iter().all(|b| exact.lower_closure(b).is_subset(&d))
        });
        let names = || s.iter().map(|u| exact.format_set(u)).collect::<Vec<_>>().join(", ");
        let Some(glb) = glb else {
            return Some(format!("antichains {{{}}} have no glb", names()));
        };
        if fw.up_glb(&s) != ***glb {
            return Some(format!(
                "glb of {{{}}} is {}, framework computes {}",
                names(),
                exact.format_set(glb),
                exact.format_set(&fw.up_glb(&s))
            ));
        }
        exact.elements().find_map(|l| {
            let below_all = s.iter().all(|u| below_some(exact, l, u));
            (below_all && (!below_some(exact, l, glb) || !fw.low_up_leq(&l, glb))).then(|| {
                format!("{} lies below each of {{{}}} but not below their glb {}", exact.name(l), names(), exact.format_set(glb))
            })
        })
    });
    report.record("proposition 4: glb property for antichains", ex, w);

    // Chains of flowers under ≤p have their intersection as lub.
    let w = flowers.iter().find_map(|x| {
        flowers.iter().find_map(|y| {
            if !y.is_subset(x) {
                return None;
            }
            let meet = x.intersection(y);
            (flower_closure(exact, &meet).as_ref() != Some(&meet))
                .then(|| format!("intersection of {} and {} is not a flower", exact.format_set(x), exact.format_set(y)))
        })
    });
    report.record("flowers under ≤p form a cpo", true, w);
    report
}
