//! Test oracles built without the engine: formula enumeration, exhaustive
//! small-model enumeration, a fixpoint evaluator, and direct frame checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use cmael_core::{Coalition, Formula, PseudoModel, Relation, Universe};

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn corpus_path(name: &str) -> PathBuf {
    workspace_root().join("corpus").join(name)
}

/// Every formula of each size up to `max`, built from the given atoms and
/// coalitions with `¬`, `∧`, `D` and `C`. Index `k` holds the size-`k`
/// formulas; index 0 is empty.
pub fn formulas_by_size(atoms: &[&str], coalitions: &[Coalition], max: usize) -> Vec<Vec<Formula>> {
    let mut by: Vec<Vec<Formula>> = vec![Vec::new(); max + 1];
    if max == 0 {
        return by;
    }
    by[1] = atoms.iter().map(|a| Formula::atom(a)).collect();
    for size in 2..=max {
        let mut out = Vec::new();
        for f in &by[size - 1] {
            out.push(Formula::not(f.clone()));
            for &c in coalitions {
                out.push(Formula::d(c, f.clone()));
                out.push(Formula::c(c, f.clone()));
            }
        }
        for left in 1..size - 1 {
            let right = size - 1 - left;
            for l in &by[left] {
                for r in &by[right] {
                    out.push(Formula::and(l.clone(), r.clone()));
                }
            }
        }
        by[size] = out;
    }
    by
}

/// Set partitions of `0..n` as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            prefix.push(b);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    (0..fine.len()).all(|s| (0..fine.len()).all(|t| fine[s] != fine[t] || coarse[s] == coarse[t]))
}

/// Every pseudo-model over agents `a`, `b` with 1 to `max_states` states and
/// valuations over `atoms`: `R_a`, `R_b` arbitrary equivalences and `R_ab`
/// any equivalence contained in both.
pub fn pseudo_models_ab(universe: &Universe, atoms: &[&str], max_states: usize) -> Vec<PseudoModel> {
    let a = universe.coalition(&["a"]).unwrap();
    let b = universe.coalition(&["b"]).unwrap();
    let ab = universe.coalition(&["a", "b"]).unwrap();
    let mut out = Vec::new();
    for n in 1..=max_states {
        let parts = partitions(n);
        let valuations = 1usize << (atoms.len() * n);
        for pa in &parts {
            for pb in &parts {
                for pab in parts.iter().filter(|p| refines(p, pa) && refines(p, pb)) {
                    for v in 0..valuations {
                        let labeling = (0..n)
                            .map(|s| {
                                atoms
                                    .iter()
                                    .enumerate()
                                    .filter(|(i, _)| v >> (s * atoms.len() + i) & 1 == 1)
                                    .map(|(_, p)| (*p).into())
                                    .collect::<BTreeSet<_>>()
                            })
                            .collect();
                        let relations = BTreeMap::from([
                            (a, Relation::from_blocks(pa)),
                            (b, Relation::from_blocks(pb)),
                            (ab, Relation::from_blocks(pab)),
                        ]);
                        out.push(PseudoModel {
                            universe: universe.clone(),
                            labeling,
                            relations,
                            root: Some(0),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Truth sets computed bottom-up. `C_A` is the greatest fixpoint of
/// `X = φ ∩ ⋂_{a ∈ A} □_a X`, a different route from the reachability used
/// by the library. Missing relations are empty, so their boxes are trivial.
pub fn truth_set(model: &PseudoModel, phi: &Formula) -> Vec<bool> {
    let n = model.states();
    let boxed = |c: Coalition, x: &[bool]| -> Vec<bool> {
        (0..n)
            .map(|s| match model.relations.get(&c) {
                Some(r) => (0..n).all(|t| !r.contains(s, t) || x[t]),
                None => true,
            })
            .collect()
    };
    match phi {
        Formula::Atom(p) => (0..n).map(|s| model.labeling[s].contains(p)).collect(),
        Formula::Not(f) => truth_set(model, f).into_iter().map(|v| !v).collect(),
        Formula::And(l, r) => {
            let (l, r) = (truth_set(model, l), truth_set(model, r));
            l.iter().zip(&r).map(|(x, y)| *x && *y).collect()
        }
        Formula::D(c, f) => boxed(*c, &truth_set(model, f)),
        Formula::C(c, f) => {
            let body = truth_set(model, f);
            let mut x = body.clone();
            loop {
                let mut next = body.clone();
                for agent in c.agents() {
                    let k = boxed(Coalition::singleton(agent), &x);
                    for s in 0..n {
                        next[s] = next[s] && x[s] && k[s];
                    }
                }
                if next == x {
                    return x;
                }
                x = next;
            }
        }
    }
}

pub fn holds(model: &PseudoModel, s: usize, phi: &Formula) -> bool {
    truth_set(model, phi)[s]
}

/// Checks every relation is an equivalence and `R_A ⊆ R_B` for all `B ⊆ A`,
/// over every coalition pair of the universe. Returns a description of the
/// first failure.
pub fn check_pseudo_frame(model: &PseudoModel) -> Result<(), String> {
    let n = model.states();
    let empty = Relation::empty(n);
    let rel = |c: Coalition| model.relations.get(&c).unwrap_or(&empty);
    let coalitions: Vec<Coalition> = model.universe.coalitions().collect();
    for &c in &coalitions {
        let r = rel(c);
        for s in 0..n {
            if !r.contains(s, s) {
                return Err(format!("{c:?} not reflexive at {s}"));
            }
            for t in 0..n {
                if r.contains(s, t) && !r.contains(t, s) {
                    return Err(format!("{c:?} not symmetric at ({s},{t})"));
                }
                for u in 0..n {
                    if r.contains(s, t) && r.contains(t, u) && !r.contains(s, u) {
                        return Err(format!("{c:?} not transitive at ({s},{t},{u})"));
                    }
                }
            }
        }
    }
    for &big in &coalitions {
        for &small in &coalitions {
            if small.bits() & !big.bits() != 0 {
                continue;
            }
            for s in 0..n {
                for t in 0..n {
                    if rel(big).contains(s, t) && !rel(small).contains(s, t) {
                        return Err(format!("R{big:?} not inside R{small:?} at ({s},{t})"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// A small deterministic formula generator with weighted operators.
pub struct Generator<R> {
    pub rng: R,
    pub atoms: Vec<&'static str>,
    pub coalitions: Vec<Coalition>,
}

impl<R: rand::Rng> Generator<R> {
    /// A formula of size at most `budget` (at least 1).
    pub fn formula(&mut self, budget: usize) -> Formula {
        if budget <= 1 {
            return self.atom();
        }
        // weights: atom 2, not 3, and 3, D 3, C 2
        let pick = self.rng.gen_range(0..13);
        let coalition = self.coalitions[self.rng.gen_range(0..self.coalitions.len())];
        match pick {
            0..=1 => self.atom(),
            2..=4 => Formula::not(self.formula(budget - 1)),
            5..=7 if budget >= 3 => {
                let left = self.rng.gen_range(1..budget - 1);
                let l = self.formula(left);
                let r = self.formula(budget - 1 - left);
                Formula::and(l, r)
            }
            8..=10 => Formula::d(coalition, self.formula(budget - 1)),
            11..=12 => Formula::c(coalition, self.formula(budget - 1)),
            _ => Formula::not(self.formula(budget - 1)),
        }
    }

    fn atom(&mut self) -> Formula {
        Formula::atom(self.atoms[self.rng.gen_range(0..self.atoms.len())])
    }
}

/// Connected components of `R_a ∪ R_b ∪ ...` as sorted state lists.
pub fn components(model: &PseudoModel) -> Vec<Vec<usize>> {
    let n = model.states();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut i = 0;
        while i < members.len() {
            let s = members[i];
            i += 1;
            for r in model.relations.values() {
                for &t in r.successors(s) {
                    if comp[t] == usize::MAX {
                        comp[t] = id;
                        members.push(t);
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// The submodel on `states`, renumbered in order.
pub fn restrict(model: &PseudoModel, states: &[usize]) -> PseudoModel {
    let pos = |s: usize| states.iter().position(|&x| x == s);
    let relations = model
        .relations
        .iter()
        .map(|(c, r)| {
            let pairs = r.pairs().filter_map(|(s, t)| Some((pos(s)?, pos(t)?)));
            (*c, Relation::from_pairs(states.len(), pairs))
        })
        .collect();
    PseudoModel {
        universe: model.universe.clone(),
        labeling: states.iter().map(|&s| model.labeling[s].clone()).collect(),
        relations,
        root: Some(0),
    }
}

pub type Shape = (Vec<(Coalition, Vec<(usize, usize)>)>, Vec<BTreeSet<cmael_core::Symbol>>);

/// A key shared exactly by isomorphic models: the least relabeled form over
/// all state permutations. Only meant for a handful of states.
pub fn canonical_key(model: &PseudoModel) -> Shape {
    let n = model.states();
    let mut best: Option<Shape> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let relations = model
            .relations
            .iter()
            .map(|(c, r)| {
                let mut pairs: Vec<(usize, usize)> = r.pairs().map(|(s, t)| (perm[s], perm[t])).collect();
                pairs.sort_unstable();
                (*c, pairs)
            })
            .collect();
        let mut labeling = vec![BTreeSet::new(); n];
        for s in 0..n {
            labeling[perm[s]] = model.labeling[s].clone();
        }
        let key = (relations, labeling);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            return best.unwrap();
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
