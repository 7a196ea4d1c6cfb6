//! Finite relational structures and the Hintikka-to-pseudo-model conversion.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::agents::{Coalition, Universe};
use crate::closure::{Closure, Shape};
use crate::formula::{Formula, Symbol};
use crate::hintikka::HintikkaStructure;

/// A binary relation over states `0..n`, stored as sorted successor rows in
/// one flat array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    /// Row `s` is `targets[offsets[s]..offsets[s + 1]]`.
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation {
            offsets: alloc::vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Relation {
        Relation {
            offsets: (0..=n).collect(),
            targets: (0..n).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Relation {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        Relation::from_sorted(n, &pairs)
    }

    fn from_sorted(n: usize, pairs: &[(usize, usize)]) -> Relation {
        let mut offsets = alloc::vec![0; n + 1];
        for &(s, t) in pairs {
            assert!(s < n && t < n, "pair ({s}, {t}) outside 0..{n}");
            offsets[s + 1] += 1;
        }
        for s in 0..n {
            offsets[s + 1] += offsets[s];
        }
        Relation {
            offsets,
            targets: pairs.iter().map(|&(_, t)| t).collect(),
        }
    }

    /// The equivalence relation whose classes are `blocks[i]`-valued groups.
    pub fn from_blocks(blocks: &[usize]) -> Relation {
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by_key(|&s| (blocks[s], s));
        let mut pairs = Vec::new();
        let mut start = 0;
        while start < order.len() {
            let mut end = start;
            while end < order.len() && blocks[order[end]] == blocks[order[start]] {
                end += 1;
            }
            for &s in &order[start..end] {
                pairs.extend(order[start..end].iter().map(|&t| (s, t)));
            }
            start = end;
        }
        pairs.sort_unstable();
        Relation::from_sorted(blocks.len(), &pairs)
    }

    pub fn states(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.successors(s).binary_search(&t).is_ok()
    }

    pub fn successors(&self, s: usize) -> &[usize] {
        &self.targets[self.offsets[s]..self.offsets[s + 1]]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.states()).flat_map(move |s| self.successors(s).iter().map(move |&t| (s, t)))
    }

    pub fn pair_count(&self) -> usize {
        self.targets.len()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.states()).all(|s| self.contains(s, s))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(s, t)| self.contains(t, s))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(s, t)| self.successors(t).iter().all(|&u| self.contains(s, u)))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs().all(|(s, t)| other.contains(s, t))
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        let pairs: Vec<(usize, usize)> = self.pairs().filter(|&(s, t)| other.contains(s, t)).collect();
        Relation::from_sorted(self.states(), &pairs)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        let mut pairs = Vec::with_capacity(self.pair_count() + other.pair_count());
        for s in 0..self.states() {
            let (x, y) = (self.successors(s), other.successors(s));
            let (mut i, mut j) = (0, 0);
            while i < x.len() || j < y.len() {
                let t = if j == y.len() || (i < x.len() && x[i] <= y[j]) {
                    x[i]
                } else {
                    y[j]
                };
                while i < x.len() && x[i] == t {
                    i += 1;
                }
                while j < y.len() && y[j] == t {
                    j += 1;
                }
                pairs.push((s, t));
            }
        }
        Relation::from_sorted(self.states(), &pairs)
    }

    pub fn union_with(&mut self, other: &Relation) {
        *self = self.union(other);
    }

    /// Reflexive, symmetric and transitive closure.
    pub fn equivalence_closure(&self) -> Relation {
        let n = self.states();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (s, t) in self.pairs() {
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let blocks: Vec<usize> = (0..n).map(|s| find(&mut parent, s)).collect();
        Relation::from_blocks(&blocks)
    }

    /// Reflexive, transitive closure.
    pub fn reflexive_transitive_closure(&self) -> Relation {
        if self.is_symmetric() {
            return self.equivalence_closure();
        }
        let n = self.states();
        let mut pairs = Vec::new();
        let mut seen = alloc::vec![false; n];
        let mut reached = Vec::new();
        for s in 0..n {
            reached.clear();
            reached.push(s);
            seen[s] = true;
            let mut next = 0;
            while next < reached.len() {
                let x = reached[next];
                next += 1;
                for &y in self.successors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        reached.push(y);
                    }
                }
            }
            for &t in &reached {
                seen[t] = false;
            }
            reached.sort_unstable();
            pairs.extend(reached.iter().map(|&t| (s, t)));
        }
        Relation::from_sorted(n, &pairs)
    }
}

/// A finite structure with one relation per coalition and an atomic labeling.
///
/// Coalitions without an entry have the empty relation. A model that
/// passes [`crate::validate_frame`] as a pseudo-frame is a pseudo-model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoModel {
    pub universe: Universe,
    pub labeling: Vec<BTreeSet<Symbol>>,
    pub relations: BTreeMap<Coalition, Relation>,
    pub root: Option<usize>,
}

impl PseudoModel {
    pub fn states(&self) -> usize {
        self.labeling.len()
    }

    pub fn relation(&self, c: Coalition) -> Option<&Relation> {
        self.relations.get(&c)
    }

    /// Disjoint union; truth at a state is preserved in the union.
    pub fn disjoint_union<'a>(universe: &Universe, parts: impl IntoIterator<Item = &'a PseudoModel>) -> PseudoModel {
        let mut labeling = Vec::new();
        let mut pairs: BTreeMap<Coalition, Vec<(usize, usize)>> = BTreeMap::new();
        for m in parts {
            let off = labeling.len();
            labeling.extend(m.labeling.iter().cloned());
            for (c, r) in &m.relations {
                pairs
                    .entry(*c)
                    .or_default()
                    .extend(r.pairs().map(|(s, t)| (s + off, t + off)));
            }
        }
        let n = labeling.len();
        PseudoModel {
            universe: universe.clone(),
            labeling,
            relations: pairs
                .into_iter()
                .map(|(c, ps)| (c, Relation::from_pairs(n, ps)))
                .collect(),
            root: None,
        }
    }
}

/// Builds the pseudo-model of a Hintikka structure: `R'_A` is the
/// equivalence closure of the union of `R_B` over `B ⊇ A`, and each state
/// keeps the atoms of its label.
pub fn hintikka_to_pseudo_model(h: &HintikkaStructure, closure: &Closure) -> PseudoModel {
    let n = h.labels.len();
    let universe = closure.universe();
    let relations = universe
        .coalitions()
        .map(|a| {
            let mut union = Relation::empty(n);
            for (b, r) in &h.relations {
                if a.is_subset(*b) {
                    union.union_with(r);
                }
            }
            (a, union.equivalence_closure())
        })
        .collect();
    let labeling = h
        .labels
        .iter()
        .map(|l| {
            l.iter()
                .filter(|&i| closure.shape(i) == Shape::Atom)
                .map(|i| match closure.formula(i) {
                    Formula::Atom(p) => p.clone(),
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect();
    PseudoModel {
        universe: universe.clone(),
        labeling,
        relations,
        root: Some(h.root),
    }
}
