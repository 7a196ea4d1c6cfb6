//! Prestate and state elimination, and the eventuality marking procedure.

use alloc::vec::Vec;
use core::fmt;

use crate::closure::Closure;
use crate::label::Label;
use crate::pretableau::Pretableau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EliminationRule {
    /// Patent inconsistency.
    E1,
    /// Some `¬D_A φ` lost all its successors.
    E2,
    /// Unrealized eventuality.
    E3,
}

impl fmt::Display for EliminationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EliminationRule::E1 => "E1",
            EliminationRule::E2 => "E2",
            EliminationRule::E3 => "E3",
        };
        f.write_str(s)
    }
}

/// One entry of the elimination log.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Removal {
    pub state: usize,
    pub rule: EliminationRule,
    /// E1: the formula whose negation is also present; E2: the orphaned
    /// mark; E3: the eventuality.
    pub witness: usize,
}

/// An eventuality `¬C_A φ` and its position in the eventuality list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eventuality {
    pub formula: usize,
    pub position: usize,
}

/// How a state came to realize an eventuality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkStep {
    /// The state contains `¬φ`.
    Seed,
    /// A marked edge to a state marked in an earlier round.
    Via { mark: usize, target: usize },
}

/// Result of the marking procedure for one eventuality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub eventuality: usize,
    /// Per state: `Some` when it realizes the eventuality.
    pub steps: Vec<Option<MarkStep>>,
}

impl Marking {
    pub fn is_marked(&self, state: usize) -> bool {
        self.steps[state].is_some()
    }

    pub fn marked(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|_| i))
    }

    /// The realizing chain from `state`: `(state, mark)` hops ending in a
    /// state that contains `¬φ`. `None` when unmarked.
    pub fn witness_path(&self, state: usize) -> Option<(Vec<(usize, usize)>, usize)> {
        let mut hops = Vec::new();
        let mut at = state;
        loop {
            match self.steps[at]? {
                MarkStep::Seed => return Some((hops, at)),
                MarkStep::Via { mark, target } => {
                    hops.push((at, mark));
                    at = target;
                }
            }
        }
    }
}

/// The tableau after prestate elimination, with the state elimination record.
#[derive(Clone, Debug)]
pub struct Tableau {
    pub labels: Vec<Label>,
    /// Per state: `(mark, target state)`, sorted and duplicate-free.
    pub edges: Vec<Vec<(usize, usize)>>,
    pub alive: Vec<bool>,
    pub log: Vec<Removal>,
    /// Log lengths at the end of each stage: initial, after E1, after each cycle.
    pub stages: Vec<usize>,
    pub eventualities: Vec<Eventuality>,
}

impl Tableau {
    /// PR: drops the prestates and rewires every `Δ →χ Γ` to `Δ →χ Δ'` for
    /// each `Δ' ∈ states(Γ)`.
    pub fn from_pretableau(pt: &Pretableau) -> Tableau {
        let labels: Vec<Label> = pt.states.iter().map(|s| s.label.clone()).collect();
        let edges = pt
            .states
            .iter()
            .map(|s| {
                let mut out: Vec<(usize, usize)> = s
                    .edges
                    .iter()
                    .flat_map(|&(mark, g)| pt.prestates[g].states.iter().map(move |&d| (mark, d)))
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        Tableau {
            alive: alloc::vec![true; labels.len()],
            labels,
            edges,
            log: Vec::new(),
            stages: alloc::vec![0],
            eventualities: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn alive_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.labels.len()).filter(|&i| self.alive[i])
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    fn remove(&mut self, state: usize, rule: EliminationRule, witness: usize) {
        debug_assert!(self.alive[state]);
        self.alive[state] = false;
        self.log.push(Removal {
            state,
            rule,
            witness,
        });
    }

    /// Alive successors of `state` along arrows marked `mark`.
    pub fn successors(&self, state: usize, mark: usize) -> impl Iterator<Item = usize> + '_ {
        let lo = self.edges[state].partition_point(|&(m, _)| m < mark);
        self.edges[state][lo..]
            .iter()
            .take_while(move |&&(m, _)| m == mark)
            .map(|&(_, t)| t)
            .filter(|&t| self.alive[t])
    }

    /// E1 over every alive state.
    pub fn apply_e1(&mut self, closure: &Closure) -> usize {
        let mut removed = 0;
        for s in 0..self.len() {
            if self.alive[s] {
                if let Some(w) = closure.patent_clash(&self.labels[s]) {
                    self.remove(s, EliminationRule::E1, w);
                    removed += 1;
                }
            }
        }
        removed
    }

    /// The first mark of `state` with no alive successor.
    pub fn orphaned_mark(&self, closure: &Closure, state: usize) -> Option<usize> {
        self.labels[state]
            .iter()
            .filter(|&i| closure.diamond(i).is_some())
            .find(|&mark| self.successors(state, mark).next().is_none())
    }

    /// E2, repeated until no state is removed.
    pub fn apply_e2(&mut self, closure: &Closure) -> usize {
        let mut removed = 0;
        loop {
            let mut changed = false;
            for s in 0..self.len() {
                if self.alive[s] {
                    if let Some(mark) = self.orphaned_mark(closure, s) {
                        self.remove(s, EliminationRule::E2, mark);
                        removed += 1;
                        changed = true;
                    }
                }
            }
            if !changed {
                return removed;
            }
        }
    }

    /// Marks every alive state that realizes the eventuality `¬C_A φ`.
    ///
    /// Seeds are the alive states holding `¬φ`. Each round then marks the
    /// unmarked alive states with an arrow `¬D_B ψ`, `B ⊆ A`, into a state
    /// marked in an earlier round; the lowest-indexed such target is kept as
    /// the witness.
    pub fn mark_realized(&self, closure: &Closure, eventuality: usize) -> Marking {
        let (coalition, body) = closure
            .eventuality(eventuality)
            .expect("marking needs an eventuality");
        let goal = closure.neg(body);
        let n = self.len();
        let mut steps: Vec<Option<MarkStep>> = alloc::vec![None; n];
        for s in self.alive_states() {
            if self.labels[s].contains(goal) {
                steps[s] = Some(MarkStep::Seed);
            }
        }
        loop {
            let mut round = Vec::new();
            for s in self.alive_states() {
                if steps[s].is_some() {
                    continue;
                }
                let best = self.edges[s]
                    .iter()
                    .filter(|&&(m, t)| {
                        self.alive[t]
                            && steps[t].is_some()
                            && closure
                                .diamond(m)
                                .is_some_and(|(b, _)| b.is_subset(coalition))
                    })
                    .min_by_key(|&&(m, t)| (t, m));
                if let Some(&(mark, target)) = best {
                    round.push((s, MarkStep::Via { mark, target }));
                }
            }
            if round.is_empty() {
                break;
            }
            for (s, step) in round {
                steps[s] = Some(step);
            }
        }
        Marking {
            eventuality,
            steps,
        }
    }

    /// E3 for one eventuality.
    pub fn apply_e3(&mut self, closure: &Closure, eventuality: usize) -> usize {
        let marking = self.mark_realized(closure, eventuality);
        let mut removed = 0;
        for s in 0..self.len() {
            if self.alive[s] && self.labels[s].contains(eventuality) && !marking.is_marked(s) {
                self.remove(s, EliminationRule::E3, eventuality);
                removed += 1;
            }
        }
        removed
    }

    /// Eventualities of the alive states, in order of first occurrence
    /// scanning states by index.
    pub fn collect_eventualities(&self, closure: &Closure) -> Vec<Eventuality> {
        let mut seen = closure.empty_label();
        let mut out = Vec::new();
        for s in self.alive_states() {
            for i in self.labels[s].iter() {
                if closure.eventuality(i).is_some() && seen.insert(i) {
                    out.push(Eventuality {
                        formula: i,
                        position: out.len(),
                    });
                }
            }
        }
        out
    }

    /// The state elimination phase: E1 once, then cycles of E3 for each
    /// eventuality in turn, each followed by E2 to its fixpoint, until a
    /// whole cycle removes nothing.
    pub fn eliminate(&mut self, closure: &Closure) {
        self.apply_e1(closure);
        self.stages.push(self.log.len());
        self.eventualities = self.collect_eventualities(closure);
        if self.eventualities.is_empty() {
            self.apply_e2(closure);
            self.stages.push(self.log.len());
            return;
        }
        loop {
            let mut removed = 0;
            for k in 0..self.eventualities.len() {
                let ev = self.eventualities[k].formula;
                removed += self.apply_e3(closure, ev);
                removed += self.apply_e2(closure);
            }
            self.stages.push(self.log.len());
            if removed == 0 {
                break;
            }
        }
    }

    /// Alive flags after replaying the first `upto` log entries.
    pub fn replay(&self, upto: usize) -> Vec<bool> {
        let mut alive = alloc::vec![true; self.len()];
        for r in &self.log[..upto] {
            alive[r.state] = false;
        }
        alive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agents::Universe;
    use crate::expand::{Expander, Rules};
    use crate::parse::parse;
    use crate::pretableau::build_pretableau;

    fn tableau(text: &str) -> (Closure, Tableau) {
        let u = Universe::new(["a", "b"]).unwrap();
        let theta = parse(text, &u).unwrap();
        let c = Closure::new(&theta, &u);
        let e = Expander::new(&c, Rules::Cut);
        let root = c.label_of([&theta]).unwrap();
        let pt = build_pretableau(&e, &root, 1 << 16).unwrap();
        (c.clone(), Tableau::from_pretableau(&pt))
    }

    #[test]
    fn e1_removes_exactly_the_clashing_states() {
        let (c, mut t) = tableau("p & ~D{a}p");
        let clashing: Vec<usize> = (0..t.len()).filter(|&s| c.patent_clash(&t.labels[s]).is_some()).collect();
        assert_eq!(t.apply_e1(&c), clashing.len());
        assert!(t.log.iter().all(|r| r.rule == EliminationRule::E1));
        assert_eq!(t.apply_e1(&c), 0);
    }

    #[test]
    fn unrealizable_eventuality_is_removed_by_e3() {
        // Every state reachable from the root keeps p, so ~C{a,b}p is never met.
        let (c, mut t) = tableau("~C{a,b}p & C{a,b}p");
        t.eliminate(&c);
        assert_eq!(t.alive_count(), 0);
        // The induction axiom: p spreads along every a and b step.
        let (c, mut t) = tableau("~(C{a,b}(p -> D{a}p & D{b}p) -> (p -> C{a,b}p))");
        t.eliminate(&c);
        assert_eq!(t.alive_count(), 0);
        assert!(t.log.iter().any(|r| r.rule == EliminationRule::E3));
    }

    #[test]
    fn marking_follows_witness_paths() {
        let (c, mut t) = tableau("~C{a,b}p & p");
        t.eliminate(&c);
        let ev = t.eventualities[0].formula;
        let m = t.mark_realized(&c, ev);
        let not_body = c.neg(c.eventuality(ev).unwrap().1);
        for s in m.marked() {
            let (hops, end) = m.witness_path(s).unwrap();
            assert!(t.labels[end].contains(not_body));
            let mut at = s;
            for (from, mark) in hops {
                assert_eq!(from, at);
                at = t.successors(from, mark).find(|&d| m.is_marked(d)).unwrap();
            }
        }
    }

    #[test]
    fn replay_reconstructs_every_stage() {
        let (c, mut t) = tableau("~C{a,b}p & D{a}p & ~D{b}~p");
        t.eliminate(&c);
        assert!(t.replay(0).iter().all(|&a| a));
        assert_eq!(t.replay(t.log.len()), t.alive);
        for w in t.stages.windows(2) {
            let (x, y) = (t.replay(w[0]), t.replay(w[1]));
            assert!(x.iter().zip(&y).all(|(a, b)| *a || !*b));
        }
    }
}
