//! Hintikka structure extraction from an open final tableau.
//!
//! Every alive state `Δ` and eventuality position `k` give a component
//! `T(Δ, ξ_k)`. When `ξ_k ∈ Δ` the component is the realizing chain found by
//! the marking procedure, and every chain node gets one leaf per remaining
//! mark; otherwise it is a root with one leaf per mark. A leaf reached from a
//! component for `ξ_k` is replaced by the component for `ξ_(k+1)`, and equal
//! `(state, eventuality)` pairs share one component, so the result is finite.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::agents::Coalition;
use crate::closure::{Closure, Shape};
use crate::hintikka::HintikkaStructure;
use crate::model::Relation;
use crate::solver::{Outcome, Verdict};
use crate::tableau::{Marking, Tableau};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractError {
    /// The final tableau has no alive state containing the input.
    Closed,
    /// An alive state holds an eventuality the marking did not realize.
    Unmarked { state: usize, eventuality: usize },
    /// A mark of an alive state has no alive successor.
    Orphaned { state: usize, mark: usize },
    /// An eventuality was dropped along its own demanded mark.
    Dropped { node: usize, eventuality: usize },
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractError::Closed => write!(f, "the final tableau is closed"),
            ExtractError::Unmarked { state, eventuality } => {
                write!(f, "state {state} does not realize eventuality #{eventuality}")
            }
            ExtractError::Orphaned { state, mark } => {
                write!(f, "state {state} has no successor for mark #{mark}")
            }
            ExtractError::Dropped { node, eventuality } => {
                write!(f, "node {node} loses eventuality #{eventuality} along its demand")
            }
        }
    }
}

impl core::error::Error for ExtractError {}

/// A leaf slot: the node it hangs off, the mark that demanded it, and the
/// tableau state chosen for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub parent: usize,
    pub mark: usize,
    pub state: usize,
}

/// One component, over tableau states. Node 0 is the root; node `i + 1` is
/// the spine child of node `i` via `spine[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeComponent {
    pub state: usize,
    /// Eventuality formula index, when the component realizes one.
    pub eventuality: Option<usize>,
    pub nodes: Vec<usize>,
    pub spine: Vec<usize>,
    pub leaves: Vec<Leaf>,
}

fn first_successor(t: &Tableau, state: usize, mark: usize) -> Result<usize, ExtractError> {
    t.successors(state, mark)
        .next()
        .ok_or(ExtractError::Orphaned { state, mark })
}

/// Builds `T(state, ξ)`. `marking` must be the final marking of `ξ` when
/// `ξ ∈ state`; otherwise the component is a simple tree.
pub fn build_component(
    tableau: &Tableau,
    closure: &Closure,
    state: usize,
    eventuality: Option<(usize, &Marking)>,
) -> Result<TreeComponent, ExtractError> {
    let (nodes, spine, realizes) = match eventuality {
        Some((ev, marking)) if tableau.labels[state].contains(ev) => {
            let (hops, end) = marking.witness_path(state).ok_or(ExtractError::Unmarked {
                state,
                eventuality: ev,
            })?;
            let mut nodes: Vec<usize> = hops.iter().map(|&(s, _)| s).collect();
            nodes.push(end);
            let spine = hops.iter().map(|&(_, m)| m).collect();
            (nodes, spine, Some(ev))
        }
        _ => (alloc::vec![state], Vec::new(), None),
    };
    let mut leaves = Vec::new();
    for (i, &s) in nodes.iter().enumerate() {
        for mark in tableau.labels[s].iter() {
            if closure.diamond(mark).is_none() || spine.get(i) == Some(&mark) {
                continue;
            }
            leaves.push(Leaf {
                parent: i,
                mark,
                state: first_successor(tableau, s, mark)?,
            });
        }
    }
    Ok(TreeComponent {
        state,
        eventuality: realizes,
        nodes,
        spine,
        leaves,
    })
}

/// Stitches the components of an open outcome into a Hintikka structure.
///
/// The root is the component for the least-indexed alive state holding the
/// input, paired with the first eventuality.
pub fn extract_hintikka(outcome: &Outcome) -> Result<HintikkaStructure, ExtractError> {
    if outcome.verdict() == Verdict::Unsat {
        return Err(ExtractError::Closed);
    }
    let tableau = &outcome.tableau;
    let closure = &outcome.closure;
    let evs: Vec<usize> = tableau.eventualities.iter().map(|e| e.formula).collect();
    let markings: Vec<Marking> = evs
        .iter()
        .map(|&ev| tableau.mark_realized(closure, ev))
        .collect();
    let next = |k: Option<usize>| k.map(|k| (k + 1) % evs.len());

    let mut states: Vec<usize> = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut roots: BTreeMap<(usize, Option<usize>), usize> = BTreeMap::new();
    let mut queue: VecDeque<(TreeComponent, usize, Option<usize>)> = VecDeque::new();

    let mut open = |state: usize,
                    k: Option<usize>,
                    states: &mut Vec<usize>,
                    queue: &mut VecDeque<(TreeComponent, usize, Option<usize>)>|
     -> Result<usize, ExtractError> {
        if let Some(&root) = roots.get(&(state, k)) {
            return Ok(root);
        }
        let comp = build_component(tableau, closure, state, k.map(|k| (evs[k], &markings[k])))?;
        let base = states.len();
        states.extend(comp.nodes.iter().copied());
        roots.insert((state, k), base);
        queue.push_back((comp, base, k));
        Ok(base)
    };

    let start = outcome.root_states()[0];
    let first = if evs.is_empty() { None } else { Some(0) };
    let root = open(start, first, &mut states, &mut queue)?;
    while let Some((comp, base, k)) = queue.pop_front() {
        for (i, &mark) in comp.spine.iter().enumerate() {
            edges.push((base + i, mark, base + i + 1));
        }
        for leaf in &comp.leaves {
            let child = open(leaf.state, next(k), &mut states, &mut queue)?;
            edges.push((base + leaf.parent, leaf.mark, child));
        }
    }

    let n = states.len();
    let labels = states.iter().map(|&s| tableau.labels[s].clone()).collect();
    let mut pairs: BTreeMap<Coalition, Vec<(usize, usize)>> = BTreeMap::new();
    for &(from, mark, to) in &edges {
        let (c, _) = closure.diamond(mark).expect("edges carry marks");
        pairs.entry(c).or_default().push((from, to));
    }
    let relations: BTreeMap<Coalition, Relation> = pairs
        .into_iter()
        .map(|(c, ps)| (c, Relation::from_pairs(n, ps)))
        .collect();
    let h = HintikkaStructure {
        universe: closure.universe().clone(),
        labels,
        origins: states.iter().map(|&s| Some(s)).collect(),
        relations,
        root,
    };
    check_carried(closure, &h, &edges)?;
    Ok(h)
}

/// Every eventuality `¬C_A φ` of a node either holds `¬φ` there or has a
/// demanded mark `¬D_a(φ ∧ C_A φ)` whose child keeps `¬C_A φ` or `¬φ`.
fn check_carried(
    closure: &Closure,
    h: &HintikkaStructure,
    edges: &[(usize, usize, usize)],
) -> Result<(), ExtractError> {
    let mut out: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); h.states()];
    for &(from, mark, to) in edges {
        out[from].push((mark, to));
    }
    for (node, label) in h.labels.iter().enumerate() {
        for ev in label.iter() {
            let Some((a, body)) = closure.eventuality(ev) else {
                continue;
            };
            let goal = closure.neg(body);
            if label.contains(goal) {
                continue;
            }
            let positive = closure.neg(ev);
            let kept = out[node].iter().any(|&(mark, to)| {
                let demanded = match closure.diamond(mark) {
                    Some((c, inner)) => {
                        c.is_subset(a)
                            && matches!(closure.shape(inner), Shape::And(l, r) if l == body && r == positive)
                    }
                    None => false,
                };
                demanded && (h.labels[to].contains(ev) || h.labels[to].contains(goal))
            });
            if !kept {
                return Err(ExtractError::Dropped {
                    node,
                    eventuality: ev,
                });
            }
        }
    }
    Ok(())
}
