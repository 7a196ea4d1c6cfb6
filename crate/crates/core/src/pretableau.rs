//! Construction phase: prestates, states, and the SR/DR alternation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::closure::Closure;
use crate::expand::Expander;
use crate::label::Label;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PretableauError {
    /// More prestates plus states than the configured cap.
    NodeLimit(usize),
}

impl fmt::Display for PretableauError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PretableauError::NodeLimit(n) => write!(f, "pretableau exceeded {n} nodes"),
        }
    }
}

impl core::error::Error for PretableauError {}

#[derive(Clone, Debug)]
pub struct Prestate {
    pub label: Label,
    /// States `Δ` with `Γ ⟹ Δ`, ascending; filled by SR.
    pub states: Vec<usize>,
    pub expanded: bool,
}

#[derive(Clone, Debug)]
pub struct State {
    pub label: Label,
    pub patently_inconsistent: bool,
    /// `(mark, prestate)` pairs; filled by DR. Marks are `¬D_A φ` indices.
    pub edges: Vec<(usize, usize)>,
    pub expanded: bool,
}

/// Prestates and states, connected by SR's double arrows and DR's marked arrows.
///
/// Node indices are creation order. Labels are unique within each kind.
#[derive(Clone, Debug)]
pub struct Pretableau {
    pub prestates: Vec<Prestate>,
    pub states: Vec<State>,
    prestate_ids: BTreeMap<Label, usize>,
    state_ids: BTreeMap<Label, usize>,
    max_nodes: usize,
}

impl Pretableau {
    pub fn new(max_nodes: usize) -> Pretableau {
        Pretableau {
            prestates: Vec::new(),
            states: Vec::new(),
            prestate_ids: BTreeMap::new(),
            state_ids: BTreeMap::new(),
            max_nodes,
        }
    }

    pub fn node_count(&self) -> usize {
        self.prestates.len() + self.states.len()
    }

    fn check_cap(&self) -> Result<(), PretableauError> {
        if self.node_count() >= self.max_nodes {
            Err(PretableauError::NodeLimit(self.max_nodes))
        } else {
            Ok(())
        }
    }

    pub fn prestate_id(&self, label: &Label) -> Option<usize> {
        self.prestate_ids.get(label).copied()
    }

    pub fn state_id(&self, label: &Label) -> Option<usize> {
        self.state_ids.get(label).copied()
    }

    /// Returns `(id, created)`.
    pub fn add_prestate(&mut self, label: Label) -> Result<(usize, bool), PretableauError> {
        if let Some(&id) = self.prestate_ids.get(&label) {
            return Ok((id, false));
        }
        self.check_cap()?;
        let id = self.prestates.len();
        self.prestate_ids.insert(label.clone(), id);
        self.prestates.push(Prestate {
            label,
            states: Vec::new(),
            expanded: false,
        });
        Ok((id, true))
    }

    fn add_state(&mut self, closure: &Closure, label: Label) -> Result<(usize, bool), PretableauError> {
        if let Some(&id) = self.state_ids.get(&label) {
            return Ok((id, false));
        }
        self.check_cap()?;
        let id = self.states.len();
        self.state_ids.insert(label.clone(), id);
        self.states.push(State {
            patently_inconsistent: closure.patent_clash(&label).is_some(),
            label,
            edges: Vec::new(),
            expanded: false,
        });
        Ok((id, true))
    }

    /// SR: adds every extension of the prestate (see [`Expander::extensions`]) as a
    /// state (reusing equal labels) and links it by a double arrow.
    ///
    /// Returns the newly created states; a second application is a no-op.
    pub fn apply_sr(
        &mut self,
        expander: &Expander<'_>,
        prestate: usize,
    ) -> Result<Vec<usize>, PretableauError> {
        if self.prestates[prestate].expanded {
            return Ok(Vec::new());
        }
        let exts = expander.extensions(&self.prestates[prestate].label);
        let mut targets = Vec::with_capacity(exts.len());
        let mut created = Vec::new();
        for ext in exts {
            let (id, fresh) = self.add_state(expander.closure(), ext)?;
            targets.push(id);
            if fresh {
                created.push(id);
            }
        }
        targets.sort_unstable();
        targets.dedup();
        let p = &mut self.prestates[prestate];
        p.states = targets;
        p.expanded = true;
        Ok(created)
    }

    /// DR: for each `¬D_A φ` of a consistent state, links it to the prestate
    /// `{¬φ} ∪ {D_A' ψ ∈ Δ : A' ⊆ A} ∪ {¬D_A' ψ ∈ Δ : A' ⊆ A}`.
    ///
    /// Returns the newly created prestates; inconsistent or already
    /// processed states yield nothing.
    pub fn apply_dr(&mut self, closure: &Closure, state: usize) -> Result<Vec<usize>, PretableauError> {
        let st = &self.states[state];
        if st.expanded || st.patently_inconsistent {
            return Ok(Vec::new());
        }
        let label = st.label.clone();
        let mut edges = Vec::new();
        let mut created = Vec::new();
        for mark in label.iter() {
            let Some((coalition, body)) = closure.diamond(mark) else {
                continue;
            };
            let target = dr_prestate(closure, &label, coalition, body);
            let (id, fresh) = self.add_prestate(target)?;
            edges.push((mark, id));
            if fresh {
                created.push(id);
            }
        }
        let st = &mut self.states[state];
        st.edges = edges;
        st.expanded = true;
        Ok(created)
    }
}

/// The prestate DR creates for the mark `¬D_A φ` of `label`.
pub fn dr_prestate(
    closure: &Closure,
    label: &Label,
    coalition: crate::agents::Coalition,
    body: usize,
) -> Label {
    use crate::closure::Shape;
    let mut out = closure.empty_label();
    out.insert(closure.neg(body));
    for i in label.iter() {
        let inherited = match closure.shape(i) {
            Shape::D(c, _) => c.is_subset(coalition),
            Shape::Not(j) => matches!(closure.shape(j), Shape::D(c, _) if c.is_subset(coalition)),
            _ => false,
        };
        if inherited {
            out.insert(i);
        }
    }
    out
}

/// Builds the pretableau from the root prestate `roots`, alternating SR over
/// the prestates created in the previous round with DR over the new states,
/// until nothing new appears.
pub fn build_pretableau(
    expander: &Expander<'_>,
    roots: &Label,
    max_nodes: usize,
) -> Result<Pretableau, PretableauError> {
    let closure = expander.closure();
    let mut pt = Pretableau::new(max_nodes);
    let (root, _) = pt.add_prestate(roots.clone())?;
    let mut new_prestates = alloc::vec![root];
    while !new_prestates.is_empty() {
        let mut new_states = Vec::new();
        for p in core::mem::take(&mut new_prestates) {
            new_states.extend(pt.apply_sr(expander, p)?);
        }
        for s in new_states {
            new_prestates.extend(pt.apply_dr(closure, s)?);
        }
    }
    Ok(pt)
}
