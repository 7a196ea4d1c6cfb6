//! JSON forms of pseudo-models and elimination logs.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::{anyhow, bail, Context, Result};
use cmael_core::{Closure, PseudoModel, Relation, Removal, Universe};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub agents: Vec<String>,
    pub states: Vec<u64>,
    pub labeling: BTreeMap<u64, Vec<String>>,
    pub relations: RelationsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsJson {
    #[serde(rename = "D", default)]
    pub d: BTreeMap<String, Vec<[u64; 2]>>,
}

/// Serializable form of a model. State `i` gets id `i`; every coalition of
/// the universe is listed, keyed by its sorted agent names.
pub fn model_to_json(model: &PseudoModel) -> ModelJson {
    let u = &model.universe;
    let n = model.states();
    let mut d = BTreeMap::new();
    for c in u.coalitions() {
        let pairs = match model.relation(c) {
            Some(r) => r.pairs().map(|(s, t)| [s as u64, t as u64]).collect(),
            None => Vec::new(),
        };
        d.insert(u.coalition_key(c), pairs);
    }
    ModelJson {
        agents: u.names().to_vec(),
        states: (0..n as u64).collect(),
        labeling: (0..n)
            .map(|s| (s as u64, model.labeling[s].iter().map(|p| p.to_string()).collect()))
            .collect(),
        relations: RelationsJson { d },
        root: model.root.map(|r| r as u64),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn model_to_string(model: &PseudoModel) -> String {
    let mut s = serde_json::to_string_pretty(&model_to_json(model)).expect("models serialize");
    s.push('\n');
    s
}

/// Reads a model; state ids may be any distinct integers and are renumbered
/// in the order listed. Also returns the original ids.
pub fn model_from_json(json: &ModelJson) -> Result<(PseudoModel, Vec<u64>)> {
    let universe = Universe::new(json.agents.iter().map(String::as_str))
        .map_err(|e| anyhow!("bad agent list: {e}"))?;
    let mut index = BTreeMap::new();
    for (i, &id) in json.states.iter().enumerate() {
        if index.insert(id, i).is_some() {
            bail!("state {id} is listed twice");
        }
    }
    let lookup = |id: u64| -> Result<usize> {
        index
            .get(&id)
            .copied()
            .ok_or_else(|| anyhow!("unknown state {id}"))
    };
    let n = json.states.len();
    let mut labeling = vec![BTreeSet::new(); n];
    for (&id, atoms) in &json.labeling {
        let s = lookup(id)?;
        for a in atoms {
            labeling[s].insert(a.as_str().into());
        }
    }
    let mut relations = BTreeMap::new();
    for (key, pairs) in &json.relations.d {
        let names: Vec<&str> = key.split(',').map(str::trim).collect();
        let c = universe
            .coalition(&names)
            .ok_or_else(|| anyhow!("bad coalition key {key:?}"))?;
        let pairs = pairs
            .iter()
            .map(|&[s, t]| Ok((lookup(s)?, lookup(t)?)))
            .collect::<Result<Vec<_>>>()?;
        let r = Relation::from_pairs(n, pairs);
        if relations.insert(c, r).is_some() {
            bail!("coalition {key:?} is listed twice");
        }
    }
    let root = json.root.map(lookup).transpose()?;
    let model = PseudoModel {
        universe,
        labeling,
        relations,
        root,
    };
    Ok((model, json.states.clone()))
}

pub fn model_from_str(text: &str) -> Result<(PseudoModel, Vec<u64>)> {
    let json: ModelJson = serde_json::from_str(text).context("malformed model JSON")?;
    model_from_json(&json)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalJson {
    pub state: usize,
    pub rule: String,
    pub witness: String,
}

pub fn log_to_json(closure: &Closure, log: &[Removal]) -> Vec<RemovalJson> {
    log.iter()
        .map(|r| RemovalJson {
            state: r.state,
            rule: r.rule.to_string(),
            witness: closure.render(r.witness),
        })
        .collect()
}

pub fn log_to_string(closure: &Closure, log: &[Removal]) -> String {
    let mut s = serde_json::to_string_pretty(&log_to_json(closure, log)).expect("logs serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{
            "agents": ["a", "b"],
            "states": [7, 9],
            "labeling": {"7": ["p"], "9": []},
            "relations": {"D": {"a": [[7, 7], [9, 9], [7, 9], [9, 7]], "b,a": [[7, 7], [9, 9]]}},
            "root": 9
        }"#;
        let (m, ids) = model_from_str(text).unwrap();
        assert_eq!(ids, [7, 9]);
        assert_eq!(m.root, Some(1));
        let u = &m.universe;
        assert_eq!(m.relation(u.full()).unwrap().pair_count(), 2);
        let back = model_to_json(&m);
        assert_eq!(back.relations.d["a,b"], [[0, 0], [1, 1]]);
        assert_eq!(back.relations.d["b"], Vec::<[u64; 2]>::new());
        let (again, _) = model_from_json(&back).unwrap();
        assert_eq!(again.labeling, m.labeling);
    }

    #[test]
    fn rejects_unknown_states() {
        let text = r#"{"agents": ["a"], "states": [0], "labeling": {"1": ["p"]}, "relations": {}}"#;
        assert!(model_from_str(text).is_err());
        let text = r#"{"agents": ["a"], "states": [0], "labeling": {}, "relations": {"D": {"z": []}}}"#;
        assert!(model_from_str(text).is_err());
    }
}
