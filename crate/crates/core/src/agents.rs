//! Agents, the declared agent universe, and coalitions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Largest supported agent universe.
pub const MAX_AGENTS: usize = 16;

/// Index of an agent in its [`Universe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Agent(pub u8);

impl Agent {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A nonempty set of agents, stored as a bitset over agent ids.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coalition(u16);

impl Coalition {
    /// Returns `None` for the empty set.
    pub fn from_bits(bits: u16) -> Option<Coalition> {
        (bits != 0).then_some(Coalition(bits))
    }

    pub fn singleton(agent: Agent) -> Coalition {
        Coalition(1 << agent.0)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, agent: Agent) -> bool {
        self.0 & (1 << agent.0) != 0
    }

    pub fn is_subset(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: Coalition) -> Option<Coalition> {
        Coalition::from_bits(self.0 & other.0)
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in increasing id order.
    pub fn agents(self) -> impl Iterator<Item = Agent> {
        let bits = self.0;
        (0..16u8).filter(move |i| bits & (1 << i) != 0).map(Agent)
    }

    /// Every coalition `B` with `B ⊆ self`.
    pub fn subsets(self) -> impl Iterator<Item = Coalition> {
        let full = self.0;
        (1..=full)
            .filter(move |b| b & !full == 0)
            .map(Coalition)
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.agents().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a.0)?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniverseError {
    Empty,
    TooMany(usize),
    BadName(String),
    Duplicate(String),
}

impl fmt::Display for UniverseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniverseError::Empty => write!(f, "the agent list is empty"),
            UniverseError::TooMany(n) => {
                write!(f, "{n} agents declared, at most {MAX_AGENTS} are supported")
            }
            UniverseError::BadName(name) => write!(
                f,
                "invalid agent name {name:?} (use letters, digits and '_')"
            ),
            UniverseError::Duplicate(name) => write!(f, "agent {name:?} declared twice"),
        }
    }
}

impl core::error::Error for UniverseError {}

/// The fixed, ordered set of agent names for one solver run.
///
/// Agent ids are dense, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Universe, UniverseError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.as_ref();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(UniverseError::BadName(name.to_string()));
            }
            if out.iter().any(|n| n == name) {
                return Err(UniverseError::Duplicate(name.to_string()));
            }
            out.push(name.to_string());
        }
        if out.is_empty() {
            return Err(UniverseError::Empty);
        }
        if out.len() > MAX_AGENTS {
            return Err(UniverseError::TooMany(out.len()));
        }
        Ok(Universe { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The logic degenerates with a single agent (`D_a φ ↔ C_a φ`); still decidable.
    pub fn is_single_agent(&self) -> bool {
        self.names.len() == 1
    }

    pub fn agent(&self, name: &str) -> Option<Agent> {
        self.names.iter().position(|n| n == name).map(|i| Agent(i as u8))
    }

    pub fn name(&self, agent: Agent) -> &str {
        &self.names[agent.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn agents(&self) -> impl Iterator<Item = Agent> {
        (0..self.names.len() as u8).map(Agent)
    }

    /// The coalition of all agents.
    pub fn full(&self) -> Coalition {
        Coalition(((1u32 << self.names.len()) - 1) as u16)
    }

    /// Whether every member of `c` is a declared agent.
    pub fn covers(&self, c: Coalition) -> bool {
        c.is_subset(self.full())
    }

    /// All nonempty coalitions, ordered by bitset value.
    pub fn coalitions(&self) -> impl Iterator<Item = Coalition> {
        self.full().subsets()
    }

    /// Every `A'` with `c ⊆ A' ⊆ Σ`, including `c` itself.
    pub fn supersets(&self, c: Coalition) -> impl Iterator<Item = Coalition> {
        self.coalitions().filter(move |s| c.is_subset(*s))
    }

    pub fn coalition(&self, names: &[&str]) -> Option<Coalition> {
        let mut bits = 0u16;
        for n in names {
            bits |= 1 << self.agent(n)?.0;
        }
        Coalition::from_bits(bits)
    }

    /// Comma-joined, name-sorted member list; the coalition key used in model files.
    pub fn coalition_key(&self, c: Coalition) -> String {
        let mut members: Vec<&str> = c.agents().map(|a| self.name(a)).collect();
        members.sort_unstable();
        members.join(",")
    }

    /// Member names in id order, as written inside `D{...}`.
    pub fn coalition_names(&self, c: Coalition) -> String {
        let members: Vec<&str> = c.agents().map(|a| self.name(a)).collect();
        members.join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_universes() {
        assert_eq!(Universe::new::<_, &str>([]), Err(UniverseError::Empty));
        assert_eq!(
            Universe::new(["a", "a"]),
            Err(UniverseError::Duplicate("a".into()))
        );
        assert!(matches!(Universe::new(["a,b"]), Err(UniverseError::BadName(_))));
        let many: Vec<String> = (0..17).map(|i| alloc::format!("x{i}")).collect();
        assert_eq!(Universe::new(&many), Err(UniverseError::TooMany(17)));
        assert!(Universe::new(&many[..16]).is_ok());
    }

    #[test]
    fn coalition_algebra() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let ab = u.coalition(&["a", "b"]).unwrap();
        let bc = u.coalition(&["b", "c"]).unwrap();
        assert_eq!(ab.intersection(bc), u.coalition(&["b"]));
        assert_eq!(ab.intersection(u.coalition(&["c"]).unwrap()), None);
        assert!(u.coalition(&["a"]).unwrap().is_subset(ab));
        assert_eq!(u.coalitions().count(), 7);
        assert_eq!(u.supersets(ab).count(), 2);
        assert_eq!(ab.subsets().count(), 3);
        assert_eq!(u.coalition_key(u.coalition(&["c", "a"]).unwrap()), "a,c");
        assert_eq!(Coalition::from_bits(0), None);
    }

    #[test]
    fn coalition_key_sorts_by_name() {
        let u = Universe::new(["zed", "amy"]).unwrap();
        assert_eq!(u.coalition_key(u.full()), "amy,zed");
        assert_eq!(u.coalition_names(u.full()), "zed,amy");
    }
}
