//! Epistemic spaces: a finite set of named states, each with a belief set
//! represented by its models.

use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Signature, WorldSet};

/// Dense index of a state within its space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicSpace {
    name: String,
    sig: Signature,
    names: Vec<String>,
    beliefs: Vec<WorldSet>,
}

impl EpistemicSpace {
    /// Builds a space from `(state name, belief models)` pairs, in index order.
    pub fn new<I, S>(name: impl Into<String>, sig: Signature, states: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, WorldSet)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut beliefs = Vec::new();
        for (state, models) in states {
            let state = state.into();
            if names.contains(&state) {
                return Err(Error::InvalidSpace(format!("duplicate state name `{state}`")));
            }
            if !sig.contains_set(models) {
                return Err(Error::InvalidSpace(format!(
                    "belief set of `{state}` mentions worlds outside the signature"
                )));
            }
            names.push(state);
            beliefs.push(models);
        }
        if names.is_empty() {
            return Err(Error::InvalidSpace("a space needs at least one state".into()));
        }
        Ok(EpistemicSpace {
            name: name.into(),
            sig,
            names,
            beliefs,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + Clone {
        (0..self.names.len()).map(StateId)
    }

    pub fn state_name(&self, state: StateId) -> &str {
        &self.names[state.0]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name).map(StateId)
    }

    /// ⟦Ψ⟧
    pub fn beliefs(&self, state: StateId) -> WorldSet {
        self.beliefs[state.0]
    }

    pub fn belief_sets(&self) -> &[WorldSet] {
        &self.beliefs
    }

    /// No state holds the inconsistent belief set.
    pub fn is_globally_consistent(&self) -> bool {
        self.beliefs.iter().all(|b| !b.is_empty())
    }

    /// Lowest-index state whose belief set is `target`.
    pub fn resolve_state(&self, target: WorldSet) -> Result<StateId> {
        self.beliefs
            .iter()
            .position(|b| *b == target)
            .map(StateId)
            .ok_or(Error::NoSuchBeliefState { target })
    }

    /// Copy of this space under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        EpistemicSpace {
            name: name.into(),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig_a() -> Signature {
        Signature::new(["a"]).unwrap()
    }

    #[test]
    fn global_consistency() {
        let sig = sig_a();
        let a = sig.parse_worlds(["a"]).unwrap();
        let na = sig.parse_worlds(["-a"]).unwrap();
        let with_bot =
            EpistemicSpace::new("e", sig.clone(), [("PsiBot", WorldSet::EMPTY), ("PsiA", a)]).unwrap();
        assert!(!with_bot.is_globally_consistent());
        let consistent = EpistemicSpace::new(
            "g",
            sig.clone(),
            [("PsiA", a), ("PsiNA", na), ("PsiANA", sig.full())],
        )
        .unwrap();
        assert!(consistent.is_globally_consistent());
    }

    #[test]
    fn resolve_prefers_lowest_index() {
        let sig = sig_a();
        let a = sig.parse_worlds(["a"]).unwrap();
        let sp = EpistemicSpace::new(
            "dup",
            sig.clone(),
            [("X", WorldSet::EMPTY), ("Y", a), ("Z", a)],
        )
        .unwrap();
        assert_eq!(sp.resolve_state(a).unwrap(), StateId(1));
        assert_eq!(sp.resolve_state(WorldSet::EMPTY).unwrap(), StateId(0));
        let na = sig.parse_worlds(["-a"]).unwrap();
        assert_eq!(
            sp.resolve_state(na),
            Err(Error::NoSuchBeliefState { target: na })
        );
    }

    #[test]
    fn rejects_bad_spaces() {
        let sig = sig_a();
        assert!(EpistemicSpace::new("e", sig.clone(), Vec::<(String, WorldSet)>::new()).is_err());
        assert!(EpistemicSpace::new(
            "e",
            sig.clone(),
            [("X", WorldSet::EMPTY), ("X", WorldSet::EMPTY)]
        )
        .is_err());
        assert!(EpistemicSpace::new("e", sig, [("X", WorldSet(0b100))]).is_err());
    }
}
