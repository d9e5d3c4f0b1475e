//! Belief change operators stored as total transition tables keyed by the
//! model set of the input.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::logic::{models, Formula, WorldSet};
use crate::space::{EpistemicSpace, StateId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticOperator {
    space: Arc<EpistemicSpace>,
    /// Row-major: `table[state * input_count + mask]`.
    table: Vec<StateId>,
}

impl SemanticOperator {
    pub fn new(space: Arc<EpistemicSpace>, table: Vec<StateId>) -> Result<Self> {
        let expected = space.len() * space.signature().input_count();
        if table.len() != expected {
            return Err(Error::InvalidOperator(format!(
                "table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|t| t.0 >= space.len()) {
            return Err(Error::InvalidOperator(format!("target {bad} is not a state")));
        }
        Ok(SemanticOperator { space, table })
    }

    pub fn from_fn<F>(space: Arc<EpistemicSpace>, mut f: F) -> Self
    where
        F: FnMut(StateId, WorldSet) -> StateId,
    {
        let sig = space.signature().clone();
        let table = space
            .states()
            .flat_map(|s| sig.world_sets().map(move |a| (s, a)))
            .map(|(s, a)| f(s, a))
            .collect();
        SemanticOperator::new(space, table).expect("closure maps into the space")
    }

    /// Like [`from_fn`](Self::from_fn) for fallible constructions.
    pub fn try_from_fn<F>(space: Arc<EpistemicSpace>, mut f: F) -> Result<Self>
    where
        F: FnMut(StateId, WorldSet) -> Result<StateId>,
    {
        let mut table = Vec::with_capacity(space.len() * space.signature().input_count());
        for s in space.states() {
            for a in space.signature().world_sets() {
                table.push(f(s, a)?);
            }
        }
        SemanticOperator::new(space, table)
    }

    pub fn space(&self) -> &EpistemicSpace {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<EpistemicSpace> {
        &self.space
    }

    pub fn table(&self) -> &[StateId] {
        &self.table
    }

    /// Ψ ∘ α
    pub fn apply(&self, state: StateId, formula: &Formula) -> StateId {
        self.apply_set(state, models(formula, self.space.signature()))
    }

    pub fn apply_set(&self, state: StateId, input: WorldSet) -> StateId {
        self.table[state.0 * self.space.signature().input_count() + input.index()]
    }

    /// ⟦Ψ ∘ α⟧ for an input given by its models.
    #[inline]
    pub fn result(&self, state: StateId, input: WorldSet) -> WorldSet {
        self.space.beliefs(self.apply_set(state, input))
    }

    /// Same outcome belief set on every cell; target states may differ when
    /// they share a belief set.
    pub fn equivalent(&self, other: &SemanticOperator) -> bool {
        self.differences(other).next().is_none()
    }

    /// Cells `(state, input)` where the resulting belief sets differ.
    pub fn differences<'a>(
        &'a self,
        other: &'a SemanticOperator,
    ) -> impl Iterator<Item = (StateId, WorldSet)> + 'a {
        let inputs = self.space.signature().input_count();
        self.table
            .iter()
            .zip(other.table.iter())
            .enumerate()
            .filter(move |(_, (l, r))| {
                self.space.beliefs(**l) != other.space.beliefs(**r)
            })
            .map(move |(i, _)| (StateId(i / inputs), WorldSet((i % inputs) as u16)))
    }

    /// The table with every target replaced by its belief set.
    pub fn belief_table(&self) -> Vec<WorldSet> {
        self.table.iter().map(|t| self.space.beliefs(*t)).collect()
    }
}
