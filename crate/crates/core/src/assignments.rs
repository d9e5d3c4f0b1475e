//! Total preorders and credibility-limited assignments.
//!
//! Synthesis builds the compatible operator from an assignment; extraction
//! reads an assignment back off an operator.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::logic::{Signature, World, WorldSet};
use crate::operators::SemanticOperator;
use crate::postulates::{CheckResult, FaithfulnessRule, Subject, Witness};
use crate::space::{EpistemicSpace, StateId};

/// A total preorder stored as an ordered partition of its domain; layer 0
/// holds the most preferred worlds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TotalPreorder {
    domain: WorldSet,
    layers: Vec<WorldSet>,
}

impl TotalPreorder {
    pub fn new(domain: WorldSet, layers: Vec<WorldSet>) -> Result<Self> {
        let mut seen = WorldSet::EMPTY;
        for layer in &layers {
            if layer.is_empty() {
                return Err(Error::InvalidPreorder("empty layer".into()));
            }
            if !layer.intersection(seen).is_empty() {
                return Err(Error::InvalidPreorder("layers overlap".into()));
            }
            seen = seen.union(*layer);
        }
        if seen != domain {
            return Err(Error::InvalidPreorder(format!(
                "layers cover {seen:?}, domain is {domain:?}"
            )));
        }
        Ok(TotalPreorder { domain, layers })
    }

    /// Preorder whose domain is the union of the given layers.
    pub fn from_layers(layers: Vec<WorldSet>) -> Result<Self> {
        let domain = layers.iter().fold(WorldSet::EMPTY, |acc, l| acc.union(*l));
        Self::new(domain, layers)
    }

    pub fn empty() -> Self {
        TotalPreorder {
            domain: WorldSet::EMPTY,
            layers: Vec::new(),
        }
    }

    /// Converts a relation on `domain` into layers, failing when the relation
    /// is not total or not transitive.
    pub fn from_relation<F>(domain: WorldSet, leq: F) -> std::result::Result<Self, RelationDefect>
    where
        F: Fn(World, World) -> bool,
    {
        for x in domain.iter() {
            for y in domain.iter() {
                if !leq(x, y) && !leq(y, x) {
                    return Err(RelationDefect::Incomparable(x, y));
                }
            }
        }
        for x in domain.iter() {
            for y in domain.iter().filter(|y| leq(x, *y)) {
                if let Some(z) = domain.iter().find(|z| leq(y, *z) && !leq(x, *z)) {
                    return Err(RelationDefect::Intransitive(x, y, z));
                }
            }
        }
        let mut rest = domain;
        let mut layers = Vec::new();
        while !rest.is_empty() {
            let layer: WorldSet = rest
                .iter()
                .filter(|w| rest.iter().all(|v| leq(*w, v)))
                .collect();
            debug_assert!(!layer.is_empty());
            rest = rest.difference(layer);
            layers.push(layer);
        }
        Ok(TotalPreorder { domain, layers })
    }

    pub fn domain(&self) -> WorldSet {
        self.domain
    }

    pub fn layers(&self) -> &[WorldSet] {
        &self.layers
    }

    pub fn layer_of(&self, world: World) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(world))
    }

    /// `first ≼ second`; false when either world is outside the domain.
    pub fn leq(&self, first: World, second: World) -> bool {
        match (self.layer_of(first), self.layer_of(second)) {
            (Some(a), Some(b)) => a <= b,
            _ => false,
        }
    }

    pub fn equivalent(&self, first: World, second: World) -> bool {
        self.leq(first, second) && self.leq(second, first)
    }

    pub fn strictly_less(&self, first: World, second: World) -> bool {
        self.leq(first, second) && !self.leq(second, first)
    }

    /// min(X, ≼) for `X` inside the domain.
    pub fn min_elements(&self, set: WorldSet) -> Result<WorldSet> {
        if !set.is_subset(self.domain) {
            return Err(Error::Domain(format!(
                "{set:?} is not contained in the preorder's domain {:?}",
                self.domain
            )));
        }
        Ok(self.min_within(set))
    }

    /// min(X ∩ domain, ≼).
    pub fn min_within(&self, set: WorldSet) -> WorldSet {
        self.layers
            .iter()
            .map(|l| l.intersection(set))
            .find(|m| !m.is_empty())
            .unwrap_or(WorldSet::EMPTY)
    }

    /// Re-derives totality and transitivity from `leq`.
    pub fn validate(&self) -> std::result::Result<(), RelationDefect> {
        Self::from_relation(self.domain, |x, y| self.leq(x, y)).map(|_| ())
    }
}

/// Why a relation is not a total preorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationDefect {
    Incomparable(World, World),
    /// `x ≼ y ≼ z` but not `x ≼ z`.
    Intransitive(World, World, World),
}

impl RelationDefect {
    pub fn describe(&self, sig: &Signature) -> String {
        let r = |w: World| sig.render_world(w);
        match *self {
            RelationDefect::Incomparable(x, y) => {
                format!("{} and {} are incomparable", r(x), r(y))
            }
            RelationDefect::Intransitive(x, y, z) => format!(
                "{} <= {} <= {} but not {} <= {}",
                r(x),
                r(y),
                r(z),
                r(x),
                r(z)
            ),
        }
    }
}

/// Whether the inconsistent input is credible at a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FalsumFlag {
    /// ⊤: inconsistent input falls back to the prior belief set.
    Top,
    /// ⊥: inconsistent input is accepted; requires every world to be credible.
    Bot,
}

impl FalsumFlag {
    pub fn name(self) -> &'static str {
        match self {
            FalsumFlag::Top => "top",
            FalsumFlag::Bot => "bot",
        }
    }
}

impl fmt::Display for FalsumFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FalsumFlag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "top" | "1" => Ok(FalsumFlag::Top),
            "bot" | "0" => Ok(FalsumFlag::Bot),
            _ => Err(Error::InvalidAssignment(format!("flag must be `top` or `bot`, got `{s}`"))),
        }
    }
}

/// The triple assigned to one state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateAssignment {
    pub credible: WorldSet,
    pub order: TotalPreorder,
    pub flag: FalsumFlag,
}

impl StateAssignment {
    pub fn new(credible: WorldSet, order: TotalPreorder, flag: FalsumFlag) -> Self {
        StateAssignment {
            credible,
            order,
            flag,
        }
    }
}

/// One [`StateAssignment`] per state of a space, in state order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    entries: Vec<StateAssignment>,
}

impl Assignment {
    /// Checks that each order lives on its credible set and that belief
    /// models are credible. A `Bot` flag also needs `C = Ω`.
    pub fn new(space: &EpistemicSpace, entries: Vec<StateAssignment>) -> Result<Self> {
        if entries.len() != space.len() {
            return Err(Error::InvalidAssignment(format!(
                "{} entries for {} states",
                entries.len(),
                space.len()
            )));
        }
        let full = space.signature().full();
        for (s, e) in space.states().zip(&entries) {
            let name = space.state_name(s);
            if e.order.domain() != e.credible {
                return Err(Error::InvalidAssignment(format!(
                    "order at `{name}` is not over its credible set"
                )));
            }
            if !e.credible.is_subset(full) {
                return Err(Error::InvalidAssignment(format!(
                    "credible set at `{name}` leaves the signature"
                )));
            }
            if !space.beliefs(s).is_subset(e.credible) {
                return Err(Error::InvalidAssignment(format!(
                    "belief models of `{name}` are not all credible"
                )));
            }
            if e.flag == FalsumFlag::Bot && e.credible != full {
                return Err(Error::InvalidAssignment(format!(
                    "`{name}` has flag bot but its credible set is not every world"
                )));
            }
        }
        Ok(Assignment { entries })
    }

    /// For entries already known to be valid.
    pub(crate) fn from_entries_unchecked(entries: Vec<StateAssignment>) -> Self {
        Assignment { entries }
    }

    pub fn get(&self, state: StateId) -> &StateAssignment {
        &self.entries[state.0]
    }

    pub fn entries(&self) -> &[StateAssignment] {
        &self.entries
    }
}

/// Faithfulness: at every state with consistent beliefs, the belief models
/// form exactly the minimal layer.
pub fn is_faithful(space: &EpistemicSpace, assignment: &Assignment) -> CheckResult {
    for s in space.states() {
        let bel = space.beliefs(s);
        if bel.is_empty() {
            continue;
        }
        let e = assignment.get(s);
        for first in bel.iter() {
            for second in bel.iter().filter(|w| w.0 > first.0) {
                if !e.order.equivalent(first, second) {
                    return CheckResult::violated(
                        Subject::Faithfulness,
                        Witness::Faithfulness {
                            rule: FaithfulnessRule::Clfa1,
                            state: s,
                            first,
                            second,
                        },
                    );
                }
            }
        }
        for first in bel.iter() {
            for second in e.credible.difference(bel).iter() {
                if !e.order.strictly_less(first, second) {
                    return CheckResult::violated(
                        Subject::Faithfulness,
                        Witness::Faithfulness {
                            rule: FaithfulnessRule::Clfa2,
                            state: s,
                            first,
                            second,
                        },
                    );
                }
            }
        }
    }
    CheckResult::satisfied(Subject::Faithfulness)
}

/// The belief models a compatible operator must produce at `(state, input)`.
///
/// Minimal credible input models when the input meets the credible set, the
/// empty set for inconsistent input under a `Bot` flag, the prior otherwise.
/// The minimum is taken over `⟦α⟧ ∩ C_Ψ`, the only part of the input the
/// preorder ranks.
pub fn compatible_target(
    space: &EpistemicSpace,
    assignment: &Assignment,
    state: StateId,
    input: WorldSet,
) -> WorldSet {
    let e = assignment.get(state);
    let credible_input = input.intersection(e.credible);
    if !credible_input.is_empty() {
        e.order.min_within(credible_input)
    } else if input.is_empty() && e.flag == FalsumFlag::Bot {
        WorldSet::EMPTY
    } else {
        space.beliefs(state)
    }
}

/// The operator compatible with `assignment`, routing every target belief set
/// to its lowest-index host state.
pub fn synthesize(space: &Arc<EpistemicSpace>, assignment: &Assignment) -> Result<SemanticOperator> {
    SemanticOperator::try_from_fn(space.clone(), |s, input| {
        let target = compatible_target(space, assignment, s, input);
        space
            .resolve_state(target)
            .map_err(|_| Error::UnhostedTarget {
                state: s,
                input,
                target,
            })
    })
}

/// Compatibility of an assignment with an operator, first failing cell as
/// witness.
pub fn is_compatible(
    space: &EpistemicSpace,
    assignment: &Assignment,
    op: &SemanticOperator,
) -> CheckResult {
    for s in space.states() {
        for input in space.signature().world_sets() {
            let expected = compatible_target(space, assignment, s, input);
            let actual = op.result(s, input);
            if expected != actual {
                return CheckResult::violated(
                    Subject::Compatibility,
                    Witness::Compatibility {
                        state: s,
                        input,
                        expected,
                        actual,
                    },
                );
            }
        }
    }
    CheckResult::satisfied(Subject::Compatibility)
}

/// Reads an assignment off an operator:
///
/// * `C_Ψ` is the set of worlds `ω` with `⟦Ψ ∘ φ_ω⟧ = {ω}`;
/// * the flag is `Bot` iff `⟦Ψ⟧ ≠ ∅` and `⟦Ψ ∘ ⊥⟧ = ∅`;
/// * `ω1 ≼_Ψ ω2` iff `ω1 ∈ ⟦Ψ ∘ φ_{ω1,ω2}⟧`.
///
/// Fails with [`Error::NotAPreorder`] or [`Error::ConstraintViolation`] when
/// the operator is not an extended credibility-limited revision.
pub fn extract(op: &SemanticOperator) -> Result<Assignment> {
    let space = op.space();
    let sig = space.signature();
    let full = sig.full();
    let mut entries = Vec::with_capacity(space.len());
    for s in space.states() {
        let bel = space.beliefs(s);
        let credible: WorldSet = sig
            .worlds()
            .filter(|w| op.result(s, WorldSet::singleton(*w)) == WorldSet::singleton(*w))
            .collect();
        let flag = if !bel.is_empty() && op.result(s, WorldSet::EMPTY).is_empty() {
            FalsumFlag::Bot
        } else {
            FalsumFlag::Top
        };
        let order = TotalPreorder::from_relation(credible, |x, y| {
            op.result(s, WorldSet::pair(x, y)).contains(x)
        })
        .map_err(|detail| Error::NotAPreorder {
            state: s,
            detail: detail.describe(sig),
        })?;
        if !bel.is_subset(credible) {
            return Err(Error::ConstraintViolation {
                state: s,
                detail: format!(
                    "belief models {} not contained in credible set {}",
                    sig.render_set(bel),
                    sig.render_set(credible)
                ),
            });
        }
        if flag == FalsumFlag::Bot && credible != full {
            return Err(Error::ConstraintViolation {
                state: s,
                detail: format!(
                    "inconsistent input accepted but credible set {} is not every world",
                    sig.render_set(credible)
                ),
            });
        }
        entries.push(StateAssignment::new(credible, order, flag));
    }
    Assignment::new(space, entries)
}
