//! Exhaustive postulate checking with counterexample witnesses.
//!
//! Every postulate is checked on the model side, writing `M(s, A)` for the
//! belief models of `s ∘ α` where `⟦α⟧ = A`:
//!
//! | postulate        | model-level test                                          |
//! |------------------|-----------------------------------------------------------|
//! | R1               | `M(s,A) ⊆ A`                                              |
//! | R2, CL2, ECL2    | `A ∩ ⟦s⟧ ≠ ∅ ⇒ M(s,A) = A ∩ ⟦s⟧`                           |
//! | R3               | `A ≠ ∅ ⇒ M(s,A) ≠ ∅`                                      |
//! | R4, CL4, ECL5    | holds by representation                                   |
//! | R5               | `M(s,A) ∩ B ⊆ M(s,A∩B)`                                   |
//! | R6               | `M(s,A) ∩ B ≠ ∅ ⇒ M(s,A∩B) ⊆ M(s,A) ∩ B`                  |
//! | CL1, ECL1        | `M(s,A) ⊆ A` or `M(s,A) = ⟦s⟧`                            |
//! | CL3              | `M(s,A) ≠ ∅`                                              |
//! | CL3wcp, ECL3     | `M(s,A) = ∅ ⇒ ⟦s⟧ = ∅ or A = ∅`                           |
//! | WCP              | `⟦s⟧ ≠ ∅ and A ≠ ∅ ⇒ M(s,A) ≠ ∅`                          |
//! | CL3u, ECL4       | `M(s,A) ≠ ∅ and A ⊆ B ⇒ M(s,B) ≠ ∅`                       |
//! | CL5, ECL6        | `M(s,A) ⊆ A and A ⊆ B ⇒ M(s,B) ⊆ B`                       |
//! | CL6, ECL7        | `M(s,A∪B) ∈ {M(s,A), M(s,B), M(s,A) ∪ M(s,B)}`            |
//!
//! Belief-set intersection is model-set union, which is why CL6 uses `∪`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::logic::{World, WorldSet};
use crate::operators::SemanticOperator;
use crate::space::StateId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PostulateId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    CL1,
    CL2,
    CL3,
    CL4,
    CL5,
    CL6,
    ECL1,
    ECL2,
    ECL3,
    ECL4,
    ECL5,
    ECL6,
    ECL7,
    WCP,
    CL3wcp,
    CL3u,
}

impl PostulateId {
    pub const ALL: [PostulateId; 22] = [
        PostulateId::R1,
        PostulateId::R2,
        PostulateId::R3,
        PostulateId::R4,
        PostulateId::R5,
        PostulateId::R6,
        PostulateId::CL1,
        PostulateId::CL2,
        PostulateId::CL3,
        PostulateId::CL4,
        PostulateId::CL5,
        PostulateId::CL6,
        PostulateId::ECL1,
        PostulateId::ECL2,
        PostulateId::ECL3,
        PostulateId::ECL4,
        PostulateId::ECL5,
        PostulateId::ECL6,
        PostulateId::ECL7,
        PostulateId::WCP,
        PostulateId::CL3wcp,
        PostulateId::CL3u,
    ];

    pub const AGM: [PostulateId; 6] = [
        PostulateId::R1,
        PostulateId::R2,
        PostulateId::R3,
        PostulateId::R4,
        PostulateId::R5,
        PostulateId::R6,
    ];

    pub const CL: [PostulateId; 6] = [
        PostulateId::CL1,
        PostulateId::CL2,
        PostulateId::CL3,
        PostulateId::CL4,
        PostulateId::CL5,
        PostulateId::CL6,
    ];

    pub const ECL: [PostulateId; 7] = [
        PostulateId::ECL1,
        PostulateId::ECL2,
        PostulateId::ECL3,
        PostulateId::ECL4,
        PostulateId::ECL5,
        PostulateId::ECL6,
        PostulateId::ECL7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PostulateId::R1 => "R1",
            PostulateId::R2 => "R2",
            PostulateId::R3 => "R3",
            PostulateId::R4 => "R4",
            PostulateId::R5 => "R5",
            PostulateId::R6 => "R6",
            PostulateId::CL1 => "CL1",
            PostulateId::CL2 => "CL2",
            PostulateId::CL3 => "CL3",
            PostulateId::CL4 => "CL4",
            PostulateId::CL5 => "CL5",
            PostulateId::CL6 => "CL6",
            PostulateId::ECL1 => "ECL1",
            PostulateId::ECL2 => "ECL2",
            PostulateId::ECL3 => "ECL3",
            PostulateId::ECL4 => "ECL4",
            PostulateId::ECL5 => "ECL5",
            PostulateId::ECL6 => "ECL6",
            PostulateId::ECL7 => "ECL7",
            PostulateId::WCP => "WCP",
            PostulateId::CL3wcp => "CL3wcp",
            PostulateId::CL3u => "CL3u",
        }
    }

    fn rule(self) -> Rule {
        use PostulateId::*;
        match self {
            R1 => Rule::Success,
            R2 | CL2 | ECL2 => Rule::Vacuity,
            R3 => Rule::ConsistentInput,
            R4 | CL4 | ECL5 => Rule::SyntaxIndependence,
            R5 => Rule::Superexpansion,
            R6 => Rule::Subexpansion,
            CL1 | ECL1 => Rule::RelativeSuccess,
            CL3 => Rule::StrongConsistency,
            CL3wcp | ECL3 => Rule::InconsistencyRooted,
            WCP => Rule::WeakConsistencyPreservation,
            CL3u | ECL4 => Rule::UpwardConsistency,
            CL5 | ECL6 => Rule::SuccessMonotonicity,
            CL6 | ECL7 => Rule::Trichotomy,
        }
    }

    /// Quantifies over pairs of inputs.
    pub fn is_pairwise(self) -> bool {
        self.rule().arity() == 2
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PostulateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PostulateId::ALL
            .iter()
            .copied()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown postulate `{s}`")))
    }
}

/// The distinct semantic tests behind the postulate names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Success,
    Vacuity,
    ConsistentInput,
    SyntaxIndependence,
    Superexpansion,
    Subexpansion,
    RelativeSuccess,
    StrongConsistency,
    InconsistencyRooted,
    WeakConsistencyPreservation,
    UpwardConsistency,
    SuccessMonotonicity,
    Trichotomy,
}

impl Rule {
    fn arity(self) -> usize {
        match self {
            Rule::SyntaxIndependence => 0,
            Rule::Superexpansion
            | Rule::Subexpansion
            | Rule::UpwardConsistency
            | Rule::SuccessMonotonicity
            | Rule::Trichotomy => 2,
            _ => 1,
        }
    }

    fn violated_single(self, bel: WorldSet, a: WorldSet, m: WorldSet) -> bool {
        match self {
            Rule::Success => !m.is_subset(a),
            Rule::Vacuity => {
                let both = bel.intersection(a);
                !both.is_empty() && m != both
            }
            Rule::ConsistentInput => !a.is_empty() && m.is_empty(),
            Rule::RelativeSuccess => !m.is_subset(a) && m != bel,
            Rule::StrongConsistency => m.is_empty(),
            Rule::InconsistencyRooted => m.is_empty() && !(bel.is_empty() || a.is_empty()),
            Rule::WeakConsistencyPreservation => {
                let premise = !bel.is_empty() && !a.is_empty();
                !(!premise || !m.is_empty())
            }
            _ => unreachable!("not a single-input rule"),
        }
    }

    fn violated_pair(self, op: &SemanticOperator, s: StateId, a: WorldSet, b: WorldSet) -> bool {
        let m = |x: WorldSet| op.result(s, x);
        match self {
            Rule::Superexpansion => !m(a).intersection(b).is_subset(m(a.intersection(b))),
            Rule::Subexpansion => {
                let mab = m(a).intersection(b);
                !mab.is_empty() && !m(a.intersection(b)).is_subset(mab)
            }
            Rule::UpwardConsistency => {
                a.is_subset(b) && !m(a).is_empty() && m(b).is_empty()
            }
            Rule::SuccessMonotonicity => a.is_subset(b) && m(a).is_subset(a) && !m(b).is_subset(b),
            Rule::Trichotomy => {
                let (ma, mb, mu) = (m(a), m(b), m(a.union(b)));
                mu != ma && mu != mb && mu != ma.union(mb)
            }
            _ => unreachable!("not a pair rule"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
    HoldsByRepresentation,
}

impl Verdict {
    pub fn holds(self) -> bool {
        !matches!(self, Verdict::Violated)
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "violated",
            Verdict::HoldsByRepresentation => "holds_by_representation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaithfulnessRule {
    /// Two models of the state sit in different layers.
    Clfa1,
    /// A non-model is not strictly above a model.
    Clfa2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Input {
        state: StateId,
        input: WorldSet,
    },
    InputPair {
        state: StateId,
        first: WorldSet,
        second: WorldSet,
    },
    Faithfulness {
        rule: FaithfulnessRule,
        state: StateId,
        first: World,
        second: World,
    },
    Compatibility {
        state: StateId,
        input: WorldSet,
        expected: WorldSet,
        actual: WorldSet,
    },
}

impl Witness {
    pub fn state(&self) -> StateId {
        match *self {
            Witness::Input { state, .. }
            | Witness::InputPair { state, .. }
            | Witness::Faithfulness { state, .. }
            | Witness::Compatibility { state, .. } => state,
        }
    }
}

/// What a [`CheckResult`] talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    Postulate(PostulateId),
    Faithfulness,
    Compatibility,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Postulate(p) => write!(f, "{p}"),
            Subject::Faithfulness => f.write_str("faithfulness"),
            Subject::Compatibility => f.write_str("revision-compatibility"),
        }
    }
}

/// A verdict with a witness exactly when the verdict is `Violated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckResult {
    pub subject: Subject,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn satisfied(subject: Subject) -> Self {
        CheckResult {
            subject,
            verdict: Verdict::Satisfied,
            witness: None,
        }
    }

    pub fn violated(subject: Subject, witness: Witness) -> Self {
        CheckResult {
            subject,
            verdict: Verdict::Violated,
            witness: Some(witness),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pairwise_atom_cap: usize,
}

impl CheckConfig {
    pub const DEFAULT_PAIRWISE_ATOM_CAP: usize = 3;

    pub fn new(pairwise_atom_cap: usize) -> Result<Self> {
        if !(1..=crate::logic::MAX_ATOMS).contains(&pairwise_atom_cap) {
            return Err(Error::Config(format!(
                "pairwise atom cap must be within 1..={}, got {pairwise_atom_cap}",
                crate::logic::MAX_ATOMS
            )));
        }
        Ok(CheckConfig { pairwise_atom_cap })
    }

    pub fn pairwise_atom_cap(&self) -> usize {
        self.pairwise_atom_cap
    }
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            pairwise_atom_cap: Self::DEFAULT_PAIRWISE_ATOM_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Search {
    /// Stop at the first violation in iteration order.
    First,
    /// Least degenerate violation; ties go to iteration order.
    Best,
}

/// Number of inconsistent sets among the prior belief set and the inputs.
fn degeneracy(bel: WorldSet, inputs: &[WorldSet]) -> usize {
    usize::from(bel.is_empty()) + inputs.iter().filter(|x| x.is_empty()).count()
}

fn find_violation(op: &SemanticOperator, rule: Rule, mode: Search) -> Option<Witness> {
    let space = op.space();
    let sig = space.signature();
    let mut best: Option<(usize, Witness)> = None;
    for s in space.states() {
        let bel = space.beliefs(s);
        for a in sig.world_sets() {
            match rule.arity() {
                1 => {
                    if rule.violated_single(bel, a, op.result(s, a)) {
                        let rank = degeneracy(bel, &[a]);
                        let witness = Witness::Input { state: s, input: a };
                        if mode == Search::First || rank == 0 {
                            return Some(witness);
                        }
                        if best.is_none_or(|(r, _)| rank < r) {
                            best = Some((rank, witness));
                        }
                    }
                }
                2 => {
                    for b in sig.world_sets() {
                        if rule.violated_pair(op, s, a, b) {
                            let rank = degeneracy(bel, &[a, b]);
                            let witness = Witness::InputPair {
                                state: s,
                                first: a,
                                second: b,
                            };
                            if mode == Search::First || rank == 0 {
                                return Some(witness);
                            }
                            if best.is_none_or(|(r, _)| rank < r) {
                                best = Some((rank, witness));
                            }
                        }
                    }
                }
                _ => return None,
            }
        }
    }
    best.map(|(_, w)| w)
}

fn ensure_scale(op: &SemanticOperator, p: PostulateId, config: &CheckConfig) -> Result<()> {
    let atoms = op.space().signature().len();
    if p.is_pairwise() && atoms > config.pairwise_atom_cap {
        return Err(Error::ScaleExceeded {
            what: "atoms for a pair-quantified postulate",
            count: atoms as u128,
            limit: config.pairwise_atom_cap as u128,
        });
    }
    Ok(())
}

/// Checks one postulate over every state and every input (pair).
///
/// On violation the witness is the least degenerate one (fewest inconsistent
/// sets among prior and inputs), ties broken by state index, then masks.
pub fn check(op: &SemanticOperator, p: PostulateId) -> Result<CheckResult> {
    check_with(op, p, &CheckConfig::default())
}

pub fn check_with(op: &SemanticOperator, p: PostulateId, config: &CheckConfig) -> Result<CheckResult> {
    ensure_scale(op, p, config)?;
    let rule = p.rule();
    if rule == Rule::SyntaxIndependence {
        return Ok(CheckResult {
            subject: Subject::Postulate(p),
            verdict: Verdict::HoldsByRepresentation,
            witness: None,
        });
    }
    Ok(match find_violation(op, rule, Search::Best) {
        Some(w) => CheckResult::violated(Subject::Postulate(p), w),
        None => CheckResult::satisfied(Subject::Postulate(p)),
    })
}

/// Fast yes/no check without witness ranking.
pub fn satisfies(op: &SemanticOperator, p: PostulateId) -> bool {
    let rule = p.rule();
    rule == Rule::SyntaxIndependence || find_violation(op, rule, Search::First).is_none()
}

/// Whether `witness` really is a violation of `p` by `op`.
pub fn reproduces(op: &SemanticOperator, p: PostulateId, witness: &Witness) -> bool {
    let rule = p.rule();
    match (*witness, rule.arity()) {
        (Witness::Input { state, input }, 1) => {
            rule.violated_single(op.space().beliefs(state), input, op.result(state, input))
        }
        (Witness::InputPair { state, first, second }, 2) => {
            rule.violated_pair(op, state, first, second)
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassMembership {
    pub agm: bool,
    pub cl: bool,
    pub ecl: bool,
}

/// Membership in AGMRev, CLRev and ECLRev.
pub fn classify(op: &SemanticOperator) -> Result<ClassMembership> {
    classify_with(op, &CheckConfig::default())
}

pub fn classify_with(op: &SemanticOperator, config: &CheckConfig) -> Result<ClassMembership> {
    for p in PostulateId::ALL {
        ensure_scale(op, p, config)?;
    }
    Ok(classify_unchecked(op))
}

/// Classification without the scale guard; used by enumeration.
pub(crate) fn classify_unchecked(op: &SemanticOperator) -> ClassMembership {
    let all = |ps: &[PostulateId]| ps.iter().all(|p| satisfies(op, *p));
    ClassMembership {
        agm: all(&PostulateId::AGM),
        cl: all(&PostulateId::CL),
        ecl: all(&PostulateId::ECL),
    }
}

/// Every postulate, in declaration order.
pub fn check_all(op: &SemanticOperator, config: &CheckConfig) -> Result<Vec<CheckResult>> {
    PostulateId::ALL
        .iter()
        .map(|p| check_with(op, *p, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;
    use crate::space::EpistemicSpace;
    use std::sync::Arc;

    fn identity_on(atoms: &[&str]) -> SemanticOperator {
        let sig = Signature::new(atoms.iter().copied()).unwrap();
        let full = sig.full();
        let sp = Arc::new(EpistemicSpace::new("e", sig, [("All", full)]).unwrap());
        SemanticOperator::from_fn(sp, |s, _| s)
    }

    #[test]
    fn names_round_trip() {
        for p in PostulateId::ALL {
            assert_eq!(p.name().parse::<PostulateId>().unwrap(), p);
        }
        assert!("R7".parse::<PostulateId>().is_err());
    }

    #[test]
    fn syntax_independence_holds_by_representation() {
        let op = identity_on(&["a"]);
        for p in [PostulateId::R4, PostulateId::CL4, PostulateId::ECL5] {
            let r = check(&op, p).unwrap();
            assert_eq!(r.verdict, Verdict::HoldsByRepresentation);
            assert!(r.witness.is_none());
        }
    }

    #[test]
    fn pairwise_checks_respect_the_cap() {
        let op = identity_on(&["a", "b", "c", "d"]);
        assert!(matches!(
            check(&op, PostulateId::CL6),
            Err(Error::ScaleExceeded { .. })
        ));
        assert!(check(&op, PostulateId::CL3).is_ok());
        let cfg = CheckConfig::new(2).unwrap();
        let op3 = identity_on(&["a", "b", "c"]);
        assert!(check_with(&op3, PostulateId::R5, &cfg).is_err());
        assert!(CheckConfig::new(0).is_err());
        assert!(CheckConfig::new(5).is_err());
    }

    #[test]
    fn identity_on_tautological_state() {
        // ⟦Ψ⟧ = Ω and Ψ∘α = Ψ: R1 fails for every proper input.
        let op = identity_on(&["a"]);
        let r = check(&op, PostulateId::R1).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(
            r.witness,
            Some(Witness::Input {
                state: StateId(0),
                input: WorldSet(0b01)
            })
        );
        assert!(check(&op, PostulateId::CL3).unwrap().holds());
        assert!(check(&op, PostulateId::CL1).unwrap().holds());
        assert!(!check(&op, PostulateId::CL2).unwrap().holds());
    }
}
