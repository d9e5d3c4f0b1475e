//! Brute-force verification over tiny spaces.
//!
//! Operators are enumerated as mixed-radix numbers over per-cell candidate
//! lists, assignments as mixed-radix numbers over per-state options. Both
//! streams are index-addressable, so work can be split across threads
//! deterministically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::assignments::{
    extract, is_compatible, is_faithful, synthesize, Assignment, FalsumFlag, StateAssignment,
    TotalPreorder,
};
use crate::error::{Error, Result};
use crate::logic::{Signature, WorldSet};
use crate::operators::SemanticOperator;
use crate::postulates::{
    classify_unchecked, satisfies, CheckConfig, ClassMembership, PostulateId,
};
use crate::space::{EpistemicSpace, StateId};

pub const DEFAULT_MAX_OPERATORS: u128 = 10_000_000;
pub const DEFAULT_MAX_ASSIGNMENTS: u128 = 10_000_000;
/// Environment variable overriding [`DEFAULT_MAX_OPERATORS`].
pub const MAX_OPS_ENV: &str = "EPISPACE_MAX_OPS";

/// Number of ordered set partitions (total preorders) of an `n`-element set.
pub fn fubini(n: usize) -> u128 {
    let mut a = vec![1u128];
    for m in 1..=n {
        let mut binom = 1u128;
        let mut total = 0u128;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u128 / k as u128;
            total += binom * a[m - k];
        }
        a.push(total);
    }
    a[n]
}

fn checked_product(factors: impl IntoIterator<Item = u128>) -> Option<u128> {
    factors
        .into_iter()
        .try_fold(1u128, |acc, f| acc.checked_mul(f))
}

/// Per-state count of assignment options, by closed form.
fn option_count(sig: &Signature, bel: WorldSet, faithful_only: bool) -> u128 {
    let full = sig.full();
    full.difference(bel)
        .subsets()
        .map(|extra| {
            let credible = bel.union(extra);
            let orders = if faithful_only && !bel.is_empty() {
                fubini(extra.len())
            } else {
                fubini(credible.len())
            };
            let flags = if credible == full { 2 } else { 1 };
            orders * flags
        })
        .sum()
}

/// Sizes of the search spaces for one epistemic space. Counts that do not
/// fit in `u128` saturate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationScope {
    /// `|states|^(|states| · 2^|Ω|)`
    pub operator_count: u128,
    pub assignment_count: u128,
    pub faithful_assignment_count: u128,
}

impl EnumerationScope {
    pub fn of(space: &EpistemicSpace) -> Self {
        let sig = space.signature();
        let cells = (space.len() * sig.input_count()) as u32;
        let operator_count = (space.len() as u128)
            .checked_pow(cells)
            .unwrap_or(u128::MAX);
        let count = |faithful| {
            checked_product(
                space
                    .belief_sets()
                    .iter()
                    .map(|b| option_count(sig, *b, faithful)),
            )
            .unwrap_or(u128::MAX)
        };
        EnumerationScope {
            operator_count,
            assignment_count: count(false),
            faithful_assignment_count: count(true),
        }
    }
}

fn ensure_within(what: &'static str, count: u128, limit: u128) -> Result<()> {
    if count > limit {
        Err(Error::ScaleExceeded { what, count, limit })
    } else {
        Ok(())
    }
}

/// Operators whose cell `(state, input)` ranges over a candidate list.
#[derive(Debug, Clone)]
pub struct OperatorEnumerator {
    space: Arc<EpistemicSpace>,
    candidates: Vec<Vec<StateId>>,
    len: u128,
}

impl OperatorEnumerator {
    /// Every total table.
    pub fn all(space: &Arc<EpistemicSpace>, limit: u128) -> Result<Self> {
        let every: Vec<StateId> = space.states().collect();
        let cells = space.len() * space.signature().input_count();
        Self::with_candidates(space, vec![every; cells], limit)
    }

    /// Tables whose results entail the input; every operator satisfying the
    /// success postulate is among them.
    pub fn success_pruned(space: &Arc<EpistemicSpace>, limit: u128) -> Result<Self> {
        let sig = space.signature();
        let candidates = space
            .states()
            .flat_map(|_| sig.world_sets())
            .map(|a| {
                space
                    .states()
                    .filter(|t| space.beliefs(*t).is_subset(a))
                    .collect()
            })
            .collect();
        Self::with_candidates(space, candidates, limit)
    }

    /// `candidates` is indexed like an operator table.
    pub fn with_candidates(
        space: &Arc<EpistemicSpace>,
        candidates: Vec<Vec<StateId>>,
        limit: u128,
    ) -> Result<Self> {
        let cells = space.len() * space.signature().input_count();
        if candidates.len() != cells {
            return Err(Error::Config(format!(
                "{} candidate lists for {cells} cells",
                candidates.len()
            )));
        }
        if let Some(bad) = candidates.iter().flatten().find(|t| t.0 >= space.len()) {
            return Err(Error::Config(format!("candidate {bad} is not a state")));
        }
        let len = checked_product(candidates.iter().map(|c| c.len() as u128)).unwrap_or(u128::MAX);
        ensure_within("operators to enumerate", len, limit)?;
        Ok(OperatorEnumerator {
            space: space.clone(),
            candidates,
            len,
        })
    }

    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The operator at `index`; the last cell varies fastest, so the order is
    /// lexicographic in candidate positions.
    pub fn get(&self, index: u128) -> SemanticOperator {
        assert!(index < self.len, "operator index {index} out of range");
        let mut rest = index;
        let mut table = vec![StateId(0); self.candidates.len()];
        for (cell, options) in self.candidates.iter().enumerate().rev() {
            let radix = options.len() as u128;
            table[cell] = options[(rest % radix) as usize];
            rest /= radix;
        }
        SemanticOperator::new(self.space.clone(), table).expect("candidates are states")
    }

    pub fn iter(&self) -> impl Iterator<Item = SemanticOperator> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    /// A uniformly drawn operator from this enumeration.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> SemanticOperator {
        assert!(!self.is_empty(), "cannot sample from an empty enumeration");
        let table = self
            .candidates
            .iter()
            .map(|c| c[rng.random_range(0..c.len())])
            .collect();
        SemanticOperator::new(self.space.clone(), table).expect("candidates are states")
    }
}

/// All total preorders on `domain`, as ordered partitions.
pub fn total_preorders(domain: WorldSet) -> Vec<TotalPreorder> {
    ordered_partitions(domain)
        .into_iter()
        .map(|layers| TotalPreorder::new(domain, layers).expect("ordered partition"))
        .collect()
}

fn ordered_partitions(set: WorldSet) -> Vec<Vec<WorldSet>> {
    if set.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in set.subsets().filter(|s| !s.is_empty()) {
        for rest in ordered_partitions(set.difference(first)) {
            let mut layers = Vec::with_capacity(rest.len() + 1);
            layers.push(first);
            layers.extend(rest);
            out.push(layers);
        }
    }
    out
}

/// Every valid (optionally: faithful) option for one state, credible sets
/// ascending by mask.
pub fn state_options(space: &EpistemicSpace, state: StateId, faithful_only: bool) -> Vec<StateAssignment> {
    let sig = space.signature();
    let full = sig.full();
    let bel = space.beliefs(state);
    let mut out = Vec::new();
    for extra in full.difference(bel).subsets() {
        let credible = bel.union(extra);
        let orders = if faithful_only && !bel.is_empty() {
            ordered_partitions(extra)
                .into_iter()
                .map(|mut rest| {
                    rest.insert(0, bel);
                    rest
                })
                .collect()
        } else {
            ordered_partitions(credible)
        };
        for layers in orders {
            let order = TotalPreorder::new(credible, layers).expect("ordered partition");
            out.push(StateAssignment::new(credible, order.clone(), FalsumFlag::Top));
            if credible == full {
                out.push(StateAssignment::new(credible, order, FalsumFlag::Bot));
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct AssignmentEnumerator {
    options: Vec<Vec<StateAssignment>>,
    len: u128,
}

impl AssignmentEnumerator {
    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Last state varies fastest.
    pub fn get(&self, index: u128) -> Assignment {
        assert!(index < self.len, "assignment index {index} out of range");
        let mut rest = index;
        let mut entries = vec![None; self.options.len()];
        for (s, options) in self.options.iter().enumerate().rev() {
            let radix = options.len() as u128;
            entries[s] = Some(options[(rest % radix) as usize].clone());
            rest /= radix;
        }
        Assignment::from_entries_unchecked(entries.into_iter().map(Option::unwrap).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = Assignment> + '_ {
        (0..self.len).map(|i| self.get(i))
    }
}

/// Every valid assignment for `space`, or only the faithful ones.
pub fn enumerate_assignments(
    space: &EpistemicSpace,
    faithful_only: bool,
    limit: u128,
) -> Result<AssignmentEnumerator> {
    let scope = EnumerationScope::of(space);
    let count = if faithful_only {
        scope.faithful_assignment_count
    } else {
        scope.assignment_count
    };
    ensure_within("assignments to enumerate", count, limit)?;
    let options: Vec<Vec<StateAssignment>> = space
        .states()
        .map(|s| state_options(space, s, faithful_only))
        .collect();
    let len = checked_product(options.iter().map(|o| o.len() as u128)).unwrap_or(u128::MAX);
    debug_assert_eq!(len, count);
    Ok(AssignmentEnumerator { options, len })
}

/// `min(X ∪ Y)` is `min(X)`, `min(Y)` or their union.
pub fn lemma1_property(order: &TotalPreorder, x: WorldSet, y: WorldSet) -> Result<bool> {
    let mx = order.min_elements(x)?;
    let my = order.min_elements(y)?;
    let mxy = order.min_elements(x.union(y))?;
    Ok(mxy == mx || mxy == my || mxy == mx.union(my))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Sweep {
    pub domains: u64,
    pub preorders: u64,
    pub cases: u64,
    pub violation: Option<(TotalPreorder, WorldSet, WorldSet)>,
}

/// Every total preorder on every domain of at most `max_domain` worlds of
/// `sig`, against every pair of subsets of the domain.
pub fn lemma1_sweep(sig: &Signature, max_domain: usize) -> Lemma1Sweep {
    let mut sweep = Lemma1Sweep {
        domains: 0,
        preorders: 0,
        cases: 0,
        violation: None,
    };
    for domain in sig.full().subsets().filter(|d| d.len() <= max_domain) {
        sweep.domains += 1;
        for order in total_preorders(domain) {
            sweep.preorders += 1;
            for x in domain.subsets() {
                for y in domain.subsets() {
                    sweep.cases += 1;
                    let holds = lemma1_property(&order, x, y).expect("subsets of the domain");
                    if !holds && sweep.violation.is_none() {
                        sweep.violation = Some((order.clone(), x, y));
                    }
                }
            }
        }
    }
    sweep
}

/// The claims checked by [`verify_claims`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// No credibility-limited operator on a space with an inconsistent state.
    Prop1,
    /// No AGM operator is credibility-limited.
    Prop2,
    /// Satisfying CL3 implies CL3u and CL3wcp.
    Prop4,
    /// AGM operators are exactly the extended ones compatible with a faithful
    /// assignment that credits everything, inconsistent input included.
    Prop5,
    /// On globally consistent spaces, credibility-limited operators are
    /// exactly those compatible with a faithful assignment flagged `top`.
    Prop6,
    /// AGMRev and CLRev are both inside ECLRev.
    Prop7,
    /// AGMRev and CLRev are disjoint.
    Corollary,
    /// Minimum over a union is one of the two minima or their union.
    Lemma1,
    /// Every extended operator has a faithful compatible assignment.
    Thm1Fwd,
    /// Every operator compatible with a faithful assignment is extended.
    Thm1Bwd,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::Prop1,
        Claim::Prop2,
        Claim::Prop4,
        Claim::Prop5,
        Claim::Prop6,
        Claim::Prop7,
        Claim::Corollary,
        Claim::Lemma1,
        Claim::Thm1Fwd,
        Claim::Thm1Bwd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Prop1 => "Prop1",
            Claim::Prop2 => "Prop2",
            Claim::Prop4 => "Prop4",
            Claim::Prop5 => "Prop5",
            Claim::Prop6 => "Prop6",
            Claim::Prop7 => "Prop7",
            Claim::Corollary => "Corollary",
            Claim::Lemma1 => "Lemma1",
            Claim::Thm1Fwd => "Thm1_fwd",
            Claim::Thm1Bwd => "Thm1_bwd",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimVerdict {
    /// Checked over the whole search space without counterexample.
    Confirmed,
    Refuted,
    /// No counterexample among randomly sampled operators.
    Sampled,
    /// The claim's premise does not apply to this space.
    NotApplicable,
    /// The search space exceeds the configured bounds.
    Skipped,
}

impl ClaimVerdict {
    pub fn name(self) -> &'static str {
        match self {
            ClaimVerdict::Confirmed => "confirmed",
            ClaimVerdict::Refuted => "refuted",
            ClaimVerdict::Sampled => "sampled",
            ClaimVerdict::NotApplicable => "not_applicable",
            ClaimVerdict::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    Operator {
        table: Vec<StateId>,
        detail: String,
    },
    Assignment {
        assignment: Assignment,
        detail: String,
    },
    /// A result table (belief sets per cell) found by one route but not the
    /// other.
    BeliefTable {
        table: Vec<WorldSet>,
        detail: String,
    },
    Lemma1 {
        order: TotalPreorder,
        x: WorldSet,
        y: WorldSet,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: Claim,
    pub verdict: ClaimVerdict,
    /// Named counts backing the verdict, in a fixed order.
    pub counts: Vec<(&'static str, u128)>,
    pub counterexample: Option<Counterexample>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub space: String,
    pub scope: EnumerationScope,
    pub exhaustive: bool,
    pub operators_checked: u128,
    pub agm: u128,
    pub cl: u128,
    pub ecl: u128,
    pub agm_and_cl: u128,
    pub claims: Vec<ClaimReport>,
}

impl VerificationReport {
    pub fn claim(&self, claim: Claim) -> &ClaimReport {
        self.claims
            .iter()
            .find(|c| c.claim == claim)
            .expect("every claim is reported")
    }

    pub fn refuted(&self) -> bool {
        self.claims.iter().any(|c| c.verdict == ClaimVerdict::Refuted)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_operators: u128,
    pub max_assignments: u128,
    /// Operators drawn when the full enumeration is out of bounds; zero turns
    /// the fallback off.
    pub samples: u64,
    pub seed: u64,
    pub parallel: bool,
    pub lemma1_max_domain: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_operators: DEFAULT_MAX_OPERATORS,
            max_assignments: DEFAULT_MAX_ASSIGNMENTS,
            samples: 100_000,
            seed: 0x5eed,
            parallel: true,
            lemma1_max_domain: 3,
        }
    }
}

impl VerifyConfig {
    /// Defaults, with the operator bound taken from the environment if set.
    pub fn from_env() -> Result<Self> {
        let mut config = VerifyConfig::default();
        if let Ok(raw) = std::env::var(MAX_OPS_ENV) {
            config.max_operators = raw
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{MAX_OPS_ENV}={raw} is not a count")))?;
        }
        Ok(config)
    }
}

type BeliefTable = Vec<WorldSet>;

/// Per-operator verdicts folded over an enumeration or a sample.
#[derive(Debug, Default)]
struct Tally {
    checked: u128,
    agm: u128,
    cl: u128,
    ecl: u128,
    agm_and_cl: u128,
    cl3: u128,
    roundtrips: u128,
    agm_tables: BTreeSet<BeliefTable>,
    cl_tables: BTreeSet<BeliefTable>,
    ecl_tables: BTreeSet<BeliefTable>,
    /// Lowest-index counterexample per claim.
    failures: BTreeMap<Claim, (u128, Counterexample)>,
}

impl Tally {
    fn fail(&mut self, claim: Claim, index: u128, op: &SemanticOperator, detail: String) {
        let keep = self.failures.get(&claim).is_none_or(|(i, _)| index < *i);
        if keep {
            let cx = Counterexample::Operator {
                table: op.table().to_vec(),
                detail,
            };
            self.failures.insert(claim, (index, cx));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.agm += other.agm;
        self.cl += other.cl;
        self.ecl += other.ecl;
        self.agm_and_cl += other.agm_and_cl;
        self.cl3 += other.cl3;
        self.roundtrips += other.roundtrips;
        self.agm_tables.extend(other.agm_tables);
        self.cl_tables.extend(other.cl_tables);
        self.ecl_tables.extend(other.ecl_tables);
        for (claim, (index, cx)) in other.failures {
            let keep = self.failures.get(&claim).is_none_or(|(i, _)| index < *i);
            if keep {
                self.failures.insert(claim, (index, cx));
            }
        }
        self
    }

    fn observe(mut self, index: u128, op: &SemanticOperator, globally_consistent: bool) -> Tally {
        let m: ClassMembership = classify_unchecked(op);
        self.checked += 1;
        let table = op.belief_table();
        if m.agm {
            self.agm += 1;
            self.agm_tables.insert(table.clone());
        }
        if m.cl {
            self.cl += 1;
            self.cl_tables.insert(table.clone());
        }
        if m.ecl {
            self.ecl += 1;
            self.ecl_tables.insert(table);
        }
        if m.agm && m.cl {
            self.agm_and_cl += 1;
            self.fail(Claim::Prop2, index, op, "satisfies R1-R6 and CL1-CL6".into());
            self.fail(Claim::Corollary, index, op, "member of AGMRev and CLRev".into());
        }
        if !globally_consistent && m.cl {
            self.fail(Claim::Prop1, index, op, "credibility-limited on a space with an inconsistent state".into());
        }
        if satisfies(op, PostulateId::CL3) {
            self.cl3 += 1;
            if !satisfies(op, PostulateId::CL3u) || !satisfies(op, PostulateId::CL3wcp) {
                self.fail(Claim::Prop4, index, op, "satisfies CL3 but not both CL3u and CL3wcp".into());
            }
        }
        if (m.agm || m.cl) && !m.ecl {
            self.fail(Claim::Prop7, index, op, "in AGMRev or CLRev but not ECLRev".into());
        }
        if m.ecl {
            match roundtrip(op) {
                Ok(a) => {
                    self.roundtrips += 1;
                    if m.agm && !credits_everything(op.space(), &a) {
                        self.fail(Claim::Prop5, index, op, "AGM operator extracts to an assignment with C != all worlds or b = top".into());
                    }
                    if globally_consistent
                        && m.cl
                        && a.entries().iter().any(|e| e.flag == FalsumFlag::Bot)
                    {
                        self.fail(Claim::Prop6, index, op, "credibility-limited operator extracts with b = bot".into());
                    }
                }
                Err(detail) => self.fail(Claim::Thm1Fwd, index, op, detail),
            }
        }
        self
    }
}

/// Extract, check faithfulness and compatibility, re-synthesize and compare.
fn roundtrip(op: &SemanticOperator) -> std::result::Result<Assignment, String> {
    let sp = op.space_arc();
    let a = extract(op).map_err(|e| format!("extraction failed: {e}"))?;
    if !is_faithful(sp, &a).holds() {
        return Err("extracted assignment is not faithful".into());
    }
    if !is_compatible(sp, &a, op).holds() {
        return Err("extracted assignment is not compatible".into());
    }
    let back = synthesize(sp, &a).map_err(|e| format!("re-synthesis failed: {e}"))?;
    if !back.equivalent(op) {
        return Err("re-synthesized operator differs".into());
    }
    Ok(a)
}

/// `C = Ω` everywhere and `b = ⊥` wherever the prior is consistent; at
/// inconsistent priors the flag does not affect compatibility.
fn credits_everything(space: &EpistemicSpace, a: &Assignment) -> bool {
    let full = space.signature().full();
    space.states().all(|s| {
        let e = a.get(s);
        e.credible == full && (space.beliefs(s).is_empty() || e.flag == FalsumFlag::Bot)
    })
}

fn scan(
    ops: &OperatorEnumerator,
    globally_consistent: bool,
    parallel: bool,
) -> Tally {
    let n = u64::try_from(ops.len()).expect("bounded enumeration fits in u64");
    if parallel {
        (0..n)
            .into_par_iter()
            .fold(Tally::default, |t, i| {
                t.observe(i as u128, &ops.get(i as u128), globally_consistent)
            })
            .reduce(Tally::default, Tally::merge)
    } else {
        (0..n).fold(Tally::default(), |t, i| {
            t.observe(i as u128, &ops.get(i as u128), globally_consistent)
        })
    }
}

fn sample(
    ops: &OperatorEnumerator,
    globally_consistent: bool,
    samples: u64,
    seed: u64,
) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).fold(Tally::default(), |t, i| {
        let op = ops.sample(&mut rng);
        t.observe(i as u128, &op, globally_consistent)
    })
}

/// What the faithful assignments synthesize to.
#[derive(Debug, Default)]
struct Synthesized {
    assignments: u128,
    hosted: u128,
    all: BTreeSet<BeliefTable>,
    /// Extended operators from assignments with `C = Ω` and `b = ⊥` at every
    /// state.
    credits_all: BTreeSet<BeliefTable>,
    /// From assignments with `b = ⊤` at every state.
    flags_top: BTreeSet<BeliefTable>,
    failure: Option<Counterexample>,
}

fn synthesize_all(space: &Arc<EpistemicSpace>, assignments: &AssignmentEnumerator) -> Synthesized {
    let full = space.signature().full();
    let mut out = Synthesized::default();
    for a in assignments.iter() {
        out.assignments += 1;
        let Ok(op) = synthesize(space, &a) else {
            continue;
        };
        out.hosted += 1;
        let table = op.belief_table();
        let ecl = classify_unchecked(&op).ecl;
        if !ecl && out.failure.is_none() {
            out.failure = Some(Counterexample::Assignment {
                assignment: a.clone(),
                detail: "synthesized operator is not extended credibility-limited".into(),
            });
        }
        let entries = a.entries();
        if ecl
            && entries
                .iter()
                .all(|e| e.credible == full && e.flag == FalsumFlag::Bot)
        {
            out.credits_all.insert(table.clone());
        }
        if entries.iter().all(|e| e.flag == FalsumFlag::Top) {
            out.flags_top.insert(table.clone());
        }
        out.all.insert(table);
    }
    out
}

fn set_mismatch(
    left: &BTreeSet<BeliefTable>,
    right: &BTreeSet<BeliefTable>,
    left_name: &str,
    right_name: &str,
) -> Option<Counterexample> {
    if let Some(t) = left.difference(right).next() {
        return Some(Counterexample::BeliefTable {
            table: t.clone(),
            detail: format!("in {left_name} but not in {right_name}"),
        });
    }
    right.difference(left).next().map(|t| Counterexample::BeliefTable {
        table: t.clone(),
        detail: format!("in {right_name} but not in {left_name}"),
    })
}

struct ClaimBuilder {
    exhaustive: bool,
}

impl ClaimBuilder {
    fn report(
        &self,
        claim: Claim,
        counts: Vec<(&'static str, u128)>,
        counterexample: Option<Counterexample>,
    ) -> ClaimReport {
        let verdict = match (&counterexample, self.exhaustive) {
            (Some(_), _) => ClaimVerdict::Refuted,
            (None, true) => ClaimVerdict::Confirmed,
            (None, false) => ClaimVerdict::Sampled,
        };
        ClaimReport {
            claim,
            verdict,
            counts,
            counterexample,
            note: None,
        }
    }
}

fn not_applicable(claim: Claim, note: &str) -> ClaimReport {
    ClaimReport {
        claim,
        verdict: ClaimVerdict::NotApplicable,
        counts: Vec::new(),
        counterexample: None,
        note: Some(note.into()),
    }
}

fn skipped(claim: Claim, note: String) -> ClaimReport {
    ClaimReport {
        claim,
        verdict: ClaimVerdict::Skipped,
        counts: Vec::new(),
        counterexample: None,
        note: Some(note),
    }
}

/// Classifies every operator on `space` (or a seeded sample when there are
/// too many) and cross-checks the classes against the faithful assignments.
pub fn verify_claims(space: &Arc<EpistemicSpace>, config: &VerifyConfig) -> Result<VerificationReport> {
    let atoms = space.signature().len();
    let cap = CheckConfig::default().pairwise_atom_cap();
    ensure_within("atoms for a pair-quantified postulate", atoms as u128, cap as u128)?;
    let scope = EnumerationScope::of(space);
    let gc = space.is_globally_consistent();

    let exhaustive = scope.operator_count <= config.max_operators;
    let tally = if exhaustive {
        let ops = OperatorEnumerator::all(space, config.max_operators)?;
        scan(&ops, gc, config.parallel)
    } else if config.samples > 0 {
        let ops = OperatorEnumerator::all(space, u128::MAX)?;
        sample(&ops, gc, config.samples, config.seed)
    } else {
        return Err(Error::ScaleExceeded {
            what: "operators to enumerate",
            count: scope.operator_count,
            limit: config.max_operators,
        });
    };
    let agm_pruned = OperatorEnumerator::success_pruned(space, config.max_operators)
        .ok()
        .map(|ops| scan(&ops, gc, config.parallel));
    let synthesized = enumerate_assignments(space, true, config.max_assignments)
        .ok()
        .map(|a| synthesize_all(space, &a));

    let b = ClaimBuilder { exhaustive };
    let fail = |c: Claim| tally.failures.get(&c).map(|(_, cx)| cx.clone());
    let mut claims = Vec::new();

    claims.push(if gc {
        not_applicable(Claim::Prop1, "every state has consistent beliefs")
    } else {
        b.report(Claim::Prop1, vec![("cl", tally.cl)], fail(Claim::Prop1))
    });
    claims.push(b.report(
        Claim::Prop2,
        vec![("agm", tally.agm), ("agm_and_cl", tally.agm_and_cl)],
        fail(Claim::Prop2),
    ));
    claims.push(b.report(Claim::Prop4, vec![("cl3", tally.cl3)], fail(Claim::Prop4)));

    claims.push(match (&agm_pruned, &synthesized) {
        (Some(pruned), Some(syn)) => {
            let cx = fail(Claim::Prop5)
                .or_else(|| pruned.failures.get(&Claim::Prop5).map(|(_, cx)| cx.clone()))
                .or_else(|| {
                    if exhaustive {
                        set_mismatch(&tally.agm_tables, &pruned.agm_tables, "AGMRev", "the success-pruned scan")
                    } else {
                        None
                    }
                })
                .or_else(|| {
                    set_mismatch(
                        &pruned.agm_tables,
                        &syn.credits_all,
                        "AGMRev",
                        "extended operators from assignments crediting everything",
                    )
                });
            ClaimBuilder { exhaustive: true }.report(
                Claim::Prop5,
                vec![
                    ("agm", pruned.agm_tables.len() as u128),
                    ("success_pruned_operators", pruned.checked),
                    ("assignment_operators", syn.credits_all.len() as u128),
                ],
                cx,
            )
        }
        _ => skipped(
            Claim::Prop5,
            "success-pruned operators or faithful assignments exceed the bounds".into(),
        ),
    });

    claims.push(if !gc {
        not_applicable(Claim::Prop6, "the space has a state with inconsistent beliefs")
    } else {
        match &synthesized {
            Some(syn) => {
                let cx = fail(Claim::Prop6).or_else(|| {
                    if exhaustive {
                        set_mismatch(&tally.cl_tables, &syn.flags_top, "CLRev", "operators from assignments flagged top")
                    } else {
                        None
                    }
                });
                b.report(
                    Claim::Prop6,
                    vec![("cl", tally.cl), ("assignment_operators", syn.flags_top.len() as u128)],
                    cx,
                )
            }
            None => skipped(Claim::Prop6, "faithful assignments exceed the bounds".into()),
        }
    });

    claims.push(b.report(
        Claim::Prop7,
        vec![("agm", tally.agm), ("cl", tally.cl), ("ecl", tally.ecl)],
        fail(Claim::Prop7),
    ));
    claims.push(b.report(
        Claim::Corollary,
        vec![("agm_and_cl", tally.agm_and_cl)],
        fail(Claim::Corollary),
    ));

    let lemma = lemma1_sweep(space.signature(), config.lemma1_max_domain);
    claims.push(ClaimBuilder { exhaustive: true }.report(
        Claim::Lemma1,
        vec![
            ("domains", lemma.domains as u128),
            ("preorders", lemma.preorders as u128),
            ("cases", lemma.cases as u128),
        ],
        lemma
            .violation
            .map(|(order, x, y)| Counterexample::Lemma1 { order, x, y }),
    ));

    claims.push(b.report(
        Claim::Thm1Fwd,
        vec![("ecl", tally.ecl), ("roundtrips", tally.roundtrips)],
        fail(Claim::Thm1Fwd),
    ));

    claims.push(match &synthesized {
        Some(syn) => {
            let cx = syn.failure.clone().or_else(|| {
                if exhaustive {
                    set_mismatch(&tally.ecl_tables, &syn.all, "ECLRev", "operators from faithful assignments")
                } else {
                    None
                }
            });
            let mut report = ClaimBuilder { exhaustive: true }.report(
                Claim::Thm1Bwd,
                vec![
                    ("faithful_assignments", syn.assignments),
                    ("hosted", syn.hosted),
                    ("distinct_operators", syn.all.len() as u128),
                ],
                cx,
            );
            if !exhaustive {
                report.note = Some(
                    "every faithful assignment checked; ECLRev itself was only sampled".into(),
                );
            }
            report
        }
        None => skipped(
            Claim::Thm1Bwd,
            format!(
                "{} faithful assignments exceed the bound {}",
                scope.faithful_assignment_count, config.max_assignments
            ),
        ),
    });

    Ok(VerificationReport {
        space: space.name().to_string(),
        scope,
        exhaustive,
        operators_checked: tally.checked,
        agm: tally.agm,
        cl: tally.cl,
        ecl: tally.ecl,
        agm_and_cl: tally.agm_and_cl,
        claims,
    })
}

/// Operators in ECLRev, by exhaustive scan.
pub fn ecl_operators(space: &Arc<EpistemicSpace>, limit: u128) -> Result<Vec<SemanticOperator>> {
    let ops = OperatorEnumerator::all(space, limit)?;
    Ok(ops.iter().filter(|op| classify_unchecked(op).ecl).collect())
}

/// Class counts over every operator on `space`.
pub fn class_counts(space: &Arc<EpistemicSpace>, limit: u128, parallel: bool) -> Result<ClassCounts> {
    let ops = OperatorEnumerator::all(space, limit)?;
    let n = u64::try_from(ops.len()).expect("bounded enumeration fits in u64");
    let count = |i: u64| ClassCounts::of(classify_unchecked(&ops.get(i as u128)));
    Ok(if parallel {
        (0..n).into_par_iter().map(count).reduce(ClassCounts::default, ClassCounts::add)
    } else {
        (0..n).map(count).fold(ClassCounts::default(), ClassCounts::add)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassCounts {
    pub operators: u128,
    pub agm: u128,
    pub cl: u128,
    pub ecl: u128,
}

impl ClassCounts {
    fn of(m: ClassMembership) -> Self {
        ClassCounts {
            operators: 1,
            agm: m.agm.into(),
            cl: m.cl.into(),
            ecl: m.ecl.into(),
        }
    }

    fn add(self, o: Self) -> Self {
        ClassCounts {
            operators: self.operators + o.operators,
            agm: self.agm + o.agm,
            cl: self.cl + o.cl,
            ecl: self.ecl + o.ecl,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{space_bot_a, space_four_a, space_three_a};

    #[test]
    fn fubini_numbers() {
        let expected = [1u128, 1, 3, 13, 75, 541, 4683];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(fubini(n), *e);
        }
    }

    #[test]
    fn operator_counts() {
        let sp = space_bot_a();
        let ops = OperatorEnumerator::all(&sp, 1000).unwrap();
        assert_eq!(ops.len(), 256);
        let distinct: BTreeSet<Vec<StateId>> = ops.iter().map(|o| o.table().to_vec()).collect();
        assert_eq!(distinct.len(), 256);
        assert_eq!(EnumerationScope::of(&space_three_a()).operator_count, 531_441);
        let one = Arc::new(EpistemicSpace::new("one", sp.signature().clone(), [("X", WorldSet::EMPTY)]).unwrap());
        assert_eq!(OperatorEnumerator::all(&one, 10).unwrap().len(), 1);
        assert!(matches!(
            OperatorEnumerator::all(&sp, 255),
            Err(Error::ScaleExceeded { count: 256, .. })
        ));
    }

    #[test]
    fn success_pruning_counts() {
        let ops = OperatorEnumerator::success_pruned(&space_four_a(), u128::MAX).unwrap();
        assert_eq!(ops.len(), 65_536);
        assert!(OperatorEnumerator::success_pruned(&space_three_a(), 10).unwrap().is_empty());
    }

    #[test]
    fn per_state_option_counts() {
        let sp = space_bot_a();
        assert_eq!(state_options(&sp, StateId(0), true).len(), 9);
        assert_eq!(state_options(&sp, StateId(1), true).len(), 3);
        assert!(state_options(&sp, StateId(0), true)
            .iter()
            .all(|o| o.flag == FalsumFlag::Top || o.credible == sp.signature().full()));
        let scope = EnumerationScope::of(&sp);
        assert_eq!(scope.faithful_assignment_count, 27);
        assert_eq!(enumerate_assignments(&sp, true, 100).unwrap().len(), 27);
        assert_eq!(enumerate_assignments(&sp, false, 100).unwrap().len(), scope.assignment_count);
    }

    #[test]
    fn closed_form_counts_match_enumeration() {
        for sp in [space_bot_a(), space_three_a(), space_four_a()] {
            for faithful in [false, true] {
                let n: u128 = sp
                    .states()
                    .map(|s| state_options(&sp, s, faithful).len() as u128)
                    .product();
                let scope = EnumerationScope::of(&sp);
                let closed = if faithful {
                    scope.faithful_assignment_count
                } else {
                    scope.assignment_count
                };
                assert_eq!(n, closed);
            }
        }
    }

    #[test]
    fn enumerated_assignments_are_valid_and_distinct() {
        let sp = space_bot_a();
        let all = enumerate_assignments(&sp, false, 1000).unwrap();
        let mut seen = BTreeSet::new();
        for a in all.iter() {
            assert!(Assignment::new(&sp, a.entries().to_vec()).is_ok());
            seen.insert(format!("{a:?}"));
        }
        assert_eq!(seen.len() as u128, all.len());
        let faithful = all.iter().filter(|a| is_faithful(&sp, a).holds()).count();
        assert_eq!(faithful as u128, enumerate_assignments(&sp, true, 1000).unwrap().len());
    }

    #[test]
    fn lemma1_examples() {
        let single = TotalPreorder::from_layers(vec![WorldSet(0b111)]).unwrap();
        for x in WorldSet(0b111).subsets() {
            for y in WorldSet(0b111).subsets() {
                assert!(lemma1_property(&single, x, y).unwrap());
            }
        }
        let chain = TotalPreorder::from_layers(vec![WorldSet(0b1), WorldSet(0b10)]).unwrap();
        assert!(lemma1_property(&chain, WorldSet(0b10), WorldSet(0b10)).unwrap());
        assert!(lemma1_property(&chain, WorldSet(0b100), WorldSet(0b1)).is_err());
    }

    #[test]
    fn sampling_is_reproducible() {
        let ops = OperatorEnumerator::all(&space_three_a(), u128::MAX).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..5).map(|_| ops.sample(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn verify_bot_a() {
        let report = verify_claims(&space_bot_a(), &VerifyConfig::default()).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.operators_checked, 256);
        assert_eq!(report.cl, 0);
        assert_eq!(report.agm, 0);
        assert!(!report.refuted(), "{report:#?}");
        assert_eq!(report.claim(Claim::Prop6).verdict, ClaimVerdict::NotApplicable);
        assert_eq!(report.claim(Claim::Thm1Bwd).verdict, ClaimVerdict::Confirmed);
    }

    #[test]
    fn sampled_fallback() {
        let config = VerifyConfig {
            max_operators: 100,
            samples: 200,
            ..VerifyConfig::default()
        };
        let report = verify_claims(&space_bot_a(), &config).unwrap();
        assert!(!report.exhaustive);
        assert_eq!(report.operators_checked, 200);
        assert_eq!(report.claim(Claim::Prop2).verdict, ClaimVerdict::Sampled);
        let none = VerifyConfig { samples: 0, ..config };
        assert!(matches!(
            verify_claims(&space_bot_a(), &none),
            Err(Error::ScaleExceeded { .. })
        ));
    }
}
