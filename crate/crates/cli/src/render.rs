//! JSON mirrors of the library's report types and their text renderings.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use epispace::assignments::Assignment;
use epispace::modelcheck::{
    ClaimReport, Counterexample, EnumerationScope, VerificationReport,
};
use epispace::postulates::{CheckResult, ClassMembership, FaithfulnessRule, Witness};
use epispace::{EpistemicSpace, StateId, WorldSet};

/// Worlds of a set, rendered in ascending index order.
pub fn worlds(space: &EpistemicSpace, set: WorldSet) -> Vec<String> {
    set.iter().map(|w| space.signature().render_world(w)).collect()
}

fn indices(set: WorldSet) -> Vec<u8> {
    set.iter().map(|w| w.0).collect()
}

pub fn set_text(space: &EpistemicSpace, set: WorldSet) -> String {
    space.signature().render_set(set)
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    Input {
        state: String,
        input: Vec<String>,
    },
    InputPair {
        state: String,
        first: Vec<String>,
        second: Vec<String>,
    },
    Faithfulness {
        rule: &'static str,
        state: String,
        first: String,
        second: String,
    },
    Compatibility {
        state: String,
        input: Vec<String>,
        expected: Vec<String>,
        actual: Vec<String>,
    },
}

fn rule_name(rule: FaithfulnessRule) -> &'static str {
    match rule {
        FaithfulnessRule::Clfa1 => "CLFA1",
        FaithfulnessRule::Clfa2 => "CLFA2",
    }
}

impl WitnessJson {
    pub fn new(space: &EpistemicSpace, w: &Witness) -> Self {
        let name = |s: StateId| space.state_name(s).to_string();
        let sig = space.signature();
        match *w {
            Witness::Input { state, input } => WitnessJson::Input {
                state: name(state),
                input: worlds(space, input),
            },
            Witness::InputPair { state, first, second } => WitnessJson::InputPair {
                state: name(state),
                first: worlds(space, first),
                second: worlds(space, second),
            },
            Witness::Faithfulness { rule, state, first, second } => WitnessJson::Faithfulness {
                rule: rule_name(rule),
                state: name(state),
                first: sig.render_world(first),
                second: sig.render_world(second),
            },
            Witness::Compatibility { state, input, expected, actual } => WitnessJson::Compatibility {
                state: name(state),
                input: worlds(space, input),
                expected: worlds(space, expected),
                actual: worlds(space, actual),
            },
        }
    }
}

pub fn witness_text(space: &EpistemicSpace, w: &Witness) -> String {
    let name = |s: StateId| space.state_name(s);
    let sig = space.signature();
    match *w {
        Witness::Input { state, input } => format!("({}, {})", name(state), set_text(space, input)),
        Witness::InputPair { state, first, second } => format!(
            "({}, {}, {})",
            name(state),
            set_text(space, first),
            set_text(space, second)
        ),
        Witness::Faithfulness { rule, state, first, second } => format!(
            "{} at {}: {} vs {}",
            rule_name(rule),
            name(state),
            sig.render_world(first),
            sig.render_world(second)
        ),
        Witness::Compatibility { state, input, expected, actual } => format!(
            "({}, {}): expected {}, got {}",
            name(state),
            set_text(space, input),
            set_text(space, expected),
            set_text(space, actual)
        ),
    }
}

#[derive(Serialize)]
pub struct CheckResultJson {
    pub subject: String,
    pub verdict: &'static str,
    pub witness: Option<WitnessJson>,
}

impl CheckResultJson {
    pub fn new(space: &EpistemicSpace, r: &CheckResult) -> Self {
        CheckResultJson {
            subject: r.subject.to_string(),
            verdict: r.verdict.name(),
            witness: r.witness.as_ref().map(|w| WitnessJson::new(space, w)),
        }
    }
}

pub fn check_text(space: &EpistemicSpace, r: &CheckResult) -> String {
    match &r.witness {
        Some(w) => format!("{:<8} {}  witness {}", r.subject.to_string(), r.verdict.name(), witness_text(space, w)),
        None => format!("{:<8} {}", r.subject.to_string(), r.verdict.name()),
    }
}

#[derive(Serialize)]
pub struct ClassMembershipJson {
    pub agm: bool,
    pub cl: bool,
    pub ecl: bool,
}

impl From<ClassMembership> for ClassMembershipJson {
    fn from(m: ClassMembership) -> Self {
        ClassMembershipJson { agm: m.agm, cl: m.cl, ecl: m.ecl }
    }
}

/// Counts equal to `u128::MAX` stand for anything at least that large.
pub fn count_text(n: u128) -> String {
    if n == u128::MAX {
        format!(">= {n} (saturated)")
    } else {
        n.to_string()
    }
}

#[derive(Serialize)]
pub struct EnumerationScopeJson {
    pub operator_count: u128,
    pub assignment_count: u128,
    pub faithful_assignment_count: u128,
    /// Fields whose true value does not fit and was clamped.
    pub saturated: Vec<&'static str>,
}

impl From<EnumerationScope> for EnumerationScopeJson {
    fn from(s: EnumerationScope) -> Self {
        let saturated = [
            ("operator_count", s.operator_count),
            ("assignment_count", s.assignment_count),
            ("faithful_assignment_count", s.faithful_assignment_count),
        ]
        .into_iter()
        .filter(|(_, n)| *n == u128::MAX)
        .map(|(k, _)| k)
        .collect();
        EnumerationScopeJson {
            operator_count: s.operator_count,
            assignment_count: s.assignment_count,
            faithful_assignment_count: s.faithful_assignment_count,
            saturated,
        }
    }
}

/// Named counts kept in their reported order.
pub struct Counts(Vec<(&'static str, u128)>);

impl Serialize for Counts {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
pub struct StateAssignmentJson {
    pub state: String,
    pub flag: &'static str,
    pub credible: Vec<String>,
    pub layers: Vec<Vec<String>>,
}

pub fn assignment_json(space: &EpistemicSpace, a: &Assignment) -> Vec<StateAssignmentJson> {
    space
        .states()
        .map(|s| {
            let e = a.get(s);
            StateAssignmentJson {
                state: space.state_name(s).to_string(),
                flag: e.flag.name(),
                credible: worlds(space, e.credible),
                layers: e.order.layers().iter().map(|l| worlds(space, *l)).collect(),
            }
        })
        .collect()
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CounterexampleJson {
    Operator {
        table: Vec<String>,
        detail: String,
    },
    Assignment {
        assignment: Vec<StateAssignmentJson>,
        detail: String,
    },
    BeliefTable {
        table: Vec<Vec<String>>,
        detail: String,
    },
    /// Worlds as indices: the sweep runs over its own signature.
    Lemma1 {
        layers: Vec<Vec<u8>>,
        x: Vec<u8>,
        y: Vec<u8>,
    },
}

impl CounterexampleJson {
    pub fn new(space: &EpistemicSpace, c: &Counterexample) -> Self {
        match c {
            Counterexample::Operator { table, detail } => CounterexampleJson::Operator {
                table: table.iter().map(|s| space.state_name(*s).to_string()).collect(),
                detail: detail.clone(),
            },
            Counterexample::Assignment { assignment, detail } => CounterexampleJson::Assignment {
                assignment: assignment_json(space, assignment),
                detail: detail.clone(),
            },
            Counterexample::BeliefTable { table, detail } => CounterexampleJson::BeliefTable {
                table: table.iter().map(|b| worlds(space, *b)).collect(),
                detail: detail.clone(),
            },
            Counterexample::Lemma1 { order, x, y } => CounterexampleJson::Lemma1 {
                layers: order.layers().iter().map(|l| indices(*l)).collect(),
                x: indices(*x),
                y: indices(*y),
            },
        }
    }
}

#[derive(Serialize)]
pub struct ClaimReportJson {
    pub claim: &'static str,
    pub verdict: &'static str,
    pub counts: Counts,
    pub counterexample: Option<CounterexampleJson>,
    pub note: Option<String>,
}

impl ClaimReportJson {
    pub fn new(space: &EpistemicSpace, c: &ClaimReport) -> Self {
        ClaimReportJson {
            claim: c.claim.name(),
            verdict: c.verdict.name(),
            counts: Counts(c.counts.clone()),
            counterexample: c.counterexample.as_ref().map(|x| CounterexampleJson::new(space, x)),
            note: c.note.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct VerificationReportJson {
    pub space: String,
    pub scope: EnumerationScopeJson,
    pub exhaustive: bool,
    pub operators_checked: u128,
    pub agm: u128,
    pub cl: u128,
    pub ecl: u128,
    pub agm_and_cl: u128,
    pub claims: Vec<ClaimReportJson>,
}

impl VerificationReportJson {
    pub fn new(space: &EpistemicSpace, r: &VerificationReport) -> Self {
        VerificationReportJson {
            space: r.space.clone(),
            scope: r.scope.into(),
            exhaustive: r.exhaustive,
            operators_checked: r.operators_checked,
            agm: r.agm,
            cl: r.cl,
            ecl: r.ecl,
            agm_and_cl: r.agm_and_cl,
            claims: r.claims.iter().map(|c| ClaimReportJson::new(space, c)).collect(),
        }
    }
}

fn counterexample_text(space: &EpistemicSpace, c: &Counterexample) -> String {
    match c {
        Counterexample::Operator { table, detail } => {
            let cells: Vec<&str> = table.iter().map(|s| space.state_name(*s)).collect();
            format!("operator [{}]: {detail}", cells.join(" "))
        }
        Counterexample::Assignment { detail, .. } => format!("assignment: {detail}"),
        Counterexample::BeliefTable { detail, .. } => format!("belief table: {detail}"),
        Counterexample::Lemma1 { order, x, y } => {
            let layers: Vec<String> = order.layers().iter().map(|l| format!("{:?}", indices(*l))).collect();
            format!(
                "preorder {} with X = {:?}, Y = {:?}",
                layers.join(" < "),
                indices(*x),
                indices(*y)
            )
        }
    }
}

pub fn verification_text(space: &EpistemicSpace, r: &VerificationReport) -> String {
    let mut out = String::new();
    let atoms = space.signature().atoms().join(", ");
    out.push_str(&format!(
        "space {}: {} states over {{{atoms}}}{}\n",
        r.space,
        space.len(),
        if space.is_globally_consistent() { "" } else { ", not globally consistent" }
    ));
    out.push_str(&format!(
        "operators: {} of {} ({})\n",
        r.operators_checked,
        count_text(r.scope.operator_count),
        if r.exhaustive { "exhaustive" } else { "sampled" }
    ));
    out.push_str(&format!(
        "assignments: {} valid, {} faithful\n",
        count_text(r.scope.assignment_count),
        count_text(r.scope.faithful_assignment_count)
    ));
    out.push_str(&format!(
        "|AGMRev| = {}  |CLRev| = {}  |ECLRev| = {}  |AGMRev & CLRev| = {}\n",
        r.agm, r.cl, r.ecl, r.agm_and_cl
    ));
    for c in &r.claims {
        let counts: Vec<String> = c.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let line = format!("{:<10} {:<14} {}", c.claim.name(), c.verdict.name(), counts.join(" "));
        out.push_str(line.trim_end());
        out.push('\n');
        if let Some(note) = &c.note {
            out.push_str(&format!("           note: {note}\n"));
        }
        if let Some(x) = &c.counterexample {
            out.push_str(&format!("           counterexample: {}\n", counterexample_text(space, x)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use epispace::fixtures::build_example1;
    use epispace::postulates::check;
    use epispace::PostulateId;

    #[test]
    fn saturated_counts_are_marked() {
        assert_eq!(count_text(256), "256");
        assert!(count_text(u128::MAX).ends_with("(saturated)"));
    }

    #[test]
    fn witnesses_render_with_names() {
        let (sp, op) = build_example1();
        let r = check(&op, PostulateId::CL3u).unwrap();
        assert_eq!(check_text(&sp, &r), "CL3u     violated  witness (PsiBot, {a}, {-a, a})");
        let v = serde_json::to_value(CheckResultJson::new(&sp, &r)).unwrap();
        assert_eq!(v["witness"]["kind"], "input_pair");
        assert_eq!(v["witness"]["second"], serde_json::json!(["-a", "a"]));
    }

    #[test]
    fn counts_keep_their_order() {
        let c = Counts(vec![("z", 1), ("a", 2)]);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"z":1,"a":2}"#);
    }
}
