//! Graphviz export of an operator's transition graph.
//!
//! Every input leading from one state to another contributes its minimal DNF
//! representative to the edge label. Inputs that leave a state unchanged are
//! folded into a single `*` self-loop.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt::Write;

use crate::logic::{representative, WorldSet};
use crate::operators::SemanticOperator;
use crate::space::StateId;

/// Source/target pairs joined by at least one input, self-loops excluded.
pub fn edge_relation(op: &SemanticOperator) -> BTreeSet<(StateId, StateId)> {
    let sp = op.space();
    sp.states()
        .flat_map(|s| sp.signature().world_sets().map(move |a| (s, op.apply_set(s, a))))
        .filter(|(s, t)| s != t)
        .collect()
}

/// Inputs grouped by the state they lead to from `state`.
pub fn outgoing(op: &SemanticOperator, state: StateId) -> BTreeMap<StateId, Vec<WorldSet>> {
    let mut out: BTreeMap<StateId, Vec<WorldSet>> = BTreeMap::new();
    for a in op.space().signature().world_sets() {
        out.entry(op.apply_set(state, a)).or_default().push(a);
    }
    out
}

fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(op: &SemanticOperator) -> String {
    let sp = op.space();
    let sig = sp.signature();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(sp.name())).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for s in sp.states() {
        let label = format!("{}\n{}", sp.state_name(s), sig.render_set(sp.beliefs(s)));
        writeln!(out, "  {} [label={}];", quote(sp.state_name(s)), quote(&label)).unwrap();
    }
    for s in sp.states() {
        for (target, inputs) in outgoing(op, s) {
            let label = if target == s {
                "*".to_string()
            } else {
                inputs
                    .iter()
                    .map(|a| representative(*a, sig).display(sig).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(sp.state_name(s)),
                quote(sp.state_name(target)),
                quote(&label)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
