//! The two worked example operators, the assignment behind the second one,
//! and the small spaces used for exhaustive checks.
//!
//! The example operators are written out case by case and never go through
//! [`synthesize`](crate::assignments::synthesize), so the two can be compared.

use std::sync::Arc;

use crate::assignments::{Assignment, FalsumFlag, StateAssignment, TotalPreorder};
use crate::logic::{Signature, WorldSet};
use crate::operators::SemanticOperator;
use crate::space::{EpistemicSpace, StateId};

fn sig(atoms: &[&str]) -> Signature {
    Signature::new(atoms.iter().copied()).expect("fixture signature is valid")
}

fn worlds(sig: &Signature, text: &str) -> WorldSet {
    sig.parse_worlds(text.split_whitespace())
        .expect("fixture interpretations are valid")
}

fn space(name: &str, sig: Signature, states: &[(&str, &str)]) -> Arc<EpistemicSpace> {
    let entries: Vec<(String, WorldSet)> = states
        .iter()
        .map(|(n, m)| (n.to_string(), worlds(&sig, m)))
        .collect();
    Arc::new(EpistemicSpace::new(name, sig, entries).expect("fixture space is valid"))
}

/// `Ψ_⊥` (no models) and `Ψ_a` over the signature `{a}`.
pub fn space_bot_a() -> Arc<EpistemicSpace> {
    space("ex1", sig(&["a"]), &[("PsiBot", ""), ("PsiA", "a")])
}

/// The globally consistent space `{Ψ_a, Ψ_ā, Ψ_{a,ā}}` over `{a}`.
pub fn space_three_a() -> Arc<EpistemicSpace> {
    space(
        "three",
        sig(&["a"]),
        &[("PsiA", "a"), ("PsiNA", "-a"), ("PsiANA", "a -a")],
    )
}

/// One state for each of the four belief sets over `{a}`.
pub fn space_four_a() -> Arc<EpistemicSpace> {
    space(
        "four",
        sig(&["a"]),
        &[("PsiBot", ""), ("PsiA", "a"), ("PsiNA", "-a"), ("PsiANA", "a -a")],
    )
}

/// The six states of the second example over `{a, b}`.
pub fn space_ex2() -> Arc<EpistemicSpace> {
    space(
        "ex2",
        sig(&["a", "b"]),
        &[
            ("PsiBot", ""),
            ("PsiAB", "ab"),
            ("PsiNAB", "-ab"),
            ("PsiANB", "a-b"),
            ("PsiNANB", "-a-b"),
            ("PsiNABANB", "-ab a-b"),
        ],
    )
}

/// First example: revising by `a` always lands in `Ψ_a`, by `¬a` or `⊥` in
/// `Ψ_⊥`. The tautology changes nothing.
pub fn build_example1() -> (Arc<EpistemicSpace>, SemanticOperator) {
    let sp = space_bot_a();
    let sig = sp.signature().clone();
    let a = worlds(&sig, "a");
    let na = worlds(&sig, "-a");
    let bot = sp.state_by_name("PsiBot").unwrap();
    let psi_a = sp.state_by_name("PsiA").unwrap();
    let op = SemanticOperator::from_fn(sp.clone(), |s, input| {
        if input == a {
            psi_a
        } else if input == na || input.is_empty() {
            bot
        } else {
            s
        }
    });
    (sp, op)
}

/// Second example, written from its closed form:
///
/// 1. consistent with the prior: the state holding `⟦Ψ⟧ ∩ ⟦α⟧`;
/// 2. `⊥` at `Ψ_{ab}`: `Ψ_⊥`;
/// 3. at `Ψ_{āb̄}`, inputs admitting both `āb` and `ab̄`: `Ψ_{āb,ab̄}`;
/// 4. otherwise the state for the `≪`-least credible input model, where
///    `ab ≪ āb ≪ ab̄ ≪ āb̄`, or the prior when no input model is credible.
pub fn build_example2() -> (Arc<EpistemicSpace>, SemanticOperator) {
    let sp = space_ex2();
    let sig = sp.signature().clone();
    let id = |n: &str| sp.state_by_name(n).unwrap();
    let w = |t: &str| sig.parse_world(t).unwrap();
    let ranking = [w("ab"), w("-ab"), w("a-b"), w("-a-b")];
    let credible = |s: StateId| -> WorldSet {
        match sp.state_name(s) {
            "PsiBot" => WorldSet::EMPTY,
            "PsiAB" => sig.full(),
            "PsiNAB" => worlds(&sig, "-ab"),
            "PsiANB" => worlds(&sig, "ab a-b"),
            _ => worlds(&sig, "-ab a-b -a-b"),
        }
    };
    let host = |set: WorldSet| {
        sp.states()
            .find(|t| sp.beliefs(*t) == set)
            .expect("every case lands on a declared state")
    };
    let both = worlds(&sig, "-ab a-b");
    let op = SemanticOperator::from_fn(sp.clone(), |s, input| {
        let overlap = sp.beliefs(s).intersection(input);
        if !overlap.is_empty() {
            host(overlap)
        } else if input.is_empty() && s == id("PsiAB") {
            id("PsiBot")
        } else if s == id("PsiNANB") && both.is_subset(input) {
            id("PsiNABANB")
        } else {
            let admitted = input.intersection(credible(s));
            match ranking.iter().find(|r| admitted.contains(**r)) {
                Some(least) => host(WorldSet::singleton(*least)),
                None => s,
            }
        }
    });
    (sp, op)
}

/// The faithful assignment the second example is built from.
pub fn example2_assignment(sp: &EpistemicSpace) -> Assignment {
    let sig = sp.signature().clone();
    let order = |layers: &[&str]| {
        TotalPreorder::from_layers(layers.iter().map(|l| worlds(&sig, l)).collect())
            .expect("fixture layers partition their domain")
    };
    let entry = |flag, layers: &[&str]| {
        let order = order(layers);
        StateAssignment::new(order.domain(), order, flag)
    };
    let entries = sp
        .states()
        .map(|s| match sp.state_name(s) {
            "PsiBot" => entry(FalsumFlag::Top, &[]),
            "PsiAB" => entry(FalsumFlag::Bot, &["ab", "-ab", "a-b", "-a-b"]),
            "PsiNAB" => entry(FalsumFlag::Top, &["-ab"]),
            "PsiANB" => entry(FalsumFlag::Top, &["a-b", "ab"]),
            "PsiNANB" => entry(FalsumFlag::Top, &["-a-b", "-ab a-b"]),
            "PsiNABANB" => entry(FalsumFlag::Top, &["-ab a-b", "-a-b"]),
            other => panic!("unexpected state `{other}`"),
        })
        .collect();
    Assignment::new(sp, entries).expect("fixture assignment is valid")
}
