//! Property tests for the invariants of every module.

mod common;

use std::sync::Arc;

use epispace::assignments::{
    extract, is_compatible, is_faithful, synthesize, Assignment, FalsumFlag, TotalPreorder,
};
use epispace::fixtures::{space_bot_a, space_ex2, space_four_a, space_three_a};
use epispace::logic::{entails, minterm, models, pair_formula, parse, representative, Formula, Signature, World};
use epispace::modelcheck::{lemma1_property, state_options, total_preorders, OperatorEnumerator};
use epispace::postulates::{check, classify, reproduces, satisfies, PostulateId, Verdict, Witness};
use epispace::{EpistemicSpace, SemanticOperator, StateId, WorldSet};
use proptest::prelude::*;
use proptest::sample::select;

use common::{formula_strategy, models_by_eval, Oracle};

fn sig(n: usize) -> Signature {
    Signature::new(["a", "b", "c", "d"].into_iter().take(n)).unwrap()
}

fn world_set(n: usize) -> impl Strategy<Value = WorldSet> {
    (0u32..(1 << (1 << n))).prop_map(|m| WorldSet(m as u16))
}

/// Random total table over `space`.
fn operator_on(space: Arc<EpistemicSpace>) -> impl Strategy<Value = SemanticOperator> {
    let cells = space.len() * space.signature().input_count();
    proptest::collection::vec(0..space.len(), cells).prop_map(move |t| {
        SemanticOperator::new(space.clone(), t.into_iter().map(StateId).collect()).unwrap()
    })
}

fn small_space_operator() -> impl Strategy<Value = SemanticOperator> {
    prop_oneof![
        operator_on(space_bot_a()),
        operator_on(space_three_a()),
        operator_on(space_four_a()),
        operator_on(space_ex2()),
    ]
}

/// Random operators biased towards the interesting classes: synthesized
/// from random assignments where the space hosts them, perturbed in one cell.
fn near_ecl_operator() -> impl Strategy<Value = SemanticOperator> {
    let spaces = vec![space_bot_a(), space_three_a(), space_four_a(), space_ex2()];
    (select(spaces), any::<u64>(), any::<u64>(), any::<bool>()).prop_map(|(sp, seed, cell, perturb)| {
        let mut pick = seed;
        let mut entries = Vec::new();
        for s in sp.states() {
            let options = state_options(&sp, s, true);
            entries.push(options[(pick % options.len() as u64) as usize].clone());
            pick = pick.rotate_left(17) ^ 0x9e37_79b9_7f4a_7c15;
        }
        let a = Assignment::new(&sp, entries).unwrap();
        let base = synthesize(&sp, &a)
            .unwrap_or_else(|_| SemanticOperator::from_fn(sp.clone(), |s, _| s));
        let mut table = base.table().to_vec();
        if perturb {
            let i = (cell % table.len() as u64) as usize;
            table[i] = StateId((cell / 7 % sp.len() as u64) as usize);
        }
        SemanticOperator::new(sp.clone(), table).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 512, ..ProptestConfig::default() })]

    #[test]
    fn models_match_world_by_world_evaluation(f in formula_strategy(4)) {
        prop_assert_eq!(models(&f, &sig(4)), models_by_eval(&f, 4));
    }

    #[test]
    fn connectives_are_set_operations(f in formula_strategy(3), g in formula_strategy(3)) {
        let s = sig(3);
        let (mf, mg) = (models(&f, &s), models(&g, &s));
        prop_assert_eq!(models(&Formula::and(f.clone(), g.clone()), &s), mf.intersection(mg));
        prop_assert_eq!(models(&Formula::or(f.clone(), g.clone()), &s), mf.union(mg));
        prop_assert_eq!(models(&Formula::not(f), &s), s.full().difference(mf));
    }

    #[test]
    fn printing_round_trips(f in formula_strategy(4)) {
        let s = sig(4);
        let printed = f.display(&s).to_string();
        prop_assert_eq!(parse(&printed, &s).unwrap(), f, "{}", printed);
    }

    #[test]
    fn whitespace_does_not_matter(f in formula_strategy(2)) {
        let s = sig(2);
        let printed = f.display(&s).to_string();
        let spaced = printed
            .replace("<->", "\u{1}")
            .replace("->", "\u{2}")
            .replace('(', " ( ")
            .replace(')', " ) ")
            .replace('&', "\t&\n")
            .replace('|', "  |  ")
            .replace('!', " ! ")
            .replace('\u{1}', " <-> ")
            .replace('\u{2}', " -> ");
        prop_assert_eq!(parse(&spaced, &s).unwrap(), f);
    }

    #[test]
    fn mutual_entailment_is_equality(a in world_set(3), b in world_set(3)) {
        prop_assert_eq!(entails(a, b) && entails(b, a), a == b);
    }

    #[test]
    fn minterms_and_pairs(n in 1usize..=4, i in 0u8..16, j in 0u8..16) {
        let s = sig(n);
        let (w1, w2) = (World(i % (1 << n)), World(j % (1 << n)));
        prop_assert_eq!(models(&minterm(w1, &s), &s), WorldSet::singleton(w1));
        prop_assert_eq!(models(&pair_formula(w1, w2, &s), &s), WorldSet::pair(w1, w2));
    }

    #[test]
    fn representatives_denote_their_set(n in 1usize..=3, m in any::<u16>()) {
        let s = sig(n);
        let set = WorldSet(m & s.full().0);
        let f = representative(set, &s);
        prop_assert_eq!(models(&f, &s), set);
        let printed = f.display(&s).to_string();
        prop_assert_eq!(models(&parse(&printed, &s).unwrap(), &s), set);
    }

    #[test]
    fn application_ignores_syntax(op in operator_on(space_ex2()), f in formula_strategy(2), state in 0usize..6) {
        let s = op.space().signature().clone();
        let equivalents = [
            Formula::not(Formula::not(f.clone())),
            Formula::and(f.clone(), Formula::Top),
            Formula::or(f.clone(), Formula::Bot),
            Formula::or(f.clone(), f.clone()),
            Formula::iff(f.clone(), Formula::Top),
        ];
        let target = op.apply(StateId(state), &f);
        for g in equivalents {
            prop_assert_eq!(models(&g, &s), models(&f, &s));
            prop_assert_eq!(op.apply(StateId(state), &g), target);
        }
    }

    #[test]
    fn resolve_state_finds_the_belief_set(beliefs in proptest::collection::vec(world_set(2), 1..6)) {
        let names: Vec<String> = (0..beliefs.len()).map(|i| format!("S{i}")).collect();
        let sp = EpistemicSpace::new("r", sig(2), names.into_iter().zip(beliefs.iter().copied())).unwrap();
        for s in sp.states() {
            let t = sp.resolve_state(sp.beliefs(s)).unwrap();
            prop_assert_eq!(sp.beliefs(t), sp.beliefs(s));
            prop_assert!(t <= s);
        }
        prop_assert_eq!(sp.is_globally_consistent(), beliefs.iter().all(|b| !b.is_empty()));
    }

    #[test]
    fn classification_agrees_with_the_oracle(op in small_space_operator()) {
        let m = classify(&op).unwrap();
        let o = Oracle::new(&op);
        prop_assert_eq!((m.agm, m.cl, m.ecl), (o.agm(), o.cl(), o.ecl()));
    }

    #[test]
    fn postulate_verdicts_agree_with_the_oracle(op in near_ecl_operator()) {
        let o = Oracle::new(&op);
        for p in PostulateId::ALL {
            prop_assert_eq!(satisfies(&op, p), o.holds(p), "{}", p);
        }
    }

    #[test]
    fn witnesses_are_genuine(op in near_ecl_operator()) {
        let o = Oracle::new(&op);
        for p in PostulateId::ALL {
            let r = check(&op, p).unwrap();
            prop_assert_eq!(r.witness.is_some(), r.verdict == Verdict::Violated);
            match r.witness {
                Some(Witness::Input { state, input }) => {
                    prop_assert!(reproduces(&op, p, &r.witness.unwrap()));
                    prop_assert!(!o.holds_at(p, state, input.0, 0),
                        "{} witness ({}, {:?}) holds under the oracle", p, state, input);
                }
                Some(Witness::InputPair { state, first, second }) => {
                    prop_assert!(reproduces(&op, p, &r.witness.unwrap()));
                    prop_assert!(!o.holds_at(p, state, first.0, second.0),
                        "{} witness ({}, {:?}, {:?}) holds under the oracle", p, state, first, second);
                }
                Some(other) => prop_assert!(false, "unexpected witness {:?}", other),
                None => prop_assert!(o.holds(p)),
            }
        }
    }

    #[test]
    fn wcp_agrees_with_its_contrapositive(op in small_space_operator()) {
        prop_assert_eq!(satisfies(&op, PostulateId::WCP), satisfies(&op, PostulateId::CL3wcp));
        prop_assert_eq!(satisfies(&op, PostulateId::ECL3), satisfies(&op, PostulateId::CL3wcp));
        prop_assert_eq!(satisfies(&op, PostulateId::ECL4), satisfies(&op, PostulateId::CL3u));
    }

    #[test]
    fn class_relations_hold(op in prop_oneof![small_space_operator(), near_ecl_operator()]) {
        let m = classify(&op).unwrap();
        prop_assert!(!(m.agm && m.cl));
        prop_assert!(!m.agm || m.ecl);
        prop_assert!(!m.cl || m.ecl);
        if !op.space().is_globally_consistent() {
            prop_assert!(!m.cl);
        }
        if satisfies(&op, PostulateId::CL3) {
            prop_assert!(satisfies(&op, PostulateId::CL3u) && satisfies(&op, PostulateId::CL3wcp));
        }
    }

    #[test]
    fn lemma1_on_random_preorders(layers in proptest::collection::vec(1u16..256, 0..5), x in any::<u16>(), y in any::<u16>()) {
        let mut seen = 0u16;
        let mut disjoint = Vec::new();
        for l in layers {
            let fresh = l & !seen;
            if fresh != 0 {
                disjoint.push(WorldSet(fresh));
                seen |= fresh;
            }
        }
        let order = TotalPreorder::from_layers(disjoint).unwrap();
        prop_assert!(lemma1_property(&order, WorldSet(x & seen), WorldSet(y & seen)).unwrap());
    }

    #[test]
    fn preorders_validate(domain in 0u16..64) {
        for order in total_preorders(WorldSet(domain)) {
            prop_assert!(order.validate().is_ok());
            prop_assert_eq!(order.domain(), WorldSet(domain));
        }
    }

    #[test]
    fn synthesized_operators_are_extended(op_seed in any::<u64>(), which in 0usize..4) {
        let sp = [space_bot_a(), space_three_a(), space_four_a(), space_ex2()][which].clone();
        let mut pick = op_seed;
        let entries = sp.states().map(|s| {
            let options = state_options(&sp, s, true);
            let e = options[(pick % options.len() as u64) as usize].clone();
            pick = pick.rotate_left(23) ^ 0xd1b5_4a32_d192_ed03;
            e
        }).collect();
        let a = Assignment::new(&sp, entries).unwrap();
        prop_assert!(is_faithful(&sp, &a).holds());
        if let Ok(op) = synthesize(&sp, &a) {
            prop_assert!(classify(&op).unwrap().ecl);
            prop_assert!(is_compatible(&sp, &a, &op).holds());
            // The compatible assignment is unique up to flags at states
            // without models.
            let back = extract(&op).unwrap();
            for s in sp.states() {
                let (x, y) = (a.get(s), back.get(s));
                prop_assert_eq!(x.credible, y.credible);
                prop_assert_eq!(&x.order, &y.order);
                if !sp.beliefs(s).is_empty() {
                    prop_assert_eq!(x.flag, y.flag);
                } else {
                    prop_assert_eq!(y.flag, FalsumFlag::Top);
                }
            }
        }
    }

    #[test]
    fn extraction_characterizes_the_extended_class(op in prop_oneof![small_space_operator(), near_ecl_operator()]) {
        let sp = op.space_arc().clone();
        let ecl = classify(&op).unwrap().ecl;
        let witnessed = match extract(&op) {
            Ok(a) => is_faithful(&sp, &a).holds() && is_compatible(&sp, &a, &op).holds(),
            Err(_) => false,
        };
        prop_assert_eq!(ecl, witnessed);
        if ecl {
            prop_assert!(synthesize(&sp, &extract(&op).unwrap()).unwrap().equivalent(&op));
        }
    }

    #[test]
    fn extraction_is_deterministic(op in small_space_operator()) {
        prop_assert_eq!(extract(&op), extract(&op.clone()));
    }

    #[test]
    fn enumeration_index_decodes_to_the_same_table(index in 0u128..531_441) {
        let ops = OperatorEnumerator::all(&space_three_a(), u128::MAX).unwrap();
        let op = ops.get(index);
        let mut back = 0u128;
        for t in op.table() {
            back = back * 3 + t.0 as u128;
        }
        prop_assert_eq!(back, index);
    }
}
