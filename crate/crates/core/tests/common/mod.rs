//! Test oracles that share no code with the library's checkers.
//!
//! Postulates are transcribed at the level of belief sets: a belief set is
//! the set of formula classes it contains, one class per model set, held as
//! a bit mask indexed by the class's model mask. Up to two atoms there are at
//! most 16 classes, so a `u128` is plenty.
#![allow(dead_code)]

use epispace::{PostulateId, SemanticOperator, StateId, WorldSet};

/// Set of formula classes (indexed by model mask) in a belief set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Theory(u128);

pub struct Oracle<'a> {
    op: &'a SemanticOperator,
    worlds: usize,
    classes: usize,
}

impl<'a> Oracle<'a> {
    pub fn new(op: &'a SemanticOperator) -> Self {
        let worlds = op.space().signature().world_count();
        let classes = 1usize << worlds;
        assert!(classes <= 128, "oracle handles at most two atoms");
        Oracle { op, worlds, classes }
    }

    fn formulas(&self) -> impl Iterator<Item = u16> + Clone {
        (0..self.classes as u32).map(|c| c as u16)
    }

    fn states(&self) -> impl Iterator<Item = StateId> + Clone {
        (0..self.op.space().len()).map(StateId)
    }

    /// Cn of a set of models: every formula class true in all of them.
    fn th(&self, models: u16) -> Theory {
        let mut t = 0u128;
        for gamma in self.formulas() {
            if models & !gamma == 0 {
                t |= 1 << gamma;
            }
        }
        Theory(t)
    }

    fn contains(t: Theory, alpha: u16) -> bool {
        t.0 >> alpha & 1 == 1
    }

    fn inconsistent(t: Theory) -> bool {
        Self::contains(t, 0)
    }

    fn subset(t: Theory, u: Theory) -> bool {
        t.0 & !u.0 == 0
    }

    /// Models of a theory: worlds satisfying every member.
    fn mod_of(&self, t: Theory) -> u16 {
        let all: u16 = ((1u32 << self.worlds) - 1) as u16;
        self.formulas()
            .filter(|g| Self::contains(t, *g))
            .fold(all, |acc, g| acc & g)
    }

    /// T + β = Cn(T ∪ {β}).
    fn plus(&self, t: Theory, beta: u16) -> Theory {
        self.th(self.mod_of(t) & beta)
    }

    fn bel(&self, s: StateId) -> Theory {
        self.th(self.op.space().beliefs(s).0)
    }

    fn bel_after(&self, s: StateId, alpha: u16) -> Theory {
        self.bel(self.op.apply_set(s, WorldSet(alpha)))
    }

    fn entails(a: u16, b: u16) -> bool {
        a & !b == 0
    }

    /// Whether the instance of `p` at state `s` with inputs `a` (and `b` for
    /// postulates quantifying over two formulas) holds.
    pub fn holds_at(&self, p: PostulateId, s: StateId, a: u16, b: u16) -> bool {
        use PostulateId::*;
        let r = |x: u16| self.bel_after(s, x);
        let incons = Self::inconsistent;
        match p {
            R1 => Self::contains(r(a), a),
            R2 | CL2 | ECL2 => {
                let expanded = self.plus(self.bel(s), a);
                incons(expanded) || r(a) == expanded
            }
            R3 => a == 0 || !incons(r(a)),
            R4 | CL4 | ECL5 => a != b || r(a) == r(b),
            R5 => Self::subset(r(a & b), self.plus(r(a), b)),
            R6 => {
                let e = self.plus(r(a), b);
                incons(e) || Self::subset(e, r(a & b))
            }
            CL1 | ECL1 => Self::contains(r(a), a) || r(a) == self.bel(s),
            CL3 => !incons(r(a)),
            CL3wcp | ECL3 => !incons(r(a)) || incons(self.bel(s)) || a == 0,
            WCP => incons(self.bel(s)) || a == 0 || !incons(r(a)),
            CL3u | ECL4 => incons(r(a)) || !Self::entails(a, b) || !incons(r(b)),
            CL5 | ECL6 => {
                !Self::contains(r(a), a) || !Self::entails(a, b) || Self::contains(r(b), b)
            }
            CL6 | ECL7 => {
                let (ra, rb, rab) = (r(a), r(b), r(a | b));
                rab == ra || rab == rb || rab == Theory(ra.0 & rb.0)
            }
        }
    }

    pub fn holds(&self, p: PostulateId) -> bool {
        self.states().all(|s| {
            self.formulas()
                .all(|a| self.formulas().all(|b| self.holds_at(p, s, a, b)))
        })
    }

    fn all_of(&self, ps: &[PostulateId]) -> bool {
        ps.iter().all(|p| self.holds(*p))
    }

    pub fn agm(&self) -> bool {
        use PostulateId::*;
        self.all_of(&[R1, R2, R3, R4, R5, R6])
    }

    pub fn cl(&self) -> bool {
        use PostulateId::*;
        self.all_of(&[CL1, CL2, CL3, CL4, CL5, CL6])
    }

    pub fn ecl(&self) -> bool {
        use PostulateId::*;
        self.all_of(&[ECL1, ECL2, ECL3, ECL4, ECL5, ECL6, ECL7])
    }
}

/// Truth value of `f` at the world whose bit `i` is atom `i`.
pub fn eval(f: &epispace::Formula, world: u8) -> bool {
    use epispace::Formula::*;
    match f {
        Top => true,
        Bot => false,
        Atom(i) => world >> i & 1 == 1,
        Not(g) => !eval(g, world),
        And(l, r) => eval(l, world) && eval(r, world),
        Or(l, r) => eval(l, world) || eval(r, world),
        Implies(l, r) => !eval(l, world) || eval(r, world),
        Iff(l, r) => eval(l, world) == eval(r, world),
    }
}

/// Model set by evaluating world by world.
pub fn models_by_eval(f: &epispace::Formula, atoms: usize) -> WorldSet {
    let mut mask = 0u16;
    for w in 0..(1u16 << atoms) {
        if eval(f, w as u8) {
            mask |= 1 << w;
        }
    }
    WorldSet(mask)
}

pub fn formula_strategy(atoms: usize) -> impl proptest::strategy::Strategy<Value = epispace::Formula> {
    use epispace::Formula;
    use proptest::prelude::*;
    let leaf = prop_oneof![
        1 => Just(Formula::Top),
        1 => Just(Formula::Bot),
        6 => (0..atoms).prop_map(Formula::Atom),
    ];
    leaf.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            2 => inner.clone().prop_map(Formula::not),
            3 => (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            3 => (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            2 => (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            2 => (inner.clone(), inner).prop_map(|(l, r)| Formula::iff(l, r)),
        ]
    })
}
