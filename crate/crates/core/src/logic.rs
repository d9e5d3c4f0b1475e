//! Propositional logic over a small finite signature.
//!
//! Worlds (interpretations) are numbered by their bit pattern: bit `i` of a
//! world index is the truth value of the `i`-th atom of the signature. A
//! [`WorldSet`] is a bit mask over world indices, so with at most four atoms
//! every set of worlds fits in a `u16`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of atoms.
pub const MAX_ATOMS: usize = 4;

/// An ordered, non-empty list of distinct atom names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    atoms: Vec<String>,
}

impl Signature {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::InvalidSignature("no atoms".into()));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidSignature(format!(
                "{} atoms given, at most {MAX_ATOMS} supported",
                atoms.len()
            )));
        }
        for (i, atom) in atoms.iter().enumerate() {
            if !is_identifier(atom) {
                return Err(Error::InvalidSignature(format!("`{atom}` is not an identifier")));
            }
            if is_keyword(atom) {
                return Err(Error::InvalidSignature(format!("`{atom}` is a reserved word")));
            }
            if atoms[..i].contains(atom) {
                return Err(Error::InvalidSignature(format!("duplicate atom `{atom}`")));
            }
        }
        Ok(Signature { atoms })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// |Ω|
    pub fn world_count(&self) -> usize {
        1 << self.atoms.len()
    }

    /// Number of distinct world sets, i.e. 2^|Ω|.
    pub fn input_count(&self) -> usize {
        1 << self.world_count()
    }

    /// Ω as a world set.
    pub fn full(&self) -> WorldSet {
        WorldSet(((1u32 << self.world_count()) - 1) as u16)
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> + Clone {
        (0..self.world_count()).map(|i| World(i as u8))
    }

    /// Every world set over this signature, in increasing mask order.
    pub fn world_sets(&self) -> impl Iterator<Item = WorldSet> + Clone {
        (0..self.input_count()).map(|m| WorldSet(m as u16))
    }

    pub fn contains_set(&self, set: WorldSet) -> bool {
        set.is_subset(self.full())
    }

    /// Parses an interpretation written as atoms in signature order, each
    /// optionally prefixed by `-` for false (`a-b` is a true, b false).
    pub fn parse_world(&self, text: &str) -> Result<World> {
        let mut rest = text;
        let mut index = 0u8;
        for (i, atom) in self.atoms.iter().enumerate() {
            let negated = rest.starts_with('-');
            if negated {
                rest = &rest[1..];
            }
            rest = rest
                .strip_prefix(atom.as_str())
                .ok_or_else(|| Error::InvalidInterpretation(text.to_string()))?;
            if !negated {
                index |= 1 << i;
            }
        }
        if !rest.is_empty() {
            return Err(Error::InvalidInterpretation(text.to_string()));
        }
        Ok(World(index))
    }

    pub fn render_world(&self, world: World) -> String {
        let mut out = String::new();
        for (i, atom) in self.atoms.iter().enumerate() {
            if !world.holds(i) {
                out.push('-');
            }
            out.push_str(atom);
        }
        out
    }

    /// Space-separated interpretation list, ascending by world index.
    pub fn render_worlds(&self, set: WorldSet) -> String {
        set.iter()
            .map(|w| self.render_world(w))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `{ab, a-b}` style rendering.
    pub fn render_set(&self, set: WorldSet) -> String {
        let inner = set
            .iter()
            .map(|w| self.render_world(w))
            .collect::<Vec<_>>()
            .join(", ");
        format!("{{{inner}}}")
    }

    /// Parses a whitespace-separated interpretation list.
    pub fn parse_worlds<'a, I>(&self, tokens: I) -> Result<WorldSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = WorldSet::EMPTY;
        for token in tokens {
            set = set.with(self.parse_world(token)?);
        }
        Ok(set)
    }

    /// The set of worlds where the atom with the given index is true.
    fn atom_models(&self, atom: usize) -> WorldSet {
        self.worlds().filter(|w| w.holds(atom)).collect()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "top" | "bot")
}

/// An interpretation, identified by its bit pattern over the signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World(pub u8);

impl World {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn holds(self, atom: usize) -> bool {
        (self.0 >> atom) & 1 == 1
    }
}

/// A set of worlds as a bit mask. Only meaningful together with a signature.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WorldSet(pub u16);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn singleton(world: World) -> Self {
        WorldSet(1 << world.0)
    }

    pub fn pair(first: World, second: World) -> Self {
        Self::singleton(first).union(Self::singleton(second))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    /// The mask as an index into per-input tables.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, world: World) -> bool {
        (self.0 >> world.0) & 1 == 1
    }

    pub fn with(self, world: World) -> Self {
        WorldSet(self.0 | (1 << world.0))
    }

    pub fn union(self, other: Self) -> Self {
        WorldSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        WorldSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        WorldSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = World> + Clone {
        let mask = self.0;
        (0..16u8).filter(move |i| (mask >> i) & 1 == 1).map(World)
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = WorldSet> {
        let full = self.0;
        let mut next = Some(0u16);
        std::iter::from_fn(move || {
            let current = next?;
            // Standard submask increment: next submask above `current`.
            next = if current == full {
                None
            } else {
                Some((current.wrapping_sub(full)) & full)
            };
            Some(WorldSet(current))
        })
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|w| w.0)).finish()
    }
}

impl FromIterator<World> for WorldSet {
    fn from_iter<T: IntoIterator<Item = World>>(iter: T) -> Self {
        iter.into_iter().fold(WorldSet::EMPTY, WorldSet::with)
    }
}

/// `A ⊆ B`: every model of the first is a model of the second.
pub fn entails(premise: WorldSet, conclusion: WorldSet) -> bool {
    premise.is_subset(conclusion)
}

/// Expansion of a belief set by new information, on the model side.
pub fn expand(beliefs: WorldSet, input: WorldSet) -> WorldSet {
    beliefs.intersection(input)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bot,
    /// Index into the ambient signature.
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Largest atom index used, if any.
    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Top | Formula::Bot => None,
            Formula::Atom(i) => Some(*i),
            Formula::Not(f) => f.max_atom(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.max_atom().max(r.max_atom()),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, sig }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Top | Formula::Bot | Formula::Atom(_) => 6,
        }
    }
}

/// Model set of a formula, computed bit-parallel over all worlds.
pub fn models(formula: &Formula, sig: &Signature) -> WorldSet {
    let full = sig.full();
    match formula {
        Formula::Top => full,
        Formula::Bot => WorldSet::EMPTY,
        Formula::Atom(i) => sig.atom_models(*i),
        Formula::Not(f) => full.difference(models(f, sig)),
        Formula::And(l, r) => models(l, sig).intersection(models(r, sig)),
        Formula::Or(l, r) => models(l, sig).union(models(r, sig)),
        Formula::Implies(l, r) => full.difference(models(l, sig)).union(models(r, sig)),
        Formula::Iff(l, r) => {
            let (l, r) = (models(l, sig), models(r, sig));
            full.difference(WorldSet(l.0 ^ r.0))
        }
    }
}

/// Conjunction of literals whose only model is `world`.
pub fn minterm(world: World, sig: &Signature) -> Formula {
    (0..sig.len())
        .map(|i| {
            if world.holds(i) {
                Formula::Atom(i)
            } else {
                Formula::not(Formula::Atom(i))
            }
        })
        .reduce(Formula::and)
        .expect("signature is non-empty")
}

/// Formula whose models are exactly the two given worlds.
pub fn pair_formula(first: World, second: World, sig: &Signature) -> Formula {
    if first == second {
        minterm(first, sig)
    } else {
        Formula::or(minterm(first, sig), minterm(second, sig))
    }
}

/// A cube: conjunction of literals over the atoms selected by `care`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cube {
    care: u8,
    value: u8,
}

impl Cube {
    fn worlds(self, sig: &Signature) -> WorldSet {
        sig.worlds()
            .filter(|w| w.0 & self.care == self.value)
            .collect()
    }

    fn literal_count(self) -> u32 {
        self.care.count_ones()
    }

    fn to_formula(self, sig: &Signature) -> Formula {
        let lits: Vec<Formula> = (0..sig.len())
            .filter(|i| (self.care >> i) & 1 == 1)
            .map(|i| {
                if (self.value >> i) & 1 == 1 {
                    Formula::Atom(i)
                } else {
                    Formula::not(Formula::Atom(i))
                }
            })
            .collect();
        lits.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }
}

/// A short DNF formula with the given model set, used for labels.
///
/// Exact minimum cover over prime implicants when the residual cover problem
/// is small, greedy otherwise.
pub fn representative(set: WorldSet, sig: &Signature) -> Formula {
    if set.is_empty() {
        return Formula::Bot;
    }
    if set == sig.full() {
        return Formula::Top;
    }
    let n = sig.len();
    let mut implicants = Vec::new();
    for care in 0u8..(1 << n) {
        let mut value = care;
        loop {
            let cube = Cube { care, value };
            let worlds = cube.worlds(sig);
            if worlds.is_subset(set) {
                implicants.push((cube, worlds));
            }
            if value == 0 {
                break;
            }
            value = (value - 1) & care;
        }
    }
    // Prime: not strictly contained in another implicant.
    let primes: Vec<(Cube, WorldSet)> = implicants
        .iter()
        .filter(|(_, w)| {
            !implicants
                .iter()
                .any(|(_, other)| *other != *w && w.is_subset(*other))
        })
        .copied()
        .collect();

    let mut chosen: Vec<(Cube, WorldSet)> = Vec::new();
    let mut covered = WorldSet::EMPTY;
    for world in set.iter() {
        let covering: Vec<_> = primes.iter().filter(|(_, w)| w.contains(world)).collect();
        if covering.len() == 1 && !chosen.contains(covering[0]) {
            chosen.push(*covering[0]);
            covered = covered.union(covering[0].1);
        }
    }
    let remaining: Vec<(Cube, WorldSet)> = primes
        .iter()
        .filter(|(c, w)| !chosen.iter().any(|(d, _)| d == c) && !w.is_subset(covered))
        .copied()
        .collect();
    if !set.is_subset(covered) {
        if remaining.len() <= 16 {
            let mut best: Option<(usize, u32, u32)> = None;
            for pick in 1u32..(1 << remaining.len()) {
                let cover = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (pick >> i) & 1 == 1)
                    .fold(covered, |acc, (_, (_, w))| acc.union(*w));
                if !set.is_subset(cover) {
                    continue;
                }
                let terms = pick.count_ones() as usize;
                let literals: u32 = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (pick >> i) & 1 == 1)
                    .map(|(_, (c, _))| c.literal_count())
                    .sum();
                if best.is_none_or(|(t, l, _)| (terms, literals) < (t, l)) {
                    best = Some((terms, literals, pick));
                }
            }
            let (_, _, pick) = best.expect("primes cover the set");
            for (i, prime) in remaining.iter().enumerate() {
                if (pick >> i) & 1 == 1 {
                    chosen.push(*prime);
                }
            }
        } else {
            while !set.is_subset(covered) {
                let next = remaining
                    .iter()
                    .max_by_key(|(c, w)| {
                        (w.difference(covered).len(), std::cmp::Reverse(c.literal_count()))
                    })
                    .expect("primes cover the set");
                chosen.push(*next);
                covered = covered.union(next.1);
            }
        }
    }
    chosen.sort_by_key(|(c, _)| (c.literal_count(), c.care, c.value));
    chosen
        .into_iter()
        .map(|(c, _)| c.to_formula(sig))
        .reduce(Formula::or)
        .expect("non-empty set has at least one implicant")
}

/// Pretty-printer using the ASCII surface syntax accepted by [`parse`].
pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    sig: &'a Signature,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, formula: &Formula) -> fmt::Result {
        match formula {
            Formula::Top => f.write_str("top"),
            Formula::Bot => f.write_str("bot"),
            Formula::Atom(i) => f.write_str(&self.sig.atoms()[*i]),
            Formula::Not(inner) => {
                f.write_str("!")?;
                self.child(f, inner, inner.precedence() < formula.precedence())
            }
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                let prec = formula.precedence();
                let right_assoc = matches!(formula, Formula::Implies(..));
                let (op, left_paren, right_paren) = (
                    match formula {
                        Formula::And(..) => " & ",
                        Formula::Or(..) => " | ",
                        Formula::Implies(..) => " -> ",
                        _ => " <-> ",
                    },
                    l.precedence() < prec || (right_assoc && l.precedence() == prec),
                    r.precedence() < prec || (!right_assoc && r.precedence() == prec),
                );
                self.child(f, l, left_paren)?;
                f.write_str(op)?;
                self.child(f, r, right_paren)
            }
        }
    }

    fn child(&self, f: &mut fmt::Formatter<'_>, child: &Formula, paren: bool) -> fmt::Result {
        if paren {
            f.write_str("(")?;
            self.write(f, child)?;
            f.write_str(")")
        } else {
            self.write(f, child)
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' | b'~' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'1' => Token::Top,
            b'0' => Token::Bot,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Token::Iff
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "top" => Token::Top,
                    "bot" => Token::Bot,
                    name => Token::Ident(name.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        tokens.push((token, start));
    }
    tokens.push((Token::End, text.len()));
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while *self.peek() == Token::Iff {
            self.bump();
            lhs = Formula::iff(lhs, self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Token::Implies {
            self.bump();
            return Ok(Formula::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while *self.peek() == Token::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let offset = self.offset();
        match self.bump() {
            Token::Not => Ok(Formula::not(self.unary()?)),
            Token::Top => Ok(Formula::Top),
            Token::Bot => Ok(Formula::Bot),
            Token::Ident(name) => self
                .sig
                .atom_index(&name)
                .map(Formula::Atom)
                .ok_or(Error::UnknownAtom { atom: name, offset }),
            Token::LParen => {
                let inner = self.iff()?;
                if *self.peek() != Token::RParen {
                    return Err(Error::Syntax {
                        offset: self.offset(),
                        message: "expected `)`".into(),
                    });
                }
                self.bump();
                Ok(inner)
            }
            Token::End => Err(Error::Syntax {
                offset,
                message: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                offset,
                message: format!("unexpected {other:?}"),
            }),
        }
    }
}

/// Parses a formula.
///
/// Grammar: `!`/`~` negation, `&`, `|`, `->` (right-associative), `<->`,
/// constants `top`/`1` and `bot`/`0`, parentheses. Precedence from tightest:
/// negation, `&`, `|`, `->`, `<->`. `&`, `|` and `<->` associate to the left.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        sig,
    };
    let formula = parser.iff()?;
    if *parser.peek() != Token::End {
        return Err(Error::Syntax {
            offset: parser.offset(),
            message: "trailing input".into(),
        });
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Signature {
        Signature::new(["a", "b"]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let sig = ab();
        assert_eq!(
            parse("a & !b", &sig).unwrap(),
            Formula::and(Formula::Atom(0), Formula::not(Formula::Atom(1)))
        );
        let a = Signature::new(["a"]).unwrap();
        assert_eq!(parse("bot", &a).unwrap(), Formula::Bot);
        let abc = Signature::new(["a", "b", "c"]).unwrap();
        assert_eq!(
            parse("a <-> b -> c", &abc).unwrap(),
            Formula::iff(
                Formula::Atom(0),
                Formula::implies(Formula::Atom(1), Formula::Atom(2))
            )
        );
    }

    #[test]
    fn implication_is_right_associative() {
        let abc = Signature::new(["a", "b", "c"]).unwrap();
        assert_eq!(
            parse("a -> b -> c", &abc).unwrap(),
            Formula::implies(
                Formula::Atom(0),
                Formula::implies(Formula::Atom(1), Formula::Atom(2))
            )
        );
    }

    #[test]
    fn parse_errors() {
        let sig = ab();
        assert_eq!(
            parse("a & c", &sig),
            Err(Error::UnknownAtom {
                atom: "c".into(),
                offset: 4
            })
        );
        assert!(matches!(parse("a &", &sig), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse("(a", &sig), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("a $ b", &sig), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("a b", &sig), Err(Error::Syntax { offset: 2, .. })));
    }

    #[test]
    fn model_examples() {
        let sig = ab();
        let w = |s: &str| sig.parse_world(s).unwrap();
        assert_eq!(models(&parse("bot", &sig).unwrap(), &sig), WorldSet::EMPTY);
        assert_eq!(
            models(&parse("a & !b", &sig).unwrap(), &sig),
            WorldSet::singleton(w("a-b"))
        );
        // rows: -a-b: !a=1,b=0 -> 0; a-b: 0,0 -> 1; -ab: 1,1 -> 1; ab: 0,1 -> 0
        assert_eq!(
            models(&parse("!a <-> b", &sig).unwrap(), &sig),
            WorldSet::pair(w("-ab"), w("a-b"))
        );
    }

    #[test]
    fn entailment_and_expansion() {
        let sig = ab();
        let w = |s: &str| sig.parse_world(s).unwrap();
        assert!(entails(WorldSet::EMPTY, WorldSet::singleton(w("ab"))));
        assert!(entails(WorldSet::singleton(w("ab")), WorldSet::pair(w("ab"), w("-ab"))));
        assert!(!entails(sig.full(), WorldSet::singleton(w("ab"))));

        assert_eq!(expand(sig.full(), WorldSet::singleton(w("ab"))), WorldSet::singleton(w("ab")));
        assert_eq!(
            expand(WorldSet::pair(w("ab"), w("-ab")), WorldSet::pair(w("-ab"), w("-a-b"))),
            WorldSet::singleton(w("-ab"))
        );
        assert_eq!(expand(WorldSet::EMPTY, sig.full()), WorldSet::EMPTY);
    }

    #[test]
    fn minterms_and_pairs() {
        let sig = ab();
        let w = |s: &str| sig.parse_world(s).unwrap();
        let m = minterm(w("a-b"), &sig);
        assert_eq!(m, Formula::and(Formula::Atom(0), Formula::not(Formula::Atom(1))));
        let p = pair_formula(w("ab"), w("-a-b"), &sig);
        assert_eq!(p.display(&sig).to_string(), "a & b | !a & !b");
        assert_eq!(models(&p, &sig), WorldSet::pair(w("ab"), w("-a-b")));
        let same = pair_formula(w("ab"), w("ab"), &sig);
        assert_eq!(models(&same, &sig), WorldSet::singleton(w("ab")));
    }

    #[test]
    fn world_strings() {
        let sig = Signature::new(["p1", "q"]).unwrap();
        let w = sig.parse_world("p1-q").unwrap();
        assert_eq!(w, World(0b01));
        assert_eq!(sig.render_world(w), "p1-q");
        assert_eq!(sig.render_world(World(0)), "-p1-q");
        assert!(sig.parse_world("q-p1").is_err());
        assert!(sig.parse_world("p1qq").is_err());
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(Vec::<String>::new()).is_err());
        assert!(Signature::new(["a", "a"]).is_err());
        assert!(Signature::new(["a", "b", "c", "d", "e"]).is_err());
        assert!(Signature::new(["top"]).is_err());
        assert!(Signature::new(["1x"]).is_err());
        assert_eq!(Signature::new(["a", "b", "c", "d"]).unwrap().full(), WorldSet(0xFFFF));
    }

    #[test]
    fn subsets_enumerates_all() {
        let set = WorldSet(0b1011);
        let subs: Vec<_> = set.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(set)));
        assert_eq!(WorldSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn representatives_have_the_right_models() {
        let sig = Signature::new(["a", "b", "c"]).unwrap();
        for set in sig.world_sets() {
            let f = representative(set, &sig);
            assert_eq!(models(&f, &sig), set, "{}", f.display(&sig));
        }
        let a = Signature::new(["a"]).unwrap();
        let not_a = WorldSet::singleton(a.parse_world("-a").unwrap());
        assert_eq!(representative(not_a, &a).display(&a).to_string(), "!a");
    }
}
