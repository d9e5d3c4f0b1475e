//! Line-oriented text formats for spaces, operators and assignments.
//!
//! All three share the same lexical rules: one directive per line, tokens
//! separated by whitespace, `#` starts a comment.

use std::fmt::Write;
use std::sync::Arc;

use crate::assignments::{Assignment, FalsumFlag, StateAssignment, TotalPreorder};
use crate::error::{Error, Result};
use crate::logic::{Signature, WorldSet};
use crate::operators::SemanticOperator;
use crate::space::{EpistemicSpace, StateId};

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn directives(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn worlds_at(sig: &Signature, line: usize, tokens: &[&str]) -> Result<WorldSet> {
    let mut set = WorldSet::EMPTY;
    for t in tokens {
        let w = sig
            .parse_world(t)
            .map_err(|_| Error::format(line, *t, "not an interpretation over the signature"))?;
        set = set.with(w);
    }
    Ok(set)
}

fn expect(line: usize, tokens: &[&str], at: usize, keyword: &str) -> Result<()> {
    match tokens.get(at) {
        Some(t) if *t == keyword => Ok(()),
        Some(t) => Err(Error::format(line, *t, format!("expected `{keyword}`"))),
        None => Err(Error::format(line, "", format!("expected `{keyword}`"))),
    }
}

fn state_at(space: &EpistemicSpace, line: usize, token: Option<&&str>) -> Result<StateId> {
    let token = token.ok_or_else(|| Error::format(line, "", "missing state name"))?;
    space
        .state_by_name(token)
        .ok_or_else(|| Error::format(line, *token, "unknown state"))
}

/// Reads a space; `name` is recorded as the space's name.
pub fn parse_space(text: &str, name: &str) -> Result<EpistemicSpace> {
    let mut sig: Option<Signature> = None;
    let mut states: Vec<(String, WorldSet)> = Vec::new();
    let mut last_line = 0;
    for (line, tokens) in directives(text) {
        last_line = line;
        match tokens[0] {
            "sig" => {
                if sig.is_some() {
                    return Err(Error::format(line, "sig", "signature declared twice"));
                }
                let s = Signature::new(tokens[1..].iter().copied())
                    .map_err(|e| Error::format(line, tokens[1..].join(" "), e.to_string()))?;
                sig = Some(s);
            }
            "state" => {
                let sig = sig
                    .as_ref()
                    .ok_or_else(|| Error::format(line, "state", "`sig` must come first"))?;
                let name = tokens
                    .get(1)
                    .ok_or_else(|| Error::format(line, "state", "missing state name"))?;
                expect(line, &tokens, 2, "models:")?;
                if states.iter().any(|(n, _)| n == name) {
                    return Err(Error::format(line, *name, "duplicate state name"));
                }
                let models = worlds_at(sig, line, &tokens[3..])?;
                states.push((name.to_string(), models));
            }
            other => return Err(Error::format(line, other, "unknown directive")),
        }
    }
    let sig = sig.ok_or_else(|| Error::format(last_line.max(1), "", "missing `sig` directive"))?;
    if states.is_empty() {
        return Err(Error::format(last_line.max(1), "", "no `state` directives"));
    }
    EpistemicSpace::new(name, sig, states)
}

pub fn write_space(space: &EpistemicSpace) -> String {
    let mut out = format!("sig {}\n", space.signature().atoms().join(" "));
    let width = space.states().map(|s| space.state_name(s).len()).max().unwrap_or(0);
    for s in space.states() {
        let models = space.signature().render_worlds(space.beliefs(s));
        let line = format!("state {:<width$} models: {models}", space.state_name(s));
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    out
}

/// Reads an operator over `space`. Every `(state, input)` row must appear
/// exactly once.
pub fn parse_operator(text: &str, space: &Arc<EpistemicSpace>) -> Result<SemanticOperator> {
    let sig = space.signature();
    let inputs = sig.input_count();
    let mut table: Vec<Option<StateId>> = vec![None; space.len() * inputs];
    let mut header = false;
    let mut last_line = 0;
    for (line, tokens) in directives(text) {
        last_line = line;
        match tokens[0] {
            "op" => {
                if header {
                    return Err(Error::format(line, "op", "header repeated"));
                }
                expect(line, &tokens, 1, "for")?;
                if tokens.len() != 3 {
                    return Err(Error::format(line, tokens.join(" "), "expected `op for <space>`"));
                }
                header = true;
            }
            "row" => {
                if !header {
                    return Err(Error::format(line, "row", "`op for <space>` must come first"));
                }
                let state = state_at(space, line, tokens.get(1))?;
                expect(line, &tokens, 2, "input:")?;
                let arrow = tokens
                    .iter()
                    .position(|t| *t == "->")
                    .ok_or_else(|| Error::format(line, tokens.join(" "), "missing `->`"))?;
                let listed = &tokens[3..arrow];
                let input = if listed == ["(empty)"] {
                    WorldSet::EMPTY
                } else if listed.is_empty() {
                    return Err(Error::format(line, "->", "empty input list; write `(empty)`"));
                } else {
                    worlds_at(sig, line, listed)?
                };
                if tokens.len() != arrow + 2 {
                    let token = tokens.get(arrow + 2).copied().unwrap_or("->");
                    return Err(Error::format(line, token, "expected exactly one target state"));
                }
                let target = state_at(space, line, tokens.get(arrow + 1))?;
                let cell = &mut table[state.0 * inputs + input.index()];
                if cell.is_some() {
                    return Err(Error::format(line, tokens[1], "row listed twice"));
                }
                *cell = Some(target);
            }
            other => return Err(Error::format(line, other, "unknown directive")),
        }
    }
    if !header {
        return Err(Error::format(last_line.max(1), "", "missing `op for <space>` header"));
    }
    let mut full = Vec::with_capacity(table.len());
    for (i, cell) in table.into_iter().enumerate() {
        match cell {
            Some(t) => full.push(t),
            None => {
                let state = StateId(i / inputs);
                let input = WorldSet((i % inputs) as u16);
                return Err(Error::format(
                    last_line,
                    space.state_name(state),
                    format!("no row for input {}", render_input(sig, input)),
                ));
            }
        }
    }
    SemanticOperator::new(space.clone(), full)
}

fn render_input(sig: &Signature, input: WorldSet) -> String {
    if input.is_empty() {
        "(empty)".to_string()
    } else {
        sig.render_worlds(input)
    }
}

pub fn write_operator(op: &SemanticOperator) -> String {
    let sp = op.space();
    let sig = sp.signature();
    let name_width = sp.states().map(|s| sp.state_name(s).len()).max().unwrap_or(0);
    let input_width = sig
        .world_sets()
        .map(|a| render_input(sig, a).len())
        .max()
        .unwrap_or(0);
    let mut out = format!("op for {}\n", sp.name());
    for s in sp.states() {
        for a in sig.world_sets() {
            writeln!(
                out,
                "row {:<name_width$} input: {:<input_width$} -> {}",
                sp.state_name(s),
                render_input(sig, a),
                sp.state_name(op.apply_set(s, a))
            )
            .unwrap();
        }
    }
    out
}

/// Reads an assignment for `space`; each state needs exactly one line.
pub fn parse_assignment(text: &str, space: &EpistemicSpace) -> Result<Assignment> {
    let sig = space.signature();
    let mut entries: Vec<Option<StateAssignment>> = vec![None; space.len()];
    let mut header = false;
    let mut last_line = 0;
    for (line, raw) in directives(text) {
        last_line = line;
        match raw[0] {
            "assign" => {
                if header {
                    return Err(Error::format(line, "assign", "header repeated"));
                }
                expect(line, &raw, 1, "for")?;
                if raw.len() != 3 {
                    return Err(Error::format(line, raw.join(" "), "expected `assign for <space>`"));
                }
                header = true;
            }
            "state" => {
                if !header {
                    return Err(Error::format(line, "state", "`assign for <space>` must come first"));
                }
                let tokens = split_brackets(&raw);
                let state = state_at(space, line, tokens.get(1))?;
                expect(line, &tokens, 2, "b:")?;
                let flag_token = tokens
                    .get(3)
                    .ok_or_else(|| Error::format(line, "b:", "missing flag"))?;
                let flag: FalsumFlag = flag_token
                    .parse()
                    .map_err(|_| Error::format(line, *flag_token, "flag must be `top` or `bot`"))?;
                expect(line, &tokens, 4, "C:")?;
                let order_at = tokens
                    .iter()
                    .position(|t| *t == "order:")
                    .ok_or_else(|| Error::format(line, tokens.join(" "), "missing `order:`"))?;
                let credible = worlds_at(sig, line, &tokens[5..order_at])?;
                let layers = parse_layers(sig, line, &tokens[order_at + 1..])?;
                let order = TotalPreorder::new(credible, layers)
                    .map_err(|e| Error::format(line, "order:", e.to_string()))?;
                if entries[state.0].is_some() {
                    return Err(Error::format(line, tokens[1], "state listed twice"));
                }
                entries[state.0] = Some(StateAssignment::new(credible, order, flag));
            }
            other => return Err(Error::format(line, other, "unknown directive")),
        }
    }
    if !header {
        return Err(Error::format(last_line.max(1), "", "missing `assign for <space>` header"));
    }
    let mut full = Vec::with_capacity(entries.len());
    for (i, e) in entries.into_iter().enumerate() {
        full.push(e.ok_or_else(|| {
            Error::format(last_line, space.state_name(StateId(i)), "state has no line")
        })?);
    }
    Assignment::new(space, full).map_err(|e| Error::format(last_line, "", e.to_string()))
}

/// Splits `[ab]`, `[ab` and `a-b]` so brackets become their own tokens.
fn split_brackets<'a>(tokens: &[&'a str]) -> Vec<&'a str> {
    let mut out = Vec::new();
    for t in tokens {
        let mut rest: &'a str = t;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('[') {
                out.push("[");
                rest = r;
            } else if let Some(r) = rest.strip_prefix(']') {
                out.push("]");
                rest = r;
            } else {
                let end = rest.find(['[', ']']).unwrap_or(rest.len());
                out.push(&rest[..end]);
                rest = &rest[end..];
            }
        }
    }
    out
}

fn parse_layers(sig: &Signature, line: usize, tokens: &[&str]) -> Result<Vec<WorldSet>> {
    let mut layers = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i] != "[" {
            return Err(Error::format(line, tokens[i], "expected `[` to open a layer"));
        }
        let close = tokens[i..]
            .iter()
            .position(|t| *t == "]")
            .map(|p| p + i)
            .ok_or_else(|| Error::format(line, "[", "unclosed layer"))?;
        if let Some(nested) = tokens[i + 1..close].iter().find(|t| **t == "[") {
            return Err(Error::format(line, *nested, "nested layer"));
        }
        layers.push(worlds_at(sig, line, &tokens[i + 1..close])?);
        i = close + 1;
    }
    Ok(layers)
}

pub fn write_assignment(space: &EpistemicSpace, assignment: &Assignment) -> String {
    let sig = space.signature();
    let width = space.states().map(|s| space.state_name(s).len()).max().unwrap_or(0);
    let mut out = format!("assign for {}\n", space.name());
    for s in space.states() {
        let e = assignment.get(s);
        let layers = e
            .order
            .layers()
            .iter()
            .map(|l| format!("[{}]", sig.render_worlds(*l)))
            .collect::<Vec<_>>()
            .join(" ");
        let line = format!(
            "state {:<width$} b: {}  C: {}  order: {}",
            space.state_name(s),
            e.flag,
            sig.render_worlds(e.credible),
            layers
        );
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    out
}
