//! Line-oriented text formats for DAGs, set systems and transit functions.
//!
//! All three share the same lexical rules: UTF-8, one `key: values` entry per
//! line, `#` starts a comment, blank lines are ignored, labels are
//! whitespace-free tokens.
//!
//! ```text
//! # DAG                 # set system          # transit function
//! vertex: r             ground: a b c         ground: a b c
//! edge: r a             set: a b              arity: 2
//!                                             map: a b -> a b c
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::bitset::LeafSet;
use crate::dag::Dag;
use crate::error::Error;
use crate::set_system::{GroundSet, SetSystem};
use crate::transit::TransitFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    /// The input is well-formed but describes an invalid object.
    Invalid(Error),
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => f.write_str(m),
            ParseErrorKind::Invalid(e) => e.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn syntax(self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }

    fn invalid(self, e: Error) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind: ParseErrorKind::Invalid(e),
        }
    }
}

#[derive(Debug)]
struct Token<'a> {
    pos: Pos,
    text: &'a str,
}

#[derive(Debug)]
struct Entry<'a> {
    key: Token<'a>,
    values: Vec<Token<'a>>,
}

/// Splits the input into `key: values` entries.
fn entries(input: &str) -> Result<Vec<Entry<'_>>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (b, ch)) in line.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((b, col)),
                (true, Some((s, c))) => {
                    tokens.push(Token {
                        pos: Pos {
                            line: i + 1,
                            column: c + 1,
                        },
                        text: &line[s..b],
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((s, c)) = start {
            tokens.push(Token {
                pos: Pos {
                    line: i + 1,
                    column: c + 1,
                },
                text: &line[s..],
            });
        }
        let mut it = tokens.into_iter();
        let Some(first) = it.next() else { continue };
        let (key, rest) = match first.text.find(':') {
            Some(p) => (&first.text[..p], &first.text[p + 1..]),
            None => {
                return Err(first
                    .pos
                    .syntax(format!("expected `key:`, found `{}`", first.text)))
            }
        };
        let mut values = Vec::new();
        if !rest.is_empty() {
            let column = first.pos.column + key.chars().count() + 1;
            values.push(Token {
                pos: Pos {
                    line: first.pos.line,
                    column,
                },
                text: rest,
            });
        }
        values.extend(it);
        out.push(Entry {
            key: Token {
                pos: first.pos,
                text: key,
            },
            values,
        });
    }
    Ok(out)
}

fn end_of(input: &str) -> Pos {
    Pos {
        line: input.lines().count() + 1,
        column: 1,
    }
}

fn unknown_key(key: &Token<'_>) -> ParseError {
    key.pos.syntax(format!("unknown key `{}`", key.text))
}

fn exactly<'a, 'b>(entry: &'b Entry<'a>, n: usize) -> Result<&'b [Token<'a>], ParseError> {
    if entry.values.len() != n {
        let pos = entry.values.get(n).map_or(entry.key.pos, |t| t.pos);
        return Err(pos.syntax(format!(
            "`{}:` takes {n} value(s), found {}",
            entry.key.text,
            entry.values.len()
        )));
    }
    Ok(&entry.values)
}

/// Parses the DAG format. Vertices are declared in order of first mention,
/// whether by `vertex:` or as an edge endpoint.
pub fn parse_dag(input: &str) -> Result<Dag, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_pos: HashMap<(usize, usize), Pos> = HashMap::new();
    let mut declared: HashSet<&str> = HashSet::new();
    let mut intern = |t: &Token<'_>, labels: &mut Vec<String>| -> usize {
        *index.entry(t.text.to_string()).or_insert_with(|| {
            labels.push(t.text.to_string());
            labels.len() - 1
        })
    };
    for e in entries(input)? {
        match e.key.text {
            "vertex" => {
                for t in &e.values {
                    if !declared.insert(t.text) {
                        return Err(t.pos.invalid(Error::DuplicateLabel(t.text.to_string())));
                    }
                    intern(t, &mut labels);
                }
                if e.values.is_empty() {
                    return Err(e.key.pos.syntax("`vertex:` needs a label"));
                }
            }
            "edge" => {
                let v = exactly(&e, 2)?;
                let (p, c) = (intern(&v[0], &mut labels), intern(&v[1], &mut labels));
                if p == c {
                    return Err(v[0].pos.invalid(Error::CycleDetected(vec![
                        v[0].text.into(),
                        v[1].text.into(),
                    ])));
                }
                if edge_pos.insert((p, c), v[0].pos).is_some() {
                    return Err(v[0]
                        .pos
                        .invalid(Error::DuplicateEdge(v[0].text.into(), v[1].text.into())));
                }
                edges.push((p, c));
            }
            _ => return Err(unknown_key(&e.key)),
        }
    }
    if labels.is_empty() {
        return Err(end_of(input).invalid(Error::EmptyGraph));
    }
    let by_label: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    Dag::from_parts(labels.iter().cloned().collect(), edges).map_err(|err| {
        let pos = match &err {
            Error::CycleDetected(cycle) if cycle.len() >= 2 => {
                let key = (by_label[cycle[0].as_str()], by_label[cycle[1].as_str()]);
                edge_pos.get(&key).copied().unwrap_or(end_of(input))
            }
            _ => end_of(input),
        };
        pos.invalid(err)
    })
}

fn parse_ground(e: &Entry<'_>) -> Result<GroundSet, ParseError> {
    for (i, t) in e.values.iter().enumerate() {
        if e.values[..i].iter().any(|s| s.text == t.text) {
            return Err(t.pos.invalid(Error::DuplicateElement(t.text.to_string())));
        }
    }
    GroundSet::new(e.values.iter().map(|t| t.text)).map_err(|err| e.key.pos.invalid(err))
}

fn parse_subset(ground: &GroundSet, tokens: &[Token<'_>]) -> Result<LeafSet, ParseError> {
    let mut set = ground.empty_set();
    for t in tokens {
        let i = ground
            .index(t.text)
            .ok_or_else(|| t.pos.invalid(Error::ElementNotInGround(t.text.to_string())))?;
        set.insert(i);
    }
    Ok(set)
}

fn header_ground<'a>(
    entry: &Entry<'a>,
    ground: &Option<GroundSet>,
) -> Result<GroundSet, ParseError> {
    if ground.is_some() {
        return Err(entry.key.pos.syntax("`ground:` given twice"));
    }
    parse_ground(entry)
}

fn need_ground<'g>(
    ground: &'g Option<GroundSet>,
    entry: &Entry<'_>,
) -> Result<&'g GroundSet, ParseError> {
    ground.as_ref().ok_or_else(|| {
        entry
            .key
            .pos
            .syntax(format!("`{}:` before `ground:`", entry.key.text))
    })
}

pub fn parse_set_system(input: &str) -> Result<SetSystem, ParseError> {
    let mut ground: Option<GroundSet> = None;
    let mut members: Vec<LeafSet> = Vec::new();
    for e in entries(input)? {
        match e.key.text {
            "ground" => ground = Some(header_ground(&e, &ground)?),
            "set" => {
                let g = need_ground(&ground, &e)?;
                let set = parse_subset(g, &e.values)?;
                if set.is_empty() {
                    return Err(e.key.pos.invalid(Error::EmptyMember));
                }
                if members.contains(&set) {
                    return Err(e.key.pos.invalid(Error::DuplicateMember(g.format(&set))));
                }
                members.push(set);
            }
            _ => return Err(unknown_key(&e.key)),
        }
    }
    let ground = ground.ok_or_else(|| end_of(input).syntax("missing `ground:`"))?;
    SetSystem::new(ground, members).map_err(|err| end_of(input).invalid(err))
}

/// Parses the transit format. With `implicit_t3`, singletons missing from the
/// table map to themselves.
pub fn parse_transit(input: &str, implicit_t3: bool) -> Result<TransitFunction, ParseError> {
    let mut ground: Option<GroundSet> = None;
    let mut arity: Option<usize> = None;
    let mut table: Vec<(LeafSet, LeafSet)> = Vec::new();
    let mut seen: HashMap<LeafSet, Pos> = HashMap::new();
    for e in entries(input)? {
        match e.key.text {
            "ground" => ground = Some(header_ground(&e, &ground)?),
            "arity" => {
                if arity.is_some() {
                    return Err(e.key.pos.syntax("`arity:` given twice"));
                }
                let v = exactly(&e, 1)?;
                let k: usize = v[0]
                    .text
                    .parse()
                    .map_err(|_| v[0].pos.syntax("arity must be an integer"))?;
                if k < 2 {
                    return Err(v[0].pos.invalid(Error::InvalidK { k, min: 2 }));
                }
                arity = Some(k);
            }
            "map" => {
                let g = need_ground(&ground, &e)?;
                let k = arity.ok_or_else(|| e.key.pos.syntax("`map:` before `arity:`"))?;
                let arrow = e
                    .values
                    .iter()
                    .position(|t| t.text == "->")
                    .ok_or_else(|| e.key.pos.syntax("`map:` needs `->`"))?;
                let (lhs, rhs) = (&e.values[..arrow], &e.values[arrow + 1..]);
                let u = parse_subset(g, lhs)?;
                if u.is_empty() || lhs.len() > k {
                    return Err(e.key.pos.invalid(Error::NotInDomain(g.format(&u))));
                }
                let r = parse_subset(g, rhs)?;
                if seen.insert(u.clone(), e.key.pos).is_some() {
                    return Err(e.key.pos.invalid(Error::DuplicateEntry(g.format(&u))));
                }
                table.push((u, r));
            }
            _ => return Err(unknown_key(&e.key)),
        }
    }
    let end = end_of(input);
    let ground = ground.ok_or_else(|| end.syntax("missing `ground:`"))?;
    let arity = arity.ok_or_else(|| end.syntax("missing `arity:`"))?;
    if implicit_t3 {
        for x in 0..ground.len() {
            let s = ground.singleton(x);
            if !seen.contains_key(&s) {
                table.push((s.clone(), s));
            }
        }
    }
    TransitFunction::new(ground, arity, table).map_err(|err| end.invalid(err))
}

/// Canonical DAG file: every vertex declared in order, then every edge.
pub fn emit_dag(dag: &Dag) -> String {
    let mut out = String::new();
    for l in dag.labels() {
        out.push_str("vertex: ");
        out.push_str(l);
        out.push('\n');
    }
    for (p, c) in dag.edges() {
        out.push_str(&format!("edge: {} {}\n", dag.label(p), dag.label(c)));
    }
    out
}

fn line(key: &str, items: &[String]) -> String {
    if items.is_empty() {
        format!("{key}:\n")
    } else {
        format!("{key}: {}\n", items.join(" "))
    }
}

pub fn emit_set_system(sys: &SetSystem) -> String {
    let mut out = line("ground", sys.ground().labels());
    for m in sys.members() {
        out.push_str(&line("set", &sys.names(m)));
    }
    out
}

pub fn emit_transit(tf: &TransitFunction) -> String {
    let g = tf.ground();
    let mut out = line("ground", g.labels());
    out.push_str(&format!("arity: {}\n", tf.arity()));
    for (u, r) in tf.entries() {
        let mut items = g.names(u);
        items.push("->".into());
        items.extend(g.names(r));
        out.push_str(&line("map", &items));
    }
    out
}
