//! Text formats for instances, solutions, multigraphs, and max-k-cover
//! inputs.
//!
//! All formats are ASCII with LF line endings and 1-based indices. Lines
//! whose first token is `c` are comments. Parsers report the offending line
//! number; serializers emit canonical bytes, so serialize-parse round trips
//! are byte identical on canonical files.

use std::collections::HashSet;
use std::fmt::Write as _;

use spm_core::graph::{BipartiteInstance, Matching, Multigraph, ProblemKind, Solution};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, msg: impl Into<String>) -> Self {
        Self {
            line,
            msg: msg.into(),
        }
    }
}

/// A max-k-cover input: universe size, the set family, and the pick count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MkcInstance {
    pub universe_n: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

/// Sidecar metadata emitted next to generated gadget instances, carrying the
/// source problem a verifier needs to certify the optimum identity.
#[derive(Debug, Clone, PartialEq)]
pub enum Sidecar {
    Vc(Multigraph),
    Kcover { mkc: MkcInstance, copies: usize },
}

/// Significant lines with their 1-based numbers: blanks and `c` comments are
/// skipped.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            None | Some(&"c") => None,
            _ => Some((i + 1, tokens)),
        }
    })
}

fn parse_count(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{token}`")))
}

/// 1-based index in `[1, size]`, returned 0-based.
fn parse_index(line: usize, token: &str, size: usize, what: &str) -> Result<usize, ParseError> {
    let v = parse_count(line, token, what)?;
    if v == 0 || v > size {
        return Err(ParseError::new(
            line,
            format!("{what} {v} out of range (1..={size})"),
        ));
    }
    Ok(v - 1)
}

fn expect_len(line: usize, tokens: &[&str], n: usize, shape: &str) -> Result<(), ParseError> {
    if tokens.len() != n {
        return Err(ParseError::new(line, format!("expected `{shape}`")));
    }
    Ok(())
}

fn eof_line(text: &str) -> usize {
    text.lines().count() + 1
}

/// Parses the `p spm` instance format.
pub fn parse_instance(text: &str) -> Result<BipartiteInstance, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();

    for (line, tokens) in significant_lines(text) {
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::new(line, "duplicate problem line"));
                }
                expect_len(line, &tokens, 5, "p spm <n_a> <n_b> <n_edges>")?;
                if tokens[1] != "spm" {
                    return Err(ParseError::new(
                        line,
                        format!("expected `p spm`, got `p {}`", tokens[1]),
                    ));
                }
                header = Some((
                    parse_count(line, tokens[2], "good count")?,
                    parse_count(line, tokens[3], "bidder count")?,
                    parse_count(line, tokens[4], "edge count")?,
                ));
            }
            "e" => {
                let (n_a, n_b, n_e) =
                    header.ok_or_else(|| ParseError::new(line, "edge before the problem line"))?;
                expect_len(line, &tokens, 3, "e <a> <b>")?;
                if edges.len() == n_e {
                    return Err(ParseError::new(line, format!("more than {n_e} edge lines")));
                }
                let a = parse_index(line, tokens[1], n_a, "good index")?;
                let b = parse_index(line, tokens[2], n_b, "bidder index")?;
                if !seen.insert((a, b)) {
                    return Err(ParseError::new(
                        line,
                        format!("duplicate edge ({} {})", a + 1, b + 1),
                    ));
                }
                edges.push((a, b));
            }
            other => return Err(ParseError::new(line, format!("unexpected line `{other}`"))),
        }
    }

    let (n_a, n_b, n_e) =
        header.ok_or_else(|| ParseError::new(eof_line(text), "missing problem line"))?;
    if edges.len() != n_e {
        return Err(ParseError::new(
            eof_line(text),
            format!("expected {n_e} edge lines, found {}", edges.len()),
        ));
    }
    BipartiteInstance::new(n_a, n_b, &edges)
        .map_err(|e| ParseError::new(eof_line(text), e.to_string()))
}

pub fn serialize_instance(inst: &BipartiteInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p spm {} {} {}",
        inst.n_a(),
        inst.n_b(),
        inst.n_edges()
    );
    for (a, b) in inst.edges() {
        let _ = writeln!(out, "e {} {}", a + 1, b + 1);
    }
    out
}

/// Parses the solution format: an `s` line, an `S` line, a `W` line, then
/// one `m` line per matched pair.
pub fn parse_solution(text: &str) -> Result<Solution, ParseError> {
    let mut kind_profit: Option<(ProblemKind, usize)> = None;
    let mut s_set: Option<Vec<usize>> = None;
    let mut w_set: Option<Vec<usize>> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    for (line, tokens) in significant_lines(text) {
        match tokens[0] {
            "s" => {
                if kind_profit.is_some() {
                    return Err(ParseError::new(line, "duplicate s line"));
                }
                expect_len(line, &tokens, 3, "s <2pm|2ppm> <profit>")?;
                let kind: ProblemKind = tokens[1].parse().map_err(|e| ParseError::new(line, e))?;
                let profit = parse_count(line, tokens[2], "profit")?;
                kind_profit = Some((kind, profit));
            }
            "S" => {
                if s_set.is_some() {
                    return Err(ParseError::new(line, "duplicate S line"));
                }
                let vals = tokens[1..]
                    .iter()
                    .map(|t| parse_positive(line, t, "bidder index"))
                    .collect::<Result<Vec<_>, _>>()?;
                s_set = Some(vals);
            }
            "W" => {
                if w_set.is_some() {
                    return Err(ParseError::new(line, "duplicate W line"));
                }
                let vals = tokens[1..]
                    .iter()
                    .map(|t| parse_positive(line, t, "good index"))
                    .collect::<Result<Vec<_>, _>>()?;
                w_set = Some(vals);
            }
            "m" => {
                expect_len(line, &tokens, 3, "m <a> <b>")?;
                pairs.push((
                    parse_positive(line, tokens[1], "good index")?,
                    parse_positive(line, tokens[2], "bidder index")?,
                ));
            }
            other => return Err(ParseError::new(line, format!("unexpected line `{other}`"))),
        }
    }

    let (kind, profit) =
        kind_profit.ok_or_else(|| ParseError::new(eof_line(text), "missing s line"))?;
    Ok(Solution {
        kind,
        s_set: s_set.ok_or_else(|| ParseError::new(eof_line(text), "missing S line"))?,
        w_set: w_set.ok_or_else(|| ParseError::new(eof_line(text), "missing W line"))?,
        matching: Matching::from_pairs(pairs),
        profit,
    })
}

/// 1-based positive index, returned 0-based; range checks against the
/// instance are the validator's job.
fn parse_positive(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    let v = parse_count(line, token, what)?;
    if v == 0 {
        return Err(ParseError::new(line, format!("{what} must be positive")));
    }
    Ok(v - 1)
}

pub fn serialize_solution(sol: &Solution) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "s {} {}", sol.kind, sol.profit);
    let _ = write!(out, "S");
    for &b in &sol.s_set {
        let _ = write!(out, " {}", b + 1);
    }
    out.push('\n');
    let _ = write!(out, "W");
    for &a in &sol.w_set {
        let _ = write!(out, " {}", a + 1);
    }
    out.push('\n');
    for &(a, b) in sol.matching.pairs() {
        let _ = writeln!(out, "m {} {}", a + 1, b + 1);
    }
    out
}

/// Parses the `p mg` multigraph format; parallel edges allowed, loops not.
pub fn parse_multigraph(text: &str) -> Result<Multigraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for (line, tokens) in significant_lines(text) {
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::new(line, "duplicate problem line"));
                }
                expect_len(line, &tokens, 4, "p mg <n_v> <n_edges>")?;
                if tokens[1] != "mg" {
                    return Err(ParseError::new(
                        line,
                        format!("expected `p mg`, got `p {}`", tokens[1]),
                    ));
                }
                header = Some((
                    parse_count(line, tokens[2], "vertex count")?,
                    parse_count(line, tokens[3], "edge count")?,
                ));
            }
            "g" => {
                let (n_v, n_e) =
                    header.ok_or_else(|| ParseError::new(line, "edge before the problem line"))?;
                expect_len(line, &tokens, 3, "g <u> <v>")?;
                if edges.len() == n_e {
                    return Err(ParseError::new(line, format!("more than {n_e} edge lines")));
                }
                let u = parse_index(line, tokens[1], n_v, "vertex index")?;
                let v = parse_index(line, tokens[2], n_v, "vertex index")?;
                if u == v {
                    return Err(ParseError::new(line, format!("loop at vertex {}", u + 1)));
                }
                edges.push((u, v));
            }
            other => return Err(ParseError::new(line, format!("unexpected line `{other}`"))),
        }
    }

    let (n_v, n_e) =
        header.ok_or_else(|| ParseError::new(eof_line(text), "missing problem line"))?;
    if edges.len() != n_e {
        return Err(ParseError::new(
            eof_line(text),
            format!("expected {n_e} edge lines, found {}", edges.len()),
        ));
    }
    Multigraph::new(n_v, edges).map_err(|e| ParseError::new(eof_line(text), e.to_string()))
}

pub fn serialize_multigraph(g: &Multigraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p mg {} {}", g.n_v(), g.n_edges());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "g {} {}", u + 1, v + 1);
    }
    out
}

/// Parses the `p mkc` max-k-cover format: `m` set lines follow the header.
pub fn parse_mkc(text: &str) -> Result<MkcInstance, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut sets: Vec<Vec<usize>> = Vec::new();

    for (line, tokens) in significant_lines(text) {
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::new(line, "duplicate problem line"));
                }
                expect_len(line, &tokens, 5, "p mkc <n> <m> <k>")?;
                if tokens[1] != "mkc" {
                    return Err(ParseError::new(
                        line,
                        format!("expected `p mkc`, got `p {}`", tokens[1]),
                    ));
                }
                let n = parse_count(line, tokens[2], "universe size")?;
                let m = parse_count(line, tokens[3], "family size")?;
                let k = parse_count(line, tokens[4], "cover size")?;
                if k > m {
                    return Err(ParseError::new(line, format!("k = {k} exceeds m = {m}")));
                }
                header = Some((n, m, k));
            }
            "t" => {
                let (n, m, _) =
                    header.ok_or_else(|| ParseError::new(line, "set before the problem line"))?;
                if sets.len() == m {
                    return Err(ParseError::new(line, format!("more than {m} set lines")));
                }
                let mut set = tokens[1..]
                    .iter()
                    .map(|t| parse_index(line, t, n, "element"))
                    .collect::<Result<Vec<_>, _>>()?;
                set.sort_unstable();
                if set.windows(2).any(|w| w[0] == w[1]) {
                    return Err(ParseError::new(line, "duplicate element in set"));
                }
                sets.push(set);
            }
            other => return Err(ParseError::new(line, format!("unexpected line `{other}`"))),
        }
    }

    let (universe_n, m, k) =
        header.ok_or_else(|| ParseError::new(eof_line(text), "missing problem line"))?;
    if sets.len() != m {
        return Err(ParseError::new(
            eof_line(text),
            format!("expected {m} set lines, found {}", sets.len()),
        ));
    }
    Ok(MkcInstance {
        universe_n,
        sets,
        k,
    })
}

pub fn serialize_mkc(mkc: &MkcInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p mkc {} {} {}", mkc.universe_n, mkc.sets.len(), mkc.k);
    for set in &mkc.sets {
        let _ = write!(out, "t");
        let mut sorted = set.clone();
        sorted.sort_unstable();
        for e in sorted {
            let _ = write!(out, " {}", e + 1);
        }
        out.push('\n');
    }
    out
}

/// Parses a gadget sidecar: a `meta` line followed by the embedded source.
pub fn parse_sidecar(text: &str) -> Result<Sidecar, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let meta = lines
        .iter()
        .enumerate()
        .map(|(i, line)| (i, line.split_whitespace().collect::<Vec<&str>>()))
        .find(|(_, tokens)| !matches!(tokens.first(), None | Some(&"c")));
    let Some((idx, tokens)) = meta else {
        return Err(ParseError::new(eof_line(text), "missing meta line"));
    };
    let lineno = idx + 1;
    if tokens[0] != "meta" {
        return Err(ParseError::new(lineno, "expected a meta line"));
    }
    let mut rest = lines[idx + 1..].join("\n");
    if !rest.is_empty() {
        rest.push('\n');
    }
    match tokens.get(1) {
        Some(&"vc") => Ok(Sidecar::Vc(shift_lines(parse_multigraph(&rest), lineno)?)),
        Some(&"mkc") => {
            let copies = tokens
                .get(2)
                .ok_or_else(|| ParseError::new(lineno, "expected `meta mkc <copies>`"))
                .and_then(|t| parse_count(lineno, t, "copy count"))?;
            Ok(Sidecar::Kcover {
                mkc: shift_lines(parse_mkc(&rest), lineno)?,
                copies,
            })
        }
        other => Err(ParseError::new(
            lineno,
            format!("unknown sidecar type {other:?}"),
        )),
    }
}

fn shift_lines<T>(r: Result<T, ParseError>, offset: usize) -> Result<T, ParseError> {
    r.map_err(|e| ParseError {
        line: e.line + offset,
        msg: e.msg,
    })
}

pub fn serialize_sidecar(sidecar: &Sidecar) -> String {
    match sidecar {
        Sidecar::Vc(src) => format!("meta vc\n{}", serialize_multigraph(src)),
        Sidecar::Kcover { mkc, copies } => {
            format!("meta mkc {copies}\n{}", serialize_mkc(mkc))
        }
    }
}
