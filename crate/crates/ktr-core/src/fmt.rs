//! Plain-text instance formats.
//!
//! Three whitespace-separated formats share one lexer; `#` starts a comment
//! that runs to end of line.
//!
//! ```text
//! PCA <n> <P>          # circular-arc instance, then n rows
//! <start> <end> <q> <t>
//!
//! CHD <n> <P>          # chord instance, then n rows
//! <p1> <p2> <q> <t>
//!
//! BIP <nU> <nV> <mE>   # bipartite graph, then mE rows
//! <u> <v>
//! ```
//!
//! PCA rows may arrive in any order; labels are assigned by clockwise start
//! position and the q/t columns follow the relabeling. CHD rows keep their
//! input order as labels. `t` is 1 for target elements, 0 otherwise.

use crate::error::{Error, Result};
use crate::geometry::{label_arcs, Arc, ArcFamily, Chord, ChordFamily};
use crate::hardness::{BipartiteGraph, ReductionOutput};
use crate::model::{Family, ReliabilityInstance};

/// Either kind of parsed input.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedInput {
    Instance(ReliabilityInstance),
    Bipartite(BipartiteGraph),
}

struct TokenLines<'a> {
    lines: std::str::Lines<'a>,
    line_no: usize,
}

impl<'a> TokenLines<'a> {
    fn new(text: &'a str) -> Self {
        TokenLines {
            lines: text.lines(),
            line_no: 0,
        }
    }

    /// Next line holding any tokens, with its 1-based number.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for line in self.lines.by_ref() {
            self.line_no += 1;
            let content = line.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((self.line_no, tokens));
            }
        }
        None
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse::<T>()
        .map_err(|_| parse_err(line, format!("invalid {what}: {token:?}")))
}

fn parse_flag(line: usize, token: &str) -> Result<bool> {
    match token {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(parse_err(line, format!("target flag must be 0 or 1, got {token:?}"))),
    }
}

struct ElementRow {
    a: u32,
    b: u32,
    q: f64,
    target: bool,
}

fn parse_element_rows(
    lines: &mut TokenLines,
    n: usize,
    p: u32,
    arcs: bool,
) -> Result<Vec<ElementRow>> {
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, tokens) = lines
            .next_tokens()
            .ok_or_else(|| parse_err(lines_count(lines), "missing element row"))?;
        if tokens.len() != 4 {
            return Err(parse_err(line, "expected 4 fields: two positions, q, target flag"));
        }
        let a: u32 = parse_num(line, tokens[0], "position")?;
        let b: u32 = parse_num(line, tokens[1], "position")?;
        if a >= p || b >= p {
            return Err(parse_err(line, format!("position out of range 0..{p}")));
        }
        if a == b {
            let what = if arcs {
                "arc start equals end"
            } else {
                "chord endpoints coincide"
            };
            return Err(parse_err(line, what));
        }
        let q: f64 = parse_num(line, tokens[2], "failure probability")?;
        let target = parse_flag(line, tokens[3])?;
        rows.push(ElementRow { a, b, q, target });
    }
    Ok(rows)
}

fn lines_count(lines: &TokenLines) -> usize {
    lines.line_no + 1
}

fn expect_end(lines: &mut TokenLines) -> Result<()> {
    if let Some((line, _)) = lines.next_tokens() {
        return Err(parse_err(line, "unexpected trailing content"));
    }
    Ok(())
}

/// Parse any of the three formats, validating the result.
pub fn parse_instance(text: &str) -> Result<ParsedInput> {
    Ok(parse_instance_impl(text, false)?.0)
}

/// Like [`parse_instance`], but zeroes nonzero failure probabilities on
/// targets instead of rejecting them, reporting how many were touched.
pub fn parse_instance_lenient(text: &str) -> Result<(ParsedInput, usize)> {
    parse_instance_impl(text, true)
}

fn parse_instance_impl(text: &str, coerce_targets: bool) -> Result<(ParsedInput, usize)> {
    let mut lines = TokenLines::new(text);
    let (line, header) = lines
        .next_tokens()
        .ok_or_else(|| parse_err(1, "empty input"))?;
    match header[0] {
        "PCA" | "CHD" => {
            if header.len() != 3 {
                return Err(parse_err(line, "header must be: PCA|CHD <n> <P>"));
            }
            let n: usize = parse_num(line, header[1], "element count")?;
            let p: u32 = parse_num(line, header[2], "circumference")?;
            let mut rows = parse_element_rows(&mut lines, n, p, header[0] == "PCA")?;
            expect_end(&mut lines)?;
            let mut coerced = 0;
            if coerce_targets {
                for row in &mut rows {
                    if row.target && row.q != 0.0 {
                        row.q = 0.0;
                        coerced += 1;
                    }
                }
            }
            let inst = if header[0] == "PCA" {
                instance_from_arc_rows(p, rows)?
            } else {
                instance_from_chord_rows(p, rows)?
            };
            Ok((ParsedInput::Instance(inst), coerced))
        }
        "BIP" => {
            if header.len() != 4 {
                return Err(parse_err(line, "header must be: BIP <nU> <nV> <mE>"));
            }
            let nu: u32 = parse_num(line, header[1], "left part size")?;
            let nv: u32 = parse_num(line, header[2], "right part size")?;
            let me: usize = parse_num(line, header[3], "edge count")?;
            let mut edges = Vec::with_capacity(me);
            for _ in 0..me {
                let (eline, tokens) = lines
                    .next_tokens()
                    .ok_or_else(|| parse_err(lines_count(&lines), "missing edge row"))?;
                if tokens.len() != 2 {
                    return Err(parse_err(eline, "expected 2 fields: u v"));
                }
                let u: u32 = parse_num(eline, tokens[0], "left vertex")?;
                let v: u32 = parse_num(eline, tokens[1], "right vertex")?;
                if u >= nu || v >= nv {
                    return Err(parse_err(eline, format!("edge ({u}, {v}) out of range")));
                }
                edges.push((u, v));
            }
            expect_end(&mut lines)?;
            Ok((ParsedInput::Bipartite(BipartiteGraph::new(nu, nv, edges)?), 0))
        }
        other => Err(parse_err(line, format!("unknown format {other:?}"))),
    }
}

fn instance_from_arc_rows(p: u32, rows: Vec<ElementRow>) -> Result<ReliabilityInstance> {
    let arcs: Vec<Arc> = rows
        .iter()
        .map(|r| Arc {
            start: r.a,
            end: r.b,
        })
        .collect();
    let unlabeled = ArcFamily::new(p, arcs)?;
    let (labeled, perm) = label_arcs(&unlabeled);
    let mut q = vec![0.0; rows.len()];
    let mut targets = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let label = perm[idx];
        q[label as usize] = row.q;
        if row.target {
            targets.push(label);
        }
    }
    ReliabilityInstance::new(Family::Arcs(labeled), q, targets)
}

fn instance_from_chord_rows(p: u32, rows: Vec<ElementRow>) -> Result<ReliabilityInstance> {
    let chords: Vec<Chord> = rows.iter().map(|r| Chord { p1: r.a, p2: r.b }).collect();
    let family = ChordFamily::new(p, chords)?;
    let q: Vec<f64> = rows.iter().map(|r| r.q).collect();
    let targets: Vec<u32> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.target)
        .map(|(i, _)| i as u32)
        .collect();
    ReliabilityInstance::new(Family::Chords(family), q, targets)
}

/// Serialize an instance back to its format. Probabilities print in shortest
/// round-trip form, so emit-then-parse reproduces the instance exactly.
pub fn emit_instance(inst: &ReliabilityInstance) -> String {
    let mut out = String::new();
    match inst.family() {
        Family::Arcs(f) => {
            out.push_str(&format!("PCA {} {}\n", f.len(), f.circumference()));
            for (label, arc) in f.arcs().iter().enumerate() {
                out.push_str(&format!(
                    "{} {} {} {}\n",
                    arc.start,
                    arc.end,
                    inst.q()[label],
                    u8::from(inst.is_target(label as u32))
                ));
            }
        }
        Family::Chords(f) => {
            out.push_str(&format!("CHD {} {}\n", f.len(), f.circumference()));
            for (label, chord) in f.chords().iter().enumerate() {
                out.push_str(&format!(
                    "{} {} {} {}\n",
                    chord.p1,
                    chord.p2,
                    inst.q()[label],
                    u8::from(inst.is_target(label as u32))
                ));
            }
        }
    }
    out
}

/// Serialize a bipartite graph.
pub fn emit_bipartite(b: &BipartiteGraph) -> String {
    let mut out = format!(
        "BIP {} {} {}\n",
        b.left_count(),
        b.right_count(),
        b.edge_count()
    );
    for &(u, v) in b.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Serialize a reduction as a CHD instance with a role map in comments.
pub fn emit_reduction(red: &ReductionOutput) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "CHD {} {}\n",
        red.chords.len(),
        red.chords.circumference()
    ));
    out.push_str("# circle representation of a bipartite graph; roles:\n");
    for (label, role) in red.roles.iter().enumerate() {
        out.push_str(&format!("# role {label} {role}\n"));
    }
    let inst = red.to_instance();
    for (label, chord) in red.chords.chords().iter().enumerate() {
        out.push_str(&format!(
            "{} {} {} {}\n",
            chord.p1,
            chord.p2,
            red.q[label],
            u8::from(inst.is_target(label as u32))
        ));
    }
    out
}
