//! Edge-list and graph6 text formats.
//!
//! Edge list: the first non-comment line holds `n`, every further
//! non-comment line one `u v` pair (0-indexed). Lines starting with `#` are
//! comments. graph6 follows the usual format; the `>>graph6<<` header is
//! accepted on read and never written.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing vertex count")]
    MissingCount,
    #[error("graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edge_list(text: &str) -> Result<Tree, FormatError> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or(FormatError::MissingCount)?;
    let n: usize = first
        .parse()
        .map_err(|_| FormatError::Syntax { line, message: format!("expected vertex count, found {first:?}") })?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let mut next = || -> Result<Vertex, FormatError> {
            parts
                .next()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| FormatError::Syntax { line, message: format!("expected `u v`, found {l:?}") })
        };
        let (u, v) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(FormatError::Syntax { line, message: format!("trailing tokens in {l:?}") });
        }
        edges.push((u, v));
    }
    Ok(Tree::from_edges(n, &edges)?)
}

/// Several edge lists back to back; each block starts with its vertex count
/// on a line of its own, blank lines separate blocks.
pub fn parse_edge_lists(text: &str) -> Result<Vec<Tree>, FormatError> {
    let mut out = Vec::new();
    let mut block = String::new();
    for l in text.lines().chain(std::iter::once("")) {
        if l.trim().is_empty() {
            if content_lines(&block).next().is_some() {
                out.push(parse_edge_list(&block)?);
            }
            block.clear();
        } else {
            block.push_str(l);
            block.push('\n');
        }
    }
    Ok(out)
}

pub fn write_edge_list(t: &Tree) -> String {
    let mut s = format!("{}\n", t.order());
    for (u, v) in t.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

const HEADER: &str = ">>graph6<<";

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

pub fn write_graph6(t: &Tree) -> String {
    let n = t.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(t.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - k);
            }
        }
        out.push(byte + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Tree, FormatError> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s).as_bytes();
    let bad = |m: &str| FormatError::Graph6(m.to_string());
    if s.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside the printable range 63..=126"));
    }
    let (n, rest) = match s {
        [] => return Err(bad("empty input")),
        [126, 126, r @ ..] if r.len() >= 6 => {
            (r[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), &r[6..])
        }
        [126, r @ ..] if r.len() >= 3 => {
            (r[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), &r[3..])
        }
        [126, ..] => return Err(bad("truncated vertex count")),
        [b, r @ ..] => ((b - 63) as usize, r),
    };
    let needed = n * n.saturating_sub(1) / 2;
    if rest.len() != needed.div_ceil(6) {
        return Err(bad(&format!("expected {} data bytes for n={n}, found {}", needed.div_ceil(6), rest.len())));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Tree::from_edges(n, &edges)?)
}
