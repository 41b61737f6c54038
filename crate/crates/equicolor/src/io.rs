//! Text formats for graphs and colourings.
//!
//! Graph format (line-based, `#` starts a comment):
//! ```text
//! n 4
//! outer 0 1 2 3
//! e 0 1
//! e 1 2
//! ```
//! The `outer` line is optional and lists all vertices in boundary order.
//!
//! Colouring format:
//! ```text
//! s 3
//! c 0 1
//! c 1 2
//! ```

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        msg: msg.into(),
    }
}

/// Meaningful (line number, tokenized) lines: comments and blanks stripped.
fn tokenize(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                None
            } else {
                Some((i + 1, body.split_whitespace().collect()))
            }
        })
        .collect()
}

fn parse_num(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| perr(line, format!("expected {what}, got '{tok}'")))
}

/// Parses the graph format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let lines = tokenize(text);
    let mut it = lines.into_iter();
    let Some((ln, head)) = it.next() else {
        return Err(perr(1, "empty input: expected 'n <count>'"));
    };
    if head.len() != 2 || head[0] != "n" {
        return Err(perr(ln, "first line must be 'n <count>'"));
    }
    let n = parse_num(head[1], ln, "vertex count")?;
    let mut g = Graph::new(n);
    let mut outer_seen = false;
    for (ln, toks) in it {
        match toks[0] {
            "outer" => {
                if outer_seen {
                    return Err(perr(ln, "duplicate 'outer' line"));
                }
                outer_seen = true;
                let mut order = Vec::with_capacity(toks.len() - 1);
                for t in &toks[1..] {
                    order.push(parse_num(t, ln, "vertex id")?);
                }
                g.set_outer_order(order)
                    .map_err(|e| perr(ln, format!("bad outer order: {e}")))?;
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(perr(ln, "edge line must be 'e <u> <v>'"));
                }
                let u = parse_num(toks[1], ln, "vertex id")?;
                let v = parse_num(toks[2], ln, "vertex id")?;
                if u >= n || v >= n {
                    return Err(perr(ln, format!("edge ({u},{v}) out of range for n={n}")));
                }
                if u == v {
                    return Err(perr(ln, format!("self-loop at vertex {u}")));
                }
                if !g.add_edge(u, v) {
                    return Err(perr(ln, format!("duplicate edge ({u},{v})")));
                }
            }
            kw => return Err(perr(ln, format!("unknown keyword '{kw}'"))),
        }
    }
    Ok(g)
}

/// Formats a graph; `parse_graph(format_graph(g)) == g`.
pub fn format_graph(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", g.n()));
    if let Some(order) = g.outer_order() {
        out.push_str("outer");
        for v in order {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// Parses the colouring format; `n` comes from the accompanying graph.
/// Vertices absent from the file stay uncoloured (verification then fails).
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring> {
    let lines = tokenize(text);
    let mut it = lines.into_iter();
    let Some((ln, head)) = it.next() else {
        return Err(perr(1, "empty input: expected 's <count>'"));
    };
    if head.len() != 2 || head[0] != "s" {
        return Err(perr(ln, "first line must be 's <count>'"));
    }
    let s = parse_num(head[1], ln, "colour count")?;
    if s == 0 {
        return Err(perr(ln, "colour count must be at least 1"));
    }
    let mut col = Coloring::new(n, s);
    for (ln, toks) in it {
        match toks[0] {
            "c" => {
                if toks.len() != 3 {
                    return Err(perr(ln, "colour line must be 'c <vertex> <colour>'"));
                }
                let v = parse_num(toks[1], ln, "vertex id")?;
                let c = parse_num(toks[2], ln, "colour")?;
                if v >= n {
                    return Err(perr(ln, format!("vertex {v} out of range for n={n}")));
                }
                if c < 1 || c > s {
                    return Err(perr(ln, format!("colour {c} out of range 1..={s}")));
                }
                if col.get(v).is_some() {
                    return Err(perr(ln, format!("vertex {v} coloured twice")));
                }
                col.set(v, c);
            }
            kw => return Err(perr(ln, format!("unknown keyword '{kw}'"))),
        }
    }
    Ok(col)
}

/// Formats a colouring (assigned vertices only, in vertex order).
pub fn format_coloring(col: &Coloring) -> String {
    let mut out = String::new();
    out.push_str(&format!("s {}\n", col.s()));
    for v in 0..col.n() {
        if let Some(c) = col.get(v) {
            out.push_str(&format!("c {v} {c}\n"));
        }
    }
    out
}
