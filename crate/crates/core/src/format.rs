//! The line-oriented `.wm` text format.
//!
//! ```text
//! weakmodel v1
//! colors B R
//! node a B
//! node b B,R
//! edge a b 0.5
//! start a
//! ```
//!
//! `#` starts a comment, blank lines are ignored, and sections must appear in
//! the order shown. Probabilities are all-or-none across edges.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{WeakModel, WeakModelBuilder};

pub const HEADER: &str = "weakmodel v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Header,
    Colors,
    Nodes,
    Edges,
    Start,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_model(text: &str) -> Result<WeakModel> {
    let mut builder = WeakModelBuilder::default();
    let mut section = Section::Header;
    let mut seen_colors = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim_end();
        if content.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split(' ').collect();
        if tokens.iter().any(|t| t.is_empty()) {
            return Err(parse_err(line_no, "tokens must be separated by single spaces"));
        }
        let wrap = |e: Error| parse_err(line_no, e.to_string());

        if section == Section::Header {
            if content != HEADER {
                return Err(parse_err(line_no, format!("expected `{HEADER}`")));
            }
            section = Section::Colors;
            continue;
        }

        let keyword = tokens[0];
        let next = match keyword {
            "colors" => Section::Colors,
            "node" => Section::Nodes,
            "edge" => Section::Edges,
            "start" => Section::Start,
            other => return Err(parse_err(line_no, format!("unknown directive `{other}`"))),
        };
        // `colors` exactly once and first; afterwards sections never go back;
        // `start` at most once.
        let in_order = if next == Section::Colors {
            !seen_colors
        } else {
            seen_colors && next >= section && !(next == Section::Start && section == Section::Start)
        };
        if !in_order {
            return Err(parse_err(line_no, format!("`{keyword}` line out of order")));
        }
        seen_colors = true;

        match next {
            Section::Colors => {
                if tokens.len() < 2 {
                    return Err(parse_err(line_no, "`colors` needs at least one color"));
                }
                for c in &tokens[1..] {
                    builder.color(c).map_err(wrap)?;
                }
                section = Section::Nodes;
            }
            Section::Nodes => {
                if tokens.len() != 3 {
                    return Err(parse_err(line_no, "expected `node <id> <color>[,<color>...]`"));
                }
                let colors: Vec<&str> = tokens[2].split(',').collect();
                builder.node(tokens[1], &colors).map_err(wrap)?;
                section = Section::Nodes;
            }
            Section::Edges => {
                if !(3..=4).contains(&tokens.len()) {
                    return Err(parse_err(line_no, "expected `edge <from> <to> [<prob>]`"));
                }
                let prob = match tokens.get(3) {
                    Some(p) => Some(
                        parse_probability(p)
                            .ok_or_else(|| parse_err(line_no, format!("malformed probability `{p}`")))?,
                    ),
                    None => None,
                };
                builder.edge(tokens[1], tokens[2], prob).map_err(wrap)?;
                section = Section::Edges;
            }
            Section::Start => {
                if tokens.len() != 2 {
                    return Err(parse_err(line_no, "expected `start <id>`"));
                }
                builder.start(tokens[1]).map_err(wrap)?;
                section = Section::Start;
            }
            Section::Header => unreachable!(),
        }
    }

    if section == Section::Header {
        return Err(parse_err(1, format!("expected `{HEADER}`")));
    }
    if !seen_colors {
        return Err(parse_err(text.lines().count().max(1), "missing `colors` line"));
    }
    let last = text.lines().count().max(1);
    builder.build().map_err(|e| parse_err(last, e.to_string()))
}

fn parse_probability(token: &str) -> Option<f64> {
    let decimal = token.chars().all(|c| c.is_ascii_digit() || c == '.')
        && token.chars().filter(|&c| c == '.').count() <= 1
        && token.chars().any(|c| c.is_ascii_digit());
    if decimal {
        token.parse().ok()
    } else {
        None
    }
}

/// Renders `model` in canonical `.wm` form. Parsing the output reproduces
/// the model exactly, declaration order included.
pub fn serialize_model(model: &WeakModel) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str("colors");
    for c in model.palette() {
        out.push(' ');
        out.push_str(c);
    }
    out.push('\n');
    for (v, id) in model.nodes().iter().enumerate() {
        let colors: Vec<&str> = model.colors_of(v).iter().map(|&c| model.color_name(c)).collect();
        let _ = writeln!(out, "node {id} {}", colors.join(","));
    }
    let weights = model.edge_weights();
    for (i, &(u, v)) in model.edges().iter().enumerate() {
        let _ = write!(out, "edge {} {}", model.node_name(u), model.node_name(v));
        if let Some(w) = weights {
            let _ = write!(out, " {}", w[i]);
        }
        out.push('\n');
    }
    if let Some(s) = model.start() {
        let _ = writeln!(out, "start {}", model.node_name(s));
    }
    out
}
