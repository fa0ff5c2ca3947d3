//! Graph and code file loaders.
//!
//! Graph files: a header line `n <count>`, then one edge `a b` per line
//! (1-based, `a < b`). Code files: an optional `graph <path>` line (relative
//! to the code file), then one codeword per line as comma-separated 1-based
//! vertices, or `-` for the empty set. In both formats blank lines and lines
//! starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use cws_core::{CwsCode, Graph, VertexSet};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}:{line}:{col}: {msg}")]
    Syntax { path: String, line: usize, col: usize, msg: String },

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] cws_core::Error),
}

/// A file as read from disk, with its content hash for reports.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub path: PathBuf,
    pub text: String,
    pub sha256: String,
}

impl fmt::Display for Loaded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.path.display())
    }
}

pub fn read(path: &Path) -> Result<Loaded, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    let sha256 = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(Loaded { path: path.to_path_buf(), text, sha256 })
}

/// Non-comment lines with their 1-based line numbers and the column of the
/// first non-blank character.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            let col = raw.len() - raw.trim_start().len() + 1;
            Some((k + 1, col, trimmed))
        }
    })
}

/// Tokens of a line with their 1-based columns.
fn tokens(line: &str, base_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in line.split_whitespace() {
        let at = line[offset..].find(tok).unwrap() + offset;
        out.push((base_col + at, tok));
        offset = at + tok.len();
    }
    out
}

pub fn parse_graph(path: &str, text: &str) -> Result<Graph, InputError> {
    let err = |line, col, msg: String| InputError::Syntax { path: path.to_string(), line, col, msg };
    let mut lines = content_lines(text);
    let (hl, hc, header) = lines.next().ok_or_else(|| err(1, 1, "empty graph file".into()))?;
    let toks = tokens(header, hc);
    let n = match toks.as_slice() {
        [(_, "n"), (c, count)] => count
            .parse::<usize>()
            .map_err(|_| err(hl, *c, format!("invalid vertex count {count:?}")))?,
        _ => return Err(err(hl, hc, "expected header `n <count>`".into())),
    };
    let mut graph = Graph::edgeless(n).map_err(|e| err(hl, hc, e.to_string()))?;
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (line, col, content) in lines {
        let toks = tokens(content, col);
        if toks.len() != 2 {
            return Err(err(line, col, format!("expected `a b`, found {content:?}")));
        }
        let mut ends = [0usize; 2];
        for (k, &(c, t)) in toks.iter().enumerate() {
            let v: usize = t.parse().map_err(|_| err(line, c, format!("invalid vertex {t:?}")))?;
            if v == 0 || v > n {
                return Err(err(line, c, format!("vertex {v} outside 1..={n}")));
            }
            ends[k] = v;
        }
        let [a, b] = ends;
        if a == b {
            return Err(err(line, toks[1].0, format!("self-loop {a} {b}")));
        }
        if a > b {
            return Err(err(line, col, format!("edge must be written with a < b, found {a} {b}")));
        }
        if let Some(first) = seen.insert((a, b), line) {
            return Err(err(line, col, format!("duplicate edge {a} {b} (first on line {first})")));
        }
        graph.add_edge(a, b).map_err(|e| err(line, col, e.to_string()))?;
    }
    Ok(graph)
}

pub fn load_graph(path: &Path) -> Result<(Graph, Loaded), InputError> {
    let file = read(path)?;
    let g = parse_graph(&path.display().to_string(), &file.text)?;
    Ok((g, file))
}

/// Codewords and the optional `graph` reference of a code file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub graph_ref: Option<String>,
    pub codewords: Vec<VertexSet>,
}

pub fn parse_code(path: &str, text: &str, n: Option<usize>) -> Result<CodeFile, InputError> {
    let err = |line, col, msg: String| InputError::Syntax { path: path.to_string(), line, col, msg };
    let mut graph_ref = None;
    let mut codewords = Vec::new();
    let mut first_seen: BTreeMap<VertexSet, usize> = BTreeMap::new();
    for (idx, (line, col, content)) in content_lines(text).enumerate() {
        if let Some(rest) = content.strip_prefix("graph") {
            if idx != 0 || !rest.starts_with(char::is_whitespace) {
                return Err(err(line, col, "`graph <path>` must be the first line".into()));
            }
            graph_ref = Some(rest.trim().to_string());
            continue;
        }
        let word = if content == "-" {
            VertexSet::EMPTY
        } else {
            let mut vertices = Vec::new();
            let mut offset = 0;
            for part in content.split(',') {
                let c = col + offset + (part.len() - part.trim_start().len());
                offset += part.len() + 1;
                let v: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| err(line, c, format!("invalid vertex {:?}", part.trim())))?;
                if v == 0 || n.map_or(v > cws_core::MAX_QUBITS, |n| v > n) {
                    let bound = n.unwrap_or(cws_core::MAX_QUBITS);
                    return Err(err(line, c, format!("vertex {v} outside 1..={bound}")));
                }
                if vertices.contains(&v) {
                    return Err(err(line, c, format!("vertex {v} repeated")));
                }
                vertices.push(v);
            }
            VertexSet::from_vertices(vertices)?
        };
        if let Some(first) = first_seen.insert(word, line) {
            let shown = if word.is_empty() { "-".to_string() } else { word.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",") };
            return Err(err(line, col, format!("duplicate codeword {shown} (first on line {first})")));
        }
        codewords.push(word);
    }
    Ok(CodeFile { graph_ref, codewords })
}

/// Loads a code file; `graph_override` takes precedence over its `graph` line.
pub fn load_code(path: &Path, graph_override: Option<&Path>) -> Result<(CwsCode, Vec<Loaded>), InputError> {
    let file = read(path)?;
    let shown = path.display().to_string();
    let pre = parse_code(&shown, &file.text, None)?;
    let graph_path = match (graph_override, &pre.graph_ref) {
        (Some(g), _) => g.to_path_buf(),
        (None, Some(r)) => path.parent().unwrap_or(Path::new(".")).join(r),
        (None, None) => {
            return Err(InputError::Usage(format!(
                "{shown}: no `graph` line; pass --graph"
            )))
        }
    };
    let (graph, gfile) = load_graph(&graph_path)?;
    let parsed = parse_code(&shown, &file.text, Some(graph.n()))?;
    let code = CwsCode::new(graph, parsed.codewords)?;
    Ok((code, vec![file, gfile]))
}

/// Code file text for `codewords`, referencing `graph_ref`.
pub fn render_code(graph_ref: Option<&str>, codewords: &[VertexSet]) -> String {
    let mut out = String::new();
    if let Some(g) = graph_ref {
        out.push_str(&format!("graph {g}\n"));
    }
    for c in codewords {
        if c.is_empty() {
            out.push_str("-\n");
        } else {
            out.push_str(&c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
    }
    out
}
