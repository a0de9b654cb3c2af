//! Vertex colorings with colors `1..=chi`, the cyclic color successor the
//! whole crate is built around, and the coloring text format.

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// A full assignment of colors `1..=chi` to vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    pub chi: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(chi: usize, colors: Vec<usize>) -> Self {
        assert!(chi >= 1);
        assert!(
            colors.iter().all(|&c| (1..=chi).contains(&c)),
            "color out of range 1..={chi}"
        );
        Coloring { chi, colors }
    }

    pub fn get(&self, v: Vertex) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// True when every color 1..=chi actually occurs and none exceeds chi.
    pub fn uses_all_colors(&self) -> bool {
        let mut seen = vec![false; self.chi];
        for &c in &self.colors {
            seen[c - 1] = true;
        }
        seen.iter().all(|&s| s)
    }
}

/// Cyclic successor on 1..=chi: 1 -> 2 -> ... -> chi -> 1.
pub fn next_color(c: usize, chi: usize) -> usize {
    c % chi + 1
}

/// Cyclic predecessor on 1..=chi: 1 -> chi -> ... -> 2 -> 1.
pub fn prev_color(c: usize, chi: usize) -> usize {
    (c + chi - 2) % chi + 1
}

/// True when no edge joins two vertices of equal color. The coloring must
/// cover exactly the graph's vertex set.
pub fn is_proper(g: &Graph, c: &Coloring) -> bool {
    assert_eq!(g.n(), c.len(), "coloring does not match the vertex set");
    g.edges().iter().all(|&(u, v)| c.get(u) != c.get(v))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringParseError {
    #[error("line {line}: malformed line {text:?}, expected 'v <id> <color>'")]
    BadLine { line: usize, text: String },
    #[error("line {line}: vertex {id} out of range 1..={n}")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: vertex {id} assigned twice")]
    DuplicateVertex { line: usize, id: usize },
    #[error("line {line}: color must be at least 1")]
    ZeroColor { line: usize },
    #[error("vertex {id} has no color")]
    MissingVertex { id: usize },
}

/// Parses `v <id> <color>` lines (1-based ids, `c` comments) into a
/// coloring of an `n`-vertex graph; every vertex must appear exactly once.
/// chi is taken to be the largest color present.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring, ColoringParseError> {
    let mut colors = vec![0usize; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let bad = || ColoringParseError::BadLine { line, text: trimmed.to_string() };
        let rest = trimmed.strip_prefix('v').ok_or_else(bad)?;
        let mut it = rest.split_whitespace();
        let id = it.next().and_then(|s| s.parse::<usize>().ok()).ok_or_else(bad)?;
        let col = it.next().and_then(|s| s.parse::<usize>().ok()).ok_or_else(bad)?;
        if it.next().is_some() {
            return Err(bad());
        }
        if id == 0 || id > n {
            return Err(ColoringParseError::VertexOutOfRange { line, id, n });
        }
        if col == 0 {
            return Err(ColoringParseError::ZeroColor { line });
        }
        if colors[id - 1] != 0 {
            return Err(ColoringParseError::DuplicateVertex { line, id });
        }
        colors[id - 1] = col;
    }
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(ColoringParseError::MissingVertex { id: v + 1 });
    }
    let chi = colors.iter().copied().max().unwrap_or(1);
    Ok(Coloring::new(chi, colors))
}

pub fn serialize_coloring(c: &Coloring) -> String {
    let mut out = format!("c {} vertices, {} colors\n", c.len(), c.chi);
    for (v, &col) in c.colors.iter().enumerate() {
        out.push_str(&format!("v {} {}\n", v + 1, col));
    }
    out
}
