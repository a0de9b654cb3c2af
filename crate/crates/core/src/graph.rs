//! Undirected simple graphs with dense vertex ids `0..n`, text formats,
//! and the small structural queries the solver needs.

use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

/// Simple undirected graph. Neighbor lists are kept sorted so that every
/// iteration order in the crate is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Builds the graph on `n` vertices selected by `mask`, one bit per
    /// vertex pair in lexicographic order: bit 0 is {0,1}, bit 1 is {0,2},
    /// ..., bit n-2 is {0,n-1}, bit n-1 is {1,2}, and so on.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::new(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    /// Number of vertex pairs, i.e. the bit width `from_edge_mask` expects.
    pub fn pair_count(n: usize) -> u32 {
        (n * (n - 1) / 2) as u32
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Inserts an edge, ignoring duplicates. Self-loops are a programming
    /// error here; the parsers reject them with a line number first.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert!(u != v, "self-loop at vertex {u}");
        assert!(u < self.n() && v < self.n(), "edge ({u},{v}) out of range");
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges as (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The empty graph and the single vertex count as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut found = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    found += 1;
                    stack.push(v);
                }
            }
        }
        found == n
    }

    /// True when the graph is a single cycle: connected with every degree 2.
    pub fn is_cycle_graph(&self) -> bool {
        self.n() >= 3 && (0..self.n()).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    /// Vertices of a cycle graph in traversal order, starting at vertex 0 and
    /// moving toward its smaller neighbor. None if the graph is not a cycle.
    pub fn cycle_order(&self) -> Option<Vec<Vertex>> {
        if !self.is_cycle_graph() {
            return None;
        }
        let mut order = Vec::with_capacity(self.n());
        let mut prev = usize::MAX;
        let mut cur = 0;
        loop {
            order.push(cur);
            let next = *self.adj[cur].iter().find(|&&w| w != prev).unwrap();
            if next == 0 {
                return Some(order);
            }
            prev = cur;
            cur = next;
        }
    }

    /// First pair (x, y), x < y, with identical neighborhoods N(x) = N(y).
    /// Such a pair is never adjacent in a simple graph.
    pub fn find_twins(&self) -> Option<(Vertex, Vertex)> {
        for x in 0..self.n() {
            for y in x + 1..self.n() {
                if self.adj[x] == self.adj[y] {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Lexicographically least 4-cycle (a, b, c, d) with a the smallest
    /// vertex on it and b < d; chords are allowed.
    pub fn find_cycle4(&self) -> Option<[Vertex; 4]> {
        for a in 0..self.n() {
            for &b in &self.adj[a] {
                if b < a {
                    continue;
                }
                for &c in &self.adj[b] {
                    if c <= a {
                        continue;
                    }
                    for &d in &self.adj[c] {
                        if d > b && self.has_edge(d, a) {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Deletes a vertex and renumbers the rest densely. Returns the reduced
    /// graph and the map from new ids back to old ids.
    pub fn remove_vertex(&self, v: Vertex) -> (Graph, Vec<Vertex>) {
        assert!(v < self.n());
        let old_of_new: Vec<Vertex> = (0..self.n()).filter(|&u| u != v).collect();
        let new_of_old = {
            let mut m = vec![usize::MAX; self.n()];
            for (new, &old) in old_of_new.iter().enumerate() {
                m[old] = new;
            }
            m
        };
        let mut g = Graph::new(self.n() - 1);
        for (u, w) in self.edges() {
            if u != v && w != v {
                g.add_edge(new_of_old[u], new_of_old[w]);
            }
        }
        (g, old_of_new)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected 'p edge <n> <m>' header, got {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: second 'p' header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: edge before the 'p edge' header")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed edge {text:?}")]
    BadEdge { line: usize, text: String },
    #[error("line {line}: vertex {id} out of range 1..={n}")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: self-loop at vertex {id}")]
    SelfLoop { line: usize, id: usize },
    #[error("line {line}: unrecognized line {text:?}")]
    UnknownLine { line: usize, text: String },
    #[error("missing 'p edge' header")]
    MissingHeader,
}

/// Parses the DIMACS coloring format: `c` comment lines, one
/// `p edge <n> <m>` header, then `e <u> <v>` lines with 1-based endpoints.
/// Duplicate edges collapse; self-loops are rejected.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut g: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('p') {
            if g.is_some() {
                return Err(ParseError::DuplicateHeader { line });
            }
            let mut it = rest.split_whitespace();
            let ok = it.next() == Some("edge");
            let n = it.next().and_then(|s| s.parse::<usize>().ok());
            let m = it.next().and_then(|s| s.parse::<usize>().ok());
            match (ok, n, m, it.next()) {
                (true, Some(n), Some(_), None) => g = Some(Graph::new(n)),
                _ => {
                    return Err(ParseError::BadHeader { line, text: trimmed.to_string() });
                }
            }
        } else if let Some(rest) = trimmed.strip_prefix('e') {
            let g = g.as_mut().ok_or(ParseError::EdgeBeforeHeader { line })?;
            let mut it = rest.split_whitespace();
            let u = it.next().and_then(|s| s.parse::<usize>().ok());
            let v = it.next().and_then(|s| s.parse::<usize>().ok());
            let (u, v) = match (u, v, it.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => return Err(ParseError::BadEdge { line, text: trimmed.to_string() }),
            };
            for id in [u, v] {
                if id == 0 || id > g.n() {
                    return Err(ParseError::VertexOutOfRange { line, id, n: g.n() });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, id: u });
            }
            g.add_edge(u - 1, v - 1);
        } else {
            return Err(ParseError::UnknownLine { line, text: trimmed.to_string() });
        }
    }
    g.ok_or(ParseError::MissingHeader)
}

pub fn serialize_dimacs(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses the plain edge-list format: one `u v` pair per line, 0-based,
/// `#` comments; the vertex count is the largest id plus one.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut edges = Vec::new();
    let mut max_id = None::<usize>;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let u = it.next().and_then(|s| s.parse::<usize>().ok());
        let v = it.next().and_then(|s| s.parse::<usize>().ok());
        let (u, v) = match (u, v, it.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(ParseError::BadEdge { line, text: trimmed.to_string() }),
        };
        if u == v {
            return Err(ParseError::SelfLoop { line, id: u });
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = max_id.map_or(0, |m| m + 1);
    Ok(Graph::from_edges(n, &edges))
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_text() -> &'static str {
        "c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
    }

    #[test]
    fn parse_triangle() {
        let g = parse_dimacs(k3_text()).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn duplicates_collapse() {
        let g = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn self_loop_rejected_with_line() {
        let err = parse_dimacs("p edge 3 1\ne 2 2\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 2, id: 2 });
    }

    #[test]
    fn vertex_out_of_range() {
        let err = parse_dimacs("p edge 3 1\ne 1 4\n").unwrap_err();
        assert_eq!(err, ParseError::VertexOutOfRange { line: 2, id: 4, n: 3 });
    }

    #[test]
    fn dimacs_round_trip() {
        let g = parse_dimacs(k3_text()).unwrap();
        let again = parse_dimacs(&serialize_dimacs(&g)).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list("0 1\n1 2\n3 1\n").unwrap();
        assert_eq!(g.n(), 4);
        let again = parse_edge_list(&serialize_edge_list(&g)).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn connectivity() {
        assert!(parse_dimacs(k3_text()).unwrap().is_connected());
        // Two disjoint edges.
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(!g.is_connected());
        assert!(Graph::new(0).is_connected());
        assert!(Graph::new(1).is_connected());
        assert!(!Graph::new(2).is_connected());
    }

    #[test]
    fn cycle_recognition() {
        let c7 = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0)]);
        assert!(c7.is_cycle_graph());
        assert_eq!(c7.cycle_order().unwrap(), vec![0, 1, 2, 3, 4, 5, 6]);
        let mut with_chord = c7.clone();
        with_chord.add_edge(0, 3);
        assert!(!with_chord.is_cycle_graph());
    }

    #[test]
    fn twins() {
        // Opposite corners of a 4-cycle are twins.
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(c4.find_twins(), Some((0, 2)));
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(c5.find_twins(), None);
    }

    #[test]
    fn four_cycles() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(c4.find_cycle4(), Some([0, 1, 2, 3]));
        // K4: chords are fine.
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(k4.find_cycle4(), Some([0, 1, 2, 3]));
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(c5.find_cycle4(), None);
    }

    #[test]
    fn vertex_removal() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let (g, map) = c4.remove_vertex(2);
        assert_eq!(g.n(), 3);
        assert_eq!(map, vec![0, 1, 3]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn edge_mask_order() {
        // Bits in pair order {0,1},{0,2},{1,2}: mask 0b101 keeps {0,1} and {1,2}.
        let g = Graph::from_edge_mask(3, 0b101);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::pair_count(7), 21);
    }
}
