//! Deterministic graph generators: fixed families plus seeded random
//! graphs with a prescribed chromatic number.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::chromatic::chromatic_number;
use crate::graph::Graph;

/// What to generate. The random kind retries until it hits a connected
/// graph with exactly the requested chromatic number.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphSpec {
    Cycle { len: usize },
    Complete { k: usize },
    CompleteBipartite { a: usize, b: usize },
    RandomChromatic { n: usize, chi: usize, p: Option<f64>, seed: u64 },
}

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("cycle length must be at least 3, got {len}")]
    CycleTooShort { len: usize },
    #[error("complete graph needs at least 1 vertex")]
    EmptyComplete,
    #[error("complete bipartite sides must be nonzero")]
    EmptySide,
    #[error("random graph needs chi <= n, got chi={chi}, n={n}")]
    ChiAboveN { chi: usize, n: usize },
    #[error("edge probability {p} outside (0, 1)")]
    BadProbability { p: f64 },
    #[error("no connected graph with chromatic number {chi} found in {tries} tries")]
    RetriesExhausted { chi: usize, tries: usize },
}

pub fn cycle(len: usize) -> Graph {
    assert!(len >= 3);
    Graph::from_edges(len, &(0..len).map(|i| (i, (i + 1) % len)).collect::<Vec<_>>())
}

pub fn complete(k: usize) -> Graph {
    let mut g = Graph::new(k);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    g
}

/// A 7-cycle 0..6 plus vertex 7 attached to exactly {1, 6}, making it a
/// twin of vertex 0: the smallest graph whose twin reduction lands on the
/// plain 7-cycle.
pub fn twinned_c7() -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    edges.push((7, 1));
    edges.push((7, 6));
    Graph::from_edges(8, &edges)
}

/// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9 (step 2),
/// spokes i -- 5+i. A handy triangle-free 3-chromatic fixture.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges)
}

/// Default edge probability for the random kind, scaled so that sparse
/// instances stay connected often enough at every supported size.
fn default_probability(n: usize) -> f64 {
    (2.0 * (n as f64).ln() / n as f64).clamp(0.05, 0.9)
}

const RANDOM_TRIES: usize = 20_000;

/// Samples a random n-vertex graph with chromatic number exactly `chi`:
/// vertices are spread over `chi` classes (one pinned per class), edges are
/// drawn across classes with probability `p`, and the sample is kept only
/// if it is connected with the right chromatic number. Fully determined by
/// the seed.
fn random_chromatic(n: usize, chi: usize, p: Option<f64>, seed: u64) -> Result<Graph, GenerateError> {
    if chi > n {
        return Err(GenerateError::ChiAboveN { chi, n });
    }
    let p = p.unwrap_or_else(|| default_probability(n));
    if !(p > 0.0 && p < 1.0) {
        return Err(GenerateError::BadProbability { p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let mut class = vec![0usize; n];
        // Pin the first chi vertices to distinct classes so none is empty.
        for (v, cl) in class.iter_mut().enumerate() {
            *cl = if v < chi { v } else { rng.random_range(0..chi) };
        }
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if class[u] != class[v] && rng.random_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        if g.is_connected() && chromatic_number(&g, chi) == Ok(chi) {
            return Ok(g);
        }
    }
    Err(GenerateError::RetriesExhausted { chi, tries: RANDOM_TRIES })
}

pub fn generate(spec: &GraphSpec) -> Result<Graph, GenerateError> {
    match *spec {
        GraphSpec::Cycle { len } => {
            if len < 3 {
                return Err(GenerateError::CycleTooShort { len });
            }
            Ok(cycle(len))
        }
        GraphSpec::Complete { k } => {
            if k == 0 {
                return Err(GenerateError::EmptyComplete);
            }
            Ok(complete(k))
        }
        GraphSpec::CompleteBipartite { a, b } => {
            if a == 0 || b == 0 {
                return Err(GenerateError::EmptySide);
            }
            Ok(complete_bipartite(a, b))
        }
        GraphSpec::RandomChromatic { n, chi, p, seed } => random_chromatic(n, chi, p, seed),
    }
}
