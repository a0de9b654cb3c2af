//! Exact chromatic number and proper k-coloring search, by backtracking
//! with a greedy clique lower bound and a greedy coloring upper bound.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("chromatic number exceeds the limit {limit}")]
pub struct LimitExceeded {
    pub limit: usize,
}

/// Vertices in decreasing degree order (ties by id), the branching order
/// for every search in this module.
fn degree_order(g: &Graph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    order
}

/// Greedy clique built along the degree order; a lower bound for chi.
fn clique_lower_bound(g: &Graph, order: &[Vertex]) -> usize {
    let mut best = usize::from(g.n() > 0);
    for &start in order.iter().take(4.min(order.len())) {
        let mut clique = vec![start];
        for &v in order {
            if v != start && clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// Greedy coloring along the degree order; an upper bound for chi.
fn greedy_upper_bound(g: &Graph, order: &[Vertex]) -> usize {
    let mut color = vec![0usize; g.n()];
    let mut used = 0;
    for &v in order {
        let mut taken = vec![false; used + 1];
        for &u in g.neighbors(v) {
            if color[u] != 0 && color[u] <= used {
                taken[color[u] - 1] = true;
            }
        }
        let c = (1..=used + 1).find(|&c| !taken[c - 1]).unwrap();
        color[v] = c;
        used = used.max(c);
    }
    used
}

fn colorable_rec(
    g: &Graph,
    order: &[Vertex],
    color: &mut [usize],
    k: usize,
    max_used: usize,
    pos: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    // Trying colors beyond the first unused one only revisits symmetric
    // assignments, so cap at max_used + 1.
    for c in 1..=k.min(max_used + 1) {
        if g.neighbors(v).iter().all(|&u| color[u] != c) {
            color[v] = c;
            if colorable_rec(g, order, color, k, max_used.max(c), pos + 1) {
                return true;
            }
            color[v] = 0;
        }
    }
    false
}

fn is_k_colorable(g: &Graph, order: &[Vertex], k: usize) -> bool {
    if k >= g.n() {
        return true;
    }
    if k == 1 {
        return g.edge_count() == 0;
    }
    if k == 2 {
        return two_coloring(g).is_some() || g.n() == 0;
    }
    let mut color = vec![0usize; g.n()];
    colorable_rec(g, order, &mut color, k, 0, 0)
}

/// Proper 2-coloring by breadth-first parity, if one exists. Works on
/// disconnected graphs too (each component is rooted at its least vertex).
pub fn two_coloring(g: &Graph) -> Option<Coloring> {
    let n = g.n();
    let mut color = vec![0usize; n];
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        color[root] = 1;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if color[v] == 0 {
                    color[v] = 3 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(Coloring::new(2, color))
}

/// Exact chromatic number, or `LimitExceeded` when it is larger than
/// `limit`. The empty graph is rejected by assertion.
pub fn chromatic_number(g: &Graph, limit: usize) -> Result<usize, LimitExceeded> {
    assert!(g.n() > 0, "chromatic number of the empty graph");
    let order = degree_order(g);
    let lb = clique_lower_bound(g, &order);
    let ub = greedy_upper_bound(g, &order).max(1);
    if lb > limit {
        return Err(LimitExceeded { limit });
    }
    for k in lb..=ub.min(limit) {
        if is_k_colorable(g, &order, k) {
            return Ok(k);
        }
    }
    Err(LimitExceeded { limit })
}

/// First proper k-coloring found by backtracking over vertices 0..n. The
/// seed shuffles each vertex's color order, so different seeds reach
/// different colorings while staying fully deterministic.
pub fn find_proper_coloring(g: &Graph, k: usize, seed: u64) -> Option<Coloring> {
    assert!(k >= 1);
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let palettes: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut p: Vec<usize> = (1..=k).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    let mut color = vec![0usize; n];
    fn rec(g: &Graph, palettes: &[Vec<usize>], color: &mut [usize], v: usize) -> bool {
        if v == color.len() {
            return true;
        }
        for &c in &palettes[v] {
            if g.neighbors(v).iter().all(|&u| color[u] != c) {
                color[v] = c;
                if rec(g, palettes, color, v + 1) {
                    return true;
                }
                color[v] = 0;
            }
        }
        false
    }
    if rec(g, &palettes, &mut color, 0) {
        Some(Coloring::new(k, color))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;

    use crate::generate::petersen;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    #[test]
    fn known_chromatic_numbers() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(chromatic_number(&k4, 10), Ok(4));
        assert_eq!(chromatic_number(&cycle(7), 10), Ok(3));
        assert_eq!(chromatic_number(&cycle(6), 10), Ok(2));
        assert_eq!(chromatic_number(&petersen(), 10), Ok(3));
        assert_eq!(chromatic_number(&Graph::new(1), 10), Ok(1));
    }

    #[test]
    fn limit_is_an_error_not_a_crash() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(chromatic_number(&k4, 3), Err(LimitExceeded { limit: 3 }));
    }

    #[test]
    fn coloring_search() {
        let c7 = cycle(7);
        let c = find_proper_coloring(&c7, 3, 0).unwrap();
        assert!(is_proper(&c7, &c));
        assert!(find_proper_coloring(&c7, 2, 0).is_none());

        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        let c = find_proper_coloring(&k3, 3, 5).unwrap();
        let mut sorted = c.colors.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3]); // all three colors, each once
    }

    #[test]
    fn seeds_are_deterministic_and_vary() {
        let g = petersen();
        let a = find_proper_coloring(&g, 3, 7).unwrap();
        let b = find_proper_coloring(&g, 3, 7).unwrap();
        assert_eq!(a, b);
        let different = (0..20).any(|s| find_proper_coloring(&g, 3, s).unwrap() != a);
        assert!(different);
    }

    #[test]
    fn bfs_two_coloring() {
        let c6 = cycle(6);
        let c = two_coloring(&c6).unwrap();
        assert!(is_proper(&c6, &c));
        assert!(two_coloring(&cycle(5)).is_none());
    }
}
