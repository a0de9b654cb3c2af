//! Brute-force ground truth. Everything here is deliberately independent
//! of the constructive machinery: path existence is re-decided by plain
//! undirected search, and whole-graph claims are re-checked by exhaustive
//! enumeration of colorings and of small labeled graphs.

use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::coloring::{is_proper, Coloring};
use crate::engine::{solve, SolveStatus};
use crate::graph::{Graph, Vertex};

/// Outcome of enumerating every proper coloring of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub exists: bool,
    pub witness: Option<Coloring>,
    /// Complete proper colorings examined before stopping; with no witness
    /// this is the total number of proper colorings.
    pub colorings_examined: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("oracle size guard: {chi}^{n} colorings is too many to enumerate")]
pub struct TooLarge {
    pub n: usize,
    pub chi: usize,
}

const ENUMERATION_GUARD: f64 = 1e8;

/// Enumerates all proper `chi`-colorings of `g` in lexicographic order
/// (vertex 0 outermost, colors ascending), pruning improper prefixes, and
/// returns the first one under which every vertex starts a colorful path
/// — checked by `independent_path_check`, never by the directed shortcut.
pub fn exhaustive_certifying_search(g: &Graph, chi: usize) -> Result<OracleVerdict, TooLarge> {
    if (chi as f64).powi(g.n() as i32) > ENUMERATION_GUARD {
        return Err(TooLarge { n: g.n(), chi });
    }
    let mut colors = vec![0usize; g.n()];
    let mut examined = 0u64;
    let witness = enumerate(g, chi, 0, &mut colors, &mut examined);
    Ok(OracleVerdict { exists: witness.is_some(), witness, colorings_examined: examined })
}

fn enumerate(
    g: &Graph,
    chi: usize,
    v: Vertex,
    colors: &mut Vec<usize>,
    examined: &mut u64,
) -> Option<Coloring> {
    if v == g.n() {
        *examined += 1;
        let c = Coloring::new(chi, colors.clone());
        if (0..g.n()).all(|u| independent_path_check(g, &c, u)) {
            return Some(c);
        }
        return None;
    }
    'next: for color in 1..=chi {
        for &w in g.neighbors(v) {
            if w < v && colors[w] == color {
                continue 'next;
            }
        }
        colors[v] = color;
        if let Some(c) = enumerate(g, chi, v + 1, colors, examined) {
            return Some(c);
        }
    }
    colors[v] = 0;
    None
}

/// Does some simple path of `c.chi` vertices starting at `v` carry all
/// colors? Plain undirected search with a visited set, colors checked only
/// on complete paths — structurally unlike the certifier on purpose.
pub fn independent_path_check(g: &Graph, c: &Coloring, v: Vertex) -> bool {
    debug_assert!(is_proper(g, c));
    let mut visited = vec![false; g.n()];
    let mut path = Vec::with_capacity(c.chi);
    visited[v] = true;
    path.push(v);
    let found = wander(g, c, &mut path, &mut visited);
    found
}

fn wander(g: &Graph, c: &Coloring, path: &mut Vec<Vertex>, visited: &mut Vec<bool>) -> bool {
    if path.len() == c.chi {
        let mut seen = vec![false; c.chi + 1];
        for &u in path.iter() {
            if seen[c.get(u)] {
                return false;
            }
            seen[c.get(u)] = true;
        }
        return true;
    }
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if !visited[w] {
            visited[w] = true;
            path.push(w);
            if wander(g, c, path, visited) {
                return true;
            }
            path.pop();
            visited[w] = false;
        }
    }
    false
}

/// Counters and findings from one exhaustive labeled-graph sweep.
#[derive(Clone, Debug, Default)]
pub struct SweepSummary {
    pub n_max: usize,
    pub chi_target: usize,
    pub examined: u64,
    pub connected: u64,
    pub chi_matched: u64,
    pub solved: u64,
    pub exceptions: u64,
    /// Human-readable description of every disagreement between the
    /// solver and the oracle. Empty on a clean sweep.
    pub discrepancies: Vec<String>,
}

impl SweepSummary {
    fn absorb(&mut self, other: SweepSummary) {
        self.examined += other.examined;
        self.connected += other.connected;
        self.chi_matched += other.chi_matched;
        self.solved += other.solved;
        self.exceptions += other.exceptions;
        self.discrepancies.extend(other.discrepancies);
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "sweep over all labeled graphs, n <= {}, target chromatic number {}\n\
             examined {} graphs, {} connected, {} with matching chromatic number\n\
             solved {} and hit {} seven-cycle exceptions\n",
            self.n_max, self.chi_target, self.examined, self.connected, self.chi_matched,
            self.solved, self.exceptions,
        );
        if self.discrepancies.is_empty() {
            out.push_str("zero discrepancies\n");
        } else {
            out.push_str(&format!("{} DISCREPANCIES:\n", self.discrepancies.len()));
            for d in &self.discrepancies {
                out.push_str(&format!("  {d}\n"));
            }
        }
        out
    }

    /// Machine-readable `key=value` lines.
    pub fn render_counts(&self) -> String {
        format!(
            "n_max={}\nchi_target={}\nexamined={}\nconnected={}\nchi_matched={}\nsolved={}\nexceptions={}\ndiscrepancies={}\n",
            self.n_max, self.chi_target, self.examined, self.connected, self.chi_matched,
            self.solved, self.exceptions, self.discrepancies.len(),
        )
    }
}

/// Runs the solver over every labeled graph on up to `n_max` vertices that
/// is connected with the target chromatic number, verifies every claimed
/// solution, and cross-checks every non-solution against the exhaustive
/// oracle. `jobs` caps the worker threads when the parallel feature is on;
/// the sequential build ignores it.
pub fn sweep_small_graphs(n_max: usize, chi_target: usize, jobs: Option<usize>) -> SweepSummary {
    assert!(n_max <= 7, "labeled sweep is sized for n <= 7");
    assert!(n_max >= 1);
    let mut total = SweepSummary { n_max, chi_target, ..SweepSummary::default() };
    for n in 1..=n_max {
        let masks = 1u64 << Graph::pair_count(n);
        let chunks: Vec<(u64, u64)> = (0..masks)
            .step_by(CHUNK as usize)
            .map(|lo| (lo, (lo + CHUNK).min(masks)))
            .collect();
        let run = |&(lo, hi): &(u64, u64)| sweep_chunk(n, lo, hi, chi_target);
        let partials: Vec<SweepSummary> = run_partitioned(&chunks, run, jobs);
        for p in partials {
            total.absorb(p);
        }
    }
    total
}

const CHUNK: u64 = 1 << 12;

#[cfg(feature = "parallel")]
fn run_partitioned<T: Sync, F>(items: &[T], f: F, jobs: Option<usize>) -> Vec<SweepSummary>
where
    F: Fn(&T) -> SweepSummary + Sync + Send,
{
    match jobs {
        Some(j) if j >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .expect("thread pool")
            .install(|| items.par_iter().map(f).collect()),
        _ => items.par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_partitioned<T, F>(items: &[T], f: F, _jobs: Option<usize>) -> Vec<SweepSummary>
where
    F: Fn(&T) -> SweepSummary,
{
    items.iter().map(f).collect()
}

fn sweep_chunk(n: usize, lo: u64, hi: u64, chi_target: usize) -> SweepSummary {
    let mut s = SweepSummary::default();
    for mask in lo..hi {
        s.examined += 1;
        let g = Graph::from_edge_mask(n, mask);
        if !g.is_connected() {
            continue;
        }
        s.connected += 1;
        if crate::chromatic::chromatic_number(&g, chi_target) != Ok(chi_target) {
            continue;
        }
        s.chi_matched += 1;
        examine_instance(&g, chi_target, &mut s, &format!("n={n} mask={mask}"));
    }
    s
}

fn examine_instance(g: &Graph, chi_target: usize, s: &mut SweepSummary, id: &str) {
    match solve(g) {
        Ok(outcome) => match outcome.status {
            SolveStatus::Solved(c) => {
                if crate::certify::verify_solution(g, &c, false).ok() {
                    s.solved += 1;
                } else {
                    s.discrepancies.push(format!("{id}: solved but verification failed"));
                }
            }
            SolveStatus::ExceptionC7 => {
                s.exceptions += 1;
                if !(g.n() == 7 && g.is_cycle_graph()) {
                    s.discrepancies.push(format!("{id}: exception on a non-7-cycle"));
                } else if let Ok(v) = exhaustive_certifying_search(g, chi_target) {
                    if v.exists {
                        s.discrepancies
                            .push(format!("{id}: exception but the oracle found a witness"));
                    }
                }
            }
            SolveStatus::Unsupported(reason) => {
                s.discrepancies.push(format!("{id}: unsupported ({reason})"));
            }
        },
        Err(e) => s.discrepancies.push(format!("{id}: solve error ({e})")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{find_colorful_path, verify_solution};
    use crate::generate::{cycle, twinned_c7};

    #[test]
    fn seven_cycle_has_no_certifying_coloring() {
        let v = exhaustive_certifying_search(&cycle(7), 3).unwrap();
        assert!(!v.exists);
        assert!(v.witness.is_none());
        // A cycle on n vertices has 2^n + 2*(-1)^n proper 3-colorings.
        assert_eq!(v.colorings_examined, 126);
    }

    #[test]
    fn five_cycle_witness_found_and_verified() {
        let g = cycle(5);
        let v = exhaustive_certifying_search(&g, 3).unwrap();
        assert!(v.exists);
        assert!(verify_solution(&g, &v.witness.unwrap(), false).ok());
    }

    #[test]
    fn twinned_seven_cycle_has_a_witness() {
        let g = twinned_c7();
        let v = exhaustive_certifying_search(&g, 3).unwrap();
        assert!(v.exists);
        let w = v.witness.unwrap();
        assert!(verify_solution(&g, &w, false).ok());
    }

    #[test]
    fn size_guard_is_a_hard_error() {
        let g = Graph::new(40);
        assert_eq!(
            exhaustive_certifying_search(&g, 3),
            Err(TooLarge { n: 40, chi: 3 })
        );
    }

    #[test]
    fn path_check_matches_certify_on_small_cases() {
        let g = crate::generate::petersen();
        let c = Coloring::new(3, vec![1, 2, 1, 2, 3, 2, 1, 3, 3, 2]);
        for v in 0..g.n() {
            assert_eq!(
                independent_path_check(&g, &c, v),
                find_colorful_path(&g, &c, v).is_some(),
                "vertex {v}"
            );
        }
    }

    #[test]
    fn tiny_sweep_is_clean() {
        let s = sweep_small_graphs(5, 3, None);
        assert_eq!(s.examined, 1 + 2 + 8 + 64 + 1024);
        assert_eq!(s.connected, 1 + 1 + 4 + 38 + 728);
        assert_eq!(s.exceptions, 0);
        assert!(s.discrepancies.is_empty(), "{:?}", s.discrepancies);
        assert_eq!(s.solved, s.chi_matched);
        assert!(s.render_text().contains("zero discrepancies"));
        assert!(s.render_counts().contains("discrepancies=0"));
    }
}
