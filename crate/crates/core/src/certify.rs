//! Deciding which vertices begin colorful paths — paths on `chi` vertices
//! carrying all `chi` colors — and verifying complete solutions.

use crate::chromatic::chromatic_number;
use crate::coloring::{is_proper, next_color, prev_color, Coloring};
use crate::digraph::build_dc;
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
    Mixed,
}

/// A path on `chi` vertices whose colors are pairwise distinct (hence all
/// of `1..=chi`). Forward paths step to the cyclically next color every
/// time, backward paths to the previous one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorfulPath {
    pub vertices: Vec<Vertex>,
    pub direction: Direction,
}

impl ColorfulPath {
    fn new(c: &Coloring, vertices: Vec<Vertex>) -> Self {
        let step = |pair: &[Vertex], f: fn(usize, usize) -> usize| {
            c.get(pair[1]) == f(c.get(pair[0]), c.chi)
        };
        let direction = if vertices.windows(2).all(|p| step(p, next_color)) {
            Direction::Forward
        } else if vertices.windows(2).all(|p| step(p, prev_color)) {
            Direction::Backward
        } else {
            Direction::Mixed
        };
        ColorfulPath { vertices, direction }
    }

    /// 1-based rendering, e.g. `4 -> 3 -> 2`.
    pub fn render(&self) -> String {
        self.vertices
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" -> ")
    }

    /// Checks the path against the definition from scratch: all vertices
    /// adjacent in order, exactly `chi` of them, colors pairwise distinct.
    pub fn is_valid(&self, g: &Graph, c: &Coloring) -> bool {
        let vs = &self.vertices;
        vs.len() == c.chi
            && vs.windows(2).all(|p| g.has_edge(p[0], p[1]))
            && {
                let mut seen = 0u64;
                vs.iter().all(|&v| {
                    let bit = 1u64 << c.get(v);
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                })
            }
    }
}

/// One witness path per certified vertex (the lexicographically least),
/// and the sorted set of vertices with no certifying path at all.
#[derive(Clone, Debug)]
pub struct CertificationReport {
    pub certified: Vec<Option<ColorfulPath>>,
    pub uncertified: Vec<Vertex>,
}

impl CertificationReport {
    fn from_entries(certified: Vec<Option<ColorfulPath>>) -> Self {
        let uncertified = certified
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(v, _)| v)
            .collect();
        CertificationReport { certified, uncertified }
    }

    pub fn is_certified(&self, v: Vertex) -> bool {
        self.certified[v].is_some()
    }

    pub fn certified_count(&self) -> usize {
        self.certified.len() - self.uncertified.len()
    }

    pub fn all_certified(&self) -> bool {
        self.uncertified.is_empty()
    }

    /// One line per vertex: `<id>: <path or UNCERTIFIED>`, 1-based ids.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (v, entry) in self.certified.iter().enumerate() {
            match entry {
                Some(p) => out.push_str(&format!("{}: {}\n", v + 1, p.render())),
                None => out.push_str(&format!("{}: UNCERTIFIED\n", v + 1)),
            }
        }
        out
    }
}

/// Exhaustive backtracking for the lexicographically least colorful path
/// starting at `v`. Color-distinctness implies vertex-distinctness, so the
/// only pruning needed is a seen-colors mask.
pub fn find_colorful_path(g: &Graph, c: &Coloring, v: Vertex) -> Option<ColorfulPath> {
    debug_assert!(is_proper(g, c));
    let mut path = vec![v];
    if extend(g, c, &mut path, 1u64 << c.get(v)) {
        Some(ColorfulPath::new(c, path))
    } else {
        None
    }
}

fn extend(g: &Graph, c: &Coloring, path: &mut Vec<Vertex>, used: u64) -> bool {
    if path.len() == c.chi {
        return true;
    }
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        let bit = 1u64 << c.get(w);
        if used & bit == 0 {
            path.push(w);
            if extend(g, c, path, used | bit) {
                return true;
            }
            path.pop();
        }
    }
    false
}

/// Certifies every vertex. For three colors every colorful path is forward
/// or backward, so the search collapses to directed 2-paths of the
/// orientation; the candidate interleaving reproduces exactly the witness
/// the generic backtracking would find.
pub fn certify_all(g: &Graph, c: &Coloring) -> CertificationReport {
    if c.chi == 3 {
        certify_all_directed(g, c)
    } else {
        certify_all_generic(g, c)
    }
}

pub(crate) fn certify_all_generic(g: &Graph, c: &Coloring) -> CertificationReport {
    CertificationReport::from_entries(
        (0..g.n()).map(|v| find_colorful_path(g, c, v)).collect(),
    )
}

fn certify_all_directed(g: &Graph, c: &Coloring) -> CertificationReport {
    debug_assert_eq!(c.chi, 3);
    let d = build_dc(g, c).expect("certification requires a proper coloring");
    let entries = (0..g.n())
        .map(|v| {
            // Merge the two candidate lists in ascending order so the first
            // completed 2-path matches the generic lexicographic search.
            let fwd = d.out_neighbors(v);
            let bwd = d.in_neighbors(v);
            let (mut i, mut j) = (0, 0);
            loop {
                let take_fwd = match (fwd.get(i), bwd.get(j)) {
                    (None, None) => return None,
                    (Some(_), None) => true,
                    (None, Some(_)) => false,
                    (Some(&a), Some(&b)) => a < b,
                };
                if take_fwd {
                    let w = fwd[i];
                    i += 1;
                    if let Some(&x) = d.out_neighbors(w).first() {
                        return Some(ColorfulPath::new(c, vec![v, w, x]));
                    }
                } else {
                    let w = bwd[j];
                    j += 1;
                    if let Some(&x) = d.in_neighbors(w).first() {
                        return Some(ColorfulPath::new(c, vec![v, w, x]));
                    }
                }
            }
        })
        .collect();
    CertificationReport::from_entries(entries)
}

/// Everything `verify_solution` looked at. `ok()` is the headline verdict;
/// the certification report is present whenever the coloring was proper.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub vertex_count_ok: bool,
    pub proper: bool,
    pub uses_all_colors: bool,
    /// Some(matches) when the exact chromatic number was computed.
    pub chi_checked: Option<bool>,
    pub certification: Option<CertificationReport>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.vertex_count_ok
            && self.proper
            && self.uses_all_colors
            && self.chi_checked.unwrap_or(true)
            && self.certification.as_ref().is_some_and(|r| r.all_certified())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.vertex_count_ok {
            out.push_str("vertex count mismatch between graph and coloring\n");
            return out;
        }
        if !self.proper {
            out.push_str("coloring is not proper\n");
            return out;
        }
        if !self.uses_all_colors {
            out.push_str("coloring does not use all its colors\n");
        }
        if self.chi_checked == Some(false) {
            out.push_str("color count differs from the chromatic number\n");
        }
        if let Some(report) = &self.certification {
            out.push_str(&report.render());
            out.push_str(&if report.all_certified() {
                "all vertices certified\n".to_string()
            } else {
                format!("{} uncertified vertices\n", report.uncertified.len())
            });
        }
        out
    }
}

/// Full check of the artifact's claim for one coloring: proper, all colors
/// used, every vertex certified. The expensive comparison against the
/// exact chromatic number only runs when `check_chi` is set.
pub fn verify_solution(g: &Graph, c: &Coloring, check_chi: bool) -> VerifyReport {
    let vertex_count_ok = c.len() == g.n();
    if !vertex_count_ok {
        return VerifyReport {
            vertex_count_ok,
            proper: false,
            uses_all_colors: false,
            chi_checked: None,
            certification: None,
        };
    }
    let proper = is_proper(g, c);
    let uses_all_colors = c.uses_all_colors();
    let chi_checked =
        check_chi.then(|| chromatic_number(g, c.chi).map_or(false, |chi| chi == c.chi));
    let certification = proper.then(|| certify_all(g, c));
    VerifyReport { vertex_count_ok, proper, uses_all_colors, chi_checked, certification }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::cycle;

    #[test]
    fn triangle_paths() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        let c = Coloring::new(3, vec![1, 2, 3]);
        let p = find_colorful_path(&g, &c, 0).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        assert_eq!(p.direction, Direction::Forward);
        assert!(p.is_valid(&g, &c));
        let p2 = find_colorful_path(&g, &c, 2).unwrap();
        assert_eq!(p2.vertices, vec![2, 0, 1]);
        assert_eq!(p2.direction, Direction::Forward);
        assert!(verify_solution(&g, &c, true).ok());
    }

    #[test]
    fn five_cycle_backward_witness() {
        let g = cycle(5);
        let c = Coloring::new(3, vec![3, 1, 2, 3, 1]);
        let p = find_colorful_path(&g, &c, 3).unwrap();
        assert_eq!(p.vertices, vec![3, 2, 1]);
        assert_eq!(p.direction, Direction::Backward);
        assert!(verify_solution(&g, &c, true).ok());
    }

    #[test]
    fn seven_cycle_leaves_a_vertex_uncertified() {
        let g = cycle(7);
        let c = Coloring::new(3, vec![1, 2, 3, 1, 2, 3, 2]);
        let report = certify_all(&g, &c);
        assert_eq!(report.uncertified, vec![6]);
        assert!(!verify_solution(&g, &c, false).ok());
    }

    #[test]
    fn bipartite_two_coloring_certifies_everything() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = Coloring::new(2, vec![1, 2, 1, 2]);
        let report = certify_all(&g, &c);
        assert!(report.all_certified());
        assert_eq!(report.certified[0].as_ref().unwrap().vertices, vec![0, 1]);
    }

    #[test]
    fn directed_shortcut_matches_generic_search() {
        let g = crate::generate::petersen();
        let c = Coloring::new(
            3,
            vec![1, 2, 1, 2, 3, 2, 1, 3, 3, 2],
        );
        assert!(is_proper(&g, &c));
        let fast = certify_all(&g, &c);
        let slow = certify_all_generic(&g, &c);
        for v in 0..g.n() {
            assert_eq!(fast.certified[v], slow.certified[v], "vertex {v}");
        }
    }

    #[test]
    fn single_vertex_is_trivially_certified() {
        let g = Graph::new(1);
        let c = Coloring::new(1, vec![1]);
        let report = certify_all(&g, &c);
        assert!(report.all_certified());
        assert_eq!(report.certified[0].as_ref().unwrap().vertices, vec![0]);
    }

    #[test]
    fn report_rendering() {
        let g = cycle(7);
        let c = Coloring::new(3, vec![1, 2, 3, 1, 2, 3, 2]);
        let text = certify_all(&g, &c).render();
        assert!(text.contains("7: UNCERTIFIED"));
        assert!(text.lines().count() == 7);
        assert!(text.starts_with("1: 1 -> 2 -> 3"));
    }

    #[test]
    fn verify_catches_improper_and_missing_colors() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        let bad = Coloring::new(3, vec![1, 1, 2]);
        let rep = verify_solution(&g, &bad, false);
        assert!(!rep.proper && !rep.ok());
        assert!(rep.render().contains("not proper"));

        let path = Graph::from_edges(2, &[(0, 1)]);
        let waste = Coloring::new(3, vec![1, 2]);
        let rep = verify_solution(&path, &waste, false);
        assert!(rep.proper && !rep.uses_all_colors && !rep.ok());
    }

    #[test]
    fn verify_checks_vertex_count() {
        let g = Graph::new(3);
        let c = Coloring::new(1, vec![1, 1]);
        assert!(!verify_solution(&g, &c, false).vertex_count_ok);
    }
}
