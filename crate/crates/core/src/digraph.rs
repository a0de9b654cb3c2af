//! The auxiliary orientation of a properly colored graph: an arc a -> b for
//! every edge whose head color is the tail color plus one (cyclically).
//! Includes sink-peeling levels, initial/terminal sections, and the three
//! recoloring moves the solver is built from.

use thiserror::Error;

use crate::certify::certify_all;
use crate::coloring::{is_proper, next_color, prev_color, Coloring};
use crate::graph::{Graph, Vertex};

/// The orientation induced by a proper coloring. Out- and in-neighbor
/// lists are sorted; the digraph is rebuilt from scratch after every
/// recoloring rather than patched, so the structural assertions always
/// cross-check a fresh object.
#[derive(Clone, Debug)]
pub struct ColorDigraph {
    pub chi: usize,
    out: Vec<Vec<Vertex>>,
    inn: Vec<Vec<Vertex>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("coloring is not proper, cannot orient the graph")]
pub struct ImproperColoring;

pub fn build_dc(g: &Graph, c: &Coloring) -> Result<ColorDigraph, ImproperColoring> {
    if !is_proper(g, c) {
        return Err(ImproperColoring);
    }
    let n = g.n();
    let mut out = vec![Vec::new(); n];
    let mut inn = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        // Neighbor lists come out sorted because edges() is lexicographic.
        if c.get(v) == next_color(c.get(u), c.chi) {
            out[u].push(v);
            inn[v].push(u);
        }
        if c.get(u) == next_color(c.get(v), c.chi) {
            out[v].push(u);
            inn[u].push(v);
        }
    }
    for list in out.iter_mut().chain(inn.iter_mut()) {
        list.sort_unstable();
    }
    Ok(ColorDigraph { chi: c.chi, out, inn })
}

impl ColorDigraph {
    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.inn[v]
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        self.out[v].is_empty()
    }

    /// All arcs (u, v), lexicographically sorted.
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        let mut res = Vec::new();
        for u in 0..self.n() {
            for &v in &self.out[u] {
                res.push((u, v));
            }
        }
        res
    }
}

/// Peels sinks repeatedly; returns the vertices stranded by the peeling
/// (empty iff the digraph is acyclic) and, for the peeled part, the
/// 1-based level of each vertex (0 for stranded ones).
fn peel(d: &ColorDigraph) -> (Vec<usize>, Vec<Vec<Vertex>>) {
    let n = d.n();
    let mut outdeg: Vec<usize> = (0..n).map(|v| d.out[v].len()).collect();
    let mut level_of = vec![0usize; n];
    let mut levels: Vec<Vec<Vertex>> = Vec::new();
    let mut current: Vec<Vertex> = (0..n).filter(|&v| outdeg[v] == 0).collect();
    let mut depth = 0;
    while !current.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &v in &current {
            level_of[v] = depth;
        }
        for &v in &current {
            for &u in &d.inn[v] {
                outdeg[u] -= 1;
                if outdeg[u] == 0 {
                    next.push(u);
                }
            }
        }
        next.sort_unstable();
        levels.push(std::mem::take(&mut current));
        current = next;
    }
    (level_of, levels)
}

/// Some directed cycle, or none. Sink-peeling strands exactly the
/// vertices lying on or above cycles; the cycle is recovered by walking
/// least out-neighbors inside the stranded set from its least vertex, and
/// its length is always a multiple of chi.
pub fn find_oriented_cycle(d: &ColorDigraph) -> Option<Vec<Vertex>> {
    let (level_of, _) = peel(d);
    let stranded: Vec<Vertex> = (0..d.n()).filter(|&v| level_of[v] == 0).collect();
    let start = *stranded.first()?;
    let mut pos = vec![usize::MAX; d.n()];
    let mut walk = Vec::new();
    let mut cur = start;
    loop {
        if pos[cur] != usize::MAX {
            let mut cycle = walk.split_off(pos[cur]);
            // Start the reported cycle at its least vertex.
            let least = cycle.iter().copied().enumerate().min_by_key(|&(_, v)| v).unwrap().0;
            cycle.rotate_left(least);
            debug_assert_eq!(cycle.len() % d.chi, 0);
            return Some(cycle);
        }
        pos[cur] = walk.len();
        walk.push(cur);
        // Every stranded vertex keeps an out-arc into the stranded set.
        cur = *d.out[cur].iter().find(|&&w| level_of[w] == 0).unwrap();
    }
}

/// Sink-peeling levels of an acyclic orientation. Level 1 is the sink
/// set; level i collects the sinks left after removing levels below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPartition {
    pub levels: Vec<Vec<Vertex>>,
    pub level_of: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("orientation contains a cycle, no level partition exists")]
pub struct ContainsCycle;

impl LevelPartition {
    /// Height: the number of levels, also the vertex count of a longest
    /// directed path.
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// 1-based level access; out-of-range levels are empty.
    pub fn level(&self, i: usize) -> &[Vertex] {
        if i >= 1 && i <= self.levels.len() {
            &self.levels[i - 1]
        } else {
            &[]
        }
    }

    pub fn top(&self) -> &[Vertex] {
        self.level(self.height())
    }
}

pub fn level_partition(d: &ColorDigraph) -> Result<LevelPartition, ContainsCycle> {
    let (level_of, levels) = peel(d);
    if level_of.contains(&0) {
        return Err(ContainsCycle);
    }
    debug_assert!(levels.iter().enumerate().all(|(i, lv)| {
        // Arcs only point from higher to strictly lower levels.
        lv.iter().all(|&v| d.out[v].iter().all(|&w| level_of[w] < i + 1))
    }));
    Ok(LevelPartition { levels, level_of })
}

/// True iff no arc points from outside X into X.
pub fn is_initial_section(d: &ColorDigraph, xs: &[Vertex]) -> bool {
    let inside = member_mask(d.n(), xs);
    xs.iter().all(|&v| d.inn[v].iter().all(|&u| inside[u]))
}

/// True iff no arc points from X to the outside.
pub fn is_terminal_section(d: &ColorDigraph, xs: &[Vertex]) -> bool {
    let inside = member_mask(d.n(), xs);
    xs.iter().all(|&v| d.out[v].iter().all(|&u| inside[u]))
}

/// Every vertex with a directed path (length 0 allowed) into X, sorted.
/// The result is always an initial section and a fixed point of itself.
pub fn reachable_to(d: &ColorDigraph, xs: &[Vertex]) -> Vec<Vertex> {
    let mut seen = member_mask(d.n(), xs);
    let mut stack: Vec<Vertex> = xs.to_vec();
    while let Some(v) = stack.pop() {
        for &u in &d.inn[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (0..d.n()).filter(|&v| seen[v]).collect()
}

fn member_mask(n: usize, xs: &[Vertex]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in xs {
        mask[v] = true;
    }
    mask
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecolorError {
    #[error("the set is not an initial section (an arc enters it)")]
    NotInitialSection,
    #[error("the set is not a terminal section (an arc leaves it)")]
    NotTerminalSection,
    #[error(transparent)]
    Improper(#[from] ImproperColoring),
}

/// Subtracts one (cyclically) from the colors of an initial section.
/// The result is proper again and no arc of the new orientation leaves X;
/// for chi = 3 every former arc leaving X is exactly reversed.
pub fn initial_recolor(g: &Graph, c: &Coloring, xs: &[Vertex]) -> Result<Coloring, RecolorError> {
    let d = build_dc(g, c)?;
    if !is_initial_section(&d, xs) {
        return Err(RecolorError::NotInitialSection);
    }
    let mut colors = c.colors.clone();
    for &v in xs {
        colors[v] = prev_color(colors[v], c.chi);
    }
    let out = Coloring::new(c.chi, colors);
    debug_assert!(is_proper(g, &out));
    debug_assert!({
        let inside = member_mask(g.n(), xs);
        let d2 = build_dc(g, &out).unwrap();
        xs.iter().all(|&v| d2.out_neighbors(v).iter().all(|&w| inside[w]))
    });
    Ok(out)
}

/// Adds one (cyclically) to the colors of a terminal section; the dual of
/// `initial_recolor`.
pub fn terminal_recolor(g: &Graph, c: &Coloring, xs: &[Vertex]) -> Result<Coloring, RecolorError> {
    let d = build_dc(g, c)?;
    if !is_terminal_section(&d, xs) {
        return Err(RecolorError::NotTerminalSection);
    }
    let mut colors = c.colors.clone();
    for &v in xs {
        colors[v] = next_color(colors[v], c.chi);
    }
    let out = Coloring::new(c.chi, colors);
    debug_assert!(is_proper(g, &out));
    Ok(out)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SwitchError {
    #[error("switch recoloring is defined only for 3 colors")]
    NotThreeColors,
    #[error("coloring is not nice (orientation cyclic or sink not unique)")]
    NotNice,
    #[error("vertex {0} already starts a colorful path, nothing to switch")]
    NotUncertified(Vertex),
    #[error(transparent)]
    Improper(#[from] ImproperColoring),
}

/// The switch recoloring on an uncertified vertex b of a nice coloring:
/// the initial recoloring of {b} together with b's in-neighbors. The
/// returned coloring is again nice with unique sink b; the full level
/// relabeling laws are asserted in debug builds (`assert_switch_laws`).
pub fn switch_recolor(g: &Graph, c: &Coloring, b: Vertex) -> Result<Coloring, SwitchError> {
    if c.chi != 3 {
        return Err(SwitchError::NotThreeColors);
    }
    let d = build_dc(g, c)?;
    let lp = level_partition(&d).map_err(|_| SwitchError::NotNice)?;
    if lp.level(1).len() != 1 {
        return Err(SwitchError::NotNice);
    }
    let report = certify_all(g, c);
    if report.is_certified(b) {
        return Err(SwitchError::NotUncertified(b));
    }
    let mut xs = d.in_neighbors(b).to_vec();
    xs.push(b);
    xs.sort_unstable();
    // An uncertified b has no directed 2-path ending at it, so its
    // in-neighbors are sources and the set above is an initial section.
    let out = initial_recolor(g, c, &xs)
        .expect("switch target set is always an initial section");
    #[cfg(debug_assertions)]
    assert_switch_laws(g, &lp, b, d.in_neighbors(b), &out);
    Ok(out)
}

/// Sorted-slice helpers for the level-law assertions and their callers.
pub fn sorted_subset(sub: &[Vertex], sup: &[Vertex]) -> bool {
    sub.iter().all(|v| sup.binary_search(v).is_ok())
}

pub fn sorted_difference(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|v| b.binary_search(v).is_err()).collect()
}

/// Checks the five switch laws: (a) the result is nice with unique sink b;
/// (b) level i of the new partition is {r} ∪ N⁻(b) for i=2, old level 2
/// minus b for i=3, and old level i−1 (minus N⁻(b) when i ≡ 1 mod 3) above
/// that; (c)/(d) the height grows by one exactly when the old top level is
/// not contained in N⁻(b); (e) newly uncertified vertices lie in N⁻(b).
#[cfg(debug_assertions)]
fn assert_switch_laws(
    g: &Graph,
    old: &LevelPartition,
    b: Vertex,
    in_of_b: &[Vertex],
    new_c: &Coloring,
) {
    let d_new = build_dc(g, new_c).expect("switch output is proper");
    let new = level_partition(&d_new).expect("switch output is acyclic");
    // (a)
    assert_eq!(new.level(1), &[b], "switch law (a): unique sink b");
    // (b)
    let r = old.level(1)[0];
    let mut v2: Vec<Vertex> = in_of_b.to_vec();
    v2.push(r);
    v2.sort_unstable();
    assert_eq!(new.level(2), v2, "switch law (b): second level");
    assert_eq!(
        new.level(3),
        sorted_difference(old.level(2), &[b]),
        "switch law (b): third level"
    );
    for i in 4..=old.height() + 1 {
        let expected = if i % 3 == 1 {
            sorted_difference(old.level(i - 1), in_of_b)
        } else {
            old.level(i - 1).to_vec()
        };
        assert_eq!(new.level(i), expected, "switch law (b): level {i}");
    }
    // (c)/(d)
    let expected_h = if sorted_subset(old.top(), in_of_b) {
        old.height()
    } else {
        old.height() + 1
    };
    assert_eq!(new.height(), expected_h, "switch laws (c)/(d): height");
    // (e)
    let rep = certify_all(g, new_c);
    assert!(
        rep.uncertified.iter().all(|v| in_of_b.binary_search(v).is_ok()),
        "switch law (e): uncertified set must sit inside N⁻(b)"
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> (Graph, Coloring) {
        (Graph::from_edges(3, &[(0, 1), (1, 2)]), Coloring::new(3, vec![1, 2, 3]))
    }

    fn k3() -> (Graph, Coloring) {
        (Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]), Coloring::new(3, vec![1, 2, 3]))
    }

    #[test]
    fn triangle_is_an_oriented_cycle() {
        let (g, c) = k3();
        let d = build_dc(&g, &c).unwrap();
        assert_eq!(d.arcs(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(find_oriented_cycle(&d), Some(vec![0, 1, 2]));
    }

    #[test]
    fn path_arcs_and_no_cycle() {
        let (g, c) = path3();
        let d = build_dc(&g, &c).unwrap();
        assert_eq!(d.arcs(), vec![(0, 1), (1, 2)]);
        assert_eq!(find_oriented_cycle(&d), None);
    }

    #[test]
    fn wraparound_arc() {
        // Colors (1,3) under chi=3: the arc runs 1 <- 3 since 1 = 3+1.
        let g = Graph::from_edges(2, &[(0, 1)]);
        let c = Coloring::new(3, vec![1, 3]);
        let d = build_dc(&g, &c).unwrap();
        assert_eq!(d.arcs(), vec![(1, 0)]);
    }

    #[test]
    fn every_edge_is_one_arc_when_chi_is_3() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let c = Coloring::new(3, vec![1, 2, 1, 2, 3]);
        let d = build_dc(&g, &c).unwrap();
        assert_eq!(d.arcs().len(), g.edge_count());
    }

    #[test]
    fn improper_coloring_rejected() {
        let g = Graph::from_edges(2, &[(0, 1)]);
        let c = Coloring::new(3, vec![2, 2]);
        assert!(build_dc(&g, &c).is_err());
    }

    #[test]
    fn levels_of_path_and_star() {
        let (g, c) = path3();
        let lp = level_partition(&build_dc(&g, &c).unwrap()).unwrap();
        assert_eq!(lp.levels, vec![vec![2], vec![1], vec![0]]);
        assert_eq!(lp.height(), 3);

        // Star, center color 2, leaves color 1, chi=3: arcs leaves -> center.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let c = Coloring::new(3, vec![2, 1, 1, 1]);
        let lp = level_partition(&build_dc(&star, &c).unwrap()).unwrap();
        assert_eq!(lp.levels, vec![vec![0], vec![1, 2, 3]]);

        let single = level_partition(&build_dc(&Graph::new(1), &Coloring::new(1, vec![1])).unwrap());
        assert_eq!(single.unwrap().levels, vec![vec![0]]);

        let (g, c) = k3();
        assert_eq!(level_partition(&build_dc(&g, &c).unwrap()), Err(ContainsCycle));
    }

    #[test]
    fn sections_on_the_path() {
        let (g, c) = path3();
        let d = build_dc(&g, &c).unwrap();
        assert!(is_initial_section(&d, &[0]));
        assert!(!is_initial_section(&d, &[2]));
        assert!(is_initial_section(&d, &[0, 1, 2]));
        assert!(is_initial_section(&d, &[]));
        assert!(is_terminal_section(&d, &[2]));
        assert!(!is_terminal_section(&d, &[0]));
    }

    #[test]
    fn reachability() {
        let (g, c) = path3();
        let d = build_dc(&g, &c).unwrap();
        assert_eq!(reachable_to(&d, &[2]), vec![0, 1, 2]);
        assert_eq!(reachable_to(&d, &[0]), vec![0]);
        assert_eq!(reachable_to(&d, &[]), Vec::<usize>::new());
        // Fixed point and initial section.
        let y = reachable_to(&d, &[1]);
        assert_eq!(reachable_to(&d, &y), y);
        assert!(is_initial_section(&d, &y));
    }

    #[test]
    fn recoloring_moves_on_the_path() {
        let (g, c) = path3();
        let init = initial_recolor(&g, &c, &[0]).unwrap();
        assert_eq!(init.colors, vec![3, 2, 3]);
        let term = terminal_recolor(&g, &c, &[2]).unwrap();
        assert_eq!(term.colors, vec![1, 2, 1]);
        assert_eq!(initial_recolor(&g, &c, &[]).unwrap(), c);
        // Recoloring everything shifts all colors in lockstep.
        let all = initial_recolor(&g, &c, &[0, 1, 2]).unwrap();
        assert_eq!(all.colors, vec![3, 1, 2]);
        assert_eq!(
            initial_recolor(&g, &c, &[2]).unwrap_err(),
            RecolorError::NotInitialSection
        );
        assert_eq!(
            terminal_recolor(&g, &c, &[0]).unwrap_err(),
            RecolorError::NotTerminalSection
        );
    }

    #[test]
    fn arc_reversal_under_initial_recoloring() {
        // chi = 3: arcs leaving the recolored section come back reversed.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = Coloring::new(3, vec![1, 2, 3, 1]);
        let d = build_dc(&g, &c).unwrap();
        assert!(is_initial_section(&d, &[0, 1]));
        let c2 = initial_recolor(&g, &c, &[0, 1]).unwrap();
        let d2 = build_dc(&g, &c2).unwrap();
        assert!(d.has_arc(1, 2) && d2.has_arc(2, 1));
    }

    #[test]
    fn switch_preconditions() {
        let (g, c) = k3();
        assert_eq!(switch_recolor(&g, &c, 0), Err(SwitchError::NotNice));
        let g2 = Graph::from_edges(2, &[(0, 1)]);
        let c2 = Coloring::new(2, vec![1, 2]);
        assert_eq!(switch_recolor(&g2, &c2, 0), Err(SwitchError::NotThreeColors));
    }
}
