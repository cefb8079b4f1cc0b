//! Graph automorphism groups and canonical labelings from scratch.
//!
//! The engine is the usual individualization-refinement scheme: refine an
//! ordered partition to its coarsest equitable refinement, individualize a
//! vertex of the first non-singleton cell, recurse. Discrete partitions are
//! leaves; a leaf whose relabeled adjacency matrix matches the first leaf's
//! yields an automorphism, and the lexicographically largest relabeled
//! matrix over all leaves is the canonical form. Subtrees are pruned only
//! when an already-found automorphism fixing the individualized prefix maps
//! an explored sibling onto the candidate, so pruning never loses
//! generators or canonical leaves.

use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::perm::{PermGroup, Permutation};
use crate::{Error, Result};

/// An ordered partition of the vertex set into cells. Cells are kept in
/// ascending vertex order internally; the cell sequence itself is
/// significant (refinement and individualization insert new cells in
/// place).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPartition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl ColoredPartition {
    /// The unit partition: one cell holding every vertex.
    pub fn unit(n: usize) -> Self {
        if n == 0 {
            return ColoredPartition {
                cells: Vec::new(),
                cell_of: Vec::new(),
            };
        }
        ColoredPartition {
            cells: vec![(0..n).collect()],
            cell_of: vec![0; n],
        }
    }

    /// Validate that `cells` partition `0..n`.
    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut cell_of = vec![usize::MAX; n];
        for (ci, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidSpec("empty partition cell".into()));
            }
            for &v in cell {
                if v >= n {
                    return Err(Error::PointOutOfRange {
                        point: v,
                        degree: n,
                    });
                }
                if cell_of[v] != usize::MAX {
                    return Err(Error::InvalidSpec(format!(
                        "vertex {v} appears in two cells"
                    )));
                }
                cell_of[v] = ci;
            }
        }
        if cell_of.contains(&usize::MAX) {
            return Err(Error::InvalidSpec("partition does not cover all vertices".into()));
        }
        let mut cells = cells;
        for cell in &mut cells {
            cell.sort_unstable();
        }
        Ok(ColoredPartition { cells, cell_of })
    }

    fn from_cells_unchecked(cells: Vec<Vec<usize>>, n: usize) -> Self {
        let mut cell_of = vec![0; n];
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        ColoredPartition { cells, cell_of }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Index of the first cell with more than one vertex.
    pub fn first_non_singleton(&self) -> Option<usize> {
        self.cells.iter().position(|c| c.len() > 1)
    }

    /// Split `{v}` off its cell, placing the singleton immediately before
    /// the remainder.
    pub fn individualized(&self, cell_idx: usize, v: usize) -> ColoredPartition {
        debug_assert!(self.cells[cell_idx].contains(&v));
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for (ci, cell) in self.cells.iter().enumerate() {
            if ci == cell_idx {
                cells.push(vec![v]);
                cells.push(cell.iter().copied().filter(|&w| w != v).collect());
            } else {
                cells.push(cell.clone());
            }
        }
        ColoredPartition::from_cells_unchecked(cells, self.cell_of.len())
    }

    /// Whether every vertex of every cell sees the same number of neighbors
    /// in each cell.
    pub fn is_equitable(&self, graph: &Graph) -> bool {
        for cell in &self.cells {
            let sig0 = self.signature(graph, cell[0]);
            if cell[1..].iter().any(|&v| self.signature(graph, v) != sig0) {
                return false;
            }
        }
        true
    }

    fn signature(&self, graph: &Graph, v: usize) -> Vec<usize> {
        let mut sig = vec![0usize; self.cells.len()];
        for &w in graph.neighbors(v) {
            sig[self.cell_of[w]] += 1;
        }
        sig
    }
}

/// Coarsest equitable refinement of a partition: repeatedly split the first
/// splittable cell by neighbor-count signatures, ordering the new sub-cells
/// signature-lexicographically, until no cell splits. Idempotent, and
/// equivariant under graph isomorphisms (signatures are indexed by cell
/// position, not vertex identity).
pub fn refine(graph: &Graph, partition: &ColoredPartition) -> ColoredPartition {
    let n = graph.vertex_count();
    let mut cells = partition.cells.clone();
    'outer: loop {
        let mut cell_of = vec![0usize; n];
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        for ti in 0..cells.len() {
            if cells[ti].len() <= 1 {
                continue;
            }
            let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for &v in &cells[ti] {
                let mut sig = vec![0usize; cells.len()];
                for &w in graph.neighbors(v) {
                    sig[cell_of[w]] += 1;
                }
                groups.entry(sig).or_default().push(v);
            }
            if groups.len() > 1 {
                let replacement: Vec<Vec<usize>> = groups.into_values().collect();
                cells.splice(ti..=ti, replacement);
                continue 'outer;
            }
        }
        return ColoredPartition::from_cells_unchecked(cells, n);
    }
}

/// A canonical labeling: `labeling` maps each vertex to its canonical
/// position; `certificate` is the relabeled adjacency matrix packed into
/// 64-bit words. Two graphs are isomorphic iff their certificates match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub labeling: Permutation,
    pub certificate: Vec<u64>,
}

struct Searcher<'g> {
    graph: &'g Graph,
    n: usize,
    words_per_row: usize,
    /// first leaf: (certificate, position -> vertex)
    base: Option<(Vec<u64>, Vec<usize>)>,
    /// best leaf so far under lexicographic certificate order
    best: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Permutation>,
    known: PermGroup,
    leaves_visited: usize,
}

impl<'g> Searcher<'g> {
    fn new(graph: &'g Graph) -> Self {
        let n = graph.vertex_count();
        Searcher {
            graph,
            n,
            words_per_row: n.div_ceil(64),
            base: None,
            best: None,
            generators: Vec::new(),
            known: PermGroup::trivial(n),
            leaves_visited: 0,
        }
    }

    fn run(&mut self) {
        let root = ColoredPartition::unit(self.n);
        let mut prefix = Vec::new();
        self.search(root, &mut prefix);
    }

    fn search(&mut self, partition: ColoredPartition, prefix: &mut Vec<usize>) {
        let pi = refine(self.graph, &partition);
        let Some(cell_idx) = pi.first_non_singleton() else {
            self.handle_leaf(&pi);
            return;
        };
        let candidates = pi.cells()[cell_idx].clone();
        let mut processed: Vec<usize> = Vec::new();
        for &v in &candidates {
            if self.orbit_pruned(&processed, v, prefix) {
                continue;
            }
            processed.push(v);
            let child = pi.individualized(cell_idx, v);
            prefix.push(v);
            self.search(child, prefix);
            prefix.pop();
        }
    }

    /// Skip `v` when an already-found automorphism that fixes the current
    /// prefix pointwise maps an explored sibling onto it.
    fn orbit_pruned(&self, processed: &[usize], v: usize, prefix: &[usize]) -> bool {
        if processed.is_empty() || self.generators.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in self
            .generators
            .iter()
            .filter(|g| prefix.iter().all(|&p| g.apply(p) == p))
        {
            for p in 0..self.n {
                let a = find(&mut parent, p);
                let b = find(&mut parent, g.apply(p));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let target = find(&mut parent, v);
        processed
            .iter()
            .any(|&u| find(&mut parent, u) == target)
    }

    fn certificate(&self, position_to_vertex: &[usize]) -> Vec<u64> {
        let mut position_of = vec![0usize; self.n];
        for (pos, &v) in position_to_vertex.iter().enumerate() {
            position_of[v] = pos;
        }
        let mut cert = vec![0u64; self.n * self.words_per_row];
        for &(u, v) in self.graph.edges() {
            let (pu, pv) = (position_of[u], position_of[v]);
            cert[pu * self.words_per_row + pv / 64] |= 1 << (pv % 64);
            cert[pv * self.words_per_row + pu / 64] |= 1 << (pu % 64);
        }
        cert
    }

    fn handle_leaf(&mut self, pi: &ColoredPartition) {
        self.leaves_visited += 1;
        let lab: Vec<usize> = pi.cells().iter().map(|c| c[0]).collect();
        let cert = self.certificate(&lab);
        match &self.base {
            None => self.base = Some((cert.clone(), lab.clone())),
            Some((base_cert, base_lab)) => {
                if cert == *base_cert {
                    let mut images = vec![0usize; self.n];
                    for k in 0..self.n {
                        images[base_lab[k]] = lab[k];
                    }
                    let p = Permutation::from_images(images).expect("leaf labelings are bijections");
                    debug_assert!(self.graph.is_automorphism(&p));
                    if !p.is_identity() && !self.known.contains(&p).expect("equal degrees") {
                        self.generators.push(p);
                        self.known = PermGroup::new(self.n, self.generators.clone())
                            .expect("generators share the graph degree");
                    }
                }
            }
        }
        if self.best.as_ref().is_none_or(|(bc, _)| cert > *bc) {
            self.best = Some((cert, lab));
        }
    }
}

fn check_cap(graph: &Graph, cap: usize) -> Result<()> {
    if graph.vertex_count() > cap {
        return Err(Error::ResourceLimit(format!(
            "automorphism search limited to {cap} vertices, graph has {}",
            graph.vertex_count()
        )));
    }
    Ok(())
}

/// Full automorphism group of a graph, with the crate-wide vertex cap.
pub fn automorphism_group(graph: &Graph) -> Result<PermGroup> {
    automorphism_group_with_cap(graph, crate::vertex_cap())
}

pub fn automorphism_group_with_cap(graph: &Graph, cap: usize) -> Result<PermGroup> {
    check_cap(graph, cap)?;
    let mut searcher = Searcher::new(graph);
    searcher.run();
    debug_assert!(searcher
        .generators
        .iter()
        .all(|g| graph.is_automorphism(g)));
    PermGroup::new(graph.vertex_count(), searcher.generators)
}

/// Canonical labeling and certificate of a graph.
pub fn canonical_form(graph: &Graph) -> Result<CanonicalForm> {
    check_cap(graph, crate::vertex_cap())?;
    let mut searcher = Searcher::new(graph);
    searcher.run();
    let (certificate, lab) = searcher.best.unwrap_or((Vec::new(), Vec::new()));
    let mut images = vec![0usize; graph.vertex_count()];
    for (pos, &v) in lab.iter().enumerate() {
        images[v] = pos;
    }
    Ok(CanonicalForm {
        labeling: Permutation::from_images(images).expect("labeling is a bijection"),
        certificate,
    })
}

/// Single automorphism orbit on vertices.
pub fn is_vertex_transitive(graph: &Graph, aut: &PermGroup) -> bool {
    graph.vertex_count() <= 1 || aut.orbits().len() == 1
}

/// Single automorphism orbit on unordered edges.
pub fn is_edge_transitive(graph: &Graph, aut: &PermGroup) -> bool {
    let edges = graph.edges();
    if edges.len() <= 1 {
        return true;
    }
    let index: BTreeMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    orbit_count(edges.len(), |e| {
        let (u, v) = edges[e];
        aut.generators()
            .iter()
            .map(|g| {
                let (a, b) = (g.apply(u), g.apply(v));
                index[&(a.min(b), a.max(b))]
            })
            .collect()
    }) == 1
}

/// Single automorphism orbit on ordered adjacent pairs.
pub fn is_arc_transitive(graph: &Graph, aut: &PermGroup) -> bool {
    let edges = graph.edges();
    if edges.is_empty() {
        return true;
    }
    // arcs 2i and 2i+1 are the two orientations of edge i
    let index: BTreeMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .flat_map(|(i, &(u, v))| [((u, v), 2 * i), ((v, u), 2 * i + 1)])
        .collect();
    orbit_count(2 * edges.len(), |a| {
        let (u, v) = if a % 2 == 0 {
            edges[a / 2]
        } else {
            let (u, v) = edges[a / 2];
            (v, u)
        };
        aut.generators()
            .iter()
            .map(|g| index[&(g.apply(u), g.apply(v))])
            .collect()
    }) == 1
}

/// Union-find orbit count over `0..n`, where `images(i)` lists the points
/// each generator sends `i` to.
fn orbit_count(n: usize, images: impl Fn(usize) -> Vec<usize>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in images(i) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{parse_element_set, parse_group};
    use crate::graph::{cayley_graph, generalized_petersen, semi_cayley_graph, ConnectionSpec};
    use num_bigint::BigUint;

    fn sc(group: &str, r: &str, l: &str) -> Graph {
        let g = parse_group(group).unwrap();
        let right = parse_element_set(r, &g).unwrap();
        let left = parse_element_set(l, &g).unwrap();
        semi_cayley_graph(&ConnectionSpec::one_matching(g, right, left).unwrap()).unwrap()
    }

    /// Brute-force oracle: filter all |V|! permutations.
    fn brute_force_aut_order(graph: &Graph) -> usize {
        fn rec(
            graph: &Graph,
            images: &mut Vec<usize>,
            k: usize,
            count: &mut usize,
        ) {
            if k == images.len() {
                let p = Permutation::from_images(images.clone()).unwrap();
                if graph.is_automorphism(&p) {
                    *count += 1;
                }
                return;
            }
            for i in k..images.len() {
                images.swap(k, i);
                rec(graph, images, k + 1, count);
                images.swap(k, i);
            }
        }
        let mut images: Vec<usize> = (0..graph.vertex_count()).collect();
        let mut count = 0;
        rec(graph, &mut images, 0, &mut count);
        count
    }

    #[test]
    fn refinement_splits_by_degree() {
        // regular graph: unit partition already equitable
        let c4 = cayley_graph(
            &parse_group("Z4").unwrap(),
            &parse_element_set("(1),(3)", &parse_group("Z4").unwrap()).unwrap(),
        )
        .unwrap();
        let pi = refine(&c4, &ColoredPartition::unit(4));
        assert_eq!(pi.cells().len(), 1);
        assert!(pi.is_equitable(&c4));

        // path 0-1-2: endpoints split from the center
        let p3 = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let pi = refine(&p3, &ColoredPartition::unit(3));
        assert_eq!(pi.cells(), &[vec![0, 2], vec![1]]);
        assert!(pi.is_equitable(&p3));

        // P4 from the Z2 spec: degree-1 cell before degree-2 cell
        let p4 = sc("Z2", "(1)", "");
        let pi = refine(&p4, &ColoredPartition::unit(4));
        assert_eq!(pi.cells(), &[vec![2, 3], vec![0, 1]]);
        assert!(pi.is_equitable(&p4));

        // idempotence
        assert_eq!(refine(&p4, &pi), pi);
    }

    #[test]
    fn partition_validation_and_individualization() {
        assert!(ColoredPartition::from_cells(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(ColoredPartition::from_cells(3, vec![vec![0, 1]]).is_err());
        let pi = ColoredPartition::from_cells(3, vec![vec![0, 1, 2]]).unwrap();
        let ind = pi.individualized(0, 1);
        assert_eq!(ind.cells(), &[vec![1], vec![0, 2]]);
        assert_eq!(ind.cell_of(1), 0);
        assert_eq!(ind.cell_of(2), 1);
    }

    #[test]
    fn small_graph_aut_orders_match_brute_force() {
        let cases: Vec<(Graph, usize)> = vec![
            (sc("Z2", "(1)", ""), 2),       // path on 4 vertices
            (sc("Z2", "(1)", "(1)"), 8),    // 4-cycle
            (sc("Z2xZ2", "(1,0)", "(0,1)"), 16), // 8-cycle
            (sc("Z4", "(1),(3)", "(2)"), 8),
            (sc("Z2xZ2", "(1,0),(0,1)", ""), 8), // sun over the 4-cycle
            (Graph::from_edges(1, Vec::new()).unwrap(), 1),
            (Graph::from_edges(4, vec![(0, 1)]).unwrap(), 4),
        ];
        for (graph, expected) in cases {
            let aut = automorphism_group(&graph).unwrap();
            assert_eq!(aut.order(), BigUint::from(expected), "engine order");
            assert_eq!(brute_force_aut_order(&graph), expected, "brute force");
        }
    }

    #[test]
    fn eight_vertex_cube_aut() {
        // SC(Z2^2; {a,b}, {a,b}) is the 3-cube
        let cube = sc("Z2xZ2", "(1,0),(0,1)", "(1,0),(0,1)");
        let aut = automorphism_group(&cube).unwrap();
        assert_eq!(aut.order(), BigUint::from(48u32));
        assert_eq!(brute_force_aut_order(&cube), 48);
    }

    #[test]
    fn petersen_graph_group() {
        let petersen = generalized_petersen(5, 2).unwrap();
        let aut = automorphism_group(&petersen).unwrap();
        assert_eq!(aut.order(), BigUint::from(120u32));
        assert!(is_vertex_transitive(&petersen, &aut));
        assert!(is_edge_transitive(&petersen, &aut));
        assert!(is_arc_transitive(&petersen, &aut));
    }

    #[test]
    fn transitivity_predicates() {
        let prism = generalized_petersen(6, 1).unwrap();
        let aut = automorphism_group(&prism).unwrap();
        assert!(is_vertex_transitive(&prism, &aut));
        assert!(!is_edge_transitive(&prism, &aut));
        assert!(!is_arc_transitive(&prism, &aut));

        let p4 = sc("Z2", "(1)", "");
        let aut = automorphism_group(&p4).unwrap();
        assert!(!is_vertex_transitive(&p4, &aut));

        // arc-transitive implies edge-transitive on everything we build
        let c4 = sc("Z2", "(1)", "(1)");
        let aut = automorphism_group(&c4).unwrap();
        assert!(is_arc_transitive(&c4, &aut));
        assert!(is_edge_transitive(&c4, &aut));
    }

    #[test]
    fn orbit_stabilizer_cross_check() {
        for graph in [
            generalized_petersen(5, 2).unwrap(),
            sc("Z4", "(1),(3)", "(1),(3)"),
            sc("Z6", "(1),(5)", "(3)"),
        ] {
            let aut = automorphism_group(&graph).unwrap();
            let stab = aut.point_stabilizer(0).unwrap();
            assert_eq!(
                BigUint::from(aut.orbit_of(0).len()) * stab.order(),
                aut.order()
            );
        }
    }

    #[test]
    fn canonical_forms_agree_across_relabelings() {
        let petersen = generalized_petersen(5, 2).unwrap();
        // relabel by an arbitrary permutation
        let p = Permutation::from_images(vec![3, 1, 4, 0, 5, 9, 2, 6, 8, 7]).unwrap();
        let relabeled = Graph::from_edges(
            10,
            petersen
                .edges()
                .iter()
                .map(|&(u, v)| (p.apply(u), p.apply(v)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let a = canonical_form(&petersen).unwrap();
        let b = canonical_form(&relabeled).unwrap();
        assert_eq!(a.certificate, b.certificate);

        let c6 = cayley_graph(
            &parse_group("Z6").unwrap(),
            &parse_element_set("(1),(5)", &parse_group("Z6").unwrap()).unwrap(),
        )
        .unwrap();
        let c = canonical_form(&c6).unwrap();
        assert_ne!(a.certificate, c.certificate);
    }

    #[test]
    fn cap_is_enforced() {
        let big = Graph::from_edges(70, (0..69).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        assert!(matches!(
            automorphism_group(&big),
            Err(Error::ResourceLimit(_))
        ));
        assert!(automorphism_group_with_cap(&big, 128).is_ok());
    }
}
