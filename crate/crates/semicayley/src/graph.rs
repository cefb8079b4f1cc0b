//! Immutable undirected simple graphs and the constructors used throughout
//! the crate: Cayley graphs, one-matching semi-Cayley graphs, generalized
//! Petersen graphs, and the quotient by the spoke matching.
//!
//! Semi-Cayley vertex indexing is fixed: side-1 vertices occupy indices
//! `0..|G|` and side-2 vertices `|G|..2|G|`, each side ordered by element
//! rank. All translation permutations and reports rely on this layout.

use std::collections::BTreeSet;

use serde_json::json;

use crate::abelian::{AbelianGroup, GroupElement};
use crate::perm::Permutation;
use crate::{Error, Result};

/// Which side of a semi-Cayley graph a vertex lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn as_u8(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }
}

/// Vertex label carried by semi-Cayley graphs: the group element and side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLabel {
    pub element: GroupElement,
    pub side: Side,
}

/// An immutable undirected simple graph. No loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<VertexLabel>>,
}

impl Graph {
    /// Build from an edge list. Loops are rejected; duplicate edges
    /// collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::PointOutOfRange {
                    point: u.max(v),
                    degree: n,
                });
            }
            if u == v {
                return Err(Error::InvalidSpec(format!("loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            neighbors,
            edges,
            labels: None,
        })
    }

    fn with_labels(mut self, labels: Vec<VertexLabel>) -> Self {
        debug_assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degs.sort_unstable();
        degs
    }

    /// BFS connectivity; the one-vertex graph is connected, the empty graph
    /// vacuously so.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push(w);
                }
            }
        }
        reached == self.n
    }

    /// Whether `p` maps edges to edges (degree must match the graph).
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n
            && self
                .edges
                .iter()
                .all(|&(u, v)| self.has_edge(p.apply(u), p.apply(v)))
    }

    /// Length of the shortest cycle, or `None` for forests. BFS from every
    /// vertex.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let cycle = dist[v] + dist[w] + 1;
                        if best.is_none_or(|b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    /// Edge-list text export: header `p graph <n> <m>` then one `u v` line
    /// per edge.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("p graph {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// JSON export carrying labels when present.
    pub fn to_json(&self) -> serde_json::Value {
        let labels = self.labels.as_ref().map(|labels| {
            labels
                .iter()
                .enumerate()
                .map(|(v, label)| {
                    json!({
                        "vertex": v,
                        "element": label.element.to_string(),
                        "side": label.side.as_u8(),
                    })
                })
                .collect::<Vec<_>>()
        });
        match labels {
            Some(labels) => json!({
                "vertices": self.n,
                "edges": self.edges,
                "labels": labels,
            }),
            None => json!({
                "vertices": self.n,
                "edges": self.edges,
            }),
        }
    }
}

/// The connection data of a one-matching semi-Cayley graph: the group, the
/// right set `R`, the left set `L`, and the spoke set `S` (always the
/// identity singleton here, which makes the spokes a perfect matching).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSpec {
    group: AbelianGroup,
    right: BTreeSet<GroupElement>,
    left: BTreeSet<GroupElement>,
    spokes: BTreeSet<GroupElement>,
}

impl ConnectionSpec {
    /// Validate and build a one-matching spec. Requirements: every element
    /// belongs to the group, `R = -R`, `L = -L`, the identity is in neither,
    /// and not both sets are empty (that graph is a bare matching, which is
    /// disconnected for every nontrivial group).
    pub fn one_matching(
        group: AbelianGroup,
        right: BTreeSet<GroupElement>,
        left: BTreeSet<GroupElement>,
    ) -> Result<Self> {
        for (name, set) in [("R", &right), ("L", &left)] {
            for x in set.iter() {
                if !group.contains(x) {
                    return Err(Error::InvalidSpec(format!(
                        "{name} contains {x}, which is not an element of {}",
                        group.name()
                    )));
                }
                if *x == group.identity() {
                    return Err(Error::InvalidSpec(format!(
                        "{name} contains the identity"
                    )));
                }
                if !set.contains(&group.neg(x)) {
                    return Err(Error::InvalidSpec(format!(
                        "{name} is not inverse-closed: misses -{x}"
                    )));
                }
            }
        }
        if right.is_empty() && left.is_empty() {
            return Err(Error::InvalidSpec(
                "R and L are both empty; the graph would be a perfect matching".into(),
            ));
        }
        let spokes = BTreeSet::from([group.identity()]);
        Ok(ConnectionSpec {
            group,
            right,
            left,
            spokes,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn right(&self) -> &BTreeSet<GroupElement> {
        &self.right
    }

    pub fn left(&self) -> &BTreeSet<GroupElement> {
        &self.left
    }

    pub fn spokes(&self) -> &BTreeSet<GroupElement> {
        &self.spokes
    }

    pub fn is_one_matching(&self) -> bool {
        self.spokes.len() == 1 && self.spokes.contains(&self.group.identity())
    }

    /// `<R u L> = G`.
    pub fn is_connected(&self) -> bool {
        let gens: Vec<GroupElement> = self.right.union(&self.left).cloned().collect();
        self.group
            .generates(&gens)
            .expect("validated elements")
    }

    /// The spec with the roles of `R` and `L` interchanged.
    pub fn swapped(&self) -> ConnectionSpec {
        ConnectionSpec {
            group: self.group.clone(),
            right: self.left.clone(),
            left: self.right.clone(),
            spokes: self.spokes.clone(),
        }
    }

    /// Vertex index of `(x, side)` under the fixed layout.
    pub fn vertex(&self, x: &GroupElement, side: Side) -> usize {
        let base = match side {
            Side::One => 0,
            Side::Two => self.group.order() as usize,
        };
        base + self.group.index_of(x)
    }

    pub fn label_of(&self, vertex: usize) -> VertexLabel {
        let n = self.group.order() as usize;
        if vertex < n {
            VertexLabel {
                element: self.group.element_at(vertex),
                side: Side::One,
            }
        } else {
            VertexLabel {
                element: self.group.element_at(vertex - n),
                side: Side::Two,
            }
        }
    }
}

impl std::fmt::Display for ConnectionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SC({}; R={{{}}}, L={{{}}}, S={{{}}})",
            self.group.name(),
            crate::abelian::format_element_set(&self.right),
            crate::abelian::format_element_set(&self.left),
            crate::abelian::format_element_set(&self.spokes),
        )
    }
}

/// Build the semi-Cayley graph of a spec: side-1 edges step by `R`, side-2
/// edges step by `L`, and spokes join `(x,1)` to `(x+s,2)` for `s` in `S`.
pub fn semi_cayley_graph(spec: &ConnectionSpec) -> Result<Graph> {
    let group = spec.group();
    let n = group.order() as usize;
    let mut edges = Vec::new();
    for i in 0..n {
        let x = group.element_at(i);
        for r in spec.right() {
            let j = group.index_of(&group.add(&x, r));
            edges.push((i, j));
        }
        for l in spec.left() {
            let j = group.index_of(&group.add(&x, l));
            edges.push((n + i, n + j));
        }
        for s in spec.spokes() {
            let j = group.index_of(&group.add(&x, s));
            edges.push((i, n + j));
        }
    }
    let labels: Vec<VertexLabel> = (0..2 * n).map(|v| spec.label_of(v)).collect();
    Ok(Graph::from_edges(2 * n, edges)?.with_labels(labels))
}

/// Cayley graph of an abelian group with respect to an inverse-closed
/// connection set not containing the identity.
pub fn cayley_graph(group: &AbelianGroup, connection: &BTreeSet<GroupElement>) -> Result<Graph> {
    for s in connection {
        if !group.contains(s) {
            return Err(Error::InvalidSpec(format!(
                "connection set contains {s}, not an element of {}",
                group.name()
            )));
        }
        if *s == group.identity() {
            return Err(Error::InvalidSpec("connection set contains the identity".into()));
        }
        if !connection.contains(&group.neg(s)) {
            return Err(Error::InvalidSpec(format!(
                "connection set is not inverse-closed: misses -{s}"
            )));
        }
    }
    let n = group.order() as usize;
    let mut edges = Vec::new();
    for i in 0..n {
        let x = group.element_at(i);
        for s in connection {
            edges.push((i, group.index_of(&group.add(&x, s))));
        }
    }
    Graph::from_edges(n, edges)
}

/// Generalized Petersen graph `GP(n, k)`: outer n-cycle on `0..n`, inner
/// vertices `n..2n` joined at step `k`, spokes `i -- n+i`. Requires
/// `n >= 3` and `1 <= k < n/2` (so the inner step never degenerates).
pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidSpec(format!(
            "GP({n},{k}): need n >= 3"
        )));
    }
    if k < 1 || 2 * k >= n {
        return Err(Error::InvalidSpec(format!(
            "GP({n},{k}): need 1 <= k < n/2"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + k) % n));
        edges.push((i, n + i));
    }
    Graph::from_edges(2 * n, edges)
}

/// Quotient of the semi-Cayley graph by the spoke matching: one vertex per
/// block `{(g,1),(g,2)}`, adjacent when the difference lies in `R u L`.
/// Requires `R` and `L` disjoint, otherwise a right and a left edge collapse
/// onto one quotient edge and the valency claim `|R|+|L|` fails.
pub fn matching_quotient(spec: &ConnectionSpec) -> Result<Graph> {
    if !spec.is_one_matching() {
        return Err(Error::InvalidSpec(
            "matching quotient requires the one-matching spoke set".into(),
        ));
    }
    let overlap: Vec<_> = spec.right().intersection(spec.left()).collect();
    if !overlap.is_empty() {
        return Err(Error::InvalidSpec(format!(
            "matching quotient requires R and L disjoint; both contain {}",
            overlap[0]
        )));
    }
    let union: BTreeSet<GroupElement> = spec.right().union(spec.left()).cloned().collect();
    cayley_graph(spec.group(), &union)
}

/// Isomorphism test via canonical labelings from the automorphism search.
/// Returns a witness mapping vertices of `a` onto vertices of `b` when the
/// graphs are isomorphic.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<Option<Permutation>> {
    let cap = crate::vertex_cap();
    if a.vertex_count() > cap || b.vertex_count() > cap {
        return Err(Error::ResourceLimit(format!(
            "isomorphism test limited to {cap} vertices"
        )));
    }
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return Ok(None);
    }
    let canon_a = crate::autsearch::canonical_form(a)?;
    let canon_b = crate::autsearch::canonical_form(b)?;
    if canon_a.certificate != canon_b.certificate {
        return Ok(None);
    }
    // canonical labelings send both graphs to the same relabeled graph, so
    // a |-> canon -> b^-1 is an isomorphism
    let witness = canon_a
        .labeling
        .compose(&canon_b.labeling.inverse())
        .expect("equal degrees");
    debug_assert!(a
        .edges()
        .iter()
        .all(|&(u, v)| b.has_edge(witness.apply(u), witness.apply(v))));
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{parse_element_set, parse_group};

    fn spec(group: &str, r: &str, l: &str) -> ConnectionSpec {
        let g = parse_group(group).unwrap();
        let right = parse_element_set(r, &g).unwrap();
        let left = parse_element_set(l, &g).unwrap();
        ConnectionSpec::one_matching(g, right, left).unwrap()
    }

    #[test]
    fn spec_validation() {
        let z4 = parse_group("Z4").unwrap();
        // not inverse-closed
        let r = parse_element_set("(1)", &z4).unwrap();
        assert!(ConnectionSpec::one_matching(z4.clone(), r, BTreeSet::new()).is_err());
        // identity member
        let r = parse_element_set("(0)", &z4).unwrap();
        assert!(ConnectionSpec::one_matching(z4.clone(), r, BTreeSet::new()).is_err());
        // both empty
        assert!(
            ConnectionSpec::one_matching(z4.clone(), BTreeSet::new(), BTreeSet::new()).is_err()
        );
        // fine
        let ok = spec("Z4", "(1),(3)", "(2)");
        assert!(ok.is_one_matching());
        assert!(ok.is_connected());
    }

    #[test]
    fn path_on_four_vertices() {
        let s = spec("Z2", "(1)", "");
        let g = semi_cayley_graph(&s).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        // degrees 1,1,2,2 - a path
        assert_eq!(g.degree_sequence(), vec![1, 1, 2, 2]);
        assert!(g.is_connected());
        assert!(g.girth().is_none());
    }

    #[test]
    fn four_cycle_and_prism() {
        let c4 = semi_cayley_graph(&spec("Z2", "(1)", "(1)")).unwrap();
        assert_eq!(c4.vertex_count(), 4);
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(c4.degree_sequence(), vec![2, 2, 2, 2]);
        assert_eq!(c4.girth(), Some(4));

        // k-prism: R = L = {1, -1} over Z_k
        let prism = semi_cayley_graph(&spec("Z5", "(1),(4)", "(1),(4)")).unwrap();
        assert_eq!(prism.vertex_count(), 10);
        assert_eq!(prism.edge_count(), 15);
        assert!(prism.degree_sequence().iter().all(|&d| d == 3));
        let gp51 = generalized_petersen(5, 1).unwrap();
        assert!(are_isomorphic(&prism, &gp51).unwrap().is_some());
    }

    #[test]
    fn sc_vertex_and_edge_counts() {
        // |V| = 2|G|, |E| = |G| (|R|+|L|)/2 + |G| for one-matching specs
        for (group, r, l) in [
            ("Z6", "(1),(5)", "(3)"),
            ("Z2xZ2", "(1,0),(0,1)", ""),
            ("Z4xZ2", "(1,0),(3,0)", "(0,1),(2,1)"),
        ] {
            let s = spec(group, r, l);
            let g = semi_cayley_graph(&s).unwrap();
            let n = s.group().order() as usize;
            assert_eq!(g.vertex_count(), 2 * n);
            assert_eq!(
                g.edge_count(),
                n * (s.right().len() + s.left().len()) / 2 + n
            );
            // side degrees
            for v in 0..n {
                assert_eq!(g.degree(v), s.right().len() + 1);
                assert_eq!(g.degree(n + v), s.left().len() + 1);
            }
        }
    }

    #[test]
    fn connectivity_matches_generation() {
        assert!(semi_cayley_graph(&spec("Z4", "(1),(3)", ""))
            .unwrap()
            .is_connected());
        let disconnected = spec("Z4", "(2)", "");
        assert!(!disconnected.is_connected());
        assert!(!semi_cayley_graph(&disconnected).unwrap().is_connected());
        assert!(Graph::from_edges(1, Vec::new()).unwrap().is_connected());
    }

    #[test]
    fn cayley_graphs() {
        let z4 = parse_group("Z4").unwrap();
        let c4 = cayley_graph(&z4, &parse_element_set("(1),(3)", &z4).unwrap()).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(c4.girth(), Some(4));

        let klein = parse_group("Z2xZ2").unwrap();
        let c4b = cayley_graph(
            &klein,
            &parse_element_set("(1,0),(0,1)", &klein).unwrap(),
        )
        .unwrap();
        assert!(are_isomorphic(&c4, &c4b).unwrap().is_some());

        let z6 = parse_group("Z6").unwrap();
        let circ = cayley_graph(&z6, &parse_element_set("(1),(5),(3)", &z6).unwrap()).unwrap();
        assert_eq!(circ.edge_count(), 9);

        // invalid connection sets
        assert!(cayley_graph(&z4, &parse_element_set("(1)", &z4).unwrap()).is_err());
        assert!(cayley_graph(&z4, &parse_element_set("(0)", &z4).unwrap()).is_err());
    }

    #[test]
    fn petersen_family() {
        let petersen = generalized_petersen(5, 2).unwrap();
        assert_eq!(petersen.vertex_count(), 10);
        assert!(petersen.degree_sequence().iter().all(|&d| d == 3));
        assert_eq!(petersen.girth(), Some(5));

        let cube = generalized_petersen(4, 1).unwrap();
        let sc_cube = semi_cayley_graph(&spec("Z4", "(1),(3)", "(1),(3)")).unwrap();
        assert!(are_isomorphic(&cube, &sc_cube).unwrap().is_some());

        assert!(generalized_petersen(2, 1).is_err());
        assert!(generalized_petersen(6, 3).is_err());
        assert!(generalized_petersen(6, 0).is_err());
    }

    #[test]
    fn quotient_equals_cayley_on_the_union() {
        let s = spec("Z6", "(1),(5)", "(3)");
        let q = matching_quotient(&s).unwrap();
        let z6 = parse_group("Z6").unwrap();
        let expected =
            cayley_graph(&z6, &parse_element_set("(1),(5),(3)", &z6).unwrap()).unwrap();
        assert_eq!(q.edges(), expected.edges());
        assert_eq!(q.vertex_count(), 6);
        assert!(q.degree_sequence().iter().all(|&d| d == 3));

        let s2 = spec("Z2xZ2", "(1,0)", "(0,1)");
        let q2 = matching_quotient(&s2).unwrap();
        assert_eq!(q2.vertex_count(), 4);
        assert_eq!(q2.girth(), Some(4));

        // overlapping R and L rejected
        let s3 = spec("Z4", "(1),(3)", "(1),(3)");
        assert!(matching_quotient(&s3).is_err());
    }

    #[test]
    fn isomorphism_distinguishes_connectivity() {
        let c6 = cayley_graph(
            &parse_group("Z6").unwrap(),
            &parse_element_set("(1),(5)", &parse_group("Z6").unwrap()).unwrap(),
        )
        .unwrap();
        let two_triangles = Graph::from_edges(
            6,
            vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
        )
        .unwrap();
        assert!(are_isomorphic(&c6, &two_triangles).unwrap().is_none());
    }

    #[test]
    fn swapping_sides_gives_isomorphic_graphs() {
        let s = spec("Z4xZ2", "(1,0),(3,0)", "(0,1),(2,1)");
        let g1 = semi_cayley_graph(&s).unwrap();
        let g2 = semi_cayley_graph(&s.swapped()).unwrap();
        let witness = are_isomorphic(&g1, &g2).unwrap().expect("isomorphic");
        for &(u, v) in g1.edges() {
            assert!(g2.has_edge(witness.apply(u), witness.apply(v)));
        }
    }

    #[test]
    fn exports() {
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.to_edge_list_text(), "p graph 3 2\n0 1\n1 2\n");
        let v = g.to_json();
        assert_eq!(v["vertices"], 3);
        let s = spec("Z2", "(1)", "");
        let sc = semi_cayley_graph(&s).unwrap();
        let v = sc.to_json();
        assert_eq!(v["labels"].as_array().unwrap().len(), 4);
        assert_eq!(v["labels"][0]["side"], 1);
    }
}
