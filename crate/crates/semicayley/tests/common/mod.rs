//! Shared test oracles. Everything here is deliberately independent of the
//! library's search engine: brute-force permutation filters and a plain
//! vertex-by-vertex backtracking matcher.
#![allow(dead_code)] // not every integration test uses every oracle

use semicayley::abelian::{parse_element_set, parse_group};
use semicayley::graph::{semi_cayley_graph, ConnectionSpec, Graph};
use semicayley::perm::Permutation;

/// Parse-and-build helper used all over the integration tests.
pub fn spec(group: &str, r: &str, l: &str) -> ConnectionSpec {
    let g = parse_group(group).unwrap();
    let right = parse_element_set(r, &g).unwrap();
    let left = parse_element_set(l, &g).unwrap();
    ConnectionSpec::one_matching(g, right, left).unwrap()
}

pub fn sc(group: &str, r: &str, l: &str) -> Graph {
    semi_cayley_graph(&spec(group, r, l)).unwrap()
}

/// Count automorphisms by filtering all |V|! permutations. Only sane for
/// |V| <= 8.
pub fn brute_force_aut_count(graph: &Graph) -> u64 {
    let n = graph.vertex_count();
    let mut images: Vec<usize> = (0..n).collect();
    let mut count = 0u64;
    fn rec(graph: &Graph, images: &mut Vec<usize>, k: usize, count: &mut u64) {
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
    rec(graph, &mut images, 0, &mut count);
    count
}

/// Count automorphisms by vertex-by-vertex backtracking with adjacency
/// consistency pruning. A different algorithm from both the brute-force
/// filter and the library's refinement search; usable well past 8 vertices
/// on graphs whose automorphism groups are not astronomically large.
pub fn backtracking_aut_count(graph: &Graph) -> u64 {
    let n = graph.vertex_count();
    let mut mapping: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut count = 0u64;

    fn consistent(graph: &Graph, mapping: &[Option<usize>], v: usize, image: usize) -> bool {
        if graph.degree(v) != graph.degree(image) {
            return false;
        }
        for &w in graph.neighbors(v) {
            if let Some(wi) = mapping[w] {
                if !graph.has_edge(image, wi) {
                    return false;
                }
            }
        }
        // non-adjacency must also be preserved: check mapped non-neighbors
        for (w, wi) in mapping.iter().enumerate() {
            if let Some(wi) = wi {
                let adj = graph.has_edge(v, w);
                if adj != graph.has_edge(image, *wi) {
                    return false;
                }
            }
        }
        true
    }

    fn rec(
        graph: &Graph,
        mapping: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        v: usize,
        count: &mut u64,
    ) {
        let n = graph.vertex_count();
        if v == n {
            *count += 1;
            return;
        }
        for image in 0..n {
            if used[image] || !consistent(graph, mapping, v, image) {
                continue;
            }
            mapping[v] = Some(image);
            used[image] = true;
            rec(graph, mapping, used, v + 1, count);
            mapping[v] = None;
            used[image] = false;
        }
    }

    rec(graph, &mut mapping, &mut used, 0, &mut count);
    count
}

/// Deterministic xorshift for reproducible "random" inputs.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    /// Random graph on `n` vertices with roughly `density_percent` percent
    /// of all possible edges.
    pub fn graph(&mut self, n: usize, density_percent: u64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if self.next() % 100 < density_percent {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }
}
