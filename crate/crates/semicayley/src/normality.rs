//! Normality analysis of one-matching semi-Cayley graphs.
//!
//! The translated copy of the base group acts on the graph by
//! `(x, i) -> (x + g, i)`. The graph is *normal* when that copy is a normal
//! subgroup of the full automorphism group. Group automorphisms of the base
//! group lift to graph automorphisms in two ways: side-preserving lifts
//! (requiring `R` and `L` to be fixed setwise) and side-swapping lifts
//! (requiring them to be exchanged). The translated copy together with the
//! lifts is exactly the normalizer of the translation group, which gives an
//! order identity every verdict here is cross-checked against.
//!
//! Eight syntactic families of connection sets force non-normality; the
//! classifier recognizes them by searching over generator choices in the
//! group, so it is independent of how the input happens to be presented.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::abelian::{AbelianGroup, GroupAutomorphism, GroupElement};
use crate::autsearch::{
    automorphism_group_with_cap, is_arc_transitive, is_edge_transitive, is_vertex_transitive,
};
use crate::graph::{semi_cayley_graph, ConnectionSpec, Graph};
use crate::perm::{is_normal_subgroup, PermGroup, Permutation};
use crate::{Error, Result};

/// `(n, k)` pairs for which the circulant-pair family (case 6) is
/// exceptional.
pub const EXCEPTIONAL_GP_PAIRS: [(u64, u64); 6] =
    [(5, 2), (8, 3), (10, 2), (10, 3), (12, 5), (24, 5)];

/// Translation permutation `(x, i) -> (x + g, i)` on the fixed vertex
/// layout.
pub fn translation(group: &AbelianGroup, g: &GroupElement) -> Permutation {
    let n = group.order() as usize;
    let mut images = vec![0usize; 2 * n];
    for i in 0..n {
        let x = group.element_at(i);
        let j = group.index_of(&group.add(&x, g));
        images[i] = j;
        images[n + i] = n + j;
    }
    Permutation::from_images(images).expect("translations are bijections")
}

/// The translated copy of the base group inside the symmetric group on the
/// vertices: semiregular, with the two sides as its orbits.
pub fn translation_group(spec: &ConnectionSpec) -> PermGroup {
    let group = spec.group();
    let gens: Vec<Permutation> = group
        .standard_generators()
        .iter()
        .map(|g| translation(group, g))
        .collect();
    PermGroup::new(2 * group.order() as usize, gens).expect("uniform degree")
}

/// Side-preserving lift `(x, i) -> (sigma(x), i)`.
pub fn lift_side_preserving(group: &AbelianGroup, sigma: &GroupAutomorphism) -> Permutation {
    let n = group.order() as usize;
    let mut images = vec![0usize; 2 * n];
    for i in 0..n {
        let j = sigma.table()[i];
        images[i] = j;
        images[n + i] = n + j;
    }
    Permutation::from_images(images).expect("lifts of bijections are bijections")
}

/// Side-swapping lift `(x, 1) -> (sigma(x), 2)`, `(x, 2) -> (sigma(x), 1)`.
pub fn lift_side_swapping(group: &AbelianGroup, sigma: &GroupAutomorphism) -> Permutation {
    let n = group.order() as usize;
    let mut images = vec![0usize; 2 * n];
    for i in 0..n {
        let j = sigma.table()[i];
        images[i] = n + j;
        images[n + i] = j;
    }
    Permutation::from_images(images).expect("lifts of bijections are bijections")
}

/// Side-preserving lifts of the group automorphisms fixing `R` and `L`
/// setwise. Every returned permutation is checked to preserve the graph's
/// edges.
pub fn side_preserving_lifts(
    spec: &ConnectionSpec,
    auts: &[GroupAutomorphism],
    graph: &Graph,
) -> Vec<Permutation> {
    let group = spec.group();
    auts.iter()
        .filter(|sigma| {
            sigma.apply_set(group, spec.right()) == *spec.right()
                && sigma.apply_set(group, spec.left()) == *spec.left()
        })
        .map(|sigma| {
            let lift = lift_side_preserving(group, sigma);
            assert!(
                graph.is_automorphism(&lift),
                "side-preserving lift must preserve edges"
            );
            lift
        })
        .collect()
}

/// Side-swapping lifts of the group automorphisms exchanging `R` and `L`.
pub fn side_swapping_lifts(
    spec: &ConnectionSpec,
    auts: &[GroupAutomorphism],
    graph: &Graph,
) -> Vec<Permutation> {
    let group = spec.group();
    auts.iter()
        .filter(|sigma| {
            sigma.apply_set(group, spec.right()) == *spec.left()
                && sigma.apply_set(group, spec.left()) == *spec.right()
        })
        .map(|sigma| {
            let lift = lift_side_swapping(group, sigma);
            assert!(
                graph.is_automorphism(&lift),
                "side-swapping lift must preserve edges"
            );
            lift
        })
        .collect()
}

/// The group generated by all lifts. The lift set is already closed, so the
/// generated group has exactly `|X| + |Y|` elements; that closure is
/// asserted.
pub fn lifted_automorphism_group(
    spec: &ConnectionSpec,
    auts: &[GroupAutomorphism],
) -> Result<PermGroup> {
    let graph = semi_cayley_graph(spec)?;
    let x = side_preserving_lifts(spec, auts, &graph);
    let y = side_swapping_lifts(spec, auts, &graph);
    let expected = x.len() + y.len();
    let group = PermGroup::new(
        2 * spec.group().order() as usize,
        x.into_iter().chain(y).collect(),
    )?;
    assert_eq!(
        group.order(),
        BigUint::from(expected),
        "lift set must be closed under composition"
    );
    Ok(group)
}

/// Whether a bijection of the group (given as a rank table) moves every
/// `a`-step and `b`-step to a step by the same element or its inverse:
/// `sigma(x + s)` must lie in `{sigma(x) + s, sigma(x) - s}` for `s` in
/// `{a, b}` and every `x`.
pub fn is_color_preserving(
    group: &AbelianGroup,
    a: &GroupElement,
    b: &GroupElement,
    sigma: &[usize],
) -> bool {
    let n = group.order() as usize;
    assert_eq!(sigma.len(), n, "sigma must be a bijection table of the group");
    for s in [a, b] {
        let neg = group.neg(s);
        for i in 0..n {
            let x = group.element_at(i);
            let moved = sigma[group.index_of(&group.add(&x, s))];
            let fwd = group.index_of(&group.add(&group.element_at(sigma[i]), s));
            let bwd = group.index_of(&group.add(&group.element_at(sigma[i]), &neg));
            if moved != fwd && moved != bwd {
                return false;
            }
        }
    }
    true
}

/// One matched exceptional family, with the generator substitution that
/// witnesses it. `swapped` records whether the roles of `R` and `L` were
/// interchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseWitness {
    pub case: u8,
    pub swapped: bool,
    pub witness: String,
}

/// Classify a connected one-matching spec against the eight exceptional
/// families, trying both `(R, L)` and `(L, R)`. Returns every matching
/// family (lowest case first), with one witness each.
pub fn classify_exceptional(spec: &ConnectionSpec) -> Result<Vec<CaseWitness>> {
    if !spec.is_one_matching() {
        return Err(Error::InvalidSpec(
            "classification requires a one-matching spec".into(),
        ));
    }
    if spec.right().len() > 2 || spec.left().len() > 2 {
        return Err(Error::InvalidSpec(
            "classification requires |R| <= 2 and |L| <= 2".into(),
        ));
    }
    if !spec.is_connected() {
        return Err(Error::InvalidSpec(
            "classification requires a connected spec".into(),
        ));
    }
    let mut found: Vec<CaseWitness> = Vec::new();
    for (swapped, r, l) in [
        (false, spec.right(), spec.left()),
        (true, spec.left(), spec.right()),
    ] {
        for witness in match_oriented(spec.group(), r, l, swapped) {
            if !found.iter().any(|w| w.case == witness.case) {
                found.push(witness);
            }
        }
    }
    found.sort_by_key(|w| w.case);
    Ok(found)
}

/// Match one orientation of the connection sets against all eight families.
fn match_oriented(
    group: &AbelianGroup,
    r: &BTreeSet<GroupElement>,
    l: &BTreeSet<GroupElement>,
    swapped: bool,
) -> Vec<CaseWitness> {
    let mut out = Vec::new();
    let order = group.order();
    let mk = |case: u8, witness: String| CaseWitness {
        case,
        swapped,
        witness,
    };

    // (1) two singletons
    if r.len() == 1 && l.len() == 1 {
        let a = r.first().unwrap();
        let b = l.first().unwrap();
        out.push(mk(1, format!("a={a}, b={b}")));
    }

    // (2) two pairs sharing exactly one element
    if r.len() == 2 && l.len() == 2 && r.intersection(l).count() == 1 {
        let shared = r.intersection(l).next().unwrap();
        out.push(mk(2, format!("shared involution {shared}")));
    }

    // (3) equal inverse pairs of an order-4 element
    if r.len() == 2 && r == l {
        if let Some(a) = r
            .iter()
            .find(|a| group.element_order(a) == 4 && *r == inverse_pair(group, a))
        {
            out.push(mk(3, format!("a={a}")));
        }
    }

    // (4) two involutions against an order-4 inverse pair, the three cyclic
    // parts spanning a group of order 16 directly
    if order == 16 && r.len() == 2 && l.len() == 2 {
        let rv: Vec<&GroupElement> = r.iter().collect();
        let (a, b) = (rv[0], rv[1]);
        if group.element_order(a) == 2 && group.element_order(b) == 2 {
            if let Some(c) = l.iter().find(|c| {
                group.element_order(c) == 4
                    && *l == inverse_pair(group, c)
                    && spans_directly(group, &[a, b, c])
            }) {
                out.push(mk(4, format!("a={a}, b={b}, c={c}")));
            }
        }
    }

    // (5) order-4 inverse pair against a coset pair {b, b+2a}
    if order == 8 && r.len() == 2 && l.len() == 2 {
        for a in r.iter() {
            if group.element_order(a) != 4 || *r != inverse_pair(group, a) {
                continue;
            }
            let two_a = group.scalar_mul(2, a);
            if let Some(b) = l.iter().find(|b| {
                group.element_order(b) == 2
                    && *l == BTreeSet::from([(*b).clone(), group.add(b, &two_a)])
                    && spans_directly(group, &[a, b])
            }) {
                out.push(mk(5, format!("a={a}, b={b}")));
                break;
            }
        }
    }

    // (6) cyclic group, R steps by a generator, L by its k-th multiple for
    // one of the exceptional (n, k) pairs
    if r.len() == 2 && l.len() == 2 {
        'outer: for i in 0..order as usize {
            let a = group.element_at(i);
            if group.element_order(&a) != order || *r != inverse_pair(group, &a) {
                continue;
            }
            for &(n, k) in &EXCEPTIONAL_GP_PAIRS {
                if n != order {
                    continue;
                }
                let ka = group.scalar_mul(k, &a);
                if *l == inverse_pair(group, &ka) {
                    out.push(mk(6, format!("a={a}, (n,k)=({n},{k})")));
                    break 'outer;
                }
            }
        }
    }

    // (7) order 20: R steps by an order-10 generator a, L by 3a+b or 2a+b
    // for an independent involution b
    if order == 20 && r.len() == 2 && l.len() == 2 {
        'outer7: for i in 0..order as usize {
            let a = group.element_at(i);
            if group.element_order(&a) != 10 || *r != inverse_pair(group, &a) {
                continue;
            }
            for j in 0..order as usize {
                let b = group.element_at(j);
                if group.element_order(&b) != 2 || !spans_directly(group, &[&a, &b]) {
                    continue;
                }
                for m in [3u64, 2u64] {
                    let base = group.add(&group.scalar_mul(m, &a), &b);
                    let other = group.add(&group.scalar_mul(order - m, &a), &b);
                    if *l == BTreeSet::from([base.clone(), other]) {
                        out.push(mk(7, format!("a={a}, b={b}, L steps {m}a+b")));
                        break 'outer7;
                    }
                }
            }
        }
    }

    // (8) order 8: R steps by an order-4 element a, L by {a+b, -a+b}
    if order == 8 && r.len() == 2 && l.len() == 2 {
        'outer8: for i in 0..order as usize {
            let a = group.element_at(i);
            if group.element_order(&a) != 4 || *r != inverse_pair(group, &a) {
                continue;
            }
            for j in 0..order as usize {
                let b = group.element_at(j);
                if group.element_order(&b) != 2 || !spans_directly(group, &[&a, &b]) {
                    continue;
                }
                let p = group.add(&a, &b);
                let q = group.add(&group.neg(&a), &b);
                if *l == BTreeSet::from([p, q]) {
                    out.push(mk(8, format!("a={a}, b={b}")));
                    break 'outer8;
                }
            }
        }
    }

    out
}

fn inverse_pair(group: &AbelianGroup, a: &GroupElement) -> BTreeSet<GroupElement> {
    BTreeSet::from([a.clone(), group.neg(a)])
}

/// Whether the listed elements generate the group as a direct product of
/// the cyclic subgroups they span: the whole group is generated and the
/// orders multiply up to the group order.
fn spans_directly(group: &AbelianGroup, gens: &[&GroupElement]) -> bool {
    let product: u64 = gens.iter().map(|g| group.element_order(g)).product();
    if product != group.order() {
        return false;
    }
    let owned: Vec<GroupElement> = gens.iter().map(|g| (*g).clone()).collect();
    group.generates(&owned).unwrap_or(false)
}

/// Per-instance verdict: the normality decision, transitivity flags, the
/// automorphism group order, the lift counts, and any matched exceptional
/// families. `case` and `normal` are computed independently; comparing them
/// is the sweep's whole point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub normal: bool,
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    pub aut_order: BigUint,
    pub x_size: usize,
    pub y_size: usize,
    pub case: Option<u8>,
    pub witnesses: Vec<CaseWitness>,
}

/// Everything computed for one instance; kept so tests and reports can
/// reuse the heavy objects instead of recomputing them.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub spec: ConnectionSpec,
    pub graph: Graph,
    pub aut: PermGroup,
    pub translations: PermGroup,
    pub side_preserving: Vec<Permutation>,
    pub side_swapping: Vec<Permutation>,
    pub verdict: Verdict,
}

/// Decide normality of a connected spec: the translation copy against the
/// full automorphism group, cross-checked against the normalizer order
/// identity.
pub fn is_normal_spec(spec: &ConnectionSpec) -> Result<bool> {
    let auts = spec.group().automorphisms()?;
    Ok(evaluate_with(spec, &auts, crate::vertex_cap())?.verdict.normal)
}

/// Evaluate a spec, enumerating the base group's automorphisms on the fly.
pub fn evaluate(spec: &ConnectionSpec) -> Result<Evaluation> {
    let auts = spec.group().automorphisms()?;
    evaluate_with(spec, &auts, crate::vertex_cap())
}

/// Evaluate a spec with a precomputed automorphism list for the base group
/// (shared across a sweep) and an explicit vertex cap.
pub fn evaluate_with(
    spec: &ConnectionSpec,
    auts: &[GroupAutomorphism],
    cap: usize,
) -> Result<Evaluation> {
    if !spec.is_connected() {
        return Err(Error::InvalidSpec(format!(
            "{spec} is disconnected; normality analysis covers connected specs only"
        )));
    }
    let graph = semi_cayley_graph(spec)?;
    let aut = automorphism_group_with_cap(&graph, cap)?;
    let translations = translation_group(spec);
    let normal = is_normal_subgroup(&translations, &aut)?;

    let x = side_preserving_lifts(spec, auts, &graph);
    let y = side_swapping_lifts(spec, auts, &graph);

    // Normalizer order identity: the translation copy is normal exactly
    // when the normalizer (translations extended by the lifts) is the whole
    // automorphism group.
    let normalizer_order = BigUint::from(spec.group().order()) * BigUint::from(x.len() + y.len());
    assert_eq!(
        normal,
        aut.order() == normalizer_order,
        "normality must agree with the normalizer order identity on {spec}"
    );

    let vertex_transitive = is_vertex_transitive(&graph, &aut);
    let edge_transitive = is_edge_transitive(&graph, &aut);
    let arc_transitive = is_arc_transitive(&graph, &aut);
    let witnesses = classify_exceptional(spec)?;
    let verdict = Verdict {
        normal,
        vertex_transitive,
        edge_transitive,
        arc_transitive,
        aut_order: aut.order(),
        x_size: x.len(),
        y_size: y.len(),
        case: witnesses.first().map(|w| w.case),
        witnesses,
    };
    Ok(Evaluation {
        spec: spec.clone(),
        graph,
        aut,
        translations,
        side_preserving: x,
        side_swapping: y,
        verdict,
    })
}

/// Structural identities that must hold for every connected instance.
/// Returns human-readable descriptions of any violations (the sweep and the
/// acceptance suite expect none).
pub fn structural_violations(eval: &Evaluation) -> Vec<String> {
    let mut violations = Vec::new();
    let spec = &eval.spec;
    let group = spec.group();
    let graph = &eval.graph;

    // every translation, not just the generators, preserves edges
    for i in 0..group.order() as usize {
        let rho = translation(group, &group.element_at(i));
        if !graph.is_automorphism(&rho) {
            violations.push(format!("{spec}: translation by element #{i} breaks an edge"));
        }
    }

    // translations: semiregular, two side orbits, order |G|
    if !eval.translations.is_semiregular() {
        violations.push(format!("{spec}: translation copy is not semiregular"));
    }
    if eval.translations.orbits().len() != 2 {
        violations.push(format!("{spec}: translation copy does not have two orbits"));
    }
    if eval.translations.order() != BigUint::from(group.order()) {
        violations.push(format!("{spec}: translation copy order differs from |G|"));
    }

    // lifts are graph automorphisms
    for lift in eval.side_preserving.iter().chain(&eval.side_swapping) {
        match eval.aut.contains(lift) {
            Ok(true) => {}
            _ => violations.push(format!("{spec}: a lift is outside the automorphism group")),
        }
    }

    // a side-swapping lift forces vertex-transitivity
    if !eval.side_swapping.is_empty() && !eval.verdict.vertex_transitive {
        violations.push(format!(
            "{spec}: side-swapping lifts exist but the graph is intransitive"
        ));
    }

    // normal implies the stabilizer of vertex (identity, side 1) is exactly
    // the side-preserving lift set
    if eval.verdict.normal {
        match eval.aut.point_stabilizer(0) {
            Ok(stab) => {
                if stab.order() != BigUint::from(eval.side_preserving.len()) {
                    violations.push(format!(
                        "{spec}: normal but |stab(0)| = {} != |X| = {}",
                        stab.order(),
                        eval.side_preserving.len()
                    ));
                } else {
                    for lift in &eval.side_preserving {
                        if !stab.contains(lift).unwrap_or(false) {
                            violations.push(format!(
                                "{spec}: normal but a side-preserving lift misses stab(0)"
                            ));
                        }
                    }
                }
            }
            Err(e) => violations.push(format!("{spec}: stabilizer computation failed: {e}")),
        }
    }

    // arc-transitive implies edge-transitive
    if eval.verdict.arc_transitive && !eval.verdict.edge_transitive {
        violations.push(format!("{spec}: arc-transitive but not edge-transitive"));
    }

    // edge-transitive forces non-normal: an edge orbit mixing spokes with
    // side edges is incompatible with preserving the side orbits
    if eval.verdict.edge_transitive && eval.verdict.normal {
        violations.push(format!("{spec}: edge-transitive yet normal"));
    }

    // exceptional families are always transitive
    if eval.verdict.case.is_some() && !eval.verdict.vertex_transitive {
        violations.push(format!("{spec}: matches a case but is intransitive"));
    }

    // full normalizer enumeration cross-check on small groups
    if eval.aut.order() <= BigUint::from(2000u32) {
        let translations = &eval.translations;
        let normalizer: Vec<Permutation> = eval
            .aut
            .elements()
            .into_iter()
            .filter(|alpha| {
                translations.generators().iter().all(|rho| {
                    rho.conjugate_by(alpha)
                        .ok()
                        .map(|c| translations.contains(&c).unwrap_or(false))
                        .unwrap_or(false)
                })
            })
            .collect();
        let expected = group.order() as usize
            * (eval.side_preserving.len() + eval.side_swapping.len());
        if normalizer.len() != expected {
            violations.push(format!(
                "{spec}: normalizer has {} elements, expected |G|*|X u Y| = {}",
                normalizer.len(),
                expected
            ));
        }
        // stabilizer of vertex 0 inside the normalizer = side-preserving set
        let stab_in_normalizer: BTreeSet<&Permutation> = normalizer
            .iter()
            .filter(|p| p.apply(0) == 0)
            .collect();
        let x_set: BTreeSet<&Permutation> = eval.side_preserving.iter().collect();
        if stab_in_normalizer != x_set {
            violations.push(format!(
                "{spec}: normalizer stabilizer of vertex 0 differs from the lift set"
            ));
        }
    }

    violations
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
    fn translation_copy_is_semiregular_with_two_orbits() {
        let s = spec("Z3", "(1),(2)", "(1),(2)");
        let rg = translation_group(&s);
        assert_eq!(rg.order(), BigUint::from(3u32));
        assert!(rg.is_semiregular());
        assert_eq!(rg.orbits(), vec![vec![0, 1, 2], vec![3, 4, 5]]);

        let graph = semi_cayley_graph(&s).unwrap();
        let group = s.group();
        for i in 0..group.order() as usize {
            let rho = translation(group, &group.element_at(i));
            assert!(graph.is_automorphism(&rho));
        }
    }

    #[test]
    fn lifts_of_the_prism() {
        // R = L = {1, -1} over Z5: the identity and the inversion both fix
        // R and L, and both also exchange them since R equals L.
        let s = spec("Z5", "(1),(4)", "(1),(4)");
        let auts = s.group().automorphisms().unwrap();
        let graph = semi_cayley_graph(&s).unwrap();
        let x = side_preserving_lifts(&s, &auts, &graph);
        let y = side_swapping_lifts(&s, &auts, &graph);
        assert_eq!(x.len(), 2);
        assert_eq!(y.len(), 2);
        let lifted = lifted_automorphism_group(&s, &auts).unwrap();
        assert_eq!(lifted.order(), BigUint::from(4u32));
    }

    #[test]
    fn swapping_lifts_require_matching_order_multisets() {
        // R consists of involutions, L of order-4 elements: nothing can
        // exchange them.
        let s = spec("Z2xZ2xZ4", "(1,0,0),(0,1,0)", "(0,0,1),(0,0,3)");
        let auts = s.group().automorphisms().unwrap();
        let graph = semi_cayley_graph(&s).unwrap();
        assert!(side_swapping_lifts(&s, &auts, &graph).is_empty());
        // the identity always contributes a side-preserving lift
        assert!(!side_preserving_lifts(&s, &auts, &graph).is_empty());
    }

    #[test]
    fn normality_of_small_instances() {
        assert!(!is_normal_spec(&spec("Z4", "(1),(3)", "(1),(3)")).unwrap());
        assert!(is_normal_spec(&spec("Z5", "(1),(4)", "(1),(4)")).unwrap());
        assert!(is_normal_spec(&spec("Z6", "(1),(5)", "(3)")).unwrap());
        // disconnected specs are rejected
        assert!(is_normal_spec(&spec("Z4", "(2)", "(2)")).is_err());
    }

    #[test]
    fn classifier_on_named_instances() {
        let case = |s: &ConnectionSpec| classify_exceptional(s).unwrap().first().map(|w| w.case);
        // two singletons
        assert_eq!(case(&spec("Z2", "(1)", "(1)")), Some(1));
        assert_eq!(case(&spec("Z2xZ2", "(1,0)", "(0,1)")), Some(1));
        // shared involution
        assert_eq!(
            case(&spec("Z2xZ2xZ2", "(1,0,0),(0,1,0)", "(0,1,0),(0,0,1)")),
            Some(2)
        );
        assert_eq!(case(&spec("Z2xZ2", "(1,0),(0,1)", "(0,1),(1,1)")), Some(2));
        // order-4 inverse pair twice
        assert_eq!(case(&spec("Z4", "(1),(3)", "(1),(3)")), Some(3));
        // order-16 family
        assert_eq!(
            case(&spec("Z2xZ2xZ4", "(1,0,0),(0,1,0)", "(0,0,1),(0,0,3)")),
            Some(4)
        );
        // coset pair over Z4xZ2
        assert_eq!(case(&spec("Z4xZ2", "(1,0),(3,0)", "(0,1),(2,1)")), Some(5));
        // exceptional circulant pairs
        assert_eq!(case(&spec("Z5", "(1),(4)", "(2),(3)")), Some(6));
        assert_eq!(case(&spec("Z8", "(1),(7)", "(3),(5)")), Some(6));
        // and one that is not in the list
        assert_eq!(case(&spec("Z6", "(1),(5)", "(2),(4)")), None);
        // order-20 families
        assert_eq!(case(&spec("Z10xZ2", "(1,0),(9,0)", "(3,1),(7,1)")), Some(7));
        assert_eq!(case(&spec("Z10xZ2", "(1,0),(9,0)", "(2,1),(8,1)")), Some(7));
        // order-8 twisted pair
        assert_eq!(case(&spec("Z4xZ2", "(1,0),(3,0)", "(1,1),(3,1)")), Some(8));
        // swapped orientation is detected
        let swapped = spec("Z4xZ2", "(0,1),(2,1)", "(1,0),(3,0)");
        let found = classify_exceptional(&swapped).unwrap();
        assert_eq!(found.first().map(|w| (w.case, w.swapped)), Some((5, true)));
        // normal prism matches nothing
        assert!(classify_exceptional(&spec("Z5", "(1),(4)", "(1),(4)"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn classifier_is_presentation_independent() {
        // same instance written with a non-standard generator: 3 generates
        // Z8, {3,5} = {a,-a} and {1,7} = {3a,-3a}
        assert_eq!(
            classify_exceptional(&spec("Z8", "(3),(5)", "(1),(7)"))
                .unwrap()
                .first()
                .map(|w| w.case),
            Some(6)
        );
    }

    #[test]
    fn color_preserving_maps() {
        let group = parse_group("Z4xZ2").unwrap();
        let a = group.element(&[1, 0]).unwrap();
        let b = group.element(&[1, 1]).unwrap();
        let n = group.order() as usize;

        // translations are color-preserving
        let shift = group.element(&[2, 1]).unwrap();
        let t: Vec<usize> = (0..n)
            .map(|i| group.index_of(&group.add(&group.element_at(i), &shift)))
            .collect();
        assert!(is_color_preserving(&group, &a, &b, &t));

        // inversion is color-preserving
        let inv: Vec<usize> = (0..n)
            .map(|i| group.index_of(&group.neg(&group.element_at(i))))
            .collect();
        assert!(is_color_preserving(&group, &a, &b, &inv));

        // something arbitrary is not
        let mut bad: Vec<usize> = (0..n).collect();
        bad.swap(1, 2);
        assert!(!is_color_preserving(&group, &a, &b, &bad));
    }

    #[test]
    fn color_preserving_non_automorphism_exists_on_z4xz2() {
        // exhaustive search over bijections fixing the identity: there is a
        // color-preserving map that is not a group automorphism
        let group = parse_group("Z4xZ2").unwrap();
        let a = group.element(&[1, 0]).unwrap();
        let b = group.element(&[1, 1]).unwrap();
        let n = group.order() as usize;
        let is_homomorphism = |sigma: &[usize]| {
            for i in 0..n {
                for j in 0..n {
                    let sum = group.add(&group.element_at(i), &group.element_at(j));
                    let mapped =
                        group.add(&group.element_at(sigma[i]), &group.element_at(sigma[j]));
                    if sigma[group.index_of(&sum)] != group.index_of(&mapped) {
                        return false;
                    }
                }
            }
            true
        };
        fn rec(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
            if k == perm.len() {
                f(perm);
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                rec(perm, k + 1, f);
                perm.swap(k, i);
            }
        }
        let mut found = false;
        let mut perm: Vec<usize> = (0..n).collect();
        rec(&mut perm, 1, &mut |sigma| {
            if !found && is_color_preserving(&group, &a, &b, sigma) && !is_homomorphism(sigma) {
                found = true;
            }
        });
        assert!(found, "a color-preserving non-automorphism must exist");
    }

    #[test]
    fn evaluation_verdicts_are_consistent() {
        let eval = evaluate(&spec("Z6", "(1),(5)", "(3)")).unwrap();
        assert!(eval.verdict.normal);
        assert_eq!(eval.verdict.aut_order, BigUint::from(12u32));
        assert!(!eval.verdict.vertex_transitive);
        assert_eq!(eval.verdict.case, None);
        assert!(structural_violations(&eval).is_empty());

        let eval = evaluate(&spec("Z4", "(1),(3)", "(1),(3)")).unwrap();
        assert!(!eval.verdict.normal);
        assert!(eval.verdict.arc_transitive);
        assert_eq!(eval.verdict.case, Some(3));
        assert!(structural_violations(&eval).is_empty());
    }
}
