//! Finite abelian groups as explicit direct products of cyclic groups.
//!
//! A group is a list of cyclic factor orders `[n1, ..., nr]` and an element
//! is a coordinate vector with `coords[i]` reduced mod `ni`. Elements are
//! ordered lexicographically by coordinates, which matches their mixed-radix
//! rank; every enumeration in this module follows that order so downstream
//! reports are reproducible byte for byte.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Cap on candidate images per generator layer during automorphism
/// enumeration.
pub const AUT_LAYER_CAP: usize = 10_000;

/// A finite abelian group, stored as the ordered list of cyclic factors it
/// was built from. The stored factor order is preserved (so elements named
/// coordinate-wise keep their meaning); the invariant-factor form is used
/// only for isomorphism comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

/// An element of an [`AbelianGroup`]: one residue per cyclic factor.
///
/// Derived `Ord` is lexicographic on coordinates, which coincides with the
/// element's mixed-radix rank inside its group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A group automorphism, stored as the images of the standard generators
/// (one generator per factor) together with the full index permutation it
/// induces on the element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAutomorphism {
    gen_images: Vec<GroupElement>,
    table: Vec<usize>,
}

impl GroupAutomorphism {
    /// Images of the standard generators, one per stored factor.
    pub fn generator_images(&self) -> &[GroupElement] {
        &self.gen_images
    }

    /// The induced permutation of element ranks.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Apply to an element of `group`.
    pub fn apply(&self, group: &AbelianGroup, x: &GroupElement) -> GroupElement {
        group.element_at(self.table[group.index_of(x)])
    }

    /// Setwise image of a set of elements.
    pub fn apply_set(
        &self,
        group: &AbelianGroup,
        set: &BTreeSet<GroupElement>,
    ) -> BTreeSet<GroupElement> {
        set.iter().map(|x| self.apply(group, x)).collect()
    }
}

impl AbelianGroup {
    /// Build a group from cyclic factor orders. Every factor must be at
    /// least 2; the empty list (the trivial group) is rejected because all
    /// downstream constructions require a nontrivial group.
    pub fn new(factors: &[u64]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup(
                "the trivial group (no factors) is not supported".into(),
            ));
        }
        let mut order: u64 = 1;
        for (i, &f) in factors.iter().enumerate() {
            if f < 2 {
                return Err(Error::InvalidGroup(format!(
                    "factor #{i} is {f}; every cyclic factor must be >= 2"
                )));
            }
            order = order.checked_mul(f).ok_or_else(|| {
                Error::InvalidGroup("group order overflows u64".into())
            })?;
        }
        Ok(AbelianGroup {
            factors: factors.to_vec(),
            order,
        })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Number of stored cyclic factors.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant-factor form `d1 | d2 | ... | dr`, ascending. Two groups are
    /// isomorphic iff these lists coincide.
    pub fn invariant_factors(&self) -> Vec<u64> {
        // Gather prime-power exponents per prime, align the largest
        // exponents into the largest invariant factor.
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &f in &self.factors {
            let mut rest = f;
            let mut p = 2;
            while p * p <= rest {
                if rest % p == 0 {
                    let mut e = 0;
                    while rest % p == 0 {
                        rest /= p;
                        e += 1;
                    }
                    push_exponent(&mut per_prime, p, e);
                }
                p += 1;
            }
            if rest > 1 {
                push_exponent(&mut per_prime, rest, 1);
            }
        }
        let width = per_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
        let mut divisors = vec![1u64; width];
        for (p, mut es) in per_prime {
            es.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, e) in es.into_iter().enumerate() {
                divisors[slot] *= p.pow(e);
            }
        }
        divisors.reverse();
        divisors
    }

    /// The same group re-expressed with invariant factors as the stored
    /// factor list.
    pub fn canonical(&self) -> AbelianGroup {
        let inv = self.invariant_factors();
        AbelianGroup::new(&inv).expect("invariant factors are valid")
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    /// Display name over the stored factors, e.g. `Z4xZ2`.
    pub fn name(&self) -> String {
        self.factors
            .iter()
            .map(|f| format!("Z{f}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    /// Validate a coordinate vector and wrap it as an element.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates for {}, got {}",
                self.factors.len(),
                self.name(),
                coords.len()
            )));
        }
        for (i, (&c, &f)) in coords.iter().zip(&self.factors).enumerate() {
            if c >= f {
                return Err(Error::InvalidElement(format!(
                    "coordinate #{i} is {c} but factor order is {f}"
                )));
            }
        }
        Ok(GroupElement {
            coords: coords.to_vec(),
        })
    }

    /// Element with the given coordinates reduced mod the factor orders.
    pub fn element_mod(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates for {}, got {}",
                self.factors.len(),
                self.name(),
                coords.len()
            )));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &f)| c % f)
                .collect(),
        })
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.factors.len()
            && x.coords.iter().zip(&self.factors).all(|(&c, &f)| c < f)
    }

    /// Mixed-radix rank of an element; elements enumerate in rank order,
    /// which equals lexicographic order on coordinates.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        debug_assert!(self.contains(x));
        let mut idx: u64 = 0;
        for (&c, &f) in x.coords.iter().zip(&self.factors) {
            idx = idx * f + c;
        }
        idx as usize
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        debug_assert!((index as u64) < self.order);
        let mut coords = vec![0u64; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let f = self.factors[i];
            coords[i] = (index as u64) % f;
            index /= f as usize;
        }
        GroupElement { coords }
    }

    /// All elements in rank order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order as usize)
            .map(|i| self.element_at(i))
            .collect()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        debug_assert!(self.contains(a) && self.contains(b));
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((&x, &y), &f)| (x + y) % f)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        debug_assert!(self.contains(a));
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &f)| (f - x) % f)
                .collect(),
        }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `k * a` under additive notation.
    pub fn scalar_mul(&self, k: u64, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &f)| ((x as u128 * (k % f) as u128) % f as u128) as u64)
                .collect(),
        }
    }

    /// Least `k >= 1` with `k * a = 0`.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        debug_assert!(self.contains(a));
        a.coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| f / gcd(f, x))
            .fold(1, lcm)
    }

    pub fn is_involution(&self, a: &GroupElement) -> bool {
        self.element_order(a) == 2
    }

    /// Standard generators: one per stored factor, `e_i = (0,..,1,..,0)`.
    pub fn standard_generators(&self) -> Vec<GroupElement> {
        (0..self.factors.len())
            .map(|i| {
                let mut coords = vec![0u64; self.factors.len()];
                coords[i] = 1;
                GroupElement { coords }
            })
            .collect()
    }

    /// Closure of a generating set: the full element set of `<gens>`.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> Result<BTreeSet<GroupElement>> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::InvalidElement(format!(
                    "{g} does not belong to {}",
                    self.name()
                )));
            }
        }
        let mut seen = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(seen)
    }

    /// Whether `gens` generate the whole group.
    pub fn generates(&self, gens: &[GroupElement]) -> Result<bool> {
        Ok(self.generated_subgroup(gens)?.len() as u64 == self.order)
    }

    /// Enumerate the full automorphism group by backtracking over candidate
    /// images of the standard generators. Candidates for generator `i` are
    /// the elements whose order divides the factor order `ni`; partial maps
    /// are extended over the subgroup spanned so far and pruned as soon as
    /// two elements collide. Output order is lexicographic in the image
    /// tuples, so it is deterministic.
    pub fn automorphisms(&self) -> Result<Vec<GroupAutomorphism>> {
        let n = self.order as usize;
        let elements = self.elements();
        let orders: Vec<u64> = elements.iter().map(|x| self.element_order(x)).collect();

        // Candidate image ranks per generator layer.
        let mut layers: Vec<Vec<usize>> = Vec::with_capacity(self.factors.len());
        for (i, &f) in self.factors.iter().enumerate() {
            let cands: Vec<usize> = (0..n).filter(|&j| f % orders[j] == 0).collect();
            if cands.len() > AUT_LAYER_CAP {
                return Err(Error::ResourceLimit(format!(
                    "automorphism enumeration for {}: generator #{i} has {} candidate images (cap {})",
                    self.name(),
                    cands.len(),
                    AUT_LAYER_CAP
                )));
            }
            layers.push(cands);
        }

        // span[rank] = Some(image rank) for elements of the subgroup
        // generated by the layers assigned so far.
        let mut span: Vec<Option<usize>> = vec![None; n];
        span[0] = Some(0);
        let mut span_members: Vec<usize> = vec![0];
        let mut used: Vec<bool> = vec![false; n];
        used[0] = true;

        let mut images: Vec<usize> = Vec::new();
        let mut out: Vec<GroupAutomorphism> = Vec::new();
        self.extend_automorphism(
            &layers,
            &elements,
            &mut span,
            &mut span_members,
            &mut used,
            &mut images,
            &mut out,
        );
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_automorphism(
        &self,
        layers: &[Vec<usize>],
        elements: &[GroupElement],
        span: &mut Vec<Option<usize>>,
        span_members: &mut Vec<usize>,
        used: &mut Vec<bool>,
        images: &mut Vec<usize>,
        out: &mut Vec<GroupAutomorphism>,
    ) {
        let layer = images.len();
        if layer == self.factors.len() {
            // span covers the whole group and is injective, so this is a
            // bijective endomorphism.
            debug_assert_eq!(span_members.len() as u64, self.order);
            let table: Vec<usize> = span.iter().map(|v| v.expect("span is total")).collect();
            out.push(GroupAutomorphism {
                gen_images: images
                    .iter()
                    .map(|&r| elements[r].clone())
                    .collect(),
                table,
            });
            return;
        }
        let f = self.factors[layer];
        let gen = {
            let mut coords = vec![0u64; self.factors.len()];
            coords[layer] = 1;
            GroupElement { coords }
        };
        'cand: for &img in &layers[layer] {
            // Extend the partial map over the cosets x + k*e_layer for all
            // current span members x and 1 <= k < f. Coordinates guarantee
            // these are new elements, so only image collisions can occur.
            let mut added: Vec<usize> = Vec::new();
            let mut ok = true;
            'fill: for k in 1..f {
                let delta = self.scalar_mul(k, &gen);
                let delta_img = self.scalar_mul(k, &elements[img]);
                for &x_rank in span_members.iter() {
                    let x = &elements[x_rank];
                    let y = self.add(x, &delta);
                    let y_rank = self.index_of(&y);
                    let y_img = self.add(&elements[span[x_rank].unwrap()], &delta_img);
                    let y_img_rank = self.index_of(&y_img);
                    if used[y_img_rank] {
                        ok = false;
                        break 'fill;
                    }
                    span[y_rank] = Some(y_img_rank);
                    used[y_img_rank] = true;
                    added.push(y_rank);
                }
            }
            if ok {
                let before = span_members.len();
                span_members.extend_from_slice(&added);
                images.push(img);
                self.extend_automorphism(
                    layers,
                    elements,
                    span,
                    span_members,
                    used,
                    images,
                    out,
                );
                images.pop();
                span_members.truncate(before);
            }
            for &r in &added {
                let img_rank = span[r].take().expect("was set");
                used[img_rank] = false;
            }
            if !ok {
                continue 'cand;
            }
        }
    }
}

fn push_exponent(per_prime: &mut Vec<(u64, Vec<u32>)>, p: u64, e: u32) {
    match per_prime.iter_mut().find(|(q, _)| *q == p) {
        Some((_, es)) => es.push(e),
        None => {
            per_prime.push((p, vec![e]));
            per_prime.sort_unstable_by_key(|(q, _)| *q);
        }
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// One representative per isomorphism class of abelian groups of order `n`,
/// presented in invariant-factor form, ordered by factor list.
pub fn enumerate_abelian_groups(n: u64) -> Vec<AbelianGroup> {
    assert!(n >= 1, "order must be positive");
    if n == 1 {
        return Vec::new();
    }
    // Factor n, then combine one exponent partition per prime.
    let mut rest = n;
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 1;
    }
    if rest > 1 {
        primes.push((rest, 1));
    }

    let mut shapes: Vec<Vec<(u64, Vec<u32>)>> = vec![Vec::new()];
    for (p, e) in primes {
        let parts = partitions(e);
        let mut next = Vec::new();
        for shape in &shapes {
            for part in &parts {
                let mut s = shape.clone();
                s.push((p, part.clone()));
                next.push(s);
            }
        }
        shapes = next;
    }

    let mut groups: Vec<AbelianGroup> = shapes
        .into_iter()
        .map(|shape| {
            let factors: Vec<u64> = shape
                .iter()
                .flat_map(|(p, part)| part.iter().map(move |&e| p.pow(e)))
                .collect();
            AbelianGroup::new(&factors)
                .expect("prime powers are valid factors")
                .canonical()
        })
        .collect();
    groups.sort_by(|a, b| a.factors.cmp(&b.factors));
    groups
}

/// Integer partitions of `k`, each in descending part order.
pub fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = remaining.min(max_part);
        for part in (1..=top).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Text grammar: groups are `Z<n>` products joined by `x` (e.g. `Z10xZ2`),
// elements are `(c1,c2,...)`, sets are comma-joined element literals.
// ---------------------------------------------------------------------------

/// Parse a group spec such as `Z4` or `Z10xZ2`.
pub fn parse_group(input: &str) -> Result<AbelianGroup> {
    let s = input.trim();
    let base = input.len() - input.trim_start().len();
    if s.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty group spec; expected e.g. Z4 or Z10xZ2".into(),
        });
    }
    let mut factors = Vec::new();
    let mut pos = 0;
    let bytes = s.as_bytes();
    loop {
        if pos >= s.len() || bytes[pos] != b'Z' {
            return Err(Error::Parse {
                position: base + pos,
                message: "expected 'Z' introducing a cyclic factor".into(),
            });
        }
        pos += 1;
        let start = pos;
        while pos < s.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse {
                position: base + pos,
                message: "expected a factor order after 'Z'".into(),
            });
        }
        let value: u64 = s[start..pos].parse().map_err(|_| Error::Parse {
            position: base + start,
            message: "factor order does not fit in u64".into(),
        })?;
        if value < 2 {
            return Err(Error::Parse {
                position: base + start,
                message: format!("factor order must be >= 2, got {value}"),
            });
        }
        factors.push(value);
        if pos == s.len() {
            break;
        }
        if bytes[pos] != b'x' {
            return Err(Error::Parse {
                position: base + pos,
                message: "expected 'x' between cyclic factors".into(),
            });
        }
        pos += 1;
    }
    AbelianGroup::new(&factors)
}

/// Parse an element literal `(c1,c2,...)` against `group`.
pub fn parse_element(input: &str, group: &AbelianGroup) -> Result<GroupElement> {
    let s = input.trim();
    let base = input.len() - input.trim_start().len();
    let (elem, consumed) = parse_element_at(s, 0, group).map_err(|e| shift(e, base))?;
    if consumed != s.len() {
        return Err(Error::Parse {
            position: base + consumed,
            message: "trailing input after element literal".into(),
        });
    }
    Ok(elem)
}

/// Parse a comma-separated list of element literals, e.g. `(1,0),(3,0)`.
/// Empty input denotes the empty set.
pub fn parse_element_set(input: &str, group: &AbelianGroup) -> Result<BTreeSet<GroupElement>> {
    let s = input.trim();
    let base = input.len() - input.trim_start().len();
    let mut out = BTreeSet::new();
    if s.is_empty() {
        return Ok(out);
    }
    let mut pos = 0;
    loop {
        let (elem, consumed) = parse_element_at(s, pos, group).map_err(|e| shift(e, base))?;
        out.insert(elem);
        pos = consumed;
        // skip whitespace
        while pos < s.len() && s.as_bytes()[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == s.len() {
            break;
        }
        if s.as_bytes()[pos] != b',' {
            return Err(Error::Parse {
                position: base + pos,
                message: "expected ',' between element literals".into(),
            });
        }
        pos += 1;
        while pos < s.len() && s.as_bytes()[pos].is_ascii_whitespace() {
            pos += 1;
        }
    }
    Ok(out)
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + base,
            message,
        },
        other => other,
    }
}

fn parse_element_at(
    s: &str,
    mut pos: usize,
    group: &AbelianGroup,
) -> Result<(GroupElement, usize)> {
    let bytes = s.as_bytes();
    if pos >= s.len() || bytes[pos] != b'(' {
        return Err(Error::Parse {
            position: pos,
            message: "expected '(' opening an element literal".into(),
        });
    }
    pos += 1;
    let mut coords = Vec::new();
    loop {
        while pos < s.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < s.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse {
                position: pos,
                message: "expected a coordinate".into(),
            });
        }
        let value: u64 = s[start..pos].parse().map_err(|_| Error::Parse {
            position: start,
            message: "coordinate does not fit in u64".into(),
        })?;
        coords.push(value);
        while pos < s.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos < s.len() && bytes[pos] == b',' {
            pos += 1;
            continue;
        }
        if pos < s.len() && bytes[pos] == b')' {
            pos += 1;
            break;
        }
        return Err(Error::Parse {
            position: pos,
            message: "expected ',' or ')' in element literal".into(),
        });
    }
    if coords.len() != group.rank() {
        return Err(Error::Parse {
            position: pos,
            message: format!(
                "element has {} coordinates but {} has {} factors",
                coords.len(),
                group.name(),
                group.rank()
            ),
        });
    }
    match group.element(&coords) {
        Ok(e) => Ok((e, pos)),
        Err(Error::InvalidElement(msg)) => Err(Error::Parse {
            position: pos,
            message: msg,
        }),
        Err(other) => Err(other),
    }
}

/// Render a set of elements as the grammar accepts it: `(1,0),(3,0)`.
pub fn format_element_set(set: &BTreeSet<GroupElement>) -> String {
    set.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(factors: &[u64]) -> AbelianGroup {
        AbelianGroup::new(factors).unwrap()
    }

    #[test]
    fn make_group_canonicalizes_and_validates() {
        let z42 = g(&[4, 2]);
        assert_eq!(z42.order(), 8);
        assert_eq!(z42.invariant_factors(), vec![2, 4]);
        assert_eq!(g(&[2, 2]).order(), 4);
        assert_eq!(g(&[10, 2]).order(), 20);
        assert!(AbelianGroup::new(&[4, 1]).is_err());
        assert!(AbelianGroup::new(&[]).is_err());
    }

    #[test]
    fn canonicalization_is_idempotent_and_order_insensitive() {
        let a = g(&[4, 2]);
        let b = g(&[2, 4]);
        assert_eq!(a.invariant_factors(), b.invariant_factors());
        assert!(a.is_isomorphic(&b));
        let c = a.canonical();
        assert_eq!(c.canonical(), c);
        // Z6 and Z2xZ3 are the same class.
        assert!(g(&[6]).is_isomorphic(&g(&[2, 3])));
        assert!(!g(&[8]).is_isomorphic(&g(&[4, 2])));
    }

    #[test]
    fn element_arithmetic_and_order() {
        let z42 = g(&[4, 2]);
        let a = z42.element(&[1, 0]).unwrap();
        let b = z42.element(&[2, 1]).unwrap();
        assert_eq!(z42.element_order(&a), 4);
        assert_eq!(z42.element_order(&b), 2);
        assert_eq!(z42.element_order(&z42.identity()), 1);
        assert_eq!(z42.add(&a, &b), z42.element(&[3, 1]).unwrap());
        assert_eq!(z42.neg(&a), z42.element(&[3, 0]).unwrap());
        assert_eq!(z42.add(&a, &z42.neg(&a)), z42.identity());
        assert!(z42.element(&[4, 0]).is_err());
        assert!(z42.element(&[0]).is_err());
    }

    #[test]
    fn rank_roundtrip_matches_lex_order() {
        let z = g(&[3, 2, 2]);
        let all = z.elements();
        assert_eq!(all.len(), 12);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted, "rank order is lexicographic");
        for (i, e) in all.iter().enumerate() {
            assert_eq!(z.index_of(e), i);
            assert_eq!(&z.element_at(i), e);
        }
    }

    #[test]
    fn generated_subgroups() {
        let z42 = g(&[4, 2]);
        let two = z42.element(&[2, 0]).unwrap();
        let sub = z42.generated_subgroup(std::slice::from_ref(&two)).unwrap();
        assert_eq!(sub.len(), 2);
        assert!(sub.contains(&z42.identity()));

        let gens = z42.standard_generators();
        assert_eq!(z42.generated_subgroup(&gens).unwrap().len(), 8);

        // intersection of <(1,0)> and <(1,1)> via two closures
        let h1 = z42
            .generated_subgroup(&[z42.element(&[1, 0]).unwrap()])
            .unwrap();
        let h2 = z42
            .generated_subgroup(&[z42.element(&[1, 1]).unwrap()])
            .unwrap();
        let inter: Vec<_> = h1.intersection(&h2).cloned().collect();
        assert_eq!(
            inter,
            vec![z42.identity(), two],
            "cyclic subgroups meet in <(2,0)>"
        );
    }

    #[test]
    fn automorphism_counts_match_independent_enumeration() {
        // Independent oracle: count bijections of the element set that are
        // homomorphisms. This never looks at generator images.
        fn brute_aut_count(group: &AbelianGroup) -> usize {
            let elems = group.elements();
            let n = elems.len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut count = 0;
            permute(&mut perm, 0, &mut |p| {
                if p[0] != 0 {
                    return;
                }
                for i in 0..n {
                    for j in i..n {
                        let s = group.index_of(&group.add(&elems[i], &elems[j]));
                        let t = group.index_of(&group.add(&elems[p[i]], &elems[p[j]]));
                        if p[s] != t {
                            return;
                        }
                    }
                }
                count += 1;
            });
            count
        }
        fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
            if k == p.len() {
                f(p);
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                permute(p, k + 1, f);
                p.swap(k, i);
            }
        }

        let klein = g(&[2, 2]);
        assert_eq!(klein.automorphisms().unwrap().len(), 6);
        assert_eq!(brute_aut_count(&klein), 6);

        let z42 = g(&[4, 2]);
        assert_eq!(z42.automorphisms().unwrap().len(), 8);
        assert_eq!(brute_aut_count(&z42), 8);

        let z5 = g(&[5]);
        assert_eq!(z5.automorphisms().unwrap().len(), 4);
    }

    #[test]
    fn automorphisms_are_bijective_homomorphisms() {
        for factors in [vec![2, 2, 2], vec![4, 2], vec![12], vec![6, 2], vec![9]] {
            let group = g(&factors);
            let elems = group.elements();
            for sigma in group.automorphisms().unwrap() {
                let mut seen = vec![false; elems.len()];
                for x in &elems {
                    let ix = group.index_of(&sigma.apply(&group, x));
                    assert!(!seen[ix]);
                    seen[ix] = true;
                }
                for x in &elems {
                    for y in &elems {
                        let lhs = sigma.apply(&group, &group.add(x, y));
                        let rhs = group.add(&sigma.apply(&group, x), &sigma.apply(&group, y));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_automorphism_counts_are_totients() {
        fn phi(n: u64) -> u64 {
            (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
        }
        for n in 2..=32 {
            let group = g(&[n]);
            assert_eq!(
                group.automorphisms().unwrap().len() as u64,
                phi(n),
                "Aut(Z{n})"
            );
        }
    }

    #[test]
    fn abelian_class_counts_match_partition_products() {
        // Independent oracle: multiplicativity over prime powers with the
        // partition function computed by Euler's recurrence-free counter.
        fn partition_count(k: u32) -> usize {
            fn rec(remaining: u32, max_part: u32) -> usize {
                if remaining == 0 {
                    return 1;
                }
                (1..=remaining.min(max_part))
                    .map(|p| rec(remaining - p, p))
                    .sum()
            }
            rec(k, k)
        }
        for n in 2u64..=48 {
            let mut expected = 1usize;
            let mut rest = n;
            let mut p = 2u64;
            while p * p <= rest {
                if rest % p == 0 {
                    let mut e = 0;
                    while rest % p == 0 {
                        rest /= p;
                        e += 1;
                    }
                    expected *= partition_count(e);
                }
                p += 1;
            }
            if rest > 1 {
                expected *= partition_count(1);
            }
            assert_eq!(enumerate_abelian_groups(n).len(), expected, "order {n}");
        }
        assert_eq!(enumerate_abelian_groups(8).len(), 3);
        assert_eq!(enumerate_abelian_groups(6).len(), 1);
        assert_eq!(enumerate_abelian_groups(16).len(), 5);
    }

    #[test]
    fn group_grammar_round_trips() {
        let group = parse_group("Z10xZ2").unwrap();
        assert_eq!(group.factors(), &[10, 2]);
        assert_eq!(group.name(), "Z10xZ2");
        assert_eq!(parse_group(" Z4 ").unwrap().factors(), &[4]);

        let e = parse_element("(3,1)", &group).unwrap();
        assert_eq!(e.coords(), &[3, 1]);
        let set = parse_element_set("(1,0),(9,0)", &group).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(format_element_set(&set), "(1,0),(9,0)");
        assert!(parse_element_set("", &group).unwrap().is_empty());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_group("Q4") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_group("Z4xZ1") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_group("Z4yZ2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        let z4 = parse_group("Z4").unwrap();
        match parse_element("(4)", &z4) {
            Err(Error::Parse { .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_element_set("(1);(3)", &z4) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
