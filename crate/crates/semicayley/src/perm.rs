//! Permutations on `{0, ..., n-1}` and permutation groups with a
//! deterministic stabilizer chain.
//!
//! The chain is built by full Schreier-generator closure: level `i+1` is
//! generated by all Schreier generators of level `i`, deduplicated and
//! sorted. That keeps every level's generating set exact (membership via
//! sifting is sound and complete) at the cost of fatter generator lists,
//! which is irrelevant at the group sizes this crate handles. Base points
//! are picked deterministically (smallest moved point), so two builds of
//! the same group produce identical chains.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::{Error, Result};

/// A permutation stored as its image array: `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Validate that `images` is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::PointOutOfRange {
                    point: img,
                    degree: n,
                });
            }
            if seen[img] {
                return Err(Error::InvalidElement(format!(
                    "image array is not a bijection: {img} repeats"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint-or-not cycles; points absent from every cycle are
    /// fixed. Mostly a test convenience.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for i in 0..cycle.len() {
                let from = cycle[i];
                let to = cycle[(i + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(Error::PointOutOfRange {
                        point: from.max(to),
                        degree,
                    });
                }
                images[from] = to;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Left-to-right composition: `a.compose(&b)` applies `a` first, then
    /// `b`, matching the exponent convention `x^(ab) = (x^a)^b`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// `other^-1 * self * other` under left-to-right composition.
    pub fn conjugate_by(&self, other: &Permutation) -> Result<Permutation> {
        other.inverse().compose(self)?.compose(other)
    }

    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let n = self.images.len();
        let mut done = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if done[start] || self.images[start] == start {
                done[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !done[p] {
                if !first {
                    out.push(' ');
                }
                out.push_str(&p.to_string());
                done[p] = true;
                first = false;
                p = self.images[p];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

/// One level of the stabilizer chain.
#[derive(Debug, Clone)]
struct Level {
    point: usize,
    /// Generators of this level's group (level 0 = the whole group).
    gens: Vec<Permutation>,
    /// Orbit of `point` under `gens`, ascending.
    orbit: Vec<usize>,
    /// `transversal[p]` maps `point` to `p` for each orbit point `p`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn build(degree: usize, point: usize, gens: Vec<Permutation>) -> Level {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        let mut queue = vec![point];
        let mut head = 0;
        while head < queue.len() {
            let q = queue[head];
            head += 1;
            let rep = transversal[q].clone().expect("queued points have reps");
            for s in &gens {
                let r = s.apply(q);
                if transversal[r].is_none() {
                    transversal[r] = Some(rep.compose(s).expect("equal degrees"));
                    queue.push(r);
                }
            }
        }
        let mut orbit: Vec<usize> = queue;
        orbit.sort_unstable();
        Level {
            point,
            gens,
            orbit,
            transversal,
        }
    }

    /// All Schreier generators of the stabilizer of `point`, deduplicated
    /// and sorted.
    fn schreier_generators(&self) -> Vec<Permutation> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &q in &self.orbit {
            let u = self.transversal[q].as_ref().expect("orbit point");
            for s in &self.gens {
                let target = s.apply(q);
                let v = self.transversal[target].as_ref().expect("orbit is closed");
                let sg = u
                    .compose(s)
                    .and_then(|p| p.compose(&v.inverse()))
                    .expect("equal degrees");
                if !sg.is_identity() {
                    set.insert(sg.images);
                }
            }
        }
        set.into_iter()
            .map(|images| Permutation { images })
            .collect()
    }
}

#[derive(Debug, Clone)]
struct StabChain {
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, generators: &[Permutation], base_hint: &[usize]) -> StabChain {
        let mut cur: Vec<Permutation> = {
            let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
            for g in generators {
                if !g.is_identity() {
                    set.insert(g.images.clone());
                }
            }
            set.into_iter()
                .map(|images| Permutation { images })
                .collect()
        };
        let mut levels = Vec::new();
        let mut hints = base_hint.iter().copied();
        while !cur.is_empty() {
            let point = hints.next().unwrap_or_else(|| {
                (0..degree)
                    .find(|&p| cur.iter().any(|g| g.apply(p) != p))
                    .expect("nontrivial generators move some point")
            });
            let level = Level::build(degree, point, cur);
            cur = level.schreier_generators();
            levels.push(level);
        }
        StabChain { levels }
    }

    fn order(&self) -> BigUint {
        let mut order = BigUint::from(1u32);
        for level in &self.levels {
            order *= BigUint::from(level.orbit.len());
        }
        order
    }

    /// Sift a permutation; `None` means it reduced to the identity, i.e. it
    /// is a member.
    fn sift(&self, p: &Permutation) -> Option<Permutation> {
        let mut residue = p.clone();
        for level in &self.levels {
            let target = residue.apply(level.point);
            match &level.transversal[target] {
                None => return Some(residue),
                Some(rep) => {
                    residue = residue
                        .compose(&rep.inverse())
                        .expect("equal degrees");
                }
            }
        }
        if residue.is_identity() {
            None
        } else {
            Some(residue)
        }
    }
}

/// A permutation group given by generators, with its stabilizer chain built
/// at construction time. Immutable afterwards; queries are read-only.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let chain = StabChain::build(degree, &generators, &[]);
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators to mismatch")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Exact group order from the stabilizer chain.
    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    /// Membership via sifting.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain.sift(p).is_none())
    }

    /// Orbit partition, ordered by minimal point; each orbit ascending.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.generators {
            for p in 0..self.degree {
                let a = find(&mut parent, p);
                let b = find(&mut parent, g.apply(p));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi] = lo;
                }
            }
        }
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); self.degree];
        for p in 0..self.degree {
            let root = find(&mut parent, p);
            buckets[root].push(p);
        }
        buckets.into_iter().filter(|b| !b.is_empty()).collect()
    }

    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        self.orbits()
            .into_iter()
            .find(|orbit| orbit.contains(&point))
            .unwrap_or_else(|| vec![point])
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Every point stabilizer trivial, i.e. each orbit has full group size.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits()
            .iter()
            .all(|orbit| BigUint::from(orbit.len()) == order)
    }

    /// Generators of the stabilizer of `point`, from a fresh chain based at
    /// `point`.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let chain = StabChain::build(self.degree, &self.generators, &[point]);
        let gens = match chain.levels.first() {
            None => Vec::new(),
            Some(level0) => {
                if level0.point == point {
                    level0.schreier_generators()
                } else {
                    // point was fixed by everything, so the chain skipped it
                    self.generators.clone()
                }
            }
        };
        PermGroup::new(self.degree, gens)
    }

    /// All group elements, deterministic order. Intended for small groups;
    /// cost is proportional to the group order.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for &t in &level.orbit {
                let u = level.transversal[t].as_ref().expect("orbit point");
                for e in &elems {
                    next.push(e.compose(u).expect("equal degrees"));
                }
            }
            elems = next;
        }
        elems
    }
}

/// Whether `h` is a normal subgroup of `g`. Errors if `h` is not contained
/// in `g`. Normality is checked on generators only, which suffices because
/// conjugation by a product acts factor by factor.
pub fn is_normal_subgroup(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: h.degree(),
            right: g.degree(),
        });
    }
    for x in h.generators() {
        if !g.contains(x)? {
            return Err(Error::NotASubgroup(format!(
                "generator {x} of the candidate subgroup lies outside the group"
            )));
        }
    }
    for a in g.generators() {
        for x in h.generators() {
            if !h.contains(&x.conjugate_by(a)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
