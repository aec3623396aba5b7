//! Lattice congruences as block partitions, and the congruence lattice.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LatticeError, Result};
use crate::lattice::FiniteLattice;

/// A partition of `0..n`. Each element is labelled by the least index of its
/// block, so equal partitions have equal label vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    /// All singletons (Δ).
    pub fn discrete(n: usize) -> Self {
        Partition { labels: (0..n).collect() }
    }

    /// One block (∇).
    pub fn total(n: usize) -> Self {
        Partition { labels: vec![0; n] }
    }

    /// Builds a partition from arbitrary class ids; `ids[i] == ids[j]` iff
    /// `i` and `j` share a block.
    pub fn from_class_ids<T: Eq + std::hash::Hash>(ids: &[T]) -> Self {
        let mut first: HashMap<&T, usize> = HashMap::new();
        let labels = ids.iter().enumerate().map(|(i, id)| *first.entry(id).or_insert(i)).collect();
        Partition { labels }
    }

    /// Fails if `blocks` overlap or miss an element of `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Option<Self> {
        let mut ids = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n || ids[x] != usize::MAX {
                    return None;
                }
                ids[x] = b;
            }
        }
        if ids.contains(&usize::MAX) {
            return None;
        }
        Some(Self::from_class_ids(&ids))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn block_of(&self, x: usize) -> Vec<usize> {
        let r = self.labels[x];
        (0..self.len()).filter(|&y| self.labels[y] == r).collect()
    }

    /// Blocks, each sorted, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.len()];
        for (x, &r) in self.labels.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[r]].push(x);
        }
        blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().enumerate().filter(|(i, &r)| *i == r).count()
    }

    /// Blocks with more than one element.
    pub fn nontrivial_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks().into_iter().filter(|b| b.len() > 1).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(|&r| r == 0)
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.labels.iter().enumerate().all(|(x, &r)| other.labels[x] == other.labels[r])
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Partition {
        let ids: Vec<(usize, usize)> = self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        Self::from_class_ids(&ids)
    }

    /// Join in the partition lattice (transitive closure of block overlap).
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            uf.union(x, self.labels[x]);
            uf.union(x, other.labels[x]);
        }
        uf.into_partition()
    }

    /// Renders as `{x,y|z|w}` using element names of `l`.
    pub fn render(&self, l: &FiniteLattice) -> String {
        let mut out = String::from("{");
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                out.push('|');
            }
            for (j, &x) in block.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", l.element(x));
            }
        }
        out.push('}');
        out
    }

    /// First `(x, z, kind)` where the block of `x` is not preserved by
    /// `- ∧ z` or `- ∨ z`, if any.
    pub fn substitution_failure(&self, l: &FiniteLattice) -> Option<(usize, usize, &'static str)> {
        if self.len() != l.len() {
            return Some((0, 0, "size"));
        }
        for x in 0..l.len() {
            let r = self.labels[x];
            if r == x {
                continue;
            }
            for z in 0..l.len() {
                if !self.same_block(l.meet(x, z), l.meet(r, z)) {
                    return Some((x, z, "meet"));
                }
                if !self.same_block(l.join(x, z), l.join(r, z)) {
                    return Some((x, z, "join"));
                }
            }
        }
        None
    }

    pub fn is_congruence_of(&self, l: &FiniteLattice) -> bool {
        self.substitution_failure(l).is_none()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    fn into_partition(mut self) -> Partition {
        let ids: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_class_ids(&ids)
    }
}

/// A partition known to have the substitution property for some lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Congruence(Partition);

impl Congruence {
    /// Checks the substitution property against `l`.
    pub fn new(l: &FiniteLattice, p: Partition) -> Result<Self> {
        match p.substitution_failure(l) {
            None => Ok(Congruence(p)),
            Some((_, _, "size")) => Err(LatticeError::NotACongruence(format!(
                "partition has {} elements, lattice has {}",
                p.len(),
                l.len()
            ))),
            Some((x, z, kind)) => Err(LatticeError::NotACongruence(format!(
                "{}: block of {} is not preserved by {kind} with {}",
                p.render(l),
                l.element(x),
                l.element(z)
            ))),
        }
    }

    pub fn identity(l: &FiniteLattice) -> Self {
        Congruence(Partition::discrete(l.len()))
    }

    pub fn total(l: &FiniteLattice) -> Self {
        Congruence(Partition::total(l.len()))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.0.same_block(x, y)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.0.blocks()
    }

    pub fn refines(&self, other: &Congruence) -> bool {
        self.0.refines(&other.0)
    }

    pub fn render(&self, l: &FiniteLattice) -> String {
        self.0.render(l)
    }

    /// Meet in Con L: common refinement, which is again a congruence.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        Congruence(self.0.meet(&other.0))
    }

    /// Join in Con L: partition join followed by substitution closure.
    pub fn join(&self, l: &FiniteLattice, other: &Congruence) -> Congruence {
        let joined = self.0.join(&other.0);
        let pairs: Vec<(usize, usize)> = joined.labels.iter().enumerate().map(|(x, &r)| (x, r)).collect();
        generated_congruence(l, &pairs)
    }
}

/// Smallest congruence containing every pair in `pairs`.
pub fn generated_congruence(l: &FiniteLattice, pairs: &[(usize, usize)]) -> Congruence {
    let mut uf = UnionFind::new(l.len());
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in pairs {
        if uf.union(x, y) {
            queue.push((x, y));
        }
    }
    // a lattice congruence is an equivalence closed under the translations
    // t ↦ t ∧ z and t ↦ t ∨ z; closing the generating pairs is enough
    while let Some((p, q)) = queue.pop() {
        for z in 0..l.len() {
            let (m1, m2) = (l.meet(p, z), l.meet(q, z));
            if uf.union(m1, m2) {
                queue.push((m1, m2));
            }
            let (j1, j2) = (l.join(p, z), l.join(q, z));
            if uf.union(j1, j2) {
                queue.push((j1, j2));
            }
        }
    }
    let c = Congruence(uf.into_partition());
    debug_assert!(c.0.is_congruence_of(l));
    c
}

/// `con(x, y)`.
pub fn principal_congruence(l: &FiniteLattice, x: &str, y: &str) -> Result<Congruence> {
    Ok(principal_congruence_at(l, l.index_of(x)?, l.index_of(y)?))
}

pub fn principal_congruence_at(l: &FiniteLattice, x: usize, y: usize) -> Congruence {
    generated_congruence(l, &[(x, y)])
}

/// Con L: the congruences of a lattice ordered by refinement.
#[derive(Debug, Clone)]
pub struct ConLattice {
    carrier: FiniteLattice,
    congruences: Vec<Congruence>,
}

impl ConLattice {
    /// The congruences as a lattice; element `i` of the carrier is
    /// `congruences()[i]`.
    pub fn carrier(&self) -> &FiniteLattice {
        &self.carrier
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn position(&self, c: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|d| d == c)
    }

    pub fn contains(&self, c: &Congruence) -> bool {
        self.position(c).is_some()
    }

    /// Congruences covering Δ.
    pub fn atoms(&self) -> Vec<&Congruence> {
        self.carrier.upper_covers(self.carrier.bottom()).iter().map(|&i| &self.congruences[i]).collect()
    }
}

/// Every congruence of `l`, as the join-closure of the principal congruences
/// of cover pairs together with Δ.
///
/// Congruences are ordered by decreasing number of blocks and then by label
/// vector, so Δ comes first and ∇ last.
pub fn all_congruences(l: &FiniteLattice) -> ConLattice {
    let covers = l.covers();
    let mut generators: Vec<Congruence> = covers.par_iter().map(|&(x, y)| principal_congruence_at(l, x, y)).collect();
    generators.sort();
    generators.dedup();

    let delta = Congruence::identity(l);
    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut found: Vec<Congruence> = Vec::new();
    for c in std::iter::once(delta).chain(generators.iter().cloned()) {
        if seen.insert(c.clone()) {
            found.push(c);
        }
    }
    let mut i = 0;
    while i < found.len() {
        let current = found[i].clone();
        for g in &generators {
            if g.refines(&current) {
                continue;
            }
            let j = current.join(l, g);
            if seen.insert(j.clone()) {
                found.push(j);
            }
        }
        i += 1;
    }

    found.sort_by(|a, b| b.0.num_blocks().cmp(&a.0.num_blocks()).then_with(|| a.cmp(b)));
    let carrier = refinement_lattice(l, &found);
    debug_assert!(crate::sd::is_distributive(&carrier), "Con({}) is not distributive", l.name());
    ConLattice { carrier, congruences: found }
}

fn refinement_lattice(l: &FiniteLattice, congruences: &[Congruence]) -> FiniteLattice {
    let m = congruences.len();
    let names = congruences.iter().map(|c| c.render(l)).collect();
    let mut leq = vec![false; m * m];
    for (i, a) in congruences.iter().enumerate() {
        for (j, b) in congruences.iter().enumerate() {
            leq[i * m + j] = a.refines(b);
        }
    }
    FiniteLattice::from_order(format!("Con({})", l.name()), names, leq)
        .expect("congruences of a lattice form a lattice")
}

/// `l / θ`. Blocks become elements named after their least member.
pub fn quotient(l: &FiniteLattice, theta: &Congruence) -> Result<FiniteLattice> {
    if let Some(err) = Congruence::new(l, theta.0.clone()).err() {
        return Err(err);
    }
    let reps: Vec<usize> = theta.blocks().iter().map(|b| b[0]).collect();
    let m = reps.len();
    let names = reps.iter().map(|&r| l.element(r).to_owned()).collect();
    let mut leq = vec![false; m * m];
    for (i, &x) in reps.iter().enumerate() {
        for (j, &y) in reps.iter().enumerate() {
            leq[i * m + j] = theta.related(l.join(x, y), y);
        }
    }
    FiniteLattice::from_order(format!("{}/θ", l.name()), names, leq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Simplicity {
    /// One element; Δ = ∇.
    Degenerate,
    Simple,
    NotSimple,
}

pub fn simplicity(l: &FiniteLattice) -> Simplicity {
    if l.len() == 1 {
        return Simplicity::Degenerate;
    }
    // l is simple iff con(0, 1) is the only nontrivial congruence, i.e. every
    // cover collapses everything
    let all_total = l.covers().iter().all(|&(x, y)| principal_congruence_at(l, x, y).0.is_total());
    if all_total {
        Simplicity::Simple
    } else {
        Simplicity::NotSimple
    }
}

/// Exactly two congruences. A one-element lattice is not simple.
pub fn is_simple(l: &FiniteLattice) -> bool {
    simplicity(l) == Simplicity::Simple
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(elements: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
        FiniteLattice::from_covers("t", elements, covers).unwrap()
    }

    fn n5() -> FiniteLattice {
        lat(&["0", "a", "b", "c", "1"], &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
    }

    fn m3() -> FiniteLattice {
        lat(&["0", "x", "y", "z", "1"], &[("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")])
    }

    fn chain(n: usize) -> FiniteLattice {
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let covers: Vec<(String, String)> = names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        FiniteLattice::from_covers("chain", &names, &covers).unwrap()
    }

    #[test]
    fn principal_congruences_of_pentagon() {
        let l = n5();
        assert_eq!(principal_congruence(&l, "a", "b").unwrap().render(&l), "{0|a,b|c|1}");
        assert_eq!(principal_congruence(&l, "0", "c").unwrap().render(&l), "{0,c|a,b,1}");
        assert_eq!(principal_congruence(&l, "c", "c").unwrap(), Congruence::identity(&l));
        assert!(principal_congruence(&l, "c", "q").is_err());
    }

    #[test]
    fn con_of_small_lattices() {
        assert_eq!(all_congruences(&n5()).len(), 5);
        assert_eq!(all_congruences(&chain(3)).len(), 4);
        assert_eq!(all_congruences(&chain(2)).len(), 2);
        assert_eq!(all_congruences(&chain(1)).len(), 1);
        assert_eq!(all_congruences(&m3()).len(), 2);
    }

    #[test]
    fn con_order_puts_delta_first() {
        let l = n5();
        let con = all_congruences(&l);
        assert_eq!(con.congruences()[0], Congruence::identity(&l));
        assert_eq!(con.congruences().last().unwrap(), &Congruence::total(&l));
        assert_eq!(con.carrier().bottom(), 0);
        assert_eq!(con.carrier().top(), con.len() - 1);
    }

    #[test]
    fn atoms_of_pentagon_and_chains() {
        let l = n5();
        let con = all_congruences(&l);
        let atoms: Vec<String> = con.atoms().iter().map(|c| c.render(&l)).collect();
        assert_eq!(atoms, vec!["{0|a,b|c|1}"]);
        let two = chain(2);
        assert_eq!(all_congruences(&two).atoms(), vec![&Congruence::total(&two)]);
    }

    #[test]
    fn quotients() {
        let l = n5();
        assert_eq!(quotient(&l, &Congruence::identity(&l)).unwrap().len(), 5);
        assert_eq!(quotient(&l, &Congruence::total(&l)).unwrap().len(), 1);
        let q = quotient(&l, &principal_congruence(&l, "0", "c").unwrap()).unwrap();
        assert_eq!(q.len(), 2);
        // congruences of other lattices are rejected
        let bogus = principal_congruence(&chain(3), "c0", "c1").unwrap();
        assert!(matches!(quotient(&l, &bogus), Err(LatticeError::NotACongruence(_))));
        let bogus = principal_congruence(&chain(5), "c0", "c1").unwrap();
        assert!(matches!(quotient(&l, &bogus), Err(LatticeError::NotACongruence(_))));
    }

    #[test]
    fn non_congruence_partition_is_rejected() {
        let l = n5();
        let p = Partition::from_blocks(5, &[vec![0, 1], vec![2], vec![3], vec![4]]).unwrap();
        assert!(matches!(Congruence::new(&l, p), Err(LatticeError::NotACongruence(_))));
        assert!(Partition::from_blocks(5, &[vec![0, 1], vec![1, 2, 3, 4]]).is_none());
        assert!(Partition::from_blocks(5, &[vec![0, 1]]).is_none());
    }

    #[test]
    fn simplicity_examples() {
        assert!(is_simple(&chain(2)));
        assert!(is_simple(&m3()));
        assert!(!is_simple(&n5()));
        assert_eq!(simplicity(&chain(1)), Simplicity::Degenerate);
    }

    #[test]
    fn partition_lattice_ops() {
        let a = Partition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        let b = Partition::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        assert_eq!(a.join(&b).blocks(), vec![vec![0, 1, 2], vec![3]]);
        assert!(a.meet(&b).is_discrete());
        assert!(a.refines(&a.join(&b)));
        assert!(!a.refines(&b));
        assert_eq!(a.join(&b).num_blocks(), 2);
    }
}
