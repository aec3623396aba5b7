//! The finite lattice data model.
//!
//! A [`FiniteLattice`] is built once, validated, and then never mutated. Elements
//! carry opaque text identifiers but every algorithm works on dense indices
//! `0..len()` in declaration order, so results are reproducible.

use std::collections::HashMap;

use crate::error::{LatticeError, MissingBound, Result};

#[derive(Debug, Clone)]
pub struct FiniteLattice {
    name: String,
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// Cover and irreducibility data for one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementClassification {
    pub element: String,
    pub lower_covers: Vec<String>,
    pub upper_covers: Vec<String>,
    pub join_irreducible: bool,
    pub meet_irreducible: bool,
    pub doubly_irreducible: bool,
}

impl FiniteLattice {
    /// Builds a lattice from its Hasse diagram. `covers` holds `(lower, upper)`
    /// pairs; redundant pairs are tolerated and dropped by the transitive
    /// reduction.
    pub fn from_covers<S: AsRef<str>>(name: impl Into<String>, elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
        let index = build_index(&elements)?;
        let n = elements.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let lo = lookup(&index, lo.as_ref())?;
            let hi = lookup(&index, hi.as_ref())?;
            if lo == hi {
                return Err(LatticeError::CycleDetected(elements[lo].clone()));
            }
            leq[lo * n + hi] = true;
        }
        transitive_closure(&mut leq, n);
        Self::assemble(name.into(), elements, index, leq)
    }

    /// Builds a lattice from a full order matrix (`leq[i * n + j]` iff i ≤ j).
    /// The matrix is closed transitively before validation.
    pub fn from_order(name: impl Into<String>, elements: Vec<String>, mut leq: Vec<bool>) -> Result<Self> {
        let n = elements.len();
        assert_eq!(leq.len(), n * n, "order matrix has wrong dimensions");
        let index = build_index(&elements)?;
        for i in 0..n {
            leq[i * n + i] = true;
        }
        transitive_closure(&mut leq, n);
        Self::assemble(name.into(), elements, index, leq)
    }

    fn assemble(name: String, elements: Vec<String>, index: HashMap<String, usize>, leq: Vec<bool>) -> Result<Self> {
        let n = elements.len();
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::CycleDetected(elements[i].clone()));
                }
            }
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let sup = least_upper_bound(&leq, n, i, j).ok_or_else(|| {
                    LatticeError::NotALattice(elements[i].clone(), elements[j].clone(), MissingBound::Join)
                })?;
                let inf = greatest_lower_bound(&leq, n, i, j).ok_or_else(|| {
                    LatticeError::NotALattice(elements[i].clone(), elements[j].clone(), MissingBound::Meet)
                })?;
                join[i * n + j] = sup;
                join[j * n + i] = sup;
                meet[i * n + j] = inf;
                meet[j * n + i] = inf;
            }
        }

        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && !(0..n).any(|k| k != i && k != j && leq[i * n + k] && leq[k * n + j]) {
                    upper[i].push(j);
                    lower[j].push(i);
                }
            }
        }

        // n ≥ 1 is guaranteed by build_index
        let bottom = (0..n).fold(0, |acc, i| meet[acc * n + i]);
        let top = (0..n).fold(0, |acc, i| join[acc * n + i]);

        Ok(FiniteLattice { name, elements, index, leq, lower, upper, meet, join, bottom, top })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Returns a copy whose elements are renamed through `f`.
    pub fn relabeled(&self, mut f: impl FnMut(usize, &str) -> String) -> Result<Self> {
        let elements: Vec<String> = self.elements.iter().enumerate().map(|(i, e)| f(i, e)).collect();
        let index = build_index(&elements)?;
        Ok(FiniteLattice { elements, index, ..self.clone() })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.index, name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn order_matrix(&self) -> &[bool] {
        &self.leq
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].contains(&y)
    }

    /// All cover pairs `(lower, upper)`, sorted by index.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            (0..self.len()).flat_map(|x| self.upper[x].iter().map(move |&y| (x, y))).collect();
        out.sort_unstable();
        out
    }

    /// Exactly one lower cover. The bottom has none and so never qualifies.
    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.lower[x].len() == 1
    }

    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        self.upper[x].len() == 1
    }

    pub fn is_doubly_irreducible(&self, x: usize) -> bool {
        self.is_join_irreducible(x) && self.is_meet_irreducible(x)
    }

    pub fn classify(&self, name: &str) -> Result<ElementClassification> {
        let x = self.index_of(name)?;
        let names = |v: &[usize]| v.iter().map(|&i| self.elements[i].clone()).collect();
        Ok(ElementClassification {
            element: name.to_owned(),
            lower_covers: names(&self.lower[x]),
            upper_covers: names(&self.upper[x]),
            join_irreducible: self.is_join_irreducible(x),
            meet_irreducible: self.is_meet_irreducible(x),
            doubly_irreducible: self.is_doubly_irreducible(x),
        })
    }

    /// `↓x` as sorted indices.
    pub fn ideal(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(y, x)).collect()
    }

    /// `↑x` as sorted indices.
    pub fn filter(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(x, y)).collect()
    }

    pub fn principal_ideal(&self, name: &str) -> Result<Vec<&str>> {
        let x = self.index_of(name)?;
        Ok(self.ideal(x).into_iter().map(|i| self.element(i)).collect())
    }

    pub fn principal_filter(&self, name: &str) -> Result<Vec<&str>> {
        let x = self.index_of(name)?;
        Ok(self.filter(x).into_iter().map(|i| self.element(i)).collect())
    }

    pub fn is_antichain(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &x)| set[i + 1..].iter().all(|&y| x != y && !self.comparable(x, y)))
    }

    /// All `k`-element antichains, each sorted, in lexicographic order.
    pub fn antichains(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        self.extend_antichains(0, k, &mut current, &mut out);
        out
    }

    fn extend_antichains(&self, start: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for x in start..self.len() {
            if current.iter().all(|&y| !self.comparable(x, y)) {
                current.push(x);
                self.extend_antichains(x + 1, k, current, out);
                current.pop();
            }
        }
    }

    /// Length of the longest chain from the bottom to `x`.
    pub fn height(&self, x: usize) -> usize {
        let mut memo = vec![None; self.len()];
        self.height_memo(x, &mut memo)
    }

    /// Heights of every element.
    pub fn heights(&self) -> Vec<usize> {
        let mut memo = vec![None; self.len()];
        (0..self.len()).map(|x| self.height_memo(x, &mut memo)).collect()
    }

    fn height_memo(&self, x: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(h) = memo[x] {
            return h;
        }
        let h = self.lower[x].iter().map(|&y| self.height_memo(y, memo) + 1).max().unwrap_or(0);
        memo[x] = Some(h);
        h
    }

    /// The order dual: same elements, reversed order.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        FiniteLattice {
            name: format!("{}^d", self.name),
            elements: self.elements.clone(),
            index: self.index.clone(),
            leq,
            lower: self.upper.clone(),
            upper: self.lower.clone(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// True iff `set` is closed under this lattice's meet and join.
    pub fn is_sublattice(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &x in set {
            member[x] = true;
        }
        set.iter().all(|&x| set.iter().all(|&y| member[self.meet(x, y)] && member[self.join(x, y)]))
    }

    /// The lattice induced on `set` (kept in index order). Fails if the
    /// induced order is not a lattice.
    pub fn induced(&self, name: impl Into<String>, set: &[usize]) -> Result<FiniteLattice> {
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        let m = set.len();
        let elements = set.iter().map(|&i| self.elements[i].clone()).collect();
        let mut leq = vec![false; m * m];
        for (a, &x) in set.iter().enumerate() {
            for (b, &y) in set.iter().enumerate() {
                leq[a * m + b] = self.leq(x, y);
            }
        }
        FiniteLattice::from_order(name, elements, leq)
    }
}

fn build_index(elements: &[String]) -> Result<HashMap<String, usize>> {
    if elements.is_empty() {
        return Err(LatticeError::Empty);
    }
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(LatticeError::DuplicateElement(e.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize> {
    index.get(name).copied().ok_or_else(|| LatticeError::UnknownElement(name.to_owned()))
}

fn transitive_closure(leq: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
}

fn least_upper_bound(leq: &[bool], n: usize, x: usize, y: usize) -> Option<usize> {
    let ub: Vec<usize> = (0..n).filter(|&z| leq[x * n + z] && leq[y * n + z]).collect();
    ub.iter().copied().find(|&z| ub.iter().all(|&w| leq[z * n + w]))
}

fn greatest_lower_bound(leq: &[bool], n: usize, x: usize, y: usize) -> Option<usize> {
    let lb: Vec<usize> = (0..n).filter(|&z| leq[z * n + x] && leq[z * n + y]).collect();
    lb.iter().copied().find(|&z| lb.iter().all(|&w| leq[w * n + z]))
}

impl PartialEq for FiniteLattice {
    /// Structural equality: same element names in the same order with the same
    /// order relation. The display name is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.leq == other.leq
    }
}

impl Eq for FiniteLattice {}

#[cfg(test)]
mod tests {
    use super::*;

    fn n5() -> FiniteLattice {
        FiniteLattice::from_covers(
            "N5",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap()
    }

    fn b2() -> FiniteLattice {
        FiniteLattice::from_covers("B2", &["0", "p", "q", "1"], &[("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])
            .unwrap()
    }

    #[test]
    fn pentagon_validates() {
        let l = n5();
        assert_eq!(l.len(), 5);
        assert_eq!(l.element(l.bottom()), "0");
        assert_eq!(l.element(l.top()), "1");
        let (a, c) = (l.index_of("a").unwrap(), l.index_of("c").unwrap());
        assert_eq!(l.element(l.join(a, c)), "1");
        assert_eq!(l.element(l.meet(a, c)), "0");
    }

    #[test]
    fn missing_join_is_reported() {
        let err = FiniteLattice::from_covers(
            "bowtie",
            &["p", "q", "x", "y"],
            &[("p", "x"), ("p", "y"), ("q", "x"), ("q", "y")],
        )
        .unwrap_err();
        assert_eq!(err, LatticeError::NotALattice("p".into(), "q".into(), MissingBound::Join));
    }

    #[test]
    fn b2_meet_of_atoms_is_bottom() {
        let l = b2();
        let (p, q) = (l.index_of("p").unwrap(), l.index_of("q").unwrap());
        assert_eq!(l.element(l.meet(p, q)), "0");
    }

    #[test]
    fn rejects_cycles_duplicates_and_unknowns() {
        let cyc = FiniteLattice::from_covers("c", &["x", "y"], &[("x", "y"), ("y", "x")]);
        assert!(matches!(cyc, Err(LatticeError::CycleDetected(_))));
        let dup = FiniteLattice::from_covers::<&str>("d", &["x", "x"], &[]);
        assert_eq!(dup.unwrap_err(), LatticeError::DuplicateElement("x".into()));
        let unk = FiniteLattice::from_covers("u", &["x"], &[("x", "z")]);
        assert_eq!(unk.unwrap_err(), LatticeError::UnknownElement("z".into()));
        let empty = FiniteLattice::from_covers::<&str>("e", &[], &[]);
        assert_eq!(empty.unwrap_err(), LatticeError::Empty);
    }

    #[test]
    fn redundant_cover_is_reduced() {
        let l = FiniteLattice::from_covers("c3", &["0", "m", "1"], &[("0", "m"), ("m", "1"), ("0", "1")]).unwrap();
        assert_eq!(l.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn classification_follows_bounds_convention() {
        let l = n5();
        assert!(l.classify("a").unwrap().doubly_irreducible);
        assert!(l.classify("b").unwrap().doubly_irreducible);
        assert!(l.classify("c").unwrap().doubly_irreducible);
        assert!(!l.classify("0").unwrap().doubly_irreducible);
        let b = b2();
        assert!(!b.classify("0").unwrap().join_irreducible);
        assert!(!b.classify("1").unwrap().meet_irreducible);
        assert_eq!(b.classify("zz").unwrap_err(), LatticeError::UnknownElement("zz".into()));
    }

    #[test]
    fn ideals_and_filters() {
        let l = n5();
        assert_eq!(l.principal_ideal("a").unwrap(), vec!["0", "a"]);
        let chain =
            FiniteLattice::from_covers("4", &["0", "a", "b", "1"], &[("0", "a"), ("a", "b"), ("b", "1")]).unwrap();
        assert_eq!(chain.principal_filter("b").unwrap(), vec!["b", "1"]);
        assert_eq!(b2().principal_ideal("1").unwrap().len(), 4);
        assert!(l.principal_filter("nope").is_err());
    }

    #[test]
    fn antichain_listing() {
        let b = b2();
        assert_eq!(b.antichains(2), vec![vec![1, 2]]);
        let l = n5();
        let named: Vec<Vec<&str>> = l.antichains(2).iter().map(|s| s.iter().map(|&i| l.element(i)).collect()).collect();
        assert_eq!(named, vec![vec!["a", "c"], vec!["b", "c"]]);
        let chain = FiniteLattice::from_covers("2", &["0", "1"], &[("0", "1")]).unwrap();
        assert!(chain.antichains(2).is_empty());
        assert_eq!(chain.antichains(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn dual_swaps_everything() {
        let l = n5();
        let d = l.dual();
        assert_eq!(d.element(d.bottom()), "1");
        for x in 0..l.len() {
            for y in 0..l.len() {
                assert_eq!(d.meet(x, y), l.join(x, y));
                assert_eq!(d.leq(x, y), l.leq(y, x));
            }
            assert_eq!(d.upper_covers(x), l.lower_covers(x));
        }
    }

    #[test]
    fn heights_of_pentagon() {
        let l = n5();
        assert_eq!(l.heights(), vec![0, 1, 2, 1, 3]);
    }
}
