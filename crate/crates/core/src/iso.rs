//! Lattice isomorphism by backtracking.
//!
//! Elements are matched only against candidates with the same invariant
//! signature (height, depth, cover counts, ideal and filter sizes). Lattices in
//! this crate stay small, so no canonical labelling is computed.

use crate::lattice::FiniteLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Signature {
    height: usize,
    depth: usize,
    lower: usize,
    upper: usize,
    ideal: usize,
    filter: usize,
}

fn signatures(l: &FiniteLattice) -> Vec<Signature> {
    let heights = l.heights();
    let depths = l.dual().heights();
    (0..l.len())
        .map(|x| Signature {
            height: heights[x],
            depth: depths[x],
            lower: l.lower_covers(x).len(),
            upper: l.upper_covers(x).len(),
            ideal: l.ideal(x).len(),
            filter: l.filter(x).len(),
        })
        .collect()
}

/// Per element: height, depth, lower and upper cover counts, ideal and filter sizes.
pub type Profile = Vec<(usize, usize, usize, usize, usize, usize)>;

/// Sorted invariant signatures; equal profiles are necessary for isomorphism.
pub fn invariant_profile(l: &FiniteLattice) -> Profile {
    let mut v: Vec<_> =
        signatures(l).into_iter().map(|s| (s.height, s.depth, s.lower, s.upper, s.ideal, s.filter)).collect();
    v.sort_unstable();
    v
}

/// Returns `map` with `map[x]` the image in `b` of element `x` of `a`, such
/// that `x ≤ y` iff `map[x] ≤ map[y]`, or `None` when no such bijection exists.
/// The search is deterministic.
pub fn is_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    find_isomorphism(a, b, &[])
}

/// Like [`is_isomorphic`] but only accepts bijections that send each
/// `fixed[i].0` to `fixed[i].1`.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() || a.covers().len() != b.covers().len() {
        return None;
    }
    let sa = signatures(a);
    let sb = signatures(b);
    let mut pa = sa.clone();
    let mut pb = sb.clone();
    pa.sort_unstable();
    pb.sort_unstable();
    if pa != pb {
        return None;
    }

    // assign in order of height so each new element is constrained by its
    // lower covers, which are already placed
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (sa[x].height, x));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(x, y) in fixed {
        if sa[x] != sb[y] || (map[x] != usize::MAX && map[x] != y) || (used[y] && map[x] != y) {
            return None;
        }
        map[x] = y;
        used[y] = true;
    }
    for &(x, _) in fixed {
        for &(x2, _) in fixed {
            if a.leq(x, x2) != b.leq(map[x], map[x2]) {
                return None;
            }
        }
    }

    let search = Search { a, b, sa: &sa, sb: &sb, order: &order };
    if search.extend(0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

struct Search<'a> {
    a: &'a FiniteLattice,
    b: &'a FiniteLattice,
    sa: &'a [Signature],
    sb: &'a [Signature],
    order: &'a [usize],
}

impl Search<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&x) = self.order.get(depth) else {
            return true;
        };
        if map[x] != usize::MAX {
            return self.extend(depth + 1, map, used);
        }
        for y in 0..self.b.len() {
            if used[y] || self.sa[x] != self.sb[y] || !self.consistent(x, y, map) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    fn consistent(&self, x: usize, y: usize, map: &[usize]) -> bool {
        map.iter()
            .enumerate()
            .filter(|(_, &img)| img != usize::MAX)
            .all(|(x2, &y2)| self.a.leq(x, x2) == self.b.leq(y, y2) && self.a.leq(x2, x) == self.b.leq(y2, y))
    }
}
