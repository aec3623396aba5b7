//! Brute-force oracles. Deliberately naive and independent of the library's
//! own closure and search routines.

#![allow(dead_code)]

use std::collections::BTreeSet;

use latcon_core::congruence::Partition;
use latcon_core::FiniteLattice;

/// Every set partition of `0..n`, as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur.push(b);
            go(i + 1, n, if b == max { max + 1 } else { max }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        go(0, n, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Substitution property checked pairwise from the definition.
pub fn respects_operations(l: &FiniteLattice, ids: &[usize]) -> bool {
    let n = l.len();
    for x in 0..n {
        for y in 0..n {
            if ids[x] != ids[y] {
                continue;
            }
            for z in 0..n {
                if ids[l.meet(x, z)] != ids[l.meet(y, z)] || ids[l.join(x, z)] != ids[l.join(y, z)] {
                    return false;
                }
            }
        }
    }
    true
}

/// All congruences, by filtering every set partition.
pub fn brute_force_congruences(l: &FiniteLattice) -> Vec<Partition> {
    set_partitions(l.len())
        .into_iter()
        .filter(|ids| respects_operations(l, ids))
        .map(|ids| Partition::from_class_ids(&ids))
        .collect()
}

/// Least congruence relating `x` and `y`: the intersection of all brute-force
/// congruences that do.
pub fn brute_force_principal(l: &FiniteLattice, x: usize, y: usize) -> Partition {
    brute_force_congruences(l)
        .into_iter()
        .filter(|p| p.same_block(x, y))
        .fold(Partition::total(l.len()), |acc, p| acc.meet(&p))
}

/// Order matrix in a canonical form: the lexicographically least encoding
/// over all relabelings of the inner elements.
fn canonical(n: usize, leq: &[bool]) -> Vec<bool> {
    let inner: Vec<usize> = (1..n - 1).collect();
    let mut best: Option<Vec<bool>> = None;
    permute(&inner, &mut Vec::new(), &mut vec![false; n], &mut |perm| {
        let mut map = vec![0; n];
        map[n - 1] = n - 1;
        for (k, &p) in perm.iter().enumerate() {
            map[k + 1] = p;
        }
        let enc: Vec<bool> = (0..n * n).map(|c| leq[map[c / n] * n + map[c % n]]).collect();
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    });
    best.expect("at least one permutation")
}

fn permute(items: &[usize], cur: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    for &i in items {
        if !used[i] {
            used[i] = true;
            cur.push(i);
            permute(items, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

fn has_all_joins(n: usize, leq: &[bool]) -> bool {
    for x in 0..n {
        for y in 0..n {
            let ub: Vec<usize> = (0..n).filter(|&z| leq[x * n + z] && leq[y * n + z]).collect();
            if !ub.iter().any(|&j| ub.iter().all(|&z| leq[j * n + z])) {
                return false;
            }
        }
    }
    true
}

/// Number of lattices on `n` elements up to isomorphism, by running over all
/// naturally labeled bounded posets (`0` least, `n - 1` greatest, `i ≤ j`
/// only if `i ≤ j` as integers). A finite bounded poset with all joins is a
/// lattice.
pub fn naive_lattice_count(n: usize) -> usize {
    if n <= 2 {
        return usize::from(n > 0);
    }
    let pairs: Vec<(usize, usize)> = (1..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
            leq[i] = true;
            leq[i * n + n - 1] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !leq[a * n + b] || (0..n).all(|c| !leq[b * n + c] || leq[a * n + c])));
        if transitive && has_all_joins(n, &leq) {
            seen.insert(canonical(n, &leq));
        }
    }
    seen.len()
}
