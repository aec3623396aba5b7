//! Semidistributivity.
//!
//! Two independent routes are provided: a direct scan of the (SD∧)/(SD∨)
//! implications over all triples, and the criterion through the sets
//! `I(u, v) = {x : v ∧ x = u}`, which must be ideals of `↑u` for every `u < v`.
//! The direct scan is the ground truth; the ideal route cross-checks it.

use serde::Serialize;

use crate::lattice::FiniteLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Meet,
    Join,
}

/// A triple violating one of the semidistributive laws.
///
/// For [`Side::Meet`]: `x ∧ y = x ∧ z` but `x ∧ (y ∨ z)` differs. For
/// [`Side::Join`], the dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SdWitness {
    pub side: Side,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl SdWitness {
    /// Re-evaluates the triple through the lattice tables; true iff it still
    /// violates its law.
    pub fn replays(&self, l: &FiniteLattice) -> bool {
        let (x, y, z) = (self.x, self.y, self.z);
        match self.side {
            Side::Meet => l.meet(x, y) == l.meet(x, z) && l.meet(x, y) != l.meet(x, l.join(y, z)),
            Side::Join => l.join(x, y) == l.join(x, z) && l.join(x, y) != l.join(x, l.meet(y, z)),
        }
    }

    pub fn describe(&self, l: &FiniteLattice) -> String {
        let (x, y, z) = (l.element(self.x), l.element(self.y), l.element(self.z));
        match self.side {
            Side::Meet => format!("{x}∧{y} = {x}∧{z} ≠ {x}∧({y}∨{z})"),
            Side::Join => format!("{x}∨{y} = {x}∨{z} ≠ {x}∨({y}∧{z})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SdReport {
    pub meet_sd: bool,
    pub join_sd: bool,
    pub meet_witness: Option<SdWitness>,
    pub join_witness: Option<SdWitness>,
}

impl SdReport {
    pub fn is_semidistributive(&self) -> bool {
        self.meet_sd && self.join_sd
    }
}

pub fn check_sd_direct(l: &FiniteLattice) -> SdReport {
    let meet_witness = first_violation(l, Side::Meet);
    let join_witness = first_violation(l, Side::Join);
    SdReport { meet_sd: meet_witness.is_none(), join_sd: join_witness.is_none(), meet_witness, join_witness }
}

pub fn is_semidistributive(l: &FiniteLattice) -> bool {
    check_sd_direct(l).is_semidistributive()
}

/// Every violating triple, meet side first.
pub fn violations(l: &FiniteLattice) -> Vec<SdWitness> {
    let n = l.len();
    let mut out = Vec::new();
    for side in [Side::Meet, Side::Join] {
        for x in 0..n {
            for y in 0..n {
                for z in y + 1..n {
                    let w = SdWitness { side, x, y, z };
                    if w.replays(l) {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

fn first_violation(l: &FiniteLattice, side: Side) -> Option<SdWitness> {
    let n = l.len();
    for x in 0..n {
        for y in 0..n {
            for z in y + 1..n {
                let w = SdWitness { side, x, y, z };
                if w.replays(l) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// How `I(u, v)` fails to be an ideal of `↑u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealFailure {
    /// `x, y` are in the set but `x ∨ y` (dually `x ∧ y`) is not.
    NotClosed { x: usize, y: usize },
    /// `x` is in the set and `u ≤ y ≤ x` (dually `x ≤ y ≤ u`) but `y` is not.
    NotDownClosed { x: usize, y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealWitness {
    pub u: usize,
    pub v: usize,
    pub set: Vec<usize>,
    pub failure: Option<IdealFailure>,
}

/// Evaluates `I(u, v) = {x : v ∧ x = u}` and tests whether it is an ideal of `↑u`.
pub fn ideal_witness(l: &FiniteLattice, u: usize, v: usize) -> IdealWitness {
    let n = l.len();
    let set: Vec<usize> = (0..n).filter(|&x| l.meet(v, x) == u).collect();
    let mut member = vec![false; n];
    for &x in &set {
        member[x] = true;
    }
    let mut failure = None;
    'scan: for &x in &set {
        for (y, &inside) in member.iter().enumerate() {
            if !inside && l.leq(u, y) && l.leq(y, x) {
                failure = Some(IdealFailure::NotDownClosed { x, y });
                break 'scan;
            }
        }
        for &y in &set {
            if !member[l.join(x, y)] {
                failure = Some(IdealFailure::NotClosed { x, y });
                break 'scan;
            }
        }
    }
    IdealWitness { u, v, set, failure }
}

/// Meet-semidistributivity through the ideal criterion. Returns the verdict and
/// every witness evaluated, stopping after the first failing one.
pub fn check_meet_sd_ideals(l: &FiniteLattice) -> (bool, Vec<IdealWitness>) {
    let n = l.len();
    let mut witnesses = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if !l.lt(u, v) {
                continue;
            }
            let w = ideal_witness(l, u, v);
            let failed = w.failure.is_some();
            witnesses.push(w);
            if failed {
                return (false, witnesses);
            }
        }
    }
    (true, witnesses)
}

/// Order dual of [`check_meet_sd_ideals`]: `F(u, v) = {x : v ∨ x = u}` must be
/// a filter of `↓u` for every `u > v`. Indices refer to `l`.
pub fn check_join_sd_filters(l: &FiniteLattice) -> (bool, Vec<IdealWitness>) {
    check_meet_sd_ideals(&l.dual())
}

/// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all triples.
pub fn is_distributive(l: &FiniteLattice) -> bool {
    distributivity_witness(l).is_none()
}

pub fn distributivity_witness(l: &FiniteLattice) -> Option<(usize, usize, usize)> {
    let n = l.len();
    for x in 0..n {
        for y in 0..n {
            for z in y + 1..n {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
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

    fn idx(l: &FiniteLattice, names: &[&str]) -> Vec<usize> {
        names.iter().map(|n| l.index_of(n).unwrap()).collect()
    }

    #[test]
    fn m3_fails_on_its_atoms() {
        let l = m3();
        let r = check_sd_direct(&l);
        assert!(!r.meet_sd && !r.join_sd);
        let w = r.meet_witness.unwrap();
        assert_eq!((w.x, w.y, w.z), (1, 2, 3));
        assert!(w.replays(&l));
        assert!(r.join_witness.unwrap().replays(&l));
    }

    #[test]
    fn pentagon_is_semidistributive_but_not_distributive() {
        let l = n5();
        let r = check_sd_direct(&l);
        assert!(r.meet_sd && r.join_sd);
        assert!(r.meet_witness.is_none() && r.join_witness.is_none());
        assert!(!is_distributive(&l));
    }

    #[test]
    fn ideal_of_pentagon() {
        let l = n5();
        let [u, v] = idx(&l, &["0", "b"])[..] else { unreachable!() };
        let w = ideal_witness(&l, u, v);
        assert_eq!(w.set, idx(&l, &["0", "c"]));
        assert!(w.failure.is_none());
        assert!(check_meet_sd_ideals(&l).0);
        assert!(check_join_sd_filters(&l).0);
    }

    #[test]
    fn ideal_of_diamond_escapes() {
        let l = m3();
        let w = ideal_witness(&l, 0, 1);
        assert_eq!(w.set, idx(&l, &["0", "y", "z"]));
        assert_eq!(w.failure, Some(IdealFailure::NotClosed { x: 2, y: 3 }));
        let (ok, ws) = check_meet_sd_ideals(&l);
        assert!(!ok);
        assert!(ws.last().unwrap().failure.is_some());
        assert!(!check_join_sd_filters(&l).0);
    }

    #[test]
    fn two_chain_has_one_trivial_ideal() {
        let l = lat(&["0", "1"], &[("0", "1")]);
        let (ok, ws) = check_meet_sd_ideals(&l);
        assert!(ok);
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].set, vec![0]);
    }

    #[test]
    fn chains_and_cube_are_distributive() {
        let chain = lat(&["0", "a", "b", "1"], &[("0", "a"), ("a", "b"), ("b", "1")]);
        assert!(is_distributive(&chain));
        assert!(check_join_sd_filters(&chain).0);
        assert!(!is_distributive(&m3()));
    }
}
