//! Doubling an element `u` (or an antichain `U`) into a two-element chain
//! `u.0 ≺ u.1`, and the congruences `μ_u` collapsing each doubled pair.

use serde::Serialize;

use crate::catalog::boolean;
use crate::congruence::{all_congruences, quotient, ConLattice, Congruence, Partition};
use crate::error::{LatticeError, Result};
use crate::iso::is_isomorphic;
use crate::lattice::FiniteLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DoubledElement {
    /// Index in the origin lattice.
    pub origin: usize,
    /// Index of `u.0` in the result.
    pub low: usize,
    /// Index of `u.1` in the result.
    pub high: usize,
}

#[derive(Debug, Clone)]
pub struct DoubledLattice {
    pub result: FiniteLattice,
    pub origin: FiniteLattice,
    pub doubled: Vec<DoubledElement>,
    /// `embedding[x]` is the image of origin element `x`, or `None` if `x` was
    /// doubled.
    pub embedding: Vec<Option<usize>>,
}

impl DoubledLattice {
    pub fn doubled_names(&self) -> Vec<&str> {
        self.doubled.iter().map(|d| self.origin.element(d.origin)).collect()
    }

    fn find(&self, u: &str) -> Result<&DoubledElement> {
        let x = self.origin.index_of(u).map_err(|_| LatticeError::NotDoubled(u.to_owned()))?;
        self.doubled.iter().find(|d| d.origin == x).ok_or_else(|| LatticeError::NotDoubled(u.to_owned()))
    }

    /// Image of `x` in the result, choosing `x.0` for a doubled `x`.
    pub fn image_low(&self, x: usize) -> usize {
        self.embedding[x].unwrap_or_else(|| self.pair(x).low)
    }

    /// Image of `x` in the result, choosing `x.1` for a doubled `x`.
    pub fn image_high(&self, x: usize) -> usize {
        self.embedding[x].unwrap_or_else(|| self.pair(x).high)
    }

    fn pair(&self, x: usize) -> &DoubledElement {
        self.doubled.iter().find(|d| d.origin == x).expect("element was doubled")
    }

    /// Violations of the meet/join preservation properties: joins and meets
    /// of undoubled elements with undoubled results are unchanged, and for
    /// undoubled `a`, `u.0 ∧ a` is the image of `u ∧ a` while `u.1 ∨ a` is the
    /// image of `u ∨ a`. Empty when the construction is sound.
    pub fn preservation_violations(&self) -> Vec<String> {
        let (l, r) = (&self.origin, &self.result);
        let mut out = Vec::new();
        let kept: Vec<usize> = (0..l.len()).filter(|&x| self.embedding[x].is_some()).collect();
        for &a in &kept {
            let ia = self.image_low(a);
            for &b in &kept {
                let ib = self.image_low(b);
                let c = l.join(a, b);
                if let Some(ic) = self.embedding[c] {
                    if r.join(ia, ib) != ic {
                        out.push(format!("join {} ∨ {} moved", l.element(a), l.element(b)));
                    }
                }
                let c = l.meet(a, b);
                if let Some(ic) = self.embedding[c] {
                    if r.meet(ia, ib) != ic {
                        out.push(format!("meet {} ∧ {} moved", l.element(a), l.element(b)));
                    }
                }
            }
            for d in &self.doubled {
                if r.meet(d.low, ia) != self.image_low(l.meet(d.origin, a)) {
                    out.push(format!("{}.0 ∧ {} differs from {0} ∧ {1}", l.element(d.origin), l.element(a)));
                }
                if r.join(d.high, ia) != self.image_high(l.join(d.origin, a)) {
                    out.push(format!("{}.1 ∨ {} differs from {0} ∨ {1}", l.element(d.origin), l.element(a)));
                }
            }
        }
        out
    }
}

pub fn double_element(l: &FiniteLattice, u: &str) -> Result<DoubledLattice> {
    double_antichain(l, &[u])
}

/// `L[U]`: every element of the antichain `U` is doubled at once.
pub fn double_antichain<S: AsRef<str>>(l: &FiniteLattice, u: &[S]) -> Result<DoubledLattice> {
    let mut set = Vec::with_capacity(u.len());
    for name in u {
        set.push(l.index_of(name.as_ref())?);
    }
    set.sort_unstable();
    set.dedup();
    double_indices(l, &set)
}

pub fn double_indices(l: &FiniteLattice, set: &[usize]) -> Result<DoubledLattice> {
    if !l.is_antichain(set) {
        return Err(LatticeError::NotAnAntichain(set.iter().map(|&x| l.element(x).to_owned()).collect()));
    }
    let is_doubled = |x: usize| set.contains(&x);

    // (origin index, level) for each result element; level is None when the
    // element is not doubled
    let mut slots: Vec<(usize, Option<u8>)> = Vec::with_capacity(l.len() + set.len());
    let mut elements = Vec::with_capacity(l.len() + set.len());
    for x in 0..l.len() {
        if is_doubled(x) {
            for level in 0..2u8 {
                let name = format!("{}.{level}", l.element(x));
                if l.contains(&name) {
                    return Err(LatticeError::NameCollision(name));
                }
                slots.push((x, Some(level)));
                elements.push(name);
            }
        } else {
            slots.push((x, None));
            elements.push(l.element(x).to_owned());
        }
    }

    let m = slots.len();
    let mut leq = vec![false; m * m];
    for (i, &(x, lx)) in slots.iter().enumerate() {
        for (j, &(y, ly)) in slots.iter().enumerate() {
            leq[i * m + j] = match (lx, ly) {
                (Some(a), Some(b)) if x == y => a <= b,
                _ => l.leq(x, y),
            };
        }
    }
    let name = if set.len() == 1 {
        format!("{}[{}]", l.name(), l.element(set[0]))
    } else {
        let names: Vec<&str> = set.iter().map(|&x| l.element(x)).collect();
        format!("{}[{{{}}}]", l.name(), names.join(","))
    };
    let result = FiniteLattice::from_order(name, elements, leq)?;

    let mut embedding = vec![None; l.len()];
    let mut doubled = Vec::with_capacity(set.len());
    for (i, &(x, level)) in slots.iter().enumerate() {
        match level {
            None => embedding[x] = Some(i),
            Some(0) => doubled.push(DoubledElement { origin: x, low: i, high: i + 1 }),
            Some(_) => {}
        }
    }
    let d = DoubledLattice { result, origin: l.clone(), doubled, embedding };
    debug_assert!(d.preservation_violations().is_empty(), "{:?}", d.preservation_violations());
    Ok(d)
}

/// `μ_u`: the congruence whose only nontrivial block is `{u.0, u.1}`.
pub fn mu(d: &DoubledLattice, u: &str) -> Result<Congruence> {
    mu_v(d, &[u])
}

/// `μ[V]`: union of the `μ_v`, `v ∈ V`. The blocks are disjoint pairs, so the
/// union is already an equivalence; the substitution property is still checked.
pub fn mu_v<S: AsRef<str>>(d: &DoubledLattice, v: &[S]) -> Result<Congruence> {
    let mut pairs = Vec::with_capacity(v.len());
    for name in v {
        pairs.push(*d.find(name.as_ref())?);
    }
    mu_of(d, &pairs)
}

fn mu_of(d: &DoubledLattice, pairs: &[DoubledElement]) -> Result<Congruence> {
    let mut ids: Vec<usize> = (0..d.result.len()).collect();
    for p in pairs {
        ids[p.high] = p.low;
    }
    Congruence::new(&d.result, Partition::from_class_ids(&ids))
}

/// Checks on a single `μ_u`.
#[derive(Debug, Clone, Serialize)]
pub struct MuReport {
    pub element: String,
    pub rendered: String,
    pub single_nontrivial_block: bool,
    pub equals_principal: bool,
    pub is_atom: bool,
    pub quotient_is_origin: bool,
}

impl MuReport {
    pub fn holds(&self) -> bool {
        self.single_nontrivial_block && self.equals_principal && self.is_atom
    }
}

pub fn mu_report(d: &DoubledLattice, con: &ConLattice, u: &str) -> Result<MuReport> {
    let pair = *d.find(u)?;
    let m = mu_of(d, &[pair])?;
    let principal = crate::congruence::principal_congruence_at(&d.result, pair.low, pair.high);
    let is_atom = con.atoms().contains(&&m);
    let quotient_is_origin = if d.doubled.len() == 1 {
        is_isomorphic(&quotient(&d.result, &m)?, &d.origin).is_some()
    } else {
        // with several doubled elements, L[U]/μ_u is L[U − {u}]
        let rest: Vec<usize> = d.doubled.iter().filter(|e| e.origin != pair.origin).map(|e| e.origin).collect();
        let partial = double_indices(&d.origin, &rest)?;
        is_isomorphic(&quotient(&d.result, &m)?, &partial.result).is_some()
    };
    Ok(MuReport {
        element: u.to_owned(),
        rendered: m.render(&d.result),
        single_nontrivial_block: m.partition().nontrivial_blocks() == vec![vec![pair.low, pair.high]],
        equals_principal: principal == m,
        is_atom,
        quotient_is_origin,
    })
}

/// Result of checking that `V ↦ μ[V]` embeds `B_|U|` into Con L[U].
#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingReport {
    pub doubled: Vec<String>,
    pub con_size: usize,
    pub image_size: usize,
    pub all_congruences: bool,
    pub injective: bool,
    pub preserves_meet_and_join: bool,
    pub image_is_boolean: bool,
    pub top_quotient_is_origin: bool,
    /// Con equals the image together with ∇.
    pub con_is_image_plus_top: bool,
    /// Congruences outside the image and ∇.
    pub extras: Vec<String>,
}

impl EmbeddingReport {
    pub fn embedding_holds(&self) -> bool {
        self.all_congruences
            && self.injective
            && self.preserves_meet_and_join
            && self.image_is_boolean
            && self.top_quotient_is_origin
    }
}

pub fn check_boolean_embedding(d: &DoubledLattice) -> EmbeddingReport {
    check_boolean_embedding_with(d, &all_congruences(&d.result))
}

pub fn check_boolean_embedding_with(d: &DoubledLattice, con: &ConLattice) -> EmbeddingReport {
    let n = d.doubled.len();
    let subsets = 1usize << n;
    let pick = |mask: usize| -> Vec<DoubledElement> {
        (0..n).filter(|i| mask & (1 << i) != 0).map(|i| d.doubled[i]).collect()
    };
    let image: Vec<Option<Congruence>> = (0..subsets).map(|mask| mu_of(d, &pick(mask)).ok()).collect();
    let all_congruences = image.iter().all(|c| c.as_ref().is_some_and(|c| con.contains(c)));

    let mut injective = all_congruences;
    let mut preserves = all_congruences;
    if all_congruences {
        let image: Vec<&Congruence> = image.iter().map(|c| c.as_ref().expect("checked")).collect();
        for v in 0..subsets {
            for w in 0..subsets {
                if v != w && image[v] == image[w] {
                    injective = false;
                }
                if image[v].meet(image[w]) != *image[v & w] || image[v].join(&d.result, image[w]) != *image[v | w] {
                    preserves = false;
                }
            }
        }
    }

    let members: Vec<usize> = image.iter().flatten().filter_map(|c| con.position(c)).collect();
    let image_is_boolean = all_congruences && {
        let sub = con.carrier().induced("image", &members);
        sub.is_ok_and(|s| is_isomorphic(&s, &boolean(n).expect("small")).is_some())
    };
    let top_quotient_is_origin = image[subsets - 1]
        .as_ref()
        .and_then(|c| quotient(&d.result, c).ok())
        .is_some_and(|q| is_isomorphic(&q, &d.origin).is_some());

    let total = Congruence::total(&d.result);
    let extras: Vec<String> = con
        .congruences()
        .iter()
        .filter(|c| **c != total && !image.iter().flatten().any(|i| i == *c))
        .map(|c| c.render(&d.result))
        .collect();

    EmbeddingReport {
        doubled: d.doubled_names().into_iter().map(str::to_owned).collect(),
        con_size: con.len(),
        image_size: members.len(),
        all_congruences,
        injective,
        preserves_meet_and_join: preserves,
        image_is_boolean,
        top_quotient_is_origin,
        con_is_image_plus_top: extras.is_empty(),
        extras,
    }
}
