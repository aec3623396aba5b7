//! Named lattices, the combinators `K⁺`, `K₊` and ordinal sum, and exhaustive
//! enumeration of small lattices up to isomorphism.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{all_congruences, is_simple};
use crate::error::{LatticeError, Result};
use crate::iso::{invariant_profile, is_isomorphic, Profile};
use crate::lattice::FiniteLattice;
use crate::sd::{is_distributive, is_semidistributive};

pub const MAX_NAMED_SIZE: usize = 10;
pub const MAX_ENUMERATION_SIZE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Standard,
    /// Shape taken from the literature; accepted only after the catalog
    /// self-checks pass.
    ExternalReference,
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub build: fn() -> FiniteLattice,
    pub provenance: Provenance,
    /// Claimed semidistributive.
    pub semidistributive: bool,
    /// Claimed to have an isolated interval.
    pub has_isolated_interval: bool,
}

/// Fixed-shape entries. Parameterized families (`b<n>`, `chain<n>`) are
/// resolved by [`by_name`].
pub fn entries() -> Vec<CatalogEntry> {
    use Provenance::*;
    vec![
        CatalogEntry {
            name: "n5",
            build: n5,
            provenance: Standard,
            semidistributive: true,
            has_isolated_interval: true,
        },
        CatalogEntry {
            name: "m3",
            build: m3,
            provenance: Standard,
            semidistributive: false,
            has_isolated_interval: false,
        },
        CatalogEntry {
            name: "n6",
            build: n6,
            provenance: ExternalReference,
            semidistributive: true,
            has_isolated_interval: true,
        },
        CatalogEntry {
            name: "l9",
            build: l9,
            provenance: ExternalReference,
            semidistributive: true,
            has_isolated_interval: true,
        },
        CatalogEntry {
            name: "l10",
            build: l10,
            provenance: ExternalReference,
            semidistributive: true,
            has_isolated_interval: true,
        },
    ]
}

/// Resolves `n5`, `m3`, `n6`/`l6`, `l9`, `l10`, `b<n>` and `chain<n>`.
pub fn by_name(name: &str) -> Result<FiniteLattice> {
    let lower = name.to_ascii_lowercase();
    if lower == "l6" {
        return Ok(n6());
    }
    if let Some(e) = entries().into_iter().find(|e| e.name == lower) {
        return Ok((e.build)());
    }
    let parse = |rest: &str| rest.parse::<usize>().map_err(|_| LatticeError::UnknownElement(name.to_owned()));
    if let Some(rest) = lower.strip_prefix("chain") {
        return chain(parse(rest)?);
    }
    if let Some(rest) = lower.strip_prefix('b') {
        return boolean(parse(rest)?);
    }
    Err(LatticeError::UnknownElement(name.to_owned()))
}

fn build(name: &str, elements: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
    FiniteLattice::from_covers(name, elements, covers).expect("catalog lattice is valid")
}

/// The pentagon: `0 < a < b < 1`, `0 < c < 1`.
pub fn n5() -> FiniteLattice {
    build("N5", &["0", "a", "b", "c", "1"], &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
}

/// The diamond: three atoms `x, y, z`.
pub fn m3() -> FiniteLattice {
    build("M3", &["0", "x", "y", "z", "1"], &[("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")])
}

/// `L6`: a pentagon whose long side `a < f` is itself a pentagon
/// (`a < c < e < f`, `a < d < f`), with `b` on the short side. Isolated
/// interval `[c, e]`.
///
/// The three external-reference shapes are the smallest subdirectly
/// irreducible semidistributive lattices with an isolated interval: this one
/// is the only such lattice with at most eight elements, and [`l9`], [`l10`]
/// are the mutually dual pair with nine.
pub fn n6() -> FiniteLattice {
    build(
        "L6",
        &["0", "a", "b", "c", "d", "e", "f", "1"],
        &[("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "1"), ("c", "e"), ("d", "f"), ("e", "f"), ("f", "1")],
    )
}

/// `L9`, nine elements, isolated interval `[c, f]`; dual to [`l10`].
pub fn l9() -> FiniteLattice {
    build(
        "L9",
        &["0", "a", "b", "c", "d", "e", "f", "g", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "d"),
            ("b", "e"),
            ("c", "f"),
            ("d", "g"),
            ("e", "1"),
            ("f", "g"),
            ("g", "1"),
        ],
    )
}

/// `L10`, nine elements, isolated interval `[c, e]`; dual to [`l9`].
pub fn l10() -> FiniteLattice {
    build(
        "L10",
        &["0", "a", "b", "c", "d", "e", "f", "g", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "f"),
            ("c", "e"),
            ("d", "f"),
            ("d", "g"),
            ("e", "g"),
            ("f", "1"),
            ("g", "1"),
        ],
    )
}

/// `B_n`: subsets of `n` atoms. Elements are named by their atoms (`a`, `ab`,
/// ...), with `0` for the empty set and `1` for the full set.
pub fn boolean(n: usize) -> Result<FiniteLattice> {
    if n > MAX_NAMED_SIZE {
        return Err(LatticeError::SizeLimit { requested: n, limit: MAX_NAMED_SIZE });
    }
    let size = 1usize << n;
    let full = size - 1;
    let name_of = |mask: usize| -> String {
        match mask {
            0 => "0".to_owned(),
            m if m == full => "1".to_owned(),
            m => (0..n).filter(|b| m & (1 << b) != 0).map(|b| (b'a' + b as u8) as char).collect(),
        }
    };
    // list masks by popcount so that names read bottom-up
    let mut masks: Vec<usize> = (0..size).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let elements: Vec<String> = masks.iter().map(|&m| name_of(m)).collect();
    let mut covers = Vec::new();
    for &m in &masks {
        for b in 0..n {
            if m & (1 << b) == 0 {
                covers.push((name_of(m), name_of(m | (1 << b))));
            }
        }
    }
    FiniteLattice::from_covers(format!("B{n}"), &elements, &covers)
}

/// The `n`-element chain, named `0 < a < b < ... < 1`.
pub fn chain(n: usize) -> Result<FiniteLattice> {
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if n > MAX_NAMED_SIZE {
        return Err(LatticeError::SizeLimit { requested: n, limit: MAX_NAMED_SIZE });
    }
    let elements: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "0".to_owned(),
            i if i == n - 1 => "1".to_owned(),
            i => ((b'a' + (i - 1) as u8) as char).to_string(),
        })
        .collect();
    let covers: Vec<(String, String)> = elements.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    FiniteLattice::from_covers(format!("C{n}"), &elements, &covers)
}

fn fresh_name(l: &FiniteLattice, base: &str) -> String {
    let mut name = base.to_owned();
    while l.contains(&name) {
        name.push('\'');
    }
    name
}

/// `K⁺`: a new top above everything.
pub fn add_unit(l: &FiniteLattice) -> FiniteLattice {
    let top = fresh_name(l, "1");
    stack(l, None, Some(top), format!("{}⁺", l.name()))
}

/// `K₊`: a new bottom below everything.
pub fn add_zero(l: &FiniteLattice) -> FiniteLattice {
    let bottom = fresh_name(l, "0");
    stack(l, Some(bottom), None, format!("{}₊", l.name()))
}

fn stack(l: &FiniteLattice, bottom: Option<String>, top: Option<String>, name: String) -> FiniteLattice {
    let mut elements: Vec<String> = Vec::with_capacity(l.len() + 1);
    elements.extend(bottom.iter().cloned());
    elements.extend(l.elements().iter().cloned());
    elements.extend(top.iter().cloned());
    let offset = usize::from(bottom.is_some());
    let m = elements.len();
    let mut leq = vec![false; m * m];
    for x in 0..l.len() {
        for y in 0..l.len() {
            leq[(x + offset) * m + (y + offset)] = l.leq(x, y);
        }
    }
    if bottom.is_some() {
        leq[..m].fill(true);
    }
    if top.is_some() {
        for x in 0..m {
            leq[x * m + (m - 1)] = true;
        }
    }
    FiniteLattice::from_order(name, elements, leq).expect("adding a bound preserves the lattice property")
}

/// Non-coalesced ordinal sum `A ∔ B`: every element of `A` lies below every
/// element of `B`. Names of `B` that clash with `A` get primes appended.
pub fn ordinal_sum(a: &FiniteLattice, b: &FiniteLattice) -> FiniteLattice {
    let mut elements: Vec<String> = a.elements().to_vec();
    for e in b.elements() {
        let mut name = e.clone();
        while elements.contains(&name) || (b.contains(&name) && name != *e) {
            name.push('\'');
        }
        elements.push(name);
    }
    let (na, m) = (a.len(), elements.len());
    let mut leq = vec![false; m * m];
    for x in 0..m {
        for y in 0..m {
            leq[x * m + y] = match (x < na, y < na) {
                (true, true) => a.leq(x, y),
                (false, false) => b.leq(x - na, y - na),
                (true, false) => true,
                (false, true) => false,
            };
        }
    }
    FiniteLattice::from_order(format!("{} ∔ {}", a.name(), b.name()), elements, leq)
        .expect("ordinal sum of lattices is a lattice")
}

/// Names `l` by a combinator expression when it matches one: `B_n`, `B_n⁺`,
/// `(B_n)₊`, `B_n⁺⁺`, `B_n ∔ B_2`, or the `k`-chain. Returns every matching
/// name, most specific first.
pub fn describe_shape(l: &FiniteLattice) -> Vec<String> {
    let n = l.len();
    let b2 = boolean(2).expect("within limit");
    type Make<'a> = &'a dyn Fn(&FiniteLattice) -> FiniteLattice;
    let kinds: [(usize, &str, Make); 5] = [
        (0, "B_{k}", &|b| b.clone()),
        (1, "B_{k}⁺", &|b| add_unit(b)),
        (1, "(B_{k})₊", &|b| add_zero(b)),
        (2, "B_{k}⁺⁺", &|b| add_unit(&add_unit(b))),
        (4, "B_{k} ∔ B_2", &|b| ordinal_sum(b, &b2)),
    ];
    let mut names = Vec::new();
    for (extra, pattern, make) in kinds {
        for k in 0..=MAX_NAMED_SIZE {
            let size = (1usize << k) + extra;
            if size > n {
                break;
            }
            if size == n && is_isomorphic(l, &make(&boolean(k).expect("within limit"))).is_some() {
                names.push(pattern.replace("{k}", &k.to_string()));
            }
        }
    }
    if is_chain(l) {
        names.push(format!("{n}-chain"));
    }
    names
}

pub fn is_chain(l: &FiniteLattice) -> bool {
    (0..l.len()).all(|x| (0..l.len()).all(|y| l.comparable(x, y)))
}

/// One representative per isomorphism class of `n`-element lattices.
pub fn enumerate_lattices(n: usize) -> Result<Vec<FiniteLattice>> {
    Ok(enumerate_up_to(n)?.pop().unwrap_or_default())
}

/// Representatives for every size `1..=n`, grouped by size.
///
/// Every lattice with at least three elements has a coatom `c ≠ 0`, and
/// deleting `c` leaves a lattice. So each class of size `k` arises from a
/// class of size `k − 1` by adding a new coatom whose down-set is an order
/// ideal of the smaller lattice minus its top.
pub fn enumerate_up_to(n: usize) -> Result<Vec<Vec<FiniteLattice>>> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(LatticeError::SizeLimit { requested: n, limit: MAX_ENUMERATION_SIZE });
    }
    let mut levels: Vec<Vec<FiniteLattice>> = vec![vec![chain(1)?.with_name("lat1_000")]];
    if n >= 2 {
        levels.push(vec![chain(2)?.with_name("lat2_000")]);
    }
    for size in 3..=n {
        let parents = levels.last().expect("nonempty");
        let candidates: Vec<Vec<FiniteLattice>> = parents.par_iter().map(add_coatom_extensions).collect();
        let mut reps: Vec<FiniteLattice> = Vec::new();
        let mut buckets: HashMap<Profile, Vec<usize>> = HashMap::new();
        for cand in candidates.into_iter().flatten() {
            let profile = invariant_profile(&cand);
            let bucket = buckets.entry(profile).or_default();
            if bucket.iter().any(|&i| is_isomorphic(&reps[i], &cand).is_some()) {
                continue;
            }
            bucket.push(reps.len());
            reps.push(cand);
        }
        let mut keyed: Vec<(Vec<usize>, FiniteLattice)> =
            reps.into_iter().map(|l| (sort_key(&l), canonical_names(&l))).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        levels
            .push(keyed.into_iter().enumerate().map(|(i, (_, l))| l.with_name(format!("lat{size}_{i:03}"))).collect());
    }
    Ok(levels)
}

/// Every representative of size `1..=n`, smallest first.
pub fn corpus(n: usize) -> Result<Vec<FiniteLattice>> {
    Ok(enumerate_up_to(n)?.into_iter().flatten().collect())
}

fn add_coatom_extensions(parent: &FiniteLattice) -> Vec<FiniteLattice> {
    let top = parent.top();
    let rest: Vec<usize> = (0..parent.len()).filter(|&x| x != top).collect();
    let k = rest.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << k) {
        let in_set = |x: usize| rest.iter().position(|&r| r == x).is_some_and(|i| mask & (1 << i) != 0);
        let down_closed =
            (0..k).filter(|&i| mask & (1 << i) != 0).all(|i| parent.ideal(rest[i]).into_iter().all(in_set));
        if !down_closed {
            continue;
        }
        let m = parent.len() + 1;
        let new = m - 1;
        let mut leq = vec![false; m * m];
        for x in 0..parent.len() {
            for y in 0..parent.len() {
                leq[x * m + y] = parent.leq(x, y);
            }
            leq[x * m + new] = in_set(x);
        }
        leq[new * m + new] = true;
        leq[new * m + top] = true;
        let mut elements: Vec<String> = (0..parent.len()).map(|i| format!("e{i}")).collect();
        elements.push(format!("e{new}"));
        if let Ok(l) = FiniteLattice::from_order("candidate", elements, leq) {
            out.push(l);
        }
    }
    out
}

/// Deterministic ordering of representatives: fewer covers first, then by
/// sorted height profile and the order matrix in canonical naming.
fn sort_key(l: &FiniteLattice) -> Vec<usize> {
    let canon = canonical_names(l);
    let mut key = vec![l.covers().len()];
    let mut heights = canon.heights();
    heights.sort_unstable();
    key.extend(heights);
    key.extend(invariant_profile(l).into_iter().flat_map(|s| [s.0, s.1, s.2, s.3, s.4, s.5]));
    key.extend(canon.order_matrix().iter().map(|&b| usize::from(b)));
    key
}

/// Reorders elements by height and renames them `0`, `a`, `b`, ..., `1`.
fn canonical_names(l: &FiniteLattice) -> FiniteLattice {
    let heights = l.heights();
    let mut order: Vec<usize> = (0..l.len()).collect();
    order.sort_by_key(|&x| (heights[x], x));
    let m = l.len();
    let mut letters = (b'a'..=b'z').map(|c| (c as char).to_string());
    let names: Vec<String> = order
        .iter()
        .map(|&x| {
            if x == l.bottom() {
                "0".to_owned()
            } else if x == l.top() {
                "1".to_owned()
            } else {
                letters.next().expect("small lattice")
            }
        })
        .collect();
    let mut leq = vec![false; m * m];
    for (i, &x) in order.iter().enumerate() {
        for (j, &y) in order.iter().enumerate() {
            leq[i * m + j] = l.leq(x, y);
        }
    }
    FiniteLattice::from_order(l.name(), names, leq).expect("relabelling preserves the lattice")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusPredicate {
    All,
    Sd,
    SdSimple,
}

impl CensusPredicate {
    pub fn holds(self, l: &FiniteLattice) -> bool {
        match self {
            CensusPredicate::All => true,
            CensusPredicate::Sd => is_semidistributive(l),
            CensusPredicate::SdSimple => is_semidistributive(l) && is_simple(l),
        }
    }
}

impl std::str::FromStr for CensusPredicate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(CensusPredicate::All),
            "sd" => Ok(CensusPredicate::Sd),
            "sd-simple" => Ok(CensusPredicate::SdSimple),
            other => Err(format!("unknown predicate `{other}` (expected all, sd, sd-simple)")),
        }
    }
}

/// Lattices whose congruence lattices share one isomorphism type.
#[derive(Debug, Clone, Serialize)]
pub struct CensusClass {
    pub con_size: usize,
    pub con_shape: Vec<String>,
    pub con_covers: Vec<(usize, usize)>,
    pub count: usize,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub max_size: usize,
    pub predicate: CensusPredicate,
    pub examined: usize,
    pub matched: usize,
    /// Matching lattices with exactly two congruences.
    pub simple: Vec<String>,
    /// Matching lattices whose Con is a 3-element chain.
    pub con_three_chain: Vec<String>,
    pub all_con_distributive: bool,
    pub classes: Vec<CensusClass>,
}

pub fn census(max_size: usize, predicate: CensusPredicate) -> Result<CensusReport> {
    let lattices = corpus(max_size)?;
    let examined = lattices.len();
    let matched: Vec<&FiniteLattice> = lattices.iter().filter(|l| predicate.holds(l)).collect();
    let cons: Vec<FiniteLattice> = matched.par_iter().map(|l| all_congruences(l).carrier().clone()).collect();

    let three_chain = chain(3)?;
    let mut classes: Vec<(FiniteLattice, CensusClass)> = Vec::new();
    let mut simple = Vec::new();
    let mut con_three_chain = Vec::new();
    let mut all_con_distributive = true;
    for (l, con) in matched.iter().zip(&cons) {
        all_con_distributive &= is_distributive(con);
        if con.len() == 2 {
            simple.push(l.name().to_owned());
        }
        if con.len() == 3 && is_isomorphic(con, &three_chain).is_some() {
            con_three_chain.push(l.name().to_owned());
        }
        match classes.iter_mut().find(|(rep, _)| rep.len() == con.len() && is_isomorphic(rep, con).is_some()) {
            Some((_, class)) => {
                class.count += 1;
                class.members.push(l.name().to_owned());
            }
            None => classes.push((
                con.clone(),
                CensusClass {
                    con_size: con.len(),
                    con_shape: describe_shape(con),
                    con_covers: con.covers(),
                    count: 1,
                    members: vec![l.name().to_owned()],
                },
            )),
        }
    }
    let mut classes: Vec<CensusClass> = classes.into_iter().map(|(_, c)| c).collect();
    classes.sort_by(|a, b| a.con_size.cmp(&b.con_size).then_with(|| a.con_covers.cmp(&b.con_covers)));
    Ok(CensusReport {
        max_size,
        predicate,
        examined,
        matched: matched.len(),
        simple,
        con_three_chain,
        all_con_distributive,
        classes,
    })
}
