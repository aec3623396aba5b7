//! Isolated intervals and gluing a lattice `F` in place of one.
//!
//! An interval `[a, b]` is isolated when `a ≺ b` and both endpoints are doubly
//! irreducible. Removing `a` and `b` leaves a sublattice `L^{a,b}`, split into
//! `P = ↓a_*`, `Q = ↑b^*` and the remainder `R`. The glued lattice `K` puts `F`
//! above `P` and below `Q`, and congruences of `L` are carried over to `K` by
//! [`transfer_congruence`].

use serde::Serialize;

use crate::congruence::{all_congruences, is_simple, Congruence, Partition};
use crate::error::{LatticeError, Result};
use crate::lattice::FiniteLattice;
use crate::sd::{check_sd_direct, violations, SdReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IsolatedInterval {
    pub a: usize,
    pub b: usize,
    /// The unique lower cover of `a`.
    pub a_star: usize,
    /// The unique upper cover of `b`.
    pub b_star: usize,
}

impl IsolatedInterval {
    pub fn describe(&self, l: &FiniteLattice) -> String {
        format!("[{}, {}]", l.element(self.a), l.element(self.b))
    }
}

pub fn find_isolated_intervals(l: &FiniteLattice) -> Vec<IsolatedInterval> {
    l.covers().into_iter().filter_map(|(a, b)| isolated_at(l, a, b)).collect()
}

fn isolated_at(l: &FiniteLattice, a: usize, b: usize) -> Option<IsolatedInterval> {
    // the bounds are never doubly irreducible, so they are excluded here
    (l.is_cover(a, b) && l.is_doubly_irreducible(a) && l.is_doubly_irreducible(b)).then(|| IsolatedInterval {
        a,
        b,
        a_star: l.lower_covers(a)[0],
        b_star: l.upper_covers(b)[0],
    })
}

pub fn isolated_interval(l: &FiniteLattice, a: &str, b: &str) -> Result<IsolatedInterval> {
    let (x, y) = (l.index_of(a)?, l.index_of(b)?);
    isolated_at(l, x, y).ok_or_else(|| LatticeError::NotIsolated(a.to_owned(), b.to_owned()))
}

/// `L^{a,b}`. The two-element lattice deletes to the empty set, which is not a
/// lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deleted {
    Empty,
    Lattice(Box<FiniteLattice>),
}

pub fn delete_interval(l: &FiniteLattice, iv: &IsolatedInterval) -> Result<Deleted> {
    if l.len() <= 2 {
        return Ok(Deleted::Empty);
    }
    let rest = remaining(l, iv);
    debug_assert!(l.is_sublattice(&rest));
    let name = format!("{}^{{{},{}}}", l.name(), l.element(iv.a), l.element(iv.b));
    Ok(Deleted::Lattice(Box::new(l.induced(name, &rest)?)))
}

fn remaining(l: &FiniteLattice, iv: &IsolatedInterval) -> Vec<usize> {
    (0..l.len()).filter(|&x| x != iv.a && x != iv.b).collect()
}

/// `(P, Q, R)` as indices of `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pqr {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

pub fn partition_pqr(l: &FiniteLattice, iv: &IsolatedInterval) -> Result<Pqr> {
    if l.len() <= 2 {
        return Err(LatticeError::TooSmall(l.len()));
    }
    let mut out = Pqr { p: Vec::new(), q: Vec::new(), r: Vec::new() };
    for x in remaining(l, iv) {
        if l.leq(x, iv.a_star) {
            out.p.push(x);
        } else if l.leq(iv.b_star, x) {
            out.q.push(x);
        } else {
            out.r.push(x);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GlueContext {
    pub origin: FiniteLattice,
    pub interval: IsolatedInterval,
    /// The inserted lattice, with elements renamed if they clashed.
    pub replacement: FiniteLattice,
    pub parts: Pqr,
    pub k: FiniteLattice,
    /// `from_origin[x]` is the position of `x` in `K`; `None` for `a` and `b`.
    pub from_origin: Vec<Option<usize>>,
    /// `from_replacement[f]` is the position of `f` in `K`.
    pub from_replacement: Vec<usize>,
}

impl GlueContext {
    pub fn is_replacement(&self, k: usize) -> bool {
        self.from_replacement.contains(&k)
    }
}

/// Builds `K = L^{a,b} ⊎ F` with `x ≤ f` iff `x ≤ a` in `L`, `f ≤ y` iff
/// `b ≤ y` in `L`, and `F` keeping its own order.
pub fn glue(l: &FiniteLattice, iv: &IsolatedInterval, f: &FiniteLattice) -> Result<GlueContext> {
    if isolated_at(l, iv.a, iv.b).as_ref() != Some(iv) {
        return Err(LatticeError::NotIsolated(l.element(iv.a).to_owned(), l.element(iv.b).to_owned()));
    }
    let parts = partition_pqr(l, iv)?;
    let rest = remaining(l, iv);

    let mut prefix = String::new();
    while f.elements().iter().any(|e| rest.iter().any(|&x| l.element(x) == format!("{prefix}{e}"))) {
        prefix.push_str("F.");
    }
    let replacement = if prefix.is_empty() { f.clone() } else { f.relabeled(|_, e| format!("{prefix}{e}"))? };

    let (nr, m) = (rest.len(), rest.len() + f.len());
    let mut leq = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            leq[i * m + j] = match (i < nr, j < nr) {
                (true, true) => l.leq(rest[i], rest[j]),
                (true, false) => l.leq(rest[i], iv.a),
                (false, true) => l.leq(iv.b, rest[j]),
                (false, false) => f.leq(i - nr, j - nr),
            };
        }
    }
    let elements: Vec<String> =
        rest.iter().map(|&x| l.element(x).to_owned()).chain(replacement.elements().iter().cloned()).collect();
    let name = format!("{}[{}:={}]", l.name(), iv.describe(l), f.name());
    let k = FiniteLattice::from_order(name, elements, leq)?;

    let mut from_origin = vec![None; l.len()];
    for (i, &x) in rest.iter().enumerate() {
        from_origin[x] = Some(i);
    }
    Ok(GlueContext {
        origin: l.clone(),
        interval: *iv,
        replacement,
        parts,
        k,
        from_origin,
        from_replacement: (nr..m).collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GlueSdReport {
    pub k: SdReport,
    pub replacement: SdReport,
    pub k_semidistributive: bool,
    pub replacement_semidistributive: bool,
    /// Number of violating triples of `K`.
    pub violations: usize,
    /// Fewest elements of `F` appearing in any violating triple of `K`.
    pub min_replacement_elements_in_witness: Option<usize>,
}

pub fn check_glue_sd(ctx: &GlueContext) -> GlueSdReport {
    let k = check_sd_direct(&ctx.k);
    let replacement = check_sd_direct(&ctx.replacement);
    let all = violations(&ctx.k);
    let min_in_f = all.iter().map(|w| [w.x, w.y, w.z].iter().filter(|&&e| ctx.is_replacement(e)).count()).min();
    GlueSdReport {
        k_semidistributive: k.is_semidistributive(),
        replacement_semidistributive: replacement.is_semidistributive(),
        k,
        replacement,
        violations: all.len(),
        min_replacement_elements_in_witness: min_in_f,
    }
}

/// Image of a congruence of `L` on `K`, with a flag telling whether it really
/// is a congruence of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transferred {
    pub partition: Partition,
    pub is_congruence: bool,
}

/// `α ↦ α^{a,b}`. If `a ≡ b (α)`, the block holding `a` and `b` loses them and
/// gains all of `F`; otherwise every block is cut down to `L^{a,b}` (empty
/// remnants dropped) and each element of `F` is a singleton.
pub fn transfer_congruence(ctx: &GlueContext, alpha: &Congruence) -> Result<Transferred> {
    let l = &ctx.origin;
    let alpha = Congruence::new(l, alpha.partition().clone())?;
    let (a, b) = (ctx.interval.a, ctx.interval.b);
    let collapsed = alpha.related(a, b);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for block in alpha.blocks() {
        let mut image: Vec<usize> = block.iter().filter_map(|&x| ctx.from_origin[x]).collect();
        if collapsed && block.contains(&a) {
            image.extend(&ctx.from_replacement);
        }
        if !image.is_empty() {
            blocks.push(image);
        }
    }
    if !collapsed {
        blocks.extend(ctx.from_replacement.iter().map(|&f| vec![f]));
    }
    let partition = Partition::from_blocks(ctx.k.len(), &blocks).expect("transferred blocks partition K");
    let is_congruence = partition.is_congruence_of(&ctx.k);
    Ok(Transferred { partition, is_congruence })
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferPair {
    pub alpha: String,
    pub image: String,
    pub image_is_congruence: bool,
}

/// Constructive check of whether `α ↦ α^{a,b}` is an isomorphism
/// Con L → Con K on one instance.
#[derive(Debug, Clone, Serialize)]
pub struct ConIsoReport {
    pub replacement_simple: bool,
    pub con_origin: usize,
    pub con_k: usize,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub order_preserving: bool,
    pub order_reflecting: bool,
    pub pairs: Vec<TransferPair>,
    /// Congruences of `K` not hit by the map.
    pub missed: Vec<String>,
    /// Distinct congruences of `L` with the same image.
    pub collisions: Vec<(String, String)>,
}

impl ConIsoReport {
    pub fn is_isomorphism(&self) -> bool {
        self.well_defined && self.injective && self.surjective && self.order_preserving && self.order_reflecting
    }
}

pub fn verify_con_isomorphism(ctx: &GlueContext) -> ConIsoReport {
    let con_l = all_congruences(&ctx.origin);
    let con_k = all_congruences(&ctx.k);
    let images: Vec<Transferred> =
        con_l.congruences().iter().map(|alpha| transfer_congruence(ctx, alpha).expect("congruence of L")).collect();

    let well_defined = images.iter().all(|t| t.is_congruence);
    let mut injective = true;
    let mut collisions = Vec::new();
    let mut order_preserving = true;
    let mut order_reflecting = true;
    for (i, ti) in images.iter().enumerate() {
        for (j, tj) in images.iter().enumerate() {
            let (ai, aj) = (&con_l.congruences()[i], &con_l.congruences()[j]);
            if i < j && ti.partition == tj.partition {
                injective = false;
                collisions.push((ai.render(&ctx.origin), aj.render(&ctx.origin)));
            }
            let before = ai.refines(aj);
            let after = ti.partition.refines(&tj.partition);
            if before && !after {
                order_preserving = false;
            }
            if after && !before {
                order_reflecting = false;
            }
        }
    }
    let missed: Vec<String> = con_k
        .congruences()
        .iter()
        .filter(|c| !images.iter().any(|t| t.partition == *c.partition()))
        .map(|c| c.render(&ctx.k))
        .collect();
    let pairs = con_l
        .congruences()
        .iter()
        .zip(&images)
        .map(|(alpha, t)| TransferPair {
            alpha: alpha.render(&ctx.origin),
            image: t.partition.render(&ctx.k),
            image_is_congruence: t.is_congruence,
        })
        .collect();

    ConIsoReport {
        replacement_simple: is_simple(&ctx.replacement),
        con_origin: con_l.len(),
        con_k: con_k.len(),
        well_defined,
        injective,
        surjective: missed.is_empty(),
        order_preserving,
        order_reflecting,
        pairs,
        missed,
        collisions,
    }
}
