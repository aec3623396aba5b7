//! Verification harness: runs the invariant suites over the enumerated corpus
//! and collects per-instance failures.
//!
//! Known divergences are listed in `data/expected_divergences.json`. A failing
//! instance that matches a manifest rule is still reported, annotated with the
//! rule id, but does not count as a regression.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{census, chain, corpus, enumerate_up_to, m3, CensusPredicate, MAX_ENUMERATION_SIZE};
use crate::congruence::{all_congruences, quotient, Congruence};
use crate::doubling::{check_boolean_embedding_with, double_indices, mu_report};
use crate::error::{LatticeError, Result};
use crate::format::LatticeFile;
use crate::glue::{
    check_glue_sd, find_isolated_intervals, glue, transfer_congruence, verify_con_isomorphism, GlueContext,
    IsolatedInterval,
};
use crate::iso::is_isomorphic;
use crate::lattice::FiniteLattice;
use crate::sd::{check_join_sd_filters, check_meet_sd_ideals, check_sd_direct, is_distributive, is_semidistributive};

const MANIFEST: &str = include_str!("../data/expected_divergences.json");

pub const KNOWN_COUNTS: [usize; 8] = [1, 1, 1, 2, 5, 15, 53, 222];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SdEquivalence,
    Doubling,
    Glue,
    Census,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::SdEquivalence => "sd-equivalence",
            Suite::Doubling => "doubling",
            Suite::Glue => "glue",
            Suite::Census => "census",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sd-equivalence" => Ok(Suite::SdEquivalence),
            "doubling" => Ok(Suite::Doubling),
            "glue" => Ok(Suite::Glue),
            "census" => Ok(Suite::Census),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestExample {
    pub lattice: String,
    pub interval: [String; 2],
    pub with: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedDivergence {
    pub id: String,
    pub suite: String,
    pub property: String,
    pub rule: String,
    pub example: ManifestExample,
    pub reason: String,
}

pub fn expected_divergences() -> Vec<ExpectedDivergence> {
    serde_json::from_str(MANIFEST).expect("checked-in manifest parses")
}

/// One violated property on one instance. `lattice` is enough to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub property: String,
    pub witness: String,
    pub lattice: LatticeFile,
    /// Manifest id when this failure is a documented divergence.
    pub expected: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub max_size: usize,
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub runtime_ms: u128,
}

impl VerificationReport {
    pub fn unexpected_failures(&self) -> impl Iterator<Item = &Failure> {
        self.failures.iter().filter(|f| f.expected.is_none())
    }

    pub fn expected_failures(&self) -> impl Iterator<Item = &Failure> {
        self.failures.iter().filter(|f| f.expected.is_some())
    }

    pub fn is_clean(&self) -> bool {
        self.unexpected_failures().next().is_none()
    }
}

/// Outcome of one instance: its description and the properties it violated.
struct Outcome {
    instance: String,
    lattice: LatticeFile,
    violations: Vec<(String, String, Option<String>)>,
}

impl Outcome {
    fn new(instance: String, l: &FiniteLattice) -> Self {
        Outcome { instance, lattice: LatticeFile::from_lattice(l), violations: Vec::new() }
    }

    fn check(&mut self, ok: bool, property: &str, witness: impl FnOnce() -> String) {
        if !ok {
            self.violations.push((property.to_owned(), witness(), None));
        }
    }
}

fn assemble(suite: Suite, max_size: usize, start: Instant, outcomes: Vec<Outcome>) -> VerificationReport {
    let instances = outcomes.len();
    let mut passes = 0;
    let mut failures = Vec::new();
    for o in outcomes {
        if o.violations.is_empty() {
            passes += 1;
            continue;
        }
        // an instance with several violated properties counts once; the first
        // unexpected violation (or else the first expected one) represents it
        let pick = o.violations.iter().position(|v| v.2.is_none()).unwrap_or(0);
        let (property, witness, expected) = o.violations[pick].clone();
        let mut witness = witness;
        for (i, (p, w, e)) in o.violations.iter().enumerate() {
            if i != pick {
                witness.push_str(&format!(
                    "; also {p}: {w}{}",
                    e.as_ref().map(|id| format!(" [{id}]")).unwrap_or_default()
                ));
            }
        }
        failures.push(Failure { instance: o.instance, property, witness, lattice: o.lattice, expected });
    }
    VerificationReport {
        suite: suite.name().to_owned(),
        max_size,
        instances,
        passes,
        failures,
        runtime_ms: start.elapsed().as_millis(),
    }
}

fn check_size(max_size: usize) -> Result<()> {
    if max_size == 0 || max_size > MAX_ENUMERATION_SIZE {
        return Err(LatticeError::SizeLimit { requested: max_size, limit: MAX_ENUMERATION_SIZE });
    }
    Ok(())
}

/// Runs one suite (or all of them, concatenated) over lattices with at most
/// `max_size` elements.
pub fn run(suite: Suite, max_size: usize) -> Result<Vec<VerificationReport>> {
    check_size(max_size)?;
    Ok(match suite {
        Suite::SdEquivalence => vec![sd_equivalence(max_size)?],
        Suite::Doubling => vec![doubling(max_size)?],
        Suite::Glue => vec![glue_suite(max_size)?],
        Suite::Census => vec![census_suite(max_size)?],
        Suite::All => {
            vec![sd_equivalence(max_size)?, doubling(max_size)?, glue_suite(max_size)?, census_suite(max_size)?]
        }
    })
}

/// Direct SD scan against the ideal/filter criterion, self-duality, and
/// distributive ⇒ semidistributive.
pub fn sd_equivalence(max_size: usize) -> Result<VerificationReport> {
    check_size(max_size)?;
    let start = Instant::now();
    let outcomes = corpus(max_size)?
        .par_iter()
        .map(|l| {
            let mut o = Outcome::new(l.name().to_owned(), l);
            let direct = check_sd_direct(l);
            let (ideals, iw) = check_meet_sd_ideals(l);
            let (filters, fw) = check_join_sd_filters(l);
            o.check(direct.meet_sd == ideals, "meet-sd-criteria-agree", || {
                format!("direct={} ideals={} last={:?}", direct.meet_sd, ideals, iw.last())
            });
            o.check(direct.join_sd == filters, "join-sd-criteria-agree", || {
                format!("direct={} filters={} last={:?}", direct.join_sd, filters, fw.last())
            });
            let dual = check_sd_direct(&l.dual());
            o.check(direct.meet_sd == dual.join_sd && direct.join_sd == dual.meet_sd, "sd-self-dual", || {
                format!("{direct:?} vs dual {dual:?}")
            });
            o.check(!is_distributive(l) || direct.is_semidistributive(), "distributive-implies-sd", || {
                format!("{direct:?}")
            });
            let replay = direct.meet_witness.iter().chain(&direct.join_witness).all(|w| w.replays(l));
            o.check(replay, "witness-replays", || format!("{direct:?}"));
            o
        })
        .collect();
    Ok(assemble(Suite::SdEquivalence, max_size, start, outcomes))
}

/// Doubling of every element and every antichain of size 2: lattice property,
/// cover and irreducibility of the new pair, preserved joins and meets,
/// quotient by μ, μ an atom equal to con(u.0, u.1), SD preservation, the
/// Boolean embedding `V ↦ μ[V]`, and agreement with iterated doubling.
pub fn doubling(max_size: usize) -> Result<VerificationReport> {
    check_size(max_size)?;
    let start = Instant::now();
    let lattices = corpus(max_size)?;
    let mut jobs: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, l) in lattices.iter().enumerate() {
        for k in 1..=2 {
            jobs.extend(l.antichains(k).into_iter().map(|u| (i, u)));
        }
    }
    let outcomes = jobs.par_iter().map(|(i, set)| doubling_instance(&lattices[*i], set)).collect();
    Ok(assemble(Suite::Doubling, max_size, start, outcomes))
}

fn doubling_instance(l: &FiniteLattice, set: &[usize]) -> Outcome {
    let names: Vec<&str> = set.iter().map(|&x| l.element(x)).collect();
    let mut o = Outcome::new(format!("{}[{{{}}}]", l.name(), names.join(",")), l);
    let d = match double_indices(l, set) {
        Ok(d) => d,
        Err(e) => {
            o.check(false, "doubled-is-lattice", || e.to_string());
            return o;
        }
    };
    let r = &d.result;
    o.check(r.len() == l.len() + set.len(), "doubled-size", || r.len().to_string());
    for pair in &d.doubled {
        let u = l.element(pair.origin);
        o.check(r.is_cover(pair.low, pair.high), "u0-covered-by-u1", || u.to_owned());
        o.check(r.is_meet_irreducible(pair.low), "u0-meet-irreducible", || u.to_owned());
        o.check(r.is_join_irreducible(pair.high), "u1-join-irreducible", || u.to_owned());
    }
    let violations = d.preservation_violations();
    o.check(violations.is_empty(), "meets-and-joins-preserved", || violations.join(", "));

    let con = all_congruences(r);
    o.check(is_distributive(con.carrier()), "con-distributive", || con.carrier().name().to_owned());
    for pair in &d.doubled {
        let u = l.element(pair.origin);
        match mu_report(&d, &con, u) {
            Ok(rep) => {
                o.check(rep.single_nontrivial_block, "mu-single-block", || rep.rendered.clone());
                o.check(rep.equals_principal, "mu-is-principal", || rep.rendered.clone());
                o.check(rep.is_atom, "mu-is-atom", || rep.rendered.clone());
                o.check(rep.quotient_is_origin, "mu-quotient", || rep.rendered.clone());
            }
            Err(e) => o.check(false, "mu-is-congruence", || e.to_string()),
        }
    }
    if is_semidistributive(l) {
        o.check(is_semidistributive(r), "sd-preserved", || format!("{:?}", check_sd_direct(r)));
    }

    let emb = check_boolean_embedding_with(&d, &con);
    o.check(emb.embedding_holds(), "boolean-embedding", || format!("{emb:?}"));
    if let Some(q) = emb.embedding_holds().then(|| quotient(r, &con.congruences()[0])).and_then(|q| q.ok()) {
        o.check(q.len() == r.len(), "quotient-by-delta", || q.len().to_string());
    }

    if set.len() == 2 {
        let iterated = double_indices(l, &set[..1])
            .and_then(|first| {
                let second = first.embedding[set[1]].expect("antichain member survives");
                double_indices(&first.result, &[second])
            })
            .map(|dd| is_isomorphic(&dd.result, r).is_some());
        o.check(matches!(iterated, Ok(true)), "commutes-with-iterated-doubling", || format!("{iterated:?}"));
    }
    o
}

/// Stand-ins used for the inserted lattice.
pub fn glue_stand_ins() -> Vec<FiniteLattice> {
    vec![chain(2).expect("small"), m3()]
}

/// True when every congruence class meeting `{a, b}` stays inside `{a, b}`
/// unless `a ≡ b`.
pub fn interval_is_guarded(l: &FiniteLattice, iv: &IsolatedInterval) -> bool {
    all_congruences(l).congruences().iter().all(|c| {
        c.related(iv.a, iv.b)
            || [iv.a, iv.b].iter().all(|&e| c.partition().block_of(e).iter().all(|&x| x == iv.a || x == iv.b))
    })
}

fn rule_matches(rule: &str, ctx: &GlueContext) -> bool {
    match rule {
        "unguarded-interval" => !interval_is_guarded(&ctx.origin, &ctx.interval),
        _ => false,
    }
}

fn classify(property: &str, ctx: &GlueContext, manifest: &[ExpectedDivergence]) -> Option<String> {
    manifest
        .iter()
        .find(|e| e.suite == "glue" && e.property == property && rule_matches(&e.rule, ctx))
        .map(|e| e.id.clone())
}

/// Manifest entry covering a failed congruence transfer on `ctx`, if any.
pub fn glue_divergence(ctx: &GlueContext) -> Option<ExpectedDivergence> {
    let manifest = expected_divergences();
    let id = classify("con-transfer-isomorphism", ctx, &manifest)?;
    manifest.into_iter().find(|e| e.id == id)
}

/// Gluing every stand-in into every isolated interval of the corpus.
pub fn glue_suite(max_size: usize) -> Result<VerificationReport> {
    check_size(max_size)?;
    let start = Instant::now();
    let lattices = corpus(max_size)?;
    let stand_ins = glue_stand_ins();
    let manifest = expected_divergences();
    let mut jobs = Vec::new();
    for l in &lattices {
        for iv in find_isolated_intervals(l) {
            for f in &stand_ins {
                jobs.push((l, iv, f));
            }
        }
    }
    let outcomes = jobs.par_iter().map(|&(l, iv, f)| glue_instance(l, &iv, f, &manifest)).collect();
    Ok(assemble(Suite::Glue, max_size, start, outcomes))
}

fn glue_instance(
    l: &FiniteLattice,
    iv: &IsolatedInterval,
    f: &FiniteLattice,
    manifest: &[ExpectedDivergence],
) -> Outcome {
    let mut o = Outcome::new(format!("{} {} <- {}", l.name(), iv.describe(l), f.name()), l);
    let ctx = match glue(l, iv, f) {
        Ok(ctx) => ctx,
        Err(e) => {
            o.check(false, "glued-is-lattice", || e.to_string());
            return o;
        }
    };
    let k = &ctx.k;
    let (p, q) = (&ctx.parts.p, &ctx.parts.q);
    let ordered = ctx.from_replacement.iter().all(|&fk| {
        p.iter().all(|&x| k.lt(ctx.from_origin[x].expect("kept"), fk))
            && q.iter().all(|&y| k.lt(fk, ctx.from_origin[y].expect("kept")))
    });
    o.check(ordered, "p-below-f-below-q", String::new);

    let kept: Vec<usize> = (0..l.len()).filter(|&x| ctx.from_origin[x].is_some()).collect();
    let sublattice = kept.iter().all(|&x| {
        kept.iter().all(|&y| {
            let (kx, ky) = (ctx.from_origin[x].expect("kept"), ctx.from_origin[y].expect("kept"));
            ctx.from_origin[l.meet(x, y)] == Some(k.meet(kx, ky))
                && ctx.from_origin[l.join(x, y)] == Some(k.join(kx, ky))
        })
    });
    o.check(sublattice, "deleted-is-sublattice-of-k", String::new);

    let con_l = all_congruences(l);
    let delta = transfer_congruence(&ctx, &Congruence::identity(l)).expect("Δ is a congruence");
    o.check(delta.partition.is_discrete(), "transfer-delta", || delta.partition.render(k));
    let nabla = transfer_congruence(&ctx, &Congruence::total(l)).expect("∇ is a congruence");
    o.check(nabla.partition.is_total(), "transfer-nabla", || nabla.partition.render(k));
    let images: Vec<_> =
        con_l.congruences().iter().map(|c| transfer_congruence(&ctx, c).expect("congruence of L")).collect();
    for (i, a) in con_l.congruences().iter().enumerate() {
        for (j, b) in con_l.congruences().iter().enumerate() {
            if a.refines(b) && !images[i].partition.refines(&images[j].partition) {
                o.check(false, "transfer-monotone", || format!("{} ⊆ {}", a.render(l), b.render(l)));
            }
        }
    }

    let sd = check_glue_sd(&ctx);
    if is_semidistributive(l) && sd.replacement_semidistributive {
        o.check(sd.k_semidistributive, "k-semidistributive", || format!("{:?}", sd.k));
    }
    if !sd.replacement_semidistributive {
        o.check(!sd.k_semidistributive, "non-sd-replacement-shows", String::new);
    }

    let rep = verify_con_isomorphism(&ctx);
    o.check(is_distributive(all_congruences(k).carrier()), "con-distributive", String::new);
    if !rep.is_isomorphism() {
        let expected = classify("con-transfer-isomorphism", &ctx, manifest);
        o.violations.push((
            "con-transfer-isomorphism".to_owned(),
            format!(
                "|Con L| = {}, |Con K| = {}, well-defined={}, injective={}, surjective={}, missed={:?}",
                rep.con_origin, rep.con_k, rep.well_defined, rep.injective, rep.surjective, rep.missed
            ),
            expected,
        ));
    }
    o
}

/// Enumeration counts, distributivity of every Con, and the census facts for
/// semidistributive lattices: no Con is a 3-chain and only the 2-chain is
/// simple.
pub fn census_suite(max_size: usize) -> Result<VerificationReport> {
    check_size(max_size)?;
    let start = Instant::now();
    let mut outcomes = Vec::new();

    let levels = enumerate_up_to(max_size)?;
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    let two = chain(2)?;
    let mut o = Outcome::new(format!("enumeration 1..={max_size}"), &two);
    o.check(counts[..] == KNOWN_COUNTS[..max_size], "enumeration-counts", || format!("{counts:?}"));
    outcomes.push(o);

    let all = census(max_size, CensusPredicate::All)?;
    let mut o = Outcome::new(format!("census all ≤ {max_size}"), &two);
    o.check(all.all_con_distributive, "con-distributive", String::new);
    outcomes.push(o);

    let sd = census(max_size, CensusPredicate::Sd)?;
    let mut o = Outcome::new(format!("census sd ≤ {max_size}"), &two);
    o.check(sd.con_three_chain.is_empty(), "no-sd-con-three-chain", || sd.con_three_chain.join(", "));
    let only_two_chain = sd.simple.len() == 1 && levels[1].iter().any(|l| l.name() == sd.simple[0]);
    o.check(only_two_chain, "only-simple-sd-is-two-chain", || sd.simple.join(", "));
    o.check(sd.all_con_distributive, "con-distributive", String::new);
    outcomes.push(o);

    Ok(assemble(Suite::Census, max_size, start, outcomes))
}
