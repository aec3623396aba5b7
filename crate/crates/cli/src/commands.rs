//! Report builders for each subcommand. Each returns text lines, machine
//! records and, where the command produces one, a lattice.

use latcon_core::catalog::{self, describe_shape, is_chain, CensusPredicate};
use latcon_core::congruence::{simplicity, Simplicity};
use latcon_core::doubling::{check_boolean_embedding_with, mu_report};
use latcon_core::format::LatticeFile;
use latcon_core::glue::{check_glue_sd, find_isolated_intervals, isolated_interval, verify_con_isomorphism};
use latcon_core::iso::is_isomorphic;
use latcon_core::sd::{check_join_sd_filters, check_meet_sd_ideals, SdWitness};
use latcon_core::verify::{self, glue_divergence, Suite};
use latcon_core::{all_congruences, check_sd_direct, is_semidistributive, FiniteLattice, LatticeError, SdReport};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub struct Report {
    pub lines: Vec<String>,
    pub records: Vec<Value>,
    pub artifact: Option<FiniteLattice>,
    pub ok: bool,
}

impl Report {
    fn new(record: Value) -> Self {
        Report { lines: Vec::new(), records: vec![record], artifact: None, ok: true }
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

/// Combinator name for a congruence lattice, preferring `B_k` and then the
/// chain name.
pub fn shape_name(l: &FiniteLattice) -> Option<String> {
    let names = describe_shape(l);
    if is_chain(l) {
        let chain = format!("{}-chain", l.len());
        return Some(match names.iter().find(|n| is_pure_boolean(n)) {
            Some(b) => format!("{b} ({chain})"),
            None => chain,
        });
    }
    names.into_iter().next()
}

fn is_pure_boolean(name: &str) -> bool {
    name.strip_prefix("B_").is_some_and(|k| k.chars().all(|c| c.is_ascii_digit()))
}

fn con_phrase(l: &FiniteLattice) -> String {
    match shape_name(l) {
        Some(name) => format!("Con ≅ {name}"),
        None => format!("Con has {} elements, no named shape", l.len()),
    }
}

fn witness_text(l: &FiniteLattice, w: &SdWitness) -> String {
    format!("witness({},{},{})", l.element(w.x), l.element(w.y), l.element(w.z))
}

fn sd_phrase(l: &FiniteLattice, label: &str, ok: bool, witness: Option<&SdWitness>) -> String {
    match witness {
        Some(w) if !ok => format!("{label} ✗ {}", witness_text(l, w)),
        _ => format!("{label} {}", mark(ok)),
    }
}

fn shuffled(l: &FiniteLattice, seed: u64) -> FiniteLattice {
    let mut perm: Vec<usize> = (0..l.len()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n = l.len();
    let elements: Vec<String> = perm.iter().map(|&p| l.element(p).to_owned()).collect();
    let leq: Vec<bool> = (0..n * n).map(|c| l.leq(perm[c / n], perm[c % n])).collect();
    FiniteLattice::from_order(l.name(), elements, leq).expect("permuted lattice is a lattice")
}

pub fn check(l: &FiniteLattice, seed: u64) -> Report {
    let direct: SdReport = check_sd_direct(l);
    let ideals = check_meet_sd_ideals(l).0;
    let filters = check_join_sd_filters(l).0;
    let simple = simplicity(l);
    let intervals: Vec<(String, String)> =
        find_isolated_intervals(l).iter().map(|iv| (l.element(iv.a).to_owned(), l.element(iv.b).to_owned())).collect();

    let relabeled = shuffled(l, seed);
    let relabel_ok = is_isomorphic(l, &relabeled).is_some()
        && check_sd_direct(&relabeled).is_semidistributive() == direct.is_semidistributive()
        && all_congruences(&relabeled).len() == all_congruences(l).len();
    let criteria_agree = ideals == direct.meet_sd && filters == direct.join_sd;

    let interval_text: Vec<String> = intervals.iter().map(|(a, b)| format!("({a},{b})")).collect();
    let simple_text = match simple {
        Simplicity::Simple => "simple ✓",
        Simplicity::NotSimple => "simple ✗",
        Simplicity::Degenerate => "simple ✗ (one element)",
    };
    let mut r = Report::new(json!({
        "command": "check",
        "lattice": l.name(),
        "elements": l.len(),
        "valid": true,
        "meet_sd": direct.meet_sd,
        "join_sd": direct.join_sd,
        "meet_witness": direct.meet_witness.map(|w| [l.element(w.x), l.element(w.y), l.element(w.z)]),
        "join_witness": direct.join_witness.map(|w| [l.element(w.x), l.element(w.y), l.element(w.z)]),
        "ideal_criterion": ideals,
        "filter_criterion": filters,
        "simple": simple == Simplicity::Simple,
        "isolated_intervals": intervals,
        "relabeling_seed": seed,
        "relabeling_invariant": relabel_ok,
    }));
    r.lines.push(format!(
        "lattice ✓, {}, {}, {simple_text}, isolated intervals: [{}]",
        sd_phrase(l, "SD∧", direct.meet_sd, direct.meet_witness.as_ref()),
        sd_phrase(l, "SD∨", direct.join_sd, direct.join_witness.as_ref()),
        interval_text.join(", ")
    ));
    r.lines.push(format!("{}: {} elements, {} covers", l.name(), l.len(), l.covers().len()));
    r.lines.push(format!("ideal criterion SD∧ {}, filter criterion SD∨ {}", mark(ideals), mark(filters)));
    if !criteria_agree {
        r.lines.push("criteria disagree with the direct scan ✗".to_owned());
    }
    r.lines.push(format!("relabeling invariance {} (seed {seed})", mark(relabel_ok)));
    r.ok = criteria_agree && relabel_ok;
    r
}

pub fn con(l: &FiniteLattice) -> Report {
    let c = all_congruences(l);
    let rendered: Vec<String> = c.congruences().iter().map(|t| t.render(l)).collect();
    let mut r = Report::new(json!({
        "command": "con",
        "lattice": l.name(),
        "count": c.len(),
        "shape": shape_name(c.carrier()),
        "congruences": rendered,
        "carrier": LatticeFile::from_lattice(c.carrier()),
    }));
    let noun = if c.len() == 1 { "congruence" } else { "congruences" };
    r.lines.push(format!("{} {noun}, {}", c.len(), con_phrase(c.carrier())));
    r.lines.extend(rendered.iter().map(|s| format!("  {s}")));
    r.artifact = Some(c.carrier().clone());
    r
}

pub fn double(l: &FiniteLattice, elements: &[String]) -> Result<Report, LatticeError> {
    let d = latcon_core::double_antichain(l, elements)?;
    let k = &d.result;
    let con = all_congruences(k);
    let mut r = Report::new(Value::Null);
    let mut ok = true;
    r.lines.push(format!("{}: {} elements", k.name(), k.len()));

    let mut pairs = Vec::new();
    for pair in &d.doubled {
        let u = l.element(pair.origin);
        let cover = k.is_cover(pair.low, pair.high);
        let low_mi = k.is_meet_irreducible(pair.low);
        let high_ji = k.is_join_irreducible(pair.high);
        let mu = mu_report(&d, &con, u)?;
        ok &= cover && low_mi && high_ji && mu.holds() && mu.quotient_is_origin;
        r.lines.push(format!(
            "{u}.0 ≺ {u}.1 {}, {u}.0 meet-irreducible {}, {u}.1 join-irreducible {}",
            mark(cover),
            mark(low_mi),
            mark(high_ji)
        ));
        r.lines.push(format!(
            "μ_{u} = {}: atom {}, principal {}, quotient {}",
            mu.rendered,
            mark(mu.is_atom),
            mark(mu.equals_principal),
            mark(mu.quotient_is_origin)
        ));
        pairs.push(json!({ "element": u, "cover": cover, "low_meet_irreducible": low_mi, "high_join_irreducible": high_ji, "mu": mu }));
    }
    let violations = d.preservation_violations();
    ok &= violations.is_empty();
    r.lines.push(format!("meets and joins preserved {}", mark(violations.is_empty())));
    let sd_origin = is_semidistributive(l);
    let sd_result = is_semidistributive(k);
    if sd_origin {
        ok &= sd_result;
        r.lines.push(format!("SD preserved {}", mark(sd_result)));
    } else {
        r.lines.push(format!("origin not SD; result SD {}", mark(sd_result)));
    }
    r.lines.push(format!("{} congruences, {}", con.len(), con_phrase(con.carrier())));
    let emb = check_boolean_embedding_with(&d, &con);
    ok &= emb.embedding_holds();
    r.lines.push(format!(
        "μ-embedding: B_{} sublattice {} (image {} of {} congruences)",
        d.doubled.len(),
        mark(emb.embedding_holds()),
        emb.image_size,
        emb.con_size
    ));
    r.records = vec![json!({
        "command": "double",
        "lattice": l.name(),
        "doubled": d.doubled_names(),
        "result": LatticeFile::from_lattice(k),
        "pairs": pairs,
        "preservation_violations": violations,
        "origin_sd": sd_origin,
        "result_sd": sd_result,
        "con_size": con.len(),
        "con_shape": shape_name(con.carrier()),
        "embedding": emb,
        "ok": ok,
    })];
    r.artifact = Some(k.clone());
    r.ok = ok;
    Ok(r)
}

pub fn glue(l: &FiniteLattice, interval: &(String, String), f: &FiniteLattice) -> Result<Report, LatticeError> {
    let iv = isolated_interval(l, &interval.0, &interval.1)?;
    let ctx = latcon_core::glue(l, &iv, f)?;
    let k = &ctx.k;
    let sd = check_glue_sd(&ctx);
    let iso = verify_con_isomorphism(&ctx);
    let con_k = all_congruences(k);
    let divergence = if iso.is_isomorphism() { None } else { glue_divergence(&ctx) };
    let mut r = Report::new(Value::Null);
    r.lines.push(format!(
        "glued {} into {} of {}: {} has {} elements",
        ctx.replacement.name(),
        iv.describe(l),
        l.name(),
        k.name(),
        k.len()
    ));
    r.lines.push(format!(
        "K SD {}, {} SD {}, L SD {}",
        mark(sd.k_semidistributive),
        ctx.replacement.name(),
        mark(sd.replacement_semidistributive),
        mark(is_semidistributive(l))
    ));
    r.lines.push(format!(
        "congruence transfer isomorphism {}, {}",
        mark(iso.is_isomorphism()),
        con_phrase(con_k.carrier())
    ));
    if !iso.is_isomorphism() {
        r.lines.push(format!(
            "|Con L| = {}, |Con K| = {}, injective {}, surjective {}",
            iso.con_origin,
            iso.con_k,
            mark(iso.injective),
            mark(iso.surjective)
        ));
        match &divergence {
            Some(e) => r.lines.push(format!("expected divergence: {}", e.id)),
            None => r.lines.push("not covered by the expected-divergence manifest".to_owned()),
        }
    }
    let sd_ok = !(is_semidistributive(l) && sd.replacement_semidistributive) || sd.k_semidistributive;
    r.ok = sd_ok && (iso.is_isomorphism() || divergence.is_some());
    r.records = vec![json!({
        "command": "glue",
        "lattice": l.name(),
        "interval": [l.element(iv.a), l.element(iv.b)],
        "replacement": ctx.replacement.name(),
        "result": LatticeFile::from_lattice(k),
        "sd": sd,
        "transfer": iso,
        "con_shape": shape_name(con_k.carrier()),
        "expected_divergence": divergence.map(|e| e.id),
        "ok": r.ok,
    })];
    r.artifact = Some(k.clone());
    Ok(r)
}

pub fn catalog(name: Option<&str>) -> Result<Report, LatticeError> {
    match name {
        Some(name) => {
            let l = catalog::by_name(name)?;
            let mut r = Report::new(json!({ "command": "catalog", "lattice": LatticeFile::from_lattice(&l) }));
            r.artifact = Some(l);
            Ok(r)
        }
        None => {
            let mut r = Report::new(Value::Null);
            r.records.clear();
            for e in catalog::entries() {
                let l = (e.build)();
                r.lines.push(format!(
                    "{:<4} {:>2} elements  SD {}  isolated interval {}  {}",
                    e.name,
                    l.len(),
                    mark(e.semidistributive),
                    mark(e.has_isolated_interval),
                    serde_json::to_value(e.provenance).expect("provenance").as_str().unwrap_or_default()
                ));
                r.records.push(json!({
                    "command": "catalog",
                    "name": e.name,
                    "elements": l.len(),
                    "provenance": e.provenance,
                    "semidistributive": e.semidistributive,
                    "has_isolated_interval": e.has_isolated_interval,
                }));
            }
            r.lines.push("also: chain<k>, b<k>".to_owned());
            Ok(r)
        }
    }
}

fn member_list(members: &[String]) -> String {
    const SHOWN: usize = 4;
    if members.len() <= SHOWN {
        members.join(", ")
    } else {
        format!("{}, ... (+{})", members[..SHOWN].join(", "), members.len() - SHOWN)
    }
}

pub fn census(max_size: usize, predicate: CensusPredicate) -> Result<Report, LatticeError> {
    let rep = catalog::census(max_size, predicate)?;
    let mut r = Report::new(json!({ "command": "census", "report": &rep }));
    r.lines.push(format!(
        "census: predicate {}, max size {}: {} of {} lattices",
        serde_json::to_value(rep.predicate).expect("predicate").as_str().unwrap_or_default(),
        rep.max_size,
        rep.matched,
        rep.examined
    ));
    r.lines.push(format!("{:>5}  {:<22} {:>5}  members", "|Con|", "shape", "count"));
    for class in &rep.classes {
        let shape = class.con_shape.first().cloned().unwrap_or_else(|| "-".to_owned());
        r.lines.push(format!(
            "{:>5}  {:<22} {:>5}  {}",
            class.con_size,
            shape,
            class.count,
            member_list(&class.members)
        ));
    }
    let none = || "none".to_owned();
    r.lines.push(format!("simple: {}", if rep.simple.is_empty() { none() } else { rep.simple.join(", ") }));
    r.lines.push(format!(
        "Con ≅ 3-chain: {}",
        if rep.con_three_chain.is_empty() { none() } else { rep.con_three_chain.join(", ") }
    ));
    r.lines.push(format!("every Con distributive {}", mark(rep.all_con_distributive)));
    Ok(r)
}

pub fn verify(suite: Suite, max_size: usize, timings: bool) -> Result<Report, LatticeError> {
    let reports = verify::run(suite, max_size)?;
    let mut r = Report::new(Value::Null);
    r.records.clear();
    for rep in &reports {
        let expected = rep.expected_failures().count();
        let unexpected = rep.unexpected_failures().count();
        r.ok &= unexpected == 0;
        r.lines.push(format!(
            "suite {} (max size {}): {} instances, {} passed, {} failed ({} expected divergence, {} unexpected)",
            rep.suite,
            rep.max_size,
            rep.instances,
            rep.passes,
            rep.failures.len(),
            expected,
            unexpected
        ));
        for f in &rep.failures {
            match &f.expected {
                Some(id) => r.lines.push(format!("  expected divergence [{id}]: {} {}", f.instance, f.property)),
                None => r.lines.push(format!("  FAIL {} {}: {}", f.instance, f.property, f.witness)),
            }
        }
        if timings {
            r.lines.push(format!("  runtime {} ms", rep.runtime_ms));
        }
        let mut record = serde_json::to_value(rep).expect("report serializes");
        if !timings {
            record.as_object_mut().expect("object").remove("runtime_ms");
        }
        r.records.push(record);
    }
    Ok(r)
}
