//! Acceptance suite. One test per criterion; each prints a single
//! `criterion N: PASS|FAIL` line (visible with `--nocapture`).

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cdlattice::corpus::default_corpus;
use cdlattice::theorems::{self, Outcome};
use cdlattice::{
    all_subgroups, construct, derived_subgroup, is_nilpotent, parse_spec, quotient, ExtraspecialType, Group,
    GroupAnalysis, GroupSpec, Limits, SubgroupLattice,
};

fn limits() -> Limits {
    Limits::default()
}

fn group(s: &str) -> Group {
    construct(&parse_spec(s).unwrap(), &limits()).unwrap()
}

fn analysis(s: &str) -> GroupAnalysis {
    GroupAnalysis::new(&group(s), &limits()).unwrap()
}

fn corpus_groups() -> Vec<(String, Group)> {
    default_corpus()
        .iter()
        .map(|s| (s.to_string(), construct(s, &limits()).unwrap()))
        .collect()
}

fn is_prime_power(n: usize) -> bool {
    cdlattice::arith::prime_power(n as u64).is_some()
}

fn finish(n: u32, title: &str, start: Instant, bound: Duration, failures: &[String]) {
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < bound;
    println!(
        "criterion {n}: {} ({:.2} s, bound {} s) {title}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        bound.as_secs()
    );
    for f in failures {
        println!("  - {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
    assert!(elapsed < bound, "criterion {n} took {elapsed:?}, bound {bound:?}");
}

fn sorted_member_sets<'a>(it: impl Iterator<Item = &'a cdlattice::Subgroup>) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = it.map(|h| h.members().collect()).collect();
    v.sort();
    v
}

#[test]
fn criterion_1_small_interval_examples() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for s in ["D(4)", "Q(2)"] {
        let a = analysis(s);
        if !a.cd_equals_interval() {
            failures.push(format!("{s}: CD differs from the interval"));
        }
        let cd = a.cd_lattice();
        if cd.len() != 5 || cd.length() != 2 {
            failures.push(format!("{s}: {} nodes, length {}", cd.len(), cd.length()));
        }
    }
    for (name, g) in corpus_groups().into_iter().filter(|(_, g)| g.is_abelian()) {
        let a = GroupAnalysis::new(&g, &limits()).unwrap();
        if !a.cd_equals_interval() {
            failures.push(format!("{name}: abelian but CD differs from the interval"));
        }
    }
    finish(1, "D8, Q8 and abelian groups", start, Duration::from_secs(1), &failures);
}

#[test]
fn criterion_2_extraspecial() {
    use ExtraspecialType::*;
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = [
        (2, 1, Plus),
        (2, 1, Minus),
        (3, 1, ExponentP),
        (3, 1, ExponentP2),
        (5, 1, ExponentP),
        (2, 2, Plus),
        (2, 2, Minus),
    ];
    for (p, n, kind) in cases {
        let spec = GroupSpec::Extraspecial { p, n, kind };
        let g = construct(&spec, &limits()).unwrap();
        let a = GroupAnalysis::new(&g, &limits()).unwrap();
        let p = p as usize;
        let z = a.center();
        let q = quotient(&g, z).unwrap().group;
        let elementary =
            q.is_abelian() && q.order() == p.pow(2 * n) && q.elements().skip(1).all(|x| q.element_order(x) == p);
        let cd = a.cd_lattice();
        let checks = [
            ("CD equals interval", a.cd_equals_interval()),
            ("CD modular", cd.is_modular().unwrap_or(false)),
            ("length 2n", cd.length() == 2 * n as usize),
            ("G/Z elementary abelian of order p^(2n)", elementary),
            ("G' = Z", derived_subgroup(&g) == *z),
            ("|Z| = p", z.size() == p),
        ];
        for (what, ok) in checks {
            if !ok {
                failures.push(format!("{spec}: {what}"));
            }
        }
        let r = theorems::check_extraspecial_group(&a, p as u32, n).unwrap();
        if r.outcome != Outcome::Pass {
            failures.push(r.to_line());
        }
    }
    finish(2, "extraspecial groups", start, Duration::from_secs(30), &failures);
}

#[test]
fn criterion_3_pgroup_criterion() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for (name, g) in corpus_groups() {
        if g.order() == 1 || !is_prime_power(g.order()) {
            continue;
        }
        let a = GroupAnalysis::new(&g, &limits()).unwrap();
        let lhs = a.cd_equals_interval();
        let rhs = theorems::modular_cyclic_condition(&a).unwrap();
        if lhs != rhs {
            failures.push(format!("{name}: CD = interval is {lhs}, condition is {rhs}"));
        }
        if lhs {
            positives.push(name);
        } else {
            negatives.push(name);
        }
    }
    for s in [
        "D(4)",
        "Q(2)",
        "M(2,4)",
        "ES(2,1,+)",
        "ES(2,2,-)",
        "ES(3,1,p)",
        "ES(5,1,p)",
        "Ab(2,4)",
        "C(8)",
    ] {
        if !positives.iter().any(|p| p == s) {
            failures.push(format!("{s} expected on the positive side"));
        }
    }
    for s in ["D(8)", "D(16)", "SD(4)", "Q(4)"] {
        if !negatives.iter().any(|p| p == s) {
            failures.push(format!("{s} expected on the negative side"));
        }
    }
    finish(3, "p-group criterion", start, Duration::from_secs(60), &failures);
}

#[test]
fn criterion_4_structure_theorem() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let forward = [
        (vec!["Q(2)"], "C(3)", "Q(2) x C(3)", 24),
        (vec!["D(4)"], "C(9)", "D(4) x C(9)", 72),
        (vec!["D(4)", "Heis(3)"], "C(1)", "D(4) x Heis(3)", 216),
    ];
    for (factors, abelian, whole, order) in forward {
        let factors: Vec<GroupSpec> = factors.iter().map(|s| parse_spec(s).unwrap()).collect();
        let r = theorems::check_structure_forward(&factors, &parse_spec(abelian).unwrap(), &limits()).unwrap();
        if r.outcome != Outcome::Pass {
            failures.push(r.to_line());
        }
        let a = analysis(whole);
        if a.group().order() != order || !a.cd_equals_interval() {
            failures.push(format!(
                "{whole}: order {}, cd = interval {}",
                a.group().order(),
                a.cd_equals_interval()
            ));
        }
    }
    let mut converse = 0;
    for (name, g) in corpus_groups() {
        let a = GroupAnalysis::new(&g, &limits()).unwrap();
        if !a.cd_equals_interval() {
            continue;
        }
        converse += 1;
        match theorems::check_structure_converse(&a, &limits()) {
            Ok(r) if r.outcome == Outcome::Pass => {}
            Ok(r) => failures.push(r.to_line()),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if converse < 20 {
        failures.push(format!("only {converse} groups exercised the converse"));
    }
    finish(
        4,
        "structure theorem, both directions",
        start,
        Duration::from_secs(120),
        &failures,
    );
}

#[test]
fn criterion_5_corollaries() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (name, g) in corpus_groups() {
        let a = GroupAnalysis::new(&g, &limits()).unwrap();
        if a.cd_equals_interval() {
            if !is_nilpotent(&g) {
                failures.push(format!("{name}: CD = interval but not nilpotent"));
            }
            let len = a.cd_lattice().length();
            if !len.is_multiple_of(2) {
                failures.push(format!("{name}: odd length {len}"));
            }
        }
        if g.order() > 1 && a.cd_equals_full_lattice() {
            failures.push(format!("{name}: CD(G) = L(G)"));
        }
    }
    for s in ["D(4)", "Q(2)", "ES(3,1,p)", "ES(3,1,p2)", "M(2,4)", "Q(2) x C(3)"] {
        let a = analysis(s);
        match theorems::check_subgroup_inheritance(&a, &limits()) {
            Ok(r) if r.outcome == Outcome::Pass => {}
            Ok(r) => failures.push(r.to_line()),
            Err(e) => failures.push(format!("{s}: {e}")),
        }
    }
    for s in ["D(4)", "Q(2)", "M(2,4)"] {
        let a = analysis(s);
        let index = a.group().order() / a.center().size();
        if index != 4 {
            failures.push(format!("{s}: (G:Z(G)) = {index}"));
        }
        match theorems::check_center_index(&a) {
            Ok(r) if r.outcome == Outcome::Pass => {}
            other => failures.push(format!("{s}: {other:?}")),
        }
    }
    finish(
        5,
        "corollaries and center index",
        start,
        Duration::from_secs(60),
        &failures,
    );
}

/// Subgroups by testing every subset for closure.
fn brute_force_subgroups(g: &Group) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let closed = (0..n).filter(|&x| mask >> x & 1 == 1).all(|x| {
            (0..n)
                .filter(|&y| mask >> y & 1 == 1)
                .all(|y| mask >> g.mul(x, y) & 1 == 1)
        });
        if closed {
            out.push((0..n).filter(|&x| mask >> x & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

#[test]
fn criterion_6_oracles() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (name, g) in corpus_groups() {
        let subs = all_subgroups(&g, &limits()).unwrap();
        if g.order() <= 16 {
            let expected = brute_force_subgroups(&g);
            if sorted_member_sets(subs.iter()) != expected {
                failures.push(format!(
                    "{name}: {} subgroups, brute force {}",
                    subs.len(),
                    expected.len()
                ));
            }
        }
        let a = GroupAnalysis::new(&g, &limits()).unwrap();
        for (h, &m) in a.subgroups().iter().zip(a.measures()) {
            let centralizing = g
                .elements()
                .filter(|&x| h.members().all(|y| g.mul(x, y) == g.mul(y, x)))
                .count();
            if m != (h.size() * centralizing) as u64 {
                failures.push(format!("{name}: measure {m} for a subgroup of order {}", h.size()));
            }
        }
        if is_prime_power(g.order()) && g.order() > 1 {
            let one = theorems::modular_cyclic_condition(&a).unwrap();
            let two = theorems::commutator_power_condition(&g).unwrap();
            if one != two {
                failures.push(format!("{name}: conditions disagree ({one} vs {two})"));
            }
        }
    }
    finish(6, "independent oracles", start, Duration::from_secs(60), &failures);
}

#[test]
fn criterion_7_direct_products() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (l, r, nodes) in [("D(4)", "D(4)", 25), ("Q(2)", "C(3)", 5)] {
        let (left, right) = (group(l), group(r));
        let dp = left.direct_product(&right, &limits()).unwrap();
        let whole = GroupAnalysis::new(&dp.group, &limits()).unwrap();
        let cd_l = GroupAnalysis::new(&left, &limits()).unwrap().cd_lattice();
        let cd_r = GroupAnalysis::new(&right, &limits()).unwrap().cd_lattice();
        let product = SubgroupLattice::product(&dp, &cd_l, &cd_r).unwrap();
        let actual = sorted_member_sets(whole.cd_indices().iter().map(|&i| &whole.subgroups()[i]));
        let expected = sorted_member_sets(product.nodes().iter());
        if actual != expected || actual.len() != nodes {
            failures.push(format!(
                "{l} x {r}: CD has {} nodes, product of CD lattices {}, expected {nodes}",
                actual.len(),
                expected.len()
            ));
        }
    }
    finish(
        7,
        "direct-product decomposition",
        start,
        Duration::from_secs(30),
        &failures,
    );
}

fn cdlat(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_cdlat")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn criterion_8_cli_contract() {
    let start = Instant::now();
    let mut failures = Vec::new();

    for spec in default_corpus() {
        let text = spec.to_string();
        match parse_spec(&text) {
            Ok(back) if back == spec => {}
            other => failures.push(format!("{text}: round trip gave {other:?}")),
        }
    }

    let repeated: &[&[&str]] = &[
        &["info", "D(4) x C(3)"],
        &["--format", "json", "info", "Q(2)"],
        &["subgroups", "S(4)"],
        &["--format", "json", "cd", "D(4)"],
        &["--format", "dot", "lattice", "Q(2) x C(3)", "--which", "full"],
        &["verify", "ES(2,2,-)"],
        &["--format", "json", "corpus"],
    ];
    for args in repeated {
        let (c1, o1) = cdlat(args);
        let (c2, o2) = cdlat(args);
        if c1 != 0 || c1 != c2 || o1 != o2 || o1.is_empty() {
            failures.push(format!("{args:?}: codes {c1}/{c2}, outputs identical {}", o1 == o2));
        }
    }

    let codes: &[(&[&str], i32)] = &[
        (&["cd", "D(4)"], 0),
        (&["verify", "S(3)"], 0),
        (&["cd", "D(4"], 2),
        (&["cd", "Q(1)"], 2),
        (&["--bogus", "cd", "D(4)"], 2),
        (&["--format", "dot", "info", "D(4)"], 2),
        (&["cd", "S(7)"], 3),
        (&["--max-order", "16", "cd", "C(20)"], 3),
        (&["cd", "CP(D(4),C(4))"], 4),
    ];
    for (args, want) in codes {
        let (got, _) = cdlat(args);
        if got != *want {
            failures.push(format!("{args:?}: exit {got}, expected {want}"));
        }
    }

    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [&["cd", "D(4"][..], &["--bogus", "cd", "D(4)"], &["cd", "S(7)"]]
        .iter()
        .enumerate()
    {
        let path = dir.path().join(format!("out{i}.txt"));
        let mut full = vec!["-o", path.to_str().unwrap()];
        full.extend_from_slice(args);
        let (code, _) = cdlat(&full);
        if code == 0 || Path::new(&path).exists() {
            failures.push(format!("{args:?}: exit {code}, file left behind {}", path.exists()));
        }
    }
    let path = dir.path().join("ok.json");
    let (code, stdout) = cdlat(&["--format", "json", "-o", path.to_str().unwrap(), "cd", "D(4)"]);
    let (_, direct) = cdlat(&["--format", "json", "cd", "D(4)"]);
    if code != 0 || !stdout.is_empty() || std::fs::read(&path).ok() != Some(direct) {
        failures.push("writing to a file differs from stdout".into());
    }

    finish(8, "CLI contract", start, Duration::from_secs(5), &failures);
}
