//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` cannot be met as stated. Their
//! line still prints FAIL; the test then requires that they fail for the
//! recorded reason and that every other criterion passes.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use paracons::analysis::{matrix_logic, FragmentConfig};
use paracons::reproduce::{reproduce, ReproduceOptions};
use paracons::structure::{builtin, MatrixStructure, SetStructure, Structure};
use paracons_core::classify::{
    check_bot_paraconsistency, THEOREM_FUSION_ELIM, check_ecq, check_nf_paraconsistency, check_nff_paraconsistency, validate_fusion_elim,
    validate_fusion_intro,
};
use paracons_core::formulas::{Formula, Signature};
use paracons_core::logic::{Logic, Status};
use paracons_core::matrix::wk_algebra;
use paracons_core::quasineg::{kite_property_suite, qn_set, replay_kite_countermodel, KiteProperty};
use paracons_core::search::{
    all_structures, enumerate_structures, random_structures, theorem_sweep, with_threads, SearchMode,
    StructurePredicate,
};
use paracons_core::structures::{Carrier, ConsequenceMap, ConsequenceProvider, ElementSet, QConsequenceTable};

/// Criterion number and the part of it that cannot hold.
const KNOWN_UNATTAINABLE: &[(usize, &str)] = &[(3, "⋏E for ∧ in PWK")];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok: impl Into<String>) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok.into() }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn within(failures: &mut Vec<String>, started: Instant, limit: Duration) -> String {
    let t = started.elapsed();
    if t > limit {
        failures.push(format!("took {t:.2?}, limit {limit:?}"));
    }
    format!("{t:.2?}")
}

fn set(name: &str) -> SetStructure {
    match builtin(name).unwrap() {
        Some(Structure::Set(s)) => s,
        _ => panic!("{name} is not a set structure"),
    }
}

fn matrix(name: &str) -> MatrixStructure {
    match builtin(name).unwrap() {
        Some(Structure::Matrix(m)) => m,
        _ => panic!("{name} is not a matrix structure"),
    }
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let report = reproduce(&ReproduceOptions { only: vec!["nf-examples".into()], ..Default::default() }).unwrap();
    for item in report.items.iter().filter(|i| !i.pass) {
        failures.push(format!("{} did not pass", item.id));
    }
    // claims read straight off the consequence operators: premises ⊬ conclusions
    let claims: [(&str, &[&str], &[&str]); 7] = [
        ("poset-1", &["1", "0"], &["0", "2"]),
        ("poset-1", &["1", "2"], &["0", "1", "2"]),
        ("poset-1-dual", &["0", "1"], &["1", "2"]),
        ("poset-2", &["0", "2"], &["0", "1"]),
        ("poset-2", &["1", "2"], &["0", "1"]),
        ("poset-2-dual", &["0", "2"], &["0", "1"]),
        ("poset-2-dual", &["1", "2"], &["0", "1"]),
    ];
    for (name, gamma, not) in claims {
        let p = set(name).provider;
        let c = p.carrier().clone();
        let cons = p.consequences(c.set_of(gamma).unwrap()).unwrap();
        for x in not {
            if cons.contains(c.index_of(x).unwrap()) {
                failures.push(format!("{name}: {{{}}} ⊢ {x}", gamma.join(",")));
            }
        }
    }
    for name in ["poset-1", "poset-1-dual", "poset-2", "poset-2-dual"] {
        let laws = set(name).provider.laws().unwrap();
        if laws.reflexive || laws.monotone {
            failures.push(format!("{name} is reflexive or monotone"));
        }
    }
    if !check_nf_paraconsistency(&set("purely-reflexive-3").provider).unwrap().holds() {
        failures.push("purely reflexive on three elements is not NF-paraconsistent".into());
    }
    let t = within(&mut failures, started, Duration::from_secs(1));
    outcome(failures, format!("{} example items and 7 non-entailments confirmed in {t}", report.items.len()))
}

fn criterion_2() -> Outcome {
    // printed tables, rows and columns in the order 0, ω, 1
    const AND: [[&str; 3]; 3] = [["0", "ω", "0"], ["ω", "ω", "ω"], ["0", "ω", "1"]];
    const OR: [[&str; 3]; 3] = [["0", "ω", "1"], ["ω", "ω", "ω"], ["1", "ω", "1"]];
    const NOT: [&str; 3] = ["1", "ω", "0"];
    let a = wk_algebra();
    let sig = a.signature();
    let id = |tok: &str| sig.find(tok).unwrap();
    let el = |name: &str| a.index_of(name).unwrap();
    let order = ["0", "ω", "1"];
    let mut failures = Vec::new();
    let mut entries = 0;
    for (tok, table) in [("∧", AND), ("∨", OR)] {
        for (i, row) in table.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                entries += 1;
                if a.element(a.apply(id(tok), &[el(order[i]), el(order[j])])) != *want {
                    failures.push(format!("{} {tok} {}", order[i], order[j]));
                }
            }
        }
    }
    for (i, want) in NOT.iter().enumerate() {
        entries += 1;
        if a.element(a.apply(id("¬"), &[el(order[i])])) != *want {
            failures.push(format!("¬{}", order[i]));
        }
    }
    // brute-force infectiousness: x absorbs every argument position
    let infectious: Vec<&str> = (0..3)
        .filter(|&x| {
            (0..3).all(|y| {
                a.apply(id("∧"), &[x, y]) == x
                    && a.apply(id("∧"), &[y, x]) == x
                    && a.apply(id("∨"), &[x, y]) == x
                    && a.apply(id("∨"), &[y, x]) == x
            }) && a.apply(id("¬"), &[x]) == x
        })
        .map(|x| a.element(x))
        .collect();
    if infectious != ["ω"] {
        failures.push(format!("infectious elements {infectious:?}"));
    }
    let found: Vec<&str> = a.find_infectious().elements.iter().map(|&e| a.element(e)).collect();
    if found != infectious {
        failures.push(format!("find_infectious reports {found:?}"));
    }
    outcome(failures, format!("{entries} entries match; ω is the only infectious element"))
}

fn criterion_3() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let cfg = FragmentConfig::default();
    let pwk = matrix("pwk");
    let mc = matrix_logic(&pwk, cfg).unwrap();
    let and = pwk.fusion.as_ref().unwrap();
    let ecq = check_ecq(&mc, pwk.negation.as_ref().unwrap()).unwrap();
    if ecq.status != Status::Fails || !ecq.replay(&mc).unwrap() {
        failures.push(format!("ECQ {} (replayed {:?})", ecq.status, ecq.replay(&mc).ok()));
    }
    let nff = check_nff_paraconsistency(&mc, and).unwrap();
    let note = nff.lines(&mc).join(" ");
    if nff.status != Status::Holds || !note.contains("infectious designated") || !nff.replay(&mc).unwrap() {
        failures.push(format!("NFF {}: {note}", nff.status));
    }
    let pwk0 = matrix("pwk0");
    let mc0 = matrix_logic(&pwk0, cfg).unwrap();
    let bot = check_bot_paraconsistency(&mc0, pwk0.bottom.as_ref().unwrap()).unwrap();
    if bot.status != Status::Fails {
        failures.push(format!("pwk0 ⊥-paraconsistency {}", bot.status));
    }
    let nf0 = check_nf_paraconsistency(&mc0).unwrap();
    if nf0.status != Status::Fails {
        failures.push(format!("pwk0 NF-paraconsistency {}", nf0.status));
    }
    let intro = validate_fusion_intro(&mc, and).unwrap();
    if intro.status != Status::Holds {
        failures.push(format!("⋏I for ∧ in PWK {}", intro.status));
    }
    let elim = validate_fusion_elim(&mc, and).unwrap();
    if elim.status != Status::Holds {
        let replayed = elim.replay(&mc).unwrap();
        failures.push(format!(
            "⋏E for ∧ in PWK {} ({}, replayed {replayed})",
            elim.status,
            elim.lines(&mc).last().cloned().unwrap_or_default()
        ));
    }
    let t = within(&mut failures, started, Duration::from_secs(5));
    outcome(failures, format!("ECQ fails, NFF holds, pwk0 explodes from 0, ⋏I and ⋏E hold ({t})"))
}

fn criterion_4() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut maps = all_structures(2, false).unwrap();
    let reflexive = maps.iter().filter(|m| m.table().iter().enumerate().all(|(g, c)| ElementSet(g as u64).is_subset(*c))).count();
    if maps.len() != 256 || reflexive != 16 {
        failures.push(format!("{} tables, {reflexive} reflexive", maps.len()));
    }
    maps.extend(random_structures(3, 1, 0.5, 1000).unwrap());
    let report = theorem_sweep(&maps).unwrap();
    for v in report.violations.iter().take(5) {
        failures.push(format!("structure {} [{}]: {} ({})", v.structure, v.operators, v.check.theorem, v.check.detail));
    }
    if report.structures != 1256 {
        failures.push(format!("{} structures swept", report.structures));
    }
    let t = within(&mut failures, started, Duration::from_secs(60));
    let mut applicable: Vec<String> = report.applicable.iter().map(|(k, n)| format!("{n}×{k}")).collect();
    if report.applicable_count(THEOREM_FUSION_ELIM) == 0 {
        applicable.push("none for the ⋏E lemma".into());
    }
    outcome(
        failures,
        format!("256 tables on two elements and 1000 random on three, zero violations in {t}; applicable instances: {}", applicable.join(", ")),
    )
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let pred: StructurePredicate = "reflexive,nf_paraconsistent".parse().unwrap();
    let run = |threads: usize| {
        with_threads(threads, || {
            let n2 = enumerate_structures(2, &pred, SearchMode::Exhaustive, 5).unwrap();
            let n3 = enumerate_structures(3, &pred, SearchMode::Exhaustive, 5).unwrap();
            (serde_json::to_string(&n2).unwrap(), serde_json::to_string(&n3).unwrap(), n2.count, n3.count, n3.witnesses)
        })
        .unwrap()
    };
    let one = run(1);
    let four = run(4);
    if one.2 != 0 {
        failures.push(format!("{} witnesses on two elements", one.2));
    }
    if one.3 == 0 {
        failures.push("no witness on three elements".into());
    }
    for w in &one.4 {
        let p = ConsequenceProvider::Explicit(w.to_map());
        if !p.laws().unwrap().reflexive || !check_nf_paraconsistency(&p).unwrap().holds() {
            failures.push(format!("witness #{} does not re-validate", w.index));
        }
    }
    if (one.0.as_str(), one.1.as_str()) != (four.0.as_str(), four.1.as_str()) {
        failures.push("results differ between one and four threads".into());
    }
    outcome(failures, format!("none on two elements, {} of 4096 on three; identical with 1 and 4 threads", one.3))
}

/// Truth-table evaluation of a boolean2 formula, keyed on connective names.
fn classical(f: &Formula, sig: &Signature, v: &[bool]) -> bool {
    match f {
        Formula::Var(i) => v[*i],
        Formula::App(c, args) => {
            let x: Vec<bool> = args.iter().map(|a| classical(a, sig, v)).collect();
            match sig.get(*c).name.as_str() {
                "∧" => x[0] && x[1],
                "∨" => x[0] || x[1],
                "¬" => !x[0],
                other => panic!("unexpected connective {other}"),
            }
        }
    }
}

fn criterion_6() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let cfg = FragmentConfig::default();
    let b2 = matrix_logic(&matrix("boolean2"), cfg).unwrap();
    let kite = kite_property_suite(&b2).unwrap();
    for p in KiteProperty::ALL {
        if kite.status(p) != Status::Holds {
            failures.push(format!("boolean2 ({}) {}", p.number(), kite.status(p)));
        }
    }
    let g3 = matrix_logic(&matrix("godel3"), cfg).unwrap();
    let kite = kite_property_suite(&g3).unwrap();
    for r in &kite.results {
        let expected = if r.property == KiteProperty::ClassicalDoubleNegation { Status::Fails } else { Status::Holds };
        if r.status != expected {
            failures.push(format!("godel3 ({}) {}", r.property.number(), r.status));
        }
        if let Some(cx) = &r.countermodel {
            if !replay_kite_countermodel(&g3, r.property, cx).unwrap() {
                failures.push(format!("godel3 ({}) countermodel does not replay", r.property.number()));
            }
        } else if r.status == Status::Fails {
            failures.push(format!("godel3 ({}) fails without a countermodel", r.property.number()));
        }
    }
    // {α, β} trivializes classically iff α ∧ β is unsatisfiable
    let sig = b2.matrix().signature().clone();
    let universe = b2.fragment().formulas().to_vec();
    let vals: Vec<[bool; 2]> = vec![[false, false], [false, true], [true, false], [true, true]];
    let mut pairs = 0usize;
    for alpha in &universe {
        let q: BTreeSet<&Formula> = {
            let s = qn_set(&b2, alpha, &universe).unwrap();
            s.members.iter().map(|m| universe.iter().find(|u| *u == m).unwrap()).collect()
        };
        for beta in &universe {
            pairs += 1;
            let unsat = !vals.iter().any(|v| classical(alpha, &sig, v) && classical(beta, &sig, v));
            if unsat != q.contains(beta) && failures.len() < 8 {
                failures.push(format!(
                    "QN disagreement at {} / {}",
                    alpha.display(&sig),
                    beta.display(&sig)
                ));
            }
        }
    }
    let t = within(&mut failures, started, Duration::from_secs(30));
    outcome(failures, format!("kite as expected; QN agrees with truth tables on {pairs} pairs ({t})"))
}

fn criterion_7() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut accepted = 0u64;
    let mut proper = 0u64;
    for n in 1..=3usize {
        let carrier = Carrier::of_size(n).unwrap();
        let subsets = 1usize << n;
        let full = subsets - 1;
        let total = subsets.pow(subsets as u32);
        let mut table = vec![0usize; subsets];
        for code in 0..total {
            let mut c = code;
            for w in table.iter_mut() {
                *w = c % subsets;
                c /= subsets;
            }
            let monotone = (0..subsets).all(|g| (0..subsets).all(|s| g & !s != 0 || table[g] & !table[s] == 0));
            let weak_idem = (0..subsets).all(|g| table[g | table[g]] == table[g]);
            let q = QConsequenceTable::new(carrier.clone(), table.iter().map(|&w| ElementSet(w as u64)).collect());
            if q.is_ok() != (monotone && weak_idem) {
                failures.push(format!("n={n}: validator disagrees on {table:?}"));
                continue;
            }
            let Ok(q) = q else { continue };
            accepted += 1;
            if table[full] == full {
                continue;
            }
            proper += 1;
            let nf_oracle = (0..n).any(|a| (0..n).all(|b| table[(1 << a) | (1 << b)] != full));
            let map = ConsequenceMap::new(carrier.clone(), q.table().to_vec()).unwrap();
            let nf = check_nf_paraconsistency(&ConsequenceProvider::Explicit(map)).unwrap();
            if !nf.holds() || !nf_oracle {
                failures.push(format!("n={n}: W(L) ⊊ L but not NF-paraconsistent: {table:?}"));
            }
        }
        if failures.len() > 8 {
            break;
        }
    }
    let t = within(&mut failures, started, Duration::from_secs(300));
    outcome(
        failures,
        format!("all tables up to three elements: {accepted} accepted, {proper} with W(L) ⊊ L, all NF-paraconsistent ({t})"),
    )
}

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_paracons");
    let once = || Command::new(bin).args(["reproduce-paper", "--json"]).output().unwrap();
    let (a, b) = (once(), once());
    let mut failures = Vec::new();
    if a.status.code() != Some(0) || b.status.code() != Some(0) {
        failures.push(format!("exit codes {:?} and {:?}", a.status.code(), b.status.code()));
    }
    if a.stdout != b.stdout || a.stdout.is_empty() {
        failures.push("reports differ".into());
    }
    outcome(failures, format!("two full runs, {} identical bytes", a.stdout.len()))
}

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (n, f) in criteria {
        let o = f();
        // written to stderr directly so the line shows without --nocapture
        let _ = writeln!(
            std::io::stderr(),
            "criterion {n}: {} - {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        match KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == n) {
            Some((_, reason)) => {
                if o.pass || !o.detail.starts_with(reason) || o.detail.contains("; ") {
                    unexpected.push(format!("criterion {n} was expected to fail only on {reason}"));
                }
            }
            None if !o.pass => unexpected.push(format!("criterion {n} failed")),
            None => {}
        }
    }
    assert!(unexpected.is_empty(), "{unexpected:?}");
}
