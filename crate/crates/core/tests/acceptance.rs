//! Acceptance criteria, one line of output per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the summary is always shown.
//! Set `INVDEC_LONG_TESTS=1` to extend the product-identity sweep to n = 6.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use invdec_core::oracle::{
    brute_decompositions, brute_strong_modules, three_part_partitions, tree_vertex_sets,
};
use invdec_core::{
    all_blocks, all_permutations, binomial_holds, binomial_imbalance, choices,
    connected_components, count_decompositions, decomposition_by_inflation,
    decomposition_from_classes, edge_classes_closure, edge_classes_structural,
    enumerate_decompositions, inversion_graph, is_block, is_decomposable, is_module,
    is_multiplicative, merge_parts, min_inversions_guarantee, multiplicative_witness,
    permutation_from_inversion_set, substitution_tree, vertex_vector, Error, Interval,
    InvDecomposition, PairSet, Permutation,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || {
        format!("took {:.1?}, limit {:?}", start.elapsed(), limit)
    })
}

fn counting_formula_vs_exhaustion() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=6 {
        for p in all_permutations(n) {
            let brute = brute_decompositions(&p).map_err(|e| e.to_string())?.len() as u128;
            let formula = count_decompositions(&p).map_err(|e| e.to_string())?;
            ensure(brute == formula, || {
                format!("{p}: formula {formula}, brute {brute}")
            })?;
            checked += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{checked} permutations, n = 3..6"))
}

fn edge_class_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=7 {
        for p in all_permutations(n) {
            let structural = edge_classes_structural(&p);
            let closure = edge_classes_closure(&inversion_graph(&p));
            ensure(structural.same_partition(&closure), || {
                format!("{p}: {structural:?} vs {closure:?}")
            })?;
            checked += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{checked} permutations, n <= 7"))
}

fn strong_blocks_are_strong_modules() -> Outcome {
    let start = Instant::now();
    let mut intervals = 0;
    for n in 1..=6 {
        for p in all_permutations(n) {
            let g = inversion_graph(&p);
            let brute = brute_strong_modules(&g).map_err(|e| e.to_string())?;
            let tree = tree_vertex_sets(&substitution_tree(&p));
            ensure(brute == tree, || {
                format!("{p}: brute {brute:?}, tree {tree:?}")
            })?;
            for lo in 1..=n {
                for hi in lo..=n {
                    let iv = Interval { lo, hi };
                    let set: Vec<usize> = iv.positions().collect();
                    let module = is_module(&g, &set).unwrap();
                    let block = is_block(&p, iv).unwrap();
                    ensure(module == block, || {
                        format!("{p} {iv}: module {module}, block {block}")
                    })?;
                    intervals += 1;
                }
            }
        }
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("S_1..S_6, {intervals} interval checks"))
}

fn worked_values() -> Outcome {
    let p = perm("2413");
    let expected = PairSet::from_pairs(4, [(1, 3), (2, 3), (2, 4)]).unwrap();
    ensure(*p.inversion_set() == expected, || {
        format!("T[2413] = {:?}", p.inversion_set())
    })?;
    let classes = edge_classes_structural(&p).len();
    ensure(classes == 1, || format!("2413 has {classes} edge classes"))?;
    ensure(!is_decomposable(&p), || "2413 reported decomposable".into())?;
    let lhs = [Permutation::identity(4), p];
    let rhs = [perm("2314"), perm("1423")];
    ensure(!binomial_holds(&lhs, &rhs).unwrap(), || {
        "binomial reported as holding".into()
    })?;
    let imbalance = binomial_imbalance(&lhs, &rhs).unwrap();
    ensure(imbalance == vec![((2, 3), 1, 2)], || {
        format!("imbalance {imbalance:?}")
    })?;
    let union = perm("2314")
        .inversion_set()
        .union(&perm("1423").inversion_set())
        .unwrap();
    ensure(union == expected, || "T[2314] ∪ T[1423] != T[2413]".into())?;
    Ok("T[2413] = {13,23,24}; one class; {2,3} duplicated".into())
}

fn multiplicative_theorem() -> Outcome {
    let start = Instant::now();
    let mut decomposable = 0;
    for n in 1..=7 {
        for p in all_permutations(n) {
            if !is_decomposable(&p) {
                ensure(multiplicative_witness(&p).is_none(), || {
                    format!("{p}: witness for non-decomposable")
                })?;
                continue;
            }
            decomposable += 1;
            let d = multiplicative_witness(&p).ok_or_else(|| format!("{p}: no witness"))?;
            InvDecomposition::new(&p, d.tau1.clone(), d.tau2.clone())
                .map_err(|e| format!("{p}: {e}"))?;
            let forward = d.tau1.compose(&d.tau2).unwrap() == p;
            let backward = d.tau2.compose(&d.tau1).unwrap() == p;
            ensure(forward || backward, || {
                format!("{p}: {d:?} does not multiply to p")
            })?;
        }
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("{decomposable} decomposable permutations, n <= 7"))
}

fn non_multiplicative_needs_run_of_four() -> Outcome {
    let mut hits = 0;
    for n in 1..=6 {
        for p in all_permutations(n) {
            if connected_components(&inversion_graph(&p)).len() != 1 {
                continue;
            }
            let non_mult =
                enumerate_decompositions(&p).any(|d| !is_multiplicative(&p, &d).unwrap());
            if non_mult {
                hits += 1;
                let run = p.longest_decreasing_run();
                ensure(run >= 4, || {
                    format!("{p}: non-multiplicative decomposition, run {run}")
                })?;
            }
        }
    }
    Ok(format!(
        "{hits} connected permutations with a non-multiplicative decomposition"
    ))
}

fn midpoint_identity() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        let v_id = vertex_vector(&Permutation::identity(n));
        for p in all_permutations(n) {
            let v_p = vertex_vector(&p);
            for d in enumerate_decompositions(&p) {
                let (v1, v2) = (vertex_vector(&d.tau1), vertex_vector(&d.tau2));
                for ((ij, a), (b, (c, e))) in v_id.entries().zip(
                    v_p.entries()
                        .map(|x| x.1)
                        .zip(v1.entries().map(|x| x.1).zip(v2.entries().map(|x| x.1))),
                ) {
                    ensure(a + b == c + e, || format!("{p} {d:?} at {ij:?}"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} decompositions"))
}

fn product_identity() -> Outcome {
    let max_n = if std::env::var_os("INVDEC_LONG_TESTS").is_some() {
        6
    } else {
        5
    };
    let mut pairs = 0u64;
    for n in 1..=max_n {
        let all: Vec<Permutation> = all_permutations(n).collect();
        for t1 in &all {
            let inv1 = t1.inversion_set();
            for t2 in &all {
                let lhs = t1.compose(t2).unwrap().inversion_set();
                let rhs = t2
                    .inversion_set()
                    .symmetric_difference(&inv1.apply_map(&t2.inverse()).unwrap())
                    .unwrap();
                ensure(*lhs == rhs, || format!("τ1 = {t1}, τ2 = {t2}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, n <= {max_n}"))
}

fn construction_equivalence() -> Outcome {
    let mut total = 0;
    for n in 1..=6 {
        for p in all_permutations(n) {
            let mut by_inflation = BTreeSet::new();
            for c in choices(&p) {
                match (
                    decomposition_by_inflation(&p, &c),
                    decomposition_from_classes(&p, &c),
                ) {
                    (Ok(a), Ok(b)) => {
                        ensure(a == b, || format!("{p} {c:?}: {a:?} vs {b:?}"))?;
                        by_inflation.insert(a);
                    }
                    (Err(Error::TrivialChoice), Err(Error::TrivialChoice)) => {}
                    (a, b) => return Err(format!("{p} {c:?}: {a:?} vs {b:?}")),
                }
            }
            let by_classes: BTreeSet<InvDecomposition> = enumerate_decompositions(&p).collect();
            ensure(by_inflation == by_classes, || format!("{p}: sets differ"))?;
            total += by_classes.len();
        }
    }
    Ok(format!("{total} decompositions, n <= 6"))
}

fn length_bound() -> Outcome {
    let mut covered = 0;
    for n in 5..=7 {
        let bound = min_inversions_guarantee(n);
        for p in all_permutations(n).filter(|p| p.inversion_count() >= bound) {
            ensure(is_decomposable(&p), || {
                format!("{p} has {} >= {bound} inversions", p.inversion_count())
            })?;
            covered += 1;
        }
    }
    let bound = min_inversions_guarantee(4);
    let flagged: Vec<Permutation> = all_permutations(4)
        .filter(|p| p.inversion_count() >= bound && count_decompositions(p).unwrap() == 0)
        .collect();
    ensure(flagged.contains(&perm("3412")), || {
        format!("n = 4 flags {flagged:?}")
    })?;
    let listed: Vec<String> = flagged.iter().map(|p| p.to_string()).collect();
    Ok(format!(
        "{covered} permutations at n = 5..7; n = 4 counterexamples: {listed:?}"
    ))
}

fn three_part_merges() -> Outcome {
    let mut partitions = 0;
    for n in 1..=5 {
        for p in all_permutations(n) {
            for parts in three_part_partitions(&p).map_err(|e| e.to_string())? {
                for i in 0..3 {
                    for j in 0..3 {
                        if i == j {
                            continue;
                        }
                        let merged = parts[i]
                            .inversion_set()
                            .union(&parts[j].inversion_set())
                            .unwrap();
                        ensure(merged.is_inversion_set(), || {
                            format!("{p}: {parts:?} merge {i},{j}")
                        })?;
                        merge_parts(&p, &parts, i, j).map_err(|e| format!("{p}: {e}"))?;
                    }
                }
                partitions += 1;
            }
        }
    }
    Ok(format!("{partitions} three-part partitions, n <= 5"))
}

fn round_trips() -> Outcome {
    let mut checked = 0;
    for n in 1..=7 {
        for p in all_permutations(n) {
            let tree = substitution_tree(&p);
            ensure(tree.to_permutation().as_ref() == Ok(&p), || {
                format!("{p}: tree round trip")
            })?;
            let back = permutation_from_inversion_set(&p.inversion_set()).unwrap();
            ensure(back == p, || {
                format!("{p}: inversion-set round trip gave {back}")
            })?;
            ensure(all_blocks(&p).contains(&Interval { lo: 1, hi: n }), || {
                format!("{p}: [1,n] missing")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} permutations, n <= 7"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (
            "AC1  counting formula vs exhaustion",
            counting_formula_vs_exhaustion,
        ),
        (
            "AC2  structural vs closure edge classes",
            edge_class_equivalence,
        ),
        (
            "AC3  strong blocks = strong modules; interval module iff block",
            strong_blocks_are_strong_modules,
        ),
        ("AC4  worked values for 2413", worked_values),
        ("AC5  multiplicative witness", multiplicative_theorem),
        (
            "AC6  non-multiplicative implies decreasing run of 4",
            non_multiplicative_needs_run_of_four,
        ),
        ("AC7  midpoint identity", midpoint_identity),
        ("AC8  product identity over ordered pairs", product_identity),
        (
            "AC9  inflation = edge-class construction",
            construction_equivalence,
        ),
        ("AC10 length bound", length_bound),
        ("AC11 three-part merges", three_part_merges),
        ("AC12 round trips", round_trips),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {name} ({detail}; {:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
