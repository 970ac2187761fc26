use invdec_core::oracle::{brute_blocks, brute_decompositions, brute_decompositions_by_pairs};
use invdec_core::{all_blocks, all_permutations, sweep_verify, Check, Permutation, SweepOptions};

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn every_applicable_check_passes_up_to_six() {
    for n in 1..=6 {
        let checks = Check::applicable(n);
        let report = sweep_verify(
            n,
            &checks,
            SweepOptions {
                jobs: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(report.is_success(), "n = {n}: {report:?}");
        assert_eq!(report.checks.len(), checks.len());
    }
}

#[test]
fn cheap_checks_pass_at_seven() {
    let checks = Check::applicable(7);
    assert!(checks.iter().all(|c| c.max_n() >= 7));
    let report = sweep_verify(
        7,
        &checks,
        SweepOptions {
            jobs: 4,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(report.permutations_checked, 5040);
    assert!(report.is_success(), "{report:?}");
}

#[test]
fn sweep_examples() {
    let all = sweep_verify(3, &Check::applicable(3), SweepOptions::default()).unwrap();
    assert_eq!((all.permutations_checked, all.total_failures()), (6, 0));

    let bound = sweep_verify(4, &[Check::LengthBound], SweepOptions::default()).unwrap();
    assert_eq!(bound.checks["length-bound"].witnesses, [perm("3412")]);

    let count = sweep_verify(6, &[Check::CountVsBrute], SweepOptions::default()).unwrap();
    assert_eq!(
        (count.permutations_checked, count.total_failures()),
        (720, 0)
    );
}

#[test]
fn over_budget_is_rejected() {
    assert!(sweep_verify(7, &[Check::CountVsBrute], SweepOptions::default()).is_err());
    assert!(sweep_verify(0, &[Check::Blocks], SweepOptions::default()).is_err());
}

#[test]
fn brute_blocks_agree_through_seven() {
    assert_eq!(brute_blocks(&perm("2413")).len(), 5);
    assert_eq!(brute_blocks(&perm("3412")).len(), 7);
    assert_eq!(brute_blocks(&perm("123")).len(), 6);
    for n in 1..=7 {
        for p in all_permutations(n) {
            assert_eq!(brute_blocks(&p), all_blocks(&p), "{p}");
        }
    }
}

#[test]
fn pair_and_subset_brute_force_agree() {
    for n in 1..=5 {
        for p in all_permutations(n) {
            assert_eq!(
                brute_decompositions(&p).unwrap(),
                brute_decompositions_by_pairs(&p).unwrap(),
                "{p}"
            );
        }
    }
}

#[test]
fn report_json_is_deterministic() {
    let checks = Check::parse_selection("enumeration,multiplicative,edge-classes", 6).unwrap();
    let a = sweep_verify(
        6,
        &checks,
        SweepOptions {
            jobs: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let b = sweep_verify(
        6,
        &checks,
        SweepOptions {
            jobs: 5,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
