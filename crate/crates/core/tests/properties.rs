use magic_completion::oracle::suite::format_reports;
use magic_completion::oracle::{run_verification_suite_with_jobs, Scope};
use magic_completion::params::{eligible_magic, enumerate_admissible, ParameterTuple};

#[test]
fn every_delta3_tuple_passes_the_exhaustive_sweep() {
    for entry in enumerate_admissible(3).unwrap() {
        for m in eligible_magic(&entry.params).unwrap() {
            let reports =
                run_verification_suite_with_jobs(&entry.params, m, Scope::Exhaustive(4), 4)
                    .unwrap();
            assert!(
                reports.iter().all(|r| r.passed()),
                "({}) M={m}\n{}",
                entry.params,
                format_reports(&reports)
            );
            assert_eq!(reports[0].instances, 4096);
        }
    }
}

#[test]
fn randomized_sweep_for_the_extremal_class() {
    let p = ParameterTuple::new(5, 3, 3, 16, 13);
    let reports = run_verification_suite_with_jobs(
        &p,
        3,
        Scope::Randomized {
            count: 1000,
            seed: 1,
        },
        4,
    )
    .unwrap();
    let text = format_reports(&reports);
    assert!(reports.iter().all(|r| r.passed()), "{text}");
    assert!(reports[1].counter("clause-iib") > 0, "{text}");
}

#[test]
fn randomized_sweeps_for_larger_diameters() {
    for delta in 4..=6 {
        for entry in enumerate_admissible(delta).unwrap().into_iter().step_by(7) {
            let m = eligible_magic(&entry.params).unwrap()[0];
            let scope = Scope::Randomized {
                count: 100,
                seed: u64::from(delta),
            };
            let reports = run_verification_suite_with_jobs(&entry.params, m, scope, 4).unwrap();
            assert!(
                reports.iter().all(|r| r.passed()),
                "({}) M={m}\n{}",
                entry.params,
                format_reports(&reports)
            );
        }
    }
}
