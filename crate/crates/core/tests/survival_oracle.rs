//! Kaplan–Meier and log-rank values frozen from an independent
//! implementation (lifelines 0.30).

use csmine_core::survival::{km_estimate, log_rank};
use csmine_core::SurvivalObs;

fn sample(times: &[f64], events: &[u8]) -> Vec<SurvivalObs> {
    times
        .iter()
        .zip(events)
        .map(|(&t, &e)| SurvivalObs { time: t, event: e == 1 })
        .collect()
}

fn samples() -> Vec<(&'static str, Vec<SurvivalObs>)> {
    vec![
        ("a", sample(&[1., 2., 2., 3., 5., 5., 8.], &[1, 1, 0, 1, 1, 0, 1])),
        ("b", sample(&[2., 3., 3., 4., 6., 7., 7., 9.], &[1, 0, 1, 1, 1, 0, 1, 0])),
        ("c", sample(&[1., 1., 1., 4., 4., 10.], &[1, 0, 1, 0, 1, 1])),
        ("d", sample(&[0.5, 2., 3.5, 3.5, 6., 6., 6., 8., 9., 12.], &[1, 1, 0, 1, 1, 1, 0, 0, 1, 0])),
        ("e", sample(&[3., 3., 3., 3.], &[1, 0, 1, 0])),
        ("f", sample(&[2., 4., 6., 8., 10.], &[0, 1, 0, 1, 1])),
    ]
}

fn get(name: &str) -> Vec<SurvivalObs> {
    samples().into_iter().find(|(n, _)| *n == name).unwrap().1
}

const TOL: f64 = 1e-9;

#[test]
fn kaplan_meier_steps() {
    let expected: [(&str, &[(f64, f64)]); 6] = [
        ("a", &[(1., 0.8571428571428572), (2., 0.7142857142857143), (3., 0.5357142857142858), (5., 0.3571428571428571), (8., 0.0)]),
        ("b", &[(2., 0.875), (3., 0.75), (4., 0.6), (6., 0.45), (7., 0.3)]),
        ("c", &[(1., 0.6666666666666666), (4., 0.4444444444444444), (10., 0.0)]),
        ("d", &[(0.5, 0.9), (2., 0.8), (3.5, 0.7), (6., 0.4666666666666667), (9., 0.23333333333333334)]),
        ("e", &[(3., 0.5)]),
        ("f", &[(4., 0.75), (8., 0.375), (10., 0.0)]),
    ];
    for (name, steps) in expected {
        let curve = km_estimate(&get(name)).unwrap();
        let times: Vec<f64> = steps.iter().map(|s| s.0).collect();
        assert_eq!(curve.times, times, "{name}");
        for (&(t, s), got) in steps.iter().zip(&curve.survival) {
            assert!((got - s).abs() < TOL, "{name} at {t}: {got} vs {s}");
            assert!((curve.at(t) - s).abs() < TOL);
        }
        assert_eq!(curve.at(times[0] - 0.25), 1.0);
    }
}

#[test]
fn log_rank_statistics() {
    let expected = [
        ("a", "b", 0.6511626759886127),
        ("a", "c", 0.08853329731981018),
        ("b", "d", 0.0305451680504814),
        ("c", "f", 0.47963517371022735),
        ("d", "e", 0.6667458919228846),
        ("e", "f", 2.333333333333334),
    ];
    for (a, b, want) in expected {
        let got = log_rank(&get(a), &get(b)).unwrap();
        assert!((got - want).abs() < TOL, "{a} vs {b}: {got} vs {want}");
        let swapped = log_rank(&get(b), &get(a)).unwrap();
        assert!((swapped - want).abs() < TOL, "{b} vs {a}");
    }
}

#[test]
fn identical_samples_have_zero_statistic() {
    for (name, s) in samples() {
        assert!(log_rank(&s, &s).unwrap().abs() < TOL, "{name}");
    }
}

#[test]
fn rejects_bad_input() {
    assert!(km_estimate(&[]).is_err());
    assert!(km_estimate(&[SurvivalObs::event(-1.0)]).is_err());
    assert!(log_rank(&get("a"), &[]).is_err());
}
