use csmine_core::quality::{correlation, correlation_value};
use csmine_core::{ConfusionMatrix, CoverageSet};

/// Pearson correlation of the coverage and membership indicators over
/// explicit examples: positives first, covered ones at the front of each block.
fn pearson(p: usize, n: usize, pp: usize, nn: usize) -> f64 {
    let total = pp + nn;
    let x: Vec<f64> = (0..total)
        .map(|i| if (i < pp && i < p) || (i >= pp && i - pp < n) { 1.0 } else { 0.0 })
        .collect();
    let y: Vec<f64> = (0..total).map(|i| if i < pp { 1.0 } else { 0.0 }).collect();
    let mx = x.iter().sum::<f64>() / total as f64;
    let my = y.iter().sum::<f64>() / total as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(&y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        0.0
    } else {
        sxy / (sxx * syy).sqrt()
    }
}

fn grid(max: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (1..=max).flat_map(move |pp| {
        (1..=max).flat_map(move |nn| (0..=pp).flat_map(move |p| (0..=nn).map(move |n| (p, n, pp, nn))))
    })
}

#[test]
fn matches_pearson_on_explicit_examples() {
    for (p, n, pp, nn) in grid(30) {
        let got = correlation_value(p, n, pp, nn);
        let want = pearson(p, n, pp, nn);
        assert!((got - want).abs() <= 1e-12, "({p},{n},{pp},{nn}): {got} vs {want}");
    }
}

#[test]
fn confusion_from_coverage_feeds_the_same_value() {
    let (pp, nn) = (7, 5);
    let positives = CoverageSet::from_fn(pp + nn, |i| i < pp);
    let negatives = CoverageSet::from_fn(pp + nn, |i| i >= pp);
    for mask in 0u32..(1 << (pp + nn)) {
        let covered = CoverageSet::from_fn(pp + nn, |i| mask >> i & 1 == 1);
        let cm = ConfusionMatrix::from_coverage(&covered, &positives, &negatives, &positives);
        let p = (0..pp).filter(|&i| mask >> i & 1 == 1).count();
        let n = (pp..pp + nn).filter(|&i| mask >> i & 1 == 1).count();
        assert_eq!((cm.p, cm.n, cm.p_new), (p, n, p));
        assert_eq!(correlation(&cm).value, correlation_value(p, n, pp, nn));
    }
}

fn degenerate(p: usize, n: usize, pp: usize, nn: usize) -> bool {
    p + n == 0 || p + n == pp + nn
}

#[test]
fn monotone_in_p_and_n() {
    for (p, n, pp, nn) in grid(50) {
        let q = correlation_value(p, n, pp, nn);
        if p < pp && !degenerate(p, n, pp, nn) && !degenerate(p + 1, n, pp, nn) {
            assert!(correlation_value(p + 1, n, pp, nn) > q, "p+1 at ({p},{n},{pp},{nn})");
        }
        if n < nn && !degenerate(p, n, pp, nn) && !degenerate(p, n + 1, pp, nn) {
            assert!(correlation_value(p, n + 1, pp, nn) < q, "n+1 at ({p},{n},{pp},{nn})");
        }
    }
}

#[test]
fn negated_premise_negates_value() {
    for (p, n, pp, nn) in grid(50) {
        let q = correlation_value(p, n, pp, nn);
        let r = correlation_value(pp - p, nn - n, pp, nn);
        assert!((q + r).abs() <= 1e-12, "({p},{n},{pp},{nn}): {q} vs {r}");
    }
}

#[test]
fn positive_iff_precision_beats_prior() {
    for (p, n, pp, nn) in grid(50) {
        if degenerate(p, n, pp, nn) {
            continue;
        }
        let q = correlation_value(p, n, pp, nn);
        // p/(p+n) > P/(P+N)  <=>  p(P+N) > P(p+n), exact in integers
        let better = p * (pp + nn) > pp * (p + n);
        assert_eq!(q > 0.0, better, "({p},{n},{pp},{nn}): {q}");
    }
}

#[test]
fn degenerate_denominator_is_zero() {
    assert_eq!(correlation_value(0, 0, 5, 5), 0.0);
    assert_eq!(correlation_value(5, 5, 5, 5), 0.0);
    assert_eq!(correlation_value(3, 0, 3, 0), 0.0);
}
