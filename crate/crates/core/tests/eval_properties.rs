use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use termgraph::eval::{
    area_over_curve, cohens_kappa_labels, curve_from_labels, precision_at_k, precision_yield_curve, AnnotationSet,
};

fn labeled_ranking(labels: &[bool]) -> (Vec<String>, AnnotationSet) {
    let ranked: Vec<String> = (0..labels.len()).map(|i| format!("term{i}")).collect();
    let set = ranked.iter().cloned().zip(labels.iter().copied()).collect();
    (ranked, set)
}

#[test]
fn census_fixture_is_exact() {
    let (ranked, set) = labeled_ranking(&[true, false, true, true, false]);
    assert_eq!(precision_at_k(&ranked, &set, 5, 5, 0).unwrap().estimate, 0.6);
    let curve = precision_yield_curve(&ranked, &set, 5, 5, 0).unwrap();
    let pts: Vec<(f64, f64)> = curve.iter().map(|p| (p.yield_, p.precision)).collect();
    assert_eq!(pts, vec![(1.0, 1.0), (2.0, 2.0 / 3.0), (3.0, 3.0 / 4.0)]);
    assert!((area_over_curve(&curve, 3.0).unwrap() - 0.58333).abs() < 1e-5);
    assert!((area_over_curve(&curve, 3.0).unwrap() - 7.0 / 12.0).abs() < 1e-12);
}

#[test]
fn estimate_mode_precision_is_unbiased() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let labels: Vec<bool> = (0..1000).map(|_| rng.gen_bool(0.7)).collect();
    let (ranked, set) = labeled_ranking(&labels);
    let census = precision_at_k(&ranked, &set, 1000, 1000, 0).unwrap().estimate;
    let mean = (0..1000u64)
        .map(|seed| precision_at_k(&ranked, &set, 1000, 100, seed).unwrap().estimate)
        .sum::<f64>()
        / 1000.0;
    assert!((mean - census).abs() <= 0.01, "mean {mean} census {census}");
}

#[test]
fn estimate_mode_curve_tracks_constant_precision() {
    // every fifth phrase negative: true precision 0.8 at every depth
    let labels: Vec<bool> = (0..3000).map(|i| i % 5 != 4).collect();
    let (ranked, set) = labeled_ranking(&labels);
    let curve = precision_yield_curve(&ranked, &set, 3000, 300, 17).unwrap();
    assert!(curve.windows(2).all(|w| w[0].yield_ < w[1].yield_));
    // skip the first points, where i/j is dominated by small-sample noise
    for p in &curve[20..] {
        assert!((p.precision - 0.8).abs() <= 0.07, "{p:?}");
    }
    let last = curve.last().unwrap();
    assert!((last.yield_ - 2400.0).abs() <= 0.07 * 2400.0);
}

proptest! {
    #[test]
    fn census_precision_is_exact(labels in prop::collection::vec(any::<bool>(), 1..200), k_frac in 0.0f64..1.0) {
        let k = 1 + (k_frac * (labels.len() - 1) as f64) as usize;
        let (ranked, set) = labeled_ranking(&labels);
        let p = precision_at_k(&ranked, &set, k, k, 0).unwrap();
        let positives = labels[..k].iter().filter(|&&l| l).count();
        prop_assert_eq!(p.estimate, positives as f64 / k as f64);
    }

    #[test]
    fn curve_yield_strictly_increases(labels in prop::collection::vec(any::<bool>(), 1..200)) {
        let curve = curve_from_labels(&labels, 1.0);
        prop_assert!(curve.windows(2).all(|w| w[0].yield_ < w[1].yield_));
        prop_assert!(curve.iter().all(|p| (0.0..=1.0).contains(&p.precision)));
    }

    /// Flipping a negative that precedes the last positive never increases
    /// the area. (A negative after the last positive can: the flip creates a
    /// new last point whose lower precision then extends to `max_yield`.)
    #[test]
    fn area_is_monotone_under_flips_before_the_last_positive(
        labels in prop::collection::vec(any::<bool>(), 2..60),
        pick in any::<prop::sample::Index>(),
    ) {
        let Some(last) = labels.iter().rposition(|&l| l) else { return Ok(()) };
        let negatives: Vec<usize> = (0..last).filter(|&i| !labels[i]).collect();
        prop_assume!(!negatives.is_empty());
        let i = negatives[pick.index(negatives.len())];
        let mut flipped = labels.clone();
        flipped[i] = true;
        let max_yield = labels.len() as f64;
        let before = area_over_curve(&curve_from_labels(&labels, 1.0), max_yield).unwrap();
        let after = area_over_curve(&curve_from_labels(&flipped, 1.0), max_yield).unwrap();
        prop_assert!(after <= before + 1e-12, "{} -> {}", before, after);
    }

    #[test]
    fn area_is_deterministic(labels in prop::collection::vec(any::<bool>(), 1..60)) {
        prop_assume!(labels.contains(&true));
        let a = area_over_curve(&curve_from_labels(&labels, 1.0), 100.0).unwrap();
        let b = area_over_curve(&curve_from_labels(&labels, 1.0), 100.0).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn kappa_is_symmetric(pairs in prop::collection::vec((any::<bool>(), any::<bool>()), 1..100)) {
        let (a, b): (Vec<bool>, Vec<bool>) = pairs.into_iter().unzip();
        let ab = cohens_kappa_labels(&a, &b).unwrap();
        let ba = cohens_kappa_labels(&b, &a).unwrap();
        prop_assert_eq!(ab.raw, ba.raw);
        match (ab.kappa, ba.kappa) {
            (Some(x), Some(y)) => prop_assert!((x - y).abs() < 1e-12),
            (None, None) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

#[test]
fn flipping_after_the_last_positive_can_increase_area() {
    let labels = [true, false, false, false, false];
    let mut flipped = labels;
    flipped[4] = true;
    let before = area_over_curve(&curve_from_labels(&labels, 1.0), 5.0).unwrap();
    let after = area_over_curve(&curve_from_labels(&flipped, 1.0), 5.0).unwrap();
    assert_eq!(before, 0.0);
    // points (1, 1.0), (2, 0.4): 1 * 0.6 + 3 * 0.6
    assert!((after - 2.4).abs() < 1e-12);
}
