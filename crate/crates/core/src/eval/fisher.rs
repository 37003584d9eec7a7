//! Fisher's exact test for 2x2 tables.

use serde::Serialize;

use super::EvalError;

/// Relative slack when deciding whether a table is as extreme as the observed one.
const TIE_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FisherResult {
    /// `P(X <= a)`.
    pub p_less: f64,
    /// `P(X >= a)`: the first row has more first-column mass than expected.
    pub p_greater: f64,
    /// Sum over tables at most as probable as the observed one.
    pub p_two_sided: f64,
}

impl FisherResult {
    /// One-sided p-value in the direction "row 1 is enriched in column 1".
    pub fn p_one_sided(&self) -> f64 {
        self.p_greater
    }
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    table.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

/// Exact test on `[[a, b], [c, d]]`, conditioning on both margins. `X` is the
/// top-left cell.
pub fn fisher_exact(a: u64, b: u64, c: u64, d: u64) -> Result<FisherResult, EvalError> {
    let n = a + b + c + d;
    if n == 0 {
        return Err(EvalError::EmptyTable);
    }
    let n = usize::try_from(n).map_err(|_| EvalError::InvalidArgument("table too large".into()))?;
    let (a, b, c, d) = (a as usize, b as usize, c as usize, d as usize);
    let row1 = a + b;
    let row2 = c + d;
    let col1 = a + c;
    let col2 = b + d;
    let lf = ln_factorials(n);
    let ln_const = lf[row1] + lf[row2] + lf[col1] + lf[col2] - lf[n];
    let pmf = |x: usize| {
        (ln_const - lf[x] - lf[row1 - x] - lf[col1 - x] - lf[row2 + x - col1]).exp()
    };

    let lo = col1.saturating_sub(row2);
    let hi = row1.min(col1);
    // normalizing by the support's total removes the rounding of the log terms
    let probs: Vec<f64> = (lo..=hi).map(pmf).collect();
    let total: f64 = probs.iter().sum();
    let observed = probs[a - lo];
    let threshold = observed * (1.0 + TIE_TOLERANCE);
    let (mut less, mut greater, mut two) = (0.0, 0.0, 0.0);
    for (x, &p) in (lo..=hi).zip(&probs) {
        if x <= a {
            less += p;
        }
        if x >= a {
            greater += p;
        }
        if p <= threshold {
            two += p;
        }
    }
    let (less, greater, two) = (less / total, greater / total, two / total);
    Ok(FisherResult {
        p_less: less.min(1.0),
        p_greater: greater.min(1.0),
        p_two_sided: two.min(1.0),
    })
}
