use serde::Serialize;

use super::{AnnotationSet, EvalError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Agreement {
    pub n: usize,
    pub raw: f64,
    /// `None` when chance agreement is 1 (both annotators used one identical label).
    pub kappa: Option<f64>,
}

/// Cohen's kappa over paired binary labels.
pub fn cohens_kappa_labels(a: &[bool], b: &[bool]) -> Result<Agreement, EvalError> {
    if a.len() != b.len() {
        return Err(EvalError::InvalidArgument(format!(
            "label sequences differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(EvalError::InvalidArgument("no labels to compare".into()));
    }
    let n = a.len() as f64;
    let matches = a.iter().zip(b).filter(|(x, y)| x == y).count() as f64;
    let pos_a = a.iter().filter(|&&x| x).count() as f64 / n;
    let pos_b = b.iter().filter(|&&x| x).count() as f64 / n;
    let p_o = matches / n;
    let p_e = pos_a * pos_b + (1.0 - pos_a) * (1.0 - pos_b);
    let kappa = (p_e < 1.0).then(|| (p_o - p_e) / (1.0 - p_e));
    Ok(Agreement {
        n: a.len(),
        raw: p_o,
        kappa,
    })
}

/// Cohen's kappa between two annotators who labeled the same phrase set.
pub fn cohens_kappa(a: &AnnotationSet, b: &AnnotationSet) -> Result<Agreement, EvalError> {
    let left = a.sorted();
    let right = b.sorted();
    let same_phrases = left.len() == right.len() && left.iter().zip(&right).all(|(x, y)| x.0 == y.0);
    if !same_phrases {
        return Err(EvalError::InvalidArgument(
            "annotators labeled different phrase sets".into(),
        ));
    }
    let la: Vec<bool> = left.iter().map(|x| x.1).collect();
    let lb: Vec<bool> = right.iter().map(|x| x.1).collect();
    cohens_kappa_labels(&la, &lb)
}
