//! Evaluation: sampled precision, precision-yield curves, annotator
//! agreement, significance testing and a synthetic corpus generator.

mod agreement;
mod annotations;
mod curve;
mod fisher;
mod precision;
pub mod synth;

use std::fmt::Display;

use thiserror::Error;

pub use agreement::{cohens_kappa, cohens_kappa_labels, Agreement};
pub use annotations::{read_annotations, write_annotations, AnnotationSet, ANNOTATION_HEADER};
pub use curve::{area_over_curve, curve_from_labels, precision_yield_curve, render_svg, write_curve_csv, CurvePoint};
pub use fisher::{fisher_exact, FisherResult};
pub use precision::{precision_at_k, sample_ranks, sample_top_k, PrecisionAtK};
pub use synth::{generate_synthetic_corpus, PlantedConcept, SynthSpec, SyntheticCorpus};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{} sampled phrase(s) lack labels: {}", .0.len(), .0.join(", "))]
    MissingLabels(Vec<String>),
    #[error("phrase {phrase:?} labeled twice by annotator {annotator:?}")]
    DuplicateLabel { phrase: String, annotator: String },
    #[error("annotations line {line}: {message}")]
    Annotation { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("curve has no points")]
    EmptyCurve,
    #[error("contingency table is all zeros")]
    EmptyTable,
    #[error("infeasible synthetic corpus spec: {0}")]
    Infeasible(String),
}

impl EvalError {
    pub(crate) fn annotation(line: usize, message: impl Display) -> Self {
        Self::Annotation {
            line,
            message: message.to_string(),
        }
    }
}
