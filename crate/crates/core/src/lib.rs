//! Short-answer grading with an enhanced BLEU scorer.
//!
//! A student answer is preprocessed ([`text`]), aligned unigram by unigram
//! against each teacher reference ([`alignment`]) using exact, stemmed and
//! lexicon-driven matches ([`lexicon`]), and scored from clipped n-gram
//! precision, recall and penalty terms ([`scoring`]). [`baselines`] holds the
//! keyword, tf-idf and plain BLEU comparison scorers and [`evaluation`]
//! measures how well any scorer correlates with human grades.

pub mod alignment;
pub mod baselines;
pub mod config;
pub mod error;
pub mod evaluation;
pub mod fixtures;
pub mod lexicon;
pub mod resources;
pub mod scoring;
pub mod text;

pub use error::ResourceError;
pub use resources::{ResourcePaths, Resources};
