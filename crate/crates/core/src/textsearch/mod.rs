//! Keyword search over a small document collection, feeding the
//! diversified top-k driver.
//!
//! Documents score by length-normalized TF·IDF; two documents are similar
//! when their IDF-weighted Jaccard similarity exceeds a threshold.

mod corpus;
mod generators;
mod index;

pub use corpus::{idf, jaccard_sim, tfidf_score, tokenize, Corpus, Document, Stopwords};
pub use generators::{IncrementalGenerator, ThresholdGenerator};
pub use index::{InvertedIndex, Posting};

use crate::error::Result;
use crate::framework::{div_search, DivSolver, GeneratorMode, ResultGenerator, SearchOptions, SearchOutcome};
use crate::graph::ScoredResult;

/// Corpus plus index, ready to answer queries.
pub struct SearchEngine {
    pub corpus: Corpus,
    pub index: InvertedIndex,
}

impl SearchEngine {
    pub fn new(corpus: Corpus) -> Self {
        let index = InvertedIndex::build(&corpus);
        Self { corpus, index }
    }

    pub fn generator<'a>(&'a self, terms: &[String], mode: GeneratorMode) -> Box<dyn ResultGenerator<f64> + 'a> {
        match mode {
            GeneratorMode::Incremental => Box::new(IncrementalGenerator::new(&self.corpus, &self.index, terms)),
            GeneratorMode::Bounding => Box::new(ThresholdGenerator::new(&self.corpus, &self.index, terms)),
        }
    }

    /// Diversified top-`k` documents for `query`, treating documents with
    /// similarity above `tau` as redundant.
    pub fn search(
        &self,
        query: &str,
        k: usize,
        tau: f64,
        solver: DivSolver,
        mode: GeneratorMode,
        options: SearchOptions,
    ) -> Result<SearchOutcome<f64>> {
        let terms = self.corpus.query_terms(query);
        let mut gen = self.generator(&terms, mode);
        let corpus = &self.corpus;
        let similar = |a: &ScoredResult<f64>, b: &ScoredResult<f64>| {
            jaccard_sim(corpus, &a.id, &b.id).map_or(false, |s| s > tau)
        };
        div_search(gen.as_mut(), solver, similar, k, options)
    }

    /// Every matching document with its full score, best first.
    pub fn ranked(&self, query: &str) -> Vec<ScoredResult<f64>> {
        let terms = self.corpus.query_terms(query);
        let mut gen = IncrementalGenerator::new(&self.corpus, &self.index, &terms);
        std::iter::from_fn(|| gen.next_result()).collect()
    }
}
