use std::collections::HashMap;

use super::corpus::{idf, term_score, Corpus};

/// One document's partial score for a term.
#[derive(Clone, Debug, PartialEq)]
pub struct Posting {
    pub doc: String,
    pub score: f64,
}

/// Per-term posting lists sorted by score descending, ties by document id.
#[derive(Clone, Debug)]
pub struct InvertedIndex {
    lists: HashMap<String, Vec<Posting>>,
}

impl InvertedIndex {
    pub fn build(corpus: &Corpus) -> Self {
        let mut lists: HashMap<String, Vec<Posting>> =
            corpus.vocabulary().map(|w| (w.to_string(), Vec::new())).collect();
        let weights: HashMap<String, f64> = lists.keys().map(|w| (w.clone(), idf(corpus, w))).collect();
        for doc in corpus.documents() {
            for w in doc.counts.keys() {
                let score = term_score(doc, weights[w], w);
                lists.get_mut(w).expect("term from vocabulary").push(Posting {
                    doc: doc.id.clone(),
                    score,
                });
            }
        }
        for list in lists.values_mut() {
            list.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.doc.cmp(&b.doc)));
        }
        Self { lists }
    }

    /// Posting list of `term`; empty for unknown terms.
    pub fn postings(&self, term: &str) -> &[Posting] {
        self.lists.get(term).map_or(&[], Vec::as_slice)
    }

    pub fn terms(&self) -> usize {
        self.lists.len()
    }
}
