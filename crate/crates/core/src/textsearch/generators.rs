use std::collections::HashSet;

use super::corpus::{tfidf_score, Corpus};
use super::index::{InvertedIndex, Posting};
use crate::framework::{GeneratorMode, ResultGenerator};
use crate::graph::ScoredResult;

/// Documents in non-increasing score order.
///
/// A single term scans its posting list. For several terms every matching
/// document is scored up front and the ranked list is replayed.
pub struct IncrementalGenerator<'a> {
    ranked: RankedList<'a>,
    next: usize,
    last: Option<f64>,
}

enum RankedList<'a> {
    Postings(&'a [Posting]),
    Scored(Vec<Posting>),
}

impl RankedList<'_> {
    fn get(&self, i: usize) -> Option<&Posting> {
        match self {
            RankedList::Postings(p) => p.get(i),
            RankedList::Scored(p) => p.get(i),
        }
    }
}

impl<'a> IncrementalGenerator<'a> {
    pub fn new(corpus: &Corpus, index: &'a InvertedIndex, terms: &[String]) -> Self {
        let ranked = if terms.len() == 1 {
            RankedList::Postings(index.postings(&terms[0]))
        } else {
            let mut docs: Vec<&str> = terms
                .iter()
                .flat_map(|t| index.postings(t).iter().map(|p| p.doc.as_str()))
                .collect();
            docs.sort_unstable();
            docs.dedup();
            let mut scored: Vec<Posting> = docs
                .into_iter()
                .map(|d| Posting {
                    doc: d.to_string(),
                    score: tfidf_score(corpus, terms, d).expect("indexed document"),
                })
                .collect();
            scored.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.doc.cmp(&b.doc)));
            RankedList::Scored(scored)
        };
        Self {
            ranked,
            next: 0,
            last: None,
        }
    }
}

impl ResultGenerator<f64> for IncrementalGenerator<'_> {
    fn mode(&self) -> GeneratorMode {
        GeneratorMode::Incremental
    }

    fn next_result(&mut self) -> Option<ScoredResult<f64>> {
        let p = self.ranked.get(self.next)?;
        self.next += 1;
        self.last = Some(p.score);
        Some(ScoredResult::new(p.doc.clone(), p.score))
    }

    fn unseen_bound(&self) -> Option<f64> {
        self.last
    }
}

/// Threshold-algorithm aggregation of several posting lists.
///
/// Lists are read round-robin under sorted access; each newly met document
/// is returned at once with its full score. The unseen bound is the sum of
/// the next unread score of every list.
pub struct ThresholdGenerator<'a> {
    corpus: &'a Corpus,
    terms: Vec<String>,
    lists: Vec<&'a [Posting]>,
    cursors: Vec<usize>,
    turn: usize,
    seen: HashSet<&'a str>,
}

impl<'a> ThresholdGenerator<'a> {
    pub fn new(corpus: &'a Corpus, index: &'a InvertedIndex, terms: &[String]) -> Self {
        let lists: Vec<&[Posting]> = terms.iter().map(|t| index.postings(t)).collect();
        Self {
            corpus,
            terms: terms.to_vec(),
            cursors: vec![0; lists.len()],
            lists,
            turn: 0,
            seen: HashSet::new(),
        }
    }

    pub fn sorted_accesses(&self) -> usize {
        self.cursors.iter().sum()
    }
}

impl ResultGenerator<f64> for ThresholdGenerator<'_> {
    fn mode(&self) -> GeneratorMode {
        GeneratorMode::Bounding
    }

    fn next_result(&mut self) -> Option<ScoredResult<f64>> {
        let m = self.lists.len();
        loop {
            let open = (0..m).find(|&o| {
                let l = (self.turn + o) % m;
                self.cursors[l] < self.lists[l].len()
            })?;
            let l = (self.turn + open) % m;
            self.turn = (l + 1) % m;
            let p = &self.lists[l][self.cursors[l]];
            self.cursors[l] += 1;
            if self.seen.insert(p.doc.as_str()) {
                let score = tfidf_score(self.corpus, &self.terms, &p.doc).expect("indexed document");
                return Some(ScoredResult::new(p.doc.clone(), score));
            }
        }
    }

    fn unseen_bound(&self) -> Option<f64> {
        Some(
            self.lists
                .iter()
                .zip(&self.cursors)
                .map(|(l, &c)| l.get(c).map_or(0.0, |p| p.score))
                .sum(),
        )
    }
}
