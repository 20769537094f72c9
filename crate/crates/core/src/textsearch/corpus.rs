use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::BufRead;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");
const TOY_CORPUS: &str = include_str!("../../data/toy_corpus.jsonl");

/// Lowercased alphanumeric runs of `text`.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
}

/// A set of words ignored during indexing and querying.
#[derive(Clone, Debug, Default)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    /// One word per line; blank lines and lines starting with `#` are
    /// skipped.
    pub fn parse(text: &str) -> Self {
        Self(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        )
    }

    pub fn builtin() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }

    pub fn none() -> Self {
        Self::default()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, w: &str) -> bool {
        self.0.contains(w)
    }

    /// Tokens of `text` minus stopwords.
    pub fn filter(&self, text: &str) -> Vec<String> {
        tokenize(text).filter(|t| !self.contains(t)).collect()
    }
}

#[derive(Deserialize)]
struct Line {
    id: String,
    text: String,
}

#[derive(Clone, Debug)]
pub struct Document {
    pub id: String,
    /// Token multiplicities after stopword removal.
    pub counts: BTreeMap<String, u32>,
    /// Token count after stopword removal.
    pub len: usize,
}

/// Documents as token multisets with document frequencies.
#[derive(Clone, Debug)]
pub struct Corpus {
    docs: Vec<Document>,
    by_id: HashMap<String, usize>,
    df: HashMap<String, u32>,
    stopwords: Stopwords,
}

impl Corpus {
    pub fn new<I, A, B>(docs: I, stopwords: Stopwords) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: AsRef<str>,
    {
        let mut out = Self {
            docs: Vec::new(),
            by_id: HashMap::new(),
            df: HashMap::new(),
            stopwords,
        };
        for (id, text) in docs {
            let id = id.into();
            if out.by_id.contains_key(&id) {
                return Err(Error::DuplicateId(id));
            }
            let mut counts = BTreeMap::new();
            let tokens = out.stopwords.filter(text.as_ref());
            for t in &tokens {
                *counts.entry(t.clone()).or_insert(0) += 1;
            }
            for t in counts.keys() {
                *out.df.entry(t.clone()).or_insert(0) += 1;
            }
            out.by_id.insert(id.clone(), out.docs.len());
            out.docs.push(Document {
                id,
                counts,
                len: tokens.len(),
            });
        }
        Ok(out)
    }

    /// Reads JSON Lines of `{"id": ..., "text": ...}`.
    pub fn from_jsonl(reader: impl BufRead, stopwords: Stopwords) -> Result<Self> {
        let mut docs = Vec::new();
        for (n, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let l: Line = serde_json::from_str(&line)
                .map_err(|e| Error::InvalidInput(format!("corpus line {}: {e}", n + 1)))?;
            docs.push((l.id, l.text));
        }
        Self::new(docs, stopwords)
    }

    pub fn load(path: impl AsRef<Path>, stopwords: Stopwords) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::from_jsonl(std::io::BufReader::new(f), stopwords)
    }

    /// The bundled 100-document sample corpus with the built-in stopwords.
    pub fn toy() -> Self {
        Self::from_jsonl(TOY_CORPUS.as_bytes(), Stopwords::builtin()).expect("bundled corpus parses")
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn documents(&self) -> &[Document] {
        &self.docs
    }

    pub fn document(&self, id: &str) -> Result<&Document> {
        self.by_id
            .get(id)
            .map(|&i| &self.docs[i])
            .ok_or_else(|| Error::UnknownDocument(id.to_string()))
    }

    pub fn df(&self, w: &str) -> u32 {
        self.df.get(w).copied().unwrap_or(0)
    }

    pub fn stopwords(&self) -> &Stopwords {
        &self.stopwords
    }

    /// Query terms: tokenized, stopwords removed, duplicates dropped.
    pub fn query_terms(&self, query: &str) -> Vec<String> {
        let mut seen = HashSet::new();
        self.stopwords
            .filter(query)
            .into_iter()
            .filter(|t| seen.insert(t.clone()))
            .collect()
    }

    pub(crate) fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.df.keys().map(String::as_str)
    }
}

/// `ln(N / (df + 1))`, floored at 0.
pub fn idf(corpus: &Corpus, w: &str) -> f64 {
    idf_raw(corpus.len(), corpus.df(w))
}

pub(crate) fn idf_raw(n: usize, df: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    (n as f64 / (f64::from(df) + 1.0)).ln().max(0.0)
}

/// Contribution of one term to a document's score.
pub(crate) fn term_score(doc: &Document, idf: f64, w: &str) -> f64 {
    let tf = doc.counts.get(w).copied().unwrap_or(0);
    if tf == 0 || doc.len == 0 {
        return 0.0;
    }
    f64::from(tf) * idf / (doc.len as f64).sqrt()
}

/// Length-normalized TF·IDF of document `d` for the query terms `q`.
pub fn tfidf_score(corpus: &Corpus, q: &[String], d: &str) -> Result<f64> {
    let doc = corpus.document(d)?;
    Ok(q.iter().map(|w| term_score(doc, idf(corpus, w), w)).sum())
}

/// IDF-weighted Jaccard similarity of two documents' token multisets.
pub fn jaccard_sim(corpus: &Corpus, d1: &str, d2: &str) -> Result<f64> {
    let (a, b) = (corpus.document(d1)?, corpus.document(d2)?);
    if a.counts.is_empty() && b.counts.is_empty() {
        return Ok(0.0);
    }
    let mut inter = 0.0;
    let mut union = 0.0;
    let mut equal = true;
    let mut visit = |w: &str, x: u32, y: u32| {
        let weight = idf(corpus, w);
        inter += f64::from(x.min(y)) * weight;
        union += f64::from(x.max(y)) * weight;
        equal &= x == y;
    };
    for (w, &x) in &a.counts {
        visit(w, x, b.counts.get(w).copied().unwrap_or(0));
    }
    for (w, &y) in &b.counts {
        if !a.counts.contains_key(w) {
            visit(w, 0, y);
        }
    }
    if union == 0.0 {
        return Ok(if equal { 1.0 } else { 0.0 });
    }
    Ok(inter / union)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(docs: &[(&str, &str)]) -> Corpus {
        Corpus::new(docs.iter().copied(), Stopwords::builtin()).unwrap()
    }

    fn ten_docs() -> Corpus {
        let mut docs: Vec<(String, String)> = vec![("x".into(), "rare".into())];
        for i in 1..10 {
            docs.push((format!("d{i}"), "common filler".into()));
        }
        docs[1].1.push_str(" half");
        Corpus::new(docs, Stopwords::builtin()).unwrap()
    }

    #[test]
    fn tokenizing() {
        let t: Vec<_> = tokenize("The Quick-brown fox, 2 times!").collect();
        assert_eq!(t, ["the", "quick", "brown", "fox", "2", "times"]);
        assert_eq!(Stopwords::builtin().filter("The fox and the hound"), ["fox", "hound"]);
    }

    #[test]
    fn idf_values() {
        let c = ten_docs();
        assert!((idf(&c, "rare") - 5f64.ln()).abs() < 1e-12);
        assert!((idf(&c, "missing") - 10f64.ln()).abs() < 1e-12);
        assert_eq!(idf(&c, "common"), 0.0);
    }

    #[test]
    fn tfidf_values() {
        let c = ten_docs();
        let q = vec!["rare".to_string()];
        assert!((tfidf_score(&c, &q, "x").unwrap() - 5f64.ln()).abs() < 1e-12);
        assert_eq!(tfidf_score(&c, &q, "d2").unwrap(), 0.0);
        let both = vec!["rare".to_string(), "half".to_string()];
        let sum = tfidf_score(&c, &both[..1], "d1").unwrap() + tfidf_score(&c, &both[1..], "d1").unwrap();
        assert!((tfidf_score(&c, &both, "d1").unwrap() - sum).abs() < 1e-12);
        assert!(tfidf_score(&c, &q, "nope").is_err());
    }

    #[test]
    fn jaccard_values() {
        let c = corpus(&[("p", "alpha beta"), ("q", "beta gamma"), ("r", "delta"), ("e", "the")]);
        // Every term has df 1 or 2 out of 4: weights differ, so compare to
        // a hand computation.
        let (ia, ib, ig) = (idf(&c, "alpha"), idf(&c, "beta"), idf(&c, "gamma"));
        let want = ib / (ia + ib + ig);
        assert!((jaccard_sim(&c, "p", "q").unwrap() - want).abs() < 1e-12);
        assert_eq!(jaccard_sim(&c, "p", "p").unwrap(), 1.0);
        assert_eq!(jaccard_sim(&c, "p", "r").unwrap(), 0.0);
        assert_eq!(jaccard_sim(&c, "e", "e").unwrap(), 0.0);
    }

    #[test]
    fn jaccard_unit_weights() {
        // With every idf equal to ln(N / 2) the weights cancel.
        let mut docs = vec![("p".to_string(), "a b".to_string()), ("q".into(), "b c".into())];
        docs.push(("s".into(), "a c".into()));
        for i in 0..6 {
            docs.push((format!("z{i}"), format!("pad{i}")));
        }
        let c = Corpus::new(docs, Stopwords::none()).unwrap();
        assert_eq!(c.df("b"), 2);
        assert!((jaccard_sim(&c, "p", "q").unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn query_terms_dedup() {
        let c = ten_docs();
        assert_eq!(c.query_terms("Rare the rare FILLER"), ["rare", "filler"]);
    }

    #[test]
    fn toy_corpus_loads() {
        let c = Corpus::toy();
        assert_eq!(c.len(), 100);
        assert!(c.df("jaguar") > 0);
    }
}
