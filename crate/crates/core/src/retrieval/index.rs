use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{idf, tf_weight, Analyzer, Bm25Params, DocId, RetrievalError};
use crate::corpus::{join_context, DialogTuple};
use crate::normalize::TokenSequence;

/// The two indexed views of a question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Unigram,
    Trigram,
}

impl Field {
    pub const ALL: [Field; 2] = [Field::Unigram, Field::Trigram];

    fn slot(self) -> usize {
        match self {
            Field::Unigram => 0,
            Field::Trigram => 1,
        }
    }

    /// Terms of `tokens` in this field, in order, with repeats.
    pub fn terms(self, tokens: &[String]) -> Vec<String> {
        match self {
            Field::Unigram => tokens.to_vec(),
            Field::Trigram => tokens.windows(3).map(|w| w.join(" ")).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    pub doc_id: DocId,
    pub tf: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedDocument {
    pub doc_id: DocId,
    /// Analyzed context + question.
    pub question_tokens: TokenSequence,
    pub answer: String,
    pub unigram_tf: BTreeMap<String, u32>,
    pub trigram_tf: BTreeMap<String, u32>,
    pub length_uni: u32,
    pub length_tri: u32,
}

impl IndexedDocument {
    fn new(doc_id: DocId, question_tokens: TokenSequence, answer: String) -> Self {
        let count = |terms: Vec<String>| {
            let mut tf = BTreeMap::new();
            for t in terms {
                *tf.entry(t).or_insert(0u32) += 1;
            }
            tf
        };
        let unigram_tf = count(Field::Unigram.terms(&question_tokens));
        let trigram_tf = count(Field::Trigram.terms(&question_tokens));
        Self {
            doc_id,
            length_uni: unigram_tf.values().sum(),
            length_tri: trigram_tf.values().sum(),
            question_tokens,
            answer,
            unigram_tf,
            trigram_tf,
        }
    }

    pub fn tf(&self, field: Field, term: &str) -> u32 {
        let map = match field {
            Field::Unigram => &self.unigram_tf,
            Field::Trigram => &self.trigram_tf,
        };
        map.get(term).copied().unwrap_or(0)
    }

    pub fn length(&self, field: Field) -> u32 {
        match field {
            Field::Unigram => self.length_uni,
            Field::Trigram => self.length_tri,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub(super) struct FieldIndex {
    pub postings: BTreeMap<String, Vec<Posting>>,
    pub total_length: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedAnswer {
    pub answer: String,
    pub doc_id: DocId,
    pub score: f64,
}

/// Immutable after construction; share it freely across reader threads.
#[derive(Debug)]
pub struct Bm25Index {
    pub(super) params: Bm25Params,
    pub(super) analyzer: Analyzer,
    pub(super) documents: Vec<IndexedDocument>,
    pub(super) fields: [FieldIndex; 2],
}

/// Indexes `context + " " + question` of every training tuple.
pub fn build_index(train: &[DialogTuple], params: Bm25Params) -> Result<Bm25Index, RetrievalError> {
    Bm25Index::build(train.iter().map(|t| (join_context(&t.context, &t.question), t.answer.clone())), params)
}

impl Bm25Index {
    /// Builds from `(question text, answer)` pairs. Doc ids follow input order from 0.
    pub fn build<I>(pairs: I, params: Bm25Params) -> Result<Self, RetrievalError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        params.validate()?;
        let analyzer = Analyzer::new(params.english_analysis);
        let documents: Vec<IndexedDocument> = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (question, answer))| {
                let id = DocId::try_from(i).expect("more than u32::MAX documents");
                IndexedDocument::new(id, analyzer.analyze(&question), answer)
            })
            .collect();
        Self::from_documents(documents, params)
    }

    pub(super) fn from_documents(documents: Vec<IndexedDocument>, params: Bm25Params) -> Result<Self, RetrievalError> {
        if documents.is_empty() {
            return Err(RetrievalError::EmptyTrainingSet);
        }
        let mut fields = [FieldIndex::default(), FieldIndex::default()];
        for doc in &documents {
            for field in Field::ALL {
                let tf_map = match field {
                    Field::Unigram => &doc.unigram_tf,
                    Field::Trigram => &doc.trigram_tf,
                };
                let target = &mut fields[field.slot()];
                target.total_length += u64::from(doc.length(field));
                for (term, &tf) in tf_map {
                    target
                        .postings
                        .entry(term.clone())
                        .or_default()
                        .push(Posting { doc_id: doc.doc_id, tf });
                }
            }
        }
        Ok(Self {
            analyzer: Analyzer::new(params.english_analysis),
            params,
            documents,
            fields,
        })
    }

    pub fn params(&self) -> &Bm25Params {
        &self.params
    }

    pub fn analyzer(&self) -> &Analyzer {
        &self.analyzer
    }

    pub fn doc_count(&self) -> usize {
        self.documents.len()
    }

    pub fn documents(&self) -> &[IndexedDocument] {
        &self.documents
    }

    pub fn document(&self, doc_id: DocId) -> Option<&IndexedDocument> {
        self.documents.get(doc_id as usize)
    }

    pub fn postings(&self, field: Field, term: &str) -> &[Posting] {
        self.fields[field.slot()].postings.get(term).map_or(&[], Vec::as_slice)
    }

    pub fn df(&self, field: Field, term: &str) -> usize {
        self.postings(field, term).len()
    }

    pub fn avg_doc_len(&self, field: Field) -> f64 {
        self.fields[field.slot()].total_length as f64 / self.documents.len() as f64
    }

    /// Iterates a field's vocabulary in term order.
    pub fn terms(&self, field: Field) -> impl Iterator<Item = &str> {
        self.fields[field.slot()].postings.keys().map(String::as_str)
    }

    /// BM25 of one document against analyzed query tokens, summed over both fields.
    /// Repeated query terms contribute once per occurrence.
    pub fn bm25_score(&self, query_tokens: &[String], doc_id: DocId) -> Result<f64, RetrievalError> {
        let doc = self.document(doc_id).ok_or(RetrievalError::UnknownDocument(doc_id))?;
        let mut score = 0.0;
        for field in Field::ALL {
            let avg = self.avg_doc_len(field);
            let dl = f64::from(doc.length(field));
            for term in field.terms(query_tokens) {
                let tf = doc.tf(field, &term);
                if tf == 0 {
                    continue;
                }
                score += idf(self.doc_count(), self.df(field, &term)) * tf_weight(f64::from(tf), dl, avg, &self.params);
            }
        }
        Ok(score)
    }

    /// Top `k` documents for already-analyzed query tokens, score-descending, ties by doc id.
    /// Documents sharing no term with the query are never returned.
    pub fn search(&self, query_tokens: &[String], k: usize) -> Result<Vec<RankedAnswer>, RetrievalError> {
        if k == 0 {
            return Err(RetrievalError::ZeroK);
        }
        let n = self.doc_count();
        let mut scores = vec![0.0f64; n];
        let mut touched: Vec<DocId> = Vec::new();
        let mut hit = vec![false; n];
        for field in Field::ALL {
            let avg = self.avg_doc_len(field);
            for term in field.terms(query_tokens) {
                let postings = self.postings(field, &term);
                if postings.is_empty() {
                    continue;
                }
                let w = idf(n, postings.len());
                for p in postings {
                    let i = p.doc_id as usize;
                    let dl = f64::from(self.documents[i].length(field));
                    scores[i] += w * tf_weight(f64::from(p.tf), dl, avg, &self.params);
                    if !hit[i] {
                        hit[i] = true;
                        touched.push(p.doc_id);
                    }
                }
            }
        }

        let rank = |a: &DocId, b: &DocId| -> Ordering {
            scores[*b as usize]
                .total_cmp(&scores[*a as usize])
                .then(a.cmp(b))
        };
        if touched.len() > k {
            touched.select_nth_unstable_by(k - 1, rank);
            touched.truncate(k);
        }
        touched.sort_unstable_by(rank);
        Ok(touched
            .into_iter()
            .map(|doc_id| RankedAnswer {
                answer: self.documents[doc_id as usize].answer.clone(),
                doc_id,
                score: scores[doc_id as usize],
            })
            .collect())
    }

    /// Analyzes `context + " " + question` and returns the top `k` stored answers.
    pub fn respond(&self, context: &str, question: &str, k: usize) -> Result<Vec<RankedAnswer>, RetrievalError> {
        let query = self.analyzer.analyze(&join_context(context, question));
        self.search(&query, k)
    }
}
