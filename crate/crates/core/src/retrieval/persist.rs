use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::index::FieldIndex;
use super::{Bm25Index, Bm25Params, IndexedDocument, Posting, RetrievalError};

const FORMAT: &str = "supportbench-bm25";
const VERSION: u32 = 1;

#[derive(Serialize)]
struct IndexFileRef<'a> {
    format: &'static str,
    version: u32,
    params: &'a Bm25Params,
    doc_count: usize,
    total_length: [u64; 2],
    unigram_postings: &'a BTreeMap<String, Vec<Posting>>,
    trigram_postings: &'a BTreeMap<String, Vec<Posting>>,
    documents: &'a [IndexedDocument],
}

#[derive(Deserialize)]
struct IndexFile {
    format: String,
    version: u32,
    params: Bm25Params,
    doc_count: usize,
    total_length: [u64; 2],
    unigram_postings: BTreeMap<String, Vec<Posting>>,
    trigram_postings: BTreeMap<String, Vec<Posting>>,
    documents: Vec<IndexedDocument>,
}

impl Bm25Index {
    /// Writes the index as a single versioned JSON document.
    pub fn save<W: Write>(&self, out: W) -> Result<(), RetrievalError> {
        let file = IndexFileRef {
            format: FORMAT,
            version: VERSION,
            params: &self.params,
            doc_count: self.documents.len(),
            total_length: [self.fields[0].total_length, self.fields[1].total_length],
            unigram_postings: &self.fields[0].postings,
            trigram_postings: &self.fields[1].postings,
            documents: &self.documents,
        };
        serde_json::to_writer(out, &file)?;
        Ok(())
    }

    /// Reads an index written by [`Bm25Index::save`], checking stored statistics against the documents.
    pub fn load<R: Read>(input: R) -> Result<Self, RetrievalError> {
        let file: IndexFile = serde_json::from_reader(input)?;
        if file.format != FORMAT {
            return Err(RetrievalError::Format(format!("unexpected format tag {:?}", file.format)));
        }
        if file.version != VERSION {
            return Err(RetrievalError::Format(format!("unsupported version {}", file.version)));
        }
        if file.doc_count != file.documents.len() {
            return Err(RetrievalError::Format("document count does not match stored documents".into()));
        }
        for (i, doc) in file.documents.iter().enumerate() {
            if doc.doc_id as usize != i {
                return Err(RetrievalError::Format(format!("document {i} carries id {}", doc.doc_id)));
            }
            if doc.length_uni != doc.unigram_tf.values().sum::<u32>() || doc.length_tri != doc.trigram_tf.values().sum::<u32>() {
                return Err(RetrievalError::Format(format!("document {i} lengths disagree with its term counts")));
            }
        }
        let index = Bm25Index::from_documents(file.documents, file.params)?;
        let stored = [
            FieldIndex {
                postings: file.unigram_postings,
                total_length: file.total_length[0],
            },
            FieldIndex {
                postings: file.trigram_postings,
                total_length: file.total_length[1],
            },
        ];
        if stored != index.fields {
            return Err(RetrievalError::Format("postings or statistics disagree with documents".into()));
        }
        Ok(index)
    }
}

impl PartialEq for Bm25Index {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.documents == other.documents && self.fields == other.fields
    }
}
