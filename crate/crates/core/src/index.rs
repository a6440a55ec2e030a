//! The complete query index: corpus, augmented suffix tree, property
//! annotations and level-ancestor support.

use std::time::Instant;

use serde::Serialize;

use crate::corpus::{Corpus, GlobalText, Symbol};
use crate::gst::{LevelAncestors, SuffixTree};
use crate::props::{AugmentStats, PropertyIndex};
use crate::suffix::{build_suffix_bundle, compute_runs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("threshold {k_prime} outside 1..={k}")]
pub struct InvalidThreshold {
    pub k_prime: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct BuildStats {
    pub n: usize,
    pub k: usize,
    pub sigma: usize,
    pub runs: usize,
    pub original_nodes: usize,
    pub nodes: usize,
    #[serde(flatten)]
    pub augment: AugmentStats,
    /// Wall-clock build time; zero for an index read from disk.
    pub build_ms: f64,
}

#[derive(Debug, Clone)]
pub struct Index {
    pub(crate) corpus: Corpus,
    pub(crate) text: GlobalText,
    pub(crate) tree: SuffixTree,
    pub(crate) props: PropertyIndex,
    pub(crate) ancestors: LevelAncestors,
    pub(crate) stats: BuildStats,
}

impl Index {
    pub fn build(corpus: Corpus) -> Index {
        let started = Instant::now();
        let text = corpus.concatenate();
        let sa = build_suffix_bundle(&text);
        let runs = compute_runs(&text, &sa);
        let mut tree = SuffixTree::build(&text, &sa);
        let original_nodes = tree.len();
        let (props, augment) = PropertyIndex::build(&mut tree, &text, &sa, &runs);
        drop(sa);
        let ancestors = LevelAncestors::new(&tree, false);
        let stats = BuildStats {
            n: corpus.n(),
            k: corpus.k(),
            sigma: corpus.sigma(),
            runs: runs.len(),
            original_nodes,
            nodes: tree.len(),
            augment,
            build_ms: started.elapsed().as_secs_f64() * 1e3,
        };
        Index {
            corpus,
            text,
            tree,
            props,
            ancestors,
            stats,
        }
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    pub fn text(&self) -> &GlobalText {
        &self.text
    }

    pub fn tree(&self) -> &SuffixTree {
        &self.tree
    }

    pub fn props(&self) -> &PropertyIndex {
        &self.props
    }

    pub fn ancestors(&self) -> &LevelAncestors {
        &self.ancestors
    }

    pub fn stats(&self) -> &BuildStats {
        &self.stats
    }

    pub fn k(&self) -> usize {
        self.corpus.k()
    }

    pub fn check_threshold(&self, k_prime: usize) -> Result<u32, InvalidThreshold> {
        if k_prime == 0 || k_prime > self.k() {
            return Err(InvalidThreshold {
                k_prime,
                k: self.k(),
            });
        }
        Ok(k_prime as u32)
    }

    /// Query bytes mapped to corpus symbols; bytes outside the alphabet
    /// become `None`, which never matches.
    pub fn encode(&self, y: &[u8]) -> Vec<Option<Symbol>> {
        self.corpus.encode(y)
    }

    /// Number of documents containing `T[pos .. pos + len]`.
    pub fn docs_containing(&self, pos: usize, len: usize) -> usize {
        if len == 0 {
            return self.k();
        }
        let leaf = self.tree.leaf_of_suffix(pos);
        let v = self
            .ancestors
            .weighted_ancestor(&self.tree, leaf, len as u32);
        self.tree.doc_count(v) as usize
    }
}
