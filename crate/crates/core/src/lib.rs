//! Longest common property-preserved substring queries over a document
//! collection: given a query string `y`, a threshold `k'` and a property
//! (square-free, square, periodic, palindrome, Lyndon), find the longest
//! substring of `y` with that property occurring in at least `k'`
//! documents.

pub mod alloc;
pub mod codec;
pub mod corpus;
pub mod gst;
pub mod index;
pub mod ms;
pub mod oracle;
pub mod props;
pub mod query;
pub mod suffix;

pub use codec::FormatError;
pub use corpus::{Corpus, CorpusError, GlobalText, Symbol};
pub use index::{BuildStats, Index, InvalidThreshold};
pub use ms::{matching_statistics, Emission, MsCursor};
pub use query::{query, query_symbols, self_query_offline, QueryResult, QuerySession};
pub use suffix::Property;
