use clap::Args;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use lcps::oracle::{doc_frequency, oracle_query, satisfies};
use lcps::{Corpus, Index, Property, QueryResult, QuerySession};

use crate::query::escape;
use crate::Failure;

/// Bounds of the exhaustive phase, clipped further by the user's limits.
const EXHAUSTIVE_DOC_LEN: usize = 3;
const EXHAUSTIVE_DOCS: usize = 2;
const EXHAUSTIVE_Y: usize = 3;

#[derive(Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 8)]
    max_doc_len: usize,
    #[arg(long, default_value_t = 3)]
    max_docs: usize,
    #[arg(long, default_value_t = 8)]
    max_y: usize,
    /// Alphabet size (letters starting at `a`); queries also use one extra
    /// letter absent from the corpus.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=25))]
    alphabet: u8,
    /// Randomized cases after the exhaustive phase.
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Test hook: shorten every answer longer than one symbol.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Clone, Serialize)]
struct Case {
    corpus: Vec<String>,
    y: String,
    k_prime: usize,
    property: Property,
    expected: usize,
    got: usize,
    problem: String,
}

struct Checker {
    inject_fault: bool,
}

impl Checker {
    fn answer(&self, index: &Index, y: &[u8], k_prime: usize) -> Vec<QueryResult> {
        let mut session = QuerySession::new(index, k_prime, &Property::ALL).expect("k' within 1..=k");
        for &b in y {
            session.push_byte(b);
        }
        let mut results = session.finish();
        if self.inject_fault {
            for r in &mut results {
                if r.length > 1 {
                    r.length -= 1;
                }
            }
        }
        results
    }

    /// The first disagreement for one property, if any.
    fn mismatch(&self, docs: &[Vec<u8>], y: &[u8], k_prime: usize, property: Property) -> Option<Case> {
        let index = Index::build(Corpus::from_strs(docs).ok()?);
        let p = Property::ALL.iter().position(|&q| q == property).unwrap();
        let r = self.answer(&index, y, k_prime)[p];
        let expected = oracle_query(docs, y, k_prime, property).length;
        let problem = if r.length != expected {
            Some("length differs from the oracle".to_string())
        } else if r.length > 0 {
            let w = y.get(r.start..r.start + r.length).unwrap_or_default();
            let freq = doc_frequency(docs, w);
            if !satisfies(property, w) {
                Some(format!("reported substring {:?} lacks the property", escape(w)))
            } else if freq < k_prime || r.docs_matched != freq {
                Some(format!("reported substring occurs in {freq} documents, index says {}", r.docs_matched))
            } else {
                None
            }
        } else {
            None
        };
        problem.map(|problem| Case {
            corpus: docs.iter().map(|d| escape(d)).collect(),
            y: escape(y),
            k_prime,
            property,
            expected,
            got: r.length,
            problem,
        })
    }

    /// Checks every threshold and property of one corpus and query.
    fn first_mismatch(&self, docs: &[Vec<u8>], y: &[u8]) -> Option<(usize, Property)> {
        let index = Index::build(Corpus::from_strs(docs).ok()?);
        for k_prime in 1..=docs.len() {
            let got = self.answer(&index, y, k_prime);
            for (r, &property) in got.iter().zip(&Property::ALL) {
                let expected = oracle_query(docs, y, k_prime, property).length;
                if r.length != expected {
                    return Some((k_prime, property));
                }
                if r.length > 0 {
                    let w = &y[r.start..r.start + r.length];
                    let freq = doc_frequency(docs, w);
                    if !satisfies(property, w) || freq < k_prime || r.docs_matched != freq {
                        return Some((k_prime, property));
                    }
                }
            }
        }
        None
    }

    /// Greedy shrinking: drop documents, symbols and threshold while the
    /// failure persists.
    fn minimize(&self, mut docs: Vec<Vec<u8>>, mut y: Vec<u8>, mut k_prime: usize, property: Property) -> Case {
        loop {
            let mut shrunk = false;
            let fails = |d: &[Vec<u8>], y: &[u8], k: usize| {
                k >= 1 && k <= d.len() && self.mismatch(d, y, k, property).is_some()
            };
            for i in 0..docs.len() {
                if docs.len() > 1 {
                    let mut d = docs.clone();
                    d.remove(i);
                    let k = k_prime.min(d.len());
                    if fails(&d, &y, k) {
                        (docs, k_prime, shrunk) = (d, k, true);
                        break;
                    }
                }
            }
            for i in 0..docs.len() {
                for j in 0..docs[i].len() {
                    if docs[i].len() > 1 {
                        let mut d = docs.clone();
                        d[i].remove(j);
                        if fails(&d, &y, k_prime) {
                            (docs, shrunk) = (d, true);
                            break;
                        }
                    }
                }
            }
            for j in 0..y.len() {
                let mut t = y.clone();
                t.remove(j);
                if fails(&docs, &t, k_prime) {
                    (y, shrunk) = (t, true);
                    break;
                }
            }
            if k_prime > 1 && fails(&docs, &y, k_prime - 1) {
                (k_prime, shrunk) = (k_prime - 1, true);
            }
            if !shrunk {
                return self.mismatch(&docs, &y, k_prime, property).expect("still failing");
            }
        }
    }
}

/// All strings over the first `sigma` letters of length `1..=max_len`.
fn strings(sigma: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<u8>> = layer
            .iter()
            .flat_map(|s: &Vec<u8>| {
                (0..sigma).map(move |c| {
                    let mut t = s.clone();
                    t.push(b'a' + c);
                    t
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn random_string(rng: &mut StdRng, sigma: u8, len: usize) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.random_range(0..sigma)).collect()
}

pub fn run(args: &CheckArgs) -> Result<(), Failure> {
    if args.max_docs == 0 || args.max_doc_len == 0 {
        return Err(Failure::new(1, "--max-docs and --max-doc-len must be positive"));
    }
    let checker = Checker {
        inject_fault: args.inject_fault,
    };
    let report = |docs: Vec<Vec<u8>>, y: Vec<u8>, (k_prime, property): (usize, Property)| {
        let case = checker.minimize(docs, y, k_prime, property);
        eprintln!(
            "mismatch: corpus {:?} y {:?} k' {} {}: expected {}, got {} ({})",
            case.corpus, case.y, case.k_prime, case.property, case.expected, case.got, case.problem
        );
        println!("{}", serde_json::to_string(&case).expect("cases serialize"));
        Failure::new(1, "")
    };

    // exhaustive phase over a small space
    let doc_pool = strings(args.alphabet, args.max_doc_len.min(EXHAUSTIVE_DOC_LEN));
    let y_pool: Vec<Vec<u8>> = std::iter::once(Vec::new())
        .chain(strings(args.alphabet + 1, args.max_y.min(EXHAUSTIVE_Y)))
        .collect();
    let mut exhaustive = 0usize;
    for size in 1..=args.max_docs.min(EXHAUSTIVE_DOCS) {
        let mut idx = vec![0usize; size];
        loop {
            let docs: Vec<Vec<u8>> = idx.iter().map(|&i| doc_pool[i].clone()).collect();
            for y in &y_pool {
                if let Some(m) = checker.first_mismatch(&docs, y) {
                    return Err(report(docs, y.clone(), m));
                }
                exhaustive += 1;
            }
            let mut pos = size;
            while pos > 0 && idx[pos - 1] == doc_pool.len() - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for q in pos..size {
                idx[q] = idx[pos - 1];
            }
        }
    }

    // randomized phase
    let mut rng = StdRng::seed_from_u64(args.seed);
    for _ in 0..args.iterations {
        let k = rng.random_range(1..=args.max_docs);
        let docs: Vec<Vec<u8>> = (0..k)
            .map(|_| {
                let len = rng.random_range(1..=args.max_doc_len);
                random_string(&mut rng, args.alphabet, len)
            })
            .collect();
        let y_len = rng.random_range(0..=args.max_y);
        let y = random_string(&mut rng, args.alphabet + 1, y_len);
        if let Some(m) = checker.first_mismatch(&docs, &y) {
            return Err(report(docs, y, m));
        }
    }
    eprintln!(
        "ok: {exhaustive} exhaustive and {} random (corpus, y) pairs, all thresholds and properties",
        args.iterations
    );
    Ok(())
}
