use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::corpus::{Corpus, Symbol};
use crate::suffix::{
    build_suffix_bundle, compute_runs, is_palindrome, is_periodic, is_square, is_square_free,
};

struct Built {
    corpus: Corpus,
    text: GlobalText,
    tree: SuffixTree,
    props: PropertyIndex,
    stats: AugmentStats,
}

fn build(docs: &[&str]) -> Built {
    let corpus = Corpus::from_strs(docs).unwrap();
    let text = corpus.concatenate();
    let sa = build_suffix_bundle(&text);
    let runs = compute_runs(&text, &sa);
    let mut tree = SuffixTree::build(&text, &sa);
    let (props, stats) = PropertyIndex::build(&mut tree, &text, &sa, &runs);
    Built {
        corpus,
        text,
        tree,
        props,
        stats,
    }
}

fn sym(c: &Corpus, s: &str) -> Vec<Symbol> {
    s.bytes().map(|b| c.map_symbol(b).unwrap()).collect()
}

fn distinct_substrings(text: &GlobalText, keep: impl Fn(&[Symbol]) -> bool) -> BTreeSet<Vec<Symbol>> {
    let mut out = BTreeSet::new();
    for d in 0..text.k() {
        let s = text.doc_symbols(d);
        for i in 0..s.len() {
            for j in i + 1..=s.len() {
                if keep(&s[i..j]) {
                    out.insert(s[i..j].to_vec());
                }
            }
        }
    }
    out
}

fn longest_prefix(s: &[Symbol], pred: impl Fn(&[Symbol]) -> bool) -> u32 {
    (1..=s.len()).rev().find(|&l| pred(&s[..l])).unwrap_or(0) as u32
}

fn locus_of(b: &Built, s: &[Symbol]) -> Locus {
    let tree = &b.tree;
    for v in 0..tree.len() as NodeId {
        let label = tree.label(&b.text, v);
        let top = if v == tree.root() { 0 } else { tree.depth(tree.parent(v)) };
        if (top as usize) < s.len() && s.len() <= label.len() && &label[..s.len()] == s {
            return Locus {
                node: v,
                depth: s.len() as u32,
            };
        }
    }
    panic!("no locus for {s:?}");
}

fn check(b: &Built) {
    let tree = &b.tree;
    let text = &b.text;
    let flagged = |f: &dyn Fn(NodeId) -> bool| -> BTreeSet<Vec<Symbol>> {
        (0..tree.len() as NodeId)
            .filter(|&v| f(v))
            .map(|v| tree.label(text, v).to_vec())
            .collect()
    };
    let squares = distinct_substrings(text, is_square);
    let pals = distinct_substrings(text, is_palindrome);
    assert_eq!(flagged(&|v| b.props.square.is_square(v)), squares);
    assert_eq!(flagged(&|v| b.props.palindrome.is_palindrome(v)), pals);
    assert_eq!(b.stats.distinct_squares, squares.len());
    assert_eq!(b.stats.distinct_palindromes, pals.len());
    assert!(squares.len() <= 2 * b.corpus.n());
    assert!(pals.len() <= b.corpus.n());
    assert!(b.stats.max_squares_per_edge <= 2, "{:?}", b.stats);
    assert!(b.stats.max_palindromes_per_edge <= 1, "{:?}", b.stats);
    assert_eq!(b.stats.periodic_conflicts, 0);

    for v in 0..tree.len() as NodeId {
        if v == tree.root() {
            continue;
        }
        if let Some(p) = b.props.periodic.ext_period(v) {
            let label = tree.label(text, v);
            assert!(is_periodic(label));
            assert_eq!(crate::suffix::smallest_period(label), p as usize);
        }
        let label = tree.label(text, v);
        let top = tree.depth(tree.parent(v));
        for depth in top + 1..=tree.depth(v) {
            let s = &label[..depth as usize];
            if text.is_sentinel(tree.occ(v) as usize + depth as usize - 1) {
                continue;
            }
            let locus = Locus { node: v, depth };
            assert_eq!(
                b.props.candidate_square(tree, locus),
                longest_prefix(s, is_square),
                "square prefix of {s:?}"
            );
            assert_eq!(
                b.props.candidate_palindrome(tree, locus),
                longest_prefix(s, is_palindrome),
                "palindrome prefix of {s:?}"
            );
            assert_eq!(
                b.props.candidate_periodic(tree, locus),
                longest_prefix(s, is_periodic),
                "periodic prefix of {s:?}"
            );
            assert_eq!(
                b.props.candidate_squarefree(tree.occ(v) as usize, depth as usize) as u32,
                longest_prefix(s, is_square_free),
                "square-free prefix of {s:?}"
            );
        }
    }
    let root = Locus {
        node: tree.root(),
        depth: 0,
    };
    assert_eq!(b.props.candidate_square(tree, root), 0);
    assert_eq!(b.props.candidate_palindrome(tree, root), 0);
    assert_eq!(b.props.candidate_periodic(tree, root), 0);
}

#[test]
fn square_examples() {
    let b = build(&["aabaab"]);
    let c = &b.corpus;
    let want: BTreeSet<Vec<Symbol>> = [sym(c, "aa"), sym(c, "aabaab")].into_iter().collect();
    let got: BTreeSet<Vec<Symbol>> = (0..b.tree.len() as NodeId)
        .filter(|&v| b.props.square.is_square(v))
        .map(|v| b.tree.label(&b.text, v).to_vec())
        .collect();
    assert_eq!(got, want);
    assert_eq!(b.props.candidate_square(&b.tree, locus_of(&b, &sym(c, "aabaab"))), 6);
    assert_eq!(b.props.candidate_square(&b.tree, locus_of(&b, &sym(c, "aaba"))), 2);
    assert_eq!(b.props.candidate_square(&b.tree, locus_of(&b, &sym(c, "ab"))), 0);
    check(&b);

    check(&build(&["babbababbaaa"]));
    let b = build(&["abc"]);
    assert_eq!(b.stats.distinct_squares, 0);
    check(&b);
}

#[test]
fn periodic_examples() {
    let b = build(&["abababa"]);
    let c = &b.corpus;
    let abab = locus_of(&b, &sym(c, "abab"));
    let full = locus_of(&b, &sym(c, "abababa"));
    assert_eq!(b.props.periodic.ext_period(abab.node), Some(2));
    assert_eq!(b.props.candidate_periodic(&b.tree, locus_of(&b, &sym(c, "ababa"))), 5);
    assert_eq!(b.props.candidate_periodic(&b.tree, locus_of(&b, &sym(c, "ab"))), 0);
    assert_eq!(b.props.candidate_periodic(&b.tree, full), 7);
    assert_eq!(b.props.candidate_periodic(&b.tree, locus_of(&b, &sym(c, "bababa"))), 6);
    check(&b);

    let b = build(&["aababababbababab"]);
    check(&b);
    let b = build(&["abc"]);
    assert!((0..b.tree.len() as NodeId).all(|v| b.props.periodic.ext_period(v).is_none()));
}

#[test]
fn palindrome_examples() {
    let b = build(&["ababa"]);
    let c = &b.corpus;
    assert_eq!(b.stats.distinct_palindromes, 5);
    assert_eq!(b.props.candidate_palindrome(&b.tree, locus_of(&b, &sym(c, "abab"))), 3);
    assert_eq!(b.props.candidate_palindrome(&b.tree, locus_of(&b, &sym(c, "ba"))), 1);
    check(&b);
    assert_eq!(build(&["aaa"]).stats.distinct_palindromes, 3);
    assert_eq!(build(&["ab"]).stats.distinct_palindromes, 2);
}

#[test]
fn lyndon_windows() {
    let b = build(&["aabab"]);
    let mut scratch = Vec::new();
    // "ab" occurs at 1 and 3; the window covers both end positions
    assert_eq!(lyndon_candidate(&b.text, &mut scratch, 3, 0, 2, 0), Some((2, 0)));
    assert_eq!(lyndon_candidate(&b.text, &mut scratch, 3, 0, 2, 2), None);
    assert_eq!(lyndon_candidate(&b.text, &mut scratch, 3, 0, 0, 0), None);
    // "aab" placed at y position 4, scanned from a later first end
    assert_eq!(lyndon_candidate(&b.text, &mut scratch, 0, 4, 3, 6), Some((3, 4)));
    assert_eq!(lyndon_candidate(&b.text, &mut scratch, 0, 4, 3, 5), Some((3, 4)));
    // "aa" with only its second end new: the Lyndon suffix is "a"
    assert_eq!(lyndon_candidate(&b.text, &mut scratch, 0, 4, 2, 5), Some((1, 5)));
}

#[test]
fn exhaustive_binary_corpora() {
    for len in 1..=9 {
        for bits in 0u32..(1 << len) {
            let s: String = (0..len).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' }).collect();
            check(&build(&[&s]));
        }
    }
    for la in 1..=4 {
        for lb in 1..=4 {
            for ba in 0u32..(1 << la) {
                for bb in 0u32..(1 << lb) {
                    let a: String = (0..la).map(|i| if ba >> i & 1 == 1 { 'b' } else { 'a' }).collect();
                    let c: String = (0..lb).map(|i| if bb >> i & 1 == 1 { 'b' } else { 'a' }).collect();
                    check(&build(&[&a, &c]));
                }
            }
        }
    }
}

#[test]
fn fibonacci_bounds() {
    let (mut a, mut b) = (String::from("a"), String::from("ab"));
    while b.len() < 100_000 {
        let c = format!("{b}{a}");
        a = b;
        b = c;
    }
    let word = &b[..100_000];
    let built = build(&[word]);
    let s = built.stats;
    assert!(s.distinct_squares <= 2 * word.len());
    assert!(s.distinct_palindromes <= word.len());
    assert!(s.max_squares_per_edge <= 2);
    assert!(s.max_palindromes_per_edge <= 1);
    assert_eq!(s.periodic_conflicts, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_corpora(docs in proptest::collection::vec("[abc]{1,14}", 1..4)) {
        let refs: Vec<&str> = docs.iter().map(|s| s.as_str()).collect();
        check(&build(&refs));
    }

    #[test]
    fn repetitive_corpora(unit in "[ab]{1,4}", reps in 2usize..6, tail in "[ab]{0,3}") {
        let doc = format!("{}{}", unit.repeat(reps), tail);
        check(&build(&[&doc, &unit]));
    }
}
