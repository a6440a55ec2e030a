use lcps::{Corpus, FormatError, Index, Property, QuerySession};

fn index(docs: &[&str]) -> Index {
    Index::build(Corpus::from_strs(docs).unwrap())
}

fn answers(index: &Index, y: &[u8]) -> Vec<lcps::QueryResult> {
    let mut out = Vec::new();
    for k in 1..=index.k() {
        let mut s = QuerySession::new(index, k, &Property::ALL).unwrap();
        for &b in y {
            s.push_byte(b);
        }
        out.extend(s.finish());
    }
    out
}

#[test]
fn round_trip_preserves_answers_and_bytes() {
    let docs = ["abaababaab", "aabbaabb", "babbab", "abcacb"];
    let built = index(&docs);
    let bytes = built.to_bytes();
    let loaded = Index::from_bytes(&bytes).unwrap();
    assert_eq!(loaded.to_bytes(), bytes);
    assert_eq!(loaded.k(), 4);
    assert_eq!(loaded.corpus().doc(2).content, b"babbab");
    for y in [&b"abaabbab"[..], b"cabcab", b"", b"zzab"] {
        assert_eq!(answers(&built, y), answers(&loaded, y));
    }
    let s = loaded.stats();
    assert_eq!(s.nodes, built.stats().nodes);
    assert_eq!(s.augment.distinct_squares, built.stats().augment.distinct_squares);
}

#[test]
fn save_and_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.lcps");
    let built = index(&["abab", "baba"]);
    built.save(&path).unwrap();
    let loaded = Index::load(&path).unwrap();
    assert_eq!(answers(&built, b"abba"), answers(&loaded, b"abba"));
    let missing = Index::load(&dir.path().join("none")).unwrap_err();
    assert!(matches!(missing, FormatError::Io { .. }));
}

#[test]
fn corrupt_files_are_rejected() {
    let bytes = index(&["abaab", "aabb"]).to_bytes();
    assert!(matches!(Index::from_bytes(b"XYZ"), Err(FormatError::BadMagic)));
    let mut b = bytes.clone();
    b[0] = b'M';
    assert!(matches!(Index::from_bytes(&b), Err(FormatError::BadMagic)));
    let mut b = bytes.clone();
    b[4] = 2;
    assert!(matches!(Index::from_bytes(&b), Err(FormatError::UnsupportedVersion(2))));
    assert!(matches!(Index::from_bytes(&bytes[..5]), Err(FormatError::Truncated)));
    for cut in [6, 20, bytes.len() / 2, bytes.len() - 1] {
        assert!(Index::from_bytes(&bytes[..cut]).is_err(), "cut at {cut}");
    }
    for at in [5, 30, bytes.len() / 2, bytes.len() - 5] {
        let mut b = bytes.clone();
        b[at] ^= 0x10;
        assert!(
            matches!(Index::from_bytes(&b), Err(FormatError::Checksum { .. })),
            "flip at {at}"
        );
    }
}

#[test]
fn format_is_little_endian_with_u64_counts() {
    let bytes = index(&["ab", "ba", "aa"]).to_bytes();
    assert_eq!(&bytes[..4], b"LCPS");
    assert_eq!(bytes[4], 1);
    // sigma, k, n as u64
    let word = |i: usize| u64::from_le_bytes(bytes[5 + 8 * i..13 + 8 * i].try_into().unwrap());
    assert_eq!((word(0), word(1), word(2)), (2, 3, 6));
    let payload = &bytes[5..bytes.len() - 4];
    let crc = u32::from_le_bytes(bytes[bytes.len() - 4..].try_into().unwrap());
    assert_eq!(crc, crc32fast::hash(payload));
}
