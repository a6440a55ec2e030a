use lcps::alloc::HugePages;

#[global_allocator]
static ALLOC: HugePages = HugePages;

#[test]
fn growth_across_the_huge_threshold_keeps_contents() {
    let mut v: Vec<u32> = Vec::new();
    for i in 0..3_000_000u32 {
        v.push(i);
    }
    assert!(v.iter().enumerate().all(|(i, &x)| x as usize == i));
    v.truncate(600_000);
    v.shrink_to_fit();
    assert!(v.iter().enumerate().all(|(i, &x)| x as usize == i));
    v.truncate(10);
    v.shrink_to_fit();
    assert_eq!(v, (0..10).collect::<Vec<_>>());
}

#[test]
fn large_blocks_are_huge_aligned_and_zeroed() {
    let v = vec![0u64; 1 << 20];
    assert_eq!(v.as_ptr() as usize % (2 << 20), 0);
    assert!(v.iter().all(|&x| x == 0));
}

#[test]
fn index_builds_and_answers_under_the_allocator() {
    let doc: Vec<u8> = (0..200_000u32).map(|i| b'a' + (i.count_ones() % 2) as u8).collect();
    let index = lcps::Index::build(lcps::Corpus::from_strs(&[doc]).unwrap());
    let r = lcps::query(&index, b"abbaab", 1, lcps::Property::Palindrome).unwrap();
    assert_eq!(r.length, 4);
}
