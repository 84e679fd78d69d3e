use intersectra::format::{parse_family, read_family, write_family};
use intersectra_core::SetFamily;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = SetFamily> {
    (1u32..=20).prop_flat_map(|n| {
        prop::collection::vec(1..(1u64 << n), 0..12)
            .prop_map(move |masks| SetFamily::from_masks(n, masks).unwrap())
    })
}

fn uniform_family() -> impl Strategy<Value = SetFamily> {
    (2u32..=10, 1u32..=4).prop_flat_map(|(n, r)| {
        let r = r.min(n);
        prop::collection::vec(
            prop::sample::subsequence((1..=n).collect::<Vec<_>>(), r as usize),
            1..10,
        )
        .prop_map(move |sets| {
            let masks = sets
                .iter()
                .map(|s| s.iter().fold(0u64, |m, &e| m | 1 << (e - 1)));
            SetFamily::from_masks(n, masks)
                .unwrap()
                .with_rank(r)
                .unwrap()
        })
    })
}

proptest! {
    #[test]
    fn write_then_parse_is_identity(f in family()) {
        let text = write_family(&f);
        let back = parse_family(&text).unwrap();
        prop_assert_eq!(back.ground_size(), f.ground_size());
        prop_assert_eq!(back.to_lists(), f.to_lists());
        prop_assert_eq!(write_family(&back), text);
    }

    #[test]
    fn rank_header_survives(f in uniform_family()) {
        let text = write_family(&f);
        let suffix = format!(" r={}", f.rank().unwrap());
        prop_assert!(text.lines().next().unwrap().ends_with(&suffix));
        prop_assert_eq!(parse_family(&text).unwrap().rank(), f.rank());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(f in family(), pad in 0usize..3) {
        let mut noisy = String::from("# generated\n");
        for line in write_family(&f).lines() {
            noisy.push_str(&"\n".repeat(pad));
            noisy.push_str(&format!("  {line}  \n# x\n"));
        }
        prop_assert_eq!(parse_family(&noisy).unwrap().to_lists(), f.to_lists());
    }
}

#[test]
fn reads_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fano.txt");
    let text = "n=7 r=3\n1 2 3\n1 4 5\n2 4 6\n3 5 6\n3 4 7\n2 5 7\n1 6 7\n";
    std::fs::write(&path, text).unwrap();
    let f = read_family(&path).unwrap();
    assert_eq!(f.len(), 7);
    assert_eq!(write_family(&f), text);
    assert!(read_family(&dir.path().join("missing.txt")).is_err());
}
