use intersectra_core::constructions::alpha3_family;
use intersectra_core::search::{canonical_form, CANONICALIZATION_LIMIT};
use intersectra_core::SetFamily;
use proptest::prelude::*;

fn relabel(f: &SetFamily, perm: &[u32]) -> SetFamily {
    let masks = f.masks().unwrap().into_iter().map(|m| {
        (0..perm.len())
            .filter(|&b| m >> b & 1 == 1)
            .map(|b| 1u64 << perm[b])
            .sum::<u64>()
    });
    SetFamily::from_masks(f.ground_size(), masks).unwrap()
}

/// Least sorted image over every permutation, generated by recursion.
fn naive_form(f: &SetFamily) -> Vec<u64> {
    fn go(perm: &mut Vec<u32>, k: usize, f: &SetFamily, best: &mut Option<Vec<u64>>) {
        if k == perm.len() {
            let image = relabel(f, perm).masks().unwrap();
            if best.as_ref().is_none_or(|b| image < *b) {
                *best = Some(image);
            }
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(perm, k + 1, f, best);
            perm.swap(k, i);
        }
    }
    let mut best = None;
    go(&mut (0..f.ground_size()).collect(), 0, f, &mut best);
    best.unwrap()
}

fn small_family() -> impl Strategy<Value = SetFamily> {
    (1u32..=6).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1 << n), 1..12)
            .prop_map(move |m| SetFamily::from_masks(n, m).unwrap())
    })
}

proptest! {
    #[test]
    fn form_is_the_least_relabeling(f in small_family()) {
        let form = canonical_form(&f).unwrap();
        prop_assert_eq!(form.encoding().to_vec(), naive_form(&f));
    }

    #[test]
    fn form_is_relabeling_invariant(f in small_family(), seed in any::<u64>()) {
        let n = f.ground_size() as usize;
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_form(&relabel(&f, &perm)).unwrap(), canonical_form(&f).unwrap());
    }

    #[test]
    fn fano_like_family_is_invariant(perm in Just((0u32..7).collect::<Vec<_>>()).prop_shuffle()) {
        let d = alpha3_family(7).unwrap();
        let moved = relabel(&d, &perm);
        prop_assert_eq!(canonical_form(&moved).unwrap(), canonical_form(&d).unwrap());
        prop_assert_eq!(canonical_form(&moved).unwrap().to_family().len(), 6);
    }
}

#[test]
fn limit_applies_above_ten_points() {
    let f = SetFamily::from_lists(CANONICALIZATION_LIMIT + 1, &[[1, 2]]).unwrap();
    assert!(canonical_form(&f).is_err());
    let g = SetFamily::from_lists(CANONICALIZATION_LIMIT, &[[1, 2], [3, 10]]).unwrap();
    assert_eq!(canonical_form(&g).unwrap().encoding(), [0b0011, 0b1100]);
}
