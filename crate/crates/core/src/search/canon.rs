//! Relabeling-invariant encodings by exhaustive, pruned relabeling search.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::family::SetFamily;

/// Largest ground set for which the `n!` scan is attempted.
pub const CANONICALIZATION_LIMIT: u32 = 10;

/// Lexicographically least sorted member-mask sequence over all relabelings
/// of `[n]`. Two families over the same `n` are isomorphic iff their forms
/// are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: u32,
    encoding: Vec<u64>,
}

impl CanonicalForm {
    pub fn ground_size(&self) -> u32 {
        self.n
    }

    /// Member bitmasks of the canonical relabeling, ascending.
    pub fn encoding(&self) -> &[u64] {
        &self.encoding
    }

    /// The canonical relabeling as a family.
    pub fn to_family(&self) -> SetFamily {
        let f = SetFamily::from_masks(self.n, self.encoding.iter().copied())
            .expect("canonical masks lie in the ground set");
        match f.uniform_rank() {
            Some(r) => f.with_rank(r).expect("uniform by construction"),
            None => f,
        }
    }
}

pub fn canonical_form(family: &SetFamily) -> Result<CanonicalForm> {
    let n = family.ground_size();
    if n > CANONICALIZATION_LIMIT {
        return Err(Error::CanonicalizationLimit {
            n,
            limit: CANONICALIZATION_LIMIT,
        });
    }
    let masks = family.masks().expect("n <= 64");
    let mut groups = least_relabeling(n, &[&masks]);
    Ok(CanonicalForm {
        n,
        encoding: groups.pop().expect("one group"),
    })
}

/// Masks over `[n]` with `n <= CANONICALIZATION_LIMIT` as a 1024-bit set.
type Bitmap = [u64; 16];

/// Compares two sets of distinct masks on the values in `[lo, hi)`, as
/// ascending sequences: the smaller one holds the least element of the
/// symmetric difference.
fn window_cmp(a: &Bitmap, b: &Bitmap, lo: u64, hi: u64) -> Ordering {
    let mut w = (lo >> 6) as usize;
    while (w as u64) << 6 < hi {
        let base = (w as u64) << 6;
        let mut keep = u64::MAX;
        if lo > base {
            keep &= u64::MAX << (lo - base);
        }
        if hi < base + 64 {
            keep &= (1u64 << (hi - base)) - 1;
        }
        let d = (a[w] ^ b[w]) & keep;
        if d != 0 {
            return if a[w] & d & d.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
        w += 1;
    }
    Ordering::Equal
}

fn unpack(b: &Bitmap) -> Vec<u64> {
    let mut out = Vec::new();
    for (w, &word) in b.iter().enumerate() {
        let mut word = word;
        while word != 0 {
            out.push((w as u64) << 6 | word.trailing_zeros() as u64);
            word &= word - 1;
        }
    }
    out
}

fn set_bit(b: &mut Bitmap, m: u64) {
    b[(m >> 6) as usize] |= 1 << (m & 63);
}

fn clear_bit(b: &mut Bitmap, m: u64) {
    b[(m >> 6) as usize] &= !(1 << (m & 63));
}

/// Backtracking over label assignments. Label `j` goes to some unused
/// point; a member becomes fully labeled exactly when its last point is
/// placed, so its image lies in `[2^j, 2^(j+1))` and the images arrive in
/// order. A branch is cut once its images so far compare greater than the
/// best relabeling found.
///
/// Two leaves with identical images differ by an automorphism fixing the
/// points placed before they diverge. Each node remembers the first leaf
/// below it; a later leaf reproducing it abandons the branch at the
/// divergence point, and the automorphisms collected so far merge the
/// remaining choices at a node into orbits, of which only one point each
/// is tried.
struct Scan<'a> {
    n: u32,
    groups: &'a [&'a [u64]],
    containing: Vec<Vec<(usize, usize)>>,
    /// Point to label, valid for placed points.
    label: [u32; 64],
    /// Label to point for labels below the current depth.
    pre: [u8; 16],
    used: u64,
    cur: Vec<Bitmap>,
    placed: Vec<usize>,
    best: Vec<Bitmap>,
    /// Set while `best` is a canonical form: reaching it again proves the
    /// input is in its class, so nothing smaller exists.
    stop_on_equal: bool,
    done: bool,
    first: Vec<Option<Leaf>>,
    automorphisms: Vec<[u8; 16]>,
}

struct Leaf {
    images: Vec<Bitmap>,
    pre: [u8; 16],
}

/// Kept automorphisms; more only speed up the scan.
const MAX_AUTOMORPHISMS: usize = 64;

#[derive(Default)]
struct Flow {
    /// `best` was replaced below.
    updated: bool,
    /// Abandon the current child of the node at this depth.
    abort_to: Option<u32>,
}

impl Scan<'_> {
    fn image(&self, m: u64) -> u64 {
        let mut img = 0;
        let mut rest = m;
        while rest != 0 {
            img |= 1 << self.label[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        img
    }

    /// Overall comparison of the partial relabeling with `best`; `None`
    /// while undecided.
    fn verdict(&self, status: &[Ordering]) -> Option<Ordering> {
        for (g, &s) in status.iter().enumerate() {
            if s != Ordering::Equal {
                return Some(s);
            }
            if self.placed[g] < self.groups[g].len() {
                return None;
            }
        }
        Some(Ordering::Equal)
    }

    fn leaf(&mut self, status: &[Ordering]) -> Flow {
        let mut flow = Flow::default();
        match self.verdict(status) {
            Some(Ordering::Less) => {
                self.best.clone_from(&self.cur);
                self.stop_on_equal = false;
                flow.updated = true;
            }
            Some(Ordering::Equal) if self.stop_on_equal => {
                self.done = true;
                return flow;
            }
            _ => {}
        }
        let n = self.n as usize;
        for fl in self.first.iter().flatten() {
            if fl.images != self.cur {
                continue;
            }
            let Some(e) = (0..n).find(|&i| fl.pre[i] != self.pre[i]) else {
                continue;
            };
            if flow.abort_to.is_none_or(|a| (e as u32) < a) {
                flow.abort_to = Some(e as u32);
                if self.automorphisms.len() < MAX_AUTOMORPHISMS {
                    let mut gamma = [0u8; 16];
                    for (x, g) in gamma.iter_mut().enumerate().take(n) {
                        *g = fl.pre[self.label[x] as usize];
                    }
                    self.automorphisms.push(gamma);
                }
            }
        }
        let pre = self.pre;
        for slot in self.first.iter_mut().filter(|s| s.is_none()) {
            *slot = Some(Leaf {
                images: self.cur.clone(),
                pre,
            });
        }
        flow
    }

    /// Least point of each orbit under the known automorphisms that fix
    /// every point placed before depth `j`.
    fn orbit_roots(&self, j: u32) -> [u8; 16] {
        let mut root = [0u8; 16];
        for (x, r) in root.iter_mut().enumerate() {
            *r = x as u8;
        }
        fn find(root: &mut [u8; 16], mut x: u8) -> u8 {
            while root[x as usize] != x {
                root[x as usize] = root[root[x as usize] as usize];
                x = root[x as usize];
            }
            x
        }
        let fixed = &self.pre[..j as usize];
        for gamma in &self.automorphisms {
            if fixed.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            for x in 0..self.n as u8 {
                let (a, b) = (find(&mut root, x), find(&mut root, gamma[x as usize]));
                let (lo, hi) = (a.min(b), a.max(b));
                root[hi as usize] = lo;
            }
        }
        for x in 0..self.n as u8 {
            root[x as usize] = find(&mut root, x);
        }
        root
    }

    fn descend(&mut self, j: u32, status: &mut [Ordering]) -> Flow {
        if j == self.n {
            return self.leaf(status);
        }
        self.first[j as usize] = None;
        let mut flow = Flow::default();
        let mut child = status.to_vec();
        let mut fresh: Vec<(usize, u64)> = Vec::new();
        let mut known = usize::MAX;
        let mut roots = [0u8; 16];
        for x in 0..self.n {
            if self.used >> x & 1 == 1 {
                continue;
            }
            if known != self.automorphisms.len() {
                known = self.automorphisms.len();
                roots = self.orbit_roots(j);
            }
            if roots[x as usize] != x as u8 {
                continue;
            }
            self.used |= 1 << x;
            self.label[x as usize] = j;
            self.pre[j as usize] = x as u8;
            fresh.clear();
            for &(g, i) in &self.containing[x as usize] {
                let m = self.groups[g][i];
                if m & !self.used == 0 {
                    fresh.push((g, self.image(m)));
                }
            }
            for &(g, img) in &fresh {
                set_bit(&mut self.cur[g], img);
                self.placed[g] += 1;
            }
            child.copy_from_slice(status);
            let (lo, hi) = (1u64 << j, 1u64 << (j + 1));
            for (g, s) in child.iter_mut().enumerate() {
                if *s == Ordering::Equal {
                    *s = window_cmp(&self.cur[g], &self.best[g], lo, hi);
                }
            }
            let below = if self.verdict(&child) != Some(Ordering::Greater) {
                self.descend(j + 1, &mut child)
            } else {
                Flow::default()
            };
            for &(g, img) in &fresh {
                clear_bit(&mut self.cur[g], img);
                self.placed[g] -= 1;
            }
            self.used &= !(1 << x);
            if below.updated {
                // The new best extends this prefix, so every window so far
                // now compares equal.
                flow.updated = true;
                status.fill(Ordering::Equal);
            }
            if self.done {
                break;
            }
            if let Some(e) = below.abort_to {
                if e < j {
                    flow.abort_to = Some(e);
                    break;
                }
            }
        }
        flow
    }
}

/// Relabels all groups of masks by a common permutation of `[n]` and
/// returns the least tuple of sorted groups (compared group by group).
/// Members within a group must be distinct.
pub(crate) fn least_relabeling(n: u32, groups: &[&[u64]]) -> Vec<Vec<u64>> {
    let (best, _) = scan(n, groups, None);
    best.iter().map(unpack).collect()
}

/// The canonical encoding of `masks` if it is strictly below `bound`, which
/// must itself be a canonical encoding over `[n]`.
pub(crate) fn least_relabeling_below(n: u32, masks: &[u64], bound: &[u64]) -> Option<Vec<u64>> {
    let (mut best, improved) = scan(n, &[masks], Some(&[bound]));
    improved.then(|| unpack(&best.pop().expect("one group")))
}

fn scan(n: u32, groups: &[&[u64]], bound: Option<&[&[u64]]>) -> (Vec<Bitmap>, bool) {
    assert!(n <= CANONICALIZATION_LIMIT);
    let mut containing = alloc::vec![Vec::new(); n as usize];
    let mut cur = alloc::vec![[0u64; 16]; groups.len()];
    let mut placed = alloc::vec![0; groups.len()];
    let mut best = alloc::vec![[0u64; 16]; groups.len()];
    for (g, group) in groups.iter().enumerate() {
        for (i, &m) in group.iter().enumerate() {
            debug_assert!(m >> n == 0);
            set_bit(&mut best[g], m);
            let mut rest = m;
            while rest != 0 {
                containing[rest.trailing_zeros() as usize].push((g, i));
                rest &= rest - 1;
            }
            if m == 0 {
                set_bit(&mut cur[g], 0);
                placed[g] += 1;
            }
        }
    }
    if let Some(bound) = bound {
        for (b, group) in best.iter_mut().zip(bound) {
            *b = [0; 16];
            for &m in group.iter() {
                set_bit(b, m);
            }
        }
    }
    let mut scan = Scan {
        n,
        groups,
        containing,
        label: [0; 64],
        pre: [0; 16],
        used: 0,
        cur,
        placed,
        best,
        stop_on_equal: bound.is_some(),
        done: false,
        first: (0..=n).map(|_| None).collect(),
        automorphisms: Vec::new(),
    };
    let mut status = alloc::vec![Ordering::Equal; groups.len()];
    let improved = scan.descend(0, &mut status).updated;
    (scan.best, improved)
}
