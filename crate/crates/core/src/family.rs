//! Duplicate-free families of subsets over a common ground set.

use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::vset::VSet;

/// A family of subsets of `[n]`, stored in colex order without duplicates.
///
/// Equality ignores the optional rank tag and the order in which members
/// were supplied.
#[derive(Clone)]
pub struct SetFamily {
    n: u32,
    rank: Option<u32>,
    members: Vec<VSet>,
}

impl SetFamily {
    /// A family without a rank tag.
    pub fn new<I: IntoIterator<Item = VSet>>(n: u32, members: I) -> Result<Self> {
        let mut members: Vec<VSet> = members.into_iter().collect();
        for m in &members {
            if m.ground_size() != n {
                return Err(Error::GroundMismatch {
                    expected: n,
                    found: m.ground_size(),
                });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily {
            n,
            rank: None,
            members,
        })
    }

    /// A family of `r`-sets; every member must have exactly `r` elements.
    pub fn uniform<I: IntoIterator<Item = VSet>>(n: u32, r: u32, members: I) -> Result<Self> {
        SetFamily::new(n, members)?.with_rank(r)
    }

    /// Convenience constructor from element lists.
    pub fn from_lists<S: AsRef<[u32]>>(n: u32, lists: &[S]) -> Result<Self> {
        let members = lists
            .iter()
            .map(|l| VSet::new(n, l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(n, members)
    }

    /// Members from bitmasks (`n <= 64`).
    pub fn from_masks<I: IntoIterator<Item = u64>>(n: u32, masks: I) -> Result<Self> {
        let members = masks
            .into_iter()
            .map(|m| VSet::from_mask(n, m))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(n, members)
    }

    /// The empty family over `[n]`.
    pub fn empty(n: u32) -> Self {
        SetFamily {
            n,
            rank: None,
            members: Vec::new(),
        }
    }

    /// Tags the family with rank `r` after checking every member.
    pub fn with_rank(mut self, r: u32) -> Result<Self> {
        if let Some(m) = self.members.iter().find(|m| m.len() != r as usize) {
            return Err(Error::RankMismatch {
                expected: r,
                found: m.len() as u32,
            });
        }
        self.rank = Some(r);
        Ok(self)
    }

    pub fn ground_size(&self) -> u32 {
        self.n
    }

    /// The rank tag, if one was set.
    pub fn rank(&self) -> Option<u32> {
        self.rank
    }

    /// The tagged rank, or the common member size of a nonempty family.
    pub fn uniform_rank(&self) -> Option<u32> {
        if self.rank.is_some() {
            return self.rank;
        }
        let first = self.members.first()?.len();
        self.members
            .iter()
            .all(|m| m.len() == first)
            .then_some(first as u32)
    }

    /// Members in colex order.
    pub fn members(&self) -> &[VSet] {
        &self.members
    }

    pub fn iter(&self) -> core::slice::Iter<'_, VSet> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &VSet) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// Whether every member of `self` is a member of `other`.
    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.n == other.n && self.members.iter().all(|m| other.contains(m))
    }

    /// Union of all members.
    pub fn support(&self) -> VSet {
        self.members
            .iter()
            .fold(VSet::empty(self.n), |acc, m| acc.union(m))
    }

    /// Member bitmasks in colex order (`n <= 64`).
    pub fn masks(&self) -> Option<Vec<u64>> {
        self.members.iter().map(VSet::as_mask).collect()
    }

    /// Members as increasing element lists.
    pub fn to_lists(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(|m| m.iter().collect()).collect()
    }

    /// Adds a member, keeping canonical order. Returns whether it was new.
    pub fn insert(&mut self, s: VSet) -> Result<bool> {
        if s.ground_size() != self.n {
            return Err(Error::GroundMismatch {
                expected: self.n,
                found: s.ground_size(),
            });
        }
        if let Some(r) = self.rank {
            if s.len() != r as usize {
                return Err(Error::RankMismatch {
                    expected: r,
                    found: s.len() as u32,
                });
            }
        }
        match self.members.binary_search(&s) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.members.insert(pos, s);
                Ok(true)
            }
        }
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.members == other.members
    }
}

impl Eq for SetFamily {}

impl Hash for SetFamily {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.members.hash(state);
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}", self.n)?;
        if let Some(r) = self.rank {
            write!(f, ", r={r}")?;
        }
        f.write_str(", ")?;
        f.debug_list().entries(self.members.iter()).finish()?;
        f.write_str(")")
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a VSet;
    type IntoIter = core::slice::Iter<'a, VSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
