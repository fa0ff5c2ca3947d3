//! Vertex subsets packed into a single machine word.
//!
//! Vertices are numbered from 1 in every public constructor and iterator;
//! vertex `a` lives in bit `a - 1`. All masks in this crate are limited to
//! [`MAX_QUBITS`] qubits.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign};

use crate::error::{Error, Result};

/// Largest qubit / vertex count representable by the packed masks.
pub const MAX_QUBITS: usize = 64;

pub(crate) fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        Err(Error::QubitCount(n))
    } else {
        Ok(())
    }
}

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub(crate) fn parity(x: u64) -> u32 {
    x.count_ones() & 1
}

/// A subset of vertices `{1, ..., 64}`; symmetric difference is `^`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from 1-based vertex labels. Repeated labels are kept once.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_QUBITS {
                return Err(Error::QubitOutOfRange { index: v, n: MAX_QUBITS });
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    /// The full vertex set `{1, ..., n}`.
    pub fn all(n: usize) -> Self {
        VertexSet(full_mask(n))
    }

    pub fn singleton(v: usize) -> Result<Self> {
        Self::from_vertices([v])
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_QUBITS).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// True when every member is at most `n`.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.0 & !full_mask(n) == 0
    }

    /// Parity of `|self ∩ other|`; `true` when odd.
    #[inline]
    pub fn odd_overlap(self, other: VertexSet) -> bool {
        parity(self.0 & other.0) == 1
    }

    /// Members in increasing order, 1-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(tz + 1)
            }
        })
    }

    /// Compact label used in operator subscripts, e.g. `267` for `{2,6,7}`.
    /// Vertices above 9 are comma separated instead.
    pub fn subscript(self) -> String {
        let members: Vec<usize> = self.iter().collect();
        if members.iter().all(|&v| v < 10) {
            members.iter().map(|v| v.to_string()).collect()
        } else {
            members.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitxor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for VertexSet {
    #[inline]
    fn bitxor_assign(&mut self, rhs: VertexSet) {
        self.0 ^= rhs.0;
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertices_are_one_based() {
        let s = VertexSet::from_vertices([2, 6, 7]).unwrap();
        assert_eq!(s.bits(), 0b110_0010);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![2, 6, 7]);
        assert!(s.contains(6) && !s.contains(1) && !s.contains(0));
        assert_eq!(s.to_string(), "{2,6,7}");
        assert_eq!(s.subscript(), "267");
    }

    #[test]
    fn rejects_vertex_zero() {
        assert!(VertexSet::from_vertices([0]).is_err());
        assert!(VertexSet::from_vertices([65]).is_err());
    }

    #[test]
    fn symmetric_difference() {
        let a = VertexSet::from_vertices([2, 6, 7]).unwrap();
        let b = VertexSet::from_vertices([4, 5, 9]).unwrap();
        assert_eq!((a ^ b).iter().collect::<Vec<_>>(), vec![2, 4, 5, 6, 7, 9]);
        assert!(!a.odd_overlap(b));
        assert!(VertexSet::all(9).fits(9) && !VertexSet::all(10).fits(9));
    }
}
