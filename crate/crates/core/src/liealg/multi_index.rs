use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the Lie algebra dimension (exterior bases have `2^n` elements).
pub const MAX_GENERATORS: usize = 16;

/// A strictly increasing set of generator indices `i_1 < ... < i_q`,
/// naming the basis wedge `chi_{i_1} ^ ... ^ chi_{i_q}`.
///
/// Indices are 0-based; display is 1-based. Ordering is by length, then
/// lexicographic on the sorted index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn single(i: usize) -> Self {
        assert!(i < MAX_GENERATORS, "generator index {i} out of range");
        MultiIndex(1 << i)
    }

    /// Panics unless `indices` is strictly increasing and in range.
    pub fn new(indices: &[usize]) -> Self {
        assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices must be strictly increasing");
        indices.iter().fold(MultiIndex::EMPTY, |acc, &i| MultiIndex(acc.0 | Self::single(i).0))
    }

    pub fn from_bits(bits: u32) -> Self {
        MultiIndex(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    /// Indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    pub fn without(self, i: usize) -> Self {
        MultiIndex(self.0 & !(1 << i))
    }

    pub fn with(self, i: usize) -> Self {
        MultiIndex(self.0 | (1 << i))
    }

    /// Number of members strictly below `i`.
    pub fn position(self, i: usize) -> usize {
        (self.0 & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// Sign-carrying product of basis wedges: `None` if the sets overlap,
    /// otherwise the merged index and the parity of the sorting permutation.
    pub fn wedge(self, other: MultiIndex) -> Option<(MultiIndex, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions: u32 = other.indices().map(|j| (self.0 >> (j + 1)).count_ones()).sum();
        Some((MultiIndex(self.0 | other.0), inversions % 2 == 1))
    }

    /// All multi-indices of length `q` over `n` generators, in canonical order.
    pub fn of_len(n: usize, q: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(q);
        fn rec(start: usize, n: usize, q: usize, current: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if current.len() == q {
                out.push(MultiIndex::new(current));
                return;
            }
            for i in start..n {
                current.push(i);
                rec(i + 1, n, q, current, out);
                current.pop();
            }
        }
        rec(0, n, q, &mut current, &mut out);
        out
    }

    /// All `2^n` multi-indices in canonical order.
    pub fn all(n: usize) -> Vec<MultiIndex> {
        (0..=n).flat_map(|q| Self::of_len(n, q)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                return Ordering::Equal;
            }
            // The lowest differing generator decides: whoever holds it is smaller.
            if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        write!(f, "χ")?;
        let parts: Vec<String> = self.indices().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let all = MultiIndex::all(3);
        let shown: Vec<String> = all.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "χ{1}", "χ{2}", "χ{3}", "χ{1,2}", "χ{1,3}", "χ{2,3}", "χ{1,2,3}"]);
        let mut sorted = all.clone();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn wedge_signs() {
        let (m, odd) = MultiIndex::single(0).wedge(MultiIndex::single(1)).unwrap();
        assert_eq!((m, odd), (MultiIndex::new(&[0, 1]), false));
        let (_, odd) = MultiIndex::single(1).wedge(MultiIndex::single(0)).unwrap();
        assert!(odd);
        assert!(MultiIndex::single(0).wedge(MultiIndex::single(0)).is_none());
        // chi_{2,3} ^ chi_1 = chi_{1,2,3} after two transpositions
        let (_, odd) = MultiIndex::new(&[1, 2]).wedge(MultiIndex::single(0)).unwrap();
        assert!(!odd);
    }
}
