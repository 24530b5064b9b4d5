//! Packed bit sets and symmetric bit matrices for graph work.
//!
//! The clique solver spends nearly all of its time intersecting candidate
//! sets with adjacency rows, so both types expose their u64 words directly
//! and the hot operations are word-parallel.

/// A fixed-capacity set of small integers, one bit each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    nbits: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn empty(nbits: usize) -> Self {
        BitSet { nbits, words: vec![0; nbits.div_ceil(64)] }
    }

    /// The full set {0, ..., nbits-1}.
    pub fn full(nbits: usize) -> Self {
        let mut s = BitSet { nbits, words: vec![!0u64; nbits.div_ceil(64)] };
        let tail = nbits % 64;
        if tail != 0 {
            *s.words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.nbits
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn smallest(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Intersect in place with a raw word row of the same capacity.
    pub fn intersect_words(&mut self, row: &[u64]) {
        debug_assert_eq!(row.len(), self.words.len());
        for (w, &r) in self.words.iter_mut().zip(row) {
            *w &= r;
        }
    }

    /// Remove every element present in the raw word row.
    pub fn subtract_words(&mut self, row: &[u64]) {
        debug_assert_eq!(row.len(), self.words.len());
        for (w, &r) in self.words.iter_mut().zip(row) {
            *w &= !r;
        }
    }

    /// |self AND row| without materializing the intersection.
    pub fn count_intersection(&self, row: &[u64]) -> usize {
        debug_assert_eq!(row.len(), self.words.len());
        self.words.iter().zip(row).map(|(&w, &r)| (w & r).count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// A symmetric n-by-n adjacency matrix with packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let stride = n.div_ceil(64);
        BitMatrix { n, stride, bits: vec![0; n * stride] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Set both (i, j) and (j, i).
    pub fn connect(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.n && j < self.n && i != j);
        self.bits[i * self.stride + j / 64] |= 1u64 << (j % 64);
        self.bits[j * self.stride + i / 64] |= 1u64 << (i % 64);
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    /// The packed neighbor row of vertex i (length = stride words).
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }
}
