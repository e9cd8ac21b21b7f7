use core::fmt;

/// A set of behavior indices packed into the low bits of a `u32`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BehaviorMask(u32);

impl BehaviorMask {
    pub const EMPTY: BehaviorMask = BehaviorMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        BehaviorMask(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn single(i: usize) -> Self {
        BehaviorMask(1 << i)
    }

    /// All behaviors `0..k`.
    pub const fn full(k: usize) -> Self {
        if k >= 32 {
            BehaviorMask(u32::MAX)
        } else {
            BehaviorMask((1 << k) - 1)
        }
    }

    pub const fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub const fn with(self, i: usize) -> Self {
        BehaviorMask(self.0 | (1 << i))
    }

    pub const fn union(self, other: Self) -> Self {
        BehaviorMask(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        BehaviorMask(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        BehaviorMask(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Lexicographic order of the ascending index sequences, e.g. `{0,2} < {1}` and `{0} < {0,1}`.
    pub fn lex_less(self, other: Self) -> bool {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return false;
        }
        let p = diff.trailing_zeros();
        let above = if p == 31 { 0 } else { u32::MAX << (p + 1) };
        if self.0 & (1 << p) != 0 {
            other.0 & above != 0
        } else {
            self.0 & above == 0
        }
    }
}

impl FromIterator<usize> for BehaviorMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut m = BehaviorMask::EMPTY;
        for i in iter {
            m.insert(i);
        }
        m
    }
}

impl fmt::Debug for BehaviorMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
