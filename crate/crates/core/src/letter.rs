use core::fmt;

/// Largest supported rank of the ambient free group.
///
/// Letters are packed into a `u8` code and letter sets into a `u64` bitmask,
/// which caps the alphabet at `2 * MAX_RANK` symbols.
pub const MAX_RANK: usize = 32;

/// A generator `x_i` or inverse generator `x_i^-1` of a free group.
///
/// Packed as `2 * (i - 1) + s` where `s` is 1 for the inverse. The derived
/// order is therefore `x1 < x1^-1 < x2 < x2^-1 < ...`, the order used for
/// canonical rotations and for deterministic enumeration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    /// The generator `x_i`. Panics unless `1 <= i <= MAX_RANK`.
    pub fn positive(generator: usize) -> Letter {
        assert!(
            (1..=MAX_RANK).contains(&generator),
            "generator index out of range"
        );
        Letter(((generator - 1) << 1) as u8)
    }

    /// The inverse generator `x_i^-1`. Panics unless `1 <= i <= MAX_RANK`.
    pub fn negative(generator: usize) -> Letter {
        Letter(Letter::positive(generator).0 | 1)
    }

    pub fn new(generator: usize, negative: bool) -> Letter {
        if negative {
            Letter::negative(generator)
        } else {
            Letter::positive(generator)
        }
    }

    /// 1-based index of the underlying generator.
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize + 1
    }

    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// Packed code, consistent with the derived order.
    pub fn code(self) -> u8 {
        self.0
    }

    pub fn from_code(code: u8) -> Letter {
        debug_assert!((code as usize) < 2 * MAX_RANK);
        Letter(code)
    }

    /// All `2 * rank` letters in ascending order.
    pub fn alphabet(rank: usize) -> impl Iterator<Item = Letter> {
        debug_assert!(rank <= MAX_RANK);
        (0..2 * rank as u8).map(Letter)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            write!(f, "x{}^-1", self.generator())
        } else {
            write!(f, "x{}", self.generator())
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Signed integer shorthand: `2` is `x2`, `-2` is `x2^-1`. Zero is rejected.
impl TryFrom<isize> for Letter {
    type Error = ();

    fn try_from(value: isize) -> Result<Letter, ()> {
        let gen = value.unsigned_abs();
        if value == 0 || gen > MAX_RANK {
            return Err(());
        }
        Ok(Letter::new(gen, value < 0))
    }
}

/// A set of letters, stored as a bitmask over packed letter codes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LetterSet(u64);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    /// All `2 * rank` letters.
    pub fn full(rank: usize) -> LetterSet {
        debug_assert!(rank <= MAX_RANK);
        if rank == MAX_RANK {
            LetterSet(u64::MAX)
        } else {
            LetterSet((1u64 << (2 * rank)) - 1)
        }
    }

    pub fn contains(self, letter: Letter) -> bool {
        self.0 & (1u64 << letter.code()) != 0
    }

    pub fn insert(&mut self, letter: Letter) {
        self.0 |= 1u64 << letter.code();
    }

    pub fn remove(&mut self, letter: Letter) {
        self.0 &= !(1u64 << letter.code());
    }

    pub fn with(self, letter: Letter) -> LetterSet {
        LetterSet(self.0 | (1u64 << letter.code()))
    }

    pub fn without(self, letter: Letter) -> LetterSet {
        LetterSet(self.0 & !(1u64 << letter.code()))
    }

    /// Letters in `self` but not `other`.
    pub fn minus(self, other: LetterSet) -> LetterSet {
        LetterSet(self.0 & !other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Member letters in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Letter> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let code = bits.trailing_zeros() as u8;
                bits &= bits - 1;
                Some(Letter::from_code(code))
            }
        })
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> LetterSet {
        let mut set = LetterSet::EMPTY;
        for letter in iter {
            set.insert(letter);
        }
        set
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, letter) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{letter}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
