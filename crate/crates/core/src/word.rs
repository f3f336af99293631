use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::letter::{Letter, MAX_RANK};

/// Errors from building or parsing cyclic words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WordError {
    /// Rank is zero or exceeds `MAX_RANK`.
    InvalidRank { rank: usize },
    /// A letter's generator index exceeds the word's rank.
    GeneratorOutOfRange {
        /// Byte offset in the source text, when the letter came from parsing.
        position: Option<usize>,
        generator: usize,
        rank: usize,
    },
    /// Malformed input text; `position` is a byte offset.
    Syntax {
        position: usize,
        message: &'static str,
    },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::InvalidRank { rank } => {
                write!(f, "rank {rank} not in 1..={MAX_RANK}")
            }
            WordError::GeneratorOutOfRange {
                position,
                generator,
                rank,
            } => {
                if let Some(pos) = position {
                    write!(
                        f,
                        "generator x{generator} at byte {pos} exceeds rank {rank}"
                    )
                } else {
                    write!(f, "generator x{generator} exceeds rank {rank}")
                }
            }
            WordError::Syntax { position, message } => {
                write!(f, "syntax error at byte {position}: {message}")
            }
        }
    }
}

impl core::error::Error for WordError {}

/// Reduce a letter sequence as a cyclic word: cancel adjacent inverse pairs,
/// including pairs formed across the wrap-around.
pub(crate) fn reduce_cyclic(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == out[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

/// Index of the least rotation of `s` under the letter order, in O(|s|).
pub(crate) fn least_rotation_start(s: &[Letter]) -> usize {
    let n = s.len();
    if n < 2 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Rotate a reduced letter sequence to its least rotation.
pub(crate) fn canonicalize(mut letters: Vec<Letter>) -> Vec<Letter> {
    let start = least_rotation_start(&letters);
    letters.rotate_left(start);
    letters
}

/// A cyclically reduced word of a free group, stored in canonical form: no
/// adjacent inverse pair (including across the wrap-around) and rotated to the
/// least rotation under the letter order. Equality is equality of cyclic words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Build a cyclic word from an arbitrary letter sequence, reducing and
    /// canonicalizing. The reduction removes matched pairs, so the length
    /// drops by an even amount.
    pub fn new(rank: usize, letters: impl Into<Vec<Letter>>) -> Result<CyclicWord, WordError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(WordError::InvalidRank { rank });
        }
        let letters = letters.into();
        for &l in &letters {
            if l.generator() > rank {
                return Err(WordError::GeneratorOutOfRange {
                    position: None,
                    generator: l.generator(),
                    rank,
                });
            }
        }
        Ok(CyclicWord::from_reduced(rank, reduce_cyclic(&letters)))
    }

    pub fn empty(rank: usize) -> Result<CyclicWord, WordError> {
        CyclicWord::new(rank, Vec::new())
    }

    /// Wrap a sequence that is already cyclically reduced; only the canonical
    /// rotation is applied.
    pub(crate) fn from_reduced(rank: usize, letters: Vec<Letter>) -> CyclicWord {
        let letters = canonicalize(letters);
        let word = CyclicWord { rank, letters };
        word.debug_check();
        word
    }

    fn debug_check(&self) {
        #[cfg(debug_assertions)]
        {
            let n = self.letters.len();
            for i in 0..n {
                let next = self.letters[(i + 1) % n];
                debug_assert!(
                    n == 1 || self.letters[i] != next.inverse(),
                    "not cyclically reduced"
                );
                debug_assert!(self.letters[i].generator() <= self.rank, "letter beyond rank");
            }
            debug_assert_eq!(least_rotation_start(&self.letters), 0, "not least rotation");
        }
    }

    /// Parse the textual word grammar: terms `x<i>` with optional nonzero
    /// exponent `^<e>`, separated by spaces or `*`. The empty string is the
    /// empty word. Surrounding whitespace is ignored.
    pub fn parse(text: &str, rank: usize) -> Result<CyclicWord, WordError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(WordError::InvalidRank { rank });
        }
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut letters: Vec<Letter> = Vec::new();

        let skip_spaces = |pos: &mut usize| {
            while *pos < bytes.len() && (bytes[*pos] as char).is_whitespace() {
                *pos += 1;
            }
        };

        skip_spaces(&mut pos);
        let mut expect_term = pos < bytes.len();
        while expect_term {
            if pos >= bytes.len() || bytes[pos] != b'x' {
                return Err(WordError::Syntax {
                    position: pos,
                    message: "expected term starting with 'x'",
                });
            }
            pos += 1;
            let digit_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == digit_start {
                return Err(WordError::Syntax {
                    position: pos,
                    message: "expected generator index after 'x'",
                });
            }
            let generator: usize = text[digit_start..pos].parse().map_err(|_| {
                WordError::Syntax {
                    position: digit_start,
                    message: "generator index too large",
                }
            })?;
            if generator == 0 {
                return Err(WordError::Syntax {
                    position: digit_start,
                    message: "generator index must be at least 1",
                });
            }
            if generator > rank {
                return Err(WordError::GeneratorOutOfRange {
                    position: Some(digit_start),
                    generator,
                    rank,
                });
            }

            let mut exponent: i64 = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let exp_start = pos;
                if pos < bytes.len() && bytes[pos] == b'-' {
                    pos += 1;
                }
                let exp_digits = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == exp_digits {
                    return Err(WordError::Syntax {
                        position: exp_start,
                        message: "expected exponent after '^'",
                    });
                }
                exponent = text[exp_start..pos].parse().map_err(|_| {
                    WordError::Syntax {
                        position: exp_start,
                        message: "exponent too large",
                    }
                })?;
                if exponent == 0 {
                    return Err(WordError::Syntax {
                        position: exp_start,
                        message: "exponent must be nonzero",
                    });
                }
            }

            let letter = Letter::new(generator, exponent < 0);
            for _ in 0..exponent.unsigned_abs() {
                letters.push(letter);
            }

            // Separator: spaces, or '*' optionally surrounded by spaces.
            let before = pos;
            skip_spaces(&mut pos);
            let saw_space = pos > before;
            let saw_star = pos < bytes.len() && bytes[pos] == b'*';
            if saw_star {
                pos += 1;
                skip_spaces(&mut pos);
            }
            if pos >= bytes.len() {
                if saw_star {
                    return Err(WordError::Syntax {
                        position: pos,
                        message: "expected term after '*'",
                    });
                }
                expect_term = false;
            } else if !(saw_space || saw_star) {
                return Err(WordError::Syntax {
                    position: pos,
                    message: "expected separator between terms",
                });
            }
        }

        CyclicWord::new(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Letter> {
        self.letters.iter()
    }

    /// Occurrences of each generator (either sign), indexed by generator - 1.
    pub fn letter_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0usize; self.rank];
        for l in &self.letters {
            counts[l.generator() - 1] += 1;
        }
        counts
    }

    /// Generators that occur in the word, ascending.
    pub fn occurring_generators(&self) -> Vec<usize> {
        self.letter_counts()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The inverse cyclic word.
    pub fn inverse(&self) -> CyclicWord {
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        CyclicWord::from_reduced(self.rank, letters)
    }

    /// Canonical text form: exponent-collapsed terms separated by spaces.
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.letters.len();
        let mut i = 0;
        let mut first = true;
        while i < n {
            let l = self.letters[i];
            let mut j = i + 1;
            while j < n && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l.is_negative() { -run } else { run };
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "x{}", l.generator())?;
            } else {
                write!(f, "x{}^{}", l.generator(), exp)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord(rank {}, \"{}\")", self.rank, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(rank: usize, signed: &[isize]) -> CyclicWord {
        let letters: Vec<Letter> = signed
            .iter()
            .map(|&v| Letter::try_from(v).unwrap())
            .collect();
        CyclicWord::new(rank, letters).unwrap()
    }

    #[test]
    fn reduction_cancels_interior_pair() {
        // x1 x1^-1 x2 collapses to x2.
        assert_eq!(w(2, &[1, -1, 2]), w(2, &[2]));
        assert_eq!(w(2, &[1, -1, 2]).len(), 1);
    }

    #[test]
    fn reduction_cancels_across_wrap() {
        // x2 x3^-1 x2^-1 is cyclically x3^-1.
        let v = w(3, &[2, -3, -2]);
        assert_eq!(v, w(3, &[-3]));
        assert_eq!(v.to_text(), "x3^-1");
    }

    #[test]
    fn reduction_drops_even_length() {
        let raw = [1isize, 2, -2, -1, 3];
        let v = w(3, &raw);
        assert_eq!((raw.len() - v.len()) % 2, 0);
    }

    #[test]
    fn canonical_form_is_rotation_invariant() {
        let a = w(2, &[1, 1, 2, 2, 2]);
        let b = w(2, &[2, 2, 1, 1, 2]);
        let c = w(2, &[2, 1, 1, 2, 2]);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.to_text(), "x1^2 x2^3");
    }

    #[test]
    fn distinct_cyclic_words_stay_distinct() {
        assert_ne!(w(2, &[1, 2]), w(2, &[1, -2]));
        assert_ne!(w(2, &[1, 1, 2]), w(2, &[1, 2, 2]));
    }

    #[test]
    fn least_rotation_prefers_low_letters() {
        // x2 x1 rotates to x1 x2.
        assert_eq!(w(2, &[2, 1]).to_text(), "x1 x2");
        // x1^-1 sorts after x1.
        assert_eq!(w(1, &[-1]).to_text(), "x1^-1");
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            CyclicWord::parse("x1^2 x2^3", 2).unwrap(),
            w(2, &[1, 1, 2, 2, 2])
        );
        assert_eq!(
            CyclicWord::parse("x1*x2^-1*x1", 2).unwrap(),
            w(2, &[1, -2, 1])
        );
        assert_eq!(CyclicWord::parse("", 3).unwrap(), w(3, &[]));
        assert_eq!(CyclicWord::parse("  ", 3).unwrap().len(), 0);
        assert_eq!(
            CyclicWord::parse("x1 * x2 x1^-1", 2).unwrap(),
            w(2, &[1, 2, -1])
        );
    }

    #[test]
    fn parse_reduces_input() {
        // Parsing applies cyclic reduction.
        assert_eq!(CyclicWord::parse("x1 x1^-1", 2).unwrap().len(), 0);
        assert_eq!(CyclicWord::parse("x2 x1 x2^-1", 2).unwrap(), w(2, &[1]));
    }

    #[test]
    fn parse_rejects_bad_syntax() {
        assert!(matches!(
            CyclicWord::parse("y1", 2),
            Err(WordError::Syntax { position: 0, .. })
        ));
        assert!(matches!(
            CyclicWord::parse("x", 2),
            Err(WordError::Syntax { position: 1, .. })
        ));
        assert!(matches!(
            CyclicWord::parse("x1^0", 2),
            Err(WordError::Syntax { .. })
        ));
        assert!(matches!(
            CyclicWord::parse("x1^", 2),
            Err(WordError::Syntax { .. })
        ));
        assert!(matches!(
            CyclicWord::parse("x1 *", 2),
            Err(WordError::Syntax { .. })
        ));
        assert!(matches!(
            CyclicWord::parse("x1x2", 2),
            Err(WordError::Syntax { .. })
        ));
        assert!(matches!(
            CyclicWord::parse("x0", 2),
            Err(WordError::Syntax { .. })
        ));
    }

    #[test]
    fn parse_rejects_out_of_range_generators() {
        assert!(matches!(
            CyclicWord::parse("x3", 2),
            Err(WordError::GeneratorOutOfRange {
                generator: 3,
                rank: 2,
                position: Some(1),
            })
        ));
        assert!(matches!(
            CyclicWord::parse("x1", 0),
            Err(WordError::InvalidRank { rank: 0 })
        ));
        assert!(matches!(
            CyclicWord::parse("x1", 33),
            Err(WordError::InvalidRank { rank: 33 })
        ));
    }

    #[test]
    fn format_round_trip() {
        for text in ["", "x1", "x1^-1", "x1^2 x2^3", "x1 x2^-3 x1^2 x2"] {
            let v = CyclicWord::parse(text, 2).unwrap();
            assert_eq!(CyclicWord::parse(&v.to_text(), 2).unwrap(), v);
        }
    }

    #[test]
    fn counts_and_occurring() {
        let u = w(4, &[1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4]);
        assert_eq!(u.letter_counts(), vec![2, 3, 4, 5]);
        assert_eq!(u.occurring_generators(), vec![1, 2, 3, 4]);
        let v = w(3, &[1, -1]);
        assert_eq!(v.letter_counts(), vec![0, 0, 0]);
        assert!(v.occurring_generators().is_empty());
    }

    #[test]
    fn inverse_of_cyclic_word() {
        let u = w(2, &[1, 1, 2, 2, 2]);
        let inv = u.inverse();
        assert_eq!(inv, w(2, &[-2, -2, -2, -1, -1]));
        assert_eq!(inv.inverse(), u);
        assert_eq!(inv.len(), u.len());
    }

    #[test]
    fn single_letter_and_proper_powers() {
        // A single letter is cyclically reduced even though it "wraps" to itself.
        assert_eq!(w(1, &[1]).len(), 1);
        assert_eq!(w(1, &[1, 1, 1]).to_text(), "x1^3");
    }
}
