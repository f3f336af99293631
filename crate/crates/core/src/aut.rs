use alloc::vec::Vec;
use core::fmt;

use crate::letter::{Letter, LetterSet, MAX_RANK};
use crate::word::{reduce_cyclic, CyclicWord, WordError};

/// Errors from building or applying automorphisms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AutError {
    InvalidRank { rank: usize },
    /// The multiplier or one of its letters lies outside the rank.
    LetterOutOfRange { generator: usize, rank: usize },
    /// The images of a signed permutation do not hit every generator once.
    NotBijective,
    /// The cut set contains the multiplier or its inverse.
    MultiplierInCut { multiplier: Letter },
    RankMismatch { aut_rank: usize, word_rank: usize },
}

impl fmt::Display for AutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutError::InvalidRank { rank } => write!(f, "rank {rank} not in 1..={MAX_RANK}"),
            AutError::LetterOutOfRange { generator, rank } => {
                write!(f, "generator x{generator} exceeds rank {rank}")
            }
            AutError::NotBijective => f.write_str("images do not form a signed permutation"),
            AutError::MultiplierInCut { multiplier } => {
                write!(f, "cut set must not contain {multiplier} or its inverse")
            }
            AutError::RankMismatch {
                aut_rank,
                word_rank,
            } => write!(
                f,
                "automorphism of rank {aut_rank} applied to word of rank {word_rank}"
            ),
        }
    }
}

impl core::error::Error for AutError {}

impl From<WordError> for AutError {
    fn from(err: WordError) -> AutError {
        match err {
            WordError::InvalidRank { rank } => AutError::InvalidRank { rank },
            WordError::GeneratorOutOfRange {
                generator, rank, ..
            } => AutError::LetterOutOfRange { generator, rank },
            WordError::Syntax { .. } => unreachable!("no parsing here"),
        }
    }
}

/// A signed permutation of the generators: each `x_i` maps to a generator or
/// inverse generator, bijectively up to sign.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PermAut {
    images: Vec<Letter>,
}

impl PermAut {
    pub fn identity(rank: usize) -> PermAut {
        PermAut {
            images: (1..=rank).map(Letter::positive).collect(),
        }
    }

    /// `images[i]` is the image of `x_(i+1)`.
    pub fn new(images: Vec<Letter>) -> Result<PermAut, AutError> {
        let rank = images.len();
        if rank == 0 || rank > MAX_RANK {
            return Err(AutError::InvalidRank { rank });
        }
        let mut seen = LetterSet::EMPTY;
        for &l in &images {
            if l.generator() > rank {
                return Err(AutError::LetterOutOfRange {
                    generator: l.generator(),
                    rank,
                });
            }
            seen.insert(Letter::positive(l.generator()));
        }
        if seen.len() != rank {
            return Err(AutError::NotBijective);
        }
        Ok(PermAut { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Letter] {
        &self.images
    }

    /// Image of a letter; inversion is respected.
    pub fn image(&self, letter: Letter) -> Letter {
        let base = self.images[letter.generator() - 1];
        if letter.is_negative() {
            base.inverse()
        } else {
            base
        }
    }

    /// Composition: apply `self` first, then `next`.
    pub fn then(&self, next: &PermAut) -> PermAut {
        debug_assert_eq!(self.rank(), next.rank());
        PermAut {
            images: self.images.iter().map(|&l| next.image(l)).collect(),
        }
    }

    pub fn inverse(&self) -> PermAut {
        let mut images = self.images.clone();
        for (i, &l) in self.images.iter().enumerate() {
            images[l.generator() - 1] = Letter::new(i + 1, l.is_negative());
        }
        PermAut { images }
    }

    /// Image set of a letter set.
    pub fn image_set(&self, set: LetterSet) -> LetterSet {
        set.iter().map(|l| self.image(l)).collect()
    }

    pub fn apply(&self, word: &CyclicWord) -> Result<CyclicWord, AutError> {
        if self.rank() != word.rank() {
            return Err(AutError::RankMismatch {
                aut_rank: self.rank(),
                word_rank: word.rank(),
            });
        }
        Ok(self.apply_unchecked(word))
    }

    /// A letter permutation keeps a reduced sequence reduced, so only the
    /// canonical rotation needs recomputing.
    pub(crate) fn apply_unchecked(&self, word: &CyclicWord) -> CyclicWord {
        let letters: Vec<Letter> = word.iter().map(|&l| self.image(l)).collect();
        CyclicWord::from_reduced(word.rank(), letters)
    }
}

impl fmt::Display for PermAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("perm(")?;
        for (i, l) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let sign = if l.is_negative() { '-' } else { '+' };
            write!(f, "{}\u{2192}{}{}", i + 1, l.generator(), sign)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for PermAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The non-permutation Whitehead automorphisms: a cut set `A` of letters and a
/// multiplier letter `a` with `a, a^-1` outside `A`. Letters of `A` pick up
/// `a` on the right; letters whose inverse also lies in `A` are conjugated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CutAut {
    rank: usize,
    cut: LetterSet,
    multiplier: Letter,
}

impl CutAut {
    pub fn new(rank: usize, cut: LetterSet, multiplier: Letter) -> Result<CutAut, AutError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(AutError::InvalidRank { rank });
        }
        if multiplier.generator() > rank {
            return Err(AutError::LetterOutOfRange {
                generator: multiplier.generator(),
                rank,
            });
        }
        if let Some(l) = cut.iter().find(|l| l.generator() > rank) {
            return Err(AutError::LetterOutOfRange {
                generator: l.generator(),
                rank,
            });
        }
        if cut.contains(multiplier) || cut.contains(multiplier.inverse()) {
            return Err(AutError::MultiplierInCut { multiplier });
        }
        Ok(CutAut {
            rank,
            cut,
            multiplier,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cut(&self) -> LetterSet {
        self.cut
    }

    pub fn multiplier(&self) -> Letter {
        self.multiplier
    }

    /// Largest generator index occurring one-sided in the cut (zero if none):
    /// generators with exactly one of `x_i`, `x_i^-1` in the cut.
    pub fn degree(&self) -> usize {
        let mut max = 0;
        for g in 1..=self.rank {
            let pos = self.cut.contains(Letter::positive(g));
            let neg = self.cut.contains(Letter::negative(g));
            if pos != neg {
                max = g;
            }
        }
        max
    }

    /// The automorphism with complementary cut and inverted multiplier; it has
    /// the same action on every cyclic word.
    pub fn complement(&self) -> CutAut {
        let excluded = LetterSet::EMPTY
            .with(self.multiplier)
            .with(self.multiplier.inverse());
        CutAut {
            rank: self.rank,
            cut: LetterSet::full(self.rank).minus(self.cut).minus(excluded),
            multiplier: self.multiplier.inverse(),
        }
    }

    /// The group inverse: same cut, inverted multiplier.
    pub fn inverse(&self) -> CutAut {
        CutAut {
            rank: self.rank,
            cut: self.cut,
            multiplier: self.multiplier.inverse(),
        }
    }

    /// Image of the underlying letter sequence, cyclically reduced but not
    /// rotated to canonical form.
    pub(crate) fn image_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let a = self.multiplier;
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len() * 3);
        for &x in letters {
            let direct = self.cut.contains(x);
            let inverted = self.cut.contains(x.inverse());
            match (direct, inverted) {
                (true, false) => {
                    out.push(x);
                    out.push(a);
                }
                (true, true) => {
                    out.push(a.inverse());
                    out.push(x);
                    out.push(a);
                }
                (false, true) => {
                    out.push(a.inverse());
                    out.push(x);
                }
                (false, false) => out.push(x),
            }
        }
        reduce_cyclic(&out)
    }

    /// Length of the image without building it. The action inserts the
    /// multiplier after every letter in the cut and its inverse before every
    /// letter whose inverse is in the cut; a cyclic junction x|y loses two
    /// letters when both insertions meet there, or when a lone insertion meets
    /// the multiplier's inverse already present in the word. No cancellation
    /// cascades further, because the word itself stays reduced.
    pub fn image_length(&self, word: &CyclicWord) -> usize {
        let letters = word.letters();
        let n = letters.len();
        if n == 0 {
            return 0;
        }
        let a = self.multiplier;
        let mut len = n;
        let mut prev = letters[n - 1];
        for &x in letters {
            if self.cut.contains(x) {
                len += 1;
            }
            if self.cut.contains(x.inverse()) {
                len += 1;
            }
            let after_prev = self.cut.contains(prev);
            let before_x = self.cut.contains(x.inverse());
            if (after_prev && before_x)
                || (after_prev && x == a.inverse())
                || (before_x && prev == a)
            {
                len -= 2;
            }
            prev = x;
        }
        len
    }

    pub fn apply(&self, word: &CyclicWord) -> Result<CyclicWord, AutError> {
        if self.rank != word.rank() {
            return Err(AutError::RankMismatch {
                aut_rank: self.rank,
                word_rank: word.rank(),
            });
        }
        Ok(self.apply_unchecked(word))
    }

    pub(crate) fn apply_unchecked(&self, word: &CyclicWord) -> CyclicWord {
        CyclicWord::from_reduced(word.rank(), self.image_letters(word.letters()))
    }
}

impl fmt::Display for CutAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.cut, self.multiplier)
    }
}

impl fmt::Debug for CutAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Either kind of Whitehead automorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum WhiteheadAut {
    Perm(PermAut),
    Cut(CutAut),
}

impl WhiteheadAut {
    pub fn rank(&self) -> usize {
        match self {
            WhiteheadAut::Perm(p) => p.rank(),
            WhiteheadAut::Cut(c) => c.rank(),
        }
    }

    pub fn apply(&self, word: &CyclicWord) -> Result<CyclicWord, AutError> {
        match self {
            WhiteheadAut::Perm(p) => p.apply(word),
            WhiteheadAut::Cut(c) => c.apply(word),
        }
    }
}

impl fmt::Display for WhiteheadAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadAut::Perm(p) => fmt::Display::fmt(p, f),
            WhiteheadAut::Cut(c) => fmt::Display::fmt(c, f),
        }
    }
}

impl fmt::Debug for WhiteheadAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<PermAut> for WhiteheadAut {
    fn from(p: PermAut) -> WhiteheadAut {
        WhiteheadAut::Perm(p)
    }
}

impl From<CutAut> for WhiteheadAut {
    fn from(c: CutAut) -> WhiteheadAut {
        WhiteheadAut::Cut(c)
    }
}

/// A sequence of automorphisms, applied first to last.
#[derive(Clone, Default)]
pub struct AutChain {
    steps: Vec<WhiteheadAut>,
}

impl AutChain {
    pub fn new() -> AutChain {
        AutChain::default()
    }

    pub fn push(&mut self, step: impl Into<WhiteheadAut>) {
        self.steps.push(step.into());
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[WhiteheadAut] {
        &self.steps
    }

    pub fn apply(&self, word: &CyclicWord) -> Result<CyclicWord, AutError> {
        let mut w = word.clone();
        for step in &self.steps {
            w = step.apply(&w)?;
        }
        Ok(w)
    }
}

impl fmt::Debug for AutChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.steps.iter()).finish()
    }
}

/// Options for `enumerate_w2`: optionally omit automorphisms that act as the
/// identity on every cyclic word (empty cut, and full-complement cuts which
/// act by conjugation).
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct W2Options {
    pub skip_empty_cut: bool,
    pub skip_conjugations: bool,
}

impl W2Options {
    pub fn all() -> W2Options {
        W2Options {
            skip_empty_cut: false,
            skip_conjugations: false,
        }
    }

    pub fn nontrivial() -> W2Options {
        W2Options {
            skip_empty_cut: true,
            skip_conjugations: true,
        }
    }
}

/// All signed permutations of the given rank: permutations in lexicographic
/// order of their generator images, then sign patterns in binary-counter
/// order. The list has `2^n * n!` entries, so the rank is capped at 6.
pub fn enumerate_w1(rank: usize) -> Vec<PermAut> {
    assert!(
        (1..=6).contains(&rank),
        "full signed-permutation enumeration requires rank in 1..=6"
    );
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(rank);
    let mut used = [false; 7];
    fn build(rank: usize, current: &mut Vec<usize>, used: &mut [bool; 7], out: &mut Vec<Vec<usize>>) {
        if current.len() == rank {
            out.push(current.clone());
            return;
        }
        for g in 1..=rank {
            if !used[g] {
                used[g] = true;
                current.push(g);
                build(rank, current, used, out);
                current.pop();
                used[g] = false;
            }
        }
    }
    build(rank, &mut current, &mut used, &mut perms);

    let mut out = Vec::with_capacity(perms.len() << rank);
    for perm in &perms {
        for mask in 0u64..(1u64 << rank) {
            let images: Vec<Letter> = perm
                .iter()
                .enumerate()
                .map(|(i, &g)| Letter::new(g, mask >> i & 1 == 1))
                .collect();
            out.push(PermAut { images });
        }
    }
    out
}

/// Signed permutations generating the whole rank-`n` group: the adjacent
/// transpositions plus the inversion of `x1`.
pub(crate) fn w1_generators(rank: usize) -> Vec<PermAut> {
    let mut gens = Vec::with_capacity(rank);
    for i in 1..rank {
        let mut images: Vec<Letter> = (1..=rank).map(Letter::positive).collect();
        images.swap(i - 1, i);
        gens.push(PermAut { images });
    }
    let mut images: Vec<Letter> = (1..=rank).map(Letter::positive).collect();
    images[0] = Letter::negative(1);
    gens.push(PermAut { images });
    gens
}

/// All cut automorphisms of the given rank in a fixed order: multipliers
/// ascending in the letter order; for each multiplier, cut sets as a binary
/// counter over the remaining letters (ascending letters on the low bits).
pub fn enumerate_w2(rank: usize, options: W2Options) -> Vec<CutAut> {
    assert!((1..=MAX_RANK).contains(&rank), "rank out of range");
    let mut out = Vec::new();
    let allowed_per_multiplier = 2 * rank - 2;
    for a in Letter::alphabet(rank) {
        let allowed: Vec<Letter> = Letter::alphabet(rank)
            .filter(|&l| l != a && l != a.inverse())
            .collect();
        debug_assert_eq!(allowed.len(), allowed_per_multiplier);
        let full: u64 = (1u64 << allowed_per_multiplier) - 1;
        for mask in 0..=full {
            if options.skip_empty_cut && mask == 0 {
                continue;
            }
            if options.skip_conjugations && mask == full {
                continue;
            }
            let mut cut = LetterSet::EMPTY;
            for (bit, &l) in allowed.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    cut.insert(l);
                }
            }
            out.push(CutAut {
                rank,
                cut,
                multiplier: a,
            });
        }
    }
    out
}
