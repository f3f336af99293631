use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::aut::CutAut;
use crate::letter::{Letter, LetterSet, MAX_RANK};
use crate::orbit::{count_minimal, is_minimal, OrbitError, SearchLimits};
use crate::word::CyclicWord;

/// The word families with known exact or lower-bound counts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    /// `x1^2 x2^l` in rank 2; count `4(|u| - 1)`.
    F2Square,
    /// `x1^2 x2 x1^-1 x2 x1 x2^l` in rank 2; count `8(|u| - 5)`, the rank-2
    /// maximum over words with pairwise distinct occurrence counts.
    F2Max,
    /// `x1^2 x2^2 x3 x2^-1 x3 x2 x3^l` in rank 3; count cubic in `|u|`.
    F3Cubic,
    /// The general-rank word whose count is bounded below by
    /// `(l / (2n - 3))^(2n - 3)`.
    LowerBound,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub rank: usize,
    pub ell: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilyError {
    /// The family requires a specific or minimum rank.
    WrongRank {
        kind: FamilyKind,
        required: usize,
        got: usize,
    },
    /// The tail exponent is below the family's domain.
    EllTooSmall {
        kind: FamilyKind,
        min: usize,
        got: usize,
    },
    /// A predicted value does not fit the integer range.
    Overflow,
    /// Degree-one chain sets are a rank-2 notion.
    NotRankTwo { rank: usize },
    NotMinimal,
    Orbit(OrbitError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::WrongRank {
                kind,
                required,
                got,
            } => write!(f, "{kind:?} requires rank {required}, got {got}"),
            FamilyError::EllTooSmall { kind, min, got } => {
                write!(f, "{kind:?} requires l >= {min}, got {got}")
            }
            FamilyError::Overflow => f.write_str("predicted value overflows"),
            FamilyError::NotRankTwo { rank } => {
                write!(f, "degree-one chains require rank 2, got rank {rank}")
            }
            FamilyError::NotMinimal => f.write_str("word is not minimal"),
            FamilyError::Orbit(e) => fmt::Display::fmt(e, f),
        }
    }
}

impl core::error::Error for FamilyError {}

impl From<OrbitError> for FamilyError {
    fn from(e: OrbitError) -> FamilyError {
        FamilyError::Orbit(e)
    }
}

impl FamilySpec {
    /// Validate rank and tail exponent for the family's domain: the rank-2
    /// and rank-3 families need their exact rank and `l >= 3` (which keeps
    /// the cubic's domain `|u| >= 11`); the general family needs rank at
    /// least 2 and `l >= 1`.
    pub fn new(kind: FamilyKind, rank: usize, ell: usize) -> Result<FamilySpec, FamilyError> {
        let required = match kind {
            FamilyKind::F2Square | FamilyKind::F2Max => Some(2),
            FamilyKind::F3Cubic => Some(3),
            FamilyKind::LowerBound => None,
        };
        if let Some(required) = required {
            if rank != required {
                return Err(FamilyError::WrongRank {
                    kind,
                    required,
                    got: rank,
                });
            }
        } else if !(2..=MAX_RANK).contains(&rank) {
            return Err(FamilyError::WrongRank {
                kind,
                required: 2,
                got: rank,
            });
        }
        let min_ell = match kind {
            FamilyKind::LowerBound => 1,
            _ => 3,
        };
        if ell < min_ell {
            return Err(FamilyError::EllTooSmall {
                kind,
                min: min_ell,
                got: ell,
            });
        }
        Ok(FamilySpec { kind, rank, ell })
    }
}

fn push_run(letters: &mut Vec<Letter>, letter: Letter, count: usize) {
    letters.extend(core::iter::repeat(letter).take(count));
}

/// Construct the family word. For the general family this is
/// `x1^2 (prod_(i=2)^(n-1) x_i (x_i x_n x_i^-1 x_n)^(i-1) x_i) x_n^l`,
/// which degenerates to the rank-2 square family at `n = 2` and to the
/// rank-3 cubic family at `n = 3`.
pub fn family_word(spec: &FamilySpec) -> CyclicWord {
    let mut letters: Vec<Letter> = Vec::new();
    match spec.kind {
        FamilyKind::F2Square => {
            push_run(&mut letters, Letter::positive(1), 2);
            push_run(&mut letters, Letter::positive(2), spec.ell);
        }
        FamilyKind::F2Max => {
            push_run(&mut letters, Letter::positive(1), 2);
            letters.push(Letter::positive(2));
            letters.push(Letter::negative(1));
            letters.push(Letter::positive(2));
            letters.push(Letter::positive(1));
            push_run(&mut letters, Letter::positive(2), spec.ell);
        }
        FamilyKind::F3Cubic | FamilyKind::LowerBound => {
            let n = spec.rank;
            push_run(&mut letters, Letter::positive(1), 2);
            for i in 2..n {
                let xi = Letter::positive(i);
                let xn = Letter::positive(n);
                letters.push(xi);
                for _ in 0..i - 1 {
                    letters.push(xi);
                    letters.push(xn);
                    letters.push(xi.inverse());
                    letters.push(xn);
                }
                letters.push(xi);
            }
            push_run(&mut letters, Letter::positive(n), spec.ell);
        }
    }
    CyclicWord::new(spec.rank, letters).expect("family word construction")
}

/// A predicted count: exact, or an exact rational lower bound
/// `numerator / denominator`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Predicted {
    Exact(u64),
    RationalLowerBound { numerator: u128, denominator: u128 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Prediction {
    pub word: CyclicWord,
    pub value: Predicted,
    pub formula: &'static str,
}

/// The predicted count for a family word. Exact formulas for the rank-2 and
/// rank-3 families; a rational lower bound for the general family.
pub fn predicted_count(spec: &FamilySpec) -> Result<Prediction, FamilyError> {
    let word = family_word(spec);
    let len = word.len() as u64;
    let (value, formula) = match spec.kind {
        FamilyKind::F2Square => (Predicted::Exact(4 * (len - 1)), "4(|u| - 1)"),
        FamilyKind::F2Max => (Predicted::Exact(8 * (len - 5)), "8(|u| - 5)"),
        FamilyKind::F3Cubic => {
            debug_assert!(len >= 11);
            // Coefficients pinned by direct level-set counts at |u| = 11..=15
            // (17280, 26400, 38016, 52416, 69888): the third difference is
            // 288 = 6 * 48, and the five points over-determine the rest.
            let value = (|| {
                let square = len.checked_mul(len)?;
                let cube = square.checked_mul(len)?;
                48u64
                    .checked_mul(cube)?
                    .checked_sub(480u64.checked_mul(square)?)?
                    .checked_add(1104u64.checked_mul(len)?)?
                    .checked_sub(672)
            })()
            .ok_or(FamilyError::Overflow)?;
            (
                Predicted::Exact(value),
                "48|u|^3 - 480|u|^2 + 1104|u| - 672",
            )
        }
        FamilyKind::LowerBound => {
            let exponent = 2 * spec.rank as u32 - 3;
            let numerator = (spec.ell as u128)
                .checked_pow(exponent)
                .ok_or(FamilyError::Overflow)?;
            let denominator = (2 * spec.rank as u128 - 3)
                .checked_pow(exponent)
                .ok_or(FamilyError::Overflow)?;
            (
                Predicted::RationalLowerBound {
                    numerator,
                    denominator,
                },
                "(l / (2n - 3))^(2n - 3)",
            )
        }
    };
    Ok(Prediction {
        word,
        value,
        formula,
    })
}

/// The two rank-2 cut automorphisms of degree one, up to identical action:
/// cut `{x1}` with multiplier `x2` or `x2^-1`. Every degree-one rank-2 cut
/// automorphism acts like one of these.
pub fn degree_one_moves() -> [CutAut; 2] {
    let cut: LetterSet = [Letter::positive(1)].into_iter().collect();
    [
        CutAut::new(2, cut, Letter::positive(2)).expect("valid cut"),
        CutAut::new(2, cut, Letter::negative(2)).expect("valid cut"),
    ]
}

/// Words reached from a minimal rank-2 word by iterating either degree-one
/// move while every step preserves length; includes the word itself. The two
/// moves are mutual inverses up to identical action, so a chain that revisits
/// a collected word has closed a cycle and stops.
pub fn degree_one_chain_set(word: &CyclicWord) -> Result<BTreeSet<CyclicWord>, FamilyError> {
    if word.rank() != 2 {
        return Err(FamilyError::NotRankTwo { rank: word.rank() });
    }
    if !is_minimal(word) {
        return Err(FamilyError::NotMinimal);
    }
    let mut set: BTreeSet<CyclicWord> = BTreeSet::new();
    set.insert(word.clone());
    for tau in degree_one_moves() {
        let mut current = word.clone();
        loop {
            current = tau.apply_unchecked(&current);
            if current.len() != word.len() || !set.insert(current.clone()) {
                break;
            }
        }
    }
    Ok(set)
}

/// How the degree-zero block-shift moves of the generator list are realized:
/// either as the paired letters of all generators from `i` up to `n - 1`
/// with multiplier `x_n^-1`, or as the complementary cut below `i` with
/// multiplier `x_n`. The two act identically on every cyclic word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShiftForm {
    TailPairs,
    HeadComplement,
}

/// Generating moves for walking the general family's level set: `stage[j]`
/// (for `j = 1..n-1`) has cut `{x_j} + {x_t, x_t^-1 : j < t < n}` and
/// multiplier `x_n^-1`, with degree `j`; `shift[i]` (for `i = 2..n-1`) is a
/// degree-zero move sliding blocks past `x_n` tails.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyMoves {
    pub stage: Vec<CutAut>,
    pub shift: Vec<CutAut>,
}

pub fn family_moves(rank: usize, form: ShiftForm) -> Result<FamilyMoves, FamilyError> {
    if !(2..=MAX_RANK).contains(&rank) {
        return Err(FamilyError::WrongRank {
            kind: FamilyKind::LowerBound,
            required: 2,
            got: rank,
        });
    }
    let xn = Letter::positive(rank);
    let mut stage = Vec::new();
    for j in 1..rank {
        let mut cut = LetterSet::EMPTY.with(Letter::positive(j));
        for t in j + 1..rank {
            cut.insert(Letter::positive(t));
            cut.insert(Letter::negative(t));
        }
        let aut = CutAut::new(rank, cut, xn.inverse()).expect("valid stage cut");
        debug_assert_eq!(aut.degree(), j);
        stage.push(aut);
    }
    let mut shift = Vec::new();
    for i in 2..rank {
        let aut = match form {
            ShiftForm::TailPairs => {
                let mut cut = LetterSet::EMPTY;
                for t in i..rank {
                    cut.insert(Letter::positive(t));
                    cut.insert(Letter::negative(t));
                }
                CutAut::new(rank, cut, xn.inverse()).expect("valid shift cut")
            }
            ShiftForm::HeadComplement => {
                let mut cut = LetterSet::EMPTY;
                for t in 1..i {
                    cut.insert(Letter::positive(t));
                    cut.insert(Letter::negative(t));
                }
                CutAut::new(rank, cut, xn).expect("valid shift cut")
            }
        };
        debug_assert_eq!(aut.degree(), 0);
        shift.push(aut);
    }
    Ok(FamilyMoves { stage, shift })
}

/// Result of checking the general family's lower bound at one point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundCheck {
    pub rank: usize,
    pub ell: usize,
    pub word: CyclicWord,
    pub count: usize,
    pub bound_numerator: u128,
    pub bound_denominator: u128,
    pub holds: bool,
}

/// Count the minimum-length orbit of the general family word and compare
/// against the rational lower bound by exact cross-multiplication.
pub fn verify_lower_bound(
    rank: usize,
    ell: usize,
    limits: SearchLimits,
) -> Result<BoundCheck, FamilyError> {
    let spec = FamilySpec::new(FamilyKind::LowerBound, rank, ell)?;
    let prediction = predicted_count(&spec)?;
    let Predicted::RationalLowerBound {
        numerator,
        denominator,
    } = prediction.value
    else {
        unreachable!("general family predicts a lower bound");
    };
    let count = count_minimal(&prediction.word, limits)?;
    let scaled = (count as u128)
        .checked_mul(denominator)
        .ok_or(FamilyError::Overflow)?;
    Ok(BoundCheck {
        rank,
        ell,
        word: prediction.word,
        count,
        bound_numerator: numerator,
        bound_denominator: denominator,
        holds: scaled >= numerator,
    })
}
