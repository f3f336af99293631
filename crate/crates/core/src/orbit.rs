use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::aut::{enumerate_w2, w1_generators, AutChain, CutAut, PermAut, W2Options};
use crate::word::CyclicWord;

/// Caps on orbit searches. Hitting a cap is an explicit error carrying the
/// partial count, never a silent truncation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchLimits {
    /// Largest number of distinct words (or search states) to collect.
    pub max_members: usize,
    /// Largest number of words waiting for expansion at any point.
    pub max_frontier: usize,
}

impl Default for SearchLimits {
    fn default() -> SearchLimits {
        SearchLimits {
            max_members: 10_000_000,
            max_frontier: 1_000_000,
        }
    }
}

impl SearchLimits {
    pub fn new(max_members: usize, max_frontier: usize) -> SearchLimits {
        SearchLimits {
            max_members,
            max_frontier,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LimitKind {
    Members,
    Frontier,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrbitError {
    /// A search cap was hit; `members_found` is a lower bound on the true
    /// count of whatever the search was collecting.
    LimitExceeded {
        kind: LimitKind,
        members_found: usize,
    },
    /// The word admits a shortening automorphism, so it has no level set.
    NotMinimal { length: usize, shorter: usize },
    RankMismatch { left: usize, right: usize },
    /// Requested chain degree is not below the rank.
    DegreeOutOfRange { degree: usize, rank: usize },
}

impl fmt::Display for OrbitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitError::LimitExceeded {
                kind,
                members_found,
            } => {
                let what = match kind {
                    LimitKind::Members => "member",
                    LimitKind::Frontier => "frontier",
                };
                write!(
                    f,
                    "{what} limit exceeded; at least {members_found} members found"
                )
            }
            OrbitError::NotMinimal { length, shorter } => write!(
                f,
                "word of length {length} is not minimal (an automorphism reaches length {shorter})"
            ),
            OrbitError::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            OrbitError::DegreeOutOfRange { degree, rank } => {
                write!(f, "chain degree {degree} must be below the rank {rank}")
            }
        }
    }
}

impl core::error::Error for OrbitError {}

/// Greedily shorten a word: repeatedly apply the first cut automorphism (in
/// enumeration order) that strictly reduces the length. Identity-acting cuts
/// are skipped since they never shorten. Returns the minimal word reached and
/// the chain of steps, applied first to last.
pub fn minimize(word: &CyclicWord) -> (CyclicWord, AutChain) {
    let cuts = enumerate_w2(word.rank(), W2Options::nontrivial());
    let mut current = word.clone();
    let mut chain = AutChain::new();
    loop {
        let step = cuts
            .iter()
            .find(|cut| cut.image_length(&current) < current.len());
        match step {
            Some(cut) => {
                let img = cut.image_letters(current.letters());
                current = CyclicWord::from_reduced(current.rank(), img);
                chain.push(cut.clone());
            }
            None => break,
        }
    }
    (current, chain)
}

/// Whether no cut automorphism shortens the word. Every word of minimum
/// length in its orbit satisfies this, and conversely.
pub fn is_minimal(word: &CyclicWord) -> bool {
    check_minimal(word).is_ok()
}

fn check_minimal(word: &CyclicWord) -> Result<(), OrbitError> {
    for cut in enumerate_w2(word.rank(), W2Options::nontrivial()) {
        let len = cut.image_length(word);
        if len < word.len() {
            return Err(OrbitError::NotMinimal {
                length: word.len(),
                shorter: len,
            });
        }
    }
    Ok(())
}

/// All words of minimum length in the automorphic orbit of a minimal word.
#[derive(Clone, Debug)]
pub struct LevelSet {
    base: CyclicWord,
    members: BTreeSet<CyclicWord>,
}

impl LevelSet {
    pub fn base(&self) -> &CyclicWord {
        &self.base
    }

    pub fn members(&self) -> &BTreeSet<CyclicWord> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, word: &CyclicWord) -> bool {
        self.members.contains(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = &CyclicWord> {
        self.members.iter()
    }

    pub fn into_members(self) -> BTreeSet<CyclicWord> {
        self.members
    }
}

/// Closure search over length-preserving Whitehead moves. Signed permutations
/// always preserve length and conjugate the cut moves to cut moves, so each
/// discovered word is closed under the whole signed-permutation group at once
/// and only one representative per permutation orbit is expanded by cut moves.
/// The collected set is identical to the naive closure.
struct ClosureSearch<'a> {
    rank: usize,
    limits: SearchLimits,
    perm_gens: Vec<PermAut>,
    target: Option<&'a CyclicWord>,
    members: BTreeSet<CyclicWord>,
    queue: VecDeque<CyclicWord>,
    found: bool,
}

impl<'a> ClosureSearch<'a> {
    fn new(rank: usize, limits: SearchLimits, target: Option<&'a CyclicWord>) -> ClosureSearch<'a> {
        ClosureSearch {
            rank,
            limits,
            perm_gens: w1_generators(rank),
            target,
            members: BTreeSet::new(),
            queue: VecDeque::new(),
            found: false,
        }
    }

    /// Insert a word together with its whole signed-permutation orbit, and
    /// queue one representative for cut-move expansion. Membership is always
    /// a union of complete permutation orbits, so a word already present
    /// means its whole orbit is present.
    fn insert_orbit(&mut self, word: CyclicWord) -> Result<(), OrbitError> {
        if self.members.contains(&word) {
            return Ok(());
        }
        let mut pending: Vec<CyclicWord> = Vec::new();
        self.note_new(word.clone())?;
        pending.push(word.clone());
        while let Some(v) = pending.pop() {
            for gi in 0..self.perm_gens.len() {
                let img = self.perm_gens[gi].apply_unchecked(&v);
                if !self.members.contains(&img) {
                    self.note_new(img.clone())?;
                    pending.push(img);
                }
            }
        }
        self.queue.push_back(word);
        if self.queue.len() > self.limits.max_frontier {
            return Err(OrbitError::LimitExceeded {
                kind: LimitKind::Frontier,
                members_found: self.members.len(),
            });
        }
        Ok(())
    }

    fn note_new(&mut self, word: CyclicWord) -> Result<(), OrbitError> {
        if Some(&word) == self.target {
            self.found = true;
        }
        self.members.insert(word);
        if self.members.len() > self.limits.max_members {
            return Err(OrbitError::LimitExceeded {
                kind: LimitKind::Members,
                members_found: self.members.len(),
            });
        }
        Ok(())
    }

    fn run(mut self, base: &CyclicWord) -> Result<(BTreeSet<CyclicWord>, bool), OrbitError> {
        let cuts = enumerate_w2(self.rank, W2Options::nontrivial());
        self.insert_orbit(base.clone())?;
        while !self.found {
            let Some(v) = self.queue.pop_front() else {
                break;
            };
            for cut in &cuts {
                if cut.image_length(&v) != v.len() {
                    continue;
                }
                let img = cut.image_letters(v.letters());
                self.insert_orbit(CyclicWord::from_reduced(self.rank, img))?;
                if self.found {
                    break;
                }
            }
        }
        Ok((self.members, self.found))
    }
}

/// The set of all minimum-length words in the orbit of a minimal word: the
/// closure of the word under length-preserving Whitehead moves. Errors if the
/// word is not minimal or a search cap is hit.
pub fn level_set(word: &CyclicWord, limits: SearchLimits) -> Result<LevelSet, OrbitError> {
    check_minimal(word)?;
    let (members, _) = ClosureSearch::new(word.rank(), limits, None).run(word)?;
    Ok(LevelSet {
        base: word.clone(),
        members,
    })
}

/// Number of minimum-length words in the orbit of an arbitrary word: the word
/// is minimized first, then its level set is counted.
pub fn count_minimal(word: &CyclicWord, limits: SearchLimits) -> Result<usize, OrbitError> {
    let (minimal, _) = minimize(word);
    Ok(level_set(&minimal, limits)?.len())
}

/// Whether two words lie in the same automorphic orbit: both are minimized;
/// unequal minimal lengths answer no, otherwise one level set is searched for
/// the other minimal word, stopping as soon as it appears.
pub fn same_orbit(
    left: &CyclicWord,
    right: &CyclicWord,
    limits: SearchLimits,
) -> Result<bool, OrbitError> {
    if left.rank() != right.rank() {
        return Err(OrbitError::RankMismatch {
            left: left.rank(),
            right: right.rank(),
        });
    }
    let (lmin, _) = minimize(left);
    let (rmin, _) = minimize(right);
    if lmin.len() != rmin.len() {
        return Ok(false);
    }
    let (_, found) = ClosureSearch::new(lmin.rank(), limits, Some(&rmin)).run(&lmin)?;
    Ok(found)
}

/// Whether a chain with no steps counts as reaching its starting word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainConvention {
    /// At least one automorphism must be applied.
    RequireStep,
    /// The empty chain is allowed, so the base word is always included.
    AllowEmpty,
}

/// Words reachable from a minimal word by chains of cut automorphisms with
/// non-decreasing degrees ending exactly at `max_degree`, where every prefix
/// of the chain preserves length and each automorphism's multiplier generator
/// index exceeds its degree. States are (word, last degree) pairs.
pub fn degree_monotone_set(
    word: &CyclicWord,
    max_degree: usize,
    convention: ChainConvention,
    limits: SearchLimits,
) -> Result<BTreeSet<CyclicWord>, OrbitError> {
    check_minimal(word)?;
    let rank = word.rank();
    if max_degree >= rank {
        return Err(OrbitError::DegreeOutOfRange {
            degree: max_degree,
            rank,
        });
    }
    let mut by_degree: Vec<Vec<CutAut>> = alloc::vec![Vec::new(); max_degree + 1];
    for cut in enumerate_w2(rank, W2Options::all()) {
        let d = cut.degree();
        if d <= max_degree && cut.multiplier().generator() > d {
            by_degree[d].push(cut);
        }
    }

    let len = word.len();
    let mut result: BTreeSet<CyclicWord> = BTreeSet::new();
    let mut visited: BTreeSet<(CyclicWord, usize)> = BTreeSet::new();
    let mut queue: VecDeque<(CyclicWord, usize)> = VecDeque::new();

    // Seeding from the base word allows any starting degree up to the cap;
    // the base word itself only becomes a state once a move produces it.
    let expand = |source: &CyclicWord,
                      min_degree: usize,
                      visited: &mut BTreeSet<(CyclicWord, usize)>,
                      queue: &mut VecDeque<(CyclicWord, usize)>,
                      result: &mut BTreeSet<CyclicWord>|
     -> Result<(), OrbitError> {
        for d in min_degree..=max_degree {
            for cut in &by_degree[d] {
                if cut.image_length(source) != len {
                    continue;
                }
                let img = cut.image_letters(source.letters());
                let image = CyclicWord::from_reduced(rank, img);
                let state = (image, d);
                if visited.contains(&state) {
                    continue;
                }
                if d == max_degree {
                    result.insert(state.0.clone());
                }
                visited.insert(state.clone());
                if visited.len() > limits.max_members {
                    return Err(OrbitError::LimitExceeded {
                        kind: LimitKind::Members,
                        members_found: result.len(),
                    });
                }
                queue.push_back(state);
                if queue.len() > limits.max_frontier {
                    return Err(OrbitError::LimitExceeded {
                        kind: LimitKind::Frontier,
                        members_found: result.len(),
                    });
                }
            }
        }
        Ok(())
    };

    expand(word, 0, &mut visited, &mut queue, &mut result)?;
    while let Some((v, d)) = queue.pop_front() {
        expand(&v, d, &mut visited, &mut queue, &mut result)?;
    }

    if convention == ChainConvention::AllowEmpty {
        result.insert(word.clone());
    }
    Ok(result)
}

/// Size of `degree_monotone_set`.
pub fn degree_monotone_count(
    word: &CyclicWord,
    max_degree: usize,
    convention: ChainConvention,
    limits: SearchLimits,
) -> Result<usize, OrbitError> {
    Ok(degree_monotone_set(word, max_degree, convention, limits)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::Letter;

    fn w(rank: usize, signed: &[isize]) -> CyclicWord {
        let letters: Vec<Letter> = signed
            .iter()
            .map(|&v| Letter::try_from(v).unwrap())
            .collect();
        CyclicWord::new(rank, letters).unwrap()
    }

    fn limits() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn minimize_fixed_point_on_minimal_word() {
        let u = w(2, &[1, 1, 2, 2, 2]);
        let (m, chain) = minimize(&u);
        assert_eq!(m, u);
        assert!(chain.is_empty());
        assert!(is_minimal(&u));
    }

    #[test]
    fn minimize_shortens_alternating_square() {
        // x1 x2 x1 x2 has minimum length 2 in its orbit.
        let u = w(2, &[1, 2, 1, 2]);
        let (m, chain) = minimize(&u);
        assert_eq!(m.len(), 2);
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.apply(&u).unwrap(), m);
        assert!(is_minimal(&m));
        assert!(!is_minimal(&u));
    }

    #[test]
    fn minimize_chain_reproduces_result() {
        let u = w(3, &[1, 2, -1, 3, 2, 2, -3, 1, 1, 3]);
        let (m, chain) = minimize(&u);
        assert!(is_minimal(&m));
        assert_eq!(chain.apply(&u).unwrap(), m);
    }

    #[test]
    fn empty_and_single_letter_words_are_minimal() {
        assert!(is_minimal(&w(2, &[])));
        assert!(is_minimal(&w(2, &[1])));
        assert!(is_minimal(&w(1, &[1, 1, 1])));
    }

    #[test]
    fn level_set_of_commutator() {
        // The length-4 commutator's level set: itself and its inverse.
        let u = w(2, &[1, 2, -1, -2]);
        let set = level_set(&u, limits()).unwrap();
        assert!(set.contains(&u));
        assert!(set.contains(&u.inverse()));
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn level_set_of_square_word() {
        let u = w(2, &[1, 1, 2, 2, 2]);
        let set = level_set(&u, limits()).unwrap();
        assert_eq!(set.len(), 16);
        assert!(set.contains(&u));
        // Every member has the same length, and the set is closed under the
        // letter order canonical form by construction.
        assert!(set.iter().all(|v| v.len() == 5));
    }

    #[test]
    fn level_set_rejects_non_minimal() {
        let u = w(2, &[1, 2, 1, 2]);
        assert!(matches!(
            level_set(&u, limits()),
            Err(OrbitError::NotMinimal {
                length: 4,
                shorter: 2
            })
        ));
    }

    #[test]
    fn level_set_respects_member_limit() {
        let u = w(2, &[1, 1, 2, 2, 2]);
        let err = level_set(&u, SearchLimits::new(5, 1000)).unwrap_err();
        match err {
            OrbitError::LimitExceeded {
                kind: LimitKind::Members,
                members_found,
            } => assert!(members_found > 5),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn level_set_is_symmetric_in_its_members() {
        let u = w(2, &[1, 1, 2, 2, 2]);
        let set = level_set(&u, limits()).unwrap();
        for v in set.iter().take(4) {
            let other = level_set(v, limits()).unwrap();
            assert_eq!(other.members(), set.members());
        }
    }

    #[test]
    fn count_minimal_minimizes_first() {
        // x1 x2 x1 x2 minimizes to a length-2 word whose level set has the
        // four powers' images: count matches the direct computation.
        let u = w(2, &[1, 2, 1, 2]);
        let (m, _) = minimize(&u);
        assert_eq!(
            count_minimal(&u, limits()).unwrap(),
            level_set(&m, limits()).unwrap().len()
        );
    }

    #[test]
    fn same_orbit_basic_cases() {
        let u = w(2, &[1, 1, 2, 2, 2]);
        let img = {
            let cut = crate::aut::CutAut::new(
                2,
                [Letter::positive(1)].into_iter().collect(),
                Letter::positive(2),
            )
            .unwrap();
            cut.apply(&u).unwrap()
        };
        assert!(same_orbit(&u, &img, limits()).unwrap());
        assert!(!same_orbit(&u, &w(2, &[1, 2]), limits()).unwrap());
        assert!(same_orbit(&w(2, &[]), &w(2, &[]), limits()).unwrap());
        assert!(matches!(
            same_orbit(&u, &w(3, &[1]), limits()),
            Err(OrbitError::RankMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn same_orbit_distinguishes_length_equal_words() {
        // x1^2 x2^2 and x1 x2 x1 x2^-1 both have length 4 but different
        // orbits (distinct level sets).
        let a = w(2, &[1, 1, 2, 2]);
        let b = w(2, &[1, 2, 1, -2]);
        if is_minimal(&a) && is_minimal(&b) {
            let in_same = same_orbit(&a, &b, limits()).unwrap();
            let set = level_set(&a, limits()).unwrap();
            assert_eq!(in_same, set.contains(&b));
        }
    }

    #[test]
    fn monotone_set_degree_zero_fixes_square_words() {
        for ell in [3usize, 5, 8] {
            let mut letters = alloc::vec![1isize, 1];
            letters.extend(core::iter::repeat(2).take(ell));
            let u = w(2, &letters);
            let set =
                degree_monotone_set(&u, 0, ChainConvention::RequireStep, limits()).unwrap();
            assert_eq!(set.len(), 1);
            assert!(set.contains(&u));
        }
    }

    #[test]
    fn monotone_set_empty_when_no_move_preserves_length() {
        // x1^3 in rank 2: every degree-capped chain changes the length at its
        // first non-identity step, and identity-acting moves reach only x1^3
        // itself at degree 0; at cap 1 the final move must have degree 1.
        let u = w(2, &[1, 1, 1]);
        let set = degree_monotone_set(&u, 1, ChainConvention::RequireStep, limits()).unwrap();
        assert!(set.is_empty());
        let with_empty =
            degree_monotone_set(&u, 1, ChainConvention::AllowEmpty, limits()).unwrap();
        assert_eq!(with_empty.len(), 1);
    }

    #[test]
    fn monotone_set_rejects_degree_at_rank() {
        let u = w(2, &[1, 1, 2, 2, 2]);
        assert!(matches!(
            degree_monotone_set(&u, 2, ChainConvention::RequireStep, limits()),
            Err(OrbitError::DegreeOutOfRange { degree: 2, rank: 2 })
        ));
    }

    #[test]
    fn monotone_sets_embed_in_level_set() {
        let u = w(2, &[1, 1, 2, 2, 2]);
        let set = level_set(&u, limits()).unwrap();
        for k in 0..2 {
            let omega =
                degree_monotone_set(&u, k, ChainConvention::RequireStep, limits()).unwrap();
            for v in &omega {
                assert!(set.contains(v), "chain word {v:?} outside level set");
            }
        }
    }
}
