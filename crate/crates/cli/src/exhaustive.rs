use autorbit_core::{
    enumerate_w1, is_minimal, level_set, CyclicWord, Letter, OrbitError, SearchLimits,
};
use std::collections::BTreeSet;

fn all_reduced_cyclic(len: usize) -> BTreeSet<CyclicWord> {
    let letters = [
        Letter::positive(1),
        Letter::negative(1),
        Letter::positive(2),
        Letter::negative(2),
    ];
    let mut canon = BTreeSet::new();
    let mut stack: Vec<Letter> = Vec::with_capacity(len);
    go(len, &letters, &mut stack, &mut canon);
    canon
}

fn go(
    len: usize,
    letters: &[Letter; 4],
    stack: &mut Vec<Letter>,
    canon: &mut BTreeSet<CyclicWord>,
) {
    if stack.len() == len {
        if stack[len - 1] != stack[0].inverse() {
            canon.insert(CyclicWord::new(2, stack.clone()).expect("reduced by construction"));
        }
        return;
    }
    for &l in letters {
        if let Some(&last) = stack.last() {
            if l == last.inverse() {
                continue;
            }
        }
        stack.push(l);
        go(len, letters, stack, canon);
        stack.pop();
    }
}

fn distinct_occurrence_counts(word: &CyclicWord) -> bool {
    let mut counts: Vec<usize> = word
        .letter_counts()
        .into_iter()
        .filter(|&c| c > 0)
        .collect();
    counts.sort_unstable();
    counts.windows(2).all(|p| p[0] < p[1])
}

/// One representative per signed-relabeling class of the rank-2 minimal
/// cyclic words of length `len` whose occurrence counts are pairwise
/// distinct, so some relabeling puts the counts in strictly increasing
/// order. Counting the representative covers its whole class, because the
/// number of minimum-length orbit words is invariant under relabeling.
pub fn qualifying_words(len: usize) -> Vec<CyclicWord> {
    let perms = enumerate_w1(2);
    all_reduced_cyclic(len)
        .into_iter()
        .filter(distinct_occurrence_counts)
        .filter(|w| {
            perms
                .iter()
                .all(|p| &p.apply(w).expect("same rank") >= w)
        })
        .filter(is_minimal)
        .collect()
}

/// Outcome of scanning every qualifying word of one length: the largest
/// level-set count seen and the word attaining it.
#[derive(Clone, Debug)]
pub struct BoundScan {
    pub len: usize,
    pub checked: usize,
    pub max_count: usize,
    pub witness: Option<CyclicWord>,
}

/// Compute the level-set count of every qualifying word of length `len` and
/// keep the maximum.
pub fn bound_scan(len: usize, limits: SearchLimits) -> Result<BoundScan, OrbitError> {
    let words = qualifying_words(len);
    let mut max_count = 0usize;
    let mut witness = None;
    for w in &words {
        let count = level_set(w, limits)?.len();
        if count > max_count {
            max_count = count;
            witness = Some(w.clone());
        }
    }
    Ok(BoundScan {
        len,
        checked: words.len(),
        max_count,
        witness,
    })
}
