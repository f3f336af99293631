use alloc::vec::Vec;
use core::fmt;

use crate::aut::{enumerate_w2, CutAut, PermAut, W2Options};
use crate::letter::Letter;
use crate::orbit::{level_set, LevelSet, OrbitError, SearchLimits};
use crate::word::CyclicWord;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StructureError {
    Orbit(OrbitError),
    /// Syllable structure is undefined for the empty word.
    EmptyWord,
    /// Dependence is only defined between letters of distinct generators.
    SameGenerator { left: Letter, right: Letter },
    RankMismatch { left: usize, right: usize },
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::Orbit(e) => fmt::Display::fmt(e, f),
            StructureError::EmptyWord => {
                f.write_str("the empty word has no syllable structure")
            }
            StructureError::SameGenerator { left, right } => write!(
                f,
                "dependence of {left} on {right} requires distinct generators"
            ),
            StructureError::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for StructureError {}

impl From<OrbitError> for StructureError {
    fn from(e: OrbitError) -> StructureError {
        StructureError::Orbit(e)
    }
}

/// Whether the occurrence counts of the occurring generators strictly
/// increase with the generator index.
fn counts_increase(word: &CyclicWord) -> bool {
    let counts = word.letter_counts();
    let mut prev = 0usize;
    for &c in &counts {
        if c == 0 {
            continue;
        }
        if prev > 0 && c <= prev {
            return false;
        }
        prev = c;
    }
    true
}

/// The cut automorphisms that preserve length somewhere on the count-ordered
/// part of a level set: the witnesses range over members whose occurrence
/// counts strictly increase with the generator index. Without that restriction
/// the dependence relation below collapses on interleaved words, because the
/// level set also contains relabeled members whose counts are permuted and
/// those admit many more length-preserving cuts.
pub fn admissible_auts(set: &LevelSet) -> Vec<CutAut> {
    let witnesses: Vec<&CyclicWord> = set.iter().filter(|v| counts_increase(v)).collect();
    enumerate_w2(set.base().rank(), W2Options::all())
        .into_iter()
        .filter(|cut| {
            witnesses.iter().any(|v| cut.image_length(v) == v.len())
        })
        .collect()
}

/// Whether letter `x` depends on letter `y` relative to a set of admissible
/// automorphisms: every admissible cut whose multiplier involves neither
/// generator and whose cut set meets `{y, y^-1}` must contain both `x` and
/// `x^-1`. The relation is symmetric in `x` and `x^-1`, and in `y` and
/// `y^-1`, so it is a relation between generators.
pub fn depends_on(x: Letter, y: Letter, admissible: &[CutAut]) -> Result<bool, StructureError> {
    if x.generator() == y.generator() {
        return Err(StructureError::SameGenerator { left: x, right: y });
    }
    for cut in admissible {
        let m = cut.multiplier().generator();
        if m == x.generator() || m == y.generator() {
            continue;
        }
        if !cut.cut().contains(y) && !cut.cut().contains(y.inverse()) {
            continue;
        }
        if !(cut.cut().contains(x) && cut.cut().contains(x.inverse())) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partition of the letters into components: each letter is joined to its
/// inverse, and generators are joined when they depend on each other relative
/// to the admissible automorphisms of a level set. Component ids are assigned
/// in order of each component's least letter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DependenceGraph {
    rank: usize,
    component_of: Vec<usize>,
    components: Vec<Vec<Letter>>,
}

impl DependenceGraph {
    /// Build from a level set and its admissible automorphisms (as returned
    /// by `admissible_auts`).
    pub fn build(set: &LevelSet, admissible: &[CutAut]) -> DependenceGraph {
        let rank = set.base().rank();
        let mut parent: Vec<usize> = (0..2 * rank).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            let mut root = i;
            while parent[root] != root {
                root = parent[root];
            }
            let mut i = i;
            while parent[i] != root {
                let next = parent[i];
                parent[i] = root;
                i = next;
            }
            root
        }
        let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
            let ra = find(parent, a);
            let rb = find(parent, b);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        };
        for g in 1..=rank {
            union(
                &mut parent,
                Letter::positive(g).code() as usize,
                Letter::negative(g).code() as usize,
            );
        }
        for i in 1..=rank {
            for j in (i + 1)..=rank {
                let depends =
                    depends_on(Letter::positive(i), Letter::positive(j), admissible)
                        .expect("distinct generators");
                if depends {
                    union(
                        &mut parent,
                        Letter::positive(i).code() as usize,
                        Letter::positive(j).code() as usize,
                    );
                }
            }
        }

        let mut component_of = alloc::vec![usize::MAX; 2 * rank];
        let mut components: Vec<Vec<Letter>> = Vec::new();
        for code in 0..2 * rank {
            let root = find(&mut parent, code);
            if component_of[root] == usize::MAX {
                component_of[root] = components.len();
                components.push(Vec::new());
            }
            let id = component_of[root];
            component_of[code] = id;
            components[id].push(Letter::from_code(code as u8));
        }
        DependenceGraph {
            rank,
            component_of,
            components,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Component members, each sorted ascending; ids index this list.
    pub fn components(&self) -> &[Vec<Letter>] {
        &self.components
    }

    pub fn component_of_letter(&self, letter: Letter) -> usize {
        self.component_of[letter.code() as usize]
    }

    pub fn component_of_generator(&self, generator: usize) -> usize {
        self.component_of_letter(Letter::positive(generator))
    }

    /// Whether two generators share a component.
    pub fn same_component(&self, left: usize, right: usize) -> bool {
        self.component_of_generator(left) == self.component_of_generator(right)
    }
}

/// One maximal cyclic run of letters from a single component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Syllable {
    pub component: usize,
    /// Index into the canonical rotation where the run starts.
    pub start: usize,
    pub letters: Vec<Letter>,
}

/// Cyclic factorization of a word into syllables, with per-generator counts:
/// entry `i` is the number of syllables drawn from the component of
/// `x_(i+1)`, and `total` sums the entries over all generators (components
/// shared by several generators are counted once per generator).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SyllableProfile {
    pub per_generator: Vec<usize>,
    pub total: usize,
    pub syllables: Vec<Syllable>,
}

/// Factor a word into maximal cyclic runs within components of the graph.
/// The factorization starts at the first component boundary at or after
/// position 0 of the canonical rotation.
pub fn syllable_profile(
    word: &CyclicWord,
    graph: &DependenceGraph,
) -> Result<SyllableProfile, StructureError> {
    if word.is_empty() {
        return Err(StructureError::EmptyWord);
    }
    if word.rank() != graph.rank() {
        return Err(StructureError::RankMismatch {
            left: word.rank(),
            right: graph.rank(),
        });
    }
    let letters = word.letters();
    let n = letters.len();
    let comp: Vec<usize> = letters
        .iter()
        .map(|&l| graph.component_of_letter(l))
        .collect();

    let first_boundary = (0..n).find(|&i| comp[(i + n - 1) % n] != comp[i]);
    let mut syllables: Vec<Syllable> = Vec::new();
    match first_boundary {
        None => {
            syllables.push(Syllable {
                component: comp[0],
                start: 0,
                letters: letters.to_vec(),
            });
        }
        Some(start) => {
            let mut i = start;
            loop {
                let c = comp[i];
                let mut run = Vec::new();
                let mut j = i;
                while run.len() < n && comp[j] == c {
                    run.push(letters[j]);
                    j = (j + 1) % n;
                }
                syllables.push(Syllable {
                    component: c,
                    start: i,
                    letters: run,
                });
                i = j;
                if i == start {
                    break;
                }
            }
        }
    }

    let mut per_generator = alloc::vec![0usize; word.rank()];
    for (g, slot) in per_generator.iter_mut().enumerate() {
        let c = graph.component_of_generator(g + 1);
        *slot = syllables.iter().filter(|s| s.component == c).count();
    }
    let total = per_generator.iter().sum();
    Ok(SyllableProfile {
        per_generator,
        total,
        syllables,
    })
}

/// Occurrence-count and syllable-minimality diagnostics for a word.
///
/// `counts_strict` asks that occurring generators have pairwise distinct
/// counts (so some relabeling makes them strictly increasing);
/// `counts_increasing` asks for strictly increasing counts in index order as
/// stated. `violating_pairs` lists occurring generator pairs with equal
/// counts. The two syllable conditions compare the word's syllable counts
/// against its level set and are `None` when the word is not minimal (or the
/// level set was not computed): `condition_i` asks that the top generator's
/// syllable count is least over the whole level set, `condition_ii` that each
/// lower generator's count is least among members agreeing on all higher
/// generators' counts, for generators whose component is disjoint from all
/// higher ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypothesisReport {
    pub minimal: bool,
    pub counts_strict: bool,
    pub counts_increasing: bool,
    pub violating_pairs: Vec<(usize, usize)>,
    pub condition_i: Option<bool>,
    pub condition_ii: Option<bool>,
}

/// Full structural analysis of a minimal word: level set size, admissible
/// automorphisms, dependence graph, syllable profile, and the hypothesis
/// report.
#[derive(Clone, Debug)]
pub struct WordAnalysis {
    pub word: CyclicWord,
    pub level_set_size: usize,
    pub admissible_count: usize,
    pub graph: DependenceGraph,
    pub profile: SyllableProfile,
    pub report: HypothesisReport,
}

fn counts_report(word: &CyclicWord) -> (bool, bool, Vec<(usize, usize)>) {
    let counts = word.letter_counts();
    let occurring: Vec<usize> = word.occurring_generators();
    let mut violating = Vec::new();
    for (k, &i) in occurring.iter().enumerate() {
        for &j in &occurring[k + 1..] {
            if counts[i - 1] == counts[j - 1] {
                violating.push((i, j));
            }
        }
    }
    let strict = violating.is_empty();
    let increasing = occurring
        .windows(2)
        .all(|w| counts[w[0] - 1] < counts[w[1] - 1]);
    (strict, increasing, violating)
}

/// Per-generator syllable counts without materializing the syllables.
fn per_generator_counts(word: &CyclicWord, graph: &DependenceGraph) -> Vec<usize> {
    let letters = word.letters();
    let n = letters.len();
    let mut runs_per_component = alloc::vec![0usize; graph.component_count()];
    if n > 0 {
        let comp: Vec<usize> = letters
            .iter()
            .map(|&l| graph.component_of_letter(l))
            .collect();
        let boundaries = (0..n).filter(|&i| comp[(i + n - 1) % n] != comp[i]).count();
        if boundaries == 0 {
            runs_per_component[comp[0]] = 1;
        } else {
            for i in 0..n {
                if comp[(i + n - 1) % n] != comp[i] {
                    runs_per_component[comp[i]] += 1;
                }
            }
        }
    }
    (1..=word.rank())
        .map(|g| runs_per_component[graph.component_of_generator(g)])
        .collect()
}

fn syllable_conditions(
    word: &CyclicWord,
    set: &LevelSet,
    graph: &DependenceGraph,
) -> (bool, bool) {
    let rank = word.rank();
    let own = per_generator_counts(word, graph);
    let member_counts: Vec<Vec<usize>> = set
        .iter()
        .map(|v| per_generator_counts(v, graph))
        .collect();

    let top = rank - 1;
    let condition_i = member_counts.iter().all(|c| own[top] <= c[top]);

    let mut condition_ii = true;
    for j in 1..rank {
        let idx = j - 1;
        let shares_higher =
            (j + 1..=rank).any(|k| graph.same_component(j, k));
        if shares_higher {
            continue;
        }
        let beaten = member_counts.iter().any(|c| {
            c[j..rank] == own[j..rank] && c[idx] < own[idx]
        });
        if beaten {
            condition_ii = false;
            break;
        }
    }
    (condition_i, condition_ii)
}

/// Analyze a minimal, non-empty word. Errors if the word is empty, is not
/// minimal, or the level-set search hits a cap.
pub fn analyze(word: &CyclicWord, limits: SearchLimits) -> Result<WordAnalysis, StructureError> {
    if word.is_empty() {
        return Err(StructureError::EmptyWord);
    }
    let set = level_set(word, limits)?;
    let admissible = admissible_auts(&set);
    let graph = DependenceGraph::build(&set, &admissible);
    let profile = syllable_profile(word, &graph)?;
    let (strict, increasing, violating) = counts_report(word);
    let (condition_i, condition_ii) = syllable_conditions(word, &set, &graph);
    Ok(WordAnalysis {
        word: word.clone(),
        level_set_size: set.len(),
        admissible_count: admissible.len(),
        graph,
        profile,
        report: HypothesisReport {
            minimal: true,
            counts_strict: strict,
            counts_increasing: increasing,
            violating_pairs: violating,
            condition_i: Some(condition_i),
            condition_ii: Some(condition_ii),
        },
    })
}

/// Hypothesis diagnostics for any word. Count checks always run; the
/// syllable conditions are computed only for minimal, non-empty words and are
/// `None` otherwise.
pub fn check_hypothesis(
    word: &CyclicWord,
    limits: SearchLimits,
) -> Result<HypothesisReport, StructureError> {
    let (strict, increasing, violating) = counts_report(word);
    if word.is_empty() || !crate::orbit::is_minimal(word) {
        return Ok(HypothesisReport {
            minimal: word.is_empty() || crate::orbit::is_minimal(word),
            counts_strict: strict,
            counts_increasing: increasing,
            violating_pairs: violating,
            condition_i: None,
            condition_ii: None,
        });
    }
    Ok(analyze(word, limits)?.report)
}

/// The signed permutation sorting generators by occurrence count (stable on
/// ties), together with the relabeled word. After relabeling, counts are
/// non-decreasing in generator order, strictly increasing exactly when the
/// original counts were pairwise distinct.
pub fn count_sorted_relabeling(word: &CyclicWord) -> (PermAut, CyclicWord) {
    let counts = word.letter_counts();
    let mut order: Vec<usize> = (1..=word.rank()).collect();
    order.sort_by_key(|&g| (counts[g - 1], g));
    let mut images = alloc::vec![Letter::positive(1); word.rank()];
    for (new_index, &old_gen) in order.iter().enumerate() {
        images[old_gen - 1] = Letter::positive(new_index + 1);
    }
    let perm = PermAut::new(images).expect("permutation by construction");
    let relabeled = perm.apply(word).expect("same rank");
    (perm, relabeled)
}
