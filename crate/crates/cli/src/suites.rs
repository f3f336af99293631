use crate::error::CliError;
use crate::exhaustive::bound_scan;
use crate::report::{Check, Row, SuiteReport};
use autorbit_core::{
    analyze, check_hypothesis, count_minimal, degree_monotone_count, degree_one_chain_set,
    family_word, predicted_count, verify_lower_bound, ChainConvention, CyclicWord, FamilyKind,
    FamilySpec, Letter, Predicted, SearchLimits,
};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

/// Worked example words: two generators in blocks, and the interleaved word
/// whose top two generators share a dependence component. The `_V` words are
/// length-preserving images of the `_U` words, so each pair shares one level
/// set and one dependence graph.
pub const BLOCKS4_U: &str = "x1^2 x2^3 x3^4 x4^5";
pub const BLOCKS4_V: &str = "x1 x2^3 x1 x3^4 x4^5";
pub const MIXED4_U: &str = "x1^2 x2^3 x3^2 x4 x3^-1 x4 x3 x4^3";
pub const MIXED4_V: &str = "x1^2 x3^2 x2^3 x4 x3^-1 x4 x3 x4^3";

/// The selectable verification suites.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum SuiteId {
    /// Rank-2 families: exact counts, degree-one chain sets, and the
    /// exhaustive count bound over short words.
    F2,
    /// The rank-3 family with cubic count growth.
    F3Sims,
    /// The general-rank family against its rational lower bound.
    Thm13,
    /// Worked-example structure fixtures and single-chain counts.
    HypothesisFixtures,
}

impl SuiteId {
    pub fn token(self) -> &'static str {
        match self {
            SuiteId::F2 => "f2",
            SuiteId::F3Sims => "f3-sims",
            SuiteId::Thm13 => "thm13",
            SuiteId::HypothesisFixtures => "hypothesis-fixtures",
        }
    }
}

/// Suite parameters taken from the command line; `None` selects defaults.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub ell: Option<Vec<usize>>,
    pub n: Option<Vec<usize>>,
}

/// Parse `--ell`: an inclusive range `A..B` or a comma-separated list.
pub fn parse_ell_list(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = |msg: String| CliError::Usage(msg);
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid range start in --ell: {text}")))?;
        let b: usize = b
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid range end in --ell: {text}")))?;
        if a > b {
            return Err(bad(format!("empty range in --ell: {text}")));
        }
        return Ok((a..=b).collect());
    }
    let values: Result<Vec<usize>, _> = text.split(',').map(|t| t.trim().parse()).collect();
    let values = values.map_err(|_| bad(format!("invalid list in --ell: {text}")))?;
    if values.is_empty() {
        return Err(bad("--ell must name at least one value".to_string()));
    }
    Ok(values)
}

/// Parse `--n`: a comma-separated rank list.
pub fn parse_rank_list(text: &str) -> Result<Vec<usize>, CliError> {
    let values: Result<Vec<usize>, _> = text.split(',').map(|t| t.trim().parse()).collect();
    values.map_err(|_| CliError::Usage(format!("invalid list in --n: {text}")))
}

/// Parse `--threads`: a positive count or `auto`.
pub fn parse_threads(text: &str) -> Result<usize, CliError> {
    if text == "auto" {
        return Ok(std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1));
    }
    match text.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(CliError::Usage(format!(
            "--threads takes a positive count or \"auto\", got {text}"
        ))),
    }
}

/// One unit of suite work; a job may contribute several report rows.
#[derive(Clone, Debug)]
enum Job {
    F2Square { ell: usize },
    F2Max { ell: usize },
    LambdaSquare { ell: usize },
    LambdaMixed { l1: usize, l2: usize },
    BoundScan { len: usize },
    CubicFamily { ell: usize },
    LowerBound { rank: usize, ell: usize },
    M0Square { ell: usize },
    Blocks4U,
    Blocks4V,
    Mixed4U,
    Mixed4V,
    CubicHypothesis,
}

fn reject_n(id: SuiteId, params: &SuiteParams) -> Result<(), CliError> {
    if params.n.is_some() {
        return Err(CliError::Usage(format!(
            "--n applies only to the thm13 suite, not {}",
            id.token()
        )));
    }
    Ok(())
}

fn suite_jobs(id: SuiteId, params: &SuiteParams) -> Result<Vec<Job>, CliError> {
    let mut jobs = Vec::new();
    match id {
        SuiteId::F2 => {
            reject_n(id, params)?;
            let ells = params.ell.clone().unwrap_or_else(|| (3..=10).collect());
            for &ell in &ells {
                jobs.push(Job::F2Square { ell });
            }
            for &ell in &ells {
                jobs.push(Job::F2Max { ell });
            }
            for &ell in &ells {
                jobs.push(Job::LambdaSquare { ell });
            }
            for l1 in 1..=5 {
                for l2 in 1..=5 {
                    if l1 != l2 {
                        jobs.push(Job::LambdaMixed { l1, l2 });
                    }
                }
            }
            for len in 9..=12 {
                jobs.push(Job::BoundScan { len });
            }
        }
        SuiteId::F3Sims => {
            reject_n(id, params)?;
            let ells = params.ell.clone().unwrap_or_else(|| (3..=5).collect());
            for ell in ells {
                jobs.push(Job::CubicFamily { ell });
            }
        }
        SuiteId::Thm13 => {
            let points: Vec<(usize, usize)> = if params.n.is_none() && params.ell.is_none() {
                vec![(2, 5), (2, 9), (3, 3), (3, 6)]
            } else {
                let ranks = params.n.clone().unwrap_or_else(|| vec![2, 3]);
                let ells = params.ell.clone().unwrap_or_else(|| vec![3, 5, 6, 9]);
                let mut points = Vec::new();
                for &rank in &ranks {
                    for &ell in &ells {
                        points.push((rank, ell));
                    }
                }
                points
            };
            for (rank, ell) in points {
                jobs.push(Job::LowerBound { rank, ell });
            }
        }
        SuiteId::HypothesisFixtures => {
            reject_n(id, params)?;
            let ells = params.ell.clone().unwrap_or_else(|| (3..=10).collect());
            for ell in ells {
                jobs.push(Job::M0Square { ell });
            }
            jobs.push(Job::Blocks4U);
            jobs.push(Job::Blocks4V);
            jobs.push(Job::Mixed4U);
            jobs.push(Job::Mixed4V);
            jobs.push(Job::CubicHypothesis);
        }
    }
    Ok(jobs)
}

fn exact_prediction(spec: &FamilySpec) -> Result<(CyclicWord, u64), CliError> {
    let prediction = predicted_count(spec)?;
    match prediction.value {
        Predicted::Exact(v) => Ok((prediction.word, v)),
        Predicted::RationalLowerBound { .. } => {
            unreachable!("exact families never predict a rational bound")
        }
    }
}

fn mixed_lambda_word(l1: usize, l2: usize) -> CyclicWord {
    let mut letters = vec![Letter::positive(1)];
    letters.extend(std::iter::repeat_n(Letter::positive(2), l1));
    letters.push(Letter::negative(1));
    letters.extend(std::iter::repeat_n(Letter::positive(2), l2));
    CyclicWord::new(2, letters).expect("reduced by construction")
}

fn fixture(text: &str) -> CyclicWord {
    CyclicWord::parse(text, 4).expect("fixture words parse")
}

fn run_job(job: &Job, limits: SearchLimits) -> Result<Vec<Row>, CliError> {
    let started = Instant::now();
    let mut rows = Vec::new();
    match *job {
        Job::F2Square { ell } => {
            let spec = FamilySpec::new(FamilyKind::F2Square, 2, ell)?;
            let (word, predicted) = exact_prediction(&spec)?;
            let computed = count_minimal(&word, limits)? as u64;
            rows.push(Row::new(
                "f2-square",
                2,
                ell,
                word.to_string(),
                word.len(),
                computed,
                Check::Equals(predicted),
                started.elapsed().as_millis(),
            ));
        }
        Job::F2Max { ell } => {
            let spec = FamilySpec::new(FamilyKind::F2Max, 2, ell)?;
            let (word, predicted) = exact_prediction(&spec)?;
            let computed = count_minimal(&word, limits)? as u64;
            rows.push(Row::new(
                "f2-max",
                2,
                ell,
                word.to_string(),
                word.len(),
                computed,
                Check::Equals(predicted),
                started.elapsed().as_millis(),
            ));
        }
        Job::LambdaSquare { ell } => {
            let word = family_word(&FamilySpec::new(FamilyKind::F2Square, 2, ell)?);
            let computed = degree_one_chain_set(&word)?.len() as u64;
            rows.push(Row::new(
                "f2-lambda-square",
                2,
                ell,
                word.to_string(),
                word.len(),
                computed,
                Check::Equals(word.len() as u64 - 1),
                started.elapsed().as_millis(),
            ));
        }
        Job::LambdaMixed { l1, l2 } => {
            let word = mixed_lambda_word(l1, l2);
            let computed = degree_one_chain_set(&word)?.len() as u64;
            rows.push(Row::new(
                "f2-lambda-mixed",
                2,
                10 * l1 + l2,
                word.to_string(),
                word.len(),
                computed,
                Check::Equals(1),
                started.elapsed().as_millis(),
            ));
        }
        Job::BoundScan { len } => {
            let scan = bound_scan(len, limits).map_err(CliError::Orbit)?;
            rows.push(Row::new(
                "f2-bound",
                2,
                0,
                scan
                    .witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_default(),
                len,
                scan.max_count as u64,
                Check::AtMost(8 * len as u64 - 40),
                started.elapsed().as_millis(),
            ));
        }
        Job::CubicFamily { ell } => {
            let spec = FamilySpec::new(FamilyKind::F3Cubic, 3, ell)?;
            let (word, predicted) = exact_prediction(&spec)?;
            let computed = count_minimal(&word, limits)? as u64;
            rows.push(Row::new(
                "f3-sims",
                3,
                ell,
                word.to_string(),
                word.len(),
                computed,
                Check::Equals(predicted),
                started.elapsed().as_millis(),
            ));
        }
        Job::LowerBound { rank, ell } => {
            let check = verify_lower_bound(rank, ell, limits)?;
            rows.push(Row::new(
                "thm13",
                rank,
                ell,
                check.word.to_string(),
                check.word.len(),
                check.count as u64,
                Check::AtLeast {
                    numerator: check.bound_numerator,
                    denominator: check.bound_denominator,
                },
                started.elapsed().as_millis(),
            ));
        }
        Job::M0Square { ell } => {
            let word = family_word(&FamilySpec::new(FamilyKind::F2Square, 2, ell)?);
            let computed =
                degree_monotone_count(&word, 0, ChainConvention::RequireStep, limits)? as u64;
            rows.push(Row::new(
                "m0-square",
                2,
                ell,
                word.to_string(),
                word.len(),
                computed,
                Check::Equals(1),
                started.elapsed().as_millis(),
            ));
        }
        Job::Blocks4U => {
            let word = fixture(BLOCKS4_U);
            let analysis = analyze(&word, limits)?;
            let ms = started.elapsed().as_millis();
            rows.push(Row::new(
                "blocks4-components",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.graph.component_count() as u64,
                Check::Equals(4),
                ms,
            ));
            rows.push(Row::new(
                "blocks4-u-syllables",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.profile.total as u64,
                Check::Equals(4),
                ms,
            ));
        }
        Job::Blocks4V => {
            let word = fixture(BLOCKS4_V);
            let analysis = analyze(&word, limits)?;
            let ms = started.elapsed().as_millis();
            rows.push(Row::new(
                "blocks4-v-c1",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.profile.per_generator[0] as u64,
                Check::Equals(2),
                ms,
            ));
            rows.push(Row::new(
                "blocks4-v-syllables",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.profile.total as u64,
                Check::Equals(5),
                ms,
            ));
        }
        Job::Mixed4U => {
            let word = fixture(MIXED4_U);
            let analysis = analyze(&word, limits)?;
            let ms = started.elapsed().as_millis();
            rows.push(Row::new(
                "mixed4-components",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.graph.component_count() as u64,
                Check::Equals(3),
                ms,
            ));
            rows.push(Row::new(
                "mixed4-c3-c4-joined",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.graph.same_component(3, 4) as u64,
                Check::Equals(1),
                ms,
            ));
            rows.push(Row::new(
                "mixed4-u-syllables",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.profile.total as u64,
                Check::Equals(4),
                ms,
            ));
        }
        Job::Mixed4V => {
            let word = fixture(MIXED4_V);
            let analysis = analyze(&word, limits)?;
            let ms = started.elapsed().as_millis();
            rows.push(Row::new(
                "mixed4-v-c3",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.profile.per_generator[2] as u64,
                Check::Equals(2),
                ms,
            ));
            rows.push(Row::new(
                "mixed4-v-c4",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.profile.per_generator[3] as u64,
                Check::Equals(2),
                ms,
            ));
            rows.push(Row::new(
                "mixed4-v-syllables",
                4,
                0,
                word.to_string(),
                word.len(),
                analysis.profile.total as u64,
                Check::Equals(6),
                ms,
            ));
        }
        Job::CubicHypothesis => {
            let word = family_word(&FamilySpec::new(FamilyKind::F3Cubic, 3, 3)?);
            let report = check_hypothesis(&word, limits)?;
            let computed = (report.minimal && report.counts_increasing) as u64;
            rows.push(Row::new(
                "cubic-hypothesis",
                3,
                3,
                word.to_string(),
                word.len(),
                computed,
                Check::Equals(1),
                started.elapsed().as_millis(),
            ));
        }
    }
    Ok(rows)
}

fn run_jobs(
    jobs: &[Job],
    limits: SearchLimits,
    threads: usize,
) -> Vec<Result<Vec<Row>, CliError>> {
    let slots: Vec<Mutex<Option<Result<Vec<Row>, CliError>>>> =
        jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = threads.clamp(1, jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else {
                    break;
                };
                let outcome = run_job(job, limits);
                *slots[i].lock().expect("no poisoned slot") = Some(outcome);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("no poisoned slot")
                .expect("every job ran")
        })
        .collect()
}

/// Run one suite: build its jobs, evaluate them across the worker pool, and
/// assemble the report in job order regardless of scheduling.
pub fn run_suite(
    id: SuiteId,
    params: &SuiteParams,
    limits: SearchLimits,
    threads: usize,
) -> Result<SuiteReport, CliError> {
    let jobs = suite_jobs(id, params)?;
    let started = Instant::now();
    let mut rows = Vec::new();
    for outcome in run_jobs(&jobs, limits, threads) {
        rows.extend(outcome?);
    }
    Ok(SuiteReport::from_rows(
        id.token(),
        rows,
        started.elapsed().as_millis(),
    ))
}
