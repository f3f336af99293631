use crate::error::CliError;
use crate::report::Format;
use crate::suites::{run_suite, SuiteId, SuiteParams};
use crate::words::parse_word;
use autorbit_core::{
    analyze, is_minimal, level_set, minimize, HypothesisReport, OrbitError, SearchLimits,
    WordAnalysis,
};
use serde_json::json;
use std::path::Path;

/// What a command produced: the text for stdout and the process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, code: 0 }
    }
}

fn reject_csv(format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(
            "csv output applies only to verify; use --format text or json".to_string(),
        ));
    }
    Ok(())
}

/// Shorten a word to minimum orbit length and report the moves used.
pub fn cmd_minimize(
    text: &str,
    rank: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    reject_csv(format)?;
    let word = parse_word(text, rank)?;
    let (minimal, chain) = minimize(&word);
    let stdout = match format {
        Format::Json => {
            let steps: Vec<String> = chain.steps().iter().map(|s| s.to_string()).collect();
            let value = json!({
                "schema": 1,
                "word": word.to_string(),
                "minimal": minimal.to_string(),
                "length": minimal.len(),
                "steps": steps,
            });
            format!("{value:#}")
        }
        _ => {
            let mut out = String::new();
            out.push_str(&format!("word: {word}\n"));
            out.push_str(&format!("minimal: {minimal}\n"));
            out.push_str(&format!("length: {}\n", minimal.len()));
            out.push_str(&format!("steps: {}\n", chain.len()));
            for step in chain.steps() {
                out.push_str(&format!("  {step}\n"));
            }
            out
        }
    };
    Ok(Outcome::ok(stdout))
}

/// Count the minimum-length words in a word's orbit, optionally writing the
/// sorted member list to a file.
pub fn cmd_count(
    text: &str,
    rank: Option<usize>,
    limits: SearchLimits,
    format: Format,
    dump: Option<&Path>,
) -> Result<Outcome, CliError> {
    reject_csv(format)?;
    let word = parse_word(text, rank)?;
    let (minimal, _) = minimize(&word);
    match level_set(&minimal, limits) {
        Ok(set) => {
            if let Some(path) = dump {
                let mut lines: Vec<String> = set.iter().map(|w| w.to_string()).collect();
                lines.sort();
                std::fs::write(path, lines.join("\n") + "\n")?;
            }
            let stdout = match format {
                Format::Json => {
                    let value = json!({
                        "schema": 1,
                        "word": word.to_string(),
                        "minimal": minimal.to_string(),
                        "length": minimal.len(),
                        "count": set.len(),
                        "truncated": false,
                    });
                    format!("{value:#}")
                }
                _ => {
                    let mut out = String::new();
                    out.push_str(&format!("word: {word}\n"));
                    out.push_str(&format!("minimal: {minimal}\n"));
                    out.push_str(&format!("length: {}\n", minimal.len()));
                    out.push_str(&format!("count: {}\n", set.len()));
                    if let Some(path) = dump {
                        out.push_str(&format!("dump: {}\n", path.display()));
                    }
                    out
                }
            };
            Ok(Outcome::ok(stdout))
        }
        Err(OrbitError::LimitExceeded { members_found, .. }) => {
            let stdout = match format {
                Format::Json => {
                    let value = json!({
                        "schema": 1,
                        "word": word.to_string(),
                        "minimal": minimal.to_string(),
                        "length": minimal.len(),
                        "count_lower_bound": members_found,
                        "truncated": true,
                    });
                    format!("{value:#}")
                }
                _ => format!(
                    "word: {word}\nminimal: {minimal}\nlength: {}\ntruncated: true\ncount: at least {members_found} (search limit exceeded)\n",
                    minimal.len()
                ),
            };
            Ok(Outcome { stdout, code: 3 })
        }
        Err(e) => Err(e.into()),
    }
}

fn hypothesis_json(report: &HypothesisReport) -> serde_json::Value {
    let pairs: Vec<serde_json::Value> = report
        .violating_pairs
        .iter()
        .map(|&(i, j)| json!([i, j]))
        .collect();
    json!({
        "minimal": report.minimal,
        "counts_strict": report.counts_strict,
        "counts_increasing": report.counts_increasing,
        "violating_pairs": pairs,
        "condition_i": report.condition_i,
        "condition_ii": report.condition_ii,
    })
}

fn analysis_json(
    input: &str,
    minimized: bool,
    analysis: &WordAnalysis,
) -> serde_json::Value {
    let components: Vec<Vec<String>> = analysis
        .graph
        .components()
        .iter()
        .map(|c| c.iter().map(|l| l.to_string()).collect())
        .collect();
    let mut per_generator = serde_json::Map::new();
    for (i, &count) in analysis.profile.per_generator.iter().enumerate() {
        per_generator.insert(format!("x{}", i + 1), json!(count));
    }
    json!({
        "schema": 1,
        "word": input,
        "analyzed": analysis.word.to_string(),
        "minimized": minimized,
        "notice": if minimized {
            json!("input was not minimal; its minimal form was analyzed")
        } else {
            serde_json::Value::Null
        },
        "level_set_size": analysis.level_set_size,
        "admissible_count": analysis.admissible_count,
        "components": components,
        "profile": {
            "per_generator": per_generator,
            "total": analysis.profile.total,
        },
        "hypothesis": hypothesis_json(&analysis.report),
    })
}

fn analysis_text(input: &str, minimized: bool, analysis: &WordAnalysis) -> String {
    let mut out = String::new();
    out.push_str(&format!("word: {input}\n"));
    if minimized {
        out.push_str("note: input was not minimal; its minimal form was analyzed\n");
        out.push_str(&format!("analyzed: {}\n", analysis.word));
    }
    out.push_str(&format!("length: {}\n", analysis.word.len()));
    out.push_str(&format!("level set size: {}\n", analysis.level_set_size));
    out.push_str(&format!("admissible cuts: {}\n", analysis.admissible_count));
    out.push_str(&format!(
        "components ({}):\n",
        analysis.graph.component_count()
    ));
    for component in analysis.graph.components() {
        let letters: Vec<String> = component.iter().map(|l| l.to_string()).collect();
        out.push_str(&format!("  {{{}}}\n", letters.join(", ")));
    }
    out.push_str("syllables:");
    for (i, count) in analysis.profile.per_generator.iter().enumerate() {
        out.push_str(&format!(" x{}={count}", i + 1));
    }
    out.push_str(&format!(" total={}\n", analysis.profile.total));
    let r = &analysis.report;
    out.push_str(&format!(
        "hypothesis: minimal={} counts_strict={} counts_increasing={} condition_i={} condition_ii={}\n",
        r.minimal,
        r.counts_strict,
        r.counts_increasing,
        r.condition_i.map_or("unknown".to_string(), |b| b.to_string()),
        r.condition_ii.map_or("unknown".to_string(), |b| b.to_string()),
    ));
    out
}

/// Report the dependence structure of a word: level-set size, admissible
/// cuts, dependence components, syllable profile, and the hypothesis report.
/// Non-minimal input is minimized first, with a notice.
pub fn cmd_analyze(
    text: &str,
    rank: Option<usize>,
    limits: SearchLimits,
    format: Format,
) -> Result<Outcome, CliError> {
    reject_csv(format)?;
    let word = parse_word(text, rank)?;
    let (target, minimized) = if is_minimal(&word) {
        (word.clone(), false)
    } else {
        (minimize(&word).0, true)
    };
    let analysis = analyze(&target, limits)?;
    let input = word.to_string();
    let stdout = match format {
        Format::Json => format!("{:#}", analysis_json(&input, minimized, &analysis)),
        _ => analysis_text(&input, minimized, &analysis),
    };
    Ok(Outcome::ok(stdout))
}

/// Run a verification suite and render its report; exit code 1 when any row
/// fails.
pub fn cmd_verify(
    suite: SuiteId,
    params: &SuiteParams,
    limits: SearchLimits,
    threads: usize,
    format: Format,
) -> Result<Outcome, CliError> {
    let report = run_suite(suite, params, limits, threads)?;
    let code = if report.pass { 0 } else { 1 };
    Ok(Outcome {
        stdout: report.render(format),
        code,
    })
}
