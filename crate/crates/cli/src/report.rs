use serde_json::json;
use std::fmt;

/// Output format selected with `--format`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// How a computed count relates to its target when a row passes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Eq => "eq",
            Relation::Ge => "ge",
            Relation::Le => "le",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Target a computed count is checked against.
#[derive(Clone, Copy, Debug)]
pub enum Check {
    Equals(u64),
    AtMost(u64),
    /// Rational lower bound; passes when `computed * denominator >= numerator`.
    AtLeast { numerator: u128, denominator: u128 },
}

impl Check {
    pub fn relation(&self) -> Relation {
        match self {
            Check::Equals(_) => Relation::Eq,
            Check::AtMost(_) => Relation::Le,
            Check::AtLeast { .. } => Relation::Ge,
        }
    }

    pub fn passes(&self, computed: u64) -> bool {
        match *self {
            Check::Equals(t) => computed == t,
            Check::AtMost(t) => computed <= t,
            Check::AtLeast {
                numerator,
                denominator,
            } => u128::from(computed).saturating_mul(denominator) >= numerator,
        }
    }

    pub fn render(&self) -> String {
        match *self {
            Check::Equals(t) | Check::AtMost(t) => t.to_string(),
            Check::AtLeast {
                numerator,
                denominator,
            } => {
                let g = gcd(numerator, denominator.max(1));
                let (n, d) = (numerator / g, denominator.max(1) / g);
                if d == 1 {
                    n.to_string()
                } else {
                    format!("{n}/{d}")
                }
            }
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// One verified quantity: what was computed, what was expected, and whether
/// the comparison held.
#[derive(Clone, Debug)]
pub struct Row {
    /// Row group tag, written to the `suite` column.
    pub group: &'static str,
    pub rank: usize,
    /// Family parameter; 0 for rows not indexed by a tail exponent. Mixed
    /// two-exponent rows encode the pair as `10 * first + second`.
    pub ell: usize,
    pub word: String,
    pub word_length: usize,
    pub computed: u64,
    pub predicted: String,
    pub relation: Relation,
    pub pass: bool,
    pub millis: u128,
}

impl Row {
    pub fn new(
        group: &'static str,
        rank: usize,
        ell: usize,
        word: String,
        word_length: usize,
        computed: u64,
        check: Check,
        millis: u128,
    ) -> Row {
        Row {
            group,
            rank,
            ell,
            word,
            word_length,
            computed,
            predicted: check.render(),
            relation: check.relation(),
            pass: check.passes(computed),
            millis,
        }
    }
}

/// A full suite run: every row plus the overall verdict.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub rows: Vec<Row>,
    pub pass: bool,
    pub total_millis: u128,
}

impl SuiteReport {
    pub fn from_rows(suite: &'static str, rows: Vec<Row>, total_millis: u128) -> SuiteReport {
        let pass = rows.iter().all(|r| r.pass);
        SuiteReport {
            suite,
            rows,
            pass,
            total_millis,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<22} rank={} ell={:<3} len={:<3} computed={:<9} predicted={:<11} {} {:<4} {:>6}ms  {}\n",
                r.group,
                r.rank,
                r.ell,
                r.word_length,
                r.computed,
                r.predicted,
                r.relation,
                if r.pass { "pass" } else { "FAIL" },
                r.millis,
                r.word,
            ));
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        out.push_str(&format!(
            "result: {} ({passed}/{} rows, {}ms)\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.rows.len(),
            self.total_millis,
        ));
        out
    }

    fn render_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "suite": r.group,
                    "rank": r.rank,
                    "ell": r.ell,
                    "word": r.word,
                    "word_length": r.word_length,
                    "computed_N": r.computed,
                    "predicted": r.predicted,
                    "relation": r.relation.as_str(),
                    "pass": r.pass,
                    "millis": r.millis as u64,
                })
            })
            .collect();
        let value = json!({
            "schema": 1,
            "suite": self.suite,
            "pass": self.pass,
            "total_millis": self.total_millis as u64,
            "rows": rows,
        });
        format!("{value:#}")
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("suite,rank,ell,word_length,computed_N,predicted,relation,pass,millis\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.group,
                r.rank,
                r.ell,
                r.word_length,
                r.computed,
                r.predicted,
                r.relation,
                r.pass,
                r.millis,
            ));
        }
        out
    }
}
