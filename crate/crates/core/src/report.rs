//! Machine-readable verification reports.
//!
//! A [`Report`] is one JSON object with a section per concern; every entry
//! records what was checked, the reference value, the computed value, and a
//! verdict. `flagged` marks informational findings (documented
//! discrepancies, degenerate parameter values) that are expected and do not
//! fail a run.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Flagged,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportItem {
    pub subject: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    pub provenance: String,
}

impl ReportItem {
    pub fn new(
        subject: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        verdict: Verdict,
        provenance: impl Into<String>,
    ) -> Self {
        ReportItem {
            subject: subject.into(),
            expected: expected.into(),
            computed: computed.into(),
            verdict,
            provenance: provenance.into(),
        }
    }

    pub fn pass(
        subject: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        provenance: impl Into<String>,
    ) -> Self {
        Self::new(subject, expected, computed, Verdict::Pass, provenance)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub seed: u64,
    pub primes: Vec<u64>,
    pub cohomology: Vec<ReportItem>,
    pub properties: Vec<ReportItem>,
    pub extensions: Vec<ReportItem>,
    pub isomorphisms: Vec<ReportItem>,
}

impl Report {
    pub fn sections(&self) -> [(&'static str, &[ReportItem]); 4] {
        [
            ("cohomology", &self.cohomology),
            ("properties", &self.properties),
            ("extensions", &self.extensions),
            ("isomorphisms", &self.isomorphisms),
        ]
    }

    pub fn failures(&self) -> usize {
        self.sections()
            .iter()
            .flat_map(|(_, items)| items.iter())
            .filter(|i| i.verdict == Verdict::Fail)
            .count()
    }

    pub fn total(&self) -> usize {
        self.sections().iter().map(|(_, items)| items.len()).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering, one line per item.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "seed {}; primes {:?}; {} checks, {} failed\n",
            self.seed,
            self.primes,
            self.total(),
            self.failures()
        ));
        for (name, items) in self.sections() {
            if items.is_empty() {
                continue;
            }
            out.push_str(&format!("\n[{name}]\n"));
            for item in items {
                let tag = match item.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::Flagged => "note",
                };
                out.push_str(&format!(
                    "  {tag}  {} | expected {} | computed {}\n",
                    item.subject, item.expected, item.computed
                ));
            }
        }
        out
    }
}
