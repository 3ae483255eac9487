//! Session reports: a schema-versioned JSON form and a text form.
//!
//! Everything outside `volatile` is a function of the script and the
//! settings, so two runs of the same input serialize to the same bytes
//! once the volatile section is cleared.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::rigidity::{CampaignReport, CheckStatus, CheckVerdict};

pub const SCHEMA: &str = "extrigid.report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub seed: u64,
    pub degree_cap: u32,
    /// `None` means the number of variables plus six.
    pub length_cap: Option<usize>,
    pub trials: usize,
    pub prime: u64,
    pub xi_bar_sign: String,
    pub model: String,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 0,
            degree_cap: crate::ring::DEFAULT_DEGREE_CAP,
            length_cap: None,
            trials: 200,
            prime: 32003,
            xi_bar_sign: "xi_bar_j = sum_{t=0}^{j} (-1)^t length Ext^{j-t}".into(),
            model: "graded rings over F_p; statements about local rings are tested on their graded analogues, \
                    so a fail witness could in principle reflect the grading rather than an engine bug"
                .into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingRecord {
    pub name: String,
    pub description: String,
    pub hypersurface: bool,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub index: usize,
    pub degree: i32,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub index: usize,
    /// `None` when the length is infinite.
    pub length: Option<u64>,
    pub zero: bool,
    pub from_degree: Option<i32>,
    pub hilbert: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandResult {
    Resolution {
        betti: Vec<BettiEntry>,
        totals: Vec<u64>,
        grid: String,
        terminated: bool,
        periodic_from: Option<usize>,
        factorization_verified: Option<bool>,
    },
    Table {
        functor: String,
        entries: Vec<TableEntry>,
        partial: bool,
    },
    Value {
        invariant: String,
        value: Value,
    },
    Module {
        degrees: Vec<i32>,
        rows: Vec<Vec<String>>,
    },
    Verdict {
        verdict: CheckVerdict,
    },
    Campaign {
        report: CampaignReport,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandRecord {
    pub line: usize,
    pub command: String,
    pub result: CommandResult,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Volatile {
    /// Wall time of each command in microseconds, in command order.
    pub wall_micros: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub settings: Settings,
    pub rings: Vec<RingRecord>,
    pub results: Vec<CommandRecord>,
    pub volatile: Volatile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

impl Report {
    pub fn new(settings: Settings) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            settings,
            rings: Vec::new(),
            results: Vec::new(),
            volatile: Volatile::default(),
        }
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &CheckVerdict> {
        self.results.iter().flat_map(|r| -> Box<dyn Iterator<Item = &CheckVerdict>> {
            match &r.result {
                CommandResult::Verdict { verdict } => Box::new(std::iter::once(verdict)),
                CommandResult::Campaign { report } => Box::new(report.verdicts.iter()),
                _ => Box::new(std::iter::empty()),
            }
        })
    }

    /// 0 when everything passed or was inapplicable, 1 on any fail verdict,
    /// 2 when something was inconclusive or a command failed.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts().any(|v| v.status == CheckStatus::Fail) {
            return 1;
        }
        let unsure = self.verdicts().any(|v| v.status == CheckStatus::Inconclusive)
            || self.results.iter().any(|r| match &r.result {
                CommandResult::Error { .. } => true,
                CommandResult::Table { partial, .. } => *partial,
                _ => false,
            });
        if unsure {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// JSON with the volatile section emptied.
    pub fn stable_json(&self) -> String {
        let mut r = self.clone();
        r.volatile = Volatile::default();
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let s = &self.settings;
        let mut out = format!("extrigid {} report ({})\n", self.tool_version, self.schema);
        let length_cap = s.length_cap.map_or("variables+6".to_string(), |c| c.to_string());
        out.push_str(&format!(
            "settings: seed={} degree-cap={} length-cap={} trials={} prime={}\n",
            s.seed, s.degree_cap, length_cap, s.trials, s.prime
        ));
        for r in &self.rings {
            let kind = if r.hypersurface { "hypersurface" } else { "regular" };
            out.push_str(&format!("ring {}: {} ({kind}, dim {})\n", r.name, r.description, r.dim));
        }
        for rec in &self.results {
            out.push_str(&format!("\n> {};\n", rec.command));
            out.push_str(&render_result(&rec.result));
        }
        out
    }

    pub fn emit(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Text => self.to_text().into_bytes(),
            Format::Structured => self.to_json().into_bytes(),
        }
    }
}

fn render_length(l: Option<u64>) -> String {
    l.map_or("inf".to_string(), |v| v.to_string())
}

fn render_verdict(v: &CheckVerdict) -> String {
    let mut out = format!("{}: {}", v.check_name, v.status);
    if v.is_genuine() {
        out.push_str(" (genuine)");
    }
    out.push('\n');
    let data = serde_json::to_string(&v.witness.data).expect("witness data serializes");
    out.push_str(&format!("  {data}\n"));
    out
}

fn render_result(r: &CommandResult) -> String {
    match r {
        CommandResult::Resolution {
            grid,
            terminated,
            periodic_from,
            factorization_verified,
            ..
        } => {
            let mut out = grid.clone();
            if *terminated {
                out.push_str("resolution terminates\n");
            } else if let Some(s) = periodic_from {
                let mf = match factorization_verified {
                    Some(true) => ", matrix factorization verified",
                    Some(false) => ", matrix factorization FAILED",
                    None => "",
                };
                out.push_str(&format!("periodic from index {s}{mf}\n"));
            } else {
                out.push_str("truncated at the length cap\n");
            }
            out
        }
        CommandResult::Table { functor, entries, partial } => {
            let mut out = String::new();
            let sym = if functor == "ext" { "Ext^" } else { "Tor_" };
            for e in entries {
                let hilbert: Vec<String> = e.hilbert.iter().map(|h| h.to_string()).collect();
                let from = e.from_degree.map_or(String::new(), |d| format!(", hilbert from degree {d}: {}", hilbert.join(" ")));
                out.push_str(&format!("{sym}{}: length {}{from}\n", e.index, render_length(e.length)));
            }
            if *partial {
                out.push_str("(table truncated by a cap)\n");
            }
            out
        }
        CommandResult::Value { invariant, value } => format!("{invariant} = {value}\n"),
        CommandResult::Module { degrees, rows } => {
            let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
            let degs: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
            format!("coker [{}] degrees [{}]\n", rows.join(", "), degs.join(", "))
        }
        CommandResult::Verdict { verdict } => render_verdict(verdict),
        CommandResult::Campaign { report } => {
            let s = &report.summary;
            let mut out = format!(
                "campaign {}: {} trials (seed {}): pass {}, fail {}, inapplicable {}, inconclusive {}, genuine {}, negative controls {}\n",
                report.name, report.trials, report.seed, s.pass, s.fail, s.inapplicable, s.inconclusive, s.genuine,
                s.negative_controls
            );
            for v in report.failures() {
                out.push_str(&format!("  fail at trial {}:\n", v.provenance.trial.unwrap_or(0)));
                for line in v.witness.replay.lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            }
            out
        }
        CommandResult::Error { message } => format!("error: {message}\n"),
    }
}
