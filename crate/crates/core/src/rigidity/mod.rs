//! Executable rigidity and nonvanishing statements with machine-readable
//! verdicts, a seeded random module generator, and fuzz campaigns.

mod campaign;
mod checks;
mod random;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::module::PresentedModule;
use crate::ring::RingContext;
use crate::script::{render_module_decl, render_ring_decls};

pub use campaign::{run_campaign, CampaignConfig, CampaignKind, CampaignReport, CampaignSummary};
pub use checks::{
    check_by_name, check_chi_positivity, check_ext_rigidity, check_finite_length_vanishing, check_grade_drop,
    check_jothilingam, check_ext_tor_duality, check_self_ext_nonvanishing, check_tor_rigidity_theta,
    check_xi_chi_bridge, CheckOptions, CHECK_NAMES,
};
pub use random::{generate_module, RandomModuleSpec, RandomShape, RingFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inapplicable,
    Inconclusive,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Inapplicable => "inapplicable",
            CheckStatus::Inconclusive => "inconclusive",
        })
    }
}

/// A module as recorded in a witness: generator degrees and the rows of
/// its presentation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessModule {
    pub name: String,
    pub degrees: Vec<i32>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub ring: String,
    pub modules: Vec<WitnessModule>,
    pub data: BTreeMap<String, Value>,
    /// A script that reproduces the verdict through the command line tool.
    pub replay: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub trial: Option<u64>,
    pub ring: String,
    pub prime: u32,
    pub degree_cap: u32,
    pub length_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub check_name: String,
    pub status: CheckStatus,
    pub witness: Witness,
    pub provenance: Provenance,
}

impl CheckVerdict {
    /// Whether the witness records a non-vacuous pass (the checker sets
    /// `genuine` in its data when the hypothesis was actually exercised).
    pub fn is_genuine(&self) -> bool {
        self.status == CheckStatus::Pass && self.witness.data.get("genuine") == Some(&Value::Bool(true))
    }

    pub fn datum(&self, key: &str) -> Option<&Value> {
        self.witness.data.get(key)
    }
}

/// Accumulates witness data while a checker runs.
pub(crate) struct VerdictBuilder {
    name: &'static str,
    ring: Arc<RingContext>,
    modules: Vec<(String, PresentedModule)>,
    args: String,
    data: BTreeMap<String, Value>,
    length_cap: usize,
}

impl VerdictBuilder {
    pub(crate) fn new(name: &'static str, modules: &[(&str, &PresentedModule)], length_cap: usize) -> Self {
        VerdictBuilder {
            name,
            ring: modules[0].1.ring().clone(),
            modules: modules.iter().map(|(n, m)| (n.to_string(), (*m).clone())).collect(),
            args: String::new(),
            data: BTreeMap::new(),
            length_cap,
        }
    }

    /// A builder with no modules, used when generation itself failed.
    pub(crate) fn bare(name: &'static str, ring: Arc<RingContext>, length_cap: usize) -> Self {
        VerdictBuilder {
            name,
            ring,
            modules: Vec::new(),
            args: String::new(),
            data: BTreeMap::new(),
            length_cap,
        }
    }

    pub(crate) fn arg(&mut self, text: String) {
        self.args.push(' ');
        self.args.push_str(&text);
    }

    pub(crate) fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.to_string(), value.into());
    }

    pub(crate) fn finish(self, status: CheckStatus) -> CheckVerdict {
        let ring = self.ring;
        let mut replay = render_ring_decls(&ring, "Q", "R");
        let ring_name = if ring.is_hypersurface() { "R" } else { "Q" };
        let mut wm = Vec::new();
        for (name, m) in &self.modules {
            replay.push_str(&render_module_decl(m, name, ring_name));
            wm.push(WitnessModule {
                name: name.clone(),
                degrees: m.generator_degrees().to_vec(),
                rows: m.presentation().render_rows(),
            });
        }
        if !self.modules.is_empty() {
            let names: Vec<&str> = self.modules.iter().map(|(n, _)| n.as_str()).collect();
            replay.push_str(&format!("check {} {}{};\n", self.name, names.join(" "), self.args));
        }
        CheckVerdict {
            check_name: self.name.to_string(),
            status,
            witness: Witness {
                ring: ring.to_string(),
                modules: wm,
                data: self.data,
                replay,
            },
            provenance: Provenance {
                seed: None,
                trial: None,
                ring: ring.to_string(),
                prime: ring.characteristic(),
                degree_cap: ring.degree_cap(),
                length_cap: self.length_cap,
            },
        }
    }
}
