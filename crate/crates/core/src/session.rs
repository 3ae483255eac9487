//! Executes parsed scripts and assembles reports.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::invariants::{chi, e_module, ext, grade, pdim_of, theta, tor, xi_bar, ExtTorKind, ExtTorTable};
use crate::module::PresentedModule;
use crate::report::{BettiEntry, CommandRecord, CommandResult, Report, RingRecord, Settings, TableEntry};
use crate::resolution::{default_length_cap, minimal_resolution};
use crate::rigidity::{check_by_name, run_campaign, CampaignConfig, CampaignKind, CheckOptions};
use crate::script::{bindings, parse_script_with, Command, Diagnostic, SessionScript, StatementKind};

pub use crate::script::Binding;

/// Hilbert function values recorded per Ext/Tor module.
const HILBERT_WINDOW: i32 = 6;

pub type Environment = BTreeMap<String, Binding>;

fn module(env: &Environment, name: &str) -> Result<PresentedModule> {
    env.get(name)
        .map(Binding::as_module)
        .ok_or_else(|| Error::Usage(format!("undeclared name `{name}`")))
}

fn table_result(t: &ExtTorTable) -> Result<CommandResult> {
    let mut entries = Vec::new();
    for e in &t.entries {
        let from = e.module.min_generator_degree().filter(|_| !e.zero);
        let hilbert = match from {
            Some(lo) => e.module.hilbert_range(lo, lo + HILBERT_WINDOW)?,
            None => Vec::new(),
        };
        entries.push(TableEntry {
            index: e.index,
            length: e.length.finite(),
            zero: e.zero,
            from_degree: from,
            hilbert,
        });
    }
    Ok(CommandResult::Table {
        functor: match t.kind {
            ExtTorKind::Ext => "ext".into(),
            ExtTorKind::Tor => "tor".into(),
        },
        entries,
        partial: t.partial,
    })
}

fn value(invariant: &str, v: impl serde::Serialize) -> CommandResult {
    CommandResult::Value {
        invariant: invariant.to_string(),
        value: serde_json::to_value(v).expect("invariant serializes"),
    }
}

/// Runs one command against the declared names.
pub fn run_command(cmd: &Command, env: &Environment, settings: &Settings) -> Result<CommandResult> {
    match cmd {
        Command::Resolve { m, length } => {
            let m = module(env, m)?;
            let cap = length.or(settings.length_cap).unwrap_or_else(|| default_length_cap(m.ring()));
            let res = minimal_resolution(&m, cap)?;
            let betti = res.betti();
            Ok(CommandResult::Resolution {
                betti: betti
                    .entries
                    .iter()
                    .map(|(&(index, degree), &count)| BettiEntry { index, degree, count })
                    .collect(),
                totals: betti.totals(),
                grid: betti.render(),
                terminated: res.terminated(),
                periodic_from: res.periodic_from(),
                factorization_verified: res.factorization().map(|f| f.verify()),
            })
        }
        Command::Ext { m, n, max } => {
            let m = module(env, m)?;
            let max = max.unwrap_or(m.ring().nvars());
            table_result(&ext(&m, &module(env, n)?, max)?)
        }
        Command::Tor { m, n, max } => {
            let m = module(env, m)?;
            let max = max.unwrap_or(m.ring().nvars());
            table_result(&tor(&m, &module(env, n)?, max)?)
        }
        Command::Grade { m } => Ok(value("grade", grade(&module(env, m)?)?)),
        Command::Pdim { m } => {
            let m = module(env, m)?;
            let cap = settings.length_cap.unwrap_or_else(|| default_length_cap(m.ring()));
            let p = pdim_of(&minimal_resolution(&m, cap)?);
            Ok(value("pdim", p))
        }
        Command::Theta { m, n } => Ok(value("theta", theta(&module(env, m)?, &module(env, n)?)?)),
        Command::Chi { m, n, index } => {
            let j = index.unwrap_or(0);
            Ok(value(&format!("chi_{j}"), chi(&module(env, m)?, &module(env, n)?, j)?))
        }
        Command::XiBar { m, n, index } => {
            let j = index.unwrap_or(1);
            Ok(value(&format!("xi_bar_{j}"), xi_bar(&module(env, m)?, &module(env, n)?, j)?))
        }
        Command::EModule { m } => {
            let e = e_module(&module(env, m)?)?.prune()?;
            Ok(CommandResult::Module {
                degrees: e.generator_degrees().to_vec(),
                rows: e.presentation().render_rows(),
            })
        }
        Command::Check { name, m, n, index, max } => {
            let m = module(env, m)?;
            let n = n.as_ref().map(|n| module(env, n)).transpose()?;
            let opts = CheckOptions { index: *index, max: *max };
            let verdict = check_by_name(name, &m, n.as_ref(), opts)?;
            Ok(CommandResult::Verdict { verdict })
        }
        Command::Campaign { name, over, trials, seed } => {
            let kind = CampaignKind::from_name(name).ok_or_else(|| Error::Usage(format!("unknown campaign `{name}`")))?;
            let ring = match over {
                Some(r) => match env.get(r) {
                    Some(Binding::Ring(ring)) => Some(ring.clone()),
                    _ => return Err(Error::Usage(format!("`{r}` is not a ring"))),
                },
                None => None,
            };
            let config = CampaignConfig {
                trials: trials.unwrap_or(settings.trials),
                seed: seed.unwrap_or(settings.seed),
                prime: settings.prime,
                ring,
                degree_cap: Some(settings.degree_cap),
            };
            Ok(CommandResult::Campaign {
                report: run_campaign(kind, &config)?,
            })
        }
    }
}

/// Runs every command of `script` in order.
pub fn run_script(script: &SessionScript, settings: &Settings) -> Report {
    let mut report = Report::new(settings.clone());
    let env = bindings(script);
    for st in &script.statements {
        match &st.kind {
            StatementKind::Ring { name, ring } => report.rings.push(RingRecord {
                name: name.clone(),
                description: ring.to_string(),
                hypersurface: ring.is_hypersurface(),
                dim: ring.dim(),
            }),
            StatementKind::Module { .. } => {}
            StatementKind::Command(cmd) => {
                let start = Instant::now();
                let result = run_command(cmd, &env, settings).unwrap_or_else(|e| CommandResult::Error {
                    message: e.to_string(),
                });
                report.volatile.wall_micros.push(start.elapsed().as_micros() as u64);
                report.results.push(CommandRecord {
                    line: st.line,
                    command: st.text.clone(),
                    result,
                });
            }
        }
    }
    report
}

/// Parses `src` with the settings' degree cap and runs it.
pub fn run_source(src: &str, settings: &Settings) -> std::result::Result<Report, Diagnostic> {
    let script = parse_script_with(src, Some(settings.degree_cap))?;
    Ok(run_script(&script, settings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Format;
    use crate::rigidity::CheckStatus;
    use serde_json::json;

    const SCRIPT: &str = "
        ring Q = poly(p=101, vars=[x,y,z]);
        module M over Q = coker [[x^2, x*y, x*z]];
        resolve M;
        ext M Q max 3;
        grade M;
        pdim M;
        ring S = poly(p=101, vars=[x,y]);
        ring R = S / (x*y);
        module A over R = coker [[x]];
        module B over R = coker [[y]];
        theta A B;
        check tor_rigidity A B max 5;
        check ext_rigidity M Q;
    ";

    #[test]
    fn example_session() {
        let report = run_source(SCRIPT, &Settings::default()).unwrap();
        assert_eq!(report.results.len(), 7);
        let CommandResult::Resolution { totals, terminated, .. } = &report.results[0].result else { panic!() };
        assert_eq!(totals, &vec![1, 3, 3, 1]);
        assert!(terminated);
        let CommandResult::Table { entries, .. } = &report.results[1].result else { panic!() };
        let zero: Vec<bool> = entries.iter().map(|e| e.zero).collect();
        assert_eq!(zero, vec![true, false, true, false]);
        let CommandResult::Value { value, .. } = &report.results[2].result else { panic!() };
        assert_eq!(value, &json!(1));
        let CommandResult::Value { value, .. } = &report.results[3].result else { panic!() };
        assert_eq!(value, &json!({"Finite": 3}));
        let CommandResult::Value { value, .. } = &report.results[4].result else { panic!() };
        assert_eq!(value["value"], json!(1));
        let CommandResult::Verdict { verdict } = &report.results[5].result else { panic!() };
        assert_eq!(verdict.status, CheckStatus::Inapplicable);
        assert_eq!(verdict.datum("negative_control"), Some(&json!(true)));
        let CommandResult::Verdict { verdict } = &report.results[6].result else { panic!() };
        assert_eq!(verdict.status, CheckStatus::Inapplicable);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn report_round_trips_and_is_stable() {
        let a = run_source(SCRIPT, &Settings::default()).unwrap();
        let b = run_source(SCRIPT, &Settings::default()).unwrap();
        assert_eq!(a.stable_json(), b.stable_json());
        let back = Report::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json(), a.to_json());
        assert!(!a.emit(Format::Text).is_empty());
    }

    #[test]
    fn empty_session_is_header_only() {
        let r = run_source("", &Settings::default()).unwrap();
        assert!(r.results.is_empty() && r.rings.is_empty());
        assert_eq!(r.to_text().lines().count(), 2);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn command_errors_are_reported() {
        let r = run_source(
            "ring Q = poly(p=101, vars=[x]); ring P = poly(p=101, vars=[y]); ext Q P; theta Q Q;",
            &Settings::default(),
        )
        .unwrap();
        assert!(matches!(r.results[0].result, CommandResult::Error { .. }));
        assert!(matches!(r.results[1].result, CommandResult::Error { .. }));
        assert_eq!(r.exit_code(), 2);
    }
}
