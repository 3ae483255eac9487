//! Process-wide hook that observes every Ext and Tor module as it is
//! produced, together with the two maps it is the homology of. Used to
//! cross-check the engine against independent computations.

use std::sync::{Arc, RwLock};

use crate::invariants::ExtTorKind;
use crate::module::{ModuleMap, PresentedModule};

pub struct AuditRecord<'a> {
    pub kind: ExtTorKind,
    pub index: usize,
    pub incoming: &'a ModuleMap,
    pub outgoing: &'a ModuleMap,
    pub result: &'a PresentedModule,
}

pub type AuditSink = Arc<dyn Fn(&AuditRecord<'_>) + Send + Sync>;

static SINK: RwLock<Option<AuditSink>> = RwLock::new(None);

/// Installs (or with `None`, removes) the sink.
pub fn set_audit_sink(sink: Option<AuditSink>) {
    *SINK.write().unwrap_or_else(|e| e.into_inner()) = sink;
}

pub(crate) fn emit(record: &AuditRecord<'_>) {
    let sink = SINK.read().unwrap_or_else(|e| e.into_inner()).clone();
    if let Some(f) = sink {
        f(record);
    }
}
