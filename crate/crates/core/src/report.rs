//! Machine-readable run reports.
//!
//! Every CLI command emits a `RunReport`: the command name, a list of named
//! checks with pass/fail status (and a witness string on failure), and an
//! optional free-form `tables` payload with computed dimension tables or
//! matrices. Check order is deterministic.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: String) -> Check {
        Check { name, status: true, witness: None }
    }

    pub fn fail(name: String, witness: String) -> Check {
        Check { name, status: false, witness: Some(witness) }
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let fields = if self.witness.is_some() { 3 } else { 2 };
        let mut st = s.serialize_struct("Check", fields)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("status", if self.status { "pass" } else { "fail" })?;
        if let Some(w) = &self.witness {
            st.serialize_field("witness", w)?;
        }
        st.end()
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<serde_json::Value>,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport { command: command.to_string(), checks: Vec::new(), tables: None }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status)
    }
}
