use serde::Serialize;
use serde_json::Value;

/// Result of one command. Serialized with sorted keys, so equal inputs give
/// byte-identical text; wall time is printed separately on stderr.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub seed: Option<u64>,
    pub outputs: Value,
    /// `false` when a reproduction disagrees with its expected values.
    pub pass: bool,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, seed: Option<u64>, outputs: Value) -> Self {
        RunReport {
            command: command.into(),
            inputs,
            seed,
            outputs,
            pass: true,
        }
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}
