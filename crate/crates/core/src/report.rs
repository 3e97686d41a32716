//! Machine-readable run reports.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the inputs, hex encoded.
    pub inputs: String,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub output: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
}

pub fn digest(inputs: &[u8]) -> String {
    Sha256::digest(inputs).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs: &[u8], seed: u64) -> Self {
        RunReport {
            command: command.into(),
            inputs: digest(inputs),
            seed,
            verdicts: Vec::new(),
            output: Value::Null,
            error: None,
            exit_code: EXIT_PASS,
        }
    }

    pub fn verdict(&mut self, check: impl Into<String>, pass: bool, witness: Option<Value>) -> &mut Self {
        self.verdicts.push(Verdict {
            check: check.into(),
            pass,
            witness,
        });
        self.exit_code = if self.verdicts.iter().all(|v| v.pass) {
            EXIT_PASS
        } else {
            EXIT_VIOLATION
        };
        self
    }

    pub fn output(&mut self, value: Value) -> &mut Self {
        self.output = value;
        self
    }

    /// Input or parse failure; no verdicts are kept.
    pub fn input_error(command: impl Into<String>, inputs: &[u8], seed: u64, message: impl Into<String>) -> Self {
        let mut r = RunReport::new(command, inputs, seed);
        r.error = Some(message.into());
        r.exit_code = EXIT_INPUT_ERROR;
        r
    }

    pub fn passed(&self) -> bool {
        self.exit_code == EXIT_PASS
    }

    /// One line per verdict, then the error if any.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.output.is_null() {
            out.push_str(&serde_json::to_string_pretty(&self.output).expect("serializable"));
            out.push('\n');
        }
        for v in &self.verdicts {
            out.push_str(&format!("{} {}", if v.pass { "PASS" } else { "FAIL" }, v.check));
            if let Some(w) = &v.witness {
                out.push_str(&format!("  {w}"));
            }
            out.push('\n');
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_verdicts() {
        let mut r = RunReport::new("x", b"", 1);
        assert_eq!(r.exit_code, EXIT_PASS);
        r.verdict("a", true, None);
        assert!(r.passed());
        r.verdict("b", false, Some(Value::from(3)));
        assert_eq!(r.exit_code, EXIT_VIOLATION);
        r.verdict("c", true, None);
        assert_eq!(r.exit_code, EXIT_VIOLATION);
        assert_eq!(RunReport::input_error("x", b"", 1, "bad").exit_code, EXIT_INPUT_ERROR);
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
