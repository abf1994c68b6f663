use serde::Serialize;
use sha2::{Digest, Sha256};

use bilat_core::report::SCHEMA;

/// Wrapper around every JSON payload. Deterministic for a fixed command
/// line and input; timing is reported on stderr only.
#[derive(Debug, Serialize)]
pub struct ReportEnvelope<T: Serialize> {
    pub schema: u32,
    pub command: Vec<String>,
    /// `sha256:` of the input bytes (file contents or the argument list).
    pub input_digest: String,
    pub result: T,
}

impl<T: Serialize> ReportEnvelope<T> {
    pub fn new(command: Vec<String>, input: &[u8], result: T) -> Self {
        ReportEnvelope { schema: SCHEMA, command, input_digest: digest(input), result }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_digest() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
