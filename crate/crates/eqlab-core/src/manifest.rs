//! Reproducibility manifests for CLI runs: the command, its parameters, the
//! tool version, a timestamp, and a SHA-256 content hash for every output
//! file, so that reruns can be compared byte-for-byte.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OutputRecord {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub version: String,
    pub timestamp_unix: u64,
    pub timestamp_utc: String,
    pub outputs: Vec<OutputRecord>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Renders seconds since the Unix epoch as an ISO-8601 UTC timestamp
/// (proleptic Gregorian; no leap seconds).
pub fn utc_string(secs: u64) -> String {
    let days = (secs / 86_400) as i64;
    let rem = secs % 86_400;
    let (h, m, s) = (rem / 3600, (rem % 3600) / 60, rem % 60);
    let z = days + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let day = doy - (153 * mp + 2) / 5 + 1;
    let month = if mp < 10 { mp + 3 } else { mp - 9 };
    let year = yoe + era * 400 + i64::from(month <= 2);
    format!("{year:04}-{month:02}-{day:02}T{h:02}:{m:02}:{s:02}Z")
}

impl RunManifest {
    pub fn new<I, K, V>(command: &str, parameters: I) -> Self
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunManifest {
            command: command.to_string(),
            parameters: parameters
                .into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: now,
            timestamp_utc: utc_string(now),
            outputs: Vec::new(),
        }
    }

    /// Hashes an existing output file and appends it to the record.
    pub fn record_output(&mut self, path: &Path) -> io::Result<()> {
        let bytes = std::fs::read(path)?;
        self.outputs.push(OutputRecord {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
            bytes: bytes.len() as u64,
        });
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    /// Writes the manifest itself (not included in its own output list).
    pub fn write(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn utc_rendering() {
        assert_eq!(utc_string(0), "1970-01-01T00:00:00Z");
        assert_eq!(utc_string(86_400), "1970-01-02T00:00:00Z");
        // 2000-03-01 is day 11017 of the epoch (leap year 2000).
        assert_eq!(utc_string(11_017 * 86_400), "2000-03-01T00:00:00Z");
        assert_eq!(utc_string(951_867_722), "2000-02-29T23:42:02Z");
    }

    #[test]
    fn manifest_records_and_serializes() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("data.csv");
        std::fs::write(&out, "a,b\n1,2\n").unwrap();

        let mut m = RunManifest::new("bound-sweep", [("n", "5"), ("steps", "10")]);
        m.record_output(&out).unwrap();
        assert_eq!(m.outputs.len(), 1);
        assert_eq!(m.outputs[0].bytes, 8);
        assert_eq!(m.outputs[0].sha256, sha256_hex(b"a,b\n1,2\n"));

        let js = m.to_json();
        let back: RunManifest = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);

        let mpath = dir.path().join("run.manifest.json");
        m.write(&mpath).unwrap();
        let reread: RunManifest =
            serde_json::from_str(&std::fs::read_to_string(&mpath).unwrap()).unwrap();
        assert_eq!(reread.command, "bound-sweep");
        assert_eq!(reread.parameters["n"], "5");
    }
}
