use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

/// Bumped whenever the report layout changes; see schema/report.schema.json.
pub const REPORT_VERSION: u32 = 1;

pub struct Envelope<'a> {
    pub command: &'a str,
    pub n: usize,
    pub q: String,
    pub seed: u64,
    pub passed: bool,
    pub result: Value,
}

impl Envelope<'_> {
    pub fn to_json(&self) -> Value {
        json!({
            "version": REPORT_VERSION,
            "command": self.command,
            "n": self.n,
            "q": self.q,
            "seed": self.seed,
            "status": if self.passed { "pass" } else { "fail" },
            "result": self.result,
        })
    }
}

/// Write `contents` to `path` via a temporary file in the same directory and
/// a rename, so readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
