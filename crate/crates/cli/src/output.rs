use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Shortest round-trip decimal, switching to exponent form outside `[1e-5, 1e16)`.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// A CSV table assembled in memory and written once.
pub struct Csv {
    buf: String,
    width: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { buf: format!("{}\n", header.join(",")), width: header.len() }
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        let cells: Vec<String> = cells.into_iter().collect();
        debug_assert_eq!(cells.len(), self.width);
        let _ = writeln!(self.buf, "{}", cells.join(","));
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

#[derive(Serialize)]
struct ConfigRecord {
    role: String,
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct OutputRecord {
    path: String,
    sha256: String,
    bytes: usize,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command_line: &'a [String],
    tool: &'static str,
    version: &'static str,
    configs: &'a [ConfigRecord],
    wall_time_seconds: f64,
    outputs: Vec<OutputRecord>,
    notes: &'a [String],
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Records inputs of one invocation and writes its output plus a manifest.
pub struct Run {
    argv: Vec<String>,
    started: Instant,
    configs: Vec<ConfigRecord>,
    notes: Vec<String>,
    out: Option<PathBuf>,
}

impl Run {
    pub fn new(argv: Vec<String>, out: Option<PathBuf>) -> Self {
        Run { argv, started: Instant::now(), configs: Vec::new(), notes: Vec::new(), out }
    }

    /// Reads a config file and records its checksum.
    pub fn read_config(&mut self, role: &str, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {role} file {}", path.display()))?;
        self.configs.push(ConfigRecord { role: role.into(), path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    /// Records a binary input that is read elsewhere.
    pub fn record_file(&mut self, role: &str, path: &Path) {
        let sha256 = fs::read(path).map(|b| sha256_hex(&b)).unwrap_or_else(|_| "missing".into());
        self.configs.push(ConfigRecord { role: role.into(), path: path.display().to_string(), sha256 });
    }

    pub fn record_builtin(&mut self, role: &str) {
        self.configs.push(ConfigRecord { role: role.into(), path: "<builtin>".into(), sha256: String::new() });
    }

    /// A line reported on stderr and kept in the manifest.
    pub fn note(&mut self, s: impl Into<String>) {
        let s = s.into();
        eprintln!("{s}");
        self.notes.push(s);
    }

    pub fn finish(self, csv: Csv) -> Result<()> {
        let text = csv.into_string();
        let Some(path) = &self.out else {
            io::stdout().lock().write_all(text.as_bytes())?;
            return Ok(());
        };
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
        let manifest = Manifest {
            command_line: &self.argv,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            configs: &self.configs,
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
            outputs: vec![OutputRecord { path: path.display().to_string(), sha256: sha256_hex(text.as_bytes()), bytes: text.len() }],
            notes: &self.notes,
        };
        let mpath = manifest_path(path);
        fs::write(&mpath, serde_json::to_string_pretty(&manifest)? + "\n")
            .with_context(|| format!("writing {}", mpath.display()))?;
        Ok(())
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(0.1), "0.1");
        assert_eq!(num(482035.9509), "482035.9509");
        assert_eq!(num(1e300), "1e300");
        assert_eq!(num(-2.5e-9), "-2.5e-9");
        assert_eq!(num(0.0), "0");
    }
}
