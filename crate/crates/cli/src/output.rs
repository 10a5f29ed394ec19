//! Run manifests, output sinks and number formatting.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use modi_lfr::rng::RNG_ALGORITHM;
use modi_lfr::study::descriptive::{KURTOSIS_CONVENTION, QUARTILE_RULE};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "modi-lfr/1";

/// Everything needed to re-run a command and reproduce its numbers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Full argument vector, program name excluded.
    pub args: Vec<String>,
    pub seeds: Vec<u64>,
    pub version: String,
    pub rng_algorithm: String,
    pub quartile_rule: String,
    pub kurtosis_convention: String,
    #[serde(default)]
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, args: &[String], seeds: Vec<u64>) -> Self {
        Self {
            command: command.to_string(),
            args: args.to_vec(),
            seeds,
            version: env!("CARGO_PKG_VERSION").to_string(),
            rng_algorithm: RNG_ALGORITHM.to_string(),
            quartile_rule: QUARTILE_RULE.id().to_string(),
            kurtosis_convention: KURTOSIS_CONVENTION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read manifest {}: {e}", path.display()))?;
        // Accept a bare manifest or any JSON output that embeds one.
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| format!("invalid manifest {}: {e}", path.display()))?;
        let inner = value.get("manifest").cloned().unwrap_or(value);
        serde_json::from_value(inner).map_err(|e| format!("invalid manifest {}: {e}", path.display()))
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    manifest: &'a RunManifest,
    result: &'a T,
}

/// Destination of a command's primary output: a file or standard output.
pub struct Sink {
    path: Option<PathBuf>,
    inner: Box<dyn Write>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self, String> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| format!("cannot create {}: {e}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Self { path: path.map(Path::to_path_buf), inner })
    }

    pub fn write_json<T: Serialize>(mut self, manifest: &RunManifest, result: &T) -> Result<(), String> {
        let env = Envelope { schema: SCHEMA, manifest, result };
        let text = serde_json::to_string_pretty(&env).map_err(|e| e.to_string())?;
        writeln!(self.inner, "{text}").map_err(|e| self.io_error(e))?;
        self.inner.flush().map_err(|e| self.io_error(e))
    }

    pub fn write_text(mut self, text: &str) -> Result<(), String> {
        self.inner.write_all(text.as_bytes()).map_err(|e| self.io_error(e))?;
        self.inner.flush().map_err(|e| self.io_error(e))
    }

    /// Writes CSV rows. A file output gets its manifest alongside as `<path>.manifest.json`.
    pub fn write_csv<R: Serialize>(self, manifest: &RunManifest, rows: &[R]) -> Result<(), String> {
        if let Some(p) = &self.path {
            let side = sidecar_path(p);
            let text = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, manifest, result: &() })
                .map_err(|e| e.to_string())?;
            std::fs::write(&side, text + "\n").map_err(|e| format!("cannot write {}: {e}", side.display()))?;
        }
        let label = self.label();
        let mut w = csv::Writer::from_writer(self.inner);
        for row in rows {
            w.serialize(row).map_err(|e| format!("cannot write {label}: {e}"))?;
        }
        w.flush().map_err(|e| format!("cannot write {label}: {e}"))
    }

    fn label(&self) -> String {
        self.path.as_ref().map_or("standard output".to_string(), |p| p.display().to_string())
    }

    fn io_error(&self, e: io::Error) -> String {
        format!("cannot write {}: {e}", self.label())
    }
}

pub fn sidecar_path(p: &Path) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Six significant digits for human tables.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

/// Left-aligned first column, right-aligned rest.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i == 0 {
                s.push_str(&format!("{c:<w$}", w = width[0]));
            } else {
                s.push_str(&format!("  {c:>w$}", w = width[i]));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&line(r.iter().take(cols).map(String::as_str).collect()));
    }
    out
}
