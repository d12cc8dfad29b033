use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output encodings understood by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Dot,
    TextGrid,
    /// Plain summary lines.
    Text,
}

/// Everything that determines a run's output. Echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub n: Option<usize>,
    pub max_dim: usize,
    /// Most faces a scan may visit.
    pub budget: usize,
    pub format: Format,
    pub input: Option<String>,
    pub out: Option<String>,
    /// Enumeration guard after the environment override.
    pub max_n: usize,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.budget == 0 {
            return Err("--budget must be positive".into());
        }
        let cap = match self.command.as_str() {
            "classify" | "audit" => 4,
            "lattice" => 5,
            _ => usize::MAX,
        };
        if self.max_dim > cap {
            return Err(format!("--max-dim {} exceeds {cap} for {}", self.max_dim, self.command));
        }
        if let Some(n) = self.n {
            if n == 0 {
                return Err("n must be at least 1".into());
            }
        }
        Ok(())
    }
}

/// Header lines identifying the tool and configuration.
pub fn provenance(cfg: &RunConfig) -> serde_json::Value {
    serde_json::json!({ "tool": "asmgrid", "version": VERSION, "config": cfg })
}
