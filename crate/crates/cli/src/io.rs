//! Input parsing and atomic output.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use monconv::seqspace::MagnitudeVector;

/// Magnitude-vector file: `{"entries": […], "ambient_dim": n?}` with the
/// ambient dimension defaulting to the entry count.
#[derive(Deserialize)]
struct VectorFile {
    entries: Vec<f64>,
    ambient_dim: Option<usize>,
}

pub fn read_vector(path: &Path) -> Result<MagnitudeVector> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading vector file {}", path.display()))?;
    let file: VectorFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if file.entries.iter().any(|v| !v.is_finite() || *v < 0.0) {
        bail!("{}: entries must be finite and nonnegative", path.display());
    }
    let dim = file.ambient_dim.unwrap_or(file.entries.len());
    if dim < file.entries.len() {
        bail!(
            "{}: ambient_dim {dim} is smaller than the {} stored entries",
            path.display(),
            file.entries.len()
        );
    }
    Ok(MagnitudeVector::new(file.entries, dim))
}

/// Writes output atomically (temp file in the same directory, then rename);
/// `None` prints to stdout.
pub fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, content).with_context(|| format!("writing {}", tmp.display()))?;
            std::fs::rename(&tmp, path)
                .with_context(|| format!("renaming into {}", path.display()))?;
            Ok(())
        }
    }
}

/// Parses `n,value` CSV lines (header optional) for the fit command.
pub fn read_points(path: &Path) -> Result<Vec<(usize, f64)>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading points file {}", path.display()))?;
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (idx == 0 && line.chars().next().is_some_and(|c| c.is_alphabetic())) {
            continue;
        }
        let mut parts = line.split(',');
        let n: usize = parts
            .next()
            .with_context(|| format!("line {}: missing n", idx + 1))?
            .trim()
            .parse()
            .with_context(|| format!("line {}: bad n", idx + 1))?;
        let value: f64 = parts
            .next()
            .with_context(|| format!("line {}: missing value", idx + 1))?
            .trim()
            .parse()
            .with_context(|| format!("line {}: bad value", idx + 1))?;
        points.push((n, value));
    }
    Ok(points)
}
