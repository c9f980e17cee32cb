use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use crate::cli::{Format, OutputArgs};

pub const OUT_DIR_VAR: &str = "GSCNN_OUT_DIR";

/// Explicit path, else `$GSCNN_OUT_DIR/<file_name>`, else `None` (stdout).
pub fn resolve(out: Option<&Path>, file_name: &str) -> Option<PathBuf> {
    out.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(OUT_DIR_VAR)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(file_name))
    })
}

/// Opens the destination, creating parent directories as needed.
pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            let file = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Writes rows as CSV (header from field names) or as a JSON array of the
/// same records.
pub fn write_rows<R: Serialize>(rows: &[R], output: &OutputArgs, stem: &str) -> Result<()> {
    let ext = match output.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let path = resolve(output.out.as_deref(), &format!("{stem}.{ext}"));
    let mut dst = open(path.as_deref())?;
    match output.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut dst);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut dst, rows)?;
            writeln!(dst)?;
        }
    }
    dst.flush().context("writing report")?;
    if let Some(p) = path {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}
