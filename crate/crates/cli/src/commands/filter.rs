use std::io::Write;

use anyhow::{anyhow, Context, Result};
use gscnn_core::filters::{s2_dirac_to_harmonic, so3_dirac_to_harmonic, FilterConfig, FilterGeometry};
use gscnn_core::signals::{write_binary, write_csv, CoefficientFile};

use super::Outcome;
use crate::cli::FilterArgs;
use crate::report;

pub fn run(args: &FilterArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&args.config).with_context(|| format!("reading {}", args.config.display()))?;
    let config: FilterConfig = text
        .parse()
        .with_context(|| format!("parsing {}", args.config.display()))?;
    let bandlimit = args
        .bandlimit
        .or(config.bandlimit)
        .ok_or_else(|| anyhow!("no bandlimit: pass --L or add a `bandlimit` line"))?;

    let file = match &config.geometry {
        FilterGeometry::S2(d) => CoefficientFile::Sphere(s2_dirac_to_harmonic(d, bandlimit)),
        FilterGeometry::SO3(d) => {
            let n = args.azimuthal.unwrap_or(bandlimit);
            CoefficientFile::Rotation(so3_dirac_to_harmonic(d, bandlimit, n)?)
        }
    };
    let name = if args.binary { "filter.bin" } else { "filter.csv" };
    let path = report::resolve(args.out.as_deref(), name);
    let mut dst = report::open(path.as_deref())?;
    if args.binary {
        write_binary(&file, &mut dst)?;
    } else {
        write_csv(&file, &mut dst)?;
    }
    dst.flush()?;
    if let Some(p) = path {
        eprintln!("wrote {}", p.display());
    }
    Ok(Outcome::Pass)
}
