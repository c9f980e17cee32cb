//! Coefficient files.
//!
//! Text form is CSV with a header row naming the index columns:
//!
//! * sphere signals: `l,m,re,im`
//! * rotation-group signals: `l,m,n,re,im`
//! * generalized signals: a `tau: t0,t1,...` line, then `l,t,m,re,im`
//!
//! Lines starting with `#` are comments. Missing rows read as zero. Values are
//! written with the shortest representation that round-trips exactly.
//!
//! Binary form is little-endian throughout: the 8-byte magic `GSCNNSIG`, a
//! `u32` kind tag (0 sphere, 1 rotation, 2 generalized), `u64` bandlimit,
//! `u64` azimuthal bandlimit (0 unless rotation), then for generalized signals
//! one `u64` per degree with the fragment counts, then every coefficient as
//! an `f64` real/imaginary pair in `(l, t, m)` order.

use std::io::{BufRead, Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{GeneralizedSignal, RotationHarmonic, SignalType, SphereHarmonic};

const MAGIC: &[u8; 8] = b"GSCNNSIG";

/// A coefficient set as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientFile {
    Sphere(SphereHarmonic<f64>),
    Rotation(RotationHarmonic<f64>),
    Generalized(GeneralizedSignal<f64>),
}

impl CoefficientFile {
    pub fn as_signal(&self) -> &GeneralizedSignal<f64> {
        match self {
            Self::Sphere(f) => f.as_signal(),
            Self::Rotation(f) => f.as_signal(),
            Self::Generalized(f) => f,
        }
    }

    fn kind_tag(&self) -> u32 {
        match self {
            Self::Sphere(_) => 0,
            Self::Rotation(_) => 1,
            Self::Generalized(_) => 2,
        }
    }
}

pub fn write_csv<W: Write>(file: &CoefficientFile, mut out: W) -> Result<()> {
    match file {
        CoefficientFile::Sphere(f) => {
            writeln!(out, "l,m,re,im")?;
            for l in 0..f.bandlimit() {
                let li = l as i64;
                for m in -li..=li {
                    let z = f.coeff(l, m);
                    writeln!(out, "{l},{m},{},{}", z.re, z.im)?;
                }
            }
        }
        CoefficientFile::Rotation(f) => {
            writeln!(out, "l,m,n,re,im")?;
            for l in 0..f.bandlimit() {
                let li = l as i64;
                let nl = f.n_limit(l) as i64;
                for m in -li..=li {
                    for n in -nl..=nl {
                        let z = f.coeff(l, m, n);
                        writeln!(out, "{l},{m},{n},{},{}", z.re, z.im)?;
                    }
                }
            }
        }
        CoefficientFile::Generalized(f) => {
            writeln!(out, "tau: {}", f.signal_type())?;
            writeln!(out, "l,t,m,re,im")?;
            for l in 0..f.bandlimit() {
                let li = l as i64;
                for t in 0..f.fragment_count(l) {
                    for m in -li..=li {
                        let z = f.get(l, t, m);
                        writeln!(out, "{l},{t},{m},{},{}", z.re, z.im)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Parses a comma-separated list of non-negative integers.
pub(crate) fn parse_counts(text: &str, line: usize) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim().parse::<usize>().map_err(|e| Error::Parse {
                line,
                message: format!("bad count {s:?}: {e}"),
            })
        })
        .collect()
}

fn parse_field<F: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<F>
where
    F::Err: std::fmt::Display,
{
    s.trim().parse::<F>().map_err(|e| Error::Parse {
        line,
        message: format!("bad {what} {s:?}: {e}"),
    })
}

enum Layout {
    Sphere,
    Rotation,
    Generalized(SignalType),
}

pub fn read_csv<R: BufRead>(input: R) -> Result<CoefficientFile> {
    let mut tau: Option<SignalType> = None;
    let mut layout: Option<Layout> = None;
    let mut rows: Vec<([i64; 3], Complex64)> = Vec::new();

    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if let Some(rest) = text.strip_prefix("tau:") {
            tau = Some(SignalType::new(parse_counts(rest, lineno)?));
            continue;
        }
        if layout.is_none() {
            let cols: Vec<&str> = text.split(',').map(str::trim).collect();
            layout = Some(match cols.as_slice() {
                ["l", "m", "re", "im"] => Layout::Sphere,
                ["l", "m", "n", "re", "im"] => Layout::Rotation,
                ["l", "t", "m", "re", "im"] => Layout::Generalized(tau.clone().ok_or(Error::Parse {
                    line: lineno,
                    message: "generalized signal needs a `tau:` line before the header".into(),
                })?),
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("unrecognised header {text:?}"),
                    })
                }
            });
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        let idx_count = match layout {
            Some(Layout::Sphere) => 2,
            _ => 3,
        };
        if fields.len() != idx_count + 2 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {} fields, found {}", idx_count + 2, fields.len()),
            });
        }
        let mut idx = [0i64; 3];
        for k in 0..idx_count {
            idx[k] = parse_field(fields[k], lineno, "index")?;
        }
        let re: f64 = parse_field(fields[idx_count], lineno, "real part")?;
        let im: f64 = parse_field(fields[idx_count + 1], lineno, "imaginary part")?;
        if idx[0] < 0 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("negative degree {}", idx[0]),
            });
        }
        rows.push((idx, Complex64::new(re, im)));
    }

    let layout = layout.ok_or(Error::Parse {
        line: 0,
        message: "missing header row".into(),
    })?;
    let check_m = |l: i64, m: i64| -> Result<()> {
        if m.abs() > l {
            return Err(Error::Parse {
                line: 0,
                message: format!("order {m} out of range at degree {l}"),
            });
        }
        Ok(())
    };
    match layout {
        Layout::Sphere => {
            let bandlimit = rows.iter().map(|r| r.0[0] + 1).max().unwrap_or(0) as usize;
            let mut f = SphereHarmonic::zeros(bandlimit);
            for ([l, m, _], z) in rows {
                check_m(l, m)?;
                f.set_coeff(l as usize, m, z);
            }
            Ok(CoefficientFile::Sphere(f))
        }
        Layout::Rotation => {
            let bandlimit = rows.iter().map(|r| r.0[0] + 1).max().unwrap_or(0) as usize;
            let azimuthal = rows.iter().map(|r| r.0[2].abs() + 1).max().unwrap_or(1) as usize;
            let mut f = RotationHarmonic::zeros(bandlimit, azimuthal);
            for ([l, m, n], z) in rows {
                check_m(l, m)?;
                check_m(l, n)?;
                f.set_coeff(l as usize, m, n, z);
            }
            Ok(CoefficientFile::Rotation(f))
        }
        Layout::Generalized(tau) => {
            let mut f = GeneralizedSignal::zeros(tau);
            for ([l, t, m], z) in rows {
                check_m(l, m)?;
                let (lu, tu) = (l as usize, t as usize);
                if lu >= f.bandlimit() || t < 0 || tu >= f.fragment_count(lu) {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("fragment ({l}, {t}) outside the declared type"),
                    });
                }
                f.set(lu, tu, m, z);
            }
            Ok(CoefficientFile::Generalized(f))
        }
    }
}

pub fn write_binary<W: Write>(file: &CoefficientFile, mut out: W) -> Result<()> {
    let f = file.as_signal();
    let azimuthal = match file {
        CoefficientFile::Rotation(r) => r.azimuthal() as u64,
        _ => 0,
    };
    out.write_all(MAGIC)?;
    out.write_all(&file.kind_tag().to_le_bytes())?;
    out.write_all(&(f.bandlimit() as u64).to_le_bytes())?;
    out.write_all(&azimuthal.to_le_bytes())?;
    if let CoefficientFile::Generalized(g) = file {
        for &t in g.signal_type().as_slice() {
            out.write_all(&(t as u64).to_le_bytes())?;
        }
    }
    for z in f.iter() {
        out.write_all(&z.re.to_le_bytes())?;
        out.write_all(&z.im.to_le_bytes())?;
    }
    Ok(())
}

fn read_u64<R: Read>(input: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    input.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

pub fn read_binary<R: Read>(mut input: R) -> Result<CoefficientFile> {
    let mut magic = [0u8; 8];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Parse {
            line: 0,
            message: "not a binary coefficient file".into(),
        });
    }
    let mut tag = [0u8; 4];
    input.read_exact(&mut tag)?;
    let tag = u32::from_le_bytes(tag);
    let bandlimit = read_u64(&mut input)? as usize;
    let azimuthal = read_u64(&mut input)? as usize;
    let tau = match tag {
        0 => SignalType::sphere(bandlimit),
        1 => SignalType::rotation(bandlimit, azimuthal),
        2 => SignalType::new(
            (0..bandlimit)
                .map(|_| read_u64(&mut input).map(|t| t as usize))
                .collect::<Result<_>>()?,
        ),
        other => {
            return Err(Error::Parse {
                line: 0,
                message: format!("unknown kind tag {other}"),
            })
        }
    };
    let mut f = GeneralizedSignal::zeros(tau);
    for z in f.iter_mut() {
        let re = f64::from_bits(read_u64(&mut input)?);
        let im = f64::from_bits(read_u64(&mut input)?);
        *z = Complex64::new(re, im);
    }
    Ok(match tag {
        0 => CoefficientFile::Sphere(SphereHarmonic::try_from(f)?),
        1 => CoefficientFile::Rotation(RotationHarmonic::from_signal(f, azimuthal)?),
        _ => CoefficientFile::Generalized(f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::random_signal;

    fn roundtrip(file: CoefficientFile) {
        let mut text = Vec::new();
        write_csv(&file, &mut text).unwrap();
        assert_eq!(read_csv(text.as_slice()).unwrap(), file);
        let mut bin = Vec::new();
        write_binary(&file, &mut bin).unwrap();
        assert_eq!(read_binary(bin.as_slice()).unwrap(), file);
    }

    #[test]
    fn all_kinds_roundtrip_exactly() {
        let s = random_signal::<f64>(&SignalType::sphere(4), 1);
        roundtrip(CoefficientFile::Sphere(SphereHarmonic::try_from(s).unwrap()));
        let r = random_signal::<f64>(&SignalType::rotation(5, 3), 2);
        roundtrip(CoefficientFile::Rotation(RotationHarmonic::from_signal(r, 3).unwrap()));
        let g = random_signal::<f64>(&SignalType::new(vec![2, 0, 3]), 3);
        roundtrip(CoefficientFile::Generalized(g));
    }

    #[test]
    fn sparse_rows_and_comments() {
        let text = "# a comment\nl,m,re,im\n2,-1,0.5,-0.25\n";
        let CoefficientFile::Sphere(f) = read_csv(text.as_bytes()).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(f.bandlimit(), 3);
        assert_eq!(f.coeff(2, -1), Complex64::new(0.5, -0.25));
        assert_eq!(f.coeff(1, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_csv("l,m,re,im\n1,2,0,0\n".as_bytes()).is_err());
        assert!(read_csv("l,t,m,re,im\n0,0,0,1,0\n".as_bytes()).is_err());
        assert!(read_csv("x,y\n".as_bytes()).is_err());
        assert!(read_csv("l,m,re,im\n-1,0,1,0\n".as_bytes()).is_err());
        assert!(read_binary(&b"NOTMAGIC"[..]).is_err());
    }
}
