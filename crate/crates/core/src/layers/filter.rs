//! Per-degree fragment-mixing filters and the generalized convolution.

use std::io::{BufRead, Write};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::signals::{parse_counts, GeneralizedSignal, Generator, SignalType};

/// `psi^l` of shape `tau_in^l x tau_out^l` for every degree, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicFilter<T> {
    tau_in: SignalType,
    tau_out: SignalType,
    blocks: Vec<Vec<Complex<T>>>,
}

impl<T: Real> HarmonicFilter<T> {
    pub fn zeros(tau_in: SignalType, tau_out: SignalType) -> Result<Self> {
        if tau_in.bandlimit() != tau_out.bandlimit() {
            return Err(Error::BandlimitMismatch {
                expected: tau_in.bandlimit(),
                found: tau_out.bandlimit(),
            });
        }
        let blocks = tau_in
            .as_slice()
            .iter()
            .zip(tau_out.as_slice())
            .map(|(a, b)| vec![Complex::new(T::zero(), T::zero()); a * b])
            .collect();
        Ok(Self {
            tau_in,
            tau_out,
            blocks,
        })
    }

    pub fn identity(tau: SignalType) -> Self {
        let mut out = Self::zeros(tau.clone(), tau).expect("same bandlimit");
        for l in 0..out.bandlimit() {
            for t in 0..out.tau_in.get(l) {
                out.set(l, t, t, Complex::new(T::one(), T::zero()));
            }
        }
        out
    }

    /// I.i.d. complex standard normal entries, drawn degree by degree in
    /// row-major order.
    pub fn random(tau_in: SignalType, tau_out: SignalType, seed: u64) -> Result<Self> {
        Self::random_from(tau_in, tau_out, &mut Generator::new(seed))
    }

    pub fn random_from(tau_in: SignalType, tau_out: SignalType, rng: &mut Generator) -> Result<Self> {
        let mut out = Self::zeros(tau_in, tau_out)?;
        for block in &mut out.blocks {
            *block = rng.complex_normals(block.len());
        }
        Ok(out)
    }

    pub fn from_blocks(tau_in: SignalType, tau_out: SignalType, blocks: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let shape = Self::zeros(tau_in, tau_out)?;
        if blocks.len() != shape.blocks.len() || blocks.iter().zip(&shape.blocks).any(|(a, b)| a.len() != b.len()) {
            return Err(Error::Shape("filter blocks do not match the declared types".into()));
        }
        Ok(Self { blocks, ..shape })
    }

    pub fn bandlimit(&self) -> usize {
        self.tau_in.bandlimit()
    }

    pub fn input_type(&self) -> &SignalType {
        &self.tau_in
    }

    pub fn output_type(&self) -> &SignalType {
        &self.tau_out
    }

    /// Row-major `tau_in^l x tau_out^l` block.
    pub fn block(&self, l: usize) -> &[Complex<T>] {
        &self.blocks[l]
    }

    pub fn block_mut(&mut self, l: usize) -> &mut [Complex<T>] {
        &mut self.blocks[l]
    }

    #[inline]
    pub fn get(&self, l: usize, i: usize, j: usize) -> Complex<T> {
        self.blocks[l][i * self.tau_out.get(l) + j]
    }

    #[inline]
    pub fn set(&mut self, l: usize, i: usize, j: usize, v: Complex<T>) {
        let w = self.tau_out.get(l);
        self.blocks[l][i * w + j] = v;
    }

    /// Number of complex parameters.
    pub fn parameter_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn cast<U: Real>(&self) -> HarmonicFilter<U> {
        HarmonicFilter {
            tau_in: self.tau_in.clone(),
            tau_out: self.tau_out.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|z| Complex::new(U::of(z.re.to_f64_lossy()), U::of(z.im.to_f64_lossy())))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Generalized convolution: output fragment `j` of degree `l` is
/// `sum_i f^l_i psi^l[i, j]`.
pub fn generalized_conv<T: Real>(f: &GeneralizedSignal<T>, psi: &HarmonicFilter<T>) -> Result<GeneralizedSignal<T>> {
    generalized_conv_counted(f, psi).map(|(g, _)| g)
}

/// As [`generalized_conv`], also returning the number of complex
/// multiply-accumulates.
pub fn generalized_conv_counted<T: Real>(
    f: &GeneralizedSignal<T>,
    psi: &HarmonicFilter<T>,
) -> Result<(GeneralizedSignal<T>, u64)> {
    if f.signal_type() != psi.input_type() {
        return Err(Error::TypeMismatch(format!(
            "signal [{}] vs filter input [{}]",
            f.signal_type(),
            psi.input_type()
        )));
    }
    let mut out = GeneralizedSignal::zeros(psi.output_type().clone());
    let mut macs = 0u64;
    for l in 0..f.bandlimit() {
        let (ti, to) = (f.fragment_count(l), psi.output_type().get(l));
        for j in 0..to {
            let dst = out.fragment_mut(l, j);
            for i in 0..ti {
                let w = psi.get(l, i, j);
                for (d, s) in dst.iter_mut().zip(f.fragment(l, i)) {
                    *d += *s * w;
                }
            }
        }
        macs += ((2 * l + 1) * ti * to) as u64;
    }
    Ok((out, macs))
}

/// Filter text format: `tau_in:` and `tau_out:` lines, then `l,i,j,re,im`
/// rows. Missing rows read as zero.
pub fn write_filter_csv<W: Write>(psi: &HarmonicFilter<f64>, mut out: W) -> Result<()> {
    writeln!(out, "tau_in: {}", psi.input_type())?;
    writeln!(out, "tau_out: {}", psi.output_type())?;
    writeln!(out, "l,i,j,re,im")?;
    for l in 0..psi.bandlimit() {
        for i in 0..psi.input_type().get(l) {
            for j in 0..psi.output_type().get(l) {
                let z = psi.get(l, i, j);
                writeln!(out, "{l},{i},{j},{},{}", z.re, z.im)?;
            }
        }
    }
    Ok(())
}

pub fn read_filter_csv<R: BufRead>(input: R) -> Result<HarmonicFilter<f64>> {
    let mut tau_in = None;
    let mut tau_out = None;
    let mut filter: Option<HarmonicFilter<f64>> = None;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if let Some(rest) = text.strip_prefix("tau_in:") {
            tau_in = Some(SignalType::new(parse_counts(rest, lineno)?));
            continue;
        }
        if let Some(rest) = text.strip_prefix("tau_out:") {
            tau_out = Some(SignalType::new(parse_counts(rest, lineno)?));
            continue;
        }
        let Some(psi) = filter.as_mut() else {
            if text.replace(' ', "") != "l,i,j,re,im" {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected header `l,i,j,re,im`, found {text:?}"),
                });
            }
            let (a, b) = tau_in.clone().zip(tau_out.clone()).ok_or(Error::Parse {
                line: lineno,
                message: "filter needs `tau_in:` and `tau_out:` lines before the header".into(),
            })?;
            filter = Some(HarmonicFilter::zeros(a, b)?);
            continue;
        };
        let f: Vec<&str> = text.split(',').map(str::trim).collect();
        let bad = |message: String| Error::Parse { line: lineno, message };
        if f.len() != 5 {
            return Err(bad(format!("expected 5 fields, found {}", f.len())));
        }
        let idx: Vec<usize> = f[..3]
            .iter()
            .map(|s| s.parse::<usize>().map_err(|e| bad(format!("bad index {s:?}: {e}"))))
            .collect::<Result<_>>()?;
        let re: f64 = f[3].parse().map_err(|e| bad(format!("bad real part: {e}")))?;
        let im: f64 = f[4].parse().map_err(|e| bad(format!("bad imaginary part: {e}")))?;
        let (l, r, c) = (idx[0], idx[1], idx[2]);
        if l >= psi.bandlimit() || r >= psi.input_type().get(l) || c >= psi.output_type().get(l) {
            return Err(bad(format!("entry ({l}, {r}, {c}) outside the declared shape")));
        }
        psi.set(l, r, c, Complex::new(re, im));
    }
    filter.ok_or(Error::Parse {
        line: 0,
        message: "missing header row".into(),
    })
}
