//! Harmonic filters built from weighted Dirac deltas on the sphere and on
//! the rotation group.
//!
//! Deltas sit on rings of fixed colatitude (or `beta`) at equispaced
//! azimuths, so the azimuthal sums reduce to discrete Fourier transforms.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::sampling::LegendreTable;
use crate::scalar::Real;
use crate::signals::{GeneralizedSignal, RotationHarmonic, SignalType, SphereHarmonic};
use crate::so3::SmallDTable;

/// Weighted deltas at `(theta_i, 2 pi j / n_phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracFilterS2 {
    theta: Vec<f64>,
    n_phi: usize,
    weights: Vec<f64>,
}

impl DiracFilterS2 {
    /// `weights` is row-major `theta.len() x n_phi`.
    pub fn new(theta: Vec<f64>, n_phi: usize, weights: Vec<f64>) -> Result<Self> {
        if n_phi == 0 {
            return Err(Error::InvalidArgument("at least one delta per ring".into()));
        }
        check_angles(&theta, "theta")?;
        if weights.len() != theta.len() * n_phi {
            return Err(Error::Shape(format!(
                "expected {} weights, found {}",
                theta.len() * n_phi,
                weights.len()
            )));
        }
        Ok(Self { theta, n_phi, weights })
    }

    /// Builds ring weights by periodic linear interpolation from `anchors[i]`
    /// values placed at equispaced longitudes.
    pub fn from_anchors(theta: Vec<f64>, n_phi: usize, anchors: &[Vec<f64>]) -> Result<Self> {
        if anchors.len() != theta.len() {
            return Err(Error::Shape("one anchor list per ring".into()));
        }
        let mut weights = Vec::with_capacity(theta.len() * n_phi);
        for ring in anchors {
            weights.extend(interpolate_ring(ring, n_phi)?);
        }
        Self::new(theta, n_phi, weights)
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n_phi + j]
    }

    pub fn phi(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_phi as f64
    }

    /// More deltas per ring than degree-`< L` harmonics can resolve.
    pub fn over_parameterized(&self, bandlimit: usize) -> bool {
        self.n_phi > (2 * bandlimit).saturating_sub(1)
    }
}

/// Weighted deltas at `(alpha_j, beta_i, gamma_k)` with
/// `alpha_j = 2 pi j / n_alpha`, `gamma_k = 2 pi k / n_gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracFilterSO3 {
    beta: Vec<f64>,
    n_alpha: usize,
    n_gamma: usize,
    weights: Vec<f64>,
}

impl DiracFilterSO3 {
    /// `weights` is indexed `[i][j][k]` (beta, alpha, gamma), row-major.
    pub fn new(beta: Vec<f64>, n_alpha: usize, n_gamma: usize, weights: Vec<f64>) -> Result<Self> {
        if n_alpha == 0 || n_gamma == 0 {
            return Err(Error::InvalidArgument("at least one delta per ring".into()));
        }
        check_angles(&beta, "beta")?;
        let want = beta.len() * n_alpha * n_gamma;
        if weights.len() != want {
            return Err(Error::Shape(format!(
                "expected {want} weights, found {}",
                weights.len()
            )));
        }
        Ok(Self {
            beta,
            n_alpha,
            n_gamma,
            weights,
        })
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn n_alpha(&self) -> usize {
        self.n_alpha
    }

    pub fn n_gamma(&self) -> usize {
        self.n_gamma
    }

    pub fn alpha(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_alpha as f64
    }

    pub fn gamma(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.n_gamma as f64
    }

    pub fn weight(&self, i: usize, j: usize, k: usize) -> f64 {
        self.weights[(i * self.n_alpha + j) * self.n_gamma + k]
    }

    pub fn over_parameterized(&self, bandlimit: usize) -> bool {
        let cap = (2 * bandlimit).saturating_sub(1);
        self.n_alpha > cap || self.n_gamma > cap
    }
}

fn check_angles(v: &[f64], name: &str) -> Result<()> {
    match v.iter().find(|&&x| !(0.0..=PI).contains(&x)) {
        Some(x) => Err(Error::InvalidArgument(format!("{name} = {x} outside [0, pi]"))),
        None => Ok(()),
    }
}

fn interpolate_ring(anchors: &[f64], n: usize) -> Result<Vec<f64>> {
    if anchors.is_empty() {
        return Err(Error::InvalidArgument("empty anchor list".into()));
    }
    let k = anchors.len();
    Ok((0..n)
        .map(|j| {
            let x = (j * k) as f64 / n as f64;
            let a = x.floor() as usize;
            let frac = x - a as f64;
            (1.0 - frac) * anchors[a % k] + frac * anchors[(a + 1) % k]
        })
        .collect())
}

#[inline]
fn wrap(m: i64, n: usize) -> usize {
    m.rem_euclid(n as i64) as usize
}

fn dft_rows(data: &[f64], rows: usize, len: usize, planner: &mut FftPlanner<f64>) -> Vec<Complex64> {
    let fft = planner.plan_fft_forward(len);
    let mut buf: Vec<Complex64> = data.iter().map(|&w| Complex64::new(w, 0.0)).collect();
    debug_assert_eq!(buf.len(), rows * len);
    if len > 0 && rows > 0 {
        fft.process(&mut buf);
    }
    buf
}

/// `psi^l_m = sum_i lambda^l_m(theta_i) sum_j w_ij e^{-i m phi_j}`.
pub fn s2_dirac_to_harmonic<T: Real>(d: &DiracFilterS2, bandlimit: usize) -> SphereHarmonic<T> {
    if d.over_parameterized(bandlimit) {
        log::warn!(
            "{} deltas per ring exceeds 2L-1 = {} for L = {bandlimit}",
            d.n_phi,
            (2 * bandlimit).saturating_sub(1)
        );
    }
    let mut planner = FftPlanner::new();
    let spectra = dft_rows(&d.weights, d.theta.len(), d.n_phi, &mut planner);
    let legendre: Vec<LegendreTable> = d.theta.iter().map(|&t| LegendreTable::new(bandlimit, t)).collect();
    let degrees: Vec<Vec<_>> = (0..bandlimit)
        .into_par_iter()
        .map(|l| {
            let li = l as i64;
            (-li..=li)
                .map(|m| {
                    let k = wrap(m, d.n_phi);
                    let z: Complex64 = legendre
                        .iter()
                        .enumerate()
                        .map(|(i, tab)| spectra[i * d.n_phi + k] * tab.signed(l, m))
                        .sum();
                    num_complex::Complex::new(T::of(z.re), T::of(z.im))
                })
                .collect()
        })
        .collect();
    GeneralizedSignal::from_degrees(SignalType::sphere(bandlimit), degrees)
        .expect("shape follows the bandlimit")
        .try_into()
        .expect("sphere type")
}

/// `psi^l_{mn} = sum_i d^l_{mn}(beta_i) sum_{j,k} w_ijk e^{-i m alpha_j} e^{-i n gamma_k}`,
/// keeping `|n| < azimuthal`.
pub fn so3_dirac_to_harmonic<T: Real>(
    d: &DiracFilterSO3,
    bandlimit: usize,
    azimuthal: usize,
) -> Result<RotationHarmonic<T>> {
    if azimuthal == 0 || azimuthal > bandlimit.max(1) {
        return Err(Error::InvalidArgument(format!(
            "azimuthal bandlimit {azimuthal} must lie in 1..={bandlimit}"
        )));
    }
    if d.over_parameterized(bandlimit) {
        log::warn!(
            "{} x {} deltas per ring exceeds 2L-1 = {} for L = {bandlimit}",
            d.n_alpha,
            d.n_gamma,
            (2 * bandlimit).saturating_sub(1)
        );
    }
    let (na, ng) = (d.n_alpha, d.n_gamma);
    let mut planner = FftPlanner::new();
    let mut spectra = dft_rows(&d.weights, d.beta.len() * na, ng, &mut planner);
    let fa = planner.plan_fft_forward(na);
    let mut column = vec![Complex64::new(0.0, 0.0); na];
    for i in 0..d.beta.len() {
        let block = &mut spectra[i * na * ng..(i + 1) * na * ng];
        for k in 0..ng {
            for j in 0..na {
                column[j] = block[j * ng + k];
            }
            fa.process(&mut column);
            for j in 0..na {
                block[j * ng + k] = column[j];
            }
        }
    }
    let tables = d
        .beta
        .iter()
        .map(|&b| SmallDTable::new(b, bandlimit, azimuthal))
        .collect::<Result<Vec<_>>>()?;
    let mut out = RotationHarmonic::<T>::zeros(bandlimit, azimuthal);
    let degrees: Vec<Vec<(i64, i64, Complex64)>> = (0..bandlimit)
        .into_par_iter()
        .map(|l| {
            let li = l as i64;
            let nl = l.min(azimuthal - 1) as i64;
            let mut vals = Vec::with_capacity(((2 * li + 1) * (2 * nl + 1)) as usize);
            for n in -nl..=nl {
                for m in -li..=li {
                    let (a, c) = (wrap(m, na), wrap(n, ng));
                    let z: Complex64 = tables
                        .iter()
                        .enumerate()
                        .map(|(i, tab)| spectra[(i * na + a) * ng + c] * tab.get(l, m, n))
                        .sum();
                    vals.push((m, n, z));
                }
            }
            vals
        })
        .collect();
    for (l, vals) in degrees.into_iter().enumerate() {
        for (m, n, z) in vals {
            out.set_coeff(l, m, n, num_complex::Complex::new(T::of(z.re), T::of(z.im)));
        }
    }
    Ok(out)
}

/// Filter geometry read from a small text description:
///
/// ```text
/// # comment
/// bandlimit 8          (optional)
/// s2 <n_phi>
/// ring <theta> <w_0> ... <w_{n_phi-1}>
/// ring <theta> anchors <a_0> ... <a_{k-1}>
/// ```
///
/// or, for the rotation group,
///
/// ```text
/// so3 <n_alpha> <n_gamma>
/// ring <beta> <w_00> <w_01> ...      (alpha-major)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct FilterConfig {
    pub bandlimit: Option<usize>,
    pub geometry: FilterGeometry,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FilterGeometry {
    S2(DiracFilterS2),
    SO3(DiracFilterSO3),
}

enum Header {
    S2(usize),
    SO3(usize, usize),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<F: FromStr>(tok: &str, line: usize) -> Result<F> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid number {tok:?}")))
}

impl FromStr for FilterConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut bandlimit = None;
        let mut header = None;
        let mut rings: Vec<(f64, Vec<f64>, bool)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            let mut toks = body.split_whitespace();
            let Some(key) = toks.next() else { continue };
            match key {
                "bandlimit" => {
                    bandlimit = Some(parse_num(
                        toks.next().ok_or_else(|| parse_err(line, "missing value"))?,
                        line,
                    )?)
                }
                "s2" | "so3" if header.is_some() => return Err(parse_err(line, "duplicate geometry header")),
                "s2" => {
                    let n = toks.next().ok_or_else(|| parse_err(line, "missing n_phi"))?;
                    header = Some(Header::S2(parse_num(n, line)?));
                }
                "so3" => {
                    let a = toks.next().ok_or_else(|| parse_err(line, "missing n_alpha"))?;
                    let g = toks.next().ok_or_else(|| parse_err(line, "missing n_gamma"))?;
                    header = Some(Header::SO3(parse_num(a, line)?, parse_num(g, line)?));
                }
                "ring" => {
                    let angle = parse_num(toks.next().ok_or_else(|| parse_err(line, "missing angle"))?, line)?;
                    let rest: Vec<&str> = toks.collect();
                    let anchors = rest.first() == Some(&"anchors");
                    let values = rest[anchors as usize..]
                        .iter()
                        .map(|t| parse_num(t, line))
                        .collect::<Result<Vec<f64>>>()?;
                    let expected = match header {
                        None => return Err(parse_err(line, "ring before geometry header")),
                        Some(_) if anchors => None,
                        Some(Header::S2(n)) => Some(n),
                        Some(Header::SO3(a, g)) => Some(a * g),
                    };
                    if let Some(n) = expected {
                        if values.len() != n {
                            return Err(parse_err(line, format!("expected {n} weights, found {}", values.len())));
                        }
                    }
                    if anchors && matches!(header, Some(Header::SO3(..))) {
                        return Err(parse_err(line, "anchors are only supported on sphere rings"));
                    }
                    rings.push((angle, values, anchors));
                }
                other => return Err(parse_err(line, format!("unknown key {other:?}"))),
            }
        }
        let geometry = match header.ok_or_else(|| parse_err(0, "missing geometry header"))? {
            Header::S2(n_phi) => {
                let theta = rings.iter().map(|r| r.0).collect();
                let mut weights = Vec::new();
                for (_, values, anchors) in &rings {
                    if *anchors {
                        weights.extend(interpolate_ring(values, n_phi)?);
                    } else {
                        weights.extend_from_slice(values);
                    }
                }
                FilterGeometry::S2(DiracFilterS2::new(theta, n_phi, weights)?)
            }
            Header::SO3(na, ng) => {
                let beta = rings.iter().map(|r| r.0).collect();
                let weights = rings.into_iter().flat_map(|r| r.1).collect();
                FilterGeometry::SO3(DiracFilterSO3::new(beta, na, ng, weights)?)
            }
        };
        Ok(Self { bandlimit, geometry })
    }
}

impl fmt::Display for FilterConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.bandlimit {
            writeln!(f, "bandlimit {l}")?;
        }
        match &self.geometry {
            FilterGeometry::S2(d) => {
                writeln!(f, "s2 {}", d.n_phi)?;
                for (i, t) in d.theta.iter().enumerate() {
                    write!(f, "ring {t:?}")?;
                    for w in &d.weights[i * d.n_phi..(i + 1) * d.n_phi] {
                        write!(f, " {w:?}")?;
                    }
                    writeln!(f)?;
                }
            }
            FilterGeometry::SO3(d) => {
                writeln!(f, "so3 {} {}", d.n_alpha, d.n_gamma)?;
                let per = d.n_alpha * d.n_gamma;
                for (i, b) in d.beta.iter().enumerate() {
                    write!(f, "ring {b:?}")?;
                    for w in &d.weights[i * per..(i + 1) * per] {
                        write!(f, " {w:?}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}
