//! Constrained generalized convolution: a shared projection, a channel-wise
//! mixing, then a cross-channel mixing.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::signals::{ChannelStack, GeneralizedSignal, Generator, SignalType};

use super::filter::{generalized_conv_counted, HarmonicFilter};

/// Filters `psi1` (`tau_g -> tau_g'`, shared), `psi2[k]` (`tau_g' -> tau_g'`,
/// one per input channel) and `psi3^l` (`K_in x K_out`, row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedFilterTriple<T> {
    psi1: HarmonicFilter<T>,
    psi2: Vec<HarmonicFilter<T>>,
    psi3: Vec<Vec<Complex<T>>>,
    k_out: usize,
}

impl<T: Real> ConstrainedFilterTriple<T> {
    pub fn new(
        psi1: HarmonicFilter<T>,
        psi2: Vec<HarmonicFilter<T>>,
        psi3: Vec<Vec<Complex<T>>>,
        k_out: usize,
    ) -> Result<Self> {
        let tau_gp = psi1.output_type();
        let k_in = psi2.len();
        if k_in == 0 || k_out == 0 {
            return Err(Error::Shape("channel counts must be positive".into()));
        }
        for (k, p) in psi2.iter().enumerate() {
            if p.input_type() != tau_gp || p.output_type() != tau_gp {
                return Err(Error::Shape(format!("psi2[{k}] must map [{tau_gp}] to itself")));
            }
        }
        if psi3.len() != psi1.bandlimit() || psi3.iter().any(|b| b.len() != k_in * k_out) {
            return Err(Error::Shape(format!(
                "psi3 must hold one {k_in}x{k_out} block per degree"
            )));
        }
        Ok(Self {
            psi1,
            psi2,
            psi3,
            k_out,
        })
    }

    pub fn random(tau_g: SignalType, tau_gp: SignalType, k_in: usize, k_out: usize, seed: u64) -> Result<Self> {
        let mut rng = Generator::new(seed);
        let psi1 = HarmonicFilter::random_from(tau_g, tau_gp.clone(), &mut rng)?;
        let psi2 = (0..k_in)
            .map(|_| HarmonicFilter::random_from(tau_gp.clone(), tau_gp.clone(), &mut rng))
            .collect::<Result<_>>()?;
        let psi3 = (0..tau_gp.bandlimit())
            .map(|_| rng.complex_normals(k_in * k_out))
            .collect();
        Self::new(psi1, psi2, psi3, k_out)
    }

    /// All three stages set to identities (`tau_g = tau_g'`, `K_out = K_in`).
    pub fn identity(tau: SignalType, channels: usize) -> Result<Self> {
        let psi1 = HarmonicFilter::identity(tau.clone());
        let psi2 = vec![HarmonicFilter::identity(tau.clone()); channels];
        let mut eye = vec![Complex::new(T::zero(), T::zero()); channels * channels];
        for k in 0..channels {
            eye[k * channels + k] = Complex::new(T::one(), T::zero());
        }
        Self::new(psi1, psi2, vec![eye; tau.bandlimit()], channels)
    }

    pub fn input_type(&self) -> &SignalType {
        self.psi1.input_type()
    }

    pub fn output_type(&self) -> &SignalType {
        self.psi1.output_type()
    }

    pub fn input_channels(&self) -> usize {
        self.psi2.len()
    }

    pub fn output_channels(&self) -> usize {
        self.k_out
    }

    pub fn psi1(&self) -> &HarmonicFilter<T> {
        &self.psi1
    }

    pub fn psi2(&self, k: usize) -> &HarmonicFilter<T> {
        &self.psi2[k]
    }

    #[inline]
    pub fn psi3(&self, l: usize, k: usize, j: usize) -> Complex<T> {
        self.psi3[l][k * self.k_out + j]
    }

    /// `sum_l (tau_g tau_g' + K_in tau_g'^2 + K_in K_out)`.
    pub fn parameter_count(&self) -> usize {
        constrained_parameter_count(self.input_type(), self.output_type(), self.input_channels(), self.k_out)
    }

    /// The equivalent unconstrained filter acting on the channel-major
    /// flattening of the stack:
    /// `psi[(k, s), (j, t)] = sum_u psi1[s, u] psi2_k[u, t] psi3[k, j]`.
    pub fn assemble(&self) -> HarmonicFilter<T> {
        let (k_in, k_out) = (self.input_channels(), self.k_out);
        let (tg, tgp) = (self.input_type(), self.output_type());
        let scale = |tau: &SignalType, k: usize| SignalType::new(tau.as_slice().iter().map(|t| t * k).collect());
        let mut out = HarmonicFilter::zeros(scale(tg, k_in), scale(tgp, k_out)).expect("same bandlimit");
        for l in 0..tg.bandlimit() {
            let (a, b) = (tg.get(l), tgp.get(l));
            for k in 0..k_in {
                // psi1 psi2_k, a x b
                let mut prod = vec![Complex::new(T::zero(), T::zero()); a * b];
                for s in 0..a {
                    for u in 0..b {
                        let p1 = self.psi1.get(l, s, u);
                        for t in 0..b {
                            prod[s * b + t] += p1 * self.psi2[k].get(l, u, t);
                        }
                    }
                }
                for j in 0..k_out {
                    let w = self.psi3(l, k, j);
                    for s in 0..a {
                        for t in 0..b {
                            out.set(l, k * a + s, j * b + t, prod[s * b + t] * w);
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn constrained_parameter_count(tau_g: &SignalType, tau_gp: &SignalType, k_in: usize, k_out: usize) -> usize {
    tau_g
        .as_slice()
        .iter()
        .zip(tau_gp.as_slice())
        .map(|(g, gp)| g * gp + k_in * gp * gp + k_in * k_out)
        .sum()
}

pub fn unconstrained_parameter_count(tau_g: &SignalType, tau_gp: &SignalType, k_in: usize, k_out: usize) -> usize {
    tau_g
        .as_slice()
        .iter()
        .zip(tau_gp.as_slice())
        .map(|(g, gp)| k_in * g * k_out * gp)
        .sum()
}

/// Whether constrained and unconstrained shapes are comparable: at least two
/// channels in and out, `tau_g'^l >= 1` and `tau_g^l >= 2 tau_g'^l + 1` at
/// every degree (the projection actually contracts).
pub fn is_nondegenerate(tau_g: &SignalType, tau_gp: &SignalType, k_in: usize, k_out: usize) -> bool {
    k_in >= 2
        && k_out >= 2
        && tau_g.bandlimit() == tau_gp.bandlimit()
        && tau_g
            .as_slice()
            .iter()
            .zip(tau_gp.as_slice())
            .all(|(&g, &gp)| gp >= 1 && g > 2 * gp)
}

/// Applies the three stages to a `K_in`-channel stack.
pub fn constrained_conv<T: Real>(s: &ChannelStack<T>, w: &ConstrainedFilterTriple<T>) -> Result<ChannelStack<T>> {
    constrained_conv_counted(s, w).map(|(g, _)| g)
}

/// As [`constrained_conv`], also returning complex multiply-accumulates.
pub fn constrained_conv_counted<T: Real>(
    s: &ChannelStack<T>,
    w: &ConstrainedFilterTriple<T>,
) -> Result<(ChannelStack<T>, u64)> {
    if s.len() != w.input_channels() {
        return Err(Error::Shape(format!(
            "stack has {} channels, filter expects {}",
            s.len(),
            w.input_channels()
        )));
    }
    let mut macs = 0;
    let mut hidden = Vec::with_capacity(s.len());
    for (k, g) in s.channels().iter().enumerate() {
        let (h, a) = generalized_conv_counted(g, &w.psi1)?;
        let (h, b) = generalized_conv_counted(&h, &w.psi2[k])?;
        macs += a + b;
        hidden.push(h);
    }
    let tau = w.output_type().clone();
    let mut out = Vec::with_capacity(w.k_out);
    for j in 0..w.k_out {
        let mut o = GeneralizedSignal::zeros(tau.clone());
        for l in 0..tau.bandlimit() {
            let dst = o.degree_mut(l);
            for (k, h) in hidden.iter().enumerate() {
                let c = w.psi3(l, k, j);
                for (d, v) in dst.iter_mut().zip(h.degree(l)) {
                    *d += *v * c;
                }
            }
            macs += (hidden.len() * dst.len()) as u64;
        }
        out.push(o);
    }
    Ok((ChannelStack::new(out)?, macs))
}
