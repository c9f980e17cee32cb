//! Layers as a triple `(L1, N, L2)` applied as `L2(N(L1(f)))`.

use crate::error::Result;
use crate::mixing::MixingSet;
use crate::scalar::Real;
use crate::signals::{GeneralizedSignal, RotationHarmonic, SphereHarmonic};

use super::conv::{conv_s2_axisym, conv_s2_to_so3, conv_so3, Normalization};
use super::filter::{generalized_conv, HarmonicFilter};
use super::pointwise::{pointwise_activation, Nonlinearity};
use super::tensor::tensor_activation;

/// A map between generalized signals.
pub trait Operator<T: Real>: Send + Sync {
    fn apply(&self, f: &GeneralizedSignal<T>) -> Result<GeneralizedSignal<T>>;
}

impl<T: Real, F> Operator<T> for F
where
    F: Fn(&GeneralizedSignal<T>) -> Result<GeneralizedSignal<T>> + Send + Sync,
{
    fn apply(&self, f: &GeneralizedSignal<T>) -> Result<GeneralizedSignal<T>> {
        self(f)
    }
}

/// The built-in layer stages.
#[derive(Debug, Clone)]
pub enum Stage<T> {
    Identity,
    SphereToRotation(SphereHarmonic<T>, Normalization),
    SphereAxisymmetric(SphereHarmonic<T>, Normalization),
    RotationConv(RotationHarmonic<T>),
    Generalized(HarmonicFilter<T>),
    Tensor(MixingSet),
    Pointwise { sigma: Nonlinearity, oversample: usize },
}

impl<T: Real> Operator<T> for Stage<T> {
    fn apply(&self, f: &GeneralizedSignal<T>) -> Result<GeneralizedSignal<T>> {
        match self {
            Stage::Identity => Ok(f.clone()),
            Stage::SphereToRotation(psi, norm) => {
                let s = SphereHarmonic::try_from(f.clone())?;
                conv_s2_to_so3(&s, psi, *norm).map(RotationHarmonic::into_signal)
            }
            Stage::SphereAxisymmetric(psi, norm) => {
                let s = SphereHarmonic::try_from(f.clone())?;
                conv_s2_axisym(&s, psi, *norm).map(SphereHarmonic::into_signal)
            }
            Stage::RotationConv(psi) => {
                let n = f
                    .signal_type()
                    .rotation_azimuthal()
                    .ok_or_else(|| crate::Error::UnsupportedType(format!("[{}]", f.signal_type())))?;
                let r = RotationHarmonic::from_signal(f.clone(), n)?;
                conv_so3(&r, psi).map(RotationHarmonic::into_signal)
            }
            Stage::Generalized(psi) => generalized_conv(f, psi),
            Stage::Tensor(mixing) => tensor_activation(f, mixing),
            Stage::Pointwise { sigma, oversample } => {
                let sigma = *sigma;
                pointwise_activation(f, move |x: T| sigma.apply(x), *oversample)
            }
        }
    }
}

/// `(L1, N, L2)`; any stage may be the identity.
pub struct LayerTriple<T: Real> {
    pub first: Box<dyn Operator<T>>,
    pub activation: Box<dyn Operator<T>>,
    pub second: Box<dyn Operator<T>>,
}

impl<T: Real> LayerTriple<T> {
    pub fn new(
        first: impl Operator<T> + 'static,
        activation: impl Operator<T> + 'static,
        second: impl Operator<T> + 'static,
    ) -> Self {
        Self {
            first: Box::new(first),
            activation: Box::new(activation),
            second: Box::new(second),
        }
    }

    pub fn identity() -> Self {
        Self::new(Stage::<T>::Identity, Stage::<T>::Identity, Stage::<T>::Identity)
    }
}

impl<T: Real> Operator<T> for LayerTriple<T> {
    fn apply(&self, f: &GeneralizedSignal<T>) -> Result<GeneralizedSignal<T>> {
        compose_layer(self, f)
    }
}

pub fn compose_layer<T: Real>(t: &LayerTriple<T>, f: &GeneralizedSignal<T>) -> Result<GeneralizedSignal<T>> {
    let h = t.first.apply(f)?;
    let h = t.activation.apply(&h)?;
    t.second.apply(&h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layers::tensor_output_type;
    use crate::signals::{random_signal, relative_error, SignalType};

    #[test]
    fn identity_triple() {
        let f = random_signal::<f64>(&SignalType::new(vec![1, 2, 3]), 5);
        let g = compose_layer(&LayerTriple::identity(), &f).unwrap();
        assert_eq!(relative_error(&f, &g).unwrap(), 0.0);
    }

    #[test]
    fn spherical_cnn_pattern() {
        let l = 4;
        let f = random_signal::<f64>(&SignalType::sphere(l), 1);
        let psi = SphereHarmonic::try_from(random_signal::<f64>(&SignalType::sphere(l), 2)).unwrap();
        let relu = Stage::Pointwise {
            sigma: Nonlinearity::Relu,
            oversample: 1,
        };
        let triple = LayerTriple::new(
            Stage::SphereToRotation(psi.clone(), Normalization::Explicit),
            relu.clone(),
            Stage::Identity,
        );
        let out = compose_layer(&triple, &f).unwrap();
        let conv = conv_s2_to_so3(&SphereHarmonic::try_from(f).unwrap(), &psi, Normalization::Explicit).unwrap();
        let expect = relu.apply(conv.as_signal()).unwrap();
        assert_eq!(relative_error(&out, &expect).unwrap(), 0.0);
        assert_eq!(out.signal_type(), &SignalType::rotation(l, l));
    }

    #[test]
    fn clebsch_gordan_net_pattern() {
        let tau = SignalType::new(vec![2, 1, 1]);
        let mixing = MixingSet::full(3);
        let tau_g = tensor_output_type(&tau, &mixing);
        let psi = HarmonicFilter::<f64>::random(tau_g, tau.clone(), 9).unwrap();
        let f = random_signal::<f64>(&tau, 4);
        let triple = LayerTriple::new(
            Stage::Identity,
            Stage::Tensor(mixing.clone()),
            Stage::Generalized(psi.clone()),
        );
        let out = compose_layer(&triple, &f).unwrap();
        let expect = generalized_conv(&tensor_activation(&f, &mixing).unwrap(), &psi).unwrap();
        assert_eq!(relative_error(&out, &expect).unwrap(), 0.0);
        assert_eq!(out.signal_type(), &tau);
    }

    #[test]
    fn closures_are_operators() {
        let f = random_signal::<f64>(&SignalType::sphere(3), 1);
        let double = |g: &GeneralizedSignal<f64>| Ok(g.scaled(num_complex::Complex::new(2.0, 0.0)));
        let t = LayerTriple::new(double, Stage::Identity, Stage::Identity);
        let out = compose_layer(&t, &f).unwrap();
        assert!((out.norm() - 2.0 * f.norm()).abs() < 1e-12);
    }
}
