use std::f64::consts::PI;

use gscnn_core::filters::*;
use gscnn_core::layers::{conv_s2_axisym, Normalization};
use gscnn_core::sampling::spherical_harmonic;
use gscnn_core::signals::{random_signal, Generator, SignalType, SphereHarmonic};
use gscnn_core::so3::{wigner_d, Rotation};
use num_complex::Complex64;
use proptest::prelude::*;

fn random_s2(seed: u64, rings: usize, n_phi: usize) -> DiracFilterS2 {
    let mut g = Generator::new(seed);
    let theta = (0..rings).map(|_| PI * g.uniform()).collect();
    let w = (0..rings * n_phi).map(|_| g.uniform() - 0.5).collect();
    DiracFilterS2::new(theta, n_phi, w).unwrap()
}

fn random_so3(seed: u64, rings: usize, na: usize, ng: usize) -> DiracFilterSO3 {
    let mut g = Generator::new(seed);
    let beta = (0..rings).map(|_| PI * g.uniform()).collect();
    let w = (0..rings * na * ng).map(|_| g.uniform() - 0.5).collect();
    DiracFilterSO3::new(beta, na, ng, w).unwrap()
}

#[test]
fn s2_matches_sifting_oracle() {
    for (seed, l, n_phi) in [(1, 6, 11), (2, 10, 7), (3, 4, 3)] {
        let d = random_s2(seed, 4, n_phi);
        let psi = s2_dirac_to_harmonic::<f64>(&d, l);
        for deg in 0..l {
            let li = deg as i64;
            for m in -li..=li {
                let mut want = Complex64::new(0.0, 0.0);
                for (i, &t) in d.theta().iter().enumerate() {
                    for j in 0..n_phi {
                        want += spherical_harmonic(deg, m, t, d.phi(j)).conj() * d.weight(i, j);
                    }
                }
                assert!((psi.coeff(deg, m) - want).norm() < 1e-12, "l={deg} m={m}");
            }
        }
    }
}

#[test]
fn so3_matches_sifting_oracle() {
    for (seed, l, n, na, ng) in [(4, 5, 5, 3, 4), (5, 7, 3, 5, 2)] {
        let d = random_so3(seed, 3, na, ng);
        let psi = so3_dirac_to_harmonic::<f64>(&d, l, n).unwrap();
        for deg in 0..l {
            let mut want = vec![Complex64::new(0.0, 0.0); (2 * deg + 1) * (2 * deg + 1)];
            for (i, &b) in d.beta().iter().enumerate() {
                for j in 0..na {
                    for k in 0..ng {
                        let dm = wigner_d(deg, &Rotation::new(d.alpha(j), b, d.gamma(k)).unwrap());
                        for (acc, v) in want.iter_mut().zip(dm.as_slice()) {
                            *acc += v * d.weight(i, j, k);
                        }
                    }
                }
            }
            let li = deg as i64;
            let nl = li.min(n as i64 - 1);
            for m in -li..=li {
                for nn in -nl..=nl {
                    let w = want[((m + li) * (2 * li + 1) + nn + li) as usize];
                    assert!((psi.coeff(deg, m, nn) - w).norm() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn constant_rings_give_axisymmetric_filters() {
    let l = 6;
    let n_phi = 2 * l - 1;
    let theta = vec![0.2, 0.9, 2.0];
    let w: Vec<f64> = theta
        .iter()
        .enumerate()
        .flat_map(|(i, _)| vec![1.0 + i as f64; n_phi])
        .collect();
    let d = DiracFilterS2::new(theta, n_phi, w).unwrap();
    let psi = s2_dirac_to_harmonic::<f64>(&d, l);
    for deg in 0..l {
        for m in -(deg as i64)..=deg as i64 {
            if m != 0 {
                assert!(psi.coeff(deg, m).norm() < 1e-12);
            }
        }
    }
    let f: SphereHarmonic<f64> = random_signal(&SignalType::sphere(l), 3).try_into().unwrap();
    assert!(conv_s2_axisym(&f, &psi, Normalization::Explicit).is_ok());
}

#[test]
fn over_parameterization_guard() {
    let d = random_s2(1, 1, 12);
    assert!(d.over_parameterized(6));
    assert!(!d.over_parameterized(7));
    assert!(random_so3(1, 1, 3, 13).over_parameterized(6));
}

#[test]
fn single_precision_output() {
    let d = random_s2(9, 2, 5);
    let a = s2_dirac_to_harmonic::<f64>(&d, 5);
    let b = s2_dirac_to_harmonic::<f32>(&d, 5);
    assert!(a.as_signal().try_sub(&b.as_signal().cast()).unwrap().norm() < 1e-5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn linear_in_weights(seed in 0u64..10_000, a in -3.0..3.0f64) {
        let d1 = random_s2(seed, 3, 5);
        let d2 = random_s2(seed + 1, 3, 5);
        let mixed: Vec<f64> = (0..3).flat_map(|i| (0..5).map(move |j| (i, j)))
            .map(|(i, j)| a * d1.weight(i, j) + d2.weight(i, j)).collect();
        let d3 = DiracFilterS2::new(d1.theta().to_vec(), 5, mixed).unwrap();
        let d2s = DiracFilterS2::new(d1.theta().to_vec(), 5,
            (0..3).flat_map(|i| (0..5).map(move |j| (i, j))).map(|(i, j)| d2.weight(i, j)).collect()).unwrap();
        let lhs = s2_dirac_to_harmonic::<f64>(&d3, 5).into_signal();
        let rhs = s2_dirac_to_harmonic::<f64>(&d1, 5).as_signal().scaled(Complex64::new(a, 0.0))
            .try_add(s2_dirac_to_harmonic::<f64>(&d2s, 5).as_signal()).unwrap();
        prop_assert!(lhs.try_sub(&rhs).unwrap().norm() < 1e-12 * (1.0 + rhs.norm()));
    }
}
