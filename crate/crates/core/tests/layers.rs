use gscnn_core::layers::*;
use gscnn_core::mixing::{MixingKind, MixingSet};
use gscnn_core::signals::{
    invariant_readout, random_rotation, random_signal, relative_error, rotate_harmonic, ChannelStack,
    GeneralizedSignal, RotationHarmonic, SignalType, SphereHarmonic,
};
use num_complex::Complex64;
use proptest::prelude::*;

const EXACT: f64 = 1e-10;

type Sig = GeneralizedSignal<f64>;

fn sphere(l: usize, seed: u64) -> SphereHarmonic<f64> {
    random_signal::<f64>(&SignalType::sphere(l), seed).try_into().unwrap()
}

fn rotation_signal(l: usize, n: usize, seed: u64) -> RotationHarmonic<f64> {
    RotationHarmonic::from_signal(random_signal(&SignalType::rotation(l, n), seed), n).unwrap()
}

/// Max relative error of `op(rho f)` vs `rho op(f)` over 10 signals x 10
/// rotations.
fn equivariance_error(tau: &SignalType, seed: u64, op: impl Fn(&Sig) -> Sig) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let f = random_signal::<f64>(tau, seed + i);
        let out = op(&f);
        for j in 0..10 {
            let rot = random_rotation(1000 * seed + 10 * i + j);
            let a = op(&rotate_harmonic(&f, &rot));
            let b = rotate_harmonic(&out, &rot);
            worst = worst.max(relative_error(&a, &b).unwrap());
        }
    }
    worst
}

fn stack_equivariance_error(
    tau: &SignalType,
    k: usize,
    seed: u64,
    op: impl Fn(&ChannelStack<f64>) -> ChannelStack<f64>,
) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let s = ChannelStack::new((0..k).map(|c| random_signal(tau, seed + 97 * i + c as u64)).collect()).unwrap();
        let out = op(&s);
        for j in 0..10 {
            let rot = random_rotation(7000 + 10 * i + j);
            let rs = ChannelStack::new(s.channels().iter().map(|c| rotate_harmonic(c, &rot)).collect()).unwrap();
            let a = op(&rs);
            for (x, y) in a.channels().iter().zip(out.channels()) {
                worst = worst.max(relative_error(x, &rotate_harmonic(y, &rot)).unwrap());
            }
        }
    }
    worst
}

#[test]
fn standard_convolutions_are_equivariant() {
    for l in [1, 5, 16] {
        let psi = sphere(l, 99);
        let e = equivariance_error(&SignalType::sphere(l), 1, |f| {
            let f = SphereHarmonic::try_from(f.clone()).unwrap();
            conv_s2_to_so3(&f, &psi, Normalization::Explicit).unwrap().into_signal()
        });
        assert!(e < EXACT, "s2->so3 L={l}: {e}");

        let mut axi = SphereHarmonic::<f64>::zeros(l);
        for d in 0..l {
            axi.set_coeff(d, 0, Complex64::new(d as f64 + 0.5, -0.25));
        }
        let e = equivariance_error(&SignalType::sphere(l), 2, |f| {
            let f = SphereHarmonic::try_from(f.clone()).unwrap();
            conv_s2_axisym(&f, &axi, Normalization::Explicit).unwrap().into_signal()
        });
        assert!(e < EXACT, "axisym L={l}: {e}");

        let n = l.min(3);
        let kernel = rotation_signal(l, l, 98);
        let e = equivariance_error(&SignalType::rotation(l, n), 3, |f| {
            let f = RotationHarmonic::from_signal(f.clone(), n).unwrap();
            conv_so3(&f, &kernel).unwrap().into_signal()
        });
        assert!(e < EXACT, "so3 L={l}: {e}");
    }
}

#[test]
fn generalized_and_tensor_are_equivariant() {
    let tau = SignalType::new(vec![2, 3, 1, 2, 1, 1]);
    for kind in [MixingKind::Full, MixingKind::Mst, MixingKind::Rmst] {
        let mixing = MixingSet::of_kind(kind, tau.bandlimit());
        let tau_g = tensor_output_type(&tau, &mixing);
        let psi = HarmonicFilter::<f64>::random(tau_g, tau.clone(), 5).unwrap();
        let e = equivariance_error(&tau, 10, |f| {
            generalized_conv(&tensor_activation(f, &mixing).unwrap(), &psi).unwrap()
        });
        assert!(e < EXACT, "{kind}: {e}");
    }
    let extended = MixingSet::full_extended(4, 7);
    let tau = SignalType::new(vec![1, 2, 1, 1]);
    let e = equivariance_error(&tau, 20, |f| tensor_activation(f, &extended).unwrap());
    assert!(e < EXACT, "extended: {e}");
    let e = equivariance_error(&SignalType::rotation(16, 16), 30, |f| {
        let psi = HarmonicFilter::<f64>::random(f.signal_type().clone(), SignalType::uniform(16, 2), 1).unwrap();
        generalized_conv(f, &psi).unwrap()
    });
    assert!(e < EXACT, "generalized L=16: {e}");
}

#[test]
fn channel_operators_are_equivariant() {
    let tau = SignalType::new(vec![1, 2, 1, 1]);
    let mixing = MixingSet::mst(4);
    let e = stack_equivariance_error(&tau, 3, 40, |s| channelwise_tensor_activation(s, &mixing).unwrap());
    assert!(e < EXACT, "channelwise: {e}");

    let tau_g = tensor_output_type(&tau, &mixing);
    let w = ConstrainedFilterTriple::<f64>::random(tau_g, tau.clone(), 3, 2, 3).unwrap();
    let e = stack_equivariance_error(&tau, 3, 50, |s| {
        constrained_conv(&channelwise_tensor_activation(s, &mixing).unwrap(), &w).unwrap()
    });
    assert!(e < EXACT, "constrained: {e}");

    let e = stack_equivariance_error(&tau, 2, 60, |s| fragment_norm(s, &fragment_norms(s)).unwrap());
    assert!(e < EXACT, "fragment norm: {e}");
}

#[test]
fn invariant_readout_is_invariant() {
    let tau = SignalType::new(vec![1, 2, 1, 1]);
    let mixing = MixingSet::full(4);
    for i in 0..10 {
        let f = random_signal::<f64>(&tau, 70 + i);
        let base = invariant_readout(&tensor_activation(&f, &mixing).unwrap());
        for j in 0..10 {
            let g = rotate_harmonic(&f, &random_rotation(80 + 10 * i + j));
            let r = invariant_readout(&tensor_activation(&g, &mixing).unwrap());
            for (a, b) in base.iter().zip(&r) {
                assert!((a - b).norm() < EXACT * (1.0 + a.norm()));
            }
        }
    }
}

#[test]
fn relu_error_decreases_with_oversampling() {
    let l = 8;
    let relu = |x: f64| Nonlinearity::Relu.apply(x);
    let errs: Vec<f64> = [1, 2, 4, 8]
        .iter()
        .map(|&c| {
            let op = PointwiseS2::new(l, c).unwrap();
            equivariance_error(&SignalType::sphere(l), 90, |f| {
                op.apply(&SphereHarmonic::try_from(f.clone()).unwrap(), relu)
                    .unwrap()
                    .into_signal()
            })
        })
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(errs[0] > 1e-3);
}

#[test]
fn pointwise_square_with_double_grid_is_exact() {
    let l = 6;
    let f = sphere(l, 3);
    let sq = |x: f64| x * x;
    let e = equivariance_error(&SignalType::sphere(l), 4, |g| {
        pointwise_s2(&SphereHarmonic::try_from(g.clone()).unwrap(), sq, 2)
            .unwrap()
            .into_signal()
    });
    assert!(e < EXACT, "{e}");
    let out = pointwise_s2(&f, sq, 2).unwrap();
    assert_eq!(out.bandlimit(), l);
}

#[test]
fn tensor_union_is_concatenation() {
    let l = 5;
    let tau = SignalType::new(vec![2, 1, 2, 1, 1]);
    let full = MixingSet::full(l);
    let mst = MixingSet::mst(l);
    let rest: Vec<Vec<_>> = (0..l)
        .map(|d| {
            full.degree(d)
                .iter()
                .copied()
                .filter(|p| !mst.degree(d).contains(p))
                .collect()
        })
        .collect();
    let rest = MixingSet::from_pairs(l, rest).unwrap();
    let f = random_signal::<f64>(&tau, 11);
    let a = tensor_activation(&f, &mst).unwrap();
    let b = tensor_activation(&f, &rest).unwrap();
    let u = tensor_activation(&f, &mst.union(&rest).unwrap()).unwrap();
    for d in 0..l {
        let mut cat = a.degree(d).to_vec();
        cat.extend_from_slice(b.degree(d));
        assert_eq!(cat, u.degree(d));
    }
}

#[test]
fn output_types_match_formulas() {
    for l in 1..=8 {
        for kind in [MixingKind::Full, MixingKind::Mst, MixingKind::Rmst] {
            let mixing = MixingSet::of_kind(kind, l);
            let tau = SignalType::new((0..l).map(|d| 1 + (d * 7 + l) % 3).collect());
            let f = random_signal::<f64>(&tau, l as u64);
            let out = tensor_activation(&f, &mixing).unwrap();
            for d in 0..l {
                let expect: usize = mixing.degree(d).iter().map(|&(a, b)| tau.get(a) * tau.get(b)).sum();
                assert_eq!(out.fragment_count(d), expect);
            }
            let stack = ChannelStack::new(vec![f.clone(), f.clone(), f]).unwrap();
            let cw = channelwise_tensor_activation(&stack, &mixing).unwrap();
            assert_eq!(cw.len(), 3);
            assert_eq!(cw.signal_type(), out.signal_type());
        }
        let s = sphere(l, 1);
        assert_eq!(
            conv_s2_to_so3(&s, &s, Normalization::Explicit)
                .unwrap()
                .as_signal()
                .signal_type(),
            &SignalType::rotation(l, l)
        );
        assert_eq!(
            conv_s2_axisym(&s, &SphereHarmonic::zeros(l), Normalization::Explicit)
                .unwrap()
                .as_signal()
                .signal_type(),
            &SignalType::sphere(l)
        );
    }
}

#[test]
fn channelwise_fragment_counts() {
    let tau = SignalType::uniform(3, 1);
    let mixing = MixingSet::full(3);
    let single = tensor_output_type(&tau, &mixing);
    let stack = ChannelStack::new((0..3).map(|k| random_signal::<f64>(&tau, k)).collect()).unwrap();
    let out = channelwise_tensor_activation(&stack, &mixing).unwrap();
    let flat = tensor_output_type(&SignalType::uniform(3, 3), &mixing);
    for l in 0..3 {
        assert_eq!(out.len() * out.signal_type().get(l), 3 * single.get(l));
        assert!(3 * single.get(l) < flat.get(l));
    }
}

#[test]
fn constrained_matches_assembled_filter() {
    let tau_g = SignalType::new(vec![3, 4, 2]);
    let tau_gp = SignalType::new(vec![1, 2, 1]);
    let w = ConstrainedFilterTriple::<f64>::random(tau_g.clone(), tau_gp, 3, 2, 8).unwrap();
    let s = ChannelStack::new((0..3).map(|k| random_signal::<f64>(&tau_g, 20 + k)).collect()).unwrap();
    let out = constrained_conv(&s, &w).unwrap();
    let flat_in = s.flatten();
    let flat_out = generalized_conv(&flat_in, &w.assemble()).unwrap();
    let expect = ChannelStack::from_flat(&flat_out, 2).unwrap();
    for (a, b) in out.channels().iter().zip(expect.channels()) {
        assert!(relative_error(a, b).unwrap() < 1e-12);
    }
}

fn lin_comb(a: Complex64, f: &Sig, b: Complex64, g: &Sig) -> Sig {
    f.scaled(a).try_add(&g.scaled(b)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolutions_are_linear(seed in 0u64..10_000, l in 1usize..7, ar in -2.0..2.0f64, ai in -2.0..2.0f64) {
        let (a, b) = (Complex64::new(ar, ai), Complex64::new(0.5, -1.5));
        let tau = SignalType::sphere(l);
        let (f, g) = (random_signal::<f64>(&tau, seed), random_signal::<f64>(&tau, seed + 1));
        let psi = sphere(l, seed + 2);
        let op = |x: &Sig| conv_s2_to_so3(&SphereHarmonic::try_from(x.clone()).unwrap(), &psi, Normalization::Explicit).unwrap().into_signal();
        let lhs = op(&lin_comb(a, &f, b, &g));
        let rhs = lin_comb(a, &op(&f), b, &op(&g));
        prop_assert!(relative_error(&lhs, &rhs).unwrap() < 1e-12);

        let tau = SignalType::rotation(l, l.min(2));
        let (f, g) = (random_signal::<f64>(&tau, seed), random_signal::<f64>(&tau, seed + 1));
        let kernel = rotation_signal(l, l, seed + 3);
        let n = l.min(2);
        let op = |x: &Sig| conv_so3(&RotationHarmonic::from_signal(x.clone(), n).unwrap(), &kernel).unwrap().into_signal();
        let lhs = op(&lin_comb(a, &f, b, &g));
        let rhs = lin_comb(a, &op(&f), b, &op(&g));
        prop_assert!(relative_error(&lhs, &rhs).unwrap() < 1e-12);

        let psi = HarmonicFilter::<f64>::random(tau.clone(), SignalType::uniform(l, 2), seed).unwrap();
        let lhs = generalized_conv(&lin_comb(a, &f, b, &g), &psi).unwrap();
        let rhs = lin_comb(a, &generalized_conv(&f, &psi).unwrap(), b, &generalized_conv(&g, &psi).unwrap());
        prop_assert!(relative_error(&lhs, &rhs).unwrap() < 1e-12);
    }

    #[test]
    fn constrained_uses_fewer_parameters(
        g in prop::collection::vec(3usize..9, 1..6),
        k_in in 2usize..6,
        k_out in 2usize..6,
        gp_seed in 0usize..1000,
    ) {
        let tau_g = SignalType::new(g.clone());
        let tau_gp = SignalType::new(g.iter().enumerate().map(|(i, &x)| 1 + (gp_seed + i) % ((x - 1) / 2)).collect());
        prop_assume!(is_nondegenerate(&tau_g, &tau_gp, k_in, k_out));
        prop_assert!(constrained_parameter_count(&tau_g, &tau_gp, k_in, k_out) < unconstrained_parameter_count(&tau_g, &tau_gp, k_in, k_out));
    }

    #[test]
    fn channel_permutation_commutes(seed in 0u64..1000) {
        let tau = SignalType::new(vec![1, 1, 2]);
        let mixing = MixingSet::full(3);
        let chans: Vec<Sig> = (0..3).map(|k| random_signal(&tau, seed + k)).collect();
        let perm = [2usize, 0, 1];
        let s = ChannelStack::new(chans.clone()).unwrap();
        let p = ChannelStack::new(perm.iter().map(|&i| chans[i].clone()).collect()).unwrap();
        let a = channelwise_tensor_activation(&s, &mixing).unwrap();
        let b = channelwise_tensor_activation(&p, &mixing).unwrap();
        for (j, &i) in perm.iter().enumerate() {
            prop_assert_eq!(b.channel(j), a.channel(i));
        }
    }
}
