#![allow(dead_code)]

use gscnn_core::so3::{clebsch_gordan, wigner_d, Rotation};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn fact(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Clebsch-Gordan coefficient from the Racah closed form, squared exactly in
/// rationals, then rooted once in f64.
pub fn racah_cg(j1: i64, j2: i64, j: i64, m1: i64, m2: i64, m: i64) -> f64 {
    if m1 + m2 != m || m1.abs() > j1 || m2.abs() > j2 || m.abs() > j {
        return 0.0;
    }
    if j < (j1 - j2).abs() || j > j1 + j2 {
        return 0.0;
    }
    let r = |n: BigInt, d: BigInt| BigRational::new(n, d);
    let pre = r(
        BigInt::from(2 * j + 1) * fact(j1 + j2 - j) * fact(j1 - j2 + j) * fact(-j1 + j2 + j),
        fact(j1 + j2 + j + 1),
    );
    let prod = fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) * fact(j2 - m2) * fact(j + m) * fact(j - m);
    let mut sum = BigRational::zero();
    for k in 0..=(j1 + j2 - j) {
        let den = [
            k,
            j1 + j2 - j - k,
            j1 - m1 - k,
            j2 + m2 - k,
            j - j2 + m1 + k,
            j - j1 - m2 + k,
        ];
        if den.iter().any(|&d| d < 0) {
            continue;
        }
        let d = den.iter().fold(BigInt::one(), |acc, &x| acc * fact(x));
        let term = r(BigInt::one(), d);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return 0.0;
    }
    let sq = pre * BigRational::from_integer(prod) * &sum * &sum;
    let mag = sq.to_f64().unwrap().sqrt();
    if sum.is_negative() {
        -mag
    } else {
        mag
    }
}

pub fn max_abs(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn matmul_c(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub fn kron(a: &[Complex64], na: usize, b: &[Complex64], nb: usize) -> Vec<Complex64> {
    let n = na * nb;
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k) * n + (j * nb + l)] = a[i * na + j] * b[k * nb + l];
                }
            }
        }
    }
    out
}

/// `max |C^T (D1 x D2) C - (+) D^l|` over all coupled degrees.
pub fn block_diagonal_defect(l1: usize, l2: usize, r: &Rotation) -> f64 {
    let (d1, d2) = (wigner_d(l1, r), wigner_d(l2, r));
    let (n1, n2) = (2 * l1 + 1, 2 * l2 + 1);
    let big = kron(d1.as_slice(), n1, d2.as_slice(), n2);
    let n = n1 * n2;
    // Columns of the coupling matrix, ordered by (l, m).
    let mut cols: Vec<(usize, i64, Vec<f64>)> = Vec::new();
    for l in l1.abs_diff(l2)..=l1 + l2 {
        let cg = clebsch_gordan(l1, l2, l).unwrap();
        for m in -(l as i64)..=l as i64 {
            let mut v = vec![0.0; n];
            for m1 in -(l1 as i64)..=l1 as i64 {
                let m2 = m - m1;
                if m2.abs() <= l2 as i64 {
                    v[(m1 + l1 as i64) as usize * n2 + (m2 + l2 as i64) as usize] = cg.get(m1, m2, m);
                }
            }
            cols.push((l, m, v));
        }
    }
    let mut worst: f64 = 0.0;
    for (la, ma, va) in &cols {
        for (lb, mb, vb) in &cols {
            let mut s = Complex64::new(0.0, 0.0);
            for i in 0..n {
                if va[i] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    s += va[i] * big[i * n + j] * vb[j];
                }
            }
            let want = if la == lb {
                wigner_d(*la, r).get(*ma, *mb)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((s - want).norm());
        }
    }
    worst
}
