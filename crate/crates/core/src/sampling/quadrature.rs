use std::f64::consts::PI;

/// Gauss-Legendre nodes `x_i` and weights `w_i` on `[-1, 1]`, with nodes in
/// decreasing order so that `theta_i = acos(x_i)` increases.
///
/// Nodes come from Newton iteration on `P_n` started at the Tricomi
/// estimate, iterated until the update drops below `1e-15`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, p1) = legendre_pair(n, z);
            dp = n as f64 * (z * p - p1) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                let (p, p1) = legendre_pair(n, z);
                dp = n as f64 * (z * p - p1) / (z * z - 1.0);
                break;
            }
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// `(P_n(z), P_{n-1}(z))` by the Bonnet recursion.
fn legendre_pair(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}
