//! Fragment normalization: each fragment is divided by a positive scale
//! statistic, never shifted.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::signals::{ChannelStack, GeneralizedSignal};

/// One positive scale per `(channel, degree, fragment)`, indexed `[k][l][t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FragmentStatistics(Vec<Vec<Vec<f64>>>);

impl FragmentStatistics {
    pub fn new(values: Vec<Vec<Vec<f64>>>) -> Self {
        Self(values)
    }

    /// All statistics equal to `value`, shaped like `s`.
    pub fn constant<T: Real>(s: &ChannelStack<T>, value: f64) -> Self {
        let tau = s.signal_type();
        Self(
            (0..s.len())
                .map(|_| tau.as_slice().iter().map(|&n| vec![value; n]).collect())
                .collect(),
        )
    }

    pub fn get(&self, k: usize, l: usize, t: usize) -> f64 {
        self.0[k][l][t]
    }

    pub fn values(&self) -> &[Vec<Vec<f64>>] {
        &self.0
    }

    fn check_shape<T: Real>(&self, s: &ChannelStack<T>) -> Result<()> {
        let tau = s.signal_type().as_slice();
        let ok = self.0.len() == s.len()
            && self
                .0
                .iter()
                .all(|ch| ch.len() == tau.len() && ch.iter().zip(tau).all(|(v, &n)| v.len() == n));
        if ok {
            Ok(())
        } else {
            Err(Error::Shape("statistics do not match the channel stack".into()))
        }
    }
}

fn fragment_norm_of<T: Real>(f: &[num_complex::Complex<T>]) -> f64 {
    f.iter()
        .map(|z| {
            let (re, im) = (z.re.to_f64_lossy(), z.im.to_f64_lossy());
            re * re + im * im
        })
        .sum::<f64>()
        .sqrt()
}

/// Current Euclidean norm of every fragment. These are rotation invariant.
pub fn fragment_norms<T: Real>(s: &ChannelStack<T>) -> FragmentStatistics {
    FragmentStatistics(
        s.channels()
            .iter()
            .map(|ch| {
                (0..ch.bandlimit())
                    .map(|l| {
                        (0..ch.fragment_count(l))
                            .map(|t| fragment_norm_of(ch.fragment(l, t)))
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Divides each fragment by its statistic.
pub fn fragment_norm<T: Real>(s: &ChannelStack<T>, stats: &FragmentStatistics) -> Result<ChannelStack<T>> {
    stats.check_shape(s)?;
    for &v in stats.0.iter().flatten().flatten() {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositiveStatistic(v));
        }
    }
    let channels = s
        .channels()
        .iter()
        .zip(&stats.0)
        .map(|(ch, st)| {
            let mut out: GeneralizedSignal<T> = ch.clone();
            for (l, row) in st.iter().enumerate() {
                for (t, &v) in row.iter().enumerate() {
                    let inv = T::of(1.0 / v);
                    out.fragment_mut(l, t).iter_mut().for_each(|z| *z *= inv);
                }
            }
            out
        })
        .collect();
    ChannelStack::new(channels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{random_signal, relative_error, SignalType};

    fn stack() -> ChannelStack<f64> {
        let tau = SignalType::new(vec![2, 1, 3]);
        ChannelStack::new((0..3).map(|k| random_signal(&tau, k)).collect()).unwrap()
    }

    #[test]
    fn unit_statistics_are_identity() {
        let s = stack();
        let out = fragment_norm(&s, &FragmentStatistics::constant(&s, 1.0)).unwrap();
        for (a, b) in s.channels().iter().zip(out.channels()) {
            assert_eq!(relative_error(a, b).unwrap(), 0.0);
        }
    }

    #[test]
    fn current_norms_give_unit_fragments() {
        let s = stack();
        let out = fragment_norm(&s, &fragment_norms(&s)).unwrap();
        for &v in fragment_norms(&out).values().iter().flatten().flatten() {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_statistics() {
        let s = stack();
        for bad in [0.0, -1.0, f64::NAN] {
            let mut st = FragmentStatistics::constant(&s, 1.0);
            st.0[1][2][0] = bad;
            assert!(matches!(fragment_norm(&s, &st), Err(Error::NonPositiveStatistic(_))));
        }
        let st = FragmentStatistics::new(vec![]);
        assert!(matches!(fragment_norm(&s, &st), Err(Error::Shape(_))));
    }
}
