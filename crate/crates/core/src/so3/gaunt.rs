use std::f64::consts::PI;
use std::sync::Arc;

use super::clebsch_gordan::{clebsch_gordan, CgBlock};
use crate::error::Result;

/// Gaunt coefficients `G^{l1 l2 l}_{m1 m2 m} = ∫ Y^{l1}_{m1} Y^{l2}_{m2} conj(Y^l_m)`,
/// stored as a scalar multiple of the matching Clebsch-Gordan block.
#[derive(Debug, Clone)]
pub struct GauntBlock {
    weight: f64,
    cg: Arc<CgBlock>,
}

impl GauntBlock {
    /// `sqrt((2l1+1)(2l2+1) / (4 pi (2l+1))) C^{l1 l2 l}_{0 0 0}`.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn cg(&self) -> &CgBlock {
        &self.cg
    }

    pub fn degrees(&self) -> (usize, usize, usize) {
        self.cg.degrees()
    }

    pub fn get(&self, m1: i64, m2: i64, m: i64) -> f64 {
        self.weight * self.cg.get(m1, m2, m)
    }
}

pub fn gaunt_weight(l1: usize, l2: usize, l: usize) -> Result<f64> {
    let c = clebsch_gordan(l1, l2, l)?;
    let (a, b, d) = ((2 * l1 + 1) as f64, (2 * l2 + 1) as f64, (2 * l + 1) as f64);
    Ok((a * b / (4.0 * PI * d)).sqrt() * c.get(0, 0, 0))
}

pub fn gaunt(l1: usize, l2: usize, l: usize) -> Result<GauntBlock> {
    let weight = gaunt_weight(l1, l2, l)?;
    Ok(GauntBlock {
        weight,
        cg: clebsch_gordan(l1, l2, l)?,
    })
}
