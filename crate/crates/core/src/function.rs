use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::AtomSet;

/// Finitely supported real function on the atoms. Zero coefficients are
/// never stored, so the key set is the support.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SimpleFunction {
    coeffs: BTreeMap<i64, f64>,
}

impl SimpleFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(coeffs: impl IntoIterator<Item = (i64, f64)>) -> Result<Self> {
        let mut f = Self::zero();
        for (i, c) in coeffs {
            if !c.is_finite() {
                return Err(Error::InvalidArgument(format!("coefficient at atom {i} is not finite")));
            }
            let e = f.coeffs.entry(i).or_insert(0.0);
            *e += c;
        }
        f.coeffs.retain(|_, c| *c != 0.0);
        Ok(f)
    }

    pub fn indicator(set: &AtomSet) -> Self {
        SimpleFunction { coeffs: set.iter().map(|&i| (i, 1.0)).collect() }
    }

    pub fn get(&self, i: i64) -> f64 {
        self.coeffs.get(&i).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> AtomSet {
        self.coeffs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients in ascending atom order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, alpha: f64) -> Self {
        if alpha == 0.0 {
            return Self::zero();
        }
        SimpleFunction { coeffs: self.coeffs.iter().map(|(&i, &c)| (i, alpha * c)).collect() }
    }

    pub fn add(&self, other: &SimpleFunction) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (&i, &c) in &other.coeffs {
            *coeffs.entry(i).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        SimpleFunction { coeffs }
    }

    pub fn sub(&self, other: &SimpleFunction) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// `max_i |f(i) − g(i)|` over the union of supports.
    pub fn sup_distance(&self, other: &SimpleFunction) -> f64 {
        self.sub(other).max_abs()
    }

    /// Relabels atoms: the value at `i` moves to `map(i)`.
    pub fn relabel(&self, mut map: impl FnMut(i64) -> Result<i64>) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (&i, &c) in &self.coeffs {
            coeffs.insert(map(i)?, c);
        }
        Ok(SimpleFunction { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::atoms;

    #[test]
    fn zeros_are_dropped() {
        let f = SimpleFunction::new([(0, 1.0), (1, 0.0), (0, -1.0), (2, 3.0)]).unwrap();
        assert_eq!(f.support(), atoms(&[2]));
        assert!(SimpleFunction::new([(0, f64::NAN)]).is_err());
        let g = SimpleFunction::indicator(&atoms(&[2]));
        assert_eq!(f.sub(&g.scale(3.0)), SimpleFunction::zero());
    }

    #[test]
    fn arithmetic() {
        let f = SimpleFunction::new([(0, 2.0), (1, -1.0)]).unwrap();
        let g = SimpleFunction::new([(1, 1.0), (5, 4.0)]).unwrap();
        let h = f.add(&g);
        assert_eq!(h.support(), atoms(&[0, 5]));
        assert_eq!(f.max_abs(), 2.0);
        assert_eq!(f.sup_distance(&g), 4.0);
        assert!(f.scale(0.0).is_zero());
    }
}
