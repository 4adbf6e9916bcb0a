use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geom::Point;

/// A value that must exceed `min` for the check to pass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    pub min: f64,
}

/// Named residuals with a shared tolerance.
///
/// Residuals are dimensionless: lengths are divided by `scale` before they are
/// stored, angles are in degrees. A check passes iff every residual is below
/// `tolerance` and every lower bound is exceeded; NaN fails both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scale: f64,
    pub tolerance: f64,
    pub residuals: BTreeMap<String, f64>,
    pub lower_bounds: BTreeMap<String, LowerBound>,
    /// Recorded for the reader, not checked.
    pub values: BTreeMap<String, f64>,
    pub points: BTreeMap<String, Point>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(scale: f64, tolerance: f64) -> Self {
        Self {
            scale,
            tolerance,
            residuals: BTreeMap::new(),
            lower_bounds: BTreeMap::new(),
            values: BTreeMap::new(),
            points: BTreeMap::new(),
            pass: true,
        }
    }

    /// Length residual, normalized by `scale`.
    pub fn length(&mut self, name: &str, value: f64) -> &mut Self {
        let v = value / self.scale;
        self.raw(name, v)
    }

    /// Residual stored as given (angles, ratios).
    pub fn raw(&mut self, name: &str, value: f64) -> &mut Self {
        self.residuals.insert(name.to_owned(), value);
        self.pass &= value < self.tolerance;
        self
    }

    pub fn lower_bound(&mut self, name: &str, value: f64, min: f64) -> &mut Self {
        self.lower_bounds.insert(name.to_owned(), LowerBound { value, min });
        self.pass &= value > min;
        self
    }

    pub fn value(&mut self, name: &str, value: f64) -> &mut Self {
        self.values.insert(name.to_owned(), value);
        self
    }

    pub fn point(&mut self, name: &str, p: Point) -> &mut Self {
        self.points.insert(name.to_owned(), p);
        self
    }

    /// Names of failing residuals and lower bounds.
    pub fn failures(&self) -> Vec<&str> {
        let tol = self.tolerance;
        self.residuals
            .iter()
            .filter(|(_, v)| !(**v < tol))
            .map(|(k, _)| k.as_str())
            .chain(
                self.lower_bounds
                    .iter()
                    .filter(|(_, b)| !(b.value > b.min))
                    .map(|(k, _)| k.as_str()),
            )
            .collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals
            .values()
            .fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(*v) })
    }

    /// Merge `other` under `prefix.`. Residuals are copied unchanged and the
    /// pass flags combine with `and`.
    pub fn absorb(&mut self, prefix: &str, other: &VerificationReport) {
        let key = |k: &str| format!("{prefix}.{k}");
        for (k, v) in &other.residuals {
            self.residuals.insert(key(k), *v);
        }
        for (k, v) in &other.lower_bounds {
            self.lower_bounds.insert(key(k), *v);
        }
        for (k, v) in &other.values {
            self.values.insert(key(k), *v);
        }
        for (k, v) in &other.points {
            self.points.insert(key(k), *v);
        }
        self.pass &= other.pass;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_requires_every_check() {
        let mut r = VerificationReport::new(2.0, 1e-9);
        r.length("a", 1e-9).raw("b", 0.0);
        assert!(r.pass);
        assert_eq!(r.residuals["a"], 5e-10);
        r.raw("c", f64::NAN);
        assert!(!r.pass);
        assert_eq!(r.failures(), vec!["c"]);

        let mut r = VerificationReport::new(1.0, 1e-9);
        r.lower_bound("probe", 0.5, 0.1);
        assert!(r.pass);
        r.lower_bound("probe2", 0.05, 0.1);
        assert!(!r.pass);
        assert_eq!(r.failures(), vec!["probe2"]);
    }
}
