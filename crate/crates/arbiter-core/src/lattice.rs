//! Exact lattice scalars: integer combinations of at most two real generators.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coefficients over the generators (a, b). Unused slots stay zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Lin(pub [i64; 2]);

impl Lin {
    pub const ZERO: Lin = Lin([0, 0]);
    pub const A: Lin = Lin([1, 0]);
    pub const B: Lin = Lin([0, 1]);

    pub const fn new(a: i64, b: i64) -> Self {
        Lin([a, b])
    }

    pub fn is_zero(self) -> bool {
        self.0 == [0, 0]
    }

    pub fn a(self) -> i64 {
        self.0[0]
    }

    pub fn b(self) -> i64 {
        self.0[1]
    }

    /// Σ wᵢ·xᵢ for a small integer weight row.
    pub fn dot<const N: usize>(w: &[i8; N], xs: &[Lin; N]) -> Lin {
        let mut acc = Lin::ZERO;
        for (wi, xi) in w.iter().zip(xs) {
            acc += *xi * (*wi as i64);
        }
        acc
    }

    pub fn dot_i64<const N: usize>(w: &[i64; N], xs: &[Lin; N]) -> Lin {
        let mut acc = Lin::ZERO;
        for (wi, xi) in w.iter().zip(xs) {
            acc += *xi * *wi;
        }
        acc
    }
}

impl Add for Lin {
    type Output = Lin;
    fn add(self, o: Lin) -> Lin {
        Lin([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl AddAssign for Lin {
    fn add_assign(&mut self, o: Lin) {
        *self = *self + o;
    }
}

impl Sub for Lin {
    type Output = Lin;
    fn sub(self, o: Lin) -> Lin {
        Lin([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

impl Neg for Lin {
    type Output = Lin;
    fn neg(self) -> Lin {
        Lin([-self.0[0], -self.0[1]])
    }
}

impl Mul<i64> for Lin {
    type Output = Lin;
    fn mul(self, k: i64) -> Lin {
        Lin([self.0[0] * k, self.0[1] * k])
    }
}

impl std::fmt::Display for Lin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b] = self.0;
        let term = |c: i64, s: &str| match c {
            1 => s.to_string(),
            -1 => format!("-{s}"),
            c => format!("{c}{s}"),
        };
        match (a, b) {
            (0, 0) => write!(f, "0"),
            (a, 0) => write!(f, "{}", term(a, "a")),
            (0, b) => write!(f, "{}", term(b, "b")),
            (a, b) if b > 0 => write!(f, "{}+{}", term(a, "a"), term(b, "b")),
            (a, b) => write!(f, "{}{}", term(a, "a"), term(b, "b")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub value: f64,
}

/// Generators plus the balanced base the lattice is anchored at.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorBasis {
    pub generators: Vec<Generator>,
    /// l₁, l₂, l₃ of the base; l₄..l₆ follow from balance.
    pub base: [f64; 3],
}

/// Relative threshold below which a two-generator combination is treated as
/// an exact numeric zero (rationally related generators).
const COLLAPSE_TOL: f64 = 1e-12;

impl GeneratorBasis {
    pub fn new(generators: Vec<Generator>, base: [f64; 3]) -> Result<Self> {
        if generators.is_empty() || generators.len() > 2 {
            return Err(Error::Domain(format!(
                "expected 1 or 2 generators, got {}",
                generators.len()
            )));
        }
        for g in &generators {
            if !(g.value.is_finite() && g.value != 0.0) {
                return Err(Error::Domain(format!("generator {} must be finite and nonzero", g.name)));
            }
        }
        if base.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("base log-rates must be finite".into()));
        }
        Ok(GeneratorBasis { generators, base })
    }

    /// Single generator a = log α over the given base.
    pub fn single(alpha_log: f64, base: [f64; 3]) -> Result<Self> {
        Self::new(vec![Generator { name: "a".into(), value: alpha_log }], base)
    }

    pub fn pair(a: f64, b: f64, base: [f64; 3]) -> Result<Self> {
        Self::new(
            vec![Generator { name: "a".into(), value: a }, Generator { name: "b".into(), value: b }],
            base,
        )
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn g(&self, k: usize) -> f64 {
        self.generators.get(k).map_or(0.0, |g| g.value)
    }

    pub fn value(&self, x: Lin) -> f64 {
        x.0[0] as f64 * self.g(0) + x.0[1] as f64 * self.g(1)
    }

    /// Exact sign for one generator; numeric with a collapse guard for two.
    pub fn sign(&self, x: Lin) -> i8 {
        if x.is_zero() {
            return 0;
        }
        if self.rank() == 1 || x.0[1] == 0 {
            return (x.0[0].signum() as f64 * self.g(0).signum()) as i8;
        }
        if x.0[0] == 0 {
            return (x.0[1].signum() as f64 * self.g(1).signum()) as i8;
        }
        let (p, q) = (x.0[0] as f64 * self.g(0), x.0[1] as f64 * self.g(1));
        let v = p + q;
        if v.abs() <= COLLAPSE_TOL * (p.abs() + q.abs()) {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn full_base(&self) -> [f64; 6] {
        let [b1, b2, b3] = self.base;
        [b1, b2, b3, b2 - b1, b3 - b1, b3 - b2]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_single_generator_follows_generator_sign() {
        let pos = GeneratorBasis::single(2f64.ln(), [0.0; 3]).unwrap();
        let neg = GeneratorBasis::single(-2f64.ln(), [0.0; 3]).unwrap();
        assert_eq!(pos.sign(Lin::new(3, 0)), 1);
        assert_eq!(neg.sign(Lin::new(3, 0)), -1);
        assert_eq!(pos.sign(Lin::ZERO), 0);
    }

    #[test]
    fn sign_two_generators_detects_collapse() {
        let b = GeneratorBasis::pair(1.0, 2.0, [0.0; 3]).unwrap();
        assert_eq!(b.sign(Lin::new(2, -1)), 0);
        let irr = GeneratorBasis::pair(1.0, 2f64.sqrt(), [0.0; 3]).unwrap();
        assert_eq!(irr.sign(Lin::new(-1, 1)), 1);
        assert_eq!(irr.sign(Lin::new(-3, 2)), -1);
    }

    #[test]
    fn zero_generator_rejected() {
        assert!(GeneratorBasis::single(0.0, [0.0; 3]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Lin::new(-1, 1).to_string(), "-a+b");
        assert_eq!(Lin::new(1, -1).to_string(), "a-b");
        assert_eq!(Lin::new(0, 0).to_string(), "0");
    }
}
