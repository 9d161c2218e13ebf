//! Exact coefficient arithmetic and parameter specialization.
//!
//! Parameters are `q`, `s`, `t` and `p`.  The sphere parameters are
//! carried polynomially: `mu = s^2`, `nu = t^2`, `sqrt(mu nu) = s t`.  The
//! reduced parameter `p` is independent at the symbolic level; random
//! specializations assign it the value `s t / (s^2 - t^2)`.

mod laurent;
mod ratfunc;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use laurent::{Exponents, Laurent};
pub use ratfunc::{Poly, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    Q,
    S,
    T,
    P,
}

impl Param {
    pub const COUNT: usize = 4;
    pub const ALL: [Param; 4] = [Param::Q, Param::S, Param::T, Param::P];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::Q => "q",
            Param::S => "s",
            Param::T => "t",
            Param::P => "p",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }

    pub(crate) fn unit_exponent(self, e: i32) -> Exponents {
        let mut ex = [0; Param::COUNT];
        ex[self.index()] = e;
        ex
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("no value assigned to parameter `{0}`")]
    MissingParameter(Param),
    #[error("parameter `{0}` specializes to zero but occurs with a negative exponent")]
    NotInvertible(Param),
}

/// Source of parameter values in a coefficient field `F`.
pub trait ParamValues<F> {
    fn value(&self, p: Param) -> Result<F, ScalarError>;
}

/// Assignment of nonzero rational values to parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Specialization {
    values: [Option<BigRational>; Param::COUNT],
}

impl Specialization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, v: BigRational) -> Self {
        self.values[p.index()] = Some(v);
        self
    }

    pub fn get(&self, p: Param) -> Option<&BigRational> {
        self.values[p.index()].as_ref()
    }

    /// Draws `q, s, t` with numerator and denominator in `[2, 97]`,
    /// rejecting `q = 1` and `s = t`, and sets `p = s t / (s^2 - t^2)`.
    pub fn sample(rng: &mut impl rand::Rng) -> Self {
        let draw = |rng: &mut dyn rand::RngCore| loop {
            let n: i64 = rng.gen_range(2..=97);
            let d: i64 = rng.gen_range(2..=97);
            if n != d {
                return BigRational::new(BigInt::from(n), BigInt::from(d));
            }
        };
        let q = draw(rng);
        let s = draw(rng);
        let t = loop {
            let t = draw(rng);
            if t != s {
                break t;
            }
        };
        let p = (&s * &t) / (&s * &s - &t * &t);
        Specialization::new()
            .with(Param::Q, q)
            .with(Param::S, s)
            .with(Param::T, t)
            .with(Param::P, p)
    }

    /// `count` specializations drawn from a generator seeded with `seed`.
    pub fn sample_many(seed: u64, count: usize) -> Vec<Self> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<Specialization> = Vec::with_capacity(count);
        while out.len() < count {
            let s = Self::sample(&mut rng);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    pub fn specialize(&self, a: &Laurent) -> Result<BigRational, ScalarError> {
        a.evaluate(self)
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in Param::ALL {
            if let Some(v) = self.get(p) {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{p}={v}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl ParamValues<BigRational> for Specialization {
    fn value(&self, p: Param) -> Result<BigRational, ScalarError> {
        self.get(p).cloned().ok_or(ScalarError::MissingParameter(p))
    }
}

/// Keeps `q` symbolic in `Q(q)` and takes the remaining parameters from a
/// rational specialization.
#[derive(Clone, Debug, Default)]
pub struct SymbolicQ {
    pub rest: Specialization,
}

impl ParamValues<RatFunc> for SymbolicQ {
    fn value(&self, p: Param) -> Result<RatFunc, ScalarError> {
        match p {
            Param::Q => Ok(RatFunc::q()),
            other => self
                .rest
                .value(other)
                .map(|v| RatFunc::constant(v)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use num_traits::One;
    use proptest::prelude::*;

    fn arb_laurent() -> impl Strategy<Value = Laurent> {
        prop::collection::vec(
            (
                prop::array::uniform4(-2i32..3),
                -5i64..6,
                1i64..4,
            ),
            0..5,
        )
        .prop_map(|terms| {
            let mut l = Laurent::default();
            for (e, n, d) in terms {
                l.add_term(e, BigRational::new(BigInt::from(n), BigInt::from(d)));
            }
            l
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * Laurent::one(), a.clone());
            prop_assert_eq!(a.clone() - a.clone(), Laurent::default());
            for (_, c) in a.terms() {
                prop_assert!(*c != BigRational::from_integer(0.into()));
            }
        }

        #[test]
        fn specialization_is_homomorphism(a in arb_laurent(), b in arb_laurent(), seed in 0u64..1000) {
            let spec = &Specialization::sample_many(seed, 1)[0];
            let ea = spec.specialize(&a).unwrap();
            let eb = spec.specialize(&b).unwrap();
            prop_assert_eq!(spec.specialize(&a.mul_ref(&b)).unwrap(), &ea * &eb);
            prop_assert_eq!(spec.specialize(&(a.clone() + b.clone())).unwrap(), &ea + &eb);
        }
    }

    #[test]
    fn samples_avoid_degenerate_q_and_satisfy_p_relation() {
        for s in Specialization::sample_many(42, 10) {
            let q = s.get(Param::Q).unwrap();
            assert!(!q.is_one() && *q != -BigRational::one());
            let (sv, tv, pv) = (
                s.get(Param::S).unwrap(),
                s.get(Param::T).unwrap(),
                s.get(Param::P).unwrap(),
            );
            assert_eq!(pv * (sv * sv - tv * tv), sv * tv);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(
            Specialization::sample_many(7, 3),
            Specialization::sample_many(7, 3)
        );
    }
}
