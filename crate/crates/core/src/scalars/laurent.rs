use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Param, ParamValues, ScalarError};
use crate::ring::{Field, Ring};

/// Exponent vector, one slot per [`Param`] in `Param::ALL` order.
pub type Exponents = [i32; Param::COUNT];

/// Multivariate Laurent polynomial over the rationals in `q, s, t, p`.
///
/// Terms with zero coefficient are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<Exponents, BigRational>,
}

impl Laurent {
    pub fn constant(c: BigRational) -> Self {
        let mut l = Laurent::default();
        l.add_term([0; Param::COUNT], c);
        l
    }

    /// The parameter itself, as a polynomial.
    pub fn param(p: Param) -> Self {
        Self::monomial(p.unit_exponent(1), BigRational::one())
    }

    /// `c * param^e` for a single parameter.
    pub fn param_pow(p: Param, e: i32) -> Self {
        Self::monomial(p.unit_exponent(e), BigRational::one())
    }

    pub fn monomial(exps: Exponents, c: BigRational) -> Self {
        let mut l = Laurent::default();
        l.add_term(exps, c);
        l
    }

    pub fn q() -> Self {
        Self::param(Param::Q)
    }

    pub fn add_term(&mut self, exps: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Parameters with a nonzero exponent in some term.
    pub fn params(&self) -> Vec<Param> {
        Param::ALL
            .into_iter()
            .filter(|p| self.terms.keys().any(|e| e[p.index()] != 0))
            .collect()
    }

    /// The rational value if this is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self
                .terms
                .get(&[0; Param::COUNT])
                .cloned(),
            _ => None,
        }
    }

    /// Exponent range of one parameter across all terms.
    pub fn degree_range(&self, p: Param) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[p.index()]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Evaluates at the given parameter values.  This is a ring
    /// homomorphism `Laurent -> F`.
    pub fn evaluate<F: Field>(&self, values: &impl ParamValues<F>) -> Result<F, ScalarError> {
        let mut acc = F::zero();
        let mut cache: [Option<F>; Param::COUNT] = Default::default();
        for (exps, c) in &self.terms {
            let mut term = F::from_rational(c);
            for p in Param::ALL {
                let e = exps[p.index()];
                if e == 0 {
                    continue;
                }
                if cache[p.index()].is_none() {
                    cache[p.index()] = Some(values.value(p)?);
                }
                let v = cache[p.index()].as_ref().unwrap();
                let pw = v.pow_i(e as i64).ok_or(ScalarError::NotInvertible(p))?;
                term = term.mul_ref(&pw);
            }
            acc.add_assign_ref(&term);
        }
        Ok(acc)
    }

    /// Replaces a parameter by another Laurent polynomial (positive
    /// exponents only for non-unit substitutes).
    pub fn substitute(&self, p: Param, value: &Laurent) -> Option<Laurent> {
        let mut out = Laurent::zero();
        for (exps, c) in &self.terms {
            let e = exps[p.index()];
            let mut rest = *exps;
            rest[p.index()] = 0;
            let pw = value.pow_i(e as i64)?;
            out = out + Laurent::monomial(rest, c.clone()) * pw;
        }
        Some(out)
    }

    fn scale_monomial(&self, exps: &Exponents, c: &BigRational) -> Laurent {
        let mut out = Laurent::default();
        for (e, v) in &self.terms {
            let mut ne = *e;
            for i in 0..Param::COUNT {
                ne[i] += exps[i];
            }
            out.terms.insert(ne, v * c);
        }
        out
    }

    /// Exact quotient `self / divisor` when `divisor` is a unit (single
    /// term).
    pub fn div_unit(&self, divisor: &Laurent) -> Option<Laurent> {
        let inv = divisor.try_inverse()?;
        Some(self.mul_ref(&inv))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &Exponents) -> Result<bool, fmt::Error> {
    let mut wrote = false;
    for p in Param::ALL {
        let e = exps[p.index()];
        if e == 0 {
            continue;
        }
        if wrote {
            write!(f, "*")?;
        }
        if e == 1 {
            write!(f, "{}", p.name())?;
        } else {
            write!(f, "{}^{}", p.name(), e)?;
        }
        wrote = true;
    }
    Ok(wrote)
}

/// Canonical rendering: terms in descending exponent-vector order,
/// e.g. `q - q^-1`, `3/2*s*t`, `-1`.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = exps.iter().all(|&e| e == 0);
            if is_const {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, exps)?;
            }
        }
        Ok(())
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::constant(BigRational::one())
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(mut self, rhs: Laurent) -> Laurent {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        self.mul_ref(&rhs)
    }
}

impl Ring for Laurent {
    fn from_rational(r: &BigRational) -> Self {
        Laurent::constant(r.clone())
    }

    /// Units of a Laurent ring are the nonzero single-term elements.
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (exps, c) = self.terms.iter().next().unwrap();
        let mut inv = [0; Param::COUNT];
        for i in 0..Param::COUNT {
            inv[i] = -exps[i];
        }
        Some(Laurent::monomial(inv, c.recip()))
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Laurent::default();
        for (e, c) in &small.terms {
            let part = large.scale_monomial(e, c);
            out.add_assign_ref(&part);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ratio;
    use crate::scalars::Specialization;

    fn q() -> Laurent {
        Laurent::q()
    }
    fn qi() -> Laurent {
        Laurent::param_pow(Param::Q, -1)
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        assert_eq!(q() * qi(), Laurent::one());
    }

    #[test]
    fn cancellation_prunes_terms() {
        let a = q() - qi();
        assert_eq!(a + qi(), q());
    }

    #[test]
    fn st_squared_is_mu_nu() {
        let st = Laurent::param(Param::S) * Laurent::param(Param::T);
        let mu_nu = Laurent::param_pow(Param::S, 2) * Laurent::param_pow(Param::T, 2);
        assert_eq!(st.clone() * st, mu_nu);
        assert_eq!(mu_nu.num_terms(), 1);
    }

    #[test]
    fn evaluation_examples() {
        let spec = Specialization::new().with(Param::Q, ratio(2, 1));
        assert_eq!((q() - qi()).evaluate(&spec).unwrap(), ratio(3, 2));
        assert_eq!(Laurent::one().evaluate(&spec).unwrap(), ratio(1, 1));
        let spec = Specialization::new()
            .with(Param::Q, ratio(3, 1))
            .with(Param::P, ratio(1, 2));
        let pq = Laurent::param(Param::P) * q();
        assert_eq!(pq.evaluate(&spec).unwrap(), ratio(3, 2));
    }

    #[test]
    fn missing_parameter_is_named() {
        let spec = Specialization::new().with(Param::Q, ratio(2, 1));
        let err = Laurent::param(Param::S).evaluate(&spec).unwrap_err();
        assert_eq!(err, ScalarError::MissingParameter(Param::S));
    }

    #[test]
    fn rendering_is_canonical() {
        let a = q() - qi();
        assert_eq!(a.to_string(), "q - q^-1");
        let b = Laurent::one() - Laurent::param_pow(Param::Q, 2);
        assert_eq!(b.to_string(), "-q^2 + 1");
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn units_are_single_terms() {
        assert!((q() + Laurent::one()).try_inverse().is_none());
        let u = Laurent::monomial([2, -1, 0, 0], ratio(-3, 2));
        assert_eq!(u.clone() * u.try_inverse().unwrap(), Laurent::one());
    }
}
