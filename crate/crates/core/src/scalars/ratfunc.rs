use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::{Field, Ring};

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x_pow(n: usize) -> Self {
        let mut v = vec![BigRational::zero(); n + 1];
        v[n] = BigRational::one();
        Poly { coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::default();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn add_ref(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = o.coeffs.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(v)
    }

    fn neg_ref(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul_poly(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::default(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::default(),
        }
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Element of the rational function field `Q(q)`, kept in lowest terms
/// with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.lead().unwrap().recip();
        RatFunc {
            num: n.scale(&l),
            den: d.scale(&l),
        }
    }

    pub fn q() -> Self {
        RatFunc {
            num: Poly::x_pow(1),
            den: Poly::constant(BigRational::one()),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::constant(BigRational::one()),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Value at a rational point, if the denominator does not vanish.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::default(),
            den: Poly::constant(BigRational::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::constant(BigRational::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        let mut s = self;
        s.add_assign_ref(&rhs);
        s
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        let mut s = self;
        s.sub_assign_ref(&rhs);
        s
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg_ref(),
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.mul_ref(&rhs)
    }
}

impl Ring for RatFunc {
    fn from_rational(r: &BigRational) -> Self {
        RatFunc::constant(r.clone())
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        if self.den == rhs.den {
            let n = self.num.add_ref(&rhs.num);
            *self = RatFunc::new(n, self.den.clone());
            return;
        }
        let n = self
            .num
            .mul_poly(&rhs.den)
            .add_ref(&rhs.num.mul_poly(&self.den));
        *self = RatFunc::new(n, self.den.mul_poly(&rhs.den));
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        let neg = -rhs.clone();
        self.add_assign_ref(&neg);
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_poly() && rhs.is_poly() {
            let n = self.num.mul_poly(&rhs.num);
            return RatFunc {
                num: n,
                den: Poly::constant(BigRational::one()),
            };
        }
        RatFunc::new(self.num.mul_poly(&rhs.num), self.den.mul_poly(&rhs.den))
    }
}

impl Field for RatFunc {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, ratio};

    #[test]
    fn lowest_terms() {
        let q = RatFunc::q();
        let one = RatFunc::one();
        // (q^2 - 1) / (q - 1) = q + 1
        let num = q.clone() * q.clone() - one.clone();
        let den = q.clone() - one.clone();
        let r = num * den.inverse();
        assert_eq!(r, q + one);
    }

    #[test]
    fn field_inverse() {
        let x = RatFunc::q() + RatFunc::constant(rat(3));
        assert_eq!(x.clone() * x.inverse(), RatFunc::one());
    }

    #[test]
    fn evaluates_like_rationals() {
        let q = RatFunc::q();
        let x = (q.clone() - q.inverse()) * (q.clone() + RatFunc::one()).inverse();
        let at = x.eval(&ratio(2, 1)).unwrap();
        assert_eq!(at, ratio(1, 2));
    }
}
