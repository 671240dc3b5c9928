use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Result, SeriesError};

/// An exact Gaussian rational `re + ı·im` with arbitrary-precision parts.
///
/// This is the coefficient field for every symbolic computation in the
/// workspace. All arithmetic is exact; conversion to `f64` happens only at
/// the numerical-phenomenology boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit ı.
    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    /// `−ı`.
    pub fn minus_i() -> Self {
        Scalar { re: BigRational::zero(), im: -BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// Real rational `num/den`. Panics if `den == 0` (programming error).
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// Imaginary rational `(num/den)·ı`.
    pub fn rational_i(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::zero(),
            im: BigRational::new(BigInt::from(num), BigInt::from(den)),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate (ı ↦ −ı).
    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(SeriesError::NotInvertible("zero scalar".into()));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(Scalar { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    /// Lossy conversion of the real part; `None` if the imaginary part is
    /// nonzero. Used only at the numerics boundary.
    pub fn to_f64_real(&self) -> Option<f64> {
        if !self.im.is_zero() {
            return None;
        }
        self.re.to_f64()
    }

    /// Parse a plain rational such as `-3/4`, `5`, or `0`.
    pub fn parse_rational(s: &str) -> Result<BigRational> {
        let t = s.trim();
        let bad = || SeriesError::Parse(format!("bad rational `{s}`"));
        match t.split_once('/') {
            None => {
                let n = BigInt::from_str(t).map_err(|_| bad())?;
                Ok(BigRational::from_integer(n))
            }
            Some((num, den)) => {
                let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(SeriesError::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(BigRational::new(n, d))
            }
        }
    }

    /// Canonical string for a plain rational: `p/q` reduced, or `p` when the
    /// denominator is one. Matches what [`Scalar::parse_rational`] accepts,
    /// bit-exactly.
    pub fn rational_string(r: &BigRational) -> String {
        r.to_string()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// Renders `0`, `1`, `-3/4`, `ı`, `-2/3*ı`, or `(a + b*ı)` for mixed
    /// values. Parenthesizing the mixed case keeps rendered terms unambiguous
    /// when a coefficient precedes a monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "ı");
            }
            if (-&self.im).is_one() {
                return write!(f, "-ı");
            }
            return write!(f, "{}*ı", self.im);
        }
        let (sign, mag) = if self.im.is_negative() {
            ("-", -self.im.clone())
        } else {
            ("+", self.im.clone())
        };
        if mag.is_one() {
            write!(f, "({} {} ı)", self.re, sign)
        } else {
            write!(f, "({} {} {}*ı)", self.re, sign, mag)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    #[test]
    fn field_basics() {
        let a = Scalar::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
        );
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn i_squares_to_minus_one() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        assert_eq!(i.conj(), Scalar::minus_i());
    }

    #[test]
    fn rational_round_trip() {
        for s in ["0", "1", "-3/4", "22/7", "-5"] {
            let r = Scalar::parse_rational(s).unwrap();
            assert_eq!(Scalar::rational_string(&r), s);
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(1, 2).to_string(), "1/2");
        assert_eq!(Scalar::i().to_string(), "ı");
        assert_eq!(Scalar::rational_i(-1, 2).to_string(), "-1/2*ı");
        let mixed = &q(1, 1) + &Scalar::rational_i(1, 3);
        assert_eq!(mixed.to_string(), "(1 + 1/3*ı)");
    }
}
