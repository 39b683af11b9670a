//! Laurent polynomials in one variable `t` over arbitrary-precision integers.
//!
//! The text syntax is the one used everywhere in this crate: `2t^2-5t+2`,
//! `t^-1+1`, `-3t`, `0`.  [`LaurentPoly::to_string`] and the [`FromStr`]
//! parser round-trip exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A Laurent polynomial `sum c_e t^e` with integer coefficients.
///
/// Invariant: no stored coefficient is zero, so `Eq` and `Hash` are structural
/// equality of polynomials.  The degree of the zero polynomial is `None`
/// (a genuine "minus infinity" marker), never a sentinel integer.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("polynomial syntax error at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(c, 0)
    }

    /// The monomial `c t^e`.
    pub fn term<T: Into<BigInt>>(c: T, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// Builds `c_0 + c_1 t + c_2 t^2 + ...` from ascending coefficients.
    pub fn from_coeffs<T: Into<BigInt>>(cs: impl IntoIterator<Item = T>) -> Self {
        let mut p = Self::zero();
        for (e, c) in cs.into_iter().enumerate() {
            p.add_term(c.into(), e as i64);
        }
        p
    }

    fn add_term(&mut self, c: BigInt, e: i64) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent, or `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.degree().map(|d| self.coeff(d)).unwrap_or_else(BigInt::zero)
    }

    pub fn trailing_coeff(&self) -> BigInt {
        self.low_degree().map(|d| self.coeff(d)).unwrap_or_else(BigInt::zero)
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Multiplication by `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect();
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c)).collect();
        Self { coeffs }
    }

    pub fn scaled(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect();
        Self { coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.coeffs.iter() {
            out.add_term(c.clone(), *e);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.coeffs.iter() {
            out.add_term(-c, *e);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.coeffs.iter() {
            for (e2, c2) in rhs.coeffs.iter() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }

    /// `t -> 1/t`.
    pub fn reversed(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect();
        Self { coeffs }
    }

    /// True for `± t^k`, the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.leading_coeff().abs().is_one()
    }

    /// Evaluation at an integer point.  Only meaningful once negative
    /// exponents have been cleared; callers evaluate `normalize_unit`ed
    /// polynomials.
    ///
    /// # Panics
    ///
    /// Panics if the polynomial has a negative exponent.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in self.coeffs.iter() {
            assert!(*e >= 0, "eval requires nonnegative exponents; normalize first");
            acc += c * x.pow(*e as u32);
        }
        acc
    }

    /// Multiplies by the unique unit `± t^k` making the lowest exponent `0`
    /// and the leading coefficient positive.  Fixes `2t^2-5t+2`, maps `t^-1+1`
    /// to `t+1` and `-2t^2+5t-2` to `2t^2-5t+2`.  The zero polynomial is fixed.
    pub fn normalize_unit(&self) -> Self {
        let Some(low) = self.low_degree() else {
            return Self::zero();
        };
        let shifted = self.shifted(-low);
        if shifted.leading_coeff().is_negative() {
            shifted.neg()
        } else {
            shifted
        }
    }

    /// Whether `self` and `other` agree up to a unit `± t^k`.
    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        self.normalize_unit() == other.normalize_unit()
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Exact division in the Laurent ring.  Returns `None` when `divisor`
    /// does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Shift both to ordinary polynomials; the ambient units are restored
        // at the end.
        let a_low = self.low_degree().unwrap();
        let d_low = divisor.low_degree().unwrap();
        let mut rem = self.shifted(-a_low);
        let den = divisor.shifted(-d_low);
        let den_deg = den.degree().unwrap();
        let den_lead = den.leading_coeff();
        let mut quo = Self::zero();
        while let Some(rdeg) = rem.degree() {
            if rdeg < den_deg {
                return None;
            }
            let (q, r) = rem.leading_coeff().div_rem(&den_lead);
            if !r.is_zero() {
                return None;
            }
            let mono = Self::term(q, rdeg - den_deg);
            rem = rem.sub(&mono.mul(&den));
            quo = quo.add(&mono);
        }
        Some(quo.shifted(a_low - d_low))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Unit-normalized greatest common divisor.
    ///
    /// Both inputs are unit-normalized into `Z[t]`; the result is the gcd
    /// there (content times primitive gcd, Gauss's lemma), again
    /// unit-normalized.  `gcd(p, 0) = normalize_unit(p)`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_unit();
        }
        if other.is_zero() {
            return self.normalize_unit();
        }
        let a = self.normalize_unit();
        let b = other.normalize_unit();
        let content = a.content().gcd(&b.content());
        let pa = a.primitive_part();
        let pb = b.primitive_part();
        let pg = primitive_gcd(&pa, &pb);
        pg.scaled(&content).normalize_unit()
    }
}

/// Divides out the content; input must be nonzero.
impl LaurentPoly {
    fn primitive_part(&self) -> Self {
        let c = self.content();
        let coeffs = self.coeffs.iter().map(|(e, v)| (*e, v / &c)).collect();
        Self { coeffs }
    }
}

/// Gcd of two primitive polynomials in `Z[t]` via a primitive pseudo-remainder
/// sequence.  Inputs are nonzero and primitive; the result is primitive with
/// positive leading coefficient.
fn primitive_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_zero() { LaurentPoly::zero() } else { r.primitive_part() };
    }
    if a.leading_coeff().is_negative() {
        a = a.neg();
    }
    a
}

/// Pseudo-remainder of `a` by `b` (`deg a >= deg b`, `b` nonzero): the
/// remainder of `lc(b)^(deg a - deg b + 1) * a` under division by `b`, which
/// needs no coefficient division.
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let db = b.degree().unwrap();
    let lb = b.leading_coeff();
    let mut rem = a.clone();
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let lr = rem.leading_coeff();
        rem = rem.scaled(&lb).sub(&b.shifted(dr - db).scaled(&lr));
    }
    rem
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit_coeff = abs.is_one();
            match (*e, unit_coeff) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{abs}t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{abs}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut out = LaurentPoly::zero();
        let err = |pos: usize, msg: &str| ParsePolyError { pos, msg: msg.into() };

        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        // integer with optional sign
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            if *pos < bytes.len() && (bytes[*pos] == b'-' || bytes[*pos] == b'+') {
                *pos += 1;
            }
            let digits = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == digits {
                *pos = start;
                return None;
            }
            Some(BigInt::from_str(&s[start..*pos]).unwrap())
        };

        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(pos, "empty polynomial"));
        }
        let mut first = true;
        while pos < bytes.len() {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(err(pos, "expected '+' or '-' between terms"));
            }
            first = false;
            let coeff_digits = read_int(&mut pos);
            let mut exp: i64 = 0;
            let mut has_var = false;
            if pos < bytes.len() && bytes[pos] == b't' {
                has_var = true;
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let e = read_int(&mut pos).ok_or_else(|| err(pos, "expected exponent after '^'"))?;
                    exp = i64::try_from(&e).map_err(|_| err(pos, "exponent out of range"))?;
                }
            }
            if coeff_digits.is_none() && !has_var {
                return Err(err(pos, "expected coefficient or 't'"));
            }
            let coeff = coeff_digits.unwrap_or_else(BigInt::one);
            out.add_term(sign * coeff, exp);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_print_round_trip() {
        for s in [
            "2t^2-5t+2",
            "t^2-t+1",
            "t^2-3t+1",
            "t+1",
            "0",
            "1",
            "-1",
            "t^-1",
            "7-t^-1+3t^-2",
            "-2t^3+t",
            "t^10-1",
        ] {
            let q = p(s);
            assert_eq!(q.to_string(), s, "canonical form should reprint exactly");
            assert_eq!(p(&q.to_string()), q);
        }
    }

    #[test]
    fn parse_accepts_laurent_input() {
        assert_eq!(p("t^-1+1").to_string(), "1+t^-1");
        assert_eq!(p("1 + t"), p("t+1"));
        assert_eq!(p("t+t"), p("2t"));
        assert_eq!(p("2t^2+-0"), p("2t^2"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("2 2".parse::<LaurentPoly>().is_err());
        assert!("t^99999999999999999999".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn zero_degree_is_distinct_marker() {
        assert_eq!(LaurentPoly::zero().degree(), None);
        assert_eq!(LaurentPoly::constant(-1).degree(), Some(0));
        assert_eq!(p("t^-1").degree(), Some(-1));
    }

    #[test]
    fn normalize_unit_fixes_and_flips() {
        assert_eq!(p("2t^2-5t+2").normalize_unit(), p("2t^2-5t+2"));
        assert_eq!(p("t^-1+1").normalize_unit(), p("t+1"));
        assert_eq!(p("-2t^2+5t-2").normalize_unit(), p("2t^2-5t+2"));
        assert_eq!(p("-3t^5").normalize_unit(), p("3"));
        assert_eq!(LaurentPoly::zero().normalize_unit(), LaurentPoly::zero());
    }

    #[test]
    fn gcd_of_constructed_products() {
        // gcd((2t-1)(t-2), (2t-1)^2) built as explicit products.
        let f = p("2t-1");
        let g = p("t-2");
        let a = f.mul(&g);
        let b = f.mul(&f);
        assert_eq!(a.gcd(&b), f.normalize_unit());
        // coprime linear factors: neither divides the other
        assert!(!f.divides(&g));
        assert!(!g.divides(&f));
        assert_eq!(f.gcd(&g), LaurentPoly::one());
        // gcd with zero
        assert_eq!(p("-2t^3+t^2").gcd(&LaurentPoly::zero()), p("2t-1"));
    }

    #[test]
    fn gcd_divides_both() {
        let a = p("2t^2-5t+2").mul(&p("3t+1"));
        let b = p("2t^2-5t+2").mul(&p("t^4+t+1"));
        let g = a.gcd(&b);
        assert!(g.divides(&a));
        assert!(g.divides(&b));
        assert!(p("2t^2-5t+2").divides(&g));
    }

    #[test]
    fn exact_div_in_laurent_ring() {
        let a = p("2t^2-5t+2");
        assert_eq!(a.exact_div(&p("t-2")).unwrap(), p("2t-1"));
        // t^-1 - 2 = -t^-1 (2t - 1), so the quotient is -t(t-2)
        assert_eq!(a.exact_div(&p("t^-1-2")).unwrap(), p("-t^2+2t"));
        assert!(a.exact_div(&p("t-3")).is_none());
        assert!(p("t+1").exact_div(&p("2t+2")).is_none());
    }

    #[test]
    fn eval_and_symmetry() {
        let d = p("2t^2-5t+2");
        assert_eq!(d.eval(&BigInt::from(1)), BigInt::from(-1));
        assert_eq!(d.eval(&BigInt::from(-1)), BigInt::from(9));
        assert!(d.reversed().eq_up_to_unit(&d));
    }
}
