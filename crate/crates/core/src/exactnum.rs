//! Exact arithmetic in the quadratic field Q(ξ).
//!
//! A [`XiSpec`] fixes the irrational ξ = p + q·√d. Values are [`XiReal`]s,
//! pairs `(a, b)` standing for `a + b·ξ` with rational coefficients. Since
//! ξ is irrational the pair is unique, so structural equality is value
//! equality. Additive operations never need the ambient ξ; ordering,
//! floor and multiplication do, and are therefore methods of [`XiSpec`].
//!
//! Signs are decided exactly: `a + b·ξ = r + s·√d` with `r = a + b·p` and
//! `s = b·q`, and the sign of `r + s·√d` follows from the signs of `r`, `s`
//! and a comparison of `r²` against `s²·d`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The irrational ξ = p + q·√d, with `d ≥ 2` squarefree and `q ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XiSpec {
    p: BigRational,
    q: BigRational,
    d: u64,
}

impl XiSpec {
    /// Builds ξ = p + q·√d. Square factors of `d` are moved into `q`, so
    /// `new(0, 1, 8)` is the same spec as `new(0, 2, 2)`.
    pub fn new(p: BigRational, q: BigRational, d: u64) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidXi("coefficient of sqrt(d) is zero".into()));
        }
        if d < 2 {
            return Err(Error::InvalidXi(format!("sqrt({d}) is rational")));
        }
        let (square, free) = split_square_factor(d);
        if free == 1 {
            return Err(Error::InvalidXi(format!("{d} is a perfect square")));
        }
        Ok(XiSpec {
            p,
            q: q * BigRational::from_integer(square.into()),
            d: free,
        })
    }

    /// ξ = √d.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    /// The golden ratio (1 + √5)/2.
    pub fn golden() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        Self::new(half.clone(), half, 5).expect("5 is squarefree")
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Rational and surd parts `(r, s)` with `u = r + s·√d`.
    pub fn surd_parts(&self, u: &XiReal) -> (BigRational, BigRational) {
        (&u.a + &u.b * &self.p, &u.b * &self.q)
    }

    /// Inverse of [`surd_parts`](Self::surd_parts).
    pub fn from_surd_parts(&self, r: &BigRational, s: &BigRational) -> XiReal {
        let b = s / &self.q;
        let a = r - &b * &self.p;
        XiReal { a, b }
    }

    pub fn sign(&self, u: &XiReal) -> Ordering {
        if u.b.is_zero() {
            return u.a.cmp(&BigRational::zero());
        }
        let (r, s) = self.surd_parts(u);
        surd_sign(&r, &s, self.d)
    }

    pub fn cmp(&self, u: &XiReal, v: &XiReal) -> Ordering {
        self.sign(&(u - v))
    }

    pub fn lt(&self, u: &XiReal, v: &XiReal) -> bool {
        self.cmp(u, v) == Ordering::Less
    }

    pub fn abs(&self, u: &XiReal) -> XiReal {
        if self.sign(u) == Ordering::Less {
            -u
        } else {
            u.clone()
        }
    }

    pub fn max(&self, u: XiReal, v: XiReal) -> XiReal {
        if self.cmp(&u, &v) == Ordering::Less {
            v
        } else {
            u
        }
    }

    pub fn floor(&self, u: &XiReal) -> BigInt {
        let (r, s) = self.surd_parts(u);
        if s.is_zero() {
            return r.floor().to_integer();
        }
        // floor(|s|·√d) = floor(sqrt(n/m)) = floor(isqrt(n·m) / m)
        let s2d = &s * &s * BigRational::from_integer(self.d.into());
        let (n, m) = (s2d.numer(), s2d.denom());
        let t = (n * m).sqrt().div_floor(m);
        // s·√d is irrational, so for s < 0 its floor is −t − 1
        let floor_surd = if s.is_positive() { t } else { -t - 1 };
        let mut g = r.floor().to_integer() + floor_surd;
        // g ≤ floor(u) ≤ g + 1
        while self.sign(&(u - &XiReal::from_integer(&g + 1))) != Ordering::Less {
            g += 1;
        }
        while self.sign(&(u - &XiReal::from_integer(g.clone()))) == Ordering::Less {
            g -= 1;
        }
        g
    }

    /// Splits `u = floor + frac` with `0 ≤ frac < 1`.
    pub fn fractional_part(&self, u: &XiReal) -> (XiReal, BigInt) {
        let f = self.floor(u);
        (u - &XiReal::from_integer(f.clone()), f)
    }

    /// `u mod 1` in `[0, 1)`.
    pub fn frac(&self, u: &XiReal) -> XiReal {
        self.fractional_part(u).0
    }

    pub fn mul(&self, u: &XiReal, v: &XiReal) -> XiReal {
        // ξ² = 2p·ξ + (q²d − p²)
        let sq_b = &u.b * &v.b;
        let two_p = &self.p + &self.p;
        let c0 = &self.q * &self.q * BigRational::from_integer(self.d.into()) - &self.p * &self.p;
        XiReal {
            a: &u.a * &v.a + &sq_b * c0,
            b: &u.a * &v.b + &u.b * &v.a + sq_b * two_p,
        }
    }

    /// Field norm `u·ū`, where ū replaces ξ by its conjugate 2p − ξ.
    pub fn norm(&self, u: &XiReal) -> BigRational {
        let conj = self.conjugate(u);
        let prod = self.mul(u, &conj);
        debug_assert!(prod.b.is_zero());
        prod.a
    }

    pub fn conjugate(&self, u: &XiReal) -> XiReal {
        XiReal {
            a: &u.a + &u.b * (&self.p + &self.p),
            b: -&u.b,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, u: &XiReal) -> Option<XiReal> {
        if u.is_zero() {
            return None;
        }
        let n = self.norm(u);
        Some(self.conjugate(u).scale(&n.recip()))
    }

    pub fn div(&self, u: &XiReal, v: &XiReal) -> Option<XiReal> {
        self.inv(v).map(|iv| self.mul(u, &iv))
    }

    /// Approximate value, for display and plotting only.
    pub fn to_f64(&self, u: &XiReal) -> f64 {
        let (r, s) = self.surd_parts(u);
        ratio_to_f64(&r) + ratio_to_f64(&s) * (self.d as f64).sqrt()
    }

    /// Decimal rendering truncated (towards zero) to `digits` fractional
    /// digits. Exact: the digits are produced by an exact floor.
    pub fn to_decimal(&self, u: &XiReal, digits: usize) -> String {
        let neg = self.sign(u) == Ordering::Less;
        let mag = if neg { -u } else { u.clone() };
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = self.floor(&mag.scale(&BigRational::from_integer(scale.clone())));
        let (int_part, frac_part) = scaled.div_rem(&scale);
        let mut out = String::new();
        if neg && !scaled.is_zero() {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            out.push('.');
            out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = digits));
        }
        out
    }

    /// ξ itself as a field element.
    pub fn xi(&self) -> XiReal {
        XiReal::xi()
    }

    /// `ξ mod 1`, the rotation step.
    pub fn step(&self) -> XiReal {
        self.frac(&XiReal::xi())
    }
}

impl fmt::Display for XiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.p.is_zero() {
            write!(f, "{}", self.p)?;
            if self.q.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.q == BigRational::one() {
            write!(f, "sqrt({})", self.d)
        } else if self.q == -BigRational::one() {
            write!(f, "-sqrt({})", self.d)
        } else {
            write!(f, "{}*sqrt({})", self.q, self.d)
        }
    }
}

impl FromStr for XiSpec {
    type Err = Error;

    /// Accepts `sqrt(2)`, `(1/2 + 1/2*sqrt(5))`, `xi = 3 - 2*sqrt(2)`.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        if cur.eat_word("xi") {
            cur.skip_ws();
            if !cur.eat('=') {
                return Err(Error::parse(cur.pos, "expected '=' after 'xi'"));
            }
        }
        let mut p = BigRational::zero();
        let mut q = BigRational::zero();
        let mut d: Option<u64> = None;
        let mut depth = 0usize;
        let mut first = true;
        loop {
            cur.skip_ws();
            while cur.eat('(') {
                depth += 1;
                cur.skip_ws();
            }
            let neg = match cur.sign_op(first)? {
                Some(neg) => neg,
                None => break,
            };
            first = false;
            cur.skip_ws();
            let term_pos = cur.pos;
            let coeff = if cur.peek_word("sqrt") {
                None
            } else {
                Some(cur.rational()?)
            };
            cur.skip_ws();
            let has_star = cur.eat('*');
            cur.skip_ws();
            if cur.eat_word("sqrt") {
                cur.skip_ws();
                if !cur.eat('(') {
                    return Err(Error::parse(cur.pos, "expected '(' after sqrt"));
                }
                cur.skip_ws();
                let radicand_pos = cur.pos;
                let radicand = cur.integer()?;
                let radicand = radicand
                    .to_u64()
                    .ok_or_else(|| Error::parse(radicand_pos, "radicand must be a positive integer"))?;
                cur.skip_ws();
                if !cur.eat(')') {
                    return Err(Error::parse(cur.pos, "expected ')'"));
                }
                match d {
                    Some(prev) if prev != radicand => {
                        return Err(Error::parse(radicand_pos, "mixed radicands"));
                    }
                    _ => d = Some(radicand),
                }
                let c = coeff.unwrap_or_else(BigRational::one);
                q += if neg { -c } else { c };
            } else {
                if has_star {
                    return Err(Error::parse(cur.pos, "expected sqrt(...) after '*'"));
                }
                let c = coeff.ok_or_else(|| Error::parse(term_pos, "expected a number"))?;
                p += if neg { -c } else { c };
            }
            cur.skip_ws();
            while depth > 0 && cur.eat(')') {
                depth -= 1;
                cur.skip_ws();
            }
        }
        if depth != 0 {
            return Err(Error::parse(cur.pos, "unbalanced parentheses"));
        }
        if !cur.at_end() {
            return Err(Error::parse(cur.pos, "unexpected character"));
        }
        let d = d.ok_or_else(|| Error::parse(0, "no sqrt(d) term"))?;
        XiSpec::new(p, q, d)
    }
}

/// The element `a + b·ξ` of Q(ξ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XiReal {
    a: BigRational,
    b: BigRational,
}

impl XiReal {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        XiReal { a, b }
    }

    pub fn zero() -> Self {
        XiReal {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    pub fn xi() -> Self {
        XiReal {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        XiReal {
            a: BigRational::from_integer(n.into()),
            b: BigRational::zero(),
        }
    }

    pub fn rational(r: BigRational) -> Self {
        XiReal {
            a: r,
            b: BigRational::zero(),
        }
    }

    /// `num/den + 0·ξ`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    /// `a + b·ξ` from small integers.
    pub fn ints(a: i64, b: i64) -> Self {
        XiReal {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> XiReal {
        XiReal {
            a: &self.a * c,
            b: &self.b * c,
        }
    }

    pub fn mul_int(&self, n: i64) -> XiReal {
        self.scale(&BigRational::from_integer(n.into()))
    }

    /// `Some(k)` when `self = k·ξ + m` for integers `k`, `m`.
    pub fn in_z_plus_zxi(&self) -> Option<BigInt> {
        self.z_plus_zxi_coords().map(|(k, _)| k)
    }

    /// `Some((k, m))` when `self = k·ξ + m` for integers `k`, `m`.
    pub fn z_plus_zxi_coords(&self) -> Option<(BigInt, BigInt)> {
        if self.a.is_integer() && self.b.is_integer() {
            Some((self.b.to_integer(), self.a.to_integer()))
        } else {
            None
        }
    }

    /// Least common denominator of both coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

impl fmt::Display for XiReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*xi", self.a, sep, self.b.abs())
    }
}

impl FromStr for XiReal {
    type Err = Error;

    /// Sums of terms `r`, `r*xi`, `xi` with `r` an integer, `p/q` or a
    /// finite decimal, e.g. `-1+1*xi`, `17/3-4*xi`, `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let v = cur.xi_real()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(Error::parse(cur.pos, "unexpected character"));
        }
        Ok(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&XiReal> for &XiReal {
            type Output = XiReal;
            fn $m(self, o: &XiReal) -> XiReal {
                XiReal {
                    a: (&self.a).$m(&o.a),
                    b: (&self.b).$m(&o.b),
                }
            }
        }
        impl $tr<XiReal> for XiReal {
            type Output = XiReal;
            fn $m(self, o: XiReal) -> XiReal {
                (&self).$m(&o)
            }
        }
        impl $tr<&XiReal> for XiReal {
            type Output = XiReal;
            fn $m(self, o: &XiReal) -> XiReal {
                (&self).$m(o)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);

impl Neg for &XiReal {
    type Output = XiReal;
    fn neg(self) -> XiReal {
        XiReal {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for XiReal {
    type Output = XiReal;
    fn neg(self) -> XiReal {
        -&self
    }
}

/// Sign of `r + s·√d` for non-square `d`.
fn surd_sign(r: &BigRational, s: &BigRational, d: u64) -> Ordering {
    let zero = BigRational::zero();
    let sr = r.cmp(&zero);
    let ss = s.cmp(&zero);
    match (sr, ss) {
        (o, Ordering::Equal) | (Ordering::Equal, o) => o,
        (a, b) if a == b => a,
        (a, _) => {
            let r2 = r * r;
            let s2d = s * s * BigRational::from_integer(d.into());
            match r2.cmp(&s2d) {
                Ordering::Greater => a,
                Ordering::Less => a.reverse(),
                Ordering::Equal => unreachable!("d is not a perfect square"),
            }
        }
    }
}

/// `d = square² · free` with `free` squarefree.
fn split_square_factor(mut d: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut f = 2u64;
    while f.saturating_mul(f) <= d {
        while d.is_multiple_of(f * f) {
            d /= f * f;
            square *= f;
        }
        f += 1;
    }
    (square, d)
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Character cursor shared by the textual parsers of this crate.
pub(crate) struct Cursor {
    chars: Vec<char>,
    pub(crate) pos: usize,
}

impl Cursor {
    pub(crate) fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn peek_word(&self, w: &str) -> bool {
        let n = w.chars().count();
        self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(w.chars())
    }

    pub(crate) fn eat_word(&mut self, w: &str) -> bool {
        if self.peek_word(w) {
            self.pos += w.chars().count();
            true
        } else {
            false
        }
    }

    /// Leading `+`/`-` of a term. `Some(true)` means negative; `None`
    /// means the input has no further term.
    fn sign_op(&mut self, first: bool) -> Result<Option<bool>> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Ok(Some(false))
            }
            Some('-') => {
                self.pos += 1;
                Ok(Some(true))
            }
            Some(c) if first && (c.is_ascii_digit() || c == 'x' || c == 's' || c == '.') => Ok(Some(false)),
            _ if first => Err(Error::parse(self.pos, "expected a term")),
            _ => Ok(None),
        }
    }

    pub(crate) fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    /// Unsigned rational: `n`, `n/m` or `n.ddd`.
    pub(crate) fn rational(&mut self) -> Result<BigRational> {
        let int = if self.peek() == Some('.') {
            BigInt::zero()
        } else {
            self.integer()?
        };
        if self.eat('.') {
            let fstart = self.pos;
            let frac = self.integer()?;
            let scale = num_traits::pow(BigInt::from(10), self.pos - fstart);
            return Ok(BigRational::new(int * &scale + frac, scale));
        }
        self.skip_ws();
        if self.eat('/') {
            self.skip_ws();
            let den_pos = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::parse(den_pos, "zero denominator"));
            }
            return Ok(BigRational::new(int, den));
        }
        Ok(BigRational::from_integer(int))
    }

    /// A full `a + b*xi` expression, stopping at the first character that
    /// cannot continue it.
    pub(crate) fn xi_real(&mut self) -> Result<XiReal> {
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let neg = match self.sign_op(first)? {
                Some(neg) => neg,
                None => break,
            };
            first = false;
            self.skip_ws();
            let term_pos = self.pos;
            let (coeff, is_xi) = if self.eat_word("xi") {
                (BigRational::one(), true)
            } else {
                if !self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    return Err(Error::parse(term_pos, "expected a number or 'xi'"));
                }
                let c = self.rational()?;
                let save = self.pos;
                self.skip_ws();
                if self.eat('*') {
                    self.skip_ws();
                    if !self.eat_word("xi") {
                        return Err(Error::parse(self.pos, "expected 'xi' after '*'"));
                    }
                    (c, true)
                } else {
                    self.pos = save;
                    (c, false)
                }
            };
            let coeff = if neg { -coeff } else { coeff };
            if is_xi {
                b += coeff;
            } else {
                a += coeff;
            }
        }
        Ok(XiReal { a, b })
    }
}

impl Serialize for XiReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for XiSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> XiSpec {
        XiSpec::sqrt(2).unwrap()
    }

    fn xr(s: &str) -> XiReal {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(XiReal::ints(1, 0) + XiReal::ints(0, 1), XiReal::ints(1, 1));
        let u = xr("17/3-4*xi");
        assert_eq!(&u + &XiReal::zero(), u);
        assert!((XiReal::ints(-1, 1) + XiReal::ints(1, -1)).is_zero());
    }

    #[test]
    fn sign_examples() {
        let xi = sqrt2();
        assert_eq!(xi.sign(&XiReal::zero()), Ordering::Equal);
        assert_eq!(xi.sign(&XiReal::ints(-1, 1)), Ordering::Greater);
        assert_eq!(xi.sign(&XiReal::ints(3, -2)), Ordering::Greater);
        assert_eq!(xi.sign(&XiReal::ints(-3, 2)), Ordering::Less);
        assert_eq!(xi.sign(&XiReal::ints(2, -2)), Ordering::Less);
    }

    #[test]
    fn fractional_part_examples() {
        let xi = sqrt2();
        assert_eq!(xi.fractional_part(&XiReal::ints(0, 3)), (XiReal::ints(-4, 3), BigInt::from(4)));
        assert_eq!(xi.fractional_part(&XiReal::ratio(1, 2)), (XiReal::ratio(1, 2), BigInt::from(0)));
        assert_eq!(xi.fractional_part(&XiReal::ratio(-1, 3)), (XiReal::ratio(2, 3), BigInt::from(-1)));
        // negative surd coefficient
        assert_eq!(xi.floor(&XiReal::ints(0, -3)), BigInt::from(-5));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(XiReal::ints(-1, 1).in_z_plus_zxi(), Some(BigInt::from(1)));
        assert_eq!(XiReal::ratio(1, 2).in_z_plus_zxi(), None);
        assert_eq!(xr("17/3-4*xi").in_z_plus_zxi(), None);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(xr("-1+1*xi"), XiReal::ints(-1, 1));
        assert_eq!(xr(" 17/3 - 4*xi "), XiReal::new(BigRational::new(17.into(), 3.into()), BigRational::from_integer((-4).into())));
        assert_eq!(xr("xi"), XiReal::xi());
        assert_eq!(xr("-xi+0.25"), XiReal::new(BigRational::new(1.into(), 4.into()), BigRational::from_integer((-1).into())));
        assert_eq!(XiReal::ints(-1, 1).to_string(), "-1+1*xi");
        assert_eq!(xr("17/3-4*xi").to_string(), "17/3-4*xi");
        assert_eq!(XiReal::ratio(1, 2).to_string(), "1/2+0*xi");
    }

    #[test]
    fn parse_errors_are_positioned() {
        let err = "1+2*x".parse::<XiReal>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 4, .. }), "{err:?}");
        let err = "1/0".parse::<XiReal>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 2, .. }), "{err:?}");
        assert!("".parse::<XiReal>().is_err());
        assert!("1 2".parse::<XiReal>().is_err());
    }

    #[test]
    fn xi_spec_parsing() {
        assert_eq!("sqrt(2)".parse::<XiSpec>().unwrap(), sqrt2());
        assert_eq!("xi = (0 + 1*sqrt(2))".parse::<XiSpec>().unwrap(), sqrt2());
        assert_eq!("(1/2 + 1/2*sqrt(5))".parse::<XiSpec>().unwrap(), XiSpec::golden());
        assert_eq!("sqrt(8)".parse::<XiSpec>().unwrap(), XiSpec::new(BigRational::zero(), BigRational::from_integer(2.into()), 2).unwrap());
        assert!("sqrt(4)".parse::<XiSpec>().is_err());
        assert!("1/2".parse::<XiSpec>().is_err());
        assert!("sqrt(2)+sqrt(3)".parse::<XiSpec>().is_err());
        let g = XiSpec::golden();
        assert_eq!(g.to_string(), "1/2+1/2*sqrt(5)");
        assert_eq!(g.to_string().parse::<XiSpec>().unwrap(), g);
    }

    #[test]
    fn field_operations() {
        let xi = sqrt2();
        // ξ² = 2 for ξ = √2
        assert_eq!(xi.mul(&XiReal::xi(), &XiReal::xi()), XiReal::ints(2, 0));
        let u = XiReal::ints(3, -2);
        let inv = xi.inv(&u).unwrap();
        assert_eq!(xi.mul(&u, &inv), XiReal::one());
        let g = XiSpec::golden();
        // φ² = φ + 1
        assert_eq!(g.mul(&XiReal::xi(), &XiReal::xi()), XiReal::ints(1, 1));
        assert_eq!(g.norm(&XiReal::xi()), -BigRational::one());
    }

    #[test]
    fn decimal_rendering() {
        let xi = sqrt2();
        assert_eq!(xi.to_decimal(&XiReal::xi(), 30), "1.414213562373095048801688724209");
        assert_eq!(xi.to_decimal(&XiReal::ints(1, -1), 5), "-0.41421");
        assert_eq!(xi.to_decimal(&XiReal::ratio(-1, 3), 3), "-0.333");
        assert_eq!(xi.to_decimal(&XiReal::zero(), 2), "0.00");
    }
}
