//! Fixed-denominator integer arithmetic for hot loops.
//!
//! Every value taking part in a scan is written over one common
//! denominator `m` as `(r + s·√d) / m` with integer `r`, `s`. Additions are
//! then integer additions and signs need two squarings, with no gcd work.
//! Scans run on `i128` with checked operations; when a checked operation
//! overflows, the whole scan is repeated on `BigInt`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactnum::{XiReal, XiSpec};

pub(crate) trait KInt: Clone + Ord + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigInt;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn isqrt(&self) -> Self;
    fn div_floor(&self, o: &Self) -> Self;
}

impl KInt for i128 {
    #[inline]
    fn zero() -> Self {
        0
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    #[inline]
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    #[inline]
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    #[inline]
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    #[inline]
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn isqrt(&self) -> Self {
        (*self as u128).sqrt() as i128
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
}

impl KInt for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
}

/// `(r + s·√d) / m` for the frame's implicit `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Surd<T> {
    pub r: T,
    pub s: T,
}

impl<T: KInt> Surd<T> {
    pub fn zero() -> Self {
        Surd {
            r: T::zero(),
            s: T::zero(),
        }
    }

    #[inline]
    pub fn add(&self, o: &Self) -> Option<Self> {
        Some(Surd {
            r: self.r.add(&o.r)?,
            s: self.s.add(&o.s)?,
        })
    }

    #[inline]
    pub fn sub(&self, o: &Self) -> Option<Self> {
        Some(Surd {
            r: self.r.sub(&o.r)?,
            s: self.s.sub(&o.s)?,
        })
    }

    pub fn mul_int(&self, n: &T) -> Option<Self> {
        Some(Surd {
            r: self.r.mul(n)?,
            s: self.s.mul(n)?,
        })
    }
}

/// Common denominator and radicand for a family of values, in BigInt form.
#[derive(Clone, Debug)]
pub(crate) struct FrameSpec {
    xi: XiSpec,
    m: BigInt,
}

impl FrameSpec {
    /// Frame in which every value of `values`, as well as every integer,
    /// embeds exactly.
    pub fn new<'a>(xi: &XiSpec, values: impl IntoIterator<Item = &'a XiReal>) -> Self {
        let mut m = BigInt::one();
        for v in values {
            let (r, s) = xi.surd_parts(v);
            m = m.lcm(r.denom()).lcm(s.denom());
        }
        FrameSpec { xi: xi.clone(), m }
    }

    /// Embeds `v`; panics if `v` was not accounted for in the frame.
    pub fn embed_big(&self, v: &XiReal) -> (BigInt, BigInt) {
        let (r, s) = self.xi.surd_parts(v);
        let scale = BigRational::from_integer(self.m.clone());
        let (r, s) = (r * &scale, s * scale);
        assert!(r.is_integer() && s.is_integer(), "value not representable in frame");
        (r.to_integer(), s.to_integer())
    }

    pub fn embed<T: KInt>(&self, v: &XiReal) -> Option<Surd<T>> {
        let (r, s) = self.embed_big(v);
        Some(Surd {
            r: T::from_big(&r)?,
            s: T::from_big(&s)?,
        })
    }

    pub fn lift<T: KInt>(&self, v: &Surd<T>) -> XiReal {
        let m = BigRational::from_integer(self.m.clone());
        let r = BigRational::from_integer(v.r.to_big()) / &m;
        let s = BigRational::from_integer(v.s.to_big()) / m;
        self.xi.from_surd_parts(&r, &s)
    }

    pub fn frame<T: KInt>(&self) -> Option<Frame<T>> {
        Some(Frame {
            m: T::from_big(&self.m)?,
            d: T::from_i64(self.xi.d() as i64),
        })
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Frame<T> {
    pub m: T,
    pub d: T,
}

impl<T: KInt> Frame<T> {
    /// The integer `n` as a surd.
    pub fn int(&self, n: i64) -> Option<Surd<T>> {
        Some(Surd {
            r: self.m.mul(&T::from_i64(n))?,
            s: T::zero(),
        })
    }

    /// Sign of the value; `None` on overflow.
    #[inline]
    pub fn sign(&self, x: &Surd<T>) -> Option<Ordering> {
        let zero = T::zero();
        let sr = x.r.cmp(&zero);
        let ss = x.s.cmp(&zero);
        Some(match (sr, ss) {
            (o, Ordering::Equal) | (Ordering::Equal, o) => o,
            (a, b) if a == b => a,
            (a, _) => {
                let r2 = x.r.mul(&x.r)?;
                let s2d = x.s.mul(&x.s)?.mul(&self.d)?;
                match r2.cmp(&s2d) {
                    Ordering::Greater => a,
                    Ordering::Less => a.reverse(),
                    Ordering::Equal => unreachable!("d is not a perfect square"),
                }
            }
        })
    }

    #[inline]
    pub fn cmp(&self, x: &Surd<T>, y: &Surd<T>) -> Option<Ordering> {
        self.sign(&x.sub(y)?)
    }

    /// `floor(x)` computed directly with an integer square root.
    pub fn floor(&self, x: &Surd<T>) -> Option<T> {
        let zero = T::zero();
        let floor_surd = match x.s.cmp(&zero) {
            Ordering::Equal => zero.clone(),
            o => {
                let t = x.s.mul(&x.s)?.mul(&self.d)?.isqrt();
                if o == Ordering::Greater {
                    t
                } else {
                    t.neg()?.sub(&T::from_i64(1))?
                }
            }
        };
        // (r + floor(s√d)) / m ≤ x < (r + floor(s√d) + 1) / m
        let mut g = x.r.add(&floor_surd)?.div_floor(&self.m);
        let one = T::from_i64(1);
        loop {
            let next = g.add(&one)?;
            let probe = Surd {
                r: next.mul(&self.m)?,
                s: T::zero(),
            };
            if self.cmp(x, &probe)? == Ordering::Less {
                break;
            }
            g = next;
        }
        Some(g)
    }
}

/// Runs `f` on `i128`, falling back to `BigInt` when it overflows.
macro_rules! with_kint {
    ($f:ident ( $($arg:expr),* $(,)? )) => {
        match $f::<i128>($($arg),*) {
            Some(v) => v,
            None => $f::<num_bigint::BigInt>($($arg),*).expect("BigInt kernel cannot overflow"),
        }
    };
}
pub(crate) use with_kint;

#[cfg(test)]
mod tests {
    use super::*;

    fn check_frame<T: KInt>(xi: &XiSpec, vals: &[XiReal]) -> Option<()> {
        let fs = FrameSpec::new(xi, vals.iter());
        let fr = fs.frame::<T>()?;
        for u in vals {
            let su = fs.embed::<T>(u)?;
            assert_eq!(fs.lift(&su), *u);
            assert_eq!(fr.sign(&su)?, xi.sign(u));
            assert_eq!(fr.floor(&su)?.to_big(), xi.floor(u));
            for v in vals {
                let sv = fs.embed::<T>(v)?;
                assert_eq!(fr.cmp(&su, &sv)?, xi.cmp(u, v));
            }
        }
        Some(())
    }

    #[test]
    fn kernel_agrees_with_exact_arithmetic() {
        let xi = XiSpec::golden();
        let vals: Vec<XiReal> = ["0", "1/2", "-1+1*xi", "3-2*xi", "17/3-4*xi", "-7/5+3/4*xi", "100*xi", "-100*xi"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        check_frame::<i128>(&xi, &vals).unwrap();
        check_frame::<BigInt>(&xi, &vals).unwrap();
    }

    #[test]
    fn i128_overflow_is_reported() {
        let xi = XiSpec::sqrt(2).unwrap();
        let big = XiReal::new(BigRational::zero(), BigRational::from_integer(BigInt::from(1u64 << 63)));
        let fs = FrameSpec::new(&xi, [&big]);
        let fr = fs.frame::<i128>().unwrap();
        let s = fs.embed::<i128>(&(&big - &XiReal::from_integer(BigInt::from(1u64 << 63)))).unwrap();
        assert_eq!(fr.sign(&s), None);
        let fr = fs.frame::<BigInt>().unwrap();
        let s = fs.embed::<BigInt>(&(&big - &XiReal::from_integer(BigInt::from(1u64 << 63)))).unwrap();
        assert_eq!(fr.sign(&s), Some(Ordering::Greater));
    }

    #[test]
    fn int_embeds() {
        let xi = XiSpec::sqrt(3).unwrap();
        let fs = FrameSpec::new(&xi, [&XiReal::ratio(2, 3)]);
        let fr = fs.frame::<i128>().unwrap();
        assert_eq!(fs.lift(&fr.int(5).unwrap()), XiReal::ints(5, 0));
    }
}
