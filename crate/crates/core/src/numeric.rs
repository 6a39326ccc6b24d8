//! Exact rational arithmetic with outward-rounded enclosures.
//!
//! Bound formulas mix rationals with cube roots, fourth roots and natural
//! logarithms. Every irrational intermediate is carried as an [`Enclosure`]
//! `[lo, hi]` of exact rationals with `lo <= x <= hi`; perfect powers
//! collapse to exact (zero-width) enclosures, so formula values that happen
//! to be rational come out exact. No floating point is involved anywhere.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Bits of precision for root enclosures (width `2^-ROOT_BITS`).
const ROOT_BITS: u32 = 60;
/// Terms of the atanh series for logarithms (error well below `1e-30`).
const LOG_TERMS: u32 = 40;

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Closed rational interval certified to contain a real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn exact(v: BigRational) -> Enclosure {
        Enclosure { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: i64) -> Enclosure {
        Enclosure::exact(int(v))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn add_rat(&self, v: &BigRational) -> Enclosure {
        Enclosure {
            lo: &self.lo + v,
            hi: &self.hi + v,
        }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }

    pub fn mul_rat(&self, v: &BigRational) -> Enclosure {
        if v.is_negative() {
            Enclosure {
                lo: &self.hi * v,
                hi: &self.lo * v,
            }
        } else {
            Enclosure {
                lo: &self.lo * v,
                hi: &self.hi * v,
            }
        }
    }

    pub fn scale_int(&self, s: i64) -> Enclosure {
        self.mul_rat(&int(s))
    }

    /// Ceiling of the enclosed value. Errors if the interval straddles an
    /// integer boundary, which would make the ceiling ambiguous.
    pub fn ceil(&self) -> Result<BigInt> {
        let c_lo = self.lo.ceil().to_integer();
        let c_hi = self.hi.ceil().to_integer();
        if c_lo != c_hi {
            return Err(Error::InternalInvariant(format!(
                "enclosure [{}, {}] straddles an integer; cannot take ceiling",
                self.lo, self.hi
            )));
        }
        Ok(c_lo)
    }

    pub fn ceil_u64(&self) -> Result<u64> {
        self.ceil()?
            .to_u64()
            .ok_or_else(|| Error::InternalInvariant("ceiling out of u64 range".into()))
    }

    /// True when the enclosed value is certainly <= `v`.
    pub fn certainly_le(&self, v: &BigRational) -> bool {
        self.hi <= *v
    }

    /// True when the enclosed value is certainly >= `v`.
    pub fn certainly_ge(&self, v: &BigRational) -> bool {
        self.lo >= *v
    }

    /// Three-way comparison of a rational against the enclosed value;
    /// errors if the rational falls strictly inside the interval.
    pub fn compare_rat(&self, v: &BigRational) -> Result<std::cmp::Ordering> {
        if *v <= self.lo {
            Ok(std::cmp::Ordering::Less) // v <= value (or equal at lo touch)
        } else if *v >= self.hi {
            Ok(std::cmp::Ordering::Greater)
        } else {
            Err(Error::InternalInvariant(format!(
                "rational {v} falls inside enclosure [{}, {}]",
                self.lo, self.hi
            )))
        }
    }
}

/// `deg`-th root of a nonnegative rational, outward-rounded to width
/// `2^-ROOT_BITS`; exact (zero width) for perfect powers.
pub fn nth_root_enclosure(x: &BigRational, deg: u32) -> Result<Enclosure> {
    if x.is_negative() {
        return Err(Error::InvalidInput("root of a negative value".into()));
    }
    if deg == 0 {
        return Err(Error::InvalidInput("0th root".into()));
    }
    if x.is_zero() {
        return Ok(Enclosure::exact(BigRational::zero()));
    }
    let p = x.numer().clone();
    let q = x.denom().clone();
    let scale: BigInt = BigInt::one() << ROOT_BITS;
    // find the largest c with c^deg * q <= p * scale^deg
    let rhs = &p * scale.pow(deg);
    let mut hi = BigInt::one();
    while hi.pow(deg) * &q <= rhs {
        hi <<= 1;
    }
    let mut lo = BigInt::zero();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if mid.pow(deg) * &q <= rhs {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = lo;
    if c.pow(deg) * &q == rhs {
        return Ok(Enclosure::exact(BigRational::new(c, scale)));
    }
    Ok(Enclosure {
        lo: BigRational::new(c.clone(), scale.clone()),
        hi: BigRational::new(c + 1, scale),
    })
}

/// `x^(num/deg)` for nonnegative rational `x`: root of the `num`-th power.
pub fn rational_power_enclosure(x: &BigRational, num: u32, deg: u32) -> Result<Enclosure> {
    let mut powered = BigRational::one();
    for _ in 0..num {
        powered *= x;
    }
    nth_root_enclosure(&powered, deg)
}

/// Fixed-point scale of the logarithm series (values carried as integer
/// multiples of `2^-LOG_SCALE_BITS` with directed rounding).
const LOG_SCALE_BITS: usize = 160;

/// atanh-series enclosure of `ln m` for rational `m` in `[1, 2]`.
///
/// `z = (m-1)/(m+1) <= 1/3`, and `ln m = 2 Σ z^(2i+1)/(2i+1)`. The series
/// runs in scaled integers, rounding lows down and highs up at every step,
/// so the result interval is sound without any rational gcd work.
fn ln_mantissa(m: &BigRational) -> Enclosure {
    let p: BigInt = m.numer() - m.denom();
    let q: BigInt = m.numer() + m.denom();
    if p.is_zero() {
        return Enclosure::exact(BigRational::zero());
    }
    let one = BigInt::one();
    let scale: BigInt = &one << LOG_SCALE_BITS;
    let z_lo: BigInt = (&p * &scale) / &q;
    let z_hi: BigInt = &z_lo + &one;
    let z2_lo: BigInt = (&z_lo * &z_lo) >> LOG_SCALE_BITS;
    let z2_hi: BigInt = ((&z_hi * &z_hi) >> LOG_SCALE_BITS) + &one;
    let mut term_lo = z_lo;
    let mut term_hi = z_hi;
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    for i in 0..LOG_TERMS {
        let d = BigInt::from(2 * i + 1);
        sum_lo += &term_lo / &d;
        sum_hi += &term_hi / &d + &one;
        term_lo = (&term_lo * &z2_lo) >> LOG_SCALE_BITS;
        term_hi = ((&term_hi * &z2_hi) >> LOG_SCALE_BITS) + &one;
    }
    // geometric tail: z^(2T+1) / ((2T+1)(1 - z^2))
    let tail: BigInt =
        (&term_hi * &scale) / (BigInt::from(2 * LOG_TERMS + 1) * (&scale - &z2_hi)) + &one;
    Enclosure {
        lo: BigRational::new(2 * sum_lo, scale.clone()),
        hi: BigRational::new(2 * (sum_hi + tail), scale),
    }
}

fn ln2() -> &'static Enclosure {
    static LN2: OnceLock<Enclosure> = OnceLock::new();
    // ln 2 = 2 atanh(1/3): reuse the mantissa series at m = 2 scaled down;
    // equivalently evaluate at m = 2 via z = 1/3 directly.
    LN2.get_or_init(|| ln_mantissa(&int(2)))
}

/// Enclosure of `ln x` for a positive rational `x`.
pub fn ln_enclosure(x: &BigRational) -> Result<Enclosure> {
    if !x.is_positive() {
        return Err(Error::InvalidInput("log of a non-positive value".into()));
    }
    let two = int(2);
    let one = BigRational::one();
    let mut m = x.clone();
    let mut s: i64 = 0;
    while m >= two {
        m /= &two;
        s += 1;
    }
    while m < one {
        m *= &two;
        s -= 1;
    }
    Ok(ln2().scale_int(s).add(&ln_mantissa(&m)))
}

pub fn ln_of_u64(x: u64) -> Result<Enclosure> {
    ln_enclosure(&BigRational::from_integer(BigInt::from(x)))
}

/// Euler's number as a tight enclosure (factorial series, 42 terms).
pub fn e_enclosure() -> &'static Enclosure {
    static E: OnceLock<Enclosure> = OnceLock::new();
    E.get_or_init(|| {
        let mut sum = BigRational::zero();
        let mut fact = BigInt::one();
        for i in 0..=42u32 {
            if i > 0 {
                fact *= BigInt::from(i);
            }
            sum += BigRational::new(BigInt::one(), fact.clone());
        }
        let tail = BigRational::new(BigInt::from(2), fact);
        Enclosure {
            lo: sum.clone(),
            hi: sum + tail,
        }
    })
}

/// Enclosure of `log2 x`; exact when `x` is a power of two.
pub fn log2_enclosure(x: u64) -> Result<Enclosure> {
    if x == 0 {
        return Err(Error::InvalidInput("log of zero".into()));
    }
    if x.is_power_of_two() {
        return Ok(Enclosure::from_int(x.trailing_zeros() as i64));
    }
    let ln_x = ln_of_u64(x)?;
    let l2 = ln2();
    // divide enclosures: both strictly positive here
    Ok(Enclosure {
        lo: &ln_x.lo / &l2.hi,
        hi: &ln_x.hi / &l2.lo,
    })
}

/// `⌈ln x⌉` for `x >= 1`.
pub fn ceil_ln(x: u64) -> Result<u64> {
    if x == 1 {
        return Ok(0);
    }
    ln_of_u64(x)?.ceil_u64()
}

/// Family size `⌈2e ln n⌉` of the randomized construction.
pub fn family_size(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("family size of empty graph".into()));
    }
    if n == 1 {
        return Ok(0);
    }
    let ln_n = ln_of_u64(n as u64)?;
    e_enclosure().mul_rat(&int(2)).mul(&ln_n).ceil_u64()
}

/// Stage cap `⌈2.42 ln n⌉ + 1` of the deterministic construction.
pub fn stage_cap(n: usize) -> Result<u64> {
    if n <= 1 {
        return Ok(1);
    }
    let ln_n = ln_of_u64(n as u64)?;
    Ok(ln_n.mul_rat(&ratio(242, 100)).ceil_u64()? + 1)
}
