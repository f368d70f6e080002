//! Integer coefficients for fraction-free reduction. Values that fit an
//! `i64` stay inline; everything else spills to `BigInt`.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq)]
pub(crate) enum Int {
    Small(i64),
    Big(BigInt),
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(v) => write!(f, "{v}"),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(v),
        }
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> Self {
        match v {
            Int::Small(s) => BigInt::from(*s),
            Int::Big(b) => b.clone(),
        }
    }
}

impl Int {
    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.sign() == Sign::Minus,
        }
    }

    fn big(&self) -> std::borrow::Cow<'_, BigInt> {
        match self {
            Int::Small(v) => std::borrow::Cow::Owned(BigInt::from(*v)),
            Int::Big(b) => std::borrow::Cow::Borrowed(b),
        }
    }

    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }

    #[inline]
    pub fn mul(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(r) = a.checked_mul(*b) {
                return Int::Small(r);
            }
            return Int::from(BigInt::from(*a as i128 * *b as i128));
        }
        Int::from(self.big().as_ref() * other.big().as_ref())
    }

    /// `a*x - b*y` in one pass.
    #[inline]
    pub fn mul_sub(a: &Int, x: &Int, b: &Int, y: &Int) -> Int {
        if let (Int::Small(a), Int::Small(x), Int::Small(b), Int::Small(y)) = (a, x, b, y) {
            let r = *a as i128 * *x as i128 - *b as i128 * *y as i128;
            if let Ok(s) = i64::try_from(r) {
                return Int::Small(s);
            }
            // the two products fit i128 individually; the difference may not
            return Int::from(BigInt::from(*a as i128 * *x as i128) - BigInt::from(*b as i128 * *y as i128));
        }
        Int::from(a.big().as_ref() * x.big().as_ref() - b.big().as_ref() * y.big().as_ref())
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from(-b),
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            let g = a.unsigned_abs().gcd(&b.unsigned_abs());
            return match i64::try_from(g) {
                Ok(s) => Int::Small(s),
                Err(_) => Int::from(BigInt::from(g)),
            };
        }
        Int::from(self.big().gcd(other.big().as_ref()))
    }

    /// Exact division; `other` must divide `self`.
    pub fn div_exact(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(q) = a.checked_div(*b) {
                debug_assert_eq!(a % b, 0);
                return Int::Small(q);
            }
        }
        let (q, r) = self.big().div_rem(other.big().as_ref());
        debug_assert!(r.is_zero());
        Int::from(q)
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self)
    }

    pub fn one() -> Int {
        Int::Small(1)
    }
}

/// Coefficient domain of the Buchberger engine.
pub(crate) trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    /// Runtime parameters of the domain (the modulus for prime fields).
    type Ctx: Copy + Send + Sync;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    /// Size measure for the coefficient cap; zero for bounded domains.
    fn bits(&self) -> u64;
    fn mul(&self, other: &Self, ctx: Self::Ctx) -> Self;
    /// `a*x - b*y`
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self, ctx: Self::Ctx) -> Self;
    /// `(a, b)` with `a*c - b*lc = 0` and `a` as small as possible.
    fn cancel(lc: &Self, c: &Self, ctx: Self::Ctx) -> (Self, Self);
    /// Canonical associate of a nonzero polynomial's coefficient list:
    /// primitive with positive leading coefficient over the integers, monic
    /// over a field.
    fn normalize(coeffs: &mut [&mut Self], ctx: Self::Ctx);
    /// Common divisor that may be removed from a partially reduced
    /// polynomial, if worthwhile.
    fn common_divisor<'a, I: Iterator<Item = &'a Self>>(coeffs: I, ctx: Self::Ctx) -> Option<Self>
    where
        Self: 'a;
    fn div_exact(&self, d: &Self, ctx: Self::Ctx) -> Self;
}

impl Coeff for Int {
    type Ctx = ();

    fn zero() -> Self {
        Int::Small(0)
    }

    fn one() -> Self {
        Int::Small(1)
    }

    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }

    fn is_one(&self) -> bool {
        Int::is_one(self)
    }

    fn bits(&self) -> u64 {
        Int::bits(self)
    }

    fn mul(&self, other: &Self, _: ()) -> Self {
        Int::mul(self, other)
    }

    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self, _: ()) -> Self {
        Int::mul_sub(a, x, b, y)
    }

    fn cancel(lc: &Self, c: &Self, _: ()) -> (Self, Self) {
        let d = lc.gcd(c);
        let mut a = lc.div_exact(&d);
        let mut b = c.div_exact(&d);
        if a.is_negative() {
            a = a.neg();
            b = b.neg();
        }
        (a, b)
    }

    fn normalize(coeffs: &mut [&mut Self], _: ()) {
        if coeffs.is_empty() {
            return;
        }
        let mut g = Int::Small(0);
        for c in coeffs.iter() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if coeffs[0].is_negative() {
            g = g.neg();
        }
        if !g.is_one() {
            for c in coeffs.iter_mut() {
                **c = c.div_exact(&g);
            }
        }
    }

    fn common_divisor<'a, I: Iterator<Item = &'a Self>>(coeffs: I, _: ()) -> Option<Self> {
        let mut g = Int::Small(0);
        for c in coeffs {
            g = g.gcd(c);
            if g.is_one() {
                return None;
            }
        }
        if g.is_zero() {
            None
        } else {
            Some(g)
        }
    }

    fn div_exact(&self, d: &Self, _: ()) -> Self {
        Int::div_exact(self, d)
    }
}

/// Element of `Z/pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Fp(pub u32);

impl Fp {
    pub fn from_bigint(v: &BigInt, p: u32) -> Fp {
        let r = v.mod_floor(&BigInt::from(p));
        Fp(r.to_u32().expect("residue fits"))
    }

    pub fn inv(self, p: u32) -> Fp {
        // Fermat; p is prime
        let mut base = self.0 as u64;
        let mut e = p as u64 - 2;
        let mut acc = 1u64;
        let m = p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl Coeff for Fp {
    type Ctx = u32;

    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn is_one(&self) -> bool {
        self.0 == 1
    }

    fn bits(&self) -> u64 {
        0
    }

    #[inline]
    fn mul(&self, other: &Self, p: u32) -> Self {
        Fp((self.0 as u64 * other.0 as u64 % p as u64) as u32)
    }

    #[inline]
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self, p: u32) -> Self {
        let m = p as u64;
        let l = a.0 as u64 * x.0 as u64 % m;
        let r = b.0 as u64 * y.0 as u64 % m;
        Fp(((l + m - r) % m) as u32)
    }

    fn cancel(lc: &Self, c: &Self, p: u32) -> (Self, Self) {
        if lc.0 == 1 {
            (Fp(1), *c)
        } else {
            (Fp(1), c.mul(&lc.inv(p), p))
        }
    }

    fn normalize(coeffs: &mut [&mut Self], p: u32) {
        if coeffs.is_empty() || coeffs[0].0 == 1 {
            return;
        }
        let inv = coeffs[0].inv(p);
        for c in coeffs.iter_mut() {
            **c = c.mul(&inv, p);
        }
    }

    fn common_divisor<'a, I: Iterator<Item = &'a Self>>(_: I, _: u32) -> Option<Self> {
        None
    }

    fn div_exact(&self, d: &Self, p: u32) -> Self {
        self.mul(&d.inv(p), p)
    }
}

/// Primes below `2^31`, largest first.
pub(crate) fn primes_below_2_31() -> impl Iterator<Item = u32> {
    (0..(1u32 << 30)).map(|k| (1u32 << 31) - 1 - 2 * k).filter(|&n| is_prime(n))
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i64>(), d in any::<i64>()) {
            let (ia, ib, ic, id) = (Int::from(a), Int::from(b), Int::from(c), Int::from(d));
            let (ba, bb, bc, bd) = (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d));
            prop_assert_eq!(ia.mul(&ib).to_bigint(), &ba * &bb);
            prop_assert_eq!(Int::mul_sub(&ia, &ib, &ic, &id).to_bigint(), &ba * &bb - &bc * &bd);
            prop_assert_eq!(ia.neg().to_bigint(), -&ba);
            prop_assert_eq!(ia.gcd(&ib).to_bigint(), ba.gcd(&bb));
            let prod = ia.mul(&ib);
            if b != 0 {
                prop_assert_eq!(prod.div_exact(&ib).to_bigint(), ba.clone());
            }
            // normalization: values that fit are always Small
            let back = Int::from(&ba * &bb).mul(&Int::from(0));
            prop_assert!(back.is_zero());
        }

        #[test]
        fn prime_field_ops(a in 0u32..2147483647, b in 1u32..2147483647) {
            let p = 2147483647u32;
            let (x, y) = (Fp(a), Fp(b));
            prop_assert_eq!(y.mul(&y.inv(p), p), Fp(1));
            let (s, t) = Fp::cancel(&y, &x, p);
            prop_assert!(Fp::mul_sub(&s, &x, &t, &y, p).is_zero());
        }
    }

    #[test]
    fn first_primes() {
        let ps: Vec<u32> = primes_below_2_31().take(3).collect();
        assert_eq!(ps, vec![2147483647, 2147483629, 2147483587]);
    }
}
