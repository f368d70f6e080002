//! Groebner bases over the rationals by reduction modulo many primes,
//! Chinese remaindering and rational reconstruction, with a final check
//! over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::{primes_below_2_31, Fp, Int};
use super::engine::{self, EPoly};
use super::{rpoly_to_fp, rpoly_to_int, Budget, RPoly};
use crate::error::{Error, ResourceKind, Result};
use crate::poly::{Monomial, MonomialOrder};

/// Images that share one leading-monomial set.
struct Group {
    lms: Vec<Monomial>,
    modulus: BigInt,
    primes: usize,
    coeffs: Vec<BTreeMap<Monomial, BigInt>>,
    candidate: Option<Vec<RPoly>>,
    next_try: usize,
}

impl Group {
    fn new(lms: Vec<Monomial>) -> Self {
        let n = lms.len();
        Group { lms, modulus: BigInt::one(), primes: 0, coeffs: vec![BTreeMap::new(); n], candidate: None, next_try: 1 }
    }

    fn absorb(&mut self, image: &[EPoly<Fp>], p: u32) {
        let pb = BigInt::from(p);
        let inv = self.modulus.mod_floor(&pb).modpow(&(&pb - 2u32), &pb);
        for (acc, poly) in self.coeffs.iter_mut().zip(image) {
            let img: BTreeMap<&Monomial, BigInt> = poly.iter().map(|(m, c)| (m, BigInt::from(c.0))).collect();
            let mut keys: Vec<Monomial> = acc.keys().cloned().collect();
            keys.extend(img.keys().filter(|m| !acc.contains_key(*m)).map(|m| (*m).clone()));
            for m in keys {
                let v = img.get(&m).cloned().unwrap_or_default();
                let r = acc.get(&m).cloned().unwrap_or_default();
                // r + M * ((v - r) * M^-1 mod p)
                let k = ((&v - &r).mod_floor(&pb) * &inv).mod_floor(&pb);
                acc.insert(m, r + &self.modulus * k);
            }
        }
        self.modulus *= pb;
        self.primes += 1;
    }

    fn reconstruct(&self, order: MonomialOrder) -> Option<Vec<RPoly>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for acc in &self.coeffs {
            let mut p: RPoly = Vec::new();
            for (m, r) in acc {
                let q = rational_reconstruction(r, &self.modulus)?;
                if !q.is_zero() {
                    p.push((m.clone(), q));
                }
            }
            p.sort_by(|a, b| order.cmp(&b.0, &a.0));
            out.push(p);
        }
        Some(out)
    }
}

/// Wang's rational reconstruction: `a/b` with `a = b*r mod m` and
/// `|a|, |b| <= sqrt(m/2)`, if one exists.
pub(crate) fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn image_matches(candidate: &[RPoly], image: &[EPoly<Fp>], p: u32) -> bool {
    if candidate.len() != image.len() {
        return false;
    }
    for (c, img) in candidate.iter().zip(image) {
        match rpoly_to_fp(c, p) {
            Some(cp) if &cp == img => {}
            _ => return false,
        }
    }
    true
}

/// Monic reduced basis over the rationals, checked by Buchberger's
/// criterion and by reducing every input to zero.
pub(crate) fn groebner_rational(input: &[RPoly], order: MonomialOrder, budget: &Budget) -> Result<Vec<RPoly>> {
    let ints: Vec<EPoly<Int>> = input.iter().map(rpoly_to_int).collect();
    let mut groups: Vec<Group> = Vec::new();
    for p in primes_below_2_31() {
        engine::Ctl::new(budget).check_time()?;
        let Some(fp_input) = input.iter().map(|f| rpoly_to_fp(f, p)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let image = engine::groebner(fp_input, order, p, budget)?;
        let lms: Vec<Monomial> = image.iter().map(|e| e[0].0.clone()).collect();
        let gi = match groups.iter().position(|g| g.lms == lms) {
            Some(i) => i,
            None => {
                groups.push(Group::new(lms));
                groups.len() - 1
            }
        };
        let most = groups.iter().map(|g| g.primes).max().unwrap_or(0);
        let group = &mut groups[gi];
        if let Some(cand) = group.candidate.take() {
            if image_matches(&cand, &image, p)
                && verify(&cand, &ints, order, budget)? {
                    return Ok(cand);
                }
        }
        group.absorb(&image, p);
        if group.modulus.bits() / 2 > budget.max_coeff_bits {
            return Err(Error::ResourceLimit {
                kind: ResourceKind::CoefficientBits,
                detail: format!("modular reconstruction needs more than {} bits", budget.max_coeff_bits),
            });
        }
        if group.primes >= most && group.primes >= group.next_try {
            group.candidate = group.reconstruct(order);
            group.next_try = group.primes + 1 + group.primes / 4;
        }
    }
    unreachable!("ran out of primes below 2^31")
}

fn verify(cand: &[RPoly], input: &[EPoly<Int>], order: MonomialOrder, budget: &Budget) -> Result<bool> {
    let basis: Vec<EPoly<Int>> = cand.iter().map(rpoly_to_int).collect();
    let elems: Vec<engine::Elem<Int>> = basis.iter().map(|p| engine::Elem::new(p.clone(), 0)).collect();
    let ctl = engine::Ctl::new(budget);
    for f in input {
        if f.is_empty() {
            continue;
        }
        let mut f = f.clone();
        engine::sort_poly(order, &mut f);
        let mut sugar = 0;
        if !engine::reduce(order, (), f, &elems, &mut sugar, None, &ctl)?.is_empty() {
            return Ok(false);
        }
    }
    engine::is_groebner(order, (), &basis, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(2147483647u64) * BigInt::from(2147483629u64);
        for (a, b) in [(3i64, 7i64), (-22, 5), (1, 1), (0, 1), (123456, 789)] {
            let e = BigInt::from(b).extended_gcd(&m);
            let r = (BigInt::from(a) * e.x).mod_floor(&m);
            assert_eq!(rational_reconstruction(&r, &m), Some(BigRational::new(a.into(), b.into())));
        }
    }
}
