//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod order;
mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use monomial::{Exponent, Monomial};
pub use order::MonomialOrder;
pub use parse::parse_rational;

/// Ordered list of distinct variable names. Index 0 is the largest variable
/// in every term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::InvalidInput(format!("`{n}` is not a valid variable name")));
            }
            if !seen.insert(n.to_string()) {
                return Err(Error::DuplicateVariable(n.to_string()));
            }
            out.push(n.to_string());
        }
        Ok(Arc::new(VariableSet { names: out }))
    }

    /// `prefix0, prefix1, ..., prefix{n-1}`
    pub fn indexed(prefix: &str, n: usize) -> Arc<Self> {
        let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(&names).expect("generated names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A name not present in this set, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}_{i}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }

    /// New set with `extra` appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Self>> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Self::new(&names)
    }

    pub fn compatible(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a.names == b.names
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Sparse polynomial with exact rational coefficients. No zero coefficient is
/// ever stored, so structural equality is mathematical equality.
#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<VariableSet>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        VariableSet::compatible(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(vars: &Arc<VariableSet>) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<VariableSet>, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn from_int(vars: &Arc<VariableSet>, c: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(c.into()))
    }

    pub fn one(vars: &Arc<VariableSet>) -> Self {
        Self::from_int(vars, 1)
    }

    pub fn var(vars: &Arc<VariableSet>, idx: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), idx), BigRational::one())
    }

    pub fn var_named(vars: &Arc<VariableSet>, name: &str) -> Result<Self> {
        let idx = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, idx))
    }

    pub fn monomial(vars: &Arc<VariableSet>, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.nvars(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(vars: &Arc<VariableSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len());
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(vars: &Arc<VariableSet>, text: &str) -> Result<Self> {
        parse::parse_polynomial(vars, text)
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Monomial::one(self.nvars())).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Maximum total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var) as u32).max().unwrap_or(0)
    }

    /// Terms sorted by `order`, largest first.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Indices of the variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars()];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        (0..self.nvars()).filter(|&i| used[i]).collect()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if VariableSet::compatible(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::VariableSetMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                let mut dm = m.clone();
                dm.set_exponent(var, e - 1);
                out.add_term(dm, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        Ok(out)
    }

    pub fn partial_derivative_named(&self, name: &str) -> Result<Self> {
        let idx = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        self.partial_derivative(idx)
    }

    /// Substitutes `map[name]` for each named variable; every variable not in
    /// the map must exist (by name) in `target` and is carried over.
    pub fn substitute(
        &self,
        map: &HashMap<String, Polynomial>,
        target: &Arc<VariableSet>,
    ) -> Result<Self> {
        for (name, img) in map {
            if self.vars.index_of(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
            if !VariableSet::compatible(img.vars(), target) {
                return Err(Error::VariableSetMismatch);
            }
        }
        let images: Vec<Polynomial> = (0..self.nvars())
            .map(|i| {
                let name = self.vars.name(i);
                match map.get(name) {
                    Some(p) => Ok(p.clone()),
                    None => Polynomial::var_named(target, name),
                }
            })
            .collect::<Result<_>>()?;
        Ok(self.compose(&images, target))
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn compose(&self, images: &[Polynomial], target: &Arc<VariableSet>) -> Self {
        assert_eq!(images.len(), self.nvars());
        let mut power_cache: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    /// Re-expresses this polynomial over `target`, matching variables by
    /// name. Fails if a used variable is missing from `target`.
    pub fn to_vars(&self, target: &Arc<VariableSet>) -> Result<Self> {
        if VariableSet::compatible(&self.vars, target) {
            return Ok(Polynomial { vars: target.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.nvars());
        let used = self.support();
        for i in 0..self.nvars() {
            match target.index_of(self.vars.name(i)) {
                Some(j) => map.push(j),
                None if !used.contains(&i) => map.push(usize::MAX),
                None => return Err(Error::UnknownVariable(self.vars.name(i).to_string())),
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(target.len());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    nm.set_exponent(map[i], e);
                }
            }
            out.terms.insert(nm, c.clone());
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), got: point.len() });
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn evaluate_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), got: point.len() });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= x.powu(e as u32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Sum of absolute values of the term magnitudes at `point`; the natural
    /// scale for a relative residual.
    pub fn evaluate_magnitude(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = rational_to_f64(c).abs();
                for (x, &e) in point.iter().zip(m.exponents()) {
                    if e > 0 {
                        t *= x.norm().powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// `Some(d)` iff every term has total degree `d`. The zero polynomial
    /// reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Scales to coprime integer coefficients with a positive leading
    /// coefficient in degree-lex order. Canonical representative of the
    /// polynomial up to a nonzero rational factor.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let lead_negative = self.leading_term(MonomialOrder::DegLex).unwrap().1.is_negative();
        let mut factor = BigRational::new(den_lcm, num_gcd);
        if lead_negative {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Integer coefficients if all coefficients are integral.
    pub fn integer_coefficients(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_integer().then(|| (m.clone(), c.to_integer())))
            .collect()
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    match (c.numer().to_f64(), c.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            // fall back to a scaled division for huge numerators/denominators
            let nb = c.numer().bits() as i64;
            let db = c.denom().bits() as i64;
            let shift = (nb - db).clamp(-1000, 1000);
            let scaled = if shift > 0 {
                BigRational::new(c.numer().clone(), c.denom() << (shift as usize))
            } else {
                BigRational::new(c.numer() << ((-shift) as usize), c.denom().clone())
            };
            let v = scaled.numer().to_f64().unwrap_or(0.0) / scaled.denom().to_f64().unwrap_or(1.0);
            v * 2f64.powi(shift as i32)
        }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("variable-set mismatch in add")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("variable-set mismatch in sub")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("variable-set mismatch in mul")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms(MonomialOrder::DegLex).into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn vs(names: &[&str]) -> Arc<VariableSet> {
        VariableSet::new(names).unwrap()
    }

    #[test]
    fn add_cancels_and_merges() {
        let v = vs(&["x", "y", "p0"]);
        let a = Polynomial::parse(&v, "x + y").unwrap();
        let b = Polynomial::parse(&v, "x - y").unwrap();
        assert_eq!(&a + &b, Polynomial::parse(&v, "2*x").unwrap());
        let zero = Polynomial::zero(&v);
        assert_eq!(&a + &zero, a);
        let c = Polynomial::parse(&v, "p0^2").unwrap();
        let d = Polynomial::parse(&v, "2*p0^2").unwrap();
        assert_eq!(&c + &d, Polynomial::parse(&v, "3p0^2").unwrap());
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        let a = Polynomial::parse(&vs(&["x"]), "x").unwrap();
        let b = Polynomial::parse(&vs(&["y"]), "y").unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::VariableSetMismatch)));
        assert!(matches!(a.try_mul(&b), Err(Error::VariableSetMismatch)));
    }

    #[test]
    fn products() {
        let v = vs(&["q0", "q1"]);
        let a = Polynomial::parse(&v, "q0 - q1").unwrap();
        let b = Polynomial::parse(&v, "q0 + q1").unwrap();
        assert_eq!(&a * &b, Polynomial::parse(&v, "q0^2 - q1^2").unwrap());
        assert_eq!(&a * &Polynomial::one(&v), a);

        let v = vs(&["b0", "b1", "b2", "bs"]);
        let p = |s| Polynomial::parse(&v, s).unwrap();
        let lhs = &(&p("b0 + bs") * &p("b2 + bs")) - &p("b1 + bs").pow(2);
        assert_eq!(lhs, p("b0*b2 - b1^2 + b0*bs + b2*bs - 2*b1*bs"));
    }

    #[test]
    fn substitution_into_shifted_coordinates() {
        let qv = vs(&["q0", "q1", "q2"]);
        let bv = vs(&["b0", "b1", "b2", "bs"]);
        let g = Polynomial::parse(&qv, "q0*q2 - q1^2").unwrap();
        let mut map = HashMap::new();
        for i in 0..3 {
            map.insert(format!("q{i}"), Polynomial::parse(&bv, &format!("b{i} + bs")).unwrap());
        }
        let gb = g.substitute(&map, &bv).unwrap();
        let expected = Polynomial::parse(&bv, "(b0+bs)*(b2+bs) - (b1+bs)^2").unwrap();
        assert_eq!(gb, expected);
        // identity map
        assert_eq!(g.substitute(&HashMap::new(), &qv).unwrap(), g);
        // unknown variable in map
        let mut bad = HashMap::new();
        bad.insert("z".to_string(), Polynomial::one(&qv));
        assert!(matches!(g.substitute(&bad, &qv), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn derivatives() {
        let v = vs(&["p0", "p1", "p2", "p12"]);
        let c = Polynomial::parse(&v, "4*p0*p2 - p1^2").unwrap();
        assert_eq!(c.partial_derivative_named("p1").unwrap(), Polynomial::parse(&v, "-2*p1").unwrap());
        let f = Polynomial::parse(&v, "2*p0*p1*p2 + p1^2*p2 + p1*p2^2 - p0^2*p12 + p1*p2*p12").unwrap();
        assert_eq!(
            f.partial_derivative_named("p12").unwrap(),
            Polynomial::parse(&v, "-p0^2 + p1*p2").unwrap()
        );
        assert!(Polynomial::from_int(&v, 7).partial_derivative(2).unwrap().is_zero());
        assert!(matches!(f.partial_derivative_named("zz"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn evaluation() {
        let v = vs(&["p0", "p1", "p2"]);
        let c = Polynomial::parse(&v, "4*p0*p2 - p1^2").unwrap();
        assert!(c.evaluate(&[q(1, 9), q(4, 9), q(4, 9)]).unwrap().is_zero());
        let f = Polynomial::parse(&v, "3*p0^2 + p1 - 5/2").unwrap();
        let z = vec![BigRational::zero(); 3];
        assert_eq!(f.evaluate(&z).unwrap(), q(-5, 2));
        assert!(matches!(f.evaluate(&z[..2]), Err(Error::LengthMismatch { .. })));

        // H(p) = ps - (p0 + ... + pn) vanishes at (1, ..., 1, n + 1) with n = 3
        let hv = vs(&["p0", "p1", "p2", "p3", "ps"]);
        let h = Polynomial::parse(&hv, "ps - p0 - p1 - p2 - p3").unwrap();
        let mut pt = vec![q(1, 1); 4];
        pt.push(q(4, 1));
        assert!(h.evaluate(&pt).unwrap().is_zero());
    }

    #[test]
    fn homogeneity() {
        let v = vs(&["q0", "q1", "q2", "q12"]);
        assert_eq!(Polynomial::parse(&v, "q0*q2 - q1^2").unwrap().homogeneous_degree(), Some(2));
        assert_eq!(Polynomial::parse(&v, "q0 + q1^2").unwrap().homogeneous_degree(), None);
        let g = Polynomial::parse(
            &v,
            "q0^4-8*q0^2*q1*q2+16*q1^2*q2^2-8*q0^3*q12+16*q0^2*q1*q12+16*q0^2*q2*q12-32*q0*q1*q2*q12",
        )
        .unwrap();
        assert_eq!(g.homogeneous_degree(), Some(4));
    }

    #[test]
    fn display_is_deglex() {
        let v = vs(&["q0", "q1", "q2"]);
        let g = Polynomial::parse(&v, "-q1^2 + q0*q2").unwrap();
        assert_eq!(g.to_string(), "q0*q2 - q1^2");
        let h = Polynomial::parse(&v, "-1/2*q0 + 3").unwrap();
        assert_eq!(h.to_string(), "-1/2*q0 + 3");
        assert_eq!((-&g).primitive(), g);
    }
}
