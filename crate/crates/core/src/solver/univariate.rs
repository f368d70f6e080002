//! Dense univariate polynomials over the rationals: gcds, squarefree parts
//! and real root isolation by Sturm sequences.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::poly::{rational_to_f64, Monomial, Polynomial, VariableSet};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(pub Vec<BigRational>);

impl UPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + rational_to_f64(c))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect(),
        )
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => UPoly(self.0.iter().map(|c| c / l).collect()),
        }
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let lc = d.leading().unwrap();
        if r.len() <= dd {
            return (UPoly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / lc;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() <= 0
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for c in &self.0 {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self.0.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() {
            let g = if ints.last().is_some_and(|l| l.is_negative()) { -g } else { g };
            for c in ints.iter_mut() {
                *c = &*c / &g;
            }
        }
        ints
    }

    /// As a polynomial in the single variable `name`, integer-normalized.
    pub fn to_polynomial(&self, name: &str) -> Result<Polynomial> {
        let vars = VariableSet::new(&[name])?;
        Ok(self.to_polynomial_in(&vars))
    }

    fn to_polynomial_in(&self, vars: &Arc<VariableSet>) -> Polynomial {
        Polynomial::from_terms(
            vars,
            self.primitive_integer()
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Monomial::from_exponents([k as u16]), BigRational::from_integer(c))),
        )
    }

    /// Complex roots from the companion matrix, each with `|f(z)|`.
    pub fn complex_roots(&self) -> Vec<(Complex64, f64)> {
        let n = self.degree();
        if n < 1 {
            return Vec::new();
        }
        let n = n as usize;
        let m = self.monic();
        let mut c = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            c[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            c[(i, n - 1)] = -rational_to_f64(&m.0[i]);
        }
        c.complex_eigenvalues().iter().map(|z| (*z, self.eval_complex(*z).norm())).collect()
    }
}

/// A root of a univariate polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum IsolatedRoot {
    /// The open interval `(lo, hi)` contains exactly one real root.
    Real { lo: BigRational, hi: BigRational },
    /// Floating approximation of a non-real root with `|f(z)|`.
    Complex { value: Complex64, residual: f64 },
}

impl IsolatedRoot {
    /// Midpoint of a real interval, or the complex approximation.
    pub fn approx(&self) -> Complex64 {
        match self {
            IsolatedRoot::Real { lo, hi } => Complex64::new(rational_to_f64(&((lo + hi) / BigRational::from_integer(2.into()))), 0.0),
            IsolatedRoot::Complex { value, .. } => *value,
        }
    }
}

fn sturm_chain(f: &UPoly) -> Vec<UPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[k - 2].div_rem(&chain[k - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(UPoly(r.0.iter().map(|c| -c).collect()));
    }
    chain
}

fn sign_changes(chain: &[UPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// `1 + max |a_i / a_n|`: every root has smaller absolute value.
fn cauchy_bound(f: &UPoly) -> BigRational {
    let lc = f.leading().unwrap().abs();
    let m = f.0[..f.0.len() - 1].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(BigRational::zero);
    m + BigRational::one()
}

/// A point of `(lo, hi)` near the midpoint where `f` does not vanish.
fn split_point(f: &UPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    for (a, b) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)] {
        let t = BigRational::new(a.into(), b.into());
        let x = lo + (hi - lo) * t;
        if !f.eval(&x).is_zero() {
            return x;
        }
    }
    unreachable!("a nonzero polynomial has finitely many roots")
}

/// Disjoint isolating intervals for the real roots of `f`, each of width
/// below `width`, in increasing order. `f` is replaced by its squarefree
/// part first.
pub fn isolate_real_roots(f: &UPoly, width: &BigRational) -> Vec<IsolatedRoot> {
    if f.degree() < 1 {
        return Vec::new();
    }
    let f = f.squarefree_part();
    let chain = sturm_chain(&f);
    let b = cauchy_bound(&f);
    let mut lo = -b.clone();
    let mut hi = b;
    // endpoints must not be roots for the (lo, hi] counts to be clean
    while f.eval(&lo).is_zero() {
        lo -= BigRational::one();
    }
    while f.eval(&hi).is_zero() {
        hi += BigRational::one();
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let n = sign_changes(&chain, &a) - sign_changes(&chain, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && &(&b - &a) < width {
            out.push(IsolatedRoot::Real { lo: a, hi: b });
            continue;
        }
        let m = split_point(&f, &a, &b);
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    out.sort_by(|x, y| match (x, y) {
        (IsolatedRoot::Real { lo: a, .. }, IsolatedRoot::Real { lo: b, .. }) => a.cmp(b),
        _ => std::cmp::Ordering::Equal,
    });
    out
}

/// Real roots as isolating intervals and the non-real ones as floating
/// approximations.
pub fn isolate_roots(f: &UPoly, width: &BigRational) -> Vec<IsolatedRoot> {
    let sf = f.squarefree_part();
    let mut out = isolate_real_roots(&sf, width);
    for (z, residual) in sf.complex_roots() {
        if z.im.abs() > 1e-9 * (1.0 + z.norm()) {
            out.push(IsolatedRoot::Complex { value: z, residual });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn division_and_gcd() {
        let f = UPoly::from_ints(&[-1, 0, 1]);
        let g = UPoly::from_ints(&[-1, 1]);
        let (qq, r) = f.div_rem(&g);
        assert_eq!(qq, UPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&UPoly::from_ints(&[1, 2, 1])), UPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn squarefree() {
        // (x - 1)^2 (x + 2)
        let f = UPoly::from_ints(&[2, -3, 0, 1]);
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), UPoly::from_ints(&[-2, 1, 1]));
        assert!(UPoly::from_ints(&[-2, 0, 1]).is_squarefree());
    }

    #[test]
    fn sqrt_two() {
        let roots = isolate_real_roots(&UPoly::from_ints(&[-2, 0, 1]), &q(1, 10));
        assert_eq!(roots.len(), 2);
        let IsolatedRoot::Real { lo, hi } = &roots[1] else { panic!() };
        assert!(lo >= &q(14, 10) && hi <= &q(15, 10), "({lo}, {hi})");
        let IsolatedRoot::Real { lo, hi } = &roots[0] else { panic!() };
        assert!(lo >= &q(-15, 10) && hi <= &q(-14, 10), "({lo}, {hi})");
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&UPoly::from_ints(&[1, 0, 1]), &q(1, 10)).is_empty());
        let all = isolate_roots(&UPoly::from_ints(&[1, 0, 1]), &q(1, 10));
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn rational_roots_at_split_points() {
        // roots 0, 1/2, -3 hit naive midpoints
        let f = UPoly::new(vec![q(0, 1), q(-3, 2), q(5, 2), q(1, 1)]);
        let r = isolate_real_roots(&f, &q(1, 1000));
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn integer_normalization() {
        let f = UPoly::new(vec![q(-1, 2), q(0, 1), q(-3, 4)]);
        assert_eq!(f.primitive_integer(), vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
    }
}
