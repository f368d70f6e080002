//! Zero-dimensional solving: multiplication matrices on the quotient ring,
//! exact characteristic polynomials (eliminants), real root isolation and
//! numeric points from a shared eigenbasis.

mod critical;
mod numeric;
mod univariate;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::{Budget, Field, GroebnerBasis, Ideal, QuotientBasis};
use crate::poly::{MonomialOrder, Polynomial};

pub use critical::{critical_points, CriticalPoint, CriticalPointSet};
pub use numeric::{solve_points, PointSet};
pub use univariate::{isolate_real_roots, isolate_roots, IsolatedRoot, UPoly};

/// Square rational matrix, row-major.
pub type RatMatrix = Vec<Vec<BigRational>>;

/// Multiplication by a polynomial on `k[x]/I` in the basis of standard
/// monomials. Column `j` holds the normal form of `f * m_j`.
#[derive(Clone, Debug)]
pub struct MultiplicationOperator {
    pub variable: String,
    pub basis: QuotientBasis,
    pub matrix: RatMatrix,
}

impl MultiplicationOperator {
    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        let d = self.dim();
        nalgebra::DMatrix::from_fn(d, d, |i, j| crate::poly::rational_to_f64(&self.matrix[i][j]))
    }

    pub fn trace(&self) -> BigRational {
        (0..self.dim()).map(|i| self.matrix[i][i].clone()).sum()
    }

    /// Characteristic polynomial `det(x I - M)`.
    pub fn charpoly(&self) -> UPoly {
        charpoly(&self.matrix)
    }
}

fn rational_ideal(ideal: &Ideal) -> Result<()> {
    match ideal.field() {
        Field::Rational => Ok(()),
        Field::Prime(p) => Err(Error::InvalidInput(format!("solving needs a rational ideal, got one modulo {p}"))),
    }
}

/// Matrix of multiplication by `f` given a basis and its standard monomials.
pub fn multiplication_matrix_by(gb: &GroebnerBasis, qb: &QuotientBasis, f: &Polynomial) -> Result<RatMatrix> {
    let d = qb.len();
    let index = qb.index();
    let vars = gb.vars();
    let mut m = vec![vec![BigRational::zero(); d]; d];
    for (j, mono) in qb.monomials.iter().enumerate() {
        let prod = f * &Polynomial::from_terms(vars, [(mono.clone(), BigRational::one())]);
        let nf = gb.normal_form(&prod)?;
        for (mm, c) in nf.terms() {
            let i = *index.get(mm).expect("normal forms are spanned by standard monomials");
            m[i][j] = c.clone();
        }
    }
    Ok(m)
}

/// Multiplication by the variable `var` on the quotient of a zero-dimensional
/// ideal, in its degree-reverse-lexicographic standard monomials.
pub fn multiplication_matrix(ideal: &Ideal, var: &str, budget: &Budget) -> Result<MultiplicationOperator> {
    rational_ideal(ideal)?;
    let idx = ideal.vars().index_of(var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
    let gb = ideal.groebner(MonomialOrder::DegRevLex, budget)?;
    let qb = gb.quotient_basis()?;
    let f = Polynomial::var(ideal.vars(), idx);
    let matrix = multiplication_matrix_by(&gb, &qb, &f)?;
    Ok(MultiplicationOperator { variable: var.to_string(), basis: qb, matrix })
}

/// `det(x I - M)` by reduction to upper Hessenberg form over the rationals.
pub fn charpoly(m: &RatMatrix) -> UPoly {
    let n = m.len();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else { continue };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        for k in j + 2..n {
            if h[k][j].is_zero() {
                continue;
            }
            let u = &h[k][j] / &h[j + 1][j];
            // row_k -= u row_{j+1}; col_{j+1} += u col_k
            for c in 0..n {
                let t = &u * &h[j + 1][c];
                h[k][c] -= t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[k];
                row[j + 1] += t;
            }
        }
    }
    // p_0 = 1; p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{l=i+1..k} h_{l,l-1}) p_{i-1}
    let mut p: Vec<UPoly> = vec![UPoly(vec![BigRational::one()])];
    for k in 0..n {
        let mut next = shift_sub(&p[k], &h[k][k]);
        let mut prod = BigRational::one();
        for i in (0..k).rev() {
            prod *= &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let coef = &h[i][k] * &prod;
            if !coef.is_zero() {
                next = sub_scaled(&next, &p[i], &coef);
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

/// `(x - a) f`
fn shift_sub(f: &UPoly, a: &BigRational) -> UPoly {
    let mut c = vec![BigRational::zero(); f.0.len() + 1];
    for (k, x) in f.0.iter().enumerate() {
        c[k + 1] += x;
        c[k] -= a * x;
    }
    UPoly::new(c)
}

/// `f - s g`
fn sub_scaled(f: &UPoly, g: &UPoly, s: &BigRational) -> UPoly {
    let mut c = f.0.clone();
    if c.len() < g.0.len() {
        c.resize(g.0.len(), BigRational::zero());
    }
    for (k, x) in g.0.iter().enumerate() {
        c[k] -= s * x;
    }
    UPoly::new(c)
}

/// Characteristic polynomial of multiplication by `var`, as a polynomial in
/// `var` with coprime integer coefficients and positive leading coefficient.
/// Its roots are the `var`-coordinates of the solutions, with multiplicity.
pub fn eliminant(ideal: &Ideal, var: &str, budget: &Budget) -> Result<Polynomial> {
    let op = multiplication_matrix(ideal, var, budget)?;
    op.charpoly().to_polynomial(var)
}

/// Outcome of [`certify_count`].
#[derive(Clone, Debug)]
pub struct CountCertificate {
    pub count: usize,
    pub degree: usize,
    /// Per variable, whether its eliminant is squarefree.
    pub squarefree: Vec<(String, bool)>,
    pub max_residual: f64,
}

impl CountCertificate {
    pub fn all_squarefree(&self) -> bool {
        self.squarefree.iter().all(|(_, s)| *s)
    }
}

/// Checks that `points` has one point per solution of `ideal` and records
/// which eliminants are squarefree.
pub fn certify_count(points: &PointSet, ideal: &Ideal, budget: &Budget) -> Result<CountCertificate> {
    let degree = ideal.degree_zero_dim(budget)?;
    if points.points.len() != degree {
        return Err(Error::CountMismatch(format!("{} points for an ideal of degree {degree}", points.points.len())));
    }
    let mut squarefree = Vec::new();
    for name in ideal.vars().names() {
        let op = multiplication_matrix(ideal, name, budget)?;
        squarefree.push((name.clone(), op.charpoly().is_squarefree()));
    }
    Ok(CountCertificate { count: points.points.len(), degree, squarefree, max_residual: points.max_residual() })
}

/// Exact eliminants of the named variables.
pub fn eliminants(ideal: &Ideal, names: &[String], budget: &Budget) -> Result<BTreeMap<String, Polynomial>> {
    names.iter().map(|n| Ok((n.clone(), eliminant(ideal, n, budget)?))).collect()
}

/// Isolates the real roots of an integer-normalized univariate eliminant.
pub fn eliminant_real_roots(f: &Polynomial, width: &BigRational) -> Vec<IsolatedRoot> {
    let mut coeffs = vec![BigRational::zero(); f.total_degree().map_or(0, |d| d as usize + 1)];
    for (m, c) in f.terms() {
        coeffs[m.degree() as usize] = c.clone();
    }
    isolate_real_roots(&UPoly::new(coeffs), width)
}
