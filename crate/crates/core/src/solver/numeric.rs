//! Numeric points of a zero-dimensional ideal from the eigenvectors of a
//! random separating multiplication operator.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{charpoly, multiplication_matrix_by, RatMatrix};
use crate::error::{Error, Result};
use crate::ideal::{Budget, Field, Ideal};
use crate::poly::{rational_to_f64, MonomialOrder, Polynomial};

/// Solutions of a zero-dimensional ideal, one per point, in the ideal's
/// variable order.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub vars: Vec<String>,
    pub points: Vec<Vec<Complex64>>,
    /// Largest relative residual over the generators, per point.
    pub residuals: Vec<f64>,
    /// Set when the eigenvector route was too ill-conditioned and the
    /// coordinates were paired by residual minimization.
    pub fallback_used: bool,
}

impl PointSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }
}

const RESIDUAL_TOL: f64 = 1e-8;
const ATTEMPTS: usize = 8;

/// `|g(x)| / sum |c_k m_k(x)|`, maximized over the generators.
pub(crate) fn relative_residual(gens: &[Polynomial], x: &[Complex64]) -> f64 {
    gens.iter()
        .map(|g| {
            let v = g.evaluate_complex(x).map(|z| z.norm()).unwrap_or(f64::INFINITY);
            let mag = g.evaluate_magnitude(x);
            if mag == 0.0 {
                v
            } else {
                v / mag
            }
        })
        .fold(0.0, f64::max)
}

fn to_complex(m: &RatMatrix) -> DMatrix<Complex64> {
    let d = m.len();
    DMatrix::from_fn(d, d, |i, j| Complex64::new(rational_to_f64(&m[i][j]), 0.0))
}

/// Eigenvector of `a` for the eigenvalue approximation `lambda`.
fn inverse_iteration(a: &DMatrix<Complex64>, lambda: Complex64) -> Option<nalgebra::DVector<Complex64>> {
    let d = a.nrows();
    let shift = lambda + Complex64::new(1e-10 * (1.0 + lambda.norm()), 0.0);
    let b = a - DMatrix::<Complex64>::identity(d, d) * shift;
    let lu = b.lu();
    let mut v = nalgebra::DVector::from_fn(d, |i, _| Complex64::new(1.0 + 0.1 * i as f64, 0.3));
    for _ in 0..3 {
        v = lu.solve(&v)?;
        let n = v.norm();
        if !n.is_finite() || n == 0.0 {
            return None;
        }
        v /= Complex64::new(n, 0.0);
    }
    Some(v)
}

/// Gauss-Newton on the (possibly overdetermined) generator system.
fn polish(gens: &[Polynomial], jac: &[Vec<Polynomial>], x: &mut Vec<Complex64>) {
    let mut best = relative_residual(gens, x);
    for _ in 0..8 {
        if best < 1e-15 {
            break;
        }
        let m = gens.len();
        let n = x.len();
        let f = nalgebra::DVector::from_fn(m, |k, _| -gens[k].evaluate_complex(x).unwrap());
        let j = DMatrix::from_fn(m, n, |k, i| jac[k][i].evaluate_complex(x).unwrap());
        let Ok(delta) = j.svd(true, true).solve(&f, 1e-14) else { break };
        let cand: Vec<Complex64> = x.iter().zip(delta.iter()).map(|(a, d)| a + d).collect();
        let r = relative_residual(gens, &cand);
        if !(r < best) {
            break;
        }
        *x = cand;
        best = r;
    }
}

fn min_gap(values: &[Complex64]) -> f64 {
    let scale = values.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut gap = f64::INFINITY;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            gap = gap.min((values[i] - values[j]).norm() / scale);
        }
    }
    gap
}

/// All points of a zero-dimensional radical ideal over the rationals.
///
/// A random integer linear form `l` is drawn from `seed`; its multiplication
/// operator must have a squarefree characteristic polynomial (checked
/// exactly), otherwise another form is tried. Coordinates are Rayleigh
/// quotients of the variables' operators at the eigenvectors of `M_l^T`,
/// refined by Gauss-Newton on the generators.
pub fn solve_points(ideal: &Ideal, seed: u64, budget: &Budget) -> Result<PointSet> {
    if let Field::Prime(p) = ideal.field() {
        return Err(Error::InvalidInput(format!("solving needs a rational ideal, got one modulo {p}")));
    }
    let gb = ideal.groebner(MonomialOrder::DegRevLex, budget)?;
    let qb = gb.quotient_basis()?;
    let vars = ideal.vars().clone();
    let n = vars.len();
    let d = qb.len();
    let names = vars.names().to_vec();
    if d == 0 {
        return Ok(PointSet { vars: names, points: Vec::new(), residuals: Vec::new(), fallback_used: false });
    }
    let exact: Vec<RatMatrix> =
        (0..n).map(|i| multiplication_matrix_by(&gb, &qb, &Polynomial::var(&vars, i))).collect::<Result<_>>()?;
    let mats: Vec<DMatrix<Complex64>> = exact.iter().map(to_complex).collect();
    let gens = ideal.generators().to_vec();
    let jac: Vec<Vec<Polynomial>> =
        gens.iter().map(|g| (0..n).map(|i| g.partial_derivative(i)).collect::<Result<_>>()).collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut repeated = 0;
    for _ in 0..ATTEMPTS {
        let r: Vec<i64> = (0..n).map(|_| rng.random_range(1..=50) * if rng.random_bool(0.5) { 1 } else { -1 }).collect();
        let mut ml = vec![vec![BigRational::zero(); d]; d];
        for (k, m) in exact.iter().enumerate() {
            let rk = BigRational::from_integer(r[k].into());
            for i in 0..d {
                for j in 0..d {
                    if !m[i][j].is_zero() {
                        ml[i][j] += &rk * &m[i][j];
                    }
                }
            }
        }
        if !charpoly(&ml).is_squarefree() {
            repeated += 1;
            continue;
        }
        let a = to_complex(&ml).transpose();
        let eig: Vec<Complex64> = to_complex(&ml).map(|z| z.re).complex_eigenvalues().iter().cloned().collect();
        if min_gap(&eig) < 1e-10 {
            continue;
        }
        let mut points = Vec::with_capacity(d);
        let mut ok = true;
        for &lambda in &eig {
            let Some(v) = inverse_iteration(&a, lambda) else {
                ok = false;
                break;
            };
            let vv = v.dotc(&v);
            let mut x: Vec<Complex64> = mats.iter().map(|m| v.dotc(&(m.transpose() * &v)) / vv).collect();
            polish(&gens, &jac, &mut x);
            points.push(x);
        }
        if !ok {
            continue;
        }
        let mut residuals: Vec<f64> = points.iter().map(|x| relative_residual(&gens, x)).collect();
        let mut fallback_used = false;
        if residuals.iter().any(|&r| r > RESIDUAL_TOL) {
            // pair each coordinate with the nearest eigenvalue of its own operator
            fallback_used = true;
            let per_var: Vec<Vec<Complex64>> =
                mats.iter().map(|m| m.map(|z| z.re).complex_eigenvalues().iter().cloned().collect()).collect();
            for (x, res) in points.iter_mut().zip(residuals.iter_mut()) {
                if *res <= RESIDUAL_TOL {
                    continue;
                }
                for (i, vals) in per_var.iter().enumerate() {
                    if let Some(best) = vals.iter().min_by(|a, b| (**a - x[i]).norm().total_cmp(&(**b - x[i]).norm())) {
                        x[i] = *best;
                    }
                }
                polish(&gens, &jac, x);
                *res = relative_residual(&gens, x);
            }
            if residuals.iter().any(|&r| r > RESIDUAL_TOL) {
                continue;
            }
        }
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&i, &j| {
            points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        return Ok(PointSet {
            vars: names,
            points: order.iter().map(|&i| points[i].clone()).collect(),
            residuals: order.iter().map(|&i| residuals[i]).collect(),
            fallback_used,
        });
    }
    if repeated == ATTEMPTS {
        return Err(Error::MultipleRoot(format!(
            "no linear form has a squarefree characteristic polynomial after {ATTEMPTS} tries"
        )));
    }
    Err(Error::NonSeparating(ATTEMPTS))
}
