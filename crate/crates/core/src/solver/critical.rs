//! Critical points of a likelihood system as paired primal and dual points.

use num_complex::Complex64;

use super::numeric::solve_points;
use super::{certify_count, eliminant, CountCertificate};
use crate::error::Result;
use crate::ideal::Budget;
use crate::likelihood::{
    dual_likelihood_value, likelihood_value, product_invariant_residual, recover_primal, DataVector, Formulation,
    LikelihoodSystem,
};
use crate::poly::Polynomial;

/// One critical point with both coordinate sets.
#[derive(Clone, Debug)]
pub struct CriticalPoint {
    /// `(p0, ..., pn, ps)` with `ps = 1`.
    pub p: Vec<Complex64>,
    /// `(b0, ..., bn, bs)` with `bs = -u+`.
    pub b: Vec<Complex64>,
    /// `b` rescaled so that `bs = -1`.
    pub b_unit: Vec<Complex64>,
    /// `log |l'_u(p)|`
    pub log_likelihood: f64,
    /// `log |l'_u(b)|`
    pub log_dual_likelihood: f64,
    pub invariant_residual: f64,
    /// Relative residual of the solved system's generators.
    pub residual: f64,
    pub real: bool,
    /// Real with `p0, ..., pn > 0`.
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct CriticalPointSet {
    pub formulation: Formulation,
    pub data: DataVector,
    pub points: Vec<CriticalPoint>,
    /// Eliminants of the system coordinates, in coordinate order.
    pub eliminants: Vec<(String, Polynomial)>,
    pub count: usize,
    /// Present when eliminants were requested.
    pub certificate: Option<CountCertificate>,
    pub fallback_used: bool,
}

const IMAG_TOL: f64 = 1e-8;

fn is_real(v: &[Complex64]) -> bool {
    v.iter().all(|z| z.im.abs() <= IMAG_TOL * (1.0 + z.norm()))
}

impl CriticalPointSet {
    /// Index and log-likelihood of the positive point with the largest
    /// likelihood.
    pub fn mle(&self) -> Option<(usize, f64)> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, c)| c.positive)
            .max_by(|a, b| a.1.log_likelihood.total_cmp(&b.1.log_likelihood))
            .map(|(i, c)| (i, c.log_likelihood))
    }

    /// Sorting the positive points by increasing `l'_u(p)` sorts them by
    /// decreasing `l'_u(b)`.
    pub fn order_reversal_holds(&self) -> bool {
        let mut pos: Vec<&CriticalPoint> = self.points.iter().filter(|c| c.positive).collect();
        pos.sort_by(|a, b| a.log_likelihood.total_cmp(&b.log_likelihood));
        pos.windows(2).all(|w| w[0].log_dual_likelihood >= w[1].log_dual_likelihood)
    }

    pub fn max_invariant_residual(&self) -> f64 {
        self.points.iter().map(|c| c.invariant_residual).fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

fn pair(formulation: Formulation, coords: &[Complex64], u: &DataVector) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n1 = u.len();
    let uf = u.to_f64();
    let bs = Complex64::new(-u.u_plus_f64(), 0.0);
    let one = Complex64::new(1.0, 0.0);
    Ok(match formulation {
        Formulation::Standard => {
            let mut p = coords[..n1].to_vec();
            p.push(one);
            let mut b: Vec<Complex64> = uf.iter().zip(&p).map(|(ui, pi)| ui / pi).collect();
            b.push(bs);
            (p, b)
        }
        Formulation::Conormal => {
            let mut p = coords[..n1].to_vec();
            p.push(one);
            let mut b = coords[n1..2 * n1].to_vec();
            b.push(bs);
            (p, b)
        }
        Formulation::Dual | Formulation::Lagrange => {
            let mut b = coords[..n1].to_vec();
            b.push(bs);
            (recover_primal(&b, u)?, b)
        }
    })
}

/// Solves `sys` numerically and pairs every solution with its primal or dual
/// counterpart. With `with_eliminants`, the exact eliminant of every
/// coordinate and a count certificate are included.
pub fn critical_points(sys: &LikelihoodSystem, seed: u64, with_eliminants: bool, budget: &Budget) -> Result<CriticalPointSet> {
    let sol = solve_points(&sys.ideal, seed, budget)?;
    let u = &sys.data;
    let up = u.u_plus_f64();
    let mut points = Vec::with_capacity(sol.points.len());
    for (x, &residual) in sol.points.iter().zip(&sol.residuals) {
        let (p, b) = pair(sys.formulation, x, u)?;
        let b_unit: Vec<Complex64> = b.iter().map(|z| z / up).collect();
        let real = is_real(&p) && is_real(&b);
        let positive = real && p[..u.len()].iter().all(|z| z.re > 0.0);
        points.push(CriticalPoint {
            log_likelihood: likelihood_value(&p, u)?,
            log_dual_likelihood: dual_likelihood_value(&b, u)?,
            invariant_residual: product_invariant_residual(&p, &b, u)?,
            p,
            b,
            b_unit,
            residual,
            real,
            positive,
        });
    }
    let mut eliminants = Vec::new();
    let mut certificate = None;
    if with_eliminants {
        certificate = Some(certify_count(&sol, &sys.ideal, budget)?);
        for name in sys.coordinate_names() {
            eliminants.push((name.clone(), eliminant(&sys.ideal, name, budget)?));
        }
    }
    Ok(CriticalPointSet {
        formulation: sys.formulation,
        data: u.clone(),
        count: points.len(),
        points,
        eliminants,
        certificate,
        fallback_used: sol.fallback_used,
    })
}
