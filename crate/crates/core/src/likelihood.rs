//! Likelihood equations in four formulations (standard on `X'`, conormal,
//! dual, and the Lagrange square system on `X*`), ML degrees, and likelihood
//! evaluation in the log-magnitude domain.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::{Budget, Field, Ideal, SaturationMode, GENERIC_BOUND};
use crate::poly::{parse_rational, rational_to_f64, Polynomial, VariableSet};
use crate::variety::{dual_name, jacobian, saturate_by_minors, shifted_dual_coordinates, Model, PolyMatrix};

/// Data `u = (u0, ..., un)` with nonzero entries and nonzero sum.
#[derive(Clone, Debug, PartialEq)]
pub struct DataVector {
    u: Vec<BigRational>,
    u_plus: BigRational,
}

impl DataVector {
    pub fn new(u: Vec<BigRational>) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::InvalidData("empty data vector".into()));
        }
        if let Some(i) = u.iter().position(|x| x.is_zero()) {
            return Err(Error::InvalidData(format!("entry {i} is zero")));
        }
        let u_plus: BigRational = u.iter().sum();
        if u_plus.is_zero() {
            return Err(Error::InvalidData("entries sum to zero".into()));
        }
        Ok(DataVector { u, u_plus })
    }

    pub fn from_ints(u: &[i64]) -> Result<Self> {
        DataVector::new(u.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    /// Comma-separated rationals, e.g. `2/40,13/40,5/40,20/40`.
    pub fn parse(text: &str) -> Result<Self> {
        let u = text
            .split(',')
            .map(|s| parse_rational(s).map_err(|e| Error::InvalidData(format!("`{}`: {e}", s.trim()))))
            .collect::<Result<Vec<_>>>()?;
        DataVector::new(u)
    }

    /// `n1` integers drawn uniformly from `[1, 1000]`.
    pub fn random<R: Rng>(n1: usize, rng: &mut R) -> Self {
        DataVector::new((0..n1).map(|_| BigRational::from_integer(BigInt::from(rng.random_range(1..=1000i64)))).collect())
            .expect("positive entries")
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.u
    }

    pub fn u_plus(&self) -> &BigRational {
        &self.u_plus
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.u.iter().all(|x| x.is_positive())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.u.iter().map(rational_to_f64).collect()
    }

    pub fn u_plus_f64(&self) -> f64 {
        rational_to_f64(&self.u_plus)
    }
}

impl fmt::Display for DataVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.u.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formulation {
    /// Rank conditions on `X'` in the primal coordinates, chart `ps = 1`.
    Standard,
    /// `N_{X'}` with the relations `p_i b_i = u_i`, charts `ps = 1`, `bs = -u+`.
    Conormal,
    /// Dual likelihood equations built from generators of `X*`, chart `bs = -u+`.
    Dual,
    /// Square Lagrange system on `X*`, multiplier `l0 = 1`, chart `bs = -u+`.
    Lagrange,
}

impl Formulation {
    pub fn name(&self) -> &'static str {
        match self {
            Formulation::Standard => "standard",
            Formulation::Conormal => "conormal",
            Formulation::Dual => "dual",
            Formulation::Lagrange => "lagrange",
        }
    }

    /// True for formulations whose input model is the dual variety.
    pub fn takes_dual(&self) -> bool {
        matches!(self, Formulation::Dual | Formulation::Lagrange)
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Formulation::Standard),
            "conormal" => Ok(Formulation::Conormal),
            "dual" => Ok(Formulation::Dual),
            "lagrange" => Ok(Formulation::Lagrange),
            other => Err(Error::InvalidInput(format!("unknown formulation `{other}`"))),
        }
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A zero-dimensional (for generic data) system of likelihood equations.
///
/// The first `coordinates` variables of `ideal` are the reported solution
/// coordinates (`p0..pn`, `b0..bn`, or both for the conormal formulation).
/// Any trailing variable is auxiliary: either a Lagrange multiplier or the
/// localisation variable `t` of a generic saturation, whose value is
/// determined by the other coordinates.
#[derive(Clone, Debug)]
pub struct LikelihoodSystem {
    pub formulation: Formulation,
    pub ideal: Ideal,
    pub coordinates: usize,
    /// Homogenizing coordinates fixed by the charts, with their values.
    pub chart: Vec<(String, BigRational)>,
    pub data: DataVector,
    pub warnings: Vec<String>,
}

impl LikelihoodSystem {
    /// Number of solutions counted with multiplicity.
    pub fn degree(&self, budget: &Budget) -> Result<usize> {
        match self.ideal.degree_zero_dim(budget) {
            Err(Error::NotZeroDimensional) => Err(Error::NonGenericData(format!(
                "{} likelihood ideal for u = ({}) is not zero-dimensional",
                self.formulation, self.data
            ))),
            other => other,
        }
    }

    pub fn coordinate_names(&self) -> &[String] {
        &self.ideal.vars().names()[..self.coordinates]
    }
}

/// Options shared by the ideal constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Saturation {
    /// Saturate by every coordinate in turn and by the ideal of minors as an
    /// intersection of generator saturations.
    Exact,
    /// Replace the Jacobian by `R * Jac` for a random `c x l` matrix `R`,
    /// pick one generic `c`-minor `h`, and localise at the product of the
    /// coordinates and `h` with one auxiliary variable. Same points and
    /// degree as the exact route for all `R` off a measure-zero set.
    Generic(u64),
}

/// Saturation route and coefficient field of a likelihood construction.
/// Over a prime field the degree is that of the reduction of the system
/// modulo `p`, which equals the rational degree for all but finitely many
/// primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub saturation: Saturation,
    pub field: Field,
}

impl From<Saturation> for Options {
    fn from(saturation: Saturation) -> Self {
        Options { saturation, field: Field::Rational }
    }
}

fn int_poly(vars: &Arc<VariableSet>, c: &BigRational) -> Polynomial {
    Polynomial::constant(vars, c.clone())
}

/// Appends a variable `t` and the relation `t * prod(fs) - 1`.
fn localize_at(ideal: &Ideal, fs: &[Polynomial]) -> Result<Ideal> {
    let vars = ideal.vars();
    let mut f = Polynomial::one(vars);
    for g in fs {
        f = &f * g;
    }
    ideal.localize(&f)
}

fn saturate_coordinates(ideal: &Ideal, coords: &[Polynomial], budget: &Budget) -> Result<Ideal> {
    ideal.saturate_by_each(coords, budget)
}

/// `[[r_ij]] * jac` for a random `c x rows` integer matrix; the identity when
/// the Jacobian already has exactly `c` rows.
fn project_rows<R: Rng>(jac: &PolyMatrix, c: usize, rng: &mut R) -> Result<PolyMatrix> {
    if jac.nrows() <= c {
        return Ok(jac.clone());
    }
    PolyMatrix::random_constant(jac.vars(), c, jac.nrows(), GENERIC_BOUND, rng).mul(jac)
}

/// Standard formulation on `X'` with `ps = 1`: generators of `X'`, the
/// `(c+2)`-minors of `[u0 ... un, -u+; Jac(X') diag(p0, ..., pn, ps)]`,
/// saturated by `p0 ... pn` and by the `(c+1)`-minors of `Jac(X')`.
pub fn standard_likelihood_ideal(x: &Model, u: &DataVector, opts: impl Into<Options>, budget: &Budget) -> Result<LikelihoodSystem> {
    let Options { saturation: sat, field } = opts.into();
    let n1 = x.vars().len();
    check_len(u, n1)?;
    let c = x.codim(budget)?;
    let vars = x.vars().clone();
    let one = Polynomial::one(&vars);
    // H = ps - sum p_i at ps = 1
    let mut h = one.clone();
    for i in 0..n1 {
        h = &h - &Polynomial::var(&vars, i);
    }
    let mut gens = vec![h];
    gens.extend(x.generators().iter().cloned());
    let jx = x.jacobian();
    let mut jrows: Vec<Vec<Polynomial>> = vec![(0..n1).map(|_| -&one).chain([one.clone()]).collect()];
    for r in jx.rows() {
        let mut row = r.clone();
        row.push(Polynomial::zero(&vars));
        jrows.push(row);
    }
    let jac_prime = PolyMatrix::new(&vars, jrows)?;
    let diag: Vec<Polynomial> = (0..n1).map(|i| Polynomial::var(&vars, i)).chain([one.clone()]).collect();
    let coords: Vec<Polynomial> = (0..n1).map(|i| Polynomial::var(&vars, i)).collect();
    let top: Vec<Polynomial> = u.entries().iter().map(|x| int_poly(&vars, x)).chain([int_poly(&vars, &-u.u_plus())]).collect();
    let ideal = match sat {
        Saturation::Exact => {
            let m = jac_prime.scale_columns(&diag).with_top_row(top)?;
            gens.extend(m.minors(c + 2));
            let raw = Ideal::over(field, &vars, gens)?;
            let s = saturate_coordinates(&raw, &coords, budget)?;
            saturate_by_minors(&s, &jac_prime, c + 1, SaturationMode::Exact, budget)?
        }
        Saturation::Generic(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let proj = project_rows(&jac_prime, c + 1, &mut rng)?;
            let m = proj.scale_columns(&diag).with_top_row(top)?;
            gens.extend(m.minors(c + 2));
            let hmin = proj.generic_minor(c + 1, &mut rng)?;
            let raw = Ideal::over(field, &vars, gens)?;
            let mut fs = coords.clone();
            fs.push(hmin);
            localize_at(&raw, &fs)?
        }
    };
    Ok(LikelihoodSystem {
        formulation: Formulation::Standard,
        ideal,
        coordinates: n1,
        chart: vec![(format!("{}s", x.vars().name(0).chars().next().unwrap_or('p')), BigRational::one())],
        data: u.clone(),
        warnings: Vec::new(),
    })
}

/// Conormal formulation: `N_{X'}` in the charts `ps = 1`, `bs = -u+` (the
/// conormal ideal is saturated first) plus the relations `p_i b_i = u_i`.
/// Variables are `p0..pn, b0..bn`.
pub fn conormal_mle_ideal(x: &Model, u: &DataVector, opts: impl Into<Options>, budget: &Budget) -> Result<LikelihoodSystem> {
    let Options { saturation: sat, field } = opts.into();
    let n1 = x.vars().len();
    check_len(u, n1)?;
    let c = x.codim(budget)?;
    let mut names: Vec<String> = x.vars().names().to_vec();
    for i in 0..n1 {
        let mut d = dual_name(x.vars().name(i));
        if let Some(rest) = d.strip_prefix('q') {
            d = format!("b{rest}");
        }
        while names.contains(&d) {
            d.push('_');
        }
        names.push(d);
    }
    let vars = VariableSet::new(&names)?;
    let one = Polynomial::one(&vars);
    let bs = int_poly(&vars, &-u.u_plus());
    let mut h = one.clone();
    for i in 0..n1 {
        h = &h - &Polynomial::var(&vars, i);
    }
    let xg: Vec<Polynomial> = x.generators().iter().map(|g| g.to_vars(&vars)).collect::<Result<_>>()?;
    let mut gens = vec![h];
    gens.extend(xg.iter().cloned());
    let jx = jacobian(&vars, &xg)?;
    let mut jrows: Vec<Vec<Polynomial>> = vec![(0..n1).map(|_| -&one).chain([one.clone()]).collect()];
    for r in jx.rows() {
        let mut row = r[..n1].to_vec();
        row.push(Polynomial::zero(&vars));
        jrows.push(row);
    }
    let jac_prime = PolyMatrix::new(&vars, jrows)?;
    let brow: Vec<Polynomial> = (0..n1).map(|i| Polynomial::var(&vars, n1 + i)).chain([bs]).collect();
    let relations: Vec<Polynomial> = (0..n1)
        .map(|i| &(&Polynomial::var(&vars, i) * &Polynomial::var(&vars, n1 + i)) - &int_poly(&vars, &u.entries()[i]))
        .collect();
    let ideal = match sat {
        Saturation::Exact => {
            gens.extend(jac_prime.with_top_row(brow)?.minors(c + 2));
            let raw = Ideal::over(field, &vars, gens)?;
            let n = saturate_by_minors(&raw, &jac_prime, c + 1, SaturationMode::Exact, budget)?;
            n.sum(&Ideal::over(field, &vars, relations)?)?
        }
        Saturation::Generic(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let proj = project_rows(&jac_prime, c + 1, &mut rng)?;
            gens.extend(proj.with_top_row(brow)?.minors(c + 2));
            let hmin = proj.generic_minor(c + 1, &mut rng)?;
            gens.extend(relations);
            localize_at(&Ideal::over(field, &vars, gens)?, &[hmin])?
        }
    };
    Ok(LikelihoodSystem {
        formulation: Formulation::Conormal,
        ideal,
        coordinates: 2 * n1,
        chart: vec![("ps".into(), BigRational::one()), ("bs".into(), -u.u_plus())],
        data: u.clone(),
        warnings: Vec::new(),
    })
}

/// The pieces of the dual construction in the chart `bs = -u+`: variables
/// `b0..bn`, the generators `g(b + bs)` and `Jac(X*)` evaluated at `b + bs`.
struct DualChart {
    vars: Arc<VariableSet>,
    bs_name: String,
    g_b: Vec<Polynomial>,
    jac_b: PolyMatrix,
}

fn dual_chart(xstar: &Model, u: &DataVector) -> Result<DualChart> {
    let n1 = xstar.vars().len();
    let (full, _) = shifted_dual_coordinates(xstar.vars())?;
    let bnames: Vec<&str> = full.names()[..n1].iter().map(|s| s.as_str()).collect();
    let vars = VariableSet::new(&bnames)?;
    let bs = int_poly(&vars, &-u.u_plus());
    let images: Vec<Polynomial> = (0..n1).map(|i| &Polynomial::var(&vars, i) + &bs).collect();
    let g_b = xstar.generators().iter().map(|g| g.compose(&images, &vars)).collect();
    let jq = xstar.jacobian();
    let jac_b = jq.map(&vars, |e| e.compose(&images, &vars));
    Ok(DualChart { vars, bs_name: full.name(n1).to_string(), g_b, jac_b })
}

/// Dual likelihood equations in the chart `bs = -u+`: `g(b + bs)`, the
/// `(c+1)`-minors of `[u0 ... un; Jac(X*)|_(b+bs) diag(b0, ..., bn)]`,
/// saturated by `b0 ... bn` and the `c`-minors of `Jac(X*)|_(b+bs)`.
pub fn dual_likelihood_ideal(xstar: &Model, u: &DataVector, opts: impl Into<Options>, budget: &Budget) -> Result<LikelihoodSystem> {
    let Options { saturation: sat, field } = opts.into();
    let n1 = xstar.vars().len();
    check_len(u, n1)?;
    let c = xstar.codim(budget)?;
    let DualChart { vars, bs_name, g_b, jac_b } = dual_chart(xstar, u)?;
    let coords: Vec<Polynomial> = (0..n1).map(|i| Polynomial::var(&vars, i)).collect();
    let top: Vec<Polynomial> = u.entries().iter().map(|x| int_poly(&vars, x)).collect();
    let mut gens = g_b;
    let ideal = match sat {
        Saturation::Exact => {
            gens.extend(jac_b.scale_columns(&coords).with_top_row(top)?.minors(c + 1));
            let raw = Ideal::over(field, &vars, gens)?;
            let s = saturate_coordinates(&raw, &coords, budget)?;
            saturate_by_minors(&s, &jac_b, c, SaturationMode::Exact, budget)?
        }
        Saturation::Generic(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let proj = project_rows(&jac_b, c, &mut rng)?;
            gens.extend(proj.scale_columns(&coords).with_top_row(top)?.minors(c + 1));
            let hmin = proj.generic_minor(c, &mut rng)?;
            let mut fs = coords.clone();
            fs.push(hmin);
            localize_at(&Ideal::over(field, &vars, gens)?, &fs)?
        }
    };
    Ok(LikelihoodSystem {
        formulation: Formulation::Dual,
        ideal,
        coordinates: n1,
        chart: vec![(bs_name, -u.u_plus())],
        data: u.clone(),
        warnings: Vec::new(),
    })
}

/// Square system `[1, l1, ..., lc] [grad l'_u(b); Jac(g)|_(b+bs)] diag(b0, ..., bn) = 0`
/// together with `g_i(b + bs) = 0`, in the chart `bs = -u+`.
#[derive(Clone, Debug)]
pub struct LagrangeSystem {
    pub vars: Arc<VariableSet>,
    /// `g_1(b + bs), ..., g_c(b + bs)` followed by the `n + 1` multiplier equations.
    pub equations: Vec<Polynomial>,
    /// Number of `b` coordinates (`n + 1`); the multipliers `l1..lc` follow.
    pub coordinates: usize,
    pub data: DataVector,
    /// `Jac(g)` at `b + bs`, used to discard singular solutions.
    pub jacobian: PolyMatrix,
    pub warnings: Vec<String>,
    bs_name: String,
}

impl LagrangeSystem {
    pub fn num_unknowns(&self) -> usize {
        self.vars.len()
    }

    pub fn multipliers(&self) -> usize {
        self.vars.len() - self.coordinates
    }

    /// Ideal of the square system with solutions where the `c`-minors of
    /// `Jac(g)` all vanish removed.
    pub fn admissible(&self, opts: impl Into<Options>, budget: &Budget) -> Result<LikelihoodSystem> {
        let Options { saturation: sat, field } = opts.into();
        let raw = Ideal::over(field, &self.vars, self.equations.clone())?;
        let c = self.multipliers();
        let ideal = match sat {
            Saturation::Exact => saturate_by_minors(&raw, &self.jacobian, c, SaturationMode::Exact, budget)?,
            Saturation::Generic(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let h = self.jacobian.generic_minor(c, &mut rng)?;
                localize_at(&raw, &[h])?
            }
        };
        Ok(LikelihoodSystem {
            formulation: Formulation::Lagrange,
            ideal,
            coordinates: self.coordinates,
            chart: vec![(self.bs_name.clone(), -self.data.u_plus())],
            data: self.data.clone(),
            warnings: self.warnings.clone(),
        })
    }

    /// Solutions of the raw square system, singular ones included.
    pub fn raw_ideal(&self) -> Ideal {
        Ideal::new(&self.vars, self.equations.clone()).expect("equations share the system variables")
    }
}

/// Builds the Lagrange system from the `c` generators of `xstar_partial`.
/// The caller guarantees that these cut out `X*` up to components inside
/// coordinate hyperplanes; a codimension mismatch is recorded as a warning.
pub fn lagrange_dual_system(xstar_partial: &Model, u: &DataVector, budget: Option<&Budget>) -> Result<LagrangeSystem> {
    let n1 = xstar_partial.vars().len();
    check_len(u, n1)?;
    let c = xstar_partial.generators().len();
    if c == 0 {
        return Err(Error::InvalidInput("the Lagrange system needs at least one generator".into()));
    }
    let mut warnings = Vec::new();
    if let Some(b) = budget {
        let codim = xstar_partial.codim(b)?;
        if codim != c {
            warnings.push(format!("{c} generators supplied but the codimension is {codim}"));
        }
    }
    let DualChart { vars: bvars, bs_name, g_b, jac_b } = dual_chart(xstar_partial, u)?;
    let lnames: Vec<String> = (1..=c)
        .map(|i| {
            let mut n = format!("l{i}");
            while bvars.index_of(&n).is_some() {
                n.push('_');
            }
            n
        })
        .collect();
    let vars = bvars.extended(&lnames)?;
    let lift = |p: &Polynomial| p.to_vars(&vars).expect("b variables are a prefix");
    let mut equations: Vec<Polynomial> = g_b.iter().map(lift).collect();
    for j in 0..n1 {
        let bj = Polynomial::var(&vars, j);
        let mut eq = int_poly(&vars, &u.entries()[j]);
        for i in 0..c {
            let li = Polynomial::var(&vars, n1 + i);
            eq = &eq + &(&(&li * &bj) * &lift(jac_b.get(i, j)));
        }
        equations.push(eq);
    }
    let jacobian = jac_b.map(&vars, lift);
    Ok(LagrangeSystem { vars, equations, coordinates: n1, data: u.clone(), jacobian, warnings, bs_name })
}

fn check_len(u: &DataVector, n1: usize) -> Result<()> {
    if u.len() != n1 {
        return Err(Error::LengthMismatch { expected: n1, got: u.len() });
    }
    Ok(())
}

/// Builds the system of `formulation` for `model` (`X` for standard and
/// conormal, `X*` for dual and Lagrange).
pub fn build_system(
    model: &Model,
    formulation: Formulation,
    u: &DataVector,
    opts: impl Into<Options>,
    budget: &Budget,
) -> Result<LikelihoodSystem> {
    let opts = opts.into();
    match formulation {
        Formulation::Standard => standard_likelihood_ideal(model, u, opts, budget),
        Formulation::Conormal => conormal_mle_ideal(model, u, opts, budget),
        Formulation::Dual => dual_likelihood_ideal(model, u, opts, budget),
        Formulation::Lagrange => lagrange_dual_system(model, u, Some(budget))?.admissible(opts, budget),
    }
}

/// Arithmetic used to count solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact computation over the rationals.
    Rational,
    /// Each draw is counted modulo its own random prime below `2^31`.
    Modular,
}

/// One data draw of an ML-degree computation.
#[derive(Clone, Debug)]
pub struct Draw {
    pub data: DataVector,
    pub degree: usize,
    /// Modulus used for the count, if any.
    pub prime: Option<u32>,
}

/// ML degree with its genericity certificate: two independent data draws.
#[derive(Clone, Debug)]
pub struct MlDegreeReport {
    pub degree: usize,
    pub formulation: Formulation,
    pub seed: u64,
    pub draws: Vec<Draw>,
    pub warnings: Vec<String>,
}

/// Computes the degree for two data vectors drawn from `seed` (entries in
/// `[1, 1000]`) and requires them to agree. With `exact = false` the
/// saturations use the generic route, with randomness from the same seed.
pub fn ml_degree(
    model: &Model,
    formulation: Formulation,
    seed: u64,
    exact: bool,
    arithmetic: Arithmetic,
    budget: &Budget,
) -> Result<MlDegreeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n1 = model.vars().len();
    // codimension is shared by both draws; compute it once up front
    model.codim(budget)?;
    let primes: Vec<u32> = crate::ideal::large_primes().take(256).collect();
    let mut jobs: Vec<(DataVector, Options)> = Vec::new();
    for k in 0..2 {
        let u = DataVector::random(n1, &mut rng);
        let saturation = if exact { Saturation::Exact } else { Saturation::Generic(rng.next_u64()) };
        let field = match arithmetic {
            Arithmetic::Rational => Field::Rational,
            // distinct primes for the two draws
            Arithmetic::Modular => Field::Prime(primes[2 * rng.random_range(0..128) + k]),
        };
        jobs.push((u, Options { saturation, field }));
    }
    let results: Vec<Result<(usize, Vec<String>)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(u, o)| {
                scope.spawn(move || {
                    let sys = build_system(model, formulation, u, *o, budget)?;
                    Ok((sys.degree(budget)?, sys.warnings))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut draws = Vec::new();
    let mut warnings = Vec::new();
    for ((data, o), r) in jobs.into_iter().zip(results) {
        let (degree, w) = r?;
        let prime = match o.field {
            Field::Prime(p) => Some(p),
            Field::Rational => None,
        };
        draws.push(Draw { data, degree, prime });
        for x in w {
            if !warnings.contains(&x) {
                warnings.push(x);
            }
        }
    }
    if draws[0].degree != draws[1].degree {
        return Err(Error::GenericityFailure(format!(
            "degrees {} and {} for u = ({}) and u = ({})",
            draws[0].degree, draws[1].degree, draws[0].data, draws[1].data
        )));
    }
    Ok(MlDegreeReport { degree: draws[0].degree, formulation, seed, draws, warnings })
}

/// `p_i = u_i / b_i`, `ps = p0 + ... + pn`.
pub fn recover_primal(b: &[Complex64], u: &DataVector) -> Result<Vec<Complex64>> {
    let uf = u.to_f64();
    if b.len() < uf.len() {
        return Err(Error::LengthMismatch { expected: uf.len(), got: b.len() });
    }
    let mut p = Vec::with_capacity(uf.len() + 1);
    for (i, (&ui, &bi)) in uf.iter().zip(b).enumerate() {
        if bi == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroCoordinate(i));
        }
        p.push(ui / bi);
    }
    let ps = p.iter().sum();
    p.push(ps);
    Ok(p)
}

/// Exact version of [`recover_primal`].
pub fn recover_primal_exact(b: &[BigRational], u: &DataVector) -> Result<Vec<BigRational>> {
    let mut p = Vec::with_capacity(u.len() + 1);
    for (i, (ui, bi)) in u.entries().iter().zip(b).enumerate() {
        if bi.is_zero() {
            return Err(Error::ZeroCoordinate(i));
        }
        p.push(ui / bi);
    }
    let ps = p.iter().sum();
    p.push(ps);
    Ok(p)
}

fn log_abs(z: Complex64, i: usize) -> Result<f64> {
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::ZeroCoordinate(i));
    }
    Ok(r.ln())
}

/// `log |l'_u(x)| = sum u_i log|x_i| - u+ log|x_s|` for `x = (x0, ..., xn, xs)`.
fn log_monomial_likelihood(x: &[Complex64], u: &DataVector) -> Result<f64> {
    let uf = u.to_f64();
    if x.len() != uf.len() + 1 {
        return Err(Error::LengthMismatch { expected: uf.len() + 1, got: x.len() });
    }
    let mut acc = 0.0;
    for (i, &ui) in uf.iter().enumerate() {
        acc += ui * log_abs(x[i], i)?;
    }
    Ok(acc - u.u_plus_f64() * log_abs(x[uf.len()], uf.len())?)
}

/// `log |l'_u(p)|` at `p = (p0, ..., pn, ps)`; on `X'` this is `log |l_u|`.
pub fn likelihood_value(p: &[Complex64], u: &DataVector) -> Result<f64> {
    log_monomial_likelihood(p, u)
}

/// `log |l'_u(b)|` at `b = (b0, ..., bn, bs)`.
pub fn dual_likelihood_value(b: &[Complex64], u: &DataVector) -> Result<f64> {
    log_monomial_likelihood(b, u)
}

/// `|log l'_u(p) + log l'_u(b) - (sum u_i log|u_i| - u+ log|u+|)|`: zero at every
/// critical pair.
pub fn product_invariant_residual(p: &[Complex64], b: &[Complex64], u: &DataVector) -> Result<f64> {
    let uf = u.to_f64();
    let up = u.u_plus_f64();
    let constant: f64 = uf.iter().map(|x| x * x.abs().ln()).sum::<f64>() - up * up.abs().ln();
    Ok((likelihood_value(p, u)? + dual_likelihood_value(b, u)? - constant).abs())
}

/// Index and `log l_u` of the real point with all coordinates positive and
/// the largest likelihood; `None` when there is no such point. Points are
/// `(p0, ..., pn, ps)`, and a point is real when every imaginary part is at
/// most `imag_tol` in absolute value.
pub fn select_mle(points: &[Vec<Complex64>], u: &DataVector, imag_tol: f64) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, p) in points.iter().enumerate() {
        if !p.iter().all(|z| z.im.abs() <= imag_tol && z.re > 0.0) {
            continue;
        }
        let Ok(v) = likelihood_value(p, u) else { continue };
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best
}

/// Which coordinate-wise product [`ml_duality_product_check`] compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductSide {
    /// Primal points; product `[u_i+ u_+j u_ij / u_++^3 : 1]`.
    Primal,
    /// Dual points; product `[u_ij u_++ / (u_i+ u_+j) : 1]`.
    Dual,
}

/// Expected coordinate-wise product for an `m x n` table, row-major, with
/// the homogenizing coordinate normalized to 1 (not included).
pub fn ml_duality_target(table: &[Vec<f64>], side: ProductSide) -> Vec<f64> {
    let rows: Vec<f64> = table.iter().map(|r| r.iter().sum()).collect();
    let ncols = table.first().map_or(0, |r| r.len());
    let cols: Vec<f64> = (0..ncols).map(|j| table.iter().map(|r| r[j]).sum()).collect();
    let total: f64 = rows.iter().sum();
    let mut out = Vec::new();
    for (i, r) in table.iter().enumerate() {
        for (j, &uij) in r.iter().enumerate() {
            out.push(match side {
                ProductSide::Primal => rows[i] * cols[j] * uij / total.powi(3),
                ProductSide::Dual => uij * total / (rows[i] * cols[j]),
            });
        }
    }
    out
}

/// True iff the points of `xs` and `ys` (each `(x_11, ..., x_mn, x_s)`) can be
/// paired so that every coordinate-wise product, scaled to last coordinate
/// 1, matches [`ml_duality_target`] to relative tolerance `tol`.
pub fn ml_duality_product_check(
    xs: &[Vec<Complex64>],
    ys: &[Vec<Complex64>],
    table: &[Vec<f64>],
    side: ProductSide,
    tol: f64,
) -> Result<bool> {
    if xs.len() != ys.len() {
        return Err(Error::CountMismatch(format!("{} points against {} points", xs.len(), ys.len())));
    }
    let target = ml_duality_target(table, side);
    let mut used = vec![false; ys.len()];
    for x in xs {
        let found = ys.iter().enumerate().position(|(k, y)| {
            if used[k] || x.len() != target.len() + 1 || y.len() != target.len() + 1 {
                return false;
            }
            let last = x[target.len()] * y[target.len()];
            if last.norm() == 0.0 {
                return false;
            }
            target.iter().enumerate().all(|(i, &t)| {
                let prod = x[i] * y[i] / last;
                (prod - Complex64::new(t, 0.0)).norm() <= tol * t.abs().max(1e-300)
            })
        });
        match found {
            Some(k) => used[k] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}
