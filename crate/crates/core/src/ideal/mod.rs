//! Ideals, Groebner bases and the ideal-theoretic operations built on them.
//!
//! Ideals live either over the rationals or over a prime field `F_p`. Over
//! `F_p` the generators are stored with integer coefficients in the
//! symmetric range `(-p/2, p/2]`.

mod coeff;
pub(crate) mod engine;
mod modular;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};

use crate::error::{Error, ResourceKind, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, VariableSet};
use coeff::{Coeff, Fp, Int};
use engine::{EPoly, Elem};

/// Caps for Groebner basis computations. Exceeding any of them aborts the
/// computation with [`Error::ResourceLimit`].
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_basis: usize,
    pub max_coeff_bits: u64,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_basis: 50_000, max_coeff_bits: 2_000_000, deadline: None }
    }
}

impl Budget {
    pub fn with_time_limit(limit: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + limit), ..Budget::default() }
    }

    /// Same caps with a deadline `limit` from now.
    pub fn with_deadline(self, limit: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + limit), ..self }
    }

    /// Reads `MLDUAL_TIME_LIMIT` (seconds), `MLDUAL_MAX_BASIS` and
    /// `MLDUAL_MAX_COEFF_BITS`, falling back to the defaults.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(secs) = env_parse::<f64>("MLDUAL_TIME_LIMIT") {
            b.deadline = Some(Instant::now() + Duration::from_secs_f64(secs));
        }
        if let Some(n) = env_parse("MLDUAL_MAX_BASIS") {
            b.max_basis = n;
        }
        if let Some(n) = env_parse("MLDUAL_MAX_COEFF_BITS") {
            b.max_coeff_bits = n;
        }
        b
    }
}

fn env_parse<T: std::str::FromStr>(key: &str) -> Option<T> {
    std::env::var(key).ok().and_then(|v| v.trim().parse().ok())
}

/// How `(I : J^inf)` is computed for a non-principal `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationMode {
    /// Intersection of the saturations by each generator of `J`.
    Exact,
    /// Saturation by one random element of `J` drawn from the given seed.
    Generic(u64),
}

/// Coefficient field of an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// `Z/pZ` for a prime `p < 2^31`.
    Prime(u32),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Primes below `2^31`, largest first. Suitable moduli for
/// [`Ideal::reduce_mod`].
pub fn large_primes() -> impl Iterator<Item = u32> {
    coeff::primes_below_2_31()
}

/// Fraction-free runs over the rationals give up at this coefficient size
/// and hand over to the multi-modular method.
const FRACTION_FREE_BITS: u64 = 1024;

pub(crate) type RPoly = Vec<(Monomial, BigRational)>;

/// Terms of `p` with variable `i` relabelled as `map[i]` in a ring with
/// `nvars` variables.
fn relabel(p: &Polynomial, map: Option<&[usize]>, nvars: usize) -> RPoly {
    p.terms()
        .map(|(m, c)| {
            let m = match map {
                Some(map) => m.remap(map, nvars),
                None => m.clone(),
            };
            (m, c.clone())
        })
        .collect()
}

/// Integer multiple `L * p` with `L` the lcm of the denominators.
fn clear_denominators(p: &RPoly) -> (EPoly<Int>, BigInt) {
    let mut den = BigInt::one();
    for (_, c) in p {
        den = den.lcm(c.denom());
    }
    let terms = p.iter().map(|(m, c)| (m.clone(), Int::from(c.numer() * (&den / c.denom())))).collect();
    (terms, den)
}

pub(crate) fn rpoly_to_int(p: &RPoly) -> EPoly<Int> {
    clear_denominators(p).0
}

fn residue(c: &BigRational, p: u32) -> Option<Fp> {
    let d = Fp::from_bigint(c.denom(), p);
    if d.is_zero() {
        return None;
    }
    let n = Fp::from_bigint(c.numer(), p);
    Some(n.mul(&d.inv(p), p))
}

/// Image modulo `p`; `None` if a denominator vanishes there.
pub(crate) fn rpoly_to_fp(f: &RPoly, p: u32) -> Option<EPoly<Fp>> {
    let mut out = Vec::with_capacity(f.len());
    for (m, c) in f {
        let r = residue(c, p)?;
        if !r.is_zero() {
            out.push((m.clone(), r));
        }
    }
    Some(out)
}

fn symmetric(c: Fp, p: u32) -> BigRational {
    let v = if c.0 > p / 2 { c.0 as i64 - p as i64 } else { c.0 as i64 };
    BigRational::from_integer(BigInt::from(v))
}

fn fp_to_rpoly(f: &EPoly<Fp>, p: u32) -> RPoly {
    f.iter().map(|(m, c)| (m.clone(), symmetric(*c, p))).collect()
}

fn int_to_monic(f: &EPoly<Int>) -> RPoly {
    let lc = BigRational::from_integer(f[0].1.to_bigint());
    f.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.to_bigint()) / &lc)).collect()
}

/// Coefficients of `f` replaced by symmetric residues modulo `p`.
fn reduce_poly(f: &Polynomial, p: u32) -> Result<Polynomial> {
    let r = rpoly_to_fp(&relabel(f, None, f.vars().len()), p)
        .ok_or_else(|| Error::InvalidInput(format!("a denominator vanishes modulo {p}")))?;
    Ok(Polynomial::from_terms(f.vars(), fp_to_rpoly(&r, p)))
}

/// Reduced monic basis of `input`, whose terms live in a ring with the
/// number of variables of their monomials.
fn run_groebner(field: Field, input: Vec<RPoly>, order: MonomialOrder, budget: &Budget) -> Result<Vec<RPoly>> {
    match field {
        Field::Prime(p) => {
            let fp = input
                .iter()
                .map(|f| rpoly_to_fp(f, p).ok_or_else(|| Error::InvalidInput(format!("a denominator vanishes modulo {p}"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(engine::groebner(fp, order, p, budget)?.iter().map(|g| fp_to_rpoly(g, p)).collect())
        }
        Field::Rational => {
            let cap = budget.max_coeff_bits.min(FRACTION_FREE_BITS);
            let ff = Budget { max_coeff_bits: cap, ..*budget };
            let ints = input.iter().map(rpoly_to_int).collect();
            match engine::groebner(ints, order, (), &ff) {
                Ok(out) => Ok(out.iter().map(int_to_monic).collect()),
                Err(Error::ResourceLimit { kind: ResourceKind::CoefficientBits, .. }) if cap < budget.max_coeff_bits => {
                    modular::groebner_rational(&input, order, budget)
                }
                Err(e) => Err(e),
            }
        }
    }
}

#[derive(Clone)]
enum EngineBasis {
    Int(Vec<Elem<Int>>),
    Prime(u32, Vec<Elem<Fp>>),
}

/// Reduced Groebner basis with respect to one order.
#[derive(Clone)]
pub struct GroebnerBasis {
    vars: Arc<VariableSet>,
    order: MonomialOrder,
    field: Field,
    elements: Vec<Polynomial>,
    lms: Vec<Monomial>,
    engine: EngineBasis,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order)
            .field("field", &self.field)
            .field("elements", &self.elements)
            .finish()
    }
}

impl GroebnerBasis {
    /// `polys` must be monic, reduced and sorted by increasing leading
    /// monomial.
    fn build(vars: &Arc<VariableSet>, order: MonomialOrder, field: Field, polys: Vec<RPoly>) -> Self {
        let lms = polys.iter().map(|p| p[0].0.clone()).collect();
        let engine = match field {
            Field::Rational => EngineBasis::Int(polys.iter().map(|p| Elem::new(rpoly_to_int(p), 0)).collect()),
            Field::Prime(q) => EngineBasis::Prime(
                q,
                polys.iter().map(|p| Elem::new(rpoly_to_fp(p, q).expect("residues"), 0)).collect(),
            ),
        };
        let elements = polys.into_iter().map(|p| Polynomial::from_terms(vars, p)).collect();
        GroebnerBasis { vars: vars.clone(), order, field, elements, lms, engine }
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Monic elements, sorted by increasing leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// Always true: bases produced here are inter-reduced and monic.
    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.lms.clone()
    }

    /// Remainder of `f` on division by the basis; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !VariableSet::compatible(f.vars(), &self.vars) {
            return Err(Error::VariableSetMismatch);
        }
        if f.is_zero() {
            return Ok(f.clone());
        }
        let budget = Budget::default();
        let ctl = engine::Ctl::new(&budget);
        let mut sugar = 0;
        let terms = relabel(f, None, self.vars.len());
        match &self.engine {
            EngineBasis::Int(elems) => {
                let (mut p, den) = clear_denominators(&terms);
                engine::sort_poly(self.order, &mut p);
                let mut scale = (Int::one(), Int::one());
                let rem = engine::reduce(self.order, (), p, elems, &mut sugar, Some(&mut scale), &ctl)?;
                // rem = num/den_s * L * NF(f)
                let factor = BigRational::new(scale.1.to_bigint(), scale.0.to_bigint() * den);
                let r: RPoly = rem.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.to_bigint()) * &factor)).collect();
                Ok(Polynomial::from_terms(&self.vars, r))
            }
            EngineBasis::Prime(q, elems) => {
                let mut p = rpoly_to_fp(&terms, *q)
                    .ok_or_else(|| Error::InvalidInput(format!("a denominator vanishes modulo {q}")))?;
                engine::sort_poly(self.order, &mut p);
                let rem = engine::reduce(self.order, *q, p, elems, &mut sugar, None, &ctl)?;
                Ok(Polynomial::from_terms(&self.vars, fp_to_rpoly(&rem, *q)))
            }
        }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Re-checks Buchberger's criterion on the stored basis.
    pub fn verify(&self, budget: &Budget) -> Result<bool> {
        match &self.engine {
            EngineBasis::Int(elems) => {
                let polys: Vec<EPoly<Int>> = elems.iter().map(|e| e.poly.clone()).collect();
                engine::is_groebner(self.order, (), &polys, budget)
            }
            EngineBasis::Prime(q, elems) => {
                let polys: Vec<EPoly<Fp>> = elems.iter().map(|e| e.poly.clone()).collect();
                engine::is_groebner(self.order, *q, &polys, budget)
            }
        }
    }

    /// True iff every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let lms = self.leading_monomials();
        (0..self.vars.len()).all(|i| lms.iter().any(|m| matches!(m.pure_power(), Some((j, _)) if j == i)))
    }

    /// Krull dimension of the affine scheme: size of a largest set of
    /// variables containing the support of no leading monomial. `-1` for
    /// the unit ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.vars.len();
        assert!(n <= 30, "dimension search limited to 30 variables");
        let supports: Vec<u32> = self
            .leading_monomials()
            .iter()
            .map(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u32, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        for k in (0..=n).rev() {
            if combinations_any(n, k, &mut |set| supports.iter().all(|&s| s & !set != 0)) {
                return k as i64;
            }
        }
        0
    }

    pub fn quotient_basis(&self) -> Result<QuotientBasis> {
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        let nv = self.vars.len();
        if self.is_unit() {
            return Ok(QuotientBasis { order: self.order, monomials: Vec::new() });
        }
        let lms = self.leading_monomials();
        let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut frontier = vec![Monomial::one(nv)];
        seen.insert(Monomial::one(nv));
        while let Some(m) = frontier.pop() {
            for i in 0..nv {
                let next = m.mul(&Monomial::var(nv, i));
                if !seen.contains(&next) && standard(&next) {
                    seen.insert(next.clone());
                    frontier.push(next);
                    if seen.len() > 1_000_000 {
                        return Err(Error::ResourceLimit {
                            kind: crate::error::ResourceKind::BasisSize,
                            detail: "more than 10^6 standard monomials".into(),
                        });
                    }
                }
            }
        }
        let mut monomials: Vec<Monomial> = seen.into_iter().collect();
        monomials.sort_by(|a, b| self.order.cmp(a, b));
        Ok(QuotientBasis { order: self.order, monomials })
    }
}

fn combinations_any(n: usize, k: usize, pred: &mut dyn FnMut(u32) -> bool) -> bool {
    fn rec(start: usize, n: usize, left: usize, acc: u32, pred: &mut dyn FnMut(u32) -> bool) -> bool {
        if left == 0 {
            return pred(acc);
        }
        for i in start..=(n - left) {
            if rec(i + 1, n, left - 1, acc | (1 << i), pred) {
                return true;
            }
        }
        false
    }
    rec(0, n, k, 0, pred)
}

/// Standard monomials of a zero-dimensional basis, increasing in its order.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    pub order: MonomialOrder,
    pub monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index(&self) -> BTreeMap<Monomial, usize> {
        self.monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
    }
}

/// Finitely generated ideal with a per-order cache of reduced bases.
#[derive(Clone)]
pub struct Ideal {
    vars: Arc<VariableSet>,
    field: Field,
    gens: Vec<Polynomial>,
    cache: Arc<Mutex<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")?;
        if let Field::Prime(p) = self.field {
            write!(f, " mod {p}")?;
        }
        Ok(())
    }
}

impl Ideal {
    /// Ideal over the rationals. Zero generators are dropped.
    pub fn new(vars: &Arc<VariableSet>, gens: Vec<Polynomial>) -> Result<Self> {
        Ideal::over(Field::Rational, vars, gens)
    }

    /// Ideal over `field`; over a prime field the coefficients are reduced.
    pub fn over(field: Field, vars: &Arc<VariableSet>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !VariableSet::compatible(g.vars(), vars) {
                return Err(Error::VariableSetMismatch);
            }
        }
        let gens = match field {
            Field::Rational => gens,
            Field::Prime(p) => gens.iter().map(|g| reduce_poly(g, p)).collect::<Result<_>>()?,
        };
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { vars: vars.clone(), field, gens, cache: Default::default() })
    }

    pub fn principal(f: Polynomial) -> Self {
        let vars = f.vars().clone();
        Ideal::new(&vars, vec![f]).unwrap()
    }

    pub fn zero(vars: &Arc<VariableSet>) -> Self {
        Ideal::new(vars, Vec::new()).unwrap()
    }

    pub fn unit(vars: &Arc<VariableSet>) -> Self {
        Ideal::principal(Polynomial::one(vars))
    }

    pub fn parse(vars: &Arc<VariableSet>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|g| Polynomial::parse(vars, g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(vars, polys)
    }

    /// The same generators over `F_p`. Fails if `p` is not a prime below
    /// `2^31` or divides a denominator.
    pub fn reduce_mod(&self, p: u32) -> Result<Ideal> {
        if !coeff::is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidInput(format!("{p} is not a prime below 2^31")));
        }
        match self.field {
            Field::Rational => Ideal::over(Field::Prime(p), &self.vars, self.gens.clone()),
            Field::Prime(q) if q == p => Ok(self.clone()),
            Field::Prime(q) => Err(Error::InvalidInput(format!("ideal already lives modulo {q}"))),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// New ideal over the same field.
    fn derived(&self, vars: &Arc<VariableSet>, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ideal::over(self.field, vars, gens)
    }

    fn check_compatible(&self, other: &Ideal) -> Result<()> {
        if !VariableSet::compatible(&self.vars, &other.vars) {
            return Err(Error::VariableSetMismatch);
        }
        if self.field != other.field {
            return Err(Error::InvalidInput(format!("ideals over {} and {}", self.field, other.field)));
        }
        Ok(())
    }

    fn with_cached(self, gb: GroebnerBasis) -> Self {
        self.cache.lock().unwrap().insert(gb.order, Arc::new(gb));
        self
    }

    pub fn cached_groebner(&self, order: MonomialOrder) -> Option<Arc<GroebnerBasis>> {
        self.cache.lock().unwrap().get(&order).cloned()
    }

    /// Reduced Groebner basis for `order`, computed once and cached.
    pub fn groebner(&self, order: MonomialOrder, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cached_groebner(order) {
            return Ok(gb);
        }
        let n = self.vars.len();
        let input: Vec<RPoly> = self.gens.iter().map(|g| relabel(g, None, n)).collect();
        let out = run_groebner(self.field, input, order, budget)?;
        let gb = Arc::new(GroebnerBasis::build(&self.vars, order, self.field, out));
        self.cache.lock().unwrap().insert(order, gb.clone());
        Ok(gb)
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        self.groebner(MonomialOrder::DegRevLex, budget)?.contains(f)
    }

    /// True iff `self` is contained in `other`.
    pub fn is_subset_of(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::InvalidInput(format!("ideals over {} and {}", self.field, other.field)));
        }
        let gb = other.groebner(MonomialOrder::DegRevLex, budget)?;
        for g in &self.gens {
            if !gb.contains(&g.to_vars(&other.vars)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        Ok(self.is_subset_of(other, budget)? && other.is_subset_of(self, budget)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_compatible(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        self.derived(&self.vars, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_compatible(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        self.derived(&self.vars, gens)
    }

    /// Relabelling into a ring with `extra` new leading variables (indices
    /// `0..extra`), original variable `i` at `extra + i`.
    fn lift(&self, extra: usize) -> (Vec<usize>, usize) {
        let n = self.vars.len();
        ((0..n).map(|i| i + extra).collect(), n + extra)
    }

    /// `(I : f^inf)` via an auxiliary variable `t` and elimination of `t`
    /// from `I + <t f - 1>`.
    pub fn saturate(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
        if !VariableSet::compatible(f.vars(), &self.vars) {
            return Err(Error::VariableSetMismatch);
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("cannot saturate by the zero polynomial".into()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let (map, nv) = self.lift(1);
        let mut input: Vec<RPoly> = self.gens.iter().map(|g| relabel(g, Some(&map), nv)).collect();
        let mut tf = relabel(f, Some(&map), nv);
        for t in tf.iter_mut() {
            t.0.set_exponent(0, 1);
        }
        tf.push((Monomial::one(nv), -BigRational::one()));
        input.push(tf);
        self.eliminate_front(input, 1, budget)
    }

    /// Runs a block-elimination basis over `input` (which lives in a ring
    /// with `extra` leading auxiliary variables) and keeps the elements free
    /// of those variables.
    fn eliminate_front(&self, input: Vec<RPoly>, extra: usize, budget: &Budget) -> Result<Ideal> {
        let out = run_groebner(self.field, input, MonomialOrder::BlockElim(extra), budget)?;
        let kept = strip_front(out, extra);
        let gens: Vec<Polynomial> = kept.iter().map(|p| Polynomial::from_terms(&self.vars, p.clone())).collect();
        let ideal = self.derived(&self.vars, gens)?;
        // a block order restricted to the second block is degrevlex
        let gb = GroebnerBasis::build(&self.vars, MonomialOrder::DegRevLex, self.field, kept);
        Ok(ideal.with_cached(gb))
    }

    /// Sequential saturation by each polynomial in turn.
    pub fn saturate_by_each(&self, fs: &[Polynomial], budget: &Budget) -> Result<Ideal> {
        let mut cur = self.clone();
        for f in fs {
            cur = cur.saturate(f, budget)?;
        }
        Ok(cur)
    }

    /// `I ∩ K = elim_t(t I + (1 - t) K)`.
    pub fn intersect(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        self.check_compatible(other)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return self.derived(&self.vars, Vec::new());
        }
        let (map, nv) = self.lift(1);
        let t = Monomial::var(nv, 0);
        let mut input: Vec<RPoly> = Vec::new();
        for g in &self.gens {
            let mut p = relabel(g, Some(&map), nv);
            for term in p.iter_mut() {
                term.0 = term.0.mul(&t);
            }
            input.push(p);
        }
        for g in &other.gens {
            let p = relabel(g, Some(&map), nv);
            // (1 - t) * p
            let mut q = p.clone();
            for (m, c) in p {
                q.push((m.mul(&t), -c));
            }
            input.push(q);
        }
        self.eliminate_front(input, 1, budget)
    }

    /// `(I : J^inf) = ∩_{g ∈ gens(J)} (I : g^inf)`.
    pub fn saturate_by_ideal(&self, j: &Ideal, budget: &Budget) -> Result<Ideal> {
        self.check_compatible(j)?;
        if j.gens.is_empty() {
            return Err(Error::InvalidInput("cannot saturate by the zero ideal".into()));
        }
        if j.gens.iter().any(|g| g.is_constant()) {
            return Ok(self.clone());
        }
        let mut acc: Option<Ideal> = None;
        for g in &j.gens {
            let s = self.saturate(g, budget)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s, budget)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// `(I : J^inf)` computed as `(I : h^inf)` for a random combination `h`
    /// of the generators of `J`. Agrees with [`Ideal::saturate_by_ideal`]
    /// unless the coefficients hit one of finitely many bad hyperplanes.
    pub fn saturate_by_ideal_generic<R: Rng>(&self, j: &Ideal, rng: &mut R, budget: &Budget) -> Result<Ideal> {
        self.check_compatible(j)?;
        if j.gens.is_empty() {
            return Err(Error::InvalidInput("cannot saturate by the zero ideal".into()));
        }
        if j.gens.iter().any(|g| g.is_constant()) {
            return Ok(self.clone());
        }
        let h = random_combination(&j.gens, rng);
        let h = match self.field {
            Field::Rational => h,
            Field::Prime(p) => reduce_poly(&h, p)?,
        };
        if h.is_zero() {
            return Err(Error::GenericityFailure("random combination vanished".into()));
        }
        self.saturate(&h, budget)
    }

    pub fn saturate_by_ideal_mode(&self, j: &Ideal, mode: SaturationMode, budget: &Budget) -> Result<Ideal> {
        match mode {
            SaturationMode::Exact => self.saturate_by_ideal(j, budget),
            SaturationMode::Generic(seed) => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                self.saturate_by_ideal_generic(j, &mut rng, budget)
            }
        }
    }

    /// `I ∩ k[remaining variables]`, returned over the remaining variables in
    /// their original order.
    pub fn eliminate(&self, names: &[&str], budget: &Budget) -> Result<Ideal> {
        let mut elim = Vec::new();
        for name in names {
            let idx = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            if !elim.contains(&idx) {
                elim.push(idx);
            }
        }
        elim.sort_unstable();
        let n = self.vars.len();
        let keep: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
        let keep_names: Vec<&str> = keep.iter().map(|&i| self.vars.name(i)).collect();
        let target = VariableSet::new(&keep_names)?;
        // eliminated variables first, the rest after, both in original order
        let mut map = vec![0usize; n];
        for (pos, &i) in elim.iter().chain(keep.iter()).enumerate() {
            map[i] = pos;
        }
        let input: Vec<RPoly> = self.gens.iter().map(|g| relabel(g, Some(&map), n)).collect();
        let k = elim.len();
        let out = run_groebner(self.field, input, MonomialOrder::BlockElim(k), budget)?;
        let kept = strip_front(out, k);
        let gens = kept.iter().map(|p| Polynomial::from_terms(&target, p.clone())).collect();
        let ideal = self.derived(&target, gens)?;
        let gb = GroebnerBasis::build(&target, MonomialOrder::DegRevLex, self.field, kept);
        Ok(ideal.with_cached(gb))
    }

    /// Affine Krull dimension (`-1` for the unit ideal).
    pub fn dimension(&self, budget: &Budget) -> Result<i64> {
        Ok(self.groebner(MonomialOrder::DegRevLex, budget)?.dimension())
    }

    /// Codimension of the projective variety in `P^ambient` cut out by a
    /// homogeneous ideal over `ambient + 1` variables.
    pub fn codimension(&self, ambient: usize, budget: &Budget) -> Result<usize> {
        let d = self.dimension(budget)?;
        Ok(((ambient as i64 + 1) - d.max(0)) as usize)
    }

    pub fn quotient_basis(&self, order: MonomialOrder, budget: &Budget) -> Result<QuotientBasis> {
        self.groebner(order, budget)?.quotient_basis()
    }

    /// Vector-space dimension of the quotient ring (number of solutions with
    /// multiplicity). Requires a zero-dimensional ideal.
    pub fn degree_zero_dim(&self, budget: &Budget) -> Result<usize> {
        Ok(self.quotient_basis(MonomialOrder::DegRevLex, budget)?.len())
    }

    /// `I + <t f - 1>` in a ring with a fresh last variable `t`. Its quotient
    /// is the localisation of `k[x]/I` at `f`, so for zero-dimensional
    /// `(I : f^inf)` it has the same dimension and the same points.
    ///
    /// Over the rationals `f` is first scaled to largest coefficient 1, which
    /// keeps the values of `t` at the points in floating-point range.
    pub fn localize(&self, f: &Polynomial) -> Result<Ideal> {
        if !VariableSet::compatible(f.vars(), &self.vars) {
            return Err(Error::VariableSetMismatch);
        }
        let scaled;
        let f = match (self.field, f.terms().map(|(_, c)| num_traits::Signed::abs(c)).max()) {
            (Field::Rational, Some(c)) => {
                scaled = f.scale(&c.recip());
                &scaled
            }
            _ => f,
        };
        let t = self.vars.fresh_name("t");
        let vars = self.vars.extended(&[t.as_str()])?;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.to_vars(&vars)).collect::<Result<_>>()?;
        let tf = &Polynomial::var(&vars, vars.len() - 1) * &f.to_vars(&vars)?;
        gens.push(&tf - &Polynomial::one(&vars));
        self.derived(&vars, gens)
    }
}

/// Elements of a block-elimination basis free of the first `k` variables,
/// rewritten over the remaining ones.
fn strip_front(basis: Vec<RPoly>, k: usize) -> Vec<RPoly> {
    basis
        .into_iter()
        .filter(|p| p.iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)))
        .map(|p| p.into_iter().map(|(m, c)| (Monomial::from_exponents(m.exponents()[k..].to_vec()), c)).collect())
        .collect()
}

/// Bound on the integer weights of random combinations. A combination that
/// must be nonzero at a given point fails with probability about
/// `1 / GENERIC_BOUND`.
pub const GENERIC_BOUND: i64 = 1 << 16;

/// `Σ r_k g_k` with random integer weights in `[1, GENERIC_BOUND]`.
pub fn random_combination<R: Rng>(gens: &[Polynomial], rng: &mut R) -> Polynomial {
    let vars = gens[0].vars().clone();
    let mut h = Polynomial::zero(&vars);
    for g in gens {
        let r = BigRational::from_integer(BigInt::from(rng.random_range(1..=GENERIC_BOUND)));
        h = &h + &g.scale(&r);
    }
    if h.is_zero() {
        return gens[0].clone();
    }
    h
}
