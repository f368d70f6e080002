//! Projective models, Jacobians and minors, the `X'` embedding, conormal
//! varieties and dual varieties.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::{Budget, Ideal, SaturationMode, GENERIC_BOUND};
use crate::poly::{Polynomial, VariableSet};

/// Dense matrix of polynomials over one variable set.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    vars: Arc<VariableSet>,
    rows: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn new(vars: &Arc<VariableSet>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let width = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != width {
                return Err(Error::LengthMismatch { expected: width, got: r.len() });
            }
            if r.iter().any(|p| !VariableSet::compatible(p.vars(), vars)) {
                return Err(Error::VariableSetMismatch);
            }
        }
        Ok(PolyMatrix { vars: vars.clone(), rows })
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i][j]
    }

    /// New matrix with `row` stacked on top.
    pub fn with_top_row(&self, row: Vec<Polynomial>) -> Result<Self> {
        let mut rows = vec![row];
        rows.extend(self.rows.iter().cloned());
        PolyMatrix::new(&self.vars, rows)
    }

    /// Right multiplication by `diag(d)`.
    pub fn scale_columns(&self, d: &[Polynomial]) -> Self {
        assert_eq!(d.len(), self.ncols());
        let rows = self.rows.iter().map(|r| r.iter().zip(d).map(|(a, b)| a * b).collect()).collect();
        PolyMatrix { vars: self.vars.clone(), rows }
    }

    pub fn drop_last_column(&self) -> Self {
        let rows = self.rows.iter().map(|r| r[..r.len() - 1].to_vec()).collect();
        PolyMatrix { vars: self.vars.clone(), rows }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ncols() != other.nrows() {
            return Err(Error::LengthMismatch { expected: self.ncols(), got: other.nrows() });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols())
                    .map(|j| {
                        let mut acc = Polynomial::zero(&self.vars);
                        for (k, a) in r.iter().enumerate() {
                            if !a.is_zero() && !other.rows[k][j].is_zero() {
                                acc = &acc + &(a * &other.rows[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(PolyMatrix { vars: self.vars.clone(), rows })
    }

    /// Constant matrix with integer entries drawn uniformly from `[-bound, bound]`.
    pub fn random_constant<R: Rng>(vars: &Arc<VariableSet>, nrows: usize, ncols: usize, bound: i64, rng: &mut R) -> Self {
        let rows = (0..nrows)
            .map(|_| (0..ncols).map(|_| Polynomial::from_int(vars, rng.random_range(-bound..=bound))).collect())
            .collect();
        PolyMatrix { vars: vars.clone(), rows }
    }

    /// Every entry mapped through `f`.
    pub fn map(&self, vars: &Arc<VariableSet>, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(&f).collect()).collect();
        PolyMatrix { vars: vars.clone(), rows }
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        let n = self.nrows();
        if n != self.ncols() {
            return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
        }
        let mut memo = HashMap::new();
        Ok(self.subdet(mask(0..n), mask(0..n), &mut memo))
    }

    fn subdet(&self, rows: u64, cols: u64, memo: &mut HashMap<(u64, u64), Polynomial>) -> Polynomial {
        if rows == 0 {
            return Polynomial::one(&self.vars);
        }
        if let Some(d) = memo.get(&(rows, cols)) {
            return d.clone();
        }
        let row_ids: Vec<usize> = bits(rows).collect();
        let col_ids: Vec<usize> = bits(cols).collect();
        // expand along the row with the fewest nonzero entries
        let pivot = *row_ids
            .iter()
            .min_by_key(|&&r| col_ids.iter().filter(|&&c| !self.rows[r][c].is_zero()).count())
            .unwrap();
        let rest_rows = rows & !(1 << pivot);
        let mut acc = Polynomial::zero(&self.vars);
        for (pos, &c) in col_ids.iter().enumerate() {
            let a = &self.rows[pivot][c];
            if a.is_zero() {
                continue;
            }
            let sub = self.subdet(rest_rows, cols & !(1 << c), memo);
            if sub.is_zero() {
                continue;
            }
            let rpos = row_ids.iter().position(|&r| r == pivot).unwrap();
            let term = a * &sub;
            acc = if (pos + rpos) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        memo.insert((rows, cols), acc.clone());
        acc
    }

    /// All nonzero `r x r` minors, de-duplicated up to sign, in the order of
    /// their (row set, column set) combinations.
    pub fn minors(&self, r: usize) -> Vec<Polynomial> {
        assert!(r <= self.nrows().min(self.ncols()), "minor size exceeds matrix dimensions");
        assert!(self.nrows() <= 64 && self.ncols() <= 64);
        let mut memo = HashMap::new();
        let mut out: Vec<Polynomial> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for rs in combinations(self.nrows(), r) {
            for cs in combinations(self.ncols(), r) {
                let d = self.subdet(mask(rs.iter().copied()), mask(cs.iter().copied()), &mut memo);
                if d.is_zero() {
                    continue;
                }
                let key = d.primitive().to_string();
                if seen.insert(key) {
                    out.push(d);
                }
            }
        }
        out
    }

    pub fn minors_ideal(&self, r: usize) -> Ideal {
        Ideal::new(&self.vars, self.minors(r)).expect("entries share the matrix variables")
    }

    /// `det(A M B)` for random integer `A` (`r x rows`) and `B` (`cols x r`):
    /// an element of the ideal of `r`-minors that is nonzero wherever the
    /// rank is at least `r`, for all but a measure-zero set of `A`, `B`.
    pub fn generic_minor<R: Rng>(&self, r: usize, rng: &mut R) -> Result<Polynomial> {
        let a = PolyMatrix::random_constant(&self.vars, r, self.nrows(), GENERIC_BOUND, rng);
        let b = PolyMatrix::random_constant(&self.vars, self.ncols(), r, GENERIC_BOUND, rng);
        a.mul(self)?.mul(&b)?.determinant()
    }
}

fn mask(it: impl IntoIterator<Item = usize>) -> u64 {
    it.into_iter().fold(0, |m, i| m | (1 << i))
}

fn bits(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m & (1 << i) != 0)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Jacobian of `gens` with respect to every variable of `vars`; row `i`
/// differentiates `gens[i]`.
pub fn jacobian(vars: &Arc<VariableSet>, gens: &[Polynomial]) -> Result<PolyMatrix> {
    let rows = gens
        .iter()
        .map(|g| (0..vars.len()).map(|j| g.partial_derivative(j)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(vars, rows)
}

/// Saturates `ideal` by the `r`-minors of `m`, exactly or through one generic
/// minor combination.
pub fn saturate_by_minors(
    ideal: &Ideal,
    m: &PolyMatrix,
    r: usize,
    mode: SaturationMode,
    budget: &Budget,
) -> Result<Ideal> {
    if r == 0 {
        return Ok(ideal.clone());
    }
    match mode {
        SaturationMode::Exact => {
            let j = Ideal::over(ideal.field(), ideal.vars(), m.minors(r))?;
            ideal.saturate_by_ideal(&j, budget)
        }
        SaturationMode::Generic(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = m.generic_minor(r, &mut rng)?;
            if h.is_zero() {
                // rank is below r everywhere: nothing survives
                return Ideal::over(ideal.field(), ideal.vars(), vec![Polynomial::one(ideal.vars())]);
            }
            ideal.saturate(&h, budget)
        }
    }
}

/// A projective variety `X ⊂ P^n` given by homogeneous generators.
#[derive(Clone, Debug)]
pub struct Model {
    ideal: Ideal,
    codim: OnceLock<usize>,
}

impl Model {
    pub fn new(vars: &Arc<VariableSet>, gens: Vec<Polynomial>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidInput("a model needs at least one coordinate".into()));
        }
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::InvalidInput(format!("generator `{g}` is not homogeneous")));
            }
            if g.is_constant() && !g.is_zero() {
                return Err(Error::InvalidInput("the model ideal is the unit ideal".into()));
            }
        }
        Ok(Model { ideal: Ideal::new(vars, gens)?, codim: OnceLock::new() })
    }

    pub fn parse<S: AsRef<str>>(names: &[S], gens: &[&str]) -> Result<Self> {
        let vars = VariableSet::new(names)?;
        let gens = gens.iter().map(|g| Polynomial::parse(&vars, g)).collect::<Result<Vec<_>>>()?;
        Model::new(&vars, gens)
    }

    /// Records a known codimension instead of computing it.
    pub fn with_codim(self, c: usize) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(c);
        Model { ideal: self.ideal, codim: cell }
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        self.ideal.vars()
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `n` for a model in `P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.vars().len() - 1
    }

    /// Codimension in `P^n`, from a degrevlex basis unless already known.
    pub fn codim(&self, budget: &Budget) -> Result<usize> {
        if let Some(&c) = self.codim.get() {
            return Ok(c);
        }
        let c = self.ideal.codimension(self.ambient_dim(), budget)?;
        let _ = self.codim.set(c);
        Ok(c)
    }

    pub fn jacobian(&self) -> PolyMatrix {
        jacobian(self.vars(), self.generators()).expect("generators share the model variables")
    }
}

/// Swaps a leading `p` for `q` and vice versa; anything else gets a `d_` prefix.
pub fn dual_name(name: &str) -> String {
    if let Some(rest) = name.strip_prefix('p') {
        format!("q{rest}")
    } else if let Some(rest) = name.strip_prefix('q') {
        format!("p{rest}")
    } else {
        format!("d_{name}")
    }
}

/// `X'`: the model with the extra coordinate `ps` and the hyperplane
/// `H = ps - (p0 + ... + pn)`, placed first so that the Jacobian has the
/// block form `[[-1 ... -1, 1], [Jac(X), 0]]`.
pub fn embed_prime(x: &Model) -> Result<Model> {
    let s = x.vars().fresh_name(&format!("{}s", x.vars().name(0).chars().next().unwrap_or('p')));
    let vars = x.vars().extended(&[s.as_str()])?;
    let n1 = x.vars().len();
    let mut h = Polynomial::var(&vars, n1);
    for i in 0..n1 {
        h = &h - &Polynomial::var(&vars, i);
    }
    let mut gens = vec![h];
    for g in x.generators() {
        gens.push(g.to_vars(&vars)?);
    }
    let m = Model::new(&vars, gens)?;
    Ok(match x.codim.get() {
        Some(&c) => m.with_codim(c + 1),
        None => m,
    })
}

/// Ideal of the conormal variety over the joint `(p, q)` coordinates.
#[derive(Clone, Debug)]
pub struct ConormalIdeal {
    pub ideal: Ideal,
    /// Number of leading primal coordinates; the rest are dual.
    pub primal_len: usize,
}

impl ConormalIdeal {
    pub fn primal_names(&self) -> Vec<&str> {
        self.ideal.vars().names()[..self.primal_len].iter().map(|s| s.as_str()).collect()
    }

    pub fn dual_names(&self) -> Vec<&str> {
        self.ideal.vars().names()[self.primal_len..].iter().map(|s| s.as_str()).collect()
    }
}

fn joint_vars(x: &Model) -> Result<Arc<VariableSet>> {
    let mut names: Vec<String> = x.vars().names().to_vec();
    for n in x.vars().names() {
        let mut d = dual_name(n);
        while names.contains(&d) {
            d.push('_');
        }
        names.push(d);
    }
    VariableSet::new(&names)
}

/// `N_X`: generators of `X` plus the `(c+1)`-minors of `[q; Jac(X)]`,
/// saturated by the `c`-minors of `Jac(X)`.
pub fn conormal_ideal(x: &Model, mode: SaturationMode, budget: &Budget) -> Result<ConormalIdeal> {
    let c = x.codim(budget)?;
    let vars = joint_vars(x)?;
    let n1 = x.vars().len();
    let gens: Vec<Polynomial> = x.generators().iter().map(|g| g.to_vars(&vars)).collect::<Result<_>>()?;
    let jac = jacobian(&vars, &gens)?;
    let jac = PolyMatrix::new(&vars, jac.rows.iter().map(|r| r[..n1].to_vec()).collect())?;
    let qrow: Vec<Polynomial> = (0..n1).map(|i| Polynomial::var(&vars, n1 + i)).collect();
    let stacked = jac.with_top_row(qrow)?;
    let mut all = gens.clone();
    all.extend(stacked.minors(c + 1));
    let raw = Ideal::new(&vars, all)?;
    let ideal = saturate_by_minors(&raw, &jac, c, mode, budget)?;
    Ok(ConormalIdeal { ideal, primal_len: n1 })
}

/// `X*`: the projection of `N_X` to the dual coordinates.
pub fn dual_variety(x: &Model, mode: SaturationMode, budget: &Budget) -> Result<Model> {
    let n = conormal_ideal(x, mode, budget)?;
    let primal = n.primal_names();
    let elim = n.ideal.eliminate(&primal, budget)?;
    let gens = elim.generators().iter().map(|g| g.primitive()).collect();
    Model::new(elim.vars(), gens)
}

/// `X'*` in coordinates `(b0, ..., bn, bs)`: each generator of `X*` with
/// `q_i` replaced by `b_i + bs`.
pub fn dual_prime_from_dual(xstar: &Model) -> Result<Model> {
    let (vars, images) = shifted_dual_coordinates(xstar.vars())?;
    let gens = xstar.generators().iter().map(|g| g.compose(&images, &vars)).collect();
    let m = Model::new(&vars, gens)?;
    Ok(match xstar.codim.get() {
        Some(&c) => m.with_codim(c),
        None => m,
    })
}

/// Names `b0..bn, bs` (derived from the dual names) and the images
/// `b_i + bs` of each dual coordinate.
pub(crate) fn shifted_dual_coordinates(qvars: &Arc<VariableSet>) -> Result<(Arc<VariableSet>, Vec<Polynomial>)> {
    let mut names: Vec<String> = qvars
        .names()
        .iter()
        .map(|n| match n.strip_prefix('q') {
            Some(rest) => format!("b{rest}"),
            None => format!("b_{n}"),
        })
        .collect();
    let mut s = "bs".to_string();
    while names.contains(&s) {
        s.push('_');
    }
    names.push(s);
    let vars = VariableSet::new(&names)?;
    let n1 = qvars.len();
    let bs = Polynomial::var(&vars, n1);
    let images = (0..n1).map(|i| &Polynomial::var(&vars, i) + &bs).collect();
    Ok((vars, images))
}

/// `[[1, 0, ..., 0, 1], ..., [0, ..., 1, 1]]`: identity with an all-ones last column.
pub fn shift_matrix(vars: &Arc<VariableSet>, n1: usize) -> PolyMatrix {
    let rows = (0..n1)
        .map(|i| {
            (0..=n1)
                .map(|j| if j == i || j == n1 { Polynomial::one(vars) } else { Polynomial::zero(vars) })
                .collect()
        })
        .collect();
    PolyMatrix { vars: vars.clone(), rows }
}
