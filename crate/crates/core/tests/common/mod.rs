//! Oracles shared by the integration tests. They rebuild expected objects
//! directly from definitions (hand-built block matrices, substitution, the
//! conic closed forms, S-polynomials) instead of reusing library shortcuts.

#![allow(dead_code)]

use std::sync::Arc;
use std::time::Duration;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mldual::solver::{multiplication_matrix, multiplication_matrix_by, solve_points};
use mldual::variety::{dual_prime_from_dual, embed_prime, Model};
use mldual::{Budget, Ideal, Monomial, MonomialOrder, Polynomial, VariableSet};

pub type Check = Result<(), String>;

pub fn budget(secs: u64) -> Budget {
    Budget::with_time_limit(Duration::from_secs(secs))
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn poly(vars: &Arc<VariableSet>, s: &str) -> Polynomial {
    Polynomial::parse(vars, s).unwrap()
}

fn lift(p: &Polynomial, vars: &Arc<VariableSet>) -> Polynomial {
    p.to_vars(vars).unwrap()
}

fn d(p: &Polynomial, i: usize) -> Polynomial {
    p.partial_derivative(i).unwrap()
}

// ---------------------------------------------------------------------------
// structural identities

/// `Jac(X')` equals `[[-1 ... -1, 1], [Jac(X), 0]]` entry by entry.
pub fn jac_block_form(x: &Model) -> Check {
    let xp = embed_prime(x).map_err(|e| e.to_string())?;
    let v = xp.vars();
    let n1 = x.vars().len();
    if v.len() != n1 + 1 {
        return Err(format!("X' has {} coordinates, expected {}", v.len(), n1 + 1));
    }
    let mut want: Vec<Vec<Polynomial>> = vec![(0..n1).map(|_| Polynomial::from_int(v, -1)).chain([Polynomial::one(v)]).collect()];
    for f in x.generators() {
        let mut row: Vec<Polynomial> = (0..n1).map(|j| lift(&d(f, j), v)).collect();
        row.push(Polynomial::zero(v));
        want.push(row);
    }
    let got: Vec<Vec<Polynomial>> =
        xp.generators().iter().map(|g| (0..v.len()).map(|j| d(g, j)).collect()).collect();
    if got != want {
        return Err("Jac(X') differs from the block form".into());
    }
    Ok(())
}

/// `Jac(X'*) = Jac(X*)|_(b+bs) S` with `S` the identity plus an all-ones
/// last column, so in particular the `bs` column is the sum of the others.
pub fn dual_factorization(xs: &Model) -> Check {
    let xps = dual_prime_from_dual(xs).map_err(|e| e.to_string())?;
    let v = xps.vars();
    let n1 = xs.vars().len();
    let bs = Polynomial::var(v, n1);
    let images: Vec<Polynomial> = (0..n1).map(|i| &Polynomial::var(v, i) + &bs).collect();
    for (k, (g, gp)) in xs.generators().iter().zip(xps.generators()).enumerate() {
        if g.compose(&images, v) != *gp {
            return Err(format!("generator {k} of X'* is not g(b + bs)"));
        }
        let jrow: Vec<Polynomial> = (0..n1).map(|i| d(g, i).compose(&images, v)).collect();
        let mut want = jrow.clone();
        let mut sum = Polynomial::zero(v);
        for e in &jrow {
            sum = &sum + e;
        }
        want.push(sum);
        let got: Vec<Polynomial> = (0..=n1).map(|j| d(gp, j)).collect();
        if got != want {
            return Err(format!("row {k} of Jac(X'*) does not factor"));
        }
    }
    Ok(())
}

/// Every generator of `X'*` is unchanged by `b_i -> b_i - t`, `bs -> bs + t`.
pub fn cone_invariance(xs: &Model) -> Check {
    let xps = dual_prime_from_dual(xs).map_err(|e| e.to_string())?;
    let v = xps.vars();
    let t_name = v.fresh_name("t");
    let w = v.extended(&[t_name]).unwrap();
    let t = Polynomial::var(&w, v.len());
    let n = v.len() - 1;
    let images: Vec<Polynomial> = (0..=n)
        .map(|i| if i < n { &Polynomial::var(&w, i) - &t } else { &Polynomial::var(&w, i) + &t })
        .collect();
    for (k, g) in xps.generators().iter().enumerate() {
        if g.compose(&images, &w) != lift(g, &w) {
            return Err(format!("generator {k} of X'* moves along the cone direction"));
        }
    }
    Ok(())
}

/// Euler: the columns of `Jac(f) diag(v)` sum to `deg(f) f`, for `X` and `X'`.
pub fn euler_column_sum(x: &Model) -> Check {
    let xp = embed_prime(x).map_err(|e| e.to_string())?;
    for m in [x, &xp] {
        let v = m.vars();
        for (k, f) in m.generators().iter().enumerate() {
            let deg = f.total_degree().unwrap_or(0) as i64;
            let mut sum = Polynomial::zero(v);
            for j in 0..v.len() {
                sum = &sum + &(&d(f, j) * &Polynomial::var(v, j));
            }
            if sum != f.scale(&BigRational::from_integer(deg.into())) {
                return Err(format!("Euler identity fails for generator {k} over {}", v.names().join(",")));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// conic closed forms

/// `(p0, p1, p2)` at `ps = 1` from
/// `(1/ps) [[2p0, p1], [p1, 2p2]] = v v^T / (2 u+^2)` with
/// `v = (2u0 + u1, u1 + 2u2)`.
pub fn conic_p(u: [i64; 3]) -> [BigRational; 3] {
    let up = BigRational::from_integer((u[0] + u[1] + u[2]).into());
    let a = BigRational::from_integer((2 * u[0] + u[1]).into());
    let c = BigRational::from_integer((u[1] + 2 * u[2]).into());
    let s = BigRational::from_integer(2.into()) * &up * &up;
    let two = BigRational::from_integer(2.into());
    [&a * &a / &s / &two, &a * &c / &s, &c * &c / &s / &two]
}

/// `(b0, b1, b2) / bs` from the matrix with entries
/// `4 u0 u+ / (2u0 + u1)^2`, `4 u1 u+ / (2 (u1 + 2u2)(2u0 + u1))`,
/// `4 u2 u+ / (2u2 + u1)^2`, negated: `u_i ps b_s = -u+ p_i b_i` forces
/// `b_i / bs = -u_i / (u+ p_i)`, and the matrix as printed has the other sign.
pub fn conic_b_over_bs(u: [i64; 3]) -> [BigRational; 3] {
    let r = |x: i64| BigRational::from_integer(x.into());
    let up = r(u[0] + u[1] + u[2]);
    let a = r(2 * u[0] + u[1]);
    let c = r(u[1] + 2 * u[2]);
    [
        -(r(4 * u[0]) * &up / (&a * &a)),
        -(r(4 * u[1]) * &up / (r(2) * &c * &a)),
        -(r(4 * u[2]) * &up / (&c * &c)),
    ]
}

// ---------------------------------------------------------------------------
// rcmodel

pub const RC_DATA: &str = "2/40,13/40,5/40,20/40";

pub const RC_ELIMINANTS: [(&str, &str); 8] = [
    ("p0", "100*p0^3 + 290*p0^2 + 74*p0 - 21"),
    ("p1", "62700*p1^3 - 403430*p1^2 + 314358*p1 - 53361"),
    ("p2", "1900*p2^3 - 12550*p2^2 + 4886*p2 - 225"),
    ("p12", "62700*p12^3 + 447650*p12^2 - 511962*p12 + 136125"),
    ("b0", "1680*b0^3 - 296*b0^2 - 58*b0 - 1"),
    ("b1", "34151040*b1^3 - 65386464*b1^2 + 27271868*b1 - 1377519"),
    ("b2", "28800*b2^3 - 78176*b2^2 + 25100*b2 - 475"),
    ("b12", "272250*b12^3 - 511962*b12^2 + 223825*b12 + 15675"),
];

/// Rows `(p0, p1, p2, p12, ps)` with `ps = 1`.
pub const RC_P_TABLE: [[f64; 5]; 3] = [
    [0.167493, 0.242186, 0.0532836, 0.537037, 1.0],
    [-0.485608, 0.632011, 0.35886, 0.494736, 1.0],
    [-2.58189, 5.56009, 6.19312, -8.17133, 1.0],
];

/// Rows `(b0, b1, b2, b12, bs)` with `bs = -1`, aligned with `RC_P_TABLE`.
pub const RC_B_TABLE: [[f64; 5]; 3] = [
    [0.29852, 1.34194, 2.34594, 0.931035, -1.0],
    [-0.102964, 0.514232, 0.348325, 1.01064, -1.0],
    [-0.0193657, 0.0584523, 0.0201837, -0.0611895, -1.0],
];

/// Same polynomial up to a nonzero rational factor.
pub fn proportional(a: &Polynomial, b: &Polynomial) -> bool {
    let Some((m, ca)) = a.leading_term(MonomialOrder::DegRevLex) else { return b.is_zero() };
    let cb = b.coefficient(m);
    !cb.is_zero() && a.scale(&cb) == b.scale(ca)
}

/// Max over table rows of the distance to the nearest computed point.
pub fn table_distance(table: &[[f64; 5]], points: &[Vec<Complex64>]) -> f64 {
    table
        .iter()
        .map(|row| {
            points
                .iter()
                .map(|p| row.iter().zip(p).map(|(r, z)| (z - r).norm()).fold(0.0, f64::max))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// random instances

fn random_poly<R: Rng>(rng: &mut R, vars: &Arc<VariableSet>, deg: u32, terms: usize, dense: bool) -> Polynomial {
    let all = monomials_up_to(vars.len(), deg);
    let monos: Vec<Monomial> = if dense {
        all
    } else {
        let top: Vec<&Monomial> = all.iter().filter(|m| m.degree() == deg).collect();
        // one term of full degree keeps the requested degree
        let mut v = vec![top[rng.random_range(0..top.len())].clone()];
        for _ in 0..terms {
            v.push(all[rng.random_range(0..all.len())].clone());
        }
        v
    };
    Polynomial::from_terms(
        vars,
        monos.into_iter().map(|m| {
            let mut c = 0;
            while c == 0 {
                c = rng.random_range(-9..=9);
            }
            (m, BigRational::from_integer(c.into()))
        }),
    )
}

fn monomials_up_to(n: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![vec![0u32; n]];
    let mut frontier = out.clone();
    for _ in 0..deg {
        let mut next = Vec::new();
        for e in &frontier {
            for i in 0..n {
                let mut f = e.clone();
                f[i] += 1;
                if !next.contains(&f) {
                    next.push(f);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(|e| Monomial::from_exponents(e.into_iter().map(|x| x as _))).collect()
}

/// A small ideal in 3 variables with 2 or 3 sparse generators of degree at most 3.
pub fn random_ideal(seed: u64) -> Ideal {
    random_ideal_of_degree(seed, 3)
}

/// As [`random_ideal`] with generator degrees at most `maxdeg`.
pub fn random_ideal_of_degree(seed: u64, maxdeg: u32) -> Ideal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = VariableSet::new(&["x", "y", "z"]).unwrap();
    let k = rng.random_range(2..=3);
    let gens = (0..k)
        .map(|_| {
            let deg = rng.random_range(1..=maxdeg);
            let terms = rng.random_range(2..=4);
            random_poly(&mut rng, &vars, deg, terms, false)
        })
        .collect();
    Ideal::new(&vars, gens).unwrap()
}

/// A zero-dimensional ideal: dense generic polynomials, two of degrees
/// up to 3 in `x, y`, or three of degrees up to 2 in `x, y, z`.
pub fn random_zero_dim(seed: u64) -> Ideal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = if rng.random_bool(0.5) {
        VariableSet::new(&["x", "y"]).unwrap()
    } else {
        VariableSet::new(&["x", "y", "z"]).unwrap()
    };
    let maxdeg = if vars.len() == 2 { 3 } else { 2 };
    let gens = (0..vars.len())
        .map(|_| {
            let deg = rng.random_range(1..=maxdeg);
            random_poly(&mut rng, &vars, deg, 0, true)
        })
        .collect();
    Ideal::new(&vars, gens).unwrap()
}

fn spoly(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (mf, cf) = f.leading_term(order).unwrap();
    let (mg, cg) = g.leading_term(order).unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_monomial(&l.checked_div(mf).unwrap()).scale(&cf.recip());
    let b = g.mul_monomial(&l.checked_div(mg).unwrap()).scale(&cg.recip());
    &a - &b
}

/// Groebner basis self-checks on a random ideal: every S-polynomial reduces
/// to zero, the basis is reduced, generators and random combinations are
/// members, and normal forms are idempotent and irreducible.
pub fn gb_self_check(seed: u64) -> Check {
    let b = budget(60);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    // Lex Buchberger on three random cubics can take minutes, so the lex
    // instance is drawn with quadratic generators.
    for (order, maxdeg) in [(MonomialOrder::DegRevLex, 3), (MonomialOrder::DegLex, 3), (MonomialOrder::Lex, 2)] {
        let ideal = random_ideal_of_degree(seed, maxdeg);
        let gb = ideal.groebner(order, &b).map_err(|e| format!("seed {seed}: {e}"))?;
        let els = gb.elements();
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                if !gb.normal_form(&spoly(&els[i], &els[j], order)).unwrap().is_zero() {
                    return Err(format!("seed {seed} {order:?}: S({i},{j}) does not reduce to 0"));
                }
            }
        }
        let lms = gb.leading_monomials();
        for (i, g) in els.iter().enumerate() {
            if !g.leading_term(order).unwrap().1.is_one() {
                return Err(format!("seed {seed}: element {i} is not monic"));
            }
            for (m, _) in g.terms() {
                if lms.iter().enumerate().any(|(k, l)| k != i && l.divides(m)) {
                    return Err(format!("seed {seed}: element {i} is not reduced"));
                }
            }
        }
        let vars = ideal.vars();
        let mut comb = Polynomial::zero(vars);
        for g in ideal.generators() {
            if !gb.normal_form(g).unwrap().is_zero() {
                return Err(format!("seed {seed}: a generator is not a member"));
            }
            let h = random_poly(&mut rng, vars, 2, 3, false);
            comb = &comb + &(&h * g);
        }
        if !gb.normal_form(&comb).unwrap().is_zero() {
            return Err(format!("seed {seed}: a combination of generators is not a member"));
        }
        let f = random_poly(&mut rng, vars, 4, 6, false);
        let r = gb.normal_form(&f).unwrap();
        if gb.normal_form(&r).unwrap() != r {
            return Err(format!("seed {seed}: normal form is not idempotent"));
        }
        if !gb.normal_form(&(&f - &r)).unwrap().is_zero() {
            return Err(format!("seed {seed}: f - NF(f) is not a member"));
        }
        if r.terms().any(|(m, _)| lms.iter().any(|l| l.divides(m))) {
            return Err(format!("seed {seed}: normal form has a reducible term"));
        }
    }
    Ok(())
}

/// `(I : f^inf) : f^inf = I : f^inf` and `I` is contained in it.
pub fn saturation_idempotence(seed: u64) -> Check {
    let ideal = random_ideal(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a7);
    let vars = ideal.vars().clone();
    let f = if rng.random_bool(0.5) {
        Polynomial::var(&vars, rng.random_range(0..vars.len()))
    } else {
        let deg = rng.random_range(1..=2);
        random_poly(&mut rng, &vars, deg, 2, false)
    };
    let b = budget(60);
    let s = ideal.saturate(&f, &b).map_err(|e| format!("seed {seed}: {e}"))?;
    let s2 = s.saturate(&f, &b).map_err(|e| format!("seed {seed}: {e}"))?;
    if !s.equals(&s2, &b).unwrap() {
        return Err(format!("seed {seed}: saturation is not idempotent"));
    }
    if !ideal.is_subset_of(&s, &b).unwrap() {
        return Err(format!("seed {seed}: I is not contained in its saturation"));
    }
    Ok(())
}

/// The number of standard monomials of a zero-dimensional ideal is the
/// same for lex, deglex and degrevlex.
pub fn degree_order_independence(seed: u64) -> Check {
    let ideal = random_zero_dim(seed);
    let b = budget(60);
    let mut counts = Vec::new();
    for order in [MonomialOrder::DegRevLex, MonomialOrder::DegLex, MonomialOrder::Lex] {
        let qb = ideal.quotient_basis(order, &b).map_err(|e| format!("seed {seed}: {e}"))?;
        counts.push(qb.len());
    }
    if counts.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!("seed {seed}: quotient dimensions {counts:?}"));
    }
    let bezout: usize = ideal.generators().iter().map(|g| g.total_degree().unwrap() as usize).product();
    if counts[0] > bezout {
        return Err(format!("seed {seed}: {} solutions exceed the Bezout bound {bezout}", counts[0]));
    }
    Ok(())
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

/// Multiplication matrices commute, traces are linear, and the trace of
/// `M_v` is the sum of the `v`-coordinates of the numeric solutions.
pub fn commutation_and_trace(seed: u64) -> Check {
    let ideal = random_zero_dim(seed);
    let b = budget(60);
    let names = ideal.vars().names().to_vec();
    let ops: Vec<_> = names
        .iter()
        .map(|n| multiplication_matrix(&ideal, n, &b))
        .collect::<Result<_, _>>()
        .map_err(|e| format!("seed {seed}: {e}"))?;
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if matmul(&ops[i].matrix, &ops[j].matrix) != matmul(&ops[j].matrix, &ops[i].matrix) {
                return Err(format!("seed {seed}: M_{} and M_{} do not commute", names[i], names[j]));
            }
        }
    }
    let gb = ideal.groebner(MonomialOrder::DegRevLex, &b).unwrap();
    let qb = gb.quotient_basis().unwrap();
    let vars = ideal.vars();
    let combo = &Polynomial::var(vars, 0) + &Polynomial::var(vars, 1).scale(&q(3, 1));
    let mc = multiplication_matrix_by(&gb, &qb, &combo).unwrap();
    let tr: BigRational = (0..mc.len()).map(|i| mc[i][i].clone()).sum();
    if tr != ops[0].trace() + ops[1].trace() * q(3, 1) {
        return Err(format!("seed {seed}: trace is not linear"));
    }
    let pts = solve_points(&ideal, seed, &b).map_err(|e| format!("seed {seed}: {e}"))?;
    for (k, op) in ops.iter().enumerate() {
        let sum: Complex64 = pts.points.iter().map(|p| p[k]).sum();
        let want = op.trace().to_f64().unwrap();
        let scale = 1.0 + pts.points.iter().map(|p| p[k].norm()).sum::<f64>();
        if (sum - want).norm() > 1e-7 * scale {
            return Err(format!("seed {seed}: trace {want} vs coordinate sum {sum}"));
        }
    }
    Ok(())
}

fn residue(c: &BigRational, p: u32) -> Option<BigInt> {
    let p = BigInt::from(p);
    let den = c.denom().mod_floor(&p);
    if den.is_zero() {
        return None;
    }
    let inv = den.modpow(&(&p - 2u32), &p);
    Some((c.numer() * inv).mod_floor(&p))
}

/// The reduced basis over `F_p` is the reduction of the rational one.
pub fn modular_matches_rational(seed: u64) -> Check {
    let ideal = random_ideal(seed);
    let b = budget(60);
    let p = 2_147_483_629u32;
    let gq = ideal.groebner(MonomialOrder::DegRevLex, &b).map_err(|e| format!("seed {seed}: {e}"))?;
    let gp = ideal.reduce_mod(p).unwrap().groebner(MonomialOrder::DegRevLex, &b).map_err(|e| format!("seed {seed}: {e}"))?;
    let key = |g: &Polynomial| -> Option<Vec<(Monomial, BigInt)>> {
        let mut v: Vec<(Monomial, BigInt)> =
            g.terms().map(|(m, c)| residue(c, p).map(|r| (m.clone(), r))).collect::<Option<_>>()?;
        v.retain(|(_, r)| !r.is_zero());
        v.sort();
        Some(v)
    };
    let mut a: Vec<_> = gq.elements().iter().map(key).collect::<Option<_>>().ok_or(format!("seed {seed}: unlucky prime"))?;
    let mut c: Vec<_> = gp.elements().iter().map(key).collect::<Option<_>>().unwrap();
    a.sort();
    c.sort();
    if a != c {
        return Err(format!("seed {seed}: bases differ modulo {p}"));
    }
    if gp.elements().iter().any(|g| g.terms().any(|(_, c)| !c.is_integer() || c.abs() > BigRational::from_integer((p / 2 + 1).into()))) {
        return Err(format!("seed {seed}: residues are not symmetric integers"));
    }
    Ok(())
}

/// Runs `check` on seeds `0..n`, collecting failures.
pub fn run_suite(n: u64, check: fn(u64) -> Check) -> Vec<String> {
    (0..n).filter_map(|s| check(s).err()).collect()
}
