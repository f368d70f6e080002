//! Buchberger's algorithm over an abstract coefficient domain: fraction-free
//! over the integers, or over a prime field.
//!
//! Polynomials are vectors of `(monomial, coefficient)` sorted by the active
//! order, largest first. Pairs are chosen by sugar degree (normal strategy on
//! ties) and pruned with the Gebauer-Moeller installation of the chain and
//! product criteria.

use std::cmp::Ordering;
use std::time::Instant;

use super::coeff::Coeff;
use super::Budget;
use crate::error::{Error, ResourceKind, Result};
use crate::poly::{Monomial, MonomialOrder};

pub(crate) type Term<C> = (Monomial, C);
pub(crate) type EPoly<C> = Vec<Term<C>>;

pub(crate) struct Ctl<'a> {
    budget: &'a Budget,
}

impl<'a> Ctl<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        Ctl { budget }
    }

    pub fn check_time(&self) -> Result<()> {
        if let Some(d) = self.budget.deadline {
            if Instant::now() >= d {
                return Err(Error::ResourceLimit {
                    kind: ResourceKind::WallClock,
                    detail: "deadline reached during Groebner basis computation".into(),
                });
            }
        }
        Ok(())
    }

    fn check_bits<C: Coeff>(&self, p: &[Term<C>]) -> Result<()> {
        let bits = p.iter().map(|t| t.1.bits()).max().unwrap_or(0);
        if bits > self.budget.max_coeff_bits {
            return Err(Error::ResourceLimit {
                kind: ResourceKind::CoefficientBits,
                detail: format!("{bits} bits > cap {}", self.budget.max_coeff_bits),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Elem<C> {
    pub poly: EPoly<C>,
    pub lm: Monomial,
    pub mask: u64,
    pub sugar: u32,
    pub redundant: bool,
}

impl<C> Elem<C> {
    pub fn new(poly: EPoly<C>, sugar: u32) -> Self {
        let lm = poly[0].0.clone();
        Elem { mask: lm.mask(), lm, poly, sugar, redundant: false }
    }
}

pub(crate) fn sort_poly<C>(order: MonomialOrder, p: &mut EPoly<C>) {
    p.sort_by(|a, b| order.cmp(&b.0, &a.0));
}

pub(crate) fn normalize<C: Coeff>(p: &mut EPoly<C>, ctx: C::Ctx) {
    let mut refs: Vec<&mut C> = p.iter_mut().map(|t| &mut t.1).collect();
    C::normalize(&mut refs, ctx);
}

/// `a * p - b * mb * q` for sorted `p`, `q`.
fn axpy<C: Coeff>(
    order: MonomialOrder,
    ctx: C::Ctx,
    a: &C,
    p: &[Term<C>],
    b: &C,
    mb: Option<&Monomial>,
    q: &[Term<C>],
) -> EPoly<C> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let shift = |m: &Monomial| match mb {
        Some(s) => m.mul(s),
        None => m.clone(),
    };
    let scale_a = |c: &C| if a.is_one() { c.clone() } else { a.mul(c, ctx) };
    let zero = C::zero();
    let (mut i, mut j) = (0, 0);
    let mut qm = q.first().map(|t| shift(&t.0));
    loop {
        let ord = match (p.get(i), &qm) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => order.cmp(&x.0, y),
        };
        match ord {
            Ordering::Greater => {
                out.push((p[i].0.clone(), scale_a(&p[i].1)));
                i += 1;
            }
            Ordering::Less => {
                let y = qm.take().unwrap();
                out.push((y, C::mul_sub(&zero, &zero, b, &q[j].1, ctx)));
                j += 1;
                qm = q.get(j).map(|t| shift(&t.0));
            }
            Ordering::Equal => {
                let c = C::mul_sub(a, &p[i].1, b, &q[j].1, ctx);
                if !c.is_zero() {
                    out.push((p[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                qm = q.get(j).map(|t| shift(&t.0));
            }
        }
    }
    out
}

fn find_reducer<'e, C>(elems: &'e [Elem<C>], m: &Monomial, mask: u64) -> Option<&'e Elem<C>> {
    elems
        .iter()
        .filter(|e| !e.redundant && e.mask & !mask == 0 && e.lm.divides(m))
        .min_by_key(|e| e.poly.len())
}

/// Full reduction of `p` modulo `elems`. The result equals
/// `(num / den) * NF(p)`; when `scale` is given, `num` and `den` are
/// multiplied into its two entries.
pub(crate) fn reduce<C: Coeff>(
    order: MonomialOrder,
    ctx: C::Ctx,
    p: EPoly<C>,
    elems: &[Elem<C>],
    sugar: &mut u32,
    mut scale: Option<&mut (C, C)>,
    ctl: &Ctl,
) -> Result<EPoly<C>> {
    let mut rem: EPoly<C> = Vec::new();
    let mut p = p;
    let mut start = 0;
    let mut steps = 0u32;
    while start < p.len() {
        let mask = p[start].0.mask();
        match find_reducer(elems, &p[start].0, mask) {
            None => {
                let t = std::mem::replace(&mut p[start], (Monomial::one(0), C::zero()));
                rem.push(t);
                start += 1;
            }
            Some(g) => {
                ctl.check_time()?;
                let mq = g.lm.quotient_of(&p[start].0);
                let (a, b) = C::cancel(&g.poly[0].1, &p[start].1, ctx);
                *sugar = (*sugar).max(mq.degree() + g.sugar);
                let mq_opt = if mq.is_one() { None } else { Some(&mq) };
                p = axpy(order, ctx, &a, &p[start + 1..], &b, mq_opt, &g.poly[1..]);
                start = 0;
                if !a.is_one() {
                    for t in rem.iter_mut() {
                        t.1 = t.1.mul(&a, ctx);
                    }
                    if let Some(s) = scale.as_deref_mut() {
                        s.0 = s.0.mul(&a, ctx);
                    }
                }
                steps += 1;
                if steps.is_multiple_of(8) {
                    if let Some(g) = C::common_divisor(rem.iter().chain(p.iter()).map(|t| &t.1), ctx) {
                        for t in rem.iter_mut().chain(p.iter_mut()) {
                            t.1 = t.1.div_exact(&g, ctx);
                        }
                        if let Some(s) = scale.as_deref_mut() {
                            s.1 = s.1.mul(&g, ctx);
                        }
                    }
                    ctl.check_bits(&p[..p.len().min(4)])?;
                }
            }
        }
    }
    Ok(rem)
}

struct Pair {
    lcm: Monomial,
    sugar: u32,
    i: usize,
    /// `usize::MAX` marks an input generator waiting to be inserted.
    j: usize,
}

fn spoly<C: Coeff>(order: MonomialOrder, ctx: C::Ctx, f: &Elem<C>, g: &Elem<C>, lcm: &Monomial) -> EPoly<C> {
    let mf = f.lm.quotient_of(lcm);
    let mg = g.lm.quotient_of(lcm);
    // a*lc(f) = b*lc(g)
    let (a, b) = C::cancel(&g.poly[0].1, &f.poly[0].1, ctx);
    let fpart: EPoly<C> = if mf.is_one() {
        f.poly[1..].to_vec()
    } else {
        f.poly[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect()
    };
    let mg_opt = if mg.is_one() { None } else { Some(&mg) };
    axpy(order, ctx, &a, &fpart, &b, mg_opt, &g.poly[1..])
}

/// Reduced Groebner basis of `input`. Output elements are normalized (see
/// [`Coeff::normalize`]) and sorted by increasing leading monomial.
pub(crate) fn groebner<C: Coeff>(
    input: Vec<EPoly<C>>,
    order: MonomialOrder,
    ctx: C::Ctx,
    budget: &Budget,
) -> Result<Vec<EPoly<C>>> {
    let ctl = Ctl::new(budget);
    let trace = std::env::var_os("MLDUAL_GB_TRACE").is_some();
    let mut pending: Vec<(EPoly<C>, u32)> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for mut p in input {
        p.retain(|t| !t.1.is_zero());
        if p.is_empty() {
            continue;
        }
        sort_poly(order, &mut p);
        normalize(&mut p, ctx);
        let sugar = p.iter().map(|t| t.0.degree()).max().unwrap();
        pairs.push(Pair { lcm: p[0].0.clone(), sugar, i: pending.len(), j: usize::MAX });
        pending.push((p, sugar));
    }
    let mut elems: Vec<Elem<C>> = Vec::new();

    while !pairs.is_empty() {
        ctl.check_time()?;
        let best = (0..pairs.len())
            .min_by(|&x, &y| {
                let (a, b) = (&pairs[x], &pairs[y]);
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let (poly, mut sugar) = if pair.j == usize::MAX {
            std::mem::take(&mut pending[pair.i])
        } else {
            let (f, g) = (&elems[pair.i], &elems[pair.j]);
            (spoly(order, ctx, f, g, &pair.lcm), pair.sugar)
        };
        if poly.is_empty() {
            continue;
        }
        let mut h = reduce(order, ctx, poly, &elems, &mut sugar, None, &ctl)?;
        if h.is_empty() {
            continue;
        }
        normalize(&mut h, ctx);
        if h[0].0.is_one() {
            return Ok(vec![vec![(h[0].0.clone(), C::one())]]);
        }
        ctl.check_bits(&h)?;
        if elems.len() + 1 > budget.max_basis {
            return Err(Error::ResourceLimit {
                kind: ResourceKind::BasisSize,
                detail: format!("more than {} basis elements", budget.max_basis),
            });
        }
        if trace {
            let bits = h.iter().map(|t| t.1.bits()).max().unwrap_or(0);
            eprintln!("gb: elem {} sugar {sugar} terms {} bits {bits} pairs {}", elems.len(), h.len(), pairs.len());
        }
        let hidx = elems.len();
        elems.push(Elem::new(h, sugar));
        update(&mut elems, &mut pairs, hidx);
    }

    interreduce(order, ctx, elems, &ctl)
}

/// Gebauer-Moeller update after inserting `elems[h]`.
fn update<C>(elems: &mut [Elem<C>], pairs: &mut Vec<Pair>, h: usize) {
    let lh = elems[h].lm.clone();
    let hsugar = elems[h].sugar;
    let hdeg = lh.degree();
    // candidates (g, lcm, coprime)
    let mut cand: Vec<(usize, Monomial, bool)> = elems[..h]
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.redundant)
        .map(|(g, e)| (g, e.lm.lcm(&lh), e.lm.is_coprime(&lh)))
        .collect();
    let mut keep: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some(c) = cand.pop() {
        let dominated = !c.2 && cand.iter().chain(keep.iter()).any(|o| o.1.divides(&c.1));
        if !dominated {
            keep.push(c);
        }
    }
    pairs.retain(|p| {
        if p.j == usize::MAX || !lh.divides(&p.lcm) {
            return true;
        }
        let li = elems[p.i].lm.lcm(&lh);
        let lj = elems[p.j].lm.lcm(&lh);
        li == p.lcm || lj == p.lcm
    });
    for (g, lcm, coprime) in keep {
        if coprime {
            continue;
        }
        let e = &elems[g];
        let sugar = (e.sugar + lcm.degree() - e.lm.degree()).max(hsugar + lcm.degree() - hdeg);
        pairs.push(Pair { lcm, sugar, i: g, j: h });
    }
    for e in elems[..h].iter_mut() {
        if !e.redundant && lh.divides(&e.lm) {
            e.redundant = true;
        }
    }
}

fn interreduce<C: Coeff>(order: MonomialOrder, ctx: C::Ctx, elems: Vec<Elem<C>>, ctl: &Ctl) -> Result<Vec<EPoly<C>>> {
    let mut minimal: Vec<Elem<C>> = elems.into_iter().filter(|e| !e.redundant).collect();
    minimal.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
    minimal.dedup_by(|a, b| a.lm == b.lm);
    let mut out: Vec<EPoly<C>> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        // hide the element itself; leading monomials of a minimal basis
        // don't divide each other, so only the tail can reduce
        minimal[k].redundant = true;
        let lead = minimal[k].poly[0].clone();
        let tail = minimal[k].poly[1..].to_vec();
        let mut sugar = 0;
        let mut scale = (C::one(), C::one());
        let rt = reduce(order, ctx, tail, &minimal, &mut sugar, Some(&mut scale), ctl)?;
        minimal[k].redundant = false;
        // the tail came back as num/den times itself: lead*num, tail*den
        let mut p = Vec::with_capacity(rt.len() + 1);
        p.push((lead.0, lead.1.mul(&scale.0, ctx)));
        if scale.1.is_one() {
            p.extend(rt);
        } else {
            p.extend(rt.into_iter().map(|(m, c)| (m, c.mul(&scale.1, ctx))));
        }
        normalize(&mut p, ctx);
        out.push(p);
    }
    Ok(out)
}

/// Checks that every S-polynomial of `basis` reduces to zero.
pub(crate) fn is_groebner<C: Coeff>(order: MonomialOrder, ctx: C::Ctx, basis: &[EPoly<C>], budget: &Budget) -> Result<bool> {
    let ctl = Ctl::new(budget);
    let elems: Vec<Elem<C>> = basis.iter().map(|p| Elem::new(p.clone(), 0)).collect();
    for i in 0..elems.len() {
        for j in (i + 1)..elems.len() {
            if elems[i].lm.is_coprime(&elems[j].lm) {
                continue;
            }
            let l = elems[i].lm.lcm(&elems[j].lm);
            let s = spoly(order, ctx, &elems[i], &elems[j], &l);
            let mut sugar = 0;
            if !reduce(order, ctx, s, &elems, &mut sugar, None, &ctl)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
