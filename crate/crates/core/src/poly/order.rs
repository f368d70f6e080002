use std::cmp::Ordering;

use super::Monomial;

/// Term orders. Variables are ranked by their position in the variable set:
/// index 0 is the largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Degree-lexicographic; used for canonical printing.
    DegLex,
    /// Degrevlex on the first `k` variables, ties broken by degrevlex on the
    /// rest. Eliminates the front block.
    BlockElim(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (x, y) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => lex(x, y),
            MonomialOrder::DegRevLex => grevlex(x, y),
            MonomialOrder::DegLex => {
                let (dx, dy) = (deg(x), deg(y));
                dx.cmp(&dy).then_with(|| lex(x, y))
            }
            MonomialOrder::BlockElim(k) => {
                let k = k.min(x.len());
                grevlex(&x[..k], &y[..k]).then_with(|| grevlex(&x[k..], &y[k..]))
            }
        }
    }

    /// Number of leading variables this order eliminates.
    pub fn eliminated_block(&self) -> usize {
        match *self {
            MonomialOrder::BlockElim(k) => k,
            _ => 0,
        }
    }
}

#[inline]
fn deg(x: &[u16]) -> u32 {
    x.iter().map(|&e| e as u32).sum()
}

#[inline]
fn lex(x: &[u16], y: &[u16]) -> Ordering {
    for (a, b) in x.iter().zip(y) {
        if a != b {
            return a.cmp(b);
        }
    }
    Ordering::Equal
}

#[inline]
fn grevlex(x: &[u16], y: &[u16]) -> Ordering {
    let (dx, dy) = (deg(x), deg(y));
    if dx != dy {
        return dx.cmp(&dy);
    }
    for (a, b) in x.iter().rev().zip(y.iter().rev()) {
        if a != b {
            return b.cmp(a);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    #[test]
    fn grevlex_prefers_smaller_last_exponent() {
        // x*z vs y^2: y^2 is larger in degrevlex, smaller in deglex
        let xz = m(&[1, 0, 1]);
        let yy = m(&[0, 2, 0]);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&yy, &xz), Ordering::Greater);
        assert_eq!(MonomialOrder::DegLex.cmp(&xz, &yy), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&xz, &yy), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_front() {
        let t = m(&[1, 0, 0]);
        let big = m(&[0, 5, 5]);
        let o = MonomialOrder::BlockElim(1);
        assert_eq!(o.cmp(&t, &big), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn orders_are_multiplicative() {
        let a = m(&[1, 2, 0, 1]);
        let b = m(&[0, 1, 3, 0]);
        let c = m(&[2, 0, 1, 1]);
        for o in [
            MonomialOrder::Lex,
            MonomialOrder::DegRevLex,
            MonomialOrder::DegLex,
            MonomialOrder::BlockElim(2),
        ] {
            assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
        }
    }
}
