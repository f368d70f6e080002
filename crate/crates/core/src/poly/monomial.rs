use smallvec::SmallVec;

pub type Exponent = u16;

/// Exponent vector over a fixed variable set.
///
/// The derived `Ord` is plain lexicographic on the exponent vector and is
/// only used for storage; term orders live in [`super::MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: SmallVec<[Exponent; 16]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[idx] = 1;
        m
    }

    pub fn from_exponents<I: IntoIterator<Item = Exponent>>(exps: I) -> Self {
        Monomial { exps: exps.into_iter().collect() }
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        }
    }

    /// True iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial { exps: other.exps.iter().zip(&self.exps).map(|(&a, &b)| a - b).collect() }
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Support bitmask used as a cheap divisibility pre-filter.
    #[inline]
    pub fn mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    /// Index of the single variable if this is a pure power `x_i^k` with `k > 0`.
    pub fn pure_power(&self) -> Option<(usize, Exponent)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    pub fn exponent(&self, idx: usize) -> Exponent {
        self.exps[idx]
    }

    pub(crate) fn set_exponent(&mut self, idx: usize, e: Exponent) {
        self.exps[idx] = e;
    }

    /// Reorders / extends the exponent vector: entry `i` of the result is the
    /// exponent of source variable `map[j]` where `map[j] == i`.
    pub(crate) fn remap(&self, map: &[usize], target_nvars: usize) -> Monomial {
        let mut out = Monomial::one(target_nvars);
        for (src, &dst) in map.iter().enumerate() {
            out.exps[dst] = self.exps[src];
        }
        out
    }
}
