use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Var};

/// Multivariate Laurent polynomial with rational coefficients; zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// `v^e` with coefficient one.
    pub fn var(v: Var, e: i32) -> Self {
        Self::term(Monomial::var(v, e), rat(1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigRational> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The lexicographically greatest term.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// A single term `c*m`, if the polynomial has exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        self.as_term().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone())
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    /// (min, max) exponent of `v`; (0, 0) for the zero polynomial.
    pub fn degree_range(&self, v: Var) -> (i32, i32) {
        let mut it = self.terms.keys().map(|m| m.exp(v));
        match it.next() {
            None => (0, 0),
            Some(first) => it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))),
        }
    }

    /// Entrywise minimum exponent over all terms.
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| Monomial::min(&acc, m)),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Rewrites every exponent vector; terms landing on the same monomial are summed.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Substitutes a Laurent polynomial for `v`. Negative powers need `value` to be a unit
    /// monomial, otherwise use the fraction-level substitution.
    pub fn substitute_poly(&self, v: Var, value: &LaurentPoly) -> Option<Self> {
        let (lo, _) = self.degree_range(v);
        if lo < 0 && value.as_term().is_none() {
            return None;
        }
        let mut groups: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry(m.exp(v))
                .or_default()
                .add_term(m.with(v, 0), c.clone());
        }
        let inv = value.as_term().map(|(m, c)| {
            LaurentPoly::term(m.inv(), c.recip())
        });
        let mut out = LaurentPoly::zero();
        for (e, coeff) in groups {
            let p = if e >= 0 {
                value.pow(e as u32)
            } else {
                inv.as_ref().unwrap().pow((-e) as u32)
            };
            out += &(&coeff * &p);
        }
        Some(out)
    }

    /// Exact square root when the polynomial is a perfect square with a square leading
    /// coefficient; the result has positive leading coefficient.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lm, lc) = self.leading()?;
        if lc.is_negative() || lm.0.iter().any(|e| e % 2 != 0) {
            return None;
        }
        let rc = rational_sqrt(lc)?;
        let root_lead = Monomial(lm.0.map(|e| e / 2));
        let mut root = LaurentPoly::term(root_lead, rc.clone());
        let two_lead = rc * rat(2);
        let mut rem = self - &(&root * &root);
        // each step fixes the next-highest term of the root; no root term can sit below
        // the square root of the lex-smallest term
        let (low, _) = self.terms.iter().next()?;
        let floor = Monomial(low.0.map(|e| e.div_euclid(2)));
        for _ in 0..100_000 {
            if rem.is_zero() {
                return Some(root);
            }
            let (m, c) = rem.leading().map(|(m, c)| (*m, c.clone()))?;
            if m >= root_lead.mul(&root_lead) || m.div(&root_lead) < floor {
                return None;
            }
            let t = LaurentPoly::term(m.div(&root_lead), c / &two_lead);
            let two_root_t = &(&root.scale(&rat(2)) * &t) + &(&t * &t);
            rem = &rem - &two_root_t;
            root += &t;
        }
        None
    }

    /// Leading-coefficient sign, zero for the zero polynomial.
    pub fn leading_sign(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            _ => 1,
        }
    }

    /// Common denominator and integer numerator gcd of all coefficients.
    pub fn coefficient_lcm_den(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

fn rational_sqrt(c: &BigRational) -> Option<BigRational> {
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::int(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut r = LaurentPoly::zero();
        for (m, c) in &small.terms {
            for (k, x) in &big.terms {
                r.add_term(m.mul(k), c * x);
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &LaurentPoly) {
        for (m, c) in &o.terms {
            self.add_term(*m, -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: &'a LaurentPoly) -> LaurentPoly {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> LaurentPoly {
        LaurentPoly::var(Var::Q, e)
    }

    #[test]
    fn difference_of_squares() {
        let a = q(1) - q(-1);
        let b = q(1) + q(-1);
        assert_eq!(a * b, q(2) - q(-2));
    }

    #[test]
    fn pow_zero_is_one() {
        assert!((q(1) + q(-1)).pow(0).is_one());
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = q(3) - q(3);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn sqrt_of_square() {
        let e = LaurentPoly::var(Var::E, 1);
        let p = &q(2) * &e + LaurentPoly::int(3) * q(-1);
        let sq = &p * &p;
        let r = sq.sqrt_exact().unwrap();
        assert!(r == p || r == -p);
        assert!((q(2) + LaurentPoly::int(1)).sqrt_exact().is_none());
    }

    #[test]
    fn substitute_negative_power_by_monomial() {
        let p = q(-2) + q(1);
        let r = p.substitute_poly(Var::Q, &LaurentPoly::var(Var::T, 2)).unwrap();
        assert_eq!(r, LaurentPoly::var(Var::T, -4) + LaurentPoly::var(Var::T, 2));
    }
}
