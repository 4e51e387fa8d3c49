use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::{gcd, IPoly};
use super::{LaurentPoly, Monomial, PolyError, Var};

/// Ratio of Laurent polynomials in canonical form: the denominator carries no monomial
/// factor, its lexicographically greatest coefficient is 1, and it is coprime to the
/// numerator. Structural equality is therefore value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Splits `p` as `scale * shift * body` with `body` an integer polynomial with coprime
/// coefficients and no monomial factor.
fn split_integral(p: &LaurentPoly) -> (BigRational, Monomial, IPoly) {
    let shift = p.min_monomial();
    let l = p.coefficient_lcm_den();
    let mut body = IPoly::zero();
    for (m, c) in p.terms() {
        let v = (c * BigRational::from_integer(l.clone())).to_integer();
        body.add_term(m.div(&shift), v);
    }
    let content = body.integer_content();
    let body = body.div_exact(&IPoly::constant(content.clone()));
    (BigRational::new(content, l), shift, body)
}

fn to_laurent(p: &IPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.terms
            .iter()
            .map(|(m, c)| (*m, BigRational::from_integer(c.clone()))),
    )
}

impl LaurentFraction {
    pub fn zero() -> Self {
        LaurentFraction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        LaurentFraction::from(LaurentPoly::one())
    }

    pub fn int(c: i64) -> Self {
        LaurentFraction::from(LaurentPoly::int(c))
    }

    pub fn var(v: Var, e: i32) -> Self {
        LaurentFraction::from(LaurentPoly::var(v, e))
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::canonicalize(num, den))
    }

    fn canonicalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = den.as_term() {
            let num = num.mul_term(&m.inv(), &c.recip());
            return LaurentFraction {
                num,
                den: LaurentPoly::one(),
            };
        }
        let (nc, nshift, nbody) = split_integral(&num);
        let (dc, dshift, dbody) = split_integral(&den);
        let g = gcd(&nbody, &dbody);
        let (nbody, dbody) = if g.as_constant().is_some() {
            (nbody, dbody)
        } else {
            (nbody.div_exact(&g), dbody.div_exact(&g))
        };
        let den = to_laurent(&dbody);
        let lead = den.leading().map(|(_, c)| c.clone()).unwrap();
        let den = den.scale(&lead.recip());
        let num = to_laurent(&nbody).mul_term(&nshift.div(&dshift), &(nc / dc / lead));
        // a body coprime to the numerator can still reduce to a single term
        if let Some((m, c)) = den.as_term() {
            return LaurentFraction {
                num: num.mul_term(&m.inv(), &c.recip()),
                den: LaurentPoly::one(),
            };
        }
        LaurentFraction { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The numerator, when the value is a Laurent polynomial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn is_laurent_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::canonicalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, PolyError> {
        if o.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::canonicalize(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn pow(&self, k: i32) -> Result<Self, PolyError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if self.den.is_one() {
            return Ok(Self::from(self.num.pow(k as u32)));
        }
        // powers of coprime parts stay coprime
        Ok(LaurentFraction {
            num: self.num.pow(k as u32),
            den: self.den.pow(k as u32),
        }
        .renormalize_lead())
    }

    fn renormalize_lead(self) -> Self {
        let lead = self.den.leading().map(|(_, c)| c.clone()).unwrap();
        if lead.is_one() {
            return self;
        }
        LaurentFraction {
            num: self.num.scale(&lead.recip()),
            den: self.den.scale(&lead.recip()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentFraction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentFraction {
            num: self.num.mul_monomial(m),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        if self.den.is_one() {
            return Self::from(&self.num * p);
        }
        Self::canonicalize(&self.num * p, self.den.clone())
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// Replaces every occurrence of `v` by `value`.
    pub fn substitute(&self, v: Var, value: &LaurentFraction) -> Result<Self, PolyError> {
        let (n_num, n_den) = substitute_parts(&self.num, v, value)?;
        let (d_num, d_den) = substitute_parts(&self.den, v, value)?;
        if d_num.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::canonicalize(&n_num * &d_den, &n_den * &d_num))
    }

    /// Exponent rewrite between the q, t and A conventions (t = q², q = A⁻²).
    pub fn rebase(&self, rule: Rebase) -> Result<Self, PolyError> {
        Ok(Self::canonicalize(
            rebase(&self.num, rule)?,
            rebase(&self.den, rule)?,
        ))
    }
}

/// Substitutes into a Laurent polynomial, returning (numerator, denominator) polynomials.
fn substitute_parts(
    p: &LaurentPoly,
    v: Var,
    value: &LaurentFraction,
) -> Result<(LaurentPoly, LaurentPoly), PolyError> {
    if !p.contains_var(v) {
        return Ok((p.clone(), LaurentPoly::one()));
    }
    let (lo, hi) = p.degree_range(v);
    if lo < 0 && value.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if value.den.is_one() && (lo >= 0 || value.num.as_term().is_some()) {
        return Ok((p.substitute_poly(v, &value.num).unwrap(), LaurentPoly::one()));
    }
    // value = a/b; multiply through by a^{-lo} b^{hi} with lo <= 0 <= hi
    let lo = lo.min(0);
    let hi = hi.max(0);
    let (a, b) = (&value.num, &value.den);
    let mut groups: std::collections::BTreeMap<i32, LaurentPoly> = Default::default();
    for (m, c) in p.terms() {
        groups
            .entry(m.exp(v))
            .or_default()
            .add_term(m.with(v, 0), c.clone());
    }
    let mut num = LaurentPoly::zero();
    for (e, coeff) in groups {
        let f = &a.pow((e - lo) as u32) * &b.pow((hi - e) as u32);
        num += &(&coeff * &f);
    }
    let den = &a.pow((-lo) as u32) * &b.pow(hi as u32);
    Ok((num, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rebase {
    AToQ,
    QToT,
    TToQ,
}

pub fn rebase(p: &LaurentPoly, rule: Rebase) -> Result<LaurentPoly, PolyError> {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        let nm = match rule {
            Rebase::AToQ => {
                let a = m.exp(Var::A);
                if a % 2 != 0 {
                    return Err(PolyError::OddExponent(Var::A, a));
                }
                m.with(Var::A, 0).mul(&Monomial::var(Var::Q, -a / 2))
            }
            Rebase::QToT => {
                let e = m.exp(Var::Q);
                if e % 2 != 0 {
                    return Err(PolyError::OddExponent(Var::Q, e));
                }
                m.with(Var::Q, 0).mul(&Monomial::var(Var::T, e / 2))
            }
            Rebase::TToQ => {
                let e = m.exp(Var::T);
                m.with(Var::T, 0).mul(&Monomial::var(Var::Q, 2 * e))
            }
        };
        out.add_term(nm, c.clone());
    }
    Ok(out)
}

/// `a − b` canonicalizes to zero.
pub fn canonical_eq(a: &LaurentFraction, b: &LaurentFraction) -> bool {
    (&a.num * &b.den) == (&b.num * &a.den)
}

impl From<LaurentPoly> for LaurentFraction {
    fn from(p: LaurentPoly) -> Self {
        LaurentFraction {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

impl From<i64> for LaurentFraction {
    fn from(c: i64) -> Self {
        LaurentFraction::int(c)
    }
}

impl From<BigInt> for LaurentFraction {
    fn from(c: BigInt) -> Self {
        LaurentFraction::from(LaurentPoly::constant(BigRational::from_integer(c)))
    }
}

impl<'a> Add<&'a LaurentFraction> for &'a LaurentFraction {
    type Output = LaurentFraction;
    fn add(self, o: &LaurentFraction) -> LaurentFraction {
        if self.den == o.den {
            if self.den.is_one() {
                return LaurentFraction::from(&self.num + &o.num);
            }
            return LaurentFraction::canonicalize(&self.num + &o.num, self.den.clone());
        }
        if o.den.is_one() {
            return LaurentFraction::canonicalize(&self.num + &(&o.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return LaurentFraction::canonicalize(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        LaurentFraction::canonicalize(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a LaurentFraction> for &'a LaurentFraction {
    type Output = LaurentFraction;
    fn sub(self, o: &LaurentFraction) -> LaurentFraction {
        self + &(-o)
    }
}

impl<'a> Mul<&'a LaurentFraction> for &'a LaurentFraction {
    type Output = LaurentFraction;
    fn mul(self, o: &LaurentFraction) -> LaurentFraction {
        if self.den.is_one() && o.den.is_one() {
            return LaurentFraction::from(&self.num * &o.num);
        }
        LaurentFraction::canonicalize(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Panics on division by zero; use [`LaurentFraction::checked_div`] to get an error.
impl<'a> Div<&'a LaurentFraction> for &'a LaurentFraction {
    type Output = LaurentFraction;
    fn div(self, o: &LaurentFraction) -> LaurentFraction {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &LaurentFraction {
    type Output = LaurentFraction;
    fn neg(self) -> LaurentFraction {
        LaurentFraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for LaurentFraction {
    type Output = LaurentFraction;
    fn neg(self) -> LaurentFraction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentFraction> for LaurentFraction {
            type Output = LaurentFraction;
            fn $f(self, o: LaurentFraction) -> LaurentFraction {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a LaurentFraction> for LaurentFraction {
            type Output = LaurentFraction;
            fn $f(self, o: &'a LaurentFraction) -> LaurentFraction {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<LaurentFraction> for &'a LaurentFraction {
            type Output = LaurentFraction;
            fn $f(self, o: LaurentFraction) -> LaurentFraction {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl std::iter::Sum for LaurentFraction {
    fn sum<I: Iterator<Item = LaurentFraction>>(iter: I) -> Self {
        iter.fold(LaurentFraction::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for LaurentFraction {
    fn product<I: Iterator<Item = LaurentFraction>>(iter: I) -> Self {
        iter.fold(LaurentFraction::one(), |a, b| &a * &b)
    }
}
