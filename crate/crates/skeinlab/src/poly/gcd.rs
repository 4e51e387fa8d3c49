//! Multivariate polynomial gcd over the integers (recursive primitive remainder sequence).
//! Exponents here are always non-negative; Laurent shifts are removed by the caller.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Var};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct IPoly {
    pub terms: BTreeMap<Monomial, BigInt>,
}

impl IPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
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

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<&BigInt> {
        if self.terms.len() == 1 {
            self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c)
        } else {
            None
        }
    }

    fn has_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    fn degree(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn mul(&self, o: &IPoly) -> IPoly {
        let mut r = IPoly::zero();
        for (m, c) in &self.terms {
            for (k, x) in &o.terms {
                r.add_term(m.mul(k), c * x);
            }
        }
        r
    }

    fn sub(&self, o: &IPoly) -> IPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }

    fn scale_term(&self, m: &Monomial, c: &BigInt) -> IPoly {
        IPoly {
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    fn neg(&self) -> IPoly {
        IPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IPoly) -> IPoly {
        if let Some(c) = d.as_constant() {
            return IPoly {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, x)| {
                        let (qq, r) = x.div_rem(c);
                        debug_assert!(r.is_zero());
                        (*m, qq)
                    })
                    .collect(),
            };
        }
        let (dm, dc) = d.leading().expect("division by zero polynomial");
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quot = IPoly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            assert!(m.divisible_by(&dm), "inexact polynomial division");
            let (qc, r) = c.div_rem(&dc);
            assert!(r.is_zero(), "inexact polynomial division");
            let qm = m.div(&dm);
            rem = rem.sub(&d.scale_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        quot
    }

    /// Quotient when `d` divides `self` exactly.
    fn try_div(&self, d: &IPoly) -> Option<IPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quot = IPoly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !m.divisible_by(&dm) {
                return None;
            }
            let (qc, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(&dm);
            rem = rem.sub(&d.scale_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    fn max_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Substitutes the integer `x` for `v`.
    fn eval(&self, v: Var, x: &BigInt) -> IPoly {
        let mut r = IPoly::zero();
        for (m, c) in &self.terms {
            r.add_term(m.with(v, 0), c * x.pow(m.exp(v) as u32));
        }
        r
    }

    /// Coefficients of `self` as a polynomial in `v`, indexed by degree.
    fn coeffs_in(&self, v: Var) -> Vec<IPoly> {
        let deg = self.degree(v) as usize;
        let mut out = vec![IPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.with(v, 0), c.clone());
        }
        out
    }

    fn from_coeffs(v: Var, cs: &[IPoly]) -> IPoly {
        let mut r = IPoly::zero();
        for (i, c) in cs.iter().enumerate() {
            for (m, x) in &c.terms {
                r.add_term(m.with(v, i as i32), x.clone());
            }
        }
        r
    }

    fn normalize_sign(self) -> IPoly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }
}

/// gcd of the coefficients of `a` viewed as a polynomial in `v`.
fn content_in(a: &IPoly, v: Var) -> IPoly {
    let mut g = IPoly::zero();
    for c in a.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, &c);
        if g.as_constant().is_some_and(|x| x.is_one()) {
            break;
        }
    }
    g
}

fn prem(a: &[IPoly], b: &[IPoly]) -> Vec<IPoly> {
    let mut r: Vec<IPoly> = a.to_vec();
    let n = b.len() - 1;
    let lc = &b[n];
    while r.len() > n && !r.is_empty() {
        let top = r.len() - 1;
        let t = r[top].clone();
        let shift = top - n;
        for c in r.iter_mut() {
            *c = c.mul(lc);
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] = r[j + shift].sub(&bj.mul(&t));
        }
        debug_assert!(r[top].is_zero());
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn primitive_in(a: &IPoly, v: Var) -> IPoly {
    let c = content_in(a, v);
    a.div_exact(&c)
}

const PRIME: u64 = 2_147_483_647;

fn mod_pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

/// Image of `a` in Z_p[v] after substituting `point[w]` for every other variable `w`.
fn image(a: &IPoly, v: Var, point: &[u64]) -> Vec<u64> {
    let p = BigInt::from(PRIME);
    let mut out = vec![0u64; a.degree(v) as usize + 1];
    for (m, c) in &a.terms {
        let mut x = u64::try_from(c.mod_floor(&p)).expect("reduced mod p");
        for w in Var::ALL.into_iter().filter(|&w| w != v) {
            x = x * mod_pow(point[w.index()], m.exp(w) as u64) % PRIME;
        }
        let slot = &mut out[m.exp(v) as usize];
        *slot = (*slot + x) % PRIME;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Degree of the monic gcd in Z_p[v].
fn image_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |x: &mut Vec<u64>| {
        while x.last() == Some(&0) {
            x.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        if a.len() >= b.len() {
            let inv = mod_pow(b[b.len() - 1], PRIME - 2);
            while a.len() >= b.len() {
                let f = a[a.len() - 1] * inv % PRIME;
                let shift = a.len() - b.len();
                for (j, &bj) in b.iter().enumerate() {
                    a[j + shift] = (a[j + shift] + PRIME - f * bj % PRIME) % PRIME;
                }
                trim(&mut a);
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// An upper bound on deg_v gcd(a, b), from an evaluation that keeps both leading
/// coefficients in `v` alive; `None` if no tried point does.
fn degree_bound(a: &IPoly, b: &IPoly, v: Var) -> Option<usize> {
    let (da, db) = (a.degree(v) as usize, b.degree(v) as usize);
    for k in 0..4u64 {
        let point: Vec<u64> = (0..Var::ALL.len() as u64)
            .map(|i| 1_000_003 + 7919 * i + 104_729 * k)
            .collect();
        let (ia, ib) = (image(a, v, &point), image(b, v, &point));
        if ia.len() == da + 1 && ib.len() == db + 1 && ia[da] != 0 && ib[db] != 0 {
            return Some(image_gcd_degree(ia, ib));
        }
    }
    None
}

/// Rebuilds a polynomial in `v` from its image at `v = xi` through the symmetric
/// xi-adic expansion of every coefficient.
fn interpolate(image: &IPoly, v: Var, xi: &BigInt) -> IPoly {
    let half = xi / 2;
    let mut g = IPoly::zero();
    let mut rest = image.clone();
    let mut i = 0;
    while !rest.is_zero() {
        let mut digit = IPoly::zero();
        for (m, c) in &rest.terms {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            digit.add_term(*m, r);
        }
        for (m, c) in &digit.terms {
            g.add_term(m.with(v, i), c.clone());
        }
        rest = rest.sub(&digit);
        rest = IPoly {
            terms: rest.terms.into_iter().map(|(m, c)| (m, c / xi)).collect(),
        };
        i += 1;
    }
    g
}

/// Heuristic gcd of primitive `a` and `b`: evaluate at a large integer, recurse, and
/// accept the reconstruction only if it divides both.
fn heuristic_gcd(a: &IPoly, b: &IPoly, v: Var) -> Option<IPoly> {
    let mut xi = BigInt::from(2) * a.max_norm().min(b.max_norm()) + 29;
    for _ in 0..6 {
        let g = gcd(&a.eval(v, &xi), &b.eval(v, &xi));
        let g = interpolate(&g, v, &xi);
        if !g.is_zero() {
            let g = g.div_exact(&IPoly::constant(g.integer_content()));
            if a.try_div(&g).is_some() && b.try_div(&g).is_some() {
                return Some(g);
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// gcd over Z[q, E, z, s, A, t], normalized to a positive leading coefficient.
pub(crate) fn gcd(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
        return IPoly::constant(x.gcd(y));
    }
    if let Some(x) = a.as_constant() {
        return IPoly::constant(x.gcd(&b.integer_content()));
    }
    if let Some(y) = b.as_constant() {
        return IPoly::constant(y.gcd(&a.integer_content()));
    }
    // a variable present on only one side can be eliminated through its content
    for v in Var::ALL {
        match (a.has_var(v), b.has_var(v)) {
            (true, false) => return gcd(&content_in(a, v), b),
            (false, true) => return gcd(a, &content_in(b, v)),
            _ => {}
        }
    }
    // a gcd free of `v` is the gcd of the contents in `v`; this skips the remainder
    // sequence, whose coefficients swell, in the common coprime case
    for v in Var::ALL.into_iter().filter(|&v| a.has_var(v)) {
        if degree_bound(a, b, v) == Some(0) {
            return gcd(&content_in(a, v), &content_in(b, v));
        }
    }
    let v = Var::ALL
        .into_iter()
        .find(|&v| a.has_var(v))
        .expect("non-constant polynomial has a variable");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca);
    let pb = b.div_exact(&cb);
    if let Some(g) = heuristic_gcd(&pa, &pb, v) {
        return c.mul(&g).normalize_sign();
    }
    let (mut r0, mut r1) = if pa.degree(v) >= pb.degree(v) {
        (pa.coeffs_in(v), pb.coeffs_in(v))
    } else {
        (pb.coeffs_in(v), pa.coeffs_in(v))
    };
    loop {
        let r = prem(&r0, &r1);
        if r.is_empty() {
            let g = primitive_in(&IPoly::from_coeffs(v, &r1), v);
            return c.mul(&g).normalize_sign();
        }
        if r.len() == 1 {
            return c.normalize_sign();
        }
        r0 = r1;
        r1 = primitive_in(&IPoly::from_coeffs(v, &r), v).coeffs_in(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[([i32; 6], i64)]) -> IPoly {
        let mut r = IPoly::zero();
        for (m, c) in terms {
            r.add_term(Monomial(*m), BigInt::from(*c));
        }
        r
    }

    #[test]
    fn univariate_common_factor() {
        // (q-1)(q+2) and (q-1)(q+3)
        let a = p(&[([2, 0, 0, 0, 0, 0], 1), ([1, 0, 0, 0, 0, 0], 1), ([0; 6], -2)]);
        let b = p(&[([2, 0, 0, 0, 0, 0], 1), ([1, 0, 0, 0, 0, 0], 2), ([0; 6], -3)]);
        let g = gcd(&a, &b);
        assert_eq!(g, p(&[([1, 0, 0, 0, 0, 0], 1), ([0; 6], -1)]));
    }

    #[test]
    fn bivariate_common_factor() {
        // (q*E + 1) * (q - E) and (q*E + 1) * (q + 2)
        let f = p(&[([1, 1, 0, 0, 0, 0], 1), ([0; 6], 1)]);
        let a = f.mul(&p(&[([1, 0, 0, 0, 0, 0], 1), ([0, 1, 0, 0, 0, 0], -1)]));
        let b = f.mul(&p(&[([1, 0, 0, 0, 0, 0], 1), ([0; 6], 2)]));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn common_factor_in_one_variable() {
        // (E + 1)(q + E) and 2(E + 1)(q^2 + 2): the gcd lives in the contents
        let f = p(&[([0, 1, 0, 0, 0, 0], 1), ([0; 6], 1)]);
        let a = f.mul(&p(&[([1, 0, 0, 0, 0, 0], 1), ([0, 1, 0, 0, 0, 0], 1)]));
        let b = f.mul(&p(&[([2, 0, 0, 0, 0, 0], 2), ([0; 6], 4)]));
        assert_eq!(degree_bound(&a, &b, Var::Q), Some(0));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn integer_contents() {
        let a = p(&[([1, 0, 0, 0, 0, 0], 4), ([0; 6], 6)]);
        let b = p(&[([1, 0, 0, 0, 0, 0], 6), ([0; 6], 9)]);
        assert_eq!(gcd(&a, &b), p(&[([1, 0, 0, 0, 0, 0], 2), ([0; 6], 3)]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = p(&[([1, 1, 0, 0, 0, 0], 3), ([0, 2, 0, 0, 0, 0], -1), ([0; 6], 5)]);
        let b = p(&[([2, 0, 0, 1, 0, 0], 1), ([0; 6], -7)]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }
}
