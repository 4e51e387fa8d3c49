//! The algebra of braids and ties E_n(q) and its Markov trace ρ.
//!
//! Elements are stored on the basis ε_I·b_w, with I a set partition of the strands and w a
//! permutation. b_w is the positive braid of any reduced word for w. Ties are carried
//! across braids by b_w·ε_{j,k} = ε_{w(j),w(k)}·b_w, with w acting on strand positions.
//! With this rule, multiplying by a generator only needs permutation lengths and
//! partition joins:
//!
//! - (I,w)·b_i = (I, w·s_i) when ℓ(w·s_i) > ℓ(w),
//!   otherwise (I, w·s_i) + (q−q⁻¹)(I ∨ {w(i), w(i+1)}, w);
//! - (I,w)·ε_i = (I ∨ {w(i), w(i+1)}, w).
//!
//! The trace is computed by a conditional expectation E_n → E_{n−1}. Each basis element
//! is written as ε_I·b_{w₁}·b_{n−1}·b_u with w₁ and u in S_{n−1}, and strand n is
//! stripped using the Markov rules.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;
use serde::Serialize;

use crate::diagram::{BraidWord, DiagramError, Letter};
use crate::error::{Error, Result};
use crate::exec;
use crate::poly::{LaurentFraction, LaurentPoly, Monomial, Var};
use crate::theta::Partitions;

/// Largest strand count accepted by [`enumerate_basis`] and [`theta_trace`].
pub const MAX_STRANDS: usize = 6;

/// Set partition of {1..n}, stored as a restricted growth string over positions 0..n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<u8>,
}

impl SetPartition {
    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        SetPartition {
            labels: (0..n as u8).collect(),
        }
    }

    /// From 1-based blocks; elements left out become singletons.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::discrete(n);
        for b in blocks {
            for &x in b {
                if x == 0 || x > n {
                    return Err(Error::BadIndices(x, x, n));
                }
            }
            for w in b.windows(2) {
                p = p.joined(w[0] - 1, w[1] - 1);
            }
        }
        Ok(p)
    }

    fn from_labels(raw: &[u8]) -> Self {
        let mut map = [u8::MAX; 256];
        let mut next = 0u8;
        let labels = raw
            .iter()
            .map(|&l| {
                if map[l as usize] == u8::MAX {
                    map[l as usize] = next;
                    next += 1;
                }
                map[l as usize]
            })
            .collect();
        SetPartition { labels }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// 1-based blocks, ordered by their minima.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let k = self.labels.iter().max().map_or(0, |&m| m as usize + 1);
        let mut out = vec![Vec::new(); k];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i + 1);
        }
        out
    }

    /// 0-based positions.
    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    /// Joins the blocks of positions `a` and `b` (0-based).
    pub fn joined(&self, a: usize, b: usize) -> Self {
        let (la, lb) = (self.labels[a], self.labels[b]);
        if la == lb {
            return self.clone();
        }
        let (keep, drop) = (la.min(lb), la.max(lb));
        let raw: Vec<u8> = self
            .labels
            .iter()
            .map(|&l| if l == drop { keep } else { l })
            .collect();
        Self::from_labels(&raw)
    }

    /// Finest partition coarser than both.
    pub fn join(&self, o: &SetPartition) -> Self {
        assert_eq!(self.n(), o.n());
        let mut p = self.clone();
        let mut first = BTreeMap::new();
        for (i, &l) in o.labels.iter().enumerate() {
            match first.get(&l) {
                Some(&j) => p = p.joined(j, i),
                None => {
                    first.insert(l, i);
                }
            }
        }
        p
    }

    /// The image w(I).
    pub fn permuted(&self, w: &Perm) -> Self {
        let mut raw = vec![0u8; self.n()];
        for (a, &l) in self.labels.iter().enumerate() {
            raw[w.img[a] as usize] = l;
        }
        Self::from_labels(&raw)
    }

    /// Swaps positions `p` and `p+1`.
    fn swapped(&self, p: usize) -> Self {
        let mut raw = self.labels.clone();
        raw.swap(p, p + 1);
        Self::from_labels(&raw)
    }

    /// Restriction to the first n−1 positions, and whether the last one shares a block.
    fn drop_last(&self) -> (SetPartition, Option<usize>) {
        let n = self.n();
        let last = self.labels[n - 1];
        let partner = (0..n - 1).find(|&i| self.labels[i] == last);
        (Self::from_labels(&self.labels[..n - 1]), partner)
    }

    pub fn all(n: usize) -> Vec<SetPartition> {
        if n == 0 {
            return vec![SetPartition { labels: vec![] }];
        }
        Partitions::new(n)
            .map(|blocks| {
                let mut raw = vec![0u8; n];
                for (b, block) in blocks.iter().enumerate() {
                    for &i in block {
                        raw[i] = b as u8;
                    }
                }
                SetPartition { labels: raw }
            })
            .collect()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .filter(|b| b.len() > 1)
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        if parts.is_empty() {
            Ok(())
        } else {
            write!(f, "ε{{{}}}", parts.join("|"))
        }
    }
}

/// Permutation in one-line notation, 0-based: `img[i] = w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            img: (0..n as u8).collect(),
        }
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(v: &[usize]) -> Option<Self> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in v {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
        }
        Some(Perm {
            img: v.iter().map(|&x| (x - 1) as u8).collect(),
        })
    }

    /// s_{i_1}·…·s_{i_k} from 1-based generator indices.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut w = Self::identity(n);
        for &i in word {
            w.img.swap(i - 1, i);
        }
        w
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    /// w(i) for 0-based i.
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize + 1).collect()
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.img[i] > self.img[j])
            .count()
    }

    /// Reduced word as 1-based generator indices, w = s_{r_1}·…·s_{r_k}.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.img.clone();
        let mut tail = Vec::new();
        while let Some(p) = (0..w.len().saturating_sub(1)).find(|&p| w[p] > w[p + 1]) {
            w.swap(p, p + 1);
            tail.push(p + 1);
        }
        tail.reverse();
        tail
    }

    pub fn inverse(&self) -> Self {
        let mut img = vec![0u8; self.n()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u8;
        }
        Perm { img }
    }

    /// Composition as maps: (self·o)(i) = self(o(i)).
    pub fn compose(&self, o: &Perm) -> Self {
        Perm {
            img: o.img.iter().map(|&x| self.img[x as usize]).collect(),
        }
    }

    /// All of S_n ordered by length, then by reduced word.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = vec![Perm::identity(n)];
        // grow by right multiplication with generators, breadth first
        let mut seen: std::collections::HashSet<Perm> = out.iter().cloned().collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for p in 0..n.saturating_sub(1) {
                    if w.img[p] < w.img[p + 1] {
                        let mut v = w.clone();
                        v.img.swap(p, p + 1);
                        if seen.insert(v.clone()) {
                            next.push(v);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by_cached_key(|w| (w.length(), w.reduced_word()));
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.reduced_word();
        let parts: Vec<String> = word.iter().map(|i| format!("b{i}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

type Key = (SetPartition, Perm);

/// Element of E_n(q) on the ε_I·b_w basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BTElement {
    n: usize,
    terms: BTreeMap<Key, LaurentFraction>,
}

fn q_minus_qinv() -> LaurentFraction {
    crate::poly::q_minus_qinv().into()
}

fn push(terms: &mut BTreeMap<Key, LaurentFraction>, key: Key, c: LaurentFraction) {
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl BTElement {
    pub fn zero(n: usize) -> Self {
        BTElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(SetPartition::discrete(n), Perm::identity(n))
    }

    /// ε_I·b_w.
    pub fn basis(i: SetPartition, w: Perm) -> Self {
        assert_eq!(i.n(), w.n());
        let n = w.n();
        let mut terms = BTreeMap::new();
        terms.insert((i, w), LaurentFraction::one());
        BTElement { n, terms }
    }

    /// b_i (1-based).
    pub fn b(i: usize, n: usize) -> Result<Self> {
        check_gen(i, n)?;
        Ok(Self::one(n).right_b(i))
    }

    /// b_i⁻¹ = b_i − (q−q⁻¹)ε_i.
    pub fn b_inv(i: usize, n: usize) -> Result<Self> {
        check_gen(i, n)?;
        Ok(Self::one(n).right_b_inv(i))
    }

    /// ε_i (1-based).
    pub fn eps(i: usize, n: usize) -> Result<Self> {
        check_gen(i, n)?;
        Ok(Self::one(n).right_eps(i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetPartition, &Perm, &LaurentFraction)> {
        self.terms.iter().map(|((i, w), c)| (i, w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`BTElement::is_zero`]: an element with no terms.
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: &LaurentFraction) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        BTElement {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, o: &BTElement) -> Result<Self> {
        self.same_n(o)?;
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            push(&mut terms, k.clone(), v.clone());
        }
        Ok(BTElement { n: self.n, terms })
    }

    pub fn sub(&self, o: &BTElement) -> Result<Self> {
        self.add(&o.scale(&LaurentFraction::int(-1)))
    }

    fn same_n(&self, o: &BTElement) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(self.n, o.n));
        }
        Ok(())
    }

    fn map_terms(&self, f: impl Fn(&Key, &LaurentFraction, &mut BTreeMap<Key, LaurentFraction>)) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            f(k, c, &mut terms);
        }
        BTElement { n: self.n, terms }
    }

    /// x·b_i.
    pub fn right_b(&self, i: usize) -> Self {
        let p = i - 1;
        let z = q_minus_qinv();
        self.map_terms(|(part, w), c, out| {
            let mut v = w.clone();
            v.img.swap(p, p + 1);
            if w.img[p] > w.img[p + 1] {
                let tied = part.joined(w.apply(p), w.apply(p + 1));
                push(out, (tied, w.clone()), c * &z);
            }
            push(out, (part.clone(), v), c.clone());
        })
    }

    /// x·ε_i.
    pub fn right_eps(&self, i: usize) -> Self {
        let p = i - 1;
        self.map_terms(|(part, w), c, out| {
            push(out, (part.joined(w.apply(p), w.apply(p + 1)), w.clone()), c.clone());
        })
    }

    /// x·ε_{j,k} for 1-based strands.
    pub fn right_tie(&self, j: usize, k: usize) -> Self {
        self.map_terms(|(part, w), c, out| {
            push(out, (part.joined(w.apply(j - 1), w.apply(k - 1)), w.clone()), c.clone());
        })
    }

    pub fn right_b_inv(&self, i: usize) -> Self {
        let t = self.right_eps(i).scale(&q_minus_qinv());
        self.right_b(i).sub(&t).expect("same n")
    }

    /// b_i·x.
    pub fn left_b(&self, i: usize) -> Self {
        let p = i - 1;
        let z = q_minus_qinv();
        self.map_terms(|(part, w), c, out| {
            let moved = part.swapped(p);
            let inv = w.inverse();
            let mut v = w.clone();
            for x in v.img.iter_mut() {
                if *x as usize == p {
                    *x += 1;
                } else if *x as usize == p + 1 {
                    *x -= 1;
                }
            }
            if inv.img[p] > inv.img[p + 1] {
                push(out, (moved.joined(p, p + 1), w.clone()), c * &z);
            }
            push(out, (moved, v), c.clone());
        })
    }

    /// ε_i·x.
    pub fn left_eps(&self, i: usize) -> Self {
        let p = i - 1;
        self.map_terms(|(part, w), c, out| {
            push(out, (part.joined(p, p + 1), w.clone()), c.clone());
        })
    }

    /// x·ε_J·b_v, with b_v applied along its reduced word.
    fn right_basis(&self, j: &SetPartition, v: &Perm) -> Self {
        let mut x = self.clone();
        for block in j.blocks() {
            for pair in block.windows(2) {
                x = x.right_tie(pair[0], pair[1]);
            }
        }
        for i in v.reduced_word() {
            x = x.right_b(i);
        }
        x
    }

    /// Restriction of an element of E_{n} living on the first n−1 strands.
    fn shrink(&self) -> BTElement {
        let mut terms = BTreeMap::new();
        for ((part, w), c) in &self.terms {
            debug_assert_eq!(w.apply(self.n - 1), self.n - 1);
            let (p, _) = part.drop_last();
            let w = Perm {
                img: w.img[..self.n - 1].to_vec(),
            };
            push(&mut terms, (p, w), c.clone());
        }
        BTElement {
            n: self.n - 1,
            terms,
        }
    }

    /// Embeds into E_{n+1}.
    pub fn embed(&self) -> BTElement {
        let n = self.n + 1;
        let terms = self
            .terms
            .iter()
            .map(|((part, w), c)| {
                let mut labels = part.labels.clone();
                labels.push(part.labels.iter().max().map_or(0, |&m| m + 1));
                let mut img = w.img.clone();
                img.push(self.n as u8);
                ((SetPartition { labels }, Perm { img }), c.clone())
            })
            .collect();
        BTElement { n, terms }
    }
}

fn check_gen(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::BadIndices(i, i + 1, n));
    }
    Ok(())
}

impl fmt::Display for BTElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((part, w), c)| {
                let mut m = format!("{part}");
                let ws = w.to_string();
                if !ws.is_empty() {
                    if !m.is_empty() {
                        m.push('·');
                    }
                    m.push_str(&ws);
                }
                if m.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})·{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The basis ε_I·b_w of E_n(q), partitions outermost.
pub fn enumerate_basis(n: usize) -> Result<Vec<(SetPartition, Perm)>> {
    if n == 0 || n > MAX_STRANDS {
        return Err(Error::SizeCap(format!(
            "basis enumeration needs 1 <= n <= {MAX_STRANDS}, got {n}"
        )));
    }
    let perms = Perm::all(n);
    Ok(SetPartition::all(n)
        .into_iter()
        .flat_map(|i| perms.iter().map(move |w| (i.clone(), w.clone())))
        .collect())
}

pub fn multiply(x: &BTElement, y: &BTElement) -> Result<BTElement> {
    x.same_n(y)?;
    let ys: Vec<(&Key, &LaurentFraction)> = y.terms.iter().collect();
    let parts = exec::map(&ys, |((j, v), c)| x.right_basis(j, v).scale(c));
    let mut out = BTElement::zero(x.n);
    for p in &parts {
        out = out.add(p)?;
    }
    Ok(out)
}

/// ε_{i,j} = b_i⋯b_{j−2}·ε_{j−1}·b_{j−2}⁻¹⋯b_i⁻¹, built from generators.
pub fn tie(i: usize, j: usize, n: usize) -> Result<BTElement> {
    if i == 0 || i >= j || j > n {
        return Err(Error::BadIndices(i, j, n));
    }
    let mut x = BTElement::one(n);
    for k in i..j - 1 {
        x = x.right_b(k);
    }
    x = x.right_eps(j - 1);
    for k in (i..j - 1).rev() {
        x = x.right_b_inv(k);
    }
    Ok(x)
}

/// Image of a tied braid word: σ_i ↦ b_i, σ_i⁻¹ ↦ b_i⁻¹, η_i ↦ ε_i.
pub fn from_tied_braid(w: &BraidWord) -> BTElement {
    let mut x = BTElement::one(w.strands);
    for l in &w.letters {
        x = match *l {
            Letter::Sigma(i, e) if e > 0 => x.right_b(i),
            Letter::Sigma(i, _) => x.right_b_inv(i),
            Letter::Tie(i) => x.right_eps(i),
        };
    }
    x
}

fn trace_memo() -> &'static DashMap<Key, LaurentPoly> {
    static MEMO: OnceLock<DashMap<Key, LaurentPoly>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// ρ(ε_I·b_w) as a polynomial in q, z, E.
fn trace_basis(part: &SetPartition, w: &Perm) -> LaurentPoly {
    let n = w.n();
    if n <= 1 {
        return LaurentPoly::one();
    }
    let key = (part.clone(), w.clone());
    if let Some(v) = trace_memo().get(&key) {
        return v.clone();
    }
    let last = n - 1;
    let value = if w.apply(last) == last {
        // w lives in S_{n−1}; a tie from strand n costs a factor E
        let (p, partner) = part.drop_last();
        let v = trace_basis(
            &p,
            &Perm {
                img: w.img[..last].to_vec(),
            },
        );
        match partner {
            Some(_) => v.mul_monomial(&Monomial::var(Var::E, 1)),
            None => v,
        }
    } else {
        // w = w1·s_{n−1}·u with w1 = s_j⋯s_{n−2} the cycle sending n to w(n)
        let j = w.apply(last);
        let w1 = Perm::from_word(n, &(j + 1..last).collect::<Vec<_>>());
        let c = w1.compose(&Perm::from_word(n, &[last]));
        let u = c.inverse().compose(w);
        debug_assert_eq!(u.apply(last), last);
        debug_assert_eq!(w1.length() + 1 + u.length(), w.length());
        // ε_I b_{w1} = b_{w1} ε_J, then ε_J b_{n−1} = ε_{J'} b_{n−1} stripped by rules (iii)/(v)
        let jp = part.permuted(&w1.inverse());
        let (mut rest, partner) = jp.drop_last();
        if let Some(k) = partner {
            if k != last - 1 {
                rest = rest.joined(k, last - 1);
            }
        }
        let shrink = |p: &Perm| Perm {
            img: p.img[..last].to_vec(),
        };
        let (w1s, us) = (shrink(&w1), shrink(&u));
        let x = BTElement::basis(rest.permuted(&w1s), w1s)
            .right_basis(&SetPartition::discrete(last), &us);
        trace_poly(&x).mul_monomial(&Monomial::var(Var::Z, 1))
    };
    trace_memo().insert(key, value.clone());
    value
}

fn trace_poly(x: &BTElement) -> LaurentPoly {
    let mut acc = LaurentFraction::zero();
    for ((p, w), c) in &x.terms {
        acc = &acc + &(c * &LaurentFraction::from(trace_basis(p, w)));
    }
    acc.as_poly()
        .cloned()
        .expect("trace of an element with Laurent coefficients is a Laurent polynomial")
}

/// The Markov trace ρ with z kept symbolic.
pub fn trace_rho(x: &BTElement) -> LaurentFraction {
    let ts: Vec<(&Key, &LaurentFraction)> = x.terms.iter().collect();
    let vals = exec::map(&ts, |((p, w), c)| *c * &LaurentFraction::from(trace_basis(p, w)));
    vals.into_iter().sum()
}

/// Drops the last strand of an element supported on E_{n−1} ⊂ E_n.
pub fn restrict(x: &BTElement) -> Option<BTElement> {
    let ok = x.terms.keys().all(|(p, w)| {
        w.apply(x.n - 1) == x.n - 1 && p.drop_last().1.is_none()
    });
    ok.then(|| x.shrink())
}

/// z = −q⁻¹E/(q²+1).
pub fn z_theta() -> LaurentFraction {
    crate::poly::parse_fraction("-E/(q^3 + q)").expect("constant")
}

fn check_word(w: &BraidWord, tied: bool) -> Result<()> {
    if w.strands > MAX_STRANDS {
        return Err(Error::SizeCap(format!(
            "trace route handles at most {MAX_STRANDS} strands, got {}",
            w.strands
        )));
    }
    if !tied && w.has_ties() {
        return Err(DiagramError::TieLettersPresent.into());
    }
    Ok(())
}

/// θ of the closure of `w` (θ̄ of the tied closure when `tied`) through the trace:
/// (−(q²+1)/(qE))^{n−1} q^{2ε} ρ(w) at z = −q⁻¹E/(q²+1).
pub fn theta_trace(w: &BraidWord, tied: bool) -> Result<LaurentFraction> {
    check_word(w, tied)?;
    let rho = trace_rho(&from_tied_braid(w)).substitute(Var::Z, &z_theta())?;
    let norm = crate::poly::parse_fraction("-(q^2 + 1)/(q*E)")?;
    let e = w.exponent_sum() as i32;
    Ok((&norm.pow(w.strands as i32 - 1)? * &rho).mul_monomial(&Monomial::var(Var::Q, 2 * e)))
}

/// Θ of the closure through the trace, λ = s²:
/// ((1−s²)/(s(q−q⁻¹)E))^{n−1} s^ε ρ(w) at z = (q−q⁻¹)E/(1−s²).
#[allow(non_snake_case)]
pub fn Theta_trace(w: &BraidWord, tied: bool) -> Result<LaurentFraction> {
    check_word(w, tied)?;
    let z = crate::poly::parse_fraction("(q - q^-1)*E/(1 - s^2)")?;
    let rho = trace_rho(&from_tied_braid(w)).substitute(Var::Z, &z)?;
    let norm = crate::poly::parse_fraction("(1 - s^2)/(s*(q - q^-1)*E)")?;
    let e = w.exponent_sum() as i32;
    Ok((&norm.pow(w.strands as i32 - 1)? * &rho).mul_monomial(&Monomial::var(Var::S, e)))
}

/// b_{1,2} = ε₁ε₂ Σ_w q^{ℓ(w)} b_w in E₃(q).
pub fn b12() -> BTElement {
    let full = SetPartition::discrete(3).joined(0, 1).joined(1, 2);
    let mut terms = BTreeMap::new();
    for w in Perm::all(3) {
        let c = LaurentFraction::var(Var::Q, w.length() as i32);
        terms.insert((full.clone(), w), c);
    }
    BTElement { n: 3, terms }
}

#[derive(Clone, Debug, Serialize)]
pub struct PtlReport {
    pub basis_size: usize,
    /// Basis elements m with m·b_{1,2} ≠ q^k b_{1,2} or b_{1,2}·m ≠ q^k b_{1,2}.
    pub lemma_failures: Vec<String>,
    /// ε_{1,3}b₁b₂b₁·b_{1,2} = q³b_{1,2}
    pub worked_case: bool,
    pub rho_b12: String,
    pub rho_matches: bool,
    pub roots: Vec<String>,
    pub printed_roots: Vec<String>,
    /// Printed roots that are not roots of ρ(b_{1,2}).
    pub printed_root_mismatches: Vec<String>,
}

impl PtlReport {
    pub fn pass(&self) -> bool {
        self.basis_size == 30 && self.lemma_failures.is_empty() && self.worked_case && self.rho_matches
    }
}

/// Coefficients of `p` as a polynomial in `v`, lowest degree first.
fn coefficients_in(p: &LaurentPoly, v: Var) -> (i32, Vec<LaurentPoly>) {
    let (lo, hi) = p.degree_range(v);
    let mut out = vec![LaurentPoly::zero(); (hi - lo + 1).max(0) as usize];
    for (m, c) in p.terms() {
        let k = m.exp(v);
        out[(k - lo) as usize].add_term(m.with(v, 0), c.clone());
    }
    (lo, out)
}

/// Roots of a quadratic (or linear) polynomial in `v`, when they are rational functions.
fn quadratic_roots(p: &LaurentPoly, v: Var) -> Option<Vec<LaurentFraction>> {
    let (lo, cs) = coefficients_in(p, v);
    if lo != 0 {
        return None;
    }
    let f = |x: &LaurentPoly| LaurentFraction::from(x.clone());
    match cs.len() {
        2 => Some(vec![-(&f(&cs[0]) / &f(&cs[1]))]),
        3 => {
            let disc = &(&cs[1] * &cs[1]) - &(&cs[2] * &cs[0]).scale(&crate::poly::rat(4));
            let r = f(&disc.sqrt_exact()?);
            let two_a = f(&cs[2].scale(&crate::poly::rat(2)));
            let mb = -f(&cs[1]);
            let mut roots = vec![&(&mb + &r) / &two_a, &(&mb - &r) / &two_a];
            roots.sort_by_key(|x| x.to_string());
            roots.dedup();
            Some(roots)
        }
        _ => None,
    }
}

pub fn ptl_ideal_check() -> Result<PtlReport> {
    let basis = enumerate_basis(3)?;
    let b = b12();
    let checks = exec::map(&basis, |(i, w)| {
        let m = BTElement::basis(i.clone(), w.clone());
        let want = b.scale(&LaurentFraction::var(Var::Q, w.length() as i32));
        let ok = multiply(&m, &b).map(|x| x == want).unwrap_or(false)
            && multiply(&b, &m).map(|x| x == want).unwrap_or(false);
        (!ok).then(|| m.to_string())
    });
    let lemma_failures: Vec<String> = checks.into_iter().flatten().collect();

    let m = BTElement::basis(SetPartition::from_blocks(3, &[vec![1, 3]])?, Perm::from_word(3, &[1, 2, 1]));
    let worked_case = multiply(&m, &b)? == b.scale(&LaurentFraction::var(Var::Q, 3));

    let rho = trace_rho(&b);
    let expected = crate::poly::parse_fraction("((q^2 + 1)*q*z + E)*(q*z + E)")?;
    let roots = rho
        .as_poly()
        .and_then(|p| quadratic_roots(p, Var::Z))
        .unwrap_or_default();
    let printed = [
        crate::poly::parse_fraction("-E/(q*(q^2 + 1))")?,
        crate::poly::parse_fraction("-q^-1*E^-1")?,
    ];
    let printed_root_mismatches = printed
        .iter()
        .filter(|r| !roots.contains(r))
        .map(|r| r.to_string())
        .collect();
    Ok(PtlReport {
        basis_size: basis.len(),
        lemma_failures,
        worked_case,
        rho_b12: rho.to_string(),
        rho_matches: rho == expected,
        roots: roots.iter().map(|r| r.to_string()).collect(),
        printed_roots: printed.iter().map(|r| r.to_string()).collect(),
        printed_root_mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_fraction;

    fn f(s: &str) -> LaurentFraction {
        parse_fraction(s).unwrap()
    }

    fn word(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(enumerate_basis(1).unwrap().len(), 1);
        assert_eq!(enumerate_basis(2).unwrap().len(), 4);
        assert_eq!(enumerate_basis(3).unwrap().len(), 30);
        assert_eq!(enumerate_basis(4).unwrap().len(), 360);
        assert!(matches!(enumerate_basis(7), Err(Error::SizeCap(_))));
    }

    #[test]
    fn perm_words() {
        for w in Perm::all(4) {
            let r = w.reduced_word();
            assert_eq!(r.len(), w.length());
            assert_eq!(Perm::from_word(4, &r), w);
        }
        let order: Vec<Vec<usize>> = Perm::all(3).iter().map(|w| w.reduced_word()).collect();
        assert_eq!(order, vec![vec![], vec![1], vec![2], vec![1, 2], vec![2, 1], vec![1, 2, 1]]);
    }

    #[test]
    fn quadratic_relation() {
        let b = BTElement::b(1, 3).unwrap();
        let bb = multiply(&b, &b).unwrap();
        let eb = multiply(&BTElement::eps(1, 3).unwrap(), &b).unwrap();
        let want = BTElement::one(3).add(&eb.scale(&f("q - q^-1"))).unwrap();
        assert_eq!(bb, want);
        assert_eq!(from_tied_braid(&word("s1 s1", 3)), want);
        assert_eq!(from_tied_braid(&word("s1 s1^-1", 3)), BTElement::one(3));
        assert_eq!(from_tied_braid(&word("e1", 3)), BTElement::eps(1, 3).unwrap());
    }

    #[test]
    fn tie_relations() {
        let e1 = BTElement::eps(1, 3).unwrap();
        assert_eq!(multiply(&e1, &e1).unwrap(), e1);
        let lhs = from_tied_braid(&word("e1 e2 s1", 3));
        assert_eq!(lhs, from_tied_braid(&word("e2 s1 e2", 3)));
        assert_eq!(lhs, from_tied_braid(&word("s1 e1 e2", 3)));
        assert_eq!(tie(1, 2, 3).unwrap(), e1);
        let t13 = tie(1, 3, 3).unwrap();
        let basis13 = BTElement::basis(
            SetPartition::from_blocks(3, &[vec![1, 3]]).unwrap(),
            Perm::identity(3),
        );
        assert_eq!(t13, basis13);
        assert_eq!(multiply(&t13, &t13).unwrap(), t13);
        assert!(tie(2, 2, 3).is_err());
    }

    #[test]
    fn left_actions_match_products() {
        for (i, w) in enumerate_basis(3).unwrap() {
            let x = BTElement::basis(i, w);
            for g in 1..3 {
                let b = BTElement::b(g, 3).unwrap();
                let e = BTElement::eps(g, 3).unwrap();
                assert_eq!(x.left_b(g), multiply(&b, &x).unwrap());
                assert_eq!(x.left_eps(g), multiply(&e, &x).unwrap());
            }
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_rho(&BTElement::one(3)), LaurentFraction::one());
        assert_eq!(trace_rho(&from_tied_braid(&word("e1 e2 s2", 3))), f("z*E"));
        assert_eq!(
            trace_rho(&from_tied_braid(&word("e1 e2 s1 s2 s1", 3))),
            f("z*E + (q - q^-1)*z^2")
        );
    }

    #[test]
    fn theta_trace_examples() {
        assert_eq!(theta_trace(&word("", 2), false).unwrap(), f("-(q + q^-1)/E"));
        assert_eq!(theta_trace(&word("s1", 2), false).unwrap(), LaurentFraction::one());
        assert_eq!(theta_trace(&word("s1 s1 s1", 2), false).unwrap(), f("-q^8 + q^6 + q^2"));
        assert!(theta_trace(&word("e1", 2), false).is_err());
        assert!(matches!(theta_trace(&word("", 7), false), Err(Error::SizeCap(_))));
    }

    #[test]
    fn ptl_report() {
        let r = ptl_ideal_check().unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.roots.len(), 2);
        assert_eq!(r.printed_root_mismatches, vec![f("-q^-1*E^-1").to_string()]);
    }
}
