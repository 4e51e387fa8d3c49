//! The invariants θ(q,E) and Θ(q,λ,E), with λ = s².
//!
//! Two routes are provided. The partition route sums over set partitions of the components
//! with sublink Jones or Homflypt values. The skein route resolves mixed crossings until
//! every lower-indexed component lies above the higher ones, which separates the link.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use dashmap::DashMap;
use serde::Serialize;

use crate::classical::{homflypt, jones};
use crate::diagram::{LinkDiagram, Resolution};
use crate::error::{Error, Result};
use crate::exec;
use crate::poly::{q_plus_qinv, LaurentFraction, LaurentPoly, Monomial, Var};

/// How a layered (split) terminal of the skein descent is normalized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitNormalization {
    /// (−(q+q⁻¹))^{r−1} E^{1−r} Π V(Kᵢ), agreeing with the partition and trace routes.
    #[default]
    Consistent,
    /// E^{1−r} Π V(Kᵢ) without the unlink factor.
    Printed,
}

impl std::str::FromStr for SplitNormalization {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "consistent" => Ok(Self::Consistent),
            "printed" => Ok(Self::Printed),
            _ => Err(format!("unknown split normalization {s:?}")),
        }
    }
}

impl std::fmt::Display for SplitNormalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Consistent => "consistent",
            Self::Printed => "printed",
        })
    }
}

/// Constants shared by the skein and partition formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinConstants {
    /// (s⁻¹ − s)/(q − q⁻¹)
    pub mu: LaurentFraction,
    /// −(q + q⁻¹)
    pub mu_at_q4: LaurentFraction,
}

impl SkeinConstants {
    pub fn new() -> Self {
        let s = |e| LaurentPoly::var(Var::S, e);
        let q = |e| LaurentPoly::var(Var::Q, e);
        let mu = LaurentFraction::new(&s(-1) - &s(1), &q(1) - &q(-1)).expect("nonzero");
        SkeinConstants {
            mu,
            mu_at_q4: (-q_plus_qinv()).into(),
        }
    }
}

impl Default for SkeinConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// E_k = (E⁻¹ − 1)(E⁻¹ − 2)⋯(E⁻¹ − k + 1), E₁ = 1.
pub fn ek(k: usize) -> LaurentPoly {
    assert!(k >= 1, "E_k needs k >= 1");
    let mut acc = LaurentPoly::one();
    for j in 1..k {
        acc = &acc * &(&LaurentPoly::var(Var::E, -1) - &LaurentPoly::int(j as i64));
    }
    acc
}

/// A set partition of link components with its cross-block linking sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<usize>>,
    pub nu: i64,
}

/// Set partitions of `0..m` as restricted growth strings, streamed.
pub struct Partitions {
    rgs: Vec<usize>,
    done: bool,
}

impl Partitions {
    pub fn new(m: usize) -> Self {
        Partitions {
            rgs: vec![0; m],
            done: m == 0,
        }
    }
}

impl Iterator for Partitions {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let k = self.rgs.iter().max().map_or(0, |&x| x + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        // advance: bump the last position that may still grow
        let m = self.rgs.len();
        let mut i = m;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let prefix_max = self.rgs[..i].iter().copied().max().unwrap_or(0);
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for r in &mut self.rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
        }
        Some(blocks)
    }
}

pub fn component_partitions(d: &LinkDiagram) -> impl Iterator<Item = ComponentPartition> {
    let lk = d.linking_matrix();
    Partitions::new(d.n_components()).map(move |blocks| {
        let mut owner = vec![0; lk.len()];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                owner[i] = b;
            }
        }
        let mut nu = 0;
        for i in 0..lk.len() {
            for j in i + 1..lk.len() {
                if owner[i] != owner[j] {
                    nu += lk[i][j];
                }
            }
        }
        ComponentPartition { blocks, nu }
    })
}

fn as_poly(f: LaurentFraction) -> LaurentPoly {
    f.as_poly().cloned().expect("Jones values are Laurent polynomials")
}

/// Evaluates `value` once for every block that occurs in some partition.
fn block_values<T: Send + Sync + Clone>(
    d: &LinkDiagram,
    value: impl Fn(&LinkDiagram) -> Result<T> + Sync + Send,
) -> Result<BTreeMap<Vec<usize>, T>> {
    let blocks: Vec<Vec<usize>> = Partitions::new(d.n_components())
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vals = exec::map(&blocks, |b| value(&d.sublink(b)?));
    blocks
        .into_iter()
        .zip(vals)
        .map(|(b, v)| Ok((b, v?)))
        .collect()
}

/// θ by the partition formula:
/// Σ_π (−1)^{k−1}(q+q⁻¹)^{k−1} E_k q^{4ν(π)} Π V(sublink).
pub fn theta_partition(d: &LinkDiagram) -> Result<LaurentFraction> {
    let v = block_values(d, |s| jones(s).map(as_poly))?;
    let minus_qq = -q_plus_qinv();
    let mut total = LaurentPoly::zero();
    for p in component_partitions(d) {
        let k = p.blocks.len();
        let mut term = &minus_qq.pow(k as u32 - 1) * &ek(k);
        term = term.mul_monomial(&Monomial::var(Var::Q, 4 * p.nu as i32));
        for b in &p.blocks {
            term = &term * &v[b];
        }
        total += &term;
    }
    Ok(total.into())
}

/// Θ by the partition formula: Σ_π μ^{k−1} E_k λ^{ν(π)} Π P(sublink).
#[allow(non_snake_case)]
pub fn Theta_partition(d: &LinkDiagram) -> Result<LaurentFraction> {
    let p_vals = block_values(d, homflypt)?;
    let mu = SkeinConstants::new().mu;
    let mut total = LaurentFraction::zero();
    for p in component_partitions(d) {
        let k = p.blocks.len();
        let mut term = mu.pow(k as i32 - 1)?.mul_poly(&ek(k));
        term = term.mul_monomial(&Monomial::var(Var::S, 2 * p.nu as i32));
        for b in &p.blocks {
            term = &term * &p_vals[b];
        }
        total = &total + &term;
    }
    Ok(total)
}

fn theta_memo() -> &'static DashMap<(SplitNormalization, Vec<u8>), LaurentPoly> {
    static MEMO: OnceLock<DashMap<(SplitNormalization, Vec<u8>), LaurentPoly>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// First mixed crossing, in edge order, where the lower-indexed component passes under.
pub fn wrong_crossing(d: &LinkDiagram) -> Option<usize> {
    wrong_crossings(d).next()
}

fn wrong_crossings(d: &LinkDiagram) -> impl Iterator<Item = usize> + '_ {
    (0..d.n_edges()).filter_map(move |e| {
        let (x, slot) = d.head(e)?;
        let (u, o) = d.strands_at(x);
        (slot == 0 && u < o).then_some(x)
    })
}

/// Value of a layered diagram: its components are separated, so only their knot types
/// and the count r enter.
fn layered_terminal(d: &LinkDiagram, norm: SplitNormalization) -> Result<LaurentPoly> {
    let r = d.n_components();
    let singles: Vec<usize> = (0..r).collect();
    let vals = exec::map(&singles, |&i| jones(&d.sublink(&[i])?).map(as_poly));
    let mut acc = LaurentPoly::var(Var::E, 1 - r as i32);
    if norm == SplitNormalization::Consistent {
        acc = &acc * &(-q_plus_qinv()).pow(r as u32 - 1);
    }
    for v in vals {
        acc = &acc * &v?;
    }
    Ok(acc)
}

fn theta_skein_rec(d: &LinkDiagram, norm: SplitNormalization) -> Result<LaurentPoly> {
    let d = d.simplify();
    let key = (norm, d.canonical_key());
    if let Some(v) = theta_memo().get(&key) {
        return Ok(v.clone());
    }
    let value = match wrong_crossing(&d) {
        None => layered_terminal(&d, norm)?,
        Some(x) => {
            let sign = d.crossings()[x].sign as i32;
            let sw = d.resolve(x, Resolution::Switch)?;
            let sm = d.resolve(x, Resolution::Smooth)?;
            let before = wrong_crossings(&d).count();
            if wrong_crossings(&sw).count() >= before || sm.n_components() >= d.n_components() {
                return Err(Error::NonTermination);
            }
            let (a, b) = exec::join(|| theta_skein_rec(&sw, norm), || theta_skein_rec(&sm, norm));
            // θ(L+) = q⁴θ(L−) + q²(q−q⁻¹)θ(L0); θ(L−) = q⁻⁴θ(L+) − q⁻²(q−q⁻¹)θ(L0)
            let z = &LaurentPoly::var(Var::Q, 1) - &LaurentPoly::var(Var::Q, -1);
            let smooth_coeff = z
                .mul_term(&Monomial::var(Var::Q, 2 * sign), &crate::poly::rat(sign as i64));
            &a?.mul_monomial(&Monomial::var(Var::Q, 4 * sign)) + &(&smooth_coeff * &b?)
        }
    };
    theta_memo().insert(key, value.clone());
    Ok(value)
}

/// θ by skein descent on mixed crossings.
pub fn theta_skein(d: &LinkDiagram) -> Result<LaurentFraction> {
    theta_skein_with(d, SplitNormalization::Consistent)
}

pub fn theta_skein_with(d: &LinkDiagram, norm: SplitNormalization) -> Result<LaurentFraction> {
    Ok(theta_skein_rec(d, norm)?.into())
}

fn big_theta_memo() -> &'static DashMap<(SplitNormalization, Vec<u8>), LaurentFraction> {
    static MEMO: OnceLock<DashMap<(SplitNormalization, Vec<u8>), LaurentFraction>> =
        OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

#[allow(non_snake_case)]
fn Theta_skein_rec(d: &LinkDiagram, norm: SplitNormalization) -> Result<LaurentFraction> {
    let d = d.simplify();
    let key = (norm, d.canonical_key());
    if let Some(v) = big_theta_memo().get(&key) {
        return Ok(v.clone());
    }
    let value = match wrong_crossing(&d) {
        None => {
            let r = d.n_components();
            let singles: Vec<usize> = (0..r).collect();
            let vals = exec::map(&singles, |&i| homflypt(&d.sublink(&[i])?));
            let mut acc = LaurentFraction::var(Var::E, 1 - r as i32);
            if norm == SplitNormalization::Consistent {
                acc = &acc * &SkeinConstants::new().mu.pow(r as i32 - 1)?;
            }
            for v in vals {
                acc = &acc * &v?;
            }
            acc
        }
        Some(x) => {
            let sign = d.crossings()[x].sign as i32;
            let sw = d.resolve(x, Resolution::Switch)?;
            let sm = d.resolve(x, Resolution::Smooth)?;
            let before = wrong_crossings(&d).count();
            if wrong_crossings(&sw).count() >= before || sm.n_components() >= d.n_components() {
                return Err(Error::NonTermination);
            }
            let (a, b) = exec::join(|| Theta_skein_rec(&sw, norm), || Theta_skein_rec(&sm, norm));
            // Θ(L+) = s²Θ(L−) + s(q−q⁻¹)Θ(L0); Θ(L−) = s⁻²Θ(L+) − s⁻¹(q−q⁻¹)Θ(L0)
            let z = &LaurentPoly::var(Var::Q, 1) - &LaurentPoly::var(Var::Q, -1);
            let smooth_coeff = z.mul_term(&Monomial::var(Var::S, sign), &crate::poly::rat(sign as i64));
            &a?.mul_monomial(&Monomial::var(Var::S, 2 * sign)) + &b?.mul_poly(&smooth_coeff)
        }
    };
    big_theta_memo().insert(key, value.clone());
    Ok(value)
}

/// Θ by skein descent on mixed crossings, terminals valued by Homflypt.
#[allow(non_snake_case)]
pub fn Theta_skein_with(d: &LinkDiagram, norm: SplitNormalization) -> Result<LaurentFraction> {
    Theta_skein_rec(d, norm)
}

/// q⁻²θ(L₊) − q²θ(L₋) − (q−q⁻¹)θ(L₀) at mixed crossing `x`.
pub fn skein_residual(d: &LinkDiagram, x: usize) -> Result<LaurentFraction> {
    let here = theta_skein(d)?;
    let other = theta_skein(&d.resolve(x, Resolution::Switch)?)?;
    let smooth = theta_skein(&d.resolve(x, Resolution::Smooth)?)?;
    let (plus, minus) = if d.crossings()[x].sign > 0 {
        (here, other)
    } else {
        (other, here)
    };
    let q = |e| LaurentFraction::var(Var::Q, e);
    let z = &q(1) - &q(-1);
    Ok(&(&(&q(-2) * &plus) - &(&q(2) * &minus)) - &(&z * &smooth))
}

/// Values and pairwise differences for two links.
#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub links: [String; 2],
    pub invariants: BTreeMap<String, [String; 2]>,
    pub differences: BTreeMap<String, String>,
    pub flags: BTreeMap<String, bool>,
    pub normalization: SplitNormalization,
    #[serde(skip)]
    pub theta_difference: LaurentFraction,
}

pub fn compare(
    names: [&str; 2],
    a: &LinkDiagram,
    b: &LinkDiagram,
) -> Result<CompareReport> {
    let (va, vb) = (jones(a)?, jones(b)?);
    let (pa, pb) = (homflypt(a)?, homflypt(b)?);
    let (ta, tb) = (theta_partition(a)?, theta_partition(b)?);
    let mut invariants = BTreeMap::new();
    let mut differences = BTreeMap::new();
    let mut flags = BTreeMap::new();
    for (name, x, y) in [("V", &va, &vb), ("P", &pa, &pb), ("theta", &ta, &tb)] {
        invariants.insert(name.to_string(), [x.to_string(), y.to_string()]);
        let diff = x - y;
        flags.insert(format!("{name}-equal"), diff.is_zero());
        differences.insert(name.to_string(), diff.to_string());
    }
    Ok(CompareReport {
        links: [names[0].to_string(), names[1].to_string()],
        invariants,
        differences,
        flags,
        normalization: SplitNormalization::Consistent,
        theta_difference: &ta - &tb,
    })
}
