//! Kauffman bracket, Jones polynomial and Homflypt polynomial.

use std::sync::OnceLock;

use dashmap::DashMap;

use crate::diagram::{LinkDiagram, Resolution};
use crate::error::{Error, Result};
use crate::exec;
use crate::poly::{LaurentFraction, LaurentPoly, Monomial, Rebase, Var};

/// Default crossing cap for the bracket state sum.
pub const BRACKET_CAP: usize = 24;

/// Crossing cap for the Homflypt skein tree.
pub const HOMFLYPT_CAP: usize = 40;

fn find(p: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while p[r as usize] != r {
        r = p[r as usize];
    }
    let mut y = x;
    while p[y as usize] != r {
        let n = p[y as usize];
        p[y as usize] = r;
        y = n;
    }
    r
}

/// ⟨L⟩ in A with ⟨unknot⟩ = 1.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_capped(d, BRACKET_CAP)
}

pub fn kauffman_bracket_capped(d: &LinkDiagram, cap: usize) -> Result<LaurentPoly> {
    let n = d.n_crossings();
    if n > cap {
        return Err(Error::TooManyCrossings { found: n, cap });
    }
    let crossing_edges: Vec<usize> = d.crossings().iter().flat_map(|c| c.edges).collect();
    let mut on_crossing = vec![false; d.n_edges()];
    for &e in &crossing_edges {
        on_crossing[e] = true;
    }
    let free_loops = on_crossing.iter().filter(|&&b| !b).count();
    let m = d.n_edges();
    // edges that belong to crossings, compacted to 0..k
    let mut compact = vec![u32::MAX; m];
    let mut k = 0u32;
    for e in 0..m {
        if on_crossing[e] {
            compact[e] = k;
            k += 1;
        }
    }
    let slots: Vec<[u32; 4]> = d
        .crossings()
        .iter()
        .map(|c| c.edges.map(|e| compact[e]))
        .collect();
    let width = k as usize + 1;
    // counts[n_a * width + loops]
    let counts = exec::fold_range(
        1u64 << n,
        || (vec![0u64; (n + 1) * width], vec![0u32; k as usize]),
        |(acc, parent), state| {
            for (i, p) in parent.iter_mut().enumerate() {
                *p = i as u32;
            }
            let mut comps = k;
            for (i, [a, b, c, dd]) in slots.iter().enumerate() {
                let pairs = if state >> i & 1 == 0 {
                    [(*a, *b), (*c, *dd)]
                } else {
                    [(*a, *dd), (*b, *c)]
                };
                for (x, y) in pairs {
                    let (rx, ry) = (find(parent, x), find(parent, y));
                    if rx != ry {
                        parent[rx.max(ry) as usize] = rx.min(ry);
                        comps -= 1;
                    }
                }
            }
            let n_a = n - state.count_ones() as usize;
            acc[n_a * width + comps as usize] += 1;
        },
        |(mut a, p), (b, _)| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            (a, p)
        },
    )
    .0;
    let delta = &(-LaurentPoly::var(Var::A, 2)) - &LaurentPoly::var(Var::A, -2);
    let mut out = LaurentPoly::zero();
    let max_loops = width - 1 + free_loops;
    let delta_pows: Vec<LaurentPoly> = (0..=max_loops as u32).map(|j| delta.pow(j)).collect();
    for n_a in 0..=n {
        for loops in 0..width {
            let c = counts[n_a * width + loops];
            if c == 0 {
                continue;
            }
            let total = loops + free_loops;
            let a_exp = n_a as i32 - (n - n_a) as i32;
            let term = delta_pows[total - 1].mul_term(
                &Monomial::var(Var::A, a_exp),
                &crate::poly::rat(c as i64),
            );
            out += &term;
        }
    }
    Ok(out)
}

/// Jones polynomial in q (t = q²), V(unknot) = 1.
pub fn jones(d: &LinkDiagram) -> Result<LaurentFraction> {
    let w = d.writhe();
    let b = kauffman_bracket(d)?;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let f = b.mul_term(
        &Monomial::var(Var::A, (-3 * w) as i32),
        &crate::poly::rat(sign),
    );
    Ok(crate::poly::rebase(&f, Rebase::AToQ)?.into())
}

/// μ = (s⁻¹ − s) z⁻¹ with z standing for q − q⁻¹.
fn mu_sz() -> LaurentPoly {
    (&LaurentPoly::var(Var::S, -1) - &LaurentPoly::var(Var::S, 1))
        .mul_monomial(&Monomial::var(Var::Z, -1))
}

fn homfly_memo() -> &'static DashMap<Vec<u8>, LaurentPoly> {
    static MEMO: OnceLock<DashMap<Vec<u8>, LaurentPoly>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// First crossing reached as an under-passage before it has been passed over, walking
/// the components in order from their first edges; `None` for a descending diagram.
pub(crate) fn first_ascending_crossing(d: &LinkDiagram) -> Option<usize> {
    let mut seen = vec![false; d.n_crossings()];
    for e in 0..d.n_edges() {
        let Some((x, slot)) = d.head(e) else { continue };
        if !seen[x] {
            if slot == 0 {
                return Some(x);
            }
            seen[x] = true;
        }
    }
    None
}

/// Homflypt polynomial in Z[s±, z±] with z = q − q⁻¹.
fn homfly_sz(d: &LinkDiagram) -> LaurentPoly {
    let d = d.simplify();
    let pieces = d.split();
    if pieces.len() > 1 {
        let vals = exec::map(&pieces, |(_, p)| homfly_sz(p));
        let mut acc = mu_sz().pow(pieces.len() as u32 - 1);
        for v in &vals {
            acc = &acc * v;
        }
        return acc;
    }
    if d.n_crossings() == 0 {
        return LaurentPoly::one();
    }
    let key = d.canonical_key();
    if let Some(v) = homfly_memo().get(&key) {
        return v.clone();
    }
    let value = match first_ascending_crossing(&d) {
        None => mu_sz().pow(d.n_components() as u32 - 1),
        Some(x) => {
            let sign = d.crossings()[x].sign;
            let sw = d.resolve(x, Resolution::Switch).expect("crossing exists");
            let sm = d.resolve(x, Resolution::Smooth).expect("crossing exists");
            let (p_sw, p_sm) = exec::join(|| homfly_sz(&sw), || homfly_sz(&sm));
            // L+ = s²L− + s z L0 ; L− = s⁻²L+ − s⁻¹ z L0
            let e = sign as i32;
            let s2 = Monomial::var(Var::S, 2 * e);
            let zs = Monomial::var(Var::Z, 1).mul(&Monomial::var(Var::S, e));
            let c0 = crate::poly::rat(e as i64);
            &p_sw.mul_monomial(&s2) + &p_sm.mul_term(&zs, &c0)
        }
    };
    homfly_memo().insert(key, value.clone());
    value
}

/// Homflypt polynomial in (s, q), normalized by P(unknot) = 1 and
/// s⁻¹P(L₊) − sP(L₋) = (q − q⁻¹)P(L₀).
pub fn homflypt(d: &LinkDiagram) -> Result<LaurentFraction> {
    if d.n_crossings() > HOMFLYPT_CAP {
        return Err(Error::TooManyCrossings {
            found: d.n_crossings(),
            cap: HOMFLYPT_CAP,
        });
    }
    let p: LaurentFraction = homfly_sz(d).into();
    Ok(p.substitute(Var::Z, &z_value())?)
}

/// q − q⁻¹ as a fraction.
pub(crate) fn z_value() -> LaurentFraction {
    LaurentFraction::from(&LaurentPoly::var(Var::Q, 1) - &LaurentPoly::var(Var::Q, -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{moves, parse_pd, BraidWord};
    use crate::poly::parse_fraction;

    fn f(s: &str) -> LaurentFraction {
        parse_fraction(s).unwrap()
    }

    fn braid(s: &str) -> LinkDiagram {
        BraidWord::parse(s, None).unwrap().closure().unwrap()
    }

    #[test]
    fn bracket_small_cases() {
        assert_eq!(kauffman_bracket(&LinkDiagram::unlink(1)).unwrap(), LaurentPoly::one());
        let kink = moves::r1_add(&LinkDiagram::unlink(1), 0, 0);
        assert_eq!(kink.writhe(), 1);
        assert_eq!(
            kauffman_bracket(&kink).unwrap(),
            -LaurentPoly::var(Var::A, 3)
        );
        let hopf = parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap();
        assert_eq!(
            kauffman_bracket(&hopf).unwrap(),
            &(-LaurentPoly::var(Var::A, 4)) - &LaurentPoly::var(Var::A, -4)
        );
    }

    #[test]
    fn jones_values() {
        let hopf = parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap();
        assert_eq!(jones(&hopf).unwrap(), f("-q^5 - q"));
        assert_eq!(jones(&braid("s1 s1 s1")).unwrap(), f("-q^8 + q^6 + q^2"));
        assert_eq!(jones(&braid("s1 S2 s1 S2")).unwrap(), f("q^4 - q^2 + 1 - q^-2 + q^-4"));
        assert_eq!(jones(&LinkDiagram::unlink(2)).unwrap(), f("-q - q^-1"));
    }

    #[test]
    fn bracket_cap() {
        let w = BraidWord::from_ints(2, &[1; 25]).unwrap().closure().unwrap();
        assert_eq!(
            kauffman_bracket(&w),
            Err(Error::TooManyCrossings { found: 25, cap: 24 })
        );
    }

    #[test]
    fn homflypt_values() {
        assert_eq!(homflypt(&LinkDiagram::unlink(1)).unwrap(), LaurentFraction::one());
        assert_eq!(
            homflypt(&LinkDiagram::unlink(2)).unwrap(),
            f("(s^-1 - s)/(q - q^-1)")
        );
        let hopf = parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap();
        assert_eq!(
            homflypt(&hopf).unwrap(),
            f("s*(q - q^-1) + (s - s^3)/(q - q^-1)")
        );
    }

    #[test]
    fn homflypt_specializes_to_jones() {
        for w in ["s1 s1 s1", "s1 S2 s1 S2", "s1 s1 s2 s2 S1", "s1 s2 s1 s2 s1 s2"] {
            let d = braid(w);
            let p = homflypt(&d).unwrap();
            let v = jones(&d).unwrap();
            assert_eq!(p.substitute(Var::S, &f("q^2")).unwrap(), v, "{w}");
        }
    }
}
