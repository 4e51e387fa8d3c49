//! Oriented link diagrams in PD form.
//!
//! A crossing `X(a,b,c,d)` lists its edges counterclockwise from the incoming under-edge,
//! so the under-strand runs a→c. It is positive when the over-strand runs d→b.
//! Edges are numbered `0..n_edges`, consecutively along each component; a component
//! without crossings is a single edge that is its own successor.

mod braid;
mod canon;
pub mod moves;
mod ops;
mod parse;

pub use braid::{BraidWord, Letter};
pub use ops::Resolution;
pub use parse::parse_pd;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed PD record: {0}")]
    MalformedRecord(String),
    #[error("edge {0} is not used exactly twice")]
    InconsistentEdgeCount(i64),
    #[error("orientation conflict: {0}")]
    OrientationConflict(String),
    #[error("tie letters cannot be closed into a diagram")]
    TieLettersPresent,
    #[error("empty component subset")]
    EmptySubset,
    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("bad braid word: {0}")]
    BadBraid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [usize; 4],
    pub sign: i8,
}

impl Crossing {
    /// Slot through which the over-strand enters.
    pub fn over_in_slot(&self) -> usize {
        if self.sign > 0 {
            3
        } else {
            1
        }
    }

    pub fn over_out_slot(&self) -> usize {
        if self.sign > 0 {
            1
        } else {
            3
        }
    }

    pub fn under_in(&self) -> usize {
        self.edges[0]
    }

    pub fn under_out(&self) -> usize {
        self.edges[2]
    }

    pub fn over_in(&self) -> usize {
        self.edges[self.over_in_slot()]
    }

    pub fn over_out(&self) -> usize {
        self.edges[self.over_out_slot()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    next: Vec<usize>,
    comp: Vec<usize>,
    comp_start: Vec<usize>,
    /// (crossing, slot) where each edge ends; `None` for crossing-free loops.
    head: Vec<Option<(usize, usize)>>,
    tail: Vec<Option<(usize, usize)>>,
}

/// Crossings over arbitrary edge labels, before relabeling.
pub(crate) struct RawDiagram {
    pub crossings: Vec<Crossing>,
    /// Labels of crossing-free loop components.
    pub loops: Vec<usize>,
}

impl RawDiagram {
    /// Relabels edges consecutively along components. Components are ordered by their
    /// smallest raw label and each one starts at that label.
    pub fn build(self) -> Result<LinkDiagram, DiagramError> {
        let mut head: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut tail: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            for (slot, incoming) in [
                (0, true),
                (2, false),
                (c.over_in_slot(), true),
                (c.over_out_slot(), false),
            ] {
                let map = if incoming { &mut head } else { &mut tail };
                if map.insert(c.edges[slot], (x, slot)).is_some() {
                    return Err(DiagramError::OrientationConflict(format!(
                        "edge {} enters or leaves twice",
                        c.edges[slot]
                    )));
                }
            }
        }
        if head.len() != tail.len() || head.keys().any(|e| !tail.contains_key(e)) {
            return Err(DiagramError::OrientationConflict(
                "an edge has no matching endpoint".into(),
            ));
        }
        let succ = |e: usize| -> usize {
            let (x, s) = head[&e];
            self.crossings[x].edges[(s + 2) % 4]
        };
        let mut seen: BTreeMap<usize, ()> = BTreeMap::new();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for &e in head.keys() {
            if seen.contains_key(&e) {
                continue;
            }
            let mut cyc = vec![e];
            seen.insert(e, ());
            let mut f = succ(e);
            while f != e {
                cyc.push(f);
                seen.insert(f, ());
                f = succ(f);
            }
            // keys iterate ascending, so `e` is the smallest label of this cycle
            cycles.push(cyc);
        }
        for &l in &self.loops {
            if head.contains_key(&l) {
                return Err(DiagramError::OrientationConflict(format!(
                    "loop label {l} also used by a crossing"
                )));
            }
            cycles.push(vec![l]);
        }
        cycles.sort_by_key(|c| c[0]);
        let mut new_label: BTreeMap<usize, usize> = BTreeMap::new();
        let mut next = Vec::new();
        let mut comp = Vec::new();
        let mut comp_start = Vec::new();
        for (k, cyc) in cycles.iter().enumerate() {
            let base = next.len();
            comp_start.push(base);
            for (i, &e) in cyc.iter().enumerate() {
                new_label.insert(e, base + i);
                next.push(base + (i + 1) % cyc.len());
                comp.push(k);
            }
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                edges: c.edges.map(|e| new_label[&e]),
                sign: c.sign,
            })
            .collect();
        let n = next.len();
        let mut h = vec![None; n];
        let mut t = vec![None; n];
        for (x, c) in crossings.iter().enumerate() {
            h[c.edges[0]] = Some((x, 0));
            t[c.edges[2]] = Some((x, 2));
            h[c.over_in()] = Some((x, c.over_in_slot()));
            t[c.over_out()] = Some((x, c.over_out_slot()));
        }
        Ok(LinkDiagram {
            crossings,
            next,
            comp,
            comp_start,
            head: h,
            tail: t,
        })
    }
}

impl LinkDiagram {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_edges(&self) -> usize {
        self.next.len()
    }

    pub fn n_components(&self) -> usize {
        self.comp_start.len()
    }

    pub fn next(&self, e: usize) -> usize {
        self.next[e]
    }

    pub fn component_of(&self, e: usize) -> usize {
        self.comp[e]
    }

    /// Edges of component `k` in traversal order.
    pub fn component_edges(&self, k: usize) -> std::ops::Range<usize> {
        let end = self
            .comp_start
            .get(k + 1)
            .copied()
            .unwrap_or(self.next.len());
        self.comp_start[k]..end
    }

    pub fn head(&self, e: usize) -> Option<(usize, usize)> {
        self.head[e]
    }

    pub fn tail(&self, e: usize) -> Option<(usize, usize)> {
        self.tail[e]
    }

    /// (under component, over component) at crossing `x`.
    pub fn strands_at(&self, x: usize) -> (usize, usize) {
        let c = &self.crossings[x];
        (self.comp[c.edges[0]], self.comp[c.edges[1]])
    }

    pub fn is_mixed(&self, x: usize) -> bool {
        let (u, o) = self.strands_at(x);
        u != o
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Symmetric matrix of linking numbers; the diagonal is left at zero.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.n_components();
        let mut twice = vec![vec![0i64; m]; m];
        for (x, c) in self.crossings.iter().enumerate() {
            let (u, o) = self.strands_at(x);
            if u != o {
                twice[u][o] += c.sign as i64;
                twice[o][u] += c.sign as i64;
            }
        }
        for row in twice.iter_mut() {
            for v in row.iter_mut() {
                debug_assert!(*v % 2 == 0);
                *v /= 2;
            }
        }
        twice
    }

    /// Component count, writhe and linking matrix.
    pub fn analyze(&self) -> (usize, i64, Vec<Vec<i64>>) {
        (self.n_components(), self.writhe(), self.linking_matrix())
    }

    pub(crate) fn to_raw(&self) -> RawDiagram {
        let loops = (0..self.n_components())
            .filter(|&k| self.component_edges(k).len() == 1 && self.head[self.comp_start[k]].is_none())
            .map(|k| self.comp_start[k])
            .collect();
        RawDiagram {
            crossings: self.crossings.clone(),
            loops,
        }
    }

    /// PD text with 1-based edge labels. Crossing-free components have no PD record and
    /// are dropped from the text.
    pub fn to_pd(&self) -> String {
        self.crossings
            .iter()
            .map(|c| {
                format!(
                    "X({},{},{},{})",
                    c.edges[0] + 1,
                    c.edges[1] + 1,
                    c.edges[2] + 1,
                    c.edges[3] + 1
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Number of crossing-free components.
    pub fn n_loops(&self) -> usize {
        (0..self.n_components())
            .filter(|&k| self.head[self.comp_start[k]].is_none())
            .count()
    }

    /// Disjoint union, components of `other` numbered after those of `self`.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let off = self.n_edges();
        let mut raw = self.to_raw();
        let o = other.to_raw();
        raw.crossings.extend(o.crossings.iter().map(|c| Crossing {
            edges: c.edges.map(|e| e + off),
            sign: c.sign,
        }));
        raw.loops.extend(o.loops.iter().map(|e| e + off));
        raw.build().expect("union of valid diagrams")
    }

    /// Unknot diagram with no crossings, or `n` of them side by side.
    pub fn unlink(n: usize) -> LinkDiagram {
        RawDiagram {
            crossings: vec![],
            loops: (0..n).collect(),
        }
        .build()
        .unwrap()
    }

    /// Reverses the orientation of every component in `which`.
    pub fn reverse(&self, which: &[usize]) -> LinkDiagram {
        let flip: Vec<bool> = (0..self.n_components()).map(|k| which.contains(&k)).collect();
        let mut raw = self.to_raw();
        for c in raw.crossings.iter_mut() {
            let u = flip[self.comp[c.edges[0]]];
            let o = flip[self.comp[c.edges[1]]];
            if u {
                let [a, b, cc, d] = c.edges;
                c.edges = [cc, d, a, b];
            }
            if u != o {
                c.sign = -c.sign;
            }
        }
        raw.build().expect("reversal of a valid diagram")
    }

    /// Planar reflection: the mirror image.
    pub fn mirror(&self) -> LinkDiagram {
        let mut raw = self.to_raw();
        for c in raw.crossings.iter_mut() {
            let [a, b, cc, d] = c.edges;
            c.edges = [a, d, cc, b];
            c.sign = -c.sign;
        }
        raw.build().expect("mirror of a valid diagram")
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd())?;
        let loops = self.n_loops();
        if loops > 0 {
            write!(f, " (+{loops} unknotted circle(s))")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_analysis() {
        let l = parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap();
        let (m, w, lk) = l.analyze();
        assert_eq!(m, 2);
        assert_eq!(w, 2);
        assert_eq!(lk[0][1], 1);
        assert_eq!(lk[1][0], 1);
    }

    #[test]
    fn reversing_one_hopf_component() {
        let l = parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap();
        let r = l.reverse(&[1]);
        assert_eq!(r.linking_matrix()[0][1], -1);
        assert_eq!(r.reverse(&[1]).linking_matrix()[0][1], 1);
        assert_eq!(l.reverse(&[0, 1]).writhe(), 2);
    }

    #[test]
    fn mirror_flips_signs() {
        let l = parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap();
        assert_eq!(l.mirror().writhe(), -2);
    }

    #[test]
    fn unlink_components() {
        let u = LinkDiagram::unlink(3);
        assert_eq!(u.n_components(), 3);
        assert_eq!(u.n_loops(), 3);
        assert_eq!(u.n_crossings(), 0);
    }
}
