use std::collections::BTreeSet;

use super::{Crossing, DiagramError, LinkDiagram, RawDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Resolution {
    /// Exchange over and under strands.
    Switch,
    /// Oriented smoothing.
    Smooth,
}

/// Union-find whose roots are the smallest member, so merged edges keep the lowest label.
pub(crate) struct Labels {
    parent: Vec<usize>,
}

impl Labels {
    pub fn new(n: usize) -> Self {
        Labels {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let n = self.parent[y];
            self.parent[y] = r;
            y = n;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
    }
}

/// Rebuilds a diagram from kept crossings after merging labels. Any surviving edge class
/// not touched by a kept crossing becomes a crossing-free loop.
pub(crate) fn contract(
    kept: Vec<Crossing>,
    mut labels: Labels,
    surviving: impl IntoIterator<Item = usize>,
) -> LinkDiagram {
    let crossings: Vec<Crossing> = kept
        .into_iter()
        .map(|c| Crossing {
            edges: c.edges.map(|e| labels.find(e)),
            sign: c.sign,
        })
        .collect();
    let used: BTreeSet<usize> = crossings.iter().flat_map(|c| c.edges).collect();
    let loops: BTreeSet<usize> = surviving
        .into_iter()
        .map(|e| labels.find(e))
        .filter(|e| !used.contains(e))
        .collect();
    RawDiagram {
        crossings,
        loops: loops.into_iter().collect(),
    }
    .build()
    .expect("contraction of a valid diagram")
}

impl LinkDiagram {
    pub fn resolve(&self, x: usize, r: Resolution) -> Result<LinkDiagram, DiagramError> {
        let c = *self
            .crossings
            .get(x)
            .ok_or(DiagramError::UnknownCrossing(x))?;
        match r {
            Resolution::Switch => {
                let mut raw = self.to_raw();
                let [a, b, cc, d] = c.edges;
                raw.crossings[x] = if c.sign > 0 {
                    Crossing {
                        edges: [d, a, b, cc],
                        sign: -1,
                    }
                } else {
                    Crossing {
                        edges: [b, cc, d, a],
                        sign: 1,
                    }
                };
                Ok(raw.build().expect("switch keeps the diagram valid"))
            }
            Resolution::Smooth => {
                let mut labels = Labels::new(self.n_edges());
                labels.union(c.under_in(), c.over_out());
                labels.union(c.over_in(), c.under_out());
                let kept = self
                    .crossings
                    .iter()
                    .enumerate()
                    .filter(|&(y, _)| y != x)
                    .map(|(_, c)| *c)
                    .collect();
                Ok(contract(kept, labels, 0..self.n_edges()))
            }
        }
    }

    /// Diagram of the components in `subset`, in their original relative order.
    pub fn sublink(&self, subset: &[usize]) -> Result<LinkDiagram, DiagramError> {
        let keep: BTreeSet<usize> = subset.iter().copied().collect();
        if keep.is_empty() {
            return Err(DiagramError::EmptySubset);
        }
        if let Some(&k) = keep.iter().find(|&&k| k >= self.n_components()) {
            return Err(DiagramError::UnknownComponent(k));
        }
        let mut labels = Labels::new(self.n_edges());
        let mut kept = Vec::new();
        for c in &self.crossings {
            let u = keep.contains(&self.comp[c.under_in()]);
            let o = keep.contains(&self.comp[c.over_in()]);
            match (u, o) {
                (true, true) => kept.push(*c),
                (true, false) => labels.union(c.under_in(), c.under_out()),
                (false, true) => labels.union(c.over_in(), c.over_out()),
                (false, false) => {}
            }
        }
        let surviving: Vec<usize> = (0..self.n_edges())
            .filter(|&e| keep.contains(&self.comp[e]))
            .collect();
        Ok(contract(kept, labels, surviving))
    }

    /// Groups of components connected through crossings, each with its sub-diagram.
    /// Crossing-free components are pieces of their own.
    pub fn split(&self) -> Vec<(Vec<usize>, LinkDiagram)> {
        let m = self.n_components();
        let mut groups = Labels::new(m);
        for x in 0..self.n_crossings() {
            let (u, o) = self.strands_at(x);
            groups.union(u, o);
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); m];
        for k in 0..m {
            let r = groups.find(k);
            by_root[r].push(k);
        }
        by_root
            .into_iter()
            .filter(|g| !g.is_empty())
            .map(|g| {
                let d = self.sublink(&g).expect("non-empty group");
                (g, d)
            })
            .collect()
    }

    /// Removes kinks (a crossing with two adjacent slots on the same edge) until none remain.
    pub fn simplify(&self) -> LinkDiagram {
        let mut d = self.clone();
        loop {
            let kink = d
                .crossings
                .iter()
                .position(|c| (0..4).any(|k| c.edges[k] == c.edges[(k + 1) % 4]));
            let Some(x) = kink else { return d };
            let c = d.crossings[x];
            let mut labels = Labels::new(d.n_edges());
            for k in 1..4 {
                labels.union(c.edges[0], c.edges[k]);
            }
            let kept = d
                .crossings
                .iter()
                .enumerate()
                .filter(|&(y, _)| y != x)
                .map(|(_, c)| *c)
                .collect();
            d = contract(kept, labels, 0..d.n_edges());
        }
    }

    /// True when no crossing joins two different diagrammatic pieces and there is more
    /// than one piece.
    pub fn is_split_diagram(&self) -> bool {
        let m = self.n_components();
        let mut groups = Labels::new(m);
        for x in 0..self.n_crossings() {
            let (u, o) = self.strands_at(x);
            groups.union(u, o);
        }
        (0..m).any(|k| groups.find(k) != 0)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_pd, BraidWord};
    use super::*;

    fn hopf() -> LinkDiagram {
        parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap()
    }

    #[test]
    fn switch_flips_sign_and_keeps_components() {
        let h = hopf();
        let s = h.resolve(0, Resolution::Switch).unwrap();
        assert_eq!(s.writhe(), 0);
        assert_eq!(s.n_components(), 2);
        assert_eq!(s.resolve(0, Resolution::Switch).unwrap(), h);
    }

    #[test]
    fn smoothing_hopf_merges_components() {
        let s = hopf().resolve(0, Resolution::Smooth).unwrap();
        assert_eq!(s.n_components(), 1);
        assert_eq!(s.n_crossings(), 1);
        let u = s.simplify();
        assert_eq!(u.n_crossings(), 0);
        assert_eq!(u.n_components(), 1);
    }

    #[test]
    fn unknown_crossing() {
        assert_eq!(
            hopf().resolve(5, Resolution::Switch),
            Err(DiagramError::UnknownCrossing(5))
        );
    }

    #[test]
    fn sublinks_of_hopf_are_unknots() {
        let h = hopf();
        for k in 0..2 {
            let s = h.sublink(&[k]).unwrap();
            assert_eq!(s.n_components(), 1);
            assert_eq!(s.n_crossings(), 0);
        }
        assert_eq!(h.sublink(&[]), Err(DiagramError::EmptySubset));
        assert_eq!(h.sublink(&[0, 1]).unwrap(), h);
    }

    #[test]
    fn split_separates_distant_pieces() {
        let t = BraidWord::parse("s1 s1 s1", None).unwrap().closure().unwrap();
        let u = t.disjoint_union(&hopf()).disjoint_union(&LinkDiagram::unlink(1));
        let pieces = u.split();
        assert_eq!(pieces.len(), 3);
        assert_eq!(pieces[0].0, vec![0]);
        assert_eq!(pieces[1].0, vec![1, 2]);
        assert_eq!(pieces[2].1.n_loops(), 1);
        assert!(u.is_split_diagram());
        assert!(!hopf().is_split_diagram());
    }

    #[test]
    fn simplify_unwinds_a_twisted_unknot() {
        let k = BraidWord::parse("s1 s2 S3", Some(4)).unwrap().closure().unwrap();
        let s = k.simplify();
        assert_eq!(s.n_crossings(), 0);
        assert_eq!(s.n_components(), 1);
    }
}
