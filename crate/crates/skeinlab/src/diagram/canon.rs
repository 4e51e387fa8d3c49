use super::LinkDiagram;

/// Relabeling-invariant code of one connected piece, started from `start`.
fn piece_code(d: &LinkDiagram, start: usize) -> Vec<u32> {
    let n = d.n_edges();
    let mut label = vec![u32::MAX; n];
    let mut order: Vec<usize> = Vec::new();
    let mut lengths: Vec<u32> = Vec::new();
    let mut visit = |from: usize, label: &mut Vec<u32>, order: &mut Vec<usize>| {
        let mut e = from;
        let mut len = 0;
        loop {
            label[e] = order.len() as u32;
            order.push(e);
            len += 1;
            e = d.next(e);
            if e == from {
                break;
            }
        }
        lengths.push(len);
    };
    visit(start, &mut label, &mut order);
    let mut i = 0;
    while i < order.len() {
        let e = order[i];
        i += 1;
        let Some((x, slot)) = d.head(e) else { continue };
        let c = &d.crossings()[x];
        let other_in = if slot == 0 { c.over_in() } else { c.under_in() };
        if label[other_in] == u32::MAX {
            visit(other_in, &mut label, &mut order);
        }
    }
    let mut tuples: Vec<[u32; 5]> = d
        .crossings()
        .iter()
        .filter(|c| label[c.edges[0]] != u32::MAX)
        .map(|c| {
            let e = c.edges.map(|e| label[e]);
            [e[0], e[1], e[2], e[3], (c.sign > 0) as u32]
        })
        .collect();
    tuples.sort_unstable();
    let mut code = vec![lengths.len() as u32];
    code.extend(&lengths);
    code.push(tuples.len() as u32);
    code.extend(tuples.iter().flatten());
    code
}

impl LinkDiagram {
    /// Byte key equal for diagrams that differ only by edge labels and component order.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut codes: Vec<Vec<u32>> = self
            .split()
            .into_iter()
            .map(|(_, p)| {
                (0..p.n_edges())
                    .map(|s| piece_code(&p, s))
                    .min()
                    .expect("a piece has at least one edge")
            })
            .collect();
        codes.sort_unstable();
        let mut out = Vec::new();
        out.extend((codes.len() as u32).to_le_bytes());
        for c in codes {
            for w in c {
                out.extend(w.to_le_bytes());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_pd, BraidWord, LinkDiagram};

    #[test]
    fn relabeled_diagrams_share_a_key() {
        let a = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        // same trefoil, labels rotated by two
        let b = parse_pd("X(3,1,4,6) X(5,3,6,2) X(1,5,2,4)").unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        let c = BraidWord::parse("s1 s1 s1", None).unwrap().closure().unwrap();
        assert_eq!(a.canonical_key(), c.canonical_key());
    }

    #[test]
    fn mirror_changes_key() {
        let a = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        assert_ne!(a.canonical_key(), a.mirror().canonical_key());
    }

    #[test]
    fn component_order_is_ignored() {
        let t = BraidWord::parse("s1 s1 s1", None).unwrap().closure().unwrap();
        let u = LinkDiagram::unlink(1);
        assert_eq!(
            t.disjoint_union(&u).canonical_key(),
            u.disjoint_union(&t).canonical_key()
        );
    }
}
