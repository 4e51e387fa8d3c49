//! Reidemeister moves on PD diagrams, used to test invariance.
//!
//! Faces are walked through darts: `(x, i)` leaves crossing `x` through slot `i`. After
//! arriving at `(y, j)` the walk continues with `(y, (j + 3) % 4)`, which keeps the face
//! on the left.

use std::collections::BTreeSet;

use super::ops::{contract, Labels};
use super::{Crossing, LinkDiagram, RawDiagram};

pub type Dart = (usize, usize);

fn edge_of(d: &LinkDiagram, (x, i): Dart) -> usize {
    d.crossings()[x].edges[i]
}

/// The other end of the edge leaving through `dart`.
fn far_end(d: &LinkDiagram, dart: Dart) -> Dart {
    let e = edge_of(d, dart);
    let h = d.head(e).expect("edge at a crossing");
    if h == dart {
        d.tail(e).expect("edge at a crossing")
    } else {
        h
    }
}

/// Edge leaving through `dart` runs in its own direction.
fn aligned(d: &LinkDiagram, dart: Dart) -> bool {
    d.tail(edge_of(d, dart)) == Some(dart)
}

/// All faces of the diagram, as dart cycles. Crossing-free loops are ignored.
pub fn faces(d: &LinkDiagram) -> Vec<Vec<Dart>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..d.n_crossings() {
        for i in 0..4 {
            if seen.contains(&(x, i)) {
                continue;
            }
            let mut face = Vec::new();
            let mut dart = (x, i);
            while seen.insert(dart) {
                face.push(dart);
                let (y, j) = far_end(d, dart);
                dart = (y, (j + 3) % 4);
            }
            out.push(face);
        }
    }
    out
}

fn fresh_raw(d: &LinkDiagram) -> (RawDiagram, usize) {
    (d.to_raw(), d.n_edges())
}

/// Adds a kink on edge `e`. `variant` (0..4) picks the side of the edge and the sign.
pub fn r1_add(d: &LinkDiagram, e: usize, variant: usize) -> LinkDiagram {
    let (mut raw, n) = fresh_raw(d);
    let (e2, l) = (n, n + 1);
    let e1 = e;
    if let Some((x, s)) = d.head(e) {
        raw.crossings[x].edges[s] = e2;
    } else {
        raw.loops.retain(|&k| k != e);
    }
    let (edges, sign) = match variant % 4 {
        0 => ([e1, e2, l, l], 1),
        1 => ([e1, l, l, e2], -1),
        2 => ([l, l, e2, e1], 1),
        _ => ([l, e1, e2, l], -1),
    };
    let edges = if d.head(e).is_none() {
        // a crossing-free loop closes on itself
        edges.map(|k| if k == e2 { e1 } else { k })
    } else {
        edges
    };
    raw.crossings.push(Crossing { edges, sign });
    raw.build().expect("kink on a valid diagram")
}

/// Removes one kink at crossing `x`, if it is one.
pub fn r1_remove(d: &LinkDiagram, x: usize) -> Option<LinkDiagram> {
    let c = d.crossings()[x];
    if !(0..4).any(|k| c.edges[k] == c.edges[(k + 1) % 4]) {
        return None;
    }
    let mut labels = Labels::new(d.n_edges());
    for k in 1..4 {
        labels.union(c.edges[0], c.edges[k]);
    }
    let kept = d
        .crossings()
        .iter()
        .enumerate()
        .filter(|&(y, _)| y != x)
        .map(|(_, c)| *c)
        .collect();
    Some(contract(kept, labels, 0..d.n_edges()))
}

/// Pushes the edge of dart `top` across the edge of dart `bottom`, both on the same face,
/// creating a bigon. `top_over` chooses which strand lies on top.
pub fn r2_add(d: &LinkDiagram, bottom: Dart, top: Dart, top_over: bool) -> Option<LinkDiagram> {
    let f = edge_of(d, bottom);
    let e = edge_of(d, top);
    if f == e {
        return None;
    }
    // local strip: f runs along the bottom, traversed left to right; e along the top,
    // traversed right to left. df/de are +1 when the edge points east.
    let df: i32 = if aligned(d, bottom) { 1 } else { -1 };
    let de: i32 = if aligned(d, top) { -1 } else { 1 };
    let (mut raw, n) = fresh_raw(d);
    let (f_mid, f_head) = (n, n + 1);
    let (e_mid, e_head) = (n + 2, n + 3);
    let (fh, fs) = d.head(f)?;
    let (eh, es) = d.head(e)?;
    raw.crossings[fh].edges[fs] = f_head;
    raw.crossings[eh].edges[es] = e_head;
    let (f_l, f_r) = if df > 0 { (f, f_head) } else { (f_head, f) };
    let (e_l, e_r) = if de > 0 { (e, e_head) } else { (e_head, e) };
    const DIRS: [(i32, i32); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    let compass = |v: (i32, i32)| DIRS.iter().position(|&w| w == v).unwrap();
    let cross = |arms: [usize; 4], fdir: (i32, i32), edir: (i32, i32)| {
        let (o, u) = if top_over { (edir, fdir) } else { (fdir, edir) };
        let from = compass((-u.0, -u.1));
        let edges = [0, 1, 2, 3].map(|k| arms[(from + k) % 4]);
        let sign = if o.0 * u.1 - o.1 * u.0 > 0 { 1 } else { -1 };
        Crossing { edges, sign }
    };
    // arms listed E, N, W, S
    raw.crossings.push(cross([f_mid, e_l, f_l, e_mid], (df, 0), (0, -de)));
    raw.crossings.push(cross([f_r, e_r, f_mid, e_mid], (df, 0), (0, de)));
    Some(raw.build().expect("bigon on a valid diagram"))
}

/// Removes a bigon face whose one strand passes over at both corners.
pub fn r2_remove(d: &LinkDiagram, face: &[Dart]) -> Option<LinkDiagram> {
    let [(x, i), (y, j)] = face else { return None };
    let (x, y) = (*x, *y);
    if x == y {
        return None;
    }
    let m1 = edge_of(d, (x, *i));
    let m2 = edge_of(d, (y, *j));
    let (_, j1) = far_end(d, (x, *i));
    if *i % 2 != j1 % 2 {
        return None;
    }
    let cx = d.crossings()[x];
    let cy = d.crossings()[y];
    let (_, i2) = far_end(d, (y, *j));
    let mut labels = Labels::new(d.n_edges());
    labels.union(cx.edges[(i + 2) % 4], m1);
    labels.union(m1, cy.edges[(j1 + 2) % 4]);
    labels.union(cy.edges[(j + 2) % 4], m2);
    labels.union(m2, cx.edges[(i2 + 2) % 4]);
    let kept = d
        .crossings()
        .iter()
        .enumerate()
        .filter(|&(z, _)| z != x && z != y)
        .map(|(_, c)| *c)
        .collect();
    Some(contract(kept, labels, 0..d.n_edges()))
}

/// Third move across a triangular face. Valid when some strand is over at both of its
/// corners; every other shape returns `None`.
pub fn r3(d: &LinkDiagram, face: &[Dart]) -> Option<LinkDiagram> {
    if face.len() != 3 {
        return None;
    }
    // each side of the triangle is a strand segment between two corners
    let sides: Vec<(usize, Dart, Dart)> = face
        .iter()
        .map(|&dart| (edge_of(d, dart), dart, far_end(d, dart)))
        .collect();
    let corners: BTreeSet<usize> = face.iter().map(|&(x, _)| x).collect();
    if corners.len() != 3 {
        return None;
    }
    let over_both = sides
        .iter()
        .any(|&(_, (_, sa), (_, sb))| sa % 2 == 1 && sb % 2 == 1);
    if !over_both {
        return None;
    }
    // each rewrite reads the old tuples, so arms shared between lines outside the
    // triangle are still moved exactly once per occurrence
    let mut raw = d.to_raw();
    for &(m, (xa, sa), (xb, sb)) in &sides {
        let outer_a = d.crossings()[xa].edges[(sa + 2) % 4];
        let outer_b = d.crossings()[xb].edges[(sb + 2) % 4];
        raw.crossings[xa].edges[sa] = outer_b;
        raw.crossings[xa].edges[(sa + 2) % 4] = m;
        raw.crossings[xb].edges[sb] = outer_a;
        raw.crossings[xb].edges[(sb + 2) % 4] = m;
    }
    Some(raw.build().expect("third move on a valid diagram"))
}

/// One random move from a small menu, or `None` when the chosen move does not apply.
pub fn random_move(d: &LinkDiagram, pick: &mut impl FnMut(usize) -> usize) -> Option<LinkDiagram> {
    match pick(5) {
        0 => {
            let e = pick(d.n_edges());
            Some(r1_add(d, e, pick(4)))
        }
        1 if d.n_crossings() > 0 => r1_remove(d, pick(d.n_crossings())),
        2 if d.n_crossings() > 0 => {
            let fs = faces(d);
            let face = &fs[pick(fs.len())];
            let a = face[pick(face.len())];
            let b = face[pick(face.len())];
            r2_add(d, a, b, pick(2) == 0)
        }
        3 if d.n_crossings() > 0 => {
            let fs: Vec<_> = faces(d).into_iter().filter(|f| f.len() == 2).collect();
            if fs.is_empty() {
                return None;
            }
            r2_remove(d, &fs[pick(fs.len())])
        }
        4 if d.n_crossings() > 0 => {
            let fs: Vec<_> = faces(d).into_iter().filter(|f| f.len() == 3).collect();
            let ok: Vec<LinkDiagram> = fs.iter().filter_map(|f| r3(d, f)).collect();
            if ok.is_empty() {
                return None;
            }
            Some(ok[pick(ok.len())].clone())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_pd, BraidWord};
    use super::*;

    fn trefoil() -> LinkDiagram {
        parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap()
    }

    #[test]
    fn euler_characteristic_of_faces() {
        // a connected diagram on the sphere has n + 2 faces
        let t = trefoil();
        assert_eq!(faces(&t).len(), 5);
        let b = BraidWord::parse("s1 S2 s1 S2", None).unwrap().closure().unwrap();
        assert_eq!(faces(&b).len(), 6);
    }

    #[test]
    fn kinks_change_writhe_by_their_sign() {
        let t = trefoil();
        for v in 0..4 {
            let k = r1_add(&t, 2, v);
            assert_eq!(k.n_crossings(), 4);
            assert_eq!(k.writhe(), 3 + if v % 2 == 0 { 1 } else { -1 });
            assert_eq!(faces(&k).len(), 6);
            assert_eq!(k.simplify().canonical_key(), t.canonical_key());
        }
    }

    #[test]
    fn kink_on_a_loop() {
        let u = LinkDiagram::unlink(1);
        let k = r1_add(&u, 0, 1);
        assert_eq!(k.n_crossings(), 1);
        assert_eq!(k.n_components(), 1);
        assert_eq!(k.simplify().n_crossings(), 0);
    }

    #[test]
    fn bigons_keep_writhe_and_remove_cleanly() {
        let t = trefoil();
        let mut added = 0;
        for face in faces(&t) {
            for &a in &face {
                for &b in &face {
                    for over in [true, false] {
                        let Some(r) = r2_add(&t, a, b, over) else { continue };
                        added += 1;
                        assert_eq!(r.writhe(), 3);
                        assert_eq!(r.n_crossings(), 5);
                        assert_eq!(faces(&r).len(), 7);
                        let bigons: Vec<_> = faces(&r).into_iter().filter(|f| f.len() == 2).collect();
                        let back = bigons.iter().filter_map(|f| r2_remove(&r, f));
                        assert!(back.map(|b| b.canonical_key()).any(|k| k == t.canonical_key()));
                    }
                }
            }
        }
        assert!(added > 0);
    }

    #[test]
    fn third_move_is_an_involution_up_to_labels() {
        let b = BraidWord::parse("s1 s2 s1", None).unwrap().closure().unwrap();
        let tri: Vec<_> = faces(&b).into_iter().filter(|f| f.len() == 3).collect();
        let mut applied = 0;
        for f in &tri {
            if let Some(m) = r3(&b, f) {
                applied += 1;
                assert_eq!(m.writhe(), 3);
                let c = BraidWord::parse("s2 s1 s2", None).unwrap().closure().unwrap();
                let back = faces(&m)
                    .into_iter()
                    .filter(|f| f.len() == 3)
                    .filter_map(|f| r3(&m, &f))
                    .any(|x| x.canonical_key() == b.canonical_key());
                assert!(back || m.canonical_key() == c.canonical_key());
            }
        }
        assert!(applied > 0);
    }
}
