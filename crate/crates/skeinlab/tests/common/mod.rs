//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use skeinlab::data::LinkTable;
use skeinlab::diagram::{moves, parse_pd, BraidWord, LinkDiagram};

/// Every bundled table entry that parses, by label.
pub fn corpus() -> Vec<(String, LinkDiagram)> {
    LinkTable::bundled()
        .entries
        .iter()
        .filter_map(|e| e.diagram().ok().map(|d| (e.label(), d)))
        .collect()
}

/// A classical braid word with `len` letters on `strands` strands.
pub fn random_braid<R: Rng>(rng: &mut R, strands: usize, len: usize) -> BraidWord {
    let gens: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::from_ints(strands, &gens).expect("generators in range")
}

/// Applies `count` successful random Reidemeister moves, rejecting any that would push
/// the crossing number above `max_crossings`.
pub fn scramble<R: Rng>(
    d: &LinkDiagram,
    rng: &mut R,
    count: usize,
    max_crossings: usize,
) -> LinkDiagram {
    let mut cur = d.clone();
    let mut done = 0;
    let mut tries = 0;
    while done < count {
        tries += 1;
        assert!(tries < 200 * count.max(1), "random moves keep failing");
        let mut pick = |n: usize| if n == 0 { 0 } else { rng.gen_range(0..n) };
        if let Some(next) = moves::random_move(&cur, &mut pick) {
            if next.n_crossings() <= max_crossings {
                cur = next;
                done += 1;
            }
        }
    }
    cur
}

/// Renumbers the edges of a diagram without crossing-free components: components are
/// permuted and labels are rotated within each one, keeping successors in order.
pub fn relabel<R: Rng>(d: &LinkDiagram, rng: &mut R) -> Option<LinkDiagram> {
    if d.n_loops() > 0 || d.n_crossings() == 0 {
        return None;
    }
    let m = d.n_components();
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut label = vec![0usize; d.n_edges()];
    let mut next = 1;
    for &k in &order {
        let edges = d.component_edges(k);
        let len = edges.len();
        // a component that is never under takes its orientation from the numbering, so
        // its labels keep their order
        let under = edges.clone().any(|e| d.head(e).is_some_and(|(_, s)| s == 0));
        if !under && len < 3 {
            // two labels that succeed each other carry no direction
            return None;
        }
        let shift = if under { rng.gen_range(0..len) } else { 0 };
        for (i, e) in edges.enumerate() {
            label[e] = next + (i + shift) % len;
        }
        next += len;
    }
    let mut xs: Vec<String> = d
        .crossings()
        .iter()
        .map(|c| {
            let [a, b, cc, dd] = c.edges.map(|e| label[e]);
            format!("X({a},{b},{cc},{dd})")
        })
        .collect();
    xs.shuffle(rng);
    Some(parse_pd(&xs.join(" ")).expect("relabeled PD parses"))
}
