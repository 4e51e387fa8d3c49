use std::collections::BTreeMap;

use super::{Crossing, DiagramError, LinkDiagram, RawDiagram};

fn parse_records(text: &str) -> Result<Vec<[i64; 4]>, DiagramError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(DiagramError::MalformedRecord("empty PD text".into()));
    }
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('X')
            .and_then(|r| r.trim_start().strip_prefix(['(', '[']))
            .ok_or_else(|| DiagramError::MalformedRecord(format!("expected X(...) at {rest:?}")))?;
        let close = body
            .find([')', ']'])
            .ok_or_else(|| DiagramError::MalformedRecord("unterminated record".into()))?;
        let nums: Vec<i64> = body[..close]
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| DiagramError::MalformedRecord(format!("{e} in {:?}", &body[..close])))?;
        let rec: [i64; 4] = nums
            .try_into()
            .map_err(|_| DiagramError::MalformedRecord("a record needs four edges".into()))?;
        out.push(rec);
        rest = body[close + 1..].trim_start_matches([' ', '\t', '\n', '\r', ',']);
    }
    Ok(out)
}

/// Parses whitespace-separated `X(a,b,c,d)` records. Each component is oriented by its
/// under-passages (a→c); a component that never passes under follows its edge numbering.
/// A two-edge component that is never under has no direction in its labels; it is then
/// walked from the first record that mentions its smaller label.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let recs = parse_records(text)?;
    let mut occ: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, r) in recs.iter().enumerate() {
        for (s, &e) in r.iter().enumerate() {
            occ.entry(e).or_default().push((x, s));
        }
    }
    if let Some((&e, _)) = occ.iter().find(|(_, v)| v.len() != 2) {
        return Err(DiagramError::InconsistentEdgeCount(e));
    }
    let other_end = |e: i64, at: (usize, usize)| -> (usize, usize) {
        let v = &occ[&e];
        if v[0] == at {
            v[1]
        } else {
            v[0]
        }
    };

    // walk each strand; a passage enters a crossing at some slot and leaves at slot+2
    let mut head_of: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    let mut done: BTreeMap<i64, ()> = BTreeMap::new();
    for &start in occ.keys() {
        if done.contains_key(&start) {
            continue;
        }
        // (edge, crossing and slot through which it is entered) in walk order
        let mut walk: Vec<(i64, (usize, usize))> = Vec::new();
        let mut e = start;
        let mut at = occ[&start][0];
        loop {
            walk.push((e, at));
            done.insert(e, ());
            let (x, s) = at;
            let out_slot = (s + 2) % 4;
            let f = recs[x][out_slot];
            let enter = other_end(f, (x, out_slot));
            if f == start && enter == walk[0].1 {
                break;
            }
            if walk.len() > 4 * recs.len() + 4 {
                return Err(DiagramError::OrientationConflict("strand does not close".into()));
            }
            e = f;
            at = enter;
        }
        let forward_votes = walk.iter().filter(|(_, (_, s))| *s == 0).count();
        let backward_votes = walk.iter().filter(|(_, (_, s))| *s == 2).count();
        let forward = match (forward_votes, backward_votes) {
            (0, 0) => numbering_direction(&walk),
            (_, 0) => true,
            (0, _) => false,
            _ => {
                return Err(DiagramError::OrientationConflict(format!(
                    "under-strand directions disagree on the component of edge {start}"
                )))
            }
        };
        if forward {
            for &(e, at) in &walk {
                head_of.insert(e, at);
            }
        } else {
            // reversed walk: each edge now ends where it used to start
            for &(e, at) in &walk {
                head_of.insert(e, other_end(e, at));
            }
        }
    }
    let mut crossings = Vec::with_capacity(recs.len());
    for (x, r) in recs.iter().enumerate() {
        let over_in_at_3 = head_of[&r[3]] == (x, 3);
        let over_in_at_1 = head_of[&r[1]] == (x, 1);
        let sign = match (over_in_at_3, over_in_at_1) {
            (true, false) => 1,
            (false, true) => -1,
            _ => {
                return Err(DiagramError::OrientationConflict(format!(
                    "over-strand at crossing {} has no consistent direction",
                    x + 1
                )))
            }
        };
        if head_of[&r[0]] != (x, 0) {
            return Err(DiagramError::OrientationConflict(format!(
                "edge {} is not incoming at crossing {}",
                r[0],
                x + 1
            )));
        }
        crossings.push(Crossing {
            edges: r.map(|e| e as usize),
            sign,
        });
    }
    if occ.keys().any(|&e| e < 0) {
        return Err(DiagramError::MalformedRecord("negative edge label".into()));
    }
    RawDiagram {
        crossings,
        loops: vec![],
    }
    .build()
}

/// Direction for a component with only over-passages: the walk is kept when successive
/// labels mostly increase by one (with wraparound).
fn numbering_direction(walk: &[(i64, (usize, usize))]) -> bool {
    let labels: Vec<i64> = walk.iter().map(|(e, _)| *e).collect();
    let lo = *labels.iter().min().unwrap();
    let hi = *labels.iter().max().unwrap();
    let n = labels.len();
    let mut score = 0i64;
    for i in 0..n {
        let (a, b) = (labels[i], labels[(i + 1) % n]);
        if b == a + 1 || (a == hi && b == lo) {
            score += 1;
        }
        if a == b + 1 || (b == hi && a == lo) {
            score -= 1;
        }
    }
    score >= 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_malformed() {
        assert!(matches!(parse_pd(""), Err(DiagramError::MalformedRecord(_))));
        assert!(matches!(parse_pd("X(1,2,3)"), Err(DiagramError::MalformedRecord(_))));
    }

    #[test]
    fn edge_used_three_times() {
        assert!(matches!(
            parse_pd("X(7,7,7,1) X(1,2,2,3)"),
            Err(DiagramError::InconsistentEdgeCount(_))
        ));
        assert!(matches!(
            parse_pd("X(1,7,2,7) X(2,7,1,3)"),
            Err(DiagramError::InconsistentEdgeCount(_))
        ));
    }

    #[test]
    fn trefoil_signs() {
        // KnotInfo 3_1, right-handed
        let k = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        assert_eq!(k.n_components(), 1);
        assert_eq!(k.writhe(), 3);
    }

    #[test]
    fn hopf_two_edge_components() {
        // two-edge components are where successor-based sign tests go wrong
        let l = parse_pd("X(4,2,3,1) X(2,4,1,3)").unwrap();
        assert_eq!(l.n_components(), 2);
        assert_eq!(l.linking_matrix()[0][1], 1);
    }

    #[test]
    fn square_brackets_and_commas() {
        let a = parse_pd("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]").unwrap();
        let b = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        assert_eq!(a, b);
    }
}
