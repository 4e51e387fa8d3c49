use std::fmt;

use super::{Crossing, DiagramError, LinkDiagram, RawDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// σ_i^{±1}, 1-based index.
    Sigma(usize, i8),
    /// Tie η_i between strands i and i+1.
    Tie(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::BadBraid("need at least one strand".into()));
        }
        for l in &letters {
            let i = match *l {
                Letter::Sigma(i, e) => {
                    if e != 1 && e != -1 {
                        return Err(DiagramError::BadBraid(format!("exponent {e}")));
                    }
                    i
                }
                Letter::Tie(i) => i,
            };
            if i == 0 || i >= strands {
                return Err(DiagramError::BadBraid(format!(
                    "generator {i} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Classical word from signed generator indices, e.g. `[1, 1, -2]`.
    pub fn from_ints(strands: usize, gens: &[i32]) -> Result<Self, DiagramError> {
        let letters = gens
            .iter()
            .map(|&g| {
                if g == 0 {
                    Err(DiagramError::BadBraid("generator 0".into()))
                } else {
                    Ok(Letter::Sigma(g.unsigned_abs() as usize, g.signum() as i8))
                }
            })
            .collect::<Result<_, _>>()?;
        BraidWord::new(strands, letters)
    }

    /// Parses tokens `s1`, `s1^-1`, `S1` (inverse), `e1`/`t1` (tie) or signed integers.
    /// The strand count defaults to one more than the largest index.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self, DiagramError> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let bad = || DiagramError::BadBraid(format!("token {tok:?}"));
            let letter = if let Ok(g) = tok.parse::<i32>() {
                if g == 0 {
                    return Err(bad());
                }
                Letter::Sigma(g.unsigned_abs() as usize, g.signum() as i8)
            } else {
                let (head, rest) = tok.split_at(1);
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<i8>().map_err(|_| bad())?),
                    None => (rest, 1),
                };
                let i: usize = idx.parse().map_err(|_| bad())?;
                match head {
                    "s" | "σ" => Letter::Sigma(i, exp),
                    "S" => Letter::Sigma(i, -exp),
                    "e" | "t" | "η" if exp == 1 => Letter::Tie(i),
                    _ => return Err(bad()),
                }
            };
            letters.push(letter);
        }
        let max = letters
            .iter()
            .map(|l| match *l {
                Letter::Sigma(i, _) | Letter::Tie(i) => i,
            })
            .max()
            .unwrap_or(0);
        BraidWord::new(strands.unwrap_or(max + 1), letters)
    }

    pub fn has_ties(&self) -> bool {
        self.letters.iter().any(|l| matches!(l, Letter::Tie(_)))
    }

    /// Algebraic exponent sum over braiding letters.
    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match *l {
                Letter::Sigma(_, e) => e as i64,
                Letter::Tie(_) => 0,
            })
            .sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| match *l {
                    Letter::Sigma(i, e) => Letter::Sigma(i, -e),
                    t => t,
                })
                .collect(),
        }
    }

    pub fn concat(&self, o: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend(o.letters.iter().copied());
        BraidWord {
            strands: self.strands.max(o.strands),
            letters,
        }
    }

    /// Closure as an oriented diagram; strands run upward and σ_i is a positive crossing.
    pub fn closure(&self) -> Result<LinkDiagram, DiagramError> {
        if self.has_ties() {
            return Err(DiagramError::TieLettersPresent);
        }
        let n = self.strands;
        let mut pos: Vec<usize> = (0..n).collect();
        let mut fresh = n;
        let mut crossings = Vec::new();
        for l in &self.letters {
            let Letter::Sigma(i, e) = *l else { unreachable!() };
            let (left, right) = (pos[i - 1], pos[i]);
            let (tl, tr) = (fresh, fresh + 1);
            fresh += 2;
            // left strand goes to top-right, right strand to top-left
            let edges = if e > 0 {
                // over strand bottom-left → top-right
                [right, tr, tl, left]
            } else {
                [left, right, tr, tl]
            };
            crossings.push(Crossing { edges, sign: e });
            pos[i - 1] = tl;
            pos[i] = tr;
        }
        // close: the top edge at each position is the bottom edge there
        let mut parent: Vec<usize> = (0..fresh).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        for (k, &top) in pos.iter().enumerate() {
            let a = find(&mut parent, top);
            let b = find(&mut parent, k);
            let (lo, hi) = (a.min(b), a.max(b));
            parent[hi] = lo;
        }
        let crossings: Vec<Crossing> = crossings
            .into_iter()
            .map(|c| Crossing {
                edges: c.edges.map(|e| find(&mut parent, e)),
                sign: c.sign,
            })
            .collect();
        let used: std::collections::BTreeSet<usize> =
            crossings.iter().flat_map(|c| c.edges).collect();
        let loops = (0..n)
            .map(|k| find(&mut parent, k))
            .filter(|r| !used.contains(r))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        RawDiagram { crossings, loops }.build()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| match *l {
                Letter::Sigma(i, 1) => format!("s{i}"),
                Letter::Sigma(i, _) => format!("S{i}"),
                Letter::Tie(i) => format!("e{i}"),
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_closure() {
        let l = BraidWord::parse("s1 s1", None).unwrap().closure().unwrap();
        assert_eq!(l.n_components(), 2);
        assert_eq!(l.linking_matrix()[0][1], 1);
    }

    #[test]
    fn trefoil_closure() {
        let l = BraidWord::parse("s1 s1 s1", None).unwrap().closure().unwrap();
        assert_eq!(l.n_components(), 1);
        assert_eq!(l.writhe(), 3);
    }

    #[test]
    fn empty_word_is_unlink() {
        let l = BraidWord::new(2, vec![]).unwrap().closure().unwrap();
        assert_eq!(l.n_components(), 2);
        assert_eq!(l.n_crossings(), 0);
    }

    #[test]
    fn ties_refuse_closure() {
        let w = BraidWord::parse("s1 e1", None).unwrap();
        assert_eq!(w.closure(), Err(DiagramError::TieLettersPresent));
    }

    #[test]
    fn token_forms() {
        let a = BraidWord::parse("s1 s2^-1 S1 e2", Some(3)).unwrap();
        assert_eq!(
            a.letters,
            vec![
                Letter::Sigma(1, 1),
                Letter::Sigma(2, -1),
                Letter::Sigma(1, -1),
                Letter::Tie(2)
            ]
        );
        let b = BraidWord::parse("1 -2", None).unwrap();
        assert_eq!(b.strands, 3);
    }

    #[test]
    fn negative_crossing_sign() {
        let l = BraidWord::parse("S1 S1 S1", None).unwrap().closure().unwrap();
        assert_eq!(l.writhe(), -3);
    }
}
