use proptest::prelude::*;

use skeinlab::bt_algebra::{
    enumerate_basis, from_tied_braid, multiply, restrict, theta_trace, trace_rho, BTElement,
};
use skeinlab::diagram::{BraidWord, Letter};
use skeinlab::poly::{parse_fraction, LaurentFraction, Var};
use skeinlab::theta::theta_partition;

fn word(n: usize, letters: Vec<Letter>) -> BraidWord {
    BraidWord::new(n, letters).unwrap()
}

fn b(i: usize, n: usize) -> BTElement {
    BTElement::b(i, n).unwrap()
}

fn e(i: usize, n: usize) -> BTElement {
    BTElement::eps(i, n).unwrap()
}

fn mul(xs: &[&BTElement]) -> BTElement {
    let mut acc = BTElement::one(xs[0].n());
    for x in xs {
        acc = multiply(&acc, x).unwrap();
    }
    acc
}

#[test]
fn defining_relations() {
    let qq = parse_fraction("q - q^-1").unwrap();
    for n in 2..=5 {
        for i in 1..n {
            let (bi, ei) = (b(i, n), e(i, n));
            assert_eq!(mul(&[&ei, &ei]), ei);
            assert_eq!(mul(&[&ei, &bi]), mul(&[&bi, &ei]));
            let quad = BTElement::one(n).add(&mul(&[&ei, &bi]).scale(&qq)).unwrap();
            assert_eq!(mul(&[&bi, &bi]), quad);
            for j in 1..n {
                let (bj, ej) = (b(j, n), e(j, n));
                match i.abs_diff(j) {
                    1 => {
                        assert_eq!(mul(&[&bi, &bj, &bi]), mul(&[&bj, &bi, &bj]));
                        let x = mul(&[&ei, &ej, &bi]);
                        assert_eq!(x, mul(&[&bi, &ei, &ej]));
                        assert_eq!(x, mul(&[&ej, &bi, &ej]));
                        assert_eq!(mul(&[&ei, &bj, &bi]), mul(&[&bj, &bi, &ej]));
                    }
                    d if d > 1 => {
                        assert_eq!(mul(&[&bi, &bj]), mul(&[&bj, &bi]));
                        assert_eq!(mul(&[&ei, &ej]), mul(&[&ej, &ei]));
                        assert_eq!(mul(&[&ei, &bj]), mul(&[&bj, &ei]));
                    }
                    _ => {}
                }
            }
        }
    }
}

#[test]
fn inverse_generators() {
    for n in 2..=4 {
        for i in 1..n {
            let inv = BTElement::b_inv(i, n).unwrap();
            assert_eq!(mul(&[&b(i, n), &inv]), BTElement::one(n));
            assert_eq!(mul(&[&inv, &b(i, n)]), BTElement::one(n));
        }
    }
}

fn letter(n: usize) -> impl Strategy<Value = Letter> {
    (1..n, 0..3u8).prop_map(|(i, k)| match k {
        0 => Letter::Sigma(i, 1),
        1 => Letter::Sigma(i, -1),
        _ => Letter::Tie(i),
    })
}

fn classical_letter(n: usize) -> impl Strategy<Value = Letter> {
    (1..n, any::<bool>()).prop_map(|(i, p)| Letter::Sigma(i, if p { 1 } else { -1 }))
}

/// A short random combination of tied-braid images with small integer coefficients.
fn element(n: usize) -> impl Strategy<Value = BTElement> {
    // E_1 has no generators, so its elements are scalars
    let len = if n > 1 { 0..5 } else { 0..1 };
    prop::collection::vec((-2i64..=2, prop::collection::vec(letter(n.max(2)), len)), 1..3).prop_map(
        move |parts| {
            let mut acc = BTElement::zero(n);
            for (c, ls) in parts {
                let x = from_tied_braid(&word(n, ls)).scale(&LaurentFraction::int(c));
                acc = acc.add(&x).unwrap();
            }
            acc
        },
    )
}

fn pair(max_n: usize) -> impl Strategy<Value = (BTElement, BTElement)> {
    (2..=max_n).prop_flat_map(|n| (element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn associativity((x, y, z) in (2..=4usize).prop_flat_map(|n| (element(n), element(n), element(n)))) {
        let l = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let r = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn markov_rules(x in (1..=3usize).prop_flat_map(element)) {
        let n = x.n() + 1;
        let a = x.embed();
        let z = parse_fraction("z").unwrap();
        let big_e = parse_fraction("E").unwrap();
        let r = trace_rho(&x);
        prop_assert_eq!(trace_rho(&multiply(&a, &b(n - 1, n)).unwrap()), &z * &r);
        prop_assert_eq!(trace_rho(&multiply(&a, &e(n - 1, n)).unwrap()), &big_e * &r);
        let eb = multiply(&e(n - 1, n), &b(n - 1, n)).unwrap();
        prop_assert_eq!(trace_rho(&multiply(&a, &eb).unwrap()), &z * &r);
        prop_assert_eq!(restrict(&a), Some(x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn trace_is_central((x, y) in pair(4)) {
        let xy = trace_rho(&multiply(&x, &y).unwrap());
        let yx = trace_rho(&multiply(&y, &x).unwrap());
        prop_assert_eq!(xy, yx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn theta_trace_markov_moves(
        (n, a, c) in (2..=3usize).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(classical_letter(n), 0..5),
            prop::collection::vec(classical_letter(n), 0..3),
        )),
        positive in any::<bool>(),
    ) {
        let alpha = word(n, a.clone());
        let base = theta_trace(&alpha, false).unwrap();
        let beta = word(n, c);
        let conj = beta.concat(&alpha).concat(&beta.inverse());
        prop_assert_eq!(theta_trace(&conj, false).unwrap(), base.clone());
        let mut stab = a;
        stab.push(Letter::Sigma(n, if positive { 1 } else { -1 }));
        prop_assert_eq!(theta_trace(&word(n + 1, stab), false).unwrap(), base);
    }

    #[test]
    fn tied_theta_is_markov_invariant(
        a in prop::collection::vec(letter(3), 0..5),
        t in 1..3usize,
    ) {
        // conjugating a tie around the closure does not change θ̄
        let mut left = vec![Letter::Tie(t)];
        left.extend(a.iter().copied());
        let mut right = a;
        right.push(Letter::Tie(t));
        prop_assert_eq!(
            theta_trace(&word(3, left), true).unwrap(),
            theta_trace(&word(3, right), true).unwrap()
        );
    }
}

#[test]
fn tied_theta_collapses_to_jones_at_e1() {
    // at E = 1 the ties are invisible
    let one = LaurentFraction::one();
    for (tied, plain) in [("e1 s1 s1", "s1 s1"), ("s1 e2 s2 s1", "s1 s2 s1"), ("e1 e2", "")] {
        let t = theta_trace(&BraidWord::parse(tied, Some(3)).unwrap(), true).unwrap();
        let p = theta_trace(&BraidWord::parse(plain, Some(3)).unwrap(), false).unwrap();
        assert_eq!(
            t.substitute(Var::E, &one).unwrap(),
            p.substitute(Var::E, &one).unwrap(),
            "{tied}"
        );
    }
}

#[test]
fn theta_trace_matches_partition_on_small_words() {
    for n in 1..=3usize {
        let gens: Vec<Letter> = (1..n)
            .flat_map(|i| [Letter::Sigma(i, 1), Letter::Sigma(i, -1)])
            .collect();
        let mut words: Vec<Vec<Letter>> = vec![vec![]];
        let mut frontier = words.clone();
        for _ in 0..6 {
            if gens.is_empty() {
                break;
            }
            frontier = frontier
                .iter()
                .flat_map(|w| {
                    gens.iter().map(move |g| {
                        let mut v = w.clone();
                        v.push(*g);
                        v
                    })
                })
                .collect();
            words.extend(frontier.iter().cloned());
        }
        for ls in words {
            let w = word(n, ls);
            let d = w.closure().unwrap();
            assert_eq!(
                theta_trace(&w, false).unwrap(),
                theta_partition(&d).unwrap(),
                "{w}"
            );
        }
    }
}

#[test]
fn basis_of_e4() {
    let basis = enumerate_basis(4).unwrap();
    assert_eq!(basis.len(), 360);
    let mut sorted = basis.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 360);
}
