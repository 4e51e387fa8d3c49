//! Acceptance harness: one PASS or FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use skeinlab::bt_algebra::{
    from_tied_braid, multiply, restrict, theta_trace, trace_rho, BTElement,
};
use skeinlab::classical::{homflypt, jones};
use skeinlab::data::LinkTable;
use skeinlab::diagram::{BraidWord, Letter, LinkDiagram};
use skeinlab::poly::{parse_fraction, LaurentFraction, Var};
use skeinlab::reproduce::{self, THISTLETHWAITE};
use skeinlab::theta::{skein_residual, theta_partition, theta_skein, Theta_partition};

type Outcome = Result<String, String>;

fn fraction(s: &str) -> LaurentFraction {
    parse_fraction(s).expect("literal parses")
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn table() -> Result<LinkTable, String> {
    LinkTable::load().map_err(err)
}

fn thistlethwaite(table: &LinkTable) -> Result<LinkDiagram, String> {
    table
        .diagram(THISTLETHWAITE)
        .map_err(|e| format!("no Thistlethwaite diagram available ({e})"))
}

fn c1_thistlethwaite_jones() -> Outcome {
    let table = table()?;
    let t = thistlethwaite(&table)?;
    let v = jones(&t).map_err(err)?;
    let unlink = jones(&LinkDiagram::unlink(2)).map_err(err)?;
    if v == fraction("-q - q^-1") && v == unlink {
        Ok(format!("V = {v}"))
    } else {
        Err(format!("V = {v}, unlink gives {unlink}"))
    }
}

fn c2_thistlethwaite_theta() -> Outcome {
    let table = table()?;
    let t = thistlethwaite(&table)?;
    let start = Instant::now();
    theta_partition(&t).map_err(err)?;
    let partition_time = start.elapsed();
    let r = reproduce::thistlethwaite_report(&table).map_err(err)?;
    let mut bad = Vec::new();
    if !r.closed_form_matches {
        bad.push(format!("theta = {} but closed form = {}", r.theta_partition, r.closed_form));
    }
    if !r.differs_from_unlink {
        bad.push("theta equals theta(unlink2)".to_string());
    }
    if !r.collapses_at_e1 {
        bad.push("theta at E=1 is not V".to_string());
    }
    if partition_time > Duration::from_secs(5) {
        bad.push(format!("partition route took {partition_time:?}"));
    }
    if bad.is_empty() {
        Ok(format!("theta = {}", r.theta_partition))
    } else {
        Err(bad.join("; "))
    }
}

fn c3_six_pairs() -> Outcome {
    let table = table()?;
    let mut bad = Vec::new();
    for i in 0..reproduce::PAIRS.len() {
        let p = reproduce::pair(&table, i).map_err(err)?;
        let [a, b] = &p.report.links;
        if !p.pass {
            let want = fraction(&p.expected);
            if p.report.theta_difference == -&want {
                bad.push(format!("{a} - {b}: opposite sign"));
            } else {
                bad.push(format!(
                    "{a} - {b}: computed {}, expected {want}",
                    p.report.theta_difference
                ));
            }
        }
        if p.elapsed > Duration::from_secs(30) {
            bad.push(format!("{a} - {b} took {:?}", p.elapsed));
        }
    }
    if bad.is_empty() {
        Ok("all six differences reproduced".into())
    } else {
        Err(format!("{} of 6 pairs off: {}", bad.len(), bad.join("; ")))
    }
}

fn random_closures(seed: u64, count: usize) -> Vec<(String, LinkDiagram)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            let len = rng.gen_range(0..=8);
            let w = common::random_braid(&mut rng, n, len);
            (w.to_string(), w.closure().expect("classical word"))
        })
        .collect()
}

fn c4_skein_vs_partition() -> Outcome {
    let mut all = common::corpus();
    all.extend(random_closures(4, 200));
    for (name, d) in &all {
        let s = theta_skein(d).map_err(err)?;
        let p = theta_partition(d).map_err(err)?;
        if s != p {
            return Err(format!("{name}: skein {s}, partition {p}"));
        }
    }
    Ok(format!("{} diagrams", all.len()))
}

fn c5_specializations() -> Outcome {
    let one = LaurentFraction::one();
    let corpus = common::corpus();
    for (name, d) in &corpus {
        let th = theta_partition(d).map_err(err)?;
        let big = Theta_partition(d).map_err(err)?;
        let v = jones(d).map_err(err)?;
        let p = homflypt(d).map_err(err)?;
        if th.substitute(Var::E, &one).map_err(err)? != v {
            return Err(format!("{name}: theta at E=1 is not V"));
        }
        if big.substitute(Var::S, &LaurentFraction::var(Var::Q, 2)).map_err(err)? != th {
            return Err(format!("{name}: Theta at s=q^2 is not theta"));
        }
        if big.substitute(Var::E, &one).map_err(err)? != p {
            return Err(format!("{name}: Theta at E=1 is not P"));
        }
        for k in 1..=5 {
            let e = LaurentFraction::int(1).checked_div(&LaurentFraction::int(k)).map_err(err)?;
            let at = th.substitute(Var::E, &e).map_err(err)?;
            if !at.is_laurent_poly() {
                return Err(format!("{name}: theta at E=1/{k} is {at}"));
            }
        }
    }
    Ok(format!("{} corpus diagrams", corpus.len()))
}

fn c6_algebra() -> Outcome {
    let r = reproduce::algebra().map_err(err)?;
    let failed: Vec<String> = r
        .items
        .iter()
        .filter(|i| !i.pass)
        .map(|i| format!("{} ({})", i.name, i.detail))
        .collect();
    if failed.is_empty() {
        Ok(format!("rho(b_12) = {}", r.ptl.rho_b12))
    } else {
        Err(failed.join("; "))
    }
}

fn random_letter<R: Rng>(rng: &mut R, n: usize) -> Letter {
    let i = rng.gen_range(1..n);
    match rng.gen_range(0..3) {
        0 => Letter::Sigma(i, 1),
        1 => Letter::Sigma(i, -1),
        _ => Letter::Tie(i),
    }
}

/// A small integer combination of tied-braid images in E_n(q).
fn random_element<R: Rng>(rng: &mut R, n: usize) -> BTElement {
    let mut acc = BTElement::zero(n);
    for _ in 0..rng.gen_range(1..=2) {
        let len = if n > 1 { rng.gen_range(0..5) } else { 0 };
        let letters: Vec<Letter> = (0..len).map(|_| random_letter(rng, n)).collect();
        let w = BraidWord::new(n, letters).expect("letters in range");
        let c = LaurentFraction::int(rng.gen_range(-2..=2));
        acc = acc.add(&from_tied_braid(&w).scale(&c)).expect("same n");
    }
    acc
}

fn c7_trace_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for k in 0..500 {
        let n = rng.gen_range(2..=4);
        let (x, y) = (random_element(&mut rng, n), random_element(&mut rng, n));
        let xy = trace_rho(&multiply(&x, &y).map_err(err)?);
        let yx = trace_rho(&multiply(&y, &x).map_err(err)?);
        if xy != yx {
            return Err(format!("pair {k}: rho(xy) = {xy}, rho(yx) = {yx}"));
        }
    }
    let (z, e) = (fraction("z"), fraction("E"));
    for k in 0..100 {
        let m = rng.gen_range(1..=3);
        let x = random_element(&mut rng, m);
        let n = x.n() + 1;
        let a = x.embed();
        let bn = BTElement::b(n - 1, n).map_err(err)?;
        let en = BTElement::eps(n - 1, n).map_err(err)?;
        let r = trace_rho(&x);
        let checks = [
            (multiply(&a, &bn).map_err(err)?, &z * &r),
            (multiply(&a, &en).map_err(err)?, &e * &r),
            (multiply(&a, &multiply(&en, &bn).map_err(err)?).map_err(err)?, &z * &r),
        ];
        for (rule, (lhs, want)) in checks.iter().enumerate() {
            if trace_rho(lhs) != *want {
                return Err(format!("Markov rule {} fails on element {k}: {x}", rule + 3));
            }
        }
        if restrict(&a).as_ref() != Some(&x) {
            return Err(format!("embedding of element {k} does not restrict back"));
        }
    }
    Ok("500 pairs, 100 Markov checks".into())
}

fn c8_trace_vs_topology() -> Outcome {
    let mut words: Vec<BraidWord> = Vec::new();
    for n in 1..=3usize {
        let gens: Vec<Letter> = (1..n)
            .flat_map(|i| [Letter::Sigma(i, 1), Letter::Sigma(i, -1)])
            .collect();
        let mut frontier: Vec<Vec<Letter>> = vec![vec![]];
        let mut all = frontier.clone();
        for _ in 0..6 {
            if gens.is_empty() {
                break;
            }
            frontier = frontier
                .iter()
                .flat_map(|w| gens.iter().map(move |g| [w.as_slice(), &[*g]].concat()))
                .collect();
            all.extend(frontier.iter().cloned());
        }
        words.extend(all.into_iter().map(|ls| BraidWord::new(n, ls).expect("in range")));
    }
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..50 {
        let len = rng.gen_range(1..=8);
        words.push(common::random_braid(&mut rng, 4, len));
    }
    for w in &words {
        let d = w.closure().map_err(err)?;
        let t = theta_trace(w, false).map_err(err)?;
        let p = theta_partition(&d).map_err(err)?;
        if t != p {
            return Err(format!("{w}: trace {t}, partition {p}"));
        }
    }
    Ok(format!("{} words", words.len()))
}

fn c9_hand_values() -> Outcome {
    let closure = |s: &str| {
        BraidWord::parse(s, Some(2)).and_then(|w| w.closure()).map_err(err)
    };
    let hopf = closure("s1 s1")?;
    let trefoil = closure("s1 s1 s1")?;
    let checks = [
        ("theta(Hopf+)", theta_partition(&hopf), "-(q^5 + q^3)*E^-1 + q^3 - q"),
        ("V(Hopf+)", jones(&hopf), "-q^5 - q"),
        ("V(s1^3)", jones(&trefoil), "-q^8 + q^6 + q^2"),
    ];
    for (name, got, want) in checks {
        let got = got.map_err(err)?;
        if got != fraction(want) {
            return Err(format!("{name} = {got}, expected {want}"));
        }
    }
    Ok("3 values".into())
}

fn c10_invariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let corpus = common::corpus();
    let mut moves = 0;
    let mut relabeled = 0;
    let mut mixed = 0;
    for (name, d) in &corpus {
        let th = theta_partition(d).map_err(err)?;
        let mut cur = d.clone();
        // 100 moves per diagram, checked after every 25
        for block in 0..4 {
            cur = common::scramble(&cur, &mut rng, 25, d.n_crossings() + 4);
            moves += 25;
            let now = theta_partition(&cur).map_err(err)?;
            if now != th {
                return Err(format!("{name}: theta changed after {} moves: {now}", 25 * (block + 1)));
            }
        }
        for _ in 0..3 {
            if let Some(r) = common::relabel(d, &mut rng) {
                relabeled += 1;
                if theta_partition(&r).map_err(err)? != th || r.canonical_key() != d.canonical_key() {
                    return Err(format!("{name}: relabeling changed the diagram"));
                }
            }
        }
        for x in (0..d.n_crossings()).filter(|&x| d.is_mixed(x)) {
            mixed += 1;
            let res = skein_residual(d, x).map_err(err)?;
            if !res.is_zero() {
                return Err(format!("{name}: residual {res} at crossing {x}"));
            }
        }
    }
    Ok(format!(
        "{moves} moves, {relabeled} relabelings, {mixed} mixed crossings"
    ))
}

type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Thistlethwaite Jones equals the 2-component unlink", Some(1), c1_thistlethwaite_jones),
        ("Thistlethwaite theta closed form by the partition route", None, c2_thistlethwaite_theta),
        ("six distinguishing pairs", None, c3_six_pairs),
        ("skein route equals partition route", Some(120), c4_skein_vs_partition),
        ("specialization ladder", None, c5_specializations),
        ("algebra suite", Some(30), c6_algebra),
        ("trace properties", Some(120), c7_trace_properties),
        ("trace route equals partition route", None, c8_trace_vs_topology),
        ("hand-derived values", None, c9_hand_values),
        ("invariance under moves, relabeling, skein residual", None, c10_invariance),
    ];
    let suite = Instant::now();
    let mut failures = 0;
    for (i, (title, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let took = start.elapsed();
        if let (Ok(_), Some(secs)) = (&outcome, limit) {
            if took > Duration::from_secs(*secs) {
                outcome = Err(format!("took {took:.1?}, limit {secs} s"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} [{took:.1?}]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {title}: {why} [{took:.1?}]", i + 1);
            }
        }
    }
    println!(
        "{} passed, {failures} failed in {:.1?}",
        criteria.len() - failures,
        suite.elapsed()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
