//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Expected values are typed in literally or computed by
//! the helpers in `common`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use common::{kirchhoff_reference, p0, random_connected_graph, schur_at, vertices};
use decimation_trees::algebra::{reduce, AlgebraicClass, Polynomial, Rational, RationalFunction};
use decimation_trees::counter::tau;
use decimation_trees::decimation::{crosscheck_spectrum, derive, spectrum_levels, SpectrumTable};
use decimation_trees::entropy::{bounds, entropy};
use decimation_trees::fractal::{build_level, builtin, builtin_names, SelfSimilarStructure};
use decimation_trees::oracle::{tau_bruteforce, verify_matrix_tree, wedge_check};
use num_bigint::{BigInt, BigUint};
use num_traits::Pow;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const FRACTALS: [&str; 4] = ["sierpinski", "nonpcf_sg", "diamond", "hexagasket"];

/// Collects failures for one criterion.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(self, id: usize, title: &str) -> bool {
        let ok = self.failures.is_empty();
        println!("{} criterion {id}: {title}", if ok { "PASS" } else { "FAIL" });
        for f in &self.failures {
            println!("    {f}");
        }
        ok
    }
}

fn s(name: &str) -> SelfSimilarStructure {
    builtin(name).unwrap()
}

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

fn p(b: i128, e: usize) -> i128 {
    b.pow(e as u32)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion_1() -> bool {
    let mut c = Check::default();
    let two = BigInt::from(2);
    let cases: Vec<(&str, usize, BigInt)> = vec![
        ("sierpinski", 0, big(3)),
        ("sierpinski", 1, big(54)),
        ("nonpcf_sg", 1, big(2700)),
        ("hexagasket", 1, big(2916)),
        ("diamond", 1, big(4)),
        ("diamond", 2, big(1024)),
        ("diamond", 3, Pow::pow(&two, 42u32)),
    ];
    for (name, n, want) in cases {
        let (got, took) = timed(|| tau(&s(name), n).unwrap().value());
        c.expect(got == want, || format!("{name} n={n}: got {got}, want {want}"));
        c.expect(took < Duration::from_secs(1), || format!("{name} n={n}: took {took:?}"));
    }
    c.report(1, "exact counts at low levels")
}

fn criterion_2() -> bool {
    let mut c = Check::default();
    let mut runs: Vec<(&str, usize)> = FRACTALS.iter().flat_map(|&f| (0..=2).map(move |n| (f, n))).collect();
    runs.push(("sierpinski", 3));
    runs.push(("diamond", 3));
    let (_, took) = timed(|| {
        for (name, n) in runs {
            let st = s(name);
            let level = build_level(&st, n).unwrap();
            let brute = tau_bruteforce(&level.graph).unwrap();
            let fast = tau(&st, n).unwrap().value();
            c.expect(fast == brute, || format!("{name} n={n}: factored {fast}, brute force {brute}"));
            if (name, n) == ("sierpinski", 3) || (name, n) == ("diamond", 3) {
                let want = if name == "sierpinski" { 42 } else { 44 };
                c.expect(level.vertex_count() == want, || format!("{name} n=3 has {} vertices", level.vertex_count()));
            }
        }
    });
    c.expect(took < Duration::from_secs(60), || format!("took {took:?}"));
    c.report(2, "factored counts equal brute-force Kirchhoff counts")
}

fn poly(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

fn criterion_3() -> bool {
    let mut c = Check::default();
    let z = poly(&[0, 1]);
    let z_minus_1 = poly(&[-1, 1]);
    let cases: Vec<(&str, RationalFunction, (usize, i64, i64))> = vec![
        ("sierpinski", RationalFunction::from_poly(&z * &poly(&[5, -4])), (2, 1, -4)),
        ("diamond", RationalFunction::from_poly((&z * &poly(&[2, -1])).scale(&Rational::from_integer(big(2)))), (2, 1, -2)),
        (
            "nonpcf_sg",
            reduce((&(&z * &z_minus_1) * &poly(&[-3, 2])).scale(&Rational::from_integer(big(-24))), poly(&[-15, 14])).unwrap(),
            (3, -15, -48),
        ),
        (
            "hexagasket",
            reduce((&(&z * &z_minus_1) * &poly(&[7, -24, 16])).scale(&Rational::from_integer(big(2))), poly(&[-1, 2])).unwrap(),
            (4, -1, 32),
        ),
    ];
    for (name, want, (d, q0, pd)) in cases {
        let dd = derive(&s(name)).unwrap();
        c.expect(dd.r == want, || format!("{name}: R = {}, want {}", dd.r.to_string_in("z"), want.to_string_in("z")));
        let got = (dd.d, dd.q0.clone(), dd.pd.clone());
        c.expect(got == (d, BigInt::from(q0), BigInt::from(pd)), || format!("{name}: (d, Q(0), P_d) = {got:?}, want ({d}, {q0}, {pd})"));
    }
    c.report(3, "R(z) and (d, Q(0), P_d) match the printed values")
}

fn rc(n: i64, d: i64) -> AlgebraicClass {
    AlgebraicClass::rational(&Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// Multiplicity tables as printed, `(class, depth, multiplicity)`, nonzero
/// entries only.
fn printed_table(name: &str, n: usize) -> Vec<(AlgebraicClass, usize, BigInt)> {
    let mut t = Vec::new();
    let mut add = |class: &AlgebraicClass, k: usize, v: i128| {
        if v != 0 {
            t.push((class.clone(), k, big(v)));
        }
    };
    match name {
        "sierpinski" => {
            add(&rc(3, 2), 0, (p(3, n) + 3) / 2);
            for k in 0..n {
                add(&rc(3, 4), k, (p(3, n - k - 1) + 3) / 2);
            }
            for k in 0..n - 1 {
                add(&rc(5, 4), k, (p(3, n - k - 1) - 1) / 2);
            }
        }
        "nonpcf_sg" => {
            add(&rc(3, 2), 0, p(6, n - 1) + 1);
            for b in [rc(3, 4), rc(5, 4)] {
                for k in 0..n - 1 {
                    add(&b, k, p(6, n - k - 2) + 1);
                }
                add(&b, n - 1, 2);
            }
            for k in 0..n - 1 {
                add(&rc(1, 2), k, (11 * p(6, n - k - 2) - 6) / 5);
                add(&rc(1, 1), k, (p(6, n - k) - 6) / 5);
            }
        }
        "diamond" => {
            add(&rc(2, 1), 0, 1);
            for k in 0..n {
                add(&rc(1, 1), k, (p(4, n - k) + 2) / 3);
            }
        }
        "hexagasket" => {
            add(&rc(3, 2), 0, (6 + 4 * p(6, n)) / 5);
            let quad = AlgebraicClass::new(poly(&[7, -24, 16])).unwrap();
            for k in 0..n {
                add(&rc(1, 1), k, 1);
                add(&rc(1, 4), k, (6 + 4 * p(6, n - k - 1)) / 5);
                add(&rc(3, 4), k, (6 + 4 * p(6, n - k - 1)) / 5);
            }
            for k in 0..n - 1 {
                add(&quad, k, (p(6, n - k - 1) - 1) / 5);
            }
        }
        _ => unreachable!(),
    }
    t
}

fn compare_table(c: &mut Check, name: &str, table: &SpectrumTable, want: &[(AlgebraicClass, usize, BigInt)]) {
    let n = table.level;
    for (class, k, mult) in want {
        let got = table.mult_of(class, *k);
        c.expect(&got == mult, || format!("{name} n={n} {} depth {k}: got {got}, want {mult}", class.label()));
    }
    c.expect(table.entries.len() == want.len(), || {
        format!("{name} n={n}: {} entries, printed table has {}", table.entries.len(), want.len())
    });
}

fn criterion_4() -> bool {
    let mut c = Check::default();
    for name in FRACTALS {
        let st = s(name);
        let dd = derive(&st).unwrap();
        let levels = spectrum_levels(&dd, &st, 10).unwrap();
        for n in 2..=10 {
            compare_table(&mut c, name, &levels[n], &printed_table(name, n));
        }
    }
    c.report(4, "multiplicity tables for 2 <= n <= 10")
}

/// Exponent closed forms as printed, `(prime, numerator, denominator)`.
fn printed_exponents(name: &str, n: usize) -> Vec<(u64, i128, i128)> {
    let nn = n as i128;
    match name {
        "sierpinski" => vec![(2, p(3, n) - 1, 2), (3, p(3, n + 1) + 2 * nn + 1, 4), (5, p(3, n) - 2 * nn - 1, 4)],
        "nonpcf_sg" => vec![
            (2, 2 * (11 * p(6, n) - 30 * nn - 11), 25),
            (3, 2 * p(6, n) + 3, 5),
            (5, 4 * p(6, n) + 30 * nn - 4, 25),
        ],
        "diamond" => vec![(2, 2 * (p(4, n) - 1), 3)],
        "hexagasket" => vec![
            (2, 27 * p(6, n + 1) - 100 * p(4, n) - 60 * nn - 62, 225),
            (3, 4 * p(6, n + 1) + 5 * nn + 1, 25),
            (7, p(6, n) - 5 * nn - 1, 25),
        ],
        _ => unreachable!(),
    }
}

fn criterion_5() -> bool {
    let mut c = Check::default();
    for name in FRACTALS {
        let st = s(name);
        for n in 0..=20 {
            let t = tau(&st, n).unwrap();
            let mut primes = Vec::new();
            for (prime, num, den) in printed_exponents(name, n) {
                primes.push(prime);
                let got = t.exponent(prime);
                let label = format!("{name} n={n} exponent of {prime}");
                if num % den != 0 {
                    c.expect(false, || format!("{label}: printed form gives {num}/{den}, got {got}"));
                } else {
                    c.expect(got == big(num / den), || format!("{label}: got {got}, printed form gives {}", num / den));
                }
            }
            let extra: Vec<_> = t.primes().into_iter().filter(|q| !primes.iter().any(|&x| BigUint::from(x) == *q)).collect();
            c.expect(extra.is_empty(), || format!("{name} n={n}: unexpected primes {extra:?}"));
        }
    }
    c.report(5, "per-prime exponents equal the printed closed forms for 0 <= n <= 20")
}

fn printed_constant(name: &str) -> f64 {
    let (l2, l3, l5, l7) = (2f64.ln(), 3f64.ln(), 5f64.ln(), 7f64.ln());
    match name {
        "sierpinski" => l2 / 3.0 + l3 / 2.0 + l5 / 6.0,
        "nonpcf_sg" => 11.0 * l2 / 10.0 + l3 / 2.0 + l5 / 5.0,
        "diamond" => l2,
        "hexagasket" => 2.0 * l2 / 5.0 + 8.0 * l3 / 15.0 + l7 / 45.0,
        _ => unreachable!(),
    }
}

fn c30(name: &str) -> f64 {
    entropy(&s(name), 30, 15).unwrap().values.last().unwrap().1.to_f64()
}

fn criterion_6() -> bool {
    let mut c = Check::default();
    let (_, took) = timed(|| {
        for name in FRACTALS {
            let (got, want) = (c30(name), printed_constant(name));
            c.expect((got - want).abs() < 1e-6, || format!("{name}: c30 = {got:.9}, printed constant {want:.9}"));
        }
    });
    c.expect(took < Duration::from_secs(5), || format!("took {took:?}"));
    c.report(6, "c30 within 1e-6 of the printed constants")
}

fn criterion_7() -> bool {
    let mut c = Check::default();
    let lower = 3f64.ln() / 2.0;
    for name in ["sierpinski", "nonpcf_sg", "hexagasket"] {
        let st = s(name);
        let k = st.v0_size as f64;
        let upper = (((st.m as f64) - 1.0) * k * (k - 1.0) / (st.v1_size as f64 - k)).ln();
        let got = c30(name);
        c.expect(lower <= got && got <= upper, || format!("{name}: c30 = {got:.9} outside [{lower:.9}, {upper:.9}]"));
        c.expect(bounds(&st, 12).applicable, || format!("{name}: bounds reported inapplicable"));
    }
    let b = bounds(&s("diamond"), 12);
    c.expect(!b.applicable && b.upper.is_none(), || "diamond: bounds reported applicable".into());
    c.report(7, "lower and upper bounds on c30")
}

fn criterion_8() -> bool {
    let mut c = Check::default();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..100 {
        let g = random_connected_graph(&mut rng, 10);
        let m = verify_matrix_tree(&g).unwrap();
        let reference = kirchhoff_reference(&g);
        c.expect(m.holds && m.tau == reference, || format!("matrix-tree graph {i}: {} vs {reference}", m.tau));
    }
    for i in 0..20 {
        let (g, h) = (random_connected_graph(&mut rng, 7), random_connected_graph(&mut rng, 7));
        let (x, y) = (rng.gen_range(0..g.vertex_count()), rng.gen_range(0..h.vertex_count()));
        let w = wedge_check(&g, &h, x, y).unwrap();
        let want = kirchhoff_reference(&g) * kirchhoff_reference(&h);
        c.expect(w.holds && w.wedge == want, || format!("wedge pair {i}: {} vs {want}", w.wedge));
    }
    for &name in builtin_names() {
        let st = s(name);
        let dd = derive(&st).unwrap();
        for (n, t) in spectrum_levels(&dd, &st, 30).unwrap().iter().enumerate() {
            let want = vertices(&st, n);
            c.expect(t.eigenvalue_count() == want, || format!("sum rule {name} n={n}: {} vs {want}", t.eigenvalue_count()));
        }
        for _ in 0..8 {
            let z = Rational::new(BigInt::from(rng.gen_range(-40..40)), BigInt::from(rng.gen_range(1..13)));
            let (Some(schur), Some(phi), Some(r)) = (schur_at(&st, &z), dd.phi.eval(&z), dd.r.eval(&z)) else {
                continue;
            };
            let k = st.v0_size;
            for i in 0..k {
                for j in 0..k {
                    let want = if i == j { &phi * (p0(k, i, j) - &r) } else { &phi * p0(k, i, j) };
                    c.expect(schur[i][j] == want, || format!("Schur identity {name} at z={z} entry ({i},{j})"));
                }
            }
        }
    }
    for name in FRACTALS {
        let st = s(name);
        let dd = derive(&st).unwrap();
        for n in 1..=2 {
            let r = crosscheck_spectrum(&dd, &st, n).unwrap();
            c.expect(r.holds, || format!("charpoly crosscheck {name} n={n}"));
        }
    }
    c.report(8, "matrix-tree, wedge, sum rule, charpoly crosscheck and Schur identity")
}

fn criterion_9() -> bool {
    let mut c = Check::default();
    let interval = s("interval");
    for n in 0..=7 {
        let got = tau(&interval, n).unwrap().value();
        c.expect(got == big(1), || format!("interval n={n}: {got}"));
    }
    let tree = s("tree3");
    for n in 0..=4 {
        let want = Pow::pow(BigInt::from(3), 3u64.pow(n as u32));
        let got = tau(&tree, n).unwrap().value();
        let brute = tau_bruteforce(&build_level(&tree, n).unwrap().graph).unwrap();
        c.expect(got == want && brute == want, || format!("tree3 n={n}: {got} and {brute}, want 3^(3^{n})"));
    }
    let target = 3f64.ln() / 2.0;
    let report = entropy(&tree, 30, 15).unwrap();
    let gaps: Vec<f64> = report.values.iter().map(|(_, v)| (v.to_f64() - target).abs()).collect();
    c.expect(gaps.windows(2).all(|w| w[1] <= w[0]), || format!("tree3 gaps not shrinking: {gaps:?}"));
    let last = *gaps.last().unwrap();
    c.expect(last < 1e-9, || format!("tree3 c30 is {last:e} from ln3/2"));
    c.expect(gaps[0] > 0.0, || "tree3 c2 already equals ln3/2".into());
    c.report(9, "interval and tree3 counts, tree3 entropy approaches ln3/2")
}

fn main() {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
