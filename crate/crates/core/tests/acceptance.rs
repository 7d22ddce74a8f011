//! Acceptance criteria, one PASS/FAIL line each, with wall-clock limits.
//! Runs without the libtest harness so the lines come out in order.

use std::collections::BTreeMap;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_schubert::operators::{
    monomial_basket, twisted_skew_naive_with_word, twisted_skew_positive, OpTerm, OperatorExpr,
};
use twisted_schubert::polyring::parse;
use twisted_schubert::schubert::{
    billey, default_expansion_size, double_schubert, double_twisted_schubert, expand_schubert, localize,
    localize_formula, schubert, schubert_stable, twisted_schubert, twisted_schubert_via_chains, PipeDream,
};
use twisted_schubert::symchains::{pieri_e, pieri_h, tdel_on_elementary, tdel_on_homogeneous};
use twisted_schubert::{verify, Error, MultiPoly, Permutation};

const SEED: u64 = 20240611;

fn perm(s: &str) -> Permutation {
    Permutation::parse(s).unwrap()
}

fn poly(s: &str, n: usize) -> MultiPoly {
    parse(s, n).unwrap()
}

const TWISTED_S3: [(&str, &str); 6] = [
    ("321", "x1^2*x2"),
    ("231", "x1*x2^2 + x1*x2"),
    ("312", "x1^2*x3 + x1^2"),
    ("213", "x1*x3^2 + x1*x2 + 2*x1*x3 + x1"),
    ("132", "x2^2*x3 + x1*x3 + x2^2 + x2*x3 + x1 + x2"),
    ("123", "x2*x3^2 + x1*x2 + 2*x2*x3 + x3^2 + x2 + 2*x3 + 1"),
];

fn twisted_table() {
    for (w, expected) in TWISTED_S3 {
        let p = twisted_schubert(&perm(w));
        assert_eq!(p, poly(expected, 3), "{w}");
        assert_eq!(p.to_string(), expected, "{w}");
    }
}

fn example_2431() {
    let w = perm("2431");
    assert_eq!(schubert(&w), poly("x1^2*x2*x3 + x1*x2^2*x3", 4));
    let dreams = PipeDream::enumerate(&w);
    assert_eq!(dreams.len(), 2);
    let sum = dreams.iter().fold(MultiPoly::zero(4), |acc, pd| &acc + &pd.weight());
    assert_eq!(sum, schubert(&w));
}

fn positive_skew_example() {
    let w = Permutation::from_word(4, &[1, 2, 3, 2, 1]);
    let v = perm("2134");
    let got = twisted_skew_positive(&w, &v);
    let expected = OperatorExpr::from_terms(
        4,
        [vec![(3, 4), (2, 4), (1, 3), (2, 3)], vec![(3, 4), (1, 4), (2, 4), (1, 3)], vec![(1, 4), (2, 4)]]
            .into_iter()
            .map(|word| OpTerm { coeff: 1, leading: None, word }),
    );
    assert_eq!(got.terms(), expected.terms());
    let naive = twisted_skew_naive_with_word(&[1, 2, 3, 2, 1], &v);
    assert_eq!(naive.terms().len(), 4);
    let basket = monomial_basket(4, 6);
    if let Some(p) = got.disagreement(&naive, &basket) {
        panic!("positive and naive forms differ on {p}");
    }
}

fn chains_oracle() {
    let mut sample = Permutation::all(4);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    sample.extend((0..20).map(|_| Permutation::random(5, &mut rng)));
    for w in &sample {
        let p = twisted_schubert(w);
        assert_eq!(p, twisted_schubert_via_chains(w), "{w}");
        assert!(p.is_monomial_nonnegative(), "{w}");
    }
}

fn double_twisted_example() {
    let expected = poly("(1+x2-y1)(1+x3-y1)(1+x3-y2)+(x2-y1)(x1-y1)", 3);
    assert_eq!(double_twisted_schubert(&perm("123")), expected);
    for (w, single) in TWISTED_S3 {
        assert_eq!(double_twisted_schubert(&perm(w)).set_y_zero(), poly(single, 3), "{w}");
    }
}

fn localization() {
    let identity_table = [
        ("321", "1 + (y2-y1)*(y3-y2)"),
        ("312", "1+y2-y1"),
        ("231", "1+y3-y2"),
        ("213", "(1+y3-y1)*(1+y3-y2)"),
        ("132", "(1+y2-y1)*(1+y3-y1)"),
        ("123", "(1+y2-y1)*(1+y3-y1)*(1+y3-y2)"),
    ];
    for (w, expected) in identity_table {
        assert_eq!(localize(&perm("123"), &perm(w)), poly(expected, 3), "{w}");
    }
    for v in Permutation::all(3) {
        for w in Permutation::all(3) {
            assert_eq!(localize_formula(&v, &w).product(), localize(&v, &w), "{v} at {w}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..100 {
        let (v, w) = (Permutation::random(4, &mut rng), Permutation::random(4, &mut rng));
        assert_eq!(localize_formula(&v, &w).product(), localize(&v, &w), "{v} at {w}");
    }
    let n = 3;
    for v in Permutation::all(n) {
        for w in Permutation::all(n) {
            for i in 1..n {
                let d = &MultiPoly::y(n, w.apply(i + 1)) - &MultiPoly::y(n, w.apply(i));
                let lhs = &(&MultiPoly::one(n) + &d) * &localize(&v, &w.mul_simple_right(i));
                let rhs = &(&d * &localize(&v.mul_simple_right(i), &w)) + &localize(&v, &w);
                assert_eq!(lhs, rhs, "{v} {w} {i}");
            }
        }
    }
}

fn billey_formula() {
    let direct = |v: &Permutation, w: &Permutation| double_schubert(v).substitute_x_by_y(w);
    for v in Permutation::all(3) {
        for w in Permutation::all(3) {
            assert_eq!(billey(&v, &w), direct(&v, &w), "{v} at {w}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..100 {
        let (v, w) = (Permutation::random(4, &mut rng), Permutation::random(4, &mut rng));
        assert_eq!(billey(&v, &w), direct(&v, &w), "{v} at {w}");
    }
}

/// Runs one Pieri case in `S_5`, moving to the ambient size the error
/// reports when the product has terms outside `S_5`.
fn pieri_case(v: &Permutation, m: usize, k: usize, elementary: bool) {
    let compute = |v: &Permutation, big_n| {
        if elementary {
            pieri_e(v, m, k, big_n)
        } else {
            pieri_h(v, m, k, big_n)
        }
    };
    let v5 = v.embed(5);
    let (big_n, terms) = match compute(&v5, 5) {
        Ok(t) => (5, t),
        Err(Error::PieriAmbientTooSmall { needed, .. }) => (needed, compute(&v5.embed(needed), needed).unwrap()),
        Err(e) => panic!("{v} m={m} k={k}: {e}"),
    };
    let sym = if elementary {
        MultiPoly::elementary_k(m as i64, k, big_n)
    } else {
        MultiPoly::homogeneous_k(m as i64, k, big_n)
    };
    let product = &schubert_stable(v, big_n) * &sym;
    let size = default_expansion_size(&product);
    let expansion = expand_schubert(&product, size).unwrap();
    let expected: BTreeMap<Permutation, BigInt> = terms.iter().map(|w| (w.embed(size), BigInt::from(1))).collect();
    assert_eq!(expansion, expected, "{v} m={m} k={k} e={elementary}");
}

fn pieri() {
    for v in Permutation::all(3) {
        for m in 1..=3 {
            for k in 1..=2 {
                pieri_case(&v, m, k, true);
                pieri_case(&v, m, k, false);
            }
        }
    }
    let id = Permutation::identity(3);
    assert_eq!(pieri_e(&id, 2, 2, 3).unwrap(), vec![perm("231")]);
    assert_eq!(&schubert(&id) * &MultiPoly::elementary_k(2, 2, 3), schubert(&perm("231")));
    assert_eq!(pieri_e(&perm("213"), 1, 1, 3).unwrap(), vec![perm("312")]);
    assert_eq!(&schubert(&perm("213")) * &MultiPoly::elementary_k(1, 1, 3), schubert(&perm("312")));
}

fn closed_forms() {
    let all = Permutation::all(4);
    let sym: Vec<(usize, i64, MultiPoly, MultiPoly)> = (1..4)
        .flat_map(|k| (0..=4).map(move |m| (k, m)))
        .map(|(k, m)| (k, m, MultiPoly::elementary_k(m, k, 4), MultiPoly::homogeneous_k(m, k, 4)))
        .collect();
    for v in &all {
        for w in &all {
            let op = twisted_skew_positive(w, v);
            for (k, m, e, h) in &sym {
                assert_eq!(op.apply(e), tdel_on_elementary(v, w, *m, *k), "e: {v} {w} m={m} k={k}");
                assert_eq!(op.apply(h), tdel_on_homogeneous(v, w, *m, *k), "h: {v} {w} m={m} k={k}");
            }
        }
    }
}

fn property_suites() {
    let names = [
        "dd-relations",
        "dd-leibniz",
        "twisted-coxeter",
        "twisted-leibniz",
        "skew-recurrence",
        "factorization",
        "bijection",
    ];
    for n in [3, 4] {
        for report in verify::run_suites(&names, n, SEED) {
            assert!(report.passed, "{} at n={}: {}", report.name, n, report.counterexample.as_deref().unwrap_or(""));
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn(),
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "twisted polynomials of S_3", limit: Duration::from_secs(1), run: twisted_table },
    Criterion { id: 2, name: "S_2431 and its pipe dreams", limit: Duration::from_secs(1), run: example_2431 },
    Criterion {
        id: 3,
        name: "positive twisted skew operator",
        limit: Duration::from_secs(5),
        run: positive_skew_example,
    },
    Criterion { id: 4, name: "twisted polynomials via chains", limit: Duration::from_secs(120), run: chains_oracle },
    Criterion {
        id: 5,
        name: "double twisted polynomial of 123",
        limit: Duration::from_secs(1),
        run: double_twisted_example,
    },
    Criterion { id: 6, name: "localization formula and recurrence", limit: Duration::from_secs(60), run: localization },
    Criterion { id: 7, name: "subword formula for localizations", limit: Duration::from_secs(30), run: billey_formula },
    Criterion { id: 8, name: "Pieri rules via chains", limit: Duration::from_secs(60), run: pieri },
    Criterion { id: 9, name: "closed forms on e_m and h_m", limit: Duration::from_secs(120), run: closed_forms },
    Criterion { id: 10, name: "property suites at n = 3, 4", limit: Duration::from_secs(120), run: property_suites },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.run);
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= c.limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {:?} limit)", c.limit),
            Err(_) => "FAIL".to_string(),
        };
        if verdict != "PASS" {
            failed += 1;
        }
        println!("{verdict} criterion {:>2}: {} [{:.2?}]", c.id, c.name, elapsed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
