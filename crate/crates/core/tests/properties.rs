use proptest::prelude::*;

use synectic::catalog;
use synectic::dsl::{parse_expr, Expr, Func};
use synectic::geometry::{lower, raise};
use synectic::tensor::{MultiIndexArray, Variance};

/// Fifty well-formed expressions covering every operator and function.
const CORPUS: [&str; 50] = [
    "1",
    "x1",
    "-x2",
    "x1 + x2",
    "x1 - x2 - 3",
    "x1 * x2 / 4",
    "x1^2",
    "x1^2 + x2^2",
    "-x1^2",
    "(-x1)^2",
    "x1^-2",
    "2^x1",
    "x1^x2",
    "x1^2^3",
    "(x1^2)^3",
    "sin(x1)",
    "cos(x2)^2",
    "tan(x1 / 3)",
    "exp(-x1 * x2)",
    "log(x1)",
    "sqrt(x1 + x2)",
    "sin(x1)^2",
    "1 / sin(x1)^2",
    "cos(x1) / sin(x1)",
    "x2^-2",
    "1 / x2^2",
    "x1^2 - x2^2",
    "2 * x1 * x2",
    "-(x1 - x2)",
    "x1 - (x2 - x1)",
    "x1 / (x2 / x1)",
    "(x1 + x2) * (x1 - x2)",
    "3.5e-1 * x1",
    ".25 + x2",
    "1e2 * x1 / 1e2",
    "exp(sin(x1))",
    "log(1 + x1^2)",
    "sqrt(1 + x2^2)",
    "sin(x1) * cos(x2) + cos(x1) * sin(x2)",
    "x1 * exp(x2) - x2 * exp(x1)",
    "--x1",
    "-(-x1)",
    "x1^0.5",
    "x1^(1/3)",
    "(x1 + 1)^-1",
    "tan(x2)^2 + 1",
    "x3 * x1",
    "x1 * x2 * x3 - x2",
    "1 - x1 + x1^2 / 2 - x1^3 / 6",
    "sin(cos(tan(x1 / 4)))",
];

#[test]
fn printing_is_idempotent_on_the_corpus() {
    for src in CORPUS {
        let once = parse_expr(src).unwrap_or_else(|e| panic!("{src}: {e}")).to_string();
        let twice = parse_expr(&once).unwrap_or_else(|e| panic!("{once}: {e}")).to_string();
        assert_eq!(once, twice, "{src}");
    }
}

#[test]
fn printed_form_evaluates_the_same() {
    let x = [0.7, 1.3, 0.4];
    for src in CORPUS {
        let e = parse_expr(src).unwrap();
        let back = parse_expr(&e.to_string()).unwrap();
        match (e.eval(&x), back.eval(&x)) {
            (Ok(a), Ok(b)) => assert_eq!(a, b, "{src}"),
            (a, b) => assert_eq!(a.is_ok(), b.is_ok(), "{src}"),
        }
    }
}

/// Cutting right after an operator, an opening parenthesis or a function
/// name never leaves a complete expression.
#[test]
fn dangling_truncations_are_rejected() {
    let mut rejected = 0;
    for src in CORPUS {
        for (i, ch) in src.char_indices() {
            let prefix = &src[..i + ch.len_utf8()];
            let dangling = matches!(ch, '+' | '-' | '*' | '/' | '^' | '(')
                || ["sin", "cos", "tan", "exp", "log", "sqrt"].iter().any(|f| prefix.ends_with(f));
            if dangling {
                assert!(parse_expr(prefix).is_err(), "accepted `{prefix}`");
                rejected += 1;
            }
        }
    }
    assert!(rejected > 100);
}

#[test]
fn every_truncation_parses_or_errors_without_panicking() {
    for src in CORPUS {
        for (i, _) in src.char_indices() {
            let _ = parse_expr(&src[..i]);
            let _ = parse_expr(&src[i..]);
        }
    }
}

fn rel_err(ad: f64, fd: f64) -> f64 {
    (ad - fd).abs() / fd.abs().max(1.0)
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..40).prop_map(|k| Expr::Num(f64::from(k) / 8.0)),
        (1usize..=3).prop_map(Expr::Var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let func = prop_oneof![Just(Func::Sin), Just(Func::Cos), Just(Func::Exp)];
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), Box::new(Expr::Num(f64::from(k))))),
            (func, inner).prop_map(|(f, a)| Expr::Call(f, Box::new(a))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(e in arb_expr(), x in prop::array::uniform3(-1.5f64..1.5)) {
        let printed = e.to_string();
        let back = parse_expr(&printed).unwrap();
        prop_assert_eq!(back.to_string(), printed.clone());
        if let (Ok(a), Ok(b)) = (e.eval(&x), back.eval(&x)) {
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{} at {:?}: {} vs {}", printed, x, a, b);
        }
    }

    /// Exact jets against central differences, h = 1e-4.
    #[test]
    fn corpus_jets_match_finite_differences(
        idx in 0usize..CORPUS.len(),
        x in prop::array::uniform3(0.2f64..1.4),
    ) {
        let e = parse_expr(CORPUS[idx]).unwrap();
        let h = 1e-4;
        let Ok(jet) = e.eval_jet2(&x) else { return Ok(()); };
        let f = |d: &[(usize, f64)]| {
            let mut y = x;
            for &(i, s) in d {
                y[i] += s;
            }
            e.eval(&y).unwrap()
        };
        for i in 0..3 {
            let fd = (f(&[(i, h)]) - f(&[(i, -h)])) / (2.0 * h);
            prop_assert!(rel_err(jet.grad[i], fd) <= 1e-5, "{} d{}: {} vs {}", CORPUS[idx], i, jet.grad[i], fd);
            for j in 0..3 {
                let fd = (f(&[(i, h), (j, h)]) - f(&[(i, h), (j, -h)]) - f(&[(i, -h), (j, h)]) + f(&[(i, -h), (j, -h)]))
                    / (4.0 * h * h);
                prop_assert!(rel_err(jet.hess_at(i, j), fd) <= 1e-5, "{} d{}d{}", CORPUS[idx], i, j);
            }
        }
    }

    #[test]
    fn contraction_is_bilinear(
        a in prop::collection::vec(-3.0f64..3.0, 9),
        b in prop::collection::vec(-3.0f64..3.0, 9),
        v in prop::collection::vec(-3.0f64..3.0, 3),
        w in prop::collection::vec(-3.0f64..3.0, 3),
        s in -2.0f64..2.0,
        t in -2.0f64..2.0,
    ) {
        let mat = |d: &Vec<f64>| MultiIndexArray::matrix(3, [Variance::Upper, Variance::Lower], d.clone());
        let vec = |d: &Vec<f64>| MultiIndexArray::vector(Variance::Upper, d.clone());
        let (ma, mb, vv, vw) = (mat(&a), mat(&b), vec(&v), vec(&w));

        // Linear in the first argument.
        let left = ma.scale(s).axpy(t, &mb).unwrap().contract(&vv, 1, 0).unwrap();
        let right = ma.contract(&vv, 1, 0).unwrap().scale(s).axpy(t, &mb.contract(&vv, 1, 0).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);

        // Linear in the second argument.
        let left = ma.contract(&vv.scale(s).axpy(t, &vw).unwrap(), 1, 0).unwrap();
        let right = ma.contract(&vv, 1, 0).unwrap().scale(s).axpy(t, &ma.contract(&vw, 1, 0).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn antisym_kills_sym(d in prop::collection::vec(-5.0f64..5.0, 16)) {
        let m = MultiIndexArray::matrix(4, [Variance::Lower, Variance::Lower], d);
        let sym = m.sym_pair(0, 1, false).unwrap();
        prop_assert_eq!(sym.antisym_pair(0, 1, false).unwrap().max_abs(), 0.0);
        let anti = m.antisym_pair(0, 1, false).unwrap();
        prop_assert_eq!(anti.sym_pair(0, 1, false).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn raise_undoes_lower(
        u in 0.0f64..1.0,
        w in 0.0f64..1.0,
        v in prop::collection::vec(-3.0f64..3.0, 2),
        which in 0usize..3,
    ) {
        let m = match which {
            0 => catalog::sphere(),
            1 => catalog::poincare(),
            _ => catalog::euclid2(),
        };
        let x: Vec<f64> = m.chart.iter().zip([u, w]).map(|(&(lo, hi), f)| lo + f * (hi - lo)).collect();
        let back = raise(&m, &x, &lower(&m, &x, &v).unwrap()).unwrap();
        for (a, b) in back.iter().zip(&v) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }
}
