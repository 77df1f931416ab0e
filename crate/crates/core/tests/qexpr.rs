use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use mocktheta::qexpr::{eval_str, evaluate, parse, Arg, Builtin, EvalContext, Expr, QexprError};
use mocktheta::theta::Monomial;
use mocktheta::{RingTag, SeriesError};

const CORPUS: [&str; 50] = [
    "1",
    "q",
    "q^0",
    "q^7",
    "-q",
    "--q^2",
    "1 + q",
    "1 - q + q^2 - q^3",
    "2*q*3",
    "(1 - q)^-1",
    "(1 - q)^-2 * (1 + q)^2",
    "1+2*q^1^2",
    "q^2^3",
    "(q^2)^3",
    "-(1 + q)^2",
    "1 - (q - q^2)",
    "(1 - q) - q^2",
    "1 / (1 - q) / (1 + q)",
    "1 / ((1 - q) / (1 + q))",
    "phi(q)",
    "phi(-q)",
    "phi(-q^2)^2",
    "phi(q)*phi(-q) - phi(-q^2)^2",
    "phi(-q) - phi(q^4) + 2*q*psi(q^8)",
    "phi(-q)^2 - phi(q^2)^2 + 4*q*psi(q^4)^2",
    "phi(q^4)^2 - 4*q^2*psi(q^8)^2 - phi(-q^2)^2",
    "phi(-q)^2 / phi(q^2)^2",
    "3*psi(q) + 512*q^1*psi(q)^9/phi(-q)^8",
    "psi(q) - f(q^3, q^6) - q*psi(q^9)",
    "phi(-q) - phi(-q^9) + 2*q*f(-q^3, -q^15)",
    "f(q, q^2)",
    "f(-q, -q^2) - E(1)",
    "E(1)^3",
    "E(2)^2 / E(1)",
    "E(2)^26 / E(1)^25",
    "E(2)^3*E(3)^8*E(9)*E(18)",
    "poch(1, 1, 1, inf)",
    "poch(-1, 1, 2, inf)^2 * poch(1, 2, 2, inf)",
    "poch(-1, 2, 4, 3)",
    "poch(1, 8, 8, inf) * poch(-1, 2, 4, inf)^4",
    "v0()",
    "2*v0() - 1",
    "H(v0())",
    "H(phi(q)^2/phi(-q))",
    "H(q*psi(q^4)^3/phi(-q)^2) * phi(-q^2)^4",
    "ext(v0(), 4, 0)",
    "2*ext(v0(), 4, 0) - phi(q)^2/phi(-q)",
    "ext(v0(), 8, 2) - 2*E(2)^4*E(4)^5/(E(1)^6*E(8)^2)",
    "sub(psi(q), 4) - psi(q^4)",
    "sub(ext(phi(q), 2, 0), 2) - H(phi(q))",
];

fn ctx(ring: RingTag, order: usize) -> EvalContext {
    EvalContext::new(ring, order).unwrap()
}

#[test]
fn corpus_print_parse_fixpoint() {
    for text in CORPUS {
        let ast = parse(text).unwrap_or_else(|e| panic!("{text}: {e}"));
        let printed = ast.to_string();
        let again = parse(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(again, ast, "{text} printed as {printed}");
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn corpus_identities_vanish() {
    let zz = ctx(RingTag::Integer, 200);
    for text in [
        "phi(q)*phi(-q) - phi(-q^2)^2",
        "phi(-q) - phi(q^4) + 2*q*psi(q^8)",
        "phi(-q)^2 - phi(q^2)^2 + 4*q*psi(q^4)^2",
        "phi(q^4)^2 - 4*q^2*psi(q^8)^2 - phi(-q^2)^2",
        "psi(q) - f(q^3, q^6) - q*psi(q^9)",
        "phi(-q) - phi(-q^9) + 2*q*f(-q^3, -q^15)",
        "f(-q, -q^2) - E(1)",
        "2*ext(v0(), 4, 0) - phi(q)^2/phi(-q) - 1",
        "ext(v0(), 8, 2) - 2*E(2)^4*E(4)^5/(E(1)^6*E(8)^2)",
        "sub(psi(q), 4) - psi(q^4)",
        "sub(ext(phi(q), 2, 0), 2) - H(phi(q))",
    ] {
        assert!(eval_str(text, &zz).unwrap().is_zero(), "{text}");
    }
}

#[test]
fn evaluation_is_ring_natural() {
    for m in [2u64, 8, 13, 27, 40, 4_492_800, 1 << 62] {
        let modulus = BigUint::from(m);
        for text in CORPUS {
            let exact = eval_str(text, &ctx(RingTag::Integer, 60)).unwrap();
            let reduced = eval_str(text, &ctx(RingTag::modular(m).unwrap(), 60)).unwrap();
            assert_eq!(exact.reduce_mod(&modulus).unwrap(), reduced, "{text} mod {m}");
        }
    }
}

#[test]
fn errors() {
    let zz = ctx(RingTag::Integer, 10);
    for (text, offset) in [("phi(q,q)", 0), ("1 + foo(q)", 4), ("(1 + q", 6), ("q^", 2), ("1 $ q", 2), ("psi(-q)", 0)] {
        match eval_str(text, &zz) {
            Err(QexprError::Parse(e)) => assert_eq!(e.offset, offset, "{text}: {e}"),
            other => panic!("{text}: expected a parse error, got {other:?}"),
        }
    }
    assert!(matches!(eval_str("1/(2 + q)", &zz), Err(QexprError::Eval(SeriesError::NonUnit(..)))));
    let z8 = ctx(RingTag::modular(8u32).unwrap(), 10);
    assert!(eval_str("1/(3 + q)", &z8).is_ok());
    assert!(matches!(eval_str("1/(2 + q)", &z8), Err(QexprError::Eval(SeriesError::NonUnit(..)))));
    assert!(EvalContext::new(RingTag::Integer, 0).is_err());
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (prop::bool::ANY, 1usize..6).prop_map(|(neg, k)| if neg { Monomial::neg(k) } else { Monomial::pos(k) })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..20).prop_map(|n| Expr::Int(BigInt::from(n))),
        (0usize..6).prop_map(Expr::QPower),
        monomial().prop_map(|m| Expr::Call(Builtin::Phi, vec![Arg::Monomial(m)])),
        (1usize..4).prop_map(|k| Expr::Call(Builtin::Psi, vec![Arg::Monomial(Monomial::pos(k))])),
        (monomial(), monomial()).prop_map(|(a, b)| Expr::Call(Builtin::F, vec![Arg::Monomial(a), Arg::Monomial(b)])),
        (1i64..4).prop_map(|k| Expr::Call(Builtin::E, vec![Arg::Int(k)])),
        Just(Expr::Call(Builtin::V0, vec![])),
        (prop::bool::ANY, 1i64..3, 1i64..3, prop::option::of(0i64..4)).prop_map(|(neg, r, step, n)| Expr::Call(
            Builtin::Poch,
            vec![Arg::Int(if neg { -1 } else { 1 }), Arg::Int(r), Arg::Int(step), n.map_or(Arg::Inf, Arg::Int)]
        )),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), -3i64..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            inner.clone().prop_map(|a| Expr::Call(Builtin::H, vec![Arg::Expr(a)])),
            (inner.clone(), 1i64..4, 0i64..4)
                .prop_map(|(a, p, r)| Expr::Call(Builtin::Ext, vec![Arg::Expr(a), Arg::Int(p), Arg::Int(r % p)])),
            (inner, 1i64..4).prop_map(|(a, k)| Expr::Call(Builtin::Sub, vec![Arg::Expr(a), Arg::Int(k)])),
        ]
    })
}

proptest! {
    #[test]
    fn printed_ast_reparses_identically(e in expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), e);
    }

    #[test]
    fn random_expressions_are_ring_natural(e in expr(), m in prop::sample::select(vec![3u64, 16, 27, 1000])) {
        let exact = evaluate(&e, &ctx(RingTag::Integer, 12));
        let reduced = evaluate(&e, &ctx(RingTag::modular(m).unwrap(), 12));
        if let (Ok(x), Ok(y)) = (exact, reduced) {
            prop_assert_eq!(x.reduce_mod(&BigUint::from(m)).unwrap(), y);
        }
    }
}
