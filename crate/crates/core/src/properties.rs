//! Property suites over the public API.

use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;

use crate::flatten::{partial_space, shift_basis};
use crate::oracle::bareiss_determinant;
use crate::poly::format::{from_json, parse_text, to_json, to_text};
use crate::poly::make_determinant;
use crate::{FlattenConfig, Monomial, Rational, SparsePolynomial, Substitution, Var, VariableTable};

/// Largest variable first under the engine's order.
fn vars() -> Vec<Var> {
    vec![Var::x(1, 1), Var::x(1, 2), Var::x(2, 1), Var::x(2, 2), Var::y(1, 1), Var::ELL]
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn exps(len: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, len)
}

fn monomial(e: &[u32]) -> Monomial {
    Monomial::from_pairs(vars().into_iter().zip(e.iter().copied()).filter(|(_, e)| *e > 0))
}

fn homogeneous(degree: u32, nvars: usize) -> impl Strategy<Value = SparsePolynomial> {
    let term = (prop::collection::vec(0..nvars, degree as usize), -4i64..=4);
    prop::collection::vec(term, 1..6).prop_map(move |terms| {
        SparsePolynomial::from_terms(terms.into_iter().map(|(picks, c)| {
            let mut e = vec![0u32; vars().len()];
            for p in picks {
                e[p] += 1;
            }
            (monomial(&e), rat(c))
        }))
    })
}

fn linear_sub(nvars: usize) -> impl Strategy<Value = Substitution> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, nvars), nvars).prop_map(move |rows| {
        let vs = vars();
        let mut sub = Substitution::new();
        for (i, row) in rows.into_iter().enumerate() {
            let form = SparsePolynomial::from_terms(row.into_iter().enumerate().map(|(j, c)| (Monomial::var(vs[j]), rat(c))));
            sub.set(vs[i], form).unwrap();
        }
        sub
    })
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn shifted_rank(p: &SparsePolynomial, k: u32, tau: u32, ambient: &VariableTable, cfg: &FlattenConfig) -> usize {
    let parts = partial_space(p, k, cfg).unwrap();
    shift_basis(&parts, tau, ambient, cfg).unwrap().rank()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_order_is_graded_lex(a in exps(6, 3), b in exps(6, 3)) {
        prop_assert_eq!(monomial(&a).cmp(&monomial(&b)), grlex(&a, &b));
    }

    #[test]
    fn substitution_composes(p in homogeneous(3, 4), a in linear_sub(4), b in linear_sub(4)) {
        let step = p.substitute(&a).unwrap().substitute(&b).unwrap();
        let once = p.substitute(&a.then(&b).unwrap()).unwrap();
        prop_assert_eq!(step, once);
    }

    #[test]
    fn determinant_matches_bareiss(n in 1u32..=6, seed in prop::collection::vec(-5i64..=5, 36)) {
        let entry = |s: u32, t: u32| rat(seed[((s - 1) * 6 + (t - 1)) as usize]);
        let det = make_determinant(n).unwrap();
        let value = det.evaluate(|v| match v.kind() {
            crate::poly::VarKind::Matrix { row, col } => entry(row, col),
            _ => unreachable!(),
        });
        let matrix: Vec<Vec<Rational>> = (1..=n).map(|s| (1..=n).map(|t| entry(s, t)).collect()).collect();
        prop_assert_eq!(value, bareiss_determinant(&matrix));
    }

    #[test]
    fn substitution_never_raises_shifted_rank(p in homogeneous(3, 4), a in linear_sub(4), k in 0u32..=3, tau in 0u32..=2) {
        let ambient = VariableTable::new(vars()[..4].to_vec());
        let cfg = FlattenConfig::exact();
        let q = p.substitute(&a).unwrap();
        prop_assert!(shifted_rank(&q, k, tau, &ambient, &cfg) <= shifted_rank(&p, k, tau, &ambient, &cfg));
    }

    #[test]
    fn prime_rank_never_exceeds_exact_rank(p in homogeneous(4, 5), k in 0u32..=4, tau in 0u32..=2, seed in any::<u64>()) {
        use rand::SeedableRng;
        let ambient = VariableTable::new(vars()[..5].to_vec());
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let modp = shifted_rank(&p, k, tau, &ambient, &FlattenConfig::random_prime(&mut rng));
        let exact = shifted_rank(&p, k, tau, &ambient, &FlattenConfig::exact());
        prop_assert!(modp <= exact);
    }

    #[test]
    fn text_and_json_round_trip(p in homogeneous(3, 6)) {
        prop_assert_eq!(&parse_text(&to_text(&p)).unwrap(), &p);
        prop_assert_eq!(&from_json(&to_json(&p)).unwrap(), &p);
    }
}
