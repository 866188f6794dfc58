use std::sync::OnceLock;

use curveform::hopf::HopfAlgebra;
use curveform::nodal::{b_decompose, basis_words_up_to};
use curveform::rewrite::{NfCache, Strategy as Reduction};
use curveform::sample::{random_element, random_word, rng};
use curveform::{build_algebra, parse_expr, CurvePoint, Letter, NcPoly, NodalAlgebra, Rational, Scalar, TensorPoly, Word};
use proptest::prelude::*;

fn alg() -> &'static NodalAlgebra {
    static ALG: OnceLock<NodalAlgebra> = OnceLock::new();
    ALG.get_or_init(|| build_algebra(&CurvePoint::from_t(&Rational::from(2))).unwrap())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| Scalar::new(a, b))
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..5, 0..=max_len)
        .prop_map(|v| v.into_iter().map(|i| Letter::ALL[i]).collect())
}

fn poly(max_len: usize) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((scalar(), word(max_len)), 0..4).prop_map(NcPoly::from_terms)
}

proptest! {
    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn root_is_sixth_root_of_unity(a in scalar()) {
        let r = Scalar::root();
        prop_assert_eq!(r.pow(6), Scalar::one());
        prop_assert_eq!(&r + &r.inv().unwrap(), Scalar::one());
        prop_assert_eq!(&a * &r.pow(6), a);
    }

    #[test]
    fn free_product_is_associative(f in poly(3), g in poly(3), h in poly(3)) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn print_then_parse_round_trips(f in poly(5)) {
        let point = alg().point();
        let text = f.to_string();
        prop_assert_eq!(parse_expr(&text, point).unwrap(), f, "{}", text);
    }

    #[test]
    fn pure_tensors_multiply_legwise(f in poly(2), g in poly(2), h in poly(2), k in poly(2)) {
        let left = TensorPoly::pure(&[&f, &g]).mul(&TensorPoly::pure(&[&h, &k])).unwrap();
        prop_assert_eq!(left, TensorPoly::pure(&[&f.mul(&h), &g.mul(&k)]));
    }

    #[test]
    fn normal_form_is_associative_and_idempotent(f in poly(3), g in poly(3), h in poly(3)) {
        let alg = alg();
        let left = alg.mul(&alg.mul(&f, &g).unwrap(), &h).unwrap();
        let right = alg.mul(&f, &alg.mul(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(alg.nf(&left).unwrap(), left);
    }

    #[test]
    fn b_decomposition_is_linear(f in poly(4), g in poly(4), c in scalar()) {
        let alg = alg();
        let sum = &f + &g.scale(&c);
        let lhs = b_decompose(&sum, alg).unwrap();
        let fd = b_decompose(&f, alg).unwrap();
        let gd = b_decompose(&g.scale(&c), alg).unwrap();
        prop_assert_eq!(lhs, fd.add(&gd));
    }
}

#[test]
fn strategies_agree_on_random_words() {
    let alg = alg();
    let (left_cache, right_cache) = (NfCache::new(), NfCache::new());
    let mut r = rng(2024);
    for _ in 0..1000 {
        let w = random_word(&mut r, 10);
        let f = NcPoly::word(w.clone());
        let left = alg.system().normal_form_memo(&f, alg.fuel(), Reduction::Leftmost, &left_cache).unwrap();
        let right = alg.system().normal_form_memo(&f, alg.fuel(), Reduction::Rightmost, &right_cache).unwrap();
        assert_eq!(left, right, "{w}");
        assert_eq!(left, alg.nf(&f).unwrap(), "{w}");
    }
}

#[test]
fn unmemoised_strategies_agree_on_short_words() {
    let alg = alg();
    let mut r = rng(77);
    for _ in 0..300 {
        let w = random_word(&mut r, 6);
        let f = NcPoly::word(w.clone());
        let left = alg.system().normal_form_with(&f, alg.fuel(), Reduction::Leftmost).unwrap();
        let right = alg.system().normal_form_with(&f, alg.fuel(), Reduction::Rightmost).unwrap();
        assert_eq!(left, right, "{w}");
    }
}

#[test]
fn antipode_reverses_products() {
    let alg = alg();
    let hopf = HopfAlgebra::new(alg);
    let words = basis_words_up_to(3);
    let mut r = rng(5);
    use rand::Rng;
    for _ in 0..150 {
        let u = NcPoly::word(words[r.gen_range(0..words.len())].clone());
        let v = NcPoly::word(words[r.gen_range(0..words.len())].clone());
        let s_uv = hopf.antipode(&alg.mul(&u, &v).unwrap()).unwrap();
        let sv_su = alg.mul(&hopf.antipode(&v).unwrap(), &hopf.antipode(&u).unwrap()).unwrap();
        assert_eq!(s_uv, sv_su, "u = {u}, v = {v}");
    }
}

#[test]
fn antipode_squared_is_conjugation_by_group_likes() {
    let alg = alg();
    let hopf = HopfAlgebra::new(alg);
    let point = alg.point();
    let s2 = |s: &str| {
        let f = parse_expr(s, point).unwrap();
        hopf.antipode(&hopf.antipode(&f).unwrap()).unwrap()
    };
    // S(x) = q - (x - q)g, S(g) = a  =>  S^2(x) = a x g
    assert_eq!(s2("x"), alg.nf(&parse_expr("a*x*a^-1", point).unwrap()).unwrap());
    // S(b^-1) = b  =>  S^2(y) = b y b^-1
    assert_eq!(s2("y"), alg.nf(&parse_expr("b*y*a^-3*b", point).unwrap()).unwrap());
    for g in ["a", "a^-1", "b"] {
        assert_eq!(s2(g), parse_expr(g, point).unwrap());
    }
    let s4 = hopf.antipode(&hopf.antipode(&s2("x")).unwrap()).unwrap();
    assert_eq!(s4, alg.nf(&parse_expr("a^2*x*a^-2", point).unwrap()).unwrap());
}

#[test]
fn random_elements_round_trip_through_decomposition() {
    let alg = alg();
    let mut r = rng(9);
    for _ in 0..200 {
        let f = random_element(&mut r, alg.point(), 6);
        let dec = b_decompose(&f, alg).unwrap();
        assert_eq!(dec.recompose(alg).unwrap(), alg.nf(&f).unwrap());
    }
}
