//! Seeded property suites shared by the `properties` and `acceptance`
//! targets. Each suite runs [`CASES`] cases from a fixed ChaCha seed and
//! returns the number of cases run, or the first failure.

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use quadp3::geometry::{
    birational_curve, chi, delta, line_from_pluecker, pluecker_form, pluecker_of_line, sample_l1_point, Curves, Frac,
    LineP3,
};
use quadp3::linescheme::{bracket_syzygy, BracketRewriter};
use quadp3::multipoly::{MPoly, Monomial, MonomialOrder, VarSet};
use quadp3::pointscheme::projectively_equal;
use quadp3::scalars::{check_generic, RatFunc, Rational, Ring, TowerElem};
use quadp3::towers::Surd;

pub const CASES: u32 = 128;

fn runner(seed: u8) -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn finish(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<u32, String> {
    r.map(|_| CASES).map_err(|e| e.to_string())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
}

fn generic_alpha() -> impl Strategy<Value = Rational> {
    rational().prop_filter("generic alpha", |a| check_generic(a).is_ok())
}

fn xyz() -> Arc<VarSet> {
    VarSet::new(&["x", "y", "z"]).expect("distinct")
}

/// Polynomials in `x, y, z` of degree at most 3 per variable with small
/// integer coefficients.
fn poly() -> impl Strategy<Value = MPoly<Rational>> {
    prop::collection::vec((0u16..3, 0u16..3, 0u16..3, -6i64..=6), 0..6)
        .prop_map(|ts| MPoly::from_terms(&xyz(), ts.into_iter().map(|(a, b, c, k)| (Monomial::from_exps(&[a, b, c]), Rational::from(k)))))
}

fn nonzero_poly() -> impl Strategy<Value = MPoly<Rational>> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials whose coefficients are linear in alpha.
fn alpha_poly() -> impl Strategy<Value = MPoly<RatFunc>> {
    prop::collection::vec((0u16..3, 0u16..3, 0u16..3, -4i64..=4, -4i64..=4), 0..5).prop_map(|ts| {
        MPoly::from_terms(&xyz(), ts.into_iter().map(|(a, b, c, k0, k1)| (Monomial::from_exps(&[a, b, c]), RatFunc::from_coeffs(&[k0, k1]))))
    })
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::GrLex), Just(MonomialOrder::GrevLex)]
}

/// Samples of `V(f1, g1)` are smooth points: `J1` has rank two there.
pub fn jacobian_suite() -> Result<u32, String> {
    let cv = Curves::new();
    let j1 = cv.j1();
    finish(runner(1).run(&(generic_alpha(), rational()), |(a, zeta)| {
        let pt = sample_l1_point(&a, &zeta);
        let coerce = |c: &Rational| TowerElem::from_base(c.clone());
        prop_assert!(cv.f1.specialize(&a).unwrap().eval(&pt, coerce).is_zero());
        prop_assert!(cv.g1.specialize(&a).unwrap().eval(&pt, coerce).is_zero());
        let rows: Vec<Vec<MPoly<Rational>>> = j1.rows().iter().map(|r| r.iter().map(|e| e.specialize(&a).unwrap()).collect()).collect();
        let ja = quadp3::polymat::PolyMatrix::new(&cv.v1, rows).unwrap();
        prop_assert_eq!(ja.rank_at(&pt, coerce).unwrap(), 2);
        Ok(())
    }))
}

fn value(f: &Frac) -> Surd {
    let one = Monomial::one();
    f.num.coeff(&one).mul_ref(&f.den.coeff(&one).try_inv().expect("denominator is a unit"))
}

/// `chi(delta(t)) = t`, `delta(t)` lies on the curve and
/// `delta(chi(delta(t))) = delta(t)` at rational `t`.
pub fn birational_suite() -> Result<u32, String> {
    let vars = VarSet::new(&["x", "z"]).expect("distinct");
    let curve = birational_curve(&vars);
    let t_values = rational().prop_filter("t not in {0, 1, -1}", |t| !t.is_zero() && t.mul_ref(t) != Rational::one());
    finish(runner(2).run(&t_values, |t| {
        let tf = Frac::constant(&vars, Surd::from_base(RatFunc::from(t.clone())));
        let (x, z) = delta(&tf);
        let (xv, zv) = (value(&x), value(&z));
        prop_assert!(curve.eval(&[xv.clone(), zv.clone()], |c| c.clone()).is_zero());
        let back = chi(&x, &z);
        prop_assert_eq!(value(&back), Surd::from_base(RatFunc::from(t.clone())));
        let (x2, z2) = delta(&back);
        prop_assert_eq!(value(&x2), xv);
        prop_assert_eq!(value(&z2), zv);
        Ok(())
    }))
}

fn coords() -> impl Strategy<Value = Vec<Surd>> {
    prop::collection::vec((-9i64..=9, -3i64..=3), 4)
        .prop_map(|v| v.into_iter().map(|(c0, c1)| Surd::from_base(RatFunc::from_coeffs(&[c0, c1]))).collect())
}

/// Lines through two points survive the trip to Pluecker coordinates and
/// back, and bracket forms expand back to what was rewritten.
pub fn pluecker_suite() -> Result<u32, String> {
    let lines = finish(runner(3).run(&(coords(), coords(), -5i64..=5, -5i64..=5), |(a, b, l, m)| {
        let Ok(line) = LineP3::new(a.clone(), b.clone()) else {
            prop_assert!(projectively_equal(&a, &b) || a.iter().all(|c| c.is_zero()) || b.iter().all(|c| c.is_zero()));
            return Ok(());
        };
        let p = pluecker_of_line(&line);
        prop_assert!(pluecker_form(p.coords()).is_zero());
        let back = line_from_pluecker(&p).unwrap();
        prop_assert!(projectively_equal(pluecker_of_line(&back).coords(), p.coords()));
        prop_assert!(back.contains(&a) && back.contains(&b));
        let mix: Vec<Surd> = a.iter().zip(&b).map(|(x, y)| x.mul_ref(&Surd::from_i64(l)).add_ref(&y.mul_ref(&Surd::from_i64(m)))).collect();
        prop_assert!(back.contains(&mix));
        Ok(())
    }))?;
    let rw = BracketRewriter::new();
    let n = rw.n_vars().clone();
    let syz: MPoly<Rational> = bracket_syzygy(&n);
    assert!(rw.expand(&syz).is_zero());
    let lead = syz.leading_term(MonomialOrder::GrevLex).expect("nonzero syzygy").0;
    let quartic = prop::collection::vec((prop::collection::vec(0usize..6, 4), -5i64..=5), 1..5);
    let brackets = finish(runner(4).run(&quartic, |terms| {
        let mut q = MPoly::zero(&n);
        for (idx, c) in &terms {
            let mut exps = [0u16; 6];
            for &i in idx {
                exps[i] += 1;
            }
            q.add_term(Monomial::from_exps(&exps), &Rational::from(*c));
        }
        let uv = rw.expand(&q);
        let r = rw.rewrite(&uv).unwrap();
        prop_assert_eq!(rw.expand(&r), uv);
        // rewritten forms use only standard monomials
        prop_assert!(r.terms().keys().all(|m| !lead.divides(m)));
        Ok(())
    }))?;
    Ok(lines + brackets)
}

/// Division remainders are reduced and reconstruct the dividend;
/// substitution and specialization are ring homomorphisms.
pub fn algebra_suite() -> Result<u32, String> {
    let division = finish(runner(5).run(&(poly(), nonzero_poly(), nonzero_poly(), order()), |(f, d1, d2, ord)| {
        let divisors = [d1.clone(), d2.clone()];
        let (q, r) = f.divide(&divisors, ord).unwrap();
        prop_assert_eq!(&(&(&q[0] * &d1) + &(&q[1] * &d2)) + &r, f);
        let leads: Vec<Monomial> = divisors.iter().map(|d| d.leading_term(ord).unwrap().0).collect();
        prop_assert!(r.terms().keys().all(|m| leads.iter().all(|l| !l.divides(m))));
        Ok(())
    }))?;
    let images = prop::collection::vec(poly(), 3);
    let point = prop::collection::vec(rational(), 3);
    let subst = finish(runner(6).run(&(poly(), poly(), images, point), |(f, g, img, pt)| {
        let phi = |p: &MPoly<Rational>| p.substitute_all(&img).unwrap();
        prop_assert_eq!(phi(&(&f + &g)), &phi(&f) + &phi(&g));
        prop_assert_eq!(phi(&(&f * &g)), &phi(&f) * &phi(&g));
        let id = |c: &Rational| c.clone();
        let at: Vec<Rational> = img.iter().map(|p| p.eval(&pt, id)).collect();
        prop_assert_eq!(phi(&f).eval(&pt, id), f.eval(&at, id));
        Ok(())
    }))?;
    let spec = finish(runner(7).run(&(alpha_poly(), alpha_poly(), generic_alpha()), |(f, g, a)| {
        let s = |p: &MPoly<RatFunc>| p.specialize(&a).unwrap();
        prop_assert_eq!(s(&(&f * &g)), &s(&f) * &s(&g));
        prop_assert_eq!(s(&(&f - &g)), &s(&f) - &s(&g));
        Ok(())
    }))?;
    Ok(division + subst + spec)
}
