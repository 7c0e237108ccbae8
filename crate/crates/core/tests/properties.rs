use std::sync::Arc;

use garside::complex_x::{dist, dist_x, gamma_bar_length, preferred_path, Metric, VertexX};
use garside::element::{normalize_by_sweeps, GroupElement};
use garside::normal_form::{left_fraction, prefix_gcd, right_fraction, right_normal_form};
use garside::projection::{check_projection, lambda_pi};
use garside::rigidity::{cyclic_sliding, AxisContext};
use garside::structure::{GarsideStructure, Simple};
use garside::structures::{classical, dual, free_abelian};
use garside::word::parse_word;
use proptest::prelude::*;

fn structures() -> Vec<Arc<GarsideStructure>> {
    vec![
        classical(3).unwrap(),
        classical(4).unwrap(),
        dual(4).unwrap(),
        free_abelian(3).unwrap(),
    ]
}

/// Tokens `(proper simple index, inverted)`, mapped into a structure.
fn tokens(max: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..1000, any::<bool>()), 0..=max)
}

fn element(st: &Arc<GarsideStructure>, toks: &[(usize, bool)]) -> GroupElement {
    let proper: Vec<Simple> = st.proper_simples().collect();
    let word: Vec<(Simple, i64)> = toks
        .iter()
        .map(|&(i, inv)| (proper[i % proper.len()], if inv { -1 } else { 1 }))
        .collect();
    GroupElement::normalize(st, &word).unwrap()
}

/// Independent normalisation: write the product as `Δ⁻ᵐ·P` with `P` a list
/// of simples, using `s⁻¹ = ∂(s)Δ⁻¹` and `yΔ⁻¹ = Δ⁻¹τ⁻¹(y)`, then sweep.
fn oracle(st: &Arc<GarsideStructure>, toks: &[(usize, bool)]) -> GroupElement {
    let proper: Vec<Simple> = st.proper_simples().collect();
    let mut m = 0i64;
    let mut p: Vec<Simple> = Vec::new();
    for &(i, inv) in toks {
        let s = proper[i % proper.len()];
        if inv {
            p.push(st.complement(s));
            p = p.into_iter().map(|x| st.tau_inv(x)).collect();
            m += 1;
        } else {
            p.push(s);
        }
    }
    normalize_by_sweeps(st, -m, &p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_form_is_unique(which in 0usize..4, t in tokens(10)) {
        let st = &structures()[which];
        prop_assert_eq!(element(st, &t), oracle(st, &t));
    }

    #[test]
    fn left_and_right_normal_forms_agree(which in 0usize..4, t in tokens(10)) {
        let st = &structures()[which];
        let g = element(st, &t);
        let r = right_normal_form(&g);
        prop_assert_eq!((r.inf(), r.sup()), (g.inf(), g.sup()));
    }

    #[test]
    fn fractions_are_coprime(which in 0usize..4, t in tokens(10)) {
        let st = &structures()[which];
        let g = element(st, &t);
        for f in [left_fraction(&g), right_fraction(&g)] {
            prop_assert!(f.denominator.is_positive() && f.numerator.is_positive());
            prop_assert!(f.is_coprime());
            prop_assert_eq!(f.reconstruct(), g.clone());
        }
    }

    #[test]
    fn multiplication_is_associative(
        which in 0usize..4, a in tokens(6), b in tokens(6), c in tokens(6)
    ) {
        let st = &structures()[which];
        let (a, b, c) = (element(st, &a), element(st, &b), element(st, &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn inverse_cancels(which in 0usize..4, t in tokens(10)) {
        let st = &structures()[which];
        let g = element(st, &t);
        prop_assert!(g.mul(&g.inverse()).is_identity());
        prop_assert!(g.inverse().mul(&g).is_identity());
    }

    #[test]
    fn triangle_inequality(which in 0usize..4, a in tokens(6), b in tokens(6), c in tokens(6)) {
        let st = &structures()[which];
        let (a, b, c) = (element(st, &a), element(st, &b), element(st, &c));
        for m in [Metric::Gamma, Metric::GammaBar, Metric::X] {
            let (ab, bc, ac) = (dist(&a, &b, m).unwrap(), dist(&b, &c, m).unwrap(), dist(&a, &c, m).unwrap());
            prop_assert!(ac <= ab + bc, "{m:?}: {ac} > {ab} + {bc}");
        }
    }

    #[test]
    fn gamma_bar_formula_matches_search(which in 0usize..4, t in tokens(8)) {
        let st = &structures()[which];
        let g = element(st, &t);
        let e = st.tau_order() as i64;
        let brute = (-40..=40)
            .map(|k| g.mul_delta_power(e * k).word_length())
            .min()
            .unwrap();
        prop_assert_eq!(gamma_bar_length(&g), brute);
    }

    #[test]
    fn preferred_paths_are_equivariant(
        which in 0usize..4, k in tokens(5), g in tokens(6), h in tokens(6)
    ) {
        let st = &structures()[which];
        let (k, g, h) = (element(st, &k), element(st, &g), element(st, &h));
        let path = preferred_path(&g, &h).unwrap();
        prop_assert_eq!(path.len(), dist_x(&path.from, &path.to));
        let moved = preferred_path(&k.mul(&g), &k.mul(&h)).unwrap();
        let translated: Vec<VertexX> = path.vertices.iter().map(|v| v.translate(&k)).collect();
        prop_assert_eq!(moved.vertices, translated);
        let p = VertexX::new(&prefix_gcd(&g.underline(), &h.underline()));
        prop_assert!(path.vertices.contains(&p));
    }

    #[test]
    fn transcript_reconstructs_product(which in 0usize..4, t in tokens(8), s in 0usize..1000) {
        let st = &structures()[which];
        let g = element(st, &t);
        let s = st.simple(s % st.simple_count()).unwrap();
        let (gs, carries) = g.right_mult_simple(s);
        prop_assert_eq!(gs.clone(), g.mul(&GroupElement::from_simple(st, s)));
        prop_assert!(carries.len() <= g.factors().len());
    }

    #[test]
    fn sliding_is_monotone_conjugation(which in 0usize..4, t in tokens(8)) {
        let st = &structures()[which];
        let g = element(st, &t);
        let (next, a) = cyclic_sliding(&g);
        prop_assert_eq!(g.conjugate_by(&a), next.clone());
        prop_assert!(next.inf() >= g.inf() && next.sup() <= g.sup());
    }

    #[test]
    fn projection_predicates_and_delta_invariance(t in tokens(8), d in -6i64..=6) {
        let b3 = classical(3).unwrap();
        let ctx = AxisContext::new(&parse_word(&b3, "s1").unwrap()).unwrap();
        let h = element(&b3, &t);
        let r = lambda_pi(&ctx, &h);
        prop_assert!(check_projection(&ctx, &h, &r));
        prop_assert_eq!(lambda_pi(&ctx, &h.mul_delta_power(d)).lambda, r.lambda);
    }
}

/// In `ℤ³`, `inf` is the smallest coordinate, `sup` the largest, and the
/// `k`-th factor is the indicator of the coordinates exceeding `inf + k − 1`.
#[test]
fn free_abelian_normal_form_is_thresholds() {
    let z3 = free_abelian(3).unwrap();
    let mut checked = 0;
    for a in -5i64..5 {
        for b in -5i64..5 {
            for c in -5i64..5 {
                let v = [a, b, c];
                let word = format!("s1^{a} s2^{b} s3^{c}");
                let g = parse_word(&z3, &word).unwrap();
                let lo = *v.iter().min().unwrap();
                let hi = *v.iter().max().unwrap();
                assert_eq!((g.inf(), g.sup()), (lo, hi), "{word}");
                for (k, &f) in g.factors().iter().enumerate() {
                    let level = lo + k as i64 + 1;
                    let bits: Vec<String> = (0..3)
                        .filter(|&i| v[i] >= level)
                        .map(|i| format!("s{}", i + 1))
                        .collect();
                    let expect = parse_word(&z3, &bits.join(" ")).unwrap();
                    assert_eq!(GroupElement::from_simple(&z3, f), expect, "{word}");
                }
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 1000);
}
