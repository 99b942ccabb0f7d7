use std::collections::BTreeMap;

use derivedlab::algebra::{is_injective, is_projective, is_quasi_frobenius, preset, simples};
use derivedlab::complex::{cohomology, is_quasi_iso, ChainMap};
use derivedlab::derived::{hom_d, RoofMorphism};
use derivedlab::hereditary::{decompose_hereditary, hom_formula_build, hom_formula_eval, ZeroDiffComplex};
use derivedlab::random::*;
use derivedlab::linalg::ZmMatrix;
use derivedlab::resolution::{ext, ext1_to_ses, ses_to_ext1};
use proptest::prelude::*;

const PRESETS: [&str; 6] = ["dual_numbers:2", "zmod:4", "zmod:6", "path_algebra:1->2", "upper_triangular:2:2", "trunc_poly:2:3"];

fn config() -> ProptestConfig {
    ProptestConfig { cases: 32, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn yoneda_round_trip(seed in any::<u64>(), which in 0usize..6) {
        let a = preset(PRESETS[which]).unwrap();
        let mut r = rng(seed);
        let m = random_nonzero_module(&mut r, &a, 3);
        let n = random_module(&mut r, &a, 3);
        let g = ext(&m, &n, 1).unwrap();
        prop_assume!(g.size() <= 64);
        for c in g.elements() {
            let ses = ext1_to_ses(&c).unwrap();
            prop_assert_eq!(ses.mid().size(), m.size() * n.size());
            prop_assert_eq!(ses.is_split().unwrap(), g.is_trivial(&c).unwrap());
            let back = ses_to_ext1(&ses, &c.resolution).unwrap();
            prop_assert_eq!(g.coords(&back), g.coords(&c));
        }
    }

    #[test]
    fn qf_means_projective_iff_injective(seed in any::<u64>(), which in 0usize..6) {
        let a = preset(PRESETS[which]).unwrap();
        prop_assume!(is_quasi_frobenius(&a).unwrap());
        let mut r = rng(seed);
        let m = random_module(&mut r, &a, 4);
        prop_assert_eq!(is_projective(&m).unwrap(), is_injective(&m).unwrap());
    }

    #[test]
    fn hereditary_decomposition(seed in any::<u64>(), p in 0usize..2) {
        let a = preset(["path_algebra:1->2", "path_algebra:1->2,3->2"][p]).unwrap();
        let mut r = rng(seed);
        let m = random_complex(&mut r, &a, -1, 1, 4);
        let d = decompose_hereditary(&m).unwrap();
        prop_assert!(is_quasi_iso(&d.to_m) && is_quasi_iso(&d.to_zero));
        for n in m.degrees() {
            let h = cohomology(&m, n);
            prop_assert_eq!(&d.zero.module(n), h.module());
        }
    }

    #[test]
    fn formula_ignores_the_roof_representative(seed in any::<u64>()) {
        let a = preset("path_algebra:1->2").unwrap();
        let mut r = rng(seed);
        let x = ZeroDiffComplex::new(&a, 0, vec![random_module(&mut r, &a, 2), random_module(&mut r, &a, 2)]).unwrap();
        let y = ZeroDiffComplex::new(&a, -1, vec![random_module(&mut r, &a, 2), random_module(&mut r, &a, 2)]).unwrap();
        let h = hom_d(&x.to_complex(), &y.to_complex(), 6).unwrap();
        let v = random_in(&mut r, h.group());
        let roof = h.roof(&v);
        // f + k∘d is the same morphism since d_Y = 0
        let p = &roof.apex;
        let maps: BTreeMap<i64, ZmMatrix> = p
            .degrees()
            .map(|n| {
                let k = random_hom(&mut r, &p.module(n + 1), &y.to_complex().module(n));
                (n, roof.f.mat(n).add(&k.mat.mul(&p.diff_mat(n))).reduced_rows(&y.module(n).add.orders))
            })
            .collect();
        let f2 = ChainMap::new(p, roof.target(), maps).unwrap();
        let other = RoofMorphism::new(roof.s.clone(), f2).unwrap();
        let d1 = hom_formula_eval(&roof, &x, &y).unwrap();
        let d2 = hom_formula_eval(&other, &x, &y).unwrap();
        prop_assert!(d1.same(&d2).unwrap());
        let rebuilt = hom_formula_build(&x, &y, &d1).unwrap();
        prop_assert!(hom_formula_eval(&rebuilt, &x, &y).unwrap().same(&d1).unwrap());
        prop_assert_eq!(h.class_of_roof(&rebuilt).unwrap(), v);
    }
}

#[test]
fn non_qf_presets_separate_the_classes() {
    for name in ["upper_triangular:2:2", "path_algebra:1->2"] {
        let a = preset(name).unwrap();
        assert!(!is_quasi_frobenius(&a).unwrap());
        let split = simples(&a).unwrap().iter().any(|s| is_projective(s).unwrap() != is_injective(s).unwrap());
        assert!(split, "{name}");
    }
}
