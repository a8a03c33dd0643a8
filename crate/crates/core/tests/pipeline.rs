use num_bigint::BigInt;
use proptest::prelude::*;

use reebcycle::algebra::{BaseRing, CoefficientModule, IntegerMatrix, ModuleElement};
use reebcycle::complex::{Cochain, Cocycle};
use reebcycle::cycle::{build_cycle, check_cycle, nontriviality, Labeler};
use reebcycle::generators;
use reebcycle::pq::{pq_verify, special_generic_disc, PseudoQuotient};
use reebcycle::reeb::build_reeb;

fn z() -> CoefficientModule {
    CoefficientModule::integers()
}

fn z2_plus_z2() -> CoefficientModule {
    CoefficientModule::new(BaseRing::Mod2, 2, IntegerMatrix::zeros(2, 0)).unwrap()
}

fn torus_export() -> PseudoQuotient {
    let (_, f) = generators::torus(3, 3).unwrap();
    let (_, zc) = generators::dual_cocycle_torus(3, 3).unwrap();
    let w = build_reeb(&f).unwrap();
    let c = build_cycle(&f, &w, &Labeler::cocycle(z(), zc)).unwrap();
    PseudoQuotient::from_reeb(&w, &c).unwrap()
}

fn octahedron_export() -> PseudoQuotient {
    let f = generators::octahedron_height();
    let w = build_reeb(&f).unwrap();
    let m = CoefficientModule::z2();
    let zero = Cocycle::new(f.source(), &m, Cochain::zero(f.source(), &m, 1)).unwrap();
    let c = build_cycle(&f, &w, &Labeler::cocycle(m, zero)).unwrap();
    PseudoQuotient::from_reeb(&w, &c).unwrap()
}

/// Every labeling of `p` with values in `m`, as long as there are at most
/// `limit` of them.
fn all_labelings(p: &PseudoQuotient, m: &CoefficientModule, limit: usize) -> Vec<PseudoQuotient> {
    let mut b = p.to_builder();
    b.set_module(m.clone());
    let tops: Vec<String> = p.top_cells().iter().map(|&c| p.id(c).to_string()).collect();
    for t in &tops {
        b.label(t, vec![BigInt::from(0); m.rank()]);
    }
    let base = b.build().unwrap();
    let elements = m.elements(16).expect("finite module");
    let total = elements.len().pow(tops.len() as u32);
    assert!(total <= limit, "{total} labelings");
    (0..total)
        .map(|mut code| {
            let labels: Vec<ModuleElement> = (0..tops.len())
                .map(|_| {
                    let e = elements[code % elements.len()].clone();
                    code /= elements.len();
                    e
                })
                .collect();
            base.relabeled(labels).unwrap()
        })
        .collect()
}

#[test]
fn vanishing_top_homology_forces_zero_cycles() {
    let modules = [
        CoefficientModule::z2(),
        CoefficientModule::cyclic(3),
        CoefficientModule::cyclic(4),
        z2_plus_z2(),
    ];
    for p in [special_generic_disc(), octahedron_export()] {
        assert!(p.top_cells().len() <= 12);
        for m in &modules {
            let mut cycles = 0;
            for q in all_labelings(&p, m, 1 << 16) {
                let r = pq_verify(&q).unwrap();
                assert!(r.top_homology().is_zero());
                if r.walls_consistent() && r.check.passed() {
                    cycles += 1;
                    assert!(q.labels().iter().all(|(_, v)| v.is_zero()), "{} over {}", q.id(0), m.describe());
                }
            }
            assert_eq!(cycles, 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundary_shift_keeps_labels(a in 3usize..5, b in 3usize..5, seed in proptest::collection::vec(-3i64..4, 32)) {
        let (_, f) = generators::torus(a, b).unwrap();
        let (_, zc) = generators::dual_cocycle_torus(a, b).unwrap();
        let src = f.source();
        let m = z();
        let mut g = Cochain::zero(src, &m, 0);
        for v in 0..src.count(0) {
            g.set(&m, v, &m.element(&[seed[v % seed.len()]]).unwrap());
        }
        let dg = g.coboundary(src, &m);
        let values: Vec<ModuleElement> =
            zc.cochain().values().iter().zip(dg.values()).map(|(x, y)| m.add(x, y)).collect();
        let shifted = Cocycle::new(src, &m, Cochain::from_values(src, &m, 1, values).unwrap()).unwrap();
        let w = build_reeb(&f).unwrap();
        let c0 = build_cycle(&f, &w, &Labeler::cocycle(m.clone(), zc)).unwrap();
        let c1 = build_cycle(&f, &w, &Labeler::cocycle(m.clone(), shifted)).unwrap();
        prop_assert_eq!(&c0.labels, &c1.labels);
        prop_assert!(check_cycle(&c1, &w).passed());
        prop_assert!(nontriviality(&c1, &w).unwrap().nontrivial);
    }

    #[test]
    fn wall_rules_are_linear(r in 0i64..3, cell in 0usize..64, delta in 1i64..3) {
        let p = torus_export();
        let m = p.module().clone();
        let scaled: Vec<ModuleElement> = p.labels().iter().map(|(_, v)| m.scale_i64(v, r)).collect();
        let q = p.relabeled(scaled.clone()).unwrap();
        let rep = pq_verify(&q).unwrap();
        prop_assert!(rep.walls_consistent());
        prop_assert_eq!(rep.nontrivial, Some(r != 0));

        // one perturbed label breaks some wall
        let mut bad = scaled;
        let k = cell % bad.len();
        bad[k] = m.add(&bad[k], &m.element(&[delta]).unwrap());
        let rep = pq_verify(&p.relabeled(bad).unwrap()).unwrap();
        prop_assert!(!rep.walls_consistent());
        prop_assert_eq!(rep.nontrivial, None);
    }
}
