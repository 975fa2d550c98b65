use std::sync::Arc;

use normform::bounds::{degree_bound, r_hat, QuadExact};
use normform::polyring::DegreeRange;
use normform::quadfield::{classify, hilbert_data, ideal_class_number, InfinitePlace};
use normform::zeta::class_number_report;
use normform::{Config, FieldSpec};

#[test]
fn r_hat_dominates_exact_r() {
    let config = Config::default();
    for (p, max_deg) in [(3u64, 4usize), (5, 3)] {
        let f = Arc::new(FieldSpec::prime(p).unwrap());
        for n in 1..=max_deg {
            for d in DegreeRange::exact(n, false)
                .iter(&f)
                .filter(|d| d.is_squarefree())
            {
                let ext = classify(&d).unwrap();
                if ext.infinite_place == InfinitePlace::Inert {
                    continue;
                }
                let rep = class_number_report(&ext, &config).unwrap();
                assert!(rep.counts.within_weil_bound(ext.genus_k));
                let r = ideal_class_number(&ext, rep.h_k, &config).unwrap();
                let hat = r_hat(p, ext.deg_d);
                assert!(QuadExact::integer(r) <= hat, "{d}: r = {r} > {hat}");
                let exact = degree_bound(p, ext.deg_d, &QuadExact::integer(r));
                assert!(exact <= degree_bound(p, ext.deg_d, &hat));
                let hd = hilbert_data(&ext, r).unwrap();
                if ext.deg_d >= 3 {
                    assert!(hd.riemann_hurwitz_holds(&ext), "{d}");
                }
            }
        }
    }
}

#[test]
fn exact_r_bound_never_exceeds_r_hat_bound() {
    for q in [3u64, 5, 7] {
        for deg in 1..=20u32 {
            let hat = r_hat(q, deg);
            let top = degree_bound(q, deg, &hat);
            for r in [1i64, 2, 7, 100] {
                let r = QuadExact::integer(r);
                if r <= hat {
                    assert!(degree_bound(q, deg, &r) <= top);
                }
            }
        }
    }
}
