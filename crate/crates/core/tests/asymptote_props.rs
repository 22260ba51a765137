use linefield::exact_arith::{rat, Rational};
use linefield::field_core::{Charge, ChargeSystem};
use linefield::moments_asymptotes::{
    asymptote_directions, build_asymptote_polys, critical_index, moments, Verdict,
};
use proptest::prelude::*;

/// Taylor coefficients of `(1 + (b+t)^2)^{-3/2}` around `t = 0`, from the
/// recurrence implied by `u w' = -3/2 u' w`.
fn taylor_inv_pow(b: f64, n: usize) -> Vec<f64> {
    let alpha = -1.5;
    let c0 = 1.0 + b * b;
    let c1 = 2.0 * b;
    let mut w = vec![c0.powf(alpha)];
    for k in 0..n {
        let wk = w[k];
        let wkm = if k > 0 { w[k - 1] } else { 0.0 };
        let num = alpha * c1 * wk + 2.0 * alpha * wkm - k as f64 * c1 * wk - (k as f64 - 1.0) * wkm;
        w.push(num / ((k as f64 + 1.0) * c0));
    }
    w
}

/// Taylor coefficients of `(b+t)^k (1 + (b+t)^2)^{-3/2}`.
fn taylor_with_power(b: f64, k: usize, n: usize) -> Vec<f64> {
    let w = taylor_inv_pow(b, n);
    let mut binom = vec![1.0f64; k + 1];
    for i in 1..=k {
        binom[i] = binom[i - 1] * (k - i + 1) as f64 / i as f64;
    }
    let pw: Vec<f64> = (0..=k).map(|i| binom[i] * b.powi((k - i) as i32)).collect();
    (0..=n)
        .map(|m| (0..=m.min(k)).map(|i| pw[i] * w[m - i]).sum())
        .collect()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn assert_close(a: f64, b: f64, what: &str) {
    let scale = a.abs().max(b.abs()).max(1e-300);
    assert!((a - b).abs() <= 1e-9 * scale, "{what}: {a} vs {b}");
}

#[test]
fn families_match_taylor_derivatives() {
    let points: Vec<Rational> = (0..10).map(|i| rat(2 * i - 9, 7)).collect();
    for l in 0..=10 {
        let fam = build_asymptote_polys(l);
        let denom_exp = (2 * l + 3) as f64 / 2.0;
        for b in &points {
            let bf = linefield::exact_arith::rational::to_f64(b);
            let den = (1.0 + bf * bf).powf(denom_exp);
            let lf = factorial(l);
            let q = taylor_inv_pow(bf, l)[l] * lf;
            assert_close(fam.q.eval_f64(bf) / den, q, &format!("Q L={l} b={bf}"));
            let p = taylor_with_power(bf, 1, l)[l] * lf;
            assert_close(fam.p.eval_f64(bf) / den, p, &format!("P L={l} b={bf}"));
            let c = taylor_with_power(bf, l + 2, l)[l] * lf;
            assert_close(fam.num_c.eval_f64(bf) / den, c, &format!("C L={l} b={bf}"));
            let d = taylor_with_power(bf, l + 1, l)[l] * lf;
            assert_close(fam.num_d.eval_f64(bf) / den, d, &format!("D L={l} b={bf}"));
        }
    }
}

/// `a_j = (-1)^j binom(L, j)` at `x_j = j+1` kills every moment below `L`.
fn system_with_index(l: usize) -> ChargeSystem {
    let mut c = 1i64;
    let charges = (0..=l)
        .map(|j| {
            let a = if j % 2 == 0 { c } else { -c };
            c = c * (l - j) as i64 / (j as i64 + 1);
            Charge::new(rat(j as i64 + 1, 1), rat(a, 1))
        })
        .collect();
    ChargeSystem::new(charges).unwrap()
}

#[test]
fn no_overlap_up_to_twelve() {
    for l in 0..=12 {
        let sys = system_with_index(l);
        let r = asymptote_directions(&sys).unwrap();
        assert_eq!(r.critical.l, l);
        assert_ne!(r.verdict, Verdict::OverlapFound, "L={l}");
        assert!(r.type_i_coprime && r.type_ii_no_common_root, "L={l}");
        assert!(r.directions_y.iter().any(|d| d.domain == linefield::moments_asymptotes::DirectionDomain::Axis));
    }
}

proptest! {
    #[test]
    fn critical_index_below_charge_count(
        m in prop::collection::btree_map(1i64..=30, (-6i64..=6).prop_filter("nonzero", |a| *a != 0), 1..=6)
    ) {
        let sys = ChargeSystem::new(m.into_iter().map(|(x, a)| Charge::new(rat(x, 3), rat(a, 1))).collect()).unwrap();
        let ci = critical_index(&sys).unwrap();
        prop_assert!(ci.l < sys.len());
        let mv = moments(&sys);
        prop_assert_eq!(mv.values.len(), sys.len() + 1);
        prop_assert!(mv.values[..ci.l].iter().all(|v| *v == rat(0, 1)));
    }

    #[test]
    fn moments_are_linear(
        m in prop::collection::btree_map(1i64..=30, (-6i64..=6).prop_filter("nonzero", |a| *a != 0), 1..=5),
        c in (-7i64..=7).prop_filter("nonzero", |c| *c != 0),
    ) {
        let sys = ChargeSystem::new(m.into_iter().map(|(x, a)| Charge::new(rat(x, 2), rat(a, 1))).collect()).unwrap();
        let c = rat(c, 5);
        let a = moments(&sys);
        let b = moments(&sys.scaled(&c).unwrap());
        for (u, v) in a.values.iter().zip(&b.values) {
            prop_assert_eq!(u * &c, v.clone());
        }
    }
}
