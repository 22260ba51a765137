use linefield::exact_arith::{rat, Rational};
use linefield::field_core::{
    eval_field, eval_kernel, eval_kernel_partials, kernel_f64, Charge, ChargeSystem, EvalPoint,
};
use proptest::prelude::*;

const PREC: u32 = 128;

fn system_strategy(max_m: usize) -> impl Strategy<Value = ChargeSystem> {
    prop::collection::btree_map(1i64..=40, (-9i64..=9).prop_filter("nonzero", |a| *a != 0), 1..=max_m)
        .prop_map(|m| {
            let charges = m
                .into_iter()
                .map(|(x, a)| Charge::new(rat(x, 4), rat(a, 2)))
                .collect();
            ChargeSystem::new(charges).unwrap()
        })
}

fn point_strategy() -> impl Strategy<Value = (Rational, Rational)> {
    // odd numerators over 64 never land on a charge at a multiple of 1/4
    ((-300i64..=900), (-300i64..=300)).prop_map(|(x, y)| (rat(2 * x + 1, 64), rat(2 * y + 1, 64)))
}

fn pt(x: &Rational, y: &Rational, prec: u32) -> EvalPoint {
    EvalPoint::new(x.clone(), y.clone(), prec).unwrap()
}

proptest! {
    #[test]
    fn amplitude_scaling_is_linear(sys in system_strategy(4), (x, y) in point_strategy(), c in -5i64..=5) {
        prop_assume!(c != 0);
        let c = rat(c, 3);
        let p = pt(&x, &y, PREC);
        let base = eval_field(&sys, &p).unwrap();
        let scaled = eval_field(&sys.scaled(&c).unwrap(), &p).unwrap();
        let cf = linefield::exact_arith::rational::to_f64(&c);
        let tol = 1e-12 * (1.0 + base.x_f64().abs() + base.y_f64().abs());
        prop_assert!((scaled.x_f64() - cf * base.x_f64()).abs() <= tol * cf.abs());
        prop_assert!((scaled.y_f64() - cf * base.y_f64()).abs() <= tol * cf.abs());
    }

    #[test]
    fn y_vanishes_exactly_on_axis(sys in system_strategy(4), (x, _y) in point_strategy()) {
        let f = eval_field(&sys, &pt(&x, &rat(0, 1), PREC)).unwrap();
        prop_assert!(f.y.lo.is_zero() && f.y.hi.is_zero());
    }

    #[test]
    fn mirror_symmetry(amps in prop::collection::vec((-9i64..=9).prop_filter("nonzero", |a| *a != 0), 1..=3),
                       gaps in prop::collection::vec(1i64..=6, 3),
                       (x, y) in point_strategy()) {
        // palindromic amplitudes at positions symmetric about their midpoint
        let mut xs = vec![rat(1, 1)];
        for g in gaps.iter().take(amps.len() - 1) {
            let last = xs.last().unwrap().clone();
            xs.push(last + rat(*g, 1));
        }
        let mut charges: Vec<Charge> = xs.iter().zip(&amps).map(|(x, a)| Charge::new(x.clone(), rat(*a, 1))).collect();
        let span = xs.last().unwrap() - xs.first().unwrap();
        let right_start = xs.last().unwrap() + rat(1, 1);
        for (x, a) in xs.iter().zip(&amps).rev() {
            charges.push(Charge::new(&right_start + (&span - (x - rat(1, 1))), rat(*a, 1)));
        }
        let sys = ChargeSystem::new(charges).unwrap();
        let mid = (sys.min_position() + sys.max_position()) / rat(2, 1);
        let xr = &mid * rat(2, 1) - &x;
        let a = eval_field(&sys, &pt(&x, &y, PREC)).unwrap();
        let b = eval_field(&sys, &pt(&xr, &y, PREC)).unwrap();
        let tol = 1e-12 * (1.0 + a.x_f64().abs() + a.y_f64().abs());
        prop_assert!((a.x_f64() + b.x_f64()).abs() <= tol);
        prop_assert!((a.y_f64() - b.y_f64()).abs() <= tol);
    }

    #[test]
    fn first_kernel_is_the_field(sys in system_strategy(4), (x, y) in point_strategy()) {
        let p = pt(&x, &y, PREC);
        prop_assert_eq!(eval_field(&sys, &p).unwrap(), eval_kernel(&sys, &p, 1).unwrap());
    }

    #[test]
    fn mixed_partials_agree_and_match_next_kernel(sys in system_strategy(4), (x, y) in point_strategy(), m in 1u32..=4) {
        let p = pt(&x, &y, PREC);
        let j = eval_kernel_partials(&sys, &p, m).unwrap();
        prop_assert_eq!(&j.xy, &j.yx);
        let next = eval_kernel(&sys, &p, m + 1).unwrap();
        let yf: f64 = linefield::exact_arith::rational::to_f64(&y);
        let predicted = -((2 * m + 1) as f64) * yf * next.x_f64();
        let scale = 1.0 + predicted.abs() + j.xy.mid_f64().abs();
        prop_assert!((j.xy.mid_f64() - predicted).abs() <= 1e-12 * scale);
    }
}

/// Central difference of `X_m` in `y` at 256 bits, so roundoff is far below
/// the truncation error being measured.
fn fd_error(sys: &ChargeSystem, x: &Rational, y: &Rational, m: u32, h: &Rational) -> f64 {
    let up = eval_kernel(sys, &pt(x, &(y + h), 256), m).unwrap();
    let dn = eval_kernel(sys, &pt(x, &(y - h), 256), m).unwrap();
    let hf = linefield::exact_arith::rational::to_f64(h);
    let fd = (up.x.mid_f64() - dn.x.mid_f64()) / (2.0 * hf);
    let next = eval_kernel(sys, &pt(x, y, 256), m + 1).unwrap();
    let yf = linefield::exact_arith::rational::to_f64(y);
    (fd + (2 * m + 1) as f64 * yf * next.x_f64()).abs()
}

#[test]
fn derivative_identity_converges_quadratically() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let sys = ChargeSystem::new(vec![
        Charge::new(rat(1, 1), rat(2, 1)),
        Charge::new(rat(5, 2), rat(-3, 1)),
        Charge::new(rat(4, 1), rat(1, 1)),
    ])
    .unwrap();
    for _ in 0..10 {
        let x = rat(rng.gen_range(-200..600), 64);
        let y = rat(rng.gen_range(16..200), 64);
        for m in 1..=3 {
            let e1 = fd_error(&sys, &x, &y, m, &rat(1, 256));
            let e2 = fd_error(&sys, &x, &y, m, &rat(1, 512));
            assert!(e1 > 0.0);
            let ratio = e1 / e2;
            assert!((3.5..4.5).contains(&ratio), "ratio {ratio} at m={m}");
        }
    }
}

#[test]
fn conditional_identity_where_y_kernel_vanishes() {
    // mixed signs give curves where sum a_j / r^(2m+1) = 0 off the axis
    let sys = ChargeSystem::new(vec![
        Charge::new(rat(1, 1), rat(1, 1)),
        Charge::new(rat(2, 1), rat(-2, 1)),
        Charge::new(rat(3, 1), rat(1, 1)),
    ])
    .unwrap();
    let mut checked = 0;
    for m in 1..=3u32 {
        for x0 in [0.5f64, 1.25, 2.0, 2.75, 3.5] {
            // bracket a sign change of Y_m / y along the vertical line
            let g = |y: f64| kernel_f64(&sys, x0, y, m).1 / y;
            let mut lo = 0.05;
            let mut found = None;
            while lo < 8.0 {
                let hi = lo + 0.05;
                if g(lo) * g(hi) < 0.0 {
                    found = Some((lo, hi));
                    break;
                }
                lo = hi;
            }
            let Some((mut a, mut b)) = found else { continue };
            for _ in 0..200 {
                let c = 0.5 * (a + b);
                if g(a) * g(c) <= 0.0 {
                    b = c;
                } else {
                    a = c;
                }
            }
            let y0 = 0.5 * (a + b);
            let p = EvalPoint::from_f64(x0, y0, 128).unwrap();
            let j = eval_kernel_partials(&sys, &p, m).unwrap();
            let next = eval_kernel(&sys, &p, m + 1).unwrap();
            let predicted = (2 * m + 1) as f64 * y0 * next.y_f64();
            let scale = j.xx.mid_f64().abs().max(predicted.abs()).max(1e-300);
            assert!(
                (j.xx.mid_f64() - predicted).abs() <= 1e-8 * scale,
                "m={m} x={x0} y={y0}: {} vs {predicted}",
                j.xx.mid_f64()
            );
            checked += 1;
        }
    }
    assert!(checked >= 5, "only {checked} constructed points");
}
