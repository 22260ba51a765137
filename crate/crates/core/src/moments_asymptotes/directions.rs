use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact_arith::{
    format_rational, rat, same_root, sturm_isolate, IsolatingInterval, Rational, UniPoly,
};
use crate::field_core::ChargeSystem;

use super::{build_asymptote_polys, critical_index, AsymptoteError, CriticalIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirectionDomain {
    /// Root `beta` of the asymptote `x = beta * y`.
    TypeI,
    /// Root `alpha` of the asymptote `y = alpha * x`.
    TypeII,
    /// The x-axis itself.
    Axis,
}

/// An asymptotic direction as an exact algebraic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicDirection {
    pub defining_poly: UniPoly,
    pub root_interval: IsolatingInterval,
    pub domain: DirectionDomain,
}

/// Direction expressed as a slope `dy/dx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionSlope {
    Vertical,
    Value(IsolatingInterval),
}

/// Midpoint after refining to well below f64 resolution.
fn fine_approx(iv: &IsolatingInterval) -> f64 {
    let mut iv = iv.clone();
    let scale = iv.lo.abs().max(iv.hi.abs()).max(rat(1, 1));
    iv.refine_to(&(scale * rat(1, 1 << 62)));
    iv.approx()
}

impl DirectionSlope {
    pub fn approx(&self) -> Option<f64> {
        match self {
            DirectionSlope::Vertical => None,
            DirectionSlope::Value(iv) => Some(fine_approx(iv)),
        }
    }

    pub fn same_as(&self, other: &DirectionSlope) -> bool {
        match (self, other) {
            (DirectionSlope::Vertical, DirectionSlope::Vertical) => true,
            (DirectionSlope::Value(a), DirectionSlope::Value(b)) => same_root(a, b),
            _ => false,
        }
    }
}

impl AlgebraicDirection {
    fn axis() -> Self {
        Self {
            defining_poly: UniPoly::x(),
            root_interval: IsolatingInterval::exact(Rational::zero(), UniPoly::x()),
            domain: DirectionDomain::Axis,
        }
    }

    pub fn value_approx(&self) -> f64 {
        fine_approx(&self.root_interval)
    }

    pub fn slope(&self) -> DirectionSlope {
        match self.domain {
            DirectionDomain::Axis | DirectionDomain::TypeII => {
                DirectionSlope::Value(self.root_interval.clone())
            }
            DirectionDomain::TypeI => {
                let mut iv = self.root_interval.clone();
                let zero = Rational::zero();
                if iv.is_exact() && iv.lo.is_zero() {
                    return DirectionSlope::Vertical;
                }
                let deg = self.defining_poly.degree().unwrap_or(0);
                let inv_poly = self.defining_poly.reversed(deg).primitive();
                if iv.is_exact() {
                    return DirectionSlope::Value(IsolatingInterval::exact(
                        iv.lo.recip(),
                        inv_poly,
                    ));
                }
                while !iv.is_exact() && iv.lo <= zero && zero <= iv.hi {
                    iv.bisect();
                }
                if iv.is_exact() {
                    return DirectionSlope::Value(IsolatingInterval::exact(
                        iv.lo.recip(),
                        inv_poly,
                    ));
                }
                // both ends share a sign, so inversion reverses the order
                DirectionSlope::Value(IsolatingInterval {
                    lo: iv.hi.recip(),
                    hi: iv.lo.recip(),
                    poly: inv_poly,
                })
            }
        }
    }
}

impl Serialize for AlgebraicDirection {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraicDirection", 5)?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("defining_poly", &self.defining_poly.to_string())?;
        st.serialize_field(
            "root_interval",
            &[
                format_rational(&self.root_interval.lo),
                format_rational(&self.root_interval.hi),
            ],
        )?;
        st.serialize_field("value_approx", &self.value_approx())?;
        match self.slope().approx() {
            Some(v) => st.serialize_field("slope", &v)?,
            None => st.serialize_field("slope", "vertical")?,
        }
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Disjoint,
    DisjointExceptDiagonals,
    OverlapFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectionReport {
    pub critical: CriticalIndex,
    pub directions_x: Vec<AlgebraicDirection>,
    pub directions_y: Vec<AlgebraicDirection>,
    /// A defining polynomial vanishes at `+-1`, the unresolved boundary.
    pub diagonal_flag: bool,
    /// `gcd(P_L, Q_L)` is constant.
    pub type_i_coprime: bool,
    /// `numC_L` and `numD_L` share no nonzero real root.
    pub type_ii_no_common_root: bool,
    pub verdict: Verdict,
}

/// Roots of `p` in `(-1, 1)`, optionally without `0`, plus whether `+-1` is
/// a root.
fn admissible_roots(p: &UniPoly, keep_zero: bool) -> (Vec<IsolatingInterval>, bool) {
    let sf = p.squarefree_part().primitive();
    if sf.is_constant() {
        return (Vec::new(), false);
    }
    let diagonal = sf.sign_at(&rat(1, 1)) == 0 || sf.sign_at(&rat(-1, 1)) == 0;
    let zero = Rational::zero();
    let zero_is_root = sf.sign_at(&zero) == 0;
    let roots = sturm_isolate(&sf, &rat(-1, 1), &rat(1, 1))
        .expect("squarefree part of a nonconstant polynomial")
        .into_iter()
        .filter(|iv| keep_zero || !(zero_is_root && iv.contains(&zero)))
        .map(|mut iv| {
            if zero_is_root && iv.contains(&zero) {
                iv = IsolatingInterval::exact(zero.clone(), iv.poly);
            }
            iv
        })
        .collect();
    (roots, diagonal)
}

fn directions_of(poly: &UniPoly, domain: DirectionDomain) -> (Vec<AlgebraicDirection>, bool) {
    let (roots, diag) = admissible_roots(poly, domain == DirectionDomain::TypeI);
    let dirs = roots
        .into_iter()
        .map(|iv| AlgebraicDirection {
            defining_poly: iv.poly.clone(),
            root_interval: iv,
            domain,
        })
        .collect();
    (dirs, diag)
}

fn no_common_nonzero_root(a: &UniPoly, b: &UniPoly) -> bool {
    let g = UniPoly::gcd(a, b).expect("nonzero inputs").strip_x_powers();
    g.is_constant() || crate::exact_arith::isolate_real_roots(&g).map_or(false, |r| r.is_empty())
}

/// Admissible asymptotic directions of `{X = 0}` and `{Y = 0}` and whether
/// the two sets can share a direction.
pub fn asymptote_directions(sys: &ChargeSystem) -> Result<DirectionReport, AsymptoteError> {
    let critical = critical_index(sys)?;
    let fam = build_asymptote_polys(critical.l);

    let (mut directions_x, d1) = directions_of(&fam.p, DirectionDomain::TypeI);
    let (x2, d2) = directions_of(&fam.num_d, DirectionDomain::TypeII);
    directions_x.extend(x2);

    let (mut directions_y, d3) = directions_of(&fam.q, DirectionDomain::TypeI);
    let (y2, d4) = directions_of(&fam.num_c, DirectionDomain::TypeII);
    directions_y.extend(y2);
    directions_y.push(AlgebraicDirection::axis());

    let diagonal_flag = d1 || d2 || d3 || d4;
    let type_i_coprime = UniPoly::gcd(&fam.p, &fam.q)
        .expect("nonzero inputs")
        .is_constant();
    let type_ii_no_common_root = no_common_nonzero_root(&fam.num_c, &fam.num_d);

    let xs: Vec<DirectionSlope> = directions_x.iter().map(|d| d.slope()).collect();
    let ys: Vec<DirectionSlope> = directions_y.iter().map(|d| d.slope()).collect();
    let overlap = xs.iter().any(|a| ys.iter().any(|b| a.same_as(b)));

    let verdict = if overlap {
        Verdict::OverlapFound
    } else if diagonal_flag {
        Verdict::DisjointExceptDiagonals
    } else {
        Verdict::Disjoint
    };
    Ok(DirectionReport {
        critical,
        directions_x,
        directions_y,
        diagonal_flag,
        type_i_coprime,
        type_ii_no_common_root,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_core::Charge;

    fn sys(v: &[(i64, i64)]) -> ChargeSystem {
        ChargeSystem::new(v.iter().map(|&(x, a)| Charge::new(rat(x, 1), rat(a, 1))).collect())
            .unwrap()
    }

    #[test]
    fn dipole_directions() {
        let r = asymptote_directions(&sys(&[(1, 1), (2, -1)])).unwrap();
        assert_eq!(r.critical.l, 1);
        let mut sx: Vec<f64> = r.directions_x.iter().map(|d| d.slope().approx().unwrap()).collect();
        sx.sort_by(f64::total_cmp);
        let s2 = 2f64.sqrt();
        assert_eq!(sx.len(), 2);
        assert!((sx[0] + s2).abs() < 1e-12 && (sx[1] - s2).abs() < 1e-12);
        assert!(r.directions_x.iter().all(|d| d.domain == DirectionDomain::TypeI));
        assert_eq!(r.directions_y.len(), 2);
        assert_eq!(r.directions_y[0].slope(), DirectionSlope::Vertical);
        assert_eq!(r.directions_y[1].domain, DirectionDomain::Axis);
        assert_eq!(r.verdict, Verdict::Disjoint);
        assert!(r.type_i_coprime && r.type_ii_no_common_root);
    }

    #[test]
    fn same_sign_pair_has_vertical_x_direction() {
        let r = asymptote_directions(&sys(&[(1, 1), (3, 1)])).unwrap();
        assert_eq!(r.critical.l, 0);
        assert_eq!(r.directions_x.len(), 1);
        assert_eq!(r.directions_x[0].slope(), DirectionSlope::Vertical);
        assert_eq!(r.directions_y.len(), 1);
        assert_eq!(r.directions_y[0].domain, DirectionDomain::Axis);
        assert_eq!(r.verdict, Verdict::Disjoint);
    }

    #[test]
    fn slope_of_type_i_root_is_reciprocal() {
        let p = UniPoly::from_ints(&[-1, 0, 2]);
        let d = AlgebraicDirection {
            defining_poly: p.clone(),
            root_interval: IsolatingInterval { lo: rat(0, 1), hi: rat(1, 1), poly: p },
            domain: DirectionDomain::TypeI,
        };
        let DirectionSlope::Value(iv) = d.slope() else { panic!("finite slope expected") };
        assert!(iv.lo.is_positive() && iv.lo < iv.hi);
        assert!((iv.approx() - 2f64.sqrt()).abs() < 0.5);
        let mut fine = iv.clone();
        fine.refine_to(&rat(1, 1 << 40));
        assert!((fine.approx() - 2f64.sqrt()).abs() < 1e-11);
    }
}
