use crate::exact_arith::{rat, Rational, UniPoly};

/// The four polynomial families at one critical index `L`.
///
/// `p` and `q` are the numerators of the `L`-th derivatives of
/// `x/(1+x^2)^{3/2}` and `1/(1+x^2)^{3/2}`; `num_c` and `num_d` those of
/// `x^{L+2}/(1+x^2)^{3/2}` and `x^{L+1}/(1+x^2)^{3/2}`. All share the
/// denominator `(1+x^2)^{(2L+3)/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptotePolynomials {
    pub l: usize,
    pub p: UniPoly,
    pub q: UniPoly,
    pub num_c: UniPoly,
    pub num_d: UniPoly,
}

/// One derivative of `n / (1+x^2)^{k/2}`, returned as the new numerator over
/// `(1+x^2)^{(k+2)/2}`.
pub fn derivative_over_power(n: &UniPoly, k: u32) -> UniPoly {
    let one_plus_sq = UniPoly::from_ints(&[1, 0, 1]);
    let kx = UniPoly::monomial(rat(k as i64, 1), 1);
    &(&n.derivative() * &one_plus_sq) - &(&kx * n)
}

fn iterate(start: UniPoly, l: usize) -> UniPoly {
    (0..l).fold(start, |n, i| derivative_over_power(&n, 3 + 2 * i as u32))
}

pub fn build_asymptote_polys(l: usize) -> AsymptotePolynomials {
    let one = Rational::from_integer(1.into());
    AsymptotePolynomials {
        l,
        p: iterate(UniPoly::x(), l),
        q: iterate(UniPoly::one(), l),
        num_c: iterate(UniPoly::monomial(one.clone(), l + 2), l),
        num_d: iterate(UniPoly::monomial(one, l + 1), l),
    }
}
