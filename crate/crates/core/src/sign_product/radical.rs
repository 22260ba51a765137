//! Polynomials in formal square roots `chi_1..chi_M` over `Q[x, y]`, with
//! `chi_j^2` replaced by a fixed polynomial as soon as it appears.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::exact_arith::BiPoly;

/// Reduction data: `squares[j]` is the polynomial value of `chi_j^2`.
#[derive(Clone, Debug)]
pub struct RadicalRing {
    square_products: Vec<BiPoly>,
}

/// Element `sum_S c_S prod_{j in S} chi_j` with `S` a bitmask.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicalElement {
    terms: BTreeMap<u32, BiPoly>,
}

impl RadicalRing {
    pub fn new(squares: Vec<BiPoly>) -> Self {
        assert!(squares.len() <= 8, "at most 8 radicals");
        let n = 1usize << squares.len();
        // product of chi_j^2 over every subset, built from the lowest bit
        let mut square_products = vec![BiPoly::one(); n];
        for mask in 1..n {
            let low = mask.trailing_zeros() as usize;
            square_products[mask] = &square_products[mask & (mask - 1)] * &squares[low];
        }
        Self { square_products }
    }

    pub fn size(&self) -> usize {
        self.square_products.len().trailing_zeros() as usize
    }

    pub fn mul(&self, a: &RadicalElement, b: &RadicalElement) -> RadicalElement {
        let mut out = RadicalElement::default();
        for (&ma, pa) in &a.terms {
            for (&mb, pb) in &b.terms {
                let common = (ma & mb) as usize;
                let mut c = pa * pb;
                if common != 0 {
                    c = &c * &self.square_products[common];
                }
                out.add(ma ^ mb, c);
            }
        }
        out
    }

    /// Product of all factors along a fixed balanced tree, so the result does
    /// not depend on thread scheduling.
    pub fn product(&self, mut factors: Vec<RadicalElement>) -> RadicalElement {
        if factors.is_empty() {
            return RadicalElement::scalar(BiPoly::one());
        }
        while factors.len() > 1 {
            factors = factors
                .par_chunks(2)
                .map(|pair| match pair {
                    [a, b] => self.mul(a, b),
                    [a] => a.clone(),
                    _ => unreachable!(),
                })
                .collect();
        }
        factors.pop().unwrap()
    }
}

impl RadicalElement {
    pub fn scalar(p: BiPoly) -> Self {
        let mut e = Self::default();
        e.add(0, p);
        e
    }

    /// `c * chi_j`.
    pub fn radical(j: usize, c: BiPoly) -> Self {
        let mut e = Self::default();
        e.add(1 << j, c);
        e
    }

    pub fn add(&mut self, mask: u32, c: BiPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add(m, c.clone());
        }
        out
    }

    pub fn negate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }

    /// Masks carrying a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().copied()
    }

    /// The radical-free part, if nothing else survives.
    pub fn into_pure(mut self) -> Result<BiPoly, Vec<u32>> {
        let base = self.terms.remove(&0).unwrap_or_default();
        if self.terms.is_empty() {
            Ok(base)
        } else {
            Err(self.terms.keys().copied().collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn conjugate_pair_is_pure() {
        // (x + chi) (x - chi) with chi^2 = y
        let ring = RadicalRing::new(vec![BiPoly::y()]);
        let a = RadicalElement::scalar(BiPoly::x()).sum(&RadicalElement::radical(0, BiPoly::one()));
        let b = RadicalElement::scalar(BiPoly::x())
            .sum(&RadicalElement::radical(0, BiPoly::one()).negate());
        let p = ring.mul(&a, &b).into_pure().unwrap();
        assert_eq!(p, &(&BiPoly::x() * &BiPoly::x()) - &BiPoly::y());
    }

    #[test]
    fn squares_reduce_eagerly() {
        let ring = RadicalRing::new(vec![BiPoly::constant(rat(2, 1)), BiPoly::constant(rat(3, 1))]);
        let a = RadicalElement::radical(0, BiPoly::one());
        let b = RadicalElement::radical(1, BiPoly::one());
        let ab = ring.mul(&a, &b);
        assert_eq!(ab.support().collect::<Vec<_>>(), vec![3]);
        let sq = ring.mul(&ab, &ab).into_pure().unwrap();
        assert_eq!(sq, BiPoly::constant(rat(6, 1)));
        assert_eq!(ring.size(), 2);
    }
}
