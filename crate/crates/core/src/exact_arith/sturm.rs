//! Sturm chains and exact real root isolation.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::rational::{int, simple_between, to_f64, Rational};
use super::unipoly::UniPoly;
use super::ArithError;

/// An interval holding exactly one real root of `poly`.
///
/// `lo < hi` with nonzero values of opposite sign at both ends, or
/// `lo == hi` when the root is rational and was hit exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub poly: UniPoly,
}

impl IsolatingInterval {
    pub fn exact(root: Rational, poly: UniPoly) -> Self {
        Self {
            lo: root.clone(),
            hi: root,
            poly,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Bisects until the width is at most `width`. Exact roots found on the
    /// way collapse the interval.
    pub fn refine_to(&mut self, width: &Rational) {
        while !self.is_exact() && &self.width() > width {
            self.bisect();
        }
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let m = simple_between(&self.lo, &self.hi);
        let sm = self.poly.sign_at(&m);
        if sm == 0 {
            self.lo = m.clone();
            self.hi = m;
            return;
        }
        if sm == self.poly.sign_at(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.is_exact() {
            &self.lo == x
        } else {
            &self.lo < x && x < &self.hi
        }
    }

    /// Sign of the root relative to a rational point, decided exactly.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if self.is_exact() {
            return self.lo.cmp(x);
        }
        if x <= &self.lo {
            return Ordering::Greater;
        }
        if x >= &self.hi {
            return Ordering::Less;
        }
        match self.poly.sign_at(x) {
            0 => Ordering::Equal,
            s if s == self.poly.sign_at(&self.lo) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...`, each entry rescaled by a
/// positive constant to keep coefficients small.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let mut seq = vec![p.primitive()];
        if p.is_constant() {
            return Self { seq };
        }
        seq.push(p.derivative().primitive());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push((-r).primitive());
        }
        Self { seq }
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.seq
    }

    fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::count_changes(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::count_changes(
            self.seq
                .iter()
                .map(|p| p.leading().map_or(0, |l| if l.is_positive() { 1 } else { -1 })),
        )
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::count_changes(self.seq.iter().map(|p| match (p.leading(), p.degree()) {
            (Some(l), Some(d)) => {
                let s = if l.is_positive() { 1 } else { -1 };
                if d % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
            _ => 0,
        }))
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let c = self.count_half_open(a, b);
        if self.seq[0].sign_at(b) == 0 {
            c - 1
        } else {
            c
        }
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

/// Isolates every real root of a squarefree `p` in the open interval
/// `(lo, hi)`, in increasing order.
pub fn sturm_isolate(
    p: &UniPoly,
    lo: &Rational,
    hi: &Rational,
) -> Result<Vec<IsolatingInterval>, ArithError> {
    if lo >= hi {
        return Err(ArithError::EmptyInterval);
    }
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    if !p.is_squarefree() {
        return Err(ArithError::NotSquarefree);
    }
    let poly = p.primitive();
    let chain = SturmChain::new(&poly);
    let mut out = Vec::new();
    // (a, b, roots in the open interval)
    let mut stack = vec![(lo.clone(), hi.clone(), chain.count_open(lo, hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(tighten_single(&poly, &chain, a, b)),
            _ => {
                let m = simple_between(&a, &b);
                let left = chain.count_open(&a, &m);
                if poly.sign_at(&m) == 0 {
                    out.push(IsolatingInterval::exact(m.clone(), poly.clone()));
                    stack.push((a, m.clone(), left));
                    stack.push((m, b, n - left - 1));
                } else {
                    stack.push((a, m.clone(), left));
                    stack.push((m, b, n - left));
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Shrinks an interval known to hold one root until both ends are non-roots,
/// or the root itself is found.
fn tighten_single(
    poly: &UniPoly,
    chain: &SturmChain,
    mut a: Rational,
    mut b: Rational,
) -> IsolatingInterval {
    loop {
        let sa = poly.sign_at(&a);
        let sb = poly.sign_at(&b);
        if sa != 0 && sb != 0 {
            debug_assert!(sa != sb);
            let mut iv = IsolatingInterval {
                lo: a,
                hi: b,
                poly: poly.clone(),
            };
            snap_rational(&mut iv);
            return iv;
        }
        let m = simple_between(&a, &b);
        if poly.sign_at(&m) == 0 {
            return IsolatingInterval::exact(m, poly.clone());
        }
        if chain.count_open(&a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
}

/// Collapses the interval onto its root when that root is rational.
///
/// For a primitive integer polynomial with leading coefficient `c`, every
/// rational root `r` has `|c| * r` integral, so once the interval is shorter
/// than `1/|c|` a single integer candidate remains. Skipped when `c` is huge.
fn snap_rational(iv: &mut IsolatingInterval) {
    let Some(lead) = iv.poly.leading() else {
        return;
    };
    let lead = lead.abs();
    // huge leading coefficients (resultants) would need thousands of steps
    if lead.numer().bits() > 512 {
        return;
    }
    while !iv.is_exact() && &iv.width() * &lead >= Rational::one() {
        iv.bisect();
    }
    if iv.is_exact() {
        return;
    }
    let cand = Rational::from_integer((&iv.lo * &lead).ceil().to_integer()) / &lead;
    if iv.contains(&cand) && iv.poly.sign_at(&cand) == 0 {
        *iv = IsolatingInterval::exact(cand, iv.poly.clone());
    }
}

/// Isolates all real roots of any nonzero polynomial (deflated to its
/// squarefree part first).
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<IsolatingInterval>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let sf = p.squarefree_part();
    if sf.is_constant() {
        return Ok(Vec::new());
    }
    let c = sf.cauchy_bound();
    sturm_isolate(&sf, &-c.clone(), &c)
}

/// Refines two root lists until no interval of one overlaps an interval of
/// the other. Requires the polynomials to share no root.
pub fn separate(a: &mut [IsolatingInterval], b: &mut [IsolatingInterval]) {
    loop {
        let mut changed = false;
        for x in a.iter_mut() {
            for y in b.iter_mut() {
                while overlaps(x, y) {
                    if x.is_exact() && y.is_exact() {
                        // distinct rational roots never overlap
                        break;
                    }
                    if x.width() >= y.width() {
                        x.bisect();
                    } else {
                        y.bisect();
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

fn overlaps(x: &IsolatingInterval, y: &IsolatingInterval) -> bool {
    if x.is_exact() && y.is_exact() {
        return x.lo == y.lo;
    }
    if x.is_exact() {
        return y.lo < x.lo && x.lo < y.hi;
    }
    if y.is_exact() {
        return x.lo < y.lo && y.lo < x.hi;
    }
    // closed hulls touching counts as overlap unless one side is an open end
    let lo = if x.lo > y.lo { &x.lo } else { &y.lo };
    let hi = if x.hi < y.hi { &x.hi } else { &y.hi };
    match lo.cmp(hi) {
        Ordering::Less => true,
        Ordering::Greater => false,
        // touching at a point: only a problem if that point is exact in both
        Ordering::Equal => false,
    }
}

/// True when both intervals isolate the same real number.
pub fn same_root(a: &IsolatingInterval, b: &IsolatingInterval) -> bool {
    if a.is_exact() && b.is_exact() {
        return a.lo == b.lo;
    }
    if a.is_exact() {
        return b.contains(&a.lo) && b.poly.sign_at(&a.lo) == 0;
    }
    if b.is_exact() {
        return a.contains(&b.lo) && a.poly.sign_at(&b.lo) == 0;
    }
    let lo = if a.lo > b.lo { &a.lo } else { &b.lo };
    let hi = if a.hi < b.hi { &a.hi } else { &b.hi };
    if lo >= hi {
        return false;
    }
    let Ok(g) = UniPoly::gcd(&a.poly, &b.poly) else {
        return false;
    };
    if g.is_constant() {
        return false;
    }
    // g divides a squarefree poly, so a common root in the overlap is the
    // unique root of each interval
    SturmChain::new(&g).count_open(lo, hi) > 0
}

/// Number of sign changes of `p` over a uniform rational grid on `[lo, hi]`;
/// a brute-force lower bound on the number of real roots there.
pub fn grid_sign_changes(p: &UniPoly, lo: &Rational, hi: &Rational, steps: usize) -> usize {
    let step = (hi - lo) / int(steps as i64);
    let mut last = 0;
    let mut count = 0;
    for k in 0..=steps {
        let x = lo + &step * int(k as i64);
        let v = p.eval(&x);
        let s = if v.is_zero() {
            count += 1;
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 && last != 0 && s != last {
            count += 1;
        }
        if s != 0 {
            last = s;
        } else {
            last = 0;
        }
    }
    count
}
