//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded-lexicographic with `x1 > x2 > ...`. Iteration is therefore ascending
//! in grlex and printing walks the map backwards so the leading term comes first.
//! Zero coefficients are never stored; the zero polynomial is the empty map.

mod matrix;

pub use matrix::PolyMatrix;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Degree with the `deg(0) = -inf` convention. `MinusInfinity` sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector `x^alpha`. Ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The variable `x_{index+1}` (indices are zero-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// All monomials in `nvars` variables of total degree exactly `degree`,
    /// in descending grlex order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, degree, &mut vec![0; nvars], &mut out);
        out
    }

    /// All monomials of total degree at most `degree`, ascending grlex.
    pub fn all_up_to_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=degree {
            let mut level = Monomial::all_of_degree(nvars, d);
            level.reverse();
            out.extend(level);
        }
        out
    }

    pub(crate) fn factors(&self, names: &dyn Fn(usize) -> String) -> Vec<String> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names(i)
                } else {
                    format!("{}^{}", names(i), e)
                }
            })
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Poly::monomial(nvars, Monomial::var(nvars, index), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial length must equal nvars");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated terms, combining like terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length must equal nvars");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial, `None` if it has non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            None => Degree::MinusInfinity,
            Some(m) => Degree::Finite(m.degree()),
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_{index+1}`.
    pub fn partial(&self, index: usize) -> Result<Poly> {
        if index >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: index + 1,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut lowered = m.clone();
            lowered.0[index] -= 1;
            out.terms.insert(lowered, c * rat(e as i64));
        }
        Ok(out)
    }

    /// Applies `d^beta = d_1^{beta_1} ... d_n^{beta_n}` in one pass.
    pub fn differentiate(&self, beta: &Monomial) -> Poly {
        assert_eq!(beta.nvars(), self.nvars, "derivative multi-index length");
        if beta.is_one() {
            return self.clone();
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if !beta.divides(m) {
                continue;
            }
            let mut factor = BigInt::one();
            for (&g, &b) in m.0.iter().zip(&beta.0) {
                for t in 0..b {
                    factor *= BigInt::from(g - t);
                }
            }
            out.terms.insert(beta.quotient_of(m), c * Rational::from_integer(factor));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars)
            .map(|i| self.partial(i).expect("index in range"))
            .collect()
    }

    /// Ring homomorphism `x_i -> images[i]`. The result lives in the images' ring.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        self.substitute_impl(images, None)
    }

    /// Like [`Poly::substitute`], dropping every term of degree above `max_degree`
    /// at each intermediate product.
    pub fn substitute_truncated(&self, images: &[Poly], max_degree: u32) -> Result<Poly> {
        self.substitute_impl(images, Some(max_degree))
    }

    fn substitute_impl(&self, images: &[Poly], cap: Option<u32>) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = images.first().map_or(0, Poly::nvars);
        for im in images {
            if im.nvars != target {
                return Err(Error::Dimension {
                    expected: target,
                    found: im.nvars,
                });
            }
        }
        let cut = |p: Poly| match cap {
            Some(n) => p.truncate(n),
            None => p,
        };
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(target)]; self.nvars];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = cut(powers[i].last().unwrap() * &images[i]);
                    powers[i].push(next);
                }
                term = cut(&term * &powers[i][e as usize]);
                if term.is_zero() {
                    break;
                }
            }
            for (k, v) in term.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Drops all terms of total degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-reads the polynomial in a ring with `nvars` variables, sending `x_i`
    /// to `x_{i+offset}`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= nvars, "embedding does not fit");
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; nvars];
            e[offset..offset + self.nvars].copy_from_slice(&m.0);
            (Monomial(e), c.clone())
        });
        Poly::from_terms(nvars, terms)
    }

    /// Exact multivariate division; fails unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        self.check_same(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::InexactDivision),
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(Error::InexactDivision);
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &dyn Fn(usize) -> String) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| (c, m.factors(names)));
        write_terms(f, terms)
    }
}

pub(crate) fn var_name(i: usize) -> String {
    format!("x{}", i + 1)
}

/// Writes `c1*f1*f2 + c2*f3 - ...`; unit coefficients are elided on
/// non-constant terms.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Rational, Vec<String>)>,
{
    let mut first = true;
    for (c, factors) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if factors.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{}", factors.join("*"))?;
        } else {
            write!(f, "{}*{}", abs, factors.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &var_name)
    }
}

// Operator impls panic on a variable-count mismatch; use the `try_*` forms
// when the inputs are not known to agree.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial add")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(n: usize, s: &str) -> Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn add_inverse_is_empty() {
        let x1 = Poly::var(2, 0);
        let z = &x1 + &(-&x1);
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p(2, "(x1+x2)*(x1-x2)"), p(2, "x1^2 - x2^2"));
    }

    #[test]
    fn single_term_product() {
        // 2*3 = 6, x1 * 1, x2 * x2^2 = x2^3
        let a = p(2, "2*x1*x2");
        let b = p(2, "3*x2^2");
        let prod = &a * &b;
        assert_eq!(prod.num_terms(), 1);
        assert_eq!(prod.coeff(&Monomial::from_exponents(vec![1, 3])), rat(6));
    }

    #[test]
    fn mismatch_is_dimension_error() {
        let err = Poly::var(2, 0).try_add(&Poly::var(3, 0)).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 2, found: 3 });
        assert!(Poly::one(1).try_mul(&Poly::one(2)).is_err());
    }

    #[test]
    fn partials() {
        assert_eq!(p(2, "x1^2*x2").partial(0).unwrap(), p(2, "2*x1*x2"));
        assert!(p(2, "x2^3").partial(0).unwrap().is_zero());
        assert_eq!(p(2, "x1 + x2^2").partial(1).unwrap(), p(2, "2*x2"));
        assert_eq!(
            p(2, "x1").partial(2).unwrap_err(),
            Error::IndexOutOfRange { index: 3, nvars: 2 }
        );
    }

    #[test]
    fn substitution() {
        let id = [Poly::var(2, 0), Poly::var(2, 1)];
        assert_eq!(p(2, "x1*x2").substitute(&id).unwrap(), p(2, "x1*x2"));
        let shear = [p(2, "x1 + x2^2"), Poly::var(2, 1)];
        assert_eq!(p(2, "x1").substitute(&shear).unwrap(), p(2, "x1 + x2^2"));
        let shift = [p(2, "x1 + 1"), Poly::var(2, 1)];
        assert_eq!(
            p(2, "x1^2").substitute(&shift).unwrap(),
            p(2, "x1^2 + 2*x1 + 1")
        );
        assert!(p(2, "x1").substitute(&shift[..1]).is_err());
    }

    #[test]
    fn substitution_changes_ring() {
        let images = [p(3, "x1*x3"), p(3, "x2")];
        assert_eq!(p(2, "x1 + x2^2").substitute(&images).unwrap(), p(3, "x1*x3 + x2^2"));
    }

    #[test]
    fn truncation() {
        assert_eq!(p(1, "x1 + x1^3").truncate(2), p(1, "x1"));
        assert!(Poly::zero(1).truncate(5).is_zero());
        let q = p(1, "1 + x1 + x1^2 + x1^3");
        assert_eq!(q.truncate(10), q);
    }

    #[test]
    fn degrees() {
        assert_eq!(p(2, "x1^2*x2").total_degree(), Degree::Finite(3));
        assert_eq!(Poly::zero(2).total_degree(), Degree::MinusInfinity);
        assert_eq!(p(2, "7").total_degree(), Degree::Finite(0));
        assert!(Degree::MinusInfinity < Degree::Finite(0));
    }

    #[test]
    fn grlex_display_order() {
        let q = p(2, "1 + x2 + x1 + x2^2 + x1*x2 + x1^2");
        assert_eq!(q.to_string(), "x1^2 + x1*x2 + x2^2 + x1 + x2 + 1");
        assert_eq!(p(2, "x1 + 2*x2^2 - 1/3").to_string(), "2*x2^2 + x1 - 1/3");
        assert_eq!(p(2, "-x1 - 1").to_string(), "-x1 - 1");
        assert_eq!(Poly::zero(3).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = p(2, "x1^2 - x2^2");
        let b = p(2, "x1 + x2");
        assert_eq!(a.div_exact(&b).unwrap(), p(2, "x1 - x2"));
        assert_eq!(p(2, "x1 + 1").div_exact(&p(2, "x2")), Err(Error::InexactDivision));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_up_to_degree(2, 3).len(), 10);
        let all = Monomial::all_up_to_degree(3, 4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    mod props {
        use crate::testutil::arb_poly;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ring_axioms(a in arb_poly(3, 3, 5), b in arb_poly(3, 3, 5), c in arb_poly(3, 3, 5)) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a + &b, &b + &a);
            }

            #[test]
            fn leibniz(a in arb_poly(3, 4, 5), b in arb_poly(3, 4, 5), i in 0usize..3) {
                let lhs = (&a * &b).partial(i).unwrap();
                let rhs = &(&a.partial(i).unwrap() * &b) + &(&a * &b.partial(i).unwrap());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn substitute_is_multiplicative(
                a in arb_poly(2, 3, 4),
                b in arb_poly(2, 3, 4),
                i0 in arb_poly(2, 2, 3),
                i1 in arb_poly(2, 2, 3),
            ) {
                let im = [i0, i1];
                prop_assert_eq!(
                    (&a * &b).substitute(&im).unwrap(),
                    &a.substitute(&im).unwrap() * &b.substitute(&im).unwrap()
                );
            }

            #[test]
            fn division_undoes_multiplication(a in arb_poly(2, 3, 4), b in arb_poly(2, 3, 4)) {
                prop_assume!(!b.is_zero());
                prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
            }
        }
    }
}
