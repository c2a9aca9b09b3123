//! The Weyl algebra `A_n` in normal form `sum c x^alpha d^beta`.
//!
//! Every stored element is normal-ordered (all `x`s to the left of all `d`s);
//! products are rewritten eagerly with the closed-form Leibniz expansion
//!
//! ```text
//! d^b x^c = sum_{k <= min(b, c)} prod_i C(b_i, k_i) c_i!/(c_i - k_i)! x^{c-k} d^{b-k}
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{var_name, write_terms, Degree, Monomial, Poly, Rational};

/// A normal-ordered word `x^alpha d^beta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylMonomial {
    pub x: Monomial,
    pub d: Monomial,
}

impl WeylMonomial {
    pub fn degree(&self) -> u32 {
        self.x.degree() + self.d.degree()
    }
}

impl Ord for WeylMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.x.exponents().cmp(other.x.exponents()))
            .then_with(|| self.d.exponents().cmp(other.d.exponents()))
    }
}

impl PartialOrd for WeylMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    nvars: usize,
    terms: BTreeMap<WeylMonomial, Rational>,
}

impl WeylElement {
    pub fn zero(nvars: usize) -> Self {
        WeylElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        WeylElement::scalar(nvars, Rational::one())
    }

    pub fn scalar(nvars: usize, c: Rational) -> Self {
        WeylElement::term(nvars, Monomial::one(nvars), Monomial::one(nvars), c)
    }

    pub fn x(nvars: usize, index: usize) -> Self {
        WeylElement::term(nvars, Monomial::var(nvars, index), Monomial::one(nvars), Rational::one())
    }

    pub fn d(nvars: usize, index: usize) -> Self {
        WeylElement::term(nvars, Monomial::one(nvars), Monomial::var(nvars, index), Rational::one())
    }

    pub fn term(nvars: usize, x: Monomial, d: Monomial, c: Rational) -> Self {
        WeylElement::from_terms(nvars, [(x, d, c)])
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Monomial, Rational)>,
    {
        let mut w = WeylElement::zero(nvars);
        for (x, d, c) in terms {
            assert!(x.nvars() == nvars && d.nvars() == nvars, "multi-index length must equal nvars");
            w.add_term(WeylMonomial { x, d }, c);
        }
        w
    }

    /// The multiplication operator by `p`.
    pub fn from_poly(p: &Poly) -> Self {
        let n = p.nvars();
        WeylElement::from_terms(n, p.terms().map(|(m, c)| (m.clone(), Monomial::one(n), c.clone())))
    }

    /// `sum_j coefficients[j] * d_j`.
    pub fn from_vector_field(coefficients: &[Poly]) -> Self {
        let n = coefficients.len();
        let mut w = WeylElement::zero(n);
        for (j, c) in coefficients.iter().enumerate() {
            assert_eq!(c.nvars(), n, "vector field coefficient ring");
            for (m, v) in c.terms() {
                w.add_term(
                    WeylMonomial {
                        x: m.clone(),
                        d: Monomial::var(n, j),
                    },
                    v.clone(),
                );
            }
        }
        w
    }

    fn add_term(&mut self, m: WeylMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&WeylMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, x: &Monomial, d: &Monomial) -> Rational {
        self.terms
            .get(&WeylMonomial {
                x: x.clone(),
                d: d.clone(),
            })
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree `max |alpha| + |beta|`.
    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(WeylMonomial::degree)
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Order as a differential operator, `max |beta|`.
    pub fn order(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.d.degree())
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Terms whose derivative multi-index has `|beta| == k`.
    pub fn order_part(&self, k: u32) -> WeylElement {
        WeylElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.d.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The polynomial `p` if this is the multiplication operator by `p`.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.terms.keys().all(|m| m.d.is_one()) {
            Some(Poly::from_terms(
                self.nvars,
                self.terms.iter().map(|(m, c)| (m.x.clone(), c.clone())),
            ))
        } else {
            None
        }
    }

    /// Largest `|alpha| - |beta|` over the terms: the most the operator can
    /// raise the degree of a polynomial it acts on.
    pub fn degree_raise(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|m| m.x.degree() as i64 - m.d.degree() as i64)
            .max()
    }

    fn check_same(&self, other: &WeylElement) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> WeylElement {
        let mut out = WeylElement::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Normal-ordered product.
    pub fn try_mul(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_same(other)?;
        let mut out = WeylElement::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                mul_words(ma, mb, |word, k| out.add_term(word, &c * Rational::from_integer(k)));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> WeylElement {
        let mut acc = WeylElement::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Action on `P_n` as a differential operator.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if p.nvars() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: p.nvars(),
            });
        }
        let mut derivs: BTreeMap<&Monomial, Poly> = BTreeMap::new();
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let dp = derivs.entry(&m.d).or_insert_with(|| p.differentiate(&m.d));
            if dp.is_zero() {
                continue;
            }
            for (k, v) in dp.mul_monomial(&m.x, c).terms() {
                out.add_term(k.clone(), v.clone());
            }
        }
        Ok(out)
    }
}

/// Expands `(x^a d^b)(x^c d^e)` into normal-ordered words with integer weights.
fn mul_words(left: &WeylMonomial, right: &WeylMonomial, mut emit: impl FnMut(WeylMonomial, BigInt)) {
    let n = left.x.nvars();
    let b = left.d.exponents();
    let c = right.x.exponents();
    // per-variable options: (k_i, C(b_i, k_i) * c_i!/(c_i-k_i)!)
    let options: Vec<Vec<(u32, BigInt)>> = (0..n)
        .map(|i| {
            let top = b[i].min(c[i]);
            let mut v = Vec::with_capacity(top as usize + 1);
            let mut w = BigInt::one();
            for k in 0..=top {
                v.push((k, w.clone()));
                // C(b,k+1) c!/(c-k-1)! = C(b,k) c!/(c-k)! * (b-k)(c-k)/(k+1)
                w = w * BigInt::from(b[i] - k) * BigInt::from(c[i] - k) / BigInt::from(k + 1);
            }
            v
        })
        .collect();
    let xsum = left.x.mul(&right.x);
    let dsum = left.d.mul(&right.d);
    let mut ks = vec![0u32; n];
    fn rec(
        i: usize,
        options: &[Vec<(u32, BigInt)>],
        ks: &mut Vec<u32>,
        weight: BigInt,
        xsum: &Monomial,
        dsum: &Monomial,
        emit: &mut dyn FnMut(WeylMonomial, BigInt),
    ) {
        if i == options.len() {
            let x = xsum.exponents().iter().zip(ks.iter()).map(|(a, k)| a - k).collect();
            let d = dsum.exponents().iter().zip(ks.iter()).map(|(a, k)| a - k).collect();
            emit(
                WeylMonomial {
                    x: Monomial::from_exponents(x),
                    d: Monomial::from_exponents(d),
                },
                weight,
            );
            return;
        }
        for (k, w) in &options[i] {
            ks[i] = *k;
            rec(i + 1, options, ks, &weight * w, xsum, dsum, emit);
        }
        ks[i] = 0;
    }
    rec(0, &options, &mut ks, BigInt::one(), &xsum, &dsum, &mut emit);
}

/// `dim A_{n,i} = C(i + 2n, 2n)`.
pub fn filtration_dim(n: usize, i: u32) -> u128 {
    num_integer::binomial(i as u128 + 2 * n as u128, 2 * n as u128)
}

/// Basis `{x^alpha d^beta : |alpha| + |beta| <= i}` of `A_{n,i}`, ascending.
pub fn filtration_basis(n: usize, i: u32) -> Vec<WeylMonomial> {
    Monomial::all_up_to_degree(2 * n, i)
        .into_iter()
        .map(|m| {
            let e = m.exponents();
            WeylMonomial {
                x: Monomial::from_exponents(e[..n].to_vec()),
                d: Monomial::from_exponents(e[n..].to_vec()),
            }
        })
        .collect()
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(m, c)| {
            let mut factors = m.x.factors(&var_name);
            factors.extend(m.d.factors(&|i| format!("d{}", i + 1)));
            (c, factors)
        });
        write_terms(f, terms)
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        self.try_add(rhs).expect("weyl add")
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self.try_sub(rhs).expect("weyl sub")
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.try_mul(rhs).expect("weyl mul")
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-Rational::one())
    }
}
