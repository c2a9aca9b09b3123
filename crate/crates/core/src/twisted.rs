//! The twisted module `^phi P_n`: `P_n` with `a . m = phi(a) m`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::endo::WeylEndo;
use crate::error::{Error, Result};
use crate::linalg::SpanEchelon;
use crate::ratpoly::{Degree, Monomial, Poly, Rational};
use crate::weyl::{filtration_dim, WeylElement};

/// Largest basis of `A_{n,k}` that [`default_operator_degree`] will pick.
pub const MAX_BASIS: u128 = 20_000;

#[derive(Clone, Debug)]
pub struct TwistedModule {
    phi: WeylEndo,
}

impl TwistedModule {
    /// Fails with [`Error::RelationFailure`] unless `phi` satisfies the defining relations.
    pub fn new(phi: WeylEndo) -> Result<Self> {
        let report = phi.verify();
        if let Some(bad) = report.failures().next() {
            return Err(Error::RelationFailure {
                relation: bad.relation.clone(),
                residual: bad.residual.to_string(),
            });
        }
        Ok(TwistedModule { phi })
    }

    pub fn n(&self) -> usize {
        self.phi.n()
    }

    pub fn phi(&self) -> &WeylEndo {
        &self.phi
    }

    pub fn act(&self, a: &WeylElement, m: &Poly) -> Result<Poly> {
        self.phi.act(a, m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub n: usize,
    pub step: u32,
    /// `dim P_{n, <= step*s}` for `s = 0..=S`.
    pub dims: Vec<u128>,
    pub leading_coefficient: Rational,
    pub leading_exponent: u32,
    /// Whether the counts agree with explicit monomial enumeration where that was done.
    pub enumeration_agrees: bool,
    /// `n`-th forward difference at the largest `s` values, `None` if `S < n`.
    pub top_difference: Option<BigInt>,
}

impl FiltrationReport {
    pub fn strictly_increasing(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] < w[1])
    }

    /// The `n`-th difference of a degree-`n` polynomial in `s` is `n!` times its
    /// leading coefficient, so this checks the leading data against `dims` exactly.
    pub fn leading_fits(&self) -> bool {
        let expect = BigInt::from(self.step).pow(self.n as u32);
        self.top_difference.as_ref() == Some(&expect)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Dimensions of the filtration `{P_{n, <= step*s}}`.
pub fn hilbert_dims(n: usize, step: u32, s_max: u32) -> FiltrationReport {
    let dims: Vec<u128> = (0..=s_max)
        .map(|s| num_integer::binomial(step as u128 * s as u128 + n as u128, n as u128))
        .collect();
    let enumeration_agrees = dims.iter().enumerate().all(|(s, &d)| {
        if d > MAX_BASIS {
            return true;
        }
        Monomial::all_up_to_degree(n, step * s as u32).len() as u128 == d
    });
    let top_difference = (dims.len() > n).then(|| {
        let mut diff: Vec<BigInt> = dims[dims.len() - n - 1..].iter().map(|&d| BigInt::from(d)).collect();
        for _ in 0..n {
            diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        diff.pop().unwrap()
    });
    FiltrationReport {
        n,
        step,
        dims,
        leading_coefficient: Rational::new(BigInt::from(step).pow(n as u32), factorial(n)),
        leading_exponent: n as u32,
        enumeration_agrees,
        top_difference,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub k: u32,
    pub s_max: u32,
    /// `dim(A_{n,k} . g ∩ P_{n, <= s})` for `s = 0..=s_max`.
    pub dims: Vec<usize>,
    /// `dim P_{n, <= s}`.
    pub full: Vec<usize>,
    /// Number of basis operators applied before stopping.
    pub applied: usize,
}

impl GenerationReport {
    pub fn generates(&self) -> bool {
        self.dims == self.full
    }
}

/// Span of `{b . g : b in the monomial basis of A_{n,k}}` cut down to each `P_{n, <= s}`.
///
/// Stops early once every monomial of degree `<= s_max` is reached.
pub fn generation_dims(module: &TwistedModule, g: &Poly, k: u32, s_max: u32) -> Result<GenerationReport> {
    let n = module.n();
    if g.nvars() != n {
        return Err(Error::Dimension {
            expected: n,
            found: g.nvars(),
        });
    }
    if g.is_zero() {
        return Err(Error::ZeroInput("generator"));
    }
    let phi = module.phi();
    let full: Vec<usize> = (0..=s_max)
        .map(|s| num_integer::binomial(s as usize + n, n))
        .collect();
    let target = *full.last().unwrap();
    let x_polys: Vec<Option<Poly>> = phi.x_images.iter().map(WeylElement::as_poly).collect();
    let apply_x = |i: usize, v: &Poly| -> Result<Poly> {
        match &x_polys[i] {
            Some(p) => p.try_mul(v),
            None => phi.x_images[i].apply(v),
        }
    };

    let mut span = SpanEchelon::new(n);
    let mut applied = 0;
    // d'^beta g, built from d'^{beta - e_i} g with i the first nonzero index
    let mut d_memo: BTreeMap<Monomial, Poly> = BTreeMap::new();
    'outer: for beta in Monomial::all_up_to_degree(n, k) {
        let v = match beta.exponents().iter().position(|&e| e > 0) {
            None => g.clone(),
            Some(i) => {
                let parent = Monomial::var(n, i).quotient_of(&beta);
                let pv = &d_memo[&parent];
                if pv.is_zero() {
                    pv.clone()
                } else {
                    phi.d_images[i].apply(pv)?
                }
            }
        };
        d_memo.insert(beta.clone(), v.clone());
        if v.is_zero() {
            continue;
        }
        let mut x_memo: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for alpha in Monomial::all_up_to_degree(n, k - beta.degree()) {
            let w = match alpha.exponents().iter().position(|&e| e > 0) {
                None => v.clone(),
                Some(i) => {
                    let parent = Monomial::var(n, i).quotient_of(&alpha);
                    apply_x(i, &x_memo[&parent])?
                }
            };
            applied += 1;
            span.insert(&w);
            x_memo.insert(alpha, w);
            if span.dim_up_to_degree(s_max) == target {
                break 'outer;
            }
        }
    }
    Ok(GenerationReport {
        k,
        s_max,
        dims: (0..=s_max).map(|s| span.dim_up_to_degree(s)).collect(),
        full,
        applied,
    })
}

/// `2 * d * s_max`, lowered until `dim A_{n,k} <= MAX_BASIS`.
pub fn default_operator_degree(n: usize, d: u32, s_max: u32) -> u32 {
    let mut k = 2 * d.max(1) * s_max;
    while k > 0 && filtration_dim(n, k) > MAX_BASIS {
        k -= 1;
    }
    k
}

/// `m = max{d, (d-1)^{n-1} - 1}`; can only be negative when `d = 0`.
pub fn bound_step(n: usize, d: u32) -> BigInt {
    let d = BigInt::from(d);
    let other = (&d - BigInt::one()).pow(n.saturating_sub(1) as u32) - BigInt::one();
    d.max(other)
}

/// `m^n` with `m` from [`bound_step`].
pub fn length_bound_jacobian(n: usize, d: u32) -> BigInt {
    bound_step(n, d).pow(n as u32)
}

pub fn length_bound_weyl(n: usize, d: u32) -> BigUint {
    BigUint::from(d).pow(2 * n as u32)
}

pub fn length_bound_poisson(n: usize, d: u32) -> BigUint {
    BigUint::from(d).pow(2 * n as u32)
}

/// Smallest `step >= 1` with `x_i' P_{<= t} ⊆ P_{<= t + step}` and likewise for
/// `d_i'`, read off the images: the largest `|alpha| - |beta|` over their terms.
pub fn filtration_step(phi: &WeylEndo) -> u32 {
    phi.x_images
        .iter()
        .chain(&phi.d_images)
        .filter_map(WeylElement::degree_raise)
        .max()
        .unwrap_or(0)
        .max(1) as u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthViolation {
    pub generator: String,
    pub monomial: Monomial,
    pub degree: Degree,
    pub bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub step: u32,
    pub s_max: u32,
    pub checked: usize,
    pub violations: Vec<GrowthViolation>,
}

impl GrowthReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `g' P_{<= step*s} ⊆ P_{<= step*(s+1)}` for every generator image
/// `g'` and `s <= s_max` on monomials; a monomial of degree `t` is charged to
/// the smallest `s` with `t <= step*s`.
pub fn degree_growth_check(module: &TwistedModule, step: u32, s_max: u32) -> GrowthReport {
    let n = module.n();
    let phi = module.phi();
    let step = step.max(1);
    let gens: Vec<(String, &WeylElement)> = (0..n)
        .map(|i| (format!("x{}'", i + 1), &phi.x_images[i]))
        .chain((0..n).map(|i| (format!("d{}'", i + 1), &phi.d_images[i])))
        .collect();
    let mut violations = Vec::new();
    let mut checked = 0;
    for m in Monomial::all_up_to_degree(n, step * s_max) {
        let s = m.degree().div_ceil(step);
        let bound = step * (s + 1);
        let p = Poly::monomial(n, m.clone(), Rational::one());
        for (name, g) in &gens {
            checked += 1;
            let image = g.apply(&p).expect("nvars agree");
            let degree = image.total_degree();
            if degree > Degree::Finite(bound) {
                violations.push(GrowthViolation {
                    generator: name.clone(),
                    monomial: m.clone(),
                    degree,
                    bound,
                });
            }
        }
    }
    GrowthReport {
        step,
        s_max,
        checked,
        violations,
    }
}
