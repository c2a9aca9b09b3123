//! Polynomial endomorphisms of `P_n`, their Jacobians, and endomorphisms of
//! the Weyl algebra `A_n`.
//!
//! A Jacobian map `sigma` extends to `A_n` by sending `d_i` to the derivation
//! `d_i'` dual to the new coordinates, `d_i'(x_j') = delta_ij`. Concretely
//!
//! ```text
//! d_i'(p) = det J(x_1', .., x_{i-1}', p, x_{i+1}', .., x_n') / det J(sigma)
//! ```
//!
//! which is the row-`i` cofactor expansion, so `d_i' = sum_j (adj J)_{ji} / det J * d_j`.
//! Other extensions differ by `d_i' (p)` for a polynomial potential `p`.

mod file;
mod inverse;

pub use file::{parse_map_file, MapFile, MapKind};
pub use inverse::{
    compose_truncated, normalize_affine, poincare_solve, roundtrip_residuals, truncated_inverse,
};

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{Degree, Poly, PolyMatrix, Rational};
use crate::weyl::WeylElement;

/// Polynomial endomorphism `x_i -> images[i]` of `P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyEndo {
    images: Vec<Poly>,
}

impl PolyEndo {
    pub fn new(images: Vec<Poly>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::Dimension { expected: 1, found: 0 });
        }
        if let Some(bad) = images.iter().find(|p| p.nvars() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: bad.nvars(),
            });
        }
        Ok(PolyEndo { images })
    }

    pub fn identity(n: usize) -> Self {
        PolyEndo {
            images: (0..n).map(|i| Poly::var(n, i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    /// `sigma(p) = p(x_1', .., x_n')`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        p.substitute(&self.images)
    }

    /// Maximum total degree of the images (0 if they are all zero).
    pub fn degree(&self) -> u32 {
        self.images
            .iter()
            .map(Poly::total_degree)
            .max()
            .and_then(Degree::finite)
            .unwrap_or(0)
    }

    /// `(sigma ∘ tau)(x_i) = sigma(tau(x_i))`.
    pub fn compose(&self, tau: &PolyEndo) -> Result<PolyEndo> {
        if self.n() != tau.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: tau.n(),
            });
        }
        let images = tau
            .images
            .iter()
            .map(|t| self.apply(t))
            .collect::<Result<Vec<_>>>()?;
        PolyEndo::new(images)
    }

    /// `J_{ij} = d x_i' / d x_j`.
    pub fn jacobian_matrix(&self) -> PolyMatrix {
        let n = self.n();
        PolyMatrix::from_fn(n, n, n, |i, j| self.images[i].partial(j).expect("index in range"))
    }

    pub fn jacobian_det(&self) -> Poly {
        self.jacobian_matrix().det().expect("square")
    }

    /// The Jacobian as a nonzero scalar, if this is a Jacobian map.
    pub fn jacobian_constant(&self) -> Option<Rational> {
        self.jacobian_det().as_constant().filter(|c| !c.is_zero())
    }

    pub fn is_jacobian_map(&self) -> bool {
        self.jacobian_constant().is_some()
    }

    fn require_jacobian(&self) -> Result<(PolyMatrix, Rational)> {
        let j = self.jacobian_matrix();
        let det = j.det()?;
        match det.as_constant().filter(|c| !c.is_zero()) {
            Some(c) => Ok((j, c)),
            None => Err(Error::NotJacobianMap { det: det.to_string() }),
        }
    }

    /// The derivations `d_i'` dual to the coordinates `x_i'`, built from the adjugate.
    pub fn dual_derivations(&self) -> Result<Vec<Derivation>> {
        let (j, det) = self.require_jacobian()?;
        let adj = j.adjugate()?;
        let inv = Rational::one() / det;
        let n = self.n();
        Ok((0..n)
            .map(|i| Derivation {
                coefficients: (0..n).map(|k| adj.get(k, i).scale(&inv)).collect(),
            })
            .collect())
    }

    /// `d_i'(p)` by replacing row `i` of the Jacobian with the gradient of `p`.
    pub fn row_replacement_derivative(&self, i: usize, p: &Poly) -> Result<Poly> {
        let (j, det) = self.require_jacobian()?;
        if p.nvars() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: p.nvars(),
            });
        }
        let replaced = j.with_row(i, &p.gradient())?;
        Ok(replaced.det()?.scale(&(Rational::one() / det)))
    }

    /// The canonical extension to `A_n`: `x_i -> x_i'`, `d_i -> d_i'`.
    pub fn extend(&self) -> Result<WeylEndo> {
        let ders = self.dual_derivations()?;
        Ok(WeylEndo {
            x_images: self.images.iter().map(WeylElement::from_poly).collect(),
            d_images: ders.iter().map(Derivation::to_weyl).collect(),
        })
    }

    /// The extension `d_i -> d_i' + d_i'(p)`.
    pub fn extension_with_potential(&self, potential: &Poly) -> Result<WeylEndo> {
        if potential.nvars() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: potential.nvars(),
            });
        }
        let ders = self.dual_derivations()?;
        Ok(WeylEndo {
            x_images: self.images.iter().map(WeylElement::from_poly).collect(),
            d_images: ders
                .iter()
                .map(|d| &d.to_weyl() + &WeylElement::from_poly(&d.apply(potential).expect("same ring")))
                .collect(),
        })
    }

    /// Recovers the potential of an extension `phi` of this map, normalized to
    /// vanish at the origin.
    ///
    /// The differences `phi(d_i) - d_i'` must be multiplication operators
    /// `q_i` with `d_i'(q_j) = d_j'(q_i)`. The potential then satisfies
    /// `d_k p = sum_j (d x_j' / d x_k) q_j` and is found by radial integration.
    pub fn potential_of_extension(&self, phi: &WeylEndo) -> Result<Poly> {
        let n = self.n();
        if phi.n() != n {
            return Err(Error::Dimension {
                expected: n,
                found: phi.n(),
            });
        }
        let ders = self.dual_derivations()?;
        let mut diffs = Vec::with_capacity(n);
        for (i, d) in ders.iter().enumerate() {
            let diff = &phi.d_images[i] - &d.to_weyl();
            match diff.as_poly() {
                Some(q) => diffs.push(q),
                None => {
                    return Err(Error::RelationFailure {
                        relation: format!("d{}' - phi(d{}) is a multiplication operator", i + 1, i + 1),
                        residual: diff.to_string(),
                    })
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if ders[i].apply(&diffs[j])? != ders[j].apply(&diffs[i])? {
                    return Err(Error::NotClosed { i: i + 1, j: j + 1 });
                }
            }
        }
        let jac = self.jacobian_matrix();
        let gradient: Vec<Poly> = (0..n)
            .map(|k| {
                (0..n).fold(Poly::zero(n), |acc, j| &acc + &(jac.get(j, k) * &diffs[j]))
            })
            .collect();
        poincare_solve(&gradient)
    }
}

impl fmt::Display for PolyEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{} -> {}", i + 1, p)?;
        }
        Ok(())
    }
}

/// A derivation `sum_j coefficients[j] d_j` of `P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub coefficients: Vec<Poly>,
}

impl Derivation {
    pub fn new(coefficients: Vec<Poly>) -> Result<Self> {
        let n = coefficients.len();
        if let Some(bad) = coefficients.iter().find(|c| c.nvars() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: bad.nvars(),
            });
        }
        Ok(Derivation { coefficients })
    }

    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let mut out = Poly::zero(self.n());
        for (j, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = &out + &(c * &p.partial(j)?);
        }
        Ok(out)
    }

    pub fn to_weyl(&self) -> WeylElement {
        WeylElement::from_vector_field(&self.coefficients)
    }
}

/// Endomorphism of `A_n` given by the images of all generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylEndo {
    pub x_images: Vec<WeylElement>,
    pub d_images: Vec<WeylElement>,
}

/// One defining-relation check and its residual `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub residual: WeylElement,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl WeylEndo {
    pub fn new(x_images: Vec<WeylElement>, d_images: Vec<WeylElement>) -> Result<Self> {
        let n = x_images.len();
        if d_images.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: d_images.len(),
            });
        }
        if let Some(bad) = x_images.iter().chain(&d_images).find(|w| w.nvars() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: bad.nvars(),
            });
        }
        Ok(WeylEndo { x_images, d_images })
    }

    pub fn identity(n: usize) -> Self {
        WeylEndo {
            x_images: (0..n).map(|i| WeylElement::x(n, i)).collect(),
            d_images: (0..n).map(|i| WeylElement::d(n, i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.x_images.len()
    }

    /// Checks `[x_i', x_j'] = 0` and `[d_i', d_j'] = 0` for `i <= j`, and
    /// `[d_i', x_j'] = delta_ij` for all `i, j`.
    pub fn verify(&self) -> RelationReport {
        let n = self.n();
        let mut checks = Vec::with_capacity(n * n + n * (n + 1));
        let comm = |a: &WeylElement, b: &WeylElement| a.commutator(b).expect("same ring");
        for i in 0..n {
            for j in i..n {
                checks.push(RelationCheck {
                    relation: format!("[x{}', x{}'] = 0", i + 1, j + 1),
                    residual: comm(&self.x_images[i], &self.x_images[j]),
                });
            }
        }
        for i in 0..n {
            for j in i..n {
                checks.push(RelationCheck {
                    relation: format!("[d{}', d{}'] = 0", i + 1, j + 1),
                    residual: comm(&self.d_images[i], &self.d_images[j]),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let c = comm(&self.d_images[i], &self.x_images[j]);
                let delta = if i == j { 1 } else { 0 };
                checks.push(RelationCheck {
                    relation: format!("[d{}', x{}'] = {}", i + 1, j + 1, delta),
                    residual: if i == j { &c - &WeylElement::one(n) } else { c },
                });
            }
        }
        RelationReport { checks }
    }

    /// Maximum degree over all `2n` images.
    pub fn degree(&self) -> u32 {
        self.x_images
            .iter()
            .chain(&self.d_images)
            .map(WeylElement::degree)
            .max()
            .and_then(Degree::finite)
            .unwrap_or(0)
    }

    /// `phi(a)`: substitutes the images into the normal form of `a`.
    pub fn image(&self, a: &WeylElement) -> Result<WeylElement> {
        let n = self.n();
        if a.nvars() != n {
            return Err(Error::Dimension {
                expected: n,
                found: a.nvars(),
            });
        }
        let mut xpow: Vec<Vec<WeylElement>> = vec![vec![WeylElement::one(n)]; n];
        let mut dpow: Vec<Vec<WeylElement>> = vec![vec![WeylElement::one(n)]; n];
        let mut out = WeylElement::zero(n);
        for (m, c) in a.terms() {
            let mut word = WeylElement::scalar(n, c.clone());
            for (pows, gens, exps) in [
                (&mut xpow, &self.x_images, m.x.exponents()),
                (&mut dpow, &self.d_images, m.d.exponents()),
            ] {
                for (i, &e) in exps.iter().enumerate() {
                    while pows[i].len() <= e as usize {
                        let next = pows[i].last().unwrap() * &gens[i];
                        pows[i].push(next);
                    }
                    if e > 0 {
                        word = &word * &pows[i][e as usize];
                    }
                }
            }
            out = &out + &word;
        }
        Ok(out)
    }

    /// `phi(a)` applied to `p`, evaluated generator by generator without
    /// expanding `phi(a)`.
    pub fn act(&self, a: &WeylElement, p: &Poly) -> Result<Poly> {
        let n = self.n();
        if a.nvars() != n || p.nvars() != n {
            return Err(Error::Dimension {
                expected: n,
                found: if a.nvars() != n { a.nvars() } else { p.nvars() },
            });
        }
        let mut out = Poly::zero(n);
        for (m, c) in a.terms() {
            let mut v = p.clone();
            for (i, &e) in m.d.exponents().iter().enumerate().rev() {
                for _ in 0..e {
                    v = self.d_images[i].apply(&v)?;
                }
            }
            for (i, &e) in m.x.exponents().iter().enumerate().rev() {
                for _ in 0..e {
                    if v.is_zero() {
                        break;
                    }
                    v = self.x_images[i].apply(&v)?;
                }
            }
            out = &out + &v.scale(c);
        }
        Ok(out)
    }

    /// An index `j` with `[a, x_j'] != 0`, if any.
    pub fn non_commuting_x_image(&self, a: &WeylElement) -> Result<Option<usize>> {
        for (j, x) in self.x_images.iter().enumerate() {
            if !a.commutator(x)?.is_zero() {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for WeylEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.x_images.iter().enumerate() {
            writeln!(f, "x{}' = {}", i + 1, x)?;
        }
        for (i, d) in self.d_images.iter().enumerate() {
            writeln!(f, "d{}' = {}", i + 1, d)?;
        }
        Ok(())
    }
}
