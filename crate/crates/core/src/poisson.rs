//! The canonical Poisson structure on `P_{2n} = K[x_1..x_n, x_{n+1}..x_{2n}]`,
//! where `x_{n+i}` plays the role of the symbol of `d_i`:
//!
//! ```text
//! {x_i, x_j} = 0,  {x_{n+i}, x_{n+j}} = 0,  {x_{n+i}, x_j} = delta_ij
//! {f, g} = sum_i (df/dx_{n+i} dg/dx_i - df/dx_i dg/dx_{n+i})
//! ```

use num_traits::{One, Signed};

use crate::endo::{PolyEndo, WeylEndo};
use crate::error::{Error, Result};
use crate::ratpoly::{rat, Poly, PolyMatrix, Rational};
use crate::weyl::WeylElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoissonContext {
    n: usize,
}

/// A bracket `{x_i', x_j'}` that differs from `{x_i, x_j}`; `i < j` are one-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketFailure {
    pub i: usize,
    pub j: usize,
    pub residual: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonCheck {
    pub failures: Vec<BracketFailure>,
}

impl PoissonCheck {
    pub fn is_poisson(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// `B_{ij} = {sigma(x_i), sigma(x_j)}`.
    pub brackets: PolyMatrix,
    /// Whether `B = J Omega J^t` holds exactly.
    pub chain_rule_holds: bool,
    pub is_poisson: bool,
    pub jacobian_det: Poly,
    /// For Poisson maps: whether `det J` is `+1` or `-1`. `None` otherwise.
    pub det_is_unit_sign: Option<bool>,
}

impl PoissonContext {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "n must be positive");
        PoissonContext { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    /// `Omega_{ij} = {x_i, x_j}`.
    pub fn omega(&self) -> PolyMatrix {
        let n = self.n;
        PolyMatrix::from_fn(2 * n, 2 * n, 2 * n, |i, j| {
            let v = if i >= n && j + n == i {
                1
            } else if i < n && j == i + n {
                -1
            } else {
                0
            };
            Poly::constant(2 * n, rat(v))
        })
    }

    fn check(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::Dimension {
                expected: self.nvars(),
                found: p.nvars(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.check(f)?;
        self.check(g)?;
        let n = self.n;
        let mut out = Poly::zero(2 * n);
        for i in 0..n {
            let a = &f.partial(n + i)? * &g.partial(i)?;
            let b = &f.partial(i)? * &g.partial(n + i)?;
            out = &(&out + &a) - &b;
        }
        Ok(out)
    }

    /// Coefficients of the derivation `{f, .}` on `d_1..d_{2n}`.
    pub fn hamiltonian_field(&self, f: &Poly) -> Result<Vec<Poly>> {
        self.check(f)?;
        let n = self.n;
        let mut coeffs = vec![Poly::zero(2 * n); 2 * n];
        for i in 0..n {
            coeffs[i] = f.partial(n + i)?;
            coeffs[n + i] = -f.partial(i)?;
        }
        Ok(coeffs)
    }

    fn check_endo(&self, sigma: &PolyEndo) -> Result<()> {
        if sigma.n() != self.nvars() {
            return Err(Error::Dimension {
                expected: self.nvars(),
                found: sigma.n(),
            });
        }
        Ok(())
    }

    fn bracket_matrix(&self, sigma: &PolyEndo) -> Result<PolyMatrix> {
        let m = self.nvars();
        let mut entries = vec![Poly::zero(m); m * m];
        for i in 0..m {
            for j in i + 1..m {
                let b = self.bracket(sigma.image(i), sigma.image(j))?;
                entries[j * m + i] = -&b;
                entries[i * m + j] = b;
            }
        }
        PolyMatrix::new(m, m, entries)
    }

    /// Compares `{x_i', x_j'}` with `{x_i, x_j}` for `i < j`.
    pub fn is_poisson_endo(&self, sigma: &PolyEndo) -> Result<PoissonCheck> {
        self.check_endo(sigma)?;
        let m = self.nvars();
        let omega = self.omega();
        let mut failures = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let b = self.bracket(sigma.image(i), sigma.image(j))?;
                let residual = &b - omega.get(i, j);
                if !residual.is_zero() {
                    failures.push(BracketFailure {
                        i: i + 1,
                        j: j + 1,
                        residual,
                    });
                }
            }
        }
        Ok(PoissonCheck { failures })
    }

    /// Bracket matrix, chain-rule identity and the `det J = ±1` check.
    pub fn structure_identity(&self, sigma: &PolyEndo) -> Result<StructureReport> {
        self.check_endo(sigma)?;
        let brackets = self.bracket_matrix(sigma)?;
        let jac = sigma.jacobian_matrix();
        let chain = jac.mul(&self.omega())?.mul(&jac.transpose())?;
        let is_poisson = brackets == self.omega();
        let jacobian_det = jac.det()?;
        let det_is_unit_sign = is_poisson.then(|| {
            jacobian_det
                .as_constant()
                .is_some_and(|c| c.abs().is_one())
        });
        Ok(StructureReport {
            chain_rule_holds: chain == brackets,
            brackets,
            is_poisson,
            jacobian_det,
            det_is_unit_sign,
        })
    }

    /// Lifts a Poisson endomorphism to `A_{2n}`: `x_i -> x_i'`,
    /// `d_i -> {x_{n+i}', .}` for `i <= n` and `d_i -> {-x_{i-n}', .}` for `i > n`.
    pub fn lift_to_weyl(&self, sigma: &PolyEndo) -> Result<WeylEndo> {
        let check = self.is_poisson_endo(sigma)?;
        if let Some(f) = check.failures.first() {
            return Err(Error::NotPoisson {
                i: f.i,
                j: f.j,
                residual: f.residual.to_string(),
            });
        }
        let n = self.n;
        let d_images = (0..2 * n)
            .map(|i| {
                let h = if i < n {
                    sigma.image(n + i).clone()
                } else {
                    -sigma.image(i - n)
                };
                Ok(WeylElement::from_vector_field(&self.hamiltonian_field(&h)?))
            })
            .collect::<Result<Vec<_>>>()?;
        WeylEndo::new(
            sigma.images().iter().map(WeylElement::from_poly).collect(),
            d_images,
        )
    }
}

/// The symplectic shear generated by `h`: `x -> x + {h, x}` for `h` depending
/// on positions only or on momenta only, which makes the map exact.
pub fn shear(ctx: &PoissonContext, h: &Poly) -> Result<PolyEndo> {
    let m = ctx.nvars();
    let images = (0..m)
        .map(|i| Ok(&Poly::var(m, i) + &ctx.bracket(h, &Poly::var(m, i))?))
        .collect::<Result<Vec<_>>>()?;
    PolyEndo::new(images)
}

/// The linear symplectic map `x_i -> x_{n+i}`, `x_{n+i} -> -x_i`.
pub fn rotation(ctx: &PoissonContext) -> PolyEndo {
    let n = ctx.n();
    let m = 2 * n;
    let images = (0..m)
        .map(|i| {
            if i < n {
                Poly::var(m, n + i)
            } else {
                Poly::var(m, i - n).scale(&-Rational::one())
            }
        })
        .collect();
    PolyEndo::new(images).expect("square")
}
