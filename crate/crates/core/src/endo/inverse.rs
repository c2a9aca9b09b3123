use num_traits::{One, Zero};

use super::PolyEndo;
use crate::error::{Error, Result};
use crate::linalg;
use crate::ratpoly::{rat, Monomial, Poly, Rational};

/// Splits off the affine part `b + A x` of `sigma` and returns
/// `(sigma ∘ lambda, lambda)` with `lambda(x) = A^{-1}(x - b)`, so the first
/// component has images `x_i + (terms of degree >= 2)`.
pub fn normalize_affine(sigma: &PolyEndo) -> Result<(PolyEndo, PolyEndo)> {
    let n = sigma.n();
    let linear: Vec<Vec<Rational>> = sigma
        .images()
        .iter()
        .map(|p| (0..n).map(|j| p.coeff(&Monomial::var(n, j))).collect())
        .collect();
    let inv = linalg::invert(&linear).ok_or(Error::SingularLinearPart)?;
    let shifted: Vec<Poly> = (0..n)
        .map(|j| &Poly::var(n, j) - &Poly::constant(n, sigma.image(j).constant_term()))
        .collect();
    let lambda_images = (0..n)
        .map(|i| {
            (0..n).fold(Poly::zero(n), |acc, j| &acc + &shifted[j].scale(&inv[i][j]))
        })
        .collect();
    let lambda = PolyEndo::new(lambda_images)?;
    Ok((sigma.compose(&lambda)?, lambda))
}

fn check_unipotent(sigma: &PolyEndo) -> Result<()> {
    let n = sigma.n();
    for (i, p) in sigma.images().iter().enumerate() {
        let low = p.truncate(1);
        if low != Poly::var(n, i) {
            return Err(Error::NotUnipotent {
                index: i + 1,
                image: p.to_string(),
            });
        }
    }
    Ok(())
}

/// `sigma ∘ tau` with every intermediate truncated above `max_degree`.
///
/// Exact modulo degree `max_degree + 1` when `tau`'s images have no constant term.
pub fn compose_truncated(sigma: &PolyEndo, tau: &PolyEndo, max_degree: u32) -> Result<PolyEndo> {
    let images = tau
        .images()
        .iter()
        .map(|t| t.substitute_truncated(sigma.images(), max_degree))
        .collect::<Result<Vec<_>>>()?;
    PolyEndo::new(images)
}

/// Formal inverse of a Jacobian map of the form `x_i + higher`, modulo degree
/// `max_degree + 1`.
///
/// Writing `sigma(x) = x + h(x)`, the inverse `g` satisfies `g = x - h(g)`; each
/// fixed-point step fixes one more homogeneous degree.
pub fn truncated_inverse(sigma: &PolyEndo, max_degree: u32) -> Result<PolyEndo> {
    if !sigma.is_jacobian_map() {
        return Err(Error::NotJacobianMap {
            det: sigma.jacobian_det().to_string(),
        });
    }
    check_unipotent(sigma)?;
    let n = sigma.n();
    let higher: Vec<Poly> = (0..n)
        .map(|i| sigma.image(i) - &Poly::var(n, i))
        .collect();
    let mut g: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    for _ in 1..max_degree.max(1) {
        let next: Vec<Poly> = (0..n)
            .map(|i| {
                let h = higher[i].substitute_truncated(&g, max_degree)?;
                Ok(&Poly::var(n, i) - &h)
            })
            .collect::<Result<_>>()?;
        if next == g {
            break;
        }
        g = next;
    }
    PolyEndo::new(g.into_iter().map(|p| p.truncate(max_degree)).collect())
}

/// `(sigma ∘ tau - id, tau ∘ sigma - id)` modulo degree `max_degree + 1`.
pub fn roundtrip_residuals(sigma: &PolyEndo, tau: &PolyEndo, max_degree: u32) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let n = sigma.n();
    let resid = |e: PolyEndo| -> Vec<Poly> {
        e.images()
            .iter()
            .enumerate()
            .map(|(i, p)| (p - &Poly::var(n, i)).truncate(max_degree))
            .collect()
    };
    Ok((
        resid(compose_truncated(sigma, tau, max_degree)?),
        resid(compose_truncated(tau, sigma, max_degree)?),
    ))
}

/// Integrates a closed polynomial 1-form `sum f_i dx_i` along rays from the
/// origin: `p = sum_i sum_m c x_i x^m / (|m| + 1)`, so `d_i p = f_i` and `p(0) = 0`.
pub fn poincare_solve(form: &[Poly]) -> Result<Poly> {
    let n = form.len();
    if let Some(bad) = form.iter().find(|f| f.nvars() != n) {
        return Err(Error::Dimension {
            expected: n,
            found: bad.nvars(),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            if form[i].partial(j)? != form[j].partial(i)? {
                return Err(Error::NotClosed { i: i + 1, j: j + 1 });
            }
        }
    }
    let mut out = Poly::zero(n);
    for (i, f) in form.iter().enumerate() {
        for (m, c) in f.terms() {
            let weight = Rational::one() / rat(m.degree() as i64 + 1);
            out = &out + &Poly::monomial(n, m.mul(&Monomial::var(n, i)), c * &weight);
        }
    }
    debug_assert!(out.constant_term().is_zero());
    Ok(out)
}
