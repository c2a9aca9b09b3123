//! Order filtration on `A_n = D(P_n)` and its associated graded algebra
//! `gr A_n = P_{2n}`, with `d_i` symbolized as `x_{n+i}`.

use crate::endo::{PolyEndo, WeylEndo};
use crate::error::{Error, Result};
use crate::poisson::PoissonContext;
use crate::ratpoly::{Degree, Monomial, Poly};
use crate::weyl::WeylElement;

/// Order of `a` as a differential operator.
pub fn order(a: &WeylElement) -> Degree {
    a.order()
}

/// Reads every term `x^alpha d^beta` of `a` as the monomial `x^alpha x_{n+1}^{beta_1}..` in `P_{2n}`.
pub fn symbolize(a: &WeylElement) -> Poly {
    let n = a.nvars();
    Poly::from_terms(
        2 * n,
        a.terms().map(|(m, c)| {
            let mut e = m.x.exponents().to_vec();
            e.extend_from_slice(m.d.exponents());
            (Monomial::from_exponents(e), c.clone())
        }),
    )
}

/// Image of `a` in `gr(A_n)_{order(a)}`.
pub fn principal_symbol(a: &WeylElement) -> Result<Poly> {
    match a.order() {
        Degree::MinusInfinity => Err(Error::ZeroInput("principal symbol of 0")),
        Degree::Finite(k) => Ok(symbolize(&a.order_part(k))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolBracketReport {
    /// Symbol of `[a, b]` in degree `order(a) + order(b) - 1` (zero if that is negative).
    pub commutator_symbol: Poly,
    pub poisson_bracket: Poly,
}

impl SymbolBracketReport {
    pub fn matches(&self) -> bool {
        self.commutator_symbol == self.poisson_bracket
    }
}

/// Compares the degree-`(i + j - 1)` part of `[a, b]` with `{sigma(a), sigma(b)}`.
pub fn symbol_bracket_check(a: &WeylElement, b: &WeylElement) -> Result<SymbolBracketReport> {
    let (Degree::Finite(i), Degree::Finite(j)) = (a.order(), b.order()) else {
        return Err(Error::ZeroInput("symbol bracket of 0"));
    };
    let n = a.nvars();
    let c = a.commutator(b)?;
    let commutator_symbol = if i + j == 0 {
        // both are functions, so [a, b] = 0
        symbolize(&c)
    } else {
        symbolize(&c.order_part(i + j - 1))
    };
    let ctx = PoissonContext::new(n);
    let poisson_bracket = ctx.bracket(&principal_symbol(a)?, &principal_symbol(b)?)?;
    Ok(SymbolBracketReport {
        commutator_symbol,
        poisson_bracket,
    })
}

/// The associated graded map of a filtration-preserving endomorphism of `A_n`,
/// as an endomorphism of `P_{2n}`.
///
/// `x_i` goes to `phi(x_i)` and `x_{n+i}` to the symbol of the order-1 part
/// of `phi(d_i)`; order-0 remainders (potentials) vanish in `gr`.
pub fn gr_endo(phi: &WeylEndo) -> Result<PolyEndo> {
    let n = phi.n();
    for (i, x) in phi.x_images.iter().enumerate() {
        if x.order() > Degree::Finite(0) {
            return Err(Error::FiltrationNotPreserved {
                generator: format!("x{}", i + 1),
                order: x.order().to_string(),
            });
        }
    }
    for (i, d) in phi.d_images.iter().enumerate() {
        if d.order() > Degree::Finite(1) {
            return Err(Error::FiltrationNotPreserved {
                generator: format!("d{}", i + 1),
                order: d.order().to_string(),
            });
        }
    }
    let mut images: Vec<Poly> = phi.x_images.iter().map(symbolize).collect();
    images.extend(phi.d_images.iter().map(|d| symbolize(&d.order_part(1))));
    debug_assert!(images.iter().all(|p| p.nvars() == 2 * n));
    PolyEndo::new(images)
}
