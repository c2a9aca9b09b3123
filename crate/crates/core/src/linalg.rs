//! Exact linear algebra over `Q`: incremental echelon forms of polynomial
//! spans and small dense inverses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ratpoly::{Monomial, Poly, Rational};

type Row = BTreeMap<Monomial, BigInt>;

/// Echelon basis of a span of polynomials, viewed as vectors in the monomial
/// basis ordered by grlex. No two stored vectors share a leading monomial.
/// Vectors are kept as primitive integer rows and reduced fraction-free.
///
/// Because the order is graded, the vectors whose leading monomial has degree
/// `<= s` form a basis of `span ∩ P_{<=s}`.
#[derive(Clone, Debug)]
pub struct SpanEchelon {
    nvars: usize,
    pivots: BTreeMap<Monomial, Row>,
}

fn primitive_row(v: &Poly) -> Row {
    let denom = v.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut row: Row = v
        .terms()
        .map(|(m, c)| (m.clone(), c.numer() * (&denom / c.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut Row) {
    let mut g = BigInt::zero();
    for c in row.values() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for c in row.values_mut() {
            *c /= &g;
        }
    }
}

impl SpanEchelon {
    pub fn new(nvars: usize) -> Self {
        SpanEchelon {
            nvars,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce_row(&self, mut row: Row) -> Row {
        loop {
            let Some((lead, a)) = row.last_key_value() else {
                return row;
            };
            let Some(p) = self.pivots.get(lead) else {
                return row;
            };
            // row <- (b/g) row - (a/g) p with b the pivot's leading coefficient
            let b = &p[lead];
            let g = a.gcd(b);
            let (fa, fb) = (a / &g, b / &g);
            if !fb.is_one() {
                for c in row.values_mut() {
                    *c *= &fb;
                }
            }
            for (m, pc) in p {
                let sub = pc * &fa;
                match row.entry(m.clone()) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-sub);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= sub;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            make_primitive(&mut row);
        }
    }

    /// Reduces `v` against the basis; returns the part outside the current span
    /// up to a nonzero scalar (zero if `v` is already in it).
    pub fn reduce(&self, v: &Poly) -> Poly {
        assert_eq!(v.nvars(), self.nvars);
        let row = self.reduce_row(primitive_row(v));
        Poly::from_terms(self.nvars, row.into_iter().map(|(m, c)| (m, Rational::from_integer(c))))
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: &Poly) -> bool {
        assert_eq!(v.nvars(), self.nvars);
        let mut row = self.reduce_row(primitive_row(v));
        let Some((lead, c)) = row.last_key_value() else {
            return false;
        };
        let lead = lead.clone();
        if c.is_negative() {
            for c in row.values_mut() {
                *c = -&*c;
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    /// `dim(span ∩ P_{<=s})`.
    pub fn dim_up_to_degree(&self, s: u32) -> usize {
        self.pivots.keys().take_while(|m| m.degree() <= s).count()
    }

    pub fn contains(&self, v: &Poly) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "square matrix expected");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ratpoly::rat;

    #[test]
    fn span_dimensions_by_degree() {
        let mut e = SpanEchelon::new(2);
        for s in ["x1^2 + x2", "x2", "x1 + 1", "x1^2 + x1 + x2 + 1"] {
            e.insert(&parse_poly(s, 2).unwrap());
        }
        // span = <x1^2, x2, x1 + 1>
        assert_eq!(e.rank(), 3);
        assert_eq!(e.dim_up_to_degree(0), 0);
        assert_eq!(e.dim_up_to_degree(1), 2);
        assert_eq!(e.dim_up_to_degree(2), 3);
        assert!(e.contains(&parse_poly("x1^2 - 3*x2", 2).unwrap()));
        assert!(!e.contains(&Poly::one(2)));
    }

    #[test]
    fn inverse_of_integer_matrix() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(2)]]);
        assert!(invert(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_none());
    }
}
