use std::fmt;

use super::Poly;
use crate::error::{Error, Result};

/// Dense row-major matrix of polynomials sharing one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let nvars = entries[0].nvars();
        if let Some(bad) = entries.iter().find(|e| e.nvars() != nvars) {
            return Err(Error::Dimension {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        Ok(PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, nvars: usize, f: impl Fn(usize, usize) -> Poly) -> Self {
        let entries: Vec<Poly> = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        assert!(entries.iter().all(|e| e.nvars() == nvars));
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        PolyMatrix::from_fn(n, n, nvars, |i, j| {
            if i == j {
                Poly::one(nvars)
            } else {
                Poly::zero(nvars)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.cols, self.rows, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(PolyMatrix::from_fn(self.rows, other.cols, self.nvars, |i, j| {
            (0..self.cols).fold(Poly::zero(self.nvars), |acc, k| {
                &acc + &(self.get(i, k) * other.get(k, j))
            })
        }))
    }

    pub fn scale(&self, c: &Poly) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, self.cols, self.nvars, |i, j| self.get(i, j) * c)
    }

    /// Copy with row `i` replaced.
    pub fn with_row(&self, i: usize, row: &[Poly]) -> Result<PolyMatrix> {
        if row.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: row.len(),
            });
        }
        let mut entries = self.entries.clone();
        entries[i * self.cols..(i + 1) * self.cols].clone_from_slice(row);
        PolyMatrix::new(self.rows, self.cols, entries)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let entries = (0..self.rows)
            .filter(|&i| i != skip_row)
            .flat_map(|i| {
                (0..self.cols)
                    .filter(move |&j| j != skip_col)
                    .map(move |j| (i, j))
            })
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            nvars: self.nvars,
            entries,
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Determinant: cofactor expansion below 4x4, fraction-free elimination above.
    pub fn det(&self) -> Result<Poly> {
        self.require_square()?;
        if self.rows < 4 {
            Ok(self.det_laplace())
        } else {
            Ok(self.det_bareiss())
        }
    }

    /// Laplace expansion along the first row, at any size.
    pub fn det_cofactor(&self) -> Result<Poly> {
        self.require_square()?;
        Ok(self.det_laplace())
    }

    fn det_laplace(&self) -> Poly {
        match self.rows {
            1 => self.entries[0].clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            n => {
                let mut acc = Poly::zero(self.nvars);
                for j in 0..n {
                    if self.get(0, j).is_zero() {
                        continue;
                    }
                    let term = self.get(0, j) * &self.minor(0, j).det_laplace();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    fn det_bareiss(&self) -> Poly {
        let n = self.rows;
        let mut a: Vec<Vec<Poly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = Poly::one(self.nvars);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Poly::zero(self.nvars),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Transposed cofactor matrix, so `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(PolyMatrix::identity(1, self.nvars));
        }
        let cofactors: Vec<Poly> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let m = self.minor(i, j).det().expect("square minor");
                if (i + j) % 2 == 0 {
                    m
                } else {
                    -m
                }
            })
            .collect();
        Ok(PolyMatrix::from_fn(n, n, self.nvars, |i, j| cofactors[j * n + i].clone()))
    }

    /// `true` if every entry is the zero polynomial except a common constant on the diagonal.
    pub fn is_scalar_identity_multiple(&self, c: &Poly) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j) == c
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    #[cfg(test)]
    pub(crate) fn integer(rows: usize, cols: usize, nvars: usize, values: &[i64]) -> PolyMatrix {
        PolyMatrix::from_fn(rows, cols, nvars, |i, j| Poly::constant(nvars, super::rat(values[i * cols + j])))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::testutil::arb_poly;
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, n: usize, cells: &[&str]) -> PolyMatrix {
        PolyMatrix::new(rows, cols, cells.iter().map(|s| parse_poly(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn shear_jacobian_det_and_adjugate() {
        let j = m(2, 2, 2, &["1", "2*x2", "0", "1"]);
        assert_eq!(j.det().unwrap(), Poly::one(2));
        assert_eq!(j.adjugate().unwrap(), m(2, 2, 2, &["1", "-2*x2", "0", "1"]));
    }

    #[test]
    fn identity_det() {
        assert_eq!(PolyMatrix::identity(3, 2).det().unwrap(), Poly::one(2));
        assert_eq!(PolyMatrix::identity(5, 1).det().unwrap(), Poly::one(1));
    }

    #[test]
    fn non_square_rejected() {
        let a = m(1, 2, 1, &["x1", "1"]);
        assert_eq!(a.det().unwrap_err(), Error::NotSquare { rows: 1, cols: 2 });
        assert!(a.adjugate().is_err());
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        // permutation with a zero leading entry; det = -1
        let p = PolyMatrix::integer(4, 4, 1, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]);
        assert_eq!(p.det().unwrap(), Poly::one(1));
        let q = PolyMatrix::integer(4, 4, 1, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(q.det().unwrap(), -Poly::one(1));
        let singular = PolyMatrix::integer(4, 4, 1, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 0, 1, 0, 0, 0, 0, 1]);
        assert!(singular.det().unwrap().is_zero());
    }

    fn square(n: usize, nvars: usize, deg: u32) -> impl Strategy<Value = PolyMatrix> {
        proptest::collection::vec(arb_poly(nvars, deg, 3), n * n)
            .prop_map(move |es| PolyMatrix::new(n, n, es).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn adjugate_identity_2x2(a in square(2, 2, 3)) {
            let d = a.det().unwrap();
            prop_assert!(a.mul(&a.adjugate().unwrap()).unwrap().is_scalar_identity_multiple(&d));
        }

        #[test]
        fn adjugate_identity_3x3(a in square(3, 2, 3)) {
            let d = a.det().unwrap();
            prop_assert!(a.mul(&a.adjugate().unwrap()).unwrap().is_scalar_identity_multiple(&d));
            prop_assert!(a.adjugate().unwrap().mul(&a).unwrap().is_scalar_identity_multiple(&d));
        }

        #[test]
        fn det_is_multiplicative(a in square(2, 2, 2), b in square(2, 2, 2)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        }

        #[test]
        fn bareiss_matches_cofactor(a in square(4, 2, 2)) {
            prop_assert_eq!(a.det().unwrap(), a.det_cofactor().unwrap());
        }
    }
}
