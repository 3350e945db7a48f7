//! Dense linear algebra over the finite fields of [`crate::gf`].
//!
//! Everything downstream (code construction, nesting checks, Galois descent)
//! reduces to row-echelon computations here.  Pivoting always picks the first
//! nonzero entry, so results are deterministic and reproducible across runs.

use crate::error::{Error, Result};
use crate::gf::Field;

/// A dense rows x cols matrix with entries stored as field encodings.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<u64>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|&e| e >= field.order()) {
            return Err(Error::InvalidParameter("entry is not a field encoding".into()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<u64>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.field.order());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f.clone(), self.rows, rhs.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get(r, i);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(i, c);
                    if b != 0 {
                        let cur = out.get(r, c);
                        out.set(r, c, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &Matrix) -> Result<Matrix> {
        if self.field != below.field {
            return Err(Error::MixedFields);
        }
        if self.cols != below.cols {
            return Err(Error::ShapeMismatch("stacking different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Matrix::new(self.field.clone(), self.rows + below.rows, self.cols, data)
    }

    /// Reduced row-echelon form restricted to pivots in `allowed`; columns
    /// outside the mask are never chosen as pivots but are still eliminated
    /// against.  Returns (rref, rank, pivot columns).
    pub fn rref_restricted(&self, allowed: &[bool]) -> (Matrix, usize, Vec<usize>) {
        assert_eq!(allowed.len(), self.cols);
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..m.cols {
            if !allowed[col] || pr == m.rows {
                continue;
            }
            let Some(sel) = (pr..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if sel != pr {
                for c in 0..m.cols {
                    let tmp = m.get(pr, c);
                    m.set(pr, c, m.get(sel, c));
                    m.set(sel, c, tmp);
                }
            }
            let inv = f.inv(m.get(pr, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                m.set(pr, c, f.mul(m.get(pr, c), inv));
            }
            for r in 0..m.rows {
                if r != pr && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    for c in 0..m.cols {
                        let v = f.sub(m.get(r, c), f.mul(factor, m.get(pr, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            pr += 1;
        }
        (m, pr, pivots)
    }

    /// Reduced row-echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        self.rref_restricted(&vec![true; self.cols])
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Drops all-zero rows (useful after `rref`).
    pub fn nonzero_rows(&self) -> Matrix {
        let rows: Vec<Vec<u64>> = (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|&e| e != 0))
            .map(|r| self.row(r).to_vec())
            .collect();
        if rows.is_empty() {
            return Matrix::zero(self.field.clone(), 0, self.cols);
        }
        Matrix::from_rows(self.field.clone(), rows).expect("rows share the original width")
    }

    /// Basis of the right kernel {v : M v = 0}, one vector per row, ordered
    /// by free column.  A full-rank square matrix yields a 0 x cols result.
    pub fn kernel(&self) -> Matrix {
        let f = self.field.clone();
        let (r, rank, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::with_capacity(self.cols - rank);
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return Matrix::zero(f, 0, self.cols);
        }
        Matrix::from_rows(f, basis).expect("kernel rows share the matrix width")
    }

    /// CSV rendering of the raw encodings, one row per line.
    pub fn to_csv(&self) -> String {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Whether every row of `b` lies in the row space of `a`.
pub fn rowspace_contains(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.field != b.field {
        return Err(Error::MixedFields);
    }
    if a.cols != b.cols {
        return Err(Error::ShapeMismatch("row spaces of different lengths".into()));
    }
    let ra = a.rank();
    let stacked = a.stack(b)?;
    Ok(stacked.rank() == ra)
}

/// Given the row space of `v` over F_{p^K}, stable under the `sub_degree`-fold
/// Frobenius, returns a basis of the fixed subspace as a matrix over
/// F_{p^sub_degree} with the same number of rows.
///
/// The reduced echelon basis of a Frobenius-stable space is unique, hence
/// fixed entrywise; its entries therefore descend along the subfield
/// embedding.  A non-stable input surfaces as `NotGaloisStable`.
pub fn frobenius_fixed_subspace(v: &Matrix, sub_degree: u32) -> Result<Matrix> {
    let big = v.field.clone();
    if sub_degree == 0 || big.k() % sub_degree != 0 {
        return Err(Error::NotASubfield { sub: sub_degree, sup: big.k() });
    }
    let (r, rank, _) = v.rref();
    let small = Field::new(big.p(), sub_degree)?;
    let emb = small.embedding(&big)?;
    let mut rows = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut row = Vec::with_capacity(v.cols);
        for c in 0..v.cols {
            let e = r.get(i, c);
            if big.frobenius(e, sub_degree) != e {
                return Err(Error::NotGaloisStable);
            }
            row.push(emb.section(e).ok_or(Error::NotGaloisStable)?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(Matrix::zero(small, 0, v.cols));
    }
    Matrix::from_rows(small, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f9() -> Field {
        Field::new(3, 2).unwrap()
    }

    #[test]
    fn rref_of_a_known_matrix() {
        // Over F_9 with w = enc 3: rows (1, w, 2) and (w, 2, 2w) are
        // proportional, so the rank is 1.
        let m = Matrix::from_rows(f9(), vec![vec![1, 3, 2], vec![3, 2, 6]]).unwrap();
        let (r, rank, pivots) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
        assert_eq!(r.row(0), &[1, 3, 2]);
        assert_eq!(r.row(1), &[0, 0, 0]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = Matrix::from_rows(f9(), vec![vec![1, 3, 2], vec![0, 1, 5]]).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.rows(), 1);
        let prod = m.mul(&ker.transpose()).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn kernel_of_full_rank_square_is_empty() {
        let m = Matrix::identity(f9(), 3);
        assert_eq!(m.kernel().rows(), 0);
    }

    #[test]
    fn rowspace_partial_order() {
        let a = Matrix::from_rows(f9(), vec![vec![1, 0, 1], vec![0, 1, 2]]).unwrap();
        // row0 + row1 in characteristic 3: the last entry is 1 + 2 = 0.
        let b = Matrix::from_rows(f9(), vec![vec![1, 1, 0]]).unwrap();
        assert!(rowspace_contains(&a, &b).unwrap());
        assert!(!rowspace_contains(&b, &a).unwrap());
    }

    #[test]
    fn restricted_pivoting_skips_masked_columns() {
        let m = Matrix::from_rows(f9(), vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let (_, rank, pivots) = m.rref_restricted(&[false, true, true]);
        assert_eq!(rank, 2);
        assert_eq!(pivots, vec![1, 2]);
    }

    #[test]
    fn galois_descent_of_a_stable_space() {
        // Over F_81, span{(1, s)} with s in the F_9 image is stable under
        // the squared Frobenius and descends to F_9.
        let f81 = Field::new(3, 4).unwrap();
        let f9 = f9();
        let emb = f9.embedding(&f81).unwrap();
        let s = emb.map(5);
        let v = Matrix::from_rows(f81.clone(), vec![vec![1, s]]).unwrap();
        let fixed = frobenius_fixed_subspace(&v, 2).unwrap();
        assert_eq!(fixed.field(), &f9);
        assert_eq!(fixed.row(0), &[1, 5]);

        // A line through a non-fixed direction is rejected.
        let t = (0..f81.order()).find(|&x| f81.frobenius(x, 2) != x).unwrap();
        let bad = Matrix::from_rows(f81, vec![vec![1, t]]).unwrap();
        assert!(matches!(frobenius_fixed_subspace(&bad, 2), Err(Error::NotGaloisStable)));
    }

    #[test]
    fn galois_descent_of_a_conjugate_pair() {
        // span{(1, t, t^2), (1, t^9, t^18)} for non-fixed t is stable as a
        // space even though neither spanning vector is fixed: the 9-power
        // map swaps the two rows (t^81 = t in F_81).
        let f81 = Field::new(3, 4).unwrap();
        let t = (0..f81.order()).find(|&x| f81.frobenius(x, 2) != x).unwrap();
        let t2 = f81.mul(t, t);
        let v = Matrix::from_rows(
            f81.clone(),
            vec![
                vec![1, t, t2],
                vec![1, f81.frobenius(t, 2), f81.frobenius(t2, 2)],
            ],
        )
        .unwrap();
        let fixed = frobenius_fixed_subspace(&v, 2).unwrap();
        assert_eq!(fixed.rows(), 2);
        // Mapping the descended rows back up must land in the original space.
        let f9 = Field::new(3, 2).unwrap();
        let emb = f9.embedding(&f81).unwrap();
        let lifted = Matrix::from_rows(
            f81.clone(),
            fixed.row_vecs().into_iter().map(|r| r.into_iter().map(|e| emb.map(e)).collect()).collect(),
        )
        .unwrap();
        assert!(rowspace_contains(&v, &lifted).unwrap());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(0u64..9, r * c)
                .prop_map(move |data| Matrix::new(f9(), r, c, data).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let (r1, rank1, piv1) = m.rref();
            let (r2, rank2, piv2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(rank1, rank2);
            prop_assert_eq!(piv1, piv2);
        }

        #[test]
        fn kernel_dimension_theorem(m in arb_matrix()) {
            let ker = m.kernel();
            prop_assert_eq!(ker.rows(), m.cols() - m.rank());
            if ker.rows() > 0 {
                prop_assert!(m.mul(&ker.transpose()).unwrap().is_zero());
                prop_assert_eq!(ker.rank(), ker.rows());
            }
        }

        #[test]
        fn double_kernel_recovers_row_space(m in arb_matrix()) {
            // kernel(kernel(M)) spans the same space as M's rows.
            let ker = m.kernel();
            let back = ker.kernel();
            prop_assert_eq!(back.rank(), m.rank());
            prop_assert!(rowspace_contains(&back, &m).unwrap());
        }

        #[test]
        fn rowspace_contains_is_reflexive(m in arb_matrix()) {
            prop_assert!(rowspace_contains(&m, &m).unwrap());
        }
    }
}
