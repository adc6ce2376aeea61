//! Dense exact Gaussian elimination.
//!
//! The generic kernels work on unboxed field elements through [`Ops`]; the
//! public functions wrap them for `Scalar` matrices.

use crate::exactfield::{with_ops, FieldSpec, Ops, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("entry from {0} in a matrix over {1}")]
    WrongField(FieldSpec, FieldSpec),
}

/// Row-major dense matrix of scalars over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, data: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = data.first().map_or(0, |r| r.len());
        for r in &data {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, got: r.len() });
            }
            for s in r {
                if s.field() != field {
                    return Err(LinalgError::WrongField(s.field(), field));
                }
            }
        }
        Ok(Matrix { field, rows: data.len(), cols, data })
    }

    pub fn from_i64(field: FieldSpec, data: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Scalar>> = data.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, rows).expect("rectangular input")
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.data[j][i] = v.clone();
            }
        }
        t
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc = self.field.zero();
            for (a, b) in row.iter().zip(v) {
                acc = acc.add(&a.mul(b).map_err(|_| LinalgError::WrongField(b.field(), self.field))?).unwrap();
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Reduced row echelon form: rows are normalized (pivot 1) and pivot
/// columns are cleared in every other row.
#[derive(Debug, Clone)]
pub(crate) struct Rref<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

fn choose_pivot<O: Ops>(ops: &O, rows: &[Vec<O::E>], from: usize, col: usize) -> Option<usize> {
    let mut best: Option<(usize, u64)> = None;
    for (r, row) in rows.iter().enumerate().skip(from) {
        if ops.is_zero(&row[col]) {
            continue;
        }
        let w = ops.weight(&row[col]);
        if w == 0 {
            return Some(r);
        }
        if best.map_or(true, |(_, bw)| w < bw) {
            best = Some((r, w));
        }
    }
    best.map(|(r, _)| r)
}

/// Gauss-Jordan elimination. With `full = false` only rows below a pivot
/// are cleared, which is enough for rank and membership.
pub(crate) fn rref<O: Ops>(ops: &O, mut rows: Vec<Vec<O::E>>, ncols: usize, full: bool) -> Rref<O::E> {
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..ncols {
        if prow == rows.len() {
            break;
        }
        let Some(r) = choose_pivot(ops, &rows, prow, col) else { continue };
        rows.swap(prow, r);
        let inv = ops.inv(&rows[prow][col]);
        let mut nz: Vec<(usize, O::E)> = Vec::new();
        for j in col..ncols {
            if !ops.is_zero(&rows[prow][j]) {
                let v = ops.mul(&rows[prow][j], &inv);
                rows[prow][j] = v.clone();
                nz.push((j, v));
            }
        }
        let start = if full { 0 } else { prow + 1 };
        for i in start..rows.len() {
            if i == prow || ops.is_zero(&rows[i][col]) {
                continue;
            }
            let f = rows[i][col].clone();
            let row = &mut rows[i];
            for (j, v) in &nz {
                ops.sub_mul_assign(&mut row[*j], &f, v);
            }
        }
        pivots.push(col);
        prow += 1;
    }
    rows.truncate(prow);
    Rref { rows, pivots, ncols }
}

impl<E: Clone> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Basis of the right kernel from a fully reduced echelon form; one vector per free column.
pub(crate) fn kernel_from_rref<O: Ops>(ops: &O, r: &Rref<O::E>) -> Vec<Vec<O::E>> {
    let mut is_pivot = vec![false; r.ncols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in 0..r.ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![ops.zero(); r.ncols];
        v[free] = ops.one();
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            if !ops.is_zero(&row[free]) {
                v[p] = ops.neg(&row[free]);
            }
        }
        out.push(v);
    }
    out
}

/// Echelon basis of a subspace, kept for repeated membership queries.
#[derive(Debug, Clone)]
pub(crate) struct Subspace<E> {
    pub echelon: Rref<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> Subspace<E> {
    /// Residue of `v` after clearing pivot columns; zero iff `v` is in the span.
    pub fn residue<O: Ops<E = E>>(&self, ops: &O, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &p) in self.echelon.rows.iter().zip(&self.echelon.pivots) {
            if ops.is_zero(&v[p]) {
                continue;
            }
            let f = v[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !ops.is_zero(x) {
                    ops.sub_mul_assign(&mut v[j], &f, x);
                }
            }
        }
        v
    }

    pub fn contains<O: Ops<E = E>>(&self, ops: &O, v: &[E]) -> bool {
        self.residue(ops, v).iter().all(|x| ops.is_zero(x))
    }
}

/// Solves `Σ c_i b_i = v`, returning coefficients with free variables at zero.
pub(crate) fn solve_combination<O: Ops>(ops: &O, v: &[O::E], basis: &[Vec<O::E>]) -> Option<Vec<O::E>> {
    let n = basis.len();
    let dim = v.len();
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(n + 1);
        for b in basis {
            row.push(b[i].clone());
        }
        row.push(v[i].clone());
        rows.push(row);
    }
    let r = rref(ops, rows, n + 1, true);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let mut c = vec![ops.zero(); n];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        c[p] = row[n].clone();
    }
    Some(c)
}

fn lift_rows<O: Ops>(ops: &O, m: &Matrix) -> Vec<Vec<O::E>> {
    m.data.iter().map(|r| r.iter().map(|s| ops.lift(s)).collect()).collect()
}

/// Basis of `{v : M v = 0}`; empty iff `M` is injective.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    with_ops!(m.field, ops => {
        let r = rref(&ops, lift_rows(&ops, m), m.cols, true);
        kernel_from_rref(&ops, &r).into_iter().map(|v| v.iter().map(|e| ops.lower(e)).collect()).collect()
    })
}

pub fn rank(m: &Matrix) -> usize {
    with_ops!(m.field, ops => rref(&ops, lift_rows(&ops, m), m.cols, false).rank())
}

/// Membership of `v` in the span of `basis`, with expressing coefficients.
pub fn span_membership(v: &[Scalar], basis: &[Vec<Scalar>]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    for b in basis {
        if b.len() != v.len() {
            return Err(LinalgError::DimensionMismatch { expected: v.len(), got: b.len() });
        }
    }
    let Some(first) = v.first().or_else(|| basis.first().and_then(|b| b.first())) else {
        return Ok(Some(vec![]));
    };
    let field = first.field();
    for s in v.iter().chain(basis.iter().flatten()) {
        if s.field() != field {
            return Err(LinalgError::WrongField(s.field(), field));
        }
    }
    Ok(with_ops!(field, ops => {
        let vv: Vec<_> = v.iter().map(|s| ops.lift(s)).collect();
        let bb: Vec<Vec<_>> = basis.iter().map(|b| b.iter().map(|s| ops.lift(s)).collect()).collect();
        solve_combination(&ops, &vv, &bb).map(|c| c.iter().map(|e| ops.lower(e)).collect())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use proptest::test_runner::{Config, RngSeed};

    fn f(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(kernel_basis(&Matrix::identity(f(7), 3)).is_empty());
        assert!(kernel_basis(&Matrix::identity(f(0), 3)).is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        assert_eq!(kernel_basis(&Matrix::zeros(f(5), 2, 3)).len(), 3);
    }

    #[test]
    fn ones_row_over_f2() {
        let m = Matrix::from_i64(f(2), &[vec![1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![f(2).one(), f(2).one()]]);
    }

    #[test]
    fn membership_examples() {
        let q = f(0);
        assert_eq!(span_membership(&[q.zero(), q.zero()], &[vec![q.one(), q.from_i64(2)]]).unwrap(), Some(vec![q.zero()]));
        assert_eq!(span_membership(&[q.one(), q.zero()], &[vec![q.zero(), q.one()]]).unwrap(), None);
        assert!(span_membership(&[q.one()], &[vec![q.one(), q.one()]]).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (prop_oneof![Just(2u64), Just(3), Just(7), Just(0)], 1usize..6, 1usize..7).prop_flat_map(|(p, r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
                .prop_map(move |rows| Matrix::from_i64(FieldSpec::new(p).unwrap(), &rows))
        })
    }

    proptest! {
        #![proptest_config(Config { cases: 200, rng_seed: RngSeed::Fixed(3), ..Config::default() })]

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols);
            for v in &k {
                prop_assert!(m.apply(v).unwrap().iter().all(|s| s.is_zero()));
            }
        }

        #[test]
        fn membership_witness_recombines(m in arb_matrix(), pick in proptest::collection::vec(-2i64..3, 6)) {
            let field = m.field;
            let basis = m.data.clone();
            let coeffs: Vec<Scalar> = (0..basis.len()).map(|i| field.from_i64(pick[i])).collect();
            let mut v = vec![field.zero(); m.cols];
            for (b, c) in basis.iter().zip(&coeffs) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.add(&c.mul(y).unwrap()).unwrap();
                }
            }
            let w = span_membership(&v, &basis).unwrap().expect("combination lies in span");
            let mut back = vec![field.zero(); m.cols];
            for (b, c) in basis.iter().zip(&w) {
                for (x, y) in back.iter_mut().zip(b) {
                    *x = x.add(&c.mul(y).unwrap()).unwrap();
                }
            }
            prop_assert_eq!(back, v);
        }
    }
}
