//! Dense arbitrary-precision integer matrices and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(i, j) * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Exact determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(src, c) * k;
            if !v.is_zero() {
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, src) * k;
            if !v.is_zero() {
                self.data[r * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + c]);
            self.data[i * self.cols + c] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }
}

/// `u * a * v = s` with `u`, `v` unimodular; the inverses are tracked too.
#[derive(Clone, Debug)]
pub struct SNFResult {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SNFResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

struct Tracker {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.s.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        self.s.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        self.u_inv.add_col(src, dst, &-k);
    }
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        self.v_inv.add_row(src, dst, &-k);
    }
    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SNFResult {
    let (m, n) = (a.rows, a.cols);
    let mut t = Tracker {
        s: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    for k in 0..m.min(n) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                let x = t.s.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < t.s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        t.swap_rows(k, pi);
        t.swap_cols(k, pj);
        loop {
            let mut clean = true;
            for i in k + 1..m {
                if t.s.get(i, k).is_zero() {
                    continue;
                }
                let q = t.s.get(i, k).div_floor(t.s.get(k, k));
                t.add_row(i, k, &-q);
                if !t.s.get(i, k).is_zero() {
                    clean = false;
                    if t.s.get(i, k).abs() < t.s.get(k, k).abs() {
                        t.swap_rows(i, k);
                    }
                }
            }
            for j in k + 1..n {
                if t.s.get(k, j).is_zero() {
                    continue;
                }
                let q = t.s.get(k, j).div_floor(t.s.get(k, k));
                t.add_col(j, k, &-q);
                if !t.s.get(k, j).is_zero() {
                    clean = false;
                    if t.s.get(k, j).abs() < t.s.get(k, k).abs() {
                        t.swap_cols(j, k);
                    }
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row.
            let p = t.s.get(k, k).clone();
            let bad = (k + 1..m).find(|&i| (k + 1..n).any(|j| !t.s.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => t.add_row(k, i, &BigInt::one()),
                None => break,
            }
        }
        if t.s.get(k, k).is_negative() {
            t.negate_row(k);
        }
    }
    SNFResult {
        u: t.u,
        u_inv: t.u_inv,
        s: t.s,
        v: t.v,
        v_inv: t.v_inv,
    }
}

/// Cokernel of an integer matrix `r` (`m` rows), presented in invariant-factor
/// form: `Z^m / col(r) = (+) Z/d_i` for the factors `d_i > 1`.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub factors: Vec<BigInt>,
    /// Row `t` gives coordinate `t` of the class of `y` as `row . y mod d_t`.
    pub project: Vec<Vec<BigInt>>,
    /// Column `t` is a lift in `Z^m` of the `t`-th generator.
    pub lift: Vec<Vec<BigInt>>,
}

/// Requires `col(r)` to have full rank `m` (the quotient is finite).
pub fn cokernel(r: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(r);
    let m = r.rows;
    let diag = snf.diagonal();
    let mut out = Cokernel {
        factors: Vec::new(),
        project: Vec::new(),
        lift: Vec::new(),
    };
    for i in 0..m {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        assert!(
            !d.is_zero(),
            "cokernel of a matrix without full row rank is infinite"
        );
        if d.is_one() {
            continue;
        }
        out.factors.push(d);
        out.project.push(snf.u.row(i));
        out.lift.push(snf.u_inv.column(i));
    }
    out
}

/// A basis of the integer kernel `{x : r x = 0}`, as columns.
pub fn integer_kernel(r: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(r);
    let rank = snf.rank();
    (rank..r.cols).map(|j| snf.v.column(j)).collect()
}

/// Solves `r x = b` over the integers, returning the particular solution
/// obtained through the Smith form, or `None` if no integer solution exists.
pub fn solve_integer(snf: &SNFResult, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let rank = snf.rank();
    let mut y = vec![BigInt::zero(); snf.v.rows];
    for (i, val) in ub.iter().enumerate() {
        if i < rank {
            let (q, rem) = val.div_rem(&diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}
