//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`BigInt`]) or
//! rationals ([`BigRational`]); nothing ever rounds. The Smith normal form is
//! the workhorse: abelianizations, integral kernels, integral solvability and
//! the torsion of twisted cohomology are all read off from it.
//!
//! Lattices (sublattices of `Z^n`) are always stored by their row-style
//! Hermite normal form, so two lattices are equal exactly when their stored
//! bases are equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from explicit rows. All rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor for small literal matrices.
    ///
    /// Panics on ragged input; an empty slice gives the `0 x 0` matrix.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        Self::from_rows(rows, cols).expect("checked above")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[IntMatrix], cols: usize) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        IntMatrix { rows, cols, data }
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(blocks: &[IntMatrix], rows: usize) -> Self {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    m.set(i, off + j, b.get(i, j).clone());
                }
            }
            off += b.cols;
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    /// Integral inverse, present exactly when the matrix is unimodular.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = self.row(i).iter().map(rat).collect();
                r.extend((0..n).map(|j| rat(&BigInt::from((i == j) as i64))));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, n);
        debug_assert_eq!(pivots.len(), n);
        let inv = IntMatrix::from_fn(n, n, |i, j| {
            let q = &aug[i][n + j];
            debug_assert!(q.is_integer());
            q.to_integer()
        });
        Some(inv)
    }

    pub fn pow(&self, e: u32) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parses the text format: a `rows cols` header followed by the entries in
    /// row-major order, separated by arbitrary whitespace.
    pub fn parse_text(text: &str) -> Result<IntMatrix> {
        let mut tokens = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('%'))
            .flat_map(|(n, l)| l.split_whitespace().map(move |t| (n + 1, t)));
        let mut next_usize = |what: &str| -> Result<usize> {
            let (line, tok) = tokens
                .next()
                .ok_or_else(|| Error::parse(1, format!("missing {what}")))?;
            tok.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("bad {what} `{tok}`")))
        };
        let rows = next_usize("row count")?;
        let cols = next_usize("column count")?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let (line, tok) = tokens
                .next()
                .ok_or_else(|| Error::parse(0, format!("expected {} entries", rows * cols)))?;
            let v = tok
                .parse::<BigInt>()
                .map_err(|_| Error::parse(line, format!("bad integer `{tok}`")))?;
            data.push(v);
        }
        if let Some((line, tok)) = tokens.next() {
            return Err(Error::parse(line, format!("trailing token `{tok}`")));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Entries as nested `i64` rows, for reports. `None` on overflow.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{:?}", rows)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `S`, length `min(rows, cols)`: each entry divides the
    /// next, nonnegative, zeros last.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

struct SmithWork {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl SmithWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in self.a.iter_mut().chain(self.v.iter_mut()) {
                r.swap(i, j);
            }
        }
    }

    // row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let (s, d) = if src < dst {
                let (lo, hi) = m.split_at_mut(dst);
                (&lo[src], &mut hi[0])
            } else {
                let (lo, hi) = m.split_at_mut(src);
                (&hi[0], &mut lo[dst])
            };
            for (x, y) in d.iter_mut().zip(s) {
                *x += k * y;
            }
        }
    }

    // col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = k * &r[src];
            r[dst] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Smith normal form with transforms.
///
/// Pivot rule: the nonzero entry of least absolute value in the active
/// submatrix, ties broken by row-major position. The output is therefore a
/// deterministic function of the input.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut w = SmithWork {
        a: a.to_rows(),
        u: IntMatrix::identity(m).to_rows(),
        v: IntMatrix::identity(n).to_rows(),
    };
    let k = m.min(n);
    'outer: for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &w.a[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                clean &= w.a[i][t].is_zero();
            }
            for j in t + 1..n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                clean &= w.a[t][j].is_zero();
            }
            if !clean {
                continue;
            }

            let p = w.a[t][t].clone();
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !w.a[i][j].is_multiple_of(&p)));
            if let Some(i) = offender {
                w.add_row(t, i, &BigInt::one());
                continue;
            }
            if p.is_negative() {
                w.negate_row(t);
            }
            break;
        }
    }

    let s = IntMatrix::from_rows(w.a, n).expect("shape preserved");
    let invariant_factors = (0..k).map(|i| s.get(i, i).clone()).collect();
    SmithDecomposition {
        u: IntMatrix::from_rows(w.u, m).expect("shape preserved"),
        v: IntMatrix::from_rows(w.v, n).expect("shape preserved"),
        s,
        invariant_factors,
    }
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`.
///
/// Returns the nonzero rows only: echelon form, positive pivots, and every
/// entry above a pivot reduced into `[0, pivot)`.
pub fn hermite_basis(vectors: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .inspect(|v| assert_eq!(v.len(), dim, "vector length mismatch"))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut cur = 0;
    for col in 0..dim {
        if cur >= rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in cur..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            rows.swap(cur, b);
            let mut done = true;
            for r in cur + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[cur][col]);
                let (top, rest) = rows.split_at_mut(r);
                for (x, y) in rest[0].iter_mut().zip(&top[cur]) {
                    *x -= &q * y;
                }
                done &= rest[0][col].is_zero();
            }
            if done {
                break;
            }
        }
        if cur < rows.len() && !rows[cur][col].is_zero() {
            if rows[cur][col].is_negative() {
                for x in rows[cur].iter_mut() {
                    *x = -&*x;
                }
            }
            for r in 0..cur {
                let q = rows[r][col].div_floor(&rows[cur][col]);
                if q.is_zero() {
                    continue;
                }
                let (top, rest) = rows.split_at_mut(cur);
                for (x, y) in top[r].iter_mut().zip(&rest[0]) {
                    *x -= &q * y;
                }
            }
            cur += 1;
        }
    }
    rows.truncate(cur);
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows
}

fn pivot_column(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// A sublattice of `Z^dim`, stored by its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn new(dim: usize, generators: &[Vec<BigInt>]) -> Self {
        Lattice {
            dim,
            basis: hermite_basis(generators, dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        Lattice::new(dim, &IntMatrix::identity(dim).to_rows())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.basis.clone(), self.dim).expect("uniform rows")
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = v.to_vec();
        for b in &self.basis {
            let p = pivot_column(b).expect("nonzero basis row");
            if !r[p].is_multiple_of(&b[p]) {
                return false;
            }
            let q = &r[p] / &b[p];
            for (x, y) in r.iter_mut().zip(b) {
                *x -= &q * y;
            }
        }
        r.iter().all(Zero::is_zero)
    }

    /// Whether some nonzero multiple of `v` lies in the lattice.
    pub fn contains_rationally(&self, v: &[BigInt]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&IntMatrix::from_rows(rows, self.dim).expect("uniform rows")) == self.rank()
    }

    /// `(L ⊗ Q) ∩ Z^dim`.
    pub fn saturation(&self) -> Lattice {
        if self.is_zero() {
            return self.clone();
        }
        let complement = rational_kernel(&self.basis_matrix());
        let eqs: Vec<Vec<BigInt>> = complement.iter().map(|v| clear_denominators(v)).collect();
        let m = IntMatrix::from_rows(eqs, self.dim).expect("uniform rows");
        integer_kernel(&m)
    }

    pub fn is_saturated(&self) -> bool {
        *self == self.saturation()
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.dim);
        }
        // x = B1^T a = B2^T c  <=>  [B1^T | -B2^T] (a, c) = 0
        let b1 = self.basis_matrix().transpose();
        let b2 = -&other.basis_matrix().transpose();
        let m = IntMatrix::hstack(&[b1.clone(), b2], self.dim);
        let ker = integer_kernel(&m);
        let gens: Vec<Vec<BigInt>> = ker
            .basis()
            .iter()
            .map(|k| b1.mul_vec(&k[..self.rank()]))
            .collect();
        Lattice::new(self.dim, &gens)
    }
}

/// `{ y in Z^cols : A y = 0 }`.
pub fn integer_kernel(a: &IntMatrix) -> Lattice {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let gens: Vec<Vec<BigInt>> = (r..a.cols).map(|j| snf.v.column(j)).collect();
    Lattice::new(a.cols, &gens)
}

/// A particular integral solution of `A x = b` plus the integral kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    /// Reduced modulo the kernel's Hermite basis, so it is canonical.
    pub particular: Vec<BigInt>,
    pub kernel: Lattice,
}

/// Solves `A x = b` over the integers. `None` when no integral solution exists.
///
/// Panics if `b.len() != A.rows()`.
pub fn integer_solve(a: &IntMatrix, b: &[BigInt]) -> Option<IntegerSolution> {
    assert_eq!(b.len(), a.rows, "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let r = snf.rank();
    let mut y = vec![BigInt::zero(); a.cols];
    for i in 0..a.rows {
        if i < r {
            let d = &snf.invariant_factors[i];
            if !c[i].is_multiple_of(d) {
                return None;
            }
            y[i] = &c[i] / d;
        } else if !c[i].is_zero() {
            return None;
        }
    }
    let mut x = snf.v.mul_vec(&y);
    let gens: Vec<Vec<BigInt>> = (r..a.cols).map(|j| snf.v.column(j)).collect();
    let kernel = Lattice::new(a.cols, &gens);
    for row in kernel.basis() {
        let p = pivot_column(row).expect("nonzero basis row");
        let q = x[p].div_floor(&row[p]);
        if !q.is_zero() {
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &q * ri;
            }
        }
    }
    Some(IntegerSolution {
        particular: x,
        kernel,
    })
}

/// Least `k > 0` such that `A x = k b` has an integral solution, or `None`
/// when `A x = b` has no rational solution at all.
pub fn integer_solve_scale(a: &IntMatrix, b: &[BigInt]) -> Option<BigInt> {
    assert_eq!(b.len(), a.rows, "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let k = (0..r).fold(BigInt::one(), |acc, i| {
        let d = &snf.invariant_factors[i];
        acc.lcm(&(d / d.gcd(&c[i])))
    });
    Some(k)
}

pub(crate) fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Scales a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    v.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

/// Reduced row echelon form over Q of the first `ncols` columns; the
/// remaining columns are carried along. Returns the pivot columns.
fn rref_in_place(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            let (src, dst) = if i < r {
                let (lo, hi) = m.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (x, y) in dst.iter_mut().zip(src) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn to_rational_rows(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..a.rows).map(|i| a.row(i).iter().map(rat).collect()).collect()
}

pub fn rank(a: &IntMatrix) -> usize {
    rational_rank(&to_rational_rows(a), a.cols)
}

pub fn rational_rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref_in_place(&mut m, ncols).len()
}

/// Solves `A x = b` over Q; free variables are set to zero.
pub fn rational_solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let b: Vec<BigRational> = b.iter().map(rat).collect();
    rational_solve_q(&to_rational_rows(a), a.cols, &b)
}

pub fn rational_solve_q(
    a: &[Vec<BigRational>],
    ncols: usize,
    b: &[BigRational],
) -> Option<Vec<BigRational>> {
    assert_eq!(b.len(), a.len(), "right-hand side length mismatch");
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut m, ncols);
    if m[pivots.len()..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

/// Basis of `{ y in Q^cols : A y = 0 }` in reduced row echelon form.
pub fn rational_kernel(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    rational_kernel_q(&to_rational_rows(a), a.cols)
}

pub fn rational_kernel_q(a: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m = a.to_vec();
    let pivots = rref_in_place(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<BigRational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect();
    let k = basis.len();
    rref_in_place(&mut basis, ncols);
    basis.truncate(k);
    basis
}
