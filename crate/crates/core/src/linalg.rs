//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here works on [`IntMatrix`], a dense row-major matrix of
//! [`BigInt`]. The Smith normal form is the workhorse: cokernels, kernels,
//! ranks and direct-summand tests are all read off it. [`minor_gcd`] computes
//! determinantal divisors by brute-force minor enumeration and shares no code
//! with the elimination, so it can serve as an oracle for [`snf`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        })
    }

    pub fn identity(size: usize) -> Result<Self> {
        let mut m = Self::zeros(size, size)?;
        for i in 0..size {
            m[(i, i)] = BigInt::one();
        }
        Ok(m)
    }

    /// Builds a matrix from its rows. All rows must have the same, nonzero, length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::RaggedRows {
                    row: i,
                    found: row.len(),
                    expected: ncols,
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Result<Self> {
        Ok(Self::from_rows(columns.to_vec())?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix product `self * rhs`.
    ///
    /// # Panics
    /// If the inner dimensions disagree.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut data = vec![BigInt::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        IntMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// The submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<IntMatrix> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// # Panics
    /// If the matrix is not square.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        det_of_rows(self.to_rows())
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        snf(self).rank()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Bareiss determinant of a square list of rows; the empty matrix has determinant 1.
pub(crate) fn det_of_rows(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
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

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// gcd of the absolute values of the entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// `D = U·A·V` with `U`, `V` unimodular and `D` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `D`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with transform tracking.
///
/// Pivots on the entry of smallest absolute value in the active submatrix,
/// ties broken by lowest row and then lowest column, so the output is fully
/// determined by the input.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m).expect("rows >= 1");
    let mut v = IntMatrix::identity(n).expect("cols >= 1");

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = smallest_pivot(&d, t) {
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&pivot);
                add_row_multiple(&mut d, i, t, &-&q);
                add_row_multiple(&mut u, i, t, &-&q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&pivot);
                add_col_multiple(&mut d, j, t, &-&q);
                add_col_multiple(&mut v, j, t, &-&q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                // a smaller remainder is left in row/column t; re-pivot
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    add_row_multiple(&mut d, t, i, &one);
                    add_row_multiple(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SmithDecomposition { u, d, v }
}

fn smallest_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => x.magnitude() < d[(bi, bj)].magnitude(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        m.data.swap(i * m.cols + a, i * m.cols + b);
    }
}

/// row[dst] += k * row[src]
fn add_row_multiple(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for j in 0..m.cols {
        let t = &m[(src, j)] * k;
        m[(dst, j)] += t;
    }
}

/// col[dst] += k * col[src]
fn add_col_multiple(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for i in 0..m.rows {
        let t = &m[(i, src)] * k;
        m[(i, dst)] += t;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols {
        let x = std::mem::take(&mut m[(r, j)]);
        m[(r, j)] = -x;
    }
}

/// A finitely generated abelian group `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^r` with
/// `1 < d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    /// From a Smith diagonal: zeros count toward the free rank (together with
    /// `extra_free`), units are dropped.
    pub fn from_diagonal(diagonal: &[BigInt], extra_free: usize) -> Result<Self> {
        let mut factors = Vec::new();
        let mut free_rank = extra_free;
        for d in diagonal {
            if d.is_zero() {
                free_rank += 1;
            } else if !d.abs().is_one() {
                factors.push(d.abs());
            }
        }
        if factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InternalInvariantViolation(format!(
                "invariant factors {factors:?} do not form a divisibility chain"
            )));
        }
        Ok(Self {
            invariant_factors: factors,
            free_rank,
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cokernel `Z^rows / im(A)` of `A: Z^cols -> Z^rows`.
pub fn cokernel(a: &IntMatrix) -> FinAbGroup {
    let s = snf(a);
    let diag = s.diagonal();
    let rank = s.rank();
    FinAbGroup::from_diagonal(&diag[..rank], a.rows - rank)
        .expect("Smith diagonal is a divisibility chain")
}

/// Basis of the integer kernel `{k : A·k = 0}` as the columns of the result,
/// or `None` when `A` is injective.
///
/// The basis is saturated (the trailing columns of the unimodular `V` from the
/// Smith form) and reported in row-style Hermite normal form, which makes it
/// independent of elimination choices.
pub fn kernel_basis(a: &IntMatrix) -> Option<IntMatrix> {
    let s = snf(a);
    let r = s.rank();
    if r == a.cols {
        return None;
    }
    let vectors: Vec<Vec<BigInt>> = (r..a.cols).map(|j| s.v.column(j)).collect();
    let basis = IntMatrix::from_rows(vectors).expect("nonempty kernel");
    Some(hermite_normal_form(&basis).transpose())
}

/// True iff the rows are linearly independent and generate a direct summand
/// of the ambient lattice, i.e. every invariant factor is 1.
pub fn is_direct_summand(rows: &IntMatrix) -> bool {
    let s = snf(rows);
    s.rank() == rows.rows && s.diagonal().iter().all(One::is_one)
}

/// True iff the rows generate a direct summand of rank `rank` (the rows may
/// be linearly dependent).
pub fn generates_direct_summand(rows: &IntMatrix, rank: usize) -> bool {
    let s = snf(rows);
    s.rank() == rank && s.diagonal()[..rank].iter().all(One::is_one)
}

/// Row-style Hermite normal form: nonzero rows only, pivots positive and
/// strictly increasing in column, entries above each pivot reduced into
/// `[0, pivot)`. The row lattice is unchanged.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut rows = a.to_rows();
    let ncols = a.cols;
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == rows.len() {
            break;
        }
        // Euclid down the column until a single nonzero entry remains
        loop {
            let nonzero: Vec<usize> = (pivot_row..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .collect();
            let Some(&best) = nonzero
                .iter()
                .min_by(|&&x, &&y| rows[x][col].magnitude().cmp(rows[y][col].magnitude()))
            else {
                break;
            };
            rows.swap(pivot_row, best);
            if nonzero.len() == 1 {
                break;
            }
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                let pivot = rows[pivot_row].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= p * &q;
                }
            }
        }
        if rows[pivot_row][col].is_zero() {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for i in 0..pivot_row {
            let q = rows[i][col].div_floor(&rows[pivot_row][col]);
            if q.is_zero() {
                continue;
            }
            let pivot = rows[pivot_row].clone();
            for (x, p) in rows[i].iter_mut().zip(&pivot) {
                *x -= p * &q;
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row.max(1));
    IntMatrix::from_rows(rows).expect("at least one row kept")
}

/// Determinantal divisor: gcd of the absolute values of all `k×k` minors,
/// zero if they all vanish.
///
/// Enumerates every minor and evaluates it with [`IntMatrix::det`]; no Smith
/// form machinery is involved. Stops early once the gcd reaches 1.
pub fn minor_gcd(a: &IntMatrix, k: usize) -> Result<BigInt> {
    if k == 0 || k > a.rows.min(a.cols) {
        return Err(Error::MinorOrder {
            k,
            rows: a.rows,
            cols: a.cols,
        });
    }
    let row_sets = combinations(a.rows, k);
    let col_sets = combinations(a.cols, k);
    let mut g = BigInt::zero();
    for rs in &row_sets {
        for cs in &col_sets {
            let minor = a.select(rs, cs)?.det();
            g = g.gcd(&minor);
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
