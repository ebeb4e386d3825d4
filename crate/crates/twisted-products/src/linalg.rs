//! Dense exact linear algebra over a [`Field`].

use crate::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Scalar> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn push_row(&mut self, row: Vec<C>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }
}

impl<C> std::ops::Index<(usize, usize)> for Matrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> std::ops::IndexMut<(usize, usize)> for Matrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<C> {
    pub matrix: Matrix<C>,
    pub pivots: Vec<usize>,
}

impl<C: Field> Matrix<C> {
    /// Reduced row echelon form by Gauss–Jordan elimination; zero rows are
    /// dropped.
    pub fn rref(&self) -> Echelon<C> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, col)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = C::one() / m[(r, col)].clone();
            for j in col..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for j in col..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(col);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Solution set of `A x = b`.
#[derive(Clone, Debug)]
pub struct AffineSolution<C> {
    /// The canonical solution: free variables set to zero, pivot variables
    /// read from the reduced echelon form.
    pub particular: Vec<C>,
    /// Indices of free variables.
    pub free: Vec<usize>,
}

/// Solve `A x = b` exactly; `None` when inconsistent.
pub fn solve<C: Field>(a: &Matrix<C>, b: &[C]) -> Option<AffineSolution<C>> {
    assert_eq!(a.nrows(), b.len(), "right-hand side length mismatch");
    let n = a.ncols();
    let mut aug = Matrix::zeros(a.nrows(), n + 1);
    for i in 0..a.nrows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let ech = aug.rref();
    if ech.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![C::zero(); n];
    for (i, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.matrix[(i, n)].clone();
    }
    let free = (0..n).filter(|j| !ech.pivots.contains(j)).collect();
    Some(AffineSolution { particular: x, free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::rat;
    use crate::Rat;

    #[test]
    fn rref_and_solve() {
        let a: Matrix<Rat> = Matrix::from_rows(vec![
            vec![rat(1), rat(2), rat(1)],
            vec![rat(2), rat(4), rat(0)],
            vec![rat(3), rat(6), rat(1)],
        ]);
        let e = a.rref();
        assert_eq!(e.pivots, vec![0, 2]);
        let s = solve(&a, &[rat(2), rat(2), rat(4)]).unwrap();
        assert_eq!(s.particular, vec![rat(1), rat(0), rat(1)]);
        assert_eq!(s.free, vec![1]);
        assert!(solve(&a, &[rat(2), rat(2), rat(5)]).is_none());
    }

    #[test]
    fn works_for_floats_too() {
        let a: Matrix<f64> = Matrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 4.0]]);
        let s = solve(&a, &[1.0, 1.0]).unwrap();
        assert_eq!(s.particular, vec![0.5, 0.25]);
    }
}
