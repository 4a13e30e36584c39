//! Exact linear algebra over generic scalars: determinants, oriented facet
//! normals, linear solves and convex-hull membership by phase-1 simplex.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::Rational;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Fraction-free Bareiss elimination. Every division is exact, so this
    /// is exact over integers as well as over fields.
    pub fn determinant(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::Dimension {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone())
                        / prev.clone();
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn sign_of<T: Scalar>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of the determinant of the square matrix whose rows are `points`.
/// For points on the hyperplane `sum x = 1` this is the orientation of the
/// simplex they span, and zero iff they are affinely dependent.
pub fn orientation_sign<T: Scalar>(points: &[Vec<T>]) -> Result<i8> {
    for p in points {
        if p.len() != points.len() {
            return Err(Error::Dimension {
                expected: points.len(),
                found: p.len(),
            });
        }
    }
    Ok(sign_of(&Matrix::from_rows(points)?.determinant()?))
}

/// Generalized cross product of `k` vectors in dimension `k + 1`: the
/// vector `N` with `N . x = det([points; x])` for every `x`.
pub fn cofactor_normal<T: Scalar>(points: &[Vec<T>]) -> Result<Vec<T>> {
    let dim = points.len() + 1;
    for p in points {
        if p.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: p.len(),
            });
        }
    }
    let mut normal = Vec::with_capacity(dim);
    for col in 0..dim {
        let minor: Vec<Vec<T>> = points
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let det = if minor.is_empty() {
            T::one()
        } else {
            Matrix::from_rows(&minor)?.determinant()?
        };
        // expansion of det([points; x]) along the last row
        if (points.len() + col).is_multiple_of(2) {
            normal.push(det);
        } else {
            normal.push(-det);
        }
    }
    Ok(normal)
}

/// A hyperplane `normal . x = offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane<T> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Scalar> Hyperplane<T> {
    /// Sign of `normal . x - offset`.
    pub fn side(&self, x: &[T]) -> Ordering {
        let v = dot(&self.normal, x) - self.offset.clone();
        v.partial_cmp(&T::zero()).unwrap_or(Ordering::Equal)
    }
}

/// Rescaling of a vector to a canonical representative of its ray.
pub trait Primitive: Sized {
    fn primitive(v: Vec<Self>) -> Vec<Self>;
}

macro_rules! primitive_int {
    ($($t:ty),*) => {$(
        impl Primitive for $t {
            fn primitive(v: Vec<$t>) -> Vec<$t> {
                let g = v.iter().fold(0 as $t, |g, x| g.gcd(x));
                if g == 0 { v } else { v.into_iter().map(|x| x / g).collect() }
            }
        }
    )*};
}
primitive_int!(i64, i128);

impl Primitive for BigInt {
    fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            v
        } else {
            v.into_iter().map(|x| x / &g).collect()
        }
    }
}

impl Primitive for Rational {
    /// Clears denominators, then divides out the integer content.
    fn primitive(v: Vec<Rational>) -> Vec<Rational> {
        let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        BigInt::primitive(ints)
            .into_iter()
            .map(Rational::from_integer)
            .collect()
    }
}

/// The hyperplane through `d` affinely independent points of `sum x = 1`
/// in `R^(d+1)`, within that affine hull. The representative is the unique
/// linear hyperplane through the points and the origin, with an integral
/// primitive normal whose first nonzero entry is positive; the offset is 0.
pub fn facet_hyperplane<T: Scalar + Primitive>(face: &[Vec<T>]) -> Result<Hyperplane<T>> {
    let normal = cofactor_normal(face)?;
    if normal.iter().all(Zero::is_zero) {
        return Err(Error::Degenerate);
    }
    let mut normal = T::primitive(normal);
    if normal
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(Signed::is_negative)
    {
        normal = normal.into_iter().map(|v| -v).collect();
    }
    Ok(Hyperplane {
        normal,
        offset: T::zero(),
    })
}

/// Solves `a x = b` for square nonsingular `a`; `None` if singular.
pub fn solve<T: Field>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.rows();
    assert_eq!(a.cols(), n, "solve needs a square matrix");
    assert_eq!(b.len(), n);
    let mut m = Matrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a[(i, j)].clone();
        }
        m[(i, n)] = b[i].clone();
    }
    for k in 0..n {
        // largest magnitude pivot; harmless for exact types, needed for floats
        let pivot = (k..n).filter(|&i| !m[(i, k)].is_zero()).max_by(|&i, &j| {
            m[(i, k)]
                .abs()
                .partial_cmp(&m[(j, k)].abs())
                .unwrap_or(Ordering::Equal)
        })?;
        m.swap_rows(k, pivot);
        let p = m[(k, k)].clone();
        for j in k..=n {
            m[(k, j)] = m[(k, j)].clone() / p.clone();
        }
        for i in 0..n {
            if i != k && !m[(i, k)].is_zero() {
                let f = m[(i, k)].clone();
                for j in k..=n {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
                }
            }
        }
    }
    Some((0..n).map(|i| m[(i, n)].clone()).collect())
}

/// Coefficients `lambda` with `sum_i lambda_i vertices[i] = x` for `d+1`
/// linearly independent vertices in `R^(d+1)`. For vertices and `x` on
/// `sum x = 1` these are the barycentric coordinates.
pub fn barycentric_coordinates<T: Field>(vertices: &[Vec<T>], x: &[T]) -> Result<Vec<T>> {
    let m = Matrix::from_rows(vertices)?;
    if m.rows() != m.cols() || x.len() != m.cols() {
        return Err(Error::Dimension {
            expected: m.rows(),
            found: x.len(),
        });
    }
    solve(&m.transpose(), x).ok_or(Error::Degenerate)
}

/// Decides `x in conv(generators)` exactly: phase-1 simplex on
/// `{lambda >= 0, sum lambda = 1, G lambda = x}` with Bland's rule.
pub fn lp_membership<T: Field>(x: &[T], generators: &[Vec<T>]) -> Result<bool> {
    if generators.is_empty() {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    let dim = x.len();
    for g in generators {
        if g.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: g.len(),
            });
        }
    }
    let k = generators.len();
    let rows = dim + 1;
    // columns: k structural, `rows` artificial, rhs
    let width = k + rows + 1;
    let mut tab = Matrix::<T>::zeros(rows, width);
    for r in 0..rows {
        let (coeffs, rhs): (Vec<T>, T) = if r < dim {
            (
                generators.iter().map(|g| g[r].clone()).collect(),
                x[r].clone(),
            )
        } else {
            (vec![T::one(); k], T::one())
        };
        let flip = rhs.is_negative();
        for (j, c) in coeffs.into_iter().enumerate() {
            tab[(r, j)] = if flip { -c } else { c };
        }
        tab[(r, k + r)] = T::one();
        tab[(r, width - 1)] = if flip { -rhs } else { rhs };
    }
    let mut basis: Vec<usize> = (k..k + rows).collect();
    // reduced costs for minimizing the sum of artificials
    let mut cost = vec![T::zero(); width];
    for r in 0..rows {
        for j in 0..k {
            cost[j] = cost[j].clone() - tab[(r, j)].clone();
        }
        cost[width - 1] = cost[width - 1].clone() - tab[(r, width - 1)].clone();
    }
    // Bland: lowest-index improving column
    while let Some(enter) = (0..k).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, T)> = None;
        for r in 0..rows {
            let a = &tab[(r, enter)];
            if !a.is_positive() {
                continue;
            }
            let ratio = tab[(r, width - 1)].clone() / a.clone();
            let better = match &leave {
                None => true,
                Some((lr, best)) => match ratio.partial_cmp(best) {
                    Some(Ordering::Less) => true,
                    Some(Ordering::Equal) => basis[r] < basis[*lr],
                    _ => false,
                },
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // phase-1 objective is bounded below by zero
        let (pr, _) = leave.expect("phase-1 simplex cannot be unbounded");
        let p = tab[(pr, enter)].clone();
        for j in 0..width {
            tab[(pr, j)] = tab[(pr, j)].clone() / p.clone();
        }
        for r in 0..rows {
            if r != pr && !tab[(r, enter)].is_zero() {
                let f = tab[(r, enter)].clone();
                for j in 0..width {
                    tab[(r, j)] = tab[(r, j)].clone() - f.clone() * tab[(pr, j)].clone();
                }
            }
        }
        let f = cost[enter].clone();
        for (j, c) in cost.iter_mut().enumerate() {
            *c = c.clone() - f.clone() * tab[(pr, j)].clone();
        }
        basis[pr] = enter;
    }
    // cost[rhs] holds minus the remaining artificial mass
    Ok(cost[width - 1].is_zero())
}
