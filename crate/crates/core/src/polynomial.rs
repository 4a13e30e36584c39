//! Dense univariate and sparse bivariate polynomials over a generic
//! coefficient ring, plus the coefficient inequalities satisfied by h*.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{FromInteger, Scalar};

/// Dense polynomial in `z`; `coeffs[i]` is the coefficient of `z^i`.
/// Trailing zeros are never stored, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `a + b z`
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `z^i`, zero above the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficients `0..=m`, zero padded.
    pub fn padded(&self, m: usize) -> Vec<T> {
        (0..=m).map(|i| self.coeff(i)).collect()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn eval_at_one(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl<T: Scalar + FromInteger> Polynomial<T> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }
}

impl<T: Scalar> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Renders `1 + 6z + 5z^2`; negative terms render as `- 2z`.
impl<T: Scalar + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c, power_symbol("z", i))),
        )
    }
}

/// LaTeX form of a polynomial; exponents above 9 are braced.
pub struct Latex<'a, T>(&'a Polynomial<T>);

impl<T: Scalar + fmt::Display> Polynomial<T> {
    pub fn latex(&self) -> Latex<'_, T> {
        Latex(self)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Latex<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.0.coeffs.iter().enumerate().map(|(i, c)| {
                let mono = match i {
                    0..=9 => power_symbol("z", i),
                    _ => format!("z^{{{i}}}"),
                };
                (c, mono)
            }),
        )
    }
}

fn power_symbol(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

fn write_terms<'a, T, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    T: Scalar + fmt::Display + 'a,
    I: Iterator<Item = (&'a T, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// JSON form: decimal coefficient strings, index = degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolynomialJson(pub Vec<String>);

impl Polynomial<BigInt> {
    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson(self.coeffs.iter().map(|c| c.to_string()).collect())
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self, num_bigint::ParseBigIntError> {
        json.0
            .iter()
            .map(|s| s.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map(Polynomial::new)
    }
}

/// Sparse polynomial in `x` and `y`; no zero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivarPolynomial<T> {
    terms: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> BivarPolynomial<T> {
    pub fn zero() -> Self {
        BivarPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(T::one(), 0, 1)
    }

    /// `c x^i y^j`
    pub fn monomial(c: T, i: usize, j: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.terms.iter().fold(T::zero(), |acc, (&(i, j), c)| {
            acc + c.clone() * num_traits::pow(x.clone(), i) * num_traits::pow(y.clone(), j)
        })
    }

    /// `P(x, 1)` as a univariate polynomial in `x`.
    pub fn at_y_one(&self) -> Polynomial<T> {
        let deg = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut coeffs = vec![T::zero(); deg + 1];
        for (&(i, _), c) in &self.terms {
            coeffs[i] = coeffs[i].clone() + c.clone();
        }
        Polynomial::new(coeffs)
    }

    /// `(x + a)^i (y + b)^j` expanded, scaled by `c`.
    pub fn shifted_power(c: &T, a: &T, i: usize, b: &T, j: usize) -> Self {
        let px = Polynomial::linear(a.clone(), T::one()).pow(i as u32);
        let py = Polynomial::linear(b.clone(), T::one()).pow(j as u32);
        let mut out = Self::zero();
        for (di, cx) in px.coeffs().iter().enumerate() {
            for (dj, cy) in py.coeffs().iter().enumerate() {
                out.add_term(di, dj, c.clone() * cx.clone() * cy.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Add for &BivarPolynomial<T> {
    type Output = BivarPolynomial<T>;

    fn add(self, rhs: &BivarPolynomial<T>) -> BivarPolynomial<T> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &BivarPolynomial<T> {
    type Output = BivarPolynomial<T>;

    fn mul(self, rhs: &BivarPolynomial<T>) -> BivarPolynomial<T> {
        let mut out = BivarPolynomial::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Add for BivarPolynomial<T> {
    type Output = BivarPolynomial<T>;
    fn add(self, rhs: BivarPolynomial<T>) -> BivarPolynomial<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Mul for BivarPolynomial<T> {
    type Output = BivarPolynomial<T>;
    fn mul(self, rhs: BivarPolynomial<T>) -> BivarPolynomial<T> {
        &self * &rhs
    }
}

/// Terms in decreasing total degree, then decreasing `x` degree: `x^2 + x + y`.
impl<T: Scalar + fmt::Display> fmt::Display for BivarPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        write_terms(
            f,
            keys.into_iter().map(|(i, j)| {
                let mono = format!("{}{}", power_symbol("x", i), power_symbol("y", j));
                (&self.terms[&(i, j)], mono)
            }),
        )
    }
}

/// Outcome of the ultra log-concavity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogConcavity {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

/// Checks `i(m-i) h_i^2 >= (i+1)(m-i+1) h_{i-1} h_{i+1}` for `1 <= i <= m-1`,
/// with `h` zero-padded to length `m + 1`.
pub fn check_ultra_log_concave(p: &Polynomial<BigInt>, m: usize) -> LogConcavity {
    let h = p.padded(m);
    for i in 1..m {
        let lhs = BigInt::from(i * (m - i)) * &h[i] * &h[i];
        let rhs = BigInt::from((i + 1) * (m - i + 1)) * &h[i - 1] * &h[i + 1];
        if lhs < rhs {
            return LogConcavity {
                holds: false,
                first_violation: Some(i),
            };
        }
    }
    LogConcavity {
        holds: true,
        first_violation: None,
    }
}

/// Checks `0 <= h_i <= 3^i C(m, i)` for every coefficient (and none above `m`).
pub fn check_coefficient_bound(p: &Polynomial<BigInt>, m: usize) -> bool {
    if p.degree().is_some_and(|d| d > m) {
        return false;
    }
    p.padded(m)
        .iter()
        .enumerate()
        .all(|(i, h)| !h.is_negative() && *h <= binomial(m, i) * BigInt::from(3).pow(i as u32))
}

/// `C(n, k)`, zero for `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)` for a possibly negative top argument; zero unless `0 <= k <= n`.
pub fn binomial_signed(n: i64, k: usize) -> BigInt {
    if n < 0 {
        BigInt::zero()
    } else {
        binomial(n as usize, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPolynomial;
    use proptest::prelude::*;

    #[test]
    fn latex_braces_long_exponents() {
        let p = IntPolynomial::from_i64s(&[1, 0, 5]).shift(9);
        assert_eq!(p.latex().to_string(), "z^9 + 5z^{11}");
        assert_eq!(
            IntPolynomial::from_i64s(&[1, 6, 5]).latex().to_string(),
            "1 + 6z + 5z^2"
        );
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p(&[1, 1]).pow(2), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 3]).pow(3), p(&[1, 9, 27, 27]));
        assert_eq!(&p(&[1, 6, 5]) * &p(&[1, 6, 13]), p(&[1, 12, 54, 108, 65]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPolynomial::zero());
        assert_eq!(p(&[0, 0, 0]), IntPolynomial::zero());
        assert_eq!(p(&[2]).pow(0), IntPolynomial::one());
        assert_eq!(p(&[1, 1]).shift(2), p(&[0, 0, 1, 1]));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[1, 6, 5]).eval_at_one(), BigInt::from(12));
        assert_eq!(IntPolynomial::zero().eval(&BigInt::from(7)), BigInt::zero());
        assert_eq!(p(&[1, 3]).pow(2).eval_at_one(), BigInt::from(16));
        assert_eq!(p(&[1, 2, 3]).eval(&BigInt::from(2)), BigInt::from(17));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, 6, 5]).to_string(), "1 + 6z + 5z^2");
        assert_eq!(p(&[0, 1, -2]).to_string(), "z - 2z^2");
        assert_eq!(p(&[-1]).to_string(), "-1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        let t = &(&BivarPolynomial::<BigInt>::x() * &BivarPolynomial::x())
            + &(&BivarPolynomial::x() + &BivarPolynomial::y());
        assert_eq!(t.to_string(), "x^2 + x + y");
    }

    #[test]
    fn json_round_trip() {
        let q = p(&[1, 6, 5]);
        let json = q.to_json();
        assert_eq!(json.0, vec!["1", "6", "5"]);
        assert_eq!(IntPolynomial::from_json(&json).unwrap(), q);
    }

    #[test]
    fn ultra_log_concavity_examples() {
        assert!(check_ultra_log_concave(&p(&[1, 6, 5]), 2).holds);
        assert!(check_ultra_log_concave(&p(&[1, 9, 27, 19]), 3).holds);
        let bad = check_ultra_log_concave(&p(&[1, 0, 1]), 2);
        assert_eq!(
            bad,
            LogConcavity {
                holds: false,
                first_violation: Some(1)
            }
        );
    }

    #[test]
    fn coefficient_bound_examples() {
        assert!(check_coefficient_bound(&p(&[1, 6, 5]), 2));
        for m in 0..8 {
            assert!(check_coefficient_bound(&p(&[1, 3]).pow(m), m as usize));
            // equality everywhere
            let q = p(&[1, 3]).pow(m);
            for i in 0..=m as usize {
                assert_eq!(
                    q.coeff(i),
                    binomial(m as usize, i) * BigInt::from(3).pow(i as u32)
                );
            }
        }
        assert!(!check_coefficient_bound(&p(&[1, 10]), 2));
        assert!(!check_coefficient_bound(&p(&[1, -1]), 2));
    }

    #[test]
    fn bivariate_helpers() {
        // (x - 1)^2 (y - 1) at (2, 3) = 1 * 2
        let q = BivarPolynomial::shifted_power(
            &BigInt::one(),
            &BigInt::from(-1),
            2,
            &BigInt::from(-1),
            1,
        );
        assert_eq!(q.eval(&BigInt::from(2), &BigInt::from(3)), BigInt::from(2));
        let t = &(&BivarPolynomial::<BigInt>::x() * &BivarPolynomial::x()) + &BivarPolynomial::y();
        assert_eq!(t.at_y_one(), p(&[1, 0, 1]));
    }

    #[test]
    fn generic_over_float_coefficients() {
        let q = Polynomial::<f64>::new(vec![1.0, 0.5]);
        assert_eq!(q.pow(2).coeffs(), &[1.0, 1.0, 0.25]);
        assert_eq!(q.eval(&2.0), 2.0);
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec(-20i64..20, 0..6).prop_map(|c| p(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn evaluation_is_a_ring_map(a in small_poly(), b in small_poly(), t in -5i64..5) {
            let t = BigInt::from(t);
            prop_assert_eq!((&a * &b).eval(&t), a.eval(&t) * b.eval(&t));
            prop_assert_eq!((&a + &b).eval(&t), a.eval(&t) + b.eval(&t));
        }
    }
}
