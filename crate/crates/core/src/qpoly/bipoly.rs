use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Polynomial in `x` whose coefficients are polynomials in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly<F> {
    cx: Vec<Poly<F>>,
}

impl<F: Field> BiPoly<F> {
    pub fn new(mut cx: Vec<Poly<F>>) -> Self {
        while cx.last().is_some_and(|c| c.is_zero()) {
            cx.pop();
        }
        BiPoly { cx }
    }

    pub fn zero() -> Self {
        BiPoly { cx: Vec::new() }
    }

    /// `f(x) g(y)`.
    pub fn product(f: &Poly<F>, g: &Poly<F>) -> Self {
        BiPoly::new(f.coeffs().iter().map(|c| g.scale(c)).collect())
    }

    /// Coefficients of `x^i`, each a polynomial in `y`.
    pub fn x_coeffs(&self) -> &[Poly<F>] {
        &self.cx
    }

    pub fn is_zero(&self) -> bool {
        self.cx.is_empty()
    }

    fn zip(&self, rhs: &Self, op: impl Fn(&Poly<F>, &Poly<F>) -> Poly<F>) -> Self {
        let n = self.cx.len().max(rhs.cx.len());
        let zero = Poly::zero();
        BiPoly::new(
            (0..n)
                .map(|i| op(self.cx.get(i).unwrap_or(&zero), rhs.cx.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &F) -> Self {
        BiPoly::new(self.cx.iter().map(|p| p.scale(c)).collect())
    }

    /// Substitutes `y = y0`, leaving a polynomial in `x`.
    pub fn eval_y(&self, y0: &F) -> Poly<F> {
        Poly::new(self.cx.iter().map(|p| p.eval(y0)).collect())
    }

    /// Substitutes `x = x0`, leaving a polynomial in `y`.
    pub fn eval_x(&self, x0: &F) -> Poly<F> {
        self.cx
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.scale(x0).add(c))
    }

    pub fn eval(&self, x0: &F, y0: &F) -> F {
        self.eval_x(x0).eval(y0)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        let ny = self.cx.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        BiPoly::new(
            (0..ny)
                .map(|k| Poly::new(self.cx.iter().map(|p| p.coeff(k)).collect()))
                .collect(),
        )
    }

    /// Applies a map to every `y`-coefficient (an operator acting on `y`).
    pub fn map_y(&self, f: impl Fn(&Poly<F>) -> Poly<F>) -> Self {
        BiPoly::new(self.cx.iter().map(f).collect())
    }

    /// q-difference quotient with base `c` in the variable `x`.
    pub fn q_derivative_x(&self, c: &F) -> Self {
        self.swap().map_y(|p| p.q_derivative_by(c)).swap()
    }

    /// q-difference quotient with base `c` in the variable `y`.
    pub fn q_derivative_y(&self, c: &F) -> Self {
        self.map_y(|p| p.q_derivative_by(c))
    }

    /// Exact quotient by `x - y` (synthetic division in `x` over `F[y]`).
    pub fn div_x_minus_y(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(BiPoly::zero());
        }
        let y = Poly::x();
        let d = self.cx.len() - 1;
        let mut quot = vec![Poly::zero(); d];
        let mut carry = Poly::zero();
        for i in (1..=d).rev() {
            carry = self.cx[i].add(&carry.mul(&y));
            quot[i - 1] = carry.clone();
        }
        let rem = self.cx[0].add(&carry.mul(&y));
        if !rem.is_zero() {
            return Err(Error::ExactDivisionFailed("bivariate division by x - y".into()));
        }
        Ok(BiPoly::new(quot))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    #[test]
    fn divide_difference_of_squares() {
        // x^2 - y^2 = (x - y)(x + y)
        let x2 = BiPoly::product(&P::monomial(rat(1, 1), 2), &P::one());
        let y2 = BiPoly::product(&P::one(), &P::monomial(rat(1, 1), 2));
        let q = x2.sub(&y2).div_x_minus_y().unwrap();
        let expect = BiPoly::product(&P::x(), &P::one()).add(&BiPoly::product(&P::one(), &P::x()));
        assert_eq!(q, expect);
        assert!(x2.div_x_minus_y().is_err());
    }

    #[test]
    fn swap_and_evaluate() {
        let b = BiPoly::product(&P::new(vec![rat(1, 1), rat(2, 1)]), &P::monomial(rat(3, 1), 2));
        assert_eq!(b.eval(&rat(1, 1), &rat(2, 1)), rat(36, 1));
        assert_eq!(b.swap().eval(&rat(2, 1), &rat(1, 1)), rat(36, 1));
        assert_eq!(b.swap().swap(), b);
    }
}
