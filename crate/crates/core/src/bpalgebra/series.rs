use super::poly::Poly;

/// Truncated power series in a formal variable `x` with polynomial coefficients.
/// `coeffs[k]` is the coefficient of `x^k`; everything above `x^order` is discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Poly>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    /// The series `x` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = Poly::one();
        }
        s
    }

    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = (usize, Poly)>) -> Self {
        let mut s = PowerSeries::zero(order);
        for (k, c) in coeffs {
            if k <= order {
                s.coeffs[k] = s.coeffs[k].add(&c);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: Poly) {
        self.coeffs[k] = c;
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order();
        let mut out = PowerSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// `self(inner(x))`; requires `inner` to have no constant term.
    pub fn compose(&self, inner: &PowerSeries) -> PowerSeries {
        assert!(inner.coeffs[0].is_zero(), "composition with a series that has a constant term");
        let n = self.order();
        let mut out = PowerSeries::zero(n);
        let mut power = PowerSeries::zero(n);
        power.coeffs[0] = Poly::one();
        for k in 0..=n {
            if !self.coeffs[k].is_zero() {
                for (j, c) in power.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        out.coeffs[j] = out.coeffs[j].add(&self.coeffs[k].mul(c));
                    }
                }
            }
            if k < n {
                power = power.mul(inner);
            }
        }
        out
    }

    /// Compositional inverse of a series of the form `x + O(x^2)`.
    pub fn reversion(&self) -> PowerSeries {
        assert!(
            self.coeffs[0].is_zero() && self.order() >= 1 && self.coeffs[1] == Poly::one(),
            "reversion needs a series of the form x + O(x^2)"
        );
        let n = self.order();
        let mut g = PowerSeries::variable(n);
        for k in 2..=n {
            let err = self.compose(&g).coeffs[k].clone();
            g.coeffs[k] = g.coeffs[k].sub(&err);
        }
        g
    }
}
