//! Dense univariate polynomials over the rationals, just enough for a
//! squarefree test.

use num_traits::Zero;

use crate::poly::Rational;

/// Coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Univariate(Vec<Rational>);

impl Univariate {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Univariate(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Univariate::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
    }

    fn rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd {
            let k = r.len() - 1;
            let c = &r[k] / &lead;
            if !c.is_zero() {
                for (i, dc) in d.0.iter().enumerate() {
                    r[k - dd + i] -= &c * dc;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Univariate::new(r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.0.last().cloned() {
            Some(l) => Univariate(a.0.into_iter().map(|c| c / &l).collect()),
            None => a,
        }
    }

    /// No repeated factor over the algebraic closure. Constants count as squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

impl From<Vec<i64>> for Univariate {
    fn from(v: Vec<i64>) -> Self {
        Univariate::new(v.into_iter().map(|c| Rational::from_integer(c.into())).collect())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_detection() {
        // (t - 1)^2 (t + 2)
        assert!(!Univariate::from(vec![2, -3, 0, 1]).is_squarefree());
        // t^3 - t
        assert!(Univariate::from(vec![0, -1, 0, 1]).is_squarefree());
        assert!(Univariate::from(vec![5]).is_squarefree());
        assert!(!Univariate::from(vec![]).is_squarefree());
    }

    #[test]
    fn gcd_is_monic() {
        let a = Univariate::from(vec![-2, 0, 2]); // 2(t-1)(t+1)
        let b = Univariate::from(vec![-3, 3]); // 3(t-1)
        assert_eq!(a.gcd(&b), Univariate::from(vec![-1, 1]));
    }
}
