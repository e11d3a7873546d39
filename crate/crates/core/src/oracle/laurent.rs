use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// An exponent vector; one entry per torus coordinate.
pub type Weight = Vec<i32>;

/// Sparse multivariate Laurent polynomial with integer coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: HashMap<Weight, i64>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(exponent: Weight, coeff: i64) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, coeff);
        p
    }

    /// Σ x_i^{±1}-style helper: builds a polynomial from (exponent, coeff) pairs.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Weight, i64)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: &[i32]) -> i64 {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Terms sorted by exponent, for deterministic output.
    pub fn sorted_terms(&self) -> BTreeMap<Weight, i64> {
        self.terms.iter().map(|(e, &c)| (e.clone(), c)).collect()
    }

    pub fn add_term(&mut self, exponent: Weight, coeff: i64) {
        debug_assert_eq!(exponent.len(), self.nvars);
        if coeff == 0 {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LaurentPoly, scale: i64) {
        for (e, c) in other.terms() {
            self.add_term(e.clone(), c * scale);
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiplies by the monomial x^shift.
    pub fn shift(&self, shift: &[i32]) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.iter().zip(shift).map(|(x, s)| x + s).collect(), c))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Applies a map on exponent vectors (a monomial substitution).
    pub fn map_exponents(&self, nvars: usize, f: impl Fn(&[i32]) -> Weight) -> LaurentPoly {
        let mut out = LaurentPoly::zero(nvars);
        for (e, c) in self.terms() {
            out.add_term(f(e), c);
        }
        out
    }

    /// The outer product p(x)·q(y) in the concatenated variables (x, y).
    pub fn outer(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars + other.nvars);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let mut e = a.clone();
                e.extend_from_slice(b);
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Value at x = (1, …, 1).
    pub fn eval_at_ones(&self) -> i64 {
        self.terms.values().sum()
    }

    /// True when p(x⁻¹) = p(x).
    pub fn is_self_dual(&self) -> bool {
        self.terms.iter().all(|(e, &c)| {
            let neg: Weight = e.iter().map(|x| -x).collect();
            self.coeff(&neg) == c
        })
    }

    /// Exact division by (1 − x^β), β ≠ 0.
    ///
    /// Writing P = (1 − x^β)·Q gives Q(e) = P(e) + Q(e − β), so along each
    /// coset e + ℤβ the quotient is a running sum of P. The division is
    /// exact iff every coset sums to zero.
    pub fn div_one_minus_monomial(&self, beta: &[i32]) -> Result<LaurentPoly> {
        let i0 = beta
            .iter()
            .position(|&b| b != 0)
            .ok_or_else(|| Error::InexactDivision("division by 1 - x^0".into()))?;
        let sign = beta[i0].signum();
        let step = beta[i0].abs();
        let unit: Vec<i32> = beta.iter().map(|b| b * sign).collect();

        let mut chains: HashMap<Weight, Vec<(i32, i64)>> = HashMap::new();
        for (e, c) in self.terms() {
            let t = e[i0].div_euclid(step);
            let base: Weight = e.iter().zip(&unit).map(|(x, u)| x - t * u).collect();
            chains.entry(base).or_default().push((t, c));
        }

        let mut out = LaurentPoly::zero(self.nvars);
        for (base, mut chain) in chains {
            chain.sort_unstable();
            let total: i64 = chain.iter().map(|&(_, c)| c).sum();
            if total != 0 {
                return Err(Error::InexactDivision(format!(
                    "coset of {base:?} along {beta:?} sums to {total}"
                )));
            }
            let at = |t: i32| -> Weight { base.iter().zip(&unit).map(|(b, u)| b + t * u).collect() };
            if sign > 0 {
                // Q(t) = Σ_{t' ≤ t} P(t')
                let mut running = 0i64;
                let mut idx = 0;
                let (lo, hi) = (chain[0].0, chain[chain.len() - 1].0);
                for t in lo..hi {
                    while idx < chain.len() && chain[idx].0 == t {
                        running += chain[idx].1;
                        idx += 1;
                    }
                    out.add_term(at(t), running);
                }
            } else {
                // Q(t) = Σ_{t' ≥ t} P(t')
                let mut running = 0i64;
                let mut idx = chain.len();
                let (lo, hi) = (chain[0].0, chain[chain.len() - 1].0);
                for t in ((lo + 1)..=hi).rev() {
                    while idx > 0 && chain[idx - 1].0 == t {
                        running += chain[idx - 1].1;
                        idx -= 1;
                    }
                    out.add_term(at(t), running);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms().iter().rev() {
            if !first {
                write!(f, " {} ", if *c < 0 { '-' } else { '+' })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{x}", i + 1) })
                .collect();
            match (mag, vars.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{}", vars.join("*"))?,
                (_, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: &[i32]) -> LaurentPoly {
        LaurentPoly::monomial(e.to_vec(), 1)
    }

    #[test]
    fn arithmetic_basics() {
        let mut p = x(&[1, 0]);
        p.add_scaled(&x(&[0, 1]), 1);
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(&[2, 0]), 1);
        assert_eq!(sq.coeff(&[1, 1]), 2);
        assert_eq!(sq.coeff(&[0, 2]), 1);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.eval_at_ones(), 4);
        let mut zero = p.clone();
        zero.add_scaled(&p, -1);
        assert!(zero.is_zero());
    }

    #[test]
    fn division_by_binomials() {
        // (x1 - x2) * (x1 + x2) = x1^2 - x2^2; 1 - x^{(-1,1)} = (x1 - x2)/x1
        let mut num = x(&[2, 0]);
        num.add_scaled(&x(&[0, 2]), -1);
        let q = num.div_one_minus_monomial(&[-1, 1]).unwrap();
        let mut expect = x(&[2, 0]);
        expect.add_scaled(&x(&[1, 1]), 1);
        assert_eq!(q, expect);
        // positive direction
        let q2 = num.div_one_minus_monomial(&[-2, 2]).unwrap();
        assert_eq!(q2, x(&[2, 0]));
        let mut p = LaurentPoly::one(2);
        p.add_scaled(&x(&[3, -1]), -1);
        let q3 = p.div_one_minus_monomial(&[1, 0]);
        assert!(q3.is_err());
        let q4 = p.div_one_minus_monomial(&[3, -1]).unwrap();
        assert_eq!(q4, LaurentPoly::one(2));
    }

    #[test]
    fn division_round_trips() {
        let mut p = LaurentPoly::zero(3);
        p.add_term(vec![1, -2, 0], 3);
        p.add_term(vec![0, 0, 4], -1);
        p.add_term(vec![-1, 1, 1], 2);
        for beta in [[1, 0, 0], [0, -1, 1], [2, 0, -1], [-1, -1, 0]] {
            let mut factor = LaurentPoly::one(3);
            factor.add_scaled(&x(&beta), -1);
            let prod = p.mul(&factor);
            assert_eq!(prod.div_one_minus_monomial(&beta).unwrap(), p, "beta {beta:?}");
        }
    }
}
