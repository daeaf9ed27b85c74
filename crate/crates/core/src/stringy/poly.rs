//! Integer polynomials in one variable and Laurent polynomials in two.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::int::Int;

/// `Σ c_i t^i`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct UniPoly {
    coeffs: Vec<Int>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Int>) -> UniPoly {
        while coeffs.last().is_some_and(Int::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| Int::new(c)).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly { coeffs: vec![Int::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the end).
    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `(t − 1)^k`.
    pub fn t_minus_one_pow(k: usize) -> UniPoly {
        let mut c = vec![Int::zero(); k + 1];
        let mut binom = Int::one();
        for i in 0..=k {
            // coefficient of t^i is C(k, i)·(−1)^{k−i}
            c[i] = if (k - i) % 2 == 0 { binom.clone() } else { -&binom };
            binom = (binom * Int::from(k - i)).div_exact(&Int::from(i + 1));
        }
        UniPoly::new(c)
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &UniPoly, c: &Int) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Int::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += &(b * c);
        }
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = UniPoly::new(trimmed);
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        UniPoly::new(c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `Σ c_{p,q} u^p v^q` with possibly negative exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariateLaurent {
    terms: BTreeMap<(i64, i64), Int>,
}

impl BivariateLaurent {
    pub fn zero() -> BivariateLaurent {
        BivariateLaurent::default()
    }

    pub fn constant(c: Int) -> BivariateLaurent {
        let mut e = BivariateLaurent::zero();
        e.add_term(0, 0, &c);
        e
    }

    pub fn add_term(&mut self, p: i64, q: i64, c: &Int) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, q)).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: i64, q: i64) -> Int {
        self.terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing `(p, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Int)> {
        self.terms.iter().map(|(&(p, q), c)| (p, q, c))
    }

    /// `E(v, u)`.
    pub fn swap_variables(&self) -> BivariateLaurent {
        BivariateLaurent { terms: self.terms.iter().map(|(&(p, q), c)| ((q, p), c.clone())).collect() }
    }

    /// `(−u)^n · E(u^{−1}, v)`.
    pub fn mirror(&self, n: i64) -> BivariateLaurent {
        let sign = if n.rem_euclid(2) == 0 { Int::one() } else { Int::new(-1) };
        BivariateLaurent { terms: self.terms.iter().map(|(&(p, q), c)| ((n - p, q), c * &sign)).collect() }
    }

    /// Whether every exponent lies in `[0, n]`.
    pub fn exponents_within(&self, n: i64) -> bool {
        self.terms.keys().all(|&(p, q)| (0..=n).contains(&p) && (0..=n).contains(&q))
    }

    /// Dense coefficient matrix `m[p][q]` for `0 ≤ p, q ≤ n`.
    pub fn matrix(&self, n: usize) -> Vec<Vec<Int>> {
        (0..=n as i64).map(|p| (0..=n as i64).map(|q| self.coeff(p, q)).collect()).collect()
    }
}

impl fmt::Display for BivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .map(|(p, q, c)| {
                let mut s = c.to_string();
                for (x, e) in [("u", p), ("v", q)] {
                    match e {
                        0 => {}
                        1 => s.push_str(x),
                        _ => s.push_str(&format!("{x}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for BivariateLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, i64, &Int)> = self.terms().collect();
        terms.serialize(s)
    }
}
