//! Differential forms with polynomial coefficients on R^{2n} with a fixed
//! global orthonormal coframe w_1, ..., w_{2n}.
//!
//! Coframe indices are 1-based; the coordinate function paired with w_c is the
//! polynomial variable c - 1. Forms are kept homogeneous in degree.

use crate::poly::Poly;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// A basis wedge monomial w_{i_1} ^ ... ^ w_{i_k}, indices strictly increasing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WedgeMonomial(pub Vec<u8>);

impl WedgeMonomial {
    pub fn empty() -> Self {
        WedgeMonomial(Vec::new())
    }

    pub fn new(mut indices: Vec<u8>) -> Option<(Self, i32)> {
        // Sort with sign; duplicates kill the monomial.
        let mut sign = 1i32;
        let len = indices.len();
        for i in 0..len {
            for j in 0..len - 1 - i {
                if indices[j] > indices[j + 1] {
                    indices.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return None;
            }
        }
        Some((WedgeMonomial(indices), sign))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, idx: u8) -> bool {
        self.0.binary_search(&idx).is_ok()
    }

    /// Wedge with sign, or None when an index repeats.
    pub fn wedge(&self, other: &WedgeMonomial) -> Option<(WedgeMonomial, i32)> {
        let mut indices = self.0.clone();
        indices.extend_from_slice(&other.0);
        WedgeMonomial::new(indices)
    }

    /// Interior product with the unit vector dual to w_idx:
    /// removes idx with the sign (-1)^position, or None if absent.
    pub fn contract(&self, idx: u8) -> Option<(WedgeMonomial, i32)> {
        let pos = self.0.iter().position(|&i| i == idx)?;
        let mut rest = self.0.clone();
        rest.remove(pos);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        Some((WedgeMonomial(rest), sign))
    }

    /// Indices of the coframe not appearing in this monomial, ascending.
    pub fn complement(&self, dim: u8) -> Vec<u8> {
        (1..=dim).filter(|i| !self.contains(*i)).collect()
    }
}

/// A homogeneous polynomial-coefficient form on R^{dim}, dim = 2n.
#[derive(Clone, Eq)]
pub struct Form {
    /// Number of coframe elements (= number of coordinates).
    pub dim: usize,
    pub degree: usize,
    pub terms: BTreeMap<WedgeMonomial, Poly>,
}

impl PartialEq for Form {
    /// Zero forms compare equal regardless of their recorded degree, so that
    /// operators shifting degree on the zero form stay comparable.
    fn eq(&self, other: &Form) -> bool {
        self.dim == other.dim
            && self.terms == other.terms
            && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Form { dim, degree, terms: BTreeMap::new() }
    }

    pub fn from_poly(dim: usize, p: Poly) -> Self {
        assert_eq!(p.nvars, dim);
        let mut f = Form::zero(dim, 0);
        if !p.is_zero() {
            f.terms.insert(WedgeMonomial::empty(), p);
        }
        f
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Form::from_poly(dim, Poly::constant(dim, c))
    }

    /// The coframe element w_idx (1-based).
    pub fn coframe(dim: usize, idx: u8) -> Self {
        assert!(idx as usize >= 1 && idx as usize <= dim);
        let mut f = Form::zero(dim, 1);
        f.terms.insert(WedgeMonomial(vec![idx]), Poly::one(dim));
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: WedgeMonomial, p: &Poly) {
        if p.is_zero() {
            return;
        }
        assert_eq!(mono.degree(), self.degree);
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = &*existing + p;
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, p.clone());
            }
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "sum of forms of different degree");
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(m.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, p)| (m.clone(), -p)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.dim, self.degree);
        }
        Form {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, p)| (m.clone(), p.scale(c))).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Poly) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (m, q) in &self.terms {
            out.add_term(m.clone(), &(p * q));
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim);
        let mut out = Form::zero(self.dim, self.degree + other.degree);
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                if let Some((m, sign)) = ma.wedge(mb) {
                    let mut p = pa * pb;
                    if sign < 0 {
                        p = -&p;
                    }
                    out.add_term(m, &p);
                }
            }
        }
        out
    }

    /// Interior product with the unit vector dual to w_idx.
    pub fn contract(&self, idx: u8) -> Form {
        if self.degree == 0 {
            return Form::zero(self.dim, 0);
        }
        let mut out = Form::zero(self.dim, self.degree - 1);
        for (m, p) in &self.terms {
            if let Some((rest, sign)) = m.contract(idx) {
                out.add_term(rest, &if sign < 0 { -p } else { p.clone() });
            }
        }
        out
    }

    /// Interior product with a polynomial vector field sum_i f_i e_i,
    /// `coeffs[i]` multiplying the dual of w_{i+1}.
    pub fn contract_field(&self, coeffs: &[Poly]) -> Form {
        assert_eq!(coeffs.len(), self.dim);
        if self.degree == 0 {
            return Form::zero(self.dim, 0);
        }
        let mut out = Form::zero(self.dim, self.degree - 1);
        for (i, f) in coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let contracted = self.contract((i + 1) as u8);
            for (m, p) in &contracted.terms {
                out.add_term(m.clone(), &(f * p));
            }
        }
        out
    }

    /// Exterior derivative restricted to the coordinates listed in `coords`
    /// (1-based coframe indices). Pass all of 1..=dim for the full derivative.
    pub fn exterior_d_over(&self, coords: &[u8]) -> Form {
        let mut out = Form::zero(self.dim, self.degree + 1);
        for (m, p) in &self.terms {
            for &c in coords {
                let dp = p.partial(c as usize - 1);
                if dp.is_zero() {
                    continue;
                }
                if let Some((wm, sign)) = WedgeMonomial(vec![c]).wedge(m) {
                    out.add_term(wm, &if sign < 0 { -&dp } else { dp });
                }
            }
        }
        out
    }

    pub fn exterior_d(&self) -> Form {
        let all: Vec<u8> = (1..=self.dim as u8).collect();
        self.exterior_d_over(&all)
    }

    /// Lie derivative along a polynomial vector field, via the Cartan formula.
    pub fn lie_derivative(&self, coeffs: &[Poly]) -> Form {
        let a = self.exterior_d().contract_field(coeffs);
        let b = self.contract_field(coeffs).exterior_d();
        a.add(&b)
    }

    /// Restriction of every coefficient to the hyperplane x_idx = 0
    /// (polynomial variable idx, 0-based). Does not pull back the coframe.
    pub fn coeffs_at_var_zero(&self, idx: usize) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &p.set_var_zero(idx));
        }
        out
    }

    /// Apply a scalar-linear map to every coefficient polynomial.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &f(p));
        }
        out
    }

    /// True when every coefficient polynomial is divisible by `rho`.
    pub fn divisible_by(&self, rho: &Poly) -> bool {
        self.terms.values().all(|p| p.divisible_by(rho))
    }

    pub fn display_with(&self, coframe_names: &[String], var_names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, p) in &self.terms {
            let basis = m
                .0
                .iter()
                .map(|&i| coframe_names[i as usize - 1].clone())
                .collect::<Vec<_>>()
                .join("^");
            let coeff = p.display_with(var_names);
            if basis.is_empty() {
                parts.push(coeff);
            } else if coeff == "1" {
                parts.push(basis);
            } else if p.terms.len() == 1 && !coeff.contains(' ') {
                parts.push(format!("{}*{}", coeff, basis));
            } else {
                parts.push(format!("({})*{}", coeff, basis));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coframe: Vec<String> = (1..=self.dim).map(|i| format!("w{}", i)).collect();
        let vars: Vec<String> = (0..self.dim).map(|i| format!("v{}", i)).collect();
        write!(f, "{}", self.display_with(&coframe, &vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_anticommutes() {
        let dim = 4;
        let w1 = Form::coframe(dim, 1);
        let w2 = Form::coframe(dim, 2);
        let a = w1.wedge(&w2);
        let b = w2.wedge(&w1);
        assert_eq!(a, b.neg());
        assert!(w1.wedge(&w1).is_zero());
    }

    #[test]
    fn d_squared_zero() {
        let dim = 4;
        let x = Poly::var(dim, 0);
        let y = Poly::var(dim, 1);
        let f = Form::from_poly(dim, &(&x * &x) * &y);
        let df = f.exterior_d();
        assert!(df.exterior_d().is_zero());
    }

    #[test]
    fn contraction_antiderivation() {
        // iota(w1 ^ w2) against e_2 gives -w1.
        let dim = 4;
        let w12 = Form::coframe(dim, 1).wedge(&Form::coframe(dim, 2));
        let c = w12.contract(2);
        assert_eq!(c, Form::coframe(dim, 1).neg());
    }
}
