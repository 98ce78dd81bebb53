//! Multivariate polynomials over [`Scalar`], the coefficient ring for forms.
//!
//! Exponent vectors always have length `nvars`. Divisibility by a single
//! polynomial (used for "vanishes on the boundary" tests) runs the one-divisor
//! division algorithm under graded lexicographic order, which terminates for
//! any nonzero divisor.

use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    /// Exponent vector -> nonzero coefficient.
    pub terms: BTreeMap<Vec<u32>, Scalar>,
}

/// Graded lex: compare total degree first, then exponent vectors lexicographically.
fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }

    /// The coordinate function with the given 0-based variable index.
    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exps, Scalar::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            // Re-borrow to remove: find the key we just zeroed.
            let key: Vec<u32> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Partial derivative with respect to the variable with 0-based index `idx`.
    pub fn partial(&self, idx: usize) -> Poly {
        assert!(idx < self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (exps, c) in &self.terms {
            let e = exps[idx];
            if e == 0 {
                continue;
            }
            let mut ne = exps.clone();
            ne[idx] = e - 1;
            out.add_term(ne, &(c * &Scalar::from_int(e as i64)));
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Largest term under graded lex order.
    fn leading(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Divide by `divisor`, returning (quotient, remainder) with
    /// `self = quotient * divisor + remainder` and no remainder term divisible
    /// by the divisor's leading monomial.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        assert_eq!(self.nvars, divisor.nvars);
        let (dl_exp, dl_coef) = {
            let (e, c) = divisor.leading().unwrap();
            (e.clone(), c.clone())
        };
        let mut quot = Poly::zero(self.nvars);
        let mut rem = Poly::zero(self.nvars);
        let mut work = self.clone();
        while let Some((le, lc)) = work.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let divisible = le.iter().zip(&dl_exp).all(|(a, b)| a >= b);
            if divisible {
                let qe: Vec<u32> = le.iter().zip(&dl_exp).map(|(a, b)| a - b).collect();
                let qc = lc / dl_coef.clone();
                let qmono = Poly::monomial(self.nvars, qe, qc);
                work = &work - &(&qmono * divisor);
                quot = &quot + &qmono;
            } else {
                rem.add_term(le.clone(), &lc);
                let neg = lc.clone();
                let mut t = Poly::zero(self.nvars);
                t.add_term(le, &neg);
                work = &work - &t;
            }
        }
        (quot, rem)
    }

    pub fn divisible_by(&self, divisor: &Poly) -> bool {
        self.div_rem(divisor).1.is_zero()
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitute 0 for the variable `idx` (restriction to its zero locus).
    pub fn set_var_zero(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (exps, c) in &self.terms {
            if exps[idx] == 0 {
                out.add_term(exps.clone(), c);
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Poly {
    /// Render with the supplied variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b, a));
        for exps in keys {
            let c = &self.terms[exps];
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in exps.iter().enumerate() {
                if e == 1 {
                    factors.push(names[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[i], e));
                }
            }
            let cs = format!("{}", c);
            if factors.is_empty() {
                parts.push(cs);
            } else if cs == "1" {
                parts.push(factors.join("*"));
            } else if cs == "-1" {
                parts.push(format!("-{}", factors.join("*")));
            } else {
                parts.push(format!("{}*{}", cs, factors.join("*")));
            }
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{}", i)).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_derivative() {
        // d/dx (x^2 y) = 2 x y
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x * &x) * &y;
        let expect = (&x * &y).scale(&Scalar::from_int(2));
        assert_eq!(p.partial(0), expect);
    }

    #[test]
    fn division_by_ball_rho() {
        // rho = (1 - x^2 - y^2 - z^2)/2 divides rho * (x + 3), remainder zero.
        let n = 3;
        let mut rho = Poly::constant(n, Scalar::from_ratio(1, 2));
        for i in 0..3 {
            let v = Poly::var(n, i);
            rho = &rho - &(&v * &v).scale(&Scalar::from_ratio(1, 2));
        }
        let f = &Poly::var(n, 0) + &Poly::constant(n, Scalar::from_int(3));
        let prod = &rho * &f;
        let (q, r) = prod.div_rem(&rho);
        assert!(r.is_zero());
        assert_eq!(q, f);
        assert!(!f.divisible_by(&rho));
    }
}
