//! Product manifolds assembled from interval, 3-ball, and torus factors,
//! with derived boundary data and exact integration of top forms.
//!
//! Coframe indices follow the flattened factor coordinate order: the j-th
//! coordinate overall owns coframe index j (1-based) and polynomial variable
//! j - 1. Torus coordinates are periodic with period 1; well-defined forms may
//! only have coefficients in the non-periodic coordinates.

use crate::form::Form;
use crate::frame::DarbouxFrame;
use crate::poly::Poly;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Interval,
    Ball3,
    Torus,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorSpec {
    pub kind: FactorKind,
    pub coords: Vec<String>,
}

/// The JSON shape of a manifold descriptor file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub n: usize,
    pub factors: Vec<FactorSpec>,
    pub omega_pairs: Vec<(u8, u8)>,
    pub jsign: i64,
}

/// One boundary component: rho vanishes exactly on it, and `normal` is the
/// inward normal vector field (the metric dual of d rho).
#[derive(Clone, Debug)]
pub struct BoundaryComponent {
    pub name: String,
    pub rho: Poly,
    /// Component i multiplies the unit vector dual to w_{i+1}.
    pub normal: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct ManifoldDescriptor {
    pub n: usize,
    pub dim: usize,
    pub coord_names: Vec<String>,
    pub factors: Vec<FactorSpec>,
    pub frame: DarbouxFrame,
    pub boundary: Vec<BoundaryComponent>,
    /// periodic[j] is true when coordinate j lives on a torus factor.
    pub periodic: Vec<bool>,
}

#[derive(thiserror::Error, Debug)]
pub enum ManifoldError {
    #[error("descriptor dimension mismatch: {0}")]
    Dimension(String),
    #[error("bad factor: {0}")]
    Factor(String),
    #[error("descriptor parse error: {0}")]
    Parse(String),
}

impl ManifoldDescriptor {
    pub fn from_json(text: &str) -> Result<Self, ManifoldError> {
        let d: DescriptorJson =
            serde_json::from_str(text).map_err(|e| ManifoldError::Parse(e.to_string()))?;
        Self::from_descriptor(&d)
    }

    pub fn from_descriptor(d: &DescriptorJson) -> Result<Self, ManifoldError> {
        let coord_names: Vec<String> =
            d.factors.iter().flat_map(|f| f.coords.iter().cloned()).collect();
        let dim = coord_names.len();
        if dim != 2 * d.n {
            return Err(ManifoldError::Dimension(format!(
                "{} coordinates for n = {}",
                dim, d.n
            )));
        }
        for f in &d.factors {
            let want = match f.kind {
                FactorKind::Interval => 1,
                FactorKind::Ball3 => 3,
                FactorKind::Torus => f.coords.len().max(1),
            };
            if f.coords.len() != want || f.coords.is_empty() {
                return Err(ManifoldError::Factor(format!(
                    "{:?} factor with {} coordinates",
                    f.kind,
                    f.coords.len()
                )));
            }
        }
        let frame = DarbouxFrame::from_pairs(dim, d.omega_pairs.clone(), d.jsign);
        if frame.n() != d.n {
            return Err(ManifoldError::Dimension("omega_pairs count != n".into()));
        }

        let mut periodic = vec![false; dim];
        let mut boundary = Vec::new();
        let mut offset = 0usize;
        for f in &d.factors {
            match f.kind {
                FactorKind::Torus => {
                    for j in 0..f.coords.len() {
                        periodic[offset + j] = true;
                    }
                }
                FactorKind::Interval => {
                    let v = offset;
                    let x = Poly::var(dim, v);
                    // rho = x, inward normal +e; rho = 1 - x, inward normal -e.
                    let mut n0 = vec![Poly::zero(dim); dim];
                    n0[v] = Poly::one(dim);
                    boundary.push(BoundaryComponent {
                        name: format!("{}=0", f.coords[0]),
                        rho: x.clone(),
                        normal: n0,
                    });
                    let mut n1 = vec![Poly::zero(dim); dim];
                    n1[v] = -&Poly::one(dim);
                    boundary.push(BoundaryComponent {
                        name: format!("{}=1", f.coords[0]),
                        rho: &Poly::one(dim) - &x,
                        normal: n1,
                    });
                }
                FactorKind::Ball3 => {
                    // rho = (1 - sum x_i^2)/2, d rho = -sum x_i dx_i.
                    let mut rho = Poly::constant(dim, Scalar::from_ratio(1, 2));
                    let mut normal = vec![Poly::zero(dim); dim];
                    for j in 0..3 {
                        let x = Poly::var(dim, offset + j);
                        rho = &rho - &(&x * &x).scale(&Scalar::from_ratio(1, 2));
                        normal[offset + j] = -&x;
                    }
                    boundary.push(BoundaryComponent {
                        name: format!("|({},{},{})|=1", f.coords[0], f.coords[1], f.coords[2]),
                        rho,
                        normal,
                    });
                }
            }
            offset += f.coords.len();
        }

        let m = ManifoldDescriptor {
            n: d.n,
            dim,
            coord_names,
            factors: d.factors.clone(),
            frame,
            boundary,
            periodic,
        };
        m.verify_boundary_normalization()?;
        Ok(m)
    }

    /// g(d rho, d rho) - 1 must vanish on each component (divisible by rho).
    fn verify_boundary_normalization(&self) -> Result<(), ManifoldError> {
        for comp in &self.boundary {
            let mut g = Poly::zero(self.dim);
            for j in 0..self.dim {
                let d = comp.rho.partial(j);
                g = &g + &(&d * &d);
            }
            let dev = &g - &Poly::one(self.dim);
            if !(dev.is_zero() || dev.divisible_by(&comp.rho)) {
                return Err(ManifoldError::Factor(format!(
                    "component {}: |d rho| != 1 on the boundary",
                    comp.name
                )));
            }
            // normal = metric dual of d rho.
            for j in 0..self.dim {
                if comp.normal[j] != comp.rho.partial(j) {
                    return Err(ManifoldError::Factor(format!(
                        "component {}: normal is not grad rho",
                        comp.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// 0-based variable indices a well-defined form may depend on.
    pub fn allowed_vars(&self) -> Vec<usize> {
        (0..self.dim).filter(|&j| !self.periodic[j]).collect()
    }

    /// Coframe index (1-based) of a coordinate name.
    pub fn coframe_index(&self, name: &str) -> Option<u8> {
        self.coord_names.iter().position(|c| c == name).map(|p| (p + 1) as u8)
    }

    pub fn well_defined(&self, f: &Form) -> bool {
        f.terms.values().all(|p| {
            p.terms
                .keys()
                .all(|e| e.iter().enumerate().all(|(j, &x)| x == 0 || !self.periodic[j]))
        })
    }

    /// Exact integral of a top-degree form over the manifold, as
    /// rational x pi^p. Returns None for coefficients depending on periodic
    /// coordinates.
    pub fn integrate_top(&self, f: &Form) -> Option<PiValue> {
        assert_eq!(f.degree, self.dim, "integrate_top needs a top form");
        let pi_pow = self
            .factors
            .iter()
            .filter(|fa| fa.kind == FactorKind::Ball3)
            .count() as u32;
        if !self.well_defined(f) {
            return None;
        }
        let or_sign = self.frame.orientation_sign();
        let mut total = Scalar::zero();
        for (_, p) in &f.terms {
            for (exps, c) in &p.terms {
                let mut factor = BigRational::one();
                let mut zero = false;
                let mut offset = 0usize;
                for fa in &self.factors {
                    match fa.kind {
                        FactorKind::Torus => {}
                        FactorKind::Interval => {
                            let a = exps[offset];
                            factor /= BigRational::from_integer(BigInt::from(a as i64 + 1));
                        }
                        FactorKind::Ball3 => {
                            let (a, b, cc) =
                                (exps[offset], exps[offset + 1], exps[offset + 2]);
                            if a % 2 == 1 || b % 2 == 1 || cc % 2 == 1 {
                                zero = true;
                            } else {
                                factor *= ball3_even_integral(a, b, cc);
                            }
                        }
                    }
                    offset += fa.coords.len();
                }
                if !zero {
                    total += &(c * &Scalar::from_rational(factor));
                }
            }
        }
        if or_sign < 0 {
            total = -total;
        }
        Some(PiValue { value: total, pi_pow })
    }
}

/// Integral of x^a y^b z^c over the unit 3-ball, even exponents, with the
/// single pi factor stripped (tracked separately by the caller).
fn ball3_even_integral(a: u32, b: u32, c: u32) -> BigRational {
    // Gamma(m + 1/2) = (2m)! / (4^m m!) * sqrt(pi).
    fn gamma_half(m: u64) -> BigRational {
        let mut num = BigInt::one();
        for j in 1..=2 * m {
            num *= BigInt::from(j);
        }
        let mut den = BigInt::one();
        for j in 1..=m {
            den *= BigInt::from(j);
        }
        den *= BigInt::from(4u64).pow(m as u32);
        BigRational::new(num, den)
    }
    let (ma, mb, mc) = ((a / 2) as u64, (b / 2) as u64, (c / 2) as u64);
    let mtot = ma + mb + mc + 1;
    // S = 2 Gamma(alpha)Gamma(beta)Gamma(gamma)/Gamma(alpha+beta+gamma),
    // integral = S / (a + b + c + 3); powers of sqrt(pi) cancel to pi^1.
    let s = BigRational::from_integer(BigInt::from(2)) * gamma_half(ma) * gamma_half(mb)
        * gamma_half(mc)
        / gamma_half(mtot);
    s / BigRational::from_integer(BigInt::from((a + b + c + 3) as i64))
}

/// A rational multiple of an exact power of pi.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiValue {
    pub value: Scalar,
    pub pi_pow: u32,
}

impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_pow == 0 || self.value.is_zero() {
            write!(f, "{}", self.value)
        } else if self.pi_pow == 1 {
            write!(f, "{}*pi", self.value)
        } else {
            write!(f, "{}*pi^{}", self.value, self.pi_pow)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::WedgeMonomial;

    pub fn interval_torus5() -> ManifoldDescriptor {
        let d = DescriptorJson {
            n: 3,
            factors: vec![
                FactorSpec { kind: FactorKind::Interval, coords: vec!["x1".into()] },
                FactorSpec {
                    kind: FactorKind::Torus,
                    coords: vec!["y1".into(), "x2".into(), "y2".into(), "x3".into(), "y3".into()],
                },
            ],
            omega_pairs: vec![(1, 2), (3, 4), (5, 6)],
            jsign: 1,
        };
        ManifoldDescriptor::from_descriptor(&d).unwrap()
    }

    pub fn ball_torus3() -> ManifoldDescriptor {
        let d = DescriptorJson {
            n: 3,
            factors: vec![
                FactorSpec {
                    kind: FactorKind::Ball3,
                    coords: vec!["x1".into(), "x2".into(), "x3".into()],
                },
                FactorSpec {
                    kind: FactorKind::Torus,
                    coords: vec!["y1".into(), "y2".into(), "y3".into()],
                },
            ],
            omega_pairs: vec![(1, 4), (2, 5), (3, 6)],
            jsign: 1,
        };
        ManifoldDescriptor::from_descriptor(&d).unwrap()
    }

    #[test]
    fn interval_manifold_boundary() {
        let m = interval_torus5();
        assert_eq!(m.boundary.len(), 2);
        assert_eq!(m.allowed_vars(), vec![0]);
        assert!(m.coframe_index("y3") == Some(6));
    }

    #[test]
    fn volume_integrals() {
        let m = interval_torus5();
        let mut vol = Form::zero(6, 6);
        vol.add_term(WedgeMonomial((1..=6).collect()), &Poly::one(6));
        let v = m.integrate_top(&vol).unwrap();
        assert_eq!(v.pi_pow, 0);
        assert_eq!(v.value, Scalar::one());
        // x1^2 weight: 1/3.
        let x1sq = &Poly::var(6, 0) * &Poly::var(6, 0);
        let mut f = Form::zero(6, 6);
        f.add_term(WedgeMonomial((1..=6).collect()), &x1sq);
        assert_eq!(m.integrate_top(&f).unwrap().value, Scalar::from_ratio(1, 3));

        let b = ball_torus3();
        let mut volb = Form::zero(6, 6);
        volb.add_term(WedgeMonomial((1..=6).collect()), &Poly::one(6));
        let vb = b.integrate_top(&volb).unwrap();
        assert_eq!(vb.pi_pow, 1);
        // Ball volume 4 pi / 3, with the orientation sign of the omega pairing.
        let mag = if vb.value.re.numer().sign() == num_bigint::Sign::Minus {
            -vb.value.clone()
        } else {
            vb.value.clone()
        };
        assert_eq!(mag, Scalar::from_ratio(4, 3));
    }

    #[test]
    fn orientation_of_ball_frame() {
        // omega = dx1^dy1 + dx2^dy2 + dx3^dy3 with coords x1 x2 x3 y1 y2 y3:
        // sorting w1 w4 w2 w5 w3 w6 takes three inversions, so omega^3/3!
        // is -(w1^...^w6).
        let b = ball_torus3();
        assert_eq!(b.frame.orientation_sign(), -1);
    }
}
