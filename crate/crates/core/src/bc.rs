//! Decision procedures for the twelve boundary conditions, the local
//! decomposition of a primitive form near a boundary component, and the
//! local-form crosschecks.
//!
//! Every condition is realized differentially: a first-order condition with
//! operator P holds iff P(rho f) vanishes on the component, the second-order
//! pair uses P(rho^2 f), and the doubled conditions add
//! 2P(rho f) - (1/2) Lie_n[P(rho^2 f)]. "Vanishes on the component" means
//! every coefficient polynomial is divisible by rho, which is exact for the
//! principal boundary ideals used here. `check_bc` is the authoritative
//! decision; the local-form tables are validated against it.

use crate::form::Form;
use crate::frame::DarbouxFrame;
use crate::manifold::{BoundaryComponent, ManifoldDescriptor};
use crate::ops::OperatorKind;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BcKind {
    D,
    N,
    JD,
    JN,
    DPlus,
    NPlus,
    DMinus,
    NMinus,
    DPlusMinus,
    NPlusMinus,
    DPlusPlus,
    NMinusMinus,
}

pub const ALL_BC_KINDS: [BcKind; 12] = [
    BcKind::D,
    BcKind::N,
    BcKind::JD,
    BcKind::JN,
    BcKind::DPlus,
    BcKind::NPlus,
    BcKind::DMinus,
    BcKind::NMinus,
    BcKind::DPlusMinus,
    BcKind::NPlusMinus,
    BcKind::DPlusPlus,
    BcKind::NMinusMinus,
];

impl BcKind {
    pub fn name(self) -> &'static str {
        match self {
            BcKind::D => "D",
            BcKind::N => "N",
            BcKind::JD => "JD",
            BcKind::JN => "JN",
            BcKind::DPlus => "Dplus",
            BcKind::NPlus => "Nplus",
            BcKind::DMinus => "Dminus",
            BcKind::NMinus => "Nminus",
            BcKind::DPlusMinus => "DplusMinus",
            BcKind::NPlusMinus => "NplusMinus",
            BcKind::DPlusPlus => "DplusPlus",
            BcKind::NMinusMinus => "NminusMinus",
        }
    }

    pub fn parse(s: &str) -> Option<BcKind> {
        ALL_BC_KINDS.iter().copied().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// The defining operator of a first-order condition.
    pub fn first_order_operator(self) -> Option<OperatorKind> {
        match self {
            BcKind::D => Some(OperatorKind::D),
            BcKind::N => Some(OperatorKind::DStar),
            BcKind::JD => Some(OperatorKind::DLambdaStar),
            BcKind::JN => Some(OperatorKind::DLambda),
            BcKind::DPlus => Some(OperatorKind::DelPlus),
            BcKind::DMinus => Some(OperatorKind::DelMinus),
            BcKind::NPlus => Some(OperatorKind::DelPlusStar),
            BcKind::NMinus => Some(OperatorKind::DelMinusStar),
            _ => None,
        }
    }

    /// The defining second-order operator for the remaining conditions.
    pub fn second_order_operator(self) -> Option<OperatorKind> {
        match self {
            BcKind::DPlusMinus | BcKind::DPlusPlus => Some(OperatorKind::DelPlusDelMinus),
            BcKind::NPlusMinus | BcKind::NMinusMinus => Some(OperatorKind::DelPlusDelMinusStar),
            _ => None,
        }
    }
}

impl ManifoldDescriptor {
    pub fn vanishes_on(&self, f: &Form, comp: &BoundaryComponent) -> bool {
        f.divisible_by(&comp.rho)
    }

    fn rho_times(&self, f: &Form, comp: &BoundaryComponent, power: u32) -> Form {
        f.scale_poly(&comp.rho.pow(power))
    }

    /// First-order condition: P(rho f) vanishes on the component.
    pub fn first_order_condition(
        &self,
        kind: BcKind,
        f: &Form,
        comp: &BoundaryComponent,
    ) -> bool {
        let op = kind.first_order_operator().expect("not a first-order condition");
        let g = self.frame.apply(op, &self.rho_times(f, comp, 1));
        self.vanishes_on(&g, comp)
    }

    /// Second-order condition: P(rho^2 f) vanishes on the component.
    pub fn second_order_condition(
        &self,
        kind: BcKind,
        f: &Form,
        comp: &BoundaryComponent,
    ) -> bool {
        let op = kind.second_order_operator().expect("not a second-order condition");
        let g = self.frame.apply(op, &self.rho_times(f, comp, 2));
        self.vanishes_on(&g, comp)
    }

    /// The doubled conditions: second_order_condition plus
    /// {2 P(rho f) - (1/2) Lie_n[P(rho^2 f)]} = 0 on the component.
    pub fn full_second_order_condition(
        &self,
        kind: BcKind,
        f: &Form,
        comp: &BoundaryComponent,
    ) -> bool {
        if !self.second_order_condition(kind, f, comp) {
            return false;
        }
        let op = kind.second_order_operator().unwrap();
        let a = self.frame.apply(op, &self.rho_times(f, comp, 1)).scale(&Scalar::from_int(2));
        let b = self
            .frame
            .apply(op, &self.rho_times(f, comp, 2))
            .lie_derivative(&comp.normal)
            .scale(&Scalar::from_ratio(1, 2));
        self.vanishes_on(&a.sub(&b), comp)
    }

    pub fn check_bc_component(&self, kind: BcKind, f: &Form, comp: &BoundaryComponent) -> bool {
        match kind {
            BcKind::DPlusMinus | BcKind::NPlusMinus => {
                self.second_order_condition(kind, f, comp)
            }
            BcKind::DPlusPlus | BcKind::NMinusMinus => {
                self.full_second_order_condition(kind, f, comp)
            }
            _ => self.first_order_condition(kind, f, comp),
        }
    }

    /// Conjunction over all boundary components.
    pub fn check_bc(&self, kind: BcKind, f: &Form) -> bool {
        self.boundary.iter().all(|comp| self.check_bc_component(kind, f, comp))
    }

    /// Like check_bc but names the first failing component.
    pub fn check_bc_witness(&self, kind: BcKind, f: &Form) -> Result<(), String> {
        for comp in &self.boundary {
            if !self.check_bc_component(kind, f, comp) {
                return Err(format!(
                    "{} fails on boundary component {}",
                    kind.name(),
                    comp.name
                ));
            }
        }
        Ok(())
    }
}

/// The local splitting of a primitive form against a distinguished Darboux
/// pair: beta = w1 ^ b1 + w2 ^ b2 + Theta12 ^ b3 + b4, with
/// Theta12 = w1 ^ w2 - omega'/(n - k + 1) and all pieces free of w1, w2.
#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub b1: Form,
    pub b2: Form,
    pub b3: Form,
    pub b4: Form,
    /// The distinguished pair's coframe indices (a, b) and the sign s with
    /// w1 = s w_a, w2 = s w_b.
    pub pair: (u8, u8),
    pub sign: i64,
}

/// Boundary pair data for a component whose d rho is a constant coframe
/// element (interval ends): the pair index within the frame and the sign.
pub fn boundary_pair(
    frame: &DarbouxFrame,
    comp: &BoundaryComponent,
) -> Option<((u8, u8), i64)> {
    // d rho must be s * w_c for a single coframe index c and s = +-1.
    let mut found: Option<(u8, i64)> = None;
    for j in 0..frame.dim {
        let p = comp.rho.partial(j);
        if p.is_zero() {
            continue;
        }
        if !p.is_constant() {
            return None;
        }
        let c = p.terms.values().next().unwrap().clone();
        let s = if c == Scalar::one() {
            1
        } else if c == -Scalar::one() {
            -1
        } else {
            return None;
        };
        if found.is_some() {
            return None;
        }
        found = Some(((j + 1) as u8, s));
    }
    let (idx, s) = found?;
    for &(a, b) in &frame.pairs {
        if a == idx {
            // w1 = s w_a, w2 = s w_b keeps w1 ^ w2 = w_a ^ w_b.
            return Some(((a, b), s));
        }
        if b == idx {
            // w1 = s w_b forces w2 = -s w_a.
            // Represent via pair (b, a) with per-slot signs folded below.
            return Some(((b, a), s));
        }
    }
    None
}

impl DarbouxFrame {
    /// Split a form into (w_a ^ A, w_b ^ B, w_a ^ w_b ^ C, D) content with
    /// A, B, C, D free of both indices.
    fn split_pair(&self, f: &Form, a: u8, b: u8) -> (Form, Form, Form, Form) {
        let k = f.degree;
        let mut fa = Form::zero(self.dim, k.saturating_sub(1));
        let mut fb = Form::zero(self.dim, k.saturating_sub(1));
        let mut fab = Form::zero(self.dim, k.saturating_sub(2));
        let mut rest = Form::zero(self.dim, k);
        for (m, p) in &f.terms {
            let has_a = m.contains(a);
            let has_b = m.contains(b);
            match (has_a, has_b) {
                (true, true) => {
                    let (m1, s1) = m.contract(a).unwrap();
                    let (m2, s2) = m1.contract(b).unwrap();
                    let s = s1 * s2;
                    fab.add_term(m2, &if s < 0 { -p } else { p.clone() });
                }
                (true, false) => {
                    let (m1, s1) = m.contract(a).unwrap();
                    fa.add_term(m1, &if s1 < 0 { -p } else { p.clone() });
                }
                (false, true) => {
                    let (m1, s1) = m.contract(b).unwrap();
                    fb.add_term(m1, &if s1 < 0 { -p } else { p.clone() });
                }
                (false, false) => rest.add_term(m.clone(), p),
            }
        }
        (fa, fb, fab, rest)
    }

    /// Local decomposition of a primitive form against the distinguished pair
    /// (a, b) with w1 = s w_a, w2 = s' w_b. For a pair in its natural order
    /// s' = s; for a reversed pair the caller passes the adjusted signs.
    pub fn local_decompose(
        &self,
        f: &Form,
        pair: (u8, u8),
        s1: i64,
        s2: i64,
    ) -> LocalDecomposition {
        let (a, b) = pair;
        let k = f.degree as i64;
        let n = self.n() as i64;
        debug_assert!(self.is_primitive(f));
        let (fa, fb, fab, rest) = self.split_pair(f, a, b);
        // f = w_a ^ A + w_b ^ B + (w_a ^ w_b) ^ C + D
        //   = w1 (s1 A) + w2 (s2 B) + (s1 s2 w1 ^ w2) ^ C + D.
        // With Theta12 = w1 ^ w2 - omega'/(n-k+1):
        //   b3 = s1 s2 C, b4 = D + omega' ^ C * (s1 s2) * 1/(n-k+1) ... the
        // omega' correction uses b3 itself.
        let sgn = |s: i64, g: &Form| if s < 0 { g.neg() } else { g.clone() };
        let b1 = sgn(s1, &fa);
        let b2 = sgn(s2, &fb);
        let b3 = sgn(s1 * s2, &fab);
        let c = Scalar::from_ratio(1, n - k + 1);
        let reduced = self.reduced_without(&[a, b]);
        let omega_p = reduced.omega();
        let b4 = rest.add(&omega_p.wedge(&b3).scale(&c));
        let ld = LocalDecomposition { b1, b2, b3, b4, pair, sign: s1 };
        debug_assert!({
            // Reconstruction: w1 b1 + w2 b2 + Theta12 b3 + b4 = f.
            let w1 = Form::coframe(self.dim, a).scale(&Scalar::from_int(s1));
            let w2 = Form::coframe(self.dim, b).scale(&Scalar::from_int(s2));
            let theta = w1.wedge(&w2).sub(&omega_p.scale(&c));
            let back = w1
                .wedge(&ld.b1)
                .add(&w2.wedge(&ld.b2))
                .add(&theta.wedge(&ld.b3))
                .add(&ld.b4);
            back == *f && self.is_primitive(&theta.wedge(&ld.b3))
        });
        ld
    }
}

/// Scalar coefficients for the second rows of the local second-order table:
/// the D-type condition reads d_1 b2 - d_2 b1 + a3 delPlus' b3 + a4 delMinus' b4,
/// the N-type condition reads d_1 b1 + d_2 b2 + c3 delMinusStar' b3 + c4 delPlusStar' b4.
/// The degree-counting factors are evaluated on the reduced 2(n-1) subspace at
/// the relevant component degrees; see `table6_scalars`.
pub fn table6_scalars(n: i64, k: i64) -> (Scalar, Scalar, Scalar, Scalar) {
    // H here counts on the reduced subspace: for b3 of degree k - 2 on n - 1
    // pairs, H = (n - 1) - (k - 2) = n - k + 1.
    let h = n - k + 1;
    let a3 = if h != 0 {
        Scalar::from_ratio(h + 1, h)
    } else {
        Scalar::zero()
    };
    let a4 = Scalar::from_int(h - 1);
    let c3 = Scalar::from_int(h + 1);
    let c4 = -Scalar::one();
    (a3, a4, c3, c4)
}

impl ManifoldDescriptor {
    /// Evaluate the local-form constraint of the first- and second-order
    /// tables for a primitive form on a flat boundary component, and return
    /// the verdict. None when the component has no constant d rho.
    pub fn table5_crosscheck(
        &self,
        kind: BcKind,
        f: &Form,
        comp: &BoundaryComponent,
    ) -> Option<bool> {
        let ((a, b), s) = boundary_pair(&self.frame, comp)?;
        // Reversed pair: w1 = s w_b means w2 = -s w_a.
        let natural = self.frame.pairs.iter().any(|&(pa, _)| pa == a);
        let (s1, s2) = if natural { (s, s) } else { (s, -s) };
        let ld = self.frame.local_decompose(f, (a, b), s1, s2);
        let vanish = |g: &Form| self.vanishes_on(g, comp);
        // At middle degree the first-order plus/minus conditions are
        // trivially satisfied: delPlus annihilates primitive n-forms and no
        // delMinus image meets them, so the local rows do not constrain.
        if f.degree == self.frame.n()
            && matches!(kind, BcKind::DPlus | BcKind::NMinus)
        {
            return Some(true);
        }
        let verdict = match kind {
            BcKind::D => vanish(&ld.b2) && vanish(&ld.b3) && vanish(&ld.b4),
            BcKind::N | BcKind::NPlus => vanish(&ld.b1) && vanish(&ld.b3),
            BcKind::JD => vanish(&ld.b1) && vanish(&ld.b3) && vanish(&ld.b4),
            BcKind::JN | BcKind::DMinus => vanish(&ld.b2) && vanish(&ld.b3),
            BcKind::DPlus => vanish(&ld.b2) && vanish(&ld.b4),
            BcKind::NMinus => vanish(&ld.b1) && vanish(&ld.b4),
            BcKind::DPlusMinus => vanish(&ld.b2),
            BcKind::NPlusMinus => vanish(&ld.b1),
            BcKind::DPlusPlus => {
                vanish(&ld.b2) && {
                    let expr = self.table6_second_condition(true, &ld, (a, b), (s1, s2));
                    vanish(&expr)
                }
            }
            BcKind::NMinusMinus => {
                vanish(&ld.b1) && {
                    let expr = self.table6_second_condition(false, &ld, (a, b), (s1, s2));
                    vanish(&expr)
                }
            }
        };
        Some(verdict)
    }

    fn table6_second_condition(
        &self,
        d_type: bool,
        ld: &LocalDecomposition,
        pair: (u8, u8),
        signs: (i64, i64),
    ) -> Form {
        let (a, b) = pair;
        let (s1, s2) = signs;
        let n = self.frame.n() as i64;
        let k = (ld.b1.degree + 1) as i64;
        let reduced = self.frame.reduced_without(&[a, b]);
        let (a3, a4, c3, c4) = table6_scalars(n, k);
        // d_1, d_2 differentiate along the w1, w2 directions.
        let d1 = |g: &Form| {
            let h = g.map_coeffs(|p| p.partial(a as usize - 1));
            if s1 < 0 { h.neg() } else { h }
        };
        let d2 = |g: &Form| {
            let h = g.map_coeffs(|p| p.partial(b as usize - 1));
            if s2 < 0 { h.neg() } else { h }
        };
        if d_type {
            d1(&ld.b2)
                .sub(&d2(&ld.b1))
                .add(&reduced.del_plus(&ld.b3).scale(&a3))
                .add(&reduced.del_minus(&ld.b4).scale(&a4))
        } else {
            d1(&ld.b1)
                .add(&d2(&ld.b2))
                .add(&reduced.del_minus_star(&ld.b3).scale(&c3))
                .add(&reduced.del_plus_star(&ld.b4).scale(&c4))
        }
    }
}

/// A random Dirichlet-type corpus element: rho-multiples satisfy every
/// D-type condition; used by preservation suites.
pub fn rho_product(m: &ManifoldDescriptor) -> Poly {
    let mut p = Poly::one(m.dim);
    for comp in &m.boundary {
        p = &p * &comp.rho;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::WedgeMonomial;
    use crate::manifold::{DescriptorJson, FactorKind, FactorSpec};

    fn ixt5() -> ManifoldDescriptor {
        let d = DescriptorJson {
            n: 3,
            factors: vec![
                FactorSpec { kind: FactorKind::Interval, coords: vec!["x1".into()] },
                FactorSpec {
                    kind: FactorKind::Torus,
                    coords: vec![
                        "y1".into(),
                        "x2".into(),
                        "y2".into(),
                        "x3".into(),
                        "y3".into(),
                    ],
                },
            ],
            omega_pairs: vec![(1, 2), (3, 4), (5, 6)],
            jsign: 1,
        };
        ManifoldDescriptor::from_descriptor(&d).unwrap()
    }

    #[test]
    fn basic_conditions_on_interval_torus() {
        let m = ixt5();
        // dy1 fails D (it does not vanish on either end).
        let dy1 = Form::coframe(6, 2);
        assert!(!m.check_bc(BcKind::D, &dy1));
        // dy1 passes N: dStar(rho dy1) = 0.
        assert!(m.check_bc(BcKind::N, &dy1));
        // dx1 passes Dplus: delPlus(rho dx1) = Pi(dx1 ^ dx1) = 0 at both ends.
        let dx1 = Form::coframe(6, 1);
        assert!(m.check_bc(BcKind::DPlus, &dx1));
        // Constants fail D.
        let one = Form::constant(6, Scalar::one());
        assert!(!m.check_bc(BcKind::D, &one));
        // rho-multiples satisfy D.
        let rho2 = rho_product(&m);
        let f = dy1.scale_poly(&rho2);
        assert!(m.check_bc(BcKind::D, &f));
    }

    #[test]
    fn local_decomposition_examples() {
        let m = ixt5();
        let comp = &m.boundary[0];
        let ((a, b), s) = boundary_pair(&m.frame, comp).unwrap();
        assert_eq!((a, b, s), (1, 2, 1));
        // dx1 ^ dy2: b1 = dy2, rest zero.
        let f = Form::coframe(6, 1).wedge(&Form::coframe(6, 4));
        let ld = m.frame.local_decompose(&f, (a, b), 1, 1);
        assert_eq!(ld.b1, Form::coframe(6, 4));
        assert!(ld.b2.is_zero() && ld.b3.is_zero() && ld.b4.is_zero());
        // dy1: b2 = 1.
        let g = Form::coframe(6, 2);
        let ld2 = m.frame.local_decompose(&g, (a, b), 1, 1);
        assert_eq!(ld2.b2, Form::constant(6, Scalar::one()));
        assert!(ld2.b1.is_zero() && ld2.b3.is_zero() && ld2.b4.is_zero());
        // dy2 ^ dy3: pure b4.
        let h = Form::coframe(6, 4).wedge(&Form::coframe(6, 6));
        let ld3 = m.frame.local_decompose(&h, (a, b), 1, 1);
        assert_eq!(ld3.b4, h);
        assert!(ld3.b1.is_zero() && ld3.b2.is_zero() && ld3.b3.is_zero());
    }

    #[test]
    fn second_end_has_flipped_sign() {
        let m = ixt5();
        let comp = &m.boundary[1];
        let ((a, b), s) = boundary_pair(&m.frame, comp).unwrap();
        assert_eq!((a, b, s), (1, 2, -1));
    }

    #[test]
    fn table5_agrees_on_simple_forms() {
        let m = ixt5();
        let comp = &m.boundary[0];
        for kind in [BcKind::D, BcKind::N, BcKind::JD, BcKind::JN, BcKind::DPlus, BcKind::NMinus]
        {
            for f in [
                Form::coframe(6, 1),
                Form::coframe(6, 2),
                Form::coframe(6, 3),
                Form::coframe(6, 1).wedge(&Form::coframe(6, 4)),
            ] {
                let lhs = m.check_bc_component(kind, &f, comp);
                let rhs = m.table5_crosscheck(kind, &f, comp).unwrap();
                assert_eq!(lhs, rhs, "{:?} on {:?}", kind, f);
            }
        }
    }

    #[test]
    fn second_order_examples() {
        let m = ixt5();
        // dy1^dy2^dy3 satisfies NplusMinus (and NminusMinus) on I x T^5.
        let f = Form::coframe(6, 2)
            .wedge(&Form::coframe(6, 4))
            .wedge(&Form::coframe(6, 6));
        assert!(m.check_bc(BcKind::NPlusMinus, &f));
        assert!(m.check_bc(BcKind::NMinusMinus, &f));
        // dx1^dx2^dx3 satisfies DplusMinus.
        let g = Form::coframe(6, 1)
            .wedge(&Form::coframe(6, 3))
            .wedge(&Form::coframe(6, 5));
        assert!(m.check_bc(BcKind::DPlusMinus, &g));
        assert!(m.check_bc(BcKind::DPlusPlus, &g));
    }

    #[test]
    fn j_equivalences_on_probe() {
        let m = ixt5();
        let mut gen = crate::randgen::FormGen::new(42);
        for k in 1..=3usize {
            for _ in 0..5 {
                let beta = gen.primitive(&m.frame, k, &[0]);
                if beta.is_zero() {
                    continue;
                }
                let jb = m.frame.j_op(&beta);
                assert_eq!(
                    m.check_bc(BcKind::DPlus, &beta),
                    m.check_bc(BcKind::NMinus, &jb)
                );
                assert_eq!(
                    m.check_bc(BcKind::DMinus, &beta),
                    m.check_bc(BcKind::NPlus, &jb)
                );
            }
        }
    }
}
