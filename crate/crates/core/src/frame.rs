//! A Darboux coframe on R^{2n}: the symplectic form, the sl(2) triple
//! (L, Lambda, H), the Lefschetz decomposition, the complex-structure
//! conjugation J, and the Hodge star.
//!
//! `pairs` lists the coframe index pairs (a_i, b_i) with
//! omega = sum_i w_{a_i} ^ w_{b_i}. The pairs need not be (1,2), (3,4), ...;
//! arbitrary pairings let one symplectic form be treated without relabelling
//! coordinates. A frame may also be "reduced": `dim` larger than 2 * pairs.len(),
//! with only the paired coframe directions active. Differential operators then
//! act along active coordinates only, which is what the boundary-condition
//! crosschecks on the reduced subspace need.

use crate::form::{Form, WedgeMonomial};
use crate::poly::Poly;
use crate::scalar::Scalar;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DarbouxFrame {
    /// Total coframe size (always the ambient 2n, even for reduced frames).
    pub dim: usize,
    pub pairs: Vec<(u8, u8)>,
    /// Sign s in dz_j = w_{a_j} + i s w_{b_j}.
    pub jsign: i64,
}

type DecompCache = HashMap<(Vec<(u8, u8)>, Vec<u8>), Vec<(u32, Form)>>;
type JCache = HashMap<(Vec<(u8, u8)>, i64, bool, Vec<u8>), Form>;

static DECOMP_CACHE: Lazy<Mutex<DecompCache>> = Lazy::new(|| Mutex::new(HashMap::new()));
static J_CACHE: Lazy<Mutex<JCache>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl DarbouxFrame {
    /// The standard frame: pairs (1,2), (3,4), ..., jsign +1.
    pub fn standard(n: usize) -> Self {
        let pairs = (0..n).map(|i| ((2 * i + 1) as u8, (2 * i + 2) as u8)).collect();
        DarbouxFrame { dim: 2 * n, pairs, jsign: 1 }
    }

    pub fn from_pairs(dim: usize, pairs: Vec<(u8, u8)>, jsign: i64) -> Self {
        assert!(jsign == 1 || jsign == -1);
        let mut seen = vec![false; dim + 1];
        for &(a, b) in &pairs {
            for idx in [a, b] {
                assert!(idx as usize >= 1 && idx as usize <= dim && !seen[idx as usize]);
                seen[idx as usize] = true;
            }
        }
        DarbouxFrame { dim, pairs, jsign }
    }

    /// Drop the pair containing the given coframe indices, keeping the rest.
    /// Used to restrict to the subspace transverse to a pair.
    pub fn reduced_without(&self, drop: &[u8]) -> DarbouxFrame {
        let pairs = self
            .pairs
            .iter()
            .filter(|(a, b)| !drop.contains(a) && !drop.contains(b))
            .cloned()
            .collect();
        DarbouxFrame { dim: self.dim, pairs, jsign: self.jsign }
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    /// Active coframe indices, ascending.
    pub fn active(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v
    }

    fn assert_active(&self, f: &Form) {
        debug_assert!(f.terms.keys().all(|m| {
            m.0.iter().all(|i| self.pairs.iter().any(|&(a, b)| a == *i || b == *i))
        }));
    }

    pub fn omega(&self) -> Form {
        let mut out = Form::zero(self.dim, 2);
        for &(a, b) in &self.pairs {
            let (m, sign) = WedgeMonomial::new(vec![a, b]).unwrap();
            out.add_term(m, &Poly::constant(self.dim, Scalar::from_int(sign as i64)));
        }
        out
    }

    /// L = omega ^ .
    pub fn l(&self, f: &Form) -> Form {
        self.omega().wedge(f)
    }

    pub fn l_pow(&self, r: u32, f: &Form) -> Form {
        let mut out = f.clone();
        for _ in 0..r {
            out = self.l(&out);
        }
        out
    }

    /// Lambda = sum_i iota_{e_{b_i}} iota_{e_{a_i}}, the sl(2) partner of L.
    pub fn lambda(&self, f: &Form) -> Form {
        if f.degree < 2 {
            return Form::zero(self.dim, f.degree.saturating_sub(2).max(0));
        }
        let mut out = Form::zero(self.dim, f.degree - 2);
        for &(a, b) in &self.pairs {
            out = out.add(&f.contract(a).contract(b));
        }
        out
    }

    pub fn lambda_pow(&self, m: u32, f: &Form) -> Form {
        let mut out = f.clone();
        for _ in 0..m {
            out = self.lambda(&out);
        }
        out
    }

    /// H acts as the scalar n - k on k-forms.
    pub fn h(&self, f: &Form) -> Form {
        f.scale(&Scalar::from_int(self.n() as i64 - f.degree as i64))
    }

    pub fn is_primitive(&self, f: &Form) -> bool {
        self.lambda(f).is_zero()
    }

    /// Lefschetz decomposition: returns (r, beta_r) with
    /// f = sum_r L^r beta_r and each beta_r primitive of degree k - 2r.
    /// Coefficients ride along unchanged since L and Lambda are function-linear.
    pub fn lefschetz_decompose(&self, f: &Form) -> Vec<(u32, Form)> {
        self.assert_active(f);
        let k = f.degree;
        let mut acc: HashMap<u32, Form> = HashMap::new();
        for (mono, poly) in &f.terms {
            let parts = self.decompose_monomial(mono);
            for (r, beta) in parts {
                let entry = acc
                    .entry(r)
                    .or_insert_with(|| Form::zero(self.dim, k - 2 * r as usize));
                *entry = entry.add(&beta.scale_poly(poly));
            }
        }
        let mut out: Vec<(u32, Form)> =
            acc.into_iter().filter(|(_, b)| !b.is_zero()).collect();
        out.sort_by_key(|(r, _)| *r);
        out
    }

    fn decompose_monomial(&self, mono: &WedgeMonomial) -> Vec<(u32, Form)> {
        let key = (self.pairs.clone(), mono.0.clone());
        if let Some(v) = DECOMP_CACHE.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut f = Form::zero(self.dim, mono.degree());
        f.add_term(mono.clone(), &Poly::one(self.dim));
        let v = self.decompose_raw(&f);
        DECOMP_CACHE.lock().unwrap().insert(key, v.clone());
        v
    }

    /// Top-down peeling: Lambda^r isolates the deepest component.
    fn decompose_raw(&self, f: &Form) -> Vec<(u32, Form)> {
        let n = self.n() as i64;
        let k = f.degree as i64;
        assert!(k <= 2 * n, "degree exceeds active dimension");
        let r_min = (k - n).max(0) as u32;
        let r_max = (k / 2) as u32;
        let mut out = Vec::new();
        let mut work = f.clone();
        let mut r = r_max;
        loop {
            if work.is_zero() {
                break;
            }
            if r == 0 {
                debug_assert!(self.is_primitive(&work));
                out.push((0, work));
                break;
            }
            // Lambda^r (L^r beta_s) = [prod_{j=1..r} j (n - s - j + 1)] beta_s.
            let s = k - 2 * r as i64;
            let mut c = Scalar::one();
            for j in 1..=r as i64 {
                c = c * Scalar::from_int(j * (n - s - j + 1));
            }
            let top = self.lambda_pow(r, &work);
            if !top.is_zero() {
                let beta = top.scale(&c.inv());
                work = work.sub(&self.l_pow(r, &beta));
                out.push((r, beta));
            }
            if r == r_min {
                assert!(work.is_zero(), "Lefschetz peel left a nonzero remainder");
                break;
            }
            r -= 1;
        }
        out.retain(|(_, b)| !b.is_zero());
        out.sort_by_key(|(r, _)| *r);
        out
    }

    pub fn recompose(&self, parts: &[(u32, Form)], degree: usize) -> Form {
        let mut out = Form::zero(self.dim, degree);
        for (r, beta) in parts {
            out = out.add(&self.l_pow(*r, beta));
        }
        out
    }

    /// R weights each Lefschetz component: R(L^r beta) = r L^r beta.
    pub fn star_r(&self, f: &Form) -> Form {
        let mut out = Form::zero(self.dim, f.degree);
        for (r, beta) in self.lefschetz_decompose(f) {
            out = out.add(&self.l_pow(r, &beta).scale(&Scalar::from_int(r as i64)));
        }
        out
    }

    /// Projection onto the L^r-primitive layer of the decomposition.
    pub fn lefschetz_component(&self, f: &Form, r_want: u32) -> Form {
        for (r, beta) in self.lefschetz_decompose(f) {
            if r == r_want {
                return self.l_pow(r, &beta);
            }
        }
        Form::zero(self.dim, f.degree)
    }

    /// J = sum i^{p-q} Pi^{p,q} for the compatible almost complex structure
    /// dz_j = w_{a_j} + i * jsign * w_{b_j}. Real forms map to real forms.
    pub fn j_op(&self, f: &Form) -> Form {
        self.j_generic(f, false)
    }

    /// J^{-1} = sum i^{q-p} Pi^{p,q}.
    pub fn j_op_inv(&self, f: &Form) -> Form {
        self.j_generic(f, true)
    }

    fn j_generic(&self, f: &Form, inverse: bool) -> Form {
        let mut out = Form::zero(self.dim, f.degree);
        for (mono, poly) in &f.terms {
            let jm = self.j_monomial(mono, inverse);
            out = out.add(&jm.scale_poly(poly));
        }
        out
    }

    fn j_monomial(&self, mono: &WedgeMonomial, inverse: bool) -> Form {
        let key = (self.pairs.clone(), self.jsign, inverse, mono.0.clone());
        if let Some(v) = J_CACHE.lock().unwrap().get(&key) {
            return v.clone();
        }

        // role[i] = Some((pair_index, is_a_slot)) for active indices.
        let mut role: Vec<Option<(usize, bool)>> = vec![None; self.dim + 1];
        for (pi, &(a, b)) in self.pairs.iter().enumerate() {
            role[a as usize] = Some((pi, true));
            role[b as usize] = Some((pi, false));
        }

        // Step 1: express the w-monomial in the dz/dzbar slot basis, where
        // slot a_j stands for dz_j and slot b_j for dzbar_j.
        let s = Scalar::from_int(self.jsign);
        let half = Scalar::from_ratio(1, 2);
        let mut complex = Form::constant(self.dim, Scalar::one());
        for &idx in &mono.0 {
            let factor = match role[idx as usize] {
                Some((pi, true)) => {
                    // w_a = (dz + dzbar)/2
                    let (a, b) = self.pairs[pi];
                    let mut g = Form::zero(self.dim, 1);
                    g.add_term(WedgeMonomial(vec![a]), &Poly::constant(self.dim, half.clone()));
                    g.add_term(WedgeMonomial(vec![b]), &Poly::constant(self.dim, half.clone()));
                    g
                }
                Some((pi, false)) => {
                    // w_b = (-i s / 2)(dz - dzbar)
                    let (a, b) = self.pairs[pi];
                    let c = -(Scalar::i() * s.clone() * half.clone());
                    let mut g = Form::zero(self.dim, 1);
                    g.add_term(WedgeMonomial(vec![a]), &Poly::constant(self.dim, c.clone()));
                    g.add_term(WedgeMonomial(vec![b]), &Poly::constant(self.dim, -c));
                    g
                }
                None => Form::coframe(self.dim, idx),
            };
            complex = complex.wedge(&factor);
        }

        // Step 2: scale each slot monomial by i^{p-q}, then expand back.
        let mut out = Form::zero(self.dim, mono.degree());
        for (cm, cp) in &complex.terms {
            let mut p = 0i64;
            let mut q = 0i64;
            for &idx in &cm.0 {
                match role[idx as usize] {
                    Some((_, true)) => p += 1,
                    Some((_, false)) => q += 1,
                    None => {}
                }
            }
            let phase = if inverse { Scalar::i_pow(q - p) } else { Scalar::i_pow(p - q) };
            // dz_j -> w_a + i s w_b ; dzbar_j -> w_a - i s w_b.
            let mut real = Form::constant(self.dim, Scalar::one());
            for &idx in &cm.0 {
                let factor = match role[idx as usize] {
                    Some((pi, is_a)) => {
                        let (a, b) = self.pairs[pi];
                        let c = if is_a {
                            Scalar::i() * s.clone()
                        } else {
                            -(Scalar::i() * s.clone())
                        };
                        let mut g = Form::zero(self.dim, 1);
                        g.add_term(WedgeMonomial(vec![a]), &Poly::one(self.dim));
                        g.add_term(WedgeMonomial(vec![b]), &Poly::constant(self.dim, c));
                        g
                    }
                    None => Form::coframe(self.dim, idx),
                };
                real = real.wedge(&factor);
            }
            out = out.add(&real.scale(&phase).scale_poly(cp));
        }

        J_CACHE.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Sign of omega^n / n! against w_1 ^ ... ^ w_{2n}. Full frames only.
    pub fn orientation_sign(&self) -> i64 {
        assert_eq!(self.dim, 2 * self.n(), "orientation needs a full frame");
        let mut vol = Form::constant(self.dim, Scalar::one());
        for _ in 0..self.n() {
            vol = self.l(&vol);
        }
        let mut fact = Scalar::one();
        for j in 1..=self.n() as i64 {
            fact = fact * Scalar::from_int(j);
        }
        let vol = vol.scale(&fact.inv());
        assert_eq!(vol.terms.len(), 1);
        let (m, p) = vol.terms.iter().next().unwrap();
        assert_eq!(m.degree(), self.dim);
        let c = p.terms.values().next().unwrap();
        if c == &Scalar::one() {
            1
        } else {
            assert_eq!(c, &(-Scalar::one()));
            -1
        }
    }

    /// Hodge star for the flat metric in which the coframe is orthonormal,
    /// oriented by omega^n / n!. Full frames only.
    pub fn hodge_star(&self, f: &Form) -> Form {
        assert_eq!(self.dim, 2 * self.n(), "Hodge star needs a full frame");
        let or_sign = self.orientation_sign();
        let mut out = Form::zero(self.dim, self.dim - f.degree);
        for (m, p) in &f.terms {
            let comp = m.complement(self.dim as u8);
            // Sign of the permutation sorting (m, comp) into 1..2n.
            let mut seq: Vec<u8> = m.0.clone();
            seq.extend_from_slice(&comp);
            let mut sign = 1i64;
            for i in 0..seq.len() {
                for j in i + 1..seq.len() {
                    if seq[i] > seq[j] {
                        sign = -sign;
                    }
                }
            }
            let total = sign * or_sign;
            out.add_term(
                WedgeMonomial(comp),
                &if total < 0 { -p } else { p.clone() },
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_commutator() {
        // (Lambda L - L Lambda) f = (n - k) f on k-forms, n = 3.
        let fr = DarbouxFrame::standard(3);
        for k in 0..=4usize {
            let mut f = Form::zero(6, k);
            if k <= 6 {
                let idx: Vec<u8> = (1..=k as u8).collect();
                f.add_term(WedgeMonomial(idx), &Poly::one(6));
            }
            let lhs = fr.lambda(&fr.l(&f)).sub(&fr.l(&fr.lambda(&f)));
            assert_eq!(lhs, fr.h(&f));
        }
    }

    #[test]
    fn decompose_roundtrip() {
        let fr = DarbouxFrame::standard(2);
        // w1^w2 + 2 w3^w4 splits into an omega multiple plus a primitive.
        let mut f = Form::zero(4, 2);
        f.add_term(WedgeMonomial(vec![1, 2]), &Poly::one(4));
        f.add_term(WedgeMonomial(vec![3, 4]), &Poly::constant(4, Scalar::from_int(2)));
        let parts = fr.lefschetz_decompose(&f);
        assert_eq!(parts.len(), 2);
        for (r, beta) in &parts {
            if *r == 0 {
                assert!(fr.is_primitive(beta));
            }
        }
        assert_eq!(fr.recompose(&parts, 2), f);
    }

    #[test]
    fn j_squares_to_plus_minus_one() {
        // J^2 = (-1)^k on k-forms.
        let fr = DarbouxFrame::standard(2);
        let mut f = Form::zero(4, 1);
        f.add_term(WedgeMonomial(vec![1]), &Poly::one(4));
        f.add_term(WedgeMonomial(vec![4]), &Poly::constant(4, Scalar::from_int(3)));
        assert_eq!(fr.j_op(&fr.j_op(&f)), f.neg());
        assert_eq!(fr.j_op_inv(&fr.j_op(&f)), f);
    }

    #[test]
    fn jsign_convention() {
        // With jsign = +1, J w_a = -w_b and J w_b = w_a.
        let fr = DarbouxFrame::standard(1);
        let wa = Form::coframe(2, 1);
        let wb = Form::coframe(2, 2);
        assert_eq!(fr.j_op(&wa), wb.neg());
        assert_eq!(fr.j_op(&wb), wa);
    }

    #[test]
    fn star_is_involution_up_to_sign() {
        // On R^{2n}, star star = (-1)^{k(2n-k)} = + for 2n even always.
        let fr = DarbouxFrame::standard(2);
        let mut f = Form::zero(4, 2);
        f.add_term(WedgeMonomial(vec![1, 3]), &Poly::var(4, 0));
        assert_eq!(fr.hodge_star(&fr.hodge_star(&f)), f);
        // Volume normalization: star 1 = omega^n/n!.
        let one = Form::constant(4, Scalar::one());
        let vol = fr.hodge_star(&one);
        let omega2 = fr.l(&fr.omega()).scale(&Scalar::from_ratio(1, 2));
        assert_eq!(vol, omega2);
    }
}
