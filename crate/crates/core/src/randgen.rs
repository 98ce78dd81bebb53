//! Seeded random form generation for the identity and boundary-condition
//! suites. Polynomial coefficients have total degree at most 3 and integer
//! coefficients with absolute value at most 5, so every suite is reproducible
//! from its seed.

use crate::form::{Form, WedgeMonomial};
use crate::frame::DarbouxFrame;
use crate::poly::Poly;
use crate::scalar::Scalar;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_POLY_DEGREE: u32 = 3;
pub const MAX_COEFF: i64 = 5;

pub struct FormGen {
    rng: ChaCha8Rng,
}

impl FormGen {
    pub fn new(seed: u64) -> Self {
        FormGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn coeff(&mut self) -> Scalar {
        loop {
            let c = self.rng.gen_range(-MAX_COEFF..=MAX_COEFF);
            if c != 0 {
                return Scalar::from_int(c);
            }
        }
    }

    /// Random polynomial in the allowed variables (0-based indices).
    pub fn poly(&mut self, nvars: usize, allowed: &[usize]) -> Poly {
        let nterms = self.rng.gen_range(1..=3);
        let mut p = Poly::zero(nvars);
        for _ in 0..nterms {
            let mut exps = vec![0u32; nvars];
            if !allowed.is_empty() {
                let deg = self.rng.gen_range(0..=MAX_POLY_DEGREE);
                for _ in 0..deg {
                    let v = *allowed.choose(&mut self.rng).unwrap();
                    exps[v] += 1;
                }
            }
            p.add_term(exps, &self.coeff());
        }
        p
    }

    /// Random homogeneous form of the given degree; coefficients only in the
    /// allowed variables.
    pub fn form(&mut self, dim: usize, degree: usize, allowed: &[usize]) -> Form {
        let all: Vec<u8> = (1..=dim as u8).collect();
        self.form_over(dim, degree, allowed, &all)
    }

    /// Like `form` but with wedge indices drawn from the given coframe set
    /// (needed for reduced frames, whose forms must avoid inactive indices).
    pub fn form_over(
        &mut self,
        dim: usize,
        degree: usize,
        allowed: &[usize],
        coframe: &[u8],
    ) -> Form {
        assert!(degree <= coframe.len());
        let nterms = self.rng.gen_range(1..=3);
        let mut f = Form::zero(dim, degree);
        let all: Vec<u8> = coframe.to_vec();
        for _ in 0..nterms {
            let mut idx = all.clone();
            idx.shuffle(&mut self.rng);
            idx.truncate(degree);
            idx.sort_unstable();
            f.add_term(WedgeMonomial(idx), &self.poly(dim, allowed));
        }
        f
    }

    /// Random nonzero primitive form: a random form pushed through the
    /// primitive projection. Falls back to zero if projection keeps vanishing.
    pub fn primitive(&mut self, frame: &DarbouxFrame, degree: usize, allowed: &[usize]) -> Form {
        assert!(degree <= frame.n());
        let active = frame.active();
        for _ in 0..10 {
            let f = self.form_over(frame.dim, degree, allowed, &active);
            let parts = frame.lefschetz_decompose(&f);
            if let Some((_, beta)) = parts.iter().find(|(r, _)| *r == 0) {
                if !beta.is_zero() {
                    return beta.clone();
                }
            }
        }
        Form::zero(frame.dim, degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut a = FormGen::new(7);
        let mut b = FormGen::new(7);
        let allowed: Vec<usize> = (0..4).collect();
        for _ in 0..5 {
            assert_eq!(a.form(4, 2, &allowed), b.form(4, 2, &allowed));
        }
    }

    #[test]
    fn primitive_output_is_primitive() {
        let fr = DarbouxFrame::standard(3);
        let mut g = FormGen::new(1);
        let allowed: Vec<usize> = (0..6).collect();
        for k in 0..=3 {
            let p = g.primitive(&fr, k, &allowed);
            assert!(fr.is_primitive(&p));
        }
    }
}
