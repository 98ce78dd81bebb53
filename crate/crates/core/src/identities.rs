//! Randomized verification of the symplectic operator identities.
//!
//! Every identity is checked exactly (rational arithmetic, zero tolerance) on
//! seeded pseudo-random polynomial forms of every degree. Each identity
//! produces one `Check` covering all sampled forms; on failure the witness
//! records the first offending sample.

use crate::form::Form;
use crate::frame::DarbouxFrame;
use crate::randgen::FormGen;
use crate::report::Check;
use crate::scalar::Scalar;

struct Tally {
    name: &'static str,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally { name, witness: None }
    }

    fn note(&mut self, ok: bool, n: usize, k: usize, case: usize) {
        if !ok {
            self.witness
                .get_or_insert(format!("n={} degree={} case={}", n, k, case));
        }
    }

    fn into_check(self) -> Check {
        match self.witness {
            None => Check::pass(self.name.to_string()),
            Some(w) => Check::fail(self.name.to_string(), w),
        }
    }
}

fn omega_power(fr: &DarbouxFrame, dim: usize, p: usize) -> Form {
    let mut om = Form::constant(dim, Scalar::one());
    for _ in 0..p {
        om = fr.l(&om);
    }
    om
}

/// Runs the identity suite on `cases` seeded forms for one fixed `n`
/// (manifold dimension `2n`). Degrees cycle so every degree is hit.
pub fn run_identities(n: usize, cases: usize, seed: u64) -> Vec<Check> {
    let fr = DarbouxFrame::standard(n);
    let dim = 2 * n;
    let allowed: Vec<usize> = (0..dim).collect();
    let mut gen = FormGen::new(seed);

    let mut t = vec![
        Tally::new("delPlus squared is zero"),
        Tally::new("delMinus squared is zero"),
        Tally::new("d equals delPlus + L delMinus"),
        Tally::new("L delPlus delMinus anticommutes"),
        Tally::new("L commutes with delPlus"),
        Tally::new("L commutes with L delMinus"),
        Tally::new("sl2: [Lambda, L] = H"),
        Tally::new("sl2: [H, L] = -2L"),
        Tally::new("sl2: [H, Lambda] = 2 Lambda"),
        Tally::new("J squared is (-1)^k"),
        Tally::new("dLambda is J-conjugate of dStar"),
        Tally::new("dLambdaStar is J-conjugate of d"),
        Tally::new("J delPlus J^-1 = delMinusStar (H+R)"),
        Tally::new("J delPlusStar J^-1 = (H+R) delMinus"),
        Tally::new("delPlus closed form (weighted d + L dLambda)"),
        Tally::new("delPlusStar closed form"),
    ];
    let mut tp = vec![
        Tally::new("delPlusStar equals dStar on primitive forms"),
        Tally::new("star of primitive form via omega power and J"),
    ];

    for case in 0..cases {
        let k = case % (dim + 1);
        let f = gen.form(dim, k, &allowed);

        t[0].note(fr.del_plus(&fr.del_plus(&f)).is_zero(), n, k, case);
        t[1].note(fr.del_minus(&fr.del_minus(&f)).is_zero(), n, k, case);
        t[2].note(
            fr.d(&f) == fr.del_plus(&f).add(&fr.l(&fr.del_minus(&f))),
            n,
            k,
            case,
        );
        t[3].note(
            fr.l(&fr.del_plus(&fr.del_minus(&f)))
                == fr.l(&fr.del_minus(&fr.del_plus(&f))).neg(),
            n,
            k,
            case,
        );
        t[4].note(
            fr.l(&fr.del_plus(&f)) == fr.del_plus(&fr.l(&f)),
            n,
            k,
            case,
        );
        t[5].note(
            fr.l(&fr.l(&fr.del_minus(&f))) == fr.l(&fr.del_minus(&fr.l(&f))),
            n,
            k,
            case,
        );
        t[6].note(
            fr.lambda(&fr.l(&f)).sub(&fr.l(&fr.lambda(&f))) == fr.h(&f),
            n,
            k,
            case,
        );
        t[7].note(
            fr.h(&fr.l(&f)).sub(&fr.l(&fr.h(&f))) == fr.l(&f).scale(&Scalar::from_int(-2)),
            n,
            k,
            case,
        );
        t[8].note(
            fr.h(&fr.lambda(&f)).sub(&fr.lambda(&fr.h(&f)))
                == fr.lambda(&f).scale(&Scalar::from_int(2)),
            n,
            k,
            case,
        );
        let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        t[9].note(fr.j_op(&fr.j_op(&f)) == f.scale(&sign), n, k, case);
        t[10].note(
            fr.d_lambda(&f) == fr.j_op_inv(&fr.d_star(&fr.j_op(&f))),
            n,
            k,
            case,
        );
        t[11].note(
            fr.d_lambda_star(&f) == fr.j_op_inv(&fr.d(&fr.j_op(&f))),
            n,
            k,
            case,
        );
        let hr = fr.scalar_on_components(&f, |r, s| Scalar::from_int(n as i64 - r - s));
        t[12].note(
            fr.j_op(&fr.del_plus(&fr.j_op_inv(&f))) == fr.del_minus_star(&hr),
            n,
            k,
            case,
        );
        let dm = fr.del_minus(&f);
        let hr_dm = fr.scalar_on_components(&dm, |r, s| Scalar::from_int(n as i64 - r - s));
        t[13].note(
            fr.j_op(&fr.del_plus_star(&fr.j_op_inv(&f))) == hr_dm,
            n,
            k,
            case,
        );
        let df = fr.d(&f);
        let weighted = fr.scalar_on_components(&df, |r, s| Scalar::from_int(n as i64 - r - s + 1));
        let sum = weighted.add(&fr.l(&fr.d_lambda(&f)));
        let rhs = fr
            .scalar_div_on_components(&sum, |_, s| Scalar::from_int(n as i64 - s + 1))
            .expect("n - s + 1 is never zero");
        t[14].note(fr.del_plus(&f) == rhs, n, k, case);
        t[15].note(
            fr.del_plus_star(&f) == fr.del_plus_star_formula(&f),
            n,
            k,
            case,
        );

        let kp = case % (n + 1);
        let beta = gen.primitive(&fr, kp, &allowed);
        tp[0].note(
            fr.del_plus_star(&beta) == fr.d_star(&beta),
            n,
            kp,
            case,
        );
        let mut fact = Scalar::one();
        for j in 1..=(n - kp) as i64 {
            fact = fact * Scalar::from_int(j);
        }
        let star_sign = if (kp * (kp + 1) / 2) % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let rhs = omega_power(&fr, dim, n - kp)
            .scale(&fact.inv())
            .wedge(&fr.j_op(&beta))
            .scale(&star_sign);
        tp[1].note(fr.hodge_star(&beta) == rhs, n, kp, case);
    }

    t.into_iter()
        .chain(tp)
        .map(|tally| tally.into_check())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_on_small_sample() {
        for n in 1..=3 {
            for c in run_identities(n, 14, 7 + n as u64) {
                assert!(c.status, "n={} {}: {:?}", n, c.name, c.witness);
            }
        }
    }
}
