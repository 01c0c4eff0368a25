//! Exact integrality certificates.
//!
//! A certificate witnesses that `h` is integral over `C[p, q]`: a monic
//! relation `h^d + a_1(p,q) h^(d-1) + ... + a_d(p,q) = 0` with the `a_i`
//! polynomial expressions in the pair symbols `P`, `Q`. The search solves,
//! for each degree `d` in turn, one exact linear system over the unknown
//! rational coefficients of the `a_i` and re-verifies any solution by full
//! expansion before returning it.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::linalg::{self, QMatrix};
use crate::multipoly::{tmonomials_up_to, MultiPoly, TMono};
use crate::poly::{Exp, LaurentPoly};
use crate::rational::Rational;

/// Monic relation witnessing `h` integral over `C[p, q]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegralityCertificate {
    pub h: LaurentPoly,
    pub p: LaurentPoly,
    pub q: LaurentPoly,
    pub d: u32,
    /// `a_1, ..., a_d` as polynomials in the symbols `P`, `Q`.
    pub coefficients: Vec<MultiPoly>,
}

impl IntegralityCertificate {
    /// Re-check the defining identity by exact expansion.
    pub fn verify(&self) -> bool {
        let values = [self.p.clone(), self.q.clone()];
        let mut acc = self.h.pow(self.d);
        for (i, a) in self.coefficients.iter().enumerate() {
            let power = self.d - (i as u32 + 1);
            acc = &acc + &(&a.evaluate(&values) * &self.h.pow(power));
        }
        acc.is_zero()
    }
}

/// Search for an integrality certificate of degree at most `d_max` whose
/// coefficients have total degree at most `coeff_degree_max` in `P`, `Q`.
///
/// Returns the first certificate in the deterministic order (smallest `d`,
/// then the solver's canonical solution); `None` when no certificate exists
/// within the bounds, which is not a proof of non-integrality.
pub fn integrality_certificate(
    h: &LaurentPoly,
    p: &LaurentPoly,
    q: &LaurentPoly,
    d_max: u32,
    coeff_degree_max: u32,
) -> Option<IntegralityCertificate> {
    assert!(d_max >= 1);
    let pq_mons = tmonomials_up_to(2, coeff_degree_max);

    // Values of the P,Q-monomials at (p, q).
    let mon_values: Vec<LaurentPoly> = pq_mons
        .iter()
        .map(|m| MultiPoly::monomial(2, m.clone(), Rational::from_integer(1.into())).evaluate(&[p.clone(), q.clone()]))
        .collect();

    for d in 1..=d_max {
        let h_powers: Vec<LaurentPoly> = (0..=d).map(|e| h.pow(e)).collect();
        // Unknowns: coefficient of each P,Q-monomial of each a_i, ordered by
        // (i, monomial); the column's polynomial is mon * h^(d - i).
        let mut columns: Vec<LaurentPoly> = Vec::new();
        for i in 1..=d {
            for mv in &mon_values {
                columns.push(mv * &h_powers[(d - i) as usize]);
            }
        }
        let rhs = &LaurentPoly::zero() - &h_powers[d as usize];

        let mut support: alloc::collections::BTreeSet<Exp> = alloc::collections::BTreeSet::new();
        for col in &columns {
            support.extend(col.terms().map(|(e, _)| *e));
        }
        support.extend(rhs.terms().map(|(e, _)| *e));
        let rows: Vec<Exp> = support.into_iter().collect();

        let mut a = QMatrix::zeros(rows.len(), columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (e, c) in col.terms() {
                let r = rows.binary_search(e).unwrap();
                a.set(r, j, c.clone());
            }
        }
        let b: Vec<Rational> = rows.iter().map(|e| rhs.coeff(e.x, e.y)).collect();

        if let Some(solution) = linalg::solve(&a, &b) {
            let mut coefficients = Vec::with_capacity(d as usize);
            for i in 0..d as usize {
                let mut ai = MultiPoly::zero(2);
                for (mi, m) in pq_mons.iter().enumerate() {
                    let c = &solution[i * pq_mons.len() + mi];
                    if !c.is_zero() {
                        ai = ai.add(&MultiPoly::monomial(2, m.clone(), c.clone()));
                    }
                }
                coefficients.push(ai);
            }
            let certificate = IntegralityCertificate {
                h: h.clone(),
                p: p.clone(),
                q: q.clone(),
                d,
                coefficients,
            };
            assert!(certificate.verify(), "solved certificate failed expansion");
            return Some(certificate);
        }
    }
    None
}

/// Convenience: the canonical monomial `P^a * Q^b`.
pub fn pq_monomial(a: u32, b: u32) -> TMono {
    TMono::new(alloc::vec![a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_laurent, parse_pq};

    fn p(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    #[test]
    fn square_cube_pair() {
        // x over (x^2, x^3): minimal relation is x^2 - P = 0.
        let cert = integrality_certificate(&p("x"), &p("x^2"), &p("x^3"), 3, 3).unwrap();
        assert_eq!(cert.d, 2);
        assert_eq!(cert.coefficients[0], MultiPoly::zero(2));
        assert_eq!(cert.coefficients[1], parse_pq("-P").unwrap());
        assert!(cert.verify());
    }

    #[test]
    fn generator_of_the_base_ring() {
        // h = x + y equals the generator p itself: degree-1 relation h - P.
        let cert = integrality_certificate(&p("x + y"), &p("x + y"), &p("x*y"), 3, 3).unwrap();
        assert_eq!(cert.d, 1);
        assert_eq!(cert.coefficients[0], parse_pq("-P").unwrap());
        assert!(cert.verify());
    }

    #[test]
    fn transcendental_element_has_no_certificate() {
        // y is transcendental over C[x].
        assert!(integrality_certificate(&p("y"), &p("x"), &p("x^2"), 3, 3).is_none());
    }

    #[test]
    fn certificate_reverification_catches_tampering() {
        let mut cert =
            integrality_certificate(&p("x"), &p("x^2"), &p("x^3"), 2, 2).unwrap();
        cert.coefficients[0] = parse_pq("Q").unwrap();
        assert!(!cert.verify());
    }
}
