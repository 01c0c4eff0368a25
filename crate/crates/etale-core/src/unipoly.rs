//! Univariate polynomials in the variable `z`.
//!
//! Used for the quotient `g(z)` of the negative-degree factorization, where
//! `z` stands for `x^2*y`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::LaurentPoly;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::monomial(0, Rational::one())
    }

    pub fn monomial(e: u32, c: Rational) -> Self {
        let mut p = UniPoly::zero();
        if !c.is_zero() {
            p.coeffs.insert(e, c);
        }
        p
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, Rational)>>(iter: I) -> Self {
        let mut p = UniPoly::zero();
        for (e, c) in iter {
            p = p.add(&UniPoly::monomial(e, c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().max().copied()
    }

    pub fn coeff(&self, e: u32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&u32, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            let entry = out.coeffs.entry(*e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(e);
            }
        }
        out
    }

    /// Quotient and remainder of division by the linear factor `z + alpha`.
    pub fn div_linear(&self, alpha: &Rational) -> (UniPoly, Rational) {
        let Some(deg) = self.degree() else {
            return (UniPoly::zero(), Rational::zero());
        };
        // Synthetic division at the root -alpha.
        let root = -alpha.clone();
        let mut dense = alloc::vec![Rational::zero(); (deg + 1) as usize];
        for (e, c) in &self.coeffs {
            dense[*e as usize] = c.clone();
        }
        let mut quotient = alloc::vec![Rational::zero(); deg as usize];
        let mut carry = Rational::zero();
        for k in (0..=deg).rev() {
            let v = &dense[k as usize] + &carry;
            if k == 0 {
                return (
                    UniPoly::from_coeffs(
                        quotient
                            .into_iter()
                            .enumerate()
                            .map(|(e, c)| (e as u32, c)),
                    ),
                    v,
                );
            }
            quotient[(k - 1) as usize] = v.clone();
            carry = v * &root;
        }
        unreachable!()
    }

    /// The bivariate polynomial `g(z_image)`.
    pub fn compose_into(&self, z_image: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.coeffs {
            out = &out + &z_image.pow(*e).scale(c);
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if *e == 0 {
                factors.push(alloc::format!("{}", mag));
            } else {
                if !mag.is_one() {
                    factors.push(alloc::format!("{}", mag));
                }
                factors.push(if *e == 1 {
                    String::from("z")
                } else {
                    alloc::format!("z^{}", e)
                });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_laurent, parse_uni};
    use crate::rational::int;

    #[test]
    fn synthetic_division_exact() {
        // (z + 1)(z + 2) = z^2 + 3z + 2 divides back out.
        let p = parse_uni("z^2 + 3*z + 2").unwrap();
        let (q, r) = p.div_linear(&int(1));
        assert!(r.is_zero());
        assert_eq!(q, parse_uni("z + 2").unwrap());
        let (q2, r2) = q.div_linear(&int(2));
        assert!(r2.is_zero());
        assert_eq!(q2, UniPoly::one());
    }

    #[test]
    fn division_with_remainder() {
        let p = parse_uni("z + 1").unwrap();
        let (_, r) = p.div_linear(&int(3));
        assert_eq!(r, int(-2)); // value at z = -3
    }

    #[test]
    fn composition() {
        let g = parse_uni("z^2 + 2").unwrap();
        let z = parse_laurent("x^2*y").unwrap();
        assert_eq!(
            g.compose_into(&z),
            parse_laurent("x^4*y^2 + 2").unwrap()
        );
    }

    #[test]
    fn display_roundtrip() {
        let g = parse_uni("-z^2 + 1/3*z - 4").unwrap();
        assert_eq!(alloc::format!("{}", g), "-4 + 1/3*z - z^2");
        assert_eq!(parse_uni(&alloc::format!("{}", g)).unwrap(), g);
    }
}
