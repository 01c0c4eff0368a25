//! Sparse polynomials in a finite list of abstract symbols.
//!
//! These are the expressions in the generators `T0, ..., Tm` of a Wright
//! algebra (and, for integrality certificates, in the pair symbols `P, Q`).
//! Monomials are ordered by total degree first and then as one would list
//! them by hand: `1, T0, T1, ..., T0^2, T0*T1, ...`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::LaurentPoly;
use crate::rational::Rational;

/// Exponent tuple of a monomial in the abstract symbols.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct TMono(Vec<u32>);

impl TMono {
    pub fn new(exps: Vec<u32>) -> Self {
        TMono(exps)
    }

    pub fn constant(nvars: usize) -> Self {
        TMono(alloc::vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = alloc::vec![0; nvars];
        exps[i] = 1;
        TMono(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &TMono) -> TMono {
        TMono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for TMono {
    // Graded order; within a degree, a monomial heavier on an earlier
    // symbol comes first (so T0^2 < T0*T1 < ... < T3^2).
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for TMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` symbols of total degree at most `max_degree`,
/// in ascending canonical order.
pub fn tmonomials_up_to(nvars: usize, max_degree: u32) -> Vec<TMono> {
    fn go(nvars: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<TMono>) {
        if prefix.len() == nvars {
            out.push(TMono(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            go(nvars, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(nvars, max_degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Sparse polynomial over the abstract symbols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<TMono, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, TMono::constant(nvars), c)
    }

    pub fn symbol(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, TMono::var(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: TMono, c: Rational) -> Self {
        assert_eq!(m.exps().len(), nvars);
        let mut out = Self::zero(nvars);
        if !c.is_zero() {
            out.terms.insert(m, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(TMono::is_constant)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(TMono::degree).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TMono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &TMono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn insert_add(&mut self, m: TMono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Evaluate at concrete values for the symbols.
    pub fn evaluate(&self, values: &[LaurentPoly]) -> LaurentPoly {
        assert_eq!(values.len(), self.nvars);
        let mut powers: Vec<BTreeMap<u32, LaurentPoly>> =
            alloc::vec![BTreeMap::new(); self.nvars];
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut prod = LaurentPoly::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers[i]
                    .entry(e)
                    .or_insert_with(|| values[i].pow(e))
                    .clone();
                prod = &prod * &pw;
            }
            out = &out + &prod;
        }
        out
    }

    /// Display with custom symbol names (for the pair symbols `P`, `Q`).
    pub fn display_named<'a>(&'a self, names: &'a [&'a str]) -> MultiDisplay<'a> {
        assert_eq!(names.len(), self.nvars);
        MultiDisplay {
            poly: self,
            names: Some(names),
        }
    }
}

pub struct MultiDisplay<'a> {
    poly: &'a MultiPoly,
    names: Option<&'a [&'a str]>,
}

fn write_multi(
    f: &mut fmt::Formatter<'_>,
    poly: &MultiPoly,
    names: Option<&[&str]>,
) -> fmt::Result {
    if poly.is_zero() {
        return write!(f, "0");
    }
    let name_of = |i: usize| -> String {
        match names {
            Some(ns) => String::from(ns[i]),
            None => alloc::format!("T{}", i),
        }
    };
    let mut first = true;
    for (m, c) in poly.terms() {
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
        if m.is_constant() {
            factors.push(alloc::format!("{}", mag));
        } else {
            if !mag.is_one() {
                factors.push(alloc::format!("{}", mag));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                factors.push(if e == 1 {
                    name_of(i)
                } else {
                    alloc::format!("{}^{}", name_of(i), e)
                });
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

impl fmt::Display for MultiDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_multi(f, self.poly, self.names)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_multi(f, self, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_laurent, parse_texpr};
    use crate::rational::int;

    #[test]
    fn monomial_order_is_the_hand_listing() {
        let ms = tmonomials_up_to(4, 2);
        let shown: Vec<String> = ms
            .iter()
            .map(|m| {
                alloc::format!(
                    "{}",
                    MultiPoly::monomial(4, m.clone(), int(1))
                )
            })
            .collect();
        assert_eq!(
            shown,
            [
                "1", "T0", "T1", "T2", "T3", "T0^2", "T0*T1", "T0*T2", "T0*T3", "T1^2",
                "T1*T2", "T1*T3", "T2^2", "T2*T3", "T3^2"
            ]
        );
    }

    #[test]
    fn evaluate_against_hand_expansion() {
        // T1*T3 at (y, xy, x^2y, x^3y + x) is x^4*y^2 + x^2*y.
        let e = parse_texpr("T1*T3", 4).unwrap();
        let gens = [
            parse_laurent("y").unwrap(),
            parse_laurent("x*y").unwrap(),
            parse_laurent("x^2*y").unwrap(),
            parse_laurent("x^3*y + x").unwrap(),
        ];
        assert_eq!(e.evaluate(&gens), parse_laurent("x^4*y^2 + x^2*y").unwrap());
    }

    #[test]
    fn display_roundtrip() {
        let e = parse_texpr("T0^2 - 3*T1*T3 + 1/2", 4).unwrap();
        let shown = alloc::format!("{}", e);
        assert_eq!(parse_texpr(&shown, 4).unwrap(), e);
        assert_eq!(shown, "1/2 + T0^2 - 3*T1*T3");
    }

    #[test]
    fn pq_display() {
        let e = crate::parse::parse_pq("-P + Q^2").unwrap();
        assert_eq!(alloc::format!("{}", e.display_named(&["P", "Q"])), "-P + Q^2");
    }
}
