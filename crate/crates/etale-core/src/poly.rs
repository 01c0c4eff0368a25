//! Sparse bivariate Laurent polynomials with exact rational coefficients.
//!
//! Elements live in `C[x, x^-1, y]`: the exponent of the first variable may
//! be any integer while the exponent of the second is always nonnegative.
//! Ordinary polynomials of `C[x, y]` are the elements whose `x`-exponents
//! are all nonnegative (see [`LaurentPoly::is_polynomial`]).
//!
//! Terms are stored in a `BTreeMap` keyed by exponent pair, so iteration and
//! display follow the canonical ascending lexicographic order on
//! `(e_x, e_y)`. No zero coefficient is ever stored.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Exponent pair of a single term.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Exp {
    pub x: i64,
    pub y: i64,
}

impl Exp {
    pub fn new(x: i64, y: i64) -> Self {
        assert!(y >= 0, "negative y-exponent");
        Exp { x, y }
    }

    /// Usual total degree of the monomial.
    pub fn total_degree(&self) -> i64 {
        self.x + self.y
    }
}

/// The two variables of the ring.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X,
    Y,
}

/// Total degree of a polynomial; the zero polynomial gets a distinguished
/// minimal value so that degrees stay additive under products.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum TotalDegree {
    NegInfinity,
    Finite(i64),
}

impl TotalDegree {
    pub fn finite(self) -> Option<i64> {
        match self {
            TotalDegree::NegInfinity => None,
            TotalDegree::Finite(n) => Some(n),
        }
    }
}

impl Add for TotalDegree {
    type Output = TotalDegree;
    fn add(self, rhs: TotalDegree) -> TotalDegree {
        match (self, rhs) {
            (TotalDegree::Finite(a), TotalDegree::Finite(b)) => TotalDegree::Finite(a + b),
            _ => TotalDegree::NegInfinity,
        }
    }
}

impl fmt::Display for TotalDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TotalDegree::NegInfinity => write!(f, "-inf"),
            TotalDegree::Finite(n) => write!(f, "{}", n),
        }
    }
}

/// Weights `(w_x, w_y)` defining a grading of the ring; not both zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WeightVector {
    wx: i64,
    wy: i64,
}

impl WeightVector {
    pub fn new(wx: i64, wy: i64) -> Result<Self, PolyError> {
        if wx == 0 && wy == 0 {
            return Err(PolyError::ZeroWeightVector);
        }
        Ok(WeightVector { wx, wy })
    }

    pub fn wx(&self) -> i64 {
        self.wx
    }

    pub fn wy(&self) -> i64 {
        self.wy
    }

    /// Weighted degree of a monomial.
    pub fn degree_of(&self, e: &Exp) -> i64 {
        self.wx * e.x + self.wy * e.y
    }
}

/// Errors of the polynomial layer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolyError {
    /// A negative power of a non-unit image was requested during
    /// substitution; only `c * x^k` is invertible in the Laurent ring.
    NonInvertibleImage,
    /// Regularity is undefined for the zero polynomial.
    ZeroPolynomial,
    /// The linear map has determinant zero.
    SingularMap,
    /// Both weights of a weight vector are zero.
    ZeroWeightVector,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NonInvertibleImage => write!(f, "NonInvertibleImage"),
            PolyError::ZeroPolynomial => write!(f, "ZeroPolynomial"),
            PolyError::SingularMap => write!(f, "SingularMap"),
            PolyError::ZeroWeightVector => write!(f, "ZeroWeightVector"),
        }
    }
}

/// Invertible linear substitution `x -> a*v + b*w`, `y -> c*v + d*w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl LinearMap {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self, PolyError> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(PolyError::SingularMap);
        }
        Ok(LinearMap { a, b, c, d })
    }

    pub fn from_integers(a: i64, b: i64, c: i64, d: i64) -> Result<Self, PolyError> {
        Self::new(
            crate::rational::int(a),
            crate::rational::int(b),
            crate::rational::int(c),
            crate::rational::int(d),
        )
    }

    pub fn identity() -> Self {
        Self::from_integers(1, 0, 0, 1).unwrap()
    }

    pub fn entries(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn determinant(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> LinearMap {
        let det = self.determinant();
        LinearMap {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        }
    }
}

/// Sparse bivariate Laurent polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exp, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(0, 0, c)
    }

    pub fn var_x() -> Self {
        LaurentPoly::monomial(1, 0, Rational::one())
    }

    pub fn var_y() -> Self {
        LaurentPoly::monomial(0, 1, Rational::one())
    }

    pub fn monomial(ex: i64, ey: i64, c: Rational) -> Self {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Exp::new(ex, ey), c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64, Rational)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (ex, ey, c) in iter {
            p.insert_add(Exp::new(ex, ey), c);
        }
        p
    }

    fn insert_add(&mut self, e: Exp, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order on `(e_x, e_y)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, ex: i64, ey: i64) -> Rational {
        self.terms
            .get(&Exp { x: ex, y: ey })
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// True when every `x`-exponent is nonnegative, i.e. the element lies in
    /// `C[x, y]`.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.x >= 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.x == 0 && e.y == 0)
    }

    pub fn constant_coeff(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn min_x_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.x).min()
    }

    pub fn max_y_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.y).max()
    }

    /// The term with the most negative `x`-exponent, if any exponent is
    /// negative at all.
    pub fn most_negative_x_term(&self) -> Option<(Exp, Rational)> {
        let e = *self.terms.keys().min_by_key(|e| (e.x, e.y))?;
        if e.x < 0 {
            Some((e, self.terms[&e].clone()))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative; in `x` the Laurent rule
    /// `d(x^e)/dx = e * x^(e-1)` applies to negative exponents as well.
    pub fn partial_derivative(&self, var: Var) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            match var {
                Var::X => {
                    if e.x != 0 {
                        out.insert_add(
                            Exp::new(e.x - 1, e.y),
                            c * Rational::from_integer(e.x.into()),
                        );
                    }
                }
                Var::Y => {
                    if e.y != 0 {
                        out.insert_add(
                            Exp::new(e.x, e.y - 1),
                            c * Rational::from_integer(e.y.into()),
                        );
                    }
                }
            }
        }
        out
    }

    /// Composite `p(x_image, y_image)`.
    ///
    /// Negative `x`-exponents require `x_image` to be a unit of the Laurent
    /// ring, i.e. a single term `c * x^k`; otherwise the call fails with
    /// [`PolyError::NonInvertibleImage`].
    pub fn substitute(
        &self,
        x_image: &LaurentPoly,
        y_image: &LaurentPoly,
    ) -> Result<LaurentPoly, PolyError> {
        let needs_inverse = self.terms.keys().any(|e| e.x < 0);
        let x_unit = x_image.unit_monomial();
        if needs_inverse && x_unit.is_none() {
            return Err(PolyError::NonInvertibleImage);
        }

        let mut x_powers: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        let mut y_powers: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let xp = x_powers
                .entry(e.x)
                .or_insert_with(|| match (&x_unit, e.x) {
                    (Some((k, u)), ex) if ex < 0 => {
                        LaurentPoly::monomial(k * ex, 0, rational_pow(u, ex))
                    }
                    _ => x_image.pow(e.x as u32),
                })
                .clone();
            let yp = y_powers
                .entry(e.y)
                .or_insert_with(|| y_image.pow(e.y as u32))
                .clone();
            out = &out + &(&xp * &yp).scale(c);
        }
        Ok(out)
    }

    /// `Some((k, c))` when the polynomial is the single term `c * x^k`.
    fn unit_monomial(&self) -> Option<(i64, Rational)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if e.y == 0 {
            Some((e.x, c.clone()))
        } else {
            None
        }
    }

    /// Decomposition into homogeneous parts under the given weights. The
    /// parts sum back to the polynomial and no zero part is stored.
    pub fn weighted_components(&self, w: WeightVector) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(w.degree_of(e))
                .or_insert_with(LaurentPoly::zero)
                .insert_add(*e, c.clone());
        }
        out
    }

    /// `Some(d)` when the polynomial is homogeneous of weighted degree `d`
    /// (the zero polynomial is not).
    pub fn weighted_degree(&self, w: WeightVector) -> Option<i64> {
        let mut degrees = self.terms.keys().map(|e| w.degree_of(e));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn total_degree(&self) -> TotalDegree {
        match self.terms.keys().map(Exp::total_degree).max() {
            None => TotalDegree::NegInfinity,
            Some(n) => TotalDegree::Finite(n),
        }
    }

    /// Whether a polynomial of total degree `n` contains the pure term
    /// `var^n`. Errors on the zero polynomial, whose degree is undefined.
    pub fn is_regular_in(&self, var: Var) -> Result<bool, PolyError> {
        let n = self
            .total_degree()
            .finite()
            .ok_or(PolyError::ZeroPolynomial)?;
        let probe = match var {
            Var::X => Exp { x: n, y: 0 },
            Var::Y => Exp { x: 0, y: n },
        };
        Ok(self.terms.contains_key(&probe))
    }

    /// Composite `p(a*v + b*w, c*v + d*w)`; the input must be an ordinary
    /// polynomial. Total degree is preserved because the map is invertible.
    pub fn linear_substitute(&self, map: &LinearMap) -> LaurentPoly {
        assert!(
            self.is_polynomial(),
            "linear substitution needs nonnegative x-exponents"
        );
        let x_image = LaurentPoly::from_terms([
            (1, 0, map.a.clone()),
            (0, 1, map.b.clone()),
        ]);
        let y_image = LaurentPoly::from_terms([
            (1, 0, map.c.clone()),
            (0, 1, map.d.clone()),
        ]);
        self.substitute(&x_image, &y_image).unwrap()
    }

    /// Display with custom variable names.
    pub fn display_with<'a>(&'a self, x: &'a str, y: &'a str) -> LaurentDisplay<'a> {
        LaurentDisplay { poly: self, x, y }
    }
}

/// `c^k` for a nonzero rational and any integer `k`.
fn rational_pow(c: &Rational, k: i64) -> Rational {
    let mag = c.pow(k.unsigned_abs() as i32);
    if k < 0 {
        mag.recip()
    } else {
        mag
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_add(Exp::new(e1.x + e2.x, e1.y + e2.y), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

/// Jacobian determinant `p_x * q_y - p_y * q_x`.
pub fn jacobian_determinant(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let px = p.partial_derivative(Var::X);
    let py = p.partial_derivative(Var::Y);
    let qx = q.partial_derivative(Var::X);
    let qy = q.partial_derivative(Var::Y);
    &(&px * &qy) - &(&py * &qx)
}

pub struct LaurentDisplay<'a> {
    poly: &'a LaurentPoly,
    x: &'a str,
    y: &'a str,
}

impl fmt::Display for LaurentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.poly, self.x, self.y)
    }
}

// Canonical ascending term order, explicit `*` between factors, `^` for
// exponents, no `1*` factors.
fn write_terms(
    f: &mut fmt::Formatter<'_>,
    poly: &LaurentPoly,
    x: &str,
    y: &str,
) -> fmt::Result {
    if poly.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (e, c) in poly.terms() {
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
        if e.x == 0 && e.y == 0 {
            factors.push(alloc::format!("{}", mag));
        } else {
            if !mag.is_one() {
                factors.push(alloc::format!("{}", mag));
            }
            if e.x != 0 {
                factors.push(if e.x == 1 {
                    String::from(x)
                } else {
                    alloc::format!("{}^{}", x, e.x)
                });
            }
            if e.y != 0 {
                factors.push(if e.y == 1 {
                    String::from(y)
                } else {
                    alloc::format!("{}^{}", y, e.y)
                });
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, "x", "y")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_laurent;
    use crate::rational::{int, rat};

    fn p(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    #[test]
    fn additive_cancellation() {
        let sum = &p("x + y") + &p("-x");
        assert_eq!(sum, p("y"));
    }

    #[test]
    fn square_of_generator() {
        // Hand expansion: (x^3*y + x)^2 = x^6*y^2 + 2*x^4*y + x^2.
        assert_eq!(p("x^3*y + x").pow(2), p("x^6*y^2 + 2*x^4*y + x^2"));
    }

    #[test]
    fn multiplication_by_zero() {
        assert_eq!(&p("x^2*y - 3") * &LaurentPoly::zero(), LaurentPoly::zero());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x^2*y").partial_derivative(Var::X), p("2*x*y"));
        // Term-by-term rule in y.
        assert_eq!(p("x^3*y + x").partial_derivative(Var::Y), p("x^3"));
        assert_eq!(p("7").partial_derivative(Var::X), LaurentPoly::zero());
        // Laurent rule: d(x^-2)/dx = -2 x^-3.
        assert_eq!(p("x^-2").partial_derivative(Var::X), p("-2*x^-3"));
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_determinant(&p("x"), &p("y")), p("1"));
        // det [[0, 1], [y, x]] = -y.
        assert_eq!(jacobian_determinant(&p("y"), &p("x*y")), p("-y"));
        let q = p("x^2*y + 5*x");
        assert_eq!(jacobian_determinant(&q, &q), LaurentPoly::zero());
    }

    #[test]
    fn substitute_monomial_image() {
        let out = p("x^2*y").substitute(&p("x^-1"), &p("y")).unwrap();
        assert_eq!(out, p("x^-2*y"));
    }

    #[test]
    fn substitute_chart_example() {
        // y under the chart for m = 3, alphas = (0, 1): hand computation
        // gives x^3*y - x^2 in the primed variables.
        let out = p("y").substitute(&p("x^-1"), &p("x^3*y - x^2")).unwrap();
        assert_eq!(out, p("x^3*y - x^2"));
    }

    #[test]
    fn substitute_identity() {
        let q = p("x^3*y - 1/2*x + y^4");
        assert_eq!(q.substitute(&p("x"), &p("y")).unwrap(), q);
    }

    #[test]
    fn substitute_rejects_non_unit_inverse() {
        let err = p("x^-1").substitute(&p("x + y"), &p("y")).unwrap_err();
        assert_eq!(err, PolyError::NonInvertibleImage);
        // y is not invertible in the Laurent ring either.
        let err = p("x^-1").substitute(&p("x*y"), &p("y")).unwrap_err();
        assert_eq!(err, PolyError::NonInvertibleImage);
    }

    #[test]
    fn weighted_component_split() {
        let w = WeightVector::new(-1, 2).unwrap();
        let comps = p("x + y").weighted_components(w);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&-1], p("x"));
        assert_eq!(comps[&2], p("y"));
    }

    #[test]
    fn weighted_degree_zero_component() {
        let w = WeightVector::new(-1, 2).unwrap();
        let comps = p("x^2*y").weighted_components(w);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&0], p("x^2*y"));
    }

    #[test]
    fn weighted_degree_minus_one_component() {
        let w = WeightVector::new(-1, 2).unwrap();
        let comps = p("x^3*y + x").weighted_components(w);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&-1], p("x^3*y + x"));
    }

    #[test]
    fn total_degrees() {
        assert_eq!(p("x^3*y + x").total_degree(), TotalDegree::Finite(4));
        assert_eq!(p("5").total_degree(), TotalDegree::Finite(0));
        assert_eq!(LaurentPoly::zero().total_degree(), TotalDegree::NegInfinity);
        assert!(TotalDegree::NegInfinity < TotalDegree::Finite(i64::MIN));
        assert_eq!(
            TotalDegree::NegInfinity + TotalDegree::Finite(3),
            TotalDegree::NegInfinity
        );
    }

    #[test]
    fn regularity() {
        assert!(p("x^2 + y^2").is_regular_in(Var::X).unwrap());
        assert!(!p("x*y").is_regular_in(Var::X).unwrap());
        // Degree 4 without an x^4 term.
        assert!(!p("x^3*y + x").is_regular_in(Var::X).unwrap());
        assert_eq!(
            LaurentPoly::zero().is_regular_in(Var::X),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn linear_substitution() {
        let swap = LinearMap::from_integers(0, 1, 1, 0).unwrap();
        assert_eq!(p("x").linear_substitute(&swap), p("y"));

        let l = LinearMap::from_integers(1, 1, 1, -1).unwrap();
        assert_eq!(p("x*y").linear_substitute(&l), p("x^2 - y^2"));

        let q = p("x^3*y - 2*x + y^2");
        assert_eq!(q.linear_substitute(&LinearMap::identity()), q);
    }

    #[test]
    fn singular_map_rejected() {
        assert_eq!(
            LinearMap::from_integers(1, 2, 2, 4).unwrap_err(),
            PolyError::SingularMap
        );
    }

    #[test]
    fn linear_map_inverse_roundtrip() {
        let l = LinearMap::new(int(2), int(1), rat(1, 2), int(1)).unwrap();
        let q = p("x^2*y + 3*x - y");
        let back = q.linear_substitute(&l).linear_substitute(&l.inverse());
        assert_eq!(back, q);
    }

    #[test]
    fn display_canonical_order() {
        assert_eq!(alloc::format!("{}", p("x^3*y + 1/2*x")), "1/2*x + x^3*y");
        assert_eq!(alloc::format!("{}", p("-x^-1 + y")), "-x^-1 + y");
        assert_eq!(alloc::format!("{}", LaurentPoly::zero()), "0");
        // Ascending (e_x, e_y) puts the pure-w term first.
        assert_eq!(
            alloc::format!("{}", p("x*y").linear_substitute(
                &LinearMap::from_integers(1, 1, 1, -1).unwrap()
            ).display_with("v", "w")),
            "-w^2 + v^2"
        );
    }
}
