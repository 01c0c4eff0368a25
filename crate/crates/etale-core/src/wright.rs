//! Coordinate rings `C[t_0, ..., t_m]` of affine A^1-bundles over P^1.
//!
//! The data `(m, alpha_1, ..., alpha_{m-1})` with `m >= 2` and the alphas
//! not all zero determines generators
//!
//! ```text
//! t_0 = y,   t_k = x^k*y + alpha_1*x^(k-1) + ... + alpha_{k-1}*x   (k >= 1)
//! ```
//!
//! and a second chart `x' = 1/x`, `y' = t_m`. The subalgebra generated by
//! the `t_k` inside `C[x, y]` is exactly the set of polynomials that stay
//! polynomial in both charts, which gives an exact membership test with no
//! degree bound. A bounded linear solver rewrites members in the generators
//! for certificates and cross-checks.
//!
//! The index-3 member of the family, `C[y, xy, x^2y, x^3y + alpha*x]` with
//! `alpha != 0`, carries a grading by `deg x = -1`, `deg y = 2` under which
//! its homogeneous elements of negative degree `-m` factor as
//! `(x^3y + alpha*x)^m * g(x^2y)`; that factorization and the resulting
//! absence of elements regular in both variables are implemented here.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::linalg::{self, QMatrix};
use crate::multipoly::{tmonomials_up_to, MultiPoly};
use crate::poly::{Exp, LaurentPoly, LinearMap, TotalDegree, Var, WeightVector};
use crate::rational::Rational;
use crate::unipoly::UniPoly;

/// Construction errors for the algebra data.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WrightError {
    /// `m < 2`.
    DegreeTooSmall,
    /// The alpha list must have exactly `m - 1` entries.
    AlphaCountMismatch,
    /// At least one alpha must be nonzero.
    AllAlphasZero,
    /// The canonical index-3 algebra needs `alpha != 0`.
    ZeroAlpha,
}

impl fmt::Display for WrightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WrightError::DegreeTooSmall => write!(f, "m must be at least 2"),
            WrightError::AlphaCountMismatch => write!(f, "expected m - 1 alpha values"),
            WrightError::AllAlphasZero => write!(f, "alphas must not all be zero"),
            WrightError::ZeroAlpha => write!(f, "alpha must be nonzero"),
        }
    }
}

/// Failure modes of the negative-degree factorization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FactorError {
    /// The input is not homogeneous of negative weighted degree.
    NotHomogeneousNegative,
    /// Division by `(x^3y + alpha*x)^m` leaves a remainder, witnessing that
    /// the input is outside the algebra.
    NotInAlgebra,
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::NotHomogeneousNegative => write!(f, "NotHomogeneousNegative"),
            FactorError::NotInAlgebra => write!(f, "NotInAlgebra"),
        }
    }
}

/// Error of [`regularizing_transform`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RegularizeError {
    ZeroOrConstantInput,
}

impl fmt::Display for RegularizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZeroOrConstantInput")
    }
}

/// The algebra data `(m, alpha_1, ..., alpha_{m-1})`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WrightAlgebra {
    m: usize,
    alphas: Vec<Rational>,
}

impl WrightAlgebra {
    pub fn new(m: usize, alphas: Vec<Rational>) -> Result<Self, WrightError> {
        if m < 2 {
            return Err(WrightError::DegreeTooSmall);
        }
        if alphas.len() != m - 1 {
            return Err(WrightError::AlphaCountMismatch);
        }
        if alphas.iter().all(Zero::is_zero) {
            return Err(WrightError::AllAlphasZero);
        }
        Ok(WrightAlgebra { m, alphas })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    /// Number of generators, `m + 1`.
    pub fn num_generators(&self) -> usize {
        self.m + 1
    }

    /// The generator `t_k`.
    pub fn generator(&self, k: usize) -> LaurentPoly {
        assert!(k <= self.m);
        let mut t = LaurentPoly::monomial(k as i64, 1, Rational::from_integer(1.into()));
        for i in 1..k {
            t = &t + &LaurentPoly::monomial((k - i) as i64, 0, self.alphas[i - 1].clone());
        }
        t
    }

    /// The full generator list `[t_0, ..., t_m]`.
    pub fn generators(&self) -> Vec<LaurentPoly> {
        (0..=self.m).map(|k| self.generator(k)).collect()
    }

    fn chart_images(&self) -> (LaurentPoly, LaurentPoly) {
        // x = 1/x', y = x'^m * y' - alpha_1*x' - ... - alpha_{m-1}*x'^(m-1)
        let x_image = LaurentPoly::monomial(-1, 0, Rational::from_integer(1.into()));
        let mut y_image = LaurentPoly::monomial(self.m as i64, 1, Rational::from_integer(1.into()));
        for i in 1..self.m {
            y_image = &y_image - &LaurentPoly::monomial(i as i64, 0, self.alphas[i - 1].clone());
        }
        (x_image, y_image)
    }

    /// Rewrite `p(x, y)` in the second chart; the result reads its two
    /// variable slots as `x'` and `y'`.
    pub fn chart_transform(&self, p: &LaurentPoly) -> LaurentPoly {
        let (x_image, y_image) = self.chart_images();
        p.substitute(&x_image, &y_image).unwrap()
    }

    /// Substitute `x' = 1/x`, `y' = t_m` back, undoing [`chart_transform`].
    pub fn inverse_chart_transform(&self, q: &LaurentPoly) -> LaurentPoly {
        let x_image = LaurentPoly::monomial(-1, 0, Rational::from_integer(1.into()));
        let y_image = self.generator(self.m);
        q.substitute(&x_image, &y_image).unwrap()
    }

    /// Exact membership in `C[t_0, ..., t_m]`: the element must be
    /// polynomial in both charts.
    pub fn is_member(&self, p: &LaurentPoly) -> bool {
        self.member_report(p).member
    }

    /// Membership plus, on failure, the offending negative-exponent term
    /// (of the chart image, or of the input itself when the input is not
    /// even in `C[x, y]`).
    pub fn member_report(&self, p: &LaurentPoly) -> MemberReport {
        if let Some((e, c)) = p.most_negative_x_term() {
            return MemberReport {
                member: false,
                witness: Some((e, c)),
                witness_in_chart: false,
            };
        }
        let image = self.chart_transform(p);
        match image.most_negative_x_term() {
            Some((e, c)) => MemberReport {
                member: false,
                witness: Some((e, c)),
                witness_in_chart: true,
            },
            None => MemberReport {
                member: true,
                witness: None,
                witness_in_chart: false,
            },
        }
    }

    /// Default search bound for [`express_in_generators`]: the `y`-degree of
    /// `p` bounds how many generators a useful monomial can contain, and the
    /// total degree absorbs cancellations among the relations.
    pub fn default_express_bound(p: &LaurentPoly) -> u32 {
        let ydeg = p.max_y_exponent().unwrap_or(0).max(0) as u32;
        let tdeg = match p.total_degree() {
            TotalDegree::Finite(n) if n > 0 => n as u32,
            _ => 0,
        };
        ydeg + tdeg
    }

    /// Find an expression of `p` as a polynomial of total degree at most
    /// `t_degree_bound` in the generators, by solving one exact linear
    /// system over the monomial coefficients of `C[x, y]`.
    ///
    /// `None` means no representation exists within the bound; that is not
    /// a proof of non-membership, for which [`is_member`] is the oracle.
    /// Representations are not unique; the solver deterministically prefers
    /// monomials early in the canonical order.
    pub fn express_in_generators(
        &self,
        p: &LaurentPoly,
        t_degree_bound: u32,
    ) -> Option<MultiPoly> {
        if !p.is_polynomial() {
            return None;
        }
        let nvars = self.num_generators();
        let tmons = tmonomials_up_to(nvars, t_degree_bound);
        let gens = self.generators();

        let mut power_cache: Vec<Vec<LaurentPoly>> = Vec::with_capacity(nvars);
        for g in &gens {
            let mut powers = Vec::with_capacity(t_degree_bound as usize + 1);
            powers.push(LaurentPoly::one());
            for e in 1..=t_degree_bound {
                let prev = &powers[(e - 1) as usize];
                powers.push(prev * g);
            }
            power_cache.push(powers);
        }
        let columns: Vec<LaurentPoly> = tmons
            .iter()
            .map(|m| {
                let mut prod = LaurentPoly::one();
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        prod = &prod * &power_cache[i][e as usize];
                    }
                }
                prod
            })
            .collect();

        let mut support: alloc::collections::BTreeSet<Exp> = alloc::collections::BTreeSet::new();
        for col in &columns {
            support.extend(col.terms().map(|(e, _)| *e));
        }
        support.extend(p.terms().map(|(e, _)| *e));
        let rows: Vec<Exp> = support.into_iter().collect();

        let mut a = QMatrix::zeros(rows.len(), columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (e, c) in col.terms() {
                let r = rows.binary_search(e).unwrap();
                a.set(r, j, c.clone());
            }
        }
        let b: Vec<Rational> = rows.iter().map(|e| p.coeff(e.x, e.y)).collect();

        let solution = linalg::solve(&a, &b)?;
        let mut expr = MultiPoly::zero(nvars);
        for (j, c) in solution.into_iter().enumerate() {
            if !c.is_zero() {
                expr = expr.add(&MultiPoly::monomial(nvars, tmons[j].clone(), c));
            }
        }
        debug_assert_eq!(expr.evaluate(&gens), *p);
        Some(expr)
    }
}

/// Membership verdict with an optional witness term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MemberReport {
    pub member: bool,
    pub witness: Option<(Exp, Rational)>,
    /// Whether the witness term lives in the chart image (reading its
    /// variables as `x'`, `y'`) rather than in the input itself.
    pub witness_in_chart: bool,
}

/// The weights `(-1, 2)` that grade the canonical index-3 algebra.
pub fn canonical_weights() -> WeightVector {
    WeightVector::new(-1, 2).unwrap()
}

/// `C[y, xy, x^2y, x^3y + alpha*x]` with `alpha != 0`, i.e. the Wright
/// algebra `(m = 3, alphas = (0, alpha))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalIndex3Algebra {
    alpha: Rational,
}

impl CanonicalIndex3Algebra {
    pub fn new(alpha: Rational) -> Result<Self, WrightError> {
        if alpha.is_zero() {
            return Err(WrightError::ZeroAlpha);
        }
        Ok(CanonicalIndex3Algebra { alpha })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn algebra(&self) -> WrightAlgebra {
        WrightAlgebra::new(3, alloc::vec![Rational::zero(), self.alpha.clone()]).unwrap()
    }

    /// The distinguished generator `x^3*y + alpha*x` of weighted degree -1.
    pub fn negative_generator(&self) -> LaurentPoly {
        self.algebra().generator(3)
    }

    /// Factor a homogeneous element of negative weighted degree `-m` as
    /// `(x^3y + alpha*x)^m * g(x^2y)` and return `(m, g)`.
    ///
    /// Homogeneity forces every term of the input into the shape
    /// `x^(2k+m) * y^k`, so the input is `x^m * h(z)` with `z = x^2*y`, and
    /// the division reduces to `m` exact univariate divisions of `h` by
    /// `(z + alpha)`. A nonzero remainder witnesses that the element is not
    /// in the algebra.
    pub fn negative_degree_factor(&self, f: &LaurentPoly) -> Result<(u32, UniPoly), FactorError> {
        let w = canonical_weights();
        let degree = f
            .weighted_degree(w)
            .ok_or(FactorError::NotHomogeneousNegative)?;
        if degree >= 0 {
            return Err(FactorError::NotHomogeneousNegative);
        }
        let m = (-degree) as u32;
        let mut h = UniPoly::zero();
        for (e, c) in f.terms() {
            debug_assert_eq!(e.x, 2 * e.y + m as i64);
            h = h.add(&UniPoly::monomial(e.y as u32, c.clone()));
        }
        let mut g = h;
        for _ in 0..m {
            let (q, r) = g.div_linear(&self.alpha);
            if !r.is_zero() {
                return Err(FactorError::NotInAlgebra);
            }
            g = q;
        }
        debug_assert_eq!(
            &self.negative_generator().pow(m)
                * &g.compose_into(&LaurentPoly::monomial(2, 1, Rational::from_integer(1.into()))),
            *f
        );
        Ok((m, g))
    }

    /// Certify by exact linear algebra that, degree by degree up to
    /// `max_degree`, the span of products of generators contains no element
    /// regular in both variables.
    pub fn verify_no_regular_elements(&self, max_degree: i64) -> RegularElementReport {
        assert!(max_degree >= 1);
        let gens = self.algebra().generators();
        let gen_degrees: Vec<i64> = gens
            .iter()
            .map(|g| g.total_degree().finite().unwrap())
            .collect();

        // Nonempty products t_0^l1 * ... * t_3^l4 of total degree <= D.
        let mut products: Vec<(i64, LaurentPoly)> = Vec::new();
        for m in tmonomials_up_to(gens.len(), max_degree as u32) {
            if m.is_constant() {
                continue;
            }
            let d: i64 = m
                .exps()
                .iter()
                .zip(&gen_degrees)
                .map(|(&e, &gd)| e as i64 * gd)
                .sum();
            if d <= max_degree {
                let e = MultiPoly::monomial(gens.len(), m, Rational::from_integer(1.into()));
                products.push((d, e.evaluate(&gens)));
            }
        }

        let mut per_degree = Vec::new();
        for n in 1..=max_degree {
            let cols: Vec<&LaurentPoly> = products
                .iter()
                .filter(|(d, _)| *d <= n)
                .map(|(_, p)| p)
                .collect();
            let mut support: alloc::collections::BTreeSet<Exp> =
                alloc::collections::BTreeSet::new();
            for col in &cols {
                support.extend(col.terms().map(|(e, _)| *e));
            }
            let rows: Vec<Exp> = support.into_iter().collect();
            let mut full = QMatrix::zeros(rows.len(), cols.len());
            for (j, col) in cols.iter().enumerate() {
                for (e, c) in col.terms() {
                    let r = rows.binary_search(e).unwrap();
                    full.set(r, j, c.clone());
                }
            }
            let dim = linalg::rank(full);

            // An element of the span regular in both variables at some total
            // degree k <= n must kill every monomial of degree > k while
            // keeping both the x^k and y^k coefficients nonzero.
            let mut regular_found = false;
            for k in 1..=n {
                let high_rows: Vec<usize> = (0..rows.len())
                    .filter(|&r| rows[r].total_degree() > k)
                    .collect();
                let mut constrained = QMatrix::zeros(high_rows.len(), cols.len());
                for (rr, &r) in high_rows.iter().enumerate() {
                    for (j, col) in cols.iter().enumerate() {
                        let c = col.coeff(rows[r].x, rows[r].y);
                        if !c.is_zero() {
                            constrained.set(rr, j, c);
                        }
                    }
                }
                let kernel = linalg::nullspace(constrained);
                let mut pairs: Vec<(Rational, Rational)> = Vec::new();
                for v in &kernel {
                    let mut cx = Rational::zero();
                    let mut cy = Rational::zero();
                    for (j, col) in cols.iter().enumerate() {
                        if v[j].is_zero() {
                            continue;
                        }
                        cx += col.coeff(k, 0) * &v[j];
                        cy += col.coeff(0, k) * &v[j];
                    }
                    if !cx.is_zero() || !cy.is_zero() {
                        pairs.push((cx, cy));
                    }
                }
                let both = pairs.iter().any(|(a, b)| !a.is_zero() && !b.is_zero());
                let x_axis = pairs.iter().any(|(a, _)| !a.is_zero());
                let y_axis = pairs.iter().any(|(_, b)| !b.is_zero());
                if both || (x_axis && y_axis) {
                    regular_found = true;
                }
            }
            per_degree.push(DegreeAudit {
                degree: n,
                span_dimension: dim,
                regular_found,
            });
        }
        RegularElementReport {
            alpha: self.alpha.clone(),
            max_degree,
            per_degree,
        }
    }
}

/// Per-degree audit row of [`CanonicalIndex3Algebra::verify_no_regular_elements`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeAudit {
    pub degree: i64,
    pub span_dimension: usize,
    pub regular_found: bool,
}

/// Result of the exhaustive regular-element verification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegularElementReport {
    pub alpha: Rational,
    pub max_degree: i64,
    pub per_degree: Vec<DegreeAudit>,
}

impl RegularElementReport {
    pub fn none_found(&self) -> bool {
        self.per_degree.iter().all(|d| !d.regular_found)
    }
}

/// Deterministically find an invertible integer linear substitution making
/// `p` regular in both variables.
///
/// If `p` already is, the identity is returned. Otherwise integer matrices
/// are enumerated by increasing maximum absolute entry and then
/// lexicographically on `(a, b, c, d)`, and the first invertible one that
/// works is returned; regularity fails only on a proper closed subset of
/// matrices, so the enumeration terminates.
pub fn regularizing_transform(p: &LaurentPoly) -> Result<LinearMap, RegularizeError> {
    assert!(p.is_polynomial(), "input must lie in C[x, y]");
    match p.total_degree() {
        TotalDegree::Finite(n) if n >= 1 => {}
        _ => return Err(RegularizeError::ZeroOrConstantInput),
    }
    let regular_both = |q: &LaurentPoly| {
        q.is_regular_in(Var::X).unwrap() && q.is_regular_in(Var::Y).unwrap()
    };
    if regular_both(p) {
        return Ok(LinearMap::identity());
    }
    for radius in 1i64.. {
        for a in -radius..=radius {
            for b in -radius..=radius {
                for c in -radius..=radius {
                    for d in -radius..=radius {
                        if [a, b, c, d].iter().map(|v| v.abs()).max() != Some(radius) {
                            continue;
                        }
                        let Ok(map) = LinearMap::from_integers(a, b, c, d) else {
                            continue;
                        };
                        if regular_both(&p.linear_substitute(&map)) {
                            return Ok(map);
                        }
                    }
                }
            }
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_laurent, parse_texpr, parse_uni};
    use crate::rational::{int, rat};

    fn p(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    fn canonical() -> CanonicalIndex3Algebra {
        CanonicalIndex3Algebra::new(int(1)).unwrap()
    }

    #[test]
    fn construction_guards() {
        assert_eq!(
            WrightAlgebra::new(1, alloc::vec![]).unwrap_err(),
            WrightError::DegreeTooSmall
        );
        assert_eq!(
            WrightAlgebra::new(3, alloc::vec![int(1)]).unwrap_err(),
            WrightError::AlphaCountMismatch
        );
        assert_eq!(
            WrightAlgebra::new(3, alloc::vec![int(0), int(0)]).unwrap_err(),
            WrightError::AllAlphasZero
        );
        assert_eq!(
            CanonicalIndex3Algebra::new(int(0)).unwrap_err(),
            WrightError::ZeroAlpha
        );
    }

    #[test]
    fn canonical_generators() {
        let gens = canonical().algebra().generators();
        assert_eq!(gens[0], p("y"));
        assert_eq!(gens[1], p("x*y"));
        assert_eq!(gens[2], p("x^2*y"));
        assert_eq!(gens[3], p("x^3*y + x"));
    }

    #[test]
    fn m2_generators() {
        let w = WrightAlgebra::new(2, alloc::vec![int(1)]).unwrap();
        assert_eq!(w.generators(), alloc::vec![p("y"), p("x*y"), p("x^2*y + x")]);
    }

    #[test]
    fn t0_is_always_y() {
        let w = WrightAlgebra::new(5, alloc::vec![int(2), int(0), rat(1, 3), int(-1)]).unwrap();
        assert_eq!(w.generator(0), p("y"));
        // And t_m matches its defining formula.
        assert_eq!(
            w.generator(5),
            p("x^5*y + 2*x^4 + 1/3*x^2 - x")
        );
    }

    #[test]
    fn chart_transform_of_y() {
        let w = canonical().algebra();
        assert_eq!(w.chart_transform(&p("y")), p("x^3*y - x^2"));
    }

    #[test]
    fn chart_transform_of_t_m_is_second_coordinate() {
        let w = canonical().algebra();
        assert_eq!(w.chart_transform(&p("x^3*y + x")), p("y"));
    }

    #[test]
    fn chart_transform_of_x() {
        let w = WrightAlgebra::new(4, alloc::vec![int(1), int(0), int(2)]).unwrap();
        assert_eq!(w.chart_transform(&p("x")), p("x^-1"));
    }

    #[test]
    fn chart_roundtrip() {
        let w = WrightAlgebra::new(3, alloc::vec![rat(1, 2), int(-3)]).unwrap();
        let q = p("x^4*y^2 - 2*x*y + y^3 - 7");
        assert_eq!(w.inverse_chart_transform(&w.chart_transform(&q)), q);
    }

    #[test]
    fn membership() {
        let w = canonical().algebra();
        assert!(w.is_member(&p("x^3*y + x")));
        assert!(!w.is_member(&p("x")));
        assert!(w.is_member(&p("5")));
        // Not even in C[x, y]:
        assert!(!w.is_member(&p("x^-1")));
    }

    #[test]
    fn member_witness_is_negative_chart_term() {
        let w = canonical().algebra();
        let report = w.member_report(&p("x"));
        assert!(!report.member);
        assert!(report.witness_in_chart);
        let (e, c) = report.witness.unwrap();
        assert_eq!((e.x, e.y), (-1, 0));
        assert_eq!(c, int(1));
    }

    #[test]
    fn express_square_of_generator() {
        let w = canonical().algebra();
        let expr = w.express_in_generators(&p("y^2"), 2).unwrap();
        assert_eq!(expr, parse_texpr("T0^2", 4).unwrap());
    }

    #[test]
    fn express_hand_expansion() {
        let w = canonical().algebra();
        let expr = w.express_in_generators(&p("x^4*y^2 + x^2*y"), 2).unwrap();
        assert_eq!(expr, parse_texpr("T1*T3", 4).unwrap());
    }

    #[test]
    fn express_nonmember_fails() {
        let w = canonical().algebra();
        assert!(!w.is_member(&p("x")));
        for bound in 0..=6 {
            assert!(w.express_in_generators(&p("x"), bound).is_none());
        }
    }

    #[test]
    fn default_bound_policy() {
        // y-degree + total degree.
        assert_eq!(WrightAlgebra::default_express_bound(&p("x^4*y^2 + x^2*y")), 8);
        assert_eq!(WrightAlgebra::default_express_bound(&p("7")), 0);
    }

    #[test]
    fn factor_the_generator_itself() {
        let c = canonical();
        let (m, g) = c.negative_degree_factor(&p("x^3*y + x")).unwrap();
        assert_eq!(m, 1);
        assert_eq!(g, UniPoly::one());
    }

    #[test]
    fn factor_constructed_product() {
        let c = canonical();
        let f = &p("x^3*y + x").pow(2) * &p("x^2*y + 2");
        let (m, g) = c.negative_degree_factor(&f).unwrap();
        assert_eq!(m, 2);
        assert_eq!(g, parse_uni("z + 2").unwrap());
    }

    #[test]
    fn factor_rejects_non_homogeneous() {
        let c = canonical();
        assert_eq!(
            c.negative_degree_factor(&p("x + y")).unwrap_err(),
            FactorError::NotHomogeneousNegative
        );
        assert_eq!(
            c.negative_degree_factor(&p("x^2*y")).unwrap_err(),
            FactorError::NotHomogeneousNegative
        );
        assert_eq!(
            c.negative_degree_factor(&LaurentPoly::zero()).unwrap_err(),
            FactorError::NotHomogeneousNegative
        );
    }

    #[test]
    fn factor_detects_non_member() {
        let c = canonical();
        assert_eq!(
            c.negative_degree_factor(&p("x")).unwrap_err(),
            FactorError::NotInAlgebra
        );
    }

    #[test]
    fn generator_weighted_degrees() {
        let w = canonical_weights();
        let expected = [2i64, 1, 0, -1];
        for (t, d) in canonical().algebra().generators().iter().zip(expected) {
            let comps = t.weighted_components(w);
            assert_eq!(comps.len(), 1);
            assert!(comps.contains_key(&d));
        }
    }

    #[test]
    fn lemma_verification_small_degrees() {
        let report = canonical().verify_no_regular_elements(4);
        assert!(report.none_found());
        assert_eq!(report.per_degree.len(), 4);

        let d1 = canonical().verify_no_regular_elements(1);
        assert!(d1.none_found());
        assert_eq!(d1.per_degree[0].span_dimension, 1); // span {y}
    }

    #[test]
    fn lemma_verification_alpha_independent() {
        let a = canonical().verify_no_regular_elements(3);
        let b = CanonicalIndex3Algebra::new(int(5))
            .unwrap()
            .verify_no_regular_elements(3);
        let verdicts =
            |r: &RegularElementReport| r.per_degree.iter().map(|d| d.regular_found).collect::<Vec<_>>();
        assert_eq!(verdicts(&a), verdicts(&b));
        assert!(b.none_found());
    }

    #[test]
    fn regularize_already_regular() {
        assert_eq!(
            regularizing_transform(&p("x^2 + y^2")).unwrap(),
            LinearMap::identity()
        );
    }

    #[test]
    fn regularize_xy() {
        let map = regularizing_transform(&p("x*y")).unwrap();
        // First match in enumeration order: (a, b, c, d) = (-1, -1, -1, 1),
        // sending x*y to (v + w)(v - w) up to sign.
        let (a, b, c, d) = map.entries();
        assert_eq!(
            (a.clone(), b.clone(), c.clone(), d.clone()),
            (int(-1), int(-1), int(-1), int(1))
        );
        let r = p("x*y").linear_substitute(&map);
        assert!(r.is_regular_in(Var::X).unwrap() && r.is_regular_in(Var::Y).unwrap());
    }

    #[test]
    fn regularize_generator() {
        let map = regularizing_transform(&p("x^3*y + x")).unwrap();
        let r = p("x^3*y + x").linear_substitute(&map);
        assert!(r.is_regular_in(Var::X).unwrap());
        assert!(r.is_regular_in(Var::Y).unwrap());
        assert!(!map.determinant().is_zero());
    }

    #[test]
    fn regularize_rejects_constants() {
        assert_eq!(
            regularizing_transform(&p("3")).unwrap_err(),
            RegularizeError::ZeroOrConstantInput
        );
        assert_eq!(
            regularizing_transform(&LaurentPoly::zero()).unwrap_err(),
            RegularizeError::ZeroOrConstantInput
        );
    }
}
