//! Bounded exhaustive search for constant-Jacobian pairs in a Wright
//! algebra.
//!
//! The search enumerates ordered pairs `(p, q)` of generator expressions of
//! bounded total degree with coefficients from a finite set and returns
//! every pair whose Jacobian determinant is a nonzero constant. Expressions
//! are indexed by their coefficient vectors over the canonical monomial
//! list (the constant monomial is the least significant digit); the
//! reported list is exactly what the literal double loop over vectors would
//! produce, in the same order. For each left entry `p`, however, the right
//! entries are found by solving the exact linear conditions "every
//! nonconstant coefficient of `J(p, q)` vanishes" and intersecting the
//! solution space with the coefficient lattice, which is what makes
//! desk-scale spaces tractable. The hot path runs in scaled 128-bit
//! integers with checked arithmetic and falls back to big rationals
//! whenever anything does not fit, so results are exact either way.
//!
//! A nonempty result would contradict the expectation that no such pair
//! exists; callers are expected to surface any candidate prominently.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::QMatrix;
use crate::multipoly::{tmonomials_up_to, MultiPoly, TMono};
use crate::poly::{jacobian_determinant, Exp, LaurentPoly, TotalDegree, Var};
use crate::rational::Rational;
use crate::wright::{CanonicalIndex3Algebra, WrightAlgebra};

/// Errors of the search layer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchError {
    /// The polynomial is not a member of the algebra.
    NotAMember,
    /// The degree bound must be at least 1.
    BoundTooSmall,
    /// The coefficient set must be nonempty.
    EmptyCoefficientSet,
    /// The coefficient set must contain 0.
    MissingZeroCoefficient,
    /// Duplicate coefficients would break the vector indexing.
    DuplicateCoefficient,
    /// The coefficient-vector space does not fit the index type.
    SpaceTooLarge,
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::NotAMember => write!(f, "NotAMember"),
            SearchError::BoundTooSmall => write!(f, "t_degree_bound must be >= 1"),
            SearchError::EmptyCoefficientSet => write!(f, "coefficient set must be nonempty"),
            SearchError::MissingZeroCoefficient => write!(f, "coefficient set must contain 0"),
            SearchError::DuplicateCoefficient => write!(f, "coefficient set has duplicates"),
            SearchError::SpaceTooLarge => write!(f, "search space too large to index"),
        }
    }
}

/// Jacobian of a pair plus the constant-nonzero verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtaleCheck {
    pub jacobian: LaurentPoly,
    pub constant_nonzero: bool,
}

/// Compute the Jacobian determinant and whether it is a nonzero constant.
pub fn etale_pair_check(p: &LaurentPoly, q: &LaurentPoly) -> EtaleCheck {
    let jacobian = jacobian_determinant(p, q);
    let constant_nonzero = !jacobian.is_zero() && jacobian.is_constant();
    EtaleCheck {
        jacobian,
        constant_nonzero,
    }
}

/// Screen a member of the canonical index-3 algebra against the condition
/// every member satisfies: it must not be regular in both variables.
/// Constants pass vacuously. Errs when `p` is not a member at all.
pub fn necessary_condition_filter(
    algebra: &CanonicalIndex3Algebra,
    p: &LaurentPoly,
) -> Result<bool, SearchError> {
    if !algebra.algebra().is_member(p) {
        return Err(SearchError::NotAMember);
    }
    match p.total_degree() {
        TotalDegree::Finite(n) if n >= 1 => {
            let rx = p.is_regular_in(Var::X).unwrap();
            let ry = p.is_regular_in(Var::Y).unwrap();
            Ok(!(rx && ry))
        }
        _ => Ok(true),
    }
}

/// The finite pair space to be searched.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchSpace {
    algebra: WrightAlgebra,
    t_degree_bound: u32,
    coefficient_set: Vec<Rational>,
}

impl SearchSpace {
    pub fn new(
        algebra: WrightAlgebra,
        t_degree_bound: u32,
        coefficient_set: Vec<Rational>,
    ) -> Result<Self, SearchError> {
        if t_degree_bound < 1 {
            return Err(SearchError::BoundTooSmall);
        }
        if coefficient_set.is_empty() {
            return Err(SearchError::EmptyCoefficientSet);
        }
        if !coefficient_set.iter().any(Zero::is_zero) {
            return Err(SearchError::MissingZeroCoefficient);
        }
        for (i, c) in coefficient_set.iter().enumerate() {
            if coefficient_set[..i].contains(c) {
                return Err(SearchError::DuplicateCoefficient);
            }
        }
        Ok(SearchSpace {
            algebra,
            t_degree_bound,
            coefficient_set,
        })
    }

    pub fn algebra(&self) -> &WrightAlgebra {
        &self.algebra
    }

    pub fn t_degree_bound(&self) -> u32 {
        self.t_degree_bound
    }

    pub fn coefficient_set(&self) -> &[Rational] {
        &self.coefficient_set
    }
}

/// A pair whose Jacobian determinant is a nonzero constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtaleCandidate {
    pub p_expr: MultiPoly,
    pub q_expr: MultiPoly,
    pub jacobian: LaurentPoly,
}

impl EtaleCandidate {
    /// Build a candidate, re-verifying the defining property against the
    /// given generator values; `None` when the pair is not a candidate.
    pub fn check(
        p_expr: MultiPoly,
        q_expr: MultiPoly,
        generators: &[LaurentPoly],
    ) -> Option<Self> {
        let p = p_expr.evaluate(generators);
        let q = q_expr.evaluate(generators);
        let check = etale_pair_check(&p, &q);
        check.constant_nonzero.then_some(EtaleCandidate {
            p_expr,
            q_expr,
            jacobian: check.jacobian,
        })
    }
}

/// Counters of one search run. All fields are per-index events, so totals
/// are identical however the index range is partitioned.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SearchSummary {
    /// Left-expression indices covered.
    pub indices: u64,
    /// Left expressions skipped because the expression itself is constant.
    pub skipped_constant_expr: u64,
    /// Left expressions skipped because their value in `C[x, y]` collapsed
    /// to a constant (the generators satisfy relations).
    pub skipped_constant_value: u64,
    /// Left expressions screened by the regularity filter.
    pub filter_checked: u64,
    /// Screen failures; a nonzero count would falsify the expectation that
    /// no member is regular in both variables.
    pub filter_failures: u64,
    /// Left expressions whose linear solve left the 128-bit fast path.
    pub exact_fallbacks: u64,
    /// Candidate pairs emitted.
    pub candidates: u64,
}

impl SearchSummary {
    pub fn merge(&mut self, other: &SearchSummary) {
        self.indices += other.indices;
        self.skipped_constant_expr += other.skipped_constant_expr;
        self.skipped_constant_value += other.skipped_constant_value;
        self.filter_checked += other.filter_checked;
        self.filter_failures += other.filter_failures;
        self.exact_fallbacks += other.exact_fallbacks;
        self.candidates += other.candidates;
    }
}

impl fmt::Display for SearchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "indices={} constant_expr_skipped={} constant_value_skipped={} \
             filter_checked={} filter_failures={} exact_fallbacks={} candidates={}",
            self.indices,
            self.skipped_constant_expr,
            self.skipped_constant_value,
            self.filter_checked,
            self.filter_failures,
            self.exact_fallbacks,
            self.candidates
        )
    }
}

/// Split `[start, end)` into at most `parts` contiguous chunks.
pub fn split_range(start: u128, end: u128, parts: u32) -> Vec<(u128, u128)> {
    let parts = parts.max(1) as u128;
    let len = end - start;
    let base = len / parts;
    let extra = len % parts;
    let mut out = Vec::new();
    let mut cur = start;
    for i in 0..parts {
        let size = base + u128::from(i < extra);
        if size == 0 {
            break;
        }
        out.push((cur, cur + size));
        cur += size;
    }
    out
}

#[derive(Clone, Debug)]
enum OutcomeKind {
    ConstantValue,
    NoCandidates,
    Candidates(Vec<Vec<usize>>),
}

#[derive(Clone, Debug)]
struct SolveOutcome {
    kind: OutcomeKind,
    used_exact: bool,
    filter_pass: Option<bool>,
}

/// Precomputed tables for one search space.
pub struct EtaleSearch {
    space: SearchSpace,
    tmons: Vec<TMono>,
    nvars: usize,
    csize: usize,
    n_vectors: u128,
    generators: Vec<LaurentPoly>,
    /// Jacobians of evaluated monomial pairs, full antisymmetric table.
    jac: Vec<LaurentPoly>,
    /// Nonconstant monomials appearing in any pair Jacobian, sorted.
    rows: Vec<Exp>,
    /// Whether every scaled quantity fits in `i128`.
    int_ok: bool,
    /// Scaled integer tables: sparse nonconstant rows and the constant
    /// coefficient of each pair Jacobian, and the scaled coefficient set.
    jac_rows_sparse: Vec<Vec<(u32, i128)>>,
    jac_const_int: Vec<i128>,
    cset_int: Vec<i128>,
    /// Scaled integer evaluations of the monomials (for the regularity
    /// screen on left expressions).
    mhat_int: Vec<Vec<(Exp, i128)>>,
    /// Whether the algebra is the canonical index-3 one, enabling the
    /// regularity screen.
    canonical: Option<CanonicalIndex3Algebra>,
}

impl EtaleSearch {
    pub fn new(space: SearchSpace) -> Result<Self, SearchError> {
        let nvars = space.algebra().num_generators();
        let tmons = tmonomials_up_to(nvars, space.t_degree_bound());
        let k = tmons.len();
        let csize = space.coefficient_set().len();
        let n_vectors = (csize as u128)
            .checked_pow(k as u32)
            .ok_or(SearchError::SpaceTooLarge)?;

        let generators = space.algebra().generators();
        let mhat: Vec<LaurentPoly> = tmons
            .iter()
            .map(|m| {
                MultiPoly::monomial(nvars, m.clone(), Rational::one()).evaluate(&generators)
            })
            .collect();

        let mut jac = alloc::vec![LaurentPoly::zero(); k * k];
        for i in 0..k {
            for j in (i + 1)..k {
                let d = jacobian_determinant(&mhat[i], &mhat[j]);
                jac[j * k + i] = &LaurentPoly::zero() - &d;
                jac[i * k + j] = d;
            }
        }

        let mut row_set: alloc::collections::BTreeSet<Exp> = alloc::collections::BTreeSet::new();
        for d in &jac {
            row_set.extend(d.terms().filter(|(e, _)| e.x != 0 || e.y != 0).map(|(e, _)| *e));
        }
        let rows: Vec<Exp> = row_set.into_iter().collect();

        // Common denominator of everything the integer path touches.
        let mut denom: BigInt = BigInt::one();
        for d in &jac {
            for (_, c) in d.terms() {
                denom = denom.lcm(c.denom());
            }
        }
        for c in space.coefficient_set() {
            denom = denom.lcm(c.denom());
        }
        for m in &mhat {
            for (_, c) in m.terms() {
                denom = denom.lcm(c.denom());
            }
        }
        let scale = Rational::from_integer(denom);
        let to_int = |r: &Rational| -> Option<i128> {
            let s = r * &scale;
            debug_assert!(s.is_integer());
            s.to_integer().to_i128()
        };

        let mut int_ok = true;
        let mut jac_rows_sparse = alloc::vec![Vec::new(); k * k];
        let mut jac_const_int = alloc::vec![0i128; k * k];
        for i in 0..k {
            for j in 0..k {
                let d = &jac[i * k + j];
                for (e, c) in d.terms() {
                    match to_int(c) {
                        Some(v) => {
                            if e.x == 0 && e.y == 0 {
                                jac_const_int[i * k + j] = v;
                            } else {
                                let r = rows.binary_search(e).unwrap();
                                jac_rows_sparse[i * k + j].push((r as u32, v));
                            }
                        }
                        None => int_ok = false,
                    }
                }
            }
        }
        let mut cset_int = Vec::with_capacity(csize);
        for c in space.coefficient_set() {
            match to_int(c) {
                Some(v) => cset_int.push(v),
                None => int_ok = false,
            }
        }
        let mut mhat_int = Vec::with_capacity(k);
        for m in &mhat {
            let mut terms = Vec::with_capacity(m.num_terms());
            for (e, c) in m.terms() {
                match to_int(c) {
                    Some(v) => terms.push((*e, v)),
                    None => int_ok = false,
                }
            }
            mhat_int.push(terms);
        }

        let alg = space.algebra();
        let canonical = if alg.m() == 3 && alg.alphas()[0].is_zero() {
            CanonicalIndex3Algebra::new(alg.alphas()[1].clone()).ok()
        } else {
            None
        };

        Ok(EtaleSearch {
            space,
            tmons,
            nvars,
            csize,
            n_vectors,
            generators,
            jac,
            rows,
            int_ok,
            jac_rows_sparse,
            jac_const_int,
            cset_int,
            mhat_int,
            canonical,
        })
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    /// Number of coefficient vectors (and of left-expression indices).
    pub fn vector_count(&self) -> u128 {
        self.n_vectors
    }

    pub fn monomials(&self) -> &[TMono] {
        &self.tmons
    }

    #[doc(hidden)]
    pub fn debug_row_count(&self) -> usize {
        self.rows.len()
    }

    fn digits_of(&self, idx: u128) -> Vec<usize> {
        let mut digits = alloc::vec![0usize; self.tmons.len()];
        let mut rest = idx;
        for d in digits.iter_mut() {
            *d = (rest % self.csize as u128) as usize;
            rest /= self.csize as u128;
        }
        digits
    }

    fn index_of(&self, digits: &[usize]) -> u128 {
        let mut idx = 0u128;
        for &d in digits.iter().rev() {
            idx = idx * self.csize as u128 + d as u128;
        }
        idx
    }

    fn expr_of(&self, digits: &[usize]) -> MultiPoly {
        let mut expr = MultiPoly::zero(self.nvars);
        for (j, &d) in digits.iter().enumerate() {
            let c = &self.space.coefficient_set()[d];
            if !c.is_zero() {
                expr = expr.add(&MultiPoly::monomial(
                    self.nvars,
                    self.tmons[j].clone(),
                    c.clone(),
                ));
            }
        }
        expr
    }

    /// Run the search over the index range `[start, end)`, feeding
    /// candidates to `sink` in enumeration order.
    pub fn run_range(
        &self,
        start: u128,
        end: u128,
        sink: &mut dyn FnMut(EtaleCandidate),
    ) -> SearchSummary {
        self.run_range_impl(start, end, false, sink)
    }

    /// As [`run_range`](Self::run_range), forcing the big-rational path;
    /// used to cross-check the integer fast path.
    #[doc(hidden)]
    pub fn run_range_reference(
        &self,
        start: u128,
        end: u128,
        sink: &mut dyn FnMut(EtaleCandidate),
    ) -> SearchSummary {
        self.run_range_impl(start, end, true, sink)
    }

    fn run_range_impl(
        &self,
        start: u128,
        end: u128,
        force_exact: bool,
        sink: &mut dyn FnMut(EtaleCandidate),
    ) -> SearchSummary {
        assert!(start <= end && end <= self.n_vectors);
        let mut summary = SearchSummary::default();
        let mut digits = self.digits_of(start);
        let mut cache: Option<(u128, SolveOutcome)> = None;
        let mut idx = start;
        while idx < end {
            summary.indices += 1;
            let constant_expr = digits[1..]
                .iter()
                .all(|&d| self.space.coefficient_set()[d].is_zero());
            if constant_expr {
                summary.skipped_constant_expr += 1;
            } else {
                let key = idx / self.csize as u128;
                let outcome = match &cache {
                    Some((k, o)) if *k == key => o.clone(),
                    _ => {
                        let o = self.solve_left(&digits, force_exact);
                        cache = Some((key, o.clone()));
                        o
                    }
                };
                match &outcome.kind {
                    OutcomeKind::ConstantValue => summary.skipped_constant_value += 1,
                    kind => {
                        if let Some(pass) = outcome.filter_pass {
                            summary.filter_checked += 1;
                            if !pass {
                                summary.filter_failures += 1;
                            }
                        }
                        if outcome.used_exact {
                            summary.exact_fallbacks += 1;
                        }
                        if let OutcomeKind::Candidates(qs) = kind {
                            let p_expr = self.expr_of(&digits);
                            for q_digits in qs {
                                let q_expr = self.expr_of(q_digits);
                                let candidate = EtaleCandidate::check(
                                    p_expr.clone(),
                                    q_expr,
                                    &self.generators,
                                )
                                .expect("solver and exact re-verification disagree");
                                summary.candidates += 1;
                                sink(candidate);
                            }
                        }
                    }
                }
            }
            idx += 1;
            if idx < end {
                // Base-csize increment, least significant digit first.
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < self.csize {
                        break;
                    }
                    *d = 0;
                }
            }
        }
        summary
    }

    fn solve_left(&self, digits: &[usize], force_exact: bool) -> SolveOutcome {
        // The regularity screen and the constant-value shortcut only look
        // at the nonconstant monomial slots; the constant slot never feeds
        // the Jacobian.
        let mut value_nc: BTreeMap<Exp, i128> = BTreeMap::new();
        let mut int_value_ok = self.int_ok;
        if int_value_ok {
            for (j, &d) in digits.iter().enumerate().skip(1) {
                let a = self.cset_int[d];
                if a == 0 {
                    continue;
                }
                for (e, v) in &self.mhat_int[j] {
                    match a.checked_mul(*v) {
                        Some(t) => {
                            let entry = value_nc.entry(*e).or_insert(0);
                            *entry += t;
                            if *entry == 0 {
                                value_nc.remove(e);
                            }
                        }
                        None => {
                            int_value_ok = false;
                            break;
                        }
                    }
                }
                if !int_value_ok {
                    break;
                }
            }
        }
        let (is_constant_value, filter_pass) = if int_value_ok {
            let nonconst_support: Vec<Exp> = value_nc
                .keys()
                .copied()
                .filter(|e| e.x != 0 || e.y != 0)
                .collect();
            if nonconst_support.is_empty() {
                (true, None)
            } else {
                let pass = self.canonical.as_ref().map(|_| {
                    let n = nonconst_support
                        .iter()
                        .map(Exp::total_degree)
                        .max()
                        .unwrap();
                    let rx = value_nc.contains_key(&Exp { x: n, y: 0 });
                    let ry = value_nc.contains_key(&Exp { x: 0, y: n });
                    !(rx && ry)
                });
                (false, pass)
            }
        } else {
            // Exact screen via the public predicates.
            let value = self.expr_of_nonconstant(digits).evaluate(&self.generators);
            if value.is_constant() {
                (true, None)
            } else {
                let pass = self
                    .canonical
                    .as_ref()
                    .map(|c| necessary_condition_filter(c, &value).unwrap());
                (false, pass)
            }
        };
        if is_constant_value {
            return SolveOutcome {
                kind: OutcomeKind::ConstantValue,
                used_exact: false,
                filter_pass: None,
            };
        }

        if self.int_ok && !force_exact {
            // Machine-integer ladder: i64 carries almost every instance,
            // i128 the rest; anything that still overflows goes exact.
            if let Some(kind) = self
                .solve_int::<i64>(digits)
                .or_else(|| self.solve_int::<i128>(digits))
            {
                return SolveOutcome {
                    kind,
                    used_exact: false,
                    filter_pass,
                };
            }
        }
        SolveOutcome {
            kind: self.solve_exact(digits),
            used_exact: true,
            filter_pass,
        }
    }

    fn expr_of_nonconstant(&self, digits: &[usize]) -> MultiPoly {
        let mut nc = digits.to_vec();
        nc[0] = self
            .space
            .coefficient_set()
            .iter()
            .position(Zero::is_zero)
            .unwrap();
        self.expr_of(&nc)
    }

    /// Machine-integer fast path; `None` on any overflow or inexact
    /// division, in which case the caller escalates.
    fn solve_int<T: MachineInt>(&self, digits: &[usize]) -> Option<OutcomeKind> {
        let k = self.tmons.len();
        let nrows = self.rows.len();
        let mut a = alloc::vec![T::ZERO; nrows * k];
        let mut gamma = alloc::vec![T::ZERO; k];
        // Slot 0 is the constant monomial, whose pair Jacobians all vanish.
        for (i, &d) in digits.iter().enumerate().skip(1) {
            let ai = T::from_i128(self.cset_int[d])?;
            if ai.is_zero() {
                continue;
            }
            for j in 0..k {
                for &(r, v) in &self.jac_rows_sparse[i * k + j] {
                    let cell = &mut a[r as usize * k + j];
                    *cell = cell.cadd(ai.cmul(T::from_i128(v)?)?)?;
                }
                let c = self.jac_const_int[i * k + j];
                if c != 0 {
                    gamma[j] = gamma[j].cadd(ai.cmul(T::from_i128(c)?)?)?;
                }
            }
        }

        let (pivots, delta) = ffgj(&mut a, nrows, k)?;
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();

        // gamma restricted to the kernel; all zero means no q can give the
        // Jacobian a nonzero constant term.
        let mut gamma_live = false;
        for &f in &free_cols {
            let mut w = gamma[f].cmul(delta)?;
            for &(row, col) in &pivots {
                w = w.csub(gamma[col].cmul(a[row * k + f])?)?;
            }
            if !w.is_zero() {
                gamma_live = true;
                break;
            }
        }
        if !gamma_live {
            return Some(OutcomeKind::NoCandidates);
        }

        // Enumerate lattice points of the kernel with coordinates in the
        // coefficient set.
        let cset: Vec<T> = self
            .cset_int
            .iter()
            .map(|&c| T::from_i128(c))
            .collect::<Option<Vec<_>>>()?;
        let scaled_targets: Vec<T> = cset
            .iter()
            .map(|&c| c.cmul(delta))
            .collect::<Option<Vec<_>>>()?;
        let mut solutions: Vec<Vec<usize>> = Vec::new();
        let zero_digit = self.cset_int.iter().position(|&c| c == 0).unwrap();
        let mut assignment = alloc::vec![0usize; free_cols.len()];
        loop {
            'check: {
                let mut q_digits = alloc::vec![zero_digit; k];
                let mut q_vals = alloc::vec![T::ZERO; k];
                for (fi, &f) in free_cols.iter().enumerate() {
                    q_digits[f] = assignment[fi];
                    q_vals[f] = cset[assignment[fi]];
                }
                for &(row, col) in &pivots {
                    let mut num = T::ZERO;
                    for &f in &free_cols {
                        let m = a[row * k + f];
                        if !m.is_zero() && !q_vals[f].is_zero() {
                            num = num.csub(m.cmul(q_vals[f])?)?;
                        }
                    }
                    let Some(digit) = scaled_targets.iter().position(|&t| t == num) else {
                        break 'check;
                    };
                    q_digits[col] = digit;
                    q_vals[col] = cset[digit];
                }
                // q must be a nonconstant expression with a live constant
                // Jacobian coefficient.
                if !q_vals[1..].iter().any(|&v| !v.is_zero()) {
                    break 'check;
                }
                let mut dot = T::ZERO;
                for j in 0..k {
                    if !gamma[j].is_zero() && !q_vals[j].is_zero() {
                        dot = dot.cadd(gamma[j].cmul(q_vals[j])?)?;
                    }
                }
                if dot.is_zero() {
                    break 'check;
                }
                solutions.push(q_digits);
            }
            // Next assignment.
            let mut done = true;
            for slot in assignment.iter_mut() {
                *slot += 1;
                if *slot < self.csize {
                    done = false;
                    break;
                }
                *slot = 0;
            }
            if done {
                break;
            }
        }
        solutions.sort_by_key(|d| self.index_of(d));
        if solutions.is_empty() {
            Some(OutcomeKind::NoCandidates)
        } else {
            Some(OutcomeKind::Candidates(solutions))
        }
    }

    /// Reference big-rational path, always exact.
    fn solve_exact(&self, digits: &[usize]) -> OutcomeKind {
        let k = self.tmons.len();
        let nrows = self.rows.len();
        let avals: Vec<Rational> = digits
            .iter()
            .map(|&d| self.space.coefficient_set()[d].clone())
            .collect();
        let mut a = QMatrix::zeros(nrows, k);
        let mut gamma = alloc::vec![Rational::zero(); k];
        for (i, ai) in avals.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..k {
                let d = &self.jac[i * k + j];
                for (e, c) in d.terms() {
                    if e.x == 0 && e.y == 0 {
                        gamma[j] += ai * c;
                    } else {
                        let r = self.rows.binary_search(e).unwrap();
                        let v = a.at(r, j) + ai * c;
                        a.set(r, j, v);
                    }
                }
            }
        }
        let pivots = a.row_reduce();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();

        let mut gamma_live = false;
        for &f in &free_cols {
            let mut w = gamma[f].clone();
            for &(row, col) in &pivots {
                w -= &gamma[col] * a.at(row, f);
            }
            if !w.is_zero() {
                gamma_live = true;
                break;
            }
        }
        if !gamma_live {
            return OutcomeKind::NoCandidates;
        }

        let cset = self.space.coefficient_set();
        let zero_digit = cset.iter().position(|c| c.is_zero()).unwrap();
        let mut solutions: Vec<Vec<usize>> = Vec::new();
        let mut assignment = alloc::vec![0usize; free_cols.len()];
        loop {
            'check: {
                let mut q_digits = alloc::vec![zero_digit; k];
                let mut q_vals = alloc::vec![Rational::zero(); k];
                for (fi, &f) in free_cols.iter().enumerate() {
                    q_digits[f] = assignment[fi];
                    q_vals[f] = cset[assignment[fi]].clone();
                }
                for &(row, col) in &pivots {
                    let mut val = Rational::zero();
                    for &f in &free_cols {
                        if !q_vals[f].is_zero() {
                            val -= a.at(row, f) * &q_vals[f];
                        }
                    }
                    let Some(digit) = cset.iter().position(|c| *c == val) else {
                        break 'check;
                    };
                    q_digits[col] = digit;
                    q_vals[col] = val;
                }
                if !q_vals[1..].iter().any(|v| !v.is_zero()) {
                    break 'check;
                }
                let mut dot = Rational::zero();
                for j in 0..k {
                    if !gamma[j].is_zero() && !q_vals[j].is_zero() {
                        dot += &gamma[j] * &q_vals[j];
                    }
                }
                if dot.is_zero() {
                    break 'check;
                }
                solutions.push(q_digits);
            }
            let mut done = true;
            for slot in assignment.iter_mut() {
                *slot += 1;
                if *slot < self.csize {
                    done = false;
                    break;
                }
                *slot = 0;
            }
            if done {
                break;
            }
        }
        solutions.sort_by_key(|d| self.index_of(d));
        if solutions.is_empty() {
            OutcomeKind::NoCandidates
        } else {
            OutcomeKind::Candidates(solutions)
        }
    }
}

/// Convenience wrapper: run the whole space and collect the candidates.
pub fn search_etale_pairs(space: &SearchSpace) -> Result<Vec<EtaleCandidate>, SearchError> {
    let search = EtaleSearch::new(space.clone())?;
    let mut out = Vec::new();
    search.run_range(0, search.vector_count(), &mut |c| out.push(c));
    Ok(out)
}

/// Checked machine-integer arithmetic for the solver ladder.
trait MachineInt: Copy + PartialEq {
    const ZERO: Self;
    const ONE: Self;
    fn from_i128(v: i128) -> Option<Self>;
    fn is_zero(self) -> bool;
    fn cadd(self, o: Self) -> Option<Self>;
    fn csub(self, o: Self) -> Option<Self>;
    fn cmul(self, o: Self) -> Option<Self>;
    /// `self / d` when the division is exact, else `None`.
    fn exact_div(self, d: Self) -> Option<Self>;
}

macro_rules! impl_machine_int {
    ($t:ty) => {
        impl MachineInt for $t {
            const ZERO: Self = 0;
            const ONE: Self = 1;
            fn from_i128(v: i128) -> Option<Self> {
                <$t>::try_from(v).ok()
            }
            fn is_zero(self) -> bool {
                self == 0
            }
            fn cadd(self, o: Self) -> Option<Self> {
                self.checked_add(o)
            }
            fn csub(self, o: Self) -> Option<Self> {
                self.checked_sub(o)
            }
            fn cmul(self, o: Self) -> Option<Self> {
                self.checked_mul(o)
            }
            fn exact_div(self, d: Self) -> Option<Self> {
                (self % d == 0).then(|| self / d)
            }
        }
    };
}

impl_machine_int!(i64);
impl_machine_int!(i128);

/// One-pass fraction-free Gauss-Jordan elimination. Returns the pivot list
/// and the common final pivot value `delta`; `None` on overflow or (never
/// expected) inexact division.
///
/// Already-pivoted columns are skipped in the row updates: their entries
/// are structurally zero in every other row, and the pivot entries
/// themselves would only be rescaled step by step to end at `delta`, so
/// readers must take pivot entries as `delta` rather than from the array.
/// Entries in free columns are fully reduced, which is all the kernel
/// construction needs.
fn ffgj<T: MachineInt>(
    a: &mut [T],
    rows: usize,
    cols: usize,
) -> Option<(Vec<(usize, usize)>, T)> {
    let mut prev = T::ONE;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut live_cols: Vec<usize> = (0..cols).collect();
    let mut next_row = 0usize;
    for col in 0..cols {
        let Some(pr) = (next_row..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if pr != next_row {
            for c in 0..cols {
                a.swap(pr * cols + c, next_row * cols + c);
            }
        }
        let piv = a[next_row * cols + col];
        for r in 0..rows {
            if r == next_row {
                continue;
            }
            let factor = a[r * cols + col];
            if factor.is_zero() {
                for &c in &live_cols {
                    let v = a[r * cols + c];
                    if !v.is_zero() {
                        a[r * cols + c] = v.cmul(piv)?.exact_div(prev)?;
                    }
                }
            } else {
                for &c in &live_cols {
                    let t1 = a[r * cols + c].cmul(piv)?;
                    let t2 = factor.cmul(a[next_row * cols + c])?;
                    a[r * cols + c] = t1.csub(t2)?.exact_div(prev)?;
                }
            }
        }
        pivots.push((next_row, col));
        live_cols.retain(|&c| c != col);
        prev = piv;
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    Some((pivots, prev))
}
