//! Integer intersection arithmetic on Hirzebruch surfaces and their
//! ample-section complements.
//!
//! The Picard lattice of the surface `F_n` is free on the negative section
//! `C0` and a fiber `F`, with `C0^2 = -n`, `F^2 = 0`, `C0.F = 1`. An ample
//! section of self-intersection `S^2` is the class `C0 + (S^2 + n)/2 * F`
//! and requires `S^2 >= n + 2` with `S^2 + n` even. Restriction to the
//! complement of the section quotients the lattice by the section class,
//! leaving the infinite cyclic group generated by the restricted fiber.

use core::fmt;

/// Errors of the divisor arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SurfaceError {
    /// Classes on different surfaces cannot be combined.
    MismatchedSurface,
    /// Section data violating ampleness or parity.
    InvalidSection,
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::MismatchedSurface => write!(f, "MismatchedSurface"),
            SurfaceError::InvalidSection => write!(f, "InvalidSection"),
        }
    }
}

/// Divisor class `a*C0 + b*F` on the Hirzebruch surface `F_n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct HirzebruchClass {
    pub n: u32,
    pub a: i64,
    pub b: i64,
}

impl HirzebruchClass {
    pub fn new(n: u32, a: i64, b: i64) -> Self {
        HirzebruchClass { n, a, b }
    }

    pub fn zero(n: u32) -> Self {
        Self::new(n, 0, 0)
    }

    /// The negative section `C0`.
    pub fn c0(n: u32) -> Self {
        Self::new(n, 1, 0)
    }

    /// A fiber `F`.
    pub fn fiber(n: u32) -> Self {
        Self::new(n, 0, 1)
    }

    pub fn add(&self, other: &Self) -> Result<Self, SurfaceError> {
        if self.n != other.n {
            return Err(SurfaceError::MismatchedSurface);
        }
        Ok(Self::new(self.n, self.a + other.a, self.b + other.b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SurfaceError> {
        if self.n != other.n {
            return Err(SurfaceError::MismatchedSurface);
        }
        Ok(Self::new(self.n, self.a - other.a, self.b - other.b))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.n, k * self.a, k * self.b)
    }
}

impl fmt::Display for HirzebruchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 0 && self.b == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for (coeff, name) in [(self.a, "C0"), (self.b, "F")] {
            if coeff == 0 {
                continue;
            }
            if first {
                if coeff < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if coeff.abs() == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}*{}", coeff.abs(), name)?;
            }
        }
        Ok(())
    }
}

/// Intersection number of two classes on the same surface:
/// `-n*a1*a2 + a1*b2 + a2*b1`.
pub fn intersect(c1: &HirzebruchClass, c2: &HirzebruchClass) -> Result<i64, SurfaceError> {
    if c1.n != c2.n {
        return Err(SurfaceError::MismatchedSurface);
    }
    Ok(-(c1.n as i64) * c1.a * c2.a + c1.a * c2.b + c2.a * c1.b)
}

/// Canonical class `-2*C0 - (n + 2)*F` of `F_n`.
pub fn canonical_class(n: u32) -> HirzebruchClass {
    HirzebruchClass::new(n, -2, -(n as i64) - 2)
}

/// An ample section of `F_n` recorded by its self-intersection number.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SectionData {
    n: u32,
    s2: i64,
}

impl SectionData {
    pub fn new(n: u32, s2: i64) -> Result<Self, SurfaceError> {
        if s2 < n as i64 + 2 || (s2 + n as i64) % 2 != 0 {
            return Err(SurfaceError::InvalidSection);
        }
        Ok(SectionData { n, s2 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s2(&self) -> i64 {
        self.s2
    }
}

/// The class `C0 + (S^2 + n)/2 * F` of the section.
pub fn section_class(sd: &SectionData) -> HirzebruchClass {
    HirzebruchClass::new(sd.n, 1, (sd.s2 + sd.n as i64) / 2)
}

/// Image of a class in `Pic(F_n \ S) = Z^2 / <S>`, written as a multiple of
/// the restricted fiber class.
pub fn restrict_to_complement(
    sd: &SectionData,
    class: &HirzebruchClass,
) -> Result<i64, SurfaceError> {
    if class.n != sd.n {
        return Err(SurfaceError::MismatchedSurface);
    }
    Ok(class.b - class.a * (sd.s2 + sd.n as i64) / 2)
}

/// Pullback of the canonical class of the affine plane along a finite map;
/// the plane's canonical class is trivial, which gets its own token.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CanonicalPullback {
    /// `K` of the affine plane is the zero class.
    ZeroAffinePlane,
    Class(HirzebruchClass),
}

/// Ramification formula `K = pullback(K) + R` for a finite dominant map;
/// with the zero pullback the canonical class is the ramification divisor.
pub fn ramification_canonical(
    pullback: CanonicalPullback,
    ramification: &HirzebruchClass,
) -> Result<HirzebruchClass, SurfaceError> {
    match pullback {
        CanonicalPullback::ZeroAffinePlane => Ok(*ramification),
        CanonicalPullback::Class(k) => k.add(ramification),
    }
}

/// Outcome of solving the generator condition `(S^2 - 2) * F| = F|` on a
/// Danilov-Gizatullin surface whose Picard group the canonical class
/// generates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DgIndexReport {
    /// The forced self-intersection, `S^2 = 3`.
    pub index: i64,
    /// Number of algebra generators determined by the index, `m + 1 = 4`.
    pub generator_count: i64,
    /// The unique admissible surface: `n = 1` (ampleness and parity leave
    /// no other choice at `S^2 = 3`).
    pub admissible_n: u32,
    /// The sign-flipped solution of `S^2 - 2 = -1`.
    pub rejected_s2: i64,
    /// Surfaces for which the rejected solution was checked against
    /// ampleness (it fails for every one of them).
    pub rejected_for_n_up_to: u32,
}

/// Solve `s2 - 2 = 1` subject to ampleness and record why the sign-flipped
/// branch `s2 - 2 = -1` is impossible: `s2 = 1 < n + 2` for every `n >= 0`.
pub fn dg_index_from_generator_condition() -> DgIndexReport {
    let index = 3i64; // s2 - 2 = 1
    let rejected_s2 = 1i64; // s2 - 2 = -1
    let max_n = 10u32;

    let admissible: alloc::vec::Vec<u32> = (0..=max_n)
        .filter(|&n| SectionData::new(n, index).is_ok())
        .collect();
    debug_assert_eq!(admissible, alloc::vec![1]);
    for n in 0..=max_n {
        debug_assert!(SectionData::new(n, rejected_s2).is_err());
    }

    DgIndexReport {
        index,
        generator_count: index + 1,
        admissible_n: admissible[0],
        rejected_s2,
        rejected_for_n_up_to: max_n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_table() {
        let c0 = HirzebruchClass::c0(2);
        let f = HirzebruchClass::fiber(2);
        assert_eq!(intersect(&c0, &c0).unwrap(), -2);
        assert_eq!(intersect(&f, &f).unwrap(), 0);
        assert_eq!(intersect(&c0, &f).unwrap(), 1);
    }

    #[test]
    fn section_square_example() {
        // n = 1, S = C0 + 2F: S^2 = -1 + 2 + 2 = 3.
        let s = HirzebruchClass::new(1, 1, 2);
        assert_eq!(intersect(&s, &s).unwrap(), 3);
        let sd = SectionData::new(1, 3).unwrap();
        assert_eq!(section_class(&sd), s);
    }

    #[test]
    fn mismatched_surfaces_rejected() {
        let a = HirzebruchClass::c0(1);
        let b = HirzebruchClass::c0(2);
        assert_eq!(intersect(&a, &b).unwrap_err(), SurfaceError::MismatchedSurface);
        assert_eq!(a.add(&b).unwrap_err(), SurfaceError::MismatchedSurface);
    }

    #[test]
    fn canonical_class_values() {
        assert_eq!(canonical_class(0), HirzebruchClass::new(0, -2, -2));
        assert_eq!(canonical_class(1), HirzebruchClass::new(1, -2, -3));
        for n in 0..=10 {
            let k = canonical_class(n);
            let f = HirzebruchClass::fiber(n);
            assert_eq!(intersect(&k, &f).unwrap(), -2);
        }
    }

    #[test]
    fn section_class_examples() {
        let sd = SectionData::new(0, 2).unwrap();
        let s = section_class(&sd);
        assert_eq!(s, HirzebruchClass::new(0, 1, 1));
        assert_eq!(intersect(&s, &s).unwrap(), 2);
        assert_eq!(SectionData::new(1, 2).unwrap_err(), SurfaceError::InvalidSection);
    }

    #[test]
    fn canonical_rewriting_in_terms_of_section() {
        // K = -2S + (S^2 - 2)F for every valid section.
        for n in 0..=6u32 {
            for s2 in 0..=20i64 {
                let Ok(sd) = SectionData::new(n, s2) else { continue };
                let s = section_class(&sd);
                let rewritten = s
                    .scale(-2)
                    .add(&HirzebruchClass::fiber(n).scale(sd.s2() - 2))
                    .unwrap();
                assert_eq!(rewritten, canonical_class(n));
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let sd = SectionData::new(1, 3).unwrap();
        assert_eq!(
            restrict_to_complement(&sd, &canonical_class(1)).unwrap(),
            1
        );
        assert_eq!(restrict_to_complement(&sd, &section_class(&sd)).unwrap(), 0);
        assert_eq!(
            restrict_to_complement(&sd, &HirzebruchClass::fiber(1)).unwrap(),
            1
        );
    }

    #[test]
    fn restriction_kernel_is_generated_by_section() {
        let sd = SectionData::new(2, 6).unwrap();
        let s = section_class(&sd);
        for a in -5..=5i64 {
            for b in -5..=5i64 {
                let d = HirzebruchClass::new(2, a, b);
                let restricted = restrict_to_complement(&sd, &d).unwrap();
                let in_kernel = restricted == 0;
                let multiple_of_s = d.a * s.b == d.b * s.a && (s.a == 0 || d.a % s.a == 0);
                assert_eq!(in_kernel, multiple_of_s, "class {:?}", d);
            }
        }
    }

    #[test]
    fn dg_index_report() {
        let report = dg_index_from_generator_condition();
        assert_eq!(report.index, 3);
        assert_eq!(report.generator_count, 4);
        assert_eq!(report.admissible_n, 1);
        assert_eq!(report.rejected_s2, 1);
        for n in 0..=report.rejected_for_n_up_to {
            assert!(SectionData::new(n, report.rejected_s2).is_err());
        }
    }

    #[test]
    fn ramification_formula() {
        let r = HirzebruchClass::new(1, 0, 1);
        assert_eq!(
            ramification_canonical(CanonicalPullback::ZeroAffinePlane, &r).unwrap(),
            r
        );
        let k = canonical_class(1);
        assert_eq!(
            ramification_canonical(CanonicalPullback::Class(k), &HirzebruchClass::zero(1))
                .unwrap(),
            k
        );
        // Additivity: (K', R) - (0, R) = K'.
        let with_k = ramification_canonical(CanonicalPullback::Class(k), &r).unwrap();
        let without = ramification_canonical(CanonicalPullback::ZeroAffinePlane, &r).unwrap();
        assert_eq!(with_k.sub(&without).unwrap(), k);
    }

    #[test]
    fn class_display() {
        assert_eq!(alloc::format!("{}", canonical_class(1)), "-2*C0 - 3*F");
        assert_eq!(alloc::format!("{}", HirzebruchClass::new(1, 1, 2)), "C0 + 2*F");
        assert_eq!(alloc::format!("{}", HirzebruchClass::zero(3)), "0");
    }
}
