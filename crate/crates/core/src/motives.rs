//! A small ring of motivic classes: integer combinations of products of
//!
//! * `L` — the Lefschetz/Tate class (weight 2),
//! * `S[N,k]` — the class attached to the new part of `S_k(Gamma_0(N))`,
//!   of rank `2 * dim_new(N,k)` and weight `k - 1` (the zero class when
//!   the new part vanishes),
//! * `Alt2[N,k]` — a formal generator for the exterior square of `S[N,k]`,
//!   needed once several eigensystems share a level and weight.
//!
//! The ring carries the lambda-operations used downstream: the second Adams
//! operation [`MotiveClass::psi2`], and the exterior/symmetric squares
//! `lambda^2 x = (x^2 - psi_2 x)/2`, `sym^2 x = (x^2 + psi_2 x)/2` (exact
//! halving, checked).  On generators
//!
//! ```text
//! psi_2 L      = L^2
//! psi_2 S[N,k] = S[N,k]^2 - 2 L^(k-1)      if dim_new = 1
//! psi_2 S[N,k] = S[N,k]^2 - 2 Alt2[N,k]    if dim_new >= 2
//! ```
//!
//! (the first case is the determinant of a two-dimensional piece; `psi_2`
//! of `Alt2[N,k]` itself is not defined here and reports an error).
//!
//! [`GradedClass`] tracks an even/odd splitting through tensor products and
//! the two signed symmetric squares ([`GradedClass::super_invariants`]),
//! which is what compactly supported cohomology of a product quotient
//! needs; taking [`GradedClass::euler`] collapses back to a single class.

use crate::dimforms::dim_new;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use thiserror::Error;

/// A sign, `+` or `-`; used for swap eigenvalues and super-symmetrization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("unsupported cusp-symbol level {0} (supported: 1, 2, 4)")]
    UnsupportedLevel(u32),
    #[error("psi_2 of a formal exterior-square generator is not defined")]
    AdamsOnAltSquare,
    #[error("class has an odd coefficient where exact halving is required")]
    OddCoefficient,
}

/// `(level, weight)` of a cusp-form symbol.
pub type SymbolKey = (u32, u32);

/// A monomial `L^t * prod S[N,k]^p * prod Alt2[N,k]^q`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MotiveMonomial {
    tate: u32,
    cusp: BTreeMap<SymbolKey, u32>,
    alt2: BTreeMap<SymbolKey, u32>,
}

impl MotiveMonomial {
    fn unit() -> Self {
        Self::default()
    }

    fn tate_power(t: u32) -> Self {
        MotiveMonomial {
            tate: t,
            ..Self::default()
        }
    }

    pub fn tate(&self) -> u32 {
        self.tate
    }

    pub fn cusp_factors(&self) -> impl Iterator<Item = (SymbolKey, u32)> + '_ {
        self.cusp.iter().map(|(&k, &p)| (k, p))
    }

    pub fn alt2_factors(&self) -> impl Iterator<Item = (SymbolKey, u32)> + '_ {
        self.alt2.iter().map(|(&k, &p)| (k, p))
    }

    /// Total number of non-Tate factors, counted with multiplicity.
    pub fn symbol_degree(&self) -> u32 {
        self.cusp.values().sum::<u32>() + self.alt2.values().sum::<u32>()
    }

    fn product(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.tate += other.tate;
        for (&key, &p) in &other.cusp {
            *out.cusp.entry(key).or_insert(0) += p;
        }
        for (&key, &p) in &other.alt2 {
            *out.alt2.entry(key).or_insert(0) += p;
        }
        out
    }

    /// Rank (virtual dimension) of the monomial: multiplicative over
    /// factors, with `rank L = 1`, `rank S[N,k] = 2s`, and
    /// `rank Alt2[N,k] = s(2s-1)` where `s = dim_new(N,k)`.
    pub fn rank(&self) -> i64 {
        let mut r: i64 = 1;
        for (&(level, k), &p) in &self.cusp {
            let s = dim_new(level, k).expect("symbol levels are validated") as i64;
            r *= (2 * s).pow(p);
        }
        for (&(level, k), &p) in &self.alt2 {
            let s = dim_new(level, k).expect("symbol levels are validated") as i64;
            r *= (s * (2 * s - 1)).pow(p);
        }
        r
    }

    /// Motivic weight: `2t` plus `k - 1` per cusp factor and `2(k - 1)` per
    /// exterior-square factor.
    pub fn weight(&self) -> u32 {
        let mut w = 2 * self.tate;
        for (&(_, k), &p) in &self.cusp {
            w += p * (k - 1);
        }
        for (&(_, k), &p) in &self.alt2 {
            w += p * 2 * (k - 1);
        }
        w
    }
}

/// An integer combination of [`MotiveMonomial`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MotiveClass {
    terms: BTreeMap<MotiveMonomial, i64>,
}

impl MotiveClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        let mut c = Self::default();
        c.add_term(MotiveMonomial::unit(), n);
        c
    }

    /// The Tate power `L^t`.
    pub fn tate(t: u32) -> Self {
        let mut c = Self::default();
        c.add_term(MotiveMonomial::tate_power(t), 1);
        c
    }

    /// Convenience constructor for a polynomial in `L`,
    /// from `(power, coefficient)` pairs.
    pub fn tate_polynomial(coeffs: &[(u32, i64)]) -> Self {
        let mut c = Self::default();
        for &(t, n) in coeffs {
            c.add_term(MotiveMonomial::tate_power(t), n);
        }
        c
    }

    /// The symbol `S[level, weight]`; the zero class when the new part of
    /// `S_weight(Gamma_0(level))` vanishes.
    pub fn cusp_symbol(level: u32, weight: u32) -> Result<Self, MotiveError> {
        let s = dim_new(level, weight).map_err(|_| MotiveError::UnsupportedLevel(level))?;
        if s == 0 {
            return Ok(Self::zero());
        }
        let mono = MotiveMonomial {
            tate: 0,
            cusp: [((level, weight), 1)].into_iter().collect(),
            alt2: BTreeMap::new(),
        };
        let mut c = Self::default();
        c.add_term(mono, 1);
        Ok(c)
    }

    /// The formal exterior-square symbol `Alt2[level, weight]`, the
    /// unexpanded `lambda^2` of a cusp symbol of rank at least 4.
    pub fn alt2_symbol(level: u32, weight: u32) -> Self {
        let mono = MotiveMonomial {
            tate: 0,
            cusp: BTreeMap::new(),
            alt2: [((level, weight), 1)].into_iter().collect(),
        };
        let mut c = Self::default();
        c.add_term(mono, 1);
        c
    }

    pub fn add_term(&mut self, mono: MotiveMonomial, coeff: i64) {
        use std::collections::btree_map::Entry;
        if coeff == 0 {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn coeff(&self, mono: &MotiveMonomial) -> i64 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MotiveMonomial, i64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut out = Self::default();
        if s == 0 {
            return out;
        }
        for (m, c) in self.iter() {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    /// Rank (virtual dimension): a ring homomorphism to the integers.
    pub fn rank(&self) -> i64 {
        self.iter().map(|(m, c)| c * m.rank()).sum()
    }

    /// Largest monomial weight in the support (0 for the zero class).
    pub fn max_weight(&self) -> u32 {
        self.iter().map(|(m, _)| m.weight()).max().unwrap_or(0)
    }

    /// Second Adams operation; multiplicative, with `psi_2 L^t = L^(2t)`
    /// and the generator rules from the module documentation.
    pub fn psi2(&self) -> Result<Self, MotiveError> {
        let mut out = Self::zero();
        for (mono, c) in self.iter() {
            if !mono.alt2.is_empty() {
                return Err(MotiveError::AdamsOnAltSquare);
            }
            let mut factor_product = Self::tate(2 * mono.tate);
            for ((level, k), p) in mono.cusp_factors() {
                let s = dim_new(level, k).expect("symbol levels are validated");
                let symbol = Self::cusp_symbol(level, k)?;
                let square = &symbol * &symbol;
                let correction = if s == 1 {
                    Self::tate(k - 1).scale(2)
                } else {
                    Self::alt2_symbol(level, k).scale(2)
                };
                let psi_symbol = square - correction;
                for _ in 0..p {
                    factor_product = &factor_product * &psi_symbol;
                }
            }
            out += factor_product.scale(c);
        }
        Ok(out)
    }

    /// Exterior square `lambda^2 x = (x^2 - psi_2 x) / 2`.
    pub fn lambda2(&self) -> Result<Self, MotiveError> {
        let square = self * self;
        (square - self.psi2()?).halved()
    }

    /// Symmetric square `sym^2 x = (x^2 + psi_2 x) / 2`.
    pub fn sym2(&self) -> Result<Self, MotiveError> {
        let square = self * self;
        (square + self.psi2()?).halved()
    }

    fn halved(&self) -> Result<Self, MotiveError> {
        let mut out = Self::zero();
        for (m, c) in self.iter() {
            if c % 2 != 0 {
                return Err(MotiveError::OddCoefficient);
            }
            out.add_term(m.clone(), c / 2);
        }
        Ok(out)
    }

    /// Terms in canonical display order: monomials with more symbol factors
    /// first, then by the symbols themselves, then by descending Tate power.
    pub fn display_terms(&self) -> Vec<(&MotiveMonomial, i64)> {
        let mut terms: Vec<_> = self.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            b.symbol_degree()
                .cmp(&a.symbol_degree())
                .then_with(|| a.cusp.cmp(&b.cusp))
                .then_with(|| a.alt2.cmp(&b.alt2))
                .then_with(|| b.tate.cmp(&a.tate))
        });
        terms
    }
}

impl fmt::Display for MotiveClass {
    /// Canonical plain-text rendering, e.g. `S[2,8] - L^4 + 3L + 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.display_terms().into_iter().enumerate() {
            let mut symbol = String::new();
            for ((level, k), p) in mono.cusp_factors() {
                symbol.push_str(&format!("S[{level},{k}]"));
                if p > 1 {
                    symbol.push_str(&format!("^{p}"));
                }
            }
            for ((level, k), p) in mono.alt2_factors() {
                symbol.push_str(&format!("Alt2[{level},{k}]"));
                if p > 1 {
                    symbol.push_str(&format!("^{p}"));
                }
            }
            match mono.tate() {
                0 => {}
                1 => symbol.push('L'),
                t => symbol.push_str(&format!("L^{t}")),
            }
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.unsigned_abs();
            if symbol.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{symbol}")?;
            } else {
                write!(f, "{mag}{symbol}")?;
            }
        }
        Ok(())
    }
}

impl Add for MotiveClass {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for MotiveClass {
    fn add_assign(&mut self, rhs: Self) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Sub for MotiveClass {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for MotiveClass {
    fn sub_assign(&mut self, rhs: Self) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Neg for MotiveClass {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl Mul for &MotiveClass {
    type Output = MotiveClass;
    fn mul(self, rhs: Self) -> MotiveClass {
        let mut out = MotiveClass::zero();
        for (m1, c1) in self.iter() {
            for (m2, c2) in rhs.iter() {
                out.add_term(m1.product(m2), c1 * c2);
            }
        }
        out
    }
}

/// A motivic class split into even and odd cohomological parts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedClass {
    pub even: MotiveClass,
    pub odd: MotiveClass,
}

impl GradedClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure_even(x: MotiveClass) -> Self {
        GradedClass {
            even: x,
            odd: MotiveClass::zero(),
        }
    }

    pub fn pure_odd(x: MotiveClass) -> Self {
        GradedClass {
            even: MotiveClass::zero(),
            odd: x,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// Euler characteristic: even minus odd.
    pub fn euler(&self) -> MotiveClass {
        self.even.clone() - self.odd.clone()
    }

    /// Graded (Kunneth) tensor product.
    pub fn tensor(&self, other: &Self) -> Self {
        GradedClass {
            even: &self.even * &other.even + &self.odd * &other.odd,
            odd: &self.even * &other.odd + &self.odd * &other.even,
        }
    }

    /// Signed invariants of the swap on `self (x) self`.
    ///
    /// For `+` (plain invariants) the even part is `sym^2(even) +
    /// lambda^2(odd)` — the exterior square on the odd part because the swap
    /// on odd-degree classes carries a Koszul sign — and for `-` the two
    /// squares trade places.  The odd part is `even * odd` either way.
    pub fn super_invariants(&self, sign: Sign) -> Result<Self, MotiveError> {
        let even = match sign {
            Sign::Plus => self.even.sym2()? + self.odd.lambda2()?,
            Sign::Minus => self.even.lambda2()? + self.odd.sym2()?,
        };
        Ok(GradedClass {
            even,
            odd: &self.even * &self.odd,
        })
    }
}

impl Add for GradedClass {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GradedClass {
            even: self.even + rhs.even,
            odd: self.odd + rhs.odd,
        }
    }
}

impl Sub for GradedClass {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GradedClass {
            even: self.even - rhs.even,
            odd: self.odd - rhs.odd,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tate(t: u32) -> MotiveClass {
        MotiveClass::tate(t)
    }

    #[test]
    fn ring_basics() {
        let l = tate(1);
        let l2 = &l * &l;
        assert_eq!(l2, tate(2));
        assert_eq!((l2.clone() - tate(2)), MotiveClass::zero());
        assert_eq!(l2.rank(), 1);
        assert_eq!(l2.max_weight(), 4);
        assert_eq!(MotiveClass::integer(-3).rank(), -3);
    }

    #[test]
    fn cusp_symbol_rank_and_vanishing() {
        let s28 = MotiveClass::cusp_symbol(2, 8).unwrap();
        assert_eq!(s28.rank(), 2);
        assert_eq!(s28.max_weight(), 7);
        assert!(MotiveClass::cusp_symbol(1, 8).unwrap().is_zero());
        assert!(MotiveClass::cusp_symbol(2, 7).unwrap().is_zero());
        assert!(MotiveClass::cusp_symbol(3, 8).is_err());
    }

    #[test]
    fn psi2_on_generators() {
        assert_eq!(tate(3).psi2().unwrap(), tate(6));
        let s = MotiveClass::cusp_symbol(2, 8).unwrap();
        let expected = &s * &s - tate(7).scale(2);
        assert_eq!(s.psi2().unwrap(), expected);
    }

    #[test]
    fn lambda2_of_rank_two_symbol_is_tate() {
        let s = MotiveClass::cusp_symbol(2, 8).unwrap();
        assert_eq!(s.lambda2().unwrap(), tate(7));
        assert_eq!(
            s.sym2().unwrap(),
            &s * &s - tate(7)
        );
    }

    #[test]
    fn lambda_and_sym_add_to_square() {
        let x = MotiveClass::cusp_symbol(2, 8).unwrap() + tate(2) - MotiveClass::integer(3);
        let total = x.lambda2().unwrap() + x.sym2().unwrap();
        assert_eq!(total, &x * &x);
    }

    #[test]
    fn lambda2_is_quadratic() {
        let x = tate(2) + MotiveClass::integer(1);
        let y = MotiveClass::cusp_symbol(2, 8).unwrap() - tate(1);
        let lhs = (x.clone() + y.clone()).lambda2().unwrap();
        let rhs = x.lambda2().unwrap() + y.lambda2().unwrap() + &x * &y;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_is_ring_homomorphism() {
        let x = MotiveClass::cusp_symbol(2, 8).unwrap() + tate(1).scale(3);
        let y = MotiveClass::cusp_symbol(4, 6).unwrap() - MotiveClass::integer(2);
        assert_eq!((&x * &y).rank(), x.rank() * y.rank());
        assert_eq!((x.clone() + y.clone()).rank(), x.rank() + y.rank());
        assert_eq!(x.psi2().unwrap().rank(), x.rank());
        assert_eq!(x.lambda2().unwrap().rank(), x.rank() * (x.rank() - 1) / 2);
        assert_eq!(x.sym2().unwrap().rank(), x.rank() * (x.rank() + 1) / 2);
    }

    #[test]
    fn super_invariants_sum_to_full_square() {
        let g = GradedClass {
            even: tate(1) + MotiveClass::integer(1),
            odd: MotiveClass::cusp_symbol(2, 8).unwrap() + MotiveClass::integer(1),
        };
        let plus = g.super_invariants(Sign::Plus).unwrap();
        let minus = g.super_invariants(Sign::Minus).unwrap();
        let total = plus + minus;
        assert_eq!(total, g.tensor(&g));
    }

    #[test]
    fn display_matches_expected_strings() {
        let x = MotiveClass::cusp_symbol(2, 8).unwrap() - tate(4)
            + tate(1).scale(3)
            + MotiveClass::integer(5);
        assert_eq!(x.to_string(), "S[2,8] - L^4 + 3L + 5");
        assert_eq!((tate(2) - tate(1)).to_string(), "L^2 - L");
        assert_eq!(MotiveClass::zero().to_string(), "0");
        assert_eq!(MotiveClass::integer(-2).to_string(), "-2");
    }

    #[test]
    fn psi2_rejects_formal_exterior_squares() {
        let alt = MotiveClass::alt2_symbol(1, 24);
        assert_eq!(alt.psi2(), Err(MotiveError::AdamsOnAltSquare));
    }
}
