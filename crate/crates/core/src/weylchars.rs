//! Exact character arithmetic for Sp(4) and SL(2).
//!
//! Irreducible representations of Sp(4) are indexed by highest weights
//! `l*e1 + m*e2` with `l >= m >= 0`; we write `W[l,m]` for the irreducible
//! with that highest weight and `V_a` for the (a+1)-dimensional irreducible
//! of SL(2).  Characters live on the maximal torus, i.e. they are Laurent
//! polynomials in two variables `x = x1`, `y = x2` (one variable for SL(2)),
//! invariant under the hyperoctahedral Weyl group (swap and invert the
//! variables).
//!
//! Everything here is exact integer arithmetic:
//!
//! * `W[l,m]` characters come from the Weyl character formula
//!   `chi_{l,m} = A_{(l+2,m+1)} / A_{(2,1)}`, where `A_mu` is the signed
//!   orbit sum of `x1^mu1 x2^mu2`; the division is carried out as long
//!   division by the lexicographically leading term (which is monic), so a
//!   nonzero remainder is impossible for genuine alternant quotients and is
//!   reported as an error otherwise.
//! * Decomposition of an invariant Laurent polynomial into irreducible
//!   characters is the greedy peel: the lex-largest surviving exponent of an
//!   invariant polynomial is always a dominant weight `(l,m)` and occurs in
//!   `chi_{l,m}` with coefficient exactly 1.
//!
//! Virtual classes ([`VirtualSp4Class`]) are finite rational combinations of
//! symbols `L^t W[l,m]`, where `L` is the Tate/Lefschetz class.  A symbol
//! `L^t W[l,m]` is pure of weight `l + m + 2t`, and all ring operations keep
//! the grading homogeneous: when a tensor product (or Adams operation)
//! produces a constituent of smaller highest weight, the missing weight is
//! made up by a Tate twist.  Concretely
//!
//! ```text
//! W[1,0] * W[1,0] = W[2,0] + W[1,1] + L          (not + W[0,0])
//! psi_2 (W[1,0])  = W[2,0] - W[1,1] - L
//! ```
//!
//! because both sides must be pure of weight 2.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use thiserror::Error;

/// Exact scalar type used for coefficients of virtual classes.
pub type Rational = Ratio<i64>;

/// Errors from character arithmetic and decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    /// A highest-weight label outside the dominant cone `l >= m >= 0`.
    #[error("label W[{l},{m}] is outside the dominant cone (need l >= m >= 0)")]
    BadLabel { l: i64, m: i64 },
    /// A Laurent polynomial that is not Weyl-invariant cannot be a character.
    #[error("Laurent polynomial is not invariant under the Weyl group of Sp(4)")]
    NotInvariant,
    /// Long division of alternants did not terminate cleanly.
    #[error("exact division of alternants failed (nonzero remainder)")]
    DivisionRemainder,
    /// An operation that requires integer coefficients met a fraction.
    #[error("virtual class has non-integral coefficients")]
    NotIntegral,
    /// A label string that does not parse as `W[l,m]`.
    #[error("cannot parse {0:?} as an Sp(4) label (expected W[l,m])")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

/// Laurent polynomial in one torus variable, `exponent -> coefficient`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentUnivariate {
    terms: BTreeMap<i64, i64>,
}

impl LaurentUnivariate {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut f = Self::default();
        f.add_term(exp, coeff);
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    /// Value at `x = 1`, i.e. the dimension when `self` is a character.
    pub fn sum_of_coeffs(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Substitute `x -> x^d`.
    pub fn substitute_power(&self, d: u32) -> Self {
        let mut out = Self::default();
        for (e, c) in self.iter() {
            out.add_term(e * d as i64, c);
        }
        out
    }
}

impl Add for LaurentUnivariate {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.iter() {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for LaurentUnivariate {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.iter() {
            self.add_term(e, -c);
        }
        self
    }
}

impl Mul for &LaurentUnivariate {
    type Output = LaurentUnivariate;
    fn mul(self, rhs: Self) -> LaurentUnivariate {
        let mut out = LaurentUnivariate::default();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Laurent polynomial in two torus variables, `(e1, e2) -> coefficient`.
///
/// The `BTreeMap` key order is lexicographic on `(e1, e2)`, which is exactly
/// the monomial order the division and decomposition routines peel from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentBivariate {
    terms: BTreeMap<(i64, i64), i64>,
}

impl LaurentBivariate {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: (i64, i64), coeff: i64) -> Self {
        let mut f = Self::default();
        f.add_term(exp, coeff);
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: (i64, i64), coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: (i64, i64)) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lexicographically largest exponent and its coefficient.
    pub fn leading(&self) -> Option<((i64, i64), i64)> {
        self.terms.iter().next_back().map(|(&e, &c)| (e, c))
    }

    /// Value at `x1 = x2 = 1`, i.e. the dimension when `self` is a character.
    pub fn sum_of_coeffs(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Substitute `x1 -> x1^d`, `x2 -> x2^d` (the Adams substitution).
    pub fn substitute_power(&self, d: u32) -> Self {
        let mut out = Self::default();
        for ((e1, e2), c) in self.iter() {
            out.add_term((e1 * d as i64, e2 * d as i64), c);
        }
        out
    }

    /// Substitute `x1 -> x`, `x2 -> -x`, producing a one-variable Laurent
    /// polynomial.  For a character this is the trace against the outer
    /// involution swapping the two SL(2) factors of the sub-torus.
    pub fn specialize_antidiagonal(&self) -> LaurentUnivariate {
        let mut out = LaurentUnivariate::default();
        for ((e1, e2), c) in self.iter() {
            let sign = if e2.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_term(e1 + e2, sign * c);
        }
        out
    }

    /// Product `f(x1) * g(x2)` of two one-variable Laurent polynomials.
    pub fn from_split_product(fx: &LaurentUnivariate, gy: &LaurentUnivariate) -> Self {
        let mut out = Self::default();
        for (e1, c1) in fx.iter() {
            for (e2, c2) in gy.iter() {
                out.add_term((e1, e2), c1 * c2);
            }
        }
        out
    }

    /// `self -= c * x^shift * other`, used by long division.
    fn sub_scaled_shift(&mut self, other: &Self, shift: (i64, i64), c: i64) {
        for ((e1, e2), oc) in other.iter() {
            self.add_term((e1 + shift.0, e2 + shift.1), -c * oc);
        }
    }

    /// True if invariant under swapping and inverting the two variables.
    pub fn is_weyl_invariant(&self) -> bool {
        self.iter().all(|((e1, e2), c)| {
            self.coeff((e2, e1)) == c && self.coeff((-e1, e2)) == c && self.coeff((e1, -e2)) == c
        })
    }
}

impl Add for LaurentBivariate {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.iter() {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for LaurentBivariate {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.iter() {
            self.add_term(e, -c);
        }
        self
    }
}

impl Mul for &LaurentBivariate {
    type Output = LaurentBivariate;
    fn mul(self, rhs: Self) -> LaurentBivariate {
        let mut out = LaurentBivariate::default();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                out.add_term((e1.0 + e2.0, e1.1 + e2.1), c1 * c2);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// SL(2)
// ---------------------------------------------------------------------------

/// Dimension of the SL(2)-irreducible `V_a`.
pub fn sp2_dim(a: u32) -> u64 {
    a as u64 + 1
}

/// Character of `V_a`: `x^a + x^(a-2) + ... + x^(-a)`.
pub fn sp2_character(a: u32) -> LaurentUnivariate {
    let mut f = LaurentUnivariate::default();
    let a = a as i64;
    let mut e = -a;
    while e <= a {
        f.add_term(e, 1);
        e += 2;
    }
    f
}

/// Clebsch-Gordan decomposition: `V_a (x) V_b = V_{a+b} + V_{a+b-2} + ... + V_{|a-b|}`.
pub fn sp2_tensor(a: u32, b: u32) -> Vec<u32> {
    let lo = a.abs_diff(b);
    let hi = a + b;
    (lo..=hi).step_by(2).collect()
}

/// Greedy decomposition of an inversion-invariant one-variable Laurent
/// polynomial into SL(2)-characters, `a -> multiplicity`.
pub fn decompose_sp2_character(f: &LaurentUnivariate) -> Result<BTreeMap<u32, i64>, WeylError> {
    if !f.iter().all(|(e, c)| f.coeff(-e) == c) {
        return Err(WeylError::NotInvariant);
    }
    let mut rem = f.clone();
    let mut out = BTreeMap::new();
    while let Some((&e, &c)) = rem.terms.iter().next_back() {
        if e < 0 {
            return Err(WeylError::NotInvariant);
        }
        *out.entry(e as u32).or_insert(0) += c;
        let chi = sp2_character(e as u32);
        for (ce, cc) in chi.iter() {
            rem.add_term(ce, -c * cc);
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Sp(4) labels and characters
// ---------------------------------------------------------------------------

/// Highest-weight label `W[l,m]` of an irreducible Sp(4)-representation,
/// with the dominance condition `l >= m >= 0` enforced on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sp4Label {
    l: u32,
    m: u32,
}

impl Sp4Label {
    pub fn new(l: u32, m: u32) -> Result<Self, WeylError> {
        if l < m {
            return Err(WeylError::BadLabel {
                l: l as i64,
                m: m as i64,
            });
        }
        Ok(Self { l, m })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Motivic weight of the local system `W[l,m]`, namely `l + m`.
    pub fn weight(&self) -> u32 {
        self.l + self.m
    }

    /// Dimension `(l-m+1)(m+1)(l+2)(l+m+3)/6` from the Weyl dimension formula.
    pub fn dim(&self) -> u64 {
        let (l, m) = (self.l as u64, self.m as u64);
        (l - m + 1) * (m + 1) * (l + 2) * (l + m + 3) / 6
    }
}

impl fmt::Display for Sp4Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[{},{}]", self.l, self.m)
    }
}

impl std::str::FromStr for Sp4Label {
    type Err = WeylError;

    /// Accepts `"W[l,m]"` or a bare `"l,m"`.
    fn from_str(s: &str) -> Result<Self, WeylError> {
        let body = s
            .trim()
            .strip_prefix(['W', 'w'])
            .map(|rest| rest.trim_start_matches('[').trim_end_matches(']'))
            .unwrap_or(s.trim());
        let err = || WeylError::Parse(s.to_string());
        let (l, m) = body.split_once(',').ok_or_else(err)?;
        let l: u32 = l.trim().parse().map_err(|_| err())?;
        let m: u32 = m.trim().parse().map_err(|_| err())?;
        Sp4Label::new(l, m)
    }
}

/// Signed Weyl-orbit sum `A_mu = sum_w sgn(w) x^(w mu)` for the
/// hyperoctahedral group acting on exponent pairs.
fn alternant(mu: (i64, i64)) -> LaurentBivariate {
    let mut f = LaurentBivariate::default();
    for (swap, swap_sign) in [(false, 1), (true, -1)] {
        let (u, v) = if swap { (mu.1, mu.0) } else { mu };
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                f.add_term((s1 * u, s2 * v), swap_sign * s1 as i64 * s2 as i64);
            }
        }
    }
    f
}

/// Long division of Laurent polynomials by the lex-leading (monic) term.
///
/// For quotients of alternants this terminates with remainder zero; the
/// iteration cap only guards against a caller handing in a non-multiple.
fn exact_divide(mut num: LaurentBivariate, den: &LaurentBivariate) -> Result<LaurentBivariate, WeylError> {
    let (dlead, dc) = den.leading().expect("division by zero alternant");
    debug_assert_eq!(dc, 1, "Weyl denominator must be lex-monic");
    let mut quotient = LaurentBivariate::default();
    let mut steps = 0usize;
    while let Some((e, c)) = num.leading() {
        steps += 1;
        if steps > 200_000 {
            return Err(WeylError::DivisionRemainder);
        }
        let shift = (e.0 - dlead.0, e.1 - dlead.1);
        quotient.add_term(shift, c);
        num.sub_scaled_shift(den, shift, c);
    }
    Ok(quotient)
}

thread_local! {
    static CHAR_CACHE: RefCell<HashMap<Sp4Label, LaurentBivariate>> = RefCell::new(HashMap::new());
    static TENSOR_CACHE: RefCell<HashMap<(Sp4Label, Sp4Label), Vec<(Sp4Label, i64)>>> =
        RefCell::new(HashMap::new());
    static ADAMS_CACHE: RefCell<HashMap<(u32, Sp4Label), Vec<(Sp4Label, i64)>>> =
        RefCell::new(HashMap::new());
}

/// Character of `W[l,m]` as a Laurent polynomial on the maximal torus.
pub fn sp4_character(label: Sp4Label) -> LaurentBivariate {
    CHAR_CACHE.with(|cache| {
        if let Some(f) = cache.borrow().get(&label) {
            return f.clone();
        }
        let num = alternant((label.l as i64 + 2, label.m as i64 + 1));
        let den = alternant((2, 1));
        let chi = exact_divide(num, &den).expect("Weyl character division is exact");
        debug_assert_eq!(chi.sum_of_coeffs() as u64, label.dim());
        cache.borrow_mut().insert(label, chi.clone());
        chi
    })
}

/// Dimension of `W[l,m]`; shorthand for [`Sp4Label::dim`].
pub fn sp4_dim(l: u32, m: u32) -> Result<u64, WeylError> {
    Ok(Sp4Label::new(l, m)?.dim())
}

/// Greedy decomposition of a Weyl-invariant Laurent polynomial into
/// irreducible Sp(4)-characters, `label -> multiplicity`.
pub fn decompose_character(f: &LaurentBivariate) -> Result<BTreeMap<Sp4Label, i64>, WeylError> {
    if !f.is_weyl_invariant() {
        return Err(WeylError::NotInvariant);
    }
    let mut rem = f.clone();
    let mut out = BTreeMap::new();
    while let Some((e, c)) = rem.leading() {
        // The lex-max exponent of an invariant polynomial is dominant.
        if e.0 < e.1 || e.1 < 0 {
            return Err(WeylError::NotInvariant);
        }
        let label = Sp4Label::new(e.0 as u32, e.1 as u32)?;
        *out.entry(label).or_insert(0) += c;
        let chi = sp4_character(label);
        rem.sub_scaled_shift(&chi, (0, 0), c);
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// Untwisted constituents of `W[a] (x) W[b]`, memoized.
fn tensor_labels(a: Sp4Label, b: Sp4Label) -> Vec<(Sp4Label, i64)> {
    let key = if a <= b { (a, b) } else { (b, a) };
    TENSOR_CACHE.with(|cache| {
        if let Some(v) = cache.borrow().get(&key) {
            return v.clone();
        }
        let product = &sp4_character(key.0) * &sp4_character(key.1);
        let dec = decompose_character(&product).expect("product of characters decomposes");
        let v: Vec<_> = dec.into_iter().collect();
        cache.borrow_mut().insert(key, v.clone());
        v
    })
}

/// Untwisted constituents of the Adams operation `psi_d` on `W[label]`,
/// i.e. the decomposition of the character with `x -> x^d`, memoized.
fn adams_labels(d: u32, label: Sp4Label) -> Vec<(Sp4Label, i64)> {
    ADAMS_CACHE.with(|cache| {
        if let Some(v) = cache.borrow().get(&(d, label)) {
            return v.clone();
        }
        let substituted = sp4_character(label).substitute_power(d);
        let dec = decompose_character(&substituted).expect("Adams substitution decomposes");
        let v: Vec<_> = dec.into_iter().collect();
        cache.borrow_mut().insert((d, label), v.clone());
        v
    })
}

// ---------------------------------------------------------------------------
// Virtual classes with Tate twists
// ---------------------------------------------------------------------------

/// A finite rational combination of symbols `L^t W[l,m]` (`t >= 0`).
///
/// The symbol `L^t W[l,m]` is pure of weight `l + m + 2t`.  Ring operations
/// preserve purity: tensor products and Adams operations twist each
/// constituent so its weight matches the (weight-homogeneous) input.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VirtualSp4Class {
    terms: BTreeMap<(Sp4Label, u32), Rational>,
}

impl VirtualSp4Class {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit class `W[0,0]`.
    pub fn one() -> Self {
        Self::from_label_twisted(Sp4Label::new(0, 0).unwrap(), 0)
    }

    /// The Lefschetz class `L = L^1 W[0,0]`.
    pub fn lefschetz(power: u32) -> Self {
        Self::from_label_twisted(Sp4Label::new(0, 0).unwrap(), power)
    }

    pub fn from_label(label: Sp4Label) -> Self {
        Self::from_label_twisted(label, 0)
    }

    pub fn from_label_twisted(label: Sp4Label, twist: u32) -> Self {
        let mut c = Self::default();
        c.add_term(label, twist, Rational::one());
        c
    }

    pub fn add_term(&mut self, label: Sp4Label, twist: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((label, twist))
            .or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(label, twist));
        }
    }

    pub fn coeff(&self, label: Sp4Label, twist: u32) -> Rational {
        self.terms
            .get(&(label, twist))
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sp4Label, u32, Rational)> + '_ {
        self.terms.iter().map(|(&(l, t), &c)| (l, t, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Virtual rank: the alternating sum of dimensions (`L` counts 1).
    pub fn rank(&self) -> Rational {
        self.iter()
            .map(|(label, _, c)| c * Rational::from_integer(label.dim() as i64))
            .sum()
    }

    /// Largest `l + m` over the support (0 for the zero class).
    pub fn max_weight_level(&self) -> u32 {
        self.iter().map(|(label, _, _)| label.weight()).max().unwrap_or(0)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// The terms with integer coefficients, or an error if any is fractional.
    pub fn integer_terms(&self) -> Result<Vec<(Sp4Label, u32, i64)>, WeylError> {
        self.iter()
            .map(|(label, twist, c)| {
                if c.is_integer() {
                    Ok((label, twist, c.to_integer()))
                } else {
                    Err(WeylError::NotIntegral)
                }
            })
            .collect()
    }

    pub fn scale(&self, s: Rational) -> Self {
        let mut out = Self::default();
        if s.is_zero() {
            return out;
        }
        for (label, twist, c) in self.iter() {
            out.add_term(label, twist, c * s);
        }
        out
    }

    /// Tensor product.  Each constituent `W[l',m']` of `W[a] (x) W[b]` picks
    /// up the twist `t_a + t_b + (wt(a) + wt(b) - wt') / 2` that keeps the
    /// product pure.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (la, ta, ca) in self.iter() {
            for (lb, tb, cb) in other.iter() {
                let c = ca * cb;
                if c.is_zero() {
                    continue;
                }
                let wsum = la.weight() + lb.weight();
                for (lc, mult) in tensor_labels(la, lb) {
                    let gap = wsum - lc.weight();
                    debug_assert_eq!(gap % 2, 0, "tensor weight gap must be even");
                    let twist = ta + tb + gap / 2;
                    out.add_term(lc, twist, c * Rational::from_integer(mult));
                }
            }
        }
        out
    }

    /// Adams operation `psi_d`.  A constituent `W[l',m']` of the substituted
    /// character picks up the twist `d*t + (d*wt - wt') / 2`.
    pub fn adams(&self, d: u32) -> Self {
        assert!(d >= 1, "Adams operations are indexed by d >= 1");
        if d == 1 {
            return self.clone();
        }
        let mut out = Self::default();
        for (label, t, c) in self.iter() {
            for (lc, mult) in adams_labels(d, label) {
                let gap = d * label.weight() - lc.weight();
                debug_assert_eq!(gap % 2, 0, "Adams weight gap must be even");
                let twist = d * t + gap / 2;
                out.add_term(lc, twist, c * Rational::from_integer(mult));
            }
        }
        out
    }

    /// Closed-form tensor with the standard class `W[1,0]`:
    ///
    /// ```text
    /// W[l,m] (x) W[1,0] = W[l+1,m] + W[l,m+1] + L W[l,m-1] + L W[l-1,m]
    /// ```
    ///
    /// with out-of-cone labels dropped.  Used as an independent cross-check
    /// of [`VirtualSp4Class::tensor`].
    pub fn pieri(&self) -> Self {
        let mut out = Self::default();
        for (label, t, c) in self.iter() {
            let (l, m) = (label.l(), label.m());
            let mut push = |l2: i64, m2: i64, twist: u32| {
                if l2 >= m2 && m2 >= 0 {
                    let lab = Sp4Label::new(l2 as u32, m2 as u32).unwrap();
                    out.add_term(lab, twist, c);
                }
            };
            push(l as i64 + 1, m as i64, t);
            push(l as i64, m as i64 + 1, t);
            push(l as i64, m as i64 - 1, t + 1);
            push(l as i64 - 1, m as i64, t + 1);
        }
        out
    }
}

impl Add for VirtualSp4Class {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (label, twist, c) in rhs.iter() {
            self.add_term(label, twist, c);
        }
        self
    }
}

impl AddAssign for VirtualSp4Class {
    fn add_assign(&mut self, rhs: Self) {
        for (label, twist, c) in rhs.iter() {
            self.add_term(label, twist, c);
        }
    }
}

impl Sub for VirtualSp4Class {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (label, twist, c) in rhs.iter() {
            self.add_term(label, twist, -c);
        }
        self
    }
}

impl SubAssign for VirtualSp4Class {
    fn sub_assign(&mut self, rhs: Self) {
        for (label, twist, c) in rhs.iter() {
            self.add_term(label, twist, -c);
        }
    }
}

impl Neg for VirtualSp4Class {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-Rational::one())
    }
}

impl Mul for &VirtualSp4Class {
    type Output = VirtualSp4Class;
    fn mul(self, rhs: Self) -> VirtualSp4Class {
        self.tensor(rhs)
    }
}

impl fmt::Display for VirtualSp4Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Render heaviest terms first, constants last.
        let mut terms: Vec<_> = self.iter().collect();
        terms.sort_by_key(|(label, twist, _)| {
            std::cmp::Reverse((label.weight() + 2 * twist, label.l(), label.m(), *twist))
        });
        for (i, (label, twist, c)) in terms.into_iter().enumerate() {
            let symbol = match (label.weight() == 0, twist) {
                (true, 0) => "1".to_string(),
                (true, 1) => "L".to_string(),
                (true, t) => format!("L^{t}"),
                (false, 0) => format!("{label}"),
                (false, 1) => format!("L*{label}"),
                (false, t) => format!("L^{t}*{label}"),
            };
            let mag = c.abs();
            let sign = c.is_negative();
            if i == 0 {
                if sign {
                    write!(f, "-")?;
                }
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() && symbol != "1" {
                write!(f, "{symbol}")?;
            } else if symbol == "1" {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{symbol}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(l: u32, m: u32) -> Sp4Label {
        Sp4Label::new(l, m).unwrap()
    }

    #[test]
    fn dimension_formula_matches_known_table() {
        let expect = [
            ((0, 0), 1),
            ((1, 0), 4),
            ((1, 1), 5),
            ((2, 0), 10),
            ((2, 1), 16),
            ((2, 2), 14),
            ((3, 0), 20),
            ((3, 1), 35),
            ((3, 3), 30),
            ((4, 2), 81),
            ((5, 1), 105),
            ((6, 0), 84),
        ];
        for ((l, m), d) in expect {
            assert_eq!(sp4_dim(l, m).unwrap(), d, "dim W[{l},{m}]");
        }
        assert!(sp4_dim(1, 2).is_err());
    }

    #[test]
    fn characters_evaluate_to_dimensions() {
        for l in 0..=8u32 {
            for m in 0..=l {
                let label = lab(l, m);
                let chi = sp4_character(label);
                assert!(chi.is_weyl_invariant());
                assert_eq!(chi.sum_of_coeffs() as u64, label.dim());
            }
        }
    }

    #[test]
    fn small_characters_have_expected_support() {
        let std = sp4_character(lab(1, 0));
        assert_eq!(std.num_terms(), 4);
        for e in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            assert_eq!(std.coeff(e), 1);
        }

        let five = sp4_character(lab(1, 1));
        assert_eq!(five.num_terms(), 5);
        assert_eq!(five.coeff((0, 0)), 1);
        assert_eq!(five.coeff((1, 1)), 1);
        assert_eq!(five.coeff((-1, 1)), 1);
    }

    #[test]
    fn decomposition_inverts_character() {
        for l in 0..=6u32 {
            for m in 0..=l {
                let label = lab(l, m);
                let dec = decompose_character(&sp4_character(label)).unwrap();
                assert_eq!(dec.len(), 1);
                assert_eq!(dec[&label], 1);
            }
        }
    }

    #[test]
    fn decomposition_rejects_non_invariant_input() {
        let f = LaurentBivariate::monomial((1, 0), 1);
        assert_eq!(decompose_character(&f), Err(WeylError::NotInvariant));
    }

    #[test]
    fn tensor_square_of_standard_has_lefschetz_term() {
        let w = VirtualSp4Class::from_label(lab(1, 0));
        let sq = w.tensor(&w);
        let mut expect = VirtualSp4Class::from_label(lab(2, 0));
        expect += VirtualSp4Class::from_label(lab(1, 1));
        expect += VirtualSp4Class::lefschetz(1);
        assert_eq!(sq, expect);
    }

    #[test]
    fn tensor_with_five_dim_rep_twists_downward_term() {
        let w = VirtualSp4Class::from_label(lab(1, 0));
        let v = VirtualSp4Class::from_label(lab(1, 1));
        let prod = w.tensor(&v);
        let mut expect = VirtualSp4Class::from_label(lab(2, 1));
        expect += VirtualSp4Class::from_label_twisted(lab(1, 0), 1);
        assert_eq!(prod, expect);
    }

    #[test]
    fn adams_two_and_three_of_standard() {
        let w = VirtualSp4Class::from_label(lab(1, 0));

        let psi2 = w.adams(2);
        let mut expect2 = VirtualSp4Class::from_label(lab(2, 0));
        expect2 -= VirtualSp4Class::from_label(lab(1, 1));
        expect2 -= VirtualSp4Class::lefschetz(1);
        assert_eq!(psi2, expect2);

        let psi3 = w.adams(3);
        let mut expect3 = VirtualSp4Class::from_label(lab(3, 0));
        expect3 -= VirtualSp4Class::from_label(lab(2, 1));
        assert_eq!(psi3, expect3);
    }

    #[test]
    fn adams_preserves_rank_and_weight() {
        for l in 0..=4u32 {
            for m in 0..=l {
                let x = VirtualSp4Class::from_label(lab(l, m));
                for d in 2..=4u32 {
                    let y = x.adams(d);
                    assert_eq!(y.rank(), x.rank(), "rank of psi_{d} W[{l},{m}]");
                    for (label, twist, _) in y.iter() {
                        assert_eq!(label.weight() + 2 * twist, d * (l + m));
                    }
                }
            }
        }
    }

    #[test]
    fn pieri_agrees_with_generic_tensor() {
        for l in 0..=6u32 {
            for m in 0..=l {
                let x = VirtualSp4Class::from_label_twisted(lab(l, m), 1);
                let std = VirtualSp4Class::from_label(lab(1, 0));
                assert_eq!(x.pieri(), x.tensor(&std), "Pieri at W[{l},{m}]");
            }
        }
    }

    #[test]
    fn tensor_conserves_rank() {
        for (a, b) in [((2, 0), (1, 1)), ((2, 1), (2, 1)), ((3, 1), (2, 2))] {
            let x = VirtualSp4Class::from_label(lab(a.0, a.1));
            let y = VirtualSp4Class::from_label(lab(b.0, b.1));
            assert_eq!(x.tensor(&y).rank(), x.rank() * y.rank());
        }
    }

    #[test]
    fn sl2_clebsch_gordan_conserves_dimension() {
        for a in 0..=8u32 {
            for b in 0..=8u32 {
                let total: u64 = sp2_tensor(a, b).iter().map(|&c| sp2_dim(c)).sum();
                assert_eq!(total, sp2_dim(a) * sp2_dim(b));
            }
        }
    }

    #[test]
    fn sl2_decomposition_roundtrip() {
        let f = &sp2_character(3) * &sp2_character(2);
        let dec = decompose_sp2_character(&f).unwrap();
        let expect: BTreeMap<u32, i64> = [(1, 1), (3, 1), (5, 1)].into_iter().collect();
        assert_eq!(dec, expect);
    }

    #[test]
    fn display_formatting() {
        let mut x = VirtualSp4Class::lefschetz(2);
        x -= VirtualSp4Class::lefschetz(1);
        assert_eq!(x.to_string(), "L^2 - L");

        let w = VirtualSp4Class::from_label(lab(1, 0));
        assert_eq!(w.adams(2).to_string(), "W[2,0] - W[1,1] - L");
    }
}
