//! Branching from Sp(4) to the wreath subgroup `(SL(2) x SL(2)) : S_2`.
//!
//! The subgroup is the stabilizer of an unordered pair of transverse
//! symplectic planes: two commuting SL(2)'s swapped by an extra involution.
//! Its irreducible representations come in two families ([`WreathLabel`]):
//!
//! * `U[a,b]` with `a > b >= 0`: induced from `V_a (x) V_b` on the two
//!   factors; dimension `2(a+1)(b+1)`,
//! * `U[a]+` and `U[a]-`: the two extensions of `V_a (x) V_a` on which the
//!   swap acts by the indicated sign on the highest diagonal vector;
//!   dimension `(a+1)^2`.
//!
//! [`branch_sp4_to_wreath`] restricts `W[l,m]`; the answer is multiplicity
//! free.  For `l + m` even it is
//!
//! ```text
//! W[l,m] = sum_{i=0..m} U[(l-m)/2 + i]^((-1)^m)
//!        + sum_{i=0..m} sum_{j=0..<(l-m)/2} U[l-m+i-j, i+j]
//! ```
//!
//! and for `l + m` odd only the double sum survives.  [`twisted_pullback`]
//! attaches to each constituent the Tate twist `(l + m - wt(U))/2` that
//! makes the restriction weight-homogeneous, with `wt(U[a,b]) = a + b` and
//! `wt(U[a]+-) = 2a`.
//!
//! Two independent character-level oracles guard the table:
//!
//! * restriction to the torus of `SL(2) x SL(2)` (both branches read off the
//!   same two-variable Laurent polynomial), and
//! * the trace against the swap class, where `U[a,b]` contributes zero and
//!   `U[a]+-` contributes `+- chi_a(x^2)`.
//!
//! [`branch_wreath_to_diagonal`] restricts further to `SL(2) x S_2`
//! (diagonal SL(2) and the swap), giving signed SL(2)-labels `(c, +-)`.

use crate::motives::Sign;
use crate::weylchars::{
    sp2_character, sp2_tensor, LaurentBivariate, LaurentUnivariate, Sp4Label,
};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Errors from wreath-label construction and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WreathError {
    #[error("pair label U[{a},{b}] requires a > b >= 0")]
    BadPair { a: u32, b: u32 },
    #[error("cannot parse wreath label {0:?} (expected e.g. \"2,1\", \"U2,1\", \"3+\", \"U3-\")")]
    Parse(String),
}

/// Irreducible representation of the wreath subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WreathLabel {
    /// `U[a,b]`, induced from `V_a (x) V_b`, `a > b`.
    Pair { a: u32, b: u32 },
    /// `U[a]+-`, the extension of `V_a (x) V_a` with the given swap sign.
    Diag { a: u32, sign: Sign },
}

impl WreathLabel {
    pub fn pair(a: u32, b: u32) -> Result<Self, WreathError> {
        if a <= b {
            return Err(WreathError::BadPair { a, b });
        }
        Ok(WreathLabel::Pair { a, b })
    }

    pub fn diag(a: u32, sign: Sign) -> Self {
        WreathLabel::Diag { a, sign }
    }

    pub fn dim(&self) -> u64 {
        match *self {
            WreathLabel::Pair { a, b } => 2 * (a as u64 + 1) * (b as u64 + 1),
            WreathLabel::Diag { a, .. } => (a as u64 + 1) * (a as u64 + 1),
        }
    }

    /// Motivic weight: `a + b` for `U[a,b]`, `2a` for `U[a]+-`.
    pub fn weight(&self) -> u32 {
        match *self {
            WreathLabel::Pair { a, b } => a + b,
            WreathLabel::Diag { a, .. } => 2 * a,
        }
    }

    /// Character on the torus of `SL(2) x SL(2)`.
    pub fn torus_character(&self) -> LaurentBivariate {
        match *self {
            WreathLabel::Pair { a, b } => {
                let (fa, fb) = (sp2_character(a), sp2_character(b));
                let mut chi = LaurentBivariate::from_split_product(&fa, &fb);
                chi = chi + LaurentBivariate::from_split_product(&fb, &fa);
                chi
            }
            WreathLabel::Diag { a, .. } => {
                let fa = sp2_character(a);
                LaurentBivariate::from_split_product(&fa, &fa)
            }
        }
    }

    /// Trace against the swap class, as a Laurent polynomial in one
    /// variable: zero for `U[a,b]`, `+- chi_a(x^2)` for `U[a]+-`.
    pub fn swap_trace(&self) -> LaurentUnivariate {
        match *self {
            WreathLabel::Pair { .. } => LaurentUnivariate::zero(),
            WreathLabel::Diag { a, sign } => {
                let chi = sp2_character(a).substitute_power(2);
                let mut out = LaurentUnivariate::zero();
                for (e, c) in chi.iter() {
                    out.add_term(e, sign.as_i64() * c);
                }
                out
            }
        }
    }
}

impl fmt::Display for WreathLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WreathLabel::Pair { a, b } => write!(f, "U{a},{b}"),
            WreathLabel::Diag { a, sign } => write!(f, "U{a}{sign}"),
        }
    }
}

impl FromStr for WreathLabel {
    type Err = WreathError;

    /// Accepts `"a,b"` or `"Ua,b"` for pairs and `"a+"`, `"a-"`, `"Ua+"`,
    /// `"Ua-"` for diagonal labels.
    fn from_str(s: &str) -> Result<Self, WreathError> {
        let body = s.trim().strip_prefix(['U', 'u']).unwrap_or(s.trim());
        let err = || WreathError::Parse(s.to_string());
        if let Some((a, b)) = body.split_once(',') {
            let a: u32 = a.trim().parse().map_err(|_| err())?;
            let b: u32 = b.trim().parse().map_err(|_| err())?;
            return WreathLabel::pair(a, b);
        }
        if let Some(a) = body.strip_suffix('+') {
            let a: u32 = a.trim().parse().map_err(|_| err())?;
            return Ok(WreathLabel::diag(a, Sign::Plus));
        }
        if let Some(a) = body.strip_suffix('-') {
            let a: u32 = a.trim().parse().map_err(|_| err())?;
            return Ok(WreathLabel::diag(a, Sign::Minus));
        }
        Err(err())
    }
}

/// Multiplicity-free restriction of `W[l,m]` to the wreath subgroup,
/// sorted and deduplicated (the formula never repeats a label).
pub fn branch_sp4_to_wreath(label: Sp4Label) -> Vec<WreathLabel> {
    let (l, m) = (label.l(), label.m());
    let k = l - m;
    let mut out = Vec::new();
    if (l + m) % 2 == 0 {
        let sign = if m % 2 == 0 { Sign::Plus } else { Sign::Minus };
        for i in 0..=m {
            out.push(WreathLabel::diag(k / 2 + i, sign));
        }
    }
    for i in 0..=m {
        // j runs over 0 <= j < (l-m)/2 as a rational inequality.
        for j in 0..k.div_ceil(2) {
            out.push(WreathLabel::Pair {
                a: k + i - j,
                b: i + j,
            });
        }
    }
    out.sort_unstable();
    out
}

/// Restriction of `W[l,m]` with the weight-homogeneous Tate twists
/// `(l + m - wt(U)) / 2` attached to each constituent.
pub fn twisted_pullback(label: Sp4Label) -> Vec<(WreathLabel, u32)> {
    branch_sp4_to_wreath(label)
        .into_iter()
        .map(|u| {
            let gap = label.weight() - u.weight();
            debug_assert_eq!(gap % 2, 0, "branch weight gap must be even");
            (u, gap / 2)
        })
        .collect()
}

/// Restriction of a wreath irreducible to `SL(2) x S_2` (diagonal SL(2)
/// plus the swap): a multiset of signed SL(2)-labels `(c, +-)`.
///
/// * `U[a,b]` restricts to `V_c` for every Clebsch-Gordan constituent `c`
///   of `V_a (x) V_b`, once with each sign.
/// * `U[a]+` restricts to `V_{2(a-k)}` with sign `(-1)^k`, `k = 0..a`;
///   `U[a]-` to the same labels with all signs flipped.
pub fn branch_wreath_to_diagonal(u: WreathLabel) -> Vec<(u32, Sign)> {
    match u {
        WreathLabel::Pair { a, b } => {
            let mut out = Vec::new();
            for c in sp2_tensor(a, b) {
                out.push((c, Sign::Plus));
                out.push((c, Sign::Minus));
            }
            out
        }
        WreathLabel::Diag { a, sign } => (0..=a)
            .map(|k| {
                let s = if k % 2 == 0 { sign } else { sign.flipped() };
                (2 * (a - k), s)
            })
            .collect(),
    }
}

/// Tensor with the standard four-dimensional representation `U[1,0]`,
/// with weight-homogeneous twists:
///
/// ```text
/// U[a,b] (x) U[1,0] = U[a+1,b] + U[a,b+1] + L U[a-1,b] + L U[a,b-1]
/// U[a]+- (x) U[1,0] = U[a+1,a] + L U[a,a-1]
/// ```
///
/// Out-of-range labels are dropped, and a would-be `U[c,c]` splits into
/// `U[c]+ + U[c]-`.
pub fn tensor_standard(u: WreathLabel) -> Vec<(WreathLabel, u32)> {
    let mut out = Vec::new();
    let push = |a: i64, b: i64, twist: u32, out: &mut Vec<(WreathLabel, u32)>| {
        if b < 0 || a < b {
            return;
        }
        let (a, b) = (a as u32, b as u32);
        if a == b {
            out.push((WreathLabel::diag(a, Sign::Plus), twist));
            out.push((WreathLabel::diag(a, Sign::Minus), twist));
        } else {
            out.push((WreathLabel::Pair { a, b }, twist));
        }
    };
    match u {
        WreathLabel::Pair { a, b } => {
            let (a, b) = (a as i64, b as i64);
            push(a + 1, b, 0, &mut out);
            push(a, b + 1, 0, &mut out);
            push(a - 1, b, 1, &mut out);
            push(a, b - 1, 1, &mut out);
        }
        WreathLabel::Diag { a, .. } => {
            let a = a as i64;
            push(a + 1, a, 0, &mut out);
            push(a, a - 1, 1, &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weylchars::{decompose_sp2_character, sp4_character};
    use std::collections::BTreeMap;

    fn lab(l: u32, m: u32) -> Sp4Label {
        Sp4Label::new(l, m).unwrap()
    }

    #[test]
    fn pinned_small_branchings() {
        assert_eq!(
            branch_sp4_to_wreath(lab(1, 0)),
            vec![WreathLabel::pair(1, 0).unwrap()]
        );
        assert_eq!(
            branch_sp4_to_wreath(lab(1, 1)),
            vec![
                WreathLabel::diag(0, Sign::Minus),
                WreathLabel::diag(1, Sign::Minus),
            ]
        );
        assert_eq!(
            branch_sp4_to_wreath(lab(2, 0)),
            vec![
                WreathLabel::pair(2, 0).unwrap(),
                WreathLabel::diag(1, Sign::Plus),
            ]
        );
        assert_eq!(
            branch_sp4_to_wreath(lab(2, 2)),
            vec![
                WreathLabel::diag(0, Sign::Plus),
                WreathLabel::diag(1, Sign::Plus),
                WreathLabel::diag(2, Sign::Plus),
            ]
        );
    }

    #[test]
    fn branching_conserves_dimension() {
        for l in 0..=10u32 {
            for m in 0..=l {
                let label = lab(l, m);
                let total: u64 = branch_sp4_to_wreath(label).iter().map(|u| u.dim()).sum();
                assert_eq!(total, label.dim(), "dimension of W[{l},{m}] restriction");
            }
        }
    }

    #[test]
    fn branching_is_multiplicity_free() {
        for l in 0..=10u32 {
            for m in 0..=l {
                let terms = branch_sp4_to_wreath(lab(l, m));
                let mut dedup = terms.clone();
                dedup.dedup();
                assert_eq!(terms, dedup);
            }
        }
    }

    #[test]
    fn torus_characters_match() {
        for l in 0..=8u32 {
            for m in 0..=l {
                let label = lab(l, m);
                let mut total = LaurentBivariate::zero();
                for u in branch_sp4_to_wreath(label) {
                    total = total + u.torus_character();
                }
                assert_eq!(total, sp4_character(label), "torus character of W[{l},{m}]");
            }
        }
    }

    #[test]
    fn swap_traces_match() {
        for l in 0..=8u32 {
            for m in 0..=l {
                let label = lab(l, m);
                let mut total = LaurentUnivariate::zero();
                for u in branch_sp4_to_wreath(label) {
                    total = total + u.swap_trace();
                }
                let direct = sp4_character(label).specialize_antidiagonal();
                assert_eq!(total, direct, "swap trace of W[{l},{m}]");
            }
        }
    }

    #[test]
    fn twisted_pullback_is_weight_homogeneous() {
        for l in 0..=8u32 {
            for m in 0..=l {
                let label = lab(l, m);
                for (u, t) in twisted_pullback(label) {
                    assert_eq!(u.weight() + 2 * t, label.weight());
                }
            }
        }
    }

    #[test]
    fn diagonal_branching_pinned_examples() {
        assert_eq!(
            branch_wreath_to_diagonal(WreathLabel::diag(2, Sign::Plus)),
            vec![(4, Sign::Plus), (2, Sign::Minus), (0, Sign::Plus)]
        );
        assert_eq!(
            branch_wreath_to_diagonal(WreathLabel::diag(1, Sign::Minus)),
            vec![(2, Sign::Minus), (0, Sign::Plus)]
        );
        assert_eq!(
            branch_wreath_to_diagonal(WreathLabel::pair(1, 0).unwrap()),
            vec![(1, Sign::Plus), (1, Sign::Minus)]
        );
    }

    fn all_labels_up_to(amax: u32) -> Vec<WreathLabel> {
        let mut labels = Vec::new();
        for a in 0..=amax {
            for b in 0..a {
                labels.push(WreathLabel::pair(a, b).unwrap());
            }
            labels.push(WreathLabel::diag(a, Sign::Plus));
            labels.push(WreathLabel::diag(a, Sign::Minus));
        }
        labels
    }

    #[test]
    fn diagonal_branching_conserves_dimension_and_traces() {
        for u in all_labels_up_to(8) {
            let terms = branch_wreath_to_diagonal(u);
            let total: u64 = terms.iter().map(|&(c, _)| c as u64 + 1).sum();
            assert_eq!(total, u.dim(), "dimension under diagonal restriction of {u}");

            // Untwisted: the sum of chi_c must be the torus character on the
            // diagonal (x, x).
            let mut plain = LaurentUnivariate::zero();
            let mut signed = LaurentUnivariate::zero();
            for &(c, sign) in &terms {
                for (e, coeff) in sp2_character(c).iter() {
                    plain.add_term(e, coeff);
                    signed.add_term(e, sign.as_i64() * coeff);
                }
            }
            let mut diagonal = LaurentUnivariate::zero();
            for ((e1, e2), c) in u.torus_character().iter() {
                diagonal.add_term(e1 + e2, c);
            }
            assert_eq!(plain, diagonal, "diagonal character of {u}");
            assert_eq!(signed, u.swap_trace(), "signed diagonal character of {u}");
        }
    }

    #[test]
    fn tensor_standard_commutes_with_pullback() {
        use crate::weylchars::VirtualSp4Class;
        type Bag = BTreeMap<(WreathLabel, u32), i64>;

        let pullback_class = |x: &VirtualSp4Class| -> Bag {
            let mut bag = Bag::new();
            for (label, t, c) in x.iter() {
                assert!(c.is_integer());
                for (u, extra) in twisted_pullback(label) {
                    *bag.entry((u, t + extra)).or_insert(0) += c.to_integer();
                }
            }
            bag.retain(|_, c| *c != 0);
            bag
        };

        let std = VirtualSp4Class::from_label(lab(1, 0));
        for l in 0..=6u32 {
            for m in 0..=l {
                let x = VirtualSp4Class::from_label(lab(l, m));
                let left = pullback_class(&x.tensor(&std));

                let mut right = Bag::new();
                for ((u, t), c) in pullback_class(&x) {
                    for (v, extra) in tensor_standard(u) {
                        *right.entry((v, t + extra)).or_insert(0) += c;
                    }
                }
                right.retain(|_, c| *c != 0);
                assert_eq!(left, right, "wreath tensor square at W[{l},{m}]");
            }
        }
    }

    #[test]
    fn label_parse_display_roundtrip() {
        for s in ["U2,1", "U3+", "U0-", "U10,3"] {
            let u: WreathLabel = s.parse().unwrap();
            assert_eq!(u.to_string(), s);
        }
        assert_eq!(
            "2,1".parse::<WreathLabel>().unwrap(),
            WreathLabel::pair(2, 1).unwrap()
        );
        assert_eq!(
            "4-".parse::<WreathLabel>().unwrap(),
            WreathLabel::diag(4, Sign::Minus)
        );
        assert!("1,2".parse::<WreathLabel>().is_err());
        assert!("x+".parse::<WreathLabel>().is_err());
    }

    #[test]
    fn sl2_decomposition_of_torus_character_is_nonnegative() {
        // Restricting to one SL(2) factor (substitute x2 = 1) must give a
        // genuine representation: nonnegative multiplicities.
        for u in all_labels_up_to(6) {
            let mut restricted = LaurentUnivariate::zero();
            for ((e1, _e2), c) in u.torus_character().iter() {
                restricted.add_term(e1, c);
            }
            let dec = decompose_sp2_character(&restricted).unwrap();
            assert!(dec.values().all(|&c| c > 0), "restriction of {u}");
        }
    }
}
