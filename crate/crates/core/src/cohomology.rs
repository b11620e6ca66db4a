//! Compactly supported Euler characteristics, with local-system
//! coefficients, of the spaces in the tower:
//!
//! * `Y(2)` — the modular curve with full level-2 structure, whose
//!   cohomology carries an action of `S_3 = SL(2, Z/2)` ([`ec_y2`]),
//! * `A_1` — the coarse modular line ([`ec_a1`]),
//! * `E_2` — the space of unordered pairs of distinct elliptic curves with
//!   a common level structure, i.e. `(Y(2) x Y(2) minus diagonal) / S_2`
//!   twisted by a wreath representation ([`ec_e2`]),
//! * the diagonal locus inside it ([`ec_delta`]),
//! * `M` — the bi-elliptic locus in genus 2, via the degree-2 covering by
//!   `E_2`: a Gysin-style exact sequence gives
//!   `e_c(M, W) = sum L^t (e_c(E_2, U) - e_c(Delta, U))` over the twisted
//!   pullback of `W` ([`ec_m_label`], [`ec_m`]).
//!
//! Values live in [`MotiveClass`]; parity (even/odd cohomological degree)
//! is tracked where the symmetric-square step needs it ([`ec_y2`] returns
//! graded pieces) and collapsed to Euler characteristics afterwards.

use crate::motives::{GradedClass, MotiveClass, MotiveError, Sign};
use crate::weylchars::{sp2_tensor, Sp4Label, VirtualSp4Class, WeylError};
use crate::wreath::{twisted_pullback, WreathLabel};
use std::cell::RefCell;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
}

/// The isotypic pieces of an `S_3`-equivariant graded class, indexed by
/// the partitions (3), (2,1), (1,1,1).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsotypicGraded {
    pub s3: GradedClass,
    pub s21: GradedClass,
    pub s111: GradedClass,
}

fn symbol(level: u32, weight: u32) -> MotiveClass {
    MotiveClass::cusp_symbol(level, weight).expect("levels 1, 2, 4 are supported")
}

/// `e_c(Y(2), V_a)` as an `S_3`-equivariant graded class.
///
/// Odd `a` gives zero (the elliptic involution acts by `-1`).  For `a = 0`
/// the curve contributes `L` in even degree to the trivial piece and `1` in
/// odd degree to the standard piece (the three cusps minus the two ends of
/// the `j`-line, equivariantly).  For even `a > 0` everything is in odd
/// degree, built from weight `a + 2` cusp forms:
///
/// ```text
/// triv:     S[1, a+2] + 1
/// standard: S[1, a+2] + S[2, a+2] + 1
/// sign:     S[4, a+2]
/// ```
pub fn ec_y2(a: u32) -> IsotypicGraded {
    if a % 2 == 1 {
        return IsotypicGraded::default();
    }
    if a == 0 {
        return IsotypicGraded {
            s3: GradedClass::pure_even(MotiveClass::tate(1)),
            s21: GradedClass::pure_odd(MotiveClass::one()),
            s111: GradedClass::zero(),
        };
    }
    let k = a + 2;
    IsotypicGraded {
        s3: GradedClass::pure_odd(symbol(1, k) + MotiveClass::one()),
        s21: GradedClass::pure_odd(symbol(1, k) + symbol(2, k) + MotiveClass::one()),
        s111: GradedClass::pure_odd(symbol(4, k)),
    }
}

/// `e_c(A_1, V_c)` for the coarse modular line: `L` for `c = 0`, zero for
/// odd `c`, and `-(S[1, c+2] + 1)` for even `c > 0`.
pub fn ec_a1(c: u32) -> MotiveClass {
    if c % 2 == 1 {
        return MotiveClass::zero();
    }
    if c == 0 {
        return MotiveClass::tate(1);
    }
    -(symbol(1, c + 2) + MotiveClass::one())
}

/// `e_c(E_2, U)` for a wreath representation `U`.
///
/// For `U[a,b]` the two factors decouple and the `S_3`-invariants pair
/// isotypic pieces: `sum_rho e_rho(a) * e_rho(b)`.  For `U[a]+-` the swap
/// identifies the factors and each isotypic piece contributes its signed
/// symmetric square.
pub fn ec_e2(u: WreathLabel) -> Result<MotiveClass, MotiveError> {
    match u {
        WreathLabel::Pair { a, b } => {
            let (ya, yb) = (ec_y2(a), ec_y2(b));
            let mut total = MotiveClass::zero();
            for (pa, pb) in [(&ya.s3, &yb.s3), (&ya.s21, &yb.s21), (&ya.s111, &yb.s111)] {
                total += &pa.euler() * &pb.euler();
            }
            Ok(total)
        }
        WreathLabel::Diag { a, sign } => {
            let y = ec_y2(a);
            let mut total = MotiveClass::zero();
            for part in [&y.s3, &y.s21, &y.s111] {
                total += part.super_invariants(sign)?.euler();
            }
            Ok(total)
        }
    }
}

/// `e_c` of the diagonal locus with coefficients in the restriction of a
/// wreath representation.
///
/// Only swap-invariant constituents with even SL(2)-labels survive on the
/// diagonal.  Each constituent `V_c` of a weight-`w` wreath representation
/// sits in the restriction with a Tate twist `(w - c)/2` (the restriction
/// of a weight-`w` variation must stay homogeneous of weight `w`, and
/// `V_c` only carries weight `c`); concretely
///
/// ```text
/// U[a,b], a,b even:  sum over Clebsch-Gordan c of V_a (x) V_b
///                        of L^((a+b-c)/2) e_c(A_1, V_c)
/// U[a]+,  a even:    sum_{j=0..a/2} L^(a-2j)   e_c(A_1, V_{4j})
/// U[a]-,  a even:    sum_{j=1..a/2} L^(a-2j+1) e_c(A_1, V_{4j-2})
/// ```
///
/// and every other label gives zero.
pub fn ec_delta(u: WreathLabel) -> MotiveClass {
    let mut total = MotiveClass::zero();
    match u {
        WreathLabel::Pair { a, b } if a % 2 == 0 && b % 2 == 0 => {
            for c in sp2_tensor(a, b) {
                total += &MotiveClass::tate((a + b - c) / 2) * &ec_a1(c);
            }
        }
        WreathLabel::Diag { a, sign } if a % 2 == 0 => match sign {
            Sign::Plus => {
                for j in 0..=a / 2 {
                    total += &MotiveClass::tate(a - 2 * j) * &ec_a1(4 * j);
                }
            }
            Sign::Minus => {
                for j in 1..=a / 2 {
                    total += &MotiveClass::tate(a - 2 * j + 1) * &ec_a1(4 * j - 2);
                }
            }
        },
        _ => {}
    }
    total
}

thread_local! {
    static EC_M_CACHE: RefCell<HashMap<Sp4Label, MotiveClass>> = RefCell::new(HashMap::new());
}

/// `e_c` of the pointed-free bi-elliptic locus with coefficients in the
/// irreducible local system `W[l,m]`: the Gysin ledger for the 2:1 cover
///
/// ```text
/// e_c(M, W[l,m]) = sum over the twisted pullback (U, t) of
///                  L^t * (e_c(E_2, U) - e_c(Delta, U))
/// ```
pub fn ec_m_label(label: Sp4Label) -> Result<MotiveClass, MotiveError> {
    if let Some(hit) = EC_M_CACHE.with(|c| c.borrow().get(&label).cloned()) {
        return Ok(hit);
    }
    let mut total = MotiveClass::zero();
    for (u, t) in twisted_pullback(label) {
        let fiber = ec_e2(u)? - ec_delta(u);
        total += &MotiveClass::tate(t) * &fiber;
    }
    EC_M_CACHE.with(|c| c.borrow_mut().insert(label, total.clone()));
    Ok(total)
}

/// Linear extension of [`ec_m_label`] to an integral virtual class, with
/// `L^t W[l,m] -> L^t e_c(M, W[l,m])`.
pub fn ec_m(x: &VirtualSp4Class) -> Result<MotiveClass, CohomologyError> {
    let mut total = MotiveClass::zero();
    for (label, twist, coeff) in x.integer_terms()? {
        let value = &MotiveClass::tate(twist) * &ec_m_label(label)?;
        total += value.scale(coeff);
    }
    Ok(total)
}
