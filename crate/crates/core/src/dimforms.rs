//! Dimensions of spaces of cusp forms for the congruence subgroups that
//! appear in this project: SL(2, Z) itself, Gamma_0(2), Gamma_0(4) and the
//! principal congruence subgroup Gamma(2).
//!
//! All four groups have genus zero and no elliptic points of order > 3, so
//! the standard dimension formulas collapse to closed forms in the weight
//! `k` (zero for odd `k`, since all four groups contain `-1`):
//!
//! ```text
//! dim S_k(SL(2,Z))    = floor(k/4) + floor(k/3) - k/2      (even k >= 4)
//! dim S_k(Gamma_0(2)) = floor(k/4) - 1
//! dim S_k(Gamma_0(4)) = k/2 - 2
//! dim S_k(Gamma(2))   = k/2 - 2
//! ```
//!
//! with `dim S_k = 0` for `k < 4`.  New-subspace dimensions at levels 1, 2
//! and 4 follow by Atkin-Lehner sieving, and [`equivariant_cusp_dims`]
//! splits `S_k(Gamma(2))` into isotypic multiplicities under the action of
//! `S_3 = SL(2, Z/2)`.

use thiserror::Error;

/// The congruence subgroups whose cusp-form dimensions we need.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CongruenceGroup {
    /// The full modular group SL(2, Z).
    Full,
    /// Gamma_0(2).
    Gamma0Level2,
    /// Gamma_0(4).
    Gamma0Level4,
    /// The principal congruence subgroup Gamma(2).
    PrincipalLevel2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DimFormsError {
    #[error("no newform dimensions tabulated for level {0} (supported: 1, 2, 4)")]
    UnsupportedLevel(u32),
}

/// `dim S_k` for the given group; zero for odd `k` and for `k < 4`.
pub fn dim_cusp_forms(group: CongruenceGroup, k: u32) -> u64 {
    if k % 2 == 1 || k < 4 {
        return 0;
    }
    let k = k as u64;
    match group {
        CongruenceGroup::Full => k / 4 + k / 3 - k / 2,
        CongruenceGroup::Gamma0Level2 => k / 4 - 1,
        CongruenceGroup::Gamma0Level4 | CongruenceGroup::PrincipalLevel2 => k / 2 - 2,
    }
}

/// Dimension of the new subspace of `S_k(Gamma_0(N))` for `N` in {1, 2, 4}.
///
/// `S_k(Gamma_0(N)) = (+)_{M | N} sigma_0(N/M) . S_k^new(Gamma_0(M))`,
/// so the new dimensions un-telescope as
///
/// ```text
/// new(1) = dim S_k(SL(2,Z))
/// new(2) = dim S_k(Gamma_0(2)) - 2 new(1)
/// new(4) = dim S_k(Gamma_0(4)) - 2 new(2) - 3 new(1)
/// ```
pub fn dim_new(level: u32, k: u32) -> Result<u64, DimFormsError> {
    let full = dim_cusp_forms(CongruenceGroup::Full, k) as i64;
    let level2 = dim_cusp_forms(CongruenceGroup::Gamma0Level2, k) as i64;
    let level4 = dim_cusp_forms(CongruenceGroup::Gamma0Level4, k) as i64;
    let new = match level {
        1 => full,
        2 => level2 - 2 * full,
        4 => level4 - 2 * (level2 - 2 * full) - 3 * full,
        other => return Err(DimFormsError::UnsupportedLevel(other)),
    };
    debug_assert!(new >= 0, "negative new-subspace dimension at ({level},{k})");
    Ok(new as u64)
}

/// Isotypic multiplicities `(m_triv, m_std, m_sgn)` of `S_k(Gamma(2))` as a
/// representation of `S_3 = SL(2, Z/2)`, indexed by the partitions
/// `(3), (2,1), (1,1,1)`.
///
/// The fixed space of a transposition is `S_k(Gamma_0(2))`, and a form of
/// full level generates a trivial summand while each remaining eigensystem
/// of level 2 spans `trivial + standard` among its three translates.
/// Forms seeing the full level-2 structure contribute sign summands, and
/// their count is `dim S_k^new(Gamma_0(4))`.  Hence
///
/// ```text
/// m_triv = dim S_k(SL(2,Z))
/// m_std  = dim S_k(Gamma_0(2)) - dim S_k(SL(2,Z))
/// m_sgn  = dim S_k^new(Gamma_0(4))
/// ```
///
/// so that `m_triv + 2 m_std + m_sgn = dim S_k(Gamma(2))`, which also
/// equals `dim S_k(Gamma_0(4))`; both identities are enforced by tests.
pub fn equivariant_cusp_dims(k: u32) -> (u64, u64, u64) {
    let full = dim_cusp_forms(CongruenceGroup::Full, k);
    let level2 = dim_cusp_forms(CongruenceGroup::Gamma0Level2, k);
    let sgn = dim_new(4, k).expect("level 4 is supported");
    (full, level2 - full, sgn)
}
