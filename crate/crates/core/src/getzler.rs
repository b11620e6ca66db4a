//! Symmetric-function bookkeeping for the pointed spaces.
//!
//! Let `B_n` be the moduli space of n-pointed bi-elliptic genus-2 curves.
//! Its S_n-equivariant compactly supported Euler characteristic is packaged
//! as `sum_lambda e_c(B_n)^lambda s_lambda` over partitions of `n`.  The
//! fibers of `B_n -> B_0` are configuration spaces of distinct points on
//! the universal curve, whose class in the base's representation ring is
//!
//! ```text
//! w = [curve] = 1 - W[1,0] + L
//! ```
//!
//! The whole tower is generated by the plethystic exponential of `w`; in
//! power-sum coordinates the coefficient of `p_mu` is the finite product
//!
//! ```text
//! prod_k binomial(c_k, m_k(mu)),   c_k = (1/k) sum_{d | k} moebius(k/d) psi_d(w)
//! ```
//!
//! where `m_k(mu)` counts parts of size `k`.  Conversion to the Schur basis
//! is the character pairing `a_lambda = sum_mu coeff(p_mu) chi^lambda(mu)`
//! with `chi^lambda` computed by the Murnaghan-Nakayama rule.  The rational
//! intermediate classes always assemble to integral `a_lambda` (checked),
//! and applying `e_c(M, -)` termwise ([`euler_bn`]) produces the motivic
//! answer for each isotypic piece.

use crate::cohomology::{ec_m, CohomologyError};
use crate::weylchars::{Rational, Sp4Label, VirtualSp4Class};
use crate::motives::MotiveClass;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("cannot parse partition {0:?} (expected e.g. \"3,1\" or \"2,1^4\")")]
    Parse(String),
}

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The number being partitioned.
    pub fn n(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    /// `part size -> how often it occurs`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut mult = BTreeMap::new();
        for &p in &self.0 {
            *mult.entry(p).or_insert(0) += 1;
        }
        mult
    }

    /// Dimension of the corresponding irreducible S_n-representation.
    pub fn dimension(&self) -> i64 {
        let ones = Partition(vec![1; self.n() as usize]);
        symmetric_group_character(self, &ones)
    }
}

impl fmt::Display for Partition {
    /// `[3,1]`; the empty partition renders as `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts comma-separated parts with optional exponents: `"3,1"`,
    /// `"2,1^4"`, `"1^6"`.  Surrounding brackets and an empty string (the
    /// partition of zero) are allowed.
    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let err = || PartitionError::Parse(s.to_string());
        let mut parts = Vec::new();
        for token in body.split(',') {
            let token = token.trim();
            let (base, count) = match token.split_once('^') {
                Some((b, e)) => (
                    b.trim().parse::<u32>().map_err(|_| err())?,
                    e.trim().parse::<u32>().map_err(|_| err())?,
                ),
                None => (token.parse::<u32>().map_err(|_| err())?, 1),
            };
            for _ in 0..count {
                parts.push(base);
            }
        }
        Partition::new(parts)
    }
}

/// All partitions of `n` in descending lexicographic order,
/// `[n], [n-1,1], ..., [1^n]`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

thread_local! {
    static MN_CACHE: RefCell<HashMap<(Vec<u32>, Vec<u32>), i64>> = RefCell::new(HashMap::new());
}

/// Irreducible character `chi^lambda(mu)` of the symmetric group, by the
/// Murnaghan-Nakayama rule on beta-sets (first-column hook encodings).
pub fn symmetric_group_character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(
        lambda.n(),
        mu.n(),
        "character arguments must partition the same n"
    );
    mn(lambda.parts(), mu.parts())
}

fn mn(lambda: &[u32], mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&hit) = MN_CACHE.with(|c| c.borrow().get(&key).copied()).as_ref() {
        return hit;
    }
    let r = mu[0] as i64;
    let rest = &mu[1..];
    let len = lambda.len() as i64;
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (len - 1 - i as i64))
        .collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        let target = b - r;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        // Height of the border strip = crossings strictly between the moved
        // beta-numbers.
        let height = beta.iter().filter(|&&x| target < x && x < b).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut new_beta = beta.clone();
        new_beta[i] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let next: Vec<u32> = new_beta
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (len - 1 - j as i64)) as u32)
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn(&next, rest);
    }
    MN_CACHE.with(|c| c.borrow_mut().insert(key, total));
    total
}

fn moebius(n: u32) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The class of the universal curve: `1 - W[1,0] + L`.
pub fn universal_curve_class() -> VirtualSp4Class {
    let w = Sp4Label::new(1, 0).unwrap();
    VirtualSp4Class::one() - VirtualSp4Class::from_label(w) + VirtualSp4Class::lefschetz(1)
}

/// The exponent class `c_k = (1/k) sum_{d|k} moebius(k/d) psi_d(w)` of the
/// plethystic exponential; `c_1` is `w` itself and every higher `c_k` has
/// virtual rank zero.
pub fn power_sum_exponent(k: u32) -> VirtualSp4Class {
    assert!(k >= 1);
    let w = universal_curve_class();
    let mut total = VirtualSp4Class::zero();
    for d in divisors(k) {
        let mu = moebius(k / d);
        if mu != 0 {
            total += w.adams(d).scale(Rational::from_integer(mu));
        }
    }
    total.scale(Rational::new(1, k as i64))
}

/// `binomial(c, m) = c (c - 1) ... (c - m + 1) / m!` in the class ring.
fn class_binomial(c: &VirtualSp4Class, m: u32) -> VirtualSp4Class {
    let mut out = VirtualSp4Class::one();
    for j in 0..m {
        let shifted = c.clone() - VirtualSp4Class::one().scale(Rational::from_integer(j as i64));
        out = out.tensor(&shifted).scale(Rational::new(1, j as i64 + 1));
    }
    out
}

/// Coefficients of the power sums `p_mu`, for all partitions `mu` of `n`,
/// in descending lexicographic order.
pub fn power_sum_coefficients(n: u32) -> Vec<(Partition, VirtualSp4Class)> {
    let exponents: BTreeMap<u32, VirtualSp4Class> =
        (1..=n).map(|k| (k, power_sum_exponent(k))).collect();
    let mut binomials: HashMap<(u32, u32), VirtualSp4Class> = HashMap::new();
    partitions_of(n)
        .into_iter()
        .map(|mu| {
            let mut coeff = VirtualSp4Class::one();
            for (&k, &m) in &mu.multiplicities() {
                let b = binomials
                    .entry((k, m))
                    .or_insert_with(|| class_binomial(&exponents[&k], m));
                coeff = coeff.tensor(b);
            }
            (mu, coeff)
        })
        .collect()
}

/// Coefficients of the Schur functions `s_lambda` for all partitions of
/// `n`, in descending lexicographic order: the equivariant class of the
/// n-point configuration tower before taking Euler characteristics.
///
/// Every coefficient is integral even though the power-sum intermediates
/// are not; [`euler_bn`] relies on that.
pub fn schur_expansion(n: u32) -> Vec<(Partition, VirtualSp4Class)> {
    let pcoeffs = power_sum_coefficients(n);
    partitions_of(n)
        .into_iter()
        .map(|lambda| {
            let mut a = VirtualSp4Class::zero();
            for (mu, coeff) in &pcoeffs {
                let chi = symmetric_group_character(&lambda, mu);
                if chi != 0 {
                    a += coeff.scale(Rational::from_integer(chi));
                }
            }
            (lambda, a)
        })
        .collect()
}

/// The S_n-equivariant compactly supported Euler characteristic of the
/// n-pointed bi-elliptic locus: for each partition `lambda` of `n`, the
/// motivic class paired with `s_lambda`.
pub fn euler_bn(n: u32) -> Result<Vec<(Partition, MotiveClass)>, CohomologyError> {
    schur_expansion(n)
        .into_iter()
        .map(|(lambda, a)| Ok((lambda, ec_m(&a)?)))
        .collect()
}
