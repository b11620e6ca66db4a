//! Self-check suites behind `bielliptic verify`: the same oracle
//! comparisons the test suite pins, parameterized by the bound flags so
//! they can be pushed past their defaults from the command line.

use bielliptic::cohomology::{ec_delta, ec_e2, ec_y2};
use bielliptic::dimforms::{dim_cusp_forms, equivariant_cusp_dims, CongruenceGroup};
use bielliptic::getzler::{euler_bn, partitions_of, schur_expansion};
use bielliptic::motives::{MotiveClass, Sign};
use bielliptic::sl2::{
    enumerate_sl2, find_eps_conjugator, mat_det, mat_inv_sl2, mat_mul, verify_dual_property,
};
use bielliptic::weylchars::{
    sp2_character, sp4_character, LaurentBivariate, LaurentUnivariate, Rational, Sp4Label,
    VirtualSp4Class,
};
use bielliptic::wreath::{branch_sp4_to_wreath, branch_wreath_to_diagonal, WreathLabel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SUITE_NAMES: &[&str] = &[
    "branch",
    "diag",
    "dims",
    "gysin",
    "integrality",
    "lambda",
    "sl2",
];

#[derive(Debug, Clone, Copy)]
pub struct VerifyBounds {
    pub max_weight: u32,
    pub max_d: u64,
    pub max_n: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub checks: u64,
    pub detail: String,
}

/// Accumulates individual comparisons; a suite passes when none failed.
struct Tally {
    checks: u64,
    failures: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(context());
            }
        }
    }

    fn outcome(self, name: &'static str, summary: String) -> SuiteOutcome {
        let passed = self.failures == 0;
        let detail = match self.first_failure {
            None => summary,
            Some(first) => format!(
                "{} of {} checks failed; first: {first}",
                self.failures, self.checks
            ),
        };
        SuiteOutcome {
            name,
            passed,
            checks: self.checks,
            detail,
        }
    }
}

pub fn run_suite(name: &str, bounds: &VerifyBounds) -> Option<SuiteOutcome> {
    match name {
        "branch" => Some(branch_suite(bounds)),
        "diag" => Some(diag_suite(bounds)),
        "dims" => Some(dims_suite()),
        "gysin" => Some(gysin_suite()),
        "integrality" => Some(integrality_suite(bounds)),
        "lambda" => Some(lambda_suite()),
        "sl2" => Some(sl2_suite(bounds)),
        _ => None,
    }
}

fn lab(l: u32, m: u32) -> Sp4Label {
    Sp4Label::new(l, m).expect("ordered label")
}

/// Restriction to the wreath subgroup against three independent oracles:
/// the restricted torus character, the trace against the swap class, and
/// dimension conservation; plus the closed-form Pieri rule against the
/// recursive tensor route.
fn branch_suite(bounds: &VerifyBounds) -> SuiteOutcome {
    let mut t = Tally::new();
    let cap = bounds.max_weight;
    for l in 0..=cap {
        for m in 0..=l.min(cap - l) {
            let label = lab(l, m);
            let mut torus = LaurentBivariate::zero();
            let mut swap = LaurentUnivariate::zero();
            for u in branch_sp4_to_wreath(label) {
                torus = torus + u.torus_character();
                swap = swap + u.swap_trace();
            }
            t.check(torus == sp4_character(label), || {
                format!("torus character of {label}")
            });
            t.check(
                swap == sp4_character(label).specialize_antidiagonal(),
                || format!("swap trace of {label}"),
            );
        }
    }
    for l in 0..=cap {
        for m in 0..=l {
            let label = lab(l, m);
            let total: u64 = branch_sp4_to_wreath(label).iter().map(|u| u.dim()).sum();
            t.check(total == label.dim(), || format!("dimension of {label}"));
        }
    }
    let pieri_cap = cap.min(10);
    let std = VirtualSp4Class::from_label(lab(1, 0));
    for l in 0..=pieri_cap {
        for m in 0..=l {
            let x = VirtualSp4Class::from_label(lab(l, m));
            t.check(x.pieri() == x.tensor(&std), || {
                format!("Pieri rule at W[{l},{m}]")
            });
        }
    }
    t.outcome(
        "branch",
        format!("character, dimension and Pieri oracles up to weight {cap}"),
    )
}

/// Diagonal restriction of every wreath system against its dimension,
/// its restricted character, and its signed (swap-trace) character.
fn diag_suite(bounds: &VerifyBounds) -> SuiteOutcome {
    let mut t = Tally::new();
    let mut labels = Vec::new();
    for a in 0..=bounds.max_weight {
        for b in 0..a {
            labels.push(WreathLabel::pair(a, b).expect("ordered pair"));
        }
        labels.push(WreathLabel::diag(a, Sign::Plus));
        labels.push(WreathLabel::diag(a, Sign::Minus));
    }
    for u in labels {
        let terms = branch_wreath_to_diagonal(u);
        let total: u64 = terms.iter().map(|&(c, _)| c as u64 + 1).sum();
        t.check(total == u.dim(), || format!("dimension of {u} restriction"));

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
        t.check(plain == diagonal, || format!("diagonal character of {u}"));
        t.check(signed == u.swap_trace(), || {
            format!("signed diagonal character of {u}")
        });
    }
    t.outcome(
        "diag",
        format!(
            "diagonal restriction oracles up to weight {}",
            bounds.max_weight
        ),
    )
}

/// Isotypic cusp-form dimensions: the three multiplicities weighted by
/// the degrees of the symmetric-group representations must recover the
/// full space, and the two descriptions of the level must agree.
fn dims_suite() -> SuiteOutcome {
    let mut t = Tally::new();
    for k in (0..=40u32).step_by(2) {
        let (m3, m21, m111) = equivariant_cusp_dims(k);
        let gamma2 = dim_cusp_forms(CongruenceGroup::PrincipalLevel2, k);
        t.check(
            m3 + 2 * m21 + m111 == dim_cusp_forms(CongruenceGroup::Gamma0Level4, k),
            || format!("isotypic sum at weight {k}"),
        );
        t.check(
            dim_cusp_forms(CongruenceGroup::Gamma0Level4, k) == gamma2,
            || format!("level interchange at weight {k}"),
        );
    }
    t.check(equivariant_cusp_dims(12) == (1, 1, 1), || {
        "isotypic dimensions at weight 12".to_string()
    });
    t.check(equivariant_cusp_dims(8) == (0, 1, 0), || {
        "isotypic dimensions at weight 8".to_string()
    });
    t.outcome("dims", "isotypic dimension oracles for weights <= 40".into())
}

/// The unpointed locus and the level-2 curve: fixed small values that pin
/// the open/closed scissor relation.
fn gysin_suite() -> SuiteOutcome {
    let mut t = Tally::new();
    let u0 = WreathLabel::diag(0, Sign::Plus);
    t.check(
        ec_e2(u0).map(|x| x == MotiveClass::tate(2)).unwrap_or(false),
        || "surface class of the trivial system".to_string(),
    );
    t.check(ec_delta(u0) == MotiveClass::tate(1), || {
        "diagonal class of the trivial system".to_string()
    });
    let base = euler_bn(0);
    t.check(
        base.map(|rows| rows[0].1 == MotiveClass::tate_polynomial(&[(2, 1), (1, -1)]))
            .unwrap_or(false),
        || "unpointed locus".to_string(),
    );
    let curve = ec_y2(0);
    t.check(curve.s3.euler() == MotiveClass::tate(1), || {
        "trivial isotypic piece of the curve".to_string()
    });
    t.check(curve.s21.euler() == MotiveClass::integer(-1), || {
        "standard isotypic piece of the curve".to_string()
    });
    t.check(curve.s111.euler().is_zero(), || {
        "sign isotypic piece of the curve".to_string()
    });
    t.outcome("gysin", "open/closed scissor gate".into())
}

/// Every Schur coefficient of the pointed Euler characteristics must be an
/// honest (integral) class of the right rank.
fn integrality_suite(bounds: &VerifyBounds) -> SuiteOutcome {
    let mut t = Tally::new();
    let cap = bounds.max_n;
    for n in 0..=cap {
        let rows = schur_expansion(n);
        t.check(rows.len() == partitions_of(n).len(), || {
            format!("row count at n = {n}")
        });
        let expected_rank = (n as i64 + 1) * if n % 2 == 0 { 1 } else { -1 };
        for (lambda, a) in &rows {
            t.check(a.is_integral(), || format!("integrality of a_{lambda} at n = {n}"));
            t.check(
                a.rank() == Rational::from_integer(lambda.dimension() * expected_rank),
                || format!("rank of a_{lambda} at n = {n}"),
            );
        }
    }
    t.outcome(
        "integrality",
        format!("Schur coefficients integral with the expected ranks for n <= {cap}"),
    )
}

/// A random effective motive: a few monomials in L and cusp symbols with
/// small positive coefficients.  Alternating-square symbols are avoided so
/// that second Adams operations stay defined.
fn random_effective(rng: &mut ChaCha8Rng) -> MotiveClass {
    let mut x = MotiveClass::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let coeff = rng.gen_range(1..=3i64);
        let tate = rng.gen_range(0..=3u32);
        let mut term = MotiveClass::tate(tate).scale(coeff);
        if rng.gen_bool(0.6) {
            let level = [1u32, 2, 4][rng.gen_range(0..3)];
            let weight = 2 * rng.gen_range(2..=12u32);
            term = &term * &MotiveClass::cusp_symbol(level, weight).expect("supported level");
        }
        x += term;
    }
    x
}

/// Lambda-ring laws on seeded random effective classes: the square splits,
/// the ranks of the split pieces are binomial, the addition law for
/// lambda^2 holds, and psi_2 is a ring homomorphism.
fn lambda_suite() -> SuiteOutcome {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b1e1);
    for trial in 0..100 {
        let x = random_effective(&mut rng);
        let y = random_effective(&mut rng);

        let l2 = x.lambda2().expect("no alternating squares present");
        let s2 = x.sym2().expect("no alternating squares present");
        t.check(l2.clone() + s2.clone() == &x * &x, || {
            format!("square split, trial {trial}")
        });

        let r = x.rank();
        t.check(l2.rank() == r * (r - 1) / 2, || {
            format!("lambda^2 rank, trial {trial}")
        });
        t.check(s2.rank() == r * (r + 1) / 2, || {
            format!("sym^2 rank, trial {trial}")
        });

        let sum = x.clone() + y.clone();
        t.check(
            sum.lambda2().expect("sum stays expressible")
                == x.lambda2().unwrap() + &x * &y + y.lambda2().unwrap(),
            || format!("lambda^2 addition law, trial {trial}"),
        );

        let product = &x * &y;
        t.check(
            product.psi2().expect("product stays expressible")
                == &x.psi2().unwrap() * &y.psi2().unwrap(),
            || format!("psi_2 multiplicativity, trial {trial}"),
        );
        t.check(
            sum.psi2().unwrap() == x.psi2().unwrap() + y.psi2().unwrap(),
            || format!("psi_2 additivity, trial {trial}"),
        );
    }
    t.outcome("lambda", "lambda-ring laws on 100 seeded random classes".into())
}

/// Existence of an anti-diagonal conjugator carrying every element to its
/// inverse, re-derived element by element on top of the summary report.
fn sl2_suite(bounds: &VerifyBounds) -> SuiteOutcome {
    let mut t = Tally::new();
    let mut elements = 0u64;
    for d in 2..=bounds.max_d {
        let report = verify_dual_property(d);
        t.check(report.passed(), || format!("duality report at d = {d}: {report}"));
        elements += report.group_order;
        for g in enumerate_sl2(d) {
            match find_eps_conjugator(d, g) {
                None => t.check(false, || format!("no conjugator for {g:?} mod {d}")),
                Some(eps) => {
                    t.check(mat_det(d, eps) == d - 1, || {
                        format!("determinant of the conjugator of {g:?} mod {d}")
                    });
                    t.check(
                        mat_mul(d, eps, g) == mat_mul(d, mat_inv_sl2(d, g), eps),
                        || format!("conjugation property for {g:?} mod {d}"),
                    );
                }
            }
        }
    }
    t.outcome(
        "sl2",
        format!(
            "{elements} elements conjugated to their inverses for d <= {}",
            bounds.max_d
        ),
    )
}
