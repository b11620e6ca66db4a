//! Randomized structural invariants. Each property here is a law the rest
//! of the library leans on implicitly; the deterministic pinned values live
//! next to the code, so these runs stay small.

use bielliptic::cohomology::{ec_delta, ec_m};
use bielliptic::getzler::partitions_of;
use bielliptic::motives::MotiveClass;
use bielliptic::weylchars::{Rational, Sp4Label, VirtualSp4Class};
use bielliptic::wreath::{twisted_pullback, WreathLabel};
use bielliptic::Partition;
use proptest::prelude::*;

fn small_label() -> impl Strategy<Value = Sp4Label> {
    (0u32..=6, 0u32..=6).prop_map(|(l, m)| {
        let (l, m) = if l >= m { (l, m) } else { (m, l) };
        Sp4Label::new(l, m).expect("l >= m by construction")
    })
}

fn effective_motive() -> impl Strategy<Value = MotiveClass> {
    let monomial = (0u32..=3, 1i64..=3, prop_oneof![Just(None), Just(Some(2u32)), Just(Some(4))])
        .prop_map(|(t, c, level)| {
            let mut term = MotiveClass::tate(t).scale(c);
            if let Some(level) = level {
                term = &term * &MotiveClass::cusp_symbol(level, 8).unwrap();
            }
            term
        });
    proptest::collection::vec(monomial, 1..=3)
        .prop_map(|terms| terms.into_iter().fold(MotiveClass::zero(), |acc, t| acc + t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_commutes_and_rank_is_multiplicative(a in small_label(), b in small_label()) {
        let (x, y) = (VirtualSp4Class::from_label(a), VirtualSp4Class::from_label(b));
        let xy = x.tensor(&y);
        prop_assert_eq!(&xy, &y.tensor(&x));
        prop_assert_eq!(xy.rank(), x.rank() * y.rank());
    }

    #[test]
    fn adams_preserves_rank(label in small_label(), d in 1u32..=4) {
        let x = VirtualSp4Class::from_label(label);
        prop_assert_eq!(x.adams(d).rank(), x.rank());
    }

    #[test]
    fn pullback_is_homogeneous_and_conserves_dimension(label in small_label()) {
        let mut total = 0u64;
        for (u, t) in twisted_pullback(label) {
            prop_assert_eq!(u.weight() + 2 * t, label.weight());
            total += u.dim();
        }
        prop_assert_eq!(total, label.dim());
    }

    #[test]
    fn diagonal_restriction_stays_within_the_system_weight(a in 1u32..=6, b in 0u32..=5) {
        prop_assume!(a > b);
        let u = WreathLabel::pair(a, b).unwrap();
        let value = ec_delta(u);
        // Homogeneity: every term of L^((a+b-c)/2) e_c(A_1, V_c) has motivic
        // weight at most a+b (the cusp symbol of V_c tops out at weight c+1,
        // twisted up by a+b-c, and the Tate part stays strictly below that).
        prop_assert!(value.is_zero() || value.max_weight() <= u.weight() + 1);
    }

    #[test]
    fn bielliptic_euler_class_is_linear(
        a in small_label(),
        b in small_label(),
        ta in 0u32..=2,
        tb in 0u32..=2,
        ca in -3i64..=3,
        cb in -3i64..=3,
    ) {
        let mut x = VirtualSp4Class::zero();
        x.add_term(a, ta, Rational::from_integer(ca));
        let mut y = VirtualSp4Class::zero();
        y.add_term(b, tb, Rational::from_integer(cb));
        let mut sum = x.clone();
        sum += y.clone();
        let combined = ec_m(&sum).unwrap();
        let separate = ec_m(&x).unwrap() + ec_m(&y).unwrap();
        prop_assert_eq!(combined, separate);
    }

    #[test]
    fn squares_split_into_symmetric_and_alternating(x in effective_motive()) {
        let square = &x * &x;
        let (alt, sym) = (x.lambda2().unwrap(), x.sym2().unwrap());
        prop_assert_eq!(alt.rank() + sym.rank(), x.rank() * x.rank());
        prop_assert_eq!(alt + sym, square);
    }

    #[test]
    fn rank_is_a_ring_homomorphism(x in effective_motive(), y in effective_motive()) {
        prop_assert_eq!((&x * &y).rank(), x.rank() * y.rank());
        prop_assert_eq!((x.clone() + y.clone()).rank(), x.rank() + y.rank());
        prop_assert_eq!((x.clone() - y.clone()).rank(), x.rank() - y.rank());
    }

    #[test]
    fn partition_text_roundtrips(parts in proptest::collection::vec(1u32..=9, 0..=6)) {
        let p = Partition::new(parts).unwrap();
        let rendered = p.to_string();
        prop_assert_eq!(rendered.parse::<Partition>().unwrap(), p);
    }
}

#[test]
fn character_dimensions_square_sum_to_group_order() {
    let mut factorial = 1i64;
    for n in 1..=7u32 {
        factorial *= i64::from(n);
        let total: i64 = partitions_of(n)
            .into_iter()
            .map(|p| {
                let d = p.dimension();
                d * d
            })
            .sum();
        assert_eq!(total, factorial, "sum of squared dimensions at n = {n}");
    }
}

#[test]
fn virtual_class_scaling_distributes() {
    let x = VirtualSp4Class::from_label(Sp4Label::new(2, 1).unwrap());
    let doubled = x.scale(Rational::from_integer(2));
    let mut sum = x.clone();
    sum += x;
    assert_eq!(doubled, sum);
}
