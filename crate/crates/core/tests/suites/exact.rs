use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use subatomica_core::exact::{expsum_log2_bounds, factor_integer, padic_valuation, Valuation};
use subatomica_core::Rational;

use crate::common::{check, expsum_f64, small_rational, to_f64, Prop, PropResult};

pub const PROPS: &[Prop] = &[
    Prop { name: "rationals form a field", run: field_laws },
    Prop { name: "p-adic valuation is additive", run: valuation_additive },
    Prop { name: "factor_integer round-trips up to 10^5", run: factor_round_trip },
    Prop { name: "log2 bounds tighten with precision and enclose the value", run: log2_bounds_monotone },
];

fn field_laws() -> Result<(), String> {
    check(256, (small_rational(), small_rational(), small_rational()), |(a, b, c)| -> PropResult {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * a.recip()).is_one());
        }
        Ok(())
    })
}

fn valuation_additive() -> Result<(), String> {
    let primes = prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]);
    check(256, (small_rational(), small_rational(), primes), |(q, r, p)| -> PropResult {
        prop_assume!(!q.is_zero() && !r.is_zero());
        let f = |x: &Rational| padic_valuation(x, p).unwrap().finite().unwrap();
        prop_assert_eq!(f(&(&q * &r)), f(&q) + f(&r));
        prop_assert_eq!(padic_valuation(&Rational::zero(), p).unwrap(), Valuation::Infinity);
        Ok(())
    })
}

fn factor_round_trip() -> Result<(), String> {
    for n in 1..=100_000u64 {
        let f = factor_integer(n).map_err(|e| e.to_string())?;
        if f.iter().product::<u64>() != n || f.windows(2).any(|w| w[0] > w[1]) {
            return Err(format!("factor_integer({n}) = {f:?}"));
        }
    }
    Ok(())
}

fn expsum_terms() -> impl Strategy<Value = Vec<(BigInt, Rational)>> {
    prop::collection::vec((1i64..=6, 0i64..=12, 1i64..=6), 1..=3)
        .prop_map(|v| v.into_iter().map(|(c, n, d)| (BigInt::from(c), Rational::new(n.into(), d.into()))).collect())
}

fn log2_bounds_monotone() -> Result<(), String> {
    check(48, (expsum_terms(), 16u32..=64), |(terms, prec)| -> PropResult {
        let lo = expsum_log2_bounds(&terms, prec).unwrap();
        let hi = expsum_log2_bounds(&terms, 2 * prec).unwrap();
        prop_assert!(hi.width() <= lo.width(), "doubling precision widened {lo:?} to {hi:?}");
        // Independent double-precision evaluation; the slack covers its rounding.
        let truth = expsum_f64(&terms).log2();
        for b in [&lo, &hi] {
            prop_assert!(to_f64(&b.lower) <= truth + 1e-9 && truth - 1e-9 <= to_f64(&b.upper), "{truth} outside {b:?}");
        }
        Ok(())
    })
}
