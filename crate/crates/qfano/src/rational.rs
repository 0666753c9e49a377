//! Exact rational scalars and small modular helpers.

use num_integer::Integer;
use num_traits::{One, Signed};

/// The scalar type used everywhere: an `i128`-backed rational.
///
/// Magnitudes in this crate stay far below `i128` range: numerators are
/// bounded by cubic polynomials in the Hilbert-series horizon (< 10^4) times
/// degree-grid denominators (< 10^7).
pub type Q = num_rational::Ratio<i128>;

/// Shorthand constructor, `q(p, d) = p/d` reduced.
pub fn q(p: i128, d: i128) -> Q {
    Q::new(p, d)
}

/// Integer as a rational.
pub fn qi(p: i128) -> Q {
    Q::from_integer(p)
}

/// Renders a rational as `"p"` or `"p/d"` in lowest terms.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/d"` into a rational.
pub fn q_from_str(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<i128>().ok().map(qi),
        Some((num, den)) => {
            let p = num.trim().parse::<i128>().ok()?;
            let d = den.trim().parse::<i128>().ok()?;
            if d == 0 {
                None
            } else {
                Some(q(p, d))
            }
        }
    }
}

/// Least non-negative residue of `x` modulo `m > 0`.
pub fn residue(x: i64, m: i64) -> i64 {
    debug_assert!(m > 0);
    x.rem_euclid(m)
}

/// Inverse of `a` modulo `m`, for `gcd(a, m) = 1`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let a = residue(a, m);
    let ext = i64::extended_gcd(&a, &m);
    if ext.gcd != 1 {
        return None;
    }
    Some(residue(ext.x, m))
}

/// Fractional part of `x` in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    let f = x - x.floor();
    debug_assert!(!f.is_negative() && f < Q::one());
    f
}

/// True iff `x` is an integer.
pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Serde adapter rendering rationals as reduced `"p/q"` strings.
///
/// Keeping fractions textual in JSON preserves exactness across export and
/// re-import; reports are byte-identical for identical inputs.
pub mod q_string {
    use super::{q_from_str, q_to_string, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        q_from_str(&raw).ok_or_else(|| D::Error::custom(format!("malformed fraction `{raw}`")))
    }
}

/// Serde adapter for `Option<Q>` as `"p/q"` strings or null.
pub mod opt_q_string {
    use super::{q_from_str, q_to_string, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&q_to_string(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|r| {
            q_from_str(&r).ok_or_else(|| D::Error::custom(format!("malformed fraction `{r}`")))
        })
        .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_string_round_trip() {
        for (s, expect) in [("3/4", q(3, 4)), ("-7", qi(-7)), ("10/4", q(5, 2))] {
            assert_eq!(q_from_str(s), Some(expect));
        }
        assert_eq!(q_to_string(&q(10, 4)), "5/2");
        assert_eq!(q_to_string(&qi(-7)), "-7");
        assert_eq!(q_from_str("1/0"), None);
        assert_eq!(q_from_str("x"), None);
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse(7, 13), Some(2));
        assert_eq!(mod_inverse(4, 2), None);
        for m in 2..50i64 {
            for a in 1..m {
                if num_integer::gcd(a, m) == 1 {
                    let inv = mod_inverse(a, m).unwrap();
                    assert_eq!(residue(a * inv, m), 1);
                }
            }
        }
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac(&q(-7, 2)), q(1, 2));
        assert_eq!(frac(&q(9, 4)), q(1, 4));
        assert_eq!(frac(&qi(3)), qi(0));
    }
}
