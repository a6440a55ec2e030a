//! Property tags and naive, definition-level predicates over symbol strings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "sqf")]
    SquareFree,
    #[serde(rename = "sqr")]
    Square,
    #[serde(rename = "per")]
    Periodic,
    #[serde(rename = "pal")]
    Palindrome,
    #[serde(rename = "lyn")]
    Lyndon,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::SquareFree,
        Property::Square,
        Property::Periodic,
        Property::Palindrome,
        Property::Lyndon,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Property::SquareFree => "sqf",
            Property::Square => "sqr",
            Property::Periodic => "per",
            Property::Palindrome => "pal",
            Property::Lyndon => "lyn",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown property {0:?} (expected one of sqf, sqr, per, pal, lyn)")]
pub struct UnknownProperty(pub String);

impl FromStr for Property {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "sqf" | "square-free" => Property::SquareFree,
            "sqr" | "square" => Property::Square,
            "per" | "periodic" => Property::Periodic,
            "pal" | "palindrome" => Property::Palindrome,
            "lyn" | "lyndon" => Property::Lyndon,
            _ => return Err(UnknownProperty(s.to_string())),
        })
    }
}

/// Border array: `border[i]` is the longest proper border of `s[..=i]`.
fn borders<T: Eq>(s: &[T]) -> Vec<usize> {
    let mut border = vec![0usize; s.len()];
    for i in 1..s.len() {
        let mut b = border[i - 1];
        while b > 0 && s[i] != s[b] {
            b = border[b - 1];
        }
        if s[i] == s[b] {
            b += 1;
        }
        border[i] = b;
    }
    border
}

/// Smallest `p >= 1` with `s[i] == s[i + p]` for all valid `i`.
pub fn smallest_period<T: Eq>(s: &[T]) -> usize {
    assert!(!s.is_empty(), "period of empty string");
    s.len() - borders(s)[s.len() - 1]
}

pub fn is_square<T: Eq>(s: &[T]) -> bool {
    !s.is_empty() && s.len().is_multiple_of(2) && s[..s.len() / 2] == s[s.len() / 2..]
}

pub fn is_periodic<T: Eq>(s: &[T]) -> bool {
    !s.is_empty() && 2 * smallest_period(s) <= s.len()
}

pub fn is_palindrome<T: Eq>(s: &[T]) -> bool {
    !s.is_empty() && s.iter().eq(s.iter().rev())
}

pub fn is_lyndon<T: Ord>(s: &[T]) -> bool {
    !s.is_empty() && (1..s.len()).all(|i| s < &s[i..])
}

/// No substring is a square; equivalently no substring is periodic.
pub fn is_square_free<T: Eq>(s: &[T]) -> bool {
    if s.is_empty() {
        return false;
    }
    for start in 0..s.len() {
        let border = borders(&s[start..]);
        for (i, &b) in border.iter().enumerate() {
            let len = i + 1;
            if 2 * (len - b) <= len {
                return false;
            }
        }
    }
    true
}

/// Naive evaluation of `property` on `s`. The empty string satisfies nothing.
pub fn check_property<T: Ord>(property: Property, s: &[T]) -> bool {
    match property {
        Property::SquareFree => is_square_free(s),
        Property::Square => is_square(s),
        Property::Periodic => is_periodic(s),
        Property::Palindrome => is_palindrome(s),
        Property::Lyndon => is_lyndon(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn period_by_scan(s: &[u8]) -> usize {
        (1..=s.len())
            .find(|&p| (0..s.len() - p).all(|i| s[i] == s[i + p]))
            .unwrap()
    }

    fn is_period(s: &[u8], p: usize) -> bool {
        (0..s.len().saturating_sub(p)).all(|i| s[i] == s[i + p])
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn periods() {
        assert_eq!(smallest_period(b"abab"), 2);
        assert_eq!(smallest_period(b"aaa"), 1);
        assert_eq!(smallest_period(b"abc"), 3);
    }

    #[test]
    fn property_examples() {
        assert!(check_property(Property::Square, b"abab"));
        assert!(check_property(Property::Periodic, b"ababa"));
        assert!(check_property(Property::Lyndon, b"aab"));
        assert!(!check_property(Property::Lyndon, b"aba"));
        assert!(check_property(Property::Palindrome, b"aba"));
        assert!(check_property(Property::SquareFree, b"abcab"));
        assert!(!check_property(Property::SquareFree, b"abcbcd"));
        for p in Property::ALL {
            assert!(!check_property::<u8>(p, b""));
        }
    }

    #[test]
    fn tags_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.tag().parse::<Property>().unwrap(), p);
        }
        assert!("xyz".parse::<Property>().is_err());
    }

    fn square_free_by_halves(s: &[u8]) -> bool {
        for i in 0..s.len() {
            for h in 1..=(s.len() - i) / 2 {
                if s[i..i + h] == s[i + h..i + 2 * h] {
                    return false;
                }
            }
        }
        !s.is_empty()
    }

    proptest! {
        #[test]
        fn period_matches_scan(s in proptest::collection::vec(0u8..3, 1..40)) {
            prop_assert_eq!(smallest_period(&s), period_by_scan(&s));
        }

        #[test]
        fn square_free_matches_halves(s in proptest::collection::vec(0u8..3, 1..25)) {
            prop_assert_eq!(is_square_free(&s), square_free_by_halves(&s));
        }

        #[test]
        fn weak_periodicity_lemma(unit in proptest::collection::vec(0u8..2, 1..6), reps in 2usize..8, extra in 0usize..5) {
            let s: Vec<u8> = unit.iter().copied().cycle().take(unit.len() * reps + extra).collect();
            let periods: Vec<usize> = (1..=s.len()).filter(|&p| is_period(&s, p)).collect();
            for &p in &periods {
                for &q in &periods {
                    if p + q <= s.len() {
                        prop_assert!(is_period(&s, gcd(p, q)));
                    }
                }
            }
        }
    }
}
