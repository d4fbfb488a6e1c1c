//! Plain-text matrix format.
//!
//! One row per line, entries separated by whitespace. Each entry is an
//! integer (`-3`), a fraction (`5/7`) or a decimal (`0.25`); decimals are
//! converted exactly. Text after `#` is a comment and blank lines are skipped.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{RatMatrix, RatVector, Rational};
use crate::error::{Error, Result};

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.strip_prefix('+').unwrap_or(s).parse().ok()
}

/// Parses an integer, `p/q` fraction or exact decimal.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    let token = token.trim();
    if let Some((p, q)) = token.split_once('/') {
        let numer = parse_integer(p).ok_or_else(|| format!("bad numerator in {token:?}"))?;
        let denom = parse_integer(q).ok_or_else(|| format!("bad denominator in {token:?}"))?;
        if denom.is_zero() {
            return Err(format!("zero denominator in {token:?}"));
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = token.split_once('.') {
        let negative = whole.starts_with('-');
        let unsigned_whole = whole.strip_prefix(['+', '-']).unwrap_or(whole);
        let well_formed = (!unsigned_whole.is_empty() || !frac.is_empty())
            && unsigned_whole.bytes().all(|b| b.is_ascii_digit())
            && frac.bytes().all(|b| b.is_ascii_digit());
        if !well_formed {
            return Err(format!("malformed decimal {token:?}"));
        }
        let digits = format!("{unsigned_whole}{frac}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits
                .parse()
                .map_err(|_| format!("malformed decimal {token:?}"))?
        };
        let denom = num_traits::pow(BigInt::from(10u32), frac.len());
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    parse_integer(token)
        .map(Rational::from_integer)
        .ok_or_else(|| format!("not a rational number: {token:?}"))
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Whitespace-separated entry list.
pub fn parse_vector(text: &str) -> Result<RatVector> {
    let entries = text
        .split_whitespace()
        .map(parse_rational)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|message| Error::Parse { line: 1, message })?;
    Ok(RatVector::new(entries))
}

/// Parses the matrix text format. Errors carry the 1-based source line.
pub fn parse_matrix(text: &str) -> Result<RatMatrix> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut first_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let row = content
            .split_whitespace()
            .map(parse_rational)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|message| Error::Parse { line, message })?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "row has {} entries but line {} has {}",
                        row.len(),
                        first_line,
                        first.len()
                    ),
                });
            }
        } else {
            first_line = line;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no matrix rows found".into(),
        });
    }
    RatMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn parses_all_entry_forms() {
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("3.").unwrap(), int(3));
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("+7").unwrap(), int(7));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        for bad in ["", "1/0", "abc", "1.2.3", ".", "1e5", "--1", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn matrix_with_comments_and_blank_lines() {
        let text = "# header\n1 2/3\n\n  -0.5 4 # trailing\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.get(0, 1), &rat(2, 3));
        assert_eq!(m.get(1, 0), &rat(-1, 2));
    }

    #[test]
    fn ragged_matrix_reports_line() {
        let err = parse_matrix("1 2\n# c\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_matrix("1 2\n3 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_matrix("# nothing\n\n").is_err());
    }

    proptest! {
        #[test]
        fn rational_text_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
            let x = rat(p, q);
            prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }

        #[test]
        fn matrix_text_round_trip(entries in proptest::collection::vec((-50i64..50, 1i64..9), 6)) {
            let rows: Vec<Vec<Rational>> = entries
                .chunks(3)
                .map(|c| c.iter().map(|&(p, q)| rat(p, q)).collect())
                .collect();
            let m = RatMatrix::from_rows(rows).unwrap();
            prop_assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
        }
    }
}
