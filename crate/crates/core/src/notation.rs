//! Compact text notations used by the embedded tables.
//!
//! * Ray notation: `(11000; 0111111000; 0001111110; 00011; 0)` lists the
//!   entropies one digit per coordinate, grouped by cardinality.
//! * Inequality expressions: `2 S_ABC + S_ABD - S_AB - 2 S_ABCD >= 0`,
//!   where letter `A` is party 1, `B` party 2, and so on.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};
use crate::subsystem::{check_parties, Subsystem};
use crate::vectors::{check_dense, EntropyVector, Inequality};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses ray notation for `n` parties.
pub fn parse_ray_notation(n: usize, text: &str) -> Result<EntropyVector> {
    check_dense(n)?;
    let body = text.trim();
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .unwrap_or(body);
    let groups: Vec<&str> = body.split(';').map(str::trim).collect();
    if groups.len() != n {
        return Err(parse_err(format!(
            "expected {n} cardinality groups, found {}",
            groups.len()
        )));
    }
    let mut entries = Vec::new();
    for (k, g) in groups.iter().enumerate() {
        let want = binomial(n as u64, k as u64 + 1);
        if BigInt::from(g.chars().count()) != want {
            return Err(parse_err(format!(
                "group {} should have {want} digits, found {:?}",
                k + 1,
                g
            )));
        }
        for c in g.chars() {
            let d = c
                .to_digit(10)
                .ok_or_else(|| parse_err(format!("non-digit {c:?} in group {}", k + 1)))?;
            entries.push(Rational::from_integer(d.into()));
        }
    }
    EntropyVector::new(n, entries)
}

/// Parses a linear entropy inequality written with party letters.
pub fn parse_inequality_expr(n: usize, text: &str) -> Result<Inequality> {
    check_parties(n)?;
    let mut q = Inequality::zeros(n)?;
    let body = match text.split_once(">=") {
        Some((lhs, rhs)) => {
            if rhs.trim() != "0" {
                return Err(parse_err("right-hand side must be 0"));
            }
            lhs
        }
        None => text,
    };
    let chars: Vec<char> = body.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(parse_err("empty expression"));
    }
    let mut i = 0;
    let mut first = true;
    while i < chars.len() {
        let mut sign = 1i64;
        match chars[i] {
            '+' => i += 1,
            '-' => {
                sign = -1;
                i += 1
            }
            _ if first => {}
            c => return Err(parse_err(format!("expected '+' or '-', found {c:?}"))),
        }
        first = false;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coef: BigInt = if i > start {
            let digits: String = chars[start..i].iter().collect();
            digits.parse().map_err(|_| parse_err("bad coefficient"))?
        } else {
            BigInt::from(1)
        };
        if i < chars.len() && chars[i] == '*' {
            i += 1;
        }
        if chars.get(i) != Some(&'S') || chars.get(i + 1) != Some(&'_') {
            return Err(parse_err(format!("expected S_ at position {i}")));
        }
        i += 2;
        let braced = chars.get(i) == Some(&'{');
        if braced {
            i += 1;
        }
        let mut members = Vec::new();
        while i < chars.len() && chars[i].is_ascii_uppercase() {
            let p = (chars[i] as u8 - b'A') as usize + 1;
            if members.contains(&p) {
                return Err(parse_err(format!("repeated party {}", chars[i])));
            }
            members.push(p);
            i += 1;
        }
        if braced {
            if chars.get(i) != Some(&'}') {
                return Err(parse_err("unclosed brace"));
            }
            i += 1;
        }
        if members.is_empty() {
            return Err(parse_err("empty subsystem"));
        }
        let s = Subsystem::new(n, &members)?;
        q.add_term(&s, &Rational::from_integer(coef * sign))?;
    }
    Ok(q)
}

/// Letters for a subsystem, e.g. `ABD`.
pub fn letters(s: &Subsystem) -> String {
    s.members()
        .iter()
        .map(|&p| {
            if p <= 26 {
                (b'A' + p as u8 - 1) as char
            } else {
                '?'
            }
        })
        .collect()
}
