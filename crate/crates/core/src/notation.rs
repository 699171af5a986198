//! Inline text notation: single digits are written bare and values of ten or
//! more are parenthesized, e.g. `4(13)1(10)6(11)725(12)893(17)(16)(15)(14)`.

use thiserror::Error;

use crate::perm::Permutation;

/// Parse failure. Offsets are 0-based byte offsets into the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty permutation text")]
    Empty,
    #[error("malformed token at offset {offset}: {reason}")]
    Malformed { offset: usize, reason: String },
    #[error("value 0 at offset {offset}; values start at 1")]
    Zero { offset: usize },
    #[error("duplicate value {value} at offset {offset}")]
    Duplicate { offset: usize, value: u32 },
    #[error("values are not contiguous: {missing} is missing from 1..={n}")]
    NonContiguous { missing: u32, n: usize },
}

pub fn parse_notation(text: &str) -> Result<Permutation, ParseError> {
    if text.is_empty() {
        return Err(ParseError::Empty);
    }
    let bytes = text.as_bytes();
    let mut values: Vec<(usize, u32)> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        match bytes[i] {
            b'0' => return Err(ParseError::Zero { offset: start }),
            b'1'..=b'9' => {
                values.push((start, (bytes[i] - b'0') as u32));
                i += 1;
            }
            b'(' => {
                let close = text[i..].find(')').map(|o| i + o).ok_or_else(|| {
                    ParseError::Malformed {
                        offset: start,
                        reason: "unclosed '('".into(),
                    }
                })?;
                let digits = &text[i + 1..close];
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ParseError::Malformed {
                        offset: start,
                        reason: format!("expected a decimal integer inside parentheses, found {digits:?}"),
                    });
                }
                if digits.starts_with('0') {
                    return Err(if digits.bytes().all(|b| b == b'0') {
                        ParseError::Zero { offset: start }
                    } else {
                        ParseError::Malformed {
                            offset: start,
                            reason: format!("leading zero in ({digits})"),
                        }
                    });
                }
                let value: u32 = digits.parse().map_err(|_| ParseError::Malformed {
                    offset: start,
                    reason: format!("value ({digits}) is too large"),
                })?;
                if value < 10 {
                    return Err(ParseError::Malformed {
                        offset: start,
                        reason: format!("single-digit value {value} must be written without parentheses"),
                    });
                }
                values.push((start, value));
                i = close + 1;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ParseError::Malformed {
                    offset: start,
                    reason: format!("unexpected character {ch:?}"),
                });
            }
        }
    }

    let n = values.len();
    let mut seen = vec![false; n + 1];
    let mut too_large = None;
    for &(offset, value) in &values {
        if (value as usize) <= n {
            if seen[value as usize] {
                return Err(ParseError::Duplicate { offset, value });
            }
            seen[value as usize] = true;
        } else {
            too_large.get_or_insert((offset, value));
        }
    }
    if too_large.is_some() {
        // A value above n implies a duplicate among the large values or a gap below n.
        let mut large: Vec<(usize, u32)> = values.iter().copied().filter(|&(_, v)| v as usize > n).collect();
        large.sort_by_key(|&(o, _)| o);
        for (idx, &(offset, value)) in large.iter().enumerate() {
            if large[..idx].iter().any(|&(_, v)| v == value) {
                return Err(ParseError::Duplicate { offset, value });
            }
        }
        let missing = (1..=n).find(|&v| !seen[v]).unwrap() as u32;
        return Err(ParseError::NonContiguous { missing, n });
    }
    Ok(Permutation::from_vec_unchecked(
        values.into_iter().map(|(_, v)| v).collect(),
    ))
}

pub fn format_notation(p: &Permutation) -> String {
    let mut out = String::with_capacity(p.len() * 2);
    for &v in p.as_slice() {
        if v <= 9 {
            out.push(char::from(b'0' + v as u8));
        } else {
            out.push('(');
            out.push_str(&v.to_string());
            out.push(')');
        }
    }
    out
}
