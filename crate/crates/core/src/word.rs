//! Element word grammar: whitespace-separated tokens `s<i>` (the `i`-th atom,
//! 1-based) or `D` (Δ), each with an optional `^<integer>` exponent.
//!
//! ```
//! use garside::structures::classical;
//! use garside::word::parse_word;
//!
//! let b3 = classical(3).unwrap();
//! let g = parse_word(&b3, "s1 s2 s1 s2").unwrap();
//! assert_eq!((g.inf(), g.sup()), (1, 2));
//! assert!(parse_word(&b3, "s9").unwrap_err().to_string().contains("unknown atom s9"));
//! ```

use std::sync::Arc;

use crate::element::GroupElement;
use crate::error::{GarsideError, Result};
use crate::structure::{GarsideStructure, Simple};

/// Parses a word into `(simple, exponent)` tokens. Positions in errors are
/// 1-based character columns.
pub fn parse_tokens(structure: &GarsideStructure, text: &str) -> Result<Vec<(Simple, i64)>> {
    let mut out = Vec::new();
    let mut column = 1;
    for chunk in text.split_inclusive(char::is_whitespace) {
        let token = chunk.trim_end();
        let position = column;
        column += chunk.chars().count();
        if token.is_empty() {
            continue;
        }
        let malformed = |reason: &str| GarsideError::MalformedToken {
            token: token.to_string(),
            position,
            reason: reason.to_string(),
        };
        let (base, exponent) = match token.split_once('^') {
            Some((b, e)) => {
                let k = e
                    .parse::<i64>()
                    .map_err(|_| malformed("exponent is not an integer"))?;
                (b, k)
            }
            None => (token, 1),
        };
        let simple = if base == "D" {
            structure.delta()
        } else if let Some(digits) = base.strip_prefix('s') {
            let i = digits
                .parse::<usize>()
                .map_err(|_| malformed("expected s<i> or D"))?;
            structure.atom(i).ok_or_else(|| GarsideError::UnknownAtom {
                token: base.to_string(),
                position,
            })?
        } else {
            return Err(malformed("expected s<i> or D"));
        };
        out.push((simple, exponent));
    }
    Ok(out)
}

pub fn parse_word(structure: &Arc<GarsideStructure>, text: &str) -> Result<GroupElement> {
    let tokens = parse_tokens(structure, text)?;
    GroupElement::normalize(structure, &tokens)
}

/// Left normal form as a word the parser accepts: `D^p` followed by the atom
/// words of the factors.
pub fn format_word(g: &GroupElement) -> String {
    let st = g.structure();
    let mut parts = Vec::new();
    match g.inf() {
        0 => {}
        1 => parts.push("D".to_string()),
        p => parts.push(format!("D^{p}")),
    }
    parts.extend(g.factors().iter().map(|&s| st.simple_word(s)));
    if parts.is_empty() {
        return String::new();
    }
    parts.join(" ")
}

/// Factor words of the left normal form, for reports.
pub fn factor_words(g: &GroupElement) -> Vec<String> {
    g.factors()
        .iter()
        .map(|&s| g.structure().simple_word(s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{classical, dual};

    #[test]
    fn grammar_examples() {
        let b3 = classical(3).unwrap();
        let (s1, s2) = (b3.atom(1).unwrap(), b3.atom(2).unwrap());
        assert_eq!(
            parse_word(&b3, "s1 s2^-1").unwrap(),
            GroupElement::normalize(&b3, &[(s1, 1), (s2, -1)]).unwrap()
        );
        let g = parse_word(&b3, "D^-2 s1").unwrap();
        assert_eq!((g.inf(), g.factors()), (-2, &[s1][..]));
        assert!(parse_word(&b3, "").unwrap().is_identity());
    }

    #[test]
    fn errors_cite_positions() {
        let b3 = classical(3).unwrap();
        let e = parse_word(&b3, "s1  s9").unwrap_err();
        assert_eq!(
            e,
            GarsideError::UnknownAtom {
                token: "s9".into(),
                position: 5
            }
        );
        assert!(e.to_string().contains("unknown atom s9"));
        let e = parse_word(&b3, "s1^x").unwrap_err();
        assert!(matches!(
            e,
            GarsideError::MalformedToken { position: 1, .. }
        ));
        assert!(parse_word(&b3, "t1").is_err());
        assert!(parse_word(&b3, "s0").is_err());
    }

    #[test]
    fn format_round_trips() {
        for st in [classical(4).unwrap(), dual(4).unwrap()] {
            for text in ["s1 s2^-1 D^2", "s3 s1 s2 s2", "D^-1", ""] {
                let g = parse_word(&st, text).unwrap();
                assert_eq!(parse_word(&st, &format_word(&g)).unwrap(), g);
            }
        }
    }
}
