//! Text rendering of polynomials in the input grammar.

fn is_compound(c: &str) -> bool {
    let body = c.strip_prefix('-').unwrap_or(c);
    body.contains('+') || body.contains(" - ")
}

/// Joins `(coefficient, monomial)` pairs, highest term first, into a sum.
/// An empty monomial denotes the constant term.
pub fn join_terms(terms: impl Iterator<Item = (String, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let (neg, mag) = if !is_compound(&c) && c.starts_with('-') {
            (true, c[1..].to_string())
        } else {
            (false, c)
        };
        let mag = if is_compound(&mag) {
            format!("({mag})")
        } else {
            mag
        };
        let body = match (mag.as_str(), m.is_empty()) {
            (_, true) => mag.clone(),
            ("1", false) => m.clone(),
            (_, false) => format!("{mag}*{m}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub fn monomial(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_and_units() {
        let t = vec![
            ("1".to_string(), "y^3".to_string()),
            ("-1".to_string(), "x^2".to_string()),
            ("-3".to_string(), "y".to_string()),
            ("2".to_string(), String::new()),
        ];
        assert_eq!(join_terms(t.into_iter()), "y^3 - x^2 - 3*y + 2");
    }

    #[test]
    fn compound_coefficients_are_wrapped() {
        let t = vec![("a0 + 1".to_string(), "y".to_string())];
        assert_eq!(join_terms(t.into_iter()), "(a0 + 1)*y");
    }
}
