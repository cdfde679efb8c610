//! Text form of elements and operators.
//!
//! ```text
//! elem    := "0" | term (" + " term)*
//! term    := [ "S[" b "," b "," b "]*" ] "(" poly ")" [ "/D[" n "," n "," n "]" ]
//! poly    := mono (("+" | "-") mono)*      in the variable z
//! mono    := [ "-" ] rational [ "*z" [ "^" n ] ] | [ "-" ] "z" [ "^" n ]
//! op      := "0" | line ("\n" line)*
//! line    := "D^" n ": " elem              in decreasing order of n
//! ```
//!
//! `S[b1,b2,b3]` is `Π (z - e_i)^{b_i/2}` and `D[k1,k2,k3]` is
//! `Π (z - e_i)^{k_i}`. Terms appear in increasing `mu = b1 + 2 b2 + 4 b3`.

use rug::Rational;

use super::diffop::DiffOp;
use super::elem::{Elem, Field, RatZ};
use crate::algebra::Poly;
use crate::{Error, Result};

pub fn format_elem(e: &Elem) -> String {
    let terms: Vec<String> = e
        .terms()
        .map(|(mu, r)| {
            let mut s = String::new();
            if mu != 0 {
                s.push_str(&format!(
                    "S[{},{},{}]*",
                    mu & 1,
                    (mu >> 1) & 1,
                    (mu >> 2) & 1
                ));
            }
            s.push('(');
            s.push_str(&r.num.display("z"));
            s.push(')');
            if r.pole != [0; 3] {
                s.push_str(&format!("/D[{},{},{}]", r.pole[0], r.pole[1], r.pole[2]));
            }
            s
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn format_op(op: &DiffOp) -> String {
    let lines: Vec<String> = (0..op.coeffs().len())
        .rev()
        .filter(|&k| !op.coeff(k).is_zero())
        .map(|k| format!("D^{k}: {}", format_elem(op.coeff(k))))
        .collect();
    if lines.is_empty() {
        "0".into()
    } else {
        lines.join("\n")
    }
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Splits on `sep` outside parentheses and brackets.
fn split_top(s: &str, sep: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c == '(' || c == '[' {
            depth += 1;
        } else if c == ')' || c == ']' {
            depth -= 1;
        }
        if depth == 0 && s[i..].starts_with(sep) {
            out.push(std::mem::take(&mut cur));
            i += sep.len();
            continue;
        }
        cur.push(c);
        i += 1;
    }
    out.push(cur);
    out
}

fn parse_triple(s: &str) -> Result<[u32; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(perr(format!("expected three entries in [{s}]")));
    }
    let mut t = [0u32; 3];
    for (k, p) in parts.iter().enumerate() {
        t[k] = p.parse().map_err(|_| perr(format!("bad integer {p:?}")))?;
    }
    Ok(t)
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| perr(format!("bad rational {s:?}")))
}

pub fn parse_poly(s: &str) -> Result<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(perr("empty polynomial"));
    }
    // break into signed monomials
    let mut monos: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, c) in s.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 && !cur.ends_with('^') {
            monos.push((neg, std::mem::take(&mut cur)));
            neg = c == '-';
        } else if i == 0 && c == '-' {
            neg = true;
        } else if !(i == 0 && c == '+') {
            cur.push(c);
        }
    }
    monos.push((neg, cur));
    let mut p = Poly::zero();
    for (neg, m) in monos {
        let (coef, deg) = if let Some(pos) = m.find('z') {
            let c = if pos == 0 {
                Rational::from(1)
            } else {
                let head = m[..pos]
                    .strip_suffix('*')
                    .ok_or_else(|| perr(format!("bad monomial {m:?}")))?;
                parse_rational(head)?
            };
            let tail = &m[pos + 1..];
            let d = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| perr(format!("bad exponent in {m:?}")))?
            };
            (c, d)
        } else {
            (parse_rational(&m)?, 0)
        };
        let coef = if neg { -coef } else { coef };
        p = &p + &Poly::monomial(coef, deg);
    }
    Ok(p)
}

pub fn parse_elem(ctx: &Field, s: &str) -> Result<Elem> {
    let s = s.trim();
    if s == "0" {
        return Ok(Elem::zero(ctx));
    }
    let mut out = Elem::zero(ctx);
    for term in split_top(s, " + ") {
        let mut t = term.trim();
        let mut mu = 0u8;
        if let Some(rest) = t.strip_prefix("S[") {
            let close = rest.find(']').ok_or_else(|| perr("unclosed S["))?;
            let b = parse_triple(&rest[..close])?;
            if b.iter().any(|&x| x > 1) {
                return Err(perr("half-power exponents must be 0 or 1"));
            }
            mu = (b[0] | (b[1] << 1) | (b[2] << 2)) as u8;
            t = rest[close + 1..]
                .strip_prefix('*')
                .ok_or_else(|| perr("expected '*' after S[..]"))?;
        }
        let t = t
            .strip_prefix('(')
            .ok_or_else(|| perr(format!("expected '(' in {term:?}")))?;
        let close = t.rfind(')').ok_or_else(|| perr("unclosed '('"))?;
        let num = parse_poly(&t[..close])?;
        let rest = t[close + 1..].trim();
        let pole = if rest.is_empty() {
            [0; 3]
        } else {
            let inner = rest
                .strip_prefix("/D[")
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| perr(format!("bad denominator {rest:?}")))?;
            parse_triple(inner)?
        };
        out = &out + &Elem::from_ratz(ctx, mu, RatZ { num, pole });
    }
    Ok(out)
}

pub fn parse_op(ctx: &Field, s: &str) -> Result<DiffOp> {
    let s = s.trim();
    if s == "0" {
        return Ok(DiffOp::zero(ctx));
    }
    let mut coeffs: Vec<Elem> = Vec::new();
    for line in s.lines().filter(|l| !l.trim().is_empty()) {
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| perr(format!("missing ':' in {line:?}")))?;
        let k: usize = head
            .trim()
            .strip_prefix("D^")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| perr(format!("bad order {head:?}")))?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Elem::zero(ctx));
        }
        coeffs[k] = &coeffs[k] + &parse_elem(ctx, body)?;
    }
    Ok(DiffOp::new(ctx, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::ExactRoots;
    use crate::hp::elem::field;

    #[test]
    fn roundtrip_elem() {
        let f = field(&ExactRoots::from_ints(3, -1, -2).unwrap());
        let e = &Elem::wp_shift(&f, 2)
            + &(&Elem::half_power(&f, 5) * &Elem::z(&f).scale(&Rational::from((-7, 3))));
        let s = format_elem(&e);
        assert_eq!(parse_elem(&f, &s).unwrap(), e);
    }

    #[test]
    fn poly_forms() {
        assert_eq!(
            parse_poly("z^2 - 9/4").unwrap(),
            Poly::from_coeffs(vec![
                Rational::from((-9, 4)),
                Rational::new(),
                Rational::from(1)
            ])
        );
        assert_eq!(parse_poly("-z").unwrap(), Poly::from_ints(&[0, -1]));
        assert_eq!(
            parse_poly("-3*z^3 + 2*z + 1").unwrap(),
            Poly::from_ints(&[1, 2, 0, -3])
        );
    }
}
