//! Text grammars: cyclotomic scalars as polynomials in z (algebra files),
//! Laurent symbols, and multivariate polynomials with cyclotomic constants
//! `z(m)` for the star-product CLI.

use std::collections::BTreeMap;

use crate::error::{NcgError, Result};
use crate::laurent::LaurentElement;
use crate::scalar::{CycloScalar, Rat};
use crate::star::PolyElement;
use num::BigInt;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Rat(Rat),
    Ident(String),
    Zeta(u32),
    Caret,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let b: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                let num: BigInt = b[i..j]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| NcgError::Parse("bad integer".into()))?;
                i = j;
                if i < b.len() && b[i] == '/' {
                    i += 1;
                    let mut j = i;
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == i {
                        return Err(NcgError::Parse("missing denominator".into()));
                    }
                    let den: BigInt = b[i..j]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| NcgError::Parse("bad denominator".into()))?;
                    if den == BigInt::from(0) {
                        return Err(NcgError::Parse("zero denominator".into()));
                    }
                    i = j;
                    out.push(Tok::Rat(Rat::new(num, den)));
                } else {
                    out.push(Tok::Rat(Rat::from(num)));
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < b.len() && (b[j].is_alphanumeric() || b[j] == '_') {
                    j += 1;
                }
                let name: String = b[i..j].iter().collect();
                i = j;
                // zeta constant z(m)
                if name == "z" && i < b.len() && b[i] == '(' {
                    let mut j = i + 1;
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j < b.len() && b[j] == ')' && j > i + 1 {
                        let m: u32 = b[i + 1..j]
                            .iter()
                            .collect::<String>()
                            .parse()
                            .map_err(|_| NcgError::Parse("bad conductor".into()))?;
                        i = j + 1;
                        out.push(Tok::Zeta(m));
                        continue;
                    }
                }
                out.push(Tok::Ident(name));
            }
            _ => return Err(NcgError::Parse(format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

fn parse_exponent(toks: &[Tok], i: &mut usize) -> Result<i64> {
    // after a caret: optional sign then rational that must be an integer
    let mut sign = 1i64;
    if *i < toks.len() && toks[*i] == Tok::Minus {
        sign = -1;
        *i += 1;
    }
    match toks.get(*i) {
        Some(Tok::Rat(r)) if r.is_integer() => {
            *i += 1;
            let v: i64 = r
                .to_integer()
                .try_into()
                .map_err(|_| NcgError::Parse("exponent too large".into()))?;
            Ok(sign * v)
        }
        _ => Err(NcgError::Parse("expected integer exponent".into())),
    }
}

/// A parsed monomial: coefficient plus variable exponents.
#[derive(Clone)]
struct Monomial {
    coeff: CycloScalar,
    exps: BTreeMap<String, i64>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut exps = a.exps.clone();
    for (k, v) in &b.exps {
        *exps.entry(k.clone()).or_insert(0) += v;
    }
    Monomial {
        coeff: a.coeff.mul(&b.coeff),
        exps,
    }
}

fn poly_mul_monos(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(mono_mul(x, y));
        }
    }
    out
}

/// factor := rat | z(m) ['^' exp] | ident ['^' exp] | '(' expr ')' ['^' exp]
fn parse_factor(toks: &[Tok], i: &mut usize) -> Result<Vec<Monomial>> {
    match toks.get(*i) {
        Some(Tok::Rat(r)) => {
            *i += 1;
            Ok(vec![Monomial {
                coeff: CycloScalar::from_rat(r.clone()),
                exps: BTreeMap::new(),
            }])
        }
        Some(Tok::Zeta(m)) => {
            let m = *m;
            *i += 1;
            let mut e = 1i64;
            if toks.get(*i) == Some(&Tok::Caret) {
                *i += 1;
                e = parse_exponent(toks, i)?;
            }
            Ok(vec![Monomial {
                coeff: CycloScalar::root_of_unity(m, e),
                exps: BTreeMap::new(),
            }])
        }
        Some(Tok::Ident(name)) => {
            let name = name.clone();
            *i += 1;
            let mut e = 1i64;
            if toks.get(*i) == Some(&Tok::Caret) {
                *i += 1;
                e = parse_exponent(toks, i)?;
            }
            let mut exps = BTreeMap::new();
            exps.insert(name, e);
            Ok(vec![Monomial {
                coeff: CycloScalar::one(),
                exps,
            }])
        }
        Some(Tok::LParen) => {
            *i += 1;
            let inner = parse_expr(toks, i)?;
            if toks.get(*i) != Some(&Tok::RParen) {
                return Err(NcgError::Parse("missing ')'".into()));
            }
            *i += 1;
            if toks.get(*i) == Some(&Tok::Caret) {
                *i += 1;
                let e = parse_exponent(toks, i)?;
                if e < 0 {
                    return Err(NcgError::Parse(
                        "negative exponent on a grouped expression".into(),
                    ));
                }
                let mut acc = vec![Monomial {
                    coeff: CycloScalar::one(),
                    exps: BTreeMap::new(),
                }];
                for _ in 0..e {
                    acc = poly_mul_monos(&acc, &inner);
                }
                return Ok(acc);
            }
            Ok(inner)
        }
        t => Err(NcgError::Parse(format!("expected a term, found {:?}", t))),
    }
}

/// term := ['-'|'+']* factor (['*'] factor)*
fn parse_term(toks: &[Tok], i: &mut usize) -> Result<Vec<Monomial>> {
    let mut sign = CycloScalar::one();
    while let Some(t) = toks.get(*i) {
        match t {
            Tok::Minus => {
                sign = sign.neg();
                *i += 1;
            }
            Tok::Plus => {
                *i += 1;
            }
            _ => break,
        }
    }
    let mut acc = parse_factor(toks, i)?;
    loop {
        match toks.get(*i) {
            Some(Tok::Star) => {
                *i += 1;
                let f = parse_factor(toks, i)?;
                acc = poly_mul_monos(&acc, &f);
            }
            Some(Tok::Rat(_)) | Some(Tok::Zeta(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                let f = parse_factor(toks, i)?;
                acc = poly_mul_monos(&acc, &f);
            }
            _ => break,
        }
    }
    for m in acc.iter_mut() {
        m.coeff = m.coeff.mul(&sign);
    }
    Ok(acc)
}

/// expr := term (('+'|'-') term)*
fn parse_expr(toks: &[Tok], i: &mut usize) -> Result<Vec<Monomial>> {
    let mut out = parse_term(toks, i)?;
    loop {
        match toks.get(*i) {
            Some(Tok::Plus) => {
                *i += 1;
                out.extend(parse_term(toks, i)?);
            }
            Some(Tok::Minus) => {
                // leave the sign for parse_term to absorb
                out.extend(parse_term(toks, i)?);
            }
            _ => break,
        }
    }
    Ok(out)
}

fn parse_sum(toks: &[Tok]) -> Result<Vec<Monomial>> {
    if toks.is_empty() {
        return Err(NcgError::Parse("empty expression".into()));
    }
    let mut i = 0usize;
    let out = parse_expr(toks, &mut i)?;
    if i != toks.len() {
        return Err(NcgError::Parse(format!(
            "unexpected trailing token {:?}",
            toks[i]
        )));
    }
    Ok(out)
}

/// Scalar in the algebra-file format: a polynomial in "z" meaning
/// zeta_conductor. Exponents must be nonnegative.
pub fn parse_scalar(input: &str, conductor: u32) -> Result<CycloScalar> {
    let toks = lex(input)?;
    let monos = parse_sum(&toks)?;
    let mut acc = CycloScalar::zero();
    for m in monos {
        let mut c = m.coeff;
        for (var, e) in m.exps {
            if var != "z" {
                return Err(NcgError::Parse(format!(
                    "unknown symbol '{var}' in scalar"
                )));
            }
            c = c.mul(&CycloScalar::root_of_unity(conductor, e));
        }
        acc = acc.add(&c);
    }
    Ok(acc)
}

/// Laurent symbol in the CLI grammar: polynomial in "z" with integer
/// (possibly negative) exponents and cyclotomic constants z(m).
pub fn parse_laurent(input: &str) -> Result<LaurentElement> {
    let toks = lex(input)?;
    let monos = parse_sum(&toks)?;
    let mut out = LaurentElement::zero();
    for m in monos {
        let mut k = 0i64;
        for (var, e) in m.exps {
            if var != "z" {
                return Err(NcgError::Parse(format!(
                    "unknown symbol '{var}' in Laurent symbol"
                )));
            }
            k += e;
        }
        out.add_term(k, &m.coeff);
    }
    Ok(out)
}

/// Multivariate polynomial over the given variable names, with cyclotomic
/// constants z(m) allowed.
pub fn parse_poly(input: &str, vars: &[String]) -> Result<PolyElement> {
    let toks = lex(input)?;
    let monos = parse_sum(&toks)?;
    let mut out = PolyElement::zero(vars.len());
    for m in monos {
        let mut exps = vec![0u32; vars.len()];
        for (var, e) in m.exps {
            let idx = vars
                .iter()
                .position(|v| *v == var)
                .ok_or_else(|| NcgError::Parse(format!("unknown variable '{var}'")))?;
            if e < 0 {
                return Err(NcgError::Parse("negative exponent in polynomial".into()));
            }
            exps[idx] += e as u32;
        }
        out.add_term(exps, &m.coeff);
    }
    Ok(out)
}

/// Canonical rendering of a Laurent element (ascending exponents).
pub fn render_laurent(f: &LaurentElement) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in &f.terms {
        let cs = crate::scalar::render_scalar_zeta(c);
        let body = match *k {
            0 => cs,
            1 => format!("({}) z", cs),
            e => format!("({}) z^{}", cs, e),
        };
        parts.push(body);
    }
    parts.join(" + ")
}

/// Canonical rendering of a polynomial.
pub fn render_poly(p: &PolyElement, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (exps, c) in &p.terms {
        let mut body = format!("({})", crate::scalar::render_scalar_zeta(c));
        for (i, e) in exps.iter().enumerate() {
            if *e == 1 {
                body.push_str(&format!(" {}", vars[i]));
            } else if *e > 1 {
                body.push_str(&format!(" {}^{}", vars[i], e));
            }
        }
        parts.push(body);
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_round_trip() {
        for s in ["0", "1", "-1/2", "z^2 + 1/2 z - 2", "3/2 z"] {
            let v = parse_scalar(s, 8).unwrap();
            let rendered = crate::scalar::render_scalar(&v);
            let again = parse_scalar(&rendered, 8).unwrap();
            assert_eq!(v, again, "round trip through '{rendered}'");
        }
    }

    #[test]
    fn laurent_grammar() {
        let f = parse_laurent("2 + z").unwrap();
        assert_eq!(f.coeff(0), CycloScalar::from_int(2));
        assert_eq!(f.coeff(1), CycloScalar::one());
        let f = parse_laurent("z^-3").unwrap();
        assert_eq!(f.coeff(-3), CycloScalar::one());
        let f = parse_laurent("z(4) z^2 - 1/2").unwrap();
        assert_eq!(f.coeff(2), CycloScalar::i());
        assert_eq!(f.coeff(0), CycloScalar::from_ratio(-1, 2));
    }

    #[test]
    fn poly_grammar() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let p = parse_poly("3/2 x^2 y - z(4) x", &vars).unwrap();
        assert_eq!(p.terms[&vec![2, 1]], CycloScalar::from_ratio(3, 2));
        assert_eq!(p.terms[&vec![1, 0]], CycloScalar::i().neg());
        assert!(parse_poly("w + 1", &vars).is_err());
    }
}
