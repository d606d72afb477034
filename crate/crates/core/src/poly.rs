//! Sparse multivariate polynomials with exponent-vector keys.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(e, F::one())
    }

    pub fn monomial(exps: Monomial, c: F) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest weighted degree of a term; `None` for the zero polynomial.
    pub fn degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|m| weighted_degree(m, weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.keys().map(|m| weighted_degree(m, weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Replaces variable `k` by `images[k]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, Poly::nvars);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (k, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[k].pow(e);
                }
            }
            out = out + t;
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Renders with the given variable names, in a form [`Poly::parse`] accepts.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &F)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let mut coeff = c.to_string();
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if negative {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| {
                    if e == 1 {
                        names[k].clone()
                    } else {
                        format!("{}^{}", names[k], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&coeff);
            } else {
                if coeff != "1" {
                    let _ = write!(out, "{coeff}*");
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Parses `+ - * ^` expressions with integer coefficients and parentheses.
    pub fn parse(text: &str, names: &[String]) -> Result<Self, String> {
        let tokens = tokenize(text)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            names,
        };
        let value = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(format!("unexpected {}", p.tokens[p.pos].describe()));
        }
        Ok(value)
    }
}

pub fn weighted_degree(m: &[u32], weights: &[u32]) -> u32 {
    m.iter().zip(weights).map(|(e, w)| e * w).sum()
}

impl<F: Field> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(mut self, rhs: Poly<F>) -> Poly<F> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        self + (-rhs)
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Sym(char),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Num(n) => format!("number '{n}'"),
            Token::Ident(s) => format!("name '{s}'"),
            Token::Sym(c) => format!("'{c}'"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr<F: Field>(&mut self) -> Result<Poly<F>, String> {
        let mut acc = self.term()?;
        while let Some(Token::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term<F: Field>(&mut self) -> Result<Poly<F>, String> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Sym('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(Token::Num(_) | Token::Ident(_) | Token::Sym('(')) => {
                    return Err("juxtaposition is not allowed, write '*'".to_string());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary<F: Field>(&mut self) -> Result<Poly<F>, String> {
        match self.peek() {
            Some(Token::Sym('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Sym('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<F: Field>(&mut self) -> Result<Poly<F>, String> {
        let base = self.atom()?;
        if let Some(Token::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| format!("exponent '{n}' too large"))?;
                    Ok(base.pow(e))
                }
                other => Err(format!(
                    "expected an exponent after '^', found {}",
                    other.map_or("end of input".to_string(), |t| t.describe())
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom<F: Field>(&mut self) -> Result<Poly<F>, String> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| "unexpected end of input".to_string())?;
        self.pos += 1;
        match tok {
            Token::Num(n) => {
                let ten = F::from_int(10);
                let mut c = F::zero();
                for d in n.chars() {
                    c = c * ten.clone() + F::from_int(d.to_digit(10).unwrap_or(0) as i64);
                }
                Ok(Poly::constant(self.nvars(), c))
            }
            Token::Ident(name) => {
                let k = self
                    .names
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| format!("unknown variable '{name}'"))?;
                Ok(Poly::var(self.nvars(), k))
            }
            Token::Sym('(') => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::Sym(')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err("missing ')'".to_string()),
                }
            }
            other => Err(format!("unexpected {}", other.describe())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::Zero;

    type F = Fp<13>;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn parse(s: &str) -> Poly<F> {
        Poly::parse(s, &names(&["x", "y"])).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let n = names(&["x", "y"]);
        for s in ["x^2+y^4", "x-5*y", "-x*y+3", "0", "2*x^3*y-y^2"] {
            let p = parse(s);
            let q = Poly::parse(&p.to_string_with(&n), &n).unwrap();
            assert_eq!(p, q, "{s}");
        }
        assert_eq!(parse("x^2+y^4").to_string_with(&n), "y^4+x^2");
    }

    #[test]
    fn parentheses_and_powers() {
        assert_eq!(parse("(x+y)^2"), parse("x^2+2*x*y+y^2"));
        assert_eq!(parse("-(x-y)"), parse("y-x"));
        assert_eq!(parse("13*x"), Poly::zero(2));
    }

    #[test]
    fn rejects_bad_input() {
        let n = names(&["x", "y"]);
        assert!(Poly::<F>::parse("2x", &n).is_err());
        assert!(Poly::<F>::parse("x y", &n).is_err());
        assert!(Poly::<F>::parse("z", &n).is_err());
        assert!(Poly::<F>::parse("(x", &n).is_err());
        assert!(Poly::<F>::parse("x^", &n).is_err());
        assert!(Poly::<F>::parse("x/2", &n).is_err());
    }

    #[test]
    fn weighted_homogeneity() {
        let p = parse("x^2+y^3");
        assert!(p.is_homogeneous(&[3, 2]));
        assert!(!p.is_homogeneous(&[1, 1]));
        assert_eq!(p.degree(&[3, 2]), Some(6));
        assert_eq!(Poly::<F>::zero(2).degree(&[1, 1]), None);
    }

    #[test]
    fn substitution_into_a_curve() {
        // The cusp x^2+y^3 vanishes on (t^3, -t^2).
        let t = Poly::<F>::var(1, 0);
        let images = vec![t.pow(3), -t.pow(2)];
        assert!(parse("x^2+y^3").substitute(&images).is_zero());
        assert!(!parse("x^2-y^3").substitute(&images).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = parse("x^2+y^2");
        assert_eq!(p.eval(&[F::new(5), F::new(1)]), F::zero());
        assert_eq!(p.eval(&[F::new(1), F::new(1)]), F::new(2));
    }
}
