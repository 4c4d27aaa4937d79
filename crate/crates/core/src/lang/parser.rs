//! Recursive-descent parser and semantic checks.

use num_traits::{One, Zero};

use super::ast::{Denom, IdentitySpec, LinForm, ProductFactor, SignAtom, SignRule, SumSide};
use super::lexer::{tokenize, Tok, Token};
use super::poly::Poly;
use super::{LangError, ParseError};
use crate::coeff::Unit;
use crate::series::{Monomial, Rat};

const RESERVED: &[&str] = &["q", "iq", "binom", "poch"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn semantic(t: &Token, message: impl Into<String>) -> LangError {
    LangError::Semantic { line: t.line, col: t.col, message: message.into() }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_tok(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, LangError> {
        let t = self.peek();
        Err(LangError::Parse(ParseError {
            line: t.line,
            col: t.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }))
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<Token, LangError> {
        if self.at_sym(c) {
            Ok(self.bump())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn at_kw(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.at_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<Token, LangError> {
        if self.at_kw(kw) {
            Ok(self.bump())
        } else {
            self.fail(&[&format!("`{kw}`")])
        }
    }

    fn expect_int(&mut self) -> Result<(i64, Token), LangError> {
        match self.peek().tok {
            Tok::Int(n) => Ok((n, self.bump())),
            _ => self.fail(&["an integer"]),
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Token), LangError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump()))
            }
            _ => self.fail(&["an identifier"]),
        }
    }

    fn file(&mut self) -> Result<Vec<IdentitySpec>, LangError> {
        if self.at_kw("version") {
            self.bump();
            let (v, t) = self.expect_int()?;
            if v != 1 {
                return Err(semantic(&t, format!("unsupported language version {v}")));
            }
            self.expect_sym(';')?;
        }
        let mut out = vec![self.identity()?];
        while self.peek().tok != Tok::Eof {
            out.push(self.identity()?);
        }
        Ok(out)
    }

    fn identity(&mut self) -> Result<IdentitySpec, LangError> {
        let head = self.expect_kw("identity")?;
        let name = match &self.peek().tok {
            Tok::Str(s) => s.clone(),
            _ => return self.fail(&["a quoted identity name"]),
        };
        self.bump();
        self.expect_sym('{')?;
        self.expect_kw("den")?;
        let (den, dt) = self.expect_int()?;
        if den <= 0 {
            return Err(semantic(&dt, "den must be positive"));
        }
        self.expect_sym(';')?;
        let sum = self.sum_side()?;
        let product = self.product_side()?;
        self.expect_sym('}')?;
        let spec = IdentitySpec { name, den, sum, product };
        check_denominators(&spec, &head)?;
        Ok(spec)
    }

    fn sum_side(&mut self) -> Result<SumSide, LangError> {
        let head = self.expect_kw("sum")?;
        self.expect_sym('{')?;
        self.expect_kw("indices")?;
        let mut indices: Vec<String> = Vec::new();
        loop {
            let (name, t) = self.expect_ident()?;
            if RESERVED.contains(&name.as_str()) {
                return Err(semantic(&t, format!("`{name}` is reserved and cannot name an index")));
            }
            if indices.contains(&name) {
                return Err(semantic(&t, format!("index `{name}` declared twice")));
            }
            indices.push(name);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(';')?;
        let mut sign = SignRule::default();
        if self.eat_kw("sign") {
            loop {
                sign.atoms.push(self.sign_atom(&indices)?);
                if !self.eat_sym('*') {
                    break;
                }
            }
            self.expect_sym(';')?;
        }
        self.expect_kw("exponent")?;
        let et = self.peek().clone();
        let poly = self.poly_expr(&indices)?;
        let exponent =
            poly.to_quad_form().ok_or_else(|| semantic(&et, "exponent must be a polynomial of degree at most 2"))?;
        self.expect_sym(';')?;
        self.expect_kw("denoms")?;
        let mut denoms: Vec<Option<Denom>> = vec![None; indices.len()];
        loop {
            self.expect_sym('(')?;
            let bt = self.peek().clone();
            let base = self.monomial()?;
            if !base.is_plain_base() {
                return Err(semantic(&bt, format!("denominator base {base} must be q^s with s > 0")));
            }
            self.expect_sym(';')?;
            let (name, t) = self.expect_ident()?;
            let index = lookup(&indices, &name).ok_or_else(|| semantic(&t, format!("unknown index `{name}`")))?;
            if denoms[index].is_some() {
                return Err(semantic(&t, format!("index `{name}` appears in more than one denominator")));
            }
            denoms[index] = Some(Denom { base, index });
            self.expect_sym(')')?;
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(';')?;
        let mut bounds = None;
        if self.at_kw("bounds") {
            let bt = self.bump();
            let mut b = Vec::new();
            loop {
                let (n, t) = self.expect_int()?;
                if n < 0 {
                    return Err(semantic(&t, "bounds must be nonnegative"));
                }
                b.push(n);
                if !self.eat_sym(',') {
                    break;
                }
            }
            if b.len() != indices.len() {
                return Err(semantic(&bt, format!("{} bounds given for {} indices", b.len(), indices.len())));
            }
            bounds = Some(b);
            self.expect_sym(';')?;
        }
        self.expect_sym('}')?;
        let missing: Vec<&str> =
            denoms.iter().zip(&indices).filter(|(d, _)| d.is_none()).map(|(_, n)| n.as_str()).collect();
        if !missing.is_empty() {
            return Err(semantic(&head, format!("no denominator for index {}", missing.join(", "))));
        }
        if bounds.is_none() && exponent.orthant_coercivity().is_none() {
            return Err(semantic(
                &et,
                "quadratic part of the exponent is not certifiably positive on the nonnegative orthant; give explicit bounds",
            ));
        }
        Ok(SumSide { indices, sign, exponent, denoms: denoms.into_iter().flatten().collect(), bounds })
    }

    fn sign_atom(&mut self, indices: &[String]) -> Result<SignAtom, LangError> {
        if self.at_sym('(') {
            self.bump();
            self.expect_sym('-')?;
            match self.peek().tok {
                Tok::Int(1) => {
                    self.bump();
                }
                _ => return self.fail(&["`1`"]),
            }
            self.expect_sym(')')?;
            self.expect_sym('^')?;
            if self.at_kw("binom") {
                self.bump();
                self.expect_sym('(')?;
                let lin = self.lin_form(indices, false)?;
                self.expect_sym(',')?;
                match self.peek().tok {
                    Tok::Int(2) => {
                        self.bump();
                    }
                    _ => return self.fail(&["`2`"]),
                }
                self.expect_sym(')')?;
                Ok(SignAtom::MinusOneBinom(lin))
            } else {
                Ok(SignAtom::MinusOne(self.lin_form(indices, true)?))
            }
        } else if self.at_kw("i") {
            self.bump();
            self.expect_sym('^')?;
            Ok(SignAtom::IPow(self.lin_form(indices, true)?))
        } else {
            self.fail(&["`(-1)^`", "`i^`"])
        }
    }

    /// An integer linear form; as an exponent (`atomic`) it must be a single
    /// index, an integer or a parenthesized expression.
    fn lin_form(&mut self, indices: &[String], atomic: bool) -> Result<LinForm, LangError> {
        let t = self.peek().clone();
        let p = if atomic {
            match &t.tok {
                Tok::Sym('(') => {
                    self.bump();
                    let p = self.poly_expr(indices)?;
                    self.expect_sym(')')?;
                    p
                }
                Tok::Ident(_) | Tok::Int(_) => self.primary(indices)?,
                _ => return self.fail(&["an index", "an integer", "`(`"]),
            }
        } else {
            self.poly_expr(indices)?
        };
        let (coeffs, constant) =
            p.to_int_linear().ok_or_else(|| semantic(&t, "sign exponents must be integer linear forms"))?;
        Ok(LinForm { coeffs, constant })
    }

    fn poly_expr(&mut self, indices: &[String]) -> Result<Poly, LangError> {
        let negate = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        let first = self.poly_term(indices)?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.poly_term(indices)?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.poly_term(indices)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_term(&mut self, indices: &[String]) -> Result<Poly, LangError> {
        let mut acc = self.poly_power(indices)?;
        loop {
            if self.eat_sym('*') {
                acc = acc.mul(&self.poly_power(indices)?);
            } else if self.at_sym('/') {
                self.bump();
                let t = self.peek().clone();
                let d = self.poly_power(indices)?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(Rat::one() / c),
                    _ => return Err(semantic(&t, "can only divide by a nonzero constant")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_power(&mut self, indices: &[String]) -> Result<Poly, LangError> {
        let base = self.primary(indices)?;
        if self.eat_sym('^') {
            let (k, t) = self.expect_int()?;
            if !(0..=8).contains(&k) {
                return Err(semantic(&t, "powers must lie in 0..=8"));
            }
            return Ok(base.pow(k as u32));
        }
        Ok(base)
    }

    fn primary(&mut self, indices: &[String]) -> Result<Poly, LangError> {
        let r = indices.len();
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Poly::constant(r, Rat::from_integer(*n)))
            }
            Tok::Ident(s) if s == "binom" => {
                self.bump();
                self.expect_sym('(')?;
                let e = self.poly_expr(indices)?;
                self.expect_sym(',')?;
                match self.peek().tok {
                    Tok::Int(2) => {
                        self.bump();
                    }
                    _ => return self.fail(&["`2`"]),
                }
                self.expect_sym(')')?;
                Ok(e.binom2())
            }
            Tok::Ident(s) => {
                let i = lookup(indices, s).ok_or_else(|| semantic(&t, format!("unknown index `{s}`")))?;
                self.bump();
                Ok(Poly::var(r, i))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.poly_expr(indices)?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Sym('-') => {
                self.bump();
                Ok(self.primary(indices)?.neg())
            }
            _ => self.fail(&["a number", "an index", "`(`", "`binom`"]),
        }
    }

    fn monomial(&mut self) -> Result<Monomial, LangError> {
        let mut unit = Unit::ONE;
        if self.eat_sym('-') {
            unit = Unit::MINUS_ONE;
        }
        if self.at_kw("iq") {
            self.bump();
            unit *= Unit::I;
        } else if self.at_kw("i") && matches!(self.peek_tok(1), Tok::Ident(s) if s == "q") {
            self.bump();
            self.bump();
            unit *= Unit::I;
        } else if self.at_kw("q") {
            self.bump();
        } else {
            return self.fail(&["`q`", "`iq`"]);
        }
        let exp = if self.eat_sym('^') { self.rational()? } else { Rat::one() };
        Ok(Monomial::new(unit, exp))
    }

    fn rational(&mut self) -> Result<Rat, LangError> {
        let paren = self.eat_sym('(');
        let (n, _) = self.expect_int()?;
        let mut r = Rat::from_integer(n);
        // `q^3/2` reads as q^(3/2); a following `/poch` never occurs in a monomial.
        if self.at_sym('/') && matches!(self.peek_tok(1), Tok::Int(_)) {
            self.bump();
            let (d, t) = self.expect_int()?;
            if d == 0 {
                return Err(semantic(&t, "zero denominator"));
            }
            r = Rat::new(n, d);
        }
        if paren {
            self.expect_sym(')')?;
        }
        Ok(r)
    }

    fn product_side(&mut self) -> Result<Vec<ProductFactor>, LangError> {
        self.expect_kw("product")?;
        self.expect_sym('{')?;
        let mut out = Vec::new();
        if self.eat_sym('}') {
            return Ok(out);
        }
        loop {
            out.push(self.factor()?);
            if !self.eat_sym('*') {
                break;
            }
        }
        self.expect_sym('}')?;
        Ok(out)
    }

    fn factor(&mut self) -> Result<ProductFactor, LangError> {
        let mut power = 1;
        if self.peek().tok == Tok::Int(1) && *self.peek_tok(1) == Tok::Sym('/') {
            self.bump();
            self.bump();
            power = -1;
        }
        self.expect_kw("poch")?;
        self.expect_sym('(')?;
        let xt = self.peek().clone();
        let x = self.monomial()?;
        if x.exp <= Rat::zero() {
            return Err(semantic(&xt, format!("product argument {x} needs a positive q-exponent")));
        }
        self.expect_sym(',')?;
        let bt = self.peek().clone();
        let base = self.monomial()?;
        if !base.is_plain_base() {
            return Err(semantic(&bt, format!("product base {base} must be q^s with s > 0")));
        }
        let finite = if self.eat_sym(',') {
            let (n, t) = self.expect_int()?;
            if n < 0 {
                return Err(semantic(&t, "finite Pochhammer length must be nonnegative"));
            }
            Some(n as u64)
        } else {
            None
        };
        self.expect_sym(')')?;
        Ok(ProductFactor { x, base, power, finite })
    }

    fn expect_eof(&self) -> Result<(), LangError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }
}

fn lookup(indices: &[String], name: &str) -> Option<usize> {
    indices.iter().position(|s| s == name)
}

/// Every exponent in the identity must be a multiple of `1/den`. Exponent
/// values of a quadratic with coefficient denominators dividing `M` are
/// periodic mod 1 with period `M` in each index, so checking one period box
/// decides all lattice points.
fn check_denominators(spec: &IdentitySpec, at: &Token) -> Result<(), LangError> {
    let den = spec.den;
    for e in spec.exponent_dens() {
        if den % e.denom() != 0 {
            return Err(semantic(at, format!("exponent {e} is not a multiple of 1/{den}")));
        }
    }
    let poly = Poly::from(&spec.sum.exponent);
    let m = poly.coeff_den();
    let r = spec.sum.rank();
    let mut n = vec![0i64; r];
    loop {
        let v = poly.eval(&n) * den;
        if !v.is_integer() {
            return Err(semantic(at, format!("exponent at {:?} is {}, not a multiple of 1/{den}", n, v / den)));
        }
        let mut i = 0;
        loop {
            if i == r {
                return Ok(());
            }
            n[i] += 1;
            if n[i] < m {
                break;
            }
            n[i] = 0;
            i += 1;
        }
    }
}

pub fn parse_text(src: &str) -> Result<Vec<IdentitySpec>, LangError> {
    let toks = tokenize(src).map_err(LangError::Parse)?;
    Parser { toks, pos: 0 }.file()
}

pub fn parse_poly_text(src: &str, indices: &[&str]) -> Result<Poly, LangError> {
    let toks = tokenize(src).map_err(LangError::Parse)?;
    let names: Vec<String> = indices.iter().map(|s| s.to_string()).collect();
    let mut p = Parser { toks, pos: 0 };
    let poly = p.poly_expr(&names)?;
    p.expect_eof()?;
    Ok(poly)
}
