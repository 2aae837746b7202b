//! Term expressions in `i` and `x` for user-defined series.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'i' | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
//! func    := 'sin' | 'cos' | 'exp'
//! ```
//!
//! `×`, `÷` and `−` are accepted as operator spellings.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    I,
    X,
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

impl Expr {
    pub fn eval(&self, i: f64, x: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::I => i,
            Expr::X => x,
            Expr::Neg(e) => -e.eval(i, x),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(i, x), b.eval(i, x));
                match op {
                    Op::Add => a + b,
                    Op::Sub => a - b,
                    Op::Mul => a * b,
                    Op::Div => a / b,
                    Op::Pow => pow(a, b),
                }
            }
            Expr::Call(f, e) => {
                let v = e.eval(i, x);
                match f {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                }
            }
        }
    }

    /// Does the expression mention `x`?
    pub fn depends_on_x(&self) -> bool {
        match self {
            Expr::X => true,
            Expr::Num(_) | Expr::I => false,
            Expr::Neg(e) | Expr::Call(_, e) => e.depends_on_x(),
            Expr::Bin(_, a, b) => a.depends_on_x() || b.depends_on_x(),
        }
    }
}

fn pow(a: f64, b: f64) -> f64 {
    if b.fract() == 0.0 && (0.0..=i32::MAX as f64).contains(&b) {
        pow_i(a, b as u64)
    } else if b.fract() == 0.0 && b.abs() <= i32::MAX as f64 {
        a.powi(b as i32)
    } else {
        a.powf(b)
    }
}

/// `xⁱ`, returning `0` directly once the result is below the smallest
/// subnormal (`powi` would otherwise grind through subnormal intermediates).
pub fn pow_i(x: f64, i: u64) -> f64 {
    let a = x.abs();
    if a < 1.0 && (i as f64) * a.log2() < -1100.0 {
        return 0.0;
    }
    x.powi(i as i32)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(at, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() || c == '.' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                let exp_sign = (d == '-' || d == '+') && s.ends_with(['e', 'E']);
                if d.is_ascii_digit() || d == '.' || d == 'e' || d == 'E' || exp_sign {
                    s.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            let v = s.parse::<f64>().map_err(|_| Error::Parse {
                offset: at,
                message: format!("bad number `{s}`"),
            })?;
            out.push((at, Tok::Num(v)));
        } else if c.is_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_alphanumeric() || d == '_' {
                    s.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((at, Tok::Ident(s)));
        } else {
            let sym = match c {
                '×' | '·' => '*',
                '÷' => '/',
                '−' => '-',
                '+' | '-' | '*' | '/' | '^' | '(' | ')' => c,
                _ => {
                    return Err(Error::Parse {
                        offset: at,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push((at, Tok::Sym(sym)));
            it.next();
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                Op::Add
            } else if self.eat('-') {
                Op::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                Op::Mul
            } else if self.eat('/') {
                Op::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            return Ok(Expr::Bin(Op::Pow, Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of expression");
        };
        match tok {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "i" | "x" | "pi" => {
                        self.pos += 1;
                        return Ok(match name.as_str() {
                            "i" => Expr::I,
                            "x" => Expr::X,
                            _ => Expr::Num(std::f64::consts::PI),
                        });
                    }
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "exp" => Func::Exp,
                    _ => return self.err(format!("unknown identifier `{name}`")),
                };
                self.pos += 1;
                if !self.eat('(') {
                    return self.err(format!("expected `(` after `{name}`"));
                }
                let arg = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Tok::Sym(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("1 + 2*3^2").unwrap();
        assert_eq!(e.eval(0.0, 0.0), 19.0);
        assert_eq!(parse("-2^2").unwrap().eval(0.0, 0.0), -4.0);
        assert_eq!(parse("2^-1").unwrap().eval(0.0, 0.0), 0.5);
        assert_eq!(parse("8/2/2").unwrap().eval(0.0, 0.0), 2.0);
    }

    #[test]
    fn series_terms() {
        let e = parse("sin(i*x)/i").unwrap();
        assert!((e.eval(3.0, 0.5) - (1.5f64).sin() / 3.0).abs() < 1e-15);
        let u = parse("x^i × (1 − x)").unwrap();
        assert_eq!(u.eval(2.0, 0.5), 0.125);
        assert!(u.depends_on_x());
        assert!(!parse("1/i^2").unwrap().depends_on_x());
        assert_eq!(parse("1e-3*i").unwrap().eval(2.0, 0.0), 0.002);
    }

    #[test]
    fn errors_carry_offsets() {
        match parse("sin(x") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            r => panic!("{r:?}"),
        }
        match parse("x + y") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            r => panic!("{r:?}"),
        }
        assert!(parse("x $ 1").is_err());
        assert!(parse("(x))").is_err());
        assert!(parse("").is_err());
    }
}
