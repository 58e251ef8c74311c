//! Product-spec DSL: parsing and canonical printing.
//!
//! Grammar ('*'-separated factors, arbitrary whitespace between tokens):
//!
//! ```text
//! product  :=  factor ( '*' factor )*
//! factor   :=  '1'
//!           |  'eta'   '(' int ')'                 [ '^' int ]
//!           |  'theta' '(' int ')'                 [ '^' int ]
//!           |  'poch'  '(' int ',' int ';' int ')' [ '^' int ]
//!           |  'q'    [ '^' exponent ]
//!           |  'zeta' [ '^' exponent ]
//! exponent :=  int  |  '(' int [ '/' int ] ')'
//! ```
//!
//! `q` and `zeta` take rational exponents, everything else an integer one;
//! an omitted exponent means 1, and `1` denotes the empty product.  Parse
//! errors carry the byte offset and the tokens that would have been
//! accepted there; structurally forbidden factors (for example
//! `poch(0,1;0)`, whose first term is 1 - 1 = 0) surface as semantic
//! errors from the spec constructor.

use std::fmt;

use num_rational::Rational64;

use forge_core::{NamedFactor, PochhammerFactor, ProductSpec, SpecError};

/// A syntax error: byte position plus the token set that was admissible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DslError {
    Parse(ParseError),
    Semantic(SpecError),
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DslError::Parse(e) => {
                write!(f, "parse error at byte {}: expected {}", e.offset, e.expected.join(" | "))
            }
            DslError::Semantic(e) => write!(f, "invalid spec: {}", e),
        }
    }
}

impl std::error::Error for DslError {}

impl From<SpecError> for DslError {
    fn from(e: SpecError) -> Self {
        DslError::Semantic(e)
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser { input: input.as_bytes(), pos: 0 }
    }

    fn error<T>(&self, expected: &[&'static str]) -> Result<T, DslError> {
        Err(DslError::Parse(ParseError { offset: self.pos, expected: expected.to_vec() }))
    }

    fn skip_ws(&mut self) {
        while self.input.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8, name: &'static str) -> Result<(), DslError> {
        if self.eat(byte) {
            Ok(())
        } else {
            self.error(&[name])
        }
    }

    fn integer(&mut self) -> Result<i64, DslError> {
        let start = self.pos;
        let negative = self.eat(b'-');
        let digits_from = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_from {
            self.pos = start;
            return self.error(&["integer"]);
        }
        let text = std::str::from_utf8(&self.input[digits_from..self.pos]).unwrap();
        match text.parse::<i64>() {
            Ok(v) => Ok(if negative { -v } else { v }),
            Err(_) => {
                self.pos = start;
                self.error(&["integer small enough for 64 bits"])
            }
        }
    }

    /// `int` or `( int [/ int] )`.
    fn rational_exponent(&mut self) -> Result<Rational64, DslError> {
        self.skip_ws();
        if self.eat(b'(') {
            self.skip_ws();
            let numer = self.integer()?;
            self.skip_ws();
            let denom = if self.eat(b'/') {
                self.skip_ws();
                let d = self.integer()?;
                if d == 0 {
                    self.pos -= 1;
                    return self.error(&["nonzero denominator"]);
                }
                d
            } else {
                1
            };
            self.skip_ws();
            self.expect(b')', "`)`")?;
            Ok(Rational64::new(numer, denom))
        } else if matches!(self.peek(), Some(b'-') | Some(b'0'..=b'9')) {
            Ok(Rational64::from_integer(self.integer()?))
        } else {
            self.error(&["integer", "`(`"])
        }
    }

    /// Optional `^ int`, defaulting to 1.
    fn integer_exponent(&mut self) -> Result<i64, DslError> {
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            self.integer()
        } else {
            Ok(1)
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.input[start..self.pos]).unwrap()
    }

    fn exponent_as_i32(&mut self, at: usize, e: i64) -> Result<i32, DslError> {
        i32::try_from(e).map_err(|_| {
            DslError::Parse(ParseError { offset: at, expected: vec!["32-bit exponent"] })
        })
    }

    fn parse(mut self) -> Result<ProductSpec, DslError> {
        let mut q_prefactor = Rational64::new(0, 1);
        let mut z_prefactor = Rational64::new(0, 1);
        let mut named = Vec::new();
        let mut pochhammer = Vec::new();

        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat(b'1') {
                // The empty product; contributes nothing.
            } else {
                match self.ident() {
                    "eta" => {
                        self.skip_ws();
                        self.expect(b'(', "`(`")?;
                        self.skip_ws();
                        let period = self.integer()?;
                        self.skip_ws();
                        self.expect(b')', "`)`")?;
                        let at = self.pos;
                        let e = self.integer_exponent()?;
                        named.push(NamedFactor::Eta {
                            period,
                            exponent: self.exponent_as_i32(at, e)?,
                        });
                    }
                    "theta" => {
                        self.skip_ws();
                        self.expect(b'(', "`(`")?;
                        self.skip_ws();
                        let arg = self.integer()?;
                        self.skip_ws();
                        self.expect(b')', "`)`")?;
                        let at = self.pos;
                        let e = self.integer_exponent()?;
                        named.push(NamedFactor::Theta {
                            arg,
                            exponent: self.exponent_as_i32(at, e)?,
                        });
                    }
                    "poch" => {
                        self.skip_ws();
                        self.expect(b'(', "`(`")?;
                        self.skip_ws();
                        let offset = self.integer()?;
                        self.skip_ws();
                        self.expect(b',', "`,`")?;
                        self.skip_ws();
                        let step = self.integer()?;
                        self.skip_ws();
                        self.expect(b';', "`;`")?;
                        self.skip_ws();
                        let shift = self.integer()?;
                        self.skip_ws();
                        self.expect(b')', "`)`")?;
                        let at = self.pos;
                        let e = self.integer_exponent()?;
                        pochhammer.push(PochhammerFactor {
                            offset,
                            step,
                            shift,
                            exponent: self.exponent_as_i32(at, e)?,
                        });
                    }
                    "q" => {
                        self.skip_ws();
                        if self.eat(b'^') {
                            q_prefactor += self.rational_exponent()?;
                        } else {
                            q_prefactor += Rational64::from_integer(1);
                        }
                    }
                    "zeta" => {
                        self.skip_ws();
                        if self.eat(b'^') {
                            z_prefactor += self.rational_exponent()?;
                        } else {
                            z_prefactor += Rational64::from_integer(1);
                        }
                    }
                    _ => {
                        self.pos = at;
                        return self.error(&[
                            "`eta`", "`theta`", "`poch`", "`q`", "`zeta`", "`1`",
                        ]);
                    }
                }
            }
            self.skip_ws();
            if self.eat(b'*') {
                continue;
            }
            if self.pos == self.input.len() {
                break;
            }
            return self.error(&["`*`", "end of input"]);
        }

        Ok(ProductSpec::new(q_prefactor, z_prefactor, named, pochhammer)?)
    }
}

/// Parses the DSL into a canonical [`ProductSpec`].
pub fn parse_spec(text: &str) -> Result<ProductSpec, DslError> {
    Parser::new(text).parse()
}

/// Prints a spec so that `parse_spec(print_spec(s)) == s`.  Prefactors come
/// first (always parenthesized rationals), factors keep their canonical
/// order, and exponents are always explicit; the empty product prints as
/// `1`.
pub fn print_spec(spec: &ProductSpec) -> String {
    let mut parts: Vec<String> = Vec::new();
    let q = spec.q_prefactor();
    if q != Rational64::new(0, 1) {
        parts.push(format!("q^({}/{})", q.numer(), q.denom()));
    }
    let z = spec.z_prefactor();
    if z != Rational64::new(0, 1) {
        parts.push(format!("zeta^({}/{})", z.numer(), z.denom()));
    }
    for f in spec.named_factors() {
        match *f {
            NamedFactor::Eta { period, exponent } => {
                parts.push(format!("eta({})^{}", period, exponent));
            }
            NamedFactor::Theta { arg, exponent } => {
                parts.push(format!("theta({})^{}", arg, exponent));
            }
        }
    }
    for p in spec.pochhammer_factors() {
        parts.push(format!("poch({},{};{})^{}", p.offset, p.step, p.shift, p.exponent));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}
