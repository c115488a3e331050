use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polyspace::MultiIndex;

/// Real polynomial in commuting variables `x_1..x_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalPolynomial {
    m: usize,
    terms: BTreeMap<MultiIndex, f64>,
}

impl ClassicalPolynomial {
    pub fn zero(m: usize) -> Self {
        ClassicalPolynomial { m, terms: BTreeMap::new() }
    }

    /// The variable `x_j`, `1 <= j <= m`.
    pub fn variable(m: usize, j: usize) -> Result<Self> {
        if j == 0 || j > m {
            return Err(Error::InvalidDimension { index: j, n: m });
        }
        let mut p = Self::zero(m);
        p.add_term(MultiIndex::unit(m, j), 1.0)?;
        Ok(p)
    }

    pub fn monomial(alpha: MultiIndex, coeff: f64) -> Self {
        let mut p = Self::zero(alpha.n());
        p.add_term(alpha, coeff).expect("index matches its own dimension");
        p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_term(&mut self, alpha: MultiIndex, coeff: f64) -> Result<()> {
        if alpha.n() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: alpha.n() });
        }
        let sum = self.terms.get(&alpha).copied().unwrap_or(0.0) + coeff;
        if sum == 0.0 {
            self.terms.remove(&alpha);
        } else {
            self.terms.insert(alpha, sum);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.terms.iter().map(|(a, &c)| (a, c))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// The same polynomial over `m >= self.m` variables.
    pub fn with_variables(&self, m: usize) -> Result<Self> {
        if m < self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: m });
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, &c)| {
                let mut e = a.exps().to_vec();
                e.resize(m, 0);
                (MultiIndex::new(e), c)
            })
            .collect();
        Ok(ClassicalPolynomial { m, terms })
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: x.len() });
        }
        Ok(self.terms.iter().map(|(a, c)| c * a.monomial(x)).sum())
    }
}

impl fmt::Display for ClassicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (alpha, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0.0 { "-" } else { "+" };
            if k == 0 {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let vars: Vec<String> = alpha
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("x{}", j + 1) } else { format!("x{}^{e}", j + 1) })
                .collect();
            if vars.is_empty() || mag != 1.0 {
                write!(f, "{mag}")?;
                if !vars.is_empty() {
                    f.write_str(" ")?;
                }
            }
            f.write_str(&vars.join(" "))?;
        }
        Ok(())
    }
}

/// Grammar: `poly := ['+'|'-'] term (('+'|'-') term)*`,
/// `term := [number] ['*'] factor (['*'] factor)*  |  number`,
/// `factor := 'x' index ['^' exponent]`. Whitespace is ignored; `m` is the
/// highest variable index present.
impl FromStr for ClassicalPolynomial {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = Parser { chars: text.char_indices().collect(), pos: 0, end: text.len() };
        let raw = p.polynomial()?;
        let m = raw.iter().flat_map(|(vars, _)| vars.keys().copied()).max().unwrap_or(0);
        let mut out = ClassicalPolynomial::zero(m);
        for (vars, c) in raw {
            let mut e = vec![0; m];
            for (j, k) in vars {
                e[j - 1] += k;
            }
            out.add_term(MultiIndex::new(e), c)?;
        }
        Ok(out)
    }
}

type RawTerm = (BTreeMap<usize, u32>, f64);

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.offset(), message: message.into() })
    }

    fn polynomial(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            None => return self.error("empty polynomial"),
            Some('-') => {
                self.pos += 1;
                -1.0
            }
            Some('+') => {
                self.pos += 1;
                1.0
            }
            Some(_) => 1.0,
        };
        loop {
            let (vars, c) = self.term()?;
            terms.push((vars, sign * c));
            match self.peek() {
                None => return Ok(terms),
                Some('+') => sign = 1.0,
                Some('-') => sign = -1.0,
                Some(c) => return self.error(format!("unexpected '{c}'")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coeff = 1.0;
        let mut seen = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            coeff = self.number()?;
            seen = true;
        }
        let mut vars = BTreeMap::new();
        loop {
            match self.peek() {
                Some('*') if seen => {
                    self.pos += 1;
                    if self.peek() != Some('x') {
                        return self.error("expected variable after '*'");
                    }
                }
                Some('x') => {
                    let (j, k) = self.factor()?;
                    *vars.entry(j).or_insert(0) += k;
                    seen = true;
                }
                _ if seen => return Ok((vars, coeff)),
                Some(c) => return self.error(format!("expected a number or variable, found '{c}'")),
                None => return self.error("expected a number or variable"),
            }
        }
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.pos += 1;
        let Some(index) = self.digits() else {
            return self.error("expected variable index after 'x'");
        };
        let j: usize = index.parse().map_err(|_| Error::Parse { position: self.offset(), message: "index too large".into() })?;
        if j == 0 {
            return self.error("variables are numbered from x1");
        }
        let mut k = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let Some(e) = self.digits() else {
                return self.error("expected exponent after '^'");
            };
            k = e.parse().map_err(|_| Error::Parse { position: self.offset(), message: "exponent too large".into() })?;
        }
        Ok((j, k))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let at = self.offset();
        let is = |p: usize, f: &dyn Fn(char) -> bool| self.chars.get(p).is_some_and(|&(_, c)| f(c));
        while is(self.pos, &|c| c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        if is(self.pos, &|c| c == 'e' || c == 'E') {
            let mut q = self.pos + 1;
            if is(q, &|c| c == '+' || c == '-') {
                q += 1;
            }
            if is(q, &|c| c.is_ascii_digit()) {
                self.pos = q;
                while is(self.pos, &|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
            }
        }
        let text: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        text.parse().map_err(|_| Error::Parse { position: at, message: format!("malformed number '{text}'") })
    }
}
