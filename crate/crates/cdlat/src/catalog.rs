//! Group constructors, the spec expression language, and the survey corpus.
//!
//! A [`GroupSpec`] is an expression tree over deterministic constructors:
//! the same spec text always yields a bit-identical table. The corpus is
//! constructor-based rather than a small-groups database clone; generator
//! files let callers import any group an external system can present by
//! permutations.

use std::fmt;
use std::str::FromStr;

use crate::caps::Caps;
use crate::group::{factorize, gcd, is_prime, GroupError, GroupTable};
use crate::perm::{parse_generator_file, Permutation};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid spec: {message}")]
    Invalid { message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn invalid(message: impl Into<String>) -> SpecError {
    SpecError::Invalid {
        message: message.into(),
    }
}

/// Extraspecial type selector: `+` is the exponent-p type for odd p (the
/// dihedral-flavored type for p = 2), `-` the exponent-p^2 type (the
/// quaternion-flavored type for p = 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A group described by constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// `C(n)`: cyclic of order n.
    Cyclic(u64),
    /// `Abelian(d1,...,dk)`: direct product of cyclic groups.
    Abelian(Vec<u64>),
    /// `D(2n)`: dihedral, parameter is the group order.
    Dihedral(u64),
    /// `Dic(n)` of order 4n; `Q(2^k)` is the dicyclic group of that order.
    Dicyclic(u64),
    /// `S(n)`, n <= 6.
    Symmetric(u32),
    /// `A(n)`, n <= 6.
    Alternating(u32),
    /// `ES(p,sign)` of order p^3, `ES32(sign)` = `ES(2,2,sign)`, and
    /// generally `ES(p,k,sign)` of order p^(2k+1) built by central products.
    Extraspecial { p: u64, copies: u32, sign: Sign },
    /// `ZM(m,n,r)`: the metacyclic group with all Sylow subgroups cyclic.
    Zm { m: u64, n: u64, r: u64 },
    /// `PQ(p,q)`: the nonabelian group of order p*q, q = 1 (mod p).
    Pq { p: u64, q: u64 },
    /// `A X B`: direct product.
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// `File(path)`: permutation generators from a generator file.
    File(String),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C({n})"),
            GroupSpec::Abelian(ds) => {
                write!(f, "Abelian(")?;
                for (i, d) in ds.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, ")")
            }
            GroupSpec::Dihedral(order) => write!(f, "D({order})"),
            GroupSpec::Dicyclic(n) => {
                if n.is_power_of_two() && *n >= 2 {
                    write!(f, "Q({})", 4 * n)
                } else {
                    write!(f, "Dic({n})")
                }
            }
            GroupSpec::Symmetric(n) => write!(f, "S({n})"),
            GroupSpec::Alternating(n) => write!(f, "A({n})"),
            GroupSpec::Extraspecial { p, copies, sign } => match (p, copies) {
                (_, 1) => write!(f, "ES({p},'{sign}')"),
                (2, 2) => write!(f, "ES32('{sign}')"),
                _ => write!(f, "ES({p},{copies},'{sign}')"),
            },
            GroupSpec::Zm { m, n, r } => write!(f, "ZM({m},{n},{r})"),
            GroupSpec::Pq { p, q } => write!(f, "PQ({p},{q})"),
            GroupSpec::Product(a, b) => write!(f, "{a} X {b}"),
            GroupSpec::File(path) => write!(f, "File({path})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(text: &str) -> Result<Self, SpecError> {
        parse_spec(text)
    }
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

impl GroupSpec {
    /// The order of the group this spec builds, when it is known without
    /// reading files.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Abelian(ds) => Some(ds.iter().product()),
            GroupSpec::Dihedral(order) => Some(*order),
            GroupSpec::Dicyclic(n) => Some(4 * n),
            GroupSpec::Symmetric(n) => Some(factorial(*n)),
            GroupSpec::Alternating(n) => Some(if *n <= 2 { 1 } else { factorial(*n) / 2 }),
            GroupSpec::Extraspecial { p, copies, .. } => Some(p.pow(2 * copies + 1)),
            GroupSpec::Zm { m, n, .. } => Some(m * n),
            GroupSpec::Pq { p, q } => Some(p * q),
            GroupSpec::Product(a, b) => Some(a.order()? * b.order()?),
            GroupSpec::File(_) => None,
        }
    }

    /// Checks the constructor constraints without building anything.
    pub fn validate(&self) -> Result<(), SpecError> {
        match self {
            GroupSpec::Cyclic(n) => {
                if *n == 0 {
                    return Err(invalid("C(n) requires n >= 1"));
                }
            }
            GroupSpec::Abelian(ds) => {
                if ds.is_empty() || ds.contains(&0) {
                    return Err(invalid("Abelian(...) requires at least one factor >= 1"));
                }
            }
            GroupSpec::Dihedral(order) => {
                if *order < 2 || order % 2 != 0 {
                    return Err(invalid("D(2n) requires an even order of at least 2"));
                }
            }
            GroupSpec::Dicyclic(n) => {
                if *n == 0 {
                    return Err(invalid("Dic(n) requires n >= 1"));
                }
            }
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) => {
                if *n == 0 || *n > 6 {
                    return Err(invalid("S(n) and A(n) are supported for 1 <= n <= 6"));
                }
            }
            GroupSpec::Extraspecial { p, copies, .. } => {
                if !is_prime(*p) {
                    return Err(invalid(format!("ES requires a prime, got {p}")));
                }
                if *copies == 0 {
                    return Err(invalid("ES(p,k,sign) requires k >= 1"));
                }
            }
            GroupSpec::Zm { m, n, r } => {
                if *m < 2 || *n < 2 {
                    return Err(invalid("ZM(m,n,r) requires m >= 2 and n >= 2"));
                }
                if *r < 1 || r >= m {
                    return Err(invalid(format!("ZM(m,n,r) requires 1 <= r < m = {m}")));
                }
                if gcd(*m as usize, *n as usize) != 1 {
                    return Err(invalid(format!(
                        "ZM({m},{n},{r}): gcd(m,n) = {} is not 1",
                        gcd(*m as usize, *n as usize)
                    )));
                }
                if gcd(((r - 1) * n) as usize, *m as usize) != 1 {
                    return Err(invalid(format!(
                        "ZM({m},{n},{r}): gcd((r-1)n, m) = {} is not 1",
                        gcd(((r - 1) * n) as usize, *m as usize)
                    )));
                }
                if pow_mod(*r, *n, *m) != 1 {
                    return Err(invalid(format!(
                        "ZM({m},{n},{r}): r^n = {} (mod m), expected 1",
                        pow_mod(*r, *n, *m)
                    )));
                }
            }
            GroupSpec::Pq { p, q } => {
                if !is_prime(*p) || !is_prime(*q) || p == q {
                    return Err(invalid("PQ(p,q) requires distinct primes"));
                }
                if q % p != 1 {
                    return Err(invalid(format!(
                        "PQ({p},{q}): q must be 1 (mod p) for a nonabelian group to exist"
                    )));
                }
            }
            GroupSpec::Product(a, b) => {
                a.validate()?;
                b.validate()?;
            }
            GroupSpec::File(path) => {
                if path.is_empty() {
                    return Err(invalid("File(path) requires a path"));
                }
            }
        }
        Ok(())
    }

    /// Builds the group with default caps.
    pub fn build(&self) -> Result<GroupTable, SpecError> {
        self.build_capped(&Caps::default())
    }

    /// Builds the group. Deterministic: identical specs yield bit-identical
    /// tables. The final order must fit under `caps.max_order`; central
    /// product intermediates may transiently exceed it by one factor of p.
    pub fn build_capped(&self, caps: &Caps) -> Result<GroupTable, SpecError> {
        self.validate()?;
        if let Some(order) = self.order() {
            if order > caps.max_order as u64 {
                return Err(SpecError::Group(GroupError::ClosureExceedsCap {
                    cap: caps.max_order,
                }));
            }
        }
        match self {
            GroupSpec::Cyclic(n) => {
                let n = *n as usize;
                build_table(n, |a, b| (a + b) % n)
            }
            GroupSpec::Abelian(ds) => {
                let dims: Vec<usize> = ds.iter().map(|&d| d as usize).collect();
                let n: usize = dims.iter().product();
                build_table(n, |a, b| {
                    let (mut a, mut b) = (a, b);
                    let mut out = 0;
                    let mut stride = 1;
                    for &d in dims.iter().rev() {
                        out += (a % d + b % d) % d * stride;
                        a /= d;
                        b /= d;
                        stride *= d;
                    }
                    out
                })
            }
            GroupSpec::Dihedral(order) => {
                let half = (*order / 2) as usize;
                // Element f*half + i is r^i s^f; s r s = r^-1.
                build_table(2 * half, |x, y| {
                    let (f1, i1) = (x / half, x % half);
                    let (f2, i2) = (y / half, y % half);
                    let i = if f1 == 0 {
                        (i1 + i2) % half
                    } else {
                        (i1 + half - i2) % half
                    };
                    (f1 ^ f2) * half + i
                })
            }
            GroupSpec::Dicyclic(n) => {
                let n = *n as usize;
                let two_n = 2 * n;
                // Element f*2n + i is a^i b^f; a^2n = 1, b^2 = a^n,
                // b a b^-1 = a^-1.
                build_table(4 * n, |x, y| {
                    let (f1, i1) = (x / two_n, x % two_n);
                    let (f2, i2) = (y / two_n, y % two_n);
                    if f1 == 0 {
                        f2 * two_n + (i1 + i2) % two_n
                    } else if f2 == 0 {
                        two_n + (i1 + two_n - i2) % two_n
                    } else {
                        (i1 + two_n - i2 + n) % two_n
                    }
                })
            }
            GroupSpec::Symmetric(n) => {
                let n = *n as usize;
                let mut gens = Vec::new();
                if n >= 2 {
                    gens.push(Permutation::parse_cycles(n, "(1 2)").unwrap());
                }
                if n >= 3 {
                    let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                    gens.push(
                        Permutation::parse_cycles(n, &format!("({})", cycle.join(" "))).unwrap(),
                    );
                }
                Ok(GroupTable::from_generators_capped(n, &gens, caps.max_order)?)
            }
            GroupSpec::Alternating(n) => {
                let n = *n as usize;
                let mut gens = Vec::new();
                for i in 1..n.saturating_sub(1) {
                    gens.push(
                        Permutation::parse_cycles(n, &format!("({} {} {})", i, i + 1, i + 2))
                            .unwrap(),
                    );
                }
                Ok(GroupTable::from_generators_capped(n, &gens, caps.max_order)?)
            }
            GroupSpec::Extraspecial { p, copies, sign } => {
                let mut acc = match sign {
                    Sign::Plus => heisenberg(*p as usize)?,
                    Sign::Minus if *p == 2 => GroupSpec::Dicyclic(2).build_capped(caps)?,
                    Sign::Minus => modular_p_cubed(*p as usize)?,
                };
                for _ in 1..*copies {
                    acc = central_product(&acc, &heisenberg(*p as usize)?)?;
                }
                Ok(acc)
            }
            GroupSpec::Zm { m, n, r } => {
                let (m, n, r) = (*m as usize, *n as usize, *r as usize);
                // Element i*n + j is a^i b^j; b a b^-1 = a^r.
                let mut powers = vec![1usize; n];
                for j in 1..n {
                    powers[j] = powers[j - 1] * r % m;
                }
                build_table(m * n, move |x, y| {
                    let (i1, j1) = (x / n, x % n);
                    let (i2, j2) = (y / n, y % n);
                    ((i1 + i2 * powers[j1]) % m) * n + (j1 + j2) % n
                })
            }
            GroupSpec::Pq { p, q } => {
                let r = (2..*q)
                    .find(|&r| pow_mod(r, *p, *q) == 1)
                    .expect("q = 1 (mod p) guarantees an element of order p");
                GroupSpec::Zm { m: *q, n: *p, r }.build_capped(caps)
            }
            GroupSpec::Product(a, b) => {
                let left = a.build_capped(caps)?;
                let right = b.build_capped(caps)?;
                Ok(left.direct_product_capped(&right, caps.max_order)?)
            }
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
                    path: path.clone(),
                    source,
                })?;
                let (degree, gens) = parse_generator_file(&text)?;
                Ok(GroupTable::from_generators_capped(
                    degree,
                    &gens,
                    caps.max_order,
                )?)
            }
        }
    }
}

fn build_table(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<GroupTable, SpecError> {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(mul(a, b) as u16);
        }
    }
    Ok(GroupTable::from_mul_table(n, table)?)
}

/// The exponent-p extraspecial group of order p^3 as upper unitriangular
/// 3x3 matrices over the field with p elements. For p = 2 this is the
/// dihedral group of order 8.
fn heisenberg(p: usize) -> Result<GroupTable, SpecError> {
    let p2 = p * p;
    build_table(p * p2, move |x, y| {
        let (a1, b1, c1) = (x / p2, x / p % p, x % p);
        let (a2, b2, c2) = (y / p2, y / p % p, y % p);
        (a1 + a2) % p * p2 + (b1 + b2) % p * p + (c1 + c2 + a1 * b2) % p
    })
}

/// The exponent-p^2 extraspecial group of order p^3 for odd p: the
/// semidirect product of C_{p^2} by C_p, with the generator of C_p acting
/// as x -> x^(1+p).
fn modular_p_cubed(p: usize) -> Result<GroupTable, SpecError> {
    let p2 = p * p;
    let mut powers = vec![1usize; p];
    for j in 1..p {
        powers[j] = powers[j - 1] * (1 + p) % p2;
    }
    build_table(p2 * p, move |x, y| {
        let (i1, j1) = (x / p, x % p);
        let (i2, j2) = (y / p, y % p);
        (i1 + i2 * powers[j1]) % p2 * p + (j1 + j2) % p
    })
}

/// Central product identifying the two centers: the direct product
/// quotiented by the diagonal central subgroup generated by
/// `(z_a, z_b^-1)`, where each z generates the respective center.
fn central_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable, SpecError> {
    let product = a.direct_product_capped(b, a.order() * b.order())?;
    let za = a
        .center()
        .iter()
        .find(|&x| x != 0)
        .expect("central factor has a nontrivial center");
    let zb = b
        .center()
        .iter()
        .find(|&x| x != 0)
        .expect("central factor has a nontrivial center");
    let diagonal = product.generated_by(&[za * b.order() + b.inv(zb)]);
    Ok(product.quotient(&diagonal)?)
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut base = base % modulus;
    let mut out = 1 % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            out = out * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    out
}

/// Parses the spec expression grammar:
/// `expr := ctor '(' args ')' | expr 'X' expr | 'File(' path ')'`.
/// Constraint violations are reported eagerly, with exact arithmetic.
pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut parser = Parser { text, pos: 0 };
    let spec = parser.parse_expr()?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.error("trailing input after group expression"));
    }
    Ok(spec)
}

/// Validates a generator file and wraps it as a spec.
pub fn load_generator_file(path: &str) -> Result<GroupSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.to_string(),
        source,
    })?;
    parse_generator_file(&text)?;
    Ok(GroupSpec::File(path.to_string()))
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, wanted: char) -> Result<(), SpecError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == wanted => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{wanted}', found '{c}'"))),
            None => Err(self.error(format!("expected '{wanted}', found end of input"))),
        }
    }

    fn parse_ident(&mut self) -> Result<&'a str, SpecError> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(self.error("expected a constructor name"));
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.bump();
        }
        Ok(&self.text[start..self.pos])
    }

    fn parse_int(&mut self) -> Result<u64, SpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| SpecError::Syntax {
                offset: start,
                message: "integer is out of range".into(),
            })
    }

    fn parse_small(&mut self) -> Result<u32, SpecError> {
        let at = self.pos;
        u32::try_from(self.parse_int()?).map_err(|_| SpecError::Syntax {
            offset: at,
            message: "integer is out of range".into(),
        })
    }

    fn parse_sign(&mut self) -> Result<Sign, SpecError> {
        self.skip_ws();
        let quoted = self.peek() == Some('\'');
        if quoted {
            self.bump();
        }
        let sign = match self.peek() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(self.error("expected '+' or '-'")),
        };
        self.bump();
        if quoted {
            if self.peek() != Some('\'') {
                return Err(self.error("expected closing quote after sign"));
            }
            self.bump();
        }
        Ok(sign)
    }

    fn parse_expr(&mut self) -> Result<GroupSpec, SpecError> {
        let mut left = self.parse_term()?;
        loop {
            self.skip_ws();
            if self.pos == self.text.len() || !self.peek().is_some_and(|c| c.is_ascii_alphabetic())
            {
                return Ok(left);
            }
            let at = self.pos;
            let ident = self.parse_ident()?;
            if ident != "X" {
                return Err(SpecError::Syntax {
                    offset: at,
                    message: format!("expected 'X' between group expressions, found '{ident}'"),
                });
            }
            let right = self.parse_term()?;
            left = GroupSpec::Product(Box::new(left), Box::new(right));
        }
    }

    fn parse_term(&mut self) -> Result<GroupSpec, SpecError> {
        let at = self.pos;
        let ident = self.parse_ident()?;
        self.expect('(')?;
        let spec = match ident {
            "C" => GroupSpec::Cyclic(self.parse_int()?),
            "Abelian" => {
                let mut ds = vec![self.parse_int()?];
                loop {
                    self.skip_ws();
                    if self.peek() == Some(',') {
                        self.bump();
                        ds.push(self.parse_int()?);
                    } else {
                        break;
                    }
                }
                GroupSpec::Abelian(ds)
            }
            "D" => GroupSpec::Dihedral(self.parse_int()?),
            "Dic" => GroupSpec::Dicyclic(self.parse_int()?),
            "Q" => {
                let order = self.parse_int()?;
                if order < 8 || !order.is_power_of_two() {
                    return Err(SpecError::Syntax {
                        offset: at,
                        message: format!("Q({order}): order must be a power of two, at least 8"),
                    });
                }
                GroupSpec::Dicyclic(order / 4)
            }
            "S" => GroupSpec::Symmetric(self.parse_small()?),
            "A" => GroupSpec::Alternating(self.parse_small()?),
            "ES" => {
                let p = self.parse_int()?;
                self.expect(',')?;
                self.skip_ws();
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    let copies = self.parse_small()?;
                    self.expect(',')?;
                    let sign = self.parse_sign()?;
                    GroupSpec::Extraspecial { p, copies, sign }
                } else {
                    let sign = self.parse_sign()?;
                    GroupSpec::Extraspecial { p, copies: 1, sign }
                }
            }
            "ES32" => GroupSpec::Extraspecial {
                p: 2,
                copies: 2,
                sign: self.parse_sign()?,
            },
            "ZM" => {
                let m = self.parse_int()?;
                self.expect(',')?;
                let n = self.parse_int()?;
                self.expect(',')?;
                let r = self.parse_int()?;
                GroupSpec::Zm { m, n, r }
            }
            "PQ" => {
                let p = self.parse_int()?;
                self.expect(',')?;
                let q = self.parse_int()?;
                GroupSpec::Pq { p, q }
            }
            "File" => {
                let Some(close) = self.rest().find(')') else {
                    return Err(self.error("unclosed File path"));
                };
                let path = self.rest()[..close].trim().to_string();
                self.pos += close;
                GroupSpec::File(path)
            }
            other => {
                return Err(SpecError::Syntax {
                    offset: at,
                    message: format!("unknown constructor '{other}'"),
                })
            }
        };
        self.expect(')')?;
        spec.validate()?;
        Ok(spec)
    }
}

/// All descending partitions of `n`, in descending lexicographic order.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn extend(remaining: u32, largest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(largest)).rev() {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out
}

/// Invariant-factor decompositions of every abelian group of order `n`,
/// each an ascending divisibility chain `d1 | d2 | ... | dk`.
fn invariant_factor_decompositions(n: u64) -> Vec<Vec<u64>> {
    let signature = factorize(n);
    let per_prime: Vec<Vec<Vec<u32>>> =
        signature.iter().map(|&(_, e)| partitions(e)).collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; per_prime.len()];
    loop {
        let length = signature
            .iter()
            .enumerate()
            .map(|(i, _)| per_prime[i][choice[i]].len())
            .max()
            .unwrap_or(0);
        let mut factors = vec![1u64; length];
        for (i, &(p, _)) in signature.iter().enumerate() {
            for (slot, &exponent) in per_prime[i][choice[i]].iter().enumerate() {
                factors[slot] *= p.pow(exponent);
            }
        }
        factors.reverse(); // ascending divisibility chain
        out.push(factors);

        // Odometer over the per-prime partition choices.
        let mut bump = per_prime.len();
        while bump > 0 {
            choice[bump - 1] += 1;
            if choice[bump - 1] < per_prime[bump - 1].len() {
                break;
            }
            choice[bump - 1] = 0;
            bump -= 1;
        }
        if bump == 0 {
            break;
        }
    }
    out
}

/// Fixed list of metacyclic triples used by the survey, all satisfying the
/// ZM constraints; orders 20, 21, 39, 42 and 55.
pub const ZM_SURVEY_TRIPLES: [(u64, u64, u64); 5] =
    [(5, 4, 2), (7, 3, 2), (7, 6, 3), (13, 3, 3), (11, 5, 3)];

/// The deterministic survey corpus: every constructor family instantiated
/// up to `max_order`, sorted by order and then by spec text.
pub fn survey_corpus(max_order: u64) -> Vec<GroupSpec> {
    let mut specs: Vec<GroupSpec> = Vec::new();

    for n in 1..=max_order {
        specs.push(GroupSpec::Cyclic(n));
    }
    for n in 1..=max_order {
        for factors in invariant_factor_decompositions(n) {
            if factors.len() >= 2 {
                specs.push(GroupSpec::Abelian(factors));
            }
        }
    }
    let mut order = 6;
    while order <= max_order {
        specs.push(GroupSpec::Dihedral(order));
        order += 2;
    }
    for n in 2..=max_order / 4 {
        specs.push(GroupSpec::Dicyclic(n));
    }
    for n in 3..=6u32 {
        if factorial(n) <= max_order {
            specs.push(GroupSpec::Symmetric(n));
        }
        let alternating = GroupSpec::Alternating(n);
        if alternating.order().unwrap() <= max_order {
            specs.push(alternating);
        }
    }
    for q in 3..=max_order {
        if !is_prime(q) {
            continue;
        }
        for p in 2..q {
            if is_prime(p) && q % p == 1 && p * q <= max_order {
                specs.push(GroupSpec::Pq { p, q });
            }
        }
    }
    for &(m, n, r) in &ZM_SURVEY_TRIPLES {
        if m * n <= max_order {
            specs.push(GroupSpec::Zm { m, n, r });
        }
    }
    for p in [2u64, 3, 5, 7] {
        if p.pow(3) <= max_order {
            for sign in [Sign::Plus, Sign::Minus] {
                specs.push(GroupSpec::Extraspecial { p, copies: 1, sign });
            }
        }
    }
    for p in [2u64, 3] {
        if p.pow(5) <= max_order {
            for sign in [Sign::Plus, Sign::Minus] {
                specs.push(GroupSpec::Extraspecial { p, copies: 2, sign });
            }
        }
    }
    let products = [
        GroupSpec::Product(
            Box::new(GroupSpec::Cyclic(2)),
            Box::new(GroupSpec::Pq { p: 2, q: 3 }),
        ),
        GroupSpec::Product(
            Box::new(GroupSpec::Dihedral(8)),
            Box::new(GroupSpec::Cyclic(2)),
        ),
        GroupSpec::Product(
            Box::new(GroupSpec::Cyclic(3)),
            Box::new(GroupSpec::Symmetric(3)),
        ),
        GroupSpec::Product(
            Box::new(GroupSpec::Cyclic(3)),
            Box::new(GroupSpec::Pq { p: 3, q: 7 }),
        ),
    ];
    for product in products {
        if product.order().unwrap() <= max_order {
            specs.push(product);
        }
    }

    specs.sort_by_key(|s| (s.order().unwrap(), s.to_string()));
    specs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_roundtrip() {
        for text in [
            "C(12)",
            "Abelian(2,4)",
            "D(8)",
            "Q(16)",
            "Dic(3)",
            "S(4)",
            "A(5)",
            "ES(3,'+')",
            "ES32('-')",
            "ES(3,2,'-')",
            "ZM(7,3,2)",
            "PQ(3,7)",
            "C(3) X S(3)",
        ] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn parse_accepts_unquoted_signs_and_whitespace() {
        assert_eq!(
            parse_spec("ES(3, +)").unwrap(),
            parse_spec("ES(3,'+')").unwrap()
        );
        assert_eq!(
            parse_spec(" C( 2 )  X  D( 8 ) ").unwrap().to_string(),
            "C(2) X D(8)"
        );
    }

    #[test]
    fn parse_reports_offsets() {
        match parse_spec("C(2) Y D(8)") {
            Err(SpecError::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse_spec("Wat(3)"), Err(SpecError::Syntax { .. })));
        assert!(matches!(parse_spec("C(3) extra"), Err(SpecError::Syntax { .. })));
        assert!(matches!(parse_spec("Q(12)"), Err(SpecError::Syntax { .. })));
    }

    #[test]
    fn zm_constraints_are_checked_eagerly() {
        assert!(matches!(
            parse_spec("ZM(6,2,5)"),
            Err(SpecError::Invalid { .. })
        ));
        assert!(parse_spec("ZM(7,3,2)").is_ok());
        // r^n != 1 (mod m).
        assert!(matches!(
            parse_spec("ZM(7,3,3)"),
            Err(SpecError::Invalid { .. })
        ));
        assert!(matches!(
            parse_spec("PQ(3,5)"),
            Err(SpecError::Invalid { .. })
        ));
        assert!(matches!(
            parse_spec("PQ(4,5)"),
            Err(SpecError::Invalid { .. })
        ));
    }

    #[test]
    fn pq_2_3_is_the_nonabelian_group_of_order_6() {
        let table = parse_spec("PQ(2,3)").unwrap().build().unwrap();
        assert_eq!(table.order(), 6);
        let flags = table.structure_flags();
        assert!(!flags.is_abelian);
        assert_eq!(table.center().len(), 1);
    }

    #[test]
    fn zm_7_3_2_is_order_21_with_cyclic_sylows() {
        let table = parse_spec("ZM(7,3,2)").unwrap().build().unwrap();
        assert_eq!(table.order(), 21);
        let flags = table.structure_flags();
        assert!(!flags.is_abelian && flags.is_solvable);
        assert!((0..21).any(|x| table.element_order(x) == 7));
        assert!((0..21).any(|x| table.element_order(x) == 3));
        assert!(!(0..21).any(|x| table.element_order(x) == 21));
    }

    #[test]
    fn extraspecial_27_types() {
        let plus = parse_spec("ES(3,'+')").unwrap().build().unwrap();
        assert_eq!(plus.order(), 27);
        assert_eq!(plus.center().len(), 3);
        assert_eq!(plus.exponent(), 3);
        assert!(!plus.structure_flags().is_abelian);

        let minus = parse_spec("ES(3,'-')").unwrap().build().unwrap();
        assert_eq!(minus.order(), 27);
        assert_eq!(minus.center().len(), 3);
        assert_eq!(minus.exponent(), 9);
        assert!(!minus.structure_flags().is_abelian);
    }

    #[test]
    fn extraspecial_8_types_are_d8_and_q8() {
        let plus = parse_spec("ES(2,'+')").unwrap().build().unwrap();
        let order_four = (0..8).filter(|&x| plus.element_order(x) == 4).count();
        assert_eq!(order_four, 2, "the dihedral group has two elements of order 4");

        let minus = parse_spec("ES(2,'-')").unwrap().build().unwrap();
        let order_four = (0..8).filter(|&x| minus.element_order(x) == 4).count();
        assert_eq!(order_four, 6, "the quaternion group has six elements of order 4");
    }

    #[test]
    fn extraspecial_32_variants_are_not_isomorphic() {
        let plus = parse_spec("ES32('+')").unwrap().build().unwrap();
        let minus = parse_spec("ES32('-')").unwrap().build().unwrap();
        for table in [&plus, &minus] {
            assert_eq!(table.order(), 32);
            assert_eq!(table.center().len(), 2);
            let quotient = table.quotient(&table.center()).unwrap();
            assert_eq!(quotient.order(), 16);
            assert_eq!(quotient.exponent(), 2, "central quotient is elementary abelian");
        }
        let fours_plus = (0..32).filter(|&x| plus.element_order(x) == 4).count();
        let fours_minus = (0..32).filter(|&x| minus.element_order(x) == 4).count();
        assert_eq!(fours_plus, 12);
        assert_eq!(fours_minus, 20);
        assert_ne!(fours_plus, fours_minus, "distinguishes the isomorphism types");
    }

    #[test]
    fn builds_are_deterministic_and_validated() {
        for text in ["D(12)", "Q(16)", "ES(3,'+')", "ZM(7,3,2)", "C(2) X PQ(2,3)"] {
            let spec = parse_spec(text).unwrap();
            let first = spec.build().unwrap();
            let second = spec.build().unwrap();
            assert_eq!(first, second, "{text} must build bit-identical tables");
        }
    }

    #[test]
    fn product_orders_multiply() {
        let spec = parse_spec("C(3) X S(3)").unwrap();
        assert_eq!(spec.order(), Some(18));
        assert_eq!(spec.build().unwrap().order(), 18);
    }

    #[test]
    fn order_cap_applies_to_builds() {
        let caps = Caps::default().with_max_order(100);
        assert!(matches!(
            parse_spec("S(5)").unwrap().build_capped(&caps),
            Err(SpecError::Group(GroupError::ClosureExceedsCap { cap: 100 }))
        ));
        assert!(parse_spec("S(5)").unwrap().build().is_ok());
    }

    #[test]
    fn invariant_factors_are_divisibility_chains() {
        let decomps = invariant_factor_decompositions(36);
        assert_eq!(decomps.len(), 4);
        for chain in &decomps {
            assert_eq!(chain.iter().product::<u64>(), 36);
            for pair in chain.windows(2) {
                assert_eq!(pair[1] % pair[0], 0, "{chain:?} must be a chain");
            }
        }
    }

    #[test]
    fn survey_corpus_smallest() {
        let corpus = survey_corpus(1);
        assert_eq!(corpus, vec![GroupSpec::Cyclic(1)]);
    }

    #[test]
    fn survey_corpus_order_six() {
        let corpus = survey_corpus(6);
        let texts: Vec<String> = corpus.iter().map(|s| s.to_string()).collect();
        for expected in ["C(1)", "C(2)", "C(3)", "C(4)", "C(5)", "C(6)", "Abelian(2,2)", "D(6)", "PQ(2,3)", "S(3)"] {
            assert!(texts.contains(&expected.to_string()), "missing {expected} in {texts:?}");
        }
        let orders: Vec<u64> = corpus.iter().map(|s| s.order().unwrap()).collect();
        let mut sorted = orders.clone();
        sorted.sort();
        assert_eq!(orders, sorted, "corpus is sorted by order");
    }

    #[test]
    fn survey_corpus_32_has_the_extraspecial_pair() {
        let corpus = survey_corpus(32);
        let texts: Vec<String> = corpus.iter().map(|s| s.to_string()).collect();
        for expected in ["ES32('+')", "ES32('-')", "Q(32)", "D(32)"] {
            assert!(texts.contains(&expected.to_string()), "missing {expected}");
        }
        assert!(corpus.iter().all(|s| s.order().unwrap() <= 32));
        assert_eq!(survey_corpus(32), survey_corpus(32), "deterministic");
    }

    #[test]
    fn every_corpus_group_up_to_24_builds_and_validates() {
        for spec in survey_corpus(24) {
            let table = spec.build().unwrap_or_else(|e| panic!("{spec}: {e}"));
            assert_eq!(table.order() as u64, spec.order().unwrap(), "{spec}");
        }
    }

    #[test]
    fn generator_files_build_groups() {
        let path = std::env::temp_dir().join(format!("cdlat-gens-{}.txt", std::process::id()));
        std::fs::write(
            &path,
            "# dihedral group acting on a square\ndegree: 4\n(1 2 3 4)\n(1 3)\n",
        )
        .unwrap();
        let text = path.to_string_lossy().into_owned();

        let spec = load_generator_file(&text).unwrap();
        assert_eq!(spec, GroupSpec::File(text.clone()));
        let table = spec.build().unwrap();
        assert_eq!(table.order(), 8);

        let parsed = parse_spec(&format!("File({text})")).unwrap();
        assert_eq!(parsed, spec);
        // Products of file groups work like any other spec.
        let doubled = parse_spec(&format!("File({text}) X C(2)")).unwrap();
        assert_eq!(doubled.build().unwrap().order(), 16);

        std::fs::remove_file(&path).unwrap();
        assert!(matches!(spec.build(), Err(SpecError::Io { .. })));
        assert!(matches!(load_generator_file(&text), Err(SpecError::Io { .. })));
    }

    #[test]
    fn generator_file_syntax_errors_carry_line_numbers() {
        let path = std::env::temp_dir().join(format!("cdlat-bad-gens-{}.txt", std::process::id()));
        std::fs::write(&path, "degree: 3\n(1 5)\n").unwrap();
        let result = GroupSpec::File(path.to_string_lossy().into_owned()).build();
        std::fs::remove_file(&path).unwrap();
        assert!(matches!(
            result,
            Err(SpecError::Group(GroupError::GeneratorFile { line: 2, .. }))
        ));
    }
}
