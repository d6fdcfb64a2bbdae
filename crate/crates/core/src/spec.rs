//! Group constructor expressions.
//!
//! ```text
//! spec  := term ('x' term)*                      direct product, left-assoc
//! term  := NAME '(' args ')'
//!        | 'Perm' '[' perm (',' perm)* ']'
//!        | 'CP' '(' spec ',' spec ')'            central product
//!        | '(' spec ')'
//! perm  := cycle+            e.g. (0 1 2)(3 4), and () for the identity
//! NAME  := C | Ab | D | Q | SD | M | Heis | ESP2 | ES | S | A   (any case)
//! ```
//!
//! Parameter conventions: `D(n)` is the dihedral group of order `2n` (so the
//! order-8 dihedral group is `D(4)`), `Q(m)` the dicyclic group of order
//! `4m` (the quaternion group is `Q(2)`), `SD(k)` and `M(p,k)` have order
//! `2^k` and `p^k`, `ES(p,n,t)` has order `p^(2n+1)` with type `+`/`-` for
//! `p = 2` and `p`/`p2` (exponent) for odd `p`.

use std::fmt;
use std::str::FromStr;

use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtraspecialType {
    Plus,
    Minus,
    ExponentP,
    ExponentP2,
}

impl ExtraspecialType {
    fn token(self) -> &'static str {
        match self {
            ExtraspecialType::Plus => "+",
            ExtraspecialType::Minus => "-",
            ExtraspecialType::ExponentP => "p",
            ExtraspecialType::ExponentP2 => "p2",
        }
    }
}

/// One cycle-notation permutation: its disjoint cycles.
pub type CycleList = Vec<Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u32),
    Abelian(Vec<u32>),
    Dihedral(u32),
    Dicyclic(u32),
    SemiDihedral(u32),
    ModularMaxCyclic { p: u32, k: u32 },
    Heisenberg(u32),
    ExtraspecialP2(u32),
    Extraspecial { p: u32, n: u32, kind: ExtraspecialType },
    Symmetric(u32),
    Alternating(u32),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    CentralProduct(Box<GroupSpec>, Box<GroupSpec>),
    Perm(Vec<CycleList>),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    /// Parameter range checks.
    pub fn validate(&self) -> Result<()> {
        let range = |ok: bool, msg: String| if ok { Ok(()) } else { Err(Error::Range(msg)) };
        match self {
            GroupSpec::Cyclic(n) => range(*n >= 1, format!("C({n}) needs n >= 1")),
            GroupSpec::Abelian(ns) => range(
                !ns.is_empty() && ns.iter().all(|&n| n >= 1),
                "Ab needs at least one factor, each >= 1".into(),
            ),
            GroupSpec::Dihedral(n) => range(*n >= 1, format!("D({n}) needs n >= 1")),
            GroupSpec::Dicyclic(m) => range(*m >= 2, format!("Q({m}) needs m >= 2")),
            GroupSpec::SemiDihedral(k) => range(*k >= 4 && *k < 32, format!("SD({k}) needs 4 <= k < 32")),
            GroupSpec::ModularMaxCyclic { p, k } => {
                range(is_prime(*p as u64), format!("M({p},{k}) needs a prime p"))?;
                let min = if *p == 2 { 4 } else { 3 };
                range(*k >= min && *k < 32, format!("M({p},{k}) needs k >= {min}"))
            }
            GroupSpec::Heisenberg(p) => range(is_prime(*p as u64), format!("Heis({p}) needs a prime")),
            GroupSpec::ExtraspecialP2(p) => {
                range(is_prime(*p as u64) && *p != 2, format!("ESP2({p}) needs an odd prime"))
            }
            GroupSpec::Extraspecial { p, n, kind } => {
                range(is_prime(*p as u64), format!("ES({p},..) needs a prime p"))?;
                range(*n >= 1 && *n < 16, format!("ES(..,{n},..) needs 1 <= n < 16"))?;
                let ok = match kind {
                    ExtraspecialType::Plus | ExtraspecialType::Minus => *p == 2,
                    ExtraspecialType::ExponentP | ExtraspecialType::ExponentP2 => *p != 2,
                };
                range(ok, format!("ES type {} does not apply to p = {p}", kind.token()))
            }
            GroupSpec::Symmetric(n) => range(*n >= 1, format!("S({n}) needs n >= 1")),
            GroupSpec::Alternating(n) => range(*n >= 1, format!("A({n}) needs n >= 1")),
            GroupSpec::Product(a, b) | GroupSpec::CentralProduct(a, b) => {
                a.validate()?;
                b.validate()
            }
            GroupSpec::Perm(gens) => {
                for g in gens {
                    let mut pts: Vec<u32> = g.iter().flatten().copied().collect();
                    pts.sort_unstable();
                    if pts.windows(2).any(|w| w[0] == w[1]) {
                        return Err(Error::Range("a point repeats within one permutation".into()));
                    }
                }
                Ok(())
            }
        }
    }

    /// Direct-product operands, flattened left to right.
    pub fn product_factors(&self) -> Vec<&GroupSpec> {
        match self {
            GroupSpec::Product(a, b) => {
                let mut out = a.product_factors();
                out.extend(b.product_factors());
                out
            }
            other => vec![other],
        }
    }

    /// `(p, n)` when the constructor always yields an extraspecial group of
    /// order `p^(2n+1)`.
    pub fn extraspecial_shape(&self) -> Option<(u32, u32)> {
        match self {
            GroupSpec::Dihedral(4) | GroupSpec::Dicyclic(2) => Some((2, 1)),
            GroupSpec::Heisenberg(p) | GroupSpec::ExtraspecialP2(p) => Some((*p, 1)),
            GroupSpec::Extraspecial { p, n, .. } => Some((*p, *n)),
            _ => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C({n})"),
            GroupSpec::Abelian(ns) => {
                let ns: Vec<String> = ns.iter().map(u32::to_string).collect();
                write!(f, "Ab({})", ns.join(","))
            }
            GroupSpec::Dihedral(n) => write!(f, "D({n})"),
            GroupSpec::Dicyclic(m) => write!(f, "Q({m})"),
            GroupSpec::SemiDihedral(k) => write!(f, "SD({k})"),
            GroupSpec::ModularMaxCyclic { p, k } => write!(f, "M({p},{k})"),
            GroupSpec::Heisenberg(p) => write!(f, "Heis({p})"),
            GroupSpec::ExtraspecialP2(p) => write!(f, "ESP2({p})"),
            GroupSpec::Extraspecial { p, n, kind } => write!(f, "ES({p},{n},{})", kind.token()),
            GroupSpec::Symmetric(n) => write!(f, "S({n})"),
            GroupSpec::Alternating(n) => write!(f, "A({n})"),
            GroupSpec::Product(a, b) => {
                write!(f, "{a} x ")?;
                if matches!(**b, GroupSpec::Product(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            GroupSpec::CentralProduct(a, b) => write!(f, "CP({a}, {b})"),
            GroupSpec::Perm(gens) => {
                f.write_str("Perm[")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    if g.is_empty() {
                        f.write_str("()")?;
                    }
                    for c in g {
                        let c: Vec<String> = c.iter().map(u32::to_string).collect();
                        write!(f, "({})", c.join(" "))?;
                    }
                }
                f.write_str("]")
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

/// Parses and range-checks a constructor expression.
pub fn parse_spec(input: &str) -> Result<GroupSpec> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("end of input or 'x'"));
    }
    spec.validate()?;
    Ok(spec)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, expected: &str) -> Error {
        let found = match self.chars.get(self.pos) {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        Error::Parse {
            position: self.pos,
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some('x' | 'X')) {
            self.pos += 1;
            let rhs = self.term()?;
            acc = GroupSpec::product(acc, rhs);
        }
        Ok(acc)
    }

    fn name(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        Some((start, self.chars[start..self.pos].iter().collect()))
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("a number"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| Error::Parse {
            position: start,
            message: format!("number {text} is too large"),
        })
    }

    fn args(&mut self) -> Result<Vec<u32>> {
        self.expect('(')?;
        let mut out = vec![self.number()?];
        while self.eat(',') {
            out.push(self.number()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn term(&mut self) -> Result<GroupSpec> {
        if self.eat('(') {
            let inner = self.spec()?;
            self.expect(')')?;
            return Ok(inner);
        }
        let Some((start, name)) = self.name() else {
            return Err(self.error("a constructor name"));
        };
        let arity = |args: &Vec<u32>, n: usize, this: &Self| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse {
                    position: this.pos,
                    message: format!("{name} takes {n} argument(s), got {}", args.len()),
                })
            }
        };
        let upper = name.to_ascii_uppercase();
        match upper.as_str() {
            "PERM" => self.perm_list(),
            "CP" => {
                self.expect('(')?;
                let a = self.spec()?;
                self.expect(',')?;
                let b = self.spec()?;
                self.expect(')')?;
                Ok(GroupSpec::CentralProduct(Box::new(a), Box::new(b)))
            }
            "ES" => {
                self.expect('(')?;
                let p = self.number()?;
                self.expect(',')?;
                let n = self.number()?;
                self.expect(',')?;
                let kind = self.es_type()?;
                self.expect(')')?;
                Ok(GroupSpec::Extraspecial { p, n, kind })
            }
            "AB" => Ok(GroupSpec::Abelian(self.args()?)),
            "C" | "D" | "Q" | "SD" | "HEIS" | "ESP2" | "S" | "A" => {
                let a = self.args()?;
                arity(&a, 1, self)?;
                let v = a[0];
                Ok(match upper.as_str() {
                    "C" => GroupSpec::Cyclic(v),
                    "D" => GroupSpec::Dihedral(v),
                    "Q" => GroupSpec::Dicyclic(v),
                    "SD" => GroupSpec::SemiDihedral(v),
                    "HEIS" => GroupSpec::Heisenberg(v),
                    "ESP2" => GroupSpec::ExtraspecialP2(v),
                    "S" => GroupSpec::Symmetric(v),
                    _ => GroupSpec::Alternating(v),
                })
            }
            "M" => {
                let a = self.args()?;
                arity(&a, 2, self)?;
                Ok(GroupSpec::ModularMaxCyclic { p: a[0], k: a[1] })
            }
            _ => Err(Error::Parse {
                position: start,
                message: format!(
                    "unknown constructor '{name}'; expected one of C, Ab, D, Q, SD, M, Heis, ESP2, ES, S, A, CP, Perm"
                ),
            }),
        }
    }

    fn es_type(&mut self) -> Result<ExtraspecialType> {
        if self.eat('+') {
            return Ok(ExtraspecialType::Plus);
        }
        if self.eat('-') {
            return Ok(ExtraspecialType::Minus);
        }
        match self.name() {
            Some((_, t)) if t.eq_ignore_ascii_case("p") => Ok(ExtraspecialType::ExponentP),
            Some((_, t)) if t.eq_ignore_ascii_case("p2") => Ok(ExtraspecialType::ExponentP2),
            Some((start, _)) => {
                self.pos = start;
                Err(self.error("extraspecial type '+', '-', 'p' or 'p2'"))
            }
            None => Err(self.error("extraspecial type '+', '-', 'p' or 'p2'")),
        }
    }

    fn perm_list(&mut self) -> Result<GroupSpec> {
        self.expect('[')?;
        let mut gens = vec![self.perm()?];
        while self.eat(',') {
            gens.push(self.perm()?);
        }
        self.expect(']')?;
        Ok(GroupSpec::Perm(gens))
    }

    fn perm(&mut self) -> Result<CycleList> {
        if self.peek() != Some('(') {
            return Err(self.error("'(' starting a cycle"));
        }
        let mut cycles = Vec::new();
        while self.eat('(') {
            let mut cycle = Vec::new();
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                cycle.push(self.number()?);
                self.eat(',');
            }
            self.expect(')')?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Ok(cycles)
    }
}
