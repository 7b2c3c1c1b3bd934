//! Discrete-time flows of asynchronous Boolean systems: a function
//! `phi: B^n -> B^n` whose coordinates are recomputed at the instants chosen
//! by a computation function `alpha`.

use std::collections::HashMap;

use crate::dsignal::DiscreteSignal;
use crate::error::{Error, Result};
use crate::point::Point;

pub const MAX_FLOW_WIDTH: usize = 20;

/// A function `B^n -> B^n` as a truth table indexed by the integer encoding
/// of the argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    width: usize,
    table: Vec<Point>,
}

impl BooleanFunction {
    pub fn new(width: usize, table: Vec<Point>) -> Result<BooleanFunction> {
        if width == 0 || width > MAX_FLOW_WIDTH {
            return Err(Error::domain(format!(
                "flow width must lie in 1..={MAX_FLOW_WIDTH}, got {width}"
            )));
        }
        if table.len() != 1 << width {
            return Err(Error::domain(format!(
                "truth table needs {} entries, got {}",
                1usize << width,
                table.len()
            )));
        }
        if let Some(v) = table.iter().find(|v| v.width() != width) {
            return Err(Error::Width {
                expected: width,
                found: v.width(),
            });
        }
        Ok(BooleanFunction { width, table })
    }

    pub fn identity(width: usize) -> Result<BooleanFunction> {
        let table = (0..1u64 << width.min(MAX_FLOW_WIDTH))
            .map(|b| Point::new(width, b))
            .collect::<Result<_>>()?;
        BooleanFunction::new(width, table)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn table(&self) -> &[Point] {
        &self.table
    }

    pub fn apply(&self, mu: Point) -> Point {
        self.table[mu.bits() as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Const(bool),
    Var(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Xor(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, mu: Point) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Var(i) => mu.coord(*i),
            Expr::Not(e) => !e.eval(mu),
            Expr::And(a, b) => a.eval(mu) && b.eval(mu),
            Expr::Or(a, b) => a.eval(mu) || b.eval(mu),
            Expr::Xor(a, b) => a.eval(mu) != b.eval(mu),
        }
    }
}

/// Recursive descent over `or := and (('|' | '+' | '∪' | '^' | '⊕') and)*`,
/// `and := not (('.' | '*' | '&' | '·') not)*`, `not := ('!' | '~' | '¬') not | atom`.
struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    width: usize,
    which: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        let at = self.chars.get(self.pos).map_or(self.src.len(), |c| c.0);
        Error::parse(
            format!("expression {}, column {}", self.which + 1, at + 1),
            msg,
        )
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn or(&mut self) -> Result<Expr> {
        let mut lhs = self.and()?;
        loop {
            let op = match self.peek() {
                Some('|' | '+' | '∪') => Expr::Or as fn(_, _) -> _,
                Some('^' | '⊕') => Expr::Xor,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.and()?;
            lhs = op(Box::new(lhs), Box::new(rhs));
        }
    }

    fn and(&mut self) -> Result<Expr> {
        let mut lhs = self.not()?;
        while let Some('.' | '*' | '&' | '·') = self.peek() {
            self.pos += 1;
            let rhs = self.not()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Expr> {
        if let Some('!' | '~' | '¬') = self.peek() {
            self.pos += 1;
            return Ok(Expr::Not(Box::new(self.not()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.or()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c @ ('0' | '1')) => {
                self.pos += 1;
                Ok(Expr::Const(c == '1'))
            }
            Some('x' | 'm' | 'μ') => {
                let start = self.pos;
                let name: String = self.chars[self.pos..]
                    .iter()
                    .map(|c| c.1)
                    .take_while(|c| c.is_alphabetic())
                    .collect();
                if !matches!(name.as_str(), "x" | "mu" | "μ") {
                    return Err(self.err(format!("unknown name {name:?}")));
                }
                self.pos += name.chars().count();
                let digits: String = self.chars[self.pos..]
                    .iter()
                    .map(|c| c.1)
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                if digits.is_empty() {
                    return Err(self.err("variable needs an index"));
                }
                let i: usize = digits.parse().map_err(|_| self.err("bad variable index"))?;
                if i == 0 || i > self.width {
                    self.pos = start;
                    return Err(self.err(format!("variable index {i} outside 1..={}", self.width)));
                }
                self.pos += digits.len();
                Ok(Expr::Var(i))
            }
            Some(c) => Err(self.err(format!("unexpected {c:?}"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn parse_expr(src: &str, width: usize, which: usize) -> Result<Expr> {
    let mut p = Parser {
        chars: src.char_indices().collect(),
        pos: 0,
        width,
        which,
        src,
    };
    let e = p.or()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Builds the truth table of the coordinate expressions `exprs[i]` for
/// `phi_{i+1}`, over variables `x1..xn` (also `mu1..`).
///
/// Operators: negation `! ~ ¬`, conjunction `. * & ·`, disjunction `| + ∪`,
/// exclusive or `^ ⊕`. Negation binds tightest, then conjunction; disjunction
/// and exclusive or share the lowest level and associate to the left.
pub fn parse_phi(exprs: &[&str]) -> Result<BooleanFunction> {
    let width = exprs.len();
    if width == 0 || width > MAX_FLOW_WIDTH {
        return Err(Error::domain(format!(
            "need 1..={MAX_FLOW_WIDTH} coordinate expressions, got {width}"
        )));
    }
    let parsed: Vec<Expr> = exprs
        .iter()
        .enumerate()
        .map(|(i, s)| parse_expr(s, width, i))
        .collect::<Result<_>>()?;
    let table = (0..1u64 << width)
        .map(|b| {
            let mu = Point::new(width, b).expect("fits");
            let coords: Vec<bool> = parsed.iter().map(|e| e.eval(mu)).collect();
            Point::from_coords(&coords).expect("width checked")
        })
        .collect();
    BooleanFunction::new(width, table)
}

/// Which coordinates are recomputed at each step `k >= 0`, as a lasso.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputationFunction {
    width: usize,
    prefix: Vec<Point>,
    cycle: Vec<Point>,
}

impl ComputationFunction {
    pub fn new(width: usize, prefix: Vec<Point>, cycle: Vec<Point>) -> Result<ComputationFunction> {
        if cycle.is_empty() {
            return Err(Error::domain("computation cycle must be nonempty"));
        }
        if let Some(v) = prefix.iter().chain(&cycle).find(|v| v.width() != width) {
            return Err(Error::Width {
                expected: width,
                found: v.width(),
            });
        }
        Ok(ComputationFunction {
            width,
            prefix,
            cycle,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn phase(&self, k: usize) -> usize {
        if k < self.prefix.len() {
            k
        } else {
            self.prefix.len() + (k - self.prefix.len()) % self.cycle.len()
        }
    }

    /// The coordinates computed at step `k`.
    pub fn at(&self, k: usize) -> Point {
        let i = self.phase(k);
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[i - self.prefix.len()]
        }
    }
}

/// The flow from `mu0`: `x(-1) = mu0` and, for `k >= 0`, coordinate `i` of
/// `x(k)` is `phi_i(x(k-1))` when `alpha(k)_i = 1` and `x(k-1)_i` otherwise.
pub fn run_flow(phi: &BooleanFunction, alpha: &ComputationFunction, mu0: Point) -> Result<DiscreteSignal> {
    let n = phi.width();
    for w in [alpha.width(), mu0.width()] {
        if w != n {
            return Err(Error::Width { expected: n, found: w });
        }
    }
    let step = |state: Point, a: Point| -> Point {
        let target = phi.apply(state);
        Point::new(n, (target.bits() & a.bits()) | (state.bits() & !a.bits())).expect("same width")
    };
    let bound = alpha.prefix.len() + (1usize << n) * alpha.cycle.len() + 1;
    let mut values = vec![mu0];
    // (state before step k, phase of step k) -> k, once the phases cycle
    let mut seen: HashMap<(Point, usize), usize> = HashMap::new();
    let mut state = mu0;
    for k in 0..=bound {
        if k >= alpha.prefix.len() {
            if let Some(&k1) = seen.get(&(state, alpha.phase(k))) {
                // x(k1 - 1 ..) repeats with period k - k1
                let prefix = values[..k1].to_vec();
                let cycle = values[k1..k].to_vec();
                return DiscreteSignal::new(n, prefix, cycle);
            }
            seen.insert((state, alpha.phase(k)), k);
        }
        state = step(state, alpha.at(k));
        values.push(state);
    }
    unreachable!("a repeated (state, phase) pair occurs within {bound} steps")
}

/// A flow description: `phi`, `alpha` and the initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSpec {
    pub phi: BooleanFunction,
    pub alpha: ComputationFunction,
    pub init: Point,
}

impl FlowSpec {
    pub fn run(&self) -> Result<DiscreteSignal> {
        run_flow(&self.phi, &self.alpha, self.init)
    }
}

fn parse_points(list: &str, loc: &str) -> Result<Vec<Point>> {
    list.split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|e: Error| Error::parse(loc, e.to_string())))
        .collect()
}

/// Parses a flow file:
///
/// ```text
/// phi: x1 | ~x1 & ~x2; ~x1 | x1 & ~x2
/// alpha: prefix=01 cycle=11
/// init: 00
/// ```
///
/// `prefix=` and `cycle=` take comma-separated bit strings; `prefix=` may be omitted.
pub fn parse_flow(text: &str) -> Result<FlowSpec> {
    let mut phi = None;
    let mut alpha = None;
    let mut init = None;
    for (lineno, raw) in text.lines().enumerate() {
        let loc = format!("line {}", lineno + 1);
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(&loc, "expected key: value"))?;
        let rest = rest.trim();
        match key.trim() {
            "phi" => {
                let exprs: Vec<&str> = rest.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
                phi = Some(parse_phi(&exprs).map_err(|e| match e {
                    Error::Parse { location, message } => Error::parse(format!("{loc}, {location}"), message),
                    other => other,
                })?);
            }
            "alpha" => {
                let mut prefix = Vec::new();
                let mut cycle = None;
                let mut current: Option<&str> = None;
                let mut parts: Vec<(&str, String)> = Vec::new();
                for word in rest.split_whitespace() {
                    if let Some((k, v)) = word.split_once('=') {
                        current = Some(k);
                        parts.push((k, v.to_string()));
                    } else if current.is_some() {
                        let last = parts.last_mut().unwrap();
                        last.1.push(',');
                        last.1.push_str(word);
                    } else {
                        return Err(Error::parse(&loc, format!("expected prefix= or cycle=, found {word:?}")));
                    }
                }
                for (k, v) in parts {
                    match k {
                        "prefix" => prefix = parse_points(&v, &loc)?,
                        "cycle" => cycle = Some(parse_points(&v, &loc)?),
                        other => return Err(Error::parse(&loc, format!("unknown alpha field {other:?}"))),
                    }
                }
                let cycle = cycle.ok_or_else(|| Error::parse(&loc, "alpha needs cycle="))?;
                let width = cycle.first().map_or(0, |p| p.width());
                alpha = Some(
                    ComputationFunction::new(width, prefix, cycle)
                        .map_err(|e| Error::parse(&loc, e.to_string()))?,
                );
            }
            "init" => init = Some(rest.parse::<Point>().map_err(|e| Error::parse(&loc, e.to_string()))?),
            other => return Err(Error::parse(&loc, format!("unknown key {other:?}"))),
        }
    }
    let missing = |k: &str| Error::parse("flow file", format!("missing {k}:"));
    Ok(FlowSpec {
        phi: phi.ok_or_else(|| missing("phi"))?,
        alpha: alpha.ok_or_else(|| missing("alpha"))?,
        init: init.ok_or_else(|| missing("init"))?,
    })
}
