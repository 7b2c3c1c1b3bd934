//! Fixed-width binary points and the four componentwise Boolean laws.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_WIDTH: usize = 64;

/// A value in {0,1}^n, packed into one word.
///
/// Coordinate 1 is the most significant bit, so the bit string `"01"`
/// denotes the point with coordinate 1 equal to 0 and coordinate 2 equal to 1.
/// Points of equal width order by the integer value of their bit string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    width: u8,
    bits: u64,
}

fn mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

fn check_width(width: usize) -> Result<()> {
    if width == 0 || width > MAX_WIDTH {
        return Err(Error::domain(format!(
            "width must lie in 1..={MAX_WIDTH}, got {width}"
        )));
    }
    Ok(())
}

impl Point {
    /// Builds a point from its integer encoding; bits above `width` must be clear.
    pub fn new(width: usize, bits: u64) -> Result<Point> {
        check_width(width)?;
        if bits & !mask(width) != 0 {
            return Err(Error::domain(format!(
                "value {bits} does not fit in {width} bits"
            )));
        }
        Ok(Point {
            width: width as u8,
            bits,
        })
    }

    pub fn zero(width: usize) -> Result<Point> {
        Point::new(width, 0)
    }

    pub fn ones(width: usize) -> Result<Point> {
        check_width(width)?;
        Ok(Point {
            width: width as u8,
            bits: mask(width),
        })
    }

    /// The one-coordinate point 0 or 1.
    pub fn bit(b: bool) -> Point {
        Point {
            width: 1,
            bits: b as u64,
        }
    }

    /// Builds a point from coordinates listed first to last.
    pub fn from_coords(coords: &[bool]) -> Result<Point> {
        check_width(coords.len())?;
        let bits = coords.iter().fold(0u64, |acc, &c| (acc << 1) | c as u64);
        Ok(Point {
            width: coords.len() as u8,
            bits,
        })
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Coordinate `i`, counted from 1 at the most significant end.
    pub fn coord(self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.width(), "coordinate {i} out of range");
        (self.bits >> (self.width() - i)) & 1 == 1
    }

    /// Returns a copy with coordinate `i` (1-based) set to `v`.
    pub fn with_coord(self, i: usize, v: bool) -> Point {
        assert!(i >= 1 && i <= self.width(), "coordinate {i} out of range");
        let m = 1u64 << (self.width() - i);
        let bits = if v { self.bits | m } else { self.bits & !m };
        Point { bits, ..self }
    }

    pub fn not(self) -> Point {
        Point {
            width: self.width,
            bits: !self.bits & mask(self.width()),
        }
    }

    fn same_width(self, other: Point) -> Result<()> {
        if self.width != other.width {
            return Err(Error::Width {
                expected: self.width(),
                found: other.width(),
            });
        }
        Ok(())
    }

    pub fn and(self, other: Point) -> Result<Point> {
        self.same_width(other)?;
        Ok(Point {
            bits: self.bits & other.bits,
            ..self
        })
    }

    pub fn or(self, other: Point) -> Result<Point> {
        self.same_width(other)?;
        Ok(Point {
            bits: self.bits | other.bits,
            ..self
        })
    }

    pub fn xor(self, other: Point) -> Result<Point> {
        self.same_width(other)?;
        Ok(Point {
            bits: self.bits ^ other.bits,
            ..self
        })
    }

    /// All 2^width points in increasing order. Intended for small widths.
    pub fn all(width: usize) -> Result<impl Iterator<Item = Point>> {
        check_width(width)?;
        if width > 24 {
            return Err(Error::domain(format!(
                "refusing to enumerate 2^{width} points"
            )));
        }
        Ok((0..(1u64 << width)).map(move |bits| Point {
            width: width as u8,
            bits,
        }))
    }
}

/// The Boolean laws applied coordinate by coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Not,
    And,
    Or,
    Xor,
}

/// Applies `op` per coordinate. `b` must be absent exactly when `op` is `Not`.
pub fn point_componentwise(op: BoolOp, a: Point, b: Option<Point>) -> Result<Point> {
    match (op, b) {
        (BoolOp::Not, None) => Ok(a.not()),
        (BoolOp::Not, Some(_)) => Err(Error::domain("not takes one operand")),
        (_, None) => Err(Error::domain(format!("{op:?} takes two operands"))),
        (BoolOp::And, Some(b)) => a.and(b),
        (BoolOp::Or, Some(b)) => a.or(b),
        (BoolOp::Xor, Some(b)) => a.xor(b),
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.width() {
            f.write_str(if self.coord(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Point> {
        let coords = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(
                    format!("{s:?}"),
                    format!("invalid bit character {c:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Point::from_coords(&coords)
            .map_err(|e| Error::parse(format!("{s:?}"), e.to_string()))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
