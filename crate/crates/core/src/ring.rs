//! The 16-element ring `R = F₂[u,v]/(u², v², uv − vu)`.
//!
//! An element `a + bu + cv + duv` is packed as a nibble with `a` at bit 0,
//! `b` at bit 1, `c` at bit 2 and `d` at bit 3.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RingElement(u8);

/// Exponents `(i, j)` of the monomial `uⁱvʲ` stored at each nibble bit.
const MONOMIALS: [(u8, u8); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

const fn monomial_bit(i: u8, j: u8) -> Option<u8> {
    // u² = v² = 0 kills any exponent above one
    match (i, j) {
        (0, 0) => Some(0),
        (1, 0) => Some(1),
        (0, 1) => Some(2),
        (1, 1) => Some(3),
        _ => None,
    }
}

const fn build_mul_table() -> [u8; 256] {
    let mut table = [0u8; 256];
    let mut x = 0;
    while x < 16 {
        let mut y = 0;
        while y < 16 {
            let mut acc = 0u8;
            let mut p = 0;
            while p < 4 {
                if x >> p & 1 == 1 {
                    let mut q = 0;
                    while q < 4 {
                        if y >> q & 1 == 1 {
                            let (i1, j1) = MONOMIALS[p];
                            let (i2, j2) = MONOMIALS[q];
                            if let Some(bit) = monomial_bit(i1 + i2, j1 + j2) {
                                acc ^= 1 << bit;
                            }
                        }
                        q += 1;
                    }
                }
                p += 1;
            }
            table[x * 16 + y] = acc;
            y += 1;
        }
        x += 1;
    }
    table
}

/// Products of all nibble pairs, by expanding monomials and reducing.
static MUL_TABLE: [u8; 256] = build_mul_table();

impl RingElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(0b0001);
    pub const U: Self = Self(0b0010);
    pub const V: Self = Self(0b0100);
    pub const UV: Self = Self(0b1000);

    pub fn from_coeffs(a: u8, b: u8, c: u8, d: u8) -> Self {
        Self((a & 1) | (b & 1) << 1 | (c & 1) << 2 | (d & 1) << 3)
    }

    pub fn from_nibble(nibble: u8) -> Self {
        assert!(nibble < 16, "ring nibble out of range");
        Self(nibble)
    }

    pub fn nibble(self) -> u8 {
        self.0
    }

    /// Coefficients `(a, b, c, d)` of `1, u, v, uv`.
    pub fn coeffs(self) -> (u8, u8, u8, u8) {
        (
            self.0 & 1,
            self.0 >> 1 & 1,
            self.0 >> 2 & 1,
            self.0 >> 3 & 1,
        )
    }

    pub fn all() -> impl Iterator<Item = RingElement> {
        (0..16).map(RingElement)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for RingElement {
    type Output = RingElement;

    fn add(self, rhs: Self) -> Self {
        ring_add(self, rhs)
    }
}

impl std::ops::Mul for RingElement {
    type Output = RingElement;

    fn mul(self, rhs: Self) -> Self {
        ring_mul(self, rhs)
    }
}

pub fn ring_add(x: RingElement, y: RingElement) -> RingElement {
    RingElement(x.0 ^ y.0)
}

pub fn ring_mul(x: RingElement, y: RingElement) -> RingElement {
    RingElement(MUL_TABLE[usize::from(x.0) * 16 + usize::from(y.0)])
}

/// The F₂-valued trace `a + bu + cv + duv ↦ a + b + c + d`.
pub fn trace(x: RingElement) -> u8 {
    (x.0.count_ones() & 1) as u8
}

/// Coefficients of an element in the basis [`BASIS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BasisCoeffs {
    pub g1: u8,
    pub g2: u8,
    pub g3: u8,
    pub g4: u8,
}

/// `b₁ = 1 + u + v`, `b₂ = u + v`, `b₃ = u`, `b₄ = uv`.
pub const BASIS: [RingElement; 4] = [
    RingElement(0b0111),
    RingElement(0b0110),
    RingElement(0b0010),
    RingElement(0b1000),
];

impl BasisCoeffs {
    pub fn as_array(self) -> [u8; 4] {
        [self.g1, self.g2, self.g3, self.g4]
    }

    pub fn reconstruct(self) -> RingElement {
        self.as_array()
            .iter()
            .zip(BASIS)
            .filter(|(g, _)| **g == 1)
            .fold(RingElement::ZERO, |acc, (_, b)| acc + b)
    }
}

pub fn basis_decompose(x: RingElement) -> BasisCoeffs {
    let (a, b, c, d) = x.coeffs();
    BasisCoeffs {
        g1: a,
        g2: a ^ c,
        g3: b ^ c,
        g4: d,
    }
}

/// `(τ(x b₁), τ(x b₂), τ(x b₃), τ(x b₄))`, read off the basis coefficients.
pub fn trace_pairings(x: RingElement) -> [u8; 4] {
    let g = basis_decompose(x);
    [g.g1 ^ g.g4, g.g3, g.g2, g.g1]
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let names = ["1", "u", "v", "uv"];
        let terms: Vec<&str> = (0..4)
            .filter(|&i| self.0 >> i & 1 == 1)
            .map(|i| names[i])
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl FromStr for RingElement {
    type Err = Error;

    /// Sums of the terms `0`, `1`, `u`, `v`, `uv` (or `vu`) joined by `+`.
    fn from_str(s: &str) -> Result<Self> {
        let mut acc = RingElement::ZERO;
        for term in s.split('+') {
            let term = term.trim();
            let t = match term {
                "0" => RingElement::ZERO,
                "1" => RingElement::ONE,
                "u" => RingElement::U,
                "v" => RingElement::V,
                "uv" | "vu" => RingElement::UV,
                _ => return Err(Error::InvalidRingElement(s.to_string())),
            };
            acc = acc + t;
        }
        Ok(acc)
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    /// Closed-form product of `(a₁ + b₁u + c₁v + d₁uv)(a₂ + …)`.
    fn closed_form_mul(x: RingElement, y: RingElement) -> RingElement {
        let (a1, b1, c1, d1) = x.coeffs();
        let (a2, b2, c2, d2) = y.coeffs();
        RingElement::from_coeffs(
            a1 & a2,
            (a1 & b2) ^ (b1 & a2),
            (a1 & c2) ^ (c1 & a2),
            (a1 & d2) ^ (d1 & a2) ^ (b1 & c2) ^ (c1 & b2),
        )
    }

    #[test]
    fn add_examples() {
        assert_eq!(el("1+u") + el("1+u"), RingElement::ZERO);
        assert_eq!(el("u") + el("v"), el("u+v"));
        assert_eq!(el("1+uv") + el("u+v"), el("1+u+v+uv"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(el("u") * el("u"), RingElement::ZERO);
        assert_eq!(el("v") * el("v"), RingElement::ZERO);
        assert_eq!(el("u") * el("v"), el("uv"));
        assert_eq!(el("1+u") * el("1+v"), el("1+u+v+uv"));
    }

    #[test]
    fn mul_table_matches_closed_form() {
        for x in RingElement::all() {
            for y in RingElement::all() {
                assert_eq!(ring_mul(x, y), closed_form_mul(x, y), "{x} * {y}");
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for x in RingElement::all() {
            assert_eq!(x + x, RingElement::ZERO);
            assert_eq!(x * RingElement::ONE, x);
            for y in RingElement::all() {
                assert_eq!(x * y, y * x);
                assert_eq!(x + y, y + x);
                for z in RingElement::all() {
                    assert_eq!(x * (y + z), x * y + x * z);
                    assert_eq!((x * y) * z, x * (y * z));
                    assert_eq!((x + y) + z, x + (y + z));
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace(el("u")), 1);
        assert_eq!(trace(el("1+u+v+uv")), 0);
        assert_eq!(trace(RingElement::ZERO), 0);
    }

    #[test]
    fn trace_is_additive() {
        for x in RingElement::all() {
            for y in RingElement::all() {
                assert_eq!(trace(x + y), trace(x) ^ trace(y));
            }
        }
    }

    #[test]
    fn trace_kernel_holds_no_nonzero_ideal() {
        // The principal ideal of x is spanned over F₂ by x, xu, xv, xuv.
        for x in RingElement::all().filter(|x| !x.is_zero()) {
            let generators = [
                x,
                x * RingElement::U,
                x * RingElement::V,
                x * RingElement::UV,
            ];
            assert!(
                generators.iter().any(|&g| trace(g) == 1),
                "ideal of {x} in ker τ"
            );
        }
    }

    #[test]
    fn basis_decompose_examples() {
        let c = |g1, g2, g3, g4| BasisCoeffs { g1, g2, g3, g4 };
        assert_eq!(basis_decompose(el("uv")), c(0, 0, 0, 1));
        assert_eq!(basis_decompose(el("u")), c(0, 0, 1, 0));
        assert_eq!(basis_decompose(el("1")), c(1, 1, 0, 0));
        for x in RingElement::all() {
            assert_eq!(basis_decompose(x).reconstruct(), x);
        }
    }

    #[test]
    fn trace_pairings_examples() {
        assert_eq!(trace_pairings(el("uv")), [1, 0, 0, 0]);
        assert_eq!(trace_pairings(RingElement::ZERO), [0, 0, 0, 0]);
        assert_eq!(trace_pairings(el("1")), [1, 0, 1, 1]);
    }

    #[test]
    fn trace_pairings_match_direct_products() {
        for x in RingElement::all() {
            let direct: Vec<u8> = BASIS.iter().map(|&b| trace(x * b)).collect();
            assert_eq!(trace_pairings(x).to_vec(), direct, "x = {x}");
        }
    }

    #[test]
    fn display_and_parse() {
        for x in RingElement::all() {
            assert_eq!(el(&x.to_string()), x);
        }
        assert_eq!(el(" u + vu "), el("u+uv"));
        assert_eq!(el("1+1"), RingElement::ZERO);
        assert!("w".parse::<RingElement>().is_err());
        assert!("".parse::<RingElement>().is_err());
    }
}
