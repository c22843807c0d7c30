//! Base rings and exact scalar arithmetic.
//!
//! Five families of commutative rings are supported, selected at runtime by
//! a descriptor:
//!
//! | descriptor      | ring            | elements                          |
//! |-----------------|-----------------|-----------------------------------|
//! | `z`             | ℤ               | arbitrary-precision integers      |
//! | `q`             | ℚ               | normalized fractions              |
//! | `fp:<p>`        | F_p             | residues 0..p                     |
//! | `zmod:<p>^<k>`  | ℤ/p^k           | residues 0..p^k                   |
//! | `dual:<p>`      | F_p[ε], ε² = 0  | pairs a + bε                      |
//!
//! Primes are bounded by 97, and exponents k ≥ 2 are only allowed for
//! p ≤ 5, which keeps every exhaustive enumeration (element sweeps, square
//! roots by search) at desk scale. All arithmetic is exact: integers and
//! rationals are arbitrary precision, finite rings are reduced residues.
//! There is no floating point anywhere in this crate.
//!
//! Every element carries its ring; mixing rings in an arithmetic operation
//! is a programming error and panics. Canonical forms are unique, so `==`
//! on elements is mathematical equality, and `canonical_cmp` is the fixed
//! total order used wherever the library must make a deterministic choice
//! (square-root tie-breaking, class representatives).

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Primes accepted in ring descriptors.
const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];

fn is_small_prime(p: u32) -> bool {
    SMALL_PRIMES.contains(&p)
}

/// A ring descriptor. Cheap to clone and compare; every [`RingElement`]
/// carries one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ring {
    /// ℤ.
    Integers,
    /// ℚ.
    Rationals,
    /// F_p for a prime p ≤ 97.
    PrimeField(u32),
    /// ℤ/p^k for a prime p, 1 ≤ k ≤ 4 (k ≥ 2 requires p ≤ 5).
    ResidueRing { p: u32, k: u32 },
    /// F_p[ε]/(ε²), the dual numbers over F_p.
    DualNumbers(u32),
}

impl Ring {
    /// Validate the descriptor's prime/exponent bounds.
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Ring::Integers | Ring::Rationals => true,
            Ring::PrimeField(p) | Ring::DualNumbers(p) => is_small_prime(p),
            Ring::ResidueRing { p, k } => {
                is_small_prime(p) && (1..=4).contains(&k) && (k == 1 || p <= 5)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parse(format!("invalid ring descriptor bounds: {self}")))
        }
    }

    /// Parse a descriptor string: `z`, `q`, `fp:<p>`, `zmod:<p>^<k>`, `dual:<p>`.
    pub fn parse(s: &str) -> Result<Ring> {
        let bad = || Error::Parse(format!("unrecognized ring descriptor: {s:?}"));
        let ring = match s {
            "z" => Ring::Integers,
            "q" => Ring::Rationals,
            _ => {
                if let Some(p) = s.strip_prefix("fp:") {
                    Ring::PrimeField(p.parse().map_err(|_| bad())?)
                } else if let Some(rest) = s.strip_prefix("zmod:") {
                    let (p, k) = rest.split_once('^').ok_or_else(bad)?;
                    Ring::ResidueRing {
                        p: p.parse().map_err(|_| bad())?,
                        k: k.parse().map_err(|_| bad())?,
                    }
                } else if let Some(p) = s.strip_prefix("dual:") {
                    Ring::DualNumbers(p.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        };
        ring.validate()?;
        Ok(ring)
    }

    /// Residue modulus for the finite residue-style rings.
    fn modulus(&self) -> Option<u32> {
        match *self {
            Ring::PrimeField(p) => Some(p),
            Ring::ResidueRing { p, k } => Some(p.pow(k)),
            _ => None,
        }
    }

    /// Number of elements, when finite.
    pub fn element_count(&self) -> Option<u64> {
        match *self {
            Ring::Integers | Ring::Rationals => None,
            Ring::PrimeField(p) => Some(p as u64),
            Ring::ResidueRing { p, k } => Some((p as u64).pow(k)),
            Ring::DualNumbers(p) => Some((p as u64) * (p as u64)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.element_count().is_some()
    }

    /// Whether the ring is a field (ℚ, or F_p; ℤ/p^k only when k = 1 is
    /// still a distinct descriptor and is *not* counted as a field here,
    /// because operations that demand a field fix their element semantics
    /// through the descriptor).
    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Rationals | Ring::PrimeField(_))
    }

    /// All elements in canonical order, when the ring is finite.
    pub fn enumerate(&self) -> Option<Vec<RingElement>> {
        match *self {
            Ring::Integers | Ring::Rationals => None,
            Ring::PrimeField(_) | Ring::ResidueRing { .. } => {
                let m = self.modulus().unwrap();
                Some((0..m).map(|r| RingElement::new(self.clone(), Value::Mod(r))).collect())
            }
            Ring::DualNumbers(p) => Some(
                (0..p)
                    .flat_map(|a| {
                        let ring = self.clone();
                        (0..p).map(move |b| RingElement::new(ring.clone(), Value::Dual(a, b)))
                    })
                    .collect(),
            ),
        }
    }

    /// All units in canonical order, when the ring is finite.
    pub fn enumerate_units(&self) -> Option<Vec<RingElement>> {
        self.enumerate().map(|v| v.into_iter().filter(|x| x.is_unit()).collect())
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    /// Image of the integer n under the canonical map ℤ → self.
    pub fn from_i64(&self, n: i64) -> RingElement {
        let value = match *self {
            Ring::Integers => Value::Int(BigInt::from(n)),
            Ring::Rationals => Value::Rat(BigRational::from_integer(BigInt::from(n))),
            Ring::PrimeField(_) | Ring::ResidueRing { .. } => {
                Value::Mod(reduce_i64(n, self.modulus().unwrap()))
            }
            Ring::DualNumbers(p) => Value::Dual(reduce_i64(n, p), 0),
        };
        RingElement::new(self.clone(), value)
    }

    /// Build the dual-numbers element a + bε. Panics unless the ring is
    /// `dual:<p>`.
    pub fn dual(&self, a: i64, b: i64) -> RingElement {
        match *self {
            Ring::DualNumbers(p) => {
                RingElement::new(self.clone(), Value::Dual(reduce_i64(a, p), reduce_i64(b, p)))
            }
            _ => panic!("Ring::dual on non-dual ring {self}"),
        }
    }

    /// Build the rational n/d. Panics unless the ring is ℚ or d divides
    /// exactly in ℤ.
    pub fn fraction(&self, n: i64, d: i64) -> RingElement {
        assert!(d != 0, "zero denominator");
        match self {
            Ring::Rationals => RingElement::new(
                self.clone(),
                Value::Rat(BigRational::new(BigInt::from(n), BigInt::from(d))),
            ),
            _ => {
                let x = self.from_i64(n);
                let y = self.from_i64(d);
                let inv = y.inverse().expect("fraction: denominator not a unit");
                x * inv
            }
        }
    }

    /// µ₂ of the ring: the square roots of 1, in canonical order.
    pub fn mu2(&self) -> Vec<RingElement> {
        self.one().unit_square_roots().expect("1 is a unit")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Ring::Integers => write!(f, "z"),
            Ring::Rationals => write!(f, "q"),
            Ring::PrimeField(p) => write!(f, "fp:{p}"),
            Ring::ResidueRing { p, k } => write!(f, "zmod:{p}^{k}"),
            Ring::DualNumbers(p) => write!(f, "dual:{p}"),
        }
    }
}

fn reduce_i64(n: i64, m: u32) -> u32 {
    let m = m as i64;
    (((n % m) + m) % m) as u32
}

/// Canonical payload of an element. Residues are stored reduced, rationals
/// normalized (positive denominator, lowest terms — maintained by
/// `BigRational` itself), dual numbers as reduced pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Mod(u32),
    Dual(u32, u32),
}

/// An exact scalar, tagged with its ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl RingElement {
    fn new(ring: Ring, value: Value) -> Self {
        RingElement { ring, value }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_zero(),
            Value::Rat(r) => r.is_zero(),
            Value::Mod(r) => *r == 0,
            Value::Dual(a, b) => *a == 0 && *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    fn assert_same_ring(&self, other: &RingElement) {
        assert!(
            self.ring == other.ring,
            "mixed rings in arithmetic: {} vs {}",
            self.ring,
            other.ring
        );
    }

    fn modulus(&self) -> u64 {
        match self.ring {
            Ring::PrimeField(p) => p as u64,
            Ring::ResidueRing { p, k } => (p as u64).pow(k),
            Ring::DualNumbers(p) => p as u64,
            _ => unreachable!("modulus of infinite ring"),
        }
    }

    /// True iff the element has a multiplicative inverse; see [`Self::inverse`].
    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// The multiplicative inverse, when it exists.
    ///
    /// ℤ: ±1. ℚ: any nonzero. F_p and ℤ/p^k: residues coprime to p, by
    /// extended Euclid. Dual numbers: a + bε with a ≠ 0, inverse
    /// a⁻¹ − a⁻²bε.
    pub fn inverse(&self) -> Option<RingElement> {
        match &self.value {
            Value::Int(n) => {
                if n.abs().is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Value::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(RingElement::new(self.ring.clone(), Value::Rat(r.recip())))
                }
            }
            Value::Mod(r) => {
                let m = self.modulus();
                mod_inverse(*r as u64, m)
                    .map(|inv| RingElement::new(self.ring.clone(), Value::Mod(inv as u32)))
            }
            Value::Dual(a, b) => {
                let p = self.modulus();
                let ai = mod_inverse(*a as u64, p)?;
                // (a + bε)(ai + ci ε) = 1 needs ci = -ai² b.
                let ci = (p - (ai * ai % p) * (*b as u64) % p) % p;
                Some(RingElement::new(self.ring.clone(), Value::Dual(ai as u32, ci as u32)))
            }
        }
    }

    /// x^n for integer n, with negative exponents through the inverse.
    /// Panics if n < 0 and x is not a unit.
    pub fn pow(&self, n: i64) -> RingElement {
        let base = if n < 0 {
            self.inverse().expect("pow: negative exponent of a non-unit")
        } else {
            self.clone()
        };
        let mut acc = self.ring.one();
        for _ in 0..n.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    /// All y with y² = x, sorted by canonical order. Errors on non-units.
    pub fn unit_square_roots(&self) -> Result<Vec<RingElement>> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        match &self.value {
            Value::Int(n) => {
                // Units of ℤ are ±1; only 1 is a square, with roots ∓1.
                if n.is_one() {
                    Ok(vec![self.ring.from_i64(-1), self.ring.from_i64(1)])
                } else {
                    Ok(vec![])
                }
            }
            Value::Rat(r) => {
                if r.is_negative() {
                    return Ok(vec![]);
                }
                let (num, den) = (r.numer(), r.denom());
                let rn = num.sqrt();
                let rd = den.sqrt();
                if &(&rn * &rn) == num && &(&rd * &rd) == den {
                    let pos = BigRational::new(rn, rd);
                    let neg = -pos.clone();
                    Ok(vec![
                        RingElement::new(self.ring.clone(), Value::Rat(neg)),
                        RingElement::new(self.ring.clone(), Value::Rat(pos)),
                    ])
                } else {
                    Ok(vec![])
                }
            }
            // Finite rings: exhaustive search in canonical order.
            _ => {
                let all = self.ring.enumerate().expect("finite ring");
                Ok(all.into_iter().filter(|y| &(y.clone() * y.clone()) == self).collect())
            }
        }
    }

    /// Total order on elements of one ring: residues numerically, dual
    /// numbers lexicographically on (a, b), integers numerically, rationals
    /// lexicographically on (numerator, denominator).
    pub fn canonical_cmp(&self, other: &RingElement) -> Ordering {
        self.assert_same_ring(other);
        match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Rat(a), Value::Rat(b)) => {
                a.numer().cmp(b.numer()).then_with(|| a.denom().cmp(b.denom()))
            }
            (Value::Mod(a), Value::Mod(b)) => a.cmp(b),
            (Value::Dual(a1, b1), Value::Dual(a2, b2)) => a1.cmp(a2).then(b1.cmp(b2)),
            _ => unreachable!("same ring, same value kind"),
        }
    }

    /// For residue-style rings, the reduced numeric representative.
    pub fn residue(&self) -> Option<u32> {
        match self.value {
            Value::Mod(r) => Some(r),
            _ => None,
        }
    }

    /// For integers, the value (arbitrary precision).
    pub fn as_bigint(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Int(n) => Some(n),
            _ => None,
        }
    }

    /// Parse the canonical string form of an element of `ring`:
    /// integers `-12`, rationals `-3/2`, residues `7`, dual numbers
    /// `2+3*eps` (or a bare constant part).
    pub fn parse(ring: &Ring, s: &str) -> Result<RingElement> {
        let bad = || Error::Parse(format!("bad element {s:?} for ring {ring}"));
        let s = s.trim();
        match ring {
            Ring::Integers => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(RingElement::new(ring.clone(), Value::Int(n)))
            }
            Ring::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(RingElement::new(ring.clone(), Value::Rat(BigRational::new(n, d))))
            }
            Ring::PrimeField(_) | Ring::ResidueRing { .. } => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(ring.from_i64(n))
            }
            Ring::DualNumbers(_) => {
                // "a", or "a+b*eps" with a, b integers.
                if let Some((a, rest)) = s.split_once('+') {
                    let b = rest.strip_suffix("*eps").ok_or_else(bad)?;
                    let a: i64 = a.parse().map_err(|_| bad())?;
                    let b: i64 = b.parse().map_err(|_| bad())?;
                    Ok(ring.dual(a, b))
                } else {
                    let a: i64 = s.parse().map_err(|_| bad())?;
                    Ok(ring.dual(a, 0))
                }
            }
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(n) => write!(f, "{n}"),
            Value::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Mod(r) => write!(f, "{r}"),
            Value::Dual(a, b) => {
                if *b == 0 {
                    write!(f, "{a}")
                } else {
                    write!(f, "{a}+{b}*eps")
                }
            }
        }
    }
}

fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    // Extended Euclid on (x, m); inverse exists iff gcd = 1.
    let (mut r0, mut r1) = (m as i64, (x % m) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 == 1 {
        Some((((t0 % m as i64) + m as i64) % m as i64) as u64)
    } else {
        None
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                self.assert_same_ring(&rhs);
                let value = match (self.value, rhs.value) {
                    (Value::Int(a), Value::Int(b)) => Value::Int(a $op b),
                    (Value::Rat(a), Value::Rat(b)) => Value::Rat(a $op b),
                    (Value::Mod(a), Value::Mod(b)) => {
                        let m = match self.ring.modulus() {
                            Some(m) => m as u64,
                            None => unreachable!(),
                        };
                        Value::Mod(mod_binop_reduce(a as u64, b as u64, m, stringify!($method)))
                    }
                    (Value::Dual(a1, b1), Value::Dual(a2, b2)) => {
                        let p = match self.ring {
                            Ring::DualNumbers(p) => p as u64,
                            _ => unreachable!(),
                        };
                        dual_binop(a1 as u64, b1 as u64, a2 as u64, b2 as u64, p, stringify!($method))
                    }
                    _ => unreachable!("same ring, same value kind"),
                };
                RingElement::new(self.ring, value)
            }
        }
        impl std::ops::$trait<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                std::ops::$trait::$method(self.clone(), rhs.clone())
            }
        }
        impl std::ops::$trait<&RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                std::ops::$trait::$method(self, rhs.clone())
            }
        }
        impl std::ops::$trait<RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                std::ops::$trait::$method(self.clone(), rhs)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);

fn mod_binop_reduce(a: u64, b: u64, m: u64, op: &str) -> u32 {
    let r = match op {
        "add" => (a + b) % m,
        "sub" => (a + m - b) % m,
        "mul" => (a * b) % m,
        _ => unreachable!(),
    };
    r as u32
}

fn dual_binop(a1: u64, b1: u64, a2: u64, b2: u64, p: u64, op: &str) -> Value {
    let (a, b) = match op {
        "add" => ((a1 + a2) % p, (b1 + b2) % p),
        "sub" => ((a1 + p - a2) % p, (b1 + p - b2) % p),
        // (a1 + b1 ε)(a2 + b2 ε) = a1 a2 + (a1 b2 + b1 a2) ε.
        "mul" => (a1 * a2 % p, (a1 * b2 + b1 * a2) % p),
        _ => unreachable!(),
    };
    Value::Dual(a as u32, b as u32)
}

impl std::ops::Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let zero = self.ring.zero();
        zero - self
    }
}

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -self.clone()
    }
}

/// Apply the canonical homomorphism from `x`'s ring into `dst`.
///
/// Supported: the identity on any ring; ℤ → anything; ℤ/p^k → ℤ/p^k′ for
/// k′ ≤ k and ℤ/p^k → F_p; dual numbers → F_p by ε ↦ 0. Everything else is
/// `NoCanonicalHom`.
pub fn ring_hom_apply(dst: &Ring, x: &RingElement) -> Result<RingElement> {
    if x.ring == *dst {
        return Ok(x.clone());
    }
    match (&x.ring, dst) {
        (Ring::Integers, _) => match &x.value {
            Value::Int(n) => Ok(from_bigint(dst, n)),
            _ => unreachable!(),
        },
        (Ring::ResidueRing { p, k }, Ring::ResidueRing { p: p2, k: k2 })
            if p == p2 && k2 <= k =>
        {
            Ok(dst.from_i64(x.residue().unwrap() as i64))
        }
        (Ring::ResidueRing { p, .. }, Ring::PrimeField(p2)) if p == p2 => {
            Ok(dst.from_i64(x.residue().unwrap() as i64))
        }
        (Ring::DualNumbers(p), Ring::PrimeField(p2)) if p == p2 => match x.value {
            Value::Dual(a, _) => Ok(dst.from_i64(a as i64)),
            _ => unreachable!(),
        },
        _ => Err(Error::NoCanonicalHom),
    }
}

fn from_bigint(ring: &Ring, n: &BigInt) -> RingElement {
    match ring {
        Ring::Integers => RingElement::new(ring.clone(), Value::Int(n.clone())),
        Ring::Rationals => {
            RingElement::new(ring.clone(), Value::Rat(BigRational::from_integer(n.clone())))
        }
        Ring::PrimeField(_) | Ring::ResidueRing { .. } | Ring::DualNumbers(_) => {
            let m = BigInt::from(match ring {
                Ring::DualNumbers(p) => *p,
                _ => ring.modulus().unwrap(),
            });
            let r = ((n % &m) + &m) % &m;
            let r: i64 = r.try_into().expect("reduced residue fits in i64");
            ring.from_i64(r)
        }
    }
}
