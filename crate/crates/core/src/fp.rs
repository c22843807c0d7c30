//! Flat `u8` kernels over F_p for the exhaustive sweeps: rank-4 algebra
//! tables, isomorphism search, and ternary-form bookkeeping.
//!
//! The exact tower ([`crate::ring::RingElement`] and friends) is the
//! source of truth; everything here is a transliteration into fixed-width
//! residues so that the p⁶-form classifications stay desk-scale. The
//! isomorphism search does not brute-force all unit-preserving 4×4
//! matrices (p¹² candidates): a candidate map is determined by the images
//! (v₁, v₂, v₃) of the three non-unit basis vectors, and whenever some
//! structure constant c[i][j][3] with i, j ∈ {1, 2} is nonzero the product
//! equation for (i, j) *solves* for v₃ linearly. That cuts the search to
//! p⁸ pairs with a constant amount of work each; the rare tables with all
//! four of those constants zero fall back to checking the four v₃-free
//! equations before looping v₃.

use crate::clifford::AlgebraStructure4;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// A vector in F_p⁴, coordinates in basis (1, f₁, f₂, f₃).
pub type V4 = [u8; 4];

/// Coefficients (a₁, a₂, a₃, u₂₃, u₁₃, u₁₂) of a ternary form, as residues.
pub type FormCode = [u8; 6];

#[inline]
fn addp(p: u8, x: u8, y: u8) -> u8 {
    let s = x as u16 + y as u16;
    (s % p as u16) as u8
}

#[inline]
fn subp(p: u8, x: u8, y: u8) -> u8 {
    let s = x as u16 + p as u16 - y as u16;
    (s % p as u16) as u8
}

#[inline]
fn mulp(p: u8, x: u8, y: u8) -> u8 {
    ((x as u16 * y as u16) % p as u16) as u8
}

#[inline]
fn invp(p: u8, x: u8) -> u8 {
    debug_assert!(x % p != 0);
    // p is tiny; scan.
    (1..p).find(|&y| mulp(p, x, y) == 1).expect("unit in F_p")
}

/// A rank-4 algebra table with entries reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpAlg {
    p: u8,
    c: [[[u8; 4]; 4]; 4],
}

impl FpAlg {
    pub fn new(p: u8, c: [[[u8; 4]; 4]; 4]) -> Self {
        assert!(p >= 2);
        assert!(c.iter().flatten().flatten().all(|&x| x < p));
        FpAlg { p, c }
    }

    /// Transliterate an exact table over F_p.
    pub fn from_algebra(a: &AlgebraStructure4) -> Result<Self> {
        let p = match a.ring() {
            Ring::PrimeField(p) if *p <= 251 => *p as u8,
            _ => return Err(Error::NotAField),
        };
        let mut c = [[[0u8; 4]; 4]; 4];
        for (i, plane) in c.iter_mut().enumerate() {
            for (j, row) in plane.iter_mut().enumerate() {
                for (k, slot) in row.iter_mut().enumerate() {
                    *slot = a.constant(i, j, k).residue().expect("mod element") as u8;
                }
            }
        }
        Ok(FpAlg { p, c })
    }

    pub fn to_algebra(&self) -> AlgebraStructure4 {
        let ring = Ring::PrimeField(self.p as u32);
        let c = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                std::array::from_fn(|k| ring.from_i64(self.c[i][j][k] as i64))
            })
        });
        AlgebraStructure4::new(&ring, c)
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u8 {
        self.c[i][j][k]
    }

    /// Product of coordinate vectors.
    pub fn mul_vec(&self, x: &V4, y: &V4) -> V4 {
        let p = self.p;
        let mut out = [0u8; 4];
        for i in 0..4 {
            if x[i] == 0 {
                continue;
            }
            for j in 0..4 {
                if y[j] == 0 {
                    continue;
                }
                let s = mulp(p, x[i], y[j]);
                for k in 0..4 {
                    out[k] = addp(p, out[k], mulp(p, s, self.c[i][j][k]));
                }
            }
        }
        out
    }

    /// Right-hand side of the product equation (i, j) for candidate images
    /// v: c[i][j][0]·1 + Σ_k c[i][j][k]·v_k.
    fn rhs(&self, i: usize, j: usize, v: &[V4; 3]) -> V4 {
        let p = self.p;
        let mut out = [self.c[i][j][0], 0, 0, 0];
        for k in 1..4 {
            let s = self.c[i][j][k];
            if s == 0 {
                continue;
            }
            for t in 0..4 {
                out[t] = addp(p, out[t], mulp(p, s, v[k - 1][t]));
            }
        }
        out
    }

    /// det of the 3×3 block (rows 1..3 of the candidate columns) ≠ 0;
    /// with the unit column fixed at e₀ this is invertibility of the map.
    fn minor_invertible(&self, v: &[V4; 3]) -> bool {
        let p = self.p;
        let m = |r: usize, c: usize| v[c][r + 1];
        let det = subp(
            p,
            addp(
                p,
                addp(
                    p,
                    mulp(p, m(0, 0), mulp(p, m(1, 1), m(2, 2))),
                    mulp(p, m(0, 1), mulp(p, m(1, 2), m(2, 0))),
                ),
                mulp(p, m(0, 2), mulp(p, m(1, 0), m(2, 1))),
            ),
            addp(
                p,
                addp(
                    p,
                    mulp(p, m(0, 2), mulp(p, m(1, 1), m(2, 0))),
                    mulp(p, m(0, 1), mulp(p, m(1, 0), m(2, 2))),
                ),
                mulp(p, m(0, 0), mulp(p, m(1, 2), m(2, 1))),
            ),
        );
        det != 0
    }

    /// All nine product equations of a map from `other` into `self`
    /// sending f_k to v_k, plus invertibility.
    fn verify_images(&self, other: &FpAlg, v: &[V4; 3]) -> bool {
        for i in 1..4 {
            for j in 1..4 {
                let lhs = self.mul_vec(&v[i - 1], &v[j - 1]);
                if lhs != other_rhs(self.p, other, i, j, v) {
                    return false;
                }
            }
        }
        self.minor_invertible(v)
    }

    /// An isomorphism `other` → `self` as the images of (f₁, f₂, f₃), or
    /// `None`. Both tables must share p.
    pub fn iso_from(&self, other: &FpAlg) -> Option<[V4; 3]> {
        assert_eq!(self.p, other.p);
        let mut found = None;
        self.search(other, &mut |v| {
            found = Some(v);
            true
        });
        found
    }

    /// All automorphisms, as image triples.
    pub fn automorphisms(&self) -> Vec<[V4; 3]> {
        let mut out = Vec::new();
        self.search(self, &mut |v| {
            out.push(v);
            false
        });
        out
    }

    /// Core search for multiplicative unit-preserving invertible maps
    /// `other` → `self`; calls `emit` on every hit, stopping early when it
    /// returns true.
    fn search(&self, other: &FpAlg, emit: &mut dyn FnMut([V4; 3]) -> bool) {
        let p = self.p;
        let n = (p as usize).pow(4);
        // Equation (i, j) with i, j ∈ {1, 2} involves v₃ only through the
        // constant other.c[i][j][3]; a nonzero one solves for v₃.
        let pivot = [(1usize, 1usize), (1, 2), (2, 1), (2, 2)]
            .into_iter()
            .find(|&(i, j)| other.c[i][j][3] != 0);
        let v1_alone = other.c[1][1][2] == 0 && other.c[1][1][3] == 0;

        let mut v1 = [0u8; 4];
        for a in 0..n {
            decode_v4(p, a, &mut v1);
            if v1_alone {
                // v₁² = c₀·1 + c₁·v₁ must already hold.
                let lhs = self.mul_vec(&v1, &v1);
                let mut rhs = [other.c[1][1][0], 0, 0, 0];
                for t in 0..4 {
                    rhs[t] = addp(p, rhs[t], mulp(p, other.c[1][1][1], v1[t]));
                }
                if lhs != rhs {
                    continue;
                }
            }
            let mut v2 = [0u8; 4];
            for b in 0..n {
                decode_v4(p, b, &mut v2);
                match pivot {
                    Some((i, j)) => {
                        let vi = if i == 1 { &v1 } else { &v2 };
                        let vj = if j == 1 { &v1 } else { &v2 };
                        let lhs = self.mul_vec(vi, vj);
                        // Solve c₃·v₃ = lhs − c₀·1 − c₁v₁ − c₂v₂.
                        let inv = invp(p, other.c[i][j][3]);
                        let mut v3 = [0u8; 4];
                        for t in 0..4 {
                            let mut r = lhs[t];
                            if t == 0 {
                                r = subp(p, r, other.c[i][j][0]);
                            }
                            r = subp(p, r, mulp(p, other.c[i][j][1], v1[t]));
                            r = subp(p, r, mulp(p, other.c[i][j][2], v2[t]));
                            v3[t] = mulp(p, inv, r);
                        }
                        let v = [v1, v2, v3];
                        if self.verify_images(other, &v) && emit(v) {
                            return;
                        }
                    }
                    None => {
                        // The four (i, j ≤ 2) equations are v₃-free: prune.
                        let v0 = [v1, v2, [0u8; 4]];
                        let mut ok = true;
                        for (i, j) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
                            let vi = if i == 1 { &v1 } else { &v2 };
                            let vj = if j == 1 { &v1 } else { &v2 };
                            if self.mul_vec(vi, vj) != other_rhs(p, other, i, j, &v0) {
                                ok = false;
                                break;
                            }
                        }
                        if !ok {
                            continue;
                        }
                        let mut v3 = [0u8; 4];
                        for c in 0..n {
                            decode_v4(p, c, &mut v3);
                            let v = [v1, v2, v3];
                            if self.verify_images(other, &v) && emit(v) {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
}

fn other_rhs(p: u8, other: &FpAlg, i: usize, j: usize, v: &[V4; 3]) -> V4 {
    debug_assert_eq!(p, other.p);
    other.rhs(i, j, v)
}

#[inline]
fn decode_v4(p: u8, mut code: usize, out: &mut V4) {
    for slot in out.iter_mut() {
        *slot = (code % p as usize) as u8;
        code /= p as usize;
    }
}

/// Decode a form index into coefficients, a₁ most significant, so index
/// order is lexicographic order on (a₁, a₂, a₃, u₂₃, u₁₃, u₁₂).
pub fn decode_form(p: u8, idx: u32) -> FormCode {
    let mut f = [0u8; 6];
    let mut rest = idx;
    for t in (0..6).rev() {
        f[t] = (rest % p as u32) as u8;
        rest /= p as u32;
    }
    debug_assert_eq!(rest, 0);
    f
}

pub fn form_index(p: u8, f: &FormCode) -> u32 {
    f.iter().fold(0u32, |acc, &d| acc * p as u32 + d as u32)
}

/// q(x) for x ∈ F_p³.
pub fn eval_form(p: u8, f: &FormCode, x: &[u8; 3]) -> u8 {
    let [a1, a2, a3, u23, u13, u12] = *f;
    let mut v = 0u8;
    v = addp(p, v, mulp(p, a1, mulp(p, x[0], x[0])));
    v = addp(p, v, mulp(p, a2, mulp(p, x[1], x[1])));
    v = addp(p, v, mulp(p, a3, mulp(p, x[2], x[2])));
    v = addp(p, v, mulp(p, u23, mulp(p, x[1], x[2])));
    v = addp(p, v, mulp(p, u13, mulp(p, x[0], x[2])));
    v = addp(p, v, mulp(p, u12, mulp(p, x[0], x[1])));
    v
}

/// λ·(q ∘ g): columns of g are the images of the basis vectors.
pub fn act_form(p: u8, f: &FormCode, g: &[[u8; 3]; 3], lam: u8) -> FormCode {
    let col = |j: usize| [g[0][j], g[1][j], g[2][j]];
    let a: [u8; 3] = std::array::from_fn(|j| eval_form(p, f, &col(j)));
    let cross = |i: usize, j: usize| {
        let ci = col(i);
        let cj = col(j);
        let s = [
            addp(p, ci[0], cj[0]),
            addp(p, ci[1], cj[1]),
            addp(p, ci[2], cj[2]),
        ];
        subp(p, subp(p, eval_form(p, f, &s), a[i]), a[j])
    };
    let out = [a[0], a[1], a[2], cross(1, 2), cross(0, 2), cross(0, 1)];
    std::array::from_fn(|t| mulp(p, lam, out[t]))
}

/// Half-discriminant 4a₁a₂a₃ + u₂₃u₁₃u₁₂ − a₁u₂₃² − a₂u₁₃² − a₃u₁₂².
pub fn d0_form(p: u8, f: &FormCode) -> u8 {
    let [a1, a2, a3, u23, u13, u12] = *f;
    let four = (4 % p as u16) as u8;
    let mut v = mulp(p, four, mulp(p, a1, mulp(p, a2, a3)));
    v = addp(p, v, mulp(p, u23, mulp(p, u13, u12)));
    v = subp(p, v, mulp(p, a1, mulp(p, u23, u23)));
    v = subp(p, v, mulp(p, a2, mulp(p, u13, u13)));
    v = subp(p, v, mulp(p, a3, mulp(p, u12, u12)));
    v
}

pub fn det3(p: u8, g: &[[u8; 3]; 3]) -> u8 {
    let pos = addp(
        p,
        addp(
            p,
            mulp(p, g[0][0], mulp(p, g[1][1], g[2][2])),
            mulp(p, g[0][1], mulp(p, g[1][2], g[2][0])),
        ),
        mulp(p, g[0][2], mulp(p, g[1][0], g[2][1])),
    );
    let neg = addp(
        p,
        addp(
            p,
            mulp(p, g[0][2], mulp(p, g[1][1], g[2][0])),
            mulp(p, g[0][1], mulp(p, g[1][0], g[2][2])),
        ),
        mulp(p, g[0][0], mulp(p, g[1][2], g[2][1])),
    );
    subp(p, pos, neg)
}

/// All of GL₃(F_p), dense enumeration with a determinant filter.
pub fn gl3(p: u8) -> Vec<[[u8; 3]; 3]> {
    let n = (p as u64).pow(9);
    let mut out = Vec::new();
    for code in 0..n {
        let mut g = [[0u8; 3]; 3];
        let mut rest = code;
        for row in g.iter_mut() {
            for slot in row.iter_mut() {
                *slot = (rest % p as u64) as u8;
                rest /= p as u64;
            }
        }
        if det3(p, &g) != 0 {
            out.push(g);
        }
    }
    out
}
