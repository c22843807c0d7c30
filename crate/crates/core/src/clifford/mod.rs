//! Clifford algebras of ternary forms and the Υ correspondence.
//!
//! The full Clifford algebra C(q) of a rank-3 form is free of rank 8 with
//! basis e_S indexed by subsets S ⊆ {1,2,3} in the order
//! (∅, {1}, {2}, {3}, {1,2}, {1,3}, {2,3}, {1,2,3}), where e_S is the
//! increasing product of generators. Products are computed by rewriting to
//! this normal form with the defining relations
//!
//!   eᵢeᵢ → q(eᵢ),      eⱼeᵢ → b_q(eᵢ,eⱼ) − eᵢeⱼ   (i < j),
//!
//! where b_q is the polar form (so b_q(eᵢ,eⱼ) = u_{ij}).
//!
//! The even part C₀(q) is free of rank 4 on (1, e₂e₃, e₁e₃, e₁e₂). A
//! bilinear lift b of q produces the basis change ψ_b onto the *lambda
//! side*: the rank-4 module with basis (1, f₁, f₂, f₃), where
//!
//!   f₁ = e₂∧e₃,  f₂ = −e₁∧e₃,  f₃ = e₁∧e₂
//!
//! (the cyclic convention: fᵢ pairs with eᵢ under the wedge), and
//! ψ_b(eᵢeⱼ) = (eᵢ∧eⱼ) + b(eᵢ,eⱼ)·1. Transporting the multiplication of
//! C₀(q_b) along ψ_b yields an associative unital algebra structure Υ(b)
//! on the lambda side, recorded as explicit structure constants. Υ is a
//! bijection onto the *specialized* structures; its polynomial inverse
//! lives in the `azumaya` module.
//!
//! Everything downstream (similarity transport, lifting sections, the
//! exhaustive classifications) speaks the lambda-side language, so algebra
//! maps always store lambda-side matrices.

pub mod bourbaki;
pub mod lift;

pub use lift::{
    c0_of_similarity, c0_of_similarity_with_scheme, lift_section, scaling_iso,
    transfer_to_lambda2, SectionVariant,
};

use crate::error::Result;
use crate::linalg::Mat;
use crate::quadform::{induced_quadratic, BilinearForm3, QuadraticForm3};
use crate::ring::{ring_hom_apply, Ring, RingElement};

/// Basis subsets of {1,2,3} in the fixed order.
pub const SUBSETS: [&[u8]; 8] =
    [&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]];

fn subset_index(word: &[u8]) -> usize {
    SUBSETS.iter().position(|s| *s == word).expect("not a sorted basis word")
}

/// An element of the rank-8 Clifford algebra C(q), in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordElement {
    ring: Ring,
    coeffs: [RingElement; 8],
}

impl CliffordElement {
    pub fn zero(ring: &Ring) -> CliffordElement {
        CliffordElement { ring: ring.clone(), coeffs: std::array::from_fn(|_| ring.zero()) }
    }

    pub fn one(ring: &Ring) -> CliffordElement {
        CliffordElement::basis(ring, 0)
    }

    /// The basis element e_S for subset index s (0..8).
    pub fn basis(ring: &Ring, s: usize) -> CliffordElement {
        let mut x = CliffordElement::zero(ring);
        x.coeffs[s] = ring.one();
        x
    }

    /// The generator eᵢ, i ∈ {1,2,3}.
    pub fn generator(ring: &Ring, i: u8) -> CliffordElement {
        CliffordElement::basis(ring, subset_index(&[i]))
    }

    /// A degree-1 element with the given coordinates (image of a column
    /// vector under V → C(q)).
    pub fn vector(ring: &Ring, v: &[RingElement]) -> CliffordElement {
        assert_eq!(v.len(), 3);
        let mut x = CliffordElement::zero(ring);
        for (i, c) in v.iter().enumerate() {
            x.coeffs[1 + i] = c.clone();
        }
        x
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElement; 8] {
        &self.coeffs
    }

    pub fn coeff(&self, s: usize) -> &RingElement {
        &self.coeffs[s]
    }

    pub fn add(&self, other: &CliffordElement) -> CliffordElement {
        let coeffs = std::array::from_fn(|i| &self.coeffs[i] + &other.coeffs[i]);
        CliffordElement { ring: self.ring.clone(), coeffs }
    }

    pub fn scale(&self, c: &RingElement) -> CliffordElement {
        let coeffs = std::array::from_fn(|i| &self.coeffs[i] * c);
        CliffordElement { ring: self.ring.clone(), coeffs }
    }

    /// Is the element supported on even subsets only?
    pub fn is_even(&self) -> bool {
        [1usize, 2, 3, 7].iter().all(|&s| self.coeffs[s].is_zero())
    }
}

/// Normal form of the product of generators `word` (not necessarily
/// sorted, repeats allowed) in C(q).
fn reduce_word(q: &QuadraticForm3, word: &[u8]) -> CliffordElement {
    let ring = q.ring();
    // Find the first out-of-order or repeated adjacent pair.
    for i in 0..word.len().saturating_sub(1) {
        let (a, b) = (word[i], word[i + 1]);
        if a == b {
            // eᵢeᵢ = q(eᵢ) = a_i.
            let mut rest = word.to_vec();
            rest.drain(i..i + 2);
            return reduce_word(q, &rest).scale(&q.coeffs()[(a - 1) as usize]);
        }
        if a > b {
            // eₐe_b = b_q(e_b, eₐ) − e_be_a for b < a; u-coefficients sit at
            // positions 3 (u₂₃), 4 (u₁₃), 5 (u₁₂) in the coefficient tuple.
            let u = match (b, a) {
                (2, 3) => &q.coeffs()[3],
                (1, 3) => &q.coeffs()[4],
                (1, 2) => &q.coeffs()[5],
                _ => unreachable!(),
            };
            let mut dropped = word.to_vec();
            dropped.drain(i..i + 2);
            let mut swapped = word.to_vec();
            swapped.swap(i, i + 1);
            let lhs = reduce_word(q, &dropped).scale(u);
            let rhs = reduce_word(q, &swapped);
            let coeffs = std::array::from_fn(|k| &lhs.coeffs[k] - &rhs.coeffs[k]);
            return CliffordElement { ring: ring.clone(), coeffs };
        }
    }
    // Already strictly increasing: a basis word.
    CliffordElement::basis(ring, subset_index(word))
}

/// Product in C(q), by bilinear expansion and rewriting to normal form.
pub fn clifford_product(
    q: &QuadraticForm3,
    x: &CliffordElement,
    y: &CliffordElement,
) -> CliffordElement {
    assert!(x.ring == *q.ring() && y.ring == *q.ring(), "clifford_product: mixed rings");
    let mut acc = CliffordElement::zero(q.ring());
    for (s, cs) in x.coeffs.iter().enumerate() {
        if cs.is_zero() {
            continue;
        }
        for (t, ct) in y.coeffs.iter().enumerate() {
            if ct.is_zero() {
                continue;
            }
            let word: Vec<u8> = SUBSETS[s].iter().chain(SUBSETS[t]).copied().collect();
            acc = acc.add(&reduce_word(q, &word).scale(&(cs * ct)));
        }
    }
    acc
}

/// Which rank-4 basis an [`EvenElement`]'s coordinates refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvenBasis {
    /// (1, e₂e₃, e₁e₃, e₁e₂) inside C(q).
    CliffordSide,
    /// (1, f₁, f₂, f₃) with f₁ = e₂∧e₃, f₂ = −e₁∧e₃, f₃ = e₁∧e₂.
    LambdaSide,
}

/// Even-part coordinates of the rank-8 basis: subset indices of
/// (1, e₂e₃, e₁e₃, e₁e₂).
pub const EVEN_SUBSET_INDICES: [usize; 4] = [0, 6, 5, 4];

/// A rank-4 coordinate vector with its basis recorded; mixing bases is a
/// (runtime) type error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenElement {
    basis: EvenBasis,
    coeffs: [RingElement; 4],
}

impl EvenElement {
    pub fn new(basis: EvenBasis, coeffs: [RingElement; 4]) -> EvenElement {
        EvenElement { basis, coeffs }
    }

    pub fn basis(&self) -> EvenBasis {
        self.basis
    }

    pub fn coeffs(&self) -> &[RingElement; 4] {
        &self.coeffs
    }

    /// Extract the even coordinates of an even Clifford element.
    pub fn from_clifford(x: &CliffordElement) -> EvenElement {
        assert!(x.is_even(), "from_clifford: element has odd components");
        EvenElement {
            basis: EvenBasis::CliffordSide,
            coeffs: std::array::from_fn(|k| x.coeffs[EVEN_SUBSET_INDICES[k]].clone()),
        }
    }

    /// Embed clifford-side coordinates back into the rank-8 algebra.
    pub fn to_clifford(&self, ring: &Ring) -> CliffordElement {
        assert_eq!(self.basis, EvenBasis::CliffordSide, "to_clifford: lambda-side coordinates");
        let mut x = CliffordElement::zero(ring);
        for (k, c) in self.coeffs.iter().enumerate() {
            x.coeffs[EVEN_SUBSET_INDICES[k]] = c.clone();
        }
        x
    }

    /// Change basis along a 4×4 matrix taking this element's basis to the
    /// other one.
    pub fn transport(&self, m: &Mat, target: EvenBasis) -> EvenElement {
        let v = m.mul_vec(&self.coeffs.to_vec());
        EvenElement { basis: target, coeffs: std::array::from_fn(|k| v[k].clone()) }
    }
}

/// Product of two clifford-side even elements in C₀(q).
pub fn even_mul(q: &QuadraticForm3, x: &EvenElement, y: &EvenElement) -> EvenElement {
    assert_eq!(x.basis, EvenBasis::CliffordSide);
    assert_eq!(y.basis, EvenBasis::CliffordSide);
    let p = clifford_product(q, &x.to_clifford(q.ring()), &y.to_clifford(q.ring()));
    EvenElement::from_clifford(&p)
}

/// The matrix of ψ_b on C₀, from the clifford-side basis
/// (1, e₂e₃, e₁e₃, e₁e₂) to the lambda-side basis (1, f₁, f₂, f₃):
/// 1 ↦ 1 and eᵢeⱼ ↦ (eᵢ∧eⱼ) + b(eᵢ,eⱼ)·1, with the wedge expressed in the
/// cyclic f-basis (so the e₁e₃ column carries a −1 at f₂).
pub fn psi_even_matrix(b: &BilinearForm3) -> Mat {
    let ring = b.ring().clone();
    let (o, l) = (ring.one(), ring.zero());
    let rows = vec![
        vec![o.clone(), b.entry(1, 2).clone(), b.entry(0, 2).clone(), b.entry(0, 1).clone()],
        vec![l.clone(), o.clone(), l.clone(), l.clone()],
        vec![l.clone(), l.clone(), -&o, l.clone()],
        vec![l.clone(), l.clone(), l.clone(), o.clone()],
    ];
    Mat::from_rows(&ring, rows)
}

/// Structure constants of a unital rank-4 algebra on the lambda-side
/// basis: fᵢ·fⱼ = Σ_k c[i][j][k]·f_k with f₀ the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraStructure4 {
    ring: Ring,
    c: [[[RingElement; 4]; 4]; 4],
}

impl AlgebraStructure4 {
    pub fn new(ring: &Ring, c: [[[RingElement; 4]; 4]; 4]) -> AlgebraStructure4 {
        AlgebraStructure4 { ring: ring.clone(), c }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &RingElement {
        &self.c[i][j][k]
    }

    /// The product column fᵢ·fⱼ as a coordinate vector.
    pub fn product_of_basis(&self, i: usize, j: usize) -> [RingElement; 4] {
        self.c[i][j].clone()
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[RingElement; 4], y: &[RingElement; 4]) -> [RingElement; 4] {
        let mut out: [RingElement; 4] = std::array::from_fn(|_| self.ring.zero());
        for i in 0..4 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..4 {
                    out[k] = &out[k] + &(&s * &self.c[i][j][k]);
                }
            }
        }
        out
    }

    /// Unit law: f₀·fⱼ = fⱼ = fⱼ·f₀.
    pub fn is_unital(&self) -> bool {
        (0..4).all(|j| {
            (0..4).all(|k| {
                let d = if j == k { self.ring.one() } else { self.ring.zero() };
                self.c[0][j][k] == d && self.c[j][0][k] == d
            })
        })
    }

    /// Full associativity on basis triples.
    pub fn is_associative(&self) -> bool {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let ij = self.product_of_basis(i, j);
                    let jk = self.product_of_basis(j, k);
                    let mut ek: [RingElement; 4] = std::array::from_fn(|_| self.ring.zero());
                    ek[k] = self.ring.one();
                    let mut ei: [RingElement; 4] = std::array::from_fn(|_| self.ring.zero());
                    ei[i] = self.ring.one();
                    if self.multiply(&ij, &ek) != self.multiply(&ei, &jk) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The isomorphic structure with multiplication transported along an
    /// invertible unit-preserving U: x ·′ y = U(U⁻¹x · U⁻¹y).
    pub fn transport(&self, u: &Mat) -> Result<AlgebraStructure4> {
        assert_eq!(u.size(), 4);
        let ui = u.try_inverse()?;
        let c = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let pre = self.multiply(&vec_to_arr(ui.column(i)), &vec_to_arr(ui.column(j)));
                vec_to_arr(u.mul_vec(&pre.to_vec()))
            })
        });
        Ok(AlgebraStructure4 { ring: self.ring.clone(), c })
    }
}

fn vec_to_arr(v: Vec<RingElement>) -> [RingElement; 4] {
    assert_eq!(v.len(), 4);
    let mut it = v.into_iter();
    std::array::from_fn(|_| it.next().unwrap())
}

/// A unit-preserving linear map between lambda-side rank-4 algebras,
/// stored as its 4×4 matrix (first column (1,0,0,0)ᵀ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    matrix: Mat,
}

impl AlgebraMap {
    pub fn new(matrix: Mat) -> AlgebraMap {
        assert_eq!(matrix.size(), 4, "algebra map must be 4×4");
        let ring = matrix.ring().clone();
        assert!(
            matrix.at(0, 0).is_one()
                && (1..4).all(|i| matrix.at(i, 0).is_zero()),
            "algebra map must preserve the unit"
        );
        let _ = ring;
        AlgebraMap { matrix }
    }

    pub fn identity(ring: &Ring) -> AlgebraMap {
        AlgebraMap { matrix: Mat::identity(ring, 4) }
    }

    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn compose(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap::new(self.matrix.mul(&first.matrix))
    }
}

/// True iff φ is invertible, unit-preserving (by construction), and
/// multiplicative from A to A′ on all 16 basis pairs.
pub fn is_algebra_iso(phi: &AlgebraMap, a: &AlgebraStructure4, a2: &AlgebraStructure4) -> bool {
    let m = phi.matrix();
    if !m.is_invertible() {
        return false;
    }
    for i in 0..4 {
        for j in 0..4 {
            let lhs = m.mul_vec(&a.product_of_basis(i, j).to_vec());
            let rhs = a2.multiply(&vec_to_arr(m.column(i)), &vec_to_arr(m.column(j)));
            if lhs != rhs.to_vec() {
                return false;
            }
        }
    }
    true
}

/// Υ(b): the structure constants of C₀(q_b) transported to the lambda side
/// along ψ_b. Always unital and associative; depends on the full bilinear
/// form b, not just on q_b.
pub fn upsilon(b: &BilinearForm3) -> AlgebraStructure4 {
    let ring = b.ring().clone();
    let q = induced_quadratic(b);
    let p = psi_even_matrix(b);
    let pi = p.inverse().expect("ψ_b is unimodular");
    let pre: Vec<EvenElement> = (0..4)
        .map(|i| EvenElement::new(EvenBasis::CliffordSide, vec_to_arr(pi.column(i))))
        .collect();
    let c = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let prod = even_mul(&q, &pre[i], &pre[j]);
            vec_to_arr(p.mul_vec(&prod.coeffs().to_vec()))
        })
    });
    AlgebraStructure4 { ring, c }
}

/// The opposite algebra: c_op[i][j][k] = c[j][i][k].
pub fn opposite(a: &AlgebraStructure4) -> AlgebraStructure4 {
    let c = std::array::from_fn(|i| std::array::from_fn(|j| a.c[j][i].clone()));
    AlgebraStructure4 { ring: a.ring.clone(), c }
}

/// Entrywise image of the structure constants under the canonical
/// homomorphism into `dst`.
pub fn base_change_algebra(a: &AlgebraStructure4, dst: &Ring) -> Result<AlgebraStructure4> {
    let mut c: [[[RingElement; 4]; 4]; 4] =
        std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| dst.zero())));
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                c[i][j][k] = ring_hom_apply(dst, &a.c[i][j][k])?;
            }
        }
    }
    Ok(AlgebraStructure4 { ring: dst.clone(), c })
}

/// Entrywise image of a bilinear form under the canonical homomorphism.
pub fn base_change_bilinear(b: &BilinearForm3, dst: &Ring) -> Result<BilinearForm3> {
    let rows = (0..3)
        .map(|i| (0..3).map(|j| ring_hom_apply(dst, b.entry(i, j))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(BilinearForm3::new(Mat::from_rows(dst, rows)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::quadform::standard_lift;

    fn f(ring: &str) -> Ring {
        Ring::parse(ring).unwrap()
    }

    fn diag_b(ring: &Ring, d: [i64; 3]) -> BilinearForm3 {
        BilinearForm3::from_i64(
            ring,
            &[&[d[0], 0, 0], &[0, d[1], 0], &[0, 0, d[2]]],
        )
    }

    #[test]
    fn clifford_defining_relations() {
        let q = QuadraticForm3::from_i64(&Ring::Rationals, [2, 3, 5, 7, 11, 13]);
        let ring = q.ring();
        for i in 1..=3u8 {
            let e = CliffordElement::generator(ring, i);
            let sq = clifford_product(&q, &e, &e);
            let mut expect = CliffordElement::zero(ring);
            expect = expect.add(&CliffordElement::one(ring).scale(&q.coeffs()[(i - 1) as usize]));
            assert_eq!(sq, expect);
        }
        // e₂e₁ = u₁₂ − e₁e₂.
        let e1 = CliffordElement::generator(ring, 1);
        let e2 = CliffordElement::generator(ring, 2);
        let p = clifford_product(&q, &e2, &e1);
        assert_eq!(p.coeff(0), &ring.from_i64(13));
        assert_eq!(p.coeff(subset_index(&[1, 2])), &ring.from_i64(-1));
    }

    #[test]
    fn clifford_product_examples() {
        // q = (1,1,1,0,0,0) over ℚ: (e₁e₂)² = −1.
        let q = QuadraticForm3::from_i64(&Ring::Rationals, [1, 1, 1, 0, 0, 0]);
        let e12 = CliffordElement::basis(q.ring(), subset_index(&[1, 2]));
        let sq = clifford_product(&q, &e12, &e12);
        assert_eq!(sq, CliffordElement::one(q.ring()).scale(&Ring::Rationals.from_i64(-1)));

        // q = 0: e₂e₃ · e₃e₁ = 0 (kills on e₃e₃ = 0).
        let q0 = QuadraticForm3::zero(&Ring::Rationals);
        let e23 = CliffordElement::basis(q0.ring(), subset_index(&[2, 3]));
        let e3 = CliffordElement::generator(q0.ring(), 3);
        let e1 = CliffordElement::generator(q0.ring(), 1);
        let e31 = clifford_product(&q0, &e3, &e1);
        assert_eq!(clifford_product(&q0, &e23, &e31), CliffordElement::zero(q0.ring()));
    }

    #[test]
    fn clifford_product_is_associative_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let f5 = f("fp:5");
        for _ in 0..30 {
            let q = QuadraticForm3::new(
                &f5,
                std::array::from_fn(|_| f5.from_i64(rng.gen_range(0..5))),
            );
            let rand_elt = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut x = CliffordElement::zero(&f5);
                for s in 0..8 {
                    x.coeffs[s] = f5.from_i64(rng.gen_range(0..5));
                }
                x
            };
            let (x, y, z) = (rand_elt(&mut rng), rand_elt(&mut rng), rand_elt(&mut rng));
            let lhs = clifford_product(&q, &clifford_product(&q, &x, &y), &z);
            let rhs = clifford_product(&q, &x, &clifford_product(&q, &y, &z));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn psi_matrix_examples() {
        // b = 0 and diagonal b give the bare sign/permutation matrix.
        let q = Ring::Rationals;
        let psi0 = psi_even_matrix(&BilinearForm3::new(Mat::zero(&q, 3)));
        let expect = Mat::from_i64(
            &q,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1]],
        );
        assert_eq!(psi0, expect);
        assert_eq!(psi_even_matrix(&diag_b(&q, [1, 1, 1])), expect);

        // b = E₂₃ over F₅ adds b(e₂,e₃) = 1 to the unit row, e₂e₃ column.
        let f5 = f("fp:5");
        let e23 = BilinearForm3::from_i64(&f5, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let psi = psi_even_matrix(&e23);
        assert_eq!(psi.at(0, 1), &f5.one());
        assert_eq!(psi.at(0, 2), &f5.zero());
        assert_eq!(psi.at(0, 3), &f5.zero());
    }

    #[test]
    fn upsilon_square_zero() {
        let f5 = f("fp:5");
        let a = upsilon(&BilinearForm3::new(Mat::zero(&f5, 3)));
        assert!(a.is_unital());
        assert!(a.is_associative());
        for i in 1..4 {
            for j in 1..4 {
                for k in 0..4 {
                    assert!(a.constant(i, j, k).is_zero(), "f{i}·f{j} must vanish");
                }
            }
        }
    }

    #[test]
    fn upsilon_quaternions() {
        // b = identity over ℚ: f₁² = f₂² = f₃² = −1 and f₁f₂ = −f₃ cyclic.
        let q = Ring::Rationals;
        let a = upsilon(&diag_b(&q, [1, 1, 1]));
        assert!(a.is_unital());
        assert!(a.is_associative());
        let minus1 = q.from_i64(-1);
        let check = |i: usize, j: usize, expect: [i64; 4]| {
            let col = a.product_of_basis(i, j);
            let want: [RingElement; 4] = expect.map(|x| q.from_i64(x));
            assert_eq!(col, want, "f{i}·f{j}");
        };
        for i in 1..4 {
            let sq = a.product_of_basis(i, i);
            assert_eq!(sq[0], minus1);
            assert!(sq[1].is_zero() && sq[2].is_zero() && sq[3].is_zero());
        }
        check(1, 2, [0, 0, 0, -1]);
        check(2, 1, [0, 0, 0, 1]);
        check(2, 3, [0, -1, 0, 0]);
        check(3, 2, [0, 1, 0, 0]);
        check(3, 1, [0, 0, -1, 0]);
        check(1, 3, [0, 0, 1, 0]);
    }

    #[test]
    fn upsilon_e12_over_f2() {
        // b = E₁₂ over F₂ (q = x₁x₂): f₃² = f₃, a nontrivial idempotent.
        let f2 = f("fp:2");
        let b = BilinearForm3::from_i64(&f2, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let a = upsilon(&b);
        assert!(a.is_unital() && a.is_associative());
        let col = a.product_of_basis(3, 3);
        assert_eq!(
            col,
            [f2.zero(), f2.zero(), f2.zero(), f2.one()],
            "f₃² = f₃ over F₂ with b = E₁₂"
        );
    }

    #[test]
    fn upsilon_rank_one_diag() {
        // b = diag(1,0,0) over ℚ: f₂f₃ = −f₁ (hand Clifford reduction:
        // ψ-preimages f₂ = −e₁e₃, f₃ = e₁e₂ for diagonal b, and
        // (−e₁e₃)(e₁e₂) = −e₁(u₁₃ − e₁e₃)e₂ + ... reduces to −e₂e₃).
        let q = Ring::Rationals;
        let a = upsilon(&diag_b(&q, [1, 0, 0]));
        let col = a.product_of_basis(2, 3);
        assert_eq!(col, [q.zero(), q.from_i64(-1), q.zero(), q.zero()]);
    }

    #[test]
    fn upsilon_always_unital_associative() {
        // Exhaustive over F₂ (all 512 bilinear forms).
        let f2 = f("fp:2");
        for bits in 0..512u32 {
            let rows: Vec<Vec<RingElement>> = (0..3)
                .map(|i| (0..3).map(|j| f2.from_i64(((bits >> (3 * i + j)) & 1) as i64)).collect())
                .collect();
            let a = upsilon(&BilinearForm3::new(Mat::from_rows(&f2, rows)));
            assert!(a.is_unital());
            assert!(a.is_associative());
        }
    }

    #[test]
    fn upsilon_gl3_equivariance_f5() {
        // Υ(g·B) with (g·B)(x,y) = B(g⁻¹x, g⁻¹y), i.e. g·B = g⁻ᵀ B g⁻¹,
        // equals the transport of Υ(B) by U = diag(1, cof(g)).
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f5 = f("fp:5");
        for _ in 0..40 {
            let b = Mat::from_rows(
                &f5,
                (0..3)
                    .map(|_| (0..3).map(|_| f5.from_i64(rng.gen_range(0..5))).collect())
                    .collect(),
            );
            let g = loop {
                let g = Mat::from_rows(
                    &f5,
                    (0..3)
                        .map(|_| (0..3).map(|_| f5.from_i64(rng.gen_range(0..5))).collect())
                        .collect(),
                );
                if g.is_invertible() {
                    break g;
                }
            };
            let gi = g.inverse().unwrap();
            let gb = gi.transpose().mul(&b).mul(&gi);
            let lhs = upsilon(&BilinearForm3::new(gb));

            let cof = g.cofactor_matrix();
            let mut u = Mat::identity(&f5, 4);
            for i in 0..3 {
                for j in 0..3 {
                    u.set(1 + i, 1 + j, cof.at(i, j).clone());
                }
            }
            let rhs = upsilon(&BilinearForm3::new(b)).transport(&u).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn opposite_examples() {
        let f2 = f("fp:2");
        // Involution and the transpose law, exhaustive over F₂.
        for bits in 0..512u32 {
            let rows: Vec<Vec<RingElement>> = (0..3)
                .map(|i| (0..3).map(|j| f2.from_i64(((bits >> (3 * i + j)) & 1) as i64)).collect())
                .collect();
            let m = Mat::from_rows(&f2, rows);
            let a = upsilon(&BilinearForm3::new(m.clone()));
            assert_eq!(opposite(&opposite(&a)), a);
            let neg_bt = BilinearForm3::new(m.transpose().scale(&f2.from_i64(-1)));
            assert_eq!(opposite(&a), upsilon(&neg_bt));
        }

        // Commutative table: diagonal b over F₂ makes C₀ commutative.
        let a = upsilon(&diag_b(&f2, [1, 1, 0]));
        assert_eq!(opposite(&a), a);
    }

    #[test]
    fn base_change_examples() {
        // ℤ, b = identity, reduce mod 5 = Υ over F₅ of reduced b.
        let z = Ring::Integers;
        let f5 = f("fp:5");
        let a = upsilon(&diag_b(&z, [1, 1, 1]));
        let reduced = base_change_algebra(&a, &f5).unwrap();
        assert_eq!(reduced, upsilon(&diag_b(&f5, [1, 1, 1])));

        // dual(3) → F₃ kills ε.
        let d3 = f("dual:3");
        let f3 = f("fp:3");
        let mut m = Mat::identity(&d3, 3);
        m.set(0, 1, d3.dual(1, 2));
        let a = upsilon(&BilinearForm3::new(m));
        let reduced = base_change_algebra(&a, &f3).unwrap();
        let mut m3 = Mat::identity(&f3, 3);
        m3.set(0, 1, f3.one());
        assert_eq!(reduced, upsilon(&BilinearForm3::new(m3)));

        // Quaternion table over ℤ reduced mod 2: f₁² = 1.
        let f2 = f("fp:2");
        let a = upsilon(&diag_b(&z, [1, 1, 1]));
        let red = base_change_algebra(&a, &f2).unwrap();
        assert_eq!(red.product_of_basis(1, 1)[0], f2.one());

        // No canonical hom F₃ → F₅.
        let a3 = upsilon(&diag_b(&f3, [1, 1, 1]));
        assert_eq!(base_change_algebra(&a3, &f5).unwrap_err(), Error::NoCanonicalHom);
    }

    #[test]
    fn is_algebra_iso_examples() {
        let f5 = f("fp:5");
        let a = upsilon(&diag_b(&f5, [1, 1, 1]));
        assert!(is_algebra_iso(&AlgebraMap::identity(&f5), &a, &a));

        // Square-zero: any unit-preserving invertible map is an automorphism.
        let sz = upsilon(&BilinearForm3::new(Mat::zero(&f5, 3)));
        let mut d = Mat::identity(&f5, 4);
        d.set(1, 1, f5.from_i64(2));
        assert!(is_algebra_iso(&AlgebraMap::new(d), &sz, &sz));

        // Non-invertible map is never an iso.
        let mut bad = Mat::identity(&f5, 4);
        bad.set(1, 1, f5.zero());
        assert!(!is_algebra_iso(&AlgebraMap::new(bad), &sz, &sz));

        // A genuinely non-multiplicative map on the quaternion table.
        let mut tw = Mat::identity(&f5, 4);
        tw.set(1, 1, f5.from_i64(2));
        assert!(!is_algebra_iso(&AlgebraMap::new(tw), &a, &a));
    }

    #[test]
    fn upsilon_depends_on_all_nine_entries() {
        // Lifts E₁₂ and E₂₁ of the same q give different (isomorphic) tables.
        let f3 = f("fp:3");
        let e12 = BilinearForm3::from_i64(&f3, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let e21 = BilinearForm3::from_i64(&f3, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(induced_quadratic(&e12), induced_quadratic(&e21));
        assert!(upsilon(&e12) != upsilon(&e21));
    }

    #[test]
    fn standard_lift_feeds_upsilon() {
        let f3 = f("fp:3");
        let q = QuadraticForm3::from_i64(&f3, [1, 2, 0, 1, 0, 2]);
        let a = upsilon(&standard_lift(&q));
        assert!(a.is_unital() && a.is_associative());
    }
}
