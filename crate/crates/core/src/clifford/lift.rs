//! Similarity transport on even Clifford algebras and the lifting
//! sections.
//!
//! A similarity s = (g, l) from q to q′ = l·(q∘g⁻¹) induces the algebra
//! isomorphism C₀(s): C₀(q) → C₀(q′) acting on generators by
//! eᵢeⱼ ↦ l⁻¹·(g eᵢ)(g eⱼ). Transported to the lambda side (through ψ of
//! the standard lifts on both ends) this becomes a 4×4 unit-preserving
//! matrix whose lower-right 3×3 block — the induced map φ_{Λ²} on
//! Λ²V ≅ A/R·1 — equals l⁻¹·cof(g), and whose determinant is
//! det(g)²·l⁻³.
//!
//! `lift_section` inverts this construction: given a verified algebra
//! isomorphism φ with Λ²-part P and D = det(P), every similarity (g, l)
//! inducing φ must satisfy cof(g) = l·P, and the ansatz g = c·P⁻ᵀ works
//! exactly when c² = l·D. The section variants differ in how they choose
//! l and the square root c:
//!
//! * s′ — l = 1, c a square root of D (fails when D is a non-square);
//! * s_{2k+1} — l = D^{2k+1}, c = l⁻¹·√(D^{6k+4}) for any square root;
//! * s⁺_{2k+1} — same l, but the root is *forced* to D^{3k+2}, which
//!   eliminates all choice and makes the section multiplicative.
//!
//! Where a root must be chosen (s′, s_{2k+1}), the canonically least
//! square root under the ring's element order is taken, so results are
//! deterministic.

use crate::clifford::{
    is_algebra_iso, psi_even_matrix, upsilon, AlgebraMap, CliffordElement, EvenElement,
    clifford_product,
};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::quadform::{
    act_similarity, standard_lift, twist, DiscriminantTwist, LiftScheme, QuadraticForm3,
    Similarity,
};
use crate::ring::RingElement;

/// The lambda-side matrix of C₀(s) for s = (g, l) out of q, with both ends
/// presented through the given lift scheme. The production entry point
/// [`c0_of_similarity`] fixes the standard (upper-triangular) scheme; this
/// variant exists so tests can assert that the induced Λ²-block does not
/// depend on the chosen lifts.
pub fn c0_of_similarity_with_scheme(
    g: &Mat,
    l: &RingElement,
    q: &QuadraticForm3,
    scheme: LiftScheme,
) -> Result<AlgebraMap> {
    assert_eq!(g.size(), 3, "similarity matrix must be 3×3");
    let s = Similarity::new(g.clone(), l.clone()).map_err(|_| Error::NotASimilarity)?;
    let q2 = act_similarity(&s, q).map_err(|_| Error::NotASimilarity)?;
    let ring = q.ring();
    let li = l.inverse().ok_or(Error::NotASimilarity)?;

    // Clifford-side columns: 1 ↦ 1 and eᵢeⱼ ↦ l⁻¹·(g eᵢ)(g eⱼ) in C(q′),
    // in the basis order (1, e₂e₃, e₁e₃, e₁e₂).
    let mut mc = Mat::identity(ring, 4);
    for (col, (i, j)) in [(1usize, (1usize, 2usize)), (2, (0, 2)), (3, (0, 1))] {
        let gi = CliffordElement::vector(ring, &g.column(i));
        let gj = CliffordElement::vector(ring, &g.column(j));
        let prod = clifford_product(&q2, &gi, &gj).scale(&li);
        let even = EvenElement::from_clifford(&prod);
        for (row, v) in even.coeffs().iter().enumerate() {
            mc.set(row, col, v.clone());
        }
    }

    let psi_src = psi_even_matrix(&q.lift_with(scheme));
    let psi_dst = psi_even_matrix(&q2.lift_with(scheme));
    let m = psi_dst.mul(&mc).mul(&psi_src.try_inverse()?);
    Ok(AlgebraMap::new(m))
}

/// The lambda-side matrix of C₀(s): Υ(standard lift of q) →
/// Υ(standard lift of q′). Errors with `NotASimilarity` when g is not
/// invertible or l is not a unit.
pub fn c0_of_similarity(g: &Mat, l: &RingElement, q: &QuadraticForm3) -> Result<AlgebraMap> {
    c0_of_similarity_with_scheme(g, l, q, LiftScheme::Upper)
}

/// The isomorphism C₀(λ·q) → C₀(q) induced by the twist: clifford-side
/// diag(1, λ, λ, λ), transported to the lambda side on both ends.
pub fn scaling_iso(q: &QuadraticForm3, t: &DiscriminantTwist) -> AlgebraMap {
    let ring = q.ring();
    let qt = twist(q, t);
    let mut d = Mat::identity(ring, 4);
    for i in 1..4 {
        d.set(i, i, t.lambda().clone());
    }
    let psi_src = psi_even_matrix(&standard_lift(&qt));
    let psi_dst = psi_even_matrix(&standard_lift(q));
    AlgebraMap::new(psi_dst.mul(&d).mul(&psi_src.inverse().expect("ψ is unimodular")))
}

/// φ_{Λ²}: the induced map on Λ²V ≅ A/R·1, i.e. the lower-right 3×3 block
/// of the lambda-side matrix, after verifying that φ really is an algebra
/// isomorphism Υ(lift q) → Υ(lift q′) (`NotAnAlgebraIso` otherwise).
/// Unit-preservation makes the block independent of the lift choices.
pub fn transfer_to_lambda2(
    phi: &AlgebraMap,
    q: &QuadraticForm3,
    q2: &QuadraticForm3,
) -> Result<Mat> {
    let a = upsilon(&standard_lift(q));
    let a2 = upsilon(&standard_lift(q2));
    if !is_algebra_iso(phi, &a, &a2) {
        return Err(Error::NotAnAlgebraIso);
    }
    Ok(phi.matrix().lower_right(3))
}

/// Which lifting section of the similitude-to-isomorphism map to use.
/// The integer is the odd exponent m = 2k+1 (negative odd values allowed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionVariant {
    /// l = 1, c = √D (canonically least root).
    SPrime,
    /// l = D^m, c = l⁻¹·√(D^{3m+1}) (canonically least root).
    S(i64),
    /// l = D^m with the root forced to D^{(3m+1)/2}; fully deterministic
    /// and multiplicative.
    SPlus(i64),
}

impl SectionVariant {
    fn validate(self) {
        match self {
            SectionVariant::SPrime => {}
            SectionVariant::S(m) | SectionVariant::SPlus(m) => {
                assert!(m.rem_euclid(2) == 1, "section exponent must be odd, got {m}");
            }
        }
    }
}

/// Lift a verified algebra isomorphism φ: C₀(q) → C₀(q′) to a similarity
/// (g, l) from q to q′ with C₀(g, l) = φ.
///
/// With P = φ_{Λ²} and D = det(P) (a unit), the returned similarity is
/// g = c·P⁻ᵀ where c² = l·D, and l, c are chosen per the variant. Errors:
/// `NotAnAlgebraIso` if φ fails verification, `SquareRootUnavailable` when
/// the variant's square root does not exist in the ring.
pub fn lift_section(
    phi: &AlgebraMap,
    q: &QuadraticForm3,
    q2: &QuadraticForm3,
    variant: SectionVariant,
) -> Result<Similarity> {
    variant.validate();
    let ring = q.ring();
    let p = transfer_to_lambda2(phi, q, q2)?;
    let d = p.det();
    debug_assert!(d.is_unit(), "Λ²-part of an isomorphism has unit determinant");

    let (l, c) = match variant {
        SectionVariant::SPrime => {
            let l = ring.one();
            let roots = d.unit_square_roots()?;
            let c = roots.into_iter().next().ok_or(Error::SquareRootUnavailable)?;
            (l, c)
        }
        SectionVariant::S(m) => {
            let l = d.pow(m);
            let gamma = d.pow(3 * m + 1);
            let roots = gamma.unit_square_roots()?;
            let root = roots.into_iter().next().ok_or(Error::SquareRootUnavailable)?;
            let c = l.inverse().expect("unit") * root;
            (l, c)
        }
        SectionVariant::SPlus(m) => {
            // √(D^{3m+1}) := D^{(3m+1)/2}, so c = D^{(m+1)/2}.
            let l = d.pow(m);
            let c = d.pow((m + 1) / 2);
            (l, c)
        }
    };

    let g = p.transpose().try_inverse()?.scale(&c);
    let s = Similarity::new(g, l).map_err(|_| Error::NotASimilarity)?;
    // The construction guarantees cof(g) = l·φ_{Λ²}; the full similarity
    // identity q′ = l·(q∘g⁻¹) is verified rather than assumed, since φ was
    // only required to be an algebra isomorphism.
    if &act_similarity(&s, q)? != q2 {
        return Err(Error::NotASimilarity);
    }
    Ok(s)
}
