//! The tensor-algebra recursion behind ψ, kept as an independent oracle.
//!
//! Elements here live in the free module T(V) ⊗ L[I]: linear combinations
//! of words over the generators e₁, e₂, e₃ tensored with Laurent powers
//! sᵐ of the trivialized line-bundle generator. No Clifford relation is
//! imposed — every identity asserted on this module is exact, which is
//! what makes it a trustworthy witness.
//!
//! Two operators are provided.
//!
//! * `t_f` — the antiderivation attached to a covector f, defined by
//!   t_f(1⊗sᵐ) = 0 and
//!   t_f((eᵢ·w)⊗sᵐ) = w⊗(f(eᵢ)·sᵐ⁺¹) − eᵢ·t_f(w⊗sᵐ).
//!   It satisfies t_f∘t_f = 0 and t_f∘t_g + t_g∘t_f = 0 on the nose.
//!
//! * `psi_op` — the operator Ψ_b attached to a bilinear form b, defined by
//!   Ψ_b(1⊗sᵐ) = 1⊗sᵐ and Ψ_b(eᵢ·w⊗sᵐ) = eᵢ·Ψ_b(w⊗sᵐ) + t_{bᵢ}(Ψ_b(w⊗sᵐ)),
//!   where bᵢ = b(eᵢ, −). It satisfies Ψ_{b₁+b₂} = Ψ_{b₁}∘Ψ_{b₂}.
//!
//! Composing Ψ_b with the passage to the exterior algebra (sort letters
//! with signs, kill repeats) and reading off even components reproduces,
//! word for word, the closed-form matrix `psi_even_matrix` — the
//! production path is cross-checked against this recursion in the
//! acceptance suite.

use std::collections::BTreeMap;

use crate::linalg::Mat;
use crate::quadform::BilinearForm3;
use crate::ring::{Ring, RingElement};

/// A finite linear combination of words over {1,2,3} tensored with Laurent
/// powers of the line-bundle generator s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    ring: Ring,
    terms: BTreeMap<(Vec<u8>, i32), RingElement>,
}

impl TensorElement {
    pub fn zero(ring: &Ring) -> TensorElement {
        TensorElement { ring: ring.clone(), terms: BTreeMap::new() }
    }

    /// The single word w ⊗ sᵐ with coefficient 1.
    pub fn word(ring: &Ring, w: &[u8], m: i32) -> TensorElement {
        assert!(w.iter().all(|&i| (1..=3).contains(&i)), "letters must be 1..3");
        let mut x = TensorElement::zero(ring);
        x.add_term(w.to_vec(), m, ring.one());
        x
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<(Vec<u8>, i32), RingElement> {
        &self.terms
    }

    pub fn coeff(&self, w: &[u8], m: i32) -> RingElement {
        self.terms.get(&(w.to_vec(), m)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn add_term(&mut self, w: Vec<u8>, m: i32, c: RingElement) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((w, m));
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((w, m), c) in &other.terms {
            out.add_term(w.clone(), *m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RingElement) -> TensorElement {
        let mut out = TensorElement::zero(&self.ring);
        for ((w, m), v) in &self.terms {
            out.add_term(w.clone(), *m, v * c);
        }
        out
    }

    pub fn negate(&self) -> TensorElement {
        self.scale(&self.ring.from_i64(-1))
    }

    /// Left multiplication by the generator eᵢ.
    pub fn left_mul_gen(&self, i: u8) -> TensorElement {
        let mut out = TensorElement::zero(&self.ring);
        for ((w, m), c) in &self.terms {
            let mut nw = Vec::with_capacity(w.len() + 1);
            nw.push(i);
            nw.extend_from_slice(w);
            out.add_term(nw, *m, c.clone());
        }
        out
    }
}

/// The antiderivation t_f for the covector f = (f(e₁), f(e₂), f(e₃)).
pub fn t_f(f: &[RingElement; 3], x: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(x.ring());
    for ((w, m), c) in x.terms() {
        out = out.add(&t_f_word(x.ring(), f, w, *m).scale(c));
    }
    out
}

fn t_f_word(ring: &Ring, f: &[RingElement; 3], w: &[u8], m: i32) -> TensorElement {
    match w.split_first() {
        None => TensorElement::zero(ring),
        Some((&i, rest)) => {
            let lead = TensorElement::word(ring, rest, m + 1).scale(&f[(i - 1) as usize]);
            let tail = t_f_word(ring, f, rest, m).left_mul_gen(i);
            lead.add(&tail.negate())
        }
    }
}

/// The operator Ψ_b on T(V) ⊗ L[I].
pub fn psi_op(b: &BilinearForm3, x: &TensorElement) -> TensorElement {
    let rows: [[RingElement; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| b.entry(i, j).clone()));
    let mut out = TensorElement::zero(x.ring());
    for ((w, m), c) in x.terms() {
        out = out.add(&psi_word(x.ring(), &rows, w, *m).scale(c));
    }
    out
}

fn psi_word(ring: &Ring, rows: &[[RingElement; 3]; 3], w: &[u8], m: i32) -> TensorElement {
    match w.split_first() {
        None => TensorElement::word(ring, &[], m),
        Some((&i, rest)) => {
            let inner = psi_word(ring, rows, rest, m);
            let row = &rows[(i - 1) as usize];
            inner.left_mul_gen(i).add(&t_f(row, &inner))
        }
    }
}

/// Image in the exterior algebra: sort each word with the sign of the
/// permutation, kill words with repeated letters.
pub fn exterior_normal_form(x: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(x.ring());
    'terms: for ((w, m), c) in x.terms() {
        let mut word = w.clone();
        let mut sign = 1i64;
        // Bubble sort, counting swaps; abort on a repeat.
        loop {
            let mut swapped = false;
            for i in 0..word.len().saturating_sub(1) {
                if word[i] == word[i + 1] {
                    continue 'terms;
                }
                if word[i] > word[i + 1] {
                    word.swap(i, i + 1);
                    sign = -sign;
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        let mut inner = TensorElement::zero(x.ring());
        inner.add_term(word, *m, c * &x.ring().from_i64(sign));
        out = out.add(&inner);
    }
    out
}

/// Read lambda-side even coordinates (1, f₁, f₂, f₃) off an
/// exterior-reduced element supported on 1⊗s⁰ and (eᵢ∧eⱼ)⊗s⁻¹. The sign
/// convention f₂ = −e₁∧e₃ is applied here.
pub fn even_lambda_coords(x: &TensorElement) -> [RingElement; 4] {
    for ((w, m), _) in x.terms() {
        let expected = matches!(
            (w.as_slice(), m),
            (&[], 0) | (&[2, 3], -1) | (&[1, 3], -1) | (&[1, 2], -1)
        );
        assert!(expected, "unexpected component {w:?} ⊗ s^{m} in even element");
    }
    [
        x.coeff(&[], 0),
        x.coeff(&[2, 3], -1),
        -x.coeff(&[1, 3], -1),
        x.coeff(&[1, 2], -1),
    ]
}

/// The four even basis words (1, e₂e₃, e₁e₃, e₁e₂) as tensor elements,
/// with the I⁻¹ grading: the unit at s⁰, the length-2 words at s⁻¹.
pub fn even_basis_words(ring: &Ring) -> [TensorElement; 4] {
    [
        TensorElement::word(ring, &[], 0),
        TensorElement::word(ring, &[2, 3], -1),
        TensorElement::word(ring, &[1, 3], -1),
        TensorElement::word(ring, &[1, 2], -1),
    ]
}

/// The closed-form ψ_b column for each even basis word, recomputed through
/// the recursion: Ψ_b, then exterior reduction, then coordinate readout.
/// Returns the 4×4 matrix column by column (should equal
/// `psi_even_matrix(b)`).
pub fn psi_matrix_via_recursion(b: &BilinearForm3) -> Mat {
    let ring = b.ring();
    let mut m = Mat::zero(ring, 4);
    for (col, word) in even_basis_words(ring).iter().enumerate() {
        let coords = even_lambda_coords(&exterior_normal_form(&psi_op(b, word)));
        for (row, v) in coords.into_iter().enumerate() {
            m.set(row, col, v);
        }
    }
    m
}
