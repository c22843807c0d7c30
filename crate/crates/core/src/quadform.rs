//! Ternary quadratic forms, bilinear forms, similarities, and the
//! half-discriminant.
//!
//! A quadratic form of rank 3 is stored by its six coefficients in the
//! fixed order (a₁, a₂, a₃, u₂₃, u₁₃, u₁₂):
//!
//! q(x) = a₁x₁² + a₂x₂² + a₃x₃² + u₂₃x₂x₃ + u₁₃x₁x₃ + u₁₂x₁x₂.
//!
//! The order pairs each diagonal coefficient with the opposite off-diagonal
//! coefficient, matching the symmetry of Kneser's half-discriminant
//!
//! d₀(q) = 4a₁a₂a₃ + u₂₃u₁₃u₁₂ − a₁u₂₃² − a₂u₁₃² − a₃u₁₂²,
//!
//! which satisfies d₀(q ∘ g⁻¹) = det(g)⁻²·d₀(q) and d₀(λq) = λ³·d₀(q);
//! q is *semiregular* iff d₀(q) is a unit. This is the right regularity
//! notion in every characteristic: rank-3 forms are never "regular" in the
//! naive determinant sense in characteristic 2, but semiregular ones behave
//! perfectly (their even Clifford algebras are Azumaya — see the `azumaya`
//! module, which cross-validates the d₀ formula).
//!
//! A similarity s = (g, l) from q to q′ is an invertible g with
//! q′(g·x) = l·q(x); the induced form is q′(y) = l·q(g⁻¹y).

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ring::{Ring, RingElement};

/// q(x) = a₁x₁² + a₂x₂² + a₃x₃² + u₂₃x₂x₃ + u₁₃x₁x₃ + u₁₂x₁x₂,
/// coefficients stored in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm3 {
    ring: Ring,
    coeffs: [RingElement; 6],
}

impl QuadraticForm3 {
    pub fn new(ring: &Ring, coeffs: [RingElement; 6]) -> QuadraticForm3 {
        assert!(coeffs.iter().all(|c| c.ring() == ring), "form coefficients from wrong ring");
        QuadraticForm3 { ring: ring.clone(), coeffs }
    }

    pub fn from_i64(ring: &Ring, c: [i64; 6]) -> QuadraticForm3 {
        QuadraticForm3::new(ring, c.map(|x| ring.from_i64(x)))
    }

    pub fn zero(ring: &Ring) -> QuadraticForm3 {
        QuadraticForm3::from_i64(ring, [0; 6])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Coefficients in the order (a₁, a₂, a₃, u₂₃, u₁₃, u₁₂).
    pub fn coeffs(&self) -> &[RingElement; 6] {
        &self.coeffs
    }

    pub fn evaluate(&self, x: &[RingElement]) -> RingElement {
        assert_eq!(x.len(), 3);
        let [a1, a2, a3, u23, u13, u12] = &self.coeffs;
        let (x1, x2, x3) = (&x[0], &x[1], &x[2]);
        a1 * &(x1 * x1)
            + a2 * &(x2 * x2)
            + a3 * &(x3 * x3)
            + u23 * &(x2 * x3)
            + u13 * &(x1 * x3)
            + u12 * &(x1 * x2)
    }

    /// The substituted form q ∘ h, i.e. x ↦ q(h·x).
    pub fn substitute(&self, h: &Mat) -> QuadraticForm3 {
        assert_eq!(h.size(), 3);
        let col = |j| h.column(j);
        let a: Vec<RingElement> = (0..3).map(|j| self.evaluate(&col(j))).collect();
        let u = |i: usize, j: usize| {
            let s: Vec<RingElement> =
                col(i).iter().zip(col(j).iter()).map(|(x, y)| x + y).collect();
            self.evaluate(&s) - &a[i] - &a[j]
        };
        QuadraticForm3::new(
            &self.ring,
            [a[0].clone(), a[1].clone(), a[2].clone(), u(1, 2), u(0, 2), u(0, 1)],
        )
    }

    pub fn scale(&self, c: &RingElement) -> QuadraticForm3 {
        QuadraticForm3::new(&self.ring, self.coeffs.clone().map(|a| &a * c))
    }

    pub fn half_discriminant(&self) -> RingElement {
        half_discriminant(self)
    }

    pub fn is_semiregular(&self) -> bool {
        is_semiregular(self)
    }

    /// The bilinear lift of this form under the given scheme.
    pub fn lift_with(&self, scheme: LiftScheme) -> BilinearForm3 {
        match scheme {
            LiftScheme::Upper => standard_lift(self),
            LiftScheme::Lower => lower_lift(self),
        }
    }
}

/// Which triangular bilinear lift of a quadratic form to use. `Upper` is
/// the standard choice everywhere; `Lower` exists so lift-independence
/// claims can be asserted by recomputation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftScheme {
    Upper,
    Lower,
}

/// b(x, y) = Σ b_{ij} x_i y_j, stored as the full (not necessarily
/// symmetric) 3×3 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm3 {
    matrix: Mat,
}

impl BilinearForm3 {
    pub fn new(matrix: Mat) -> BilinearForm3 {
        assert_eq!(matrix.size(), 3, "bilinear form must be 3×3");
        BilinearForm3 { matrix }
    }

    pub fn from_i64(ring: &Ring, rows: &[&[i64]]) -> BilinearForm3 {
        BilinearForm3::new(Mat::from_i64(ring, rows))
    }

    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElement {
        self.matrix.at(i, j)
    }
}

/// A similarity (g, l): g invertible, l a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Similarity {
    g: Mat,
    l: RingElement,
}

impl Similarity {
    /// Validates invertibility of g (`SingularMatrix`) and unit-ness of l
    /// (`NonUnit`).
    pub fn new(g: Mat, l: RingElement) -> Result<Similarity> {
        assert_eq!(g.size(), 3, "similarity matrix must be 3×3");
        if !g.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        if !l.is_unit() {
            return Err(Error::NonUnit);
        }
        Ok(Similarity { g, l })
    }

    pub fn identity(ring: &Ring) -> Similarity {
        Similarity { g: Mat::identity(ring, 3), l: ring.one() }
    }

    pub fn g(&self) -> &Mat {
        &self.g
    }

    pub fn l(&self) -> &RingElement {
        &self.l
    }

    /// Composition as maps: (g₂, l₂) ∘ (g₁, l₁) = (g₂g₁, l₁l₂).
    pub fn compose(&self, first: &Similarity) -> Similarity {
        Similarity { g: self.g.mul(&first.g), l: &first.l * &self.l }
    }
}

/// A unit λ, the free-module avatar of a twisted discriminant module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantTwist {
    lambda: RingElement,
}

impl DiscriminantTwist {
    pub fn new(lambda: RingElement) -> Result<DiscriminantTwist> {
        if !lambda.is_unit() {
            return Err(Error::NonUnit);
        }
        Ok(DiscriminantTwist { lambda })
    }

    pub fn lambda(&self) -> &RingElement {
        &self.lambda
    }
}

/// q_b(x) = b(x, x): aᵢ = b_{ii}, u_{ij} = b_{ij} + b_{ji}.
pub fn induced_quadratic(b: &BilinearForm3) -> QuadraticForm3 {
    let m = b.matrix();
    let u = |i: usize, j: usize| m.at(i, j) + m.at(j, i);
    QuadraticForm3::new(
        b.ring(),
        [m.at(0, 0).clone(), m.at(1, 1).clone(), m.at(2, 2).clone(), u(1, 2), u(0, 2), u(0, 1)],
    )
}

/// The polar form (x, y) ↦ q(x+y) − q(x) − q(y): symmetric, diagonal 2aᵢ,
/// off-diagonal u_{ij}.
pub fn polar_bilinear(q: &QuadraticForm3) -> BilinearForm3 {
    let ring = q.ring().clone();
    let [a1, a2, a3, u23, u13, u12] = q.coeffs();
    let two = ring.from_i64(2);
    let rows = vec![
        vec![&two * a1, u12.clone(), u13.clone()],
        vec![u12.clone(), &two * a2, u23.clone()],
        vec![u13.clone(), u23.clone(), &two * a3],
    ];
    BilinearForm3::new(Mat::from_rows(&ring, rows))
}

/// The form q′ with q′(y) = l·q(g⁻¹y), so that s is a similarity from q
/// to q′ with multiplier l. Errors with `SingularMatrix` if g is not
/// invertible (checked again here since `Similarity` fields are also
/// reachable through deserialization paths).
pub fn act_similarity(s: &Similarity, q: &QuadraticForm3) -> Result<QuadraticForm3> {
    let gi = s.g().try_inverse()?;
    Ok(q.substitute(&gi).scale(s.l()))
}

/// Kneser's half-discriminant
/// d₀(q) = 4a₁a₂a₃ + u₂₃u₁₃u₁₂ − a₁u₂₃² − a₂u₁₃² − a₃u₁₂².
pub fn half_discriminant(q: &QuadraticForm3) -> RingElement {
    let ring = q.ring();
    let [a1, a2, a3, u23, u13, u12] = q.coeffs();
    let four = ring.from_i64(4);
    four * &(a1 * &(a2 * a3)) + u23 * &(u13 * u12)
        - a1 * &(u23 * u23)
        - a2 * &(u13 * u13)
        - a3 * &(u12 * u12)
}

/// q is semiregular iff d₀(q) is a unit.
pub fn is_semiregular(q: &QuadraticForm3) -> bool {
    half_discriminant(q).is_unit()
}

/// λ·q, coefficient-wise.
pub fn twist(q: &QuadraticForm3, t: &DiscriminantTwist) -> QuadraticForm3 {
    q.scale(t.lambda())
}

/// Search for a similarity witnessing q ~ q′, i.e. (g, λ) with
/// q′ = λ·(q ∘ g⁻¹). Finite rings only (`InfiniteRing` otherwise); the
/// search sweeps all of GL₃ with no canonical-form shortcut, so it is
/// guarded to rings of at most 5 elements (all uses in this crate are F₂,
/// F₃, F₅).
pub fn orbit_equivalent(
    q: &QuadraticForm3,
    q2: &QuadraticForm3,
) -> Result<Option<Similarity>> {
    let ring = q.ring();
    assert!(ring == q2.ring(), "orbit_equivalent: mixed rings");
    let Some(count) = ring.element_count() else {
        return Err(Error::InfiniteRing);
    };
    assert!(
        count <= 5,
        "orbit_equivalent sweeps |R|^9 matrices; refusing |R| = {count} > 5 (not desk scale)"
    );
    let elems = ring.enumerate().unwrap();
    let units = ring.enumerate_units().unwrap();
    let n = elems.len();
    // Odometer over the 9 entries of g.
    let mut idx = [0usize; 9];
    loop {
        let rows: Vec<Vec<RingElement>> =
            (0..3).map(|i| (0..3).map(|j| elems[idx[3 * i + j]].clone()).collect()).collect();
        let g = Mat::from_rows(ring, rows);
        if g.is_invertible() {
            let base = q.substitute(&g.try_inverse()?);
            for l in &units {
                if &base.scale(l) == q2 {
                    return Ok(Some(Similarity::new(g, l.clone())?));
                }
            }
        }
        // Advance odometer.
        let mut pos = 0;
        loop {
            if pos == 9 {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// The upper-triangular lift of q: b₁₁ = a₁, b₂₂ = a₂, b₃₃ = a₃,
/// b₁₂ = u₁₂, b₁₃ = u₁₃, b₂₃ = u₂₃, lower triangle zero. This is the
/// *standard* lift used everywhere a bilinear representative of q is
/// needed (Clifford-basis changes, algebra realizations).
pub fn standard_lift(q: &QuadraticForm3) -> BilinearForm3 {
    let ring = q.ring().clone();
    let [a1, a2, a3, u23, u13, u12] = q.coeffs();
    let z = ring.zero();
    BilinearForm3::new(Mat::from_rows(
        &ring,
        vec![
            vec![a1.clone(), u12.clone(), u13.clone()],
            vec![z.clone(), a2.clone(), u23.clone()],
            vec![z.clone(), z.clone(), a3.clone()],
        ],
    ))
}

/// The lower-triangular lift (b₂₁ = u₁₂, b₃₁ = u₁₃, b₃₂ = u₂₃). Used only
/// to assert that lift-dependent computations agree across lift choices.
pub fn lower_lift(q: &QuadraticForm3) -> BilinearForm3 {
    BilinearForm3::new(standard_lift(q).matrix().transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(ring: &str) -> Ring {
        Ring::parse(ring).unwrap()
    }

    #[test]
    fn induced_quadratic_examples() {
        let q = induced_quadratic(&BilinearForm3::new(Mat::identity(&Ring::Rationals, 3)));
        assert_eq!(q, QuadraticForm3::from_i64(&Ring::Rationals, [1, 1, 1, 0, 0, 0]));

        let f2 = f("fp:2");
        let e12 = BilinearForm3::from_i64(&f2, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(induced_quadratic(&e12), QuadraticForm3::from_i64(&f2, [0, 0, 0, 0, 0, 1]));

        let f3 = f("fp:3");
        let b = BilinearForm3::from_i64(&f3, &[&[1, 2, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(induced_quadratic(&b), QuadraticForm3::from_i64(&f3, [1, 1, 1, 0, 0, 2]));
    }

    #[test]
    fn polar_bilinear_examples() {
        let q = QuadraticForm3::from_i64(&Ring::Rationals, [1, 1, 1, 0, 0, 0]);
        assert_eq!(
            polar_bilinear(&q).matrix(),
            &Mat::from_i64(&Ring::Rationals, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])
        );

        let f2 = f("fp:2");
        let q = QuadraticForm3::from_i64(&f2, [0, 0, 1, 0, 0, 1]);
        assert_eq!(
            polar_bilinear(&q).matrix(),
            &Mat::from_i64(&f2, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]])
        );

        let f3 = f("fp:3");
        let q = QuadraticForm3::from_i64(&f3, [1, 0, 0, 1, 0, 0]);
        assert_eq!(
            polar_bilinear(&q).matrix(),
            &Mat::from_i64(&f3, &[&[2, 0, 0], &[0, 0, 1], &[0, 1, 0]])
        );
    }

    #[test]
    fn act_similarity_examples() {
        let f5 = f("fp:5");
        let q = QuadraticForm3::from_i64(&f5, [1, 1, 1, 0, 0, 0]);
        let s = Similarity::identity(&f5);
        assert_eq!(act_similarity(&s, &q).unwrap(), q);

        let scale = Similarity::new(Mat::identity(&f5, 3), f5.from_i64(3)).unwrap();
        assert_eq!(
            act_similarity(&scale, &q).unwrap(),
            QuadraticForm3::from_i64(&f5, [3, 3, 3, 0, 0, 0])
        );

        // g = diag(1,1,2): q′(y) = q(diag(1,1,3)y) = y₁² + y₂² + 9y₃² = (1,1,4,0,0,0).
        let g = Mat::from_i64(&f5, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let s = Similarity::new(g, f5.one()).unwrap();
        assert_eq!(
            act_similarity(&s, &q).unwrap(),
            QuadraticForm3::from_i64(&f5, [1, 1, 4, 0, 0, 0])
        );

        // The defining identity q′(g·x) = l·q(x) on all of F₅³.
        let g = Mat::from_i64(&f5, &[&[1, 2, 0], &[0, 1, 4], &[3, 0, 2]]);
        let s = Similarity::new(g.clone(), f5.from_i64(2)).unwrap();
        let qp = act_similarity(&s, &q).unwrap();
        let elems = f5.enumerate().unwrap();
        for x1 in &elems {
            for x2 in &elems {
                for x3 in &elems {
                    let x = vec![x1.clone(), x2.clone(), x3.clone()];
                    let gx = g.mul_vec(&x);
                    assert_eq!(qp.evaluate(&gx), f5.from_i64(2) * q.evaluate(&x));
                }
            }
        }
    }

    #[test]
    fn act_similarity_singular_rejected() {
        let f2 = f("fp:2");
        let g = Mat::zero(&f2, 3);
        assert_eq!(Similarity::new(g, f2.one()), Err(Error::SingularMatrix));
    }

    #[test]
    fn half_discriminant_examples() {
        assert!(half_discriminant(&QuadraticForm3::zero(&Ring::Integers)).is_zero());
        let q = QuadraticForm3::from_i64(&Ring::Rationals, [1, 1, 1, 0, 0, 0]);
        assert_eq!(half_discriminant(&q), Ring::Rationals.from_i64(4));
        let f2 = f("fp:2");
        let q = QuadraticForm3::from_i64(&f2, [0, 0, 1, 0, 0, 1]);
        assert_eq!(half_discriminant(&q), f2.one());
    }

    #[test]
    fn semiregular_examples() {
        let f2 = f("fp:2");
        assert!(!is_semiregular(&QuadraticForm3::from_i64(&f2, [1, 1, 1, 0, 0, 0])));
        assert!(is_semiregular(&QuadraticForm3::from_i64(&f2, [0, 0, 1, 0, 0, 1])));
        assert!(!is_semiregular(&QuadraticForm3::zero(&Ring::Rationals)));
    }

    #[test]
    fn twist_examples() {
        let q = QuadraticForm3::from_i64(&Ring::Rationals, [1, 1, 1, 0, 0, 0]);
        let t1 = DiscriminantTwist::new(Ring::Rationals.one()).unwrap();
        assert_eq!(twist(&q, &t1), q);
        let tm = DiscriminantTwist::new(Ring::Rationals.from_i64(-1)).unwrap();
        assert_eq!(twist(&q, &tm), QuadraticForm3::from_i64(&Ring::Rationals, [-1, -1, -1, 0, 0, 0]));

        let f5 = f("fp:5");
        let q = QuadraticForm3::from_i64(&f5, [0, 0, 1, 0, 0, 1]);
        let t2 = DiscriminantTwist::new(f5.from_i64(2)).unwrap();
        let qt = twist(&q, &t2);
        assert_eq!(qt, QuadraticForm3::from_i64(&f5, [0, 0, 2, 0, 0, 2]));
        assert_eq!(half_discriminant(&qt), f5.from_i64(3) * half_discriminant(&q));
    }

    #[test]
    fn twist_requires_unit() {
        let f5 = f("fp:5");
        assert_eq!(DiscriminantTwist::new(f5.zero()), Err(Error::NonUnit));
    }

    #[test]
    fn orbit_equivalent_examples() {
        let f2 = f("fp:2");
        let q = QuadraticForm3::from_i64(&f2, [1, 0, 0, 0, 0, 0]);
        assert!(orbit_equivalent(&q, &q).unwrap().is_some());

        let q2 = QuadraticForm3::from_i64(&f2, [0, 1, 0, 0, 0, 0]);
        let w = orbit_equivalent(&q, &q2).unwrap().expect("swap equivalence");
        assert_eq!(act_similarity(&w, &q).unwrap(), q2);

        let f3 = f("fp:3");
        let q = QuadraticForm3::from_i64(&f3, [1, 1, 1, 0, 0, 0]);
        let q2 = QuadraticForm3::from_i64(&f3, [2, 2, 2, 0, 0, 0]);
        let w = orbit_equivalent(&q, &q2).unwrap().expect("pure twist");
        assert_eq!(act_similarity(&w, &q).unwrap(), q2);

        // Inequivalent: semiregular vs not.
        let q3 = QuadraticForm3::from_i64(&f2, [0, 0, 1, 0, 0, 1]);
        let q4 = QuadraticForm3::zero(&f2);
        assert!(orbit_equivalent(&q3, &q4).unwrap().is_none());
    }

    #[test]
    fn orbit_equivalent_infinite_ring_rejected() {
        let q = QuadraticForm3::zero(&Ring::Rationals);
        assert_eq!(orbit_equivalent(&q, &q), Err(Error::InfiniteRing));
    }

    #[test]
    fn induced_fibers_are_alternating_cosets_f2() {
        // Exhaustive over F₂: b, b′ induce the same q iff b − b′ is
        // alternating (zero diagonal, b_{ij} = −b_{ji}).
        let f2 = f("fp:2");
        let elems = f2.enumerate().unwrap();
        let mut mats = Vec::new();
        for bits in 0..512u32 {
            let rows: Vec<Vec<RingElement>> = (0..3)
                .map(|i| (0..3).map(|j| elems[((bits >> (3 * i + j)) & 1) as usize].clone()).collect())
                .collect();
            mats.push(Mat::from_rows(&f2, rows));
        }
        for b1 in &mats {
            for b2 in &mats {
                let same = induced_quadratic(&BilinearForm3::new(b1.clone()))
                    == induced_quadratic(&BilinearForm3::new(b2.clone()));
                let d = b1.sub(b2);
                let alternating = (0..3).all(|i| d.at(i, i).is_zero())
                    && (0..3).all(|i| (0..3).all(|j| &(d.at(i, j) + d.at(j, i)) == &f2.zero()));
                assert_eq!(same, alternating);
            }
        }
    }

    #[test]
    fn polar_of_induced_is_b_plus_bt() {
        let f5 = f("fp:5");
        let m = Mat::from_i64(&f5, &[&[1, 2, 3], &[4, 0, 1], &[2, 2, 2]]);
        let b = BilinearForm3::new(m.clone());
        assert_eq!(polar_bilinear(&induced_quadratic(&b)).matrix(), &m.add(&m.transpose()));
    }

    #[test]
    fn lifts_induce_back() {
        let f3 = f("fp:3");
        let q = QuadraticForm3::from_i64(&f3, [1, 2, 0, 1, 2, 1]);
        assert_eq!(induced_quadratic(&standard_lift(&q)), q);
        assert_eq!(induced_quadratic(&lower_lift(&q)), q);
        assert!(standard_lift(&q).matrix() != lower_lift(&q).matrix());
    }

    #[test]
    fn d0_transformation_laws_spot() {
        let q = QuadraticForm3::from_i64(&Ring::Rationals, [1, 2, 3, 4, 5, 6]);
        let g = Mat::from_i64(&Ring::Rationals, &[&[1, 1, 0], &[0, 1, 2], &[1, 0, 3]]);
        let lhs = half_discriminant(&q.substitute(&g.inverse().unwrap()));
        let det = g.det();
        let rhs = det.inverse().unwrap().pow(2) * half_discriminant(&q);
        assert_eq!(lhs, rhs);

        let lam = Ring::Rationals.fraction(-3, 2);
        assert_eq!(half_discriminant(&q.scale(&lam)), lam.pow(3) * half_discriminant(&q));
    }

    #[test]
    fn evaluate_is_quadratic() {
        let f7 = f("fp:7");
        let q = QuadraticForm3::from_i64(&f7, [1, 2, 3, 4, 5, 6]);
        let x = vec![f7.from_i64(2), f7.from_i64(3), f7.from_i64(5)];
        for c in f7.enumerate().unwrap() {
            let cx: Vec<RingElement> = x.iter().map(|v| &c * v).collect();
            assert_eq!(q.evaluate(&cx), c.pow(2) * q.evaluate(&x));
        }
    }
}
