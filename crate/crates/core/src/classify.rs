//! Desk-scale exhaustive classification over F₂ and F₃: the two
//! partitions of all p⁶ ternary forms (algebra isomorphism of the even
//! Clifford algebra vs. the similarity action on forms), their comparison,
//! and the exact-row checks tying together the orthogonal groups of a
//! semiregular form and the automorphisms of its even Clifford algebra.

use rayon::prelude::*;

use crate::clifford::{c0_of_similarity, upsilon, AlgebraMap, AlgebraStructure4};
use crate::error::{Error, Result};
use crate::fp::{self, FpAlg};
use crate::linalg::Mat;
use crate::quadform::{
    act_similarity, QuadraticForm3, LiftScheme, Similarity,
};
use crate::ring::{Ring, RingElement};

/// A partition of all p⁶ forms. Class ids are normalized by first
/// occurrence in index order, so two partitions are equal as partitions
/// iff their `class_of` vectors are equal; representatives are the
/// lexicographically least forms of their classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormPartition {
    pub p: u32,
    pub class_of: Vec<u32>,
    pub representatives: Vec<u32>,
}

impl FormPartition {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }
}

fn classification_field(p: u32) -> Result<Ring> {
    match p {
        2 | 3 => Ok(Ring::PrimeField(p)),
        _ => Err(Error::FieldTooLarge),
    }
}

fn form_of_index(ring: &Ring, p: u32, idx: u32) -> QuadraticForm3 {
    let code = fp::decode_form(p as u8, idx);
    QuadraticForm3::from_i64(ring, std::array::from_fn(|t| code[t] as i64))
}

fn algebra_of_index(ring: &Ring, p: u32, idx: u32, scheme: LiftScheme) -> FpAlg {
    let q = form_of_index(ring, p, idx);
    FpAlg::from_algebra(&upsilon(&q.lift_with(scheme))).expect("prime field")
}

/// Partition by algebra isomorphism of Υ(lift(q)): two forms land in the
/// same class iff their even Clifford algebras are isomorphic. Membership
/// is decided by the full candidate search against each existing
/// representative — no shortcut invariants. The lift scheme does not
/// change the partition (the algebras are equal, not just isomorphic,
/// only up to basis — see the tests); it is a parameter so that the
/// independence is checkable.
pub fn witt_partition(p: u32, scheme: LiftScheme) -> Result<FormPartition> {
    let ring = classification_field(p)?;
    let total = p.pow(6);
    let mut class_of = vec![u32::MAX; total as usize];
    let mut representatives: Vec<u32> = Vec::new();
    let mut rep_algebras: Vec<FpAlg> = Vec::new();

    for idx in 0..total {
        let a = algebra_of_index(&ring, p, idx, scheme);
        // Classes are disjoint, so at most one representative matches and
        // a parallel find is deterministic.
        let hit = if p == 2 || rep_algebras.len() <= 1 {
            rep_algebras.iter().position(|r| r.iso_from(&a).is_some())
        } else {
            (0..rep_algebras.len())
                .into_par_iter()
                .find_any(|&c| rep_algebras[c].iso_from(&a).is_some())
        };
        match hit {
            Some(c) => class_of[idx as usize] = c as u32,
            None => {
                let c = representatives.len() as u32;
                class_of[idx as usize] = c;
                representatives.push(idx);
                rep_algebras.push(a);
            }
        }
    }
    Ok(FormPartition { p, class_of, representatives })
}

/// Partition by the similarity action: the orbit of q under q ↦ λ·(q∘g)
/// for g ∈ GL₃(F_p) and λ a unit. Every application is checked against
/// the half-discriminant transformation law d₀(λ·(q∘g)) = det(g)²λ³d₀(q).
pub fn orbit_partition(p: u32) -> Result<FormPartition> {
    classification_field(p)?;
    let p8 = p as u8;
    let total = p.pow(6);
    let gl = fp::gl3(p8);
    let units: Vec<u8> = (1..p8).collect();
    let mut class_of = vec![u32::MAX; total as usize];
    let mut representatives = Vec::new();

    for idx in 0..total {
        if class_of[idx as usize] != u32::MAX {
            continue;
        }
        let c = representatives.len() as u32;
        representatives.push(idx);
        let f = fp::decode_form(p8, idx);
        let d0 = fp::d0_form(p8, &f);
        for g in &gl {
            let det = fp::det3(p8, g);
            let det2 = ((det as u16 * det as u16) % p as u16) as u8;
            for &lam in &units {
                let img = fp::act_form(p8, &f, g, lam);
                let lam3 = ((lam as u32 * lam as u32 * lam as u32) % p) as u8;
                let expected =
                    ((det2 as u32 * lam3 as u32 * d0 as u32) % p) as u8;
                assert_eq!(
                    fp::d0_form(p8, &img),
                    expected,
                    "half-discriminant law violated by a witness"
                );
                let j = fp::form_index(p8, &img) as usize;
                assert!(class_of[j] == u32::MAX || class_of[j] == c, "orbits must not merge");
                class_of[j] = c;
            }
        }
    }
    Ok(FormPartition { p, class_of, representatives })
}

/// The comparison the whole construction exists for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub field: String,
    pub witt_classes: usize,
    pub orbit_classes: usize,
    pub equal: bool,
    pub semiregular_classes: usize,
    pub azumaya_classes: usize,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.equal
            && self.witt_classes == self.orbit_classes
            && self.semiregular_classes == self.azumaya_classes
    }
}

/// Compute both partitions of the p⁶ forms and compare: the partitions
/// must coincide class by class, semiregularity must be constant on each
/// class, and the Azumaya verdict of each class algebra must equal the
/// class's semiregularity flag.
pub fn verify_bijection(p: u32) -> Result<BijectionReport> {
    let ring = classification_field(p)?;
    let witt = witt_partition(p, LiftScheme::Upper)?;
    let orbit = orbit_partition(p)?;
    let equal = witt.class_of == orbit.class_of;

    // Semiregularity must be constant on each orbit class.
    let p8 = p as u8;
    let mut class_flag: Vec<Option<bool>> = vec![None; orbit.class_count()];
    let mut consistent = true;
    for idx in 0..p.pow(6) {
        let c = orbit.class_of[idx as usize] as usize;
        let sr = fp::d0_form(p8, &fp::decode_form(p8, idx)) != 0;
        match class_flag[c] {
            None => class_flag[c] = Some(sr),
            Some(prev) => consistent &= prev == sr,
        }
    }

    let semiregular_classes = class_flag.iter().filter(|f| **f == Some(true)).count();

    // Azumaya verdict per representative algebra, against the class flag.
    let subspaces = crate::azumaya::proper_subspaces(&ring)?;
    let mut azumaya_classes = 0;
    for (c, &rep) in orbit.representatives.iter().enumerate() {
        let q = form_of_index(&ring, p, rep);
        let az = crate::azumaya::is_azumaya_with(&upsilon(&q.lift_with(LiftScheme::Upper)), &subspaces)?;
        if az {
            azumaya_classes += 1;
        }
        consistent &= az == class_flag[c].unwrap_or(false);
    }

    Ok(BijectionReport {
        field: ring.to_string(),
        witt_classes: witt.class_count(),
        orbit_classes: orbit.class_count(),
        equal: equal && consistent,
        semiregular_classes,
        azumaya_classes,
    })
}

/// All algebra automorphisms of a rank-4 table over F_p (p ≤ 5), as maps.
/// `NotAField` off fields, `FieldTooLarge` over ℚ or for p > 5.
pub fn automorphism_group(a: &AlgebraStructure4) -> Result<Vec<AlgebraMap>> {
    let ring = a.ring().clone();
    match &ring {
        Ring::PrimeField(p) if *p <= 5 => {}
        Ring::PrimeField(_) | Ring::Rationals => return Err(Error::FieldTooLarge),
        _ => return Err(Error::NotAField),
    }
    let fast = FpAlg::from_algebra(a)?;
    let mut out = Vec::new();
    for v in fast.automorphisms() {
        let mut m = Mat::zero(&ring, 4);
        m.set(0, 0, ring.one());
        for (c, w) in v.iter().enumerate() {
            for r in 0..4 {
                m.set(r, c + 1, ring.from_i64(w[r] as i64));
            }
        }
        out.push(AlgebraMap::new(m));
    }
    Ok(out)
}

/// The verdicts of the six exact-row checks for one semiregular form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRowsReport {
    pub aut_order: usize,
    pub mu2_order: usize,
    pub o_order: usize,
    pub so_order: usize,
    pub go_order: usize,
    pub unit_determinants: bool,
    pub o_row_exact: bool,
    pub so_bijective: bool,
    pub go_surjective_with_kernel: bool,
    pub section_splits: bool,
    pub det_identity: bool,
}

impl ExactRowsReport {
    pub fn all_pass(&self) -> bool {
        self.unit_determinants
            && self.o_row_exact
            && self.so_bijective
            && self.go_surjective_with_kernel
            && self.section_splits
            && self.det_identity
    }
}

fn mat_of_fp(ring: &Ring, g: &[[u8; 3]; 3]) -> Mat {
    Mat::from_rows(
        ring,
        g.iter()
            .map(|row| row.iter().map(|&x| ring.from_i64(x as i64)).collect())
            .collect(),
    )
}

/// Exhaustively realize, for one semiregular form q over F_p (p ∈ {2, 3}),
/// the exact rows linking O(q), SO(q), GO(q) and Aut(C₀(q)):
///
/// (a) every automorphism of C₀(q) has determinant 1;
/// (b) g ↦ C₀(g, 1) maps O(q) onto Aut with kernel exactly {±1};
/// (c) its restriction to SO(q) is bijective;
/// (d) (g, l) ↦ C₀(g, l) maps GO(q) onto Aut with kernel {(c·1, c²)};
/// (e) the section s⁺₁ splits row (c): it lands in similarities, inverts
///     C₀, and is a homomorphism on all of Aut × Aut;
/// (f) det C₀(g, l) = det(g)² l⁻³ on all of GO(q).
pub fn verify_exact_rows(p: u32, q: &QuadraticForm3) -> Result<ExactRowsReport> {
    let ring = classification_field(p)?;
    assert_eq!(q.ring(), &ring, "form must live over F_p");
    if !q.is_semiregular() {
        return Err(Error::NotSemiregular);
    }

    let a = upsilon(&q.lift_with(LiftScheme::Upper));
    let aut = automorphism_group(&a)?;
    let aut_order = aut.len();
    let contains = |m: &AlgebraMap| aut.iter().any(|x| x == m);

    // (a)
    let one = ring.one();
    let unit_determinants = aut.iter().all(|m| m.matrix().det() == one);

    // Enumerate GO(q) = {(g, l) : l·(q∘g⁻¹) = q}, and O, SO inside it.
    let units: Vec<RingElement> = ring.enumerate_units().expect("finite field");
    let mu2_order = ring.mu2().len();
    let mut go: Vec<Similarity> = Vec::new();
    for gm in fp::gl3(p as u8) {
        let g = mat_of_fp(&ring, &gm);
        for l in &units {
            let s = Similarity::new(g.clone(), l.clone()).expect("unit and invertible");
            if act_similarity(&s, q)? == *q {
                go.push(s);
            }
        }
    }
    let o: Vec<&Similarity> = go.iter().filter(|s| s.l().is_one()).collect();
    let so: Vec<&&Similarity> = o.iter().filter(|s| s.g().det() == one).collect();
    let (go_order, o_order, so_order) = (go.len(), o.len(), so.len());

    // Images under C₀(·).
    let image_of = |s: &Similarity| -> Result<AlgebraMap> {
        c0_of_similarity(s.g(), s.l(), q)
    };

    // (b) O onto Aut with kernel {±1}.
    let id_map = AlgebraMap::identity(&ring);
    let mut o_images = Vec::new();
    let mut kernel_ok = true;
    let minus_one = Mat::identity(&ring, 3).scale(&ring.from_i64(-1));
    for s in &o {
        let m = image_of(s)?;
        let in_kernel = m == id_map;
        let is_pm = s.g() == &Mat::identity(&ring, 3) || s.g() == &minus_one;
        kernel_ok &= in_kernel == is_pm;
        o_images.push(m);
    }
    let o_onto = aut.iter().all(|m| o_images.iter().any(|x| x == m))
        && o_images.iter().all(contains);
    let o_row_exact = o_onto && kernel_ok && o_order == mu2_order * aut_order;

    // (c) SO → Aut bijective.
    let mut so_images: Vec<AlgebraMap> = Vec::new();
    for s in &so {
        so_images.push(image_of(s)?);
    }
    let so_injective = (0..so_images.len())
        .all(|i| (0..i).all(|j| so_images[i] != so_images[j]));
    let so_bijective = so_injective
        && so_images.len() == aut_order
        && aut.iter().all(|m| so_images.iter().any(|x| x == m));

    // (d) GO onto Aut with kernel {(c·1, c²)}.
    let mut go_kernel_ok = true;
    let mut go_images = Vec::new();
    for s in &go {
        let m = image_of(s)?;
        let in_kernel = m == id_map;
        let scalar = units.iter().any(|c| {
            s.g() == &Mat::identity(&ring, 3).scale(c) && s.l() == &(c * c)
        });
        go_kernel_ok &= in_kernel == scalar;
        go_images.push(m);
    }
    let go_onto = aut.iter().all(|m| go_images.iter().any(|x| x == m));
    let go_surjective_with_kernel =
        go_onto && go_kernel_ok && go_order == units.len() * aut_order;

    // (e) s⁺₁ splits: section of C₀ and homomorphism on Aut × Aut.
    use crate::clifford::{lift_section, SectionVariant};
    let mut section_splits = true;
    let mut sections = Vec::with_capacity(aut_order);
    for m in &aut {
        let s = lift_section(m, q, q, SectionVariant::SPlus(1))?;
        section_splits &= image_of(&s)? == *m;
        sections.push(s);
    }
    'pairs: for (i, mi) in aut.iter().enumerate() {
        for (j, mj) in aut.iter().enumerate() {
            let composed = mi.compose(mj);
            let lifted = lift_section(&composed, q, q, SectionVariant::SPlus(1))?;
            let product = sections[i].compose(&sections[j]);
            if lifted != product {
                section_splits = false;
                break 'pairs;
            }
        }
    }

    // (f) det C₀(g, l) = det(g)² l⁻³ on GO.
    let mut det_identity = true;
    for (s, m) in go.iter().zip(&go_images) {
        let d = s.g().det();
        let expected = &d * &d * s.l().inverse().expect("unit").pow(3);
        det_identity &= m.matrix().det() == expected;
    }

    Ok(ExactRowsReport {
        aut_order,
        mu2_order,
        o_order,
        so_order,
        go_order,
        unit_determinants,
        o_row_exact,
        so_bijective,
        go_surjective_with_kernel,
        section_splits,
        det_identity,
    })
}
