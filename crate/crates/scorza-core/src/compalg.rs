//! The four split composition algebras over an exact field k:
//! k itself, k ⊕ k, 2x2 matrices, and their Cayley-Dickson double (split
//! octonions).
//!
//! Concrete models are fixed once and for all so that serialized data is
//! deterministic:
//!  - dim 1: k;
//!  - dim 2: k ⊕ k with componentwise product and conjugation the swap;
//!  - dim 4: 2x2 matrices, coordinates row-major (m11, m12, m21, m22),
//!    conjugation the adjugate, norm the determinant;
//!  - dim 8: pairs (a, b) of 2x2 matrices with
//!    (a,b)(c,d) = (ac + conj(d) b, da + b conj(c)), conj(a,b) = (conj a, -b),
//!    N(a,b) = N(a) - N(b).
//!
//! The arithmetic is generic over [`Ring`] so the same kernels run over
//! dual numbers for exact first-order checks.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{FieldSpec, Ring, Scalar};
use crate::subspace::{image, Subspace};

pub const ALGEBRA_DIMS: [u8; 4] = [1, 2, 4, 8];

/// Which split composition algebra, over which field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraTag {
    pub dim: u8,
    pub field: FieldSpec,
}

impl AlgebraTag {
    pub fn new(dim: u8, field: FieldSpec) -> Result<AlgebraTag> {
        if !ALGEBRA_DIMS.contains(&dim) {
            return Err(Error::TagMismatch(format!(
                "composition algebras have dimension 1, 2, 4 or 8; got {dim}"
            )));
        }
        Ok(AlgebraTag { dim, field })
    }
}

/// Element of a split composition algebra, as a coordinate vector in the
/// fixed model basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgElem<R: Ring> {
    coords: Vec<R>,
}

pub type Alg = AlgElem<Scalar>;

impl<R: Ring> AlgElem<R> {
    pub fn new(coords: Vec<R>) -> Result<AlgElem<R>> {
        if !ALGEBRA_DIMS.contains(&(coords.len() as u8)) {
            return Err(Error::TagMismatch(format!(
                "coordinate vector of length {} is not a composition-algebra element",
                coords.len()
            )));
        }
        Ok(AlgElem { coords })
    }

    pub fn dim(&self) -> u8 {
        self.coords.len() as u8
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<R> {
        self.coords
    }

    pub fn zero_like(&self) -> AlgElem<R> {
        let z = self.coords[0].zero_like();
        AlgElem {
            coords: vec![z; self.coords.len()],
        }
    }

    pub fn one_like(&self) -> AlgElem<R> {
        let z = self.coords[0].zero_like();
        let o = self.coords[0].one_like();
        AlgElem {
            coords: unit_coords(self.dim(), z, o),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &AlgElem<R>) -> AlgElem<R> {
        AlgElem {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &AlgElem<R>) -> AlgElem<R> {
        AlgElem {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> AlgElem<R> {
        AlgElem {
            coords: self.coords.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &R) -> AlgElem<R> {
        AlgElem {
            coords: self.coords.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn map_ring<S: crate::scalar::Ring>(&self, f: impl Fn(&R) -> S) -> AlgElem<S> {
        AlgElem {
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

fn unit_coords<R: Ring>(dim: u8, z: R, o: R) -> Vec<R> {
    match dim {
        1 => vec![o],
        2 => vec![o.clone(), o],
        4 => vec![o.clone(), z.clone(), z, o],
        8 => {
            let mut v = unit_coords(4, z.clone(), o);
            v.extend(vec![z; 4]);
            v
        }
        _ => unreachable!(),
    }
}

fn check_same_tag<R: Ring>(x: &AlgElem<R>, y: &AlgElem<R>) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::TagMismatch(format!(
            "operands of dimensions {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    Ok(())
}

fn mul2<R: Ring>(x: &[R], y: &[R]) -> Vec<R> {
    vec![x[0].mul(&y[0]), x[1].mul(&y[1])]
}

fn mul4<R: Ring>(x: &[R], y: &[R]) -> Vec<R> {
    // 2x2 matrix product, row-major.
    vec![
        x[0].mul(&y[0]).add(&x[1].mul(&y[2])),
        x[0].mul(&y[1]).add(&x[1].mul(&y[3])),
        x[2].mul(&y[0]).add(&x[3].mul(&y[2])),
        x[2].mul(&y[1]).add(&x[3].mul(&y[3])),
    ]
}

fn conj_coords<R: Ring>(dim: u8, x: &[R]) -> Vec<R> {
    match dim {
        1 => x.to_vec(),
        2 => vec![x[1].clone(), x[0].clone()],
        4 => vec![x[3].clone(), x[1].neg(), x[2].neg(), x[0].clone()],
        8 => {
            let mut v = conj_coords(4, &x[..4]);
            v.extend(x[4..].iter().map(|c| c.neg()));
            v
        }
        _ => unreachable!(),
    }
}

fn mul_coords<R: Ring>(dim: u8, x: &[R], y: &[R]) -> Vec<R> {
    match dim {
        1 => vec![x[0].mul(&y[0])],
        2 => mul2(x, y),
        4 => mul4(x, y),
        8 => {
            let (a, b) = (&x[..4], &x[4..]);
            let (c, d) = (&y[..4], &y[4..]);
            // (a,b)(c,d) = (ac + conj(d) b, da + b conj(c))
            let dbar = conj_coords(4, d);
            let cbar = conj_coords(4, c);
            let mut first = mul4(a, c);
            let t = mul4(&dbar, b);
            first = first.iter().zip(&t).map(|(u, v)| u.add(v)).collect();
            let mut second = mul4(d, a);
            let t = mul4(b, &cbar);
            second = second.iter().zip(&t).map(|(u, v)| u.add(v)).collect();
            first.extend(second);
            first
        }
        _ => unreachable!(),
    }
}

fn norm_coords<R: Ring>(dim: u8, x: &[R]) -> R {
    match dim {
        1 => x[0].mul(&x[0]),
        2 => x[0].mul(&x[1]),
        4 => x[0].mul(&x[3]).sub(&x[1].mul(&x[2])),
        8 => norm_coords(4, &x[..4]).sub(&norm_coords(4, &x[4..])),
        _ => unreachable!(),
    }
}

/// Product in the algebra.
pub fn alg_mul<R: Ring>(x: &AlgElem<R>, y: &AlgElem<R>) -> Result<AlgElem<R>> {
    check_same_tag(x, y)?;
    Ok(AlgElem {
        coords: mul_coords(x.dim(), &x.coords, &y.coords),
    })
}

/// Conjugation, an involutive anti-automorphism.
pub fn conj<R: Ring>(x: &AlgElem<R>) -> AlgElem<R> {
    AlgElem {
        coords: conj_coords(x.dim(), &x.coords),
    }
}

/// The multiplicative norm N, with x * conj(x) = N(x) * 1.
pub fn norm<R: Ring>(x: &AlgElem<R>) -> R {
    norm_coords(x.dim(), &x.coords)
}

/// Polarized norm N(x, y) = N(x + y) - N(x) - N(y).
pub fn norm_polar<R: Ring>(x: &AlgElem<R>, y: &AlgElem<R>) -> Result<R> {
    check_same_tag(x, y)?;
    let s = norm(&x.add(y));
    Ok(s.sub(&norm(x)).sub(&norm(y)))
}

/// Scalar real part: x + conj(x) = 2 re(x) * 1.
pub fn re<R: Ring>(x: &AlgElem<R>) -> R {
    let s = x.add(&conj(x));
    s.coords[0].halve()
}

/// Standard basis element e_i of the model.
pub fn basis_elem(tag: AlgebraTag, i: usize) -> Alg {
    let mut coords = vec![tag.field.zero(); tag.dim as usize];
    coords[i] = tag.field.one();
    AlgElem { coords }
}

pub fn elem_from_coords(tag: AlgebraTag, coords: Vec<Scalar>) -> Result<Alg> {
    if coords.len() != tag.dim as usize {
        return Err(Error::TagMismatch(format!(
            "{} coordinates for a dimension-{} algebra",
            coords.len(),
            tag.dim
        )));
    }
    for c in &coords {
        if c.field() != tag.field {
            return Err(Error::FieldMismatch(format!(
                "coordinate over {} in an algebra over {}",
                c.field(),
                tag.field
            )));
        }
    }
    AlgElem::new(coords)
}

pub fn elem_from_i64(tag: AlgebraTag, coords: &[i64]) -> Alg {
    elem_from_coords(
        tag,
        coords
            .iter()
            .map(|&n| Scalar::from_i64(tag.field, n))
            .collect(),
    )
    .expect("integer coordinates")
}

/// Matrix of left multiplication by z in the model basis (acting on row
/// vectors: v -> coords(z * v)).
pub fn lmul_matrix(z: &Alg) -> Mat {
    let field = z.coords[0].field();
    let d = z.dim() as usize;
    let rows: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            let mut e = vec![field.zero(); d];
            e[i] = field.one();
            mul_coords(z.dim(), &z.coords, &e)
        })
        .collect();
    Mat::from_rows(field, d, rows).expect("lmul rows")
}

/// Matrix of right multiplication by z (v -> coords(v * z)).
pub fn rmul_matrix(z: &Alg) -> Mat {
    let field = z.coords[0].field();
    let d = z.dim() as usize;
    let rows: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            let mut e = vec![field.zero(); d];
            e[i] = field.one();
            mul_coords(z.dim(), &e, &z.coords)
        })
        .collect();
    Mat::from_rows(field, d, rows).expect("rmul rows")
}

/// Image L(z) of left multiplication.
pub fn l_image(z: &Alg) -> Subspace {
    image(&lmul_matrix(z))
}

/// Image R(z) of right multiplication.
pub fn r_image(z: &Alg) -> Subspace {
    image(&rmul_matrix(z))
}

/// Deterministic sampling of an isotropic (null) element: the solve keeps
/// the norm exactly zero without any root extraction, so it works over Q
/// and over prime fields alike.
pub fn sample_null(tag: AlgebraTag, seed: u64) -> Result<Alg> {
    use crate::sample::{find_generic, SeedStream};
    match tag.dim {
        1 => Err(Error::Precondition(
            "the 1-dimensional algebra has no nonzero null elements".into(),
        )),
        2 => {
            // (x, 0) has norm 0
            find_generic(seed, "null element", |s| {
                let mut st = SeedStream::new(s);
                let x = st.small_scalar(tag.field);
                if x.is_zero() {
                    return None;
                }
                Some(elem_from_coords(tag, vec![x, tag.field.zero()]).unwrap())
            })
        }
        4 => {
            // det = m11 m22 - m12 m21 = 0: pick m11 free, solve m22
            find_generic(seed, "null element", |s| {
                let mut st = SeedStream::new(s);
                let m11 = st.small_scalar(tag.field);
                let m12 = st.small_scalar(tag.field);
                let m21 = st.small_scalar(tag.field);
                if m11.is_zero() {
                    return None;
                }
                let m22 = m12.mul(&m21).div(&m11);
                Some(elem_from_coords(tag, vec![m11, m12, m21, m22]).unwrap())
            })
        }
        8 => {
            // N(a) - N(b) = 0 with a sampled and b solved on its last entry
            find_generic(seed, "null element", |s| {
                let mut st = SeedStream::new(s);
                let a: Vec<Scalar> = (0..4).map(|_| st.small_scalar(tag.field)).collect();
                let b0 = st.small_scalar(tag.field);
                let b1 = st.small_scalar(tag.field);
                let b2 = st.small_scalar(tag.field);
                if b0.is_zero() {
                    return None;
                }
                let na = a[0].mul(&a[3]).sub(&a[1].mul(&a[2]));
                // b0 b3 - b1 b2 = na
                let b3 = na.add(&b1.mul(&b2)).div(&b0);
                let mut coords = a;
                coords.extend([b0, b1, b2, b3]);
                let z = AlgElem::new(coords).unwrap();
                if z.is_zero() {
                    None
                } else {
                    Some(z)
                }
            })
        }
        _ => unreachable!(),
    }
}

/// Deterministic sample of an arbitrary element.
pub fn sample_elem(tag: AlgebraTag, seed: u64) -> Alg {
    let coords = crate::sample::sample_vector(tag.field, tag.dim as usize, seed);
    AlgElem { coords }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn split_complex_is_componentwise() {
        let tag = AlgebraTag::new(2, q()).unwrap();
        let x = elem_from_i64(tag, &[1, 2]);
        let y = elem_from_i64(tag, &[3, 4]);
        assert_eq!(alg_mul(&x, &y).unwrap(), elem_from_i64(tag, &[3, 8]));
        assert_eq!(conj(&x), elem_from_i64(tag, &[2, 1]));
        assert_eq!(norm(&x), Scalar::from_i64(q(), 2));
    }

    #[test]
    fn matrix_units_multiply() {
        let tag = AlgebraTag::new(4, q()).unwrap();
        let e11 = elem_from_i64(tag, &[1, 0, 0, 0]);
        let e12 = elem_from_i64(tag, &[0, 1, 0, 0]);
        assert_eq!(alg_mul(&e11, &e12).unwrap(), e12);
        let m = elem_from_i64(tag, &[1, 2, 3, 4]);
        assert_eq!(norm(&m), Scalar::from_i64(q(), -2));
        // conj is the adjugate and m * conj(m) = det * 1
        let p = alg_mul(&m, &conj(&m)).unwrap();
        assert_eq!(p, m.one_like().scale(&Scalar::from_i64(q(), -2)));
    }

    #[test]
    fn units_are_two_sided() {
        for dim in ALGEBRA_DIMS {
            let tag = AlgebraTag::new(dim, q()).unwrap();
            let x = sample_elem(tag, 17);
            let one = x.one_like();
            assert_eq!(alg_mul(&x, &one).unwrap(), x);
            assert_eq!(alg_mul(&one, &x).unwrap(), x);
        }
    }

    #[test]
    fn composition_law_small_sample() {
        for dim in ALGEBRA_DIMS {
            let tag = AlgebraTag::new(dim, q()).unwrap();
            for seed in 0..50u64 {
                let x = sample_elem(tag, 2 * seed);
                let y = sample_elem(tag, 2 * seed + 1);
                let xy = alg_mul(&x, &y).unwrap();
                assert_eq!(norm(&xy), norm(&x).mul(&norm(&y)), "dim {dim} seed {seed}");
            }
        }
    }

    #[test]
    fn conjugation_is_anti_automorphism() {
        let tag = AlgebraTag::new(8, q()).unwrap();
        for seed in 0..20u64 {
            let x = sample_elem(tag, 3 * seed);
            let y = sample_elem(tag, 3 * seed + 1);
            let lhs = conj(&alg_mul(&x, &y).unwrap());
            let rhs = alg_mul(&conj(&y), &conj(&x)).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(conj(&conj(&x)), x);
        }
    }

    #[test]
    fn norm_polar_of_unit_is_twice_re() {
        let tag = AlgebraTag::new(8, q()).unwrap();
        for seed in 0..100u64 {
            let x = sample_elem(tag, seed);
            let one = x.one_like();
            assert_eq!(norm_polar(&x, &one).unwrap(), re(&x).scale_i64(2));
        }
    }

    #[test]
    fn x_times_conj_is_norm() {
        for dim in ALGEBRA_DIMS {
            let tag = AlgebraTag::new(dim, q()).unwrap();
            for seed in 0..20u64 {
                let x = sample_elem(tag, seed);
                let p = alg_mul(&x, &conj(&x)).unwrap();
                assert_eq!(p, x.one_like().scale(&norm(&x)));
            }
        }
    }

    #[test]
    fn null_octonions_have_half_rank_multiplication() {
        let tag = AlgebraTag::new(8, q()).unwrap();
        for seed in 0..30u64 {
            let z = sample_null(tag, 1000 + seed).unwrap();
            assert!(norm(&z).is_zero());
            assert!(!z.is_zero());
            assert_eq!(l_image(&z).dim(), 4, "seed {seed}");
            assert_eq!(r_image(&z).dim(), 4, "seed {seed}");
        }
    }

    #[test]
    fn invertible_multiplication_has_full_image() {
        let tag = AlgebraTag::new(8, q()).unwrap();
        let one = basis_elem(tag, 0).one_like();
        assert_eq!(lmul_matrix(&one), Mat::identity(q(), 8));
        let z = sample_elem(tag, 5);
        assert!(!norm(&z).is_zero());
        assert_eq!(l_image(&z).dim(), 8);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_coords(dim: usize) -> impl Strategy<Value = Vec<i64>> {
            proptest::collection::vec(-9i64..=9, dim)
        }

        proptest! {
            #[test]
            fn composition_law_holds(cs in small_coords(8), ds in small_coords(8)) {
                let tag = AlgebraTag::new(8, FieldSpec::Rationals).unwrap();
                let x = elem_from_i64(tag, &cs);
                let y = elem_from_i64(tag, &ds);
                let xy = alg_mul(&x, &y).unwrap();
                prop_assert_eq!(norm(&xy), norm(&x).mul(&norm(&y)));
            }

            #[test]
            fn conjugation_fixes_the_norm(cs in small_coords(8)) {
                let tag = AlgebraTag::new(8, FieldSpec::Rationals).unwrap();
                let x = elem_from_i64(tag, &cs);
                prop_assert_eq!(norm(&conj(&x)), norm(&x));
            }
        }
    }
}
