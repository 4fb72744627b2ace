//! Canonical subspace calculus.
//!
//! A subspace is stored as the unique reduced row-echelon basis of its row
//! span, so equal subspaces compare equal componentwise and every quotient
//! construction downstream is reproducible bit for bit.

use crate::error::{Error, Result};
use crate::linalg::{vec_is_zero, vec_sub, Mat};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    /// RREF basis rows; no zero rows.
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonical row span of the given rows.
    pub fn from_rows(field: FieldSpec, ambient: usize, rows: Vec<Vec<Scalar>>) -> Result<Subspace> {
        let m = Mat::from_rows(field, ambient, rows)?;
        Ok(Self::from_mat(m, ambient))
    }

    fn from_mat(m: Mat, ambient: usize) -> Subspace {
        let field = m.field();
        let (r, pivots) = m.rref();
        let rows: Vec<Vec<Scalar>> = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace {
            field,
            ambient,
            basis: Mat::from_rows(field, ambient, rows).expect("rref rows"),
            pivots,
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Mat::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        self.basis.rows_vec()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, o: &Subspace) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(format!(
                "subspaces over {} and {}",
                self.field, o.field
            )));
        }
        if self.ambient != o.ambient {
            return Err(Error::ShapeMismatch(format!(
                "subspaces of ambient dimensions {} and {}",
                self.ambient, o.ambient
            )));
        }
        Ok(())
    }

    /// Reduces v by the basis; the result has zeros in all pivot columns and
    /// is zero exactly when v lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let c = v[p].clone();
                let row = self.basis.row(i);
                for j in 0..self.ambient {
                    v[j] = v[j].sub(&c.mul(&row[j]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.basis_rows().iter().all(|r| self.contains(r))
    }

    /// Coefficients of v with respect to the RREF basis; Err when v is
    /// outside the span. Because the basis is reduced these are just the
    /// pivot coordinates of v.
    pub fn coords_of(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if !self.contains(v) {
            return Err(Error::Precondition(
                "vector outside the claimed subspace".into(),
            ));
        }
        Ok(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn join(&self, o: &Subspace) -> Result<Subspace> {
        self.check_compatible(o)?;
        let mut rows = self.basis_rows();
        rows.extend(o.basis_rows());
        Subspace::from_rows(self.field, self.ambient, rows)
    }

    pub fn meet(&self, o: &Subspace) -> Result<Subspace> {
        self.check_compatible(o)?;
        // Solve a*A = b*B by taking the left kernel of [A^T | -B^T] stacked
        // as rows of the combined coefficient space.
        let p = self.dim();
        let q = o.dim();
        if p == 0 || q == 0 {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let mut stack = Mat::zeros(self.field, p + q, self.ambient);
        for i in 0..p {
            for j in 0..self.ambient {
                *stack.at_mut(i, j) = self.basis.at(i, j).clone();
            }
        }
        for i in 0..q {
            for j in 0..self.ambient {
                *stack.at_mut(p + i, j) = o.basis.at(i, j).neg();
            }
        }
        let ker = stack.kernel(); // rows (a | b) with a*A = b*B
        let rows: Vec<Vec<Scalar>> = (0..ker.nrows())
            .map(|i| {
                let k = ker.row(i);
                self.basis.apply_row(&k[0..p])
            })
            .collect();
        Subspace::from_rows(self.field, self.ambient, rows)
    }

    /// {w : v G w^T = 0 for all v here}; `pairing` must be nondegenerate
    /// for the double-annihilator identity to hold.
    pub fn annihilator(&self, pairing: &Mat) -> Result<Subspace> {
        if pairing.nrows() != self.ambient || pairing.ncols() != self.ambient {
            return Err(Error::ShapeMismatch(format!(
                "pairing of shape {}x{} on ambient dimension {}",
                pairing.nrows(),
                pairing.ncols(),
                self.ambient
            )));
        }
        if self.dim() == 0 {
            return Ok(Subspace::full(self.field, self.ambient));
        }
        // Conditions: (basis * G) w^T = 0, i.e. w in the left kernel of
        // (basis*G)^T.
        let bg = self.basis.matmul(pairing);
        Ok(Subspace::from_mat(bg.transpose().kernel(), self.ambient))
    }
}

/// Left kernel of `map` (a matrix k^a -> k^b acting on row vectors).
pub fn kernel(map: &Mat) -> Subspace {
    let k = map.kernel();
    let ambient = map.nrows();
    Subspace::from_rows(map.field(), ambient, k.rows_vec()).expect("kernel rows")
}

/// Row space of `map`.
pub fn image(map: &Mat) -> Subspace {
    Subspace::from_rows(map.field(), map.ncols(), map.rows_vec()).expect("image rows")
}

/// Quotient of the ambient space by `sub`, with the canonical complement
/// spanned by the pivot-free coordinates of the RREF basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMap {
    sub: Subspace,
    complement: Vec<usize>,
}

impl QuotientMap {
    pub fn new(sub: Subspace) -> QuotientMap {
        let complement = (0..sub.ambient_dim())
            .filter(|c| !sub.pivots().contains(c))
            .collect();
        QuotientMap { sub, complement }
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.ambient_dim()
    }

    pub fn codim(&self) -> usize {
        self.complement.len()
    }

    pub fn complement_cols(&self) -> &[usize] {
        &self.complement
    }

    /// Class of v in the quotient, as coordinates along the complement.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.sub.reduce(v);
        self.complement.iter().map(|&c| r[c].clone()).collect()
    }

    /// The canonical representative of a class.
    pub fn lift(&self, class: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(class.len(), self.complement.len());
        let mut v = vec![self.sub.field().zero(); self.ambient_dim()];
        for (k, &c) in self.complement.iter().enumerate() {
            v[c] = class[k].clone();
        }
        v
    }

    /// Image of a subspace under the quotient map.
    pub fn project_subspace(&self, s: &Subspace) -> Result<Subspace> {
        let rows: Vec<Vec<Scalar>> = s.basis_rows().iter().map(|r| self.project(r)).collect();
        Subspace::from_rows(self.sub.field(), self.codim(), rows)
    }
}

/// Chart for a quotient of nested subspaces small ⊂ big: classes are
/// expressed in canonical coordinates of dimension dim(big) - dim(small).
#[derive(Debug, Clone, PartialEq)]
pub struct SubQuotient {
    big: Subspace,
    q: QuotientMap,
}

impl SubQuotient {
    pub fn new(big: Subspace, small: &Subspace) -> Result<SubQuotient> {
        if !big.contains_subspace(small) {
            return Err(Error::Precondition(
                "quotient denominator is not contained in the numerator".into(),
            ));
        }
        let rel_rows: Vec<Vec<Scalar>> = small
            .basis_rows()
            .iter()
            .map(|r| big.coords_of(r))
            .collect::<Result<_>>()?;
        let rel = Subspace::from_rows(big.field(), big.dim(), rel_rows)?;
        Ok(SubQuotient {
            q: QuotientMap::new(rel),
            big,
        })
    }

    pub fn big(&self) -> &Subspace {
        &self.big
    }

    pub fn dim(&self) -> usize {
        self.q.codim()
    }

    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        Ok(self.q.project(&self.big.coords_of(v)?))
    }

    /// Canonical ambient representative of a class.
    pub fn lift(&self, class: &[Scalar]) -> Vec<Scalar> {
        let rel = self.q.lift(class);
        self.big.basis().apply_row(&rel)
    }
}

pub fn sub_of_vec(field: FieldSpec, v: &[Scalar]) -> Subspace {
    Subspace::from_rows(field, v.len(), vec![v.to_vec()]).expect("span rows")
}

/// Difference of two vectors as a convenience for tangent-space work.
pub fn diff(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    vec_sub(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::scalar::Scalar;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn e(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![field.zero(); n];
        v[i] = field.one();
        v
    }

    #[test]
    fn meet_of_coordinate_planes() {
        let f = q();
        let a = Subspace::from_rows(f, 3, vec![e(f, 3, 0), e(f, 3, 1)]).unwrap();
        let b = Subspace::from_rows(f, 3, vec![e(f, 3, 1), e(f, 3, 2)]).unwrap();
        let m = a.meet(&b).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.contains(&e(f, 3, 1)));
        let j = a.join(&b).unwrap();
        assert_eq!(m.dim() + j.dim(), a.dim() + b.dim());
    }

    #[test]
    fn empty_span_has_rank_zero() {
        let s = Subspace::from_rows(q(), 3, vec![]).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.ambient_dim(), 3);
    }

    #[test]
    fn annihilator_under_identity_pairing() {
        let f = q();
        let s = sub_of_vec(f, &e(f, 3, 0));
        let ann = s.annihilator(&Mat::identity(f, 3)).unwrap();
        assert_eq!(ann.dim(), 2);
        assert!(ann.contains(&e(f, 3, 1)));
        assert!(ann.contains(&e(f, 3, 2)));
        assert_eq!(ann.annihilator(&Mat::identity(f, 3)).unwrap(), s);
    }

    #[test]
    fn quotient_projects_and_lifts() {
        let f = q();
        let s = Subspace::from_rows(f, 3, vec![vec![f.one(), f.one(), f.zero()]]).unwrap();
        let qm = QuotientMap::new(s);
        assert_eq!(qm.codim(), 2);
        let v = vec![
            Scalar::from_i64(f, 2),
            Scalar::from_i64(f, 5),
            Scalar::from_i64(f, 7),
        ];
        let cls = qm.project(&v);
        let w = qm.lift(&cls);
        // v - lift(project(v)) must lie in the subspace
        assert!(qm.sub().contains(&vec_sub(&v, &w)));
    }

    #[test]
    fn sub_quotient_charts() {
        let f = q();
        let big = Subspace::from_rows(f, 4, vec![e(f, 4, 0), e(f, 4, 1), e(f, 4, 2)]).unwrap();
        let small = Subspace::from_rows(f, 4, vec![e(f, 4, 0)]).unwrap();
        let ch = SubQuotient::new(big, &small).unwrap();
        assert_eq!(ch.dim(), 2);
        let v = vec![
            Scalar::from_i64(f, 3),
            Scalar::from_i64(f, 4),
            Scalar::from_i64(f, 5),
            f.zero(),
        ];
        let cls = ch.project(&v).unwrap();
        assert_eq!(cls, vec![Scalar::from_i64(f, 4), Scalar::from_i64(f, 5)]);
        let w = ch.lift(&cls);
        let d = vec_sub(&v, &w);
        assert!(small.contains(&d));
    }

    #[test]
    fn rref_is_idempotent_on_stored_bases() {
        let f = q();
        for seed in 0..200u64 {
            let rows = vec![
                crate::sample::sample_vector(f, 6, 3 * seed),
                crate::sample::sample_vector(f, 6, 3 * seed + 1),
                crate::sample::sample_vector(f, 6, 3 * seed + 2),
            ];
            let s = Subspace::from_rows(f, 6, rows).unwrap();
            let again = Subspace::from_rows(f, 6, s.basis_rows()).unwrap();
            assert_eq!(s, again, "seed {seed}");
        }
    }

    #[test]
    fn modular_law_on_a_thousand_pairs() {
        let f = q();
        for seed in 0..1000u64 {
            let a = Subspace::from_rows(
                f,
                5,
                vec![
                    crate::sample::sample_vector(f, 5, 4 * seed),
                    crate::sample::sample_vector(f, 5, 4 * seed + 1),
                ],
            )
            .unwrap();
            let b = Subspace::from_rows(
                f,
                5,
                vec![
                    crate::sample::sample_vector(f, 5, 4 * seed + 2),
                    crate::sample::sample_vector(f, 5, 4 * seed + 3),
                ],
            )
            .unwrap();
            let meet = a.meet(&b).unwrap();
            let join = a.join(&b).unwrap();
            assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim(), "seed {seed}");
            assert!(a.contains_subspace(&meet) && b.contains_subspace(&meet));
            assert!(join.contains_subspace(&a) && join.contains_subspace(&b));
        }
    }

    #[test]
    fn annihilator_is_an_involution_for_nondegenerate_pairings() {
        let f = q();
        let g = crate::jordan::trace_gram(f, 2, 8);
        for seed in 0..50u64 {
            let rows = vec![
                crate::sample::sample_vector(f, 10, 2 * seed),
                crate::sample::sample_vector(f, 10, 2 * seed + 1),
            ];
            let s = Subspace::from_rows(f, 10, rows).unwrap();
            let ann = s.annihilator(&g).unwrap();
            assert_eq!(ann.dim(), 10 - s.dim());
            assert_eq!(ann.annihilator(&g).unwrap(), s, "seed {seed}");
        }
    }
}
