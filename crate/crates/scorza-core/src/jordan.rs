//! Hermitian matrices over a split composition algebra, the rank-one
//! parametrization nu2, the trace form, the Jordan product with its
//! quadratic representation, and the cubic determinant with its trilinear
//! polarization (sizes n <= 3).
//!
//! The quadratic representation is computed through the Jordan
//! linearization 2 A o (A o B) - (A o A) o B, which is defined for octonion
//! entries and agrees with the literal matrix product A B A whenever the
//! entries generate an associative subalgebra.

use crate::compalg::{alg_mul, conj, norm, norm_polar, AlgElem, AlgebraTag, ALGEBRA_DIMS};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{FieldSpec, Ring, Scalar};

/// n x n Hermitian matrix: scalar diagonal plus the strict upper triangle;
/// the lower triangle is implicit by conjugation.
#[derive(Debug, Clone, PartialEq)]
pub struct HermMatrix<R: Ring> {
    n: usize,
    a: u8,
    diag: Vec<R>,
    /// Entries (i, j) with i < j in lexicographic order.
    upper: Vec<AlgElem<R>>,
}

pub type Herm = HermMatrix<Scalar>;

pub fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Coordinate dimension of H_n over the base field.
pub fn coord_dim(n: usize, a: u8) -> usize {
    n + (a as usize) * n * (n - 1) / 2
}

impl<R: Ring> HermMatrix<R> {
    pub fn new(n: usize, a: u8, diag: Vec<R>, upper: Vec<AlgElem<R>>) -> Result<HermMatrix<R>> {
        if !ALGEBRA_DIMS.contains(&a) {
            return Err(Error::TagMismatch(format!("bad algebra dimension {a}")));
        }
        if a == 8 && n > 3 {
            return Err(Error::ShapeMismatch(
                "octonion Hermitian matrices are only supported for n <= 3".into(),
            ));
        }
        if diag.len() != n || upper.len() != n * (n - 1) / 2 {
            return Err(Error::ShapeMismatch(format!(
                "Hermitian matrix of size {n} needs {n} diagonal and {} upper entries",
                n * (n - 1) / 2
            )));
        }
        if upper.iter().any(|z| z.dim() != a) {
            return Err(Error::TagMismatch(
                "upper entry with the wrong algebra dimension".into(),
            ));
        }
        Ok(HermMatrix { n, a, diag, upper })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alg_dim(&self) -> u8 {
        self.a
    }

    pub fn diag(&self) -> &[R] {
        &self.diag
    }

    pub fn upper(&self) -> &[AlgElem<R>] {
        &self.upper
    }

    pub fn upper_entry(&self, i: usize, j: usize) -> &AlgElem<R> {
        &self.upper[upper_index(self.n, i, j)]
    }

    /// Entry (i, j) as an algebra element, with the lower triangle obtained
    /// by conjugation and the diagonal as scalar multiples of the unit.
    pub fn entry(&self, i: usize, j: usize) -> AlgElem<R> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => self.upper[upper_index(self.n, i, j)].clone(),
            Ordering::Greater => conj(&self.upper[upper_index(self.n, j, i)]),
            Ordering::Equal => self.sample_elem().one_like().scale(&self.diag[i]),
        }
    }

    fn sample_elem(&self) -> AlgElem<R> {
        if let Some(z) = self.upper.first() {
            z.zero_like()
        } else {
            let z = self.diag[0].zero_like();
            AlgElem::new(vec![z; self.a as usize]).expect("zero element")
        }
    }

    pub fn zero_like(&self) -> HermMatrix<R> {
        let ze = self.sample_elem();
        HermMatrix {
            n: self.n,
            a: self.a,
            diag: vec![self.diag[0].zero_like(); self.n],
            upper: vec![ze; self.upper.len()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(|d| d.is_zero()) && self.upper.iter().all(|z| z.is_zero())
    }

    pub fn add(&self, o: &HermMatrix<R>) -> HermMatrix<R> {
        HermMatrix {
            n: self.n,
            a: self.a,
            diag: self
                .diag
                .iter()
                .zip(&o.diag)
                .map(|(x, y)| x.add(y))
                .collect(),
            upper: self
                .upper
                .iter()
                .zip(&o.upper)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }

    pub fn sub(&self, o: &HermMatrix<R>) -> HermMatrix<R> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> HermMatrix<R> {
        HermMatrix {
            n: self.n,
            a: self.a,
            diag: self.diag.iter().map(|x| x.neg()).collect(),
            upper: self.upper.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &R) -> HermMatrix<R> {
        HermMatrix {
            n: self.n,
            a: self.a,
            diag: self.diag.iter().map(|x| x.mul(s)).collect(),
            upper: self.upper.iter().map(|x| x.scale(s)).collect(),
        }
    }

    /// Coordinate vector: diagonal scalars first, then the upper entries'
    /// coordinates in storage order.
    pub fn to_coords(&self) -> Vec<R> {
        let mut v = self.diag.clone();
        for z in &self.upper {
            v.extend(z.coords().iter().cloned());
        }
        v
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> HermMatrix<S> {
        HermMatrix {
            n: self.n,
            a: self.a,
            diag: self.diag.iter().map(f).collect(),
            upper: self
                .upper
                .iter()
                .map(|z| AlgElem::new(z.coords().iter().map(f).collect()).expect("mapped entry"))
                .collect(),
        }
    }

    fn same_shape(&self, o: &HermMatrix<R>) -> Result<()> {
        if self.n != o.n || self.a != o.a {
            return Err(Error::ShapeMismatch(format!(
                "Hermitian matrices of shapes ({}, a={}) and ({}, a={})",
                self.n, self.a, o.n, o.a
            )));
        }
        Ok(())
    }
}

pub fn herm_from_coords<R: Ring>(n: usize, a: u8, coords: &[R]) -> Result<HermMatrix<R>> {
    if coords.len() != coord_dim(n, a) {
        return Err(Error::ShapeMismatch(format!(
            "{} coordinates for H_{n} with a = {a} (expected {})",
            coords.len(),
            coord_dim(n, a)
        )));
    }
    let diag = coords[..n].to_vec();
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    let mut k = n;
    for _ in 0..n * (n - 1) / 2 {
        upper.push(AlgElem::new(coords[k..k + a as usize].to_vec())?);
        k += a as usize;
    }
    HermMatrix::new(n, a, diag, upper)
}

pub fn herm_zero(field: FieldSpec, n: usize, a: u8) -> Herm {
    herm_from_coords(n, a, &vec![field.zero(); coord_dim(n, a)]).expect("zero matrix")
}

pub fn herm_identity(field: FieldSpec, n: usize, a: u8) -> Herm {
    let mut m = herm_zero(field, n, a);
    for d in m.diag.iter_mut() {
        *d = field.one();
    }
    m
}

/// k-th coordinate basis matrix of H_n.
pub fn herm_basis(field: FieldSpec, n: usize, a: u8, k: usize) -> Herm {
    let mut coords = vec![field.zero(); coord_dim(n, a)];
    coords[k] = field.one();
    herm_from_coords(n, a, &coords).expect("basis matrix")
}

/// Diagonal matrix from integer entries.
pub fn herm_diag_i64(field: FieldSpec, a: u8, entries: &[i64]) -> Herm {
    let n = entries.len();
    let mut m = herm_zero(field, n, a);
    for (i, &e) in entries.iter().enumerate() {
        m.diag[i] = Scalar::from_i64(field, e);
    }
    m
}

/// Sets an upper entry of a Hermitian matrix, returning the modified copy.
pub fn herm_with_upper(m: &Herm, i: usize, j: usize, z: Alg) -> Herm {
    let mut out = m.clone();
    out.upper[upper_index(m.n, i, j)] = z;
    out
}

use crate::compalg::Alg;

/// Rank-one parametrization: entry (i, j) is z_i conj(z_j); the diagonal
/// entries are the norms N(z_i).
pub fn nu2<R: Ring>(z: &[AlgElem<R>]) -> Result<HermMatrix<R>> {
    let n = z.len();
    if n == 0 {
        return Err(Error::ShapeMismatch("nu2 of an empty tuple".into()));
    }
    let a = z[0].dim();
    if z.iter().any(|e| e.dim() != a) {
        return Err(Error::TagMismatch(
            "nu2 entries must share one algebra".into(),
        ));
    }
    let diag: Vec<R> = z.iter().map(norm).collect();
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            upper.push(alg_mul(&z[i], &conj(&z[j]))?);
        }
    }
    HermMatrix::new(n, a, diag, upper)
}

/// Polarization of nu2: the image of the differential of nu2 at z in the
/// direction e, namely nu2(z + e) - nu2(z) - nu2(e).
pub fn nu2_polar<R: Ring>(z: &[AlgElem<R>], e: &[AlgElem<R>]) -> Result<HermMatrix<R>> {
    let sum: Vec<AlgElem<R>> = z.iter().zip(e).map(|(x, y)| x.add(y)).collect();
    Ok(nu2(&sum)?.sub(&nu2(z)?).sub(&nu2(e)?))
}

/// The invariant pairing (A, B) = tr(AB), expanded entrywise.
pub fn trace_form<R: Ring>(x: &HermMatrix<R>, y: &HermMatrix<R>) -> Result<R> {
    x.same_shape(y)?;
    let mut acc = x.diag[0].mul(&y.diag[0]);
    for i in 1..x.n {
        acc = acc.add(&x.diag[i].mul(&y.diag[i]));
    }
    for (p, q) in x.upper.iter().zip(&y.upper) {
        acc = acc.add(&norm_polar(p, q)?);
    }
    Ok(acc)
}

fn full<R: Ring>(m: &HermMatrix<R>) -> Vec<AlgElem<R>> {
    let n = m.n;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(m.entry(i, j));
        }
    }
    out
}

fn full_mul<R: Ring>(n: usize, x: &[AlgElem<R>], y: &[AlgElem<R>]) -> Result<Vec<AlgElem<R>>> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = x[0].zero_like();
            for l in 0..n {
                acc = acc.add(&alg_mul(&x[i * n + l], &y[l * n + j])?);
            }
            out.push(acc);
        }
    }
    Ok(out)
}

/// Reads a Hermitian matrix off a full matrix known to be Hermitian; the
/// diagonal scalar extraction is exact because a self-conjugate element
/// lies on the unit line.
fn herm_of_full<R: Ring>(n: usize, a: u8, f: &[AlgElem<R>]) -> Result<HermMatrix<R>> {
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let e = &f[i * n + i];
        debug_assert_eq!(conj(e), e.clone(), "diagonal entry not self-conjugate");
        diag.push(e.coords()[0].clone());
    }
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            debug_assert_eq!(
                conj(&f[i * n + j]),
                f[j * n + i].clone(),
                "product lost hermitianity"
            );
            upper.push(f[i * n + j].clone());
        }
    }
    HermMatrix::new(n, a, diag, upper)
}

/// Jordan product A o B = (AB + BA) / 2, computed entrywise; stays
/// Hermitian for all four coefficient algebras in the supported sizes.
pub fn jordan_mul<R: Ring>(x: &HermMatrix<R>, y: &HermMatrix<R>) -> Result<HermMatrix<R>> {
    x.same_shape(y)?;
    let (fx, fy) = (full(x), full(y));
    let xy = full_mul(x.n, &fx, &fy)?;
    let yx = full_mul(x.n, &fy, &fx)?;
    let half = x.diag[0].one_like().halve();
    let sym: Vec<AlgElem<R>> = xy
        .iter()
        .zip(&yx)
        .map(|(p, q)| p.add(q).scale(&half))
        .collect();
    herm_of_full(x.n, x.a, &sym)
}

/// Quadratic representation U_A(B) = 2 A o (A o B) - (A o A) o B.
pub fn quad_rep<R: Ring>(x: &HermMatrix<R>, y: &HermMatrix<R>) -> Result<HermMatrix<R>> {
    let axy = jordan_mul(x, &jordan_mul(x, y)?)?;
    let xxy = jordan_mul(&jordan_mul(x, x)?, y)?;
    Ok(axy.add(&axy).sub(&xxy))
}

/// Polarized quadratic representation in the first argument:
/// U_{x+y}(b) - U_x(b) - U_y(b).
pub fn quad_rep_polar<R: Ring>(
    x: &HermMatrix<R>,
    y: &HermMatrix<R>,
    b: &HermMatrix<R>,
) -> Result<HermMatrix<R>> {
    Ok(quad_rep(&x.add(y), b)?
        .sub(&quad_rep(x, b)?)
        .sub(&quad_rep(y, b)?))
}

/// Cubic (respectively quadratic, linear) determinant for n <= 3.
///
/// For n = 3 with diagonal (p, q, r) the value is
/// p q r - p N(m23) - q N(m13) - r N(m12) + 2 re((m12 m23) conj(m13)),
/// the cyclic-invariant convention that restricts to the usual determinant
/// in every associative realization.
pub fn det3<R: Ring>(m: &HermMatrix<R>) -> Result<R> {
    match m.n {
        1 => Ok(m.diag[0].clone()),
        2 => Ok(m.diag[0].mul(&m.diag[1]).sub(&norm(&m.upper[0]))),
        3 => {
            let (p, q, r) = (&m.diag[0], &m.diag[1], &m.diag[2]);
            let m12 = m.upper_entry(0, 1);
            let m13 = m.upper_entry(0, 2);
            let m23 = m.upper_entry(1, 2);
            let mut acc = p.mul(q).mul(r);
            acc = acc.sub(&p.mul(&norm(m23)));
            acc = acc.sub(&q.mul(&norm(m13)));
            acc = acc.sub(&r.mul(&norm(m12)));
            let cyc = crate::compalg::re(&alg_mul(&alg_mul(m12, m23)?, &conj(m13))?);
            Ok(acc.add(&cyc).add(&cyc))
        }
        n => Err(Error::Precondition(format!(
            "determinant is only defined for n <= 3 (got n = {n})"
        ))),
    }
}

/// Symmetric trilinear polarization with polar(v, v, v) = 6 det(v).
pub fn polar_det3<R: Ring>(x: &HermMatrix<R>, y: &HermMatrix<R>, z: &HermMatrix<R>) -> Result<R> {
    x.same_shape(y)?;
    x.same_shape(z)?;
    let mut acc = det3(&x.add(y).add(z))?;
    acc = acc.sub(&det3(&x.add(y))?);
    acc = acc.sub(&det3(&x.add(z))?);
    acc = acc.sub(&det3(&y.add(z))?);
    acc = acc.add(&det3(x)?);
    acc = acc.add(&det3(y)?);
    acc = acc.add(&det3(z)?);
    Ok(acc)
}

/// Linear functional on H_n, represented through the nondegenerate trace
/// form as an element of the same space.
#[derive(Debug, Clone, PartialEq)]
pub struct LinForm {
    rep: Herm,
}

impl LinForm {
    pub fn from_rep(rep: Herm) -> LinForm {
        LinForm { rep }
    }

    pub fn rep(&self) -> &Herm {
        &self.rep
    }

    pub fn eval(&self, u: &Herm) -> Result<Scalar> {
        trace_form(&self.rep, u)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> LinForm {
        LinForm {
            rep: self.rep.scale(s),
        }
    }

    /// Unique representative of the functional whose value on the k-th
    /// coordinate basis matrix is values[k]. The trace-form Gram matrix is
    /// block diagonal with self-inverse blocks (up to the factor 2 on the
    /// 1-dimensional algebra), so this is a closed-form solve.
    pub fn from_values(field: FieldSpec, n: usize, a: u8, values: &[Scalar]) -> Result<LinForm> {
        if values.iter().any(|v| v.field() != field) {
            return Err(Error::FieldMismatch(
                "functional values outside the stated field".into(),
            ));
        }
        if values.len() != coord_dim(n, a) {
            return Err(Error::ShapeMismatch(format!(
                "{} functional values for a space of dimension {}",
                values.len(),
                coord_dim(n, a)
            )));
        }
        let mut coords = values[..n].to_vec();
        let mut k = n;
        for _ in 0..n * (n - 1) / 2 {
            coords.extend(norm_gram_inv_apply(a, &values[k..k + a as usize]));
            k += a as usize;
        }
        Ok(LinForm {
            rep: herm_from_coords(n, a, &coords)?,
        })
    }
}

/// Gram matrix of the polarized norm in the model basis of the algebra of
/// dimension a.
fn norm_gram(field: FieldSpec, a: u8) -> Mat {
    match a {
        1 => Mat::from_i64_rows(field, &[&[2]]),
        2 => Mat::from_i64_rows(field, &[&[0, 1], &[1, 0]]),
        4 => Mat::from_i64_rows(
            field,
            &[
                &[0, 0, 0, 1],
                &[0, 0, -1, 0],
                &[0, -1, 0, 0],
                &[1, 0, 0, 0],
            ],
        ),
        8 => {
            let mut m = Mat::zeros(field, 8, 8);
            let g4 = norm_gram(field, 4);
            for i in 0..4 {
                for j in 0..4 {
                    *m.at_mut(i, j) = g4.at(i, j).clone();
                    *m.at_mut(4 + i, 4 + j) = g4.at(i, j).neg();
                }
            }
            m
        }
        _ => unreachable!(),
    }
}

fn norm_gram_inv_apply(a: u8, v: &[Scalar]) -> Vec<Scalar> {
    match a {
        1 => vec![v[0].halve()],
        2 => vec![v[1].clone(), v[0].clone()],
        // the 4- and 8-dimensional blocks square to the identity
        4 => vec![v[3].clone(), v[2].neg(), v[1].neg(), v[0].clone()],
        8 => {
            let mut out = norm_gram_inv_apply(4, &v[..4]);
            out.extend(norm_gram_inv_apply(4, &v[4..]).iter().map(|s| s.neg()));
            out
        }
        _ => unreachable!(),
    }
}

/// Gram matrix of the trace form on the coordinate space of H_n.
pub fn trace_gram(field: FieldSpec, n: usize, a: u8) -> Mat {
    let d = coord_dim(n, a);
    let mut g = Mat::zeros(field, d, d);
    for i in 0..n {
        *g.at_mut(i, i) = field.one();
    }
    let block = norm_gram(field, a);
    for b in 0..n * (n - 1) / 2 {
        let off = n + b * a as usize;
        for i in 0..a as usize {
            for j in 0..a as usize {
                *g.at_mut(off + i, off + j) = block.at(i, j).clone();
            }
        }
    }
    g
}

pub fn field_of(m: &Herm) -> FieldSpec {
    m.diag[0].field()
}

/// Gradient of the determinant at M, as a trace-form functional:
/// u -> polar(M, M, u) / 2. Vanishes exactly on the rank <= 1 stratum.
pub fn grad_det(m: &Herm) -> Result<LinForm> {
    let field = field_of(m);
    let d = coord_dim(m.n, m.a);
    let mut values = Vec::with_capacity(d);
    for k in 0..d {
        let b = herm_basis(field, m.n, m.a, k);
        values.push(polar_det3(m, m, &b)?.halve());
    }
    LinForm::from_values(field, m.n, m.a, &values)
}

/// Rank of a Hermitian matrix for n <= 3, through the stratification
/// 0 iff M = 0, <= 1 iff grad det = 0, <= 2 iff det = 0.
pub fn rank3(m: &Herm) -> Result<usize> {
    if m.is_zero() {
        return Ok(0);
    }
    match m.n {
        1 => Ok(1),
        2 => {
            if det3(m)?.is_zero() {
                Ok(1)
            } else {
                Ok(2)
            }
        }
        3 => {
            if grad_det(m)?.is_zero() {
                Ok(1)
            } else if det3(m)?.is_zero() {
                Ok(2)
            } else {
                Ok(3)
            }
        }
        n => Err(Error::Precondition(format!(
            "rank is only defined for n <= 3 (got n = {n})"
        ))),
    }
}

/// The Hessian-of-determinant form sigma_A(B): the functional
/// U -> polar(A, B, U), linear in each of A and B. Its overall scale is a
/// convention; every consumer normalizes it away.
pub fn sigma(a_mat: &Herm, b_mat: &Herm) -> Result<LinForm> {
    if a_mat.n != 3 {
        return Err(Error::Precondition(
            "sigma is only defined on 3x3 Hermitian matrices".into(),
        ));
    }
    a_mat.same_shape(b_mat)?;
    let field = field_of(a_mat);
    let d = coord_dim(3, a_mat.a);
    let mut values = Vec::with_capacity(d);
    for k in 0..d {
        let b = herm_basis(field, 3, a_mat.a, k);
        values.push(polar_det3(a_mat, b_mat, &b)?);
    }
    LinForm::from_values(field, 3, a_mat.a, &values)
}

/// Associative realization of H_n for a <= 4: symmetric matrices (a = 1),
/// plain square matrices (a = 2), and 2n x 2n block matrices (a = 4). The
/// realization turns the Jordan operations into ordinary matrix algebra
/// and serves as the independent oracle for quad_rep, det3 and rank.
pub fn flatten(m: &Herm) -> Result<Mat> {
    let field = field_of(m);
    let n = m.n;
    match m.a {
        1 => Ok(Mat::from_fn(field, n, n, |i, j| {
            m.entry(i, j).coords()[0].clone()
        })),
        2 => Ok(Mat::from_fn(field, n, n, |i, j| {
            use std::cmp::Ordering;
            match i.cmp(&j) {
                Ordering::Equal => m.diag[i].clone(),
                Ordering::Less => m.upper_entry(i, j).coords()[0].clone(),
                Ordering::Greater => m.upper_entry(j, i).coords()[1].clone(),
            }
        })),
        4 => Ok(Mat::from_fn(field, 2 * n, 2 * n, |r, c| {
            let (i, j) = (r / 2, c / 2);
            m.entry(i, j).coords()[2 * (r % 2) + (c % 2)].clone()
        })),
        a => Err(Error::Precondition(format!(
            "no associative realization for a = {a}"
        ))),
    }
}

/// Rank of the associative realization, in Jordan units (the matrix rank is
/// halved in the symplectic case a = 4).
pub fn realization_rank(m: &Herm) -> Result<usize> {
    let r = flatten(m)?.rank();
    Ok(if m.a == 4 { r.div_ceil(2) } else { r })
}

pub fn herm_tag(m: &Herm) -> AlgebraTag {
    AlgebraTag {
        dim: m.a,
        field: field_of(m),
    }
}

/// Seeded Hermitian matrix with small entries.
pub fn sample_herm(field: FieldSpec, n: usize, a: u8, seed: u64) -> Herm {
    let coords = crate::sample::sample_vector(field, coord_dim(n, a), seed);
    herm_from_coords(n, a, &coords).expect("sampled matrix")
}
