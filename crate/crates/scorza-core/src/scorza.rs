//! Geometry of the rank-one cone in H_n: tangent spaces, incidence with
//! the dual cone, the quadratic tangency maps in both directions, the
//! first-kind flop through the Hessian form sigma, line geometry, and the
//! fiber of the blow-down map on a cotangent space.
//!
//! Points of the cone live in V = H_n(A) with dim V = n + a n(n-1)/2; all
//! subspaces are expressed in the coordinate order of
//! [`HermMatrix::to_coords`](crate::jordan::HermMatrix::to_coords), and
//! every quotient comes with its canonical chart so results are
//! reproducible bit for bit.

use crate::compalg::{Alg, AlgebraTag};
use crate::error::{Error, Result};
use crate::jordan::{
    coord_dim, det3, herm_basis, herm_from_coords, herm_identity, nu2, nu2_polar, polar_det3,
    quad_rep, quad_rep_polar, rank3, realization_rank, sigma, trace_form, trace_gram, Herm,
    LinForm,
};
use crate::linalg::{proportional, vec_is_zero, Mat};
use crate::sample::{find_generic, SeedStream};
use crate::scalar::{FieldSpec, Scalar};
use crate::spinor::Side;
use crate::subspace::{sub_of_vec, QuotientMap, SubQuotient, Subspace};

/// The ambient Jordan space V = H_n(A) of a rank-one cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScorzaSpace {
    pub n: usize,
    pub a: u8,
    pub field: FieldSpec,
}

impl ScorzaSpace {
    pub fn new(n: usize, a: u8, field: FieldSpec) -> Result<ScorzaSpace> {
        if n == 0 {
            return Err(Error::ShapeMismatch("n must be positive".into()));
        }
        if a == 8 && n > 3 {
            return Err(Error::ShapeMismatch(
                "octonion coefficients are only supported for n <= 3".into(),
            ));
        }
        AlgebraTag::new(a, field)?;
        Ok(ScorzaSpace { n, a, field })
    }

    pub fn dim(&self) -> usize {
        coord_dim(self.n, self.a)
    }

    pub fn tag(&self) -> AlgebraTag {
        AlgebraTag {
            dim: self.a,
            field: self.field,
        }
    }

    pub fn identity_form(&self) -> LinForm {
        LinForm::from_rep(herm_identity(self.field, self.n, self.a))
    }

    fn check_member(&self, m: &Herm) -> Result<()> {
        if m.n() != self.n || m.alg_dim() != self.a {
            return Err(Error::ShapeMismatch(format!(
                "matrix of shape ({}, a={}) in a space of shape ({}, a={})",
                m.n(),
                m.alg_dim(),
                self.n,
                self.a
            )));
        }
        Ok(())
    }
}

/// A nonzero rank-one point of the affine cone, together with a
/// parametrizing tuple when one is known (it makes tangent computations
/// cheap and exact).
#[derive(Debug, Clone, PartialEq)]
pub struct ConePoint {
    space: ScorzaSpace,
    rep: Herm,
    preimage: Option<Vec<Alg>>,
}

impl ConePoint {
    /// Validates a rank-one representative. For n <= 3 the intrinsic
    /// stratification (gradient and determinant) decides; for larger n the
    /// two-by-two minor equations plus the associative realization rank do.
    pub fn from_rep(space: ScorzaSpace, rep: Herm) -> Result<ConePoint> {
        space.check_member(&rep)?;
        if rep.is_zero() {
            return Err(Error::Precondition("cone points are nonzero".into()));
        }
        let ok = if space.n <= 3 {
            rank3(&rep)? == 1
        } else {
            let minors_ok = (0..space.n).all(|i| {
                (i + 1..space.n).all(|j| {
                    rep.diag()[i]
                        .mul(&rep.diag()[j])
                        .sub(&crate::compalg::norm(rep.upper_entry(i, j)))
                        .is_zero()
                })
            });
            minors_ok && realization_rank(&rep)? == 1
        };
        if !ok {
            return Err(Error::Precondition(
                "matrix does not lie on the rank-one cone".into(),
            ));
        }
        let preimage = recover_preimage(&space, &rep);
        Ok(ConePoint {
            space,
            rep,
            preimage,
        })
    }

    pub fn from_preimage(space: ScorzaSpace, z: Vec<Alg>) -> Result<ConePoint> {
        if z.len() != space.n {
            return Err(Error::ShapeMismatch(format!(
                "{} coordinates for a rank-one point of H_{}",
                z.len(),
                space.n
            )));
        }
        let rep = nu2(&z)?;
        space.check_member(&rep)?;
        if rep.is_zero() {
            return Err(Error::Precondition(
                "the tuple parametrizes the zero matrix".into(),
            ));
        }
        Ok(ConePoint {
            space,
            rep,
            preimage: Some(z),
        })
    }

    pub fn space(&self) -> &ScorzaSpace {
        &self.space
    }

    pub fn rep(&self) -> &Herm {
        &self.rep
    }

    pub fn preimage(&self) -> Option<&[Alg]> {
        self.preimage.as_deref()
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.rep.to_coords()
    }

    /// Same projective point, rescaled cone representative.
    pub fn rescale(&self, s: &Scalar) -> Result<ConePoint> {
        if s.is_zero() {
            return Err(Error::Precondition("rescaling by zero".into()));
        }
        Ok(ConePoint {
            space: self.space,
            rep: self.rep.scale(s),
            preimage: None,
        })
    }
}

/// Tries to read a parametrizing tuple off the columns of a rank-one
/// matrix. Valid whenever the entries associate; the candidate is kept
/// only if it exactly reproduces a multiple of the matrix.
fn recover_preimage(space: &ScorzaSpace, rep: &Herm) -> Option<Vec<Alg>> {
    let i = (0..space.n).find(|&i| !rep.diag()[i].is_zero())?;
    let col: Vec<Alg> = (0..space.n).map(|j| rep.entry(j, i)).collect();
    let m = nu2(&col).ok()?;
    if !m.is_zero() && proportional(&m.to_coords(), &rep.to_coords()) {
        Some(col)
    } else {
        None
    }
}

/// E_ii as a cone point.
pub fn cone_point_e(space: ScorzaSpace, i: usize) -> Result<ConePoint> {
    let tag = space.tag();
    let zero = crate::compalg::basis_elem(tag, 0).zero_like();
    let mut z = vec![zero; space.n];
    z[i] = crate::compalg::basis_elem(tag, 0).one_like();
    ConePoint::from_preimage(space, z)
}

/// The affine tangent space to the cone at x.
///
/// With a parametrizing tuple the tangent space is the image of the
/// differential of the rank-one parametrization; otherwise (n <= 3) it is
/// the kernel of the polarized determinant at x. The two computations
/// agree at every smooth point and both are exercised by the tests.
pub fn tangent_cone(x: &ConePoint) -> Result<Subspace> {
    if let Some(z) = x.preimage() {
        return tangent_from_preimage(x.space(), z);
    }
    tangent_from_det(x)
}

pub(crate) fn tangent_from_preimage(space: &ScorzaSpace, z: &[Alg]) -> Result<Subspace> {
    // Over an associative algebra every tuple parametrizes a cone point and
    // every direction is admissible. Octonion tuples only stay on the cone
    // when their entries pairwise associate, so the chart pins one slot to
    // the scalar line and moves the others freely: two octonions always
    // generate an associative subalgebra, a third generic one does not.
    let scalar_slot = if space.a == 8 {
        let one = crate::compalg::basis_elem(space.tag(), 0).one_like();
        let is_scalar = |e: &Alg| proportional(one.coords(), e.coords());
        match z.iter().position(|e| is_scalar(e) && !e.is_zero()) {
            Some(i) => Some(i),
            None => {
                // re-parametrize through a column of the matrix, which puts
                // the norm of one entry on the scalar line
                let rep = nu2(z)?;
                let znew = recover_preimage(space, &rep).ok_or_else(|| {
                    Error::Precondition(
                        "octonion tangent computation needs a scalar-slot parametrization".into(),
                    )
                })?;
                return tangent_from_preimage(space, &znew);
            }
        }
    } else {
        None
    };
    let tag = space.tag();
    let zero = crate::compalg::basis_elem(tag, 0).zero_like();
    let mut rows = Vec::with_capacity(space.n * space.a as usize);
    for slot in 0..space.n {
        let dirs: Vec<usize> = if scalar_slot == Some(slot) {
            vec![0]
        } else {
            (0..space.a as usize).collect()
        };
        for k in dirs {
            let mut dir = vec![zero.clone(); space.n];
            dir[slot] = if scalar_slot == Some(slot) {
                crate::compalg::basis_elem(tag, 0).one_like()
            } else {
                crate::compalg::basis_elem(tag, k)
            };
            rows.push(nu2_polar(z, &dir)?.to_coords());
        }
    }
    Subspace::from_rows(space.field, space.dim(), rows)
}

pub(crate) fn tangent_from_det(x: &ConePoint) -> Result<Subspace> {
    let space = x.space();
    let d = space.dim();
    match space.n {
        1 => Ok(Subspace::full(space.field, 1)),
        2 => {
            // kernel of the polarized quadric at x
            let dx = det3(x.rep())?;
            let mut col = Mat::zeros(space.field, d, 1);
            for k in 0..d {
                let b = herm_basis(space.field, 2, space.a, k);
                let v = det3(&x.rep().add(&b))?.sub(&det3(&b)?).sub(&dx);
                *col.at_mut(k, 0) = v;
            }
            Ok(crate::subspace::kernel(&col))
        }
        3 => {
            // kernel of the determinant Hessian at x: the bilinear form
            // (u, w) -> polar(x, u, w), assembled from the single-variable
            // slice g(v) = det(x + v) - det(v) - det(x).
            let dx = det3(x.rep())?;
            let g = |v: &Herm| -> Result<Scalar> {
                Ok(det3(&x.rep().add(v))?.sub(&det3(v)?).sub(&dx))
            };
            let basis: Vec<Herm> = (0..d)
                .map(|k| herm_basis(space.field, 3, space.a, k))
                .collect();
            let gb: Vec<Scalar> = basis.iter().map(&g).collect::<Result<_>>()?;
            let mut hess = Mat::zeros(space.field, d, d);
            for i in 0..d {
                for j in i..d {
                    let v = g(&basis[i].add(&basis[j]))?.sub(&gb[i]).sub(&gb[j]);
                    *hess.at_mut(i, j) = v.clone();
                    *hess.at_mut(j, i) = v;
                }
            }
            Ok(crate::subspace::kernel(&hess))
        }
        _ => Err(Error::Precondition(
            "tangent spaces for n >= 4 need a parametrizing tuple".into(),
        )),
    }
}

/// The canonical chart of the normal space V / T_x.
pub fn normal_chart(x: &ConePoint) -> Result<QuotientMap> {
    Ok(QuotientMap::new(tangent_cone(x)?))
}

/// Does the hyperplane of h contain the tangent space at x?
pub fn incident(x: &ConePoint, h: &LinForm) -> Result<bool> {
    let t = tangent_cone(x)?;
    for row in t.basis_rows() {
        let m = herm_from_coords(x.space().n, x.space().a, &row)?;
        if !h.eval(&m)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tangency map on tangent vectors: the class of U_T(A) in V / T_x, for A
/// a generic functional. A rank-two tangent vector determines a unique
/// rank-two envelope through x; rank <= 1 vectors are exactly the locus
/// where that envelope degenerates.
pub fn nu_plus(x: &ConePoint, t: &Herm, a_form: &LinForm) -> Result<(Vec<Scalar>, QuotientMap)> {
    let space = x.space();
    space.check_member(t)?;
    let chart = normal_chart(x)?;
    if !chart.sub().contains(&t.to_coords()) {
        return Err(Error::Precondition(
            "vector is not tangent to the cone at x".into(),
        ));
    }
    let r = if space.n <= 3 {
        rank3(t)?
    } else {
        realization_rank(t)?
    };
    if r < 2 {
        return Err(Error::Indeterminate(
            "tangent vector of rank <= 1: the envelope through it is not unique".into(),
        ));
    }
    let value = quad_rep(t, a_form.rep())?;
    Ok((chart.project(&value.to_coords()), chart))
}

/// A cotangent form at x, carried by a trace-form representative that
/// kills the line of x. The class modulo the annihilator of T_x is the
/// actual covector; the representative is kept for exact arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct CotangentRep {
    base: ConePoint,
    form: LinForm,
}

impl CotangentRep {
    pub fn new(base: ConePoint, form: LinForm) -> Result<CotangentRep> {
        base.space().check_member(form.rep())?;
        if !form.eval(base.rep())?.is_zero() {
            return Err(Error::Precondition(
                "cotangent representative must vanish on the line of x".into(),
            ));
        }
        Ok(CotangentRep { base, form })
    }

    pub fn base(&self) -> &ConePoint {
        &self.base
    }

    pub fn form(&self) -> &LinForm {
        &self.form
    }

    pub fn rep(&self) -> &Herm {
        self.form.rep()
    }
}

/// Dual tangency map: the functional carried by U_f(x). It annihilates
/// T_x and, for generic f, carries the unique envelope hyperplane whose
/// cell is cut out by f.
pub fn nu_minus(x: &ConePoint, f: &CotangentRep) -> Result<LinForm> {
    Ok(LinForm::from_rep(quad_rep(f.rep(), x.rep())?))
}

/// Canonical chart for the cotangent space at x: trace representatives
/// vanishing on x, modulo the annihilator of T_x. Its dimension is
/// a (n - 1) + (n - 1) (the honest cotangent dimension of the cone image).
#[derive(Debug, Clone)]
pub struct CotangentChart {
    space: ScorzaSpace,
    chart: SubQuotient,
    perp: Subspace,
}

impl CotangentChart {
    pub fn new(x: &ConePoint) -> Result<CotangentChart> {
        let space = *x.space();
        let gram = trace_gram(space.field, space.n, space.a);
        let t = tangent_cone(x)?;
        let perp = t.annihilator(&gram)?;
        let ann_x = sub_of_vec(space.field, &x.coords()).annihilator(&gram)?;
        let chart = SubQuotient::new(ann_x, &perp)?;
        Ok(CotangentChart { space, chart, perp })
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// Annihilator of the tangent space: the conormal space at x.
    pub fn conormal(&self) -> &Subspace {
        &self.perp
    }

    pub fn project(&self, f: &CotangentRep) -> Result<Vec<Scalar>> {
        self.chart.project(&f.rep().to_coords())
    }

    pub fn project_form(&self, rep: &Herm) -> Result<Vec<Scalar>> {
        self.chart.project(&rep.to_coords())
    }

    pub fn lift(&self, class: &[Scalar]) -> Result<Herm> {
        herm_from_coords(self.space.n, self.space.a, &self.chart.lift(class))
    }
}

/// Result of the first-kind flop on a cotangent vector: the image point h
/// of the dual cone, the normalized Hessian pivot A, and the induced
/// isomorphism between the two cell quotients in their canonical charts.
#[derive(Debug, Clone)]
pub struct FlopE61 {
    pub h: LinForm,
    pub pivot: Herm,
    pub mu: Mat,
    pub domain: SubQuotient,
    pub codomain: SubQuotient,
}

/// First-kind flop at (x, f): h is the dual image of f; the pivot A is a
/// generic element of V(h) rescaled so that sigma_A(x) = h exactly; the
/// matrix sends the class of v in T_x / (T_x ∩ V(h)) to the class of
/// sigma_A(v) in T_h / (T_h ∩ V(x)).
pub fn flop_e61(x: &ConePoint, f: &CotangentRep, seed: u64) -> Result<FlopE61> {
    let space = *x.space();
    if space.n != 3 {
        return Err(Error::Precondition("the flop needs n = 3".into()));
    }
    let h = nu_minus(x, f)?;
    if h.is_zero() {
        return Err(Error::Indeterminate(
            "degenerate cotangent vector: its dual image point vanishes".into(),
        ));
    }
    let gram = trace_gram(space.field, space.n, space.a);

    let h_point = ConePoint::from_rep(space, h.rep().clone())?;
    let t_x = tangent_cone(x)?;
    let t_h = tangent_cone(&h_point)?;
    let v_h = t_h.annihilator(&gram)?; // V(h)
    let v_x = t_x.annihilator(&gram)?; // V(x), the dual-side cell space

    // sanity: the dual image is incident to x
    for row in t_x.basis_rows() {
        let m = herm_from_coords(space.n, space.a, &row)?;
        if !h.eval(&m)?.is_zero() {
            return Err(Error::Precondition(
                "dual image fails incidence; input is not a cotangent vector at x".into(),
            ));
        }
    }

    // generic pivot A in V(h) with sigma_A(x) a nonzero multiple of h
    let basis = v_h.basis_rows();
    let (pivot, factor) = find_generic(seed, "Hessian pivot in V(h)", |s| {
        let mut st = SeedStream::new(s);
        let mut acc = vec![space.field.zero(); space.dim()];
        for b in &basis {
            let c = st.small_scalar(space.field);
            for (i, e) in b.iter().enumerate() {
                acc[i] = acc[i].add(&e.mul(&c));
            }
        }
        let a_mat = herm_from_coords(space.n, space.a, &acc).ok()?;
        let s_ax = sigma(&a_mat, x.rep()).ok()?;
        let sx = s_ax.rep().to_coords();
        let hx = h.rep().to_coords();
        if vec_is_zero(&sx) || !proportional(&hx, &sx) {
            return None;
        }
        let i = hx.iter().position(|c| !c.is_zero()).expect("h nonzero");
        Some((a_mat, sx[i].div(&hx[i])))
    })?;
    let pivot = pivot.scale(&factor.inv());
    debug_assert_eq!(sigma(&pivot, x.rep())?.rep(), h.rep());

    let domain = SubQuotient::new(t_x.clone(), &t_x.meet(&v_h)?)?;
    let codomain = SubQuotient::new(t_h.clone(), &t_h.meet(&v_x)?)?;
    if domain.dim() != codomain.dim() {
        return Err(Error::Indeterminate(
            "cell quotients of unequal dimension; configuration is degenerate".into(),
        ));
    }

    let mut rows = Vec::with_capacity(domain.dim());
    for k in 0..domain.dim() {
        let mut class = vec![space.field.zero(); domain.dim()];
        class[k] = space.field.one();
        let v = herm_from_coords(space.n, space.a, &domain.lift(&class))?;
        let image = sigma(&pivot, &v)?;
        rows.push(codomain.project(&image.rep().to_coords())?);
    }
    let mu = Mat::from_rows(space.field, domain.dim(), rows)?;
    if mu.rank() != domain.dim() {
        return Err(Error::Indeterminate(
            "induced cell map is singular; input outside the generic locus".into(),
        ));
    }
    Ok(FlopE61 {
        h,
        pivot,
        mu,
        domain,
        codomain,
    })
}

/// Is the projective line through x and y contained in the cone? Tested
/// by the vanishing of the three polarized gradients of the pencil; the
/// two pure terms vanish because both points have rank one, so only the
/// mixed term is checked.
pub fn line_in_cone(x: &ConePoint, y: &ConePoint) -> Result<bool> {
    let space = x.space();
    if space != y.space() {
        return Err(Error::ShapeMismatch("points of different spaces".into()));
    }
    if space.n != 3 {
        return Err(Error::Precondition("line tests need n = 3".into()));
    }
    if proportional(&x.coords(), &y.coords()) {
        return Err(Error::Precondition(
            "line test needs independent representatives".into(),
        ));
    }
    let d = space.dim();
    for k in 0..d {
        let b = herm_basis(space.field, 3, space.a, k);
        if !polar_det3(x.rep(), y.rep(), &b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image of the tangent space at y inside V / T_x; constant along the
/// line through x and y, of dimension a/2 + 1.
pub fn t_y_space(x: &ConePoint, y: &ConePoint) -> Result<(Subspace, QuotientMap)> {
    if !line_in_cone(x, y)? {
        return Err(Error::Precondition(
            "the two points do not span a line of the cone".into(),
        ));
    }
    let chart = normal_chart(x)?;
    let t_y = tangent_cone(y)?;
    let image = chart.project_subspace(&t_y)?;
    Ok((image, chart))
}

/// The subspaces attached to a line of the cone: the line itself, the
/// intersection and the span of the two tangent spaces, and the three
/// quotient ranks (intersection/line, span/intersection, V/span).
#[derive(Debug, Clone)]
pub struct LineSpaces {
    pub line: Subspace,
    pub intersection: Subspace,
    pub span: Subspace,
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_c: usize,
}

pub fn severi_line_spaces(x: &ConePoint, y: &ConePoint) -> Result<LineSpaces> {
    let space = x.space();
    if space.a < 2 {
        return Err(Error::Precondition(
            "line geometry needs a >= 2 (the a = 1 cone has no lines)".into(),
        ));
    }
    if !line_in_cone(x, y)? {
        return Err(Error::Precondition(
            "the two points do not span a line of the cone".into(),
        ));
    }
    let line = Subspace::from_rows(space.field, space.dim(), vec![x.coords(), y.coords()])?;
    let t_x = tangent_cone(x)?;
    let t_y = tangent_cone(y)?;
    let intersection = t_x.meet(&t_y)?;
    let span = t_x.join(&t_y)?;
    Ok(LineSpaces {
        rank_a: intersection.dim() - line.dim(),
        rank_b: span.dim() - intersection.dim(),
        rank_c: space.dim() - span.dim(),
        line,
        intersection,
        span,
    })
}

/// For w inside the tangent intersection of a line but off the line, the
/// image of T_w in V / span(T_x, T_y) is a plane depending only on the
/// class of w. Returns the plane and the chart of the quotient.
pub fn x_alpha_to_g2c(
    x: &ConePoint,
    y: &ConePoint,
    w: &ConePoint,
) -> Result<(Subspace, QuotientMap)> {
    let spaces = severi_line_spaces(x, y)?;
    if !spaces.intersection.contains(&w.coords()) {
        return Err(Error::Precondition(
            "point is outside the tangent intersection of the line".into(),
        ));
    }
    if spaces.line.contains(&w.coords()) {
        return Err(Error::Precondition("point lies on the line itself".into()));
    }
    let chart = QuotientMap::new(spaces.span);
    let image = chart.project_subspace(&tangent_cone(w)?)?;
    Ok((image, chart))
}

/// Maximal linear subspace of the normal (or conormal) rank-one cone
/// attached to a null tangent direction at x: the image of the polarized
/// tangency map against t.
///
/// For the plus side the result lives in the canonical chart of V / T_x;
/// for the minus side it lives in V itself, inside the conormal space.
pub fn fano_image(x: &ConePoint, t: &Herm, side: Side, aux: Option<&LinForm>) -> Result<Subspace> {
    let space = *x.space();
    space.check_member(t)?;
    match side {
        Side::Plus => {
            let id_form = space.identity_form();
            let a_form = aux.unwrap_or(&id_form);
            let chart = normal_chart(x)?;
            if !chart.sub().contains(&t.to_coords()) {
                return Err(Error::Precondition(
                    "vector is not tangent to the cone at x".into(),
                ));
            }
            let nu_t = quad_rep(t, a_form.rep())?;
            if !vec_is_zero(&chart.project(&nu_t.to_coords())) {
                return Err(Error::Precondition(
                    "tangent vector is not on the null cone of the tangency map".into(),
                ));
            }
            let mut rows = Vec::new();
            for u in chart.sub().basis_rows() {
                let um = herm_from_coords(space.n, space.a, &u)?;
                let m = quad_rep_polar(t, &um, a_form.rep())?;
                rows.push(chart.project(&m.to_coords()));
            }
            Subspace::from_rows(space.field, chart.codim(), rows)
        }
        Side::Minus => {
            if !trace_form(t, x.rep())?.is_zero() {
                return Err(Error::Precondition(
                    "cotangent representative must vanish on the line of x".into(),
                ));
            }
            if !quad_rep(t, x.rep())?.is_zero() {
                return Err(Error::Precondition(
                    "cotangent vector is not on the null cone of the dual tangency map".into(),
                ));
            }
            let gram = trace_gram(space.field, space.n, space.a);
            let ann_x = sub_of_vec(space.field, &x.coords()).annihilator(&gram)?;
            let mut rows = Vec::new();
            for g in ann_x.basis_rows() {
                let gm = herm_from_coords(space.n, space.a, &g)?;
                rows.push(quad_rep_polar(t, &gm, x.rep())?.to_coords());
            }
            Subspace::from_rows(space.field, space.dim(), rows)
        }
    }
}

/// Fiber of the dual tangency map through f: the cotangent directions g
/// (in the canonical chart at x) whose polarized image against f stays on
/// the line of nu_minus(f). The blow-down of the cotangent space
/// contracts exactly these fibers.
pub fn blowup_fiber(x: &ConePoint, f: &CotangentRep) -> Result<(Subspace, CotangentChart)> {
    let space = *x.space();
    let chart = CotangentChart::new(x)?;
    let nf = nu_minus(x, f)?;
    if nf.is_zero() {
        return Err(Error::Indeterminate(
            "degenerate cotangent vector: its dual image point vanishes".into(),
        ));
    }
    let line_chart = QuotientMap::new(sub_of_vec(space.field, &nf.rep().to_coords()));
    let mut rows = Vec::with_capacity(chart.dim());
    for k in 0..chart.dim() {
        let mut class = vec![space.field.zero(); chart.dim()];
        class[k] = space.field.one();
        let g = chart.lift(&class)?;
        let m = quad_rep_polar(f.rep(), &g, x.rep())?;
        rows.push(line_chart.project(&m.to_coords()));
    }
    let map = Mat::from_rows(space.field, line_chart.codim(), rows)?;
    let fiber = crate::subspace::kernel(&map);
    Ok((fiber, chart))
}
