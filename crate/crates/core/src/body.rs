//! Convex bodies: bounded full-dimensional polytopes carrying both a vertex
//! and a facet representation, and axis-aligned ellipses (2D).
//!
//! A polytope is stored with facets `a·p ≤ β` (unit outward normals) and the
//! matching vertex set. Lifting `p ↦ (p, 1)` turns the body into an open cone
//! in R^{n+1}; the facet functionals become the extreme rays
//! `u_i = (-a_i, β_i)` of the dual cone, normalized here so that
//! `⟨u_i, lift(b)⟩ = 1` at the base-point `b`. All metric and horofunction
//! formulas in the other modules are expressed through these rays.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};

use crate::error::{GeomError, Result};
use crate::linalg;

/// Default geometric tolerance used by every operation unless overridden.
pub const DEFAULT_EPS: f64 = 1e-9;

/// A facet inequality `normal · p ≤ offset` with a unit normal.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyKind {
    Polytope,
    Ellipse,
}

/// Which side of the duality a face lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FaceSide {
    /// Extreme set of the closed body; `index_set` holds vertex indices.
    Primal,
    /// Face of the dual cone C*; `index_set` holds facet (dual ray) indices.
    Dual,
}

/// A face of the body or of its dual cone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub side: FaceSide,
    pub index_set: Vec<usize>,
    pub dim: usize,
}

/// Bounded open convex body with a designated interior base-point.
#[derive(Debug, Clone)]
pub struct ConvexBody {
    kind: BodyKind,
    dim: usize,
    vertices: Vec<Vec<f64>>,
    facets: Vec<Facet>,
    center: Vec<f64>,
    axes: Vec<f64>,
    base_point: Vec<f64>,
    /// Base-point slack β_i - a_i·b of each facet (used to normalize dual rays).
    base_slacks: Vec<f64>,
    eps: f64,
}

/// The cone over the body in R^{n+1} together with the extreme rays of its
/// dual cone.
#[derive(Debug, Clone)]
pub struct LiftedCone {
    /// Lifted vertices (v, 1), the extreme rays of C.
    pub rays: Vec<Vec<f64>>,
    /// Extreme rays of C*, normalized against the base-point.
    pub dual_rays: Vec<Vec<f64>>,
}

impl ConvexBody {
    /// Build a polytope from its vertex set. The facet representation is
    /// derived, duplicates are merged, and all invariants are checked.
    pub fn polytope_from_vertices(vertices: Vec<Vec<f64>>, base_point: Option<Vec<f64>>) -> Result<Self> {
        Self::polytope(Some(vertices), None, base_point, DEFAULT_EPS)
    }

    /// Build a polytope from facet inequalities `a·p ≤ β`.
    pub fn polytope_from_facets(facets: Vec<(Vec<f64>, f64)>, base_point: Option<Vec<f64>>) -> Result<Self> {
        Self::polytope(None, Some(facets), base_point, DEFAULT_EPS)
    }

    /// General polytope constructor; at least one representation must be
    /// given, and when both are present they must describe the same set.
    pub fn polytope(
        vertices: Option<Vec<Vec<f64>>>,
        facets: Option<Vec<(Vec<f64>, f64)>>,
        base_point: Option<Vec<f64>>,
        eps: f64,
    ) -> Result<Self> {
        let (verts_in, facets_in) = match (&vertices, &facets) {
            (None, None) => {
                return Err(GeomError::InvalidBody(
                    "polytope needs vertices or facets".into(),
                ))
            }
            _ => (vertices, facets),
        };

        let dim = if let Some(v) = &verts_in {
            if v.is_empty() {
                return Err(GeomError::InvalidBody("empty vertex list".into()));
            }
            v[0].len()
        } else {
            let f = facets_in.as_ref().unwrap();
            if f.is_empty() {
                return Err(GeomError::Unbounded("empty facet list".into()));
            }
            f[0].0.len()
        };
        if dim == 0 {
            return Err(GeomError::InvalidBody("dimension must be at least 1".into()));
        }

        let mut verts = match verts_in {
            Some(v) => {
                for p in &v {
                    check_dim(p, dim)?;
                }
                dedup_points(v, eps)
            }
            None => Vec::new(),
        };
        let mut facet_list: Vec<Facet> = Vec::new();
        if let Some(fs) = facets_in {
            for (a, b) in fs {
                check_dim(&a, dim)?;
                let na = linalg::norm(&a);
                if na < eps {
                    return Err(GeomError::InvalidBody("facet with zero normal".into()));
                }
                facet_list.push(Facet {
                    normal: linalg::scale(&a, 1.0 / na),
                    offset: b / na,
                });
            }
            facet_list = dedup_facets(facet_list, eps);
        }

        if verts.is_empty() {
            // H-rep input: recover the vertices.
            verts = vertices_from_facets(&facet_list, dim, eps)?;
            if verts.len() < dim + 1 {
                return Err(GeomError::Unbounded(format!(
                    "facet intersections yield {} vertices; a bounded full-dimensional \
                     polytope needs at least {}",
                    verts.len(),
                    dim + 1
                )));
            }
        }

        if linalg::affine_rank(&verts, eps) < dim {
            return Err(GeomError::InvalidBody(
                "vertices are lower-dimensional (affine hull is a proper subspace)".into(),
            ));
        }

        // Canonical H-rep from the vertex hull.
        let derived = facets_from_vertices(&verts, dim, eps)?;
        if facet_list.is_empty() {
            facet_list = derived;
        } else {
            // Every derived hull facet must appear among the inputs, otherwise
            // the input region strictly contains the hull (it is unbounded).
            for d in &derived {
                if !facet_list.iter().any(|f| facet_close(f, d, 1e-6)) {
                    return Err(GeomError::Unbounded(format!(
                        "facets do not close the region: missing supporting hyperplane \
                         with normal {:?}",
                        d.normal
                    )));
                }
            }
            // Inputs that are not hull facets are redundant; drop them.
            facet_list = derived;
        }

        let mut verts = verts;
        verts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut facet_list = facet_list;
        facet_list.sort_by(|a, b| {
            (&a.normal, a.offset)
                .partial_cmp(&(&b.normal, b.offset))
                .unwrap()
        });

        let base_point = match base_point {
            Some(b) => {
                check_dim(&b, dim)?;
                b
            }
            None => linalg::mean(&verts),
        };

        let body = ConvexBody {
            kind: BodyKind::Polytope,
            dim,
            vertices: verts,
            facets: facet_list,
            center: Vec::new(),
            axes: Vec::new(),
            base_point: base_point.clone(),
            base_slacks: Vec::new(),
            eps,
        };
        body.validate_polytope()
    }

    /// Axis-aligned ellipse `((p₁-c₁)/r₁)² + ((p₂-c₂)/r₂)² < 1` in the plane.
    /// Ellipses support the metric and ball operations; face-lattice and
    /// horofunction machinery is restricted to polytopes.
    pub fn ellipse(center: Vec<f64>, axes: Vec<f64>, base_point: Option<Vec<f64>>) -> Result<Self> {
        if center.len() != 2 || axes.len() != 2 {
            return Err(GeomError::InvalidBody("ellipse bodies are 2-dimensional".into()));
        }
        if axes.iter().any(|r| *r <= 0.0) {
            return Err(GeomError::InvalidBody("ellipse axes must be positive".into()));
        }
        let base_point = base_point.unwrap_or_else(|| center.clone());
        check_dim(&base_point, 2)?;
        let body = ConvexBody {
            kind: BodyKind::Ellipse,
            dim: 2,
            vertices: Vec::new(),
            facets: Vec::new(),
            center,
            axes,
            base_point: base_point.clone(),
            base_slacks: Vec::new(),
            eps: DEFAULT_EPS,
        };
        if !body.is_interior(&base_point) {
            return Err(GeomError::InvalidBody("base_point is not interior".into()));
        }
        Ok(body)
    }

    /// Standard n-simplex with vertices at the origin and the coordinate
    /// unit points; base-point at the centroid.
    pub fn standard_simplex(n: usize) -> Result<Self> {
        let mut verts = vec![vec![0.0; n]];
        for i in 0..n {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            verts.push(v);
        }
        Self::polytope_from_vertices(verts, None)
    }

    /// Square [-1, 1]² with base-point at the origin.
    pub fn square() -> Self {
        ConvexBody::polytope_from_vertices(
            vec![
                vec![-1.0, -1.0],
                vec![-1.0, 1.0],
                vec![1.0, -1.0],
                vec![1.0, 1.0],
            ],
            Some(vec![0.0, 0.0]),
        )
        .expect("unit square is a valid body")
    }

    fn validate_polytope(mut self) -> Result<Self> {
        let n = self.dim;
        let eps = self.eps;
        for v in &self.vertices {
            let mut active = 0usize;
            let mut active_rows: Vec<Vec<f64>> = Vec::new();
            for f in &self.facets {
                let slack = f.offset - linalg::dot(&f.normal, v);
                if slack < -eps {
                    return Err(GeomError::InvalidBody(format!(
                        "vertex {:?} violates facet inequality (slack {:.3e})",
                        v, slack
                    )));
                }
                if slack <= eps {
                    active += 1;
                    active_rows.push(f.normal.clone());
                }
            }
            if active < n {
                return Err(GeomError::InvalidBody(format!(
                    "vertex {:?} is active on only {} facets (needs ≥ {})",
                    v, active, n
                )));
            }
            let rank = matrix_rank(&active_rows, eps);
            if rank < n {
                return Err(GeomError::InvalidBody(format!(
                    "active facets at vertex {:?} do not determine it uniquely",
                    v
                )));
            }
        }
        for (i, f) in self.facets.iter().enumerate() {
            let on_facet: Vec<Vec<f64>> = self
                .vertices
                .iter()
                .filter(|v| (f.offset - linalg::dot(&f.normal, v)).abs() <= eps)
                .cloned()
                .collect();
            if on_facet.len() < n || linalg::affine_rank(&on_facet, eps) < n - 1 {
                return Err(GeomError::InvalidBody(format!(
                    "facet {} supports fewer than {} affinely independent vertices",
                    i, n
                )));
            }
        }
        // Base-point must be strictly interior.
        let mut slacks = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let s = f.offset - linalg::dot(&f.normal, &self.base_point);
            if s <= eps {
                return Err(GeomError::InvalidBody(format!(
                    "base_point {:?} is not strictly interior (facet slack {:.3e})",
                    self.base_point, s
                )));
            }
            slacks.push(s);
        }
        self.base_slacks = slacks;
        Ok(self)
    }

    pub fn kind(&self) -> BodyKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Override the geometric tolerance (validation has already run at 1e-9).
    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn base_point(&self) -> &[f64] {
        &self.base_point
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn axes(&self) -> &[f64] {
        &self.axes
    }

    pub fn is_polytope(&self) -> bool {
        self.kind == BodyKind::Polytope
    }

    /// Raw facet slack β_i - a_i·p (positive inside, zero on the facet).
    pub fn slack(&self, facet: usize, p: &[f64]) -> f64 {
        let f = &self.facets[facet];
        f.offset - linalg::dot(&f.normal, p)
    }

    /// Pairing ⟨u_i, x⟩ of a lifted vector with the normalized dual ray
    /// u_i = (-a_i, β_i) / (β_i - a_i·b).
    pub fn dual_pairing(&self, facet: usize, x: &[f64]) -> f64 {
        let f = &self.facets[facet];
        let raw = f.offset * x[self.dim] - linalg::dot(&f.normal, &x[..self.dim]);
        raw / self.base_slacks[facet]
    }

    /// The normalized dual ray u_i as a vector in R^{n+1}.
    pub fn dual_ray(&self, facet: usize) -> Vec<f64> {
        let f = &self.facets[facet];
        let s = self.base_slacks[facet];
        let mut u: Vec<f64> = f.normal.iter().map(|a| -a / s).collect();
        u.push(f.offset / s);
        u
    }

    /// Lifted cone data (polytopes only).
    pub fn lifted_cone(&self) -> Result<LiftedCone> {
        if !self.is_polytope() {
            return Err(GeomError::NotPolytope);
        }
        Ok(LiftedCone {
            rays: self.vertices.iter().map(|v| linalg::lift(v)).collect(),
            dual_rays: (0..self.facets.len()).map(|i| self.dual_ray(i)).collect(),
        })
    }

    /// Ellipse membership margin: 1 - ‖E(p - c)‖², positive inside.
    fn ellipse_margin(&self, p: &[f64]) -> f64 {
        let dx = (p[0] - self.center[0]) / self.axes[0];
        let dy = (p[1] - self.center[1]) / self.axes[1];
        1.0 - (dx * dx + dy * dy)
    }

    /// Signed interiority measure: minimal facet slack for polytopes, the
    /// quadratic margin for ellipses. Positive strictly inside the body.
    pub fn interior_margin(&self, p: &[f64]) -> f64 {
        match self.kind {
            BodyKind::Polytope => self
                .facets
                .iter()
                .map(|f| f.offset - linalg::dot(&f.normal, p))
                .fold(f64::INFINITY, f64::min),
            BodyKind::Ellipse => self.ellipse_margin(p),
        }
    }

    pub fn is_interior(&self, p: &[f64]) -> bool {
        p.len() == self.dim && self.interior_margin(p) > self.eps
    }

    pub fn is_in_closure(&self, p: &[f64]) -> bool {
        p.len() == self.dim && self.interior_margin(p) >= -self.eps
    }

    pub fn is_boundary(&self, p: &[f64]) -> bool {
        let m = self.interior_margin(p);
        p.len() == self.dim && m >= -self.eps && m <= self.eps
    }

    pub fn ensure_interior(&self, p: &[f64], what: &str) -> Result<()> {
        check_dim(p, self.dim)?;
        if !self.is_interior(p) {
            if self.is_in_closure(p) {
                return Err(GeomError::BoundaryPoint(format!("{what} {:?}", p)));
            }
            return Err(GeomError::OutsidePoint(format!("{what} {:?}", p)));
        }
        Ok(())
    }

    pub fn ensure_boundary(&self, p: &[f64], what: &str) -> Result<()> {
        check_dim(p, self.dim)?;
        if self.is_interior(p) {
            return Err(GeomError::InteriorPoint(format!("{what} {:?}", p)));
        }
        if !self.is_in_closure(p) {
            return Err(GeomError::OutsidePoint(format!("{what} {:?}", p)));
        }
        Ok(())
    }

    /// Facets active at a point of the closed body.
    pub fn active_set(&self, p: &[f64]) -> Result<Vec<usize>> {
        if !self.is_polytope() {
            return Err(GeomError::NotPolytope);
        }
        if !self.is_in_closure(p) {
            return Err(GeomError::OutsidePoint(format!("{:?}", p)));
        }
        Ok((0..self.facets.len())
            .filter(|i| self.slack(*i, p).abs() <= self.eps)
            .collect())
    }

    /// All proper faces of the closed body and of the dual cone C*.
    ///
    /// Primal faces are the extreme sets of the closure, listed by vertex
    /// index set. Dual faces of C* correspond one-to-one to primal faces by
    /// conjugation; a primal face of dimension k yields the dual face spanned
    /// by its active facet rays, of dimension n - k.
    pub fn face_lattice(&self) -> Result<Vec<Face>> {
        if !self.is_polytope() {
            return Err(GeomError::NotPolytope);
        }
        let mut faces = Vec::new();
        for (vset, jset) in self.primal_face_pairs()? {
            let pts: Vec<Vec<f64>> = vset.iter().map(|i| self.vertices[*i].clone()).collect();
            let dim = linalg::affine_rank(&pts, self.eps);
            faces.push(Face {
                side: FaceSide::Primal,
                index_set: vset,
                dim,
            });
            faces.push(Face {
                side: FaceSide::Dual,
                index_set: jset,
                dim: self.dim - dim,
            });
        }
        faces.sort();
        Ok(faces)
    }

    /// Closed (vertex set, facet set) pairs of the Galois connection between
    /// vertices and facets; one pair per proper nonempty face.
    pub(crate) fn primal_face_pairs(&self) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
        if !self.is_polytope() {
            return Err(GeomError::NotPolytope);
        }
        let actives: Vec<BTreeSet<usize>> = self
            .vertices
            .iter()
            .map(|v| {
                (0..self.facets.len())
                    .filter(|i| self.slack(*i, v).abs() <= self.eps)
                    .collect()
            })
            .collect();
        let vert_set = |j: &BTreeSet<usize>| -> BTreeSet<usize> {
            (0..self.vertices.len())
                .filter(|v| j.is_subset(&actives[*v]))
                .collect()
        };
        let mut seen: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
        let mut queue: Vec<BTreeSet<usize>> = Vec::new();
        // Seed with facet faces and vertex faces, then close under intersection.
        for i in 0..self.facets.len() {
            let j: BTreeSet<usize> = [i].into_iter().collect();
            queue.push(vert_set(&j));
        }
        for (v, act) in actives.iter().enumerate() {
            let _ = act;
            queue.push([v].into_iter().collect());
        }
        while let Some(vs) = queue.pop() {
            if vs.is_empty() || vs.len() == self.vertices.len() {
                continue;
            }
            // Close the pair: facets active on all of vs, then its vertex hull.
            let mut j: BTreeSet<usize> = actives[*vs.iter().next().unwrap()].clone();
            for v in vs.iter().skip(1) {
                j = j.intersection(&actives[*v]).copied().collect();
            }
            let closed_vs = vert_set(&j);
            if j.is_empty() {
                continue; // whole body, not a proper face
            }
            let key: Vec<usize> = closed_vs.iter().copied().collect();
            if seen.contains_key(&key) {
                continue;
            }
            // Intersections with known faces may reveal smaller ones.
            for other in seen.keys().cloned().collect::<Vec<_>>() {
                let inter: BTreeSet<usize> = other
                    .iter()
                    .copied()
                    .collect::<BTreeSet<_>>()
                    .intersection(&closed_vs)
                    .copied()
                    .collect();
                if !inter.is_empty() {
                    queue.push(inter);
                }
            }
            seen.insert(key, j);
        }
        Ok(seen
            .into_iter()
            .map(|(vs, js)| (vs, js.into_iter().collect()))
            .collect())
    }

    /// The exposed face of C* defined by a boundary point x: the dual rays
    /// vanishing on lift(x).
    pub fn exposed_face_of_dual(&self, x: &[f64]) -> Result<Face> {
        if !self.is_polytope() {
            return Err(GeomError::NotPolytope);
        }
        self.ensure_boundary(x, "point")?;
        let j = self.active_set(x)?;
        let primal = self.smallest_extreme_set(x)?;
        Ok(Face {
            side: FaceSide::Dual,
            index_set: j,
            dim: self.dim - primal.dim,
        })
    }

    /// The unique face whose relative interior contains the boundary point x.
    pub fn smallest_extreme_set(&self, x: &[f64]) -> Result<Face> {
        if !self.is_polytope() {
            return Err(GeomError::NotPolytope);
        }
        self.ensure_boundary(x, "point")?;
        let j: BTreeSet<usize> = self.active_set(x)?.into_iter().collect();
        let vs: Vec<usize> = (0..self.vertices.len())
            .filter(|v| {
                j.iter()
                    .all(|i| self.slack(*i, &self.vertices[*v]).abs() <= self.eps)
            })
            .collect();
        if vs.is_empty() {
            return Err(GeomError::InvalidBody(format!(
                "no vertex supports the active set of {:?}",
                x
            )));
        }
        let pts: Vec<Vec<f64>> = vs.iter().map(|i| self.vertices[*i].clone()).collect();
        Ok(Face {
            side: FaceSide::Primal,
            index_set: vs,
            dim: linalg::affine_rank(&pts, self.eps),
        })
    }

    /// Boundary hits of the line through two interior points: `w` beyond `x`
    /// and `z` beyond `y`, so that w, x, y, z are in order along the line.
    pub fn line_boundary_hits(&self, x: &[f64], y: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        self.ensure_interior(x, "first point")?;
        self.ensure_interior(y, "second point")?;
        if linalg::dist(x, y) < self.eps {
            return Err(GeomError::CoincidentPoints);
        }
        let d = linalg::sub(y, x);
        let (t_neg, t_pos) = self.line_param_range(x, &d)?;
        let w = linalg::axpy(x, t_neg, &d);
        let z = linalg::axpy(x, t_pos, &d);
        Ok((w, z))
    }

    /// Parameter range (t⁻, t⁺) with x + t·d in the closed body exactly for
    /// t ∈ [t⁻, t⁺]; x must be interior and d nonzero.
    pub fn line_param_range(&self, x: &[f64], d: &[f64]) -> Result<(f64, f64)> {
        match self.kind {
            BodyKind::Polytope => {
                let mut t_pos = f64::INFINITY;
                let mut t_neg = f64::NEG_INFINITY;
                for f in &self.facets {
                    let denom = linalg::dot(&f.normal, d);
                    let slack = f.offset - linalg::dot(&f.normal, x);
                    if denom.abs() < 1e-300 {
                        continue;
                    }
                    let t = slack / denom;
                    if denom > 0.0 {
                        t_pos = t_pos.min(t);
                    } else {
                        t_neg = t_neg.max(t);
                    }
                }
                if !t_pos.is_finite() || !t_neg.is_finite() {
                    return Err(GeomError::Unbounded("line does not exit the body".into()));
                }
                Ok((t_neg, t_pos))
            }
            BodyKind::Ellipse => {
                let ex = [
                    (x[0] - self.center[0]) / self.axes[0],
                    (x[1] - self.center[1]) / self.axes[1],
                ];
                let ed = [d[0] / self.axes[0], d[1] / self.axes[1]];
                let a = ed[0] * ed[0] + ed[1] * ed[1];
                let b = 2.0 * (ex[0] * ed[0] + ex[1] * ed[1]);
                let c = ex[0] * ex[0] + ex[1] * ex[1] - 1.0;
                let disc = b * b - 4.0 * a * c;
                if disc <= 0.0 || a == 0.0 {
                    return Err(GeomError::InvalidArgument(
                        "degenerate line-ellipse intersection".into(),
                    ));
                }
                let sq = disc.sqrt();
                Ok(((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)))
            }
        }
    }

    /// Deterministic grid of interior probe points with the given facet
    /// clearance, at most `limit` points, ordered lexicographically.
    pub fn interior_grid(&self, per_axis: usize, clearance: f64, limit: usize) -> Vec<Vec<f64>> {
        let (lo, hi) = self.bounding_box();
        let mut pts = Vec::new();
        let mut idx = vec![0usize; self.dim];
        'outer: loop {
            let p: Vec<f64> = (0..self.dim)
                .map(|k| {
                    let t = (idx[k] as f64 + 0.5) / per_axis as f64;
                    lo[k] + t * (hi[k] - lo[k])
                })
                .collect();
            if self.interior_margin(&p) > clearance {
                pts.push(p);
                if pts.len() >= limit {
                    break;
                }
            }
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < per_axis {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == self.dim {
                    break 'outer;
                }
            }
        }
        pts
    }

    /// Axis-aligned bounding box of the closed body.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self.kind {
            BodyKind::Polytope => {
                let mut lo = vec![f64::INFINITY; self.dim];
                let mut hi = vec![f64::NEG_INFINITY; self.dim];
                for v in &self.vertices {
                    for k in 0..self.dim {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (lo, hi)
            }
            BodyKind::Ellipse => (
                vec![self.center[0] - self.axes[0], self.center[1] - self.axes[1]],
                vec![self.center[0] + self.axes[0], self.center[1] + self.axes[1]],
            ),
        }
    }
}

fn check_dim(p: &[f64], dim: usize) -> Result<()> {
    if p.len() != dim {
        return Err(GeomError::DimensionMismatch {
            expected: dim,
            got: p.len(),
        });
    }
    if p.iter().any(|x| !x.is_finite()) {
        return Err(GeomError::InvalidArgument(format!(
            "non-finite coordinate in {:?}",
            p
        )));
    }
    Ok(())
}

fn dedup_points(points: Vec<Vec<f64>>, eps: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for p in points {
        if !out.iter().any(|q| linalg::dist(q, &p) <= eps) {
            out.push(p);
        }
    }
    out
}

fn dedup_facets(facets: Vec<Facet>, eps: f64) -> Vec<Facet> {
    let mut out: Vec<Facet> = Vec::new();
    for f in facets {
        if !out.iter().any(|g| facet_close(g, &f, eps.max(1e-9))) {
            out.push(f);
        }
    }
    out
}

fn facet_close(a: &Facet, b: &Facet, tol: f64) -> bool {
    linalg::dist(&a.normal, &b.normal) <= tol && (a.offset - b.offset).abs() <= tol
}

fn matrix_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mat = DMatrix::from_fn(rows.len(), rows[0].len(), |r, c| rows[r][c]);
    mat.singular_values().iter().filter(|s| **s > tol).count()
}

/// V-to-H conversion by brute-force hyperplane enumeration over all
/// n-element vertex subsets. Adequate at desk scale; guarded against
/// combinatorial blowup.
fn facets_from_vertices(verts: &[Vec<f64>], dim: usize, eps: f64) -> Result<Vec<Facet>> {
    if linalg::binomial(verts.len(), dim) > 2_000_000 {
        return Err(GeomError::InvalidBody(format!(
            "too many vertex subsets for dual conversion ({} vertices in dimension {})",
            verts.len(),
            dim
        )));
    }
    let centroid = linalg::mean(verts);
    let mut facets: Vec<Facet> = Vec::new();
    for subset in linalg::Subsets::new(verts.len(), dim) {
        let pts: Vec<Vec<f64>> = subset.iter().map(|i| verts[*i].clone()).collect();
        let Some((mut normal, mut offset)) = linalg::hyperplane_through(&pts, eps) else {
            continue;
        };
        // Orient outward: centroid strictly below.
        let c = linalg::dot(&normal, &centroid);
        if c > offset {
            normal = linalg::scale(&normal, -1.0);
            offset = -offset;
        }
        if (linalg::dot(&normal, &centroid) - offset).abs() < eps {
            continue; // hyperplane through the centroid cannot support the hull
        }
        let mut supporting = true;
        for v in verts {
            if linalg::dot(&normal, v) - offset > eps {
                supporting = false;
                break;
            }
        }
        if !supporting {
            continue;
        }
        let f = Facet { normal, offset };
        if !facets.iter().any(|g| facet_close(g, &f, 1e-7)) {
            facets.push(f);
        }
    }
    if facets.is_empty() {
        return Err(GeomError::InvalidBody(
            "no supporting hyperplanes found (degenerate vertex set)".into(),
        ));
    }
    Ok(facets)
}

/// H-to-V conversion: solve every n-element facet subset and keep feasible
/// intersection points.
fn vertices_from_facets(facets: &[Facet], dim: usize, eps: f64) -> Result<Vec<Vec<f64>>> {
    if facets.len() < dim {
        return Err(GeomError::Unbounded(format!(
            "{} facets cannot bound a {}-dimensional body",
            facets.len(),
            dim
        )));
    }
    if linalg::binomial(facets.len(), dim) > 2_000_000 {
        return Err(GeomError::InvalidBody(format!(
            "too many facet subsets for vertex enumeration ({} facets in dimension {})",
            facets.len(),
            dim
        )));
    }
    let mut verts: Vec<Vec<f64>> = Vec::new();
    for subset in linalg::Subsets::new(facets.len(), dim) {
        let a = DMatrix::from_fn(dim, dim, |r, c| facets[subset[r]].normal[c]);
        let b = DVector::from_fn(dim, |r, _| facets[subset[r]].offset);
        let Some(x) = linalg::solve_square(&a, &b, 1e-7) else {
            continue;
        };
        let p: Vec<f64> = x.iter().copied().collect();
        let feasible = facets
            .iter()
            .all(|f| linalg::dot(&f.normal, &p) - f.offset <= eps.max(1e-7));
        if feasible && !verts.iter().any(|q| linalg::dist(q, &p) <= eps.max(1e-7)) {
            verts.push(p);
        }
    }
    Ok(verts)
}
