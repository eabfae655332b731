//! Essential linear hyperplane arrangements: construction with deterministic
//! sign normalization, ordered codimension-2 flats, tope enumeration by
//! incremental insertion with strict-feasibility tests, simpliciality,
//! restriction, localization and products.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactalg::simplex::strict_interior_point;
use crate::exactalg::{FieldSpec, KernelTracker, Matrix, Scalar};
use crate::inscribe::QForm;

/// Standard (coordinate) dot product.
pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    assert_eq!(u.len(), v.len());
    let field = u[0].field();
    let mut acc = field.zero();
    for (a, b) in u.iter().zip(v) {
        acc = &acc + &(a * b);
    }
    acc
}

fn are_parallel(u: &[Scalar], v: &[Scalar]) -> bool {
    let d = u.len();
    for i in 0..d {
        for j in i + 1..d {
            if !(&(&u[i] * &v[j]) - &(&u[j] * &v[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Sign vector of a region; entries are -1 or +1, indexed by hyperplane label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tope(pub Vec<i8>);

impl Tope {
    pub fn negated(&self) -> Tope {
        Tope(self.0.iter().map(|s| -s).collect())
    }
}

/// A codimension-2 flat with its members listed in cyclic order.
///
/// `members[s]` is a 0-based hyperplane label and `signs[s]` picks the
/// representative `signs[s] * z_{members[s]}` so that the representatives,
/// followed by their negatives, are cyclically ordered in the plane spanned
/// by `basis_u`, `basis_v`. The list starts at the smallest member label.
#[derive(Debug, Clone)]
pub struct OrderedFlat {
    pub members: Vec<usize>,
    pub signs: Vec<i8>,
    pub basis_u: Vec<Scalar>,
    pub basis_v: Vec<Scalar>,
}

impl OrderedFlat {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn sorted_members(&self) -> Vec<usize> {
        let mut m = self.members.clone();
        m.sort_unstable();
        m
    }
}

#[derive(Debug, Clone)]
pub struct SimplicialCheck {
    pub simplicial: bool,
    /// A tope whose tope-graph degree differs from the rank, when not simplicial.
    pub witness: Option<(Tope, usize)>,
}

/// Result of restricting to a hyperplane: the induced arrangement, the
/// restricted bilinear form, and the set-valued label map with exact
/// positive proportionality factors per merged label.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub arrangement: Arrangement,
    pub form: QForm,
    pub classes: Vec<MergedClass>,
}

#[derive(Debug, Clone)]
pub struct MergedClass {
    pub old_labels: Vec<usize>,
    /// `|c_j|` with `image(z_j) = c_j * image(z_rep)`, aligned with `old_labels`.
    pub factors: Vec<Scalar>,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    field: FieldSpec,
    dim: usize,
    normals: Vec<Vec<Scalar>>,
    flipped: Vec<bool>,
}

impl Arrangement {
    /// Build an essential arrangement. Normals are sign-normalized into a
    /// common open halfspace by a deterministically chosen generic
    /// functional; flips are recorded (the segments `[-z, z]` are symmetric,
    /// so zonotope coefficients are unaffected).
    pub fn new(field: FieldSpec, normals: Vec<Vec<Scalar>>) -> Result<Self> {
        if normals.is_empty() {
            return Err(Error::Invalid("arrangement needs at least one normal".into()));
        }
        let dim = normals[0].len();
        if dim == 0 {
            return Err(Error::Invalid("ambient dimension must be positive".into()));
        }
        for (i, z) in normals.iter().enumerate() {
            if z.len() != dim {
                return Err(Error::Invalid(format!("normal {} has wrong length", i + 1)));
            }
            if z.iter().all(|x| x.is_zero()) {
                return Err(Error::ZeroNormal(i + 1));
            }
        }
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                if are_parallel(&normals[i], &normals[j]) {
                    return Err(Error::ParallelPair(i + 1, j + 1));
                }
            }
        }
        let mut tracker = KernelTracker::new(field, dim);
        for z in &normals {
            tracker.constrain_dense(z);
        }
        let rank = dim - tracker.dim();
        if rank != dim {
            return Err(Error::NotEssential { rank, dim });
        }

        let (normals, flipped) = sign_normalize(field, normals);
        Ok(Arrangement { field, dim, normals, flipped })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Essential by construction, so the rank equals the dimension.
    pub fn rank(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.normals.len()
    }

    pub fn normal(&self, i: usize) -> &[Scalar] {
        &self.normals[i]
    }

    pub fn normals(&self) -> &[Vec<Scalar>] {
        &self.normals
    }

    pub fn flipped(&self, i: usize) -> bool {
        self.flipped[i]
    }

    /// Partition of all label pairs into ordered codimension-2 flats,
    /// sorted by their member tuples.
    pub fn ordered_codim2_flats(&self) -> Vec<OrderedFlat> {
        let n = self.n();
        let mut assigned = vec![false; n * n];
        let mut flats = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if assigned[i * n + j] {
                    continue;
                }
                let members = self.span_members(i, j);
                for a in 0..members.len() {
                    for b in a + 1..members.len() {
                        assigned[members[a] * n + members[b]] = true;
                    }
                }
                flats.push(self.order_flat(members));
            }
        }
        flats.sort_by(|a, b| a.members.cmp(&b.members));
        flats
    }

    /// Labels whose normals lie in span(z_i, z_j), including i and j.
    fn span_members(&self, i: usize, j: usize) -> Vec<usize> {
        let solver = PlaneSolver::new(self.field, &self.normals[i], &self.normals[j]);
        (0..self.n())
            .filter(|&k| k == i || k == j || solver.coords(&self.normals[k]).is_some())
            .collect()
    }

    /// Cyclically order a flat's members (see [`OrderedFlat`]).
    fn order_flat(&self, members: Vec<usize>) -> OrderedFlat {
        let u = self.normals[members[0]].clone();
        let v = self.normals[members[1]].clone();
        let solver = PlaneSolver::new(self.field, &u, &v);
        // upper-half-plane representatives with coordinates
        let mut reps: Vec<(usize, i8, Scalar, Scalar)> = members
            .iter()
            .map(|&k| {
                let (x, y) = solver
                    .coords(&self.normals[k])
                    .expect("flat member must lie in the plane");
                let upper = match y.sign() {
                    1 => true,
                    -1 => false,
                    _ => x.sign() > 0,
                };
                if upper {
                    (k, 1i8, x, y)
                } else {
                    (k, -1i8, -&x, -&y)
                }
            })
            .collect();
        reps.sort_by(|a, b| {
            // counterclockwise within the half plane: positive cross product first
            let cross = &(&a.2 * &b.3) - &(&a.3 * &b.2);
            match cross.sign() {
                1 => std::cmp::Ordering::Less,
                -1 => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Equal,
            }
        });
        // rotate so the smallest label leads; wrapped entries pass the
        // half-turn and flip sign
        let start = reps
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.0)
            .map(|(idx, _)| idx)
            .unwrap();
        let k = reps.len();
        let mut members_out = Vec::with_capacity(k);
        let mut signs_out = Vec::with_capacity(k);
        for t in 0..k {
            let (label, sign, _, _) = &reps[(start + t) % k];
            let wrapped = start + t >= k;
            members_out.push(*label);
            signs_out.push(if wrapped { -sign } else { *sign });
        }
        OrderedFlat { members: members_out, signs: signs_out, basis_u: u, basis_v: v }
    }

    /// All topes, sorted lexicographically; closed under global negation.
    pub fn topes(&self, cap: usize) -> Result<Vec<Tope>> {
        let n = self.n();
        let d = self.dim;
        // insertion order: an independent spanning set first
        let mut order: Vec<usize> = Vec::with_capacity(n);
        {
            let mut tracker = KernelTracker::new(self.field, d);
            let mut rest = Vec::new();
            for i in 0..n {
                let before = tracker.dim();
                tracker.constrain_dense(&self.normals[i]);
                if tracker.dim() < before {
                    order.push(i);
                } else {
                    rest.push(i);
                }
            }
            order.extend(rest);
        }
        let base = &order[..d];
        let base_matrix = Matrix::from_rows(
            self.field,
            base.iter().map(|&i| self.normals[i].clone()).collect(),
        );
        // seed: all sign patterns on the independent set, with exact witnesses
        let mut current: Vec<(Vec<i8>, Vec<Scalar>)> = Vec::with_capacity(1 << d);
        for mask in 0..(1usize << d) {
            let signs: Vec<i8> = (0..d).map(|a| if mask >> a & 1 == 1 { 1 } else { -1 }).collect();
            let rhs: Vec<Scalar> = signs.iter().map(|&s| self.field.integer(s as i64)).collect();
            let witness = base_matrix.solve(&rhs).expect("independent rows are invertible");
            current.push((signs, witness));
        }
        if current.len() > cap {
            return Err(Error::RegionCapExceeded(cap));
        }

        for step in d..n {
            let label = order[step];
            let z = &self.normals[label];
            let zz = dot(z, z);
            let mut next: Vec<(Vec<i8>, Vec<Scalar>)> = Vec::with_capacity(current.len() * 2);
            for (signs, witness) in current.into_iter() {
                let val = dot(z, &witness);
                let s = val.sign();
                let candidates: &[i8] = if s == 0 { &[1, -1] } else { &[s] };
                if s != 0 {
                    let mut kept = signs.clone();
                    kept.push(s);
                    // try the mirror image of the witness for the other side
                    let mut handled = false;
                    {
                        let factor = &(&val + &val) / &zz;
                        let reflected: Vec<Scalar> = witness
                            .iter()
                            .zip(z.iter())
                            .map(|(w, zi)| w - &(&factor * zi))
                            .collect();
                        if dot(z, &reflected).sign() == -s
                            && (0..step).all(|t| {
                                dot(&self.normals[order[t]], &reflected).sign()
                                    == signs[t]
                            })
                        {
                            let mut other = signs.clone();
                            other.push(-s);
                            next.push((other, reflected));
                            handled = true;
                        }
                    }
                    if !handled {
                        if let Some(point) = self.open_region_point(&order[..step], &signs, label, -s) {
                            let mut other = signs.clone();
                            other.push(-s);
                            next.push((other, point));
                        }
                    }
                    next.push((kept, witness));
                } else {
                    for &cand in candidates {
                        if let Some(point) = self.open_region_point(&order[..step], &signs, label, cand) {
                            let mut t = signs.clone();
                            t.push(cand);
                            next.push((t, point));
                        }
                    }
                }
                if next.len() > 2 * cap {
                    return Err(Error::RegionCapExceeded(cap));
                }
            }
            current = next;
            if current.len() > cap {
                return Err(Error::RegionCapExceeded(cap));
            }
        }

        // remap from insertion order to label order and sort
        let mut topes: Vec<Tope> = current
            .into_iter()
            .map(|(signs, _)| {
                let mut by_label = vec![0i8; n];
                for (pos, &label) in order.iter().enumerate() {
                    by_label[label] = signs[pos];
                }
                Tope(by_label)
            })
            .collect();
        topes.sort();
        Ok(topes)
    }

    fn open_region_point(
        &self,
        inserted: &[usize],
        signs: &[i8],
        new_label: usize,
        new_sign: i8,
    ) -> Option<Vec<Scalar>> {
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(inserted.len() + 1);
        for (pos, &label) in inserted.iter().enumerate() {
            let row = self.normals[label]
                .iter()
                .map(|x| if signs[pos] < 0 { -x } else { x.clone() })
                .collect();
            rows.push(row);
        }
        rows.push(
            self.normals[new_label]
                .iter()
                .map(|x| if new_sign < 0 { -x } else { x.clone() })
                .collect(),
        );
        strict_interior_point(&Matrix::from_rows(self.field, rows))
    }

    /// Edges of the tope graph as sign vectors with a single zero entry,
    /// sorted lexicographically.
    pub fn tope_graph_edges(&self, topes: &[Tope]) -> Vec<Vec<i8>> {
        let set: HashSet<&Vec<i8>> = topes.iter().map(|t| &t.0).collect();
        let mut edges: Vec<Vec<i8>> = Vec::new();
        for tope in topes {
            for i in 0..tope.0.len() {
                if tope.0[i] != 1 {
                    continue; // count each adjacent pair once, from its +1 side
                }
                let mut flipped = tope.0.clone();
                flipped[i] = -1;
                if set.contains(&flipped) {
                    let mut tau = tope.0.clone();
                    tau[i] = 0;
                    edges.push(tau);
                }
            }
        }
        edges.sort();
        edges
    }

    /// True iff every tope has exactly `rank` neighbors in the tope graph.
    pub fn is_simplicial(&self, cap: usize) -> Result<SimplicialCheck> {
        let topes = self.topes(cap)?;
        let set: HashSet<&Vec<i8>> = topes.iter().map(|t| &t.0).collect();
        for tope in &topes {
            let mut degree = 0;
            for i in 0..tope.0.len() {
                let mut flipped = tope.0.clone();
                flipped[i] = -flipped[i];
                if set.contains(&flipped) {
                    degree += 1;
                }
            }
            if degree != self.dim {
                return Ok(SimplicialCheck {
                    simplicial: false,
                    witness: Some((tope.clone(), degree)),
                });
            }
        }
        Ok(SimplicialCheck { simplicial: true, witness: None })
    }

    /// Restrict to the hyperplane of normal `i`, projecting the other
    /// normals Q-orthogonally along `z_i` and merging parallel images.
    pub fn restrict(&self, i: usize, q: &QForm) -> Result<Restriction> {
        if i >= self.n() {
            return Err(Error::Invalid(format!("hyperplane index {} out of range", i + 1)));
        }
        if self.dim < 2 {
            return Err(Error::Invalid("cannot restrict a rank-1 arrangement".into()));
        }
        let zi = &self.normals[i];
        let zz = q.apply(zi, zi);
        if zz.is_zero() {
            return Err(Error::DegenerateForm(i + 1));
        }
        // basis of the Q-orthogonal complement of z_i
        let w = q.matrix().mul_vec(zi);
        let p = w.iter().position(|x| !x.is_zero()).expect("Q z nonzero for nonsingular Q");
        let axes: Vec<usize> = (0..self.dim).filter(|&a| a != p).collect();
        let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim - 1);
        for &a in &axes {
            let mut b = vec![self.field.zero(); self.dim];
            b[a] = self.field.one();
            b[p] = -&(&w[a] / &w[p]);
            basis.push(b);
        }
        // project and read coordinates: position a != p carries the coefficient
        let mut images: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for j in 0..self.n() {
            if j == i {
                continue;
            }
            let t = &q.apply(&self.normals[j], zi) / &zz;
            let proj: Vec<Scalar> = self.normals[j]
                .iter()
                .zip(zi.iter())
                .map(|(a, b)| a - &(&t * b))
                .collect();
            let coords: Vec<Scalar> = axes.iter().map(|&a| proj[a].clone()).collect();
            images.push((j, coords));
        }
        // merge parallel images
        let mut classes: Vec<MergedClass> = Vec::new();
        let mut reps: Vec<Vec<Scalar>> = Vec::new();
        for (j, y) in images {
            let mut placed = false;
            for (c, rep) in reps.iter().enumerate() {
                if are_parallel(&y, rep) {
                    let t = rep.iter().position(|x| !x.is_zero()).unwrap();
                    let factor = (&y[t] / &rep[t]).abs();
                    classes[c].old_labels.push(j);
                    classes[c].factors.push(factor);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(MergedClass {
                    old_labels: vec![j],
                    factors: vec![self.field.one()],
                });
                reps.push(y);
            }
        }
        let arrangement = Arrangement::new(self.field, reps)?;
        let mut fm = Matrix::zeros(self.field, self.dim - 1, self.dim - 1);
        for (r, br) in basis.iter().enumerate() {
            for (c, bc) in basis.iter().enumerate() {
                fm.set(r, c, q.apply(br, bc));
            }
        }
        let form = QForm::new(fm)?;
        Ok(Restriction { arrangement, form, classes })
    }

    /// Keep the hyperplanes containing the flat spanned by the chosen
    /// indices, essentialized onto the span of their normals. Returns the
    /// localized arrangement and the map from new to old labels.
    pub fn localize(&self, indices: &[usize]) -> Result<(Arrangement, Vec<usize>)> {
        if indices.is_empty() {
            return Err(Error::Invalid("localization needs at least one index".into()));
        }
        for &i in indices {
            if i >= self.n() {
                return Err(Error::Invalid(format!("hyperplane index {} out of range", i + 1)));
            }
        }
        // greedy independent subset of the selected normals
        let mut span_basis: Vec<Vec<Scalar>> = Vec::new();
        {
            let mut tracker = KernelTracker::new(self.field, self.dim);
            for &i in indices {
                let before = tracker.dim();
                tracker.constrain_dense(&self.normals[i]);
                if tracker.dim() < before {
                    span_basis.push(self.normals[i].clone());
                }
            }
        }
        let r = span_basis.len();
        // pivot rows making the basis matrix invertible
        let solver = SpanSolver::new(self.field, &span_basis);
        let mut members = Vec::new();
        let mut coords = Vec::new();
        for j in 0..self.n() {
            if let Some(y) = solver.coords(&self.normals[j]) {
                members.push(j);
                coords.push(y);
            }
        }
        debug_assert!(members.len() >= r);
        let arrangement = Arrangement::new(self.field, coords)?;
        Ok((arrangement, members))
    }

    /// Block-embedded product arrangement.
    pub fn product(a: &Arrangement, b: &Arrangement) -> Result<Arrangement> {
        if a.field != b.field {
            return Err(Error::FieldMismatch);
        }
        let dim = a.dim + b.dim;
        let mut normals = Vec::with_capacity(a.n() + b.n());
        for z in &a.normals {
            let mut v = z.clone();
            v.extend(vec![a.field.zero(); b.dim]);
            normals.push(v);
        }
        for z in &b.normals {
            let mut v = vec![a.field.zero(); a.dim];
            v.extend(z.clone());
            normals.push(v);
        }
        debug_assert_eq!(normals[0].len(), dim);
        Arrangement::new(a.field, normals)
    }
}

/// Flip normals into the open halfspace of a generic functional
/// `c = (1, eps, eps^2, ...)`, doubling eps until no pairing vanishes.
fn sign_normalize(field: FieldSpec, normals: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<bool>) {
    let d = normals[0].len();
    let mut eps_num = 1i64;
    loop {
        let eps = field.integer(eps_num);
        let mut c = Vec::with_capacity(d);
        let mut power = field.one();
        for _ in 0..d {
            c.push(power.clone());
            power = &power * &eps;
        }
        let signs: Vec<i8> = normals.iter().map(|z| dot(&c, z).sign()).collect();
        if signs.iter().all(|&s| s != 0) {
            let flipped: Vec<bool> = signs.iter().map(|&s| s < 0).collect();
            let normals = normals
                .into_iter()
                .zip(flipped.iter())
                .map(|(z, &flip)| if flip { z.iter().map(|x| -x).collect() } else { z })
                .collect();
            return (normals, flipped);
        }
        eps_num = eps_num.checked_mul(2).expect("sign normalization diverged");
    }
}

/// Solves membership/coordinates in the span of two independent vectors.
struct PlaneSolver {
    field: FieldSpec,
    u: Vec<Scalar>,
    v: Vec<Scalar>,
    p1: usize,
    p2: usize,
    inv: Matrix,
}

impl PlaneSolver {
    fn new(field: FieldSpec, u: &[Scalar], v: &[Scalar]) -> Self {
        let d = u.len();
        let mut pick = None;
        'outer: for p1 in 0..d {
            for p2 in 0..d {
                if p1 == p2 {
                    continue;
                }
                let det = &(&u[p1] * &v[p2]) - &(&u[p2] * &v[p1]);
                if !det.is_zero() {
                    pick = Some((p1, p2));
                    break 'outer;
                }
            }
        }
        let (p1, p2) = pick.expect("independent pair spans a plane");
        let m = Matrix::from_rows(field, vec![
            vec![u[p1].clone(), v[p1].clone()],
            vec![u[p2].clone(), v[p2].clone()],
        ]);
        PlaneSolver { field: m.field(), u: u.to_vec(), v: v.to_vec(), p1, p2, inv: m }
    }

    /// Coordinates (x, y) with `x u + y v = z`, or None if z is outside.
    fn coords(&self, z: &[Scalar]) -> Option<(Scalar, Scalar)> {
        let rhs = vec![z[self.p1].clone(), z[self.p2].clone()];
        let xy = self.inv.solve(&rhs)?;
        let (x, y) = (xy[0].clone(), xy[1].clone());
        for t in 0..z.len() {
            let recon = &(&x * &self.u[t]) + &(&y * &self.v[t]);
            if !(&recon - &z[t]).is_zero() {
                return None;
            }
        }
        let _ = self.field;
        Some((x, y))
    }
}

/// Membership/coordinates in the span of r independent vectors.
struct SpanSolver {
    basis: Vec<Vec<Scalar>>,
    pivot_rows: Vec<usize>,
    sub: Matrix,
}

impl SpanSolver {
    fn new(field: FieldSpec, basis: &[Vec<Scalar>]) -> Self {
        let r = basis.len();
        let d = basis[0].len();
        // greedy choice of r coordinate positions with invertible submatrix
        let mut pivot_rows: Vec<usize> = Vec::with_capacity(r);
        let mut tracker_rows: Vec<Vec<Scalar>> = Vec::new();
        for pos in 0..d {
            if pivot_rows.len() == r {
                break;
            }
            let candidate: Vec<Scalar> = basis.iter().map(|b| b[pos].clone()).collect();
            let mut test = tracker_rows.clone();
            test.push(candidate.clone());
            if crate::exactalg::rank_of_vectors(field, &test) > tracker_rows.len() {
                tracker_rows.push(candidate);
                pivot_rows.push(pos);
            }
        }
        assert_eq!(pivot_rows.len(), r, "basis vectors must be independent");
        let sub = Matrix::from_rows(
            field,
            pivot_rows
                .iter()
                .map(|&pos| basis.iter().map(|b| b[pos].clone()).collect())
                .collect(),
        );
        SpanSolver { basis: basis.to_vec(), pivot_rows, sub }
    }

    fn coords(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        let rhs: Vec<Scalar> = self.pivot_rows.iter().map(|&pos| z[pos].clone()).collect();
        let y = self.sub.solve(&rhs)?;
        for t in 0..z.len() {
            let mut recon = z[t].field().zero();
            for (c, b) in y.iter().zip(self.basis.iter()) {
                recon = &recon + &(c * &b[t]);
            }
            if !(&recon - &z[t]).is_zero() {
                return None;
            }
        }
        Some(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inscribe::QForm;

    fn f() -> FieldSpec {
        FieldSpec::rational()
    }

    fn vecs(field: FieldSpec, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| field.integer(x)).collect())
            .collect()
    }

    fn coordinate3() -> Arrangement {
        Arrangement::new(f(), vecs(f(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap()
    }

    /// Braid-type realization on labels (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
    pub(crate) fn a3() -> Arrangement {
        Arrangement::new(
            f(),
            vecs(f(), &[
                &[1, -1, 0],
                &[1, 0, -1],
                &[1, 0, 0],
                &[0, 1, -1],
                &[0, 1, 0],
                &[0, 0, 1],
            ]),
        )
        .unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Arrangement::new(f(), vecs(f(), &[&[0, 0], &[1, 0]])),
            Err(Error::ZeroNormal(1))
        ));
        assert!(matches!(
            Arrangement::new(f(), vecs(f(), &[&[1, 0], &[-1, 0]])),
            Err(Error::ParallelPair(1, 2))
        ));
        assert!(matches!(
            Arrangement::new(f(), vecs(f(), &[&[1, 0, 0], &[0, 1, 0]])),
            Err(Error::NotEssential { rank: 2, dim: 3 })
        ));
    }

    #[test]
    fn sign_normalization_preserves_spans() {
        let a = Arrangement::new(f(), vecs(f(), &[&[-1, 0], &[1, 1]])).unwrap();
        assert!(a.flipped(0));
        assert!(!a.flipped(1));
        assert_eq!(a.normal(0), &[f().integer(1), f().integer(0)][..]);
    }

    #[test]
    fn coordinate_flats_and_topes() {
        let a = coordinate3();
        let flats = a.ordered_codim2_flats();
        assert_eq!(flats.len(), 3);
        assert!(flats.iter().all(|fl| fl.size() == 2));
        let topes = a.topes(1000).unwrap();
        assert_eq!(topes.len(), 8);
        // closed under negation
        for t in &topes {
            assert!(topes.contains(&t.negated()));
        }
        assert!(a.is_simplicial(1000).unwrap().simplicial);
    }

    #[test]
    fn a3_flats_census() {
        let a = a3();
        let flats = a.ordered_codim2_flats();
        assert_eq!(flats.len(), 7);
        let mut size3 = 0;
        let mut size2 = 0;
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for fl in &flats {
            match fl.size() {
                3 => size3 += 1,
                2 => size2 += 1,
                s => panic!("unexpected flat size {s}"),
            }
            seen.push(fl.sorted_members());
        }
        assert_eq!((size3, size2), (4, 3));
        // hand-derived flats (0-based labels)
        for expected in [
            vec![0, 1, 3],
            vec![0, 2, 4],
            vec![1, 2, 5],
            vec![3, 4, 5],
            vec![0, 5],
            vec![1, 4],
            vec![2, 3],
        ] {
            assert!(seen.contains(&expected), "missing flat {:?}", expected);
        }
    }

    #[test]
    fn flat_pairs_partition_and_orientation() {
        let a = a3();
        let n = a.n();
        let flats = a.ordered_codim2_flats();
        let mut covered = std::collections::HashSet::new();
        for fl in &flats {
            for s in 0..fl.size() {
                for t in s + 1..fl.size() {
                    let (x, y) = (fl.members[s].min(fl.members[t]), fl.members[s].max(fl.members[t]));
                    assert!(covered.insert((x, y)), "pair covered twice");
                }
            }
            // consecutive representatives positively oriented in the plane basis
            let solver = PlaneSolver::new(a.field(), &fl.basis_u, &fl.basis_v);
            let coords: Vec<(Scalar, Scalar)> = fl
                .members
                .iter()
                .zip(fl.signs.iter())
                .map(|(&k, &s)| {
                    let (x, y) = solver.coords(a.normal(k)).unwrap();
                    if s < 0 {
                        (-&x, -&y)
                    } else {
                        (x, y)
                    }
                })
                .collect();
            for w in 0..coords.len().saturating_sub(1) {
                let (x1, y1) = &coords[w];
                let (x2, y2) = &coords[w + 1];
                let cross = &(x1 * y2) - &(y1 * x2);
                assert_eq!(cross.sign(), 1, "consecutive pair not positively oriented");
            }
        }
        let mut pairs = 0;
        for i in 0..n {
            for j in i + 1..n {
                if covered.contains(&(i, j)) {
                    pairs += 1;
                }
            }
        }
        assert_eq!(pairs, n * (n - 1) / 2);
    }

    #[test]
    fn a3_has_24_topes_and_is_simplicial() {
        let a = a3();
        let topes = a.topes(10_000).unwrap();
        assert_eq!(topes.len(), 24);
        assert!(a.is_simplicial(10_000).unwrap().simplicial);
        // degrees lie between rank and n
        let set: HashSet<&Vec<i8>> = topes.iter().map(|t| &t.0).collect();
        for t in &topes {
            let mut deg = 0;
            for i in 0..a.n() {
                let mut fl = t.0.clone();
                fl[i] = -fl[i];
                if set.contains(&fl) {
                    deg += 1;
                }
            }
            assert!(deg >= a.rank() && deg <= a.n());
        }
    }

    #[test]
    fn rank2_tope_count() {
        for normals in [
            vecs(f(), &[&[1, 0], &[0, 1], &[1, 1]]),
            vecs(f(), &[&[1, 0], &[0, 1], &[1, 1], &[1, -1], &[2, 1]]),
        ] {
            let n = normals.len();
            let a = Arrangement::new(f(), normals).unwrap();
            assert_eq!(a.topes(1000).unwrap().len(), 2 * n);
        }
    }

    #[test]
    fn region_cap_enforced() {
        let a = coordinate3();
        assert!(matches!(a.topes(4), Err(Error::RegionCapExceeded(4))));
    }

    #[test]
    fn non_simplicial_witness_matches_ray_oracle() {
        // e1, e2, e3, (1,1,1), (1,2,3): ray-count oracle says not simplicial
        let a = Arrangement::new(
            f(),
            vecs(f(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]]),
        )
        .unwrap();
        let check = a.is_simplicial(10_000).unwrap();
        assert!(!check.simplicial);
        let (witness, degree) = check.witness.unwrap();
        assert_ne!(degree, 3);

        // independent oracle: extreme rays of each region from pairs of hyperplanes
        let topes = a.topes(10_000).unwrap();
        let mut rays: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..a.n() {
            for j in i + 1..a.n() {
                let m = Matrix::from_rows(f(), vec![a.normal(i).to_vec(), a.normal(j).to_vec()]);
                for v in crate::exactalg::kernel_basis(&m) {
                    rays.push(v.clone());
                    rays.push(v.iter().map(|x| -x).collect());
                }
            }
        }
        let ray_count = |tope: &Tope| {
            let mut found: Vec<&Vec<Scalar>> = Vec::new();
            'ray: for ray in &rays {
                for (k, z) in a.normals().iter().enumerate() {
                    let s = dot(z, ray).sign();
                    if s != 0 && s != tope.0[k] {
                        continue 'ray;
                    }
                }
                for prev in &found {
                    if are_parallel(prev, ray) && dot(prev, ray).sign() > 0 {
                        continue 'ray;
                    }
                }
                found.push(ray);
            }
            found.len()
        };
        let mut oracle_bad = 0;
        for t in &topes {
            if ray_count(t) != 3 {
                oracle_bad += 1;
            }
        }
        assert_eq!(topes.len(), 22);
        assert_eq!(oracle_bad, 12);
        assert_ne!(ray_count(&witness), 3);
    }

    #[test]
    fn restrict_coordinate() {
        let a = coordinate3();
        let q = QForm::identity(f(), 3);
        let r = a.restrict(2, &q).unwrap();
        assert_eq!(r.arrangement.dim(), 2);
        assert_eq!(r.arrangement.n(), 2);
        assert_eq!(r.classes.len(), 2);
        assert_eq!(r.classes[0].old_labels, vec![0]);
        assert_eq!(r.classes[1].old_labels, vec![1]);
        assert_eq!(r.form.matrix().at(0, 0), &f().integer(1));
    }

    #[test]
    fn restriction_classes_are_flats_through_i() {
        // merged classes of restrict(A, i) match the flats containing i
        let a = a3();
        let q = QForm::identity(f(), 3);
        for i in 0..a.n() {
            let flats = a.ordered_codim2_flats();
            let r = a.restrict(i, &q).unwrap();
            let mut expected: Vec<Vec<usize>> = flats
                .iter()
                .filter(|fl| fl.members.contains(&i))
                .map(|fl| {
                    let mut m: Vec<usize> =
                        fl.members.iter().copied().filter(|&x| x != i).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            let mut got: Vec<Vec<usize>> = r
                .classes
                .iter()
                .map(|c| {
                    let mut m = c.old_labels.clone();
                    m.sort_unstable();
                    m
                })
                .collect();
            expected.sort();
            got.sort();
            assert_eq!(expected, got, "restriction at {i}");
        }
    }

    #[test]
    fn localize_a3_triple() {
        let a = a3();
        // hyperplanes 0 and 1 lie in a common flat with 3
        let (loc, map) = a.localize(&[0, 1]).unwrap();
        assert_eq!(loc.dim(), 2);
        assert_eq!(loc.n(), 3);
        assert_eq!(map, vec![0, 1, 3]);
        let (single, map1) = a.localize(&[4]).unwrap();
        assert_eq!(single.dim(), 1);
        assert_eq!(single.n(), 1);
        assert_eq!(map1, vec![4]);
    }

    #[test]
    fn product_block_structure() {
        let line = Arrangement::new(f(), vecs(f(), &[&[1]])).unwrap();
        let p = Arrangement::product(&line, &line).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.n(), 2);
        let t = p.topes(100).unwrap();
        assert_eq!(t.len(), 4);

        // tope count multiplies
        let a = Arrangement::new(f(), vecs(f(), &[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let prod = Arrangement::product(&a, &line).unwrap();
        assert_eq!(
            prod.topes(1000).unwrap().len(),
            a.topes(1000).unwrap().len() * line.topes(10).unwrap().len()
        );
    }

    #[test]
    fn send_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Arrangement>();
        assert_send_sync::<Tope>();
        assert_send_sync::<OrderedFlat>();
    }
}
