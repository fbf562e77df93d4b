//! Rational polyhedral cones in `N = Z^r`.
//!
//! A [`Cone`] is built from lattice generators and immediately computes its
//! dual description by an incremental double description run over the
//! integers. Rays and facet normals are stored primitive and sorted, which
//! makes the sorted ray list a canonical identity for the cone.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg::{
    dot, kernel_basis, primitive, reduce_mod_hnf, saturate, IntMatrix, SaturatedBasis,
};

pub type IntVec = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("cone is not strongly convex (it contains a line)")]
    NotStronglyConvex,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone is not simplicial")]
    NotSimplicial,
}

/// Strongly convex rational polyhedral cone.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<IntVec>,
    facets: Vec<IntVec>,
    // σ^⊥ ∩ M in HNF
    perp: IntMatrix,
    span: SaturatedBasis,
}

/// Extreme rays of `{x ∈ R^n : h·x ≥ 0 for every h}` by incremental double
/// description. Returns `(lineality basis, extreme rays)`, both as primitive
/// integer vectors; the rays are representatives modulo the lineality space.
pub fn double_description(n: usize, inequalities: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>) {
    let mut lineality: Vec<IntVec> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<IntVec> = Vec::new();
    let mut processed: Vec<IntVec> = Vec::new();

    for h in inequalities {
        debug_assert_eq!(h.len(), n);
        if let Some(k) = lineality.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l = lineality.remove(k);
            if dot(h, &l).is_negative() {
                l.iter_mut().for_each(|x| *x = -&*x);
            }
            let hl = dot(h, &l);
            for v in lineality.iter_mut().chain(rays.iter_mut()) {
                let hv = dot(h, v);
                if hv.is_zero() {
                    continue;
                }
                let w: IntVec = v.iter().zip(&l).map(|(a, b)| &hl * a - &hv * b).collect();
                *v = primitive(&w);
            }
            rays.push(l);
            processed.push(h.clone());
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(h, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            processed.push(h.clone());
            continue;
        }
        let target = (n - lineality.len()) as isize - 2;
        let tight: Vec<BTreeSet<usize>> = rays
            .iter()
            .map(|r| (0..processed.len()).filter(|&k| dot(&processed[k], r).is_zero()).collect())
            .collect();

        let mut next: Vec<IntVec> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                next.push(r.clone());
            }
        }
        for p in (0..rays.len()).filter(|&i| vals[i].is_positive()) {
            for q in (0..rays.len()).filter(|&i| vals[i].is_negative()) {
                if target < 0 {
                    continue;
                }
                let common: Vec<usize> = tight[p].intersection(&tight[q]).copied().collect();
                if (common.len() as isize) < target {
                    continue;
                }
                let rows: Vec<IntVec> = common.iter().map(|&k| processed[k].clone()).collect();
                if IntMatrix::from_rows(n, &rows).rank() as isize != target {
                    continue;
                }
                let w: IntVec = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(a, b)| &vals[p] * a - &vals[q] * b)
                    .collect();
                next.push(primitive(&w));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        processed.push(h.clone());
    }
    (lineality, rays)
}

fn check_len(n: usize, v: &[BigInt]) -> Result<(), ConeError> {
    if v.len() != n {
        return Err(ConeError::DimensionMismatch { expected: n, got: v.len() });
    }
    Ok(())
}

impl Cone {
    /// Cone generated by `generators` in `Z^ambient_rank`. Generators may be
    /// non-primitive, repeated, zero or non-extreme.
    pub fn new(ambient_rank: usize, generators: &[IntVec]) -> Result<Cone, ConeError> {
        let n = ambient_rank;
        let mut gens: Vec<IntVec> = Vec::new();
        for g in generators {
            check_len(n, g)?;
            if g.iter().all(Zero::is_zero) {
                continue;
            }
            gens.push(primitive(g));
        }
        gens.sort();
        gens.dedup();

        let (lineality, dual_rays) = double_description(n, &gens);
        let mut all = lineality.clone();
        all.extend(dual_rays.iter().cloned());
        if IntMatrix::from_rows(n, &all).rank() != n {
            return Err(ConeError::NotStronglyConvex);
        }

        let gmat = IntMatrix::from_rows(n, &gens);
        let perp = kernel_basis(&gmat.transpose());
        let span = SaturatedBasis::new(saturate(&gmat)).expect("saturation is saturated");

        let mut facets: Vec<IntVec> = Vec::new();
        for a in &dual_rays {
            let vals = span.basis().mul_vec(a);
            if vals.iter().all(Zero::is_zero) {
                continue;
            }
            let lifted = span.lift(&primitive(&vals));
            facets.push(reduce_mod_hnf(&lifted, &perp));
        }
        facets.sort();
        facets.dedup();

        let rays: Vec<IntVec> = gens
            .into_iter()
            .filter(|g| {
                let mut rows: Vec<IntVec> =
                    facets.iter().filter(|f| dot(f, g).is_zero()).cloned().collect();
                rows.extend(perp.row_vecs());
                IntMatrix::from_rows(n, &rows).rank() + 1 == n
            })
            .collect();

        Ok(Cone { ambient_rank: n, rays, facets, perp, span })
    }

    pub fn from_i64(ambient_rank: usize, generators: &[&[i64]]) -> Result<Cone, ConeError> {
        let gens: Vec<IntVec> =
            generators.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Cone::new(ambient_rank, &gens)
    }

    pub fn zero(ambient_rank: usize) -> Cone {
        Cone::new(ambient_rank, &[]).expect("zero cone")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Primitive ray generators, sorted lexicographically.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    /// Primitive inward facet normals in `M`, canonical modulo `σ^⊥`.
    pub fn facet_normals(&self) -> &[IntVec] {
        &self.facets
    }

    /// Basis of `σ^⊥ ∩ M`.
    pub fn perp(&self) -> &IntMatrix {
        &self.perp
    }

    /// Basis of `N_σ = N ∩ Rσ`, as rows.
    pub fn span_lattice(&self) -> &IntMatrix {
        self.span.basis()
    }

    pub fn span_basis(&self) -> &SaturatedBasis {
        &self.span
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        (0..self.perp.rows()).all(|i| dot(self.perp.row(i), v).is_zero())
            && self.facets.iter().all(|f| !dot(f, v).is_negative())
    }

    /// `v ∈ σ` and `v` lies on no facet.
    pub fn relative_interior_contains(&self, v: &[BigInt]) -> bool {
        self.contains(v) && self.facets.iter().all(|f| dot(f, v).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// Index of the lattice generated by the rays inside `N_σ`.
    pub fn multiplicity(&self) -> Result<BigInt, ConeError> {
        if !self.is_simplicial() {
            return Err(ConeError::NotSimplicial);
        }
        Ok(self.ray_coordinates().det().abs())
    }

    /// Ray generators in coordinates of the span lattice basis, one per row.
    pub fn ray_coordinates(&self) -> IntMatrix {
        let rows: Vec<IntVec> = self
            .rays
            .iter()
            .map(|r| self.span.coordinates(r).expect("ray lies in its span lattice"))
            .collect();
        IntMatrix::from_rows(self.dim(), &rows)
    }

    pub fn is_smooth(&self) -> bool {
        self.is_simplicial() && self.multiplicity().map(|m| m == BigInt::from(1)).unwrap_or(false)
    }

    /// Indices (into `rays()`) of the rays of every face, including the zero
    /// face and the cone itself.
    pub fn face_ray_sets(&self) -> Vec<Vec<usize>> {
        let start: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start);
        while let Some(face) = queue.pop_front() {
            for f in &self.facets {
                let sub: Vec<usize> =
                    face.iter().copied().filter(|&i| dot(f, &self.rays[i]).is_zero()).collect();
                if sub.len() != face.len() && seen.insert(sub.clone()) {
                    queue.push_back(sub);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// All faces, ordered by dimension and then by ray list.
    pub fn faces(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = self
            .face_ray_sets()
            .into_iter()
            .map(|idx| {
                let gens: Vec<IntVec> = idx.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::new(self.ambient_rank, &gens).expect("faces are strongly convex")
            })
            .collect();
        out.sort();
        out
    }

    /// Rays of `self` lying on every facet that contains all of `rays`.
    fn face_closure(&self, rays: &[IntVec]) -> Vec<IntVec> {
        let supporting: Vec<&IntVec> =
            self.facets.iter().filter(|f| rays.iter().all(|r| dot(f, r).is_zero())).collect();
        self.rays
            .iter()
            .filter(|r| supporting.iter().all(|f| dot(f, r).is_zero()))
            .cloned()
            .collect()
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.ambient_rank != other.ambient_rank {
            return false;
        }
        if self.rays.iter().any(|r| other.rays.binary_search(r).is_err()) {
            return false;
        }
        other.face_closure(&self.rays) == self.rays
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank, "ambient ranks differ");
        let n = self.ambient_rank;
        let mut ineqs: Vec<IntVec> = Vec::new();
        for c in [self, other] {
            ineqs.extend(c.facets.iter().cloned());
            for row in c.perp.row_vecs() {
                ineqs.push(row.iter().map(|x| -x).collect());
                ineqs.push(row);
            }
        }
        let (lineality, rays) = double_description(n, &ineqs);
        debug_assert!(lineality.is_empty(), "intersection of pointed cones is pointed");
        Cone::new(n, &rays).expect("intersection of pointed cones is pointed")
    }

    /// Dual cone `σ^∨`; defined as a strongly convex cone only when `σ` is
    /// full-dimensional.
    pub fn dual(&self) -> Result<Cone, ConeError> {
        let (lineality, rays) = double_description(self.ambient_rank, &self.rays);
        if !lineality.is_empty() {
            return Err(ConeError::NotStronglyConvex);
        }
        Cone::new(self.ambient_rank, &rays)
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_rank.hash(state);
        self.rays.hash(state);
    }
}

impl Ord for Cone {
    /// Dimension first, then the ray list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_rank
            .cmp(&other.ambient_rank)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.rays.cmp(&other.rays))
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_bigint_vec;

    fn c(n: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_i64(n, gens).unwrap()
    }

    fn v(x: &[i64]) -> IntVec {
        to_bigint_vec(x)
    }

    #[test]
    fn construction_examples() {
        let z = c(2, &[]);
        assert_eq!(z.dim(), 0);
        assert!(z.rays().is_empty());
        assert!(z.facet_normals().is_empty());

        let q = c(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(q.facet_normals(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(q.dim(), 2);

        assert_eq!(
            Cone::from_i64(2, &[&[1, 0], &[-1, 0]]).unwrap_err(),
            ConeError::NotStronglyConvex
        );
        assert!(matches!(
            Cone::from_i64(2, &[&[1, 0, 0]]),
            Err(ConeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn non_primitive_and_redundant_generators_are_normalised() {
        let a = c(2, &[&[2, 0], &[0, 3], &[1, 1], &[0, 0]]);
        assert_eq!(a.rays(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(a, c(2, &[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn face_counts() {
        assert_eq!(c(2, &[&[1, 0], &[0, 1]]).faces().len(), 4);
        assert_eq!(c(2, &[]).faces(), vec![c(2, &[])]);
        let s = c(3, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]]);
        let faces = s.faces();
        assert_eq!(faces.len(), 8);
        let by_dim: Vec<usize> = (0..4).map(|d| faces.iter().filter(|f| f.dim() == d).count()).collect();
        assert_eq!(by_dim, vec![1, 3, 3, 1]);
    }

    #[test]
    fn intersections() {
        let a = c(3, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]]);
        let b = c(3, &[&[1, 1, 1], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&a), a);
        assert_eq!(a.intersect(&b), c(3, &[&[1, 1, 1], &[0, 1, 0]]));
        let q = c(2, &[&[1, 0], &[0, 1]]);
        let opp = c(2, &[&[-1, 0], &[0, -1]]);
        assert_eq!(q.intersect(&opp), c(2, &[]));
    }

    #[test]
    fn face_relation() {
        let q = c(2, &[&[1, 0], &[0, 1]]);
        assert!(c(2, &[]).is_face_of(&q));
        assert!(c(2, &[&[1, 0]]).is_face_of(&q));
        assert!(!c(2, &[&[1, 1]]).is_face_of(&q));
        assert!(q.is_face_of(&q));
    }

    #[test]
    fn span_lattices() {
        assert_eq!(c(2, &[&[2, 4]]).span_lattice(), &IntMatrix::from_i64_rows(2, &[&[1, 2]]));
        let full = c(3, &[&[1, 2, 3], &[0, 1, 5], &[0, 0, 7]]);
        assert!(full.span_lattice().det().abs() == BigInt::from(1));
        assert_eq!(c(2, &[&[1, 1], &[1, -1]]).span_lattice(), &IntMatrix::identity(2));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(c(2, &[&[1, 0], &[0, 1]]).multiplicity().unwrap(), BigInt::from(1));
        assert_eq!(c(2, &[&[0, 1], &[2, 1]]).multiplicity().unwrap(), BigInt::from(2));
        assert_eq!(
            c(3, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]]).multiplicity().unwrap(),
            BigInt::from(1)
        );
        let square = c(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(square.multiplicity(), Err(ConeError::NotSimplicial));
        // a ray through a non-primitive point has multiplicity one
        assert_eq!(c(3, &[&[2, 2, 0]]).multiplicity().unwrap(), BigInt::from(1));
    }

    #[test]
    fn smoothness() {
        assert!(c(2, &[]).is_smooth());
        let quad = c(2, &[&[0, 1], &[2, 1]]);
        assert!(quad.is_simplicial() && !quad.is_smooth());
        let square = c(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert!(!square.is_simplicial());
        assert_eq!(square.rays().len(), 4);
        assert_eq!(square.facet_normals().len(), 4);
    }

    #[test]
    fn lower_dimensional_membership() {
        let ray = c(3, &[&[1, 1, 0]]);
        assert!(ray.contains(&v(&[3, 3, 0])));
        assert!(!ray.contains(&v(&[3, 3, 1])));
        assert!(!ray.contains(&v(&[-1, -1, 0])));
        let wedge = c(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(wedge.perp(), &IntMatrix::from_i64_rows(3, &[&[0, 0, 1]]));
        assert!(wedge.relative_interior_contains(&v(&[1, 2, 0])));
        assert!(!wedge.relative_interior_contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn dual_of_full_cone() {
        let q = c(2, &[&[0, 1], &[2, 1]]);
        let d = q.dual().unwrap();
        assert_eq!(d.rays(), &[v(&[-1, 2]), v(&[1, 0])]);
        assert_eq!(d.dual().unwrap(), q);
        assert!(c(2, &[&[1, 0]]).dual().is_err());
    }
}
