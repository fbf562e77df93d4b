//! Fans and their finite topology.
//!
//! Open sets of a fan are its subfans; the smallest open set around a cone
//! `σ` is the set of its faces, and the sets of faces of the maximal cones
//! form the finest open cover.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cone::{Cone, ConeError, IntVec};
use crate::linalg::{dot, row_basis, vec_gcd, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ray {index} has length {got}, expected {expected}")]
    RayDimension { index: usize, expected: usize, got: usize },
    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),
    #[error("cone {cone} refers to ray {ray}, but only {count} rays are given")]
    RayIndexOutOfRange { cone: usize, ray: usize, count: usize },
    #[error("cone {0} is not strongly convex")]
    NotStronglyConvex(usize),
    #[error("maximal cones {0} and {1} are the same cone")]
    DuplicateMaximalCone(usize, usize),
    #[error("the intersection of cones {0} and {1} is not a face of both")]
    IntersectionNotFace(usize, usize),
    #[error("unknown cone id {0}")]
    UnknownCone(usize),
    #[error("cone ids do not form a subfan (not closed under faces)")]
    NotASubfan,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("vector is not in the support of the fan")]
    NotInSupport,
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// Outcome of checking the fan axioms on raw input, listing every failure
/// rather than stopping at the first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FanValidation {
    /// Malformed input: bad lengths, zero rays, indices out of range.
    pub structural: Vec<FanError>,
    /// Input cones (by position) that contain a line.
    pub not_strongly_convex: Vec<usize>,
    pub duplicates: Vec<(usize, usize)>,
    /// Pairs of input cones whose intersection is not a face of both.
    pub intersection_not_face: Vec<(usize, usize)>,
}

impl FanValidation {
    pub fn is_valid(&self) -> bool {
        self.structural.is_empty()
            && self.not_strongly_convex.is_empty()
            && self.duplicates.is_empty()
            && self.intersection_not_face.is_empty()
    }

    pub fn first_error(&self) -> Option<FanError> {
        if let Some(e) = self.structural.first() {
            return Some(e.clone());
        }
        if let Some(&i) = self.not_strongly_convex.first() {
            return Some(FanError::NotStronglyConvex(i));
        }
        if let Some(&(i, j)) = self.duplicates.first() {
            return Some(FanError::DuplicateMaximalCone(i, j));
        }
        self.intersection_not_face.first().map(|&(i, j)| FanError::IntersectionNotFace(i, j))
    }
}

/// Sorted ray lists of the maximal cones; identifies a fan.
pub type FanKey = Vec<Vec<IntVec>>;

/// Record kept by [`Fan::stellar_subdivide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    /// Keys of every fan this one was obtained from by subdivision, oldest
    /// first.
    pub ancestors: Vec<FanKey>,
    /// For each cone id, the id of the smallest cone of the immediate
    /// parent containing it.
    pub parent_cone: Vec<usize>,
}

/// A validated fan. Cone ids follow the order (dimension, ray list).
#[derive(Clone, Debug)]
pub struct Fan {
    ambient_rank: usize,
    rays: Vec<IntVec>,
    cones: Vec<Cone>,
    cone_rays: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    maximal: Vec<usize>,
    by_rays: HashMap<Vec<usize>, usize>,
    provenance: Option<Provenance>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.key() == other.key()
    }
}

impl Eq for Fan {}

/// Checks the fan axioms for raw input without building the fan.
pub fn validate(ambient_rank: usize, rays: &[IntVec], max_cones: &[Vec<usize>]) -> FanValidation {
    validate_inner(ambient_rank, rays, max_cones).0
}

fn validate_inner(
    ambient_rank: usize,
    rays: &[IntVec],
    max_cones: &[Vec<usize>],
) -> (FanValidation, Vec<Option<Cone>>) {
    let mut report = FanValidation::default();
    for (i, r) in rays.iter().enumerate() {
        if r.len() != ambient_rank {
            report.structural.push(FanError::RayDimension {
                index: i,
                expected: ambient_rank,
                got: r.len(),
            });
        } else if r.iter().all(Zero::is_zero) {
            report.structural.push(FanError::ZeroRay(i));
        }
    }
    for (c, idx) in max_cones.iter().enumerate() {
        for &k in idx {
            if k >= rays.len() {
                report.structural.push(FanError::RayIndexOutOfRange {
                    cone: c,
                    ray: k,
                    count: rays.len(),
                });
            }
        }
    }
    if !report.structural.is_empty() {
        return (report, Vec::new());
    }

    let cones: Vec<Option<Cone>> = max_cones
        .iter()
        .enumerate()
        .map(|(c, idx)| {
            let gens: Vec<IntVec> = idx.iter().map(|&k| rays[k].clone()).collect();
            match Cone::new(ambient_rank, &gens) {
                Ok(cone) => Some(cone),
                Err(ConeError::NotStronglyConvex) => {
                    report.not_strongly_convex.push(c);
                    None
                }
                Err(e) => unreachable!("lengths were checked: {e}"),
            }
        })
        .collect();

    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let (Some(a), Some(b)) = (&cones[i], &cones[j]) else {
                continue;
            };
            if a == b {
                report.duplicates.push((i, j));
                continue;
            }
            let meet = a.intersect(b);
            if !meet.is_face_of(a) || !meet.is_face_of(b) {
                report.intersection_not_face.push((i, j));
            }
        }
    }
    (report, cones)
}

impl Fan {
    /// Builds a fan from rays and the ray-index lists of its maximal cones,
    /// closing under faces and checking all fan axioms. An empty cone list
    /// gives the fan `{0}`.
    pub fn new(
        ambient_rank: usize,
        rays: &[IntVec],
        max_cones: &[Vec<usize>],
    ) -> Result<Fan, FanError> {
        let (report, cones) = validate_inner(ambient_rank, rays, max_cones);
        if let Some(e) = report.first_error() {
            return Err(e);
        }
        Ok(Fan::from_cones(ambient_rank, cones.into_iter().map(|c| c.unwrap()).collect()))
    }

    pub fn from_i64(
        ambient_rank: usize,
        rays: &[&[i64]],
        max_cones: &[&[usize]],
    ) -> Result<Fan, FanError> {
        let rays: Vec<IntVec> =
            rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let max: Vec<Vec<usize>> = max_cones.iter().map(|c| c.to_vec()).collect();
        Fan::new(ambient_rank, &rays, &max)
    }

    /// The fan `{0}`, whose toric variety is the torus.
    pub fn torus(ambient_rank: usize) -> Fan {
        Fan::from_cones(ambient_rank, Vec::new())
    }

    /// Assembles a fan from cones already known to satisfy the intersection
    /// axiom pairwise.
    fn from_cones(ambient_rank: usize, generating: Vec<Cone>) -> Fan {
        let mut ray_set: BTreeSet<IntVec> = BTreeSet::new();
        for c in &generating {
            ray_set.extend(c.rays().iter().cloned());
        }
        let rays: Vec<IntVec> = ray_set.into_iter().collect();
        let ray_id = |r: &IntVec| rays.binary_search(r).expect("ray collected above");

        let mut found: BTreeMap<Vec<usize>, Option<Cone>> = BTreeMap::new();
        found.insert(Vec::new(), Some(Cone::zero(ambient_rank)));
        for c in &generating {
            for face in c.face_ray_sets() {
                let mut ids: Vec<usize> = face.iter().map(|&k| ray_id(&c.rays()[k])).collect();
                ids.sort_unstable();
                let whole = face.len() == c.rays().len();
                let entry = found.entry(ids).or_insert(None);
                if whole && entry.is_none() {
                    *entry = Some(c.clone());
                }
            }
        }
        let mut cones: Vec<Cone> = found
            .into_iter()
            .map(|(ids, cone)| {
                cone.unwrap_or_else(|| {
                    let gens: Vec<IntVec> = ids.iter().map(|&k| rays[k].clone()).collect();
                    Cone::new(ambient_rank, &gens).expect("faces are strongly convex")
                })
            })
            .collect();
        cones.sort();

        let cone_rays: Vec<Vec<usize>> =
            cones.iter().map(|c| c.rays().iter().map(ray_id).collect()).collect();
        let by_rays: HashMap<Vec<usize>, usize> =
            cone_rays.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        let faces: Vec<Vec<usize>> = (0..cones.len())
            .map(|i| (0..cones.len()).filter(|&j| subset(&cone_rays[j], &cone_rays[i])).collect())
            .collect();
        let maximal: Vec<usize> = (0..cones.len())
            .filter(|&i| {
                !(0..cones.len()).any(|j| {
                    j != i
                        && cone_rays[j].len() > cone_rays[i].len()
                        && subset(&cone_rays[i], &cone_rays[j])
                })
            })
            .collect();
        Fan { ambient_rank, rays, cones, cone_rays, faces, maximal, by_rays, provenance: None }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// `Δ(1)`: primitive ray generators, sorted.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, id: usize) -> &Cone {
        &self.cones[id]
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    /// Ray indices (into [`Fan::rays`]) of a cone.
    pub fn cone_rays(&self, id: usize) -> &[usize] {
        &self.cone_rays[id]
    }

    /// Ids of all faces of a cone, itself included.
    pub fn faces_of(&self, id: usize) -> &[usize] {
        &self.faces[id]
    }

    /// Ids of the inclusion-maximal cones, ascending.
    pub fn maximal(&self) -> &[usize] {
        &self.maximal
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// Id of the cone with exactly these rays (indices into [`Fan::rays`]).
    pub fn find_by_rays(&self, ray_ids: &[usize]) -> Option<usize> {
        let mut key = ray_ids.to_vec();
        key.sort_unstable();
        self.by_rays.get(&key).copied()
    }

    pub fn find(&self, cone: &Cone) -> Option<usize> {
        let ids: Option<Vec<usize>> =
            cone.rays().iter().map(|r| self.rays.binary_search(r).ok()).collect();
        ids.and_then(|ids| self.find_by_rays(&ids))
    }

    pub fn key(&self) -> FanKey {
        self.maximal.iter().map(|&i| self.cones[i].rays().to_vec()).collect()
    }

    /// Ray-index lists of the maximal cones, as written to fan files.
    pub fn max_cone_ray_ids(&self) -> Vec<Vec<usize>> {
        self.maximal.iter().map(|&i| self.cone_rays[i].clone()).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(Cone::is_smooth)
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(Cone::is_simplicial)
    }

    /// Whether `v` lies in `|Δ|`.
    pub fn support_contains(&self, v: &[BigInt]) -> bool {
        self.maximal.iter().any(|&i| self.cones[i].contains(v))
    }

    /// Smallest cone containing `v`, if `v ∈ |Δ|`.
    pub fn carrier(&self, v: &[BigInt]) -> Option<usize> {
        (0..self.cones.len()).find(|&i| self.cones[i].contains(v))
    }

    /// Smallest open set containing the cone: all of its faces.
    pub fn minimal_open(&self, id: usize) -> Result<Subfan<'_>, FanError> {
        if id >= self.cones.len() {
            return Err(FanError::UnknownCone(id));
        }
        Ok(Subfan { fan: self, ids: self.faces[id].iter().copied().collect() })
    }

    pub fn whole(&self) -> Subfan<'_> {
        Subfan { fan: self, ids: (0..self.cones.len()).collect() }
    }

    /// The subfan `Δ(σ)` of a cone as a fan in its own right.
    pub fn standalone(&self, id: usize) -> Result<Fan, FanError> {
        if id >= self.cones.len() {
            return Err(FanError::UnknownCone(id));
        }
        let c = &self.cones[id];
        if c.is_zero() {
            return Ok(Fan::torus(self.ambient_rank));
        }
        Ok(Fan::from_cones(self.ambient_rank, vec![c.clone()]))
    }

    /// Intersections of the maximal cones over index sets of size at most
    /// `max_depth + 1`. Indices refer to positions in [`Fan::maximal`].
    pub fn nerve(&self, max_depth: usize) -> Nerve {
        let m = self.maximal.len();
        let mut entries = BTreeMap::new();
        let mut frontier: Vec<(Vec<usize>, Vec<usize>)> =
            (0..m).map(|i| (vec![i], self.cone_rays[self.maximal[i]].clone())).collect();
        for depth in 0..=max_depth {
            let mut next = Vec::new();
            for (set, rays) in frontier {
                let id = self.find_by_rays(&rays).expect("intersection of cones lies in the fan");
                debug_assert_eq!(
                    set.iter().fold(None::<BTreeSet<usize>>, |acc, &i| {
                        let f: BTreeSet<usize> = self.faces[self.maximal[i]].iter().copied().collect();
                        Some(match acc {
                            None => f,
                            Some(a) => a.intersection(&f).copied().collect(),
                        })
                    }),
                    Some(self.faces[id].iter().copied().collect()),
                    "minimal open sets intersect in the minimal open set of the intersection"
                );
                if depth < max_depth {
                    let last = *set.last().unwrap();
                    for j in last + 1..m {
                        let other = &self.cone_rays[self.maximal[j]];
                        let meet: Vec<usize> =
                            rays.iter().copied().filter(|r| other.binary_search(r).is_ok()).collect();
                        let mut s = set.clone();
                        s.push(j);
                        next.push((s, meet));
                    }
                }
                entries.insert(set, id);
            }
            frontier = next;
        }
        Nerve { entries }
    }

    /// Id of `σ_I = ∩_{i∈I} σ_i` for positions `I` into [`Fan::maximal`].
    pub fn meet_of_maximal(&self, positions: &[usize]) -> usize {
        let mut rays = self.cone_rays[self.maximal[positions[0]]].clone();
        for &p in &positions[1..] {
            let other = &self.cone_rays[self.maximal[p]];
            rays.retain(|r| other.binary_search(r).is_ok());
        }
        self.find_by_rays(&rays).expect("intersection of cones lies in the fan")
    }

    /// Stellar subdivision at the primitive lattice vector `v ∈ |Δ|`: every
    /// cone `σ ∋ v` is replaced by the cones `τ + R≥0·v` for faces `τ` of
    /// `σ` not containing `v`.
    pub fn stellar_subdivide(&self, v: &[BigInt]) -> Result<Fan, FanError> {
        if v.len() != self.ambient_rank {
            return Err(FanError::RankMismatch(v.len(), self.ambient_rank));
        }
        if !vec_gcd(v).is_one() {
            return Err(FanError::NotPrimitive);
        }
        if !self.support_contains(v) {
            return Err(FanError::NotInSupport);
        }
        let mut pieces: Vec<Cone> = Vec::new();
        for &i in &self.maximal {
            let sigma = &self.cones[i];
            if !sigma.contains(v) {
                pieces.push(sigma.clone());
                continue;
            }
            for f in sigma.facet_normals() {
                if dot(f, v).is_zero() {
                    continue;
                }
                let mut gens: Vec<IntVec> =
                    sigma.rays().iter().filter(|r| dot(f, r).is_zero()).cloned().collect();
                gens.push(v.to_vec());
                pieces.push(Cone::new(self.ambient_rank, &gens).expect("piece of a cone"));
            }
        }
        pieces.sort();
        pieces.dedup();
        let mut fine = Fan::from_cones(self.ambient_rank, pieces);
        let parent_cone: Vec<usize> = fine
            .cones
            .iter()
            .map(|c| {
                (0..self.cones.len())
                    .find(|&j| self.cones[j].contains_cone(c))
                    .expect("pieces lie in cones of the parent")
            })
            .collect();
        let mut ancestors = self.provenance.as_ref().map(|p| p.ancestors.clone()).unwrap_or_default();
        ancestors.push(self.key());
        fine.provenance = Some(Provenance { ancestors, parent_cone });
        Ok(fine)
    }

    /// Basis of the subgroup `L ⊆ N` generated by `|Δ| ∩ N`, i.e. the sum of
    /// the span lattices of the maximal cones.
    pub fn support_lattice(&self) -> IntMatrix {
        let mut rows: Vec<IntVec> = Vec::new();
        for &i in &self.maximal {
            rows.extend(self.cones[i].span_lattice().row_vecs());
        }
        row_basis(&IntMatrix::from_rows(self.ambient_rank, &rows))
    }

    /// Drops provenance, e.g. to force the geometric refinement check.
    pub fn without_provenance(&self) -> Fan {
        let mut f = self.clone();
        f.provenance = None;
        f
    }
}

/// `fine` refines `coarse`: every cone of `fine` lies in a cone of
/// `coarse` and the supports agree. Fans obtained from `coarse` by stellar
/// subdivision are recognised from their provenance; otherwise the check is
/// geometric (see [`is_refinement_geometric`]).
pub fn is_refinement(fine: &Fan, coarse: &Fan) -> bool {
    if fine.ambient_rank != coarse.ambient_rank {
        return false;
    }
    if let Some(p) = &fine.provenance {
        if p.ancestors.contains(&coarse.key()) {
            return true;
        }
    }
    is_refinement_geometric(fine, coarse)
}

/// Containment of every cone of `fine` in a cone of `coarse`.
pub fn cones_contained(fine: &Fan, coarse: &Fan) -> bool {
    fine.maximal
        .iter()
        .all(|&i| coarse.maximal.iter().any(|&j| coarse.cones[j].contains_cone(&fine.cones[i])))
}

/// `|coarse| ⊆ |fine|`, certified by comparing exact volumes of truncated
/// cones: for each maximal cone of `coarse`, the full-dimensional cones of
/// `fine` inside it must have total volume equal to its own. Assumes
/// [`cones_contained`] so that those cones tile a subset of it.
pub fn supports_cover(fine: &Fan, coarse: &Fan) -> bool {
    for &j in &coarse.maximal {
        let sigma = &coarse.cones[j];
        if sigma.is_zero() {
            continue;
        }
        let weight: IntVec = (0..sigma.ambient_rank())
            .map(|k| sigma.facet_normals().iter().map(|f| f[k].clone()).sum())
            .collect();
        let target = truncated_volume(sigma, sigma, &weight);
        let covered: BigRational = fine
            .cones
            .iter()
            .filter(|c| c.dim() == sigma.dim() && sigma.contains_cone(c))
            .map(|c| truncated_volume(c, sigma, &weight))
            .sum();
        if covered != target {
            return false;
        }
    }
    true
}

pub fn is_refinement_geometric(fine: &Fan, coarse: &Fan) -> bool {
    fine.ambient_rank == coarse.ambient_rank
        && cones_contained(fine, coarse)
        && supports_cover(fine, coarse)
}

/// Volume (up to the constant `1/d!`) of `{x ∈ c : ⟨weight, x⟩ ≤ 1}`,
/// measured in the span lattice of `frame`, which must have the same span
/// as `c`.
fn truncated_volume(c: &Cone, frame: &Cone, weight: &[BigInt]) -> BigRational {
    let mut total = BigRational::zero();
    for simplex in triangulate(c) {
        let rows: Vec<IntVec> = simplex
            .iter()
            .map(|r| frame.span_basis().coordinates(r).expect("same span"))
            .collect();
        let det = IntMatrix::from_rows(frame.dim(), &rows).det().abs();
        let scale: BigInt = simplex.iter().map(|r| dot(weight, r)).product();
        debug_assert!(scale.is_positive());
        total += BigRational::new(det, scale);
    }
    total
}

/// Pulling triangulation of a cone into simplicial cones, using only its
/// own rays.
pub fn triangulate(c: &Cone) -> Vec<Vec<IntVec>> {
    if c.is_simplicial() {
        return vec![c.rays().to_vec()];
    }
    let apex = &c.rays()[0];
    let mut out = Vec::new();
    for f in c.facet_normals() {
        if dot(f, apex).is_zero() {
            continue;
        }
        let gens: Vec<IntVec> = c.rays().iter().filter(|r| dot(f, r).is_zero()).cloned().collect();
        let facet = Cone::new(c.ambient_rank(), &gens).expect("facet of a cone");
        for mut s in triangulate(&facet) {
            s.push(apex.clone());
            out.push(s);
        }
    }
    out
}

/// Open subset of a fan: a set of cone ids closed under faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfan<'a> {
    fan: &'a Fan,
    ids: BTreeSet<usize>,
}

impl<'a> Subfan<'a> {
    pub fn new(fan: &'a Fan, ids: impl IntoIterator<Item = usize>) -> Result<Self, FanError> {
        let ids: BTreeSet<usize> = ids.into_iter().collect();
        for &i in &ids {
            if i >= fan.cones.len() {
                return Err(FanError::UnknownCone(i));
            }
            if fan.faces[i].iter().any(|f| !ids.contains(f)) {
                return Err(FanError::NotASubfan);
            }
        }
        Ok(Subfan { fan, ids })
    }

    /// Union of the minimal open sets of the given cones.
    pub fn generated_by(fan: &'a Fan, cones: &[usize]) -> Result<Self, FanError> {
        let mut ids = BTreeSet::new();
        for &c in cones {
            if c >= fan.cones.len() {
                return Err(FanError::UnknownCone(c));
            }
            ids.extend(fan.faces[c].iter().copied());
        }
        Ok(Subfan { fan, ids })
    }

    pub fn fan(&self) -> &'a Fan {
        self.fan
    }

    pub fn ids(&self) -> &BTreeSet<usize> {
        &self.ids
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.ids.contains(&id)
    }

    pub fn is_subset(&self, other: &Subfan<'_>) -> bool {
        self.ids.is_subset(&other.ids)
    }

    pub fn intersection(&self, other: &Subfan<'a>) -> Subfan<'a> {
        Subfan { fan: self.fan, ids: self.ids.intersection(&other.ids).copied().collect() }
    }

    pub fn union(&self, other: &Subfan<'a>) -> Subfan<'a> {
        Subfan { fan: self.fan, ids: self.ids.union(&other.ids).copied().collect() }
    }

    /// Cones of the subfan that are not proper faces of another of its
    /// cones.
    pub fn maximal(&self) -> Vec<usize> {
        self.ids
            .iter()
            .copied()
            .filter(|&i| {
                !self.ids.iter().any(|&j| j != i && self.fan.faces[j].binary_search(&i).is_ok())
            })
            .collect()
    }

    /// The subfan as a fan in its own right (same lattice).
    pub fn to_fan(&self) -> Fan {
        let cones = self.maximal().iter().map(|&i| self.fan.cones[i].clone()).collect();
        Fan::from_cones(self.fan.ambient_rank, cones)
    }

    /// Ray indices (into the fan's ray list) of the one-dimensional cones.
    pub fn rays(&self) -> Vec<usize> {
        let mut out: BTreeSet<usize> = BTreeSet::new();
        for &i in &self.ids {
            out.extend(self.fan.cone_rays[i].iter().copied());
        }
        out.into_iter().collect()
    }
}

/// Intersections `σ_I` of maximal cones over index sets `I`.
#[derive(Clone, Debug)]
pub struct Nerve {
    entries: BTreeMap<Vec<usize>, usize>,
}

impl Nerve {
    pub fn get(&self, positions: &[usize]) -> Option<usize> {
        self.entries.get(positions).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &usize)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
