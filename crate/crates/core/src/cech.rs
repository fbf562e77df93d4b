//! Čech cohomology of `SF`, `U` and `W` on the fan topology.
//!
//! The finest cover `{Δ(σ_i)}` by minimal open sets of the maximal cones is
//! handled by a fast path: `Δ(σ_i) ∩ Δ(σ_j) = Δ(σ_i ∩ σ_j)`, so the term at
//! an index tuple `I` only depends on the cone `σ_I`. Arbitrary covers go
//! through a slower generic path that computes sections on each
//! intersection directly.
//!
//! Cochains are alternating: index tuples are strictly increasing and
//! `(δc)(i₀…i_{p+1}) = Σ_k (−1)^k c(i₀…î_k…i_{p+1})|`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::fan::{Fan, Subfan};
use crate::linalg::{
    homology, homology_group, FinAbGroup, Homology, IntComplex, IntMatrix, SaturatedBasis, SparseMatrix,
};
use crate::sheaf::{restriction_matrix, sf_group, sf_restrict, u_group, SupportFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SheafKind {
    /// Integral support functions.
    SF,
    /// `Δ' ↦ |Δ'|^⊥ ∩ M`.
    U,
    /// Invariant Weil divisors.
    W,
}

impl fmt::Display for SheafKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SheafKind::SF => "sf",
            SheafKind::U => "u",
            SheafKind::W => "w",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CechError {
    #[error("unknown sheaf `{0}` (expected sf, u or w)")]
    UnknownSheaf(String),
    #[error("the open sets do not cover the fan")]
    NotACover,
    #[error("cover element {0} is empty")]
    EmptyCoverElement(usize),
}

impl FromStr for SheafKind {
    type Err = CechError;

    fn from_str(s: &str) -> Result<Self, CechError> {
        match s.to_ascii_lowercase().as_str() {
            "sf" => Ok(SheafKind::SF),
            "u" => Ok(SheafKind::U),
            "w" => Ok(SheafKind::W),
            _ => Err(CechError::UnknownSheaf(s.to_string())),
        }
    }
}

/// Strictly increasing tuples of size `k` from `0..n`, in lexicographic
/// order.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut t: Vec<usize> = (0..k).collect();
    loop {
        out.push(t.clone());
        let mut i = k;
        while i > 0 && t[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        t[i - 1] += 1;
        for j in i..k {
            t[j] = t[j - 1] + 1;
        }
    }
}

/// Index tuples of one cochain degree and the position of each tuple's
/// block inside the cochain vector.
#[derive(Clone, Debug)]
pub struct CochainLayout {
    pub tuples: Vec<Vec<usize>>,
    pub ranks: Vec<usize>,
    pub offsets: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl CochainLayout {
    fn new(tuples: Vec<Vec<usize>>, ranks: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(ranks.len());
        let mut acc = 0;
        for &r in &ranks {
            offsets.push(acc);
            acc += r;
        }
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        CochainLayout { tuples, ranks, offsets, index }
    }

    pub fn total(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// The block of `c` belonging to `tuple`.
    pub fn block<'c>(&self, c: &'c [BigInt], tuple: &[usize]) -> &'c [BigInt] {
        let i = self.position(tuple).expect("tuple of this degree");
        &c[self.offsets[i]..self.offsets[i] + self.ranks[i]]
    }
}

/// Terms and restriction maps of a sheaf on a cover.
trait Sections {
    /// Number of cover elements.
    fn size(&self) -> usize;
    fn rank(&mut self, tuple: &[usize]) -> usize;
    /// Restriction from the term at `from` to the term at `to ⊇ from`.
    fn restrict(&mut self, from: &[usize], to: &[usize]) -> IntMatrix;
}

/// A truncated Čech complex over the degrees `lo..=hi`, with sparse
/// differentials.
#[derive(Clone, Debug)]
pub struct CechComplex {
    pub sheaf: SheafKind,
    /// First degree present.
    pub lo: usize,
    pub layouts: Vec<CochainLayout>,
    dims: Vec<usize>,
    maps: Vec<SparseMatrix>,
}

impl CechComplex {
    pub fn hi(&self) -> usize {
        self.lo + self.layouts.len() - 1
    }

    /// Ranks of `C^lo, …, C^hi`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn layout(&self, p: usize) -> &CochainLayout {
        &self.layouts[p - self.lo]
    }

    /// `d^p : C^p → C^{p+1}`, if both degrees lie in the window.
    pub fn differential(&self, p: usize) -> Option<&SparseMatrix> {
        p.checked_sub(self.lo).and_then(|q| self.maps.get(q))
    }

    /// Dense copy, indexed from degree `lo`.
    pub fn to_int_complex(&self) -> IntComplex {
        IntComplex::new(self.dims.clone(), self.maps.iter().map(SparseMatrix::to_dense).collect())
            .expect("differentials were checked at construction")
    }

    /// `H^p` as an abstract group, by sparse elimination.
    pub fn group(&self, p: usize) -> FinAbGroup {
        let q = p - self.lo;
        let d_in = q.checked_sub(1).and_then(|k| self.maps.get(k));
        homology_group(self.dims[q], d_in, self.maps.get(q))
    }
}

fn build<S: Sections>(sections: &mut S, sheaf: SheafKind, lo: usize, hi: usize) -> CechComplex {
    let n = sections.size();
    let layouts: Vec<CochainLayout> = (lo..=hi)
        .map(|p| {
            let ts = tuples(n, p + 1);
            let ranks = ts.iter().map(|t| sections.rank(t)).collect();
            CochainLayout::new(ts, ranks)
        })
        .collect();
    let mut maps = Vec::new();
    for w in layouts.windows(2) {
        let (src, dst) = (&w[0], &w[1]);
        let mut d = SparseMatrix::zeros(dst.total(), src.total());
        for (ji, j) in dst.tuples.iter().enumerate() {
            if dst.ranks[ji] == 0 {
                continue;
            }
            for k in 0..j.len() {
                let mut face = j.clone();
                face.remove(k);
                let ii = src.position(&face).expect("faces of tuples are tuples");
                if src.ranks[ii] == 0 {
                    continue;
                }
                let r = sections.restrict(&face, j);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                d.add_block(dst.offsets[ji], src.offsets[ii], &r, sign);
            }
        }
        maps.push(d);
    }
    for w in maps.windows(2) {
        assert!(w[1].mul(&w[0]).is_zero(), "Čech differentials square to zero");
    }
    let dims = layouts.iter().map(CochainLayout::total).collect();
    CechComplex { sheaf, lo, layouts, dims, maps }
}

// ---------------------------------------------------------------------------
// Finest cover

/// Term at `σ` of the finest-cover complex, with restriction to faces.
struct FinestSections<'f> {
    fan: &'f Fan,
    sheaf: SheafKind,
    meets: HashMap<Vec<usize>, usize>,
    perps: HashMap<usize, SaturatedBasis>,
    maps: HashMap<(usize, usize), IntMatrix>,
}

impl<'f> FinestSections<'f> {
    fn new(fan: &'f Fan, sheaf: SheafKind) -> Self {
        FinestSections { fan, sheaf, meets: HashMap::new(), perps: HashMap::new(), maps: HashMap::new() }
    }

    fn meet(&mut self, tuple: &[usize]) -> usize {
        if let Some(&id) = self.meets.get(tuple) {
            return id;
        }
        let id = self.fan.meet_of_maximal(tuple);
        self.meets.insert(tuple.to_vec(), id);
        id
    }

    fn perp(&mut self, cone: usize) -> &SaturatedBasis {
        let fan = self.fan;
        self.perps.entry(cone).or_insert_with(|| {
            SaturatedBasis::new(fan.cone(cone).perp().clone()).expect("σ^⊥ ∩ M is saturated")
        })
    }

    fn cone_rank(&mut self, cone: usize) -> usize {
        let c = self.fan.cone(cone);
        match self.sheaf {
            SheafKind::SF => c.dim(),
            SheafKind::U => c.perp().rows(),
            SheafKind::W => self.fan.cone_rays(cone).len(),
        }
    }

    /// Restriction from the term at `from` to the term at its face `to`.
    fn cone_map(&mut self, from: usize, to: usize) -> IntMatrix {
        if let Some(m) = self.maps.get(&(from, to)) {
            return m.clone();
        }
        let fan = self.fan;
        let m = match self.sheaf {
            SheafKind::SF => restriction_matrix(fan, from, to),
            SheafKind::U => {
                let src = fan.cone(from).perp().clone();
                let dst = self.perp(to);
                let cols: Vec<Vec<BigInt>> = src
                    .row_vecs()
                    .iter()
                    .map(|b| dst.coordinates(b).expect("σ^⊥ ⊆ τ^⊥ for a face τ"))
                    .collect();
                IntMatrix::from_rows(dst.dim(), &cols).transpose()
            }
            SheafKind::W => {
                let src = fan.cone_rays(from);
                let dst = fan.cone_rays(to);
                let mut m = IntMatrix::zeros(dst.len(), src.len());
                for (i, r) in dst.iter().enumerate() {
                    let j = src.binary_search(r).expect("face rays are rays");
                    m[(i, j)] = BigInt::from(1);
                }
                m
            }
        };
        self.maps.insert((from, to), m.clone());
        m
    }
}

impl Sections for FinestSections<'_> {
    fn size(&self) -> usize {
        self.fan.maximal().len()
    }

    fn rank(&mut self, tuple: &[usize]) -> usize {
        let c = self.meet(tuple);
        self.cone_rank(c)
    }

    fn restrict(&mut self, from: &[usize], to: &[usize]) -> IntMatrix {
        let a = self.meet(from);
        let b = self.meet(to);
        self.cone_map(a, b)
    }
}

/// Čech complex of the finest cover over degrees `lo..=hi`, clamped to
/// `0..#maximal`.
pub fn cech_complex_window(f: &Fan, sheaf: SheafKind, lo: usize, hi: usize) -> CechComplex {
    let top = f.maximal().len() - 1;
    let hi = hi.min(top);
    let lo = lo.min(hi);
    build(&mut FinestSections::new(f, sheaf), sheaf, lo, hi)
}

/// The whole finest-cover complex, degrees `0 … #maximal − 1`.
pub fn cech_complex(f: &Fan, sheaf: SheafKind) -> CechComplex {
    cech_complex_window(f, sheaf, 0, usize::MAX)
}

/// `H^p` of a sheaf on the fan.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub sheaf: SheafKind,
    pub degree: usize,
    pub group: FinAbGroup,
    /// Layout of `C^p`; `None` when `p` lies above the complex.
    pub layout: Option<CochainLayout>,
    /// Ranks of the cochain groups around degree `p`, starting at degree
    /// `window_start`.
    pub window_start: usize,
    pub window_dims: Vec<usize>,
    homology: Option<Homology>,
}

impl CohomologyResult {
    /// Cocycle representatives of the generators, torsion first.
    pub fn representatives(&self) -> &[Vec<BigInt>] {
        self.homology.as_ref().map_or(&[], |h| &h.representatives)
    }

    /// Generator orders, 0 for free generators.
    pub fn orders(&self) -> &[BigInt] {
        self.homology.as_ref().map_or(&[], |h| h.orders())
    }

    /// Canonical coordinates of the class of a cocycle.
    pub fn reduce(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.homology.as_ref().map_or_else(Vec::new, |h| h.reduce(z))
    }

    pub fn cocycle_from_coordinates(&self, coords: &[BigInt]) -> Vec<BigInt> {
        match &self.homology {
            Some(h) => h.cocycle_from_coordinates(coords),
            None => Vec::new(),
        }
    }
}

fn result_from(cx: &CechComplex, p: usize) -> CohomologyResult {
    let h = homology(&cx.to_int_complex(), p - cx.lo).expect("degree lies in the window");
    CohomologyResult {
        sheaf: cx.sheaf,
        degree: p,
        group: h.group.clone(),
        layout: Some(cx.layout(p).clone()),
        window_start: cx.lo,
        window_dims: cx.dims().to_vec(),
        homology: Some(h),
    }
}

fn trivial_result(sheaf: SheafKind, p: usize) -> CohomologyResult {
    CohomologyResult {
        sheaf,
        degree: p,
        group: FinAbGroup::trivial(),
        layout: None,
        window_start: p,
        window_dims: Vec::new(),
        homology: None,
    }
}

/// `H^p(Δ, F)` via the finest cover, as a group only. Uses sparse
/// elimination, so it stays fast on fans with many maximal cones.
pub fn cohomology_group(f: &Fan, sheaf: SheafKind, p: usize) -> FinAbGroup {
    if p >= f.maximal().len() {
        return FinAbGroup::trivial();
    }
    cech_complex_window(f, sheaf, p.saturating_sub(1), p + 1).group(p)
}

/// `H^p(Δ, F)` via the finest cover, with cocycle representatives and the
/// reduction map. Works on dense matrices; prefer [`cohomology_group`]
/// when only the group is needed.
pub fn cohomology(f: &Fan, sheaf: SheafKind, p: usize) -> CohomologyResult {
    if p >= f.maximal().len() {
        return trivial_result(sheaf, p);
    }
    let cx = cech_complex_window(f, sheaf, p.saturating_sub(1), p + 1);
    result_from(&cx, p)
}

// ---------------------------------------------------------------------------
// Arbitrary covers

/// Sections on a finite intersection `U_I` of cover elements, as a
/// saturated lattice inside a raw coordinate space.
#[derive(Clone)]
struct Term<'a> {
    subfan: Subfan<'a>,
    /// Max cones of `U_I` (SF) or ray ids (W); unused for U.
    support: Vec<usize>,
    lattice: SaturatedBasis,
}

struct CoverSections<'a> {
    fan: &'a Fan,
    sheaf: SheafKind,
    cover: Vec<Subfan<'a>>,
    terms: HashMap<Vec<usize>, Term<'a>>,
}

impl<'a> CoverSections<'a> {
    fn term(&mut self, tuple: &[usize]) -> &Term<'a> {
        if !self.terms.contains_key(tuple) {
            let mut s = self.cover[tuple[0]].clone();
            for &i in &tuple[1..] {
                s = s.intersection(&self.cover[i]);
            }
            let term = match self.sheaf {
                SheafKind::SF => {
                    let module = sf_group(&s);
                    Term {
                        support: module.max_ids.clone(),
                        lattice: SaturatedBasis::new(module.basis_matrix().clone())
                            .expect("kernels are saturated"),
                        subfan: s,
                    }
                }
                SheafKind::U => {
                    let u = u_group(&s);
                    Term {
                        support: Vec::new(),
                        lattice: SaturatedBasis::new(u.basis).expect("perps are saturated"),
                        subfan: s,
                    }
                }
                SheafKind::W => {
                    let rays = s.rays();
                    Term {
                        lattice: SaturatedBasis::new(IntMatrix::identity(rays.len())).expect("identity"),
                        support: rays,
                        subfan: s,
                    }
                }
            };
            self.terms.insert(tuple.to_vec(), term);
        }
        &self.terms[tuple]
    }

    /// Raw data of basis element `k` of the term at `from`, restricted to
    /// the subfan `target`, in the raw coordinates used for `target`.
    fn restrict_raw(&self, from: &Term<'a>, k: usize, target: &Subfan<'a>) -> Vec<BigInt> {
        let v = from.lattice.basis().row(k);
        match self.sheaf {
            SheafKind::SF => {
                let h = SupportFunction::from_flat(self.fan, &from.support, v);
                sf_restrict(self.fan, &h, target).expect("restriction to a subfan").flatten()
            }
            SheafKind::U => v.to_vec(),
            SheafKind::W => target
                .rays()
                .iter()
                .map(|r| v[from.support.binary_search(r).expect("subfan rays")].clone())
                .collect(),
        }
    }
}

impl<'a> Sections for CoverSections<'a> {
    fn size(&self) -> usize {
        self.cover.len()
    }

    fn rank(&mut self, tuple: &[usize]) -> usize {
        self.term(tuple).lattice.dim()
    }

    fn restrict(&mut self, from: &[usize], to: &[usize]) -> IntMatrix {
        self.term(from);
        self.term(to);
        let src = &self.terms[from];
        let dst = &self.terms[to];
        let cols: Vec<Vec<BigInt>> = (0..src.lattice.dim())
            .map(|k| {
                let raw = self.restrict_raw(src, k, &dst.subfan);
                dst.lattice.coordinates(&raw).expect("restrictions are sections")
            })
            .collect();
        IntMatrix::from_rows(dst.lattice.dim(), &cols).transpose()
    }
}

fn cover_sections<'a>(
    f: &'a Fan,
    cover: &[Subfan<'a>],
    sheaf: SheafKind,
) -> Result<CoverSections<'a>, CechError> {
    for (i, u) in cover.iter().enumerate() {
        if u.is_empty() {
            return Err(CechError::EmptyCoverElement(i));
        }
    }
    let covered = (0..f.num_cones()).all(|c| cover.iter().any(|u| u.contains(c)));
    if !covered {
        return Err(CechError::NotACover);
    }
    Ok(CoverSections { fan: f, sheaf, cover: cover.to_vec(), terms: HashMap::new() })
}

/// Čech complex of an arbitrary cover over degrees `lo..=hi`.
pub fn cover_complex(
    f: &Fan,
    cover: &[Subfan<'_>],
    sheaf: SheafKind,
    lo: usize,
    hi: usize,
) -> Result<CechComplex, CechError> {
    let mut s = cover_sections(f, cover, sheaf)?;
    let hi = hi.min(cover.len() - 1);
    let lo = lo.min(hi);
    Ok(build(&mut s, sheaf, lo, hi))
}

fn cover_cohomology(
    f: &Fan,
    cover: &[Subfan<'_>],
    sheaf: SheafKind,
    p: usize,
) -> Result<CohomologyResult, CechError> {
    if cover.is_empty() {
        return Err(CechError::NotACover);
    }
    if p >= cover.len() {
        cover_sections(f, cover, sheaf)?;
        return Ok(trivial_result(sheaf, p));
    }
    let cx = cover_complex(f, cover, sheaf, p.saturating_sub(1), p + 1)?;
    Ok(result_from(&cx, p))
}

/// `Ȟ^p` on the given cover, computed from the sections on each finite
/// intersection.
pub fn cohomology_on_cover(
    f: &Fan,
    cover: &[Subfan<'_>],
    sheaf: SheafKind,
    p: usize,
) -> Result<FinAbGroup, CechError> {
    if cover.is_empty() {
        return Err(CechError::NotACover);
    }
    if p >= cover.len() {
        cover_sections(f, cover, sheaf)?;
        return Ok(FinAbGroup::trivial());
    }
    Ok(cover_complex(f, cover, sheaf, p.saturating_sub(1), p + 1)?.group(p))
}

/// Whether `cover` is a Leray cover for `sheaf`: every finite intersection
/// of its elements has vanishing higher cohomology. Čech cohomology on such
/// a cover computes `H^p(Δ, F)`. Covers by minimal open sets `Δ(σ)` always
/// qualify.
pub fn is_admissible_cover(f: &Fan, cover: &[Subfan<'_>], sheaf: SheafKind) -> bool {
    if cover_sections(f, cover, sheaf).is_err() || cover.is_empty() {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    for k in 1..=cover.len() {
        for t in tuples(cover.len(), k) {
            let mut s = cover[t[0]].clone();
            for &i in &t[1..] {
                s = s.intersection(&cover[i]);
            }
            let ids: Vec<usize> = s.ids().iter().copied().collect();
            if !seen.insert(ids) {
                continue;
            }
            let m = s.maximal();
            if m.len() == 1 {
                continue;
            }
            let sub = s.to_fan();
            if (1..m.len()).any(|p| !cohomology_group(&sub, sheaf, p).is_trivial()) {
                return false;
            }
        }
    }
    true
}

/// The finest cover `{Δ(σ_i)}` as subfans.
pub fn finest_cover(f: &Fan) -> Vec<Subfan<'_>> {
    f.maximal().iter().map(|&c| f.minimal_open(c).expect("maximal cones are cones")).collect()
}

/// Induced map `Ȟ^p(coarse) → Ȟ^p(finest)`.
#[derive(Clone, Debug)]
pub struct RefinementMap {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    /// `λ(i)`: the cover element chosen for maximal cone `i`.
    pub refinement: Vec<usize>,
    /// Column `k` holds the canonical coordinates of the image of source
    /// generator `k`.
    pub matrix: IntMatrix,
}

impl RefinementMap {
    /// Whether the map is an isomorphism. Both groups must agree, and the
    /// image must generate the target.
    pub fn is_isomorphism(&self) -> bool {
        if self.source != self.target {
            return false;
        }
        let orders: Vec<BigInt> = self.target.torsion.clone();
        let n = self.matrix.rows();
        let mut rel = IntMatrix::zeros(n, orders.len());
        for (i, o) in orders.iter().enumerate() {
            rel[(i, i)] = o.clone();
        }
        crate::linalg::cokernel(&self.matrix.hstack(&rel)).is_trivial()
    }
}

pub fn refinement_map(
    f: &Fan,
    coarse: &[Subfan<'_>],
    sheaf: SheafKind,
    p: usize,
) -> Result<RefinementMap, CechError> {
    let src = cover_cohomology(f, coarse, sheaf, p)?;
    let dst = cohomology(f, sheaf, p);
    let lambda: Vec<usize> = f
        .maximal()
        .iter()
        .map(|&c| coarse.iter().position(|u| u.contains(c)).ok_or(CechError::NotACover))
        .collect::<Result<_, _>>()?;

    let nt = dst.orders().len();
    let (Some(src_layout), Some(dst_layout)) = (&src.layout, &dst.layout) else {
        let ns = src.orders().len();
        return Ok(RefinementMap {
            source: src.group,
            target: dst.group,
            refinement: lambda,
            matrix: IntMatrix::zeros(nt, ns),
        });
    };

    let mut sections = cover_sections(f, coarse, sheaf)?;
    let mut cols = Vec::new();
    for z in src.representatives() {
        let mut image = vec![BigInt::zero(); dst_layout.total()];
        for (ti, tuple) in dst_layout.tuples.iter().enumerate() {
            if dst_layout.ranks[ti] == 0 {
                continue;
            }
            let mut mapped: Vec<usize> = tuple.iter().map(|&i| lambda[i]).collect();
            let sign = match sort_sign(&mut mapped) {
                Some(s) => s,
                None => continue,
            };
            let sigma = f.meet_of_maximal(tuple);
            let target = f.minimal_open(sigma).expect("meets are cones");
            let block = src_layout.block(z, &mapped);
            let term = sections.term(&mapped).clone();
            let mut value = vec![BigInt::zero(); dst_layout.ranks[ti]];
            for (k, c) in block.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let raw = sections.restrict_raw(&term, k, &target);
                let coords = finest_coordinates(f, sheaf, sigma, &raw);
                for (v, x) in value.iter_mut().zip(coords) {
                    *v += c * x;
                }
            }
            let off = dst_layout.offsets[ti];
            for (j, v) in value.into_iter().enumerate() {
                image[off + j] += sign * v;
            }
        }
        cols.push(dst.reduce(&image));
    }
    let matrix = IntMatrix::from_rows(nt, &cols).transpose();
    Ok(RefinementMap { source: src.group, target: dst.group, refinement: lambda, matrix })
}

/// Sorts `t` in place; returns the sign of the sorting permutation, or
/// `None` if `t` has a repeated entry.
fn sort_sign(t: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Coordinates in the finest-cover term at `σ` of raw section data on
/// `Δ(σ)`.
fn finest_coordinates(f: &Fan, sheaf: SheafKind, sigma: usize, raw: &[BigInt]) -> Vec<BigInt> {
    match sheaf {
        // One maximal cone: the raw data already are dual coordinates.
        SheafKind::SF | SheafKind::W => raw.to_vec(),
        SheafKind::U => SaturatedBasis::new(f.cone(sigma).perp().clone())
            .expect("σ^⊥ ∩ M is saturated")
            .coordinates(raw)
            .expect("U(Δ') ⊆ σ^⊥"),
    }
}
