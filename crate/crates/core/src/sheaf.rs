//! Sections and restriction maps of the sheaves `SF` (integral support
//! functions), `U` (`Δ' ↦ |Δ'|^⊥ ∩ M`) and `W` (invariant Weil divisors) on
//! the fan topology.
//!
//! A support function on a subfan is stored by its restrictions to the
//! maximal cones. On a cone `σ` a linear function `N_σ → Z` is written in
//! the dual coordinates of the stored basis of `N_σ`: component `k` is the
//! value on the `k`-th basis vector.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::cone::IntVec;
use crate::fan::{Fan, Subfan};
use crate::linalg::{
    dot, kernel_basis, reduce_mod_hnf, solve_integer, IntMatrix, SaturatedBasis,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("vector is not in the support of the subfan")]
    NotInSupport,
    #[error("target is not contained in the subfan of the section")]
    NotASubfan,
    #[error("section data has the wrong shape")]
    Shape,
}

/// Element of `SF(Δ')`, given by its components on the maximal cones of
/// `Δ'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    /// Maximal cone ids, ascending.
    pub cones: Vec<usize>,
    /// One vector per cone, of length `dim σ`.
    pub components: Vec<IntVec>,
}

impl SupportFunction {
    pub fn zero(fan: &Fan, cones: &[usize]) -> Self {
        SupportFunction {
            cones: cones.to_vec(),
            components: cones.iter().map(|&c| vec![BigInt::zero(); fan.cone(c).dim()]).collect(),
        }
    }

    /// All components concatenated.
    pub fn flatten(&self) -> IntVec {
        self.components.iter().flatten().cloned().collect()
    }

    pub(crate) fn from_flat(fan: &Fan, cones: &[usize], flat: &[BigInt]) -> Self {
        let mut components = Vec::with_capacity(cones.len());
        let mut pos = 0;
        for &c in cones {
            let d = fan.cone(c).dim();
            components.push(flat[pos..pos + d].to_vec());
            pos += d;
        }
        SupportFunction { cones: cones.to_vec(), components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(Zero::is_zero)
    }
}

/// Restriction `Hom(N_σ, Z) → Hom(N_τ, Z)` for a face `τ ≤ σ`, as a
/// `dim τ × dim σ` matrix acting on dual coordinates.
pub fn restriction_matrix(fan: &Fan, from: usize, to: usize) -> IntMatrix {
    let sigma = fan.cone(from);
    let tau = fan.cone(to);
    let rows: Vec<IntVec> = tau
        .span_lattice()
        .row_vecs()
        .iter()
        .map(|b| sigma.span_basis().coordinates(b).expect("face lattice lies in the cone lattice"))
        .collect();
    IntMatrix::from_rows(sigma.dim(), &rows)
}

/// `M → Hom(N_σ, Z)` in dual coordinates: the span lattice basis itself.
pub fn linear_map_to_cone(fan: &Fan, cone: usize) -> &IntMatrix {
    fan.cone(cone).span_lattice()
}

/// `SF(Δ')` as an explicit free module.
#[derive(Clone, Debug)]
pub struct SupportFunctionModule {
    pub max_ids: Vec<usize>,
    pub basis: Vec<SupportFunction>,
    // rows: flattened basis vectors
    lattice: SaturatedBasis,
}

impl SupportFunctionModule {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Flattened basis, one row per basis element.
    pub fn basis_matrix(&self) -> &IntMatrix {
        self.lattice.basis()
    }

    /// Coordinates of `h` in the basis. `h` must live on the same maximal
    /// cones.
    pub fn coordinates(&self, h: &SupportFunction) -> Option<IntVec> {
        if h.cones != self.max_ids {
            return None;
        }
        self.lattice.coordinates(&h.flatten())
    }

    pub fn coordinates_flat(&self, flat: &[BigInt]) -> Option<IntVec> {
        self.lattice.coordinates(flat)
    }

    pub fn combination(&self, fan: &Fan, coeffs: &[BigInt]) -> SupportFunction {
        let flat = self.lattice.basis().vec_mul(coeffs);
        SupportFunction::from_flat(fan, &self.max_ids, &flat)
    }

    /// Matrix of `M → SF(Δ')` in basis coordinates (`rank × r`).
    pub fn linear_part(&self, fan: &Fan) -> IntMatrix {
        let r = fan.ambient_rank();
        let mut cols = Vec::with_capacity(r);
        for k in 0..r {
            let mut e = vec![BigInt::zero(); r];
            e[k] = BigInt::from(1);
            let h = linear_support_function(fan, &self.max_ids, &e);
            cols.push(self.coordinates(&h).expect("linear functions are support functions"));
        }
        IntMatrix::from_rows(self.rank(), &cols).transpose()
    }
}

/// Pairwise agreement constraints on the maximal cones `cones`: the kernel
/// of the returned matrix (acting on flattened components) is `SF`.
fn agreement_matrix(fan: &Fan, cones: &[usize]) -> IntMatrix {
    let dims: Vec<usize> = cones.iter().map(|&c| fan.cone(c).dim()).collect();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = dims.iter().sum();
    let mut blocks: Vec<IntMatrix> = Vec::new();
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let other = fan.cone_rays(cones[j]);
            let meet: Vec<usize> = fan
                .cone_rays(cones[i])
                .iter()
                .copied()
                .filter(|r| other.binary_search(r).is_ok())
                .collect();
            let tau = fan.find_by_rays(&meet).expect("intersection lies in the fan");
            let d = fan.cone(tau).dim();
            if d == 0 {
                continue;
            }
            let mut block = IntMatrix::zeros(d, total);
            block.set_block(0, offsets[i], &restriction_matrix(fan, cones[i], tau));
            block.add_scaled_block(0, offsets[j], &restriction_matrix(fan, cones[j], tau), -1);
            blocks.push(block);
        }
    }
    blocks.into_iter().fold(IntMatrix::zeros(0, total), |acc, b| acc.vstack(&b))
}

/// `SF(Δ')` computed as the kernel of the pairwise agreement map on the
/// maximal cones of the subfan.
pub fn sf_group(s: &Subfan<'_>) -> SupportFunctionModule {
    let fan = s.fan();
    let max_ids = s.maximal();
    let a = agreement_matrix(fan, &max_ids);
    let k = kernel_basis(&a.transpose());
    let basis = k.row_vecs().iter().map(|row| SupportFunction::from_flat(fan, &max_ids, row)).collect();
    let lattice = SaturatedBasis::new(k).expect("kernels are saturated");
    SupportFunctionModule { max_ids, basis, lattice }
}

/// Restriction of the linear function `m ∈ M` to the given maximal cones.
pub fn linear_support_function(fan: &Fan, cones: &[usize], m: &[BigInt]) -> SupportFunction {
    SupportFunction {
        cones: cones.to_vec(),
        components: cones.iter().map(|&c| linear_map_to_cone(fan, c).mul_vec(m)).collect(),
    }
}

pub fn sf_restrict(
    fan: &Fan,
    h: &SupportFunction,
    target: &Subfan<'_>,
) -> Result<SupportFunction, SheafError> {
    let mut components = Vec::new();
    let tmax = target.maximal();
    for &tau in &tmax {
        let k = h
            .cones
            .iter()
            .position(|&sigma| fan.faces_of(sigma).binary_search(&tau).is_ok())
            .ok_or(SheafError::NotASubfan)?;
        components.push(restriction_matrix(fan, h.cones[k], tau).mul_vec(&h.components[k]));
    }
    Ok(SupportFunction { cones: tmax, components })
}

pub fn sf_evaluate(fan: &Fan, h: &SupportFunction, v: &[BigInt]) -> Result<BigInt, SheafError> {
    for (&c, a) in h.cones.iter().zip(&h.components) {
        let cone = fan.cone(c);
        if cone.contains(v) {
            let coords = cone.span_basis().coordinates(v).expect("lattice point of the cone");
            return Ok(dot(&coords, a));
        }
    }
    Err(SheafError::NotInSupport)
}

/// `U(Δ') = |Δ'|^⊥ ∩ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UGroup {
    /// Rows form a basis, in HNF.
    pub basis: IntMatrix,
}

impl UGroup {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }
}

pub fn u_group(s: &Subfan<'_>) -> UGroup {
    let fan = s.fan();
    let rays: Vec<IntVec> = s.rays().iter().map(|&i| fan.rays()[i].clone()).collect();
    let cols = IntMatrix::from_rows(fan.ambient_rank(), &rays).transpose();
    UGroup { basis: kernel_basis(&cols) }
}

/// Invariant Weil divisor `Σ a_ρ·ρ` over the rays of a subfan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilDivisor {
    /// Ray indices into the fan's ray list, ascending.
    pub rays: Vec<usize>,
    pub coefficients: IntVec,
}

/// `h ↦ Σ_ρ h(n(ρ))·ρ`.
pub fn sf_to_w(fan: &Fan, h: &SupportFunction) -> WeilDivisor {
    let mut rays: Vec<usize> = h.cones.iter().flat_map(|&c| fan.cone_rays(c).iter().copied()).collect();
    rays.sort_unstable();
    rays.dedup();
    let coefficients = rays
        .iter()
        .map(|&r| sf_evaluate(fan, h, &fan.rays()[r]).expect("rays lie in the support"))
        .collect();
    WeilDivisor { rays, coefficients }
}

/// Matrix of `SF(Δ') → W(Δ')` from basis coordinates to ray coefficients.
pub fn sf_to_w_matrix(fan: &Fan, module: &SupportFunctionModule) -> IntMatrix {
    let cols: Vec<IntVec> = module.basis.iter().map(|h| sf_to_w(fan, h).coefficients).collect();
    let nrays = cols.first().map(Vec::len).unwrap_or_else(|| {
        let mut rays: Vec<usize> =
            module.max_ids.iter().flat_map(|&c| fan.cone_rays(c).iter().copied()).collect();
        rays.sort_unstable();
        rays.dedup();
        rays.len()
    });
    IntMatrix::from_rows(nrays, &cols).transpose()
}

/// Some `m ∈ M` with `h = m` on `|Δ'|`, reduced modulo `U(Δ')` to its
/// canonical representative, or `None` if `h` is not linear.
pub fn is_linear(fan: &Fan, h: &SupportFunction) -> Option<IntVec> {
    let r = fan.ambient_rank();
    let mut a = IntMatrix::zeros(0, r);
    let mut b: IntVec = Vec::new();
    for (&c, comp) in h.cones.iter().zip(&h.components) {
        a = a.vstack(linear_map_to_cone(fan, c));
        b.extend(comp.iter().cloned());
    }
    let m = solve_integer(&a, &b)?;
    let mut rays: Vec<IntVec> = Vec::new();
    for &c in &h.cones {
        rays.extend(fan.cone(c).rays().iter().cloned());
    }
    let u = kernel_basis(&IntMatrix::from_rows(r, &rays).transpose());
    Some(reduce_mod_hnf(&m, &u))
}
