//! Cohomological Brauer group `H²(X_ét, G_m)`: the split part
//! `H¹(Δ, SF)`, the smooth part from the invariant factors `ν` of `N/L`,
//! and explicit monomial 2-cocycles for classes of the split part.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cech::{cohomology, cohomology_group, CochainLayout, SheafKind};
use crate::cone::IntVec;
use crate::fan::Fan;
use crate::invariants::nu_invariants;
use crate::linalg::{dot, reduce_mod_hnf, snf, FinAbGroup};
use crate::resolution::{resolve, ResolutionCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("class coordinates have length {got}, expected {expected}")]
    InvalidClass { expected: usize, got: usize },
    #[error("cochain does not match the layout of C^1")]
    InvalidCochain,
}

/// `H²(K/X_ét, G_m) ≅ H²(X_Zar, O*) ≅ H¹(Δ, SF)`.
pub fn h2_split(f: &Fan) -> FinAbGroup {
    cohomology_group(f, SheafKind::SF, 1)
}

/// Zariski-side name for [`h2_split`].
pub fn zariski_h2(f: &Fan) -> FinAbGroup {
    h2_split(f)
}

/// Symbol algebra class `(m_i, m_j)` of order `order`; order `0` stands for
/// the divisible group `Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSymbol {
    pub order: BigInt,
    /// 1-based indices into the adapted basis of `M`, `i < j`.
    pub pair: (usize, usize),
}

impl CyclicSymbol {
    pub fn group_name(&self) -> String {
        if self.order.is_zero() {
            "Q/Z".to_string()
        } else {
            format!("Z/{}", self.order)
        }
    }
}

impl fmt::Display for CyclicSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (symbol (m{},m{}))", self.group_name(), self.pair.0, self.pair.1)
    }
}

/// Pair `(i, j)`, `i < j`, contributes `C(ν_i)`. Kept in one place so the
/// convention can be changed without touching callers.
fn symbol_order(nu: &[BigInt], i: usize, _j: usize) -> BigInt {
    nu[i].clone()
}

/// Symbols describing `H²(X̃_ét, G_m)` for a nonsingular subdivision `X̃`.
pub fn smooth_part(f: &Fan) -> Vec<CyclicSymbol> {
    symbols_from_nu(&nu_invariants(f))
}

fn symbols_from_nu(nu: &[BigInt]) -> Vec<CyclicSymbol> {
    let r = nu.len();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let order = symbol_order(nu, i, j);
            if !order.is_one() {
                out.push(CyclicSymbol { order, pair: (i + 1, j + 1) });
            }
        }
    }
    out
}

/// Basis `m_1, …, m_r` of `M` dual to a basis `n_1, …, n_r` of `N` with
/// `L = ⊕ ν_i·Z n_i`.
pub fn adapted_m_basis(f: &Fan) -> Vec<IntVec> {
    let l = f.support_lattice();
    let sd = snf(&l);
    (0..f.ambient_rank()).map(|i| sd.v.col(i)).collect()
}

#[derive(Clone, Debug)]
pub struct BrauerReport {
    pub split_part: FinAbGroup,
    pub nu: Vec<BigInt>,
    pub symbols: Vec<CyclicSymbol>,
    pub m_basis: Vec<IntVec>,
    pub certificate: ResolutionCertificate,
    /// The smooth part computed on the resolution agrees.
    pub resolution_agrees: bool,
}

impl BrauerReport {
    /// `H²(X_ét, G_m) = split ⊕ smooth`, as text.
    pub fn total(&self) -> String {
        let mut parts = Vec::new();
        if !self.split_part.is_trivial() {
            parts.push(self.split_part.to_string());
        }
        parts.extend(self.symbols.iter().map(CyclicSymbol::group_name));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn total_is_trivial(&self) -> bool {
        self.split_part.is_trivial() && self.symbols.is_empty()
    }

    /// Order of the finite part of the total torsion: split torsion times
    /// the orders of the finite symbols.
    pub fn finite_torsion_order(&self) -> BigInt {
        let mut n = self.split_part.torsion_order();
        for s in &self.symbols {
            if !s.order.is_zero() {
                n *= &s.order;
            }
        }
        n
    }
}

pub fn brauer_group(f: &Fan) -> BrauerReport {
    let (resolved, certificate) = resolve(f);
    let nu = nu_invariants(f);
    let symbols = symbols_from_nu(&nu);
    let resolution_agrees = smooth_part(&resolved) == symbols;
    BrauerReport {
        split_part: h2_split(f),
        nu,
        symbols,
        m_basis: adapted_m_basis(f),
        certificate,
        resolution_agrees,
    }
}

/// The 2-cocycle `(i,j,k) ↦ e(m(j,k))·e(m(i,j))/e(m(i,k))`, stored by its
/// exponents in `M`. Indices are positions in [`Fan::maximal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCocycle {
    pub lifts: BTreeMap<(usize, usize), IntVec>,
    pub exponents: BTreeMap<(usize, usize, usize), IntVec>,
}

impl MonomialCocycle {
    /// `φ(j,k,l) − φ(i,k,l) + φ(i,j,l) − φ(i,j,k) = 0` for all `i<j<k<l`.
    pub fn satisfies_cocycle_identity(&self, n: usize) -> bool {
        let get = |a, b, c| &self.exponents[&(a, b, c)];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let ok = (0..get(i, j, k).len()).all(|t| {
                            (&get(j, k, l)[t] - &get(i, k, l)[t] + &get(i, j, l)[t] - &get(i, j, k)[t])
                                .is_zero()
                        });
                        if !ok {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Each exponent is orthogonal to `σ_ijk`, so the monomial is a unit on
    /// `U_{σ_i} ∩ U_{σ_j} ∩ U_{σ_k}`.
    pub fn values_are_units(&self, f: &Fan) -> bool {
        self.exponents.iter().all(|(&(i, j, k), m)| {
            let sigma = f.cone(f.meet_of_maximal(&[i, j, k]));
            sigma.rays().iter().all(|r| dot(r, m).is_zero())
        })
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.values().flatten().all(Zero::is_zero)
    }
}

/// Monomial cocycle of an SF 1-cochain on the finest cover. Each component
/// `f(i,j) ∈ Hom(N_{σ_ij}, Z)` is lifted to the HNF-reduced `m(i,j) ∈ M`.
pub fn cocycle_from_cochain(
    f: &Fan,
    layout: &CochainLayout,
    z: &[BigInt],
) -> Result<MonomialCocycle, BrauerError> {
    if z.len() != layout.total() {
        return Err(BrauerError::InvalidCochain);
    }
    let n = f.maximal().len();
    let r = f.ambient_rank();
    let mut lifts = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let pos = layout.position(&[i, j]).ok_or(BrauerError::InvalidCochain)?;
            let tau = f.cone(f.meet_of_maximal(&[i, j]));
            if layout.ranks[pos] != tau.dim() {
                return Err(BrauerError::InvalidCochain);
            }
            let block = layout.block(z, &[i, j]);
            let m = if block.is_empty() {
                vec![BigInt::zero(); r]
            } else {
                reduce_mod_hnf(&tau.span_basis().lift(block), tau.perp())
            };
            lifts.insert((i, j), m);
        }
    }
    let mut exponents = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let phi: IntVec = (0..r)
                    .map(|t| &lifts[&(j, k)][t] + &lifts[&(i, j)][t] - &lifts[&(i, k)][t])
                    .collect();
                exponents.insert((i, j, k), phi);
            }
        }
    }
    Ok(MonomialCocycle { lifts, exponents })
}

/// Monomial cocycle of the class with the given canonical coordinates in
/// `H¹(Δ, SF)`.
pub fn cocycle_monomials(f: &Fan, class_coordinates: &[BigInt]) -> Result<MonomialCocycle, BrauerError> {
    let h = cohomology(f, SheafKind::SF, 1);
    let expected = h.orders().len();
    if class_coordinates.len() != expected {
        return Err(BrauerError::InvalidClass { expected, got: class_coordinates.len() });
    }
    let Some(layout) = &h.layout else {
        // One maximal cone: no pairs, no triples.
        return Ok(MonomialCocycle { lifts: BTreeMap::new(), exponents: BTreeMap::new() });
    };
    cocycle_from_cochain(f, layout, &h.cocycle_from_coordinates(class_coordinates))
}

/// One monomial cocycle per generator of `H¹(Δ, SF)`.
pub fn generator_cocycles(f: &Fan) -> Vec<MonomialCocycle> {
    let h = cohomology(f, SheafKind::SF, 1);
    let Some(layout) = &h.layout else {
        return Vec::new();
    };
    h.representatives()
        .iter()
        .map(|z| cocycle_from_cochain(f, layout, z).expect("representatives match the layout"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::cech_complex;
    use crate::linalg::to_bigint_vec;

    fn blowup_a3() -> Fan {
        Fan::from_i64(3, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2], &[0, 2, 3], &[0, 1, 3]])
            .unwrap()
    }

    #[test]
    fn blowup_a3_total_vanishes() {
        let rep = brauer_group(&blowup_a3());
        assert!(rep.split_part.is_trivial());
        assert!(rep.symbols.is_empty());
        assert_eq!(rep.total(), "0");
        assert!(rep.certificate.is_valid() && rep.resolution_agrees);
    }

    #[test]
    fn tori() {
        let s = smooth_part(&Fan::torus(2));
        assert_eq!(s, vec![CyclicSymbol { order: BigInt::zero(), pair: (1, 2) }]);
        assert_eq!(s[0].to_string(), "Q/Z (symbol (m1,m2))");
        let rep = brauer_group(&Fan::torus(3));
        let pairs: Vec<_> = rep.symbols.iter().map(|s| s.pair).collect();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(rep.total(), "Q/Z + Q/Z + Q/Z");
    }

    #[test]
    fn quadric_and_two_rays() {
        let q = Fan::from_i64(2, &[&[0, 1], &[2, 1]], &[&[0, 1]]).unwrap();
        let rep = brauer_group(&q);
        assert!(rep.total_is_trivial());
        let two = Fan::from_i64(2, &[&[1, 1], &[1, -1]], &[&[0], &[1]]).unwrap();
        assert_eq!(nu_invariants(&two), to_bigint_vec(&[1, 2]));
        assert!(smooth_part(&two).is_empty());
        // Three separate rays generating Z ⊕ 2Z ⊕ 2Z: ν = (1,2,2).
        let g = Fan::from_i64(3, &[&[1, 0, 0], &[1, 2, 0], &[1, 0, 2]], &[&[0], &[1], &[2]]).unwrap();
        let rep = brauer_group(&g);
        assert_eq!(rep.nu, to_bigint_vec(&[1, 2, 2]));
        assert_eq!(rep.symbols, vec![CyclicSymbol { order: BigInt::from(2), pair: (2, 3) }]);
        assert_eq!(rep.finite_torsion_order(), BigInt::from(2));
    }

    #[test]
    fn adapted_basis_is_dual_to_an_adapted_n_basis() {
        let two = Fan::from_i64(2, &[&[1, 1], &[1, -1]], &[&[0], &[1]]).unwrap();
        let m = adapted_m_basis(&two);
        let l = two.support_lattice();
        // Every ⟨ℓ, m_i⟩ is divisible by ν_i.
        let nu = nu_invariants(&two);
        for row in l.row_vecs() {
            for (mi, v) in m.iter().zip(&nu) {
                assert!((dot(&row, mi) % v).is_zero());
            }
        }
    }

    #[test]
    fn synthetic_cocycles() {
        let f = blowup_a3();
        let cx = cech_complex(&f, SheafKind::SF);
        let layout = cx.layout(1);
        let d0 = cx.differential(0).unwrap();
        // A coboundary: lifts differ from a 0-cochain only by σ_ij^⊥.
        let x = to_bigint_vec(&[1, 0, -2, 3, 1, 1, 0, 4, -1]);
        let z = d0.mul_vec(&x);
        let c = cocycle_from_cochain(&f, layout, &z).unwrap();
        assert!(c.satisfies_cocycle_identity(3));
        assert!(c.values_are_units(&f));
        let zero = cocycle_monomials(&f, &[]).unwrap();
        assert!(zero.is_zero());
        assert_eq!(
            cocycle_monomials(&f, &[BigInt::one()]),
            Err(BrauerError::InvalidClass { expected: 0, got: 1 })
        );
    }
}
