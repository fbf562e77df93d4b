//! Divisor-theoretic invariants as explicit cokernels.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::fan::{Fan, FanError};
use crate::linalg::{cokernel, snf, FinAbGroup, IntMatrix};
use crate::sheaf::{sf_group, u_group};

/// `Pic(X) = coker(M → SF(Δ))`.
pub fn picard(f: &Fan) -> FinAbGroup {
    let module = sf_group(&f.whole());
    cokernel(&module.linear_part(f))
}

/// The divisor map `M → ⊕_ρ Z`, `m ↦ (⟨m, n(ρ)⟩)_ρ`.
pub fn divisor_matrix(f: &Fan) -> IntMatrix {
    IntMatrix::from_rows(f.ambient_rank(), f.rays())
}

/// `Cl(X) = coker(M → ⊕_ρ Z·V(ρ))`.
pub fn class_group(f: &Fan) -> FinAbGroup {
    cokernel(&divisor_matrix(f))
}

/// Class group of the affine piece `U_σ`, i.e. of `Δ(σ)` taken as a fan in
/// the same lattice.
pub fn local_class_group(f: &Fan, sigma: usize) -> Result<FinAbGroup, FanError> {
    Ok(class_group(&f.standalone(sigma)?))
}

/// Ids of the cones that are not smooth.
pub fn singular_cones(f: &Fan) -> Vec<usize> {
    (0..f.num_cones()).filter(|&i| !f.cone(i).is_smooth()).collect()
}

/// Invariant factors of `N/L`, `L` the lattice generated by `|Δ| ∩ N`:
/// length `r`, ascending under divisibility, `1`s first and `0`s (free
/// factors) last.
pub fn nu_invariants(f: &Fan) -> Vec<BigInt> {
    let r = f.ambient_rank();
    let l = f.support_lattice();
    let mut nu = snf(&l).diagonal();
    nu.truncate(l.rows());
    nu.resize(r, BigInt::zero());
    nu
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub pic: FinAbGroup,
    pub cl: FinAbGroup,
    pub sf_rank: usize,
    pub u_rank: usize,
    pub singular_cone_ids: Vec<usize>,
    pub nu: Vec<BigInt>,
}

pub fn invariants(f: &Fan) -> InvariantReport {
    let whole = f.whole();
    let module = sf_group(&whole);
    InvariantReport {
        pic: cokernel(&module.linear_part(f)),
        cl: class_group(f),
        sf_rank: module.rank(),
        u_rank: u_group(&whole).rank(),
        singular_cone_ids: singular_cones(f),
        nu: nu_invariants(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kernel_basis, solve_integer, to_bigint_vec};
    use crate::sheaf::sf_to_w_matrix;

    fn blowup_a3() -> Fan {
        Fan::from_i64(3, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2], &[0, 2, 3], &[0, 1, 3]])
            .unwrap()
    }

    fn quadric() -> Fan {
        Fan::from_i64(2, &[&[0, 1], &[2, 1]], &[&[0, 1]]).unwrap()
    }

    fn z2() -> FinAbGroup {
        FinAbGroup::from_orders(&[BigInt::from(2)])
    }

    #[test]
    fn blowup_a3_report() {
        let rep = invariants(&blowup_a3());
        assert_eq!(rep.pic, FinAbGroup::free(1));
        assert_eq!(rep.cl, FinAbGroup::free(1));
        assert_eq!(rep.sf_rank, 4);
        assert_eq!(rep.u_rank, 0);
        assert!(rep.singular_cone_ids.is_empty());
        assert_eq!(rep.nu, to_bigint_vec(&[1, 1, 1]));
        // 0 → U → M → SF → Pic → 0
        assert_eq!(rep.pic.free_rank + 3 - rep.u_rank, rep.sf_rank);
    }

    #[test]
    fn torus_and_p2() {
        let t = invariants(&Fan::torus(2));
        assert!(t.pic.is_trivial() && t.cl.is_trivial());
        assert_eq!(t.u_rank, 2);
        assert_eq!(t.nu, to_bigint_vec(&[0, 0]));
        let p2 = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        assert_eq!(picard(&p2), FinAbGroup::free(1));
        assert_eq!(class_group(&p2), FinAbGroup::free(1));
    }

    #[test]
    fn quadric_cone() {
        let f = quadric();
        assert!(picard(&f).is_trivial());
        assert_eq!(class_group(&f), z2());
        let sing = singular_cones(&f);
        assert_eq!(sing, vec![f.maximal()[0]]);
        assert_eq!(local_class_group(&f, sing[0]).unwrap(), z2());
        assert_eq!(nu_invariants(&f), to_bigint_vec(&[1, 1]));
        for id in 0..f.num_cones() {
            if f.cone(id).dim() == 1 {
                assert!(local_class_group(&f, id).unwrap().is_trivial());
            }
        }
    }

    #[test]
    fn two_rays() {
        let f = Fan::from_i64(2, &[&[1, 1], &[1, -1]], &[&[0], &[1]]).unwrap();
        assert_eq!(nu_invariants(&f), to_bigint_vec(&[1, 2]));
    }

    #[test]
    fn picard_embeds_in_class_group() {
        // SF(Δ) → W(Δ) = ⊕ Z sends the image of M onto the image of M, so
        // it induces Pic → Cl; injectivity means the preimage of im(M) in
        // SF(Δ) is exactly im(M).
        for f in [blowup_a3(), quadric()] {
            let module = sf_group(&f.whole());
            let w = sf_to_w_matrix(&f, &module);
            let div = divisor_matrix(&f);
            let lin = module.linear_part(&f);
            // Pairs (a, m) with w·a = div·m; every such a must lie in im(lin).
            let neg_div: IntMatrix = &div * &IntMatrix::diagonal(
                f.ambient_rank(),
                f.ambient_rank(),
                &vec![BigInt::from(-1); f.ambient_rank()],
            );
            let k = kernel_basis(&w.transpose().vstack(&neg_div.transpose()));
            for x in k.row_vecs() {
                let a = &x[..module.rank()];
                assert!(solve_integer(&lin, a).is_some());
            }
        }
    }
}
