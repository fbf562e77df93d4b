//! Nonsingular subdivisions by repeated stellar subdivision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cone::{Cone, IntVec};
use crate::fan::{is_refinement, is_refinement_geometric, Fan};
use crate::linalg::{primitive, snf, IntMatrix};

/// Evidence that `output` is a nonsingular subdivision of `input`.
#[derive(Clone, Debug)]
pub struct ResolutionCertificate {
    pub input: Fan,
    pub output: Fan,
    /// Subdivision points, in the order used.
    pub points: Vec<IntVec>,
    pub refinement_ok: bool,
    pub support_equal: bool,
    pub all_smooth: bool,
    pub support_lattice_preserved: bool,
}

impl ResolutionCertificate {
    pub fn is_valid(&self) -> bool {
        self.refinement_ok && self.support_equal && self.all_smooth && self.support_lattice_preserved
    }

    /// Rays of the output that are not rays of the input.
    pub fn added_rays(&self) -> Vec<IntVec> {
        self.output.rays().iter().filter(|r| !self.input.rays().contains(r)).cloned().collect()
    }
}

/// Subdivide until every cone is simplicial, pulling existing rays only.
pub fn make_simplicial(f: &Fan) -> Fan {
    let mut fan = f.clone();
    // Ids are ordered by dimension, so the first non-simplicial cone has
    // the least dimension; pulling its first ray makes every cone of that
    // dimension through the ray simplicial without touching lower ones.
    while let Some(id) = (0..fan.num_cones()).find(|&i| !fan.cone(i).is_simplicial()) {
        let v = fan.cone(id).rays()[0].clone();
        fan = fan.stellar_subdivide(&v).expect("rays are primitive and in the support");
    }
    fan
}

/// Multiplicities of all cones, largest first.
fn multiplicity_profile(f: &Fan) -> Vec<BigInt> {
    let mut m: Vec<BigInt> =
        f.cones().iter().map(|c| c.multiplicity().expect("simplicial fan")).collect();
    m.sort_unstable_by(|a, b| b.cmp(a));
    m
}

/// Non-zero lattice point `Σ q_i n(ρ_i)`, `q_i ∈ [0,1)`, of a simplicial
/// cone of multiplicity > 1 with minimal `Σ q_i`, ties broken by the
/// lexicographic order of the point.
pub fn subdivision_point(c: &Cone) -> IntVec {
    let coords = c.ray_coordinates();
    let d = coords.rows();
    let det = coords.det();
    assert!(det.abs() > BigInt::one(), "cone is already smooth");
    let (adj, det) = adjugate(&coords, det);

    // Z^d / rowspace(C) ≅ ⊕ Z/s_i through y ↦ y·V; transversal y = t·V⁻¹.
    let sd = snf(&coords);
    let diag = sd.diagonal();
    let v_inv = crate::linalg::unimodular_inverse(&sd.v);

    let mut best: Option<(BigInt, IntVec)> = None;
    let mut t = vec![BigInt::zero(); d];
    loop {
        if t.iter().any(|x| !x.is_zero()) {
            let y = v_inv.vec_mul(&t);
            // q = y·C⁻¹ = (y·adj)/det; numerators of the fractional parts.
            let num: Vec<BigInt> = adj.vec_mul(&y).iter().map(|x| x.mod_floor(&det)).collect();
            let weight: BigInt = num.iter().sum();
            let mut point = coords.vec_mul(&num);
            for x in point.iter_mut() {
                debug_assert!((&*x % &det).is_zero());
                *x /= &det;
            }
            let point = primitive(&c.span_lattice().vec_mul(&point));
            let better = match &best {
                None => true,
                Some((w, p)) => (&weight, &point) < (w, p),
            };
            if better {
                best = Some((weight, point));
            }
        }
        // Next t in the box ∏ [0, s_i).
        let mut i = 0;
        loop {
            if i == d {
                return best.expect("multiplicity > 1 gives a non-zero point").1;
            }
            t[i] += 1;
            if t[i] < diag[i] {
                break;
            }
            t[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Adjugate of a square matrix with `det(adj·)` normalised to a positive
/// determinant: returns `(adj', |det|)` with `C·adj' = |det|·I`.
fn adjugate(c: &IntMatrix, det: BigInt) -> (IntMatrix, BigInt) {
    let d = c.rows();
    let mut adj = IntMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let rows: Vec<usize> = (0..d).filter(|&k| k != j).collect();
            let cols: Vec<usize> = (0..d).filter(|&k| k != i).collect();
            let minor = c.select_rows(&rows).select_cols(&cols).det();
            adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    if det.is_negative() {
        let neg = IntMatrix::diagonal(d, d, &vec![BigInt::from(-1); d]);
        (&adj * &neg, -det)
    } else {
        (adj, det)
    }
}

/// A nonsingular subdivision of `f`, with its certificate.
pub fn resolve(f: &Fan) -> (Fan, ResolutionCertificate) {
    let mut fan = make_simplicial(f);
    let mut points: Vec<IntVec> = Vec::new();
    let mut profile = multiplicity_profile(&fan);
    while profile.first().is_some_and(|m| !m.is_one()) {
        let top = &profile[0];
        let id = (0..fan.num_cones())
            .filter(|&i| &fan.cone(i).multiplicity().expect("simplicial") == top)
            .min_by(|&a, &b| fan.cone(a).rays().cmp(fan.cone(b).rays()))
            .expect("some cone attains the maximum");
        let v = subdivision_point(fan.cone(id));
        fan = fan.stellar_subdivide(&v).expect("subdivision point lies in the cone");
        let next = multiplicity_profile(&fan);
        assert!(next < profile, "multiplicities must decrease");
        profile = next;
        points.push(v);
    }
    if fan.key() == f.key() {
        // Nothing to do: return the input unchanged, provenance included.
        fan = f.clone();
    }
    let certificate = ResolutionCertificate {
        input: f.clone(),
        output: fan.clone(),
        points,
        refinement_ok: is_refinement(&fan, f),
        support_equal: is_refinement_geometric(&fan.without_provenance(), f),
        all_smooth: fan.is_smooth(),
        support_lattice_preserved: fan.support_lattice() == f.support_lattice(),
    };
    (fan, certificate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_bigint_vec;

    fn quadric() -> Fan {
        Fan::from_i64(2, &[&[0, 1], &[2, 1]], &[&[0, 1]]).unwrap()
    }

    fn square() -> Fan {
        Fan::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]], &[&[0, 1, 2, 3]]).unwrap()
    }

    #[test]
    fn quadric_gains_the_diagonal() {
        let (out, cert) = resolve(&quadric());
        assert!(cert.is_valid());
        assert_eq!(cert.added_rays(), vec![to_bigint_vec(&[1, 1])]);
        assert_eq!(out.maximal().len(), 2);
    }

    #[test]
    fn square_cone() {
        let s = make_simplicial(&square());
        assert!(s.is_simplicial());
        assert_eq!(s.maximal().len(), 2);
        assert_eq!(s.rays(), square().rays());
        assert!(is_refinement(&s, &square()));
        let (out, cert) = resolve(&square());
        assert!(cert.is_valid());
        assert!(out.is_smooth());
    }

    #[test]
    fn smooth_fans_are_unchanged() {
        for f in [Fan::torus(2), Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap()] {
            assert_eq!(make_simplicial(&f), f);
            let (out, cert) = resolve(&f);
            assert_eq!(out, f);
            assert!(cert.points.is_empty() && cert.is_valid());
        }
    }

    #[test]
    fn deep_cone_and_idempotence() {
        // A(4,1)-type cone: needs several subdivisions.
        let f = Fan::from_i64(2, &[&[1, 0], &[1, 5]], &[&[0, 1]]).unwrap();
        let (out, cert) = resolve(&f);
        assert!(cert.is_valid());
        assert_eq!(cert.points.len(), 4);
        let (again, c2) = resolve(&out);
        assert_eq!(again, out);
        assert!(c2.points.is_empty());
        // Three-dimensional cone of multiplicity 5.
        let g = Fan::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 2, 5]], &[&[0, 1, 2]]).unwrap();
        let (_, cert) = resolve(&g);
        assert!(cert.is_valid());
    }

    #[test]
    fn subdivision_point_rule() {
        let c = Cone::from_i64(2, &[&[0, 1], &[2, 1]]).unwrap();
        assert_eq!(subdivision_point(&c), to_bigint_vec(&[1, 1]));
        // Non-full-dimensional cone in Z^3.
        let c = Cone::from_i64(3, &[&[1, 0, 0], &[1, 2, 0]]).unwrap();
        assert_eq!(subdivision_point(&c), to_bigint_vec(&[1, 1, 0]));
    }
}
