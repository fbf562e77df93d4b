//! Fixture fans and seeded random fan generators shared by the integration
//! tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use toric_brauer::cone::{Cone, IntVec};
use toric_brauer::fan::Fan;
use toric_brauer::linalg::to_bigint_vec;

pub fn fan(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::from_i64(rank, rays, cones).expect("fixture is a valid fan")
}

pub fn blowup_a3() -> Fan {
    fan(3, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2], &[0, 2, 3], &[0, 1, 3]])
}

pub fn p1() -> Fan {
    fan(1, &[&[1], &[-1]], &[&[0], &[1]])
}

pub fn p2() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
}

pub fn p1xp1() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
}

/// Rays `(1,0), (0,1), (−1,a), (0,−1)`.
pub fn hirzebruch(a: i64) -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
}

/// `Δ(σ)` for `σ = cone{(0,1),(2,1)}`.
pub fn quadric() -> Fan {
    fan(2, &[&[0, 1], &[2, 1]], &[&[0, 1]])
}

/// Cone over a square: rays `e₁, e₂, e₁+e₃, e₂+e₃`.
pub fn square_cone() -> Fan {
    fan(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]], &[&[0, 1, 2, 3]])
}

pub fn two_rays() -> Fan {
    fan(2, &[&[1, 1], &[1, -1]], &[&[0], &[1]])
}

/// Weighted projective plane `P(1,1,2)`.
pub fn p112() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]])
}

/// Cyclic quotient cone of multiplicity 5.
pub fn a4_cone() -> Fan {
    fan(2, &[&[1, 0], &[1, 5]], &[&[0, 1]])
}

const CUBE: [&[i64]; 8] = [
    &[1, 1, 1],
    &[1, 1, -1],
    &[1, -1, 1],
    &[1, -1, -1],
    &[-1, 1, 1],
    &[-1, 1, -1],
    &[-1, -1, 1],
    &[-1, -1, -1],
];
const CUBE_FACES: [&[usize]; 6] =
    [&[0, 1, 2, 3], &[4, 5, 6, 7], &[0, 1, 4, 5], &[2, 3, 6, 7], &[0, 2, 4, 6], &[1, 3, 5, 7]];

/// Complete fan over the faces of the cube `[−1,1]³`.
pub fn cube_fan() -> Fan {
    fan(3, &CUBE, &CUBE_FACES)
}

/// Cones over the cube faces listed by index (0: x=1, 1: x=−1, 2: y=1,
/// 3: y=−1, 4: z=1, 5: z=−1).
pub fn cube_faces(which: &[usize]) -> Fan {
    let cones: Vec<&[usize]> = which.iter().map(|&i| CUBE_FACES[i]).collect();
    fan(3, &CUBE, &cones)
}

/// Three of the eight octants of `P¹×P¹×P¹`, meeting along a ray.
pub fn octant_corner() -> Fan {
    fan(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 0, 0], &[0, -1, 0]],
        &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]],
    )
}

/// Simplicial 3-dimensional fan with singular cones of multiplicity 2 and 3.
pub fn singular_3d() -> Fan {
    fan(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2], &[-1, 0, 3]], &[&[0, 1, 2], &[1, 2, 3]])
}

/// The fixed corpus of named fans. Resolutions stay small enough for the
/// `U` complexes in degree 3.
pub fn corpus() -> Vec<(&'static str, Fan)> {
    let mut v = vec![
        ("blowup_a3", blowup_a3()),
        ("torus2", Fan::torus(2)),
        ("torus3", Fan::torus(3)),
        ("p1", p1()),
        ("p2", p2()),
        ("p1xp1", p1xp1()),
        ("quadric", quadric()),
        ("square_cone", square_cone()),
        ("two_rays", two_rays()),
        ("p112", p112()),
        ("a4_cone", a4_cone()),
        ("cube_pair", cube_faces(&[0, 2])),
        ("cube_opposite", cube_faces(&[0, 1])),
        ("cube_corner", cube_faces(&[0, 2, 4])),
        ("octant_corner", octant_corner()),
        ("singular_3d", singular_3d()),
    ];
    for a in 0..4 {
        v.push((["hirzebruch0", "hirzebruch1", "hirzebruch2", "hirzebruch3"][a as usize], hirzebruch(a)));
    }
    v
}

/// Fans too large to resolve cheaply in the suite but fine for direct
/// cohomology checks.
pub fn large_fixtures() -> Vec<(&'static str, Fan)> {
    vec![("cube", cube_fan()), ("cube_band", cube_faces(&[0, 2, 1, 3]))]
}

fn random_primitive(rng: &mut ChaCha8Rng, rank: usize, bound: i64) -> IntVec {
    loop {
        let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            if g == 1 {
                return to_bigint_vec(&v);
            }
        }
    }
}

/// Random fan in `Z²`: rays sorted by angle, consecutive pairs turning by
/// less than `π` may form 2-cones.
fn random_fan_rank2(rng: &mut ChaCha8Rng) -> Fan {
    let n = rng.gen_range(1..=6);
    let mut rays: Vec<IntVec> = (0..n).map(|_| random_primitive(rng, 2, 3)).collect();
    rays.sort();
    rays.dedup();
    let angle = |v: &IntVec| {
        let x: f64 = v[0].to_string().parse().unwrap();
        let y: f64 = v[1].to_string().parse().unwrap();
        y.atan2(x)
    };
    rays.sort_by(|a, b| angle(a).partial_cmp(&angle(b)).unwrap());
    let k = rays.len();
    let mut cones: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; k];
    if k >= 2 {
        for i in 0..k {
            let j = (i + 1) % k;
            if j == i {
                continue;
            }
            let cross = &rays[i][0] * &rays[j][1] - &rays[i][1] * &rays[j][0];
            if cross > BigInt::from(0) && rng.gen_bool(0.7) {
                cones.push(vec![i, j]);
                used[i] = true;
                used[j] = true;
            }
        }
    }
    for (i, u) in used.iter().enumerate() {
        if !u {
            cones.push(vec![i]);
        }
    }
    Fan::new(2, &rays, &cones).expect("angular fans are fans")
}

/// Random fan in `Z³`: a subfan of a base fan followed by up to three
/// stellar subdivisions at small lattice points of the support.
fn random_fan_rank3(rng: &mut ChaCha8Rng) -> Fan {
    let bases = [cube_fan(), blowup_a3(), octant_corner(), singular_3d(), square_cone(), p1_cubed()];
    let base = bases.choose(rng).unwrap().clone();
    let mut f = random_subfan(rng, &base);
    for _ in 0..rng.gen_range(0..=3) {
        let v = random_primitive(rng, 3, 2);
        if let Ok(g) = f.stellar_subdivide(&v) {
            f = g;
        }
    }
    f
}

/// All eight octants of `P¹×P¹×P¹`.
pub fn p1_cubed() -> Fan {
    let mut rays: Vec<&[i64]> = Vec::new();
    rays.extend([&[1i64, 0, 0][..], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]]);
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for a in 0..2 {
        for b in 2..4 {
            for c in 4..6 {
                cones.push(vec![a, b, c]);
            }
        }
    }
    let cones: Vec<&[usize]> = cones.iter().map(Vec::as_slice).collect();
    fan(3, &rays, &cones)
}

/// Random nonempty selection of maximal cones of `f`, as a fan.
pub fn random_subfan(rng: &mut ChaCha8Rng, f: &Fan) -> Fan {
    let max = f.maximal();
    let mut keep: Vec<usize> = max.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
    if keep.is_empty() {
        keep.push(*max.choose(rng).unwrap());
    }
    let cones: Vec<Cone> = keep.iter().map(|&i| f.cone(i).clone()).collect();
    fan_from_cones(f.ambient_rank(), &cones)
}

pub fn fan_from_cones(rank: usize, cones: &[Cone]) -> Fan {
    let mut rays: Vec<IntVec> = cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
    rays.sort();
    rays.dedup();
    let idx: Vec<Vec<usize>> = cones
        .iter()
        .map(|c| c.rays().iter().map(|r| rays.binary_search(r).unwrap()).collect())
        .collect();
    Fan::new(rank, &rays, &idx).expect("cones of a fan form a fan")
}

/// Random fan of rank 1, 2 or 3 with at most `max_cones` maximal cones.
pub fn random_fan(rng: &mut ChaCha8Rng, max_cones: usize) -> Fan {
    loop {
        let f = match rng.gen_range(0..10) {
            0 => {
                let pick = rng.gen_range(0..4);
                match pick {
                    0 => Fan::torus(1),
                    1 => fan(1, &[&[1]], &[&[0]]),
                    2 => fan(1, &[&[-1]], &[&[0]]),
                    _ => p1(),
                }
            }
            1..=4 => random_fan_rank2(rng),
            _ => random_fan_rank3(rng),
        };
        if f.maximal().len() <= max_cones {
            return f;
        }
    }
}
