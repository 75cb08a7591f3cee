//! Explicit two-qubit construction of a bipartite state: the single particle
//! states are written in an orthonormal basis, the partial trace is taken
//! numerically and Tr rho^2 computed entry by entry.

use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};
use tomokit::infotheory::BipartiteSpec;

type C = Complex64;

fn random_unit_disc(rng: &mut StdRng) -> C {
    let r: f64 = rng.gen::<f64>().sqrt() * 0.999;
    C::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `(1, 0)` and a second vector with `<first|second> = c`.
fn pair(c: C) -> ([C; 2], [C; 2]) {
    ([C::new(1.0, 0.0), C::new(0.0, 0.0)], [c, C::new((1.0 - c.norm_sqr()).sqrt(), 0.0)])
}

pub fn purity(bp: &BipartiteSpec) -> f64 {
    let (j, l) = pair(bp.c_lj.conj());
    let (k, m) = pair(bp.c_km);
    let mut psi = [[C::new(0.0, 0.0); 2]; 2];
    for p in 0..2 {
        for q in 0..2 {
            psi[p][q] = bp.a * j[p] * k[q] + bp.b * l[p] * m[q];
        }
    }
    let mut rho = [[C::new(0.0, 0.0); 2]; 2];
    for p in 0..2 {
        for r in 0..2 {
            rho[p][r] = (0..2).map(|q| psi[p][q] * psi[r][q].conj()).sum();
        }
    }
    rho.iter().flatten().map(|z| z.norm_sqr()).sum()
}

pub fn random_specs(count: usize) -> Vec<BipartiteSpec> {
    let mut rng = StdRng::seed_from_u64(7);
    let mut out = Vec::new();
    while out.len() < count {
        let a = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let b = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (c_km, c_lj) = (random_unit_disc(&mut rng), random_unit_disc(&mut rng));
        let n = a.norm_sqr() + b.norm_sqr() + 2.0 * (a.conj() * b * c_lj.conj() * c_km).re;
        if n < 1e-3 {
            continue;
        }
        let s = n.sqrt();
        out.push(BipartiteSpec::new(a / s, b / s, c_km, c_lj).unwrap());
    }
    out
}
