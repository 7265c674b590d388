//! Independent dense-matrix evaluation of the pipelines over the full
//! occupation basis of the relevant photon-number sector, checked against the
//! sparse implementation and against hand-derived closed forms.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use pdc_purify::protocol::{run_four_photon, run_two_photon};

// mode order a1H a1V a2H a2V b1H b1V b2H b2V
const A1: (usize, usize) = (0, 1);
const A2: (usize, usize) = (2, 3);
const B1: (usize, usize) = (4, 5);
const B2: (usize, usize) = (6, 7);

type Occ = [u8; 8];

struct Sector {
    basis: Vec<Occ>,
    index: HashMap<Occ, usize>,
}

impl Sector {
    fn new(photons: u8) -> Self {
        let mut basis = Vec::new();
        let mut occ = [0u8; 8];
        fn fill(pos: usize, left: u8, occ: &mut Occ, out: &mut Vec<Occ>) {
            if pos == 7 {
                occ[7] = left;
                out.push(*occ);
                return;
            }
            for n in 0..=left {
                occ[pos] = n;
                fill(pos + 1, left - n, occ, out);
            }
        }
        fill(0, photons, &mut occ, &mut basis);
        let index = basis.iter().enumerate().map(|(i, o)| (*o, i)).collect();
        Sector { basis, index }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn factorial(n: u8) -> f64 {
    (1..=n as u32).map(f64::from).product()
}

/// `(Σ_j c_j a†_{x_j} b†_{x_j})^pairs |0⟩` by expanding every ordered product
/// of creation operators: a monomial with occupations `n` acting on vacuum
/// gives `√(Π n!) |n⟩`.
fn source_vector(sector: &Sector, r: f64, phi: f64, pairs: usize) -> Vec<Complex64> {
    let lower = Complex64::from_polar(r, phi);
    let one = Complex64::new(1.0, 0.0);
    let terms = [
        (0usize, 4usize, one),
        (1, 5, one),
        (2, 6, lower),
        (3, 7, lower),
    ];
    let mut psi = vec![Complex64::new(0.0, 0.0); sector.dim()];
    let mut choice = vec![0usize; pairs];
    loop {
        let mut occ = [0u8; 8];
        let mut coeff = one;
        for &j in &choice {
            let (a, b, c) = terms[j];
            occ[a] += 1;
            occ[b] += 1;
            coeff *= c;
        }
        let weight: f64 = occ.iter().map(|&n| factorial(n)).product::<f64>().sqrt();
        psi[sector.index[&occ]] += coeff * weight;

        let mut k = 0;
        loop {
            if k == pairs {
                return psi;
            }
            choice[k] += 1;
            if choice[k] < terms.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn density(psi: &[Complex64]) -> DMatrix<Complex64> {
    let n2: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
    DMatrix::from_fn(psi.len(), psi.len(), |i, j| psi[i] * psi[j].conj() / n2)
}

fn full_depolarizer(
    sector: &Sector,
    rho: &DMatrix<Complex64>,
    (h, v): (usize, usize),
) -> DMatrix<Complex64> {
    let d = sector.dim();
    let mut out = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let (oi, oj) = (sector.basis[i], sector.basis[j]);
            if oi[h] != oj[h] || oi[v] != oj[v] {
                continue;
            }
            let n = oi[h] + oi[v];
            for k in 0..=n {
                let (mut ki, mut kj) = (oi, oj);
                ki[h] = k;
                ki[v] = n - k;
                kj[h] = k;
                kj[v] = n - k;
                out[(sector.index[&ki], sector.index[&kj])] += rho[(i, j)] / (n as f64 + 1.0);
            }
        }
    }
    out
}

fn channel(
    sector: &Sector,
    rho: &DMatrix<Complex64>,
    target: (usize, usize),
    s: f64,
) -> DMatrix<Complex64> {
    rho * Complex64::new(s, 0.0)
        + full_depolarizer(sector, rho, target) * Complex64::new(1.0 - s, 0.0)
}

/// `P ρ Pᵀ` for the permutation H(1) ↔ H(2) on both sides.
fn pbs(sector: &Sector, rho: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let target: Vec<usize> = sector
        .basis
        .iter()
        .map(|o| {
            let mut t = *o;
            t.swap(0, 2);
            t.swap(4, 6);
            sector.index[&t]
        })
        .collect();
    let d = sector.dim();
    let mut out = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            out[(target[i], target[j])] = rho[(i, j)];
        }
    }
    out
}

fn totals(o: &Occ) -> [u8; 4] {
    [o[0] + o[1], o[2] + o[3], o[4] + o[5], o[6] + o[7]]
}

/// `Π ρ Π` for the diagonal projector onto the allowed spatial totals.
fn project(sector: &Sector, rho: &DMatrix<Complex64>, allowed: &[[u8; 4]]) -> DMatrix<Complex64> {
    let keep: Vec<bool> = sector
        .basis
        .iter()
        .map(|o| allowed.contains(&totals(o)))
        .collect();
    let d = sector.dim();
    DMatrix::from_fn(d, d, |i, j| {
        if keep[i] && keep[j] {
            rho[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Polarization fidelity of the pair in spatial modes `a` and `b` of a
/// (possibly unnormalized) operator supported on one photon in each.
fn pair_fidelity(
    sector: &Sector,
    rho: &DMatrix<Complex64>,
    a: (usize, usize),
    b: (usize, usize),
) -> f64 {
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    let rest = |o: &Occ| {
        let mut r = *o;
        for k in [a.0, a.1, b.0, b.1] {
            r[k] = 0;
        }
        r
    };
    for i in 0..sector.dim() {
        for j in 0..sector.dim() {
            if rho[(i, j)].norm() == 0.0 {
                continue;
            }
            let (oi, oj) = (sector.basis[i], sector.basis[j]);
            if rest(&oi) != rest(&oj) {
                continue;
            }
            let qi = 2 * oi[a.1] as usize + oi[b.1] as usize;
            let qj = 2 * oj[a.1] as usize + oj[b.1] as usize;
            m[qi][qj] += rho[(i, j)];
        }
    }
    let tr: f64 = (0..4).map(|q| m[q][q].re).sum();
    0.5 * (m[0][0] + m[0][3] + m[3][0] + m[3][3]).re / tr
}

struct DenseFour {
    p: f64,
    f_upper: f64,
    f_lower: f64,
}

fn dense_four_photon(r: f64, phi: f64, s: f64) -> DenseFour {
    let sector = Sector::new(4);
    assert_eq!(sector.dim(), 330);
    let mut rho = density(&source_vector(&sector, r, phi, 2));
    rho = channel(&sector, &rho, A1, s);
    rho = channel(&sector, &rho, A2, s);
    rho = pbs(&sector, &rho);
    let cond = project(&sector, &rho, &[[1, 1, 1, 1]]);
    DenseFour {
        p: cond.trace().re,
        f_upper: pair_fidelity(&sector, &cond, A1, B1),
        f_lower: pair_fidelity(&sector, &cond, A2, B2),
    }
}

fn dense_two_photon(r: f64, phi: f64, s: f64) -> (f64, f64) {
    let sector = Sector::new(2);
    let mut rho = density(&source_vector(&sector, r, phi, 1));
    rho = channel(&sector, &rho, A1, s);
    rho = channel(&sector, &rho, A2, s);
    rho = pbs(&sector, &rho);
    let cu = project(&sector, &rho, &[[1, 0, 1, 0]]);
    let cd = project(&sector, &rho, &[[0, 1, 0, 1]]);
    let (wu, wd) = (cu.trace().re, cd.trace().re);
    let f = (wu * pair_fidelity(&sector, &cu, A1, B1) + wd * pair_fidelity(&sector, &cd, A2, B2))
        / (wu + wd);
    (wu + wd, f)
}

#[test]
fn dense_source_norm_matches_hand_expansion() {
    let sector = Sector::new(4);
    let psi = source_vector(&sector, 1.0, 0.0, 2);
    let n2: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
    assert!((n2 - 40.0).abs() < 1e-12);
}

#[test]
fn fully_depolarized_four_photon_point_matches_dense_oracle() {
    let dense = dense_four_photon(1.0, 0.0, 0.0);
    let sparse = run_four_photon(1.0, 0.0, 0.0).unwrap();
    assert!((dense.p - sparse.p_success).abs() < 1e-12);
    assert!((dense.f_upper - sparse.f_upper.unwrap()).abs() < 1e-12);
    assert!((dense.f_lower - sparse.f_lower.unwrap()).abs() < 1e-12);
}

#[test]
fn fully_depolarized_four_photon_hand_values() {
    // blocks (2,0), (0,2), (1,1) of Alice's occupations carry 12, 12, 16 of 40;
    // four-mode weights 1/9, 1/9, 1/4 with pair fidelities 1/2, 1/2, 1/4
    let res = run_four_photon(1.0, 0.0, 0.0).unwrap();
    assert!((res.p_success - 1.0 / 6.0).abs() < 1e-12);
    assert!((res.f_upper.unwrap() - 0.35).abs() < 1e-12);
}

#[test]
fn four_photon_matches_dense_oracle_across_parameters() {
    for &(r, phi, s) in &[
        (1.0, 0.0, 0.5),
        (0.95, 0.95f64.acos(), 0.8),
        (0.9, 0.9f64.acos(), 0.3),
        (0.6, 2.0, 0.1),
        (0.0, 0.0, 0.7),
    ] {
        let dense = dense_four_photon(r, phi, s);
        let sparse = run_four_photon(r, phi, s).unwrap();
        assert!(
            (dense.p - sparse.p_success).abs() < 1e-12,
            "p at {r} {phi} {s}"
        );
        assert!(
            (dense.f_upper - sparse.f_upper.unwrap()).abs() < 1e-12,
            "f_upper at {r} {phi} {s}"
        );
        assert!(
            (dense.f_lower - sparse.f_lower.unwrap()).abs() < 1e-12,
            "f_lower at {r} {phi} {s}"
        );
    }
}

#[test]
fn four_photon_without_noise_has_closed_form() {
    // post-PBS pairs are |VV⟩ + c|HH⟩, c = r e^{iφ}: F = |1 + c|² / (2(1 + r²))
    for &(r, cos_phi) in &[(1.0, 1.0), (0.95, 0.95), (0.9, 0.9), (0.5, 0.2)] {
        let phi = f64::acos(cos_phi);
        let c = Complex64::from_polar(r, phi);
        let expected = (Complex64::new(1.0, 0.0) + c).norm_sqr() / (2.0 * (1.0 + r * r));
        let res = run_four_photon(r, phi, 1.0).unwrap();
        assert!((res.f_upper.unwrap() - expected).abs() < 1e-12);
        assert!((res.f_lower.unwrap() - expected).abs() < 1e-12);
    }
}

#[test]
fn two_photon_matches_dense_oracle_and_closed_form() {
    for i in 0..=10 {
        let s = i as f64 / 10.0;
        let (p, f) = dense_two_photon(1.0, 0.0, s);
        let res = run_two_photon(1.0, 0.0, s).unwrap();
        assert!((p - res.p_success).abs() < 1e-12);
        assert!((f - res.f_upper.unwrap()).abs() < 1e-12);
        // upper/lower coherence survives with s² (one factor per Alice mode)
        assert!((res.p_success - (1.0 + s) / 2.0).abs() < 1e-12);
        assert!((res.f_upper.unwrap() - (0.5 + s * s / (1.0 + s))).abs() < 1e-12);
    }
    let (p, f) = dense_two_photon(0.7, 1.3, 0.6);
    let res = run_two_photon(0.7, 1.3, 0.6).unwrap();
    assert!((p - res.p_success).abs() < 1e-12);
    assert!((f - res.f_upper.unwrap()).abs() < 1e-12);
}
