//! Analytic integrals over contracted s-type Gaussians and basis-function
//! evaluation on arbitrary points.
//!
//! The analytic engine (overlap, kinetic, nuclear attraction, repulsion,
//! dipole) covers s shells only, which is exactly what hydrogen-only systems
//! need to run with no external data; heavier molecules arrive as bundles
//! with precomputed integrals. Point evaluation ([`PreparedBasis::evaluate`])
//! additionally supports p shells — value, gradient, and Hessian — because
//! density grids and critical-point searches need p-AO values even when the
//! two-electron integrals came from elsewhere.
//!
//! Normalization policy: bundle files carry raw contraction coefficients;
//! every routine here goes through [`PreparedBasis`], the single place where
//! primitive norms and the overall contraction norm are folded in.

use ndarray::Array2;

use crate::chemio::{Atom, EriTensor, GaussianShell, MoleculeBundle};
use crate::{Error, Result};

/// STO-3G exponents for hydrogen (bohr⁻²).
pub const STO3G_H_EXPONENTS: [f64; 3] = [3.425_250_91, 0.623_913_73, 0.168_855_40];

/// STO-3G raw contraction coefficients for hydrogen (paired with
/// [`STO3G_H_EXPONENTS`]; normalization is applied by [`PreparedBasis`]).
pub const STO3G_H_COEFFICIENTS: [f64; 3] = [0.154_328_97, 0.535_328_14, 0.444_634_54];

/// Boys function F₀(t) = ½·√(π/t)·erf(√t).
///
/// The closed form is 0/0 at t = 0; below 1e-12 the series 1 − t/3 is exact
/// to machine precision, which removes the singularity analytically.
pub fn boys_f0(t: f64) -> f64 {
    if t < 1e-12 {
        1.0 - t / 3.0
    } else {
        0.5 * (std::f64::consts::PI / t).sqrt() * libm::erf(t.sqrt())
    }
}

/// One shell with primitive and contraction normalization folded into the
/// coefficients.
#[derive(Debug, Clone)]
struct PreparedShell {
    center: [f64; 3],
    l: u8,
    /// `(exponent, fully normalized coefficient)` in storage order.
    prims: Vec<(f64, f64)>,
}

/// A basis set ready for numeric work: all normalization resolved.
///
/// Build once per molecule and reuse — grid evaluation touches every shell at
/// every point.
#[derive(Debug, Clone)]
pub struct PreparedBasis {
    shells: Vec<PreparedShell>,
    n_ao: usize,
}

/// Per-AO values and optional derivatives at one point; see
/// [`PreparedBasis::evaluate`].
#[derive(Debug, Clone)]
pub struct BasisEvaluation {
    /// φ_μ(r) for every AO.
    pub values: Vec<f64>,
    /// ∇φ_μ(r); empty unless order ≥ 1 was requested.
    pub gradients: Vec<[f64; 3]>,
    /// ∇∇φ_μ(r), symmetric by construction; empty unless order ≥ 2.
    pub hessians: Vec<[[f64; 3]; 3]>,
}

impl PreparedBasis {
    /// Normalize every shell of the bundle's basis.
    pub fn new(bundle: &MoleculeBundle) -> Self {
        Self::from_shells(&bundle.shells)
    }

    /// Normalize a raw shell list (shells must be s or p, as enforced by
    /// bundle validation).
    pub fn from_shells(shells: &[GaussianShell]) -> Self {
        let prepared: Vec<PreparedShell> = shells
            .iter()
            .map(|shell| {
                // primitive norms: ⟨g|g⟩ = 1 for each primitive
                let mut prims: Vec<(f64, f64)> = shell
                    .exponents
                    .iter()
                    .zip(&shell.coefficients)
                    .map(|(&a, &c)| {
                        let n_s = (2.0 * a / std::f64::consts::PI).powf(0.75);
                        let norm = match shell.l {
                            0 => n_s,
                            _ => 2.0 * a.sqrt() * n_s,
                        };
                        (a, c * norm)
                    })
                    .collect();
                // overall scale so the contracted AO has unit self-overlap
                let mut self_overlap = 0.0;
                for &(ai, ci) in &prims {
                    for &(aj, cj) in &prims {
                        let p = ai + aj;
                        let s00 = (std::f64::consts::PI / p).powf(1.5);
                        let pair = match shell.l {
                            0 => s00,
                            _ => s00 / (2.0 * p), // x²-moment of the pair Gaussian
                        };
                        self_overlap += ci * cj * pair;
                    }
                }
                let scale = self_overlap.sqrt().recip();
                for prim in &mut prims {
                    prim.1 *= scale;
                }
                PreparedShell { center: shell.center, l: shell.l, prims }
            })
            .collect();
        let n_ao = shells.iter().map(GaussianShell::n_ao).sum();
        PreparedBasis { shells: prepared, n_ao }
    }

    pub fn n_ao(&self) -> usize {
        self.n_ao
    }

    /// Evaluate every AO at `r`, with derivatives up to `order` (0 = values,
    /// 1 = + gradients, 2 = + Hessians). Total function: finite input gives
    /// finite output for any order (values beyond 2 mean 2).
    pub fn evaluate(&self, r: [f64; 3], order: usize) -> BasisEvaluation {
        let mut out = BasisEvaluation {
            values: Vec::with_capacity(self.n_ao),
            gradients: Vec::new(),
            hessians: Vec::new(),
        };
        if order >= 1 {
            out.gradients.reserve(self.n_ao);
        }
        if order >= 2 {
            out.hessians.reserve(self.n_ao);
        }
        for shell in &self.shells {
            let d = [
                r[0] - shell.center[0],
                r[1] - shell.center[1],
                r[2] - shell.center[2],
            ];
            let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
            // radial sums: s_k = Σ_i c_i α_i^k exp(−α_i r²), in storage order
            let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
            for &(a, c) in &shell.prims {
                let e = c * (-a * r2).exp();
                s0 += e;
                if order >= 1 {
                    s1 += a * e;
                }
                if order >= 2 {
                    s2 += a * a * e;
                }
            }
            match shell.l {
                0 => {
                    out.values.push(s0);
                    if order >= 1 {
                        out.gradients.push([-2.0 * s1 * d[0], -2.0 * s1 * d[1], -2.0 * s1 * d[2]]);
                    }
                    if order >= 2 {
                        let mut h = [[0.0; 3]; 3];
                        for i in 0..3 {
                            for j in i..3 {
                                let mut v = 4.0 * s2 * d[i] * d[j];
                                if i == j {
                                    v -= 2.0 * s1;
                                }
                                h[i][j] = v;
                                h[j][i] = v;
                            }
                        }
                        out.hessians.push(h);
                    }
                }
                _ => {
                    // p shell: components x, y, z share the radial sums
                    for axis in 0..3 {
                        out.values.push(d[axis] * s0);
                        if order >= 1 {
                            let mut g = [0.0; 3];
                            for (i, gi) in g.iter_mut().enumerate() {
                                *gi = -2.0 * s1 * d[axis] * d[i];
                                if i == axis {
                                    *gi += s0;
                                }
                            }
                            out.gradients.push(g);
                        }
                        if order >= 2 {
                            let delta = |i: usize, j: usize| (i == j) as u8 as f64;
                            let mut h = [[0.0; 3]; 3];
                            for i in 0..3 {
                                for j in i..3 {
                                    let v = 4.0 * s2 * d[axis] * d[i] * d[j]
                                        - 2.0
                                            * s1
                                            * (delta(i, axis) * d[j]
                                                + delta(j, axis) * d[i]
                                                + d[axis] * delta(i, j));
                                    h[i][j] = v;
                                    h[j][i] = v;
                                }
                            }
                            out.hessians.push(h);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Evaluate every AO of the bundle's basis at one point. Convenience wrapper;
/// prefer holding a [`PreparedBasis`] when looping over a grid.
pub fn eval_basis(bundle: &MoleculeBundle, r: [f64; 3], order: usize) -> BasisEvaluation {
    PreparedBasis::new(bundle).evaluate(r, order)
}

fn require_s_only(shells: &[GaussianShell], what: &str) -> Result<()> {
    if shells.iter().any(|s| s.l != 0) {
        return Err(Error::Unsupported(format!(
            "analytic {what} integrals are implemented for s shells only; \
             p-shell systems must provide them in the bundle"
        )));
    }
    Ok(())
}

fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

/// Product-Gaussian center of two primitives.
fn product_center(aa: f64, a: [f64; 3], ab: f64, b: [f64; 3]) -> [f64; 3] {
    let p = aa + ab;
    [
        (aa * a[0] + ab * b[0]) / p,
        (aa * a[1] + ab * b[1]) / p,
        (aa * a[2] + ab * b[2]) / p,
    ]
}

/// AO overlap matrix (s shells).
pub fn overlap_matrix(shells: &[GaussianShell]) -> Result<Array2<f64>> {
    require_s_only(shells, "overlap")?;
    let basis = PreparedBasis::from_shells(shells);
    pair_matrix(&basis, |aa, a, ab, b| {
        let p = aa + ab;
        let mu = aa * ab / p;
        (std::f64::consts::PI / p).powf(1.5) * (-mu * dist2(a, b)).exp()
    })
}

/// AO kinetic-energy matrix (s shells).
pub fn kinetic_matrix(shells: &[GaussianShell]) -> Result<Array2<f64>> {
    require_s_only(shells, "kinetic")?;
    let basis = PreparedBasis::from_shells(shells);
    pair_matrix(&basis, |aa, a, ab, b| {
        let p = aa + ab;
        let mu = aa * ab / p;
        let r2 = dist2(a, b);
        let s = (std::f64::consts::PI / p).powf(1.5) * (-mu * r2).exp();
        mu * (3.0 - 2.0 * mu * r2) * s
    })
}

/// AO nuclear-attraction matrix, −Σ_A Z_A (μ| 1/|r−R_A| |ν) (s shells).
pub fn nuclear_attraction_matrix(shells: &[GaussianShell], atoms: &[Atom]) -> Result<Array2<f64>> {
    require_s_only(shells, "nuclear-attraction")?;
    let basis = PreparedBasis::from_shells(shells);
    pair_matrix(&basis, |aa, a, ab, b| {
        let p = aa + ab;
        let mu = aa * ab / p;
        let pre = 2.0 * std::f64::consts::PI / p * (-mu * dist2(a, b)).exp();
        let center = product_center(aa, a, ab, b);
        let mut v = 0.0;
        for atom in atoms {
            v -= atom.z as f64 * pre * boys_f0(p * dist2(center, atom.position));
        }
        v
    })
}

/// AO dipole-moment matrices (μ| x,y,z |ν) about the coordinate origin
/// (s shells). The x-moment of a product Gaussian is its overlap times the
/// product-center coordinate.
pub fn dipole_matrices(shells: &[GaussianShell]) -> Result<[Array2<f64>; 3]> {
    require_s_only(shells, "dipole")?;
    let basis = PreparedBasis::from_shells(shells);
    let mut out = [(); 3].map(|_| Array2::zeros((basis.n_ao, basis.n_ao)));
    for axis in 0..3 {
        out[axis] = pair_matrix(&basis, |aa, a, ab, b| {
            let p = aa + ab;
            let mu = aa * ab / p;
            let s = (std::f64::consts::PI / p).powf(1.5) * (-mu * dist2(a, b)).exp();
            s * product_center(aa, a, ab, b)[axis]
        })?;
    }
    Ok(out)
}

/// Assemble a symmetric AO matrix from a primitive-pair kernel.
fn pair_matrix(
    basis: &PreparedBasis,
    prim: impl Fn(f64, [f64; 3], f64, [f64; 3]) -> f64,
) -> Result<Array2<f64>> {
    let n = basis.shells.len();
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..=i {
            let (si, sj) = (&basis.shells[i], &basis.shells[j]);
            let mut acc = 0.0;
            for &(aa, ca) in &si.prims {
                for &(ab, cb) in &sj.prims {
                    acc += ca * cb * prim(aa, si.center, ab, sj.center);
                }
            }
            m[[i, j]] = acc;
            m[[j, i]] = acc;
        }
    }
    Ok(m)
}

/// Two-electron repulsion integrals (pq|rs) in chemists' notation (s shells).
pub fn eri_tensor(shells: &[GaussianShell]) -> Result<EriTensor> {
    require_s_only(shells, "electron-repulsion")?;
    let basis = PreparedBasis::from_shells(shells);
    let n = basis.shells.len();
    let mut eri = EriTensor::zeros(n);
    let quads: Vec<_> = eri.unique_quadruples().collect();
    for (p, q, r, s) in quads {
        let (sp, sq, sr, ss) = (
            &basis.shells[p],
            &basis.shells[q],
            &basis.shells[r],
            &basis.shells[s],
        );
        let mut acc = 0.0;
        for &(a1, c1) in &sp.prims {
            for &(a2, c2) in &sq.prims {
                let pab = a1 + a2;
                let center_ab = product_center(a1, sp.center, a2, sq.center);
                let eab = (-(a1 * a2 / pab) * dist2(sp.center, sq.center)).exp();
                for &(a3, c3) in &sr.prims {
                    for &(a4, c4) in &ss.prims {
                        let pcd = a3 + a4;
                        let center_cd = product_center(a3, sr.center, a4, ss.center);
                        let ecd = (-(a3 * a4 / pcd) * dist2(sr.center, ss.center)).exp();
                        let t = pab * pcd / (pab + pcd) * dist2(center_ab, center_cd);
                        let pre = 2.0 * std::f64::consts::PI.powf(2.5)
                            / (pab * pcd * (pab + pcd).sqrt());
                        acc += c1 * c2 * c3 * c4 * pre * eab * ecd * boys_f0(t);
                    }
                }
            }
        }
        eri.set(p, q, r, s, acc);
    }
    Ok(eri)
}

/// Nuclear repulsion energy Σ_{A<B} Z_A Z_B / R_AB.
pub fn nuclear_repulsion(atoms: &[Atom]) -> f64 {
    let mut e = 0.0;
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[..i] {
            e += (a.z * b.z) as f64 / dist2(a.position, b.position).sqrt();
        }
    }
    e
}

/// Build a complete bundle for a hydrogen-only system with the built-in
/// STO-3G basis: one s shell per atom, all integrals analytic. `mo_coeff` is
/// left 0×0 for an SCF run to fill.
pub fn build_hydrogen_bundle(atoms: &[Atom], charge: i32) -> Result<MoleculeBundle> {
    for atom in atoms {
        if atom.z != 1 {
            return Err(Error::Unsupported(format!(
                "self-contained integrals cover hydrogen only; found {} (Z = {})",
                atom.symbol, atom.z
            )));
        }
    }
    let shells: Vec<GaussianShell> = atoms
        .iter()
        .enumerate()
        .map(|(i, atom)| GaussianShell {
            atom: i,
            l: 0,
            center: atom.position,
            exponents: STO3G_H_EXPONENTS.to_vec(),
            coefficients: STO3G_H_COEFFICIENTS.to_vec(),
        })
        .collect();
    let overlap = overlap_matrix(&shells)?;
    let core_h = kinetic_matrix(&shells)? + nuclear_attraction_matrix(&shells, atoms)?;
    let eri = eri_tensor(&shells)?;
    let dipole = dipole_matrices(&shells)?;
    let bundle = MoleculeBundle {
        atoms: atoms.to_vec(),
        charge,
        shells,
        overlap,
        core_h,
        eri,
        mo_coeff: Array2::zeros((0, 0)),
        mo_energies: None,
        dipole_integrals: Some(dipole),
        e_nuc: nuclear_repulsion(atoms),
    };
    bundle.validate()?;
    Ok(bundle)
}

/// The bundle's dipole-integral matrices: passed through when present,
/// computed analytically when every shell is s-type.
pub fn dipole_integrals(bundle: &MoleculeBundle) -> Result<[Array2<f64>; 3]> {
    if let Some(d) = &bundle.dipole_integrals {
        return Ok(d.clone());
    }
    dipole_matrices(&bundle.shells).map_err(|_| {
        Error::Unsupported(
            "bundle has p shells but no dipole_integrals; dipole moments need them precomputed"
                .into(),
        )
    })
}
