//! Dispersive permittivity models for the layer stack.
//!
//! Sign convention: fields evolve as e^{-iωt}, so passive (lossy) media have
//! a **positive** imaginary permittivity. Every model below honors that
//! convention; it is asserted by the passivity tests and relied on by the
//! transfer-matrix branch choice Im(k_z) ≥ 0.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{self, PhotonEnergy};

/// Complex permittivity of a (possibly uniaxial) layer.
///
/// `eps_x` acts on in-plane field components, `eps_z` on the growth-axis
/// component. Isotropic media carry the same value in both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Permittivity {
    pub eps_x: Complex64,
    pub eps_z: Complex64,
}

impl Permittivity {
    pub fn isotropic(eps: Complex64) -> Self {
        Permittivity { eps_x: eps, eps_z: eps }
    }

    pub fn is_isotropic(&self) -> bool {
        self.eps_x == self.eps_z
    }
}

/// Frequency-dependent material model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MaterialModel {
    /// Non-dispersive dielectric.
    Constant { eps_bg: f64 },
    /// Free-carrier response: ε(E) = ε∞ − Ep²/(E² + iγE).
    Drude {
        eps_inf: f64,
        plasma_energy_mev: f64,
        damping_mev: f64,
    },
    /// Intersubband ensemble of Lorentz oscillators:
    /// ε_z(E) = ε_bg + ħωP²/(E12² − E² − iγ12·E),
    /// applied to the growth axis only when `anisotropic` (the default for
    /// z-polarized intersubband dipoles), or to both axes otherwise.
    IsbLorentz {
        eps_bg: f64,
        transition_mev: f64,
        plasma_mev: f64,
        linewidth_mev: f64,
        anisotropic: bool,
    },
}

impl MaterialModel {
    /// Validates the model parameters against the type invariants:
    /// energies ≥ 0 and background permittivities ≥ 1.
    pub fn validate(&self) -> Result<()> {
        let check_eps = |name: &str, v: f64| {
            if !v.is_finite() || v < 1.0 {
                Err(Error::domain(format!("{name} must be ≥ 1, got {v}")))
            } else {
                Ok(())
            }
        };
        let check_energy = |name: &str, v: f64| {
            if !v.is_finite() || v < 0.0 {
                Err(Error::domain(format!("{name} must be ≥ 0, got {v}")))
            } else {
                Ok(())
            }
        };
        match *self {
            MaterialModel::Constant { eps_bg } => check_eps("eps_bg", eps_bg),
            MaterialModel::Drude {
                eps_inf,
                plasma_energy_mev,
                damping_mev,
            } => {
                check_eps("eps_inf", eps_inf)?;
                check_energy("plasma energy", plasma_energy_mev)?;
                check_energy("damping", damping_mev)
            }
            MaterialModel::IsbLorentz {
                eps_bg,
                transition_mev,
                plasma_mev,
                linewidth_mev,
                ..
            } => {
                check_eps("eps_bg", eps_bg)?;
                check_energy("transition energy", transition_mev)?;
                check_energy("plasma energy", plasma_mev)?;
                check_energy("linewidth", linewidth_mev)
            }
        }
    }

    /// True when the material has a strictly real, positive permittivity at
    /// every energy (only `Constant` qualifies). Used to validate incident
    /// media where the internal propagation angle must be well defined.
    pub fn is_lossless_constant(&self) -> bool {
        matches!(self, MaterialModel::Constant { .. })
    }
}

/// Evaluates the complex permittivity of `model` at photon energy `e`.
pub fn permittivity(model: &MaterialModel, e: PhotonEnergy) -> Permittivity {
    let energy = e.mev();
    match *model {
        MaterialModel::Constant { eps_bg } => {
            Permittivity::isotropic(Complex64::new(eps_bg, 0.0))
        }
        MaterialModel::Drude {
            eps_inf,
            plasma_energy_mev: ep,
            damping_mev: gamma,
        } => {
            let denom = Complex64::new(energy * energy, gamma * energy);
            let eps = Complex64::new(eps_inf, 0.0) - ep * ep / denom;
            Permittivity::isotropic(eps)
        }
        MaterialModel::IsbLorentz {
            eps_bg,
            transition_mev: e12,
            plasma_mev: wp,
            linewidth_mev: gamma,
            anisotropic,
        } => {
            let denom = Complex64::new(e12 * e12 - energy * energy, -gamma * energy);
            let eps_res = Complex64::new(eps_bg, 0.0) + wp * wp / denom;
            if anisotropic {
                Permittivity {
                    eps_x: Complex64::new(eps_bg, 0.0),
                    eps_z: eps_res,
                }
            } else {
                Permittivity::isotropic(eps_res)
            }
        }
    }
}

/// Parameters converting a 2D electron sheet density into a Lorentz
/// oscillator plasma energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SheetDensityParams {
    /// Sheet density in cm⁻².
    pub ns_cm2: f64,
    /// Effective mass in units of the free-electron mass.
    pub m_eff: f64,
    /// Length over which the sheet is smeared into a volume density, nm.
    pub l_eff_nm: f64,
    /// Background screening constant entering the oscillator strength.
    pub eps_s: f64,
}

/// ħωP = ħ·sqrt(Ns·e²/(ε₀·ε_s·m_eff·m₀·L_eff)), returned in meV.
///
/// Scales as sqrt(Ns) and 1/sqrt(L_eff).
pub fn sheet_to_plasma(p: &SheetDensityParams) -> Result<f64> {
    for (name, v) in [
        ("Ns", p.ns_cm2),
        ("m_eff", p.m_eff),
        ("L_eff", p.l_eff_nm),
        ("eps_s", p.eps_s),
    ] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::domain(format!(
                "sheet_to_plasma: {name} must be > 0, got {v}"
            )));
        }
    }
    // cm⁻² / nm → m⁻³
    let n3d_m3 = p.ns_cm2 * 1e4 / (p.l_eff_nm * 1e-9);
    let omega_p2 = n3d_m3 * units::E_CHARGE_C * units::E_CHARGE_C
        / (units::EPS0_F_PER_M * p.eps_s * p.m_eff * units::ME_KG);
    Ok(units::HBAR_J_S * omega_p2.sqrt() / units::E_CHARGE_C * 1e3)
}

/// ħωp of a volume doping density `n_cm3` (cm⁻³) with unscreened numerator,
/// for use as the Drude plasma energy of doped layers.
pub fn volume_to_plasma(n_cm3: f64, m_eff: f64) -> Result<f64> {
    if !n_cm3.is_finite() || n_cm3 <= 0.0 || !m_eff.is_finite() || m_eff <= 0.0 {
        return Err(Error::domain(format!(
            "volume_to_plasma: density and mass must be > 0, got {n_cm3}, {m_eff}"
        )));
    }
    let n_m3 = n_cm3 * 1e6;
    let omega_p2 = n_m3 * units::E_CHARGE_C * units::E_CHARGE_C
        / (units::EPS0_F_PER_M * m_eff * units::ME_KG);
    Ok(units::HBAR_J_S * omega_p2.sqrt() / units::E_CHARGE_C * 1e3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ev(model: &MaterialModel, mev: f64) -> Permittivity {
        permittivity(model, PhotonEnergy::new(mev).unwrap())
    }

    #[test]
    fn constant_returns_its_value() {
        let p = ev(&MaterialModel::Constant { eps_bg: 10.89 }, 163.0);
        assert_eq!(p.eps_x, Complex64::new(10.89, 0.0));
        assert_eq!(p.eps_z, Complex64::new(10.89, 0.0));
    }

    #[test]
    fn drude_matches_direct_evaluation() {
        // Independent oracle: evaluate ε∞ − Ep²/(E² + iγE) by explicit
        // real/imaginary decomposition.
        let (eps_inf, ep, gamma, e) = (1.0, 8900.0, 65.0, 163.0);
        let d2 = (e * e) * (e * e) + (gamma * e) * (gamma * e);
        let re = eps_inf - ep * ep * e * e / d2;
        let im = ep * ep * gamma * e / d2;
        let p = ev(
            &MaterialModel::Drude {
                eps_inf,
                plasma_energy_mev: ep,
                damping_mev: gamma,
            },
            e,
        );
        assert_relative_eq!(p.eps_x.re, re, max_relative = 1e-14);
        assert_relative_eq!(p.eps_x.im, im, max_relative = 1e-14);
        assert!(p.is_isotropic());
        // Frozen from the oracle above: ≈ −2571 + 1026i.
        assert_relative_eq!(p.eps_x.re, -2571.25, max_relative = 1e-3);
        assert_relative_eq!(p.eps_x.im, 1025.75, max_relative = 1e-3);
    }

    #[test]
    fn isb_lorentz_at_resonance() {
        // At E = E12 the resonant term is purely imaginary: ħωP²/(γ12·E12).
        let p = ev(
            &MaterialModel::IsbLorentz {
                eps_bg: 10.89,
                transition_mev: 163.0,
                plasma_mev: 9.5,
                linewidth_mev: 8.0,
                anisotropic: true,
            },
            163.0,
        );
        assert_eq!(p.eps_x, Complex64::new(10.89, 0.0));
        assert_relative_eq!(p.eps_z.re, 10.89, max_relative = 1e-12);
        assert_relative_eq!(p.eps_z.im, 9.5 * 9.5 / (8.0 * 163.0), max_relative = 1e-12);
        assert_relative_eq!(p.eps_z.im, 0.0692, max_relative = 1e-3);
    }

    #[test]
    fn isotropic_switch_applies_to_both_axes() {
        let p = ev(
            &MaterialModel::IsbLorentz {
                eps_bg: 10.89,
                transition_mev: 163.0,
                plasma_mev: 9.5,
                linewidth_mev: 8.0,
                anisotropic: false,
            },
            150.0,
        );
        assert_eq!(p.eps_x, p.eps_z);
        assert!(p.eps_x.im > 0.0);
    }

    #[test]
    fn zero_oscillator_equals_constant() {
        let isb = MaterialModel::IsbLorentz {
            eps_bg: 9.9,
            transition_mev: 163.0,
            plasma_mev: 0.0,
            linewidth_mev: 8.0,
            anisotropic: true,
        };
        let cst = MaterialModel::Constant { eps_bg: 9.9 };
        for e in [1.0, 50.0, 163.0, 500.0, 5000.0] {
            assert_eq!(ev(&isb, e), ev(&cst, e));
        }
    }

    #[test]
    fn drude_approaches_eps_inf_monotonically() {
        let m = MaterialModel::Drude {
            eps_inf: 10.89,
            plasma_energy_mev: 248.0,
            damping_mev: 10.0,
        };
        let mut last = f64::INFINITY;
        for i in 0..200 {
            let e = 300.0 + 50.0 * i as f64; // E ≫ Ep tail
            let p = ev(&m, e);
            let dist = (p.eps_x - Complex64::new(10.89, 0.0)).norm();
            assert!(dist < last, "|ε−ε∞| must shrink with E");
            last = dist;
        }
    }

    #[test]
    fn sheet_to_plasma_paper_density() {
        // Two independent unit-bookkeeping routes must agree:
        // the SI implementation and a meV·nm route built from
        // e²/(4πε₀) = α·ħc.
        let p = SheetDensityParams {
            ns_cm2: 1.8e11,
            m_eff: 0.067,
            l_eff_nm: 38.0,
            eps_s: 10.89,
        };
        let si = sheet_to_plasma(&p).unwrap();

        let e2_over_eps0_mev_nm = 4.0 * std::f64::consts::PI * 1_439.964_55; // meV·nm
        let ns_nm2 = p.ns_cm2 * 1e-14;
        let hw2 = ns_nm2 / p.l_eff_nm * crate::units::HBAR_C_MEV_NM.powi(2)
            * e2_over_eps0_mev_nm
            / (p.eps_s * p.m_eff * crate::units::ME_C2_MEV);
        let mev_nm_route = hw2.sqrt();

        assert_relative_eq!(si, mev_nm_route, max_relative = 1e-6);
        // ≈ 9.5 meV for the calibrated sheet density.
        assert_relative_eq!(si, 9.46, max_relative = 2e-3);
    }

    #[test]
    fn sheet_to_plasma_rejects_nonpositive() {
        let mut p = SheetDensityParams {
            ns_cm2: 0.0,
            m_eff: 0.067,
            l_eff_nm: 38.0,
            eps_s: 10.89,
        };
        assert!(sheet_to_plasma(&p).is_err());
        p.ns_cm2 = 1.8e11;
        p.l_eff_nm = -1.0;
        assert!(sheet_to_plasma(&p).is_err());
    }

    #[test]
    fn sheet_to_plasma_sqrt_scaling() {
        let base = SheetDensityParams {
            ns_cm2: 1.8e11,
            m_eff: 0.067,
            l_eff_nm: 38.0,
            eps_s: 10.89,
        };
        let quad = SheetDensityParams {
            ns_cm2: 4.0 * base.ns_cm2,
            ..base
        };
        assert_relative_eq!(
            sheet_to_plasma(&quad).unwrap(),
            2.0 * sheet_to_plasma(&base).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn doped_gaas_plasma_energy() {
        // 3e18 cm⁻³ with m* = 0.067 → ≈ 248.5 meV (unscreened).
        let hw = volume_to_plasma(3e18, 0.067).unwrap();
        assert_relative_eq!(hw, 248.5, max_relative = 2e-3);
    }
}
