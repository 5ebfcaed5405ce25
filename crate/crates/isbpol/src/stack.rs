//! Multilayer device definition: layers, material table, text format and the
//! built-in `paper` preset (quantum-cascade microcavity).
//!
//! Device file grammar (line oriented, whitespace separated, `#` comments):
//!
//! ```text
//! material <name> const <eps>
//! material <name> drude <eps_inf> <Ep_meV> <gamma_meV>
//! material <name> isb <eps_bg> <E12_meV> <wp_meV> <gamma12_meV> <iso|aniso>
//! incident <name>
//! layer <name> <thickness_nm> [label...]
//! exit <name>
//! ```
//!
//! Layers are listed from the incident side. Names are case-sensitive,
//! energies in meV, thicknesses in nm. The trailing label on `layer` lines is
//! optional free text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{self, MaterialModel, SheetDensityParams};

/// One finite layer of the stack.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub material: String,
    pub thickness_nm: f64,
    pub label: String,
}

impl Layer {
    pub fn new(material: impl Into<String>, thickness_nm: f64) -> Self {
        Layer {
            material: material.into(),
            thickness_nm,
            label: String::new(),
        }
    }

    fn labeled(material: &str, thickness_nm: f64, label: &str) -> Self {
        Layer {
            material: material.into(),
            thickness_nm,
            label: label.into(),
        }
    }
}

/// A validated multilayer device: semi-infinite incident and exit media
/// around an ordered list of finite layers, plus the material table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stack {
    pub incident: String,
    pub layers: Vec<Layer>,
    pub exit: String,
    pub materials: BTreeMap<String, MaterialModel>,
}

impl Stack {
    /// Checks all structural invariants: nonempty layer list, positive finite
    /// thicknesses, every referenced material defined, and a lossless
    /// (constant real) incident medium so the internal angle is well defined.
    pub fn validate(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Err(Error::domain("stack must contain at least one layer"));
        }
        for (name, model) in &self.materials {
            model
                .validate()
                .map_err(|e| Error::domain(format!("material '{name}': {e}")))?;
        }
        let lookup = |name: &str| {
            self.materials
                .get(name)
                .ok_or_else(|| Error::domain(format!("unknown material '{name}'")))
        };
        let inc = lookup(&self.incident)?;
        if !inc.is_lossless_constant() {
            return Err(Error::domain(format!(
                "incident medium '{}' must be a lossless constant dielectric",
                self.incident
            )));
        }
        lookup(&self.exit)?;
        for (i, layer) in self.layers.iter().enumerate() {
            lookup(&layer.material)?;
            if !layer.thickness_nm.is_finite() || layer.thickness_nm <= 0.0 {
                return Err(Error::domain(format!(
                    "layer {} ('{}') thickness must be > 0 and finite, got {}",
                    i, layer.material, layer.thickness_nm
                )));
            }
        }
        Ok(())
    }

    pub fn material(&self, name: &str) -> Option<&MaterialModel> {
        self.materials.get(name)
    }

    /// Total thickness of the finite layers in nm.
    pub fn total_thickness_nm(&self) -> f64 {
        self.layers.iter().map(|l| l.thickness_nm).sum()
    }

    /// Renders the stack in the device-file grammar. `parse_stack` of the
    /// result reproduces the stack exactly (floats are printed in shortest
    /// round-trip form).
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, model) in &self.materials {
            match model {
                MaterialModel::Constant { eps_bg } => {
                    let _ = writeln!(out, "material {name} const {eps_bg}");
                }
                MaterialModel::Drude {
                    eps_inf,
                    plasma_energy_mev,
                    damping_mev,
                } => {
                    let _ = writeln!(
                        out,
                        "material {name} drude {eps_inf} {plasma_energy_mev} {damping_mev}"
                    );
                }
                MaterialModel::IsbLorentz {
                    eps_bg,
                    transition_mev,
                    plasma_mev,
                    linewidth_mev,
                    anisotropic,
                } => {
                    let axis = if *anisotropic { "aniso" } else { "iso" };
                    let _ = writeln!(
                        out,
                        "material {name} isb {eps_bg} {transition_mev} {plasma_mev} {linewidth_mev} {axis}"
                    );
                }
            }
        }
        let _ = writeln!(out, "incident {}", self.incident);
        for layer in &self.layers {
            if layer.label.is_empty() {
                let _ = writeln!(out, "layer {} {}", layer.material, layer.thickness_nm);
            } else {
                let _ = writeln!(
                    out,
                    "layer {} {} {}",
                    layer.material, layer.thickness_nm, layer.label
                );
            }
        }
        let _ = writeln!(out, "exit {}", self.exit);
        out
    }
}

/// Parses a device file into a validated [`Stack`].
pub fn parse_stack(text: &str) -> Result<Stack> {
    let mut materials = BTreeMap::new();
    let mut incident: Option<String> = None;
    let mut exit: Option<String> = None;
    let mut layers = Vec::new();

    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let parse_f64 = |line: usize, tok: &str, what: &str| -> Result<f64> {
        tok.parse::<f64>()
            .map_err(|_| err(line, format!("invalid {what}: '{tok}'")))
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match tokens[0] {
            "material" => {
                if tokens.len() < 3 {
                    return Err(err(line_no, "expected: material <name> <kind> ...".into()));
                }
                let name = tokens[1].to_string();
                let model = match tokens[2] {
                    "const" => {
                        if tokens.len() != 4 {
                            return Err(err(line_no, "const takes one value: <eps>".into()));
                        }
                        MaterialModel::Constant {
                            eps_bg: parse_f64(line_no, tokens[3], "eps")?,
                        }
                    }
                    "drude" => {
                        if tokens.len() != 6 {
                            return Err(err(
                                line_no,
                                "drude takes <eps_inf> <Ep_meV> <gamma_meV>".into(),
                            ));
                        }
                        MaterialModel::Drude {
                            eps_inf: parse_f64(line_no, tokens[3], "eps_inf")?,
                            plasma_energy_mev: parse_f64(line_no, tokens[4], "Ep_meV")?,
                            damping_mev: parse_f64(line_no, tokens[5], "gamma_meV")?,
                        }
                    }
                    "isb" => {
                        if tokens.len() != 8 {
                            return Err(err(
                                line_no,
                                "isb takes <eps_bg> <E12_meV> <wp_meV> <gamma12_meV> <iso|aniso>"
                                    .into(),
                            ));
                        }
                        let anisotropic = match tokens[7] {
                            "aniso" => true,
                            "iso" => false,
                            other => {
                                return Err(err(
                                    line_no,
                                    format!("expected iso|aniso, got '{other}'"),
                                ))
                            }
                        };
                        MaterialModel::IsbLorentz {
                            eps_bg: parse_f64(line_no, tokens[3], "eps_bg")?,
                            transition_mev: parse_f64(line_no, tokens[4], "E12_meV")?,
                            plasma_mev: parse_f64(line_no, tokens[5], "wp_meV")?,
                            linewidth_mev: parse_f64(line_no, tokens[6], "gamma12_meV")?,
                            anisotropic,
                        }
                    }
                    kind => {
                        return Err(err(line_no, format!("unknown material kind '{kind}'")))
                    }
                };
                model
                    .validate()
                    .map_err(|e| err(line_no, format!("material '{name}': {e}")))?;
                if materials.insert(name.clone(), model).is_some() {
                    return Err(err(line_no, format!("duplicate material '{name}'")));
                }
            }
            "incident" => {
                if tokens.len() != 2 {
                    return Err(err(line_no, "expected: incident <name>".into()));
                }
                if incident.replace(tokens[1].to_string()).is_some() {
                    return Err(err(line_no, "duplicate incident line".into()));
                }
            }
            "exit" => {
                if tokens.len() != 2 {
                    return Err(err(line_no, "expected: exit <name>".into()));
                }
                if exit.replace(tokens[1].to_string()).is_some() {
                    return Err(err(line_no, "duplicate exit line".into()));
                }
            }
            "layer" => {
                if tokens.len() < 3 {
                    return Err(err(line_no, "expected: layer <name> <thickness_nm>".into()));
                }
                let thickness = parse_f64(line_no, tokens[2], "thickness")?;
                if !thickness.is_finite() || thickness <= 0.0 {
                    return Err(err(
                        line_no,
                        format!("layer thickness must be > 0, got {thickness}"),
                    ));
                }
                let label = tokens[3..].join(" ");
                layers.push(Layer {
                    material: tokens[1].to_string(),
                    thickness_nm: thickness,
                    label,
                });
            }
            other => return Err(err(line_no, format!("unknown directive '{other}'"))),
        }
    }

    let incident = incident.ok_or_else(|| Error::domain("missing 'incident' line"))?;
    let exit = exit.ok_or_else(|| Error::domain("missing 'exit' line"))?;
    let stack = Stack {
        incident,
        layers,
        exit,
        materials,
    };
    stack.validate()?;
    Ok(stack)
}

/// One entry of a quantum-cascade period: thickness plus barrier/doping flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodLayer {
    pub thickness_nm: f64,
    pub is_barrier: bool,
    pub is_doped: bool,
}

/// Layer sequence of one period, repeated `repetitions` times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodSequence {
    pub layers: Vec<PeriodLayer>,
    pub repetitions: usize,
}

impl PeriodSequence {
    pub fn validate(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Err(Error::domain("period sequence must not be empty"));
        }
        if self.repetitions < 1 {
            return Err(Error::domain("repetitions must be ≥ 1"));
        }
        for l in &self.layers {
            if !l.thickness_nm.is_finite() || l.thickness_nm <= 0.0 {
                return Err(Error::domain(format!(
                    "period layer thickness must be > 0, got {}",
                    l.thickness_nm
                )));
            }
        }
        Ok(())
    }
}

/// Sum of one period's thicknesses in nm.
pub fn period_thickness(seq: &PeriodSequence) -> Result<f64> {
    seq.validate()?;
    Ok(seq.layers.iter().map(|l| l.thickness_nm).sum())
}

/// The quantum-cascade period of the `paper` preset, in nm from the main
/// (largest) well: 6.4/3.6/3.3/1.6/3.2/1.8/2.3/2.0/1.9/2.0/1.8/2.0/2.2/3.9,
/// barriers alternating with wells, the middle six layers Si-doped at
/// 3×10¹⁷ cm⁻³, repeated 30 times.
pub fn paper_period_sequence() -> PeriodSequence {
    const T: [f64; 14] = [
        6.4, 3.6, 3.3, 1.6, 3.2, 1.8, 2.3, 2.0, 1.9, 2.0, 1.8, 2.0, 2.2, 3.9,
    ];
    // Doped range: layers 3.2/1.8/2.3/2.0/1.9/2.0 (indices 4..=9).
    let layers = T
        .iter()
        .enumerate()
        .map(|(i, &t)| PeriodLayer {
            thickness_nm: t,
            is_barrier: i % 2 == 1,
            is_doped: (4..=9).contains(&i),
        })
        .collect();
    PeriodSequence {
        layers,
        repetitions: 30,
    }
}

/// Volume doping of the doped period layers in the `paper` preset, cm⁻³.
pub const PAPER_PERIOD_DOPING_CM3: f64 = 3e17;

/// Tunable parameters of the `paper` device preset. Everything the published
/// stack does not pin numerically is exposed here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperPresetConfig {
    /// Calibrated 2D electron density per period, cm⁻².
    pub sheet_density_cm2: f64,
    /// Intersubband transition energy, meV.
    pub e12_mev: f64,
    /// Intersubband linewidth γ12, meV.
    pub isb_linewidth_mev: f64,
    /// Oscillator smearing length entering ħωP, nm.
    pub l_eff_nm: f64,
    /// Screening constant entering ħωP.
    pub eps_screen: f64,
    /// Quantum-well effective mass, in m₀.
    pub m_eff: f64,
    /// Gold mirror Drude parameters (Ep, γ), meV.
    pub au_plasma_mev: f64,
    pub au_damping_mev: f64,
    /// Drude damping of the doped GaAs layers, meV.
    pub doped_damping_mev: f64,
    /// Apply the intersubband term to eps_z only (default) or isotropically.
    pub anisotropic_isb: bool,
    /// Expand the 30 periods explicitly instead of one effective layer.
    pub explicit_periods: bool,
}

impl Default for PaperPresetConfig {
    fn default() -> Self {
        PaperPresetConfig {
            sheet_density_cm2: 1.8e11,
            e12_mev: 163.0,
            isb_linewidth_mev: 8.0,
            l_eff_nm: 38.0,
            eps_screen: 10.89,
            m_eff: 0.067,
            au_plasma_mev: 8900.0,
            au_damping_mev: 65.0,
            doped_damping_mev: 10.0,
            anisotropic_isb: true,
            explicit_periods: false,
        }
    }
}

/// Background permittivities: GaAs, Al0.95Ga0.05As, Al0.45Ga0.55As.
pub const EPS_GAAS: f64 = 10.89;
pub const EPS_ALGAAS95: f64 = 9.18;
pub const EPS_ALGAAS45: f64 = 9.9;

/// Builds the `paper` device with the default configuration: from the GaAs
/// substrate toward the mirror, Al0.95Ga0.05As 520 nm, GaAs (3×10¹⁸) 560 nm,
/// 1140 nm active region, GaAs (1×10¹⁷) 86 nm, GaAs (3×10¹⁸) 17 nm, exit Au.
pub fn paper_device() -> Stack {
    paper_device_with(&PaperPresetConfig::default())
}

/// Builds the `paper` device with explicit configuration.
pub fn paper_device_with(cfg: &PaperPresetConfig) -> Stack {
    let seq = paper_period_sequence();
    let period_nm = period_thickness(&seq).expect("built-in sequence is valid");
    let active_nm = period_nm * seq.repetitions as f64;

    let wp = if cfg.sheet_density_cm2 > 0.0 {
        materials::sheet_to_plasma(&SheetDensityParams {
            ns_cm2: cfg.sheet_density_cm2,
            m_eff: cfg.m_eff,
            l_eff_nm: cfg.l_eff_nm,
            eps_s: cfg.eps_screen,
        })
        .expect("preset sheet-density parameters are positive")
    } else {
        0.0
    };

    let mut mats = BTreeMap::new();
    mats.insert("gaas".into(), MaterialModel::Constant { eps_bg: EPS_GAAS });
    mats.insert(
        "algaas95".into(),
        MaterialModel::Constant {
            eps_bg: EPS_ALGAAS95,
        },
    );
    mats.insert(
        "au".into(),
        MaterialModel::Drude {
            eps_inf: 1.0,
            plasma_energy_mev: cfg.au_plasma_mev,
            damping_mev: cfg.au_damping_mev,
        },
    );
    let doped = |n_cm3: f64| MaterialModel::Drude {
        eps_inf: EPS_GAAS,
        plasma_energy_mev: materials::volume_to_plasma(n_cm3, cfg.m_eff)
            .expect("doping densities are positive"),
        damping_mev: cfg.doped_damping_mev,
    };
    mats.insert("gaas_n3e18".into(), doped(3e18));
    mats.insert("gaas_n1e17".into(), doped(1e17));

    let mut layers = vec![
        Layer::labeled("algaas95", 520.0, "Al0.95Ga0.05As spacer (undoped)"),
        Layer::labeled("gaas_n3e18", 560.0, "GaAs contact n=3e18 cm-3"),
    ];

    if cfg.explicit_periods {
        // Wells carry the oscillator, barriers stay dielectric. The well
        // plasma energy is rescaled so the strength integrated over one
        // period matches the effective layer: S_w·t_wells = S_eff·period.
        let wells_nm: f64 = seq
            .layers
            .iter()
            .filter(|l| !l.is_barrier)
            .map(|l| l.thickness_nm)
            .sum();
        let wp_well = wp * (period_nm / wells_nm).sqrt();
        mats.insert(
            "well".into(),
            MaterialModel::IsbLorentz {
                eps_bg: EPS_GAAS,
                transition_mev: cfg.e12_mev,
                plasma_mev: wp_well,
                linewidth_mev: cfg.isb_linewidth_mev,
                anisotropic: cfg.anisotropic_isb,
            },
        );
        mats.insert(
            "barrier".into(),
            MaterialModel::Constant {
                eps_bg: EPS_ALGAAS45,
            },
        );
        for rep in 0..seq.repetitions {
            for l in &seq.layers {
                let name = if l.is_barrier { "barrier" } else { "well" };
                layers.push(Layer::labeled(
                    name,
                    l.thickness_nm,
                    &format!("period {}", rep + 1),
                ));
            }
        }
    } else {
        mats.insert(
            "active".into(),
            MaterialModel::IsbLorentz {
                eps_bg: EPS_GAAS,
                transition_mev: cfg.e12_mev,
                plasma_mev: wp,
                linewidth_mev: cfg.isb_linewidth_mev,
                anisotropic: cfg.anisotropic_isb,
            },
        );
        layers.push(Layer::labeled("active", active_nm, "QC active region"));
    }

    layers.push(Layer::labeled("gaas_n1e17", 86.0, "GaAs n=1e17 cm-3"));
    layers.push(Layer::labeled("gaas_n3e18", 17.0, "GaAs cap n=3e18 cm-3"));

    let stack = Stack {
        incident: "gaas".into(),
        layers,
        exit: "au".into(),
        materials: mats,
    };
    debug_assert!(stack.validate().is_ok());
    stack
}

/// Returns a copy of `stack` with the plasma energy of every IsbLorentz
/// material set to `wp_mev` (used to switch the coupling off for bare-cavity
/// scans).
pub fn with_isb_plasma(stack: &Stack, wp_mev: f64) -> Stack {
    let mut out = stack.clone();
    for model in out.materials.values_mut() {
        if let MaterialModel::IsbLorentz { plasma_mev, .. } = model {
            *plasma_mev = wp_mev;
        }
    }
    out
}
