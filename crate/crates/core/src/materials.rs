//! Constituent phases, temperature-dependent moduli and Mori-Tanaka
//! homogenization of a ceramic/metal power-law graded plate.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Temperatures outside this window are polynomial extrapolations.
pub const SUPPORTED_TEMPERATURE: (f64, f64) = (250.0, 1200.0);

/// Default uniform reference temperature in kelvin.
pub const DEFAULT_T_REF: f64 = 300.0;

/// Coefficients of `P = P0 (P_-1/T + 1 + P1 T + P2 T^2 + P3 T^3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TempCoeffs {
    pub p0: f64,
    #[serde(default, rename = "p_1")]
    pub p_m1: f64,
    #[serde(default)]
    pub p1: f64,
    #[serde(default)]
    pub p2: f64,
    #[serde(default)]
    pub p3: f64,
}

impl TempCoeffs {
    pub const fn constant(p0: f64) -> Self {
        Self {
            p0,
            p_m1: 0.0,
            p1: 0.0,
            p2: 0.0,
            p3: 0.0,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.p_m1 == 0.0 && self.p1 == 0.0 && self.p2 == 0.0 && self.p3 == 0.0
    }

    /// Evaluate the property at absolute temperature `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "temperature must be positive, got {t} K"
            )));
        }
        if t < SUPPORTED_TEMPERATURE.0 || t > SUPPORTED_TEMPERATURE.1 {
            log::warn!(
                "temperature {t} K outside [{}, {}] K; extrapolating property polynomial",
                SUPPORTED_TEMPERATURE.0,
                SUPPORTED_TEMPERATURE.1
            );
        }
        Ok(self.p0 * (self.p_m1 / t + 1.0 + t * (self.p1 + t * (self.p2 + t * self.p3))))
    }

    /// Analytic derivative with respect to temperature.
    pub fn derivative(&self, t: f64) -> f64 {
        self.p0 * (-self.p_m1 / (t * t) + self.p1 + 2.0 * self.p2 * t + 3.0 * self.p3 * t * t)
    }
}

/// One constituent (ceramic or metal).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialPhase {
    pub name: String,
    /// Young's modulus coefficients (Pa).
    #[serde(rename = "E")]
    pub e: TempCoeffs,
    pub nu: f64,
    pub rho: f64,
    /// Thermal conductivity, carried as data only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_thermal: Option<f64>,
    /// Thermal expansion coefficients, parsed but unused.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<TempCoeffs>,
}

impl MaterialPhase {
    pub fn validate(&self) -> Result<()> {
        if !(self.e.p0 > 0.0) {
            return Err(Error::Config(format!("phase {}: P0 must be positive", self.name)));
        }
        if !(self.rho > 0.0) {
            return Err(Error::Config(format!("phase {}: rho must be positive", self.name)));
        }
        if !(self.nu > 0.0 && self.nu < 0.5) {
            return Err(Error::Config(format!(
                "phase {}: nu must lie in (0, 0.5), got {}",
                self.name, self.nu
            )));
        }
        Ok(())
    }

    /// Young's modulus at temperature `t`.
    pub fn youngs_at(&self, t: f64) -> Result<f64> {
        let e = property_at_temperature(self, t)?;
        if !(e > 0.0) {
            return Err(Error::Domain(format!(
                "phase {}: non-positive modulus {e} at {t} K",
                self.name
            )));
        }
        Ok(e)
    }

    /// Bulk and shear moduli at temperature `t`.
    pub fn bulk_shear_at(&self, t: f64) -> Result<(f64, f64)> {
        let e = self.youngs_at(t)?;
        Ok((
            e / (3.0 * (1.0 - 2.0 * self.nu)),
            e / (2.0 * (1.0 + self.nu)),
        ))
    }
}

/// `E(T) = P0 (P_-1/T + 1 + P1 T + P2 T^2 + P3 T^3)` for a phase.
pub fn property_at_temperature(phase: &MaterialPhase, t: f64) -> Result<f64> {
    phase.e.eval(t)
}

/// How the through-thickness Poisson ratio is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "value")]
pub enum PoissonMode {
    /// Fixed ratio; the modulus still comes from the homogenized K and G.
    Constant(f64),
    /// Ratio given by the homogenization scheme at every z.
    MoriTanaka,
}

/// How the moduli of the two phases are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Homogenization {
    /// Mori-Tanaka bulk and shear moduli, metal matrix.
    #[default]
    MoriTanaka,
    /// Linear rule of mixtures on `E` and `ν`.
    Voigt,
}

/// A ceramic/metal power-law composition.
#[derive(Debug, Clone, PartialEq)]
pub struct FgmComposition {
    pub ceramic: MaterialPhase,
    pub metal: MaterialPhase,
    /// Gradient index.
    pub n: f64,
    pub t_ref: f64,
    pub poisson: PoissonMode,
    pub homogenization: Homogenization,
}

/// Effective properties at one through-thickness station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalProperties {
    pub vc: f64,
    pub e: f64,
    pub nu: f64,
    pub rho: f64,
}

impl FgmComposition {
    /// Builds a composition, choosing constant-ν when both phases share one ratio.
    pub fn new(ceramic: MaterialPhase, metal: MaterialPhase, n: f64, t_ref: f64) -> Result<Self> {
        let poisson = if ceramic.nu == metal.nu {
            PoissonMode::Constant(ceramic.nu)
        } else {
            PoissonMode::MoriTanaka
        };
        Self::with_poisson(ceramic, metal, n, t_ref, poisson)
    }

    pub fn with_poisson(
        ceramic: MaterialPhase,
        metal: MaterialPhase,
        n: f64,
        t_ref: f64,
        poisson: PoissonMode,
    ) -> Result<Self> {
        ceramic.validate()?;
        metal.validate()?;
        if !(n >= 0.0) || !n.is_finite() {
            return Err(Error::Domain(format!("gradient index must be >= 0, got {n}")));
        }
        if let PoissonMode::Constant(nu) = poisson {
            if !(nu > 0.0 && nu < 0.5) {
                return Err(Error::Config(format!("constant Poisson ratio {nu} outside (0, 0.5)")));
            }
        }
        // Surface moduli must be positive at the reference temperature.
        ceramic.youngs_at(t_ref)?;
        metal.youngs_at(t_ref)?;
        Ok(Self {
            ceramic,
            metal,
            n,
            t_ref,
            poisson,
            homogenization: Homogenization::MoriTanaka,
        })
    }

    pub fn with_homogenization(mut self, h: Homogenization) -> Self {
        self.homogenization = h;
        self
    }

    /// Ceramic volume fraction `((2z + h) / 2h)^n`.
    pub fn volume_fraction_ceramic(&self, z: f64, h: f64) -> Result<f64> {
        check_z(z, h)?;
        let s = ((2.0 * z + h) / (2.0 * h)).clamp(0.0, 1.0);
        Ok(vc_from_fraction(s, self.n))
    }

    /// Effective bulk and shear moduli for ceramic fraction `vc`.
    pub fn mori_tanaka_moduli(&self, vc: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&vc) {
            return Err(Error::Domain(format!("volume fraction {vc} outside [0, 1]")));
        }
        let (kc, gc) = self.ceramic.bulk_shear_at(self.t_ref)?;
        let (km, gm) = self.metal.bulk_shear_at(self.t_ref)?;
        Ok(mori_tanaka(kc, gc, km, gm, vc))
    }

    pub fn density_at(&self, z: f64, h: f64) -> Result<f64> {
        let vc = self.volume_fraction_ceramic(z, h)?;
        Ok(self.density_for_fraction(vc))
    }

    pub fn density_for_fraction(&self, vc: f64) -> f64 {
        self.ceramic.rho * vc + self.metal.rho * (1.0 - vc)
    }

    /// Modulus, Poisson ratio and density for ceramic fraction `vc`.
    pub fn properties_for_fraction(&self, vc: f64) -> Result<LocalProperties> {
        let (e, nu_mixed) = match self.homogenization {
            Homogenization::MoriTanaka => {
                let (k, g) = self.mori_tanaka_moduli(vc)?;
                young_poisson_from_kg(k, g)?
            }
            Homogenization::Voigt => {
                if !(0.0..=1.0).contains(&vc) {
                    return Err(Error::Domain(format!("volume fraction {vc} outside [0, 1]")));
                }
                let ec = self.ceramic.youngs_at(self.t_ref)?;
                let em = self.metal.youngs_at(self.t_ref)?;
                (
                    em + (ec - em) * vc,
                    self.metal.nu + (self.ceramic.nu - self.metal.nu) * vc,
                )
            }
        };
        let nu = match self.poisson {
            PoissonMode::Constant(nu) => nu,
            PoissonMode::MoriTanaka => nu_mixed,
        };
        Ok(LocalProperties {
            vc,
            e,
            nu,
            rho: self.density_for_fraction(vc),
        })
    }

    pub fn properties_at(&self, z: f64, h: f64) -> Result<LocalProperties> {
        let vc = self.volume_fraction_ceramic(z, h)?;
        self.properties_for_fraction(vc)
    }
}

pub(crate) fn vc_from_fraction(s: f64, n: f64) -> f64 {
    if n == 0.0 {
        1.0
    } else {
        s.powf(n)
    }
}

fn check_z(z: f64, h: f64) -> Result<()> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("thickness must be positive, got {h}")));
    }
    let half = 0.5 * h;
    let slack = 1e-12 * h;
    if !(z >= -half - slack && z <= half + slack) {
        return Err(Error::Domain(format!("z = {z} outside [-h/2, h/2] for h = {h}")));
    }
    Ok(())
}

/// Mori-Tanaka estimate with metal matrix and ceramic inclusions.
pub fn mori_tanaka(kc: f64, gc: f64, km: f64, gm: f64, vc: f64) -> (f64, f64) {
    let vm = 1.0 - vc;
    let k = km + (kc - km) * vc / (1.0 + vm * 3.0 * (kc - km) / (3.0 * km + 4.0 * gm));
    let f1 = gm * (9.0 * km + 8.0 * gm) / (6.0 * (km + 2.0 * gm));
    let g = gm + (gc - gm) * vc / (1.0 + vm * (gc - gm) / (gm + f1));
    (k, g)
}

/// Isotropic `E = 9KG / (3K + G)` and `ν = (3K - 2G) / (2(3K + G))`.
pub fn young_poisson_from_kg(k: f64, g: f64) -> Result<(f64, f64)> {
    if !(k > 0.0 && g > 0.0) {
        return Err(Error::Domain(format!("moduli must be positive, got K={k}, G={g}")));
    }
    let e = 9.0 * k * g / (3.0 * k + g);
    let nu = (3.0 * k - 2.0 * g) / (2.0 * (3.0 * k + g));
    Ok((e, nu))
}

fn phase(name: &str, e: TempCoeffs, nu: f64, rho: f64) -> MaterialPhase {
    MaterialPhase {
        name: name.to_string(),
        e,
        nu,
        rho,
        k_thermal: None,
        alpha: None,
    }
}

/// Built-in phases: aluminium, alumina, zirconia, SUS304 steel and silicon nitride.
pub fn builtin_library() -> BTreeMap<String, MaterialPhase> {
    let mut lib = BTreeMap::new();
    lib.insert("al".into(), phase("Al", TempCoeffs::constant(70.0e9), 0.30, 2702.0));
    lib.insert("al2o3".into(), phase("Al2O3", TempCoeffs::constant(380.0e9), 0.30, 3800.0));
    lib.insert("zro2".into(), phase("ZrO2", TempCoeffs::constant(200.0e9), 0.30, 5700.0));
    let mut sus = phase(
        "SUS304",
        TempCoeffs {
            p0: 201.04e9,
            p_m1: 0.0,
            p1: 3.079e-4,
            p2: -6.534e-7,
            p3: 0.0,
        },
        0.28,
        8166.0,
    );
    sus.k_thermal = Some(12.04);
    sus.alpha = Some(TempCoeffs {
        p0: 12.330e-6,
        p_m1: 0.0,
        p1: 8.086e-4,
        p2: 0.0,
        p3: 0.0,
    });
    lib.insert("sus304".into(), sus);
    let mut si = phase(
        "Si3N4",
        TempCoeffs {
            p0: 348.43e9,
            p_m1: 0.0,
            p1: -3.070e-4,
            p2: 2.160e-7,
            p3: -8.946e-11,
        },
        0.28,
        2370.0,
    );
    si.k_thermal = Some(9.19);
    si.alpha = Some(TempCoeffs {
        p0: 5.8723e-6,
        p_m1: 0.0,
        p1: 9.095e-4,
        p2: 0.0,
        p3: 0.0,
    });
    lib.insert("si3n4".into(), si);
    lib
}

#[derive(Deserialize)]
struct LibraryFile {
    #[serde(default)]
    phases: BTreeMap<String, MaterialPhase>,
}

/// Parse a material library (TOML `[phases.<key>]` tables).
pub fn parse_library(text: &str) -> Result<BTreeMap<String, MaterialPhase>> {
    let file: LibraryFile =
        toml::from_str(text).map_err(|e| Error::Config(format!("material library: {e}")))?;
    for (key, p) in &file.phases {
        p.validate().map_err(|e| e.context(&format!("phases.{key}")))?;
    }
    Ok(file.phases)
}

/// Built-in phases overridden/extended by the entries of a library file.
pub fn load_library(path: &Path) -> Result<BTreeMap<String, MaterialPhase>> {
    let text = std::fs::read_to_string(path)?;
    let mut lib = builtin_library();
    lib.extend(parse_library(&text)?);
    Ok(lib)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lib(key: &str) -> MaterialPhase {
        builtin_library()[key].clone()
    }

    #[test]
    fn si3n4_modulus_at_room_temperature() {
        // 348.43e9 * (1 - 3.070e-4*300 + 2.160e-7*300^2 - 8.946e-11*300^3)
        let e = property_at_temperature(&lib("si3n4"), 300.0).unwrap();
        assert!((e - 348.43e9 * 0.924_924_58).abs() / e < 1e-9);
        assert!((e - 3.2227e11).abs() / e < 1e-4);
    }

    #[test]
    fn sus304_modulus_at_room_temperature() {
        let e = property_at_temperature(&lib("sus304"), 300.0).unwrap();
        let expect = 201.04e9 * (1.0 + 3.079e-4 * 300.0 - 6.534e-7 * 300.0 * 300.0);
        assert!((e - expect).abs() / expect < 1e-14);
    }

    #[test]
    fn constant_polynomial_ignores_temperature() {
        let p = lib("al");
        for t in [1.0, 300.0, 5000.0] {
            assert_eq!(property_at_temperature(&p, t).unwrap(), 70.0e9);
        }
    }

    #[test]
    fn non_positive_temperature_is_rejected() {
        assert!(matches!(
            property_at_temperature(&lib("si3n4"), 0.0),
            Err(Error::Domain(_))
        ));
        assert!(property_at_temperature(&lib("si3n4"), -5.0).is_err());
    }

    #[test]
    fn polynomial_derivative_matches_central_difference() {
        let c = lib("si3n4").e;
        let t = 300.0;
        let dt = 1e-3;
        let fd = (c.eval(t + dt).unwrap() - c.eval(t - dt).unwrap()) / (2.0 * dt);
        let an = c.derivative(t);
        assert!((fd - an).abs() / an.abs() < 1e-6, "{fd} vs {an}");
    }

    fn si_sus(n: f64) -> FgmComposition {
        FgmComposition::new(lib("si3n4"), lib("sus304"), n, 300.0).unwrap()
    }

    #[test]
    fn voigt_mixes_linearly_above_mori_tanaka() {
        let mt = FgmComposition::new(lib("al2o3"), lib("al"), 1.0, 300.0).unwrap();
        let v = mt.clone().with_homogenization(Homogenization::Voigt);
        let p = v.properties_for_fraction(0.25).unwrap();
        assert!((p.e - (70e9 + 0.25 * 310e9)).abs() < 1e-3);
        assert_eq!(p.nu, 0.3);
        // Voigt is the upper bound of any isotropic mixture
        let q = mt.properties_for_fraction(0.25).unwrap();
        assert!(q.e < p.e);
        assert_eq!(q.rho, p.rho);
    }

    #[test]
    fn volume_fraction_surfaces_and_midpoint() {
        let h = 0.1;
        for n in [0.2, 1.0, 5.0] {
            let c = si_sus(n);
            assert_eq!(c.volume_fraction_ceramic(h / 2.0, h).unwrap(), 1.0);
            assert_eq!(c.volume_fraction_ceramic(-h / 2.0, h).unwrap(), 0.0);
        }
        assert!((si_sus(1.0).volume_fraction_ceramic(0.0, h).unwrap() - 0.5).abs() < 1e-15);
        let c0 = si_sus(0.0);
        for z in [-0.05, -0.01, 0.0, 0.03] {
            assert_eq!(c0.volume_fraction_ceramic(z, h).unwrap(), 1.0);
        }
        assert!(matches!(si_sus(1.0).volume_fraction_ceramic(0.06, h), Err(Error::Domain(_))));
    }

    #[test]
    fn mori_tanaka_end_points_are_the_phases() {
        let c = si_sus(1.0);
        let (kc, gc) = c.ceramic.bulk_shear_at(300.0).unwrap();
        let (km, gm) = c.metal.bulk_shear_at(300.0).unwrap();
        let (k0, g0) = c.mori_tanaka_moduli(0.0).unwrap();
        let (k1, g1) = c.mori_tanaka_moduli(1.0).unwrap();
        assert!((k0 - km).abs() / km < 1e-14 && (g0 - gm).abs() / gm < 1e-14);
        assert!((k1 - kc).abs() / kc < 1e-14 && (g1 - gc).abs() / gc < 1e-14);
        assert!(c.mori_tanaka_moduli(1.2).is_err());
    }

    #[test]
    fn mori_tanaka_al_alumina_half_fraction() {
        // Oracle: symbol-by-symbol evaluation for E = 70/380 GPa, nu = 0.3, Vc = 0.5:
        // Km = 58.333 GPa, Gm = 26.923 GPa, Kc = 316.667 GPa, Gc = 146.154 GPa
        // f1 = 29.61538 GPa, K = 112.81683 GPa, G = 55.94116 GPa,
        // E = 144.01913 GPa, nu = 0.2872375 (independent script).
        let c = FgmComposition::new(lib("al2o3"), lib("al"), 1.0, 300.0).unwrap();
        let (k, g) = c.mori_tanaka_moduli(0.5).unwrap();
        let km = 70e9 / 1.2;
        let gm = 70e9 / 2.6;
        let kc = 380e9 / 1.2;
        let gc = 380e9 / 2.6;
        let f1 = gm * (9.0 * km + 8.0 * gm) / (6.0 * (km + 2.0 * gm));
        let k_ref = km + (kc - km) * 0.5 / (1.0 + 0.5 * 3.0 * (kc - km) / (3.0 * km + 4.0 * gm));
        let g_ref = gm + (gc - gm) * 0.5 / (1.0 + 0.5 * (gc - gm) / (gm + f1));
        assert!((k - k_ref).abs() / k_ref < 1e-14);
        assert!((g - g_ref).abs() / g_ref < 1e-14);
        assert!((k / 1e9 - 112.81683).abs() < 1e-4, "K = {}", k / 1e9);
        assert!((g / 1e9 - 55.94116).abs() < 1e-4, "G = {}", g / 1e9);
        let (e, nu) = young_poisson_from_kg(k, g).unwrap();
        let e_ref = 9.0 * k_ref * g_ref / (3.0 * k_ref + g_ref);
        assert!((e - e_ref).abs() / e_ref < 1e-14);
        assert!((e / 1e9 - 144.01913).abs() < 1e-4, "E = {}", e / 1e9);
        assert!((nu - 0.287_237_5).abs() < 1e-6, "nu = {nu}");
    }

    #[test]
    fn isotropic_roundtrip_and_equal_moduli() {
        let e0 = 70e9;
        let (e, nu) = young_poisson_from_kg(e0 / (3.0 * 0.4), e0 / 2.6).unwrap();
        assert!((e - e0).abs() / e0 < 1e-12);
        assert!((nu - 0.3).abs() < 1e-12);
        let (_, nu) = young_poisson_from_kg(5.0, 5.0).unwrap();
        assert!((nu - 0.125).abs() < 1e-15);
        assert!(young_poisson_from_kg(0.0, 1.0).is_err());
    }

    #[test]
    fn density_rule_of_mixtures() {
        let h = 0.2;
        assert!((si_sus(1.0).density_at(0.0, h).unwrap() - 5268.0).abs() < 1e-9);
        assert!((si_sus(3.0).density_at(h / 2.0, h).unwrap() - 2370.0).abs() < 1e-9);
        let expect = 8166.0 + (2370.0 - 8166.0) * 0.75f64.powi(2);
        assert!((si_sus(2.0).density_at(h / 4.0, h).unwrap() - expect).abs() < 1e-9);
        assert!(si_sus(2.0).density_at(-0.2, h).is_err());
    }

    #[test]
    fn library_file_roundtrip() {
        let text = r#"
            [phases.test]
            name = "Test"
            E = { p0 = 1.0e9, p1 = 1.0e-4 }
            nu = 0.25
            rho = 1000.0
        "#;
        let lib = parse_library(text).unwrap();
        let p = &lib["test"];
        assert_eq!(p.e.p1, 1.0e-4);
        assert_eq!(p.e.p_m1, 0.0);
        let bad = "[phases.x]\nname='x'\nE={p0=1.0}\nnu=0.7\nrho=1.0\n";
        assert!(matches!(parse_library(bad), Err(Error::Config(_))));
    }

    proptest! {
        #[test]
        fn homogenized_moduli_are_bounded_by_phases(
            vc in 0.0f64..=1.0,
            em in 50e9f64..250e9,
            ratio in 1.0f64..6.0,
            nu in 0.2f64..0.35,
        ) {
            let ec = em * ratio;
            let kc = ec / (3.0 * (1.0 - 2.0 * nu));
            let gc = ec / (2.0 * (1.0 + nu));
            let km = em / (3.0 * (1.0 - 2.0 * nu));
            let gm = em / (2.0 * (1.0 + nu));
            let (k, g) = mori_tanaka(kc, gc, km, gm, vc);
            let (e, nu_eff) = young_poisson_from_kg(k, g).unwrap();
            let tol = 1e-9;
            prop_assert!(k >= km * (1.0 - tol) && k <= kc * (1.0 + tol));
            prop_assert!(g >= gm * (1.0 - tol) && g <= gc * (1.0 + tol));
            prop_assert!(e >= em * (1.0 - tol) && e <= ec * (1.0 + tol));
            prop_assert!(nu_eff > 0.0 && nu_eff < 0.5);
        }

        #[test]
        fn volume_fraction_is_monotone(n1 in 0.0f64..10.0, dn in 0.0f64..5.0, s1 in 0.0f64..1.0, s2 in 0.0f64..1.0) {
            let h = 0.1;
            let c1 = si_sus(n1);
            let c2 = si_sus(n1 + dn);
            let (lo, hi) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
            let z_lo = (lo - 0.5) * h;
            let z_hi = (hi - 0.5) * h;
            prop_assert!(c1.volume_fraction_ceramic(z_lo, h).unwrap() <= c1.volume_fraction_ceramic(z_hi, h).unwrap());
            if lo > 0.0 {
                prop_assert!(c1.volume_fraction_ceramic(z_lo, h).unwrap() + 1e-15 >= c2.volume_fraction_ceramic(z_lo, h).unwrap());
            }
            let v = c1.volume_fraction_ceramic(z_lo, h).unwrap();
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }
}
