//! End-to-end waveguide runs: mesh, assembly, Schwarz preconditioning,
//! GMRES, spectra and error against the analytic solution.
//!
//! Results are written as CSV rows with the columns of [`CSV_HEADER`].

use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;

use crate::assembly::{assemble, l2_relative_error, solve_direct, ComplexSparseSystem};
use crate::dofmap::DofMap;
use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::interpolation::{evaluate_in_simplex, Field3};
use crate::krylov::{gmres, preconditioned_spectrum, GmresOptions, LinearOperator, PreconditionSide, SolveReport, SpectrumReport};
use crate::elements::LocalBasis;
use crate::mesh::{cells_for, generate_structured_mesh, Mesh};
use crate::physics::{
    planar_mesh_size, solid_beta, solid_mesh_size, solid_omega, PhysicalParams, ReferenceSolution, LOSSY_CONDUCTIVITY,
    OMEGA_1, OMEGA_2, OMEGA_3, OMEGA_BETA, PLANAR_EXTENTS, SOLID_EXTENTS,
};
use crate::schwarz::{decompose, Decomposition, SchwarzPreconditioner, SchwarzVariant};

/// Frequency selector. In 3d the value fixes the propagation constant
/// `β = ω √(με)` rather than the source frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frequency {
    Omega1,
    Omega2,
    Omega3,
    Explicit(f64),
}

impl Frequency {
    pub fn value(self) -> f64 {
        match self {
            Frequency::Omega1 => OMEGA_1,
            Frequency::Omega2 => OMEGA_2,
            Frequency::Omega3 => OMEGA_3,
            Frequency::Explicit(w) => w,
        }
    }
}

impl FromStr for Frequency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "w1" | "omega1" => Ok(Frequency::Omega1),
            "2" | "w2" | "omega2" => Ok(Frequency::Omega2),
            "3" | "w3" | "omega3" => Ok(Frequency::Omega3),
            _ => s
                .parse::<f64>()
                .ok()
                .filter(|w| *w > 0.0)
                .map(Frequency::Explicit)
                .ok_or_else(|| Error::Config(format!("unknown frequency '{s}'"))),
        }
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frequency::Omega1 => write!(f, "omega1"),
            Frequency::Omega2 => write!(f, "omega2"),
            Frequency::Omega3 => write!(f, "omega3"),
            Frequency::Explicit(w) => write!(f, "{w:e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreconditionerKind {
    None,
    Oras,
    Oas,
}

impl FromStr for PreconditionerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(PreconditionerKind::None),
            "oras" => Ok(PreconditionerKind::Oras),
            "oas" => Ok(PreconditionerKind::Oas),
            _ => Err(Error::Config(format!("unknown preconditioner '{s}'"))),
        }
    }
}

impl fmt::Display for PreconditionerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PreconditionerKind::None => "none",
            PreconditionerKind::Oras => "oras",
            PreconditionerKind::Oas => "oas",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dim: usize,
    /// Polynomial index `k`; the element degree is `k + 1`.
    pub degree: usize,
    pub omega: Frequency,
    pub sigma: f64,
    pub n_sub: usize,
    /// Total overlap in element layers.
    pub overlap: usize,
    pub precond: PreconditionerKind,
    pub spectrum: bool,
    /// Also count unpreconditioned GMRES iterations.
    pub unpreconditioned: bool,
    pub seed: u64,
    pub tol: f64,
    pub side: PreconditionSide,
    /// Multiplies the mesh size given by the frequency rule.
    pub mesh_scale: f64,
    /// Cell counts per axis, overriding the frequency rule.
    pub divisions: Option<[usize; 3]>,
    pub max_iter: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dim: 2,
            degree: 2,
            omega: Frequency::Omega2,
            sigma: LOSSY_CONDUCTIVITY,
            n_sub: 2,
            overlap: 2,
            precond: PreconditionerKind::Oras,
            spectrum: false,
            unpreconditioned: false,
            seed: 0,
            tol: 1e-6,
            side: PreconditionSide::Right,
            mesh_scale: 1.0,
            divisions: None,
            max_iter: 2000,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let max_k = if self.dim == 2 { 4 } else if self.dim == 3 { 2 } else { 0 };
        if self.dim != 2 && self.dim != 3 {
            return Err(Error::Config(format!("dimension {} not in {{2,3}}", self.dim)));
        }
        if self.degree > max_k {
            return Err(Error::Config(format!("k = {} exceeds {max_k} in {}d", self.degree, self.dim)));
        }
        if !(self.sigma >= 0.0) || !(self.tol > 0.0) || !(self.mesh_scale > 0.0) {
            return Err(Error::Config("σ, tolerance and mesh scale must be non-negative/positive".into()));
        }
        if self.precond != PreconditionerKind::None && self.n_sub < 2 {
            return Err(Error::Config("Schwarz preconditioning needs at least 2 subdomains".into()));
        }
        Ok(())
    }

    /// Short label used in file names.
    pub fn tag(&self) -> String {
        format!(
            "d{}_k{}_{}_s{}_n{}_o{}_{}",
            self.dim, self.degree, self.omega, self.sigma, self.n_sub, self.overlap, self.precond
        )
    }
}

/// Geometry, mesh and physics of one configuration.
#[derive(Debug)]
pub struct Problem {
    pub mesh: Mesh,
    pub dofmap: DofMap,
    pub params: PhysicalParams,
    pub reference: ReferenceSolution,
    /// Whether `reference` solves the discretized boundary value problem.
    pub reference_is_exact: bool,
    pub mesh_size: f64,
    pub system: ComplexSparseSystem,
}

/// Cell counts from the frequency rule (`ceil(extent / h)` per axis).
pub fn waveguide_divisions(dim: usize, omega: Frequency, mesh_scale: f64) -> Result<(f64, [usize; 3])> {
    match dim {
        2 => {
            let p = PhysicalParams::waveguide(omega.value(), 0.0)?;
            let h = planar_mesh_size(&p) * mesh_scale;
            Ok((h, [cells_for(PLANAR_EXTENTS[0], h), cells_for(PLANAR_EXTENTS[1], h), 0]))
        }
        3 => {
            let h = solid_mesh_size(solid_beta(omega.value())) * mesh_scale;
            Ok((h, [cells_for(SOLID_EXTENTS[0], h), cells_for(SOLID_EXTENTS[1], h), cells_for(SOLID_EXTENTS[2], h)]))
        }
        _ => Err(Error::Config(format!("dimension {dim} not in {{2,3}}"))),
    }
}

/// Mesh, assemble and attach the analytic reference of a configuration.
pub fn build_problem(config: &ExperimentConfig) -> Result<Problem> {
    config.validate()?;
    let extents = if config.dim == 2 {
        [PLANAR_EXTENTS[0], PLANAR_EXTENTS[1], 0.0]
    } else {
        SOLID_EXTENTS
    };
    let (h, div) = match config.divisions {
        Some(div) => {
            let h = (0..config.dim).map(|k| extents[k] / div[k].max(1) as f64).fold(0.0, f64::max);
            (h, div)
        }
        None => waveguide_divisions(config.dim, config.omega, config.mesh_scale)?,
    };
    let mesh = generate_structured_mesh(config.dim, extents, div)?;
    let dofmap = DofMap::new(&mesh, config.degree + 1)?;
    let (params, reference, exact) = if config.dim == 2 {
        let p = PhysicalParams::waveguide(config.omega.value(), config.sigma)?;
        (p, ReferenceSolution::plane_wave(&p), true)
    } else {
        let beta = solid_beta(config.omega.value());
        let omega = solid_omega(beta, SOLID_EXTENTS[2]);
        let lossless = PhysicalParams::waveguide(omega, 0.0)?;
        let te = ReferenceSolution::transverse_electric(&lossless, 1, 0, SOLID_EXTENTS[2], SOLID_EXTENTS[1])?;
        (PhysicalParams::waveguide(omega, config.sigma)?, te, config.sigma == 0.0)
    };
    let data = reference.impedance_data();
    let system = assemble(&mesh, &dofmap, &params, &data)?;
    Ok(Problem {
        mesh,
        dofmap,
        params,
        reference,
        reference_is_exact: exact,
        mesh_size: h,
        system,
    })
}

impl Problem {
    /// `η` of the physical port condition.
    pub fn port_eta(&self) -> f64 {
        self.reference.impedance_data().eta
    }

    pub fn decomposition(&self, n_sub: usize, overlap: usize) -> Result<Decomposition> {
        decompose(&self.mesh, &self.dofmap, n_sub, overlap)
    }

    pub fn schwarz(&self, n_sub: usize, overlap: usize, variant: SchwarzVariant) -> Result<SchwarzPreconditioner> {
        let dec = self.decomposition(n_sub, overlap)?;
        SchwarzPreconditioner::build(&self.mesh, &self.dofmap, &self.params, self.port_eta(), &dec, variant)
    }

    pub fn l2_error(&self, free_solution: &[Complex64]) -> Result<f64> {
        let full = self.dofmap.expand(free_solution);
        let r = self.reference;
        l2_relative_error(&self.mesh, &self.dofmap, &full, move |x| r.eval(x))
    }
}

/// One results row.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub n_dofs: usize,
    pub n_free: usize,
    pub n_iter_unpreconditioned: Option<usize>,
    pub solve: SolveReport,
    pub spectrum: Option<SpectrumReport>,
    /// Discretization error of the direct solution; GMRES stops relative to
    /// the initial residual, so its iterate carries algebraic error as well.
    pub l2_error: Option<f64>,
    pub warnings: Vec<String>,
}

/// Column names of the results CSV.
pub const CSV_HEADER: &str =
    "dim,k,omega,sigma,nsub,overlap,precond,n_dofs,n_free,n_iter_np,n_iter,converged,max_dist,n_outside,n_on_boundary,l2_error";

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

impl ExperimentResult {
    pub fn csv_row(&self) -> String {
        let c = &self.config;
        let s = self.spectrum.as_ref();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            c.dim,
            c.degree,
            c.omega,
            c.sigma,
            c.n_sub,
            c.overlap,
            c.precond,
            self.n_dofs,
            self.n_free,
            opt(&self.n_iter_unpreconditioned),
            self.solve.iterations,
            self.solve.converged,
            s.map(|s| format!("{:.3e}", s.max_distance)).unwrap_or_default(),
            opt(&s.map(|s| s.n_outside)),
            opt(&s.map(|s| s.n_on_boundary)),
            self.l2_error.map(|e| format!("{e:.6e}")).unwrap_or_default(),
        )
    }
}

/// Run a configuration on an already assembled problem.
pub fn run_on_problem(problem: &Problem, config: &ExperimentConfig) -> Result<ExperimentResult> {
    let ctx = |e: Error| e.context(config.tag());
    let a = &problem.system.matrix;
    let b = &problem.system.rhs;
    let opts = GmresOptions {
        tol: config.tol,
        max_iter: config.max_iter,
        seed: config.seed,
        side: config.side,
        ..Default::default()
    };
    let n_iter_np = if config.unpreconditioned || config.precond == PreconditionerKind::None {
        Some(gmres(a, b, None, &opts).map_err(ctx)?.1)
    } else {
        None
    };
    let mut warnings = Vec::new();
    let (_, solve, spectrum) = match config.precond {
        PreconditionerKind::None => {
            let (x, rep) = gmres(a, b, None, &opts).map_err(ctx)?;
            (x, rep, None)
        }
        kind => {
            let variant = if kind == PreconditionerKind::Oras { SchwarzVariant::Restricted } else { SchwarzVariant::Additive };
            let dec = problem.decomposition(config.n_sub, config.overlap).map_err(ctx)?;
            warnings.extend(dec.warnings.iter().cloned());
            let m = SchwarzPreconditioner::build(&problem.mesh, &problem.dofmap, &problem.params, problem.port_eta(), &dec, variant)
                .map_err(ctx)?;
            let (x, rep) = gmres(a, b, Some(&m as &dyn LinearOperator), &opts).map_err(ctx)?;
            let spec = if config.spectrum { Some(preconditioned_spectrum(a, &m).map_err(ctx)?) } else { None };
            (x, rep, spec)
        }
    };
    let l2_error = if problem.reference_is_exact {
        let direct = solve_direct(&problem.system).map_err(ctx)?;
        Some(problem.l2_error(&direct).map_err(ctx)?)
    } else {
        None
    };
    Ok(ExperimentResult {
        config: config.clone(),
        n_dofs: problem.dofmap.n_dofs(),
        n_free: problem.dofmap.n_free(),
        n_iter_unpreconditioned: n_iter_np.map(|r| r.iterations),
        solve,
        spectrum,
        l2_error,
        warnings,
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let problem = build_problem(config).map_err(|e| e.context(config.tag()))?;
    run_on_problem(&problem, config)
}

/// Append a row to a results CSV, writing the header for a new file.
pub fn append_csv(path: &Path, result: &ExperimentResult) -> Result<()> {
    let new = !path.exists() || std::fs::metadata(path)?.len() == 0;
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    if new {
        writeln!(f, "{CSV_HEADER}")?;
    }
    writeln!(f, "{}", result.csv_row())?;
    Ok(())
}

/// Eigenvalue file next to the results CSV.
pub fn eigenvalue_path(results: &Path, config: &ExperimentConfig) -> PathBuf {
    let stem = results.file_stem().and_then(|s| s.to_str()).unwrap_or("results");
    results.with_file_name(format!("{stem}_eig_{}.csv", config.tag()))
}

/// Configurations reproducing one of the parameter sweeps `table1`..`table6`.
/// Every row is listed once with ORAS and once with OAS.
pub fn preset(name: &str) -> Result<Vec<ExperimentConfig>> {
    let base2 = ExperimentConfig {
        dim: 2,
        degree: 2,
        spectrum: true,
        ..Default::default()
    };
    let base3 = ExperimentConfig {
        dim: 3,
        degree: 0,
        omega: Frequency::Explicit(OMEGA_BETA),
        ..Default::default()
    };
    let rows: Vec<ExperimentConfig> = match name {
        "table1" => (0..=4).map(|k| ExperimentConfig { degree: k, ..base2.clone() }).collect(),
        "table2" => [Frequency::Omega1, Frequency::Omega2, Frequency::Omega3]
            .into_iter()
            .map(|w| ExperimentConfig {
                omega: w,
                spectrum: w != Frequency::Omega3,
                ..base2.clone()
            })
            .collect(),
        "table3" => [2, 4, 8].into_iter().map(|n| ExperimentConfig { n_sub: n, ..base2.clone() }).collect(),
        "table4" => [1, 2, 4].into_iter().map(|o| ExperimentConfig { overlap: o, ..base2.clone() }).collect(),
        "table5" | "table6" => {
            let sigma = if name == "table5" { LOSSY_CONDUCTIVITY } else { 0.0 };
            let mut v: Vec<ExperimentConfig> = (0..=2).map(|k| ExperimentConfig { degree: k, sigma, ..base3.clone() }).collect();
            v.extend([4, 8].into_iter().map(|n| ExperimentConfig { degree: 1, n_sub: n, sigma, ..base3.clone() }));
            v
        }
        _ => return Err(Error::Config(format!("unknown preset '{name}' (expected table1..table6)"))),
    };
    Ok(rows
        .into_iter()
        .flat_map(|c| {
            [
                ExperimentConfig { precond: PreconditionerKind::Oras, ..c.clone() },
                ExperimentConfig { precond: PreconditionerKind::Oas, ..c },
            ]
        })
        .collect())
}

/// Axis-aligned sampling plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneSpec {
    /// Normal axis (0 = x, 1 = y, 2 = z).
    pub axis: usize,
    pub value: f64,
    /// Samples along the two in-plane axes.
    pub resolution: [usize; 2],
}

/// One field sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub point: Vec3,
    /// `|Re E|`.
    pub magnitude: f64,
    /// `max_φ |Re(E e^{iφ})|`, the peak over one time period.
    pub envelope: f64,
}

/// `|Re E|` and its peak over the time period.
pub fn field_magnitudes(e: &Field3) -> (f64, f64) {
    let uu: f64 = e.iter().map(|c| c.re * c.re).sum();
    let vv: f64 = e.iter().map(|c| c.im * c.im).sum();
    let uv: f64 = e.iter().map(|c| c.re * c.im).sum();
    let half = 0.5 * (uu - vv);
    let peak = 0.5 * (uu + vv) + (half * half + uv * uv).sqrt();
    (uu.sqrt(), peak.sqrt())
}

/// Locates points by binning simplices along `x`.
struct PointLocator<'a> {
    mesh: &'a Mesh,
    x0: f64,
    width: f64,
    bins: Vec<Vec<usize>>,
}

impl<'a> PointLocator<'a> {
    fn new(mesh: &'a Mesh) -> Self {
        let xs = mesh.x_layers();
        let (x0, x1) = (xs[0], xs[xs.len() - 1]);
        let nb = (xs.len() - 1).max(1);
        let width = (x1 - x0) / nb as f64;
        let mut bins = vec![Vec::new(); nb];
        let tol = 1e-9 * (x1 - x0);
        for s in 0..mesh.num_simplices() {
            let pts = mesh.simplex_points(s);
            let lo = pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min) - tol;
            let hi = pts.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max) + tol;
            let b0 = (((lo - x0) / width).floor().max(0.0) as usize).min(nb - 1);
            let b1 = (((hi - x0) / width).floor().max(0.0) as usize).min(nb - 1);
            for b in &mut bins[b0..=b1] {
                b.push(s);
            }
        }
        PointLocator { mesh, x0, width, bins }
    }

    fn locate(&self, x: Vec3) -> Result<Option<(usize, Vec<f64>)>> {
        let nb = self.bins.len();
        let b = ((((x[0] - self.x0) / self.width).floor()).max(0.0) as usize).min(nb - 1);
        for &s in &self.bins[b] {
            let lam = self.mesh.frame(s)?.lambda(x);
            if lam.iter().all(|&l| l >= -1e-10) {
                return Ok(Some((s, lam)));
            }
        }
        Ok(None)
    }
}

/// Sample `|Re E_h|` on a plane of the mesh bounding box.
pub fn emit_field_slices(mesh: &Mesh, dofmap: &DofMap, coeffs: &[Complex64], plane: &PlaneSpec) -> Result<Vec<FieldSample>> {
    let d = mesh.dim();
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in mesh.nodes() {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if plane.axis >= d || plane.value < lo[plane.axis] || plane.value > hi[plane.axis] {
        return Err(Error::Config(format!("plane axis {} = {} does not cut the mesh", plane.axis, plane.value)));
    }
    let in_plane: Vec<usize> = (0..d).filter(|&k| k != plane.axis).collect();
    let locator = PointLocator::new(mesh);
    let mut out = Vec::new();
    let steps = [plane.resolution[0].max(1), plane.resolution[1].max(1)];
    let n_v = if in_plane.len() > 1 { steps[1] } else { 1 };
    for i in 0..steps[0] {
        for j in 0..n_v {
            let mut x = [0.0; 3];
            x[plane.axis] = plane.value;
            let u = (i as f64 + 0.5) / steps[0] as f64;
            x[in_plane[0]] = lo[in_plane[0]] + u * (hi[in_plane[0]] - lo[in_plane[0]]);
            if in_plane.len() > 1 {
                let v = (j as f64 + 0.5) / n_v as f64;
                x[in_plane[1]] = lo[in_plane[1]] + v * (hi[in_plane[1]] - lo[in_plane[1]]);
            }
            let Some((s, lam)) = locator.locate(x)? else { continue };
            let basis = LocalBasis::new(&mesh.simplex_points(s), mesh.simplex(s), dofmap.degree())?;
            let (e, _): (Field3, Field3) = evaluate_in_simplex(&basis, dofmap.element_dofs(s), coeffs, &lam);
            let (magnitude, envelope) = field_magnitudes(&e);
            out.push(FieldSample { point: x, magnitude, envelope });
        }
    }
    if out.is_empty() {
        return Err(Error::Config("plane does not intersect any simplex".into()));
    }
    Ok(out)
}

/// Write samples as `x,y,z,abs_re_e,envelope`.
pub fn write_field_samples(path: &Path, samples: &[FieldSample]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x,y,z,abs_re_e,envelope")?;
    for s in samples {
        writeln!(w, "{:e},{:e},{:e},{:e},{:e}", s.point[0], s.point[1], s.point[2], s.magnitude, s.envelope)?;
    }
    Ok(())
}

/// Maxima over one cross-section normal to `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceMaximum {
    pub x: f64,
    pub magnitude: f64,
    pub envelope: f64,
}

/// Cross-section maxima at each position in `xs`.
pub fn slice_maxima(mesh: &Mesh, dofmap: &DofMap, coeffs: &[Complex64], xs: &[f64], resolution: [usize; 2]) -> Result<Vec<SliceMaximum>> {
    xs.iter()
        .map(|&x| {
            let plane = PlaneSpec { axis: 0, value: x, resolution };
            let samples = emit_field_slices(mesh, dofmap, coeffs, &plane)?;
            Ok(SliceMaximum {
                x,
                magnitude: samples.iter().map(|s| s.magnitude).fold(0.0, f64::max),
                envelope: samples.iter().map(|s| s.envelope).fold(0.0, f64::max),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_divisions_follow_mesh_rule() {
        assert_eq!(waveguide_divisions(2, Frequency::Omega2, 1.0).unwrap().1, [40, 2, 0]);
        assert_eq!(waveguide_divisions(2, Frequency::Omega1, 1.0).unwrap().1, [14, 1, 0]);
        assert_eq!(waveguide_divisions(3, Frequency::Explicit(OMEGA_BETA), 1.0).unwrap().1, [111, 6, 12]);
    }

    #[test]
    fn presets_cover_all_tables() {
        for t in 1..=6 {
            let p = preset(&format!("table{t}")).unwrap();
            assert!(!p.is_empty());
            assert!(p.iter().all(|c| c.validate().is_ok()));
        }
        assert!(preset("table7").is_err());
    }

    #[test]
    fn frequency_parsing() {
        assert_eq!("w2".parse::<Frequency>().unwrap(), Frequency::Omega2);
        assert_eq!("1e9".parse::<Frequency>().unwrap(), Frequency::Explicit(1e9));
        assert!("abc".parse::<Frequency>().is_err());
        assert!("oras".parse::<PreconditionerKind>().is_ok());
    }
}
