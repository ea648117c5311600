//! Subcommand implementations.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use susy_pct::models::{
    edp_energy, edp_seed_wavefn, edp_spectrum, edp_superpotential, ho_seed, identity_partner_suite, Branch,
    OscillatorPct, SpectrumTable, WaveFunctionSpec,
};
use susy_pct::numerics::make_grid;
use susy_pct::susy::{apply_a, riccati_general, riccati_general_xi, Provenance, RiccatiProblem, Superpotential};
use susy_pct::{Interval, RealFunction};

use crate::config::{BranchKind, Format, GridSpec, ModelKind, RunConfig};
use crate::output::{Cell, Table};
use crate::{verify as battery, CliError};

const HALF_LINE_GRID: GridSpec = GridSpec {
    start: 0.001,
    end: 8.0,
    count: 8001,
};
const LINE_GRID: GridSpec = GridSpec {
    start: -6.0,
    end: 6.0,
    count: 1201,
};
const RICCATI_GRID: GridSpec = GridSpec {
    start: 0.05,
    end: 20.0,
    count: 1000,
};

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn spectrum_table(config: &RunConfig, levels: usize) -> Result<SpectrumTable, CliError> {
    Ok(match config.model {
        ModelKind::HoIdentity => identity_partner_suite(config.mass, config.omega, levels)?.2,
        ModelKind::HoSqrt => OscillatorPct::new(config.mass, config.omega)?.spectrum(levels),
        ModelKind::Edp => edp_spectrum(levels, config.lambda, config.mass, config.omega),
    })
}

fn spectrum_rows(config: &RunConfig, levels: &[usize]) -> Result<Table, CliError> {
    let top = levels.iter().copied().max().unwrap_or(0);
    let full = spectrum_table(config, top + 1)?;
    let mut table = Table::new(["n", "seed_energy", "partner_energy", "sigma_n"]);
    for &n in levels {
        let e = &full.entries[n];
        table.push(vec![
            Cell::Int(e.n),
            Cell::Real(e.seed_energy),
            Cell::Real(e.partner_energy),
            Cell::Real(e.sigma_n),
        ]);
    }
    Ok(table)
}

pub fn spectrum(config: &RunConfig) -> Result<ExitCode, CliError> {
    let table = spectrum_rows(config, &config.levels_or(5))?;
    table.write(sink(config.out.as_deref())?, config.format.unwrap_or(Format::Csv))?;
    Ok(ExitCode::SUCCESS)
}

fn scaled(raw: RealFunction, c: f64) -> RealFunction {
    match raw {
        RealFunction::Analytic(f) => RealFunction::analytic(move |x| f(x) * c),
        RealFunction::Sampled(f) => RealFunction::sampled(move |x| f(x) * c),
    }
}

/// The requested state of the configured model.
fn state(config: &RunConfig, branch: BranchKind, n: usize) -> Result<WaveFunctionSpec, CliError> {
    let (m, w) = (config.mass, config.omega);
    Ok(match (config.model, branch) {
        (ModelKind::HoSqrt | ModelKind::HoIdentity, BranchKind::Seed) => ho_seed(n, m, w)?.1,
        (ModelKind::HoSqrt, BranchKind::Minus) => OscillatorPct::new(m, w)?.phi_minus(n),
        (ModelKind::HoSqrt, BranchKind::Plus) => OscillatorPct::new(m, w)?.phi_plus(n),
        (ModelKind::HoIdentity, BranchKind::Minus) => {
            let mut spec = ho_seed(n, m, w)?.1;
            spec.branch = Branch::PartnerMinus;
            spec
        }
        (ModelKind::HoIdentity, BranchKind::Plus) => {
            let (w_sp, _, table) = identity_partner_suite(m, w, n + 2)?;
            let c = table.entries[n + 1].partner_energy.sqrt().recip();
            let next = ho_seed(n + 1, m, w)?.1;
            WaveFunctionSpec {
                branch: Branch::PartnerPlus,
                n,
                function: scaled(apply_a(&w_sp, &next.function), c),
                normalization: c,
                domain: Interval::real_line(),
            }
        }
        (ModelKind::Edp, BranchKind::Seed) => edp_seed_wavefn(n, config.lambda, m, w)?.1,
        (ModelKind::Edp, _) => {
            return Err(CliError::Config(
                "the energy-dependent model has closed-form states for --branch seed only".into(),
            ))
        }
    })
}

fn sample_states(config: &RunConfig, branch: BranchKind, levels: &[usize], grid: Option<GridSpec>) -> Result<Table, CliError> {
    let states = levels
        .iter()
        .map(|&n| state(config, branch, n))
        .collect::<Result<Vec<_>, _>>()?;
    let half_line = states.iter().any(|s| s.domain.lo == 0.0);
    let spec = grid.unwrap_or(if half_line { HALF_LINE_GRID } else { LINE_GRID });
    let grid = make_grid(spec.start, spec.end, spec.count)?;
    for s in &states {
        if !(s.domain.contains(grid.start()) && s.domain.contains(grid.end())) {
            return Err(CliError::Config(format!(
                "grid {}:{} leaves the domain ({}, {}) of level {}",
                spec.start, spec.end, s.domain.lo, s.domain.hi, s.n
            )));
        }
    }
    let mut table;
    if config.wide {
        let mut columns = vec!["x".to_string()];
        for s in &states {
            columns.push(format!("phi_{}", s.n));
            columns.push(format!("density_{}", s.n));
        }
        table = Table::new(columns);
        for x in grid.points() {
            let mut row = vec![Cell::Real(x)];
            for s in &states {
                let v = s.value(x);
                row.push(Cell::Real(v));
                row.push(Cell::Real(v * v));
            }
            table.push(row);
        }
    } else {
        table = Table::new(["n", "x", "phi", "density"]);
        for s in &states {
            for x in grid.points() {
                let v = s.value(x);
                table.push(vec![Cell::Int(s.n), Cell::Real(x), Cell::Real(v), Cell::Real(v * v)]);
            }
        }
    }
    Ok(table)
}

pub fn wavefn(config: &RunConfig) -> Result<ExitCode, CliError> {
    let table = sample_states(config, config.branch, &config.levels_or(5), config.grid)?;
    table.write(sink(config.out.as_deref())?, config.format.unwrap_or(Format::Csv))?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(config: &RunConfig) -> Result<ExitCode, CliError> {
    let report = battery::run(config)?;
    report.write(sink(config.out.as_deref())?, config.format.unwrap_or(Format::Json))?;
    Ok(if report.overall { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

pub fn riccati(config: &RunConfig) -> Result<ExitCode, CliError> {
    let (m, w) = (config.mass, config.omega);
    let spec = config.grid.unwrap_or(RICCATI_GRID);
    if spec.start <= 0.0 {
        return Err(CliError::Config("the Riccati profiles live on x̃ > 0".into()));
    }
    let grid = make_grid(spec.start, spec.end, spec.count)?;
    let (superpotential, xi, problem): (Superpotential, RealFunction, RiccatiProblem) = match config.model {
        ModelKind::HoSqrt => {
            let family = OscillatorPct::new(m, w)?;
            let problem = RiccatiProblem::oscillator(m, w, family.seed_energy(0));
            match config.constant {
                Some(c) => {
                    let sp = riccati_general(c, m, w, Interval::new(spec.start, spec.end))?;
                    (sp, riccati_general_xi(c, m, w), problem)
                }
                None => {
                    let p = family.particular();
                    (family.superpotential(), RealFunction::analytic(move |_| susy_pct::Jet::constant(p)), problem)
                }
            }
        }
        ModelKind::Edp => {
            if config.constant.is_some() {
                return Err(CliError::Config("--constant applies to the ho-sqrt model only".into()));
            }
            let e0 = edp_energy(0, config.lambda, m, w);
            let sp = edp_superpotential(config.lambda, e0, m, w)?;
            let RealFunction::Analytic(f) = sp.function().clone() else {
                unreachable!("closed form");
            };
            let xi = RealFunction::analytic(move |x| f(x) + x.recip() * 0.25);
            (sp, xi, RiccatiProblem::energy_dependent(m, w, config.lambda, e0))
        }
        ModelKind::HoIdentity => {
            return Err(CliError::Config("the Riccati route needs --model ho-sqrt or edp".into()));
        }
    };
    let domain = superpotential.domain();
    if domain.lo > spec.start || domain.hi < spec.end {
        eprintln!(
            "note: ξ has a pole; rows restricted to the pole-free part ({}, {})",
            domain.lo, domain.hi
        );
    }
    let mut table = Table::new(["x", "xi", "w", "residual"]);
    let pole = match superpotential.provenance() {
        Provenance::RiccatiGeneral { pole, .. } => pole,
        _ => None,
    };
    for x in grid.points().filter(|&x| domain.contains_closed(x) && pole != Some(x)) {
        table.push(vec![
            Cell::Real(x),
            Cell::Real(xi.value(x)),
            Cell::Real(superpotential.value(x)),
            Cell::Real(problem.residual_at(&xi, x)),
        ]);
    }
    table.write(sink(config.out.as_deref())?, config.format.unwrap_or(Format::Csv))?;
    Ok(ExitCode::SUCCESS)
}

/// Files written by `export`, relative to the output directory.
pub const EXPORT_FILES: [(&str, BranchKind, [usize; 4]); 3] = [
    ("fig1_minus.csv", BranchKind::Minus, [0, 1, 2, 3]),
    ("fig2_plus_even.csv", BranchKind::Plus, [0, 2, 4, 6]),
    ("fig3_plus_odd.csv", BranchKind::Plus, [1, 3, 5, 7]),
];

pub fn export(config: &RunConfig) -> Result<ExitCode, CliError> {
    if config.model != ModelKind::HoSqrt {
        return Err(CliError::Config("figure export is defined for --model ho-sqrt".into()));
    }
    let dir: PathBuf = config.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
    std::fs::create_dir_all(&dir)?;
    let format = config.format.unwrap_or(Format::Csv);
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut written = Vec::new();
    for (name, branch, levels) in EXPORT_FILES {
        let table = sample_states(config, branch, &levels, config.grid)?;
        let path = dir.join(name).with_extension(ext);
        table.write(BufWriter::new(File::create(&path)?), format)?;
        written.push(path);
    }
    let path = dir.join("spectrum").with_extension(ext);
    spectrum_rows(config, &(0..=10).collect::<Vec<_>>())?.write(BufWriter::new(File::create(&path)?), format)?;
    written.push(path);
    for p in written {
        println!("{}", p.display());
    }
    Ok(ExitCode::SUCCESS)
}
