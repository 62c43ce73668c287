//! Command-line front end.
//!
//! Exit codes: 0 when every gating verdict passes, 1 when a mathematical
//! verdict fails, 2 on I/O, parse, shape or usage errors.

pub mod io;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{self, Check, Construction, ExpectedKind};
use crate::error::Error;
use crate::frames::{dual_frame, frame_bounds, reconstruct, Frame, FrameBounds};
use crate::gframes::{g_dual, g_frame_bounds, gframe_partner_input, GFrame};
use crate::intertwining::{
    build_partner, build_reverse_partner, map_eigenpairs, option_select, PartnerInput,
};
use crate::numerics::{commutator, strict_inverse, CVector, ComplexMatrix, Tolerances, C64};

use self::io::{
    parse_blocks_file, parse_frame_file, parse_gframe_file, parse_matrix_file, to_json_string,
    FrameFile, GFrameFile, IoFailure, MatrixFile,
};
use self::report::{BoundsSection, ErrorRecord, PartnerSection, ReportDocument, SpectralSection};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "isospec",
    version,
    about = "Build and verify almost-isospectral partner Hamiltonians from frames and g-frames"
)]
pub struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Absolute gap for matching eigenvalues.
    #[arg(long, global = true, value_name = "TOL", env = "ISOSPEC_TOL_EIGEN")]
    tol_eigen: Option<f64>,
    /// Relative bound on commutator residuals.
    #[arg(long, global = true, value_name = "TOL", env = "ISOSPEC_TOL_COMM")]
    tol_comm: Option<f64>,
    /// Minimum eigenvalue ratio for invertibility.
    #[arg(long, global = true, value_name = "TOL", env = "ISOSPEC_TOL_INV")]
    tol_inv: Option<f64>,
    /// Relative norm below which an image vector counts as zero.
    #[arg(long, global = true, value_name = "TOL", env = "ISOSPEC_TOL_ZERO")]
    tol_zero: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Frame bounds, duals and tightness.
    #[command(subcommand)]
    Frame(FrameCmd),
    /// Partner construction from h1 and an intertwiner X.
    #[command(subcommand)]
    Partner(PartnerCmd),
    /// g-frame bounds, duals and partners.
    #[command(subcommand)]
    Gframe(GFrameCmd),
    /// Named reproducible scenarios.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand, Debug)]
enum FrameCmd {
    /// Optimal frame bounds.
    Bounds { frame: PathBuf },
    /// Canonical dual frame, checked through both reconstruction formulas.
    Dual { frame: PathBuf },
    /// Fails unless the frame is tight; reports the option it supports.
    Tight { frame: PathBuf },
}

#[derive(Subcommand, Debug)]
enum PartnerCmd {
    /// h2 = N2^-1 X' h1 X with its conditions and eigenvector images.
    Build {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
    /// Build plus strong intertwining and an optional comparison with a given h2.
    Verify {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        h2: Option<PathBuf>,
    },
    /// h1 = N1^-1 X h2 X'.
    Reverse {
        #[arg(long)]
        h2: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum GFrameCmd {
    /// Optimal g-frame bounds.
    Bounds { gframe: PathBuf },
    /// Canonical dual g-frame.
    Dual { gframe: PathBuf },
    /// Partner of a block-diagonal h1 on the block space.
    Partner {
        gframe: PathBuf,
        /// JSON file {"blocks": [matrix, ...]}, one block per member.
        #[arg(long)]
        blocks: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Names of the shipped scenarios.
    List,
    /// Run a scenario and check every expected artifact.
    Run { name: String },
    /// Write a scenario's inputs as JSON files into a directory.
    Export { name: String, dir: PathBuf },
}

/// Why a subcommand stopped early.
enum Failure {
    Io(IoFailure),
    Math(Error),
}

impl From<IoFailure> for Failure {
    fn from(e: IoFailure) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

type Step = std::result::Result<(), Failure>;

fn tolerances(g: &GlobalArgs) -> crate::Result<Tolerances> {
    let mut t = Tolerances::default();
    if let Some(v) = g.tol_eigen {
        t.eigen_match_tol = v;
    }
    if let Some(v) = g.tol_comm {
        t.commutator_tol = v;
    }
    if let Some(v) = g.tol_inv {
        t.invertibility_tol = v;
    }
    if let Some(v) = g.tol_zero {
        t.zero_vector_tol = v;
    }
    t.validate()?;
    Ok(t)
}

/// Parses `argv` (including the program name), runs the subcommand and
/// writes the report to `out` or `--out`. Diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_PASS
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };

    let (name, tol_result) = (command_name(&cli.command), tolerances(&cli.global));
    let tol = tol_result.clone().unwrap_or_default();
    let mut doc = ReportDocument::new(name, tol);
    let outcome = match tol_result {
        Err(e) => Err(Failure::Math(e)),
        Ok(tol) => dispatch(&cli.command, &mut doc, &tol),
    };

    let code = match outcome {
        Ok(()) => {
            doc.finish();
            if doc.passed {
                EXIT_PASS
            } else {
                EXIT_VERDICT
            }
        }
        Err(failure) => {
            let (kind, message, code) = match &failure {
                Failure::Io(e) => (e.kind().to_string(), e.to_string(), EXIT_INPUT),
                Failure::Math(e) if e.is_input_error() => {
                    (e.kind().to_string(), e.to_string(), EXIT_INPUT)
                }
                Failure::Math(e) => {
                    if let Some(c) = Check::from_error(e, "", &tol) {
                        doc.verdicts.push(c);
                    }
                    (e.kind().to_string(), e.to_string(), EXIT_VERDICT)
                }
            };
            let _ = writeln!(err, "error: {message}");
            doc.error = Some(ErrorRecord {
                kind,
                message,
                exit_code: code,
            });
            doc.finish();
            code
        }
    };

    let rendered = match cli.global.format {
        Format::Json => {
            let mut s = to_json_string(&doc);
            s.push('\n');
            s
        }
        Format::Text => doc.render_text(),
    };
    let written = match &cli.global.out {
        Some(path) => {
            std::fs::write(path, rendered).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => out
            .write_all(rendered.as_bytes())
            .map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: cannot write report: {msg}");
            EXIT_INPUT
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Frame(FrameCmd::Bounds { .. }) => "frame bounds",
        Command::Frame(FrameCmd::Dual { .. }) => "frame dual",
        Command::Frame(FrameCmd::Tight { .. }) => "frame tight",
        Command::Partner(PartnerCmd::Build { .. }) => "partner build",
        Command::Partner(PartnerCmd::Verify { .. }) => "partner verify",
        Command::Partner(PartnerCmd::Reverse { .. }) => "partner reverse",
        Command::Gframe(GFrameCmd::Bounds { .. }) => "gframe bounds",
        Command::Gframe(GFrameCmd::Dual { .. }) => "gframe dual",
        Command::Gframe(GFrameCmd::Partner { .. }) => "gframe partner",
        Command::Catalog(CatalogCmd::List) => "catalog list",
        Command::Catalog(CatalogCmd::Run { .. }) => "catalog run",
        Command::Catalog(CatalogCmd::Export { .. }) => "catalog export",
    }
}

fn dispatch(c: &Command, doc: &mut ReportDocument, tol: &Tolerances) -> Step {
    match c {
        Command::Frame(FrameCmd::Bounds { frame }) => {
            let frame = load_frame(doc, frame)?;
            bounds_verdict(doc, frame_bounds(&frame, tol)?, tol);
            Ok(())
        }
        Command::Frame(FrameCmd::Dual { frame }) => {
            let frame = load_frame(doc, frame)?;
            frame_dual(doc, &frame, tol)
        }
        Command::Frame(FrameCmd::Tight { frame }) => {
            let frame = load_frame(doc, frame)?;
            let b = frame_bounds(&frame, tol)?;
            bounds_verdict(doc, b, tol);
            doc.verdicts.push(Check::new(
                "tightness: B - A",
                "",
                b.upper - b.lower,
                tol.eigen_match_tol * b.upper,
            ));
            if b.is_tight(tol) {
                doc.option = Some(option_select(&frame, tol)?.option.to_string());
            }
            Ok(())
        }
        Command::Partner(PartnerCmd::Build { h1, x }) => {
            let input = load_partner_input(doc, h1, x)?;
            partner(doc, &input, tol)
        }
        Command::Partner(PartnerCmd::Verify { h1, x, h2 }) => {
            let input = load_partner_input(doc, h1, x)?;
            let expected = match h2 {
                Some(p) => {
                    doc.input("h2", p.display().to_string());
                    Some(parse_matrix_file(p)?)
                }
                None => None,
            };
            partner_verify(doc, &input, expected.as_ref(), tol)
        }
        Command::Partner(PartnerCmd::Reverse { h2, x }) => {
            doc.input("h2", h2.display().to_string());
            doc.input("x", x.display().to_string());
            let h2 = parse_matrix_file(h2)?;
            let x = parse_matrix_file(x)?;
            reverse(doc, &h2, &x, tol)
        }
        Command::Gframe(GFrameCmd::Bounds { gframe }) => {
            let g = load_gframe(doc, gframe)?;
            bounds_verdict(doc, g_frame_bounds(&g, tol)?, tol);
            Ok(())
        }
        Command::Gframe(GFrameCmd::Dual { gframe }) => {
            let g = load_gframe(doc, gframe)?;
            let b = g_frame_bounds(&g, tol)?;
            bounds_verdict(doc, b, tol);
            let dual = g_dual(&g, tol)?;
            dual_bounds_verdict(doc, b, g_frame_bounds(&dual, tol)?, tol);
            doc.artifact("dual_gframe", &GFrameFile::from_gframe(&dual));
            Ok(())
        }
        Command::Gframe(GFrameCmd::Partner { gframe, blocks }) => {
            let g = load_gframe(doc, gframe)?;
            doc.input("blocks", blocks.display().to_string());
            let blocks = parse_blocks_file(blocks)?;
            let b = g_frame_bounds(&g, tol)?;
            bounds_verdict(doc, b, tol);
            doc.verdicts.push(Check::new(
                "tightness: B - A",
                "",
                b.upper - b.lower,
                tol.eigen_match_tol * b.upper,
            ));
            if !b.is_tight(tol) {
                return Ok(());
            }
            let input = gframe_partner_input(&g, &blocks)?;
            partner(doc, &input, tol)
        }
        Command::Catalog(CatalogCmd::List) => {
            doc.artifact("names", &catalog::NAMES);
            Ok(())
        }
        Command::Catalog(CatalogCmd::Run { name }) => catalog_run(doc, name, tol),
        Command::Catalog(CatalogCmd::Export { name, dir }) => catalog_export(doc, name, dir),
    }
}

fn load_frame(doc: &mut ReportDocument, path: &Path) -> std::result::Result<Frame, Failure> {
    doc.input("frame", path.display().to_string());
    Ok(parse_frame_file(path)?)
}

fn load_gframe(doc: &mut ReportDocument, path: &Path) -> std::result::Result<GFrame, Failure> {
    doc.input("gframe", path.display().to_string());
    Ok(parse_gframe_file(path)?)
}

fn load_partner_input(
    doc: &mut ReportDocument,
    h1: &Path,
    x: &Path,
) -> std::result::Result<PartnerInput, Failure> {
    doc.input("h1", h1.display().to_string());
    doc.input("x", x.display().to_string());
    let h1 = parse_matrix_file(h1)?;
    let x = parse_matrix_file(x)?;
    Ok(PartnerInput::new(h1, x)?)
}

fn bounds_verdict(doc: &mut ReportDocument, b: FrameBounds, tol: &Tolerances) {
    doc.bounds = Some(BoundsSection::new(&b, tol));
    doc.verdicts.push(Check::above(
        "frame: lower bound",
        "",
        b.lower,
        tol.invertibility_tol * b.upper,
    ));
}

/// The dual of a frame with bounds `(A, B)` has bounds `(1/B, 1/A)`.
fn dual_bounds_verdict(doc: &mut ReportDocument, b: FrameBounds, d: FrameBounds, tol: &Tolerances) {
    let dev = ((d.lower - 1.0 / b.upper) * b.upper)
        .abs()
        .max(((d.upper - 1.0 / b.lower) * b.lower).abs());
    doc.verdicts.push(
        Check::new(
            "dual bounds equal (1/B, 1/A), relative",
            "",
            dev,
            tol.eigen_match_tol,
        )
        .with_note(format!("dual bounds ({:e}, {:e})", d.lower, d.upper)),
    );
}

fn frame_dual(doc: &mut ReportDocument, frame: &Frame, tol: &Tolerances) -> Step {
    let b = frame_bounds(frame, tol)?;
    bounds_verdict(doc, b, tol);
    let dual = dual_frame(frame, tol)?;
    dual_bounds_verdict(doc, b, frame_bounds(&dual, tol)?, tol);
    let mut worst = 0.0f64;
    for k in 0..frame.dim() {
        let mut e = CVector::zeros(frame.dim());
        e[k] = C64::new(1.0, 0.0);
        let (a, c) = reconstruct(frame, &e, tol)?;
        worst = worst.max((a - &e).norm()).max((c - &e).norm());
    }
    doc.verdicts.push(Check::new(
        "reconstruction of the canonical basis, both formulas",
        "",
        worst,
        tol.eigen_match_tol,
    ));
    doc.artifact("dual_frame", &FrameFile::from_frame(&dual));
    Ok(())
}

fn partner_checks(
    doc: &mut ReportDocument,
    p: &crate::PartnerResult,
    r: &crate::SpectralReport,
    tol: &Tolerances,
) {
    doc.verdicts.extend([
        Check::new(
            "condition alpha: h2 self-adjoint",
            "",
            p.residual_alpha,
            tol.hermiticity_tol,
        ),
        Check::new(
            "condition beta: weak intertwining",
            "",
            p.residual_beta,
            tol.commutator_tol,
        ),
        Check::new("[h2, N2] = 0", "", p.residual_h2n2, tol.commutator_tol),
        Check::new(
            "spectral inclusion sigma(h2) in sigma(h1): unmatched count",
            "",
            r.inclusion.unmatched_h2.len() as f64,
            0.0,
        ),
    ]);
}

fn partner(doc: &mut ReportDocument, input: &PartnerInput, tol: &Tolerances) -> Step {
    let p = build_partner(input, tol)?;
    doc.partner = Some(PartnerSection::new(&p));
    let r = map_eigenpairs(input, &p, tol)?;
    doc.spectral = Some(SpectralSection::new(&r));
    partner_checks(doc, &p, &r, tol);
    Ok(())
}

fn partner_verify(
    doc: &mut ReportDocument,
    input: &PartnerInput,
    expected: Option<&ComplexMatrix>,
    tol: &Tolerances,
) -> Step {
    partner(doc, input, tol)?;
    let section = doc.partner.as_ref().expect("set by partner");
    let residual_strong = section.residuals.beta_strong;
    let h2 = ComplexMatrix::from_row_major(
        section.h2.rows,
        section.h2.cols,
        section
            .h2
            .entries
            .iter()
            .map(|[a, b]| C64::new(*a, *b))
            .collect(),
    )?;
    let worst_image = doc
        .spectral
        .as_ref()
        .map(|s| {
            s.kept
                .iter()
                .map(|k| k.residual / k.image_norm)
                .fold(0.0, f64::max)
        })
        .unwrap_or(0.0);
    doc.verdicts.push(Check::new(
        "condition gamma: kept images are eigenvectors of h2, relative",
        "",
        worst_image,
        tol.eigen_match_tol,
    ));

    let strong = Check::new(
        "strong intertwining X h2 = h1 X",
        "",
        residual_strong,
        tol.commutator_tol,
    );
    let n1 = input.x() * &input.x().adjoint();
    doc.verdicts.push(match strict_inverse(&n1, tol) {
        Ok(_) => strong,
        Err(_) => strong
            .informational()
            .with_note("N1 is singular; only the weak form is required"),
    });

    if let Some(want) = expected {
        if want.shape() != h2.shape() {
            return Err(Error::DimensionMismatch(format!(
                "given h2 is {}x{}, computed h2 is {}x{}",
                want.rows(),
                want.cols(),
                h2.rows(),
                h2.cols()
            ))
            .into());
        }
        let dev = (&h2 - want).norm() / want.norm().max(f64::MIN_POSITIVE);
        doc.verdicts.push(Check::new(
            "computed h2 matches the given h2, relative",
            "",
            dev,
            tol.eigen_match_tol,
        ));
    }
    Ok(())
}

fn reverse(
    doc: &mut ReportDocument,
    h2: &ComplexMatrix,
    x: &ComplexMatrix,
    tol: &Tolerances,
) -> Step {
    let h1 = build_reverse_partner(h2, x, tol)?;
    let n1 = x * &x.adjoint();
    let strong = &(x * h2) - &(&h1 * x);
    let rel = |num: f64, den: f64| if den == 0.0 { num } else { num / den };
    doc.verdicts.extend([
        Check::new(
            "h1 self-adjoint",
            "",
            h1.hermiticity_residual(),
            tol.hermiticity_tol,
        ),
        Check::new(
            "[h1, N1] = 0",
            "",
            rel(commutator(&h1, &n1)?.norm(), h1.norm() * n1.norm()),
            tol.commutator_tol,
        ),
        Check::new(
            "strong intertwining X h2 = h1 X",
            "",
            rel(strong.norm(), x.norm() * h2.norm()),
            tol.commutator_tol,
        ),
    ]);
    doc.artifact("h1", &MatrixFile::from_matrix(&h1));
    Ok(())
}

fn catalog_run(doc: &mut ReportDocument, name: &str, tol: &Tolerances) -> Step {
    let entry = catalog::by_name(name)?;
    doc.scenario = Some(entry.name.clone());
    doc.input("scenario", entry.name.clone());
    let o = catalog::run(&entry, tol)?;
    doc.bounds = Some(BoundsSection::new(&o.bounds, tol));
    doc.option = o.option.map(|o| o.to_string());
    doc.partner = Some(PartnerSection::new(&o.partner));
    doc.spectral = Some(SpectralSection::new(&o.report));
    doc.verdicts = o.checks;
    Ok(())
}

fn catalog_export(doc: &mut ReportDocument, name: &str, dir: &Path) -> Step {
    let entry = catalog::by_name(name)?;
    doc.scenario = Some(entry.name.clone());
    doc.input("scenario", entry.name.clone());
    doc.input("dir", dir.display().to_string());
    std::fs::create_dir_all(dir).map_err(|e| IoFailure::Io {
        path: dir.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut written = Vec::new();
    let mut put = |file: &str, value: &dyn erased::Emit| -> std::result::Result<(), IoFailure> {
        let path = dir.join(file);
        value.write(&path)?;
        written.push(path.display().to_string());
        Ok(())
    };
    match &entry.construction {
        Construction::Frame(f) => put("frame.json", &FrameFile::from_frame(f))?,
        Construction::GFrame(g) => put("gframe.json", &GFrameFile::from_gframe(g))?,
    }
    put("h1.json", &MatrixFile::from_matrix(&entry.h1))?;
    put("x.json", &MatrixFile::from_matrix(&entry.x))?;
    if let Some(h2) = entry.expected.iter().find_map(|e| match &e.kind {
        ExpectedKind::PartnerMatrix(m) => Some(m),
        _ => None,
    }) {
        put("h2_expected.json", &MatrixFile::from_matrix(h2))?;
    }
    doc.artifact("written", &written);
    Ok(())
}

mod erased {
    use super::io::{write_json_file, IoResult};
    use std::path::Path;

    pub trait Emit {
        fn write(&self, path: &Path) -> IoResult<()>;
    }

    impl<T: serde::Serialize> Emit for T {
        fn write(&self, path: &Path) -> IoResult<()> {
            write_json_file(path, self)
        }
    }
}
