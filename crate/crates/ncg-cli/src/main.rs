//! ncg: command-line front end for the noncommutative-geometry toolkit.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use ncg_core::algebra::FinAlgebra;
use ncg_core::cochain::{apply_operator, Cochain, OperatorKind};
use ncg_core::cohomology::{cohomology_dim, ComplexKind};
use ncg_core::error::NcgError;
use ncg_core::json as nj;
use ncg_core::parse::{parse_laurent, parse_poly, render_poly};
use ncg_core::scalar::{render_scalar, CycloScalar};

#[derive(Parser)]
#[command(
    name = "ncg",
    version,
    about = "Exact computations in finite-dimensional noncommutative geometry",
    propagate_version = true
)]
struct Cli {
    /// Emit machine-readable JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// Degree cutoff for truncated computations
    #[arg(long, global = true, default_value_t = 4)]
    cutoff: usize,
    /// Seed for randomized property checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Groupoid utilities
    Groupoid {
        #[command(subcommand)]
        cmd: GroupoidCmd,
    },
    /// Hochschild cohomology dimension of an algebra
    Hh {
        /// Algebra JSON file
        file: PathBuf,
        /// Coefficients: scalar (functionals) or adjoint (deformation)
        #[arg(long, value_enum, default_value_t = Coeff::Scalar)]
        coeff: Coeff,
        /// Degree
        #[arg(long)]
        deg: usize,
        /// Include boundary ranks in the JSON report
        #[arg(long)]
        report: bool,
    },
    /// Cyclic cohomology dimension (Connes complex)
    Hc {
        file: PathBuf,
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        report: bool,
    },
    /// Periodic cyclic cohomology via the stabilized (b,B)-total complex
    Hp {
        file: PathBuf,
        #[arg(long, value_enum)]
        parity: Parity,
        #[arg(long)]
        report: bool,
    },
    /// Pair a cyclic cocycle with a K-theory class
    Pair {
        /// Cocycle JSON (carries its algebra inline or by path)
        #[arg(long)]
        cocycle: PathBuf,
        /// Class JSON (idempotent or invertible)
        #[arg(long)]
        class: PathBuf,
    },
    /// Fredholm module operations
    Fredholm {
        #[command(subcommand)]
        cmd: FredholmCmd,
    },
    /// Star products
    Star {
        #[command(subcommand)]
        cmd: StarCmd,
    },
    /// Formal pseudodifferential operators on the circle
    Psido {
        #[command(subcommand)]
        cmd: PsidoCmd,
    },
    /// Hopf algebra operations
    Hopf {
        #[command(subcommand)]
        cmd: HopfCmd,
    },
    /// Toeplitz operators
    Toeplitz {
        #[command(subcommand)]
        cmd: ToeplitzCmd,
    },
    /// Randomized exact identity checks
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Regression corpus
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Scalar,
    Adjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum Parity {
    Even,
    Odd,
}

#[derive(Subcommand)]
enum GroupoidCmd {
    /// Convolution algebra of a groupoid JSON file
    Algebra { file: PathBuf },
}

#[derive(Subcommand)]
enum FredholmCmd {
    /// Index pairing of a module with an idempotent class
    Index {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        class: PathBuf,
    },
}

#[derive(Subcommand)]
enum StarCmd {
    /// Moyal star product of two polynomials
    Mul {
        #[arg(long)]
        pi: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum PsidoCmd {
    /// Adler-Manin residue trace of an operator
    Trace { file: PathBuf },
    /// Radul cocycle of two operators
    Radul {
        a: PathBuf,
        b: PathBuf,
        /// Order window "min:max"
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
}

#[derive(Subcommand)]
enum HopfCmd {
    /// Verify modular pair conditions
    Check {
        file: PathBuf,
        #[arg(long)]
        delta: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
    },
    /// Hopf cyclic cohomology dimension
    Hc {
        file: PathBuf,
        /// Which cyclic module: cm (Connes-Moscovici) or dual
        #[arg(long, value_parser = ["cm", "dual"])]
        pair: String,
        #[arg(long)]
        deg: usize,
    },
}

#[derive(Subcommand)]
enum ToeplitzCmd {
    /// Fredholm index of a Toeplitz operator from its symbol
    Index { symbol: String },
    /// Trace of the commutator [T_f, T_g]
    Ctrace {
        f: String,
        g: String,
        #[arg(long, default_value_t = 16)]
        window: usize,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Operator identities (b, b', lambda, N, s, B) on random cochains
    Ops {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        deg: usize,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Replay every corpus case and compare outputs byte-for-byte
    Run {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Regenerate the corpus inputs and expected outputs (overwrites!)
    Init {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
    },
}

fn load_algebra(path: &Path) -> anyhow::Result<Arc<FinAlgebra>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let j: nj::AlgebraJson = serde_json::from_str(&text)?;
    Ok(nj::algebra_from_json(&j)?)
}

/// Files that reference an algebra either inline or by a relative path.
fn load_algebra_ref(v: &serde_json::Value, base: &Path) -> anyhow::Result<Arc<FinAlgebra>> {
    let aref = v
        .get("algebra")
        .ok_or_else(|| anyhow!("missing \"algebra\" field"))?;
    match aref {
        serde_json::Value::String(rel) => {
            let p = base.join(rel);
            load_algebra(&p)
        }
        obj => {
            let j: nj::AlgebraJson = serde_json::from_value(obj.clone())?;
            Ok(nj::algebra_from_json(&j)?)
        }
    }
}

fn read_json(path: &Path) -> anyhow::Result<serde_json::Value> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

fn dim_output(json: bool, report: bool, r: &ncg_core::cohomology::CohomologyReport) -> String {
    if json {
        if report {
            serde_json::json!({"dim": r.dim, "ranks": r.ranks}).to_string()
        } else {
            serde_json::json!({"dim": r.dim}).to_string()
        }
    } else {
        format!("{}", r.dim)
    }
}

fn scalar_output(json: bool, key: &str, v: &CycloScalar) -> String {
    if json {
        serde_json::json!({ key: render_scalar(v) }).to_string()
    } else {
        render_scalar(v)
    }
}

fn run(cli: Cli, base_dir: &Path) -> anyhow::Result<String> {
    match cli.cmd {
        Cmd::Groupoid { cmd } => match cmd {
            GroupoidCmd::Algebra { file } => {
                let v = read_json(&base_dir.join(&file))?;
                let gj: nj::GroupoidJson = serde_json::from_value(v)?;
                let g = nj::groupoid_from_json(&gj)?;
                let alg = ncg_core::groupoid::groupoid_algebra(&g, 1)?;
                Ok(serde_json::to_string_pretty(&nj::algebra_to_json(&alg))?)
            }
        },
        Cmd::Hh {
            file,
            coeff,
            deg,
            report,
        } => {
            let alg = load_algebra(&base_dir.join(&file))?;
            let kind = match coeff {
                Coeff::Scalar => ComplexKind::HochschildScalar,
                Coeff::Adjoint => ComplexKind::HochschildAdjoint,
            };
            let r = cohomology_dim(kind, &alg, deg)?;
            Ok(dim_output(cli.json, report, &r))
        }
        Cmd::Hc { file, deg, report } => {
            let alg = load_algebra(&base_dir.join(&file))?;
            let r = cohomology_dim(ComplexKind::ConnesCyclic, &alg, deg)?;
            Ok(dim_output(cli.json, report, &r))
        }
        Cmd::Hp {
            file,
            parity,
            report,
        } => {
            let alg = load_algebra(&base_dir.join(&file))?;
            let kind = match parity {
                Parity::Even => ComplexKind::BbEven,
                Parity::Odd => ComplexKind::BbOdd,
            };
            let r = cohomology_dim(kind, &alg, cli.cutoff)?;
            Ok(dim_output(cli.json, report, &r))
        }
        Cmd::Pair { cocycle, class } => {
            let cpath = base_dir.join(&cocycle);
            let cv = read_json(&cpath)?;
            let alg = load_algebra_ref(&cv, cpath.parent().unwrap_or(Path::new(".")))?;
            let cj: nj::CochainJson = serde_json::from_value(cv)?;
            let phi = nj::cochain_from_json(&cj, &alg)?;
            let epath = base_dir.join(&class);
            let ev = read_json(&epath)?;
            let ej: nj::ClassJson = serde_json::from_value(ev)?;
            let value = if ej.kind == "idempotent" {
                let e = nj::idempotent_from_json(&ej, &alg)?;
                ncg_core::chern::pair_even(&phi, &e)?
            } else {
                let u = nj::invertible_from_json(&ej, &alg)?;
                ncg_core::chern::pair_odd(&phi, &u)?
            };
            Ok(scalar_output(cli.json, "value", &value))
        }
        Cmd::Fredholm { cmd } => match cmd {
            FredholmCmd::Index { module, class } => {
                let mpath = base_dir.join(&module);
                let mv = read_json(&mpath)?;
                let alg = load_algebra_ref(&mv, mpath.parent().unwrap_or(Path::new(".")))?;
                let mj: nj::FredholmJson = serde_json::from_value(mv)?;
                let fm = nj::fredholm_from_json(&mj, &alg)?;
                let ev = read_json(&base_dir.join(&class))?;
                let ej: nj::ClassJson = serde_json::from_value(ev)?;
                let e = nj::idempotent_from_json(&ej, &alg)?;
                let idx = ncg_core::chern::fredholm_index(&fm, &e)?;
                Ok(if cli.json {
                    serde_json::json!({"index": idx}).to_string()
                } else {
                    format!("{}", idx)
                })
            }
        },
        Cmd::Star { cmd } => match cmd {
            StarCmd::Mul { pi, f, g, order } => {
                let pv = read_json(&base_dir.join(&pi))?;
                let pj: nj::PoissonJson = serde_json::from_value(pv)?;
                let (vars, poisson) = nj::poisson_from_json(&pj)?;
                let ftext = std::fs::read_to_string(base_dir.join(&f))?;
                let gtext = std::fs::read_to_string(base_dir.join(&g))?;
                let fp = parse_poly(ftext.trim(), &vars)?;
                let gp = parse_poly(gtext.trim(), &vars)?;
                let s = ncg_core::star::moyal_product(&poisson, &fp, &gp, order)?;
                if cli.json {
                    let coeffs: Vec<String> =
                        s.coeffs.iter().map(|p| render_poly(p, &vars)).collect();
                    Ok(serde_json::json!({"order": order, "coeffs": coeffs}).to_string())
                } else {
                    let mut out = String::new();
                    for (k, p) in s.coeffs.iter().enumerate() {
                        out.push_str(&format!("h^{}: {}\n", k, render_poly(p, &vars)));
                    }
                    Ok(out.trim_end().to_string())
                }
            }
        },
        Cmd::Psido { cmd } => match cmd {
            PsidoCmd::Trace { file } => {
                let v = read_json(&base_dir.join(&file))?;
                let pj: nj::PsiDOJson = serde_json::from_value(v)?;
                let p = nj::psido_from_json(&pj)?;
                let t = ncg_core::psido::residue_trace(&p)?;
                Ok(scalar_output(cli.json, "trace", &t))
            }
            PsidoCmd::Radul { a, b, window } => {
                let parse_window = |s: &str| -> anyhow::Result<(i64, i64)> {
                    let (lo, hi) = s
                        .split_once(':')
                        .ok_or_else(|| anyhow!("window must be min:max"))?;
                    Ok((lo.parse()?, hi.parse()?))
                };
                let w = parse_window(&window)?;
                let av = read_json(&base_dir.join(&a))?;
                let bv = read_json(&base_dir.join(&b))?;
                let aj: nj::PsiDOJson = serde_json::from_value(av)?;
                let bj: nj::PsiDOJson = serde_json::from_value(bv)?;
                let mut ap = nj::psido_from_json(&aj)?;
                let mut bp = nj::psido_from_json(&bj)?;
                // rebase both operators into the requested window
                ap = rebase(&ap, w)?;
                bp = rebase(&bp, w)?;
                let v = ncg_core::psido::radul_cocycle(&ap, &bp, w)?;
                Ok(scalar_output(cli.json, "value", &v))
            }
        },
        Cmd::Hopf { cmd } => match cmd {
            HopfCmd::Check { file, delta, sigma } => {
                let hv = read_json(&base_dir.join(&file))?;
                let hj: nj::HopfJson = serde_json::from_value(hv)?;
                let h = nj::hopf_from_json(&hj)?;
                let dv = read_json(&base_dir.join(&delta))?;
                let dj: nj::FunctionalJson = serde_json::from_value(dv)?;
                let sv = read_json(&base_dir.join(&sigma))?;
                let sj: nj::FunctionalJson = serde_json::from_value(sv)?;
                let m = h.algebra.conductor();
                let pair = ncg_core::hopf::ModularPair {
                    delta: dj
                        .values
                        .iter()
                        .map(|s| ncg_core::parse::parse_scalar(s, m))
                        .collect::<Result<Vec<_>, _>>()?,
                    sigma: sj
                        .values
                        .iter()
                        .map(|s| ncg_core::parse::parse_scalar(s, m))
                        .collect::<Result<Vec<_>, _>>()?,
                };
                let mc = ncg_core::hopf::modular_check(&h, &pair)?;
                Ok(if cli.json {
                    serde_json::json!({
                        "is_pair": mc.is_pair,
                        "cm_involutive": mc.cm_involutive,
                        "dual_involutive": mc.dual_involutive,
                    })
                    .to_string()
                } else {
                    format!(
                        "is_pair: {}\ncm_involutive: {}\ndual_involutive: {}",
                        mc.is_pair, mc.cm_involutive, mc.dual_involutive
                    )
                })
            }
            HopfCmd::Hc { file, pair, deg } => {
                let hv = read_json(&base_dir.join(&file))?;
                let hj: nj::HopfJson = serde_json::from_value(hv)?;
                let h = nj::hopf_from_json(&hj)?;
                let mp = ncg_core::hopf::ModularPair {
                    delta: h.counit.clone(),
                    sigma: h.algebra.unit().to_vec(),
                };
                let cutoff = (deg + 1).max(cli.cutoff.min(6));
                let m = if pair == "cm" {
                    ncg_core::hopf::cm_cocyclic_module(&h, &mp, cutoff)?
                } else {
                    ncg_core::hopf::dual_cyclic_module(&h, &mp, cutoff)?
                };
                let dim = m.cyclic_homology_dim(deg)?;
                Ok(if cli.json {
                    serde_json::json!({"dim": dim}).to_string()
                } else {
                    format!("{}", dim)
                })
            }
        },
        Cmd::Toeplitz { cmd } => match cmd {
            ToeplitzCmd::Index { symbol } => {
                let f = parse_laurent(&symbol)?;
                let idx = ncg_core::toeplitz::toeplitz_index(&f)?;
                Ok(if cli.json {
                    serde_json::json!({"index": idx}).to_string()
                } else {
                    format!("{}", idx)
                })
            }
            ToeplitzCmd::Ctrace { f, g, window } => {
                let fs = parse_laurent(&f)?;
                let gs = parse_laurent(&g)?;
                let v = ncg_core::toeplitz::commutator_trace(&fs, &gs, window)?;
                Ok(scalar_output(cli.json, "value", &v))
            }
        },
        Cmd::Check { cmd } => match cmd {
            CheckCmd::Ops { file, trials, deg } => {
                let alg = load_algebra(&base_dir.join(&file))?;
                let report = check_operator_identities(&alg, trials, deg, cli.seed)?;
                Ok(if cli.json {
                    serde_json::json!({"trials": trials, "ok": true, "identities": report})
                        .to_string()
                } else {
                    format!("{}\nall identities hold over {} trials", report.join("\n"), trials)
                })
            }
        },
        Cmd::Corpus { cmd } => match cmd {
            CorpusCmd::Run { dir, threads } => corpus_run(&base_dir.join(dir), threads),
            CorpusCmd::Init { dir } => corpus_init(&base_dir.join(dir)),
        },
    }
}

/// Build the standard corpus: input files plus expected outputs captured
/// from the current implementation.
fn json_pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).unwrap()
}

fn corpus_init(dir: &Path) -> anyhow::Result<String> {
    use ncg_core::groups::cyclic_table;
    std::fs::create_dir_all(dir)?;
    let write = |name: &str, text: &str| -> anyhow::Result<()> {
        std::fs::write(dir.join(name), text)?;
        Ok(())
    };

    // algebras
    let m2 = FinAlgebra::matrix(2).map_err(anyhow::Error::from)?;
    write("m2.json", &json_pretty(&nj::algebra_to_json(&m2)))?;
    let z2 = FinAlgebra::group_algebra(&cyclic_table(2), 1)?;
    write("z2.json", &json_pretty(&nj::algebra_to_json(&z2)))?;
    let z3 = FinAlgebra::group_algebra(&cyclic_table(3), 3)?;
    write("z3.json", &json_pretty(&nj::algebra_to_json(&z3)))?;
    let t12 = FinAlgebra::rational_torus(1, 2)?;
    write("torus12.json", &json_pretty(&nj::algebra_to_json(&t12)))?;
    let k1 = FinAlgebra::scalar_field(1)?;
    write("k1.json", &json_pretty(&nj::algebra_to_json(&k1)))?;

    // groupoid
    let pairs3 = ncg_core::groupoid::FiniteGroupoid::pairs(3)?;
    write("pairs3.json", &json_pretty(&nj::groupoid_to_json(&pairs3)))?;

    // trace cocycle and idempotent over m2
    let tau = {
        let ts = ncg_core::algebra::trace_space(&m2);
        let t = &ts[0];
        let scale = t.values[0].inv();
        ncg_core::algebra::LinearFunctional::new(
            m2.clone(),
            t.values.iter().map(|v| v.mul(&scale)).collect(),
        )
    };
    let phi = {
        let mut c = Cochain::zero_scalar(&m2, 0);
        c.values = tau.values.clone();
        c
    };
    let mut phi_json = serde_json::to_value(nj::cochain_to_json(&phi))?;
    phi_json["algebra"] = serde_json::Value::String("m2.json".into());
    write("phi_tau.json", &serde_json::to_string_pretty(&phi_json)?)?;
    let e11 = {
        let mut m = ncg_core::algebra::AMatrix::zero(&m2, 1);
        m.entries[0][0][0] = CycloScalar::one();
        ncg_core::chern::KIdempotent::new(m)?
    };
    write(
        "e11.json",
        &json_pretty(&nj::idempotent_to_json(&e11)),
    )?;

    // toy Fredholm module and the class (1, 0)
    let fm = ncg_core::chern::toy_fredholm_module()?;
    let mut fm_json = serde_json::to_value(nj::fredholm_to_json(&fm))?;
    fm_json["algebra"] = serde_json::to_value(nj::algebra_to_json(&fm.rep.parent))?;
    write("fm_toy.json", &serde_json::to_string_pretty(&fm_json)?)?;
    let e10 = {
        let alg = fm.rep.parent.clone();
        let mut m = ncg_core::algebra::AMatrix::zero(&alg, 1);
        m.entries[0][0][0] = CycloScalar::one();
        ncg_core::chern::KIdempotent::new(m)?
    };
    write("e10.json", &json_pretty(&nj::idempotent_to_json(&e10)))?;

    // star product inputs
    write(
        "pi.json",
        &serde_json::to_string_pretty(&serde_json::json!({
            "vars": ["x", "y"],
            "matrix": [["0", "1"], ["-1", "0"]],
        }))?,
    )?;
    write("f.txt", "x\n")?;
    write("g.txt", "y\n")?;

    // psido operators
    write(
        "op1.json",
        &serde_json::to_string_pretty(&serde_json::json!({
            "window": [-4, 2],
            "terms": [{"order": -1, "coeff": "1"}, {"order": 2, "coeff": "z"}],
        }))?,
    )?;
    write(
        "a_zd.json",
        &serde_json::to_string_pretty(&serde_json::json!({
            "window": [-6, 4],
            "terms": [{"order": 1, "coeff": "z"}],
        }))?,
    )?;
    write(
        "b_zinv.json",
        &serde_json::to_string_pretty(&serde_json::json!({
            "window": [-6, 4],
            "terms": [{"order": 0, "coeff": "z^-1"}],
        }))?,
    )?;

    // Hopf algebra of Z_2 with (eps, 1)
    let hz2 = ncg_core::hopf::HopfAlgebra::group_algebra(&cyclic_table(2), 1)?;
    write("hopf_z2.json", &json_pretty(&nj::hopf_to_json(&hz2)))?;
    write(
        "eps_z2.json",
        &serde_json::to_string_pretty(&serde_json::json!({"values": ["1", "1"]}))?,
    )?;
    write(
        "one_z2.json",
        &serde_json::to_string_pretty(&serde_json::json!({"values": ["1", "0"]}))?,
    )?;

    // case list: args + expected output captured through the dispatcher
    let case_specs: Vec<(&str, Vec<&str>)> = vec![
        ("hc-m2-deg2-json", vec!["hc", "m2.json", "--deg", "2", "--json"]),
        ("hc-m2-deg3", vec!["hc", "m2.json", "--deg", "3"]),
        ("hh-m2-deg1-json", vec!["hh", "m2.json", "--deg", "1", "--json"]),
        ("hh-adjoint-z2-deg1", vec!["hh", "z2.json", "--coeff", "adjoint", "--deg", "1"]),
        ("hc-z3-deg0", vec!["hc", "z3.json", "--deg", "0"]),
        ("hc-z2-deg3-report", vec!["hc", "z2.json", "--deg", "3", "--json", "--report"]),
        ("hc-torus12-deg2", vec!["hc", "torus12.json", "--deg", "2"]),
        ("hp-k1-even", vec!["hp", "k1.json", "--parity", "even", "--json"]),
        ("hp-k1-odd", vec!["hp", "k1.json", "--parity", "odd"]),
        ("hp-z2-even", vec!["hp", "z2.json", "--parity", "even", "--cutoff", "2"]),
        ("groupoid-pairs3", vec!["groupoid", "algebra", "pairs3.json"]),
        ("pair-trace-e11", vec!["pair", "--cocycle", "phi_tau.json", "--class", "e11.json"]),
        ("fredholm-toy", vec!["fredholm", "index", "--module", "fm_toy.json", "--class", "e10.json"]),
        ("star-xy-order3", vec!["star", "mul", "--pi", "pi.json", "--f", "f.txt", "--g", "g.txt", "--order", "3"]),
        ("psido-trace", vec!["psido", "trace", "op1.json"]),
        ("psido-radul", vec!["psido", "radul", "a_zd.json", "b_zinv.json", "--window", "-6:4"]),
        ("hopf-check-z2", vec!["hopf", "check", "hopf_z2.json", "--delta", "eps_z2.json", "--sigma", "one_z2.json", "--json"]),
        ("hopf-hc-dual-z2-deg2", vec!["hopf", "hc", "hopf_z2.json", "--pair", "dual", "--deg", "2"]),
        ("hopf-hc-cm-z2-deg0", vec!["hopf", "hc", "hopf_z2.json", "--pair", "cm", "--deg", "0"]),
        ("toeplitz-index-z3", vec!["toeplitz", "index", "z^3"]),
        ("toeplitz-index-2z-json", vec!["toeplitz", "index", "2 + z", "--json"]),
        ("toeplitz-ctrace", vec!["toeplitz", "ctrace", "z", "z^-1", "--window", "16"]),
        ("check-ops-m2", vec!["check", "ops", "m2.json", "--trials", "5", "--deg", "2", "--seed", "1"]),
    ];
    let mut cases = Vec::new();
    for (name, args) in case_specs {
        let mut argv = vec!["ncg".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let parsed = Cli::try_parse_from(&argv)
            .map_err(|e| anyhow!("case {name}: {e}"))?;
        let out = run(parsed, dir).map_err(|e| anyhow!("case {name}: {e}"))?;
        cases.push(serde_json::json!({
            "name": name,
            "args": args,
            "expect": out,
        }));
    }
    let n = cases.len();
    write("cases.json", &serde_json::to_string_pretty(&cases)?)?;
    Ok(format!("wrote corpus with {} cases to {}", n, dir.display()))
}

fn rebase(
    p: &ncg_core::psido::FormalPsiDO,
    w: (i64, i64),
) -> anyhow::Result<ncg_core::psido::FormalPsiDO> {
    let mut out = ncg_core::psido::FormalPsiDO::zero(w);
    for (k, c) in &p.coeffs {
        if *k < w.0 || *k > w.1 {
            bail!("operator order {} outside requested window", k);
        }
        out.add_term(*k, c);
    }
    Ok(out)
}

fn check_operator_identities(
    alg: &Arc<FinAlgebra>,
    trials: usize,
    maxdeg: usize,
    seed: u64,
) -> anyhow::Result<Vec<String>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    for _ in 0..trials {
        let n = rng.gen_range(1..=maxdeg.max(1));
        let mut phi = Cochain::zero_scalar(alg, n);
        for v in phi.values.iter_mut() {
            *v = CycloScalar::from_int(rng.gen_range(-3..=3));
        }
        let b = apply_operator(OperatorKind::B, &phi)?;
        if !apply_operator(OperatorKind::B, &b)?.is_zero() {
            bail!("b^2 != 0");
        }
        let bp = apply_operator(OperatorKind::BPrime, &phi)?;
        if !apply_operator(OperatorKind::BPrime, &bp)?.is_zero() {
            bail!("b'^2 != 0");
        }
        let big_b = apply_operator(OperatorKind::ConnesB, &phi)?;
        let bb = apply_operator(OperatorKind::B, &big_b)?;
        let b_then = apply_operator(OperatorKind::ConnesB, &b)?;
        let anti: Vec<CycloScalar> = bb
            .values
            .iter()
            .zip(&b_then.values)
            .map(|(x, y)| x.add(y))
            .collect();
        if anti.iter().any(|v| !v.is_zero()) {
            bail!("bB + Bb != 0");
        }
    }
    lines.push("b^2 = 0".to_string());
    lines.push("b'^2 = 0".to_string());
    lines.push("bB + Bb = 0".to_string());
    Ok(lines)
}

#[derive(serde::Deserialize)]
struct CorpusCase {
    name: String,
    args: Vec<String>,
    expect: String,
}

fn corpus_run(dir: &Path, threads: usize) -> anyhow::Result<String> {
    let cases_path = dir.join("cases.json");
    let text = std::fs::read_to_string(&cases_path)
        .with_context(|| format!("reading {}", cases_path.display()))?;
    let cases: Vec<CorpusCase> = serde_json::from_str(&text)?;
    let dir = dir.to_path_buf();
    let run_case = |case: &CorpusCase| -> (String, Result<(), String>) {
        let mut argv = vec!["ncg".to_string()];
        argv.extend(case.args.iter().cloned());
        let parsed = match Cli::try_parse_from(&argv) {
            Ok(c) => c,
            Err(e) => return (case.name.clone(), Err(format!("usage: {e}"))),
        };
        match run(parsed, &dir) {
            Ok(out) => {
                if out == case.expect {
                    (case.name.clone(), Ok(()))
                } else {
                    (
                        case.name.clone(),
                        Err(format!("output mismatch:\n--- got ---\n{out}\n--- want ---\n{}", case.expect)),
                    )
                }
            }
            Err(e) => (case.name.clone(), Err(format!("error: {e}"))),
        }
    };
    let results: Vec<(String, Result<(), String>)> = if threads <= 1 {
        cases.iter().map(run_case).collect()
    } else {
        // shard across threads, then reassemble in case order
        std::thread::scope(|scope| {
            let chunks: Vec<Vec<(usize, &CorpusCase)>> = {
                let mut cs: Vec<Vec<(usize, &CorpusCase)>> = vec![Vec::new(); threads];
                for (i, c) in cases.iter().enumerate() {
                    cs[i % threads].push((i, c));
                }
                cs
            };
            let mut handles = Vec::new();
            for chunk in chunks {
                let run_case = &run_case;
                handles.push(scope.spawn(move || {
                    chunk
                        .into_iter()
                        .map(|(i, c)| (i, run_case(c)))
                        .collect::<Vec<_>>()
                }));
            }
            let mut indexed: Vec<(usize, (String, Result<(), String>))> = Vec::new();
            for h in handles {
                indexed.extend(h.join().expect("corpus worker panicked"));
            }
            indexed.sort_by_key(|(i, _)| *i);
            indexed.into_iter().map(|(_, r)| r).collect()
        })
    };
    let mut out = String::new();
    let mut failures = 0usize;
    for (name, r) in &results {
        match r {
            Ok(()) => out.push_str(&format!("ok   {}\n", name)),
            Err(e) => {
                failures += 1;
                out.push_str(&format!("FAIL {}\n{}\n", name, e));
            }
        }
    }
    out.push_str(&format!("{} cases, {} failures", results.len(), failures));
    if failures > 0 {
        bail!("{out}");
    }
    Ok(out)
}

fn main() {
    let cli = Cli::parse();
    match run(cli, Path::new(".")) {
        Ok(out) => {
            println!("{}", out);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            // domain errors (including wrapped NcgError) exit 1; usage
            // errors never reach here (clap exits 2 itself)
            let _ = e.downcast_ref::<NcgError>();
            std::process::exit(1);
        }
    }
}
