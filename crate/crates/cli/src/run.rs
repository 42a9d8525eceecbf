//! Dispatch and document emission. Every output carries a config header so a
//! run can be reproduced byte-for-byte from the document alone.

use crate::bench::run_bench;
use crate::{Cli, Command, DimredArg, Family, Format, TransformOp};
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use vsep_core::certificates::{ball_to_embedding, Certificate, CertificateDoc};
use vsep_core::dimred::DimredMethod;
use vsep_core::error::Error;
use vsep_core::geometry::{
    ballsystem_to_certificate, circle_pack, generate_random_triangulation, intersection_graph,
    knn_graph, random_kply_system, BallSystem,
};
use vsep_core::io::{
    canonical_edge_list, graph_hash, parse_edge_list, parse_rotation_system, rotation_system_text,
};
use vsep_core::reweighting::{extract_dual_embedding, solve_lambda2_star, SolveOptions};
use vsep_core::rounding::{full_pipeline, PipelineOptions};
use vsep_core::transforms;
use vsep_core::{Graph, RotationSystem};

#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub tol: f64,
    pub threads: usize,
    pub format: String,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> RunConfig {
        let threads = std::env::var("VSEP_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
            .or(cli.threads)
            .unwrap_or(1);
        RunConfig {
            command: format!("{:?}", cli.command),
            seed: cli.seed,
            tol: cli.tol,
            threads,
            format: format!("{:?}", cli.format).to_lowercase(),
        }
    }
}

pub fn dispatch(cli: Cli) -> i32 {
    let config = RunConfig::from_cli(&cli);
    match execute(&cli, &config) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::NotFound => {
            eprintln!("vsep: no such input: {e}");
            2
        }
        Err(Error::Parse { line, msg }) => {
            eprintln!("vsep: parse error at line {line}: {msg}");
            2
        }
        Err(e) => {
            eprintln!("vsep: {e}");
            1
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    Ok(std::fs::read_to_string(path)?)
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    Ok(parse_edge_list(&read(path)?)?.graph)
}

fn load_rotation(path: &Path) -> Result<RotationSystem, Error> {
    Ok(parse_rotation_system(&read(path)?)?.rotation)
}

fn emit(cli: &Cli, name: &str, doc: &serde_json::Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(doc)?;
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path: PathBuf = dir.join(name);
            std::fs::write(&path, text + "\n")?;
            eprintln!("wrote {}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn emit_text(cli: &Cli, name: &str, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path: PathBuf = dir.join(name);
            std::fs::write(&path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn method_of(arg: DimredArg) -> DimredMethod {
    match arg {
        DimredArg::Gaussian => DimredMethod::Gaussian,
        DimredArg::Coordinate => DimredMethod::Coordinate,
        DimredArg::Partition => DimredMethod::Partition,
    }
}

fn execute(cli: &Cli, config: &RunConfig) -> Result<i32, Error> {
    match &cli.command {
        Command::Oracle { graph } => {
            let g = load_graph(graph)?;
            let report = vsep_core::oracles::oracle_report(&g)?;
            emit(
                cli,
                "oracle.json",
                &json!({ "config": config, "report": report }),
            )?;
            Ok(0)
        }

        Command::Lambda2star {
            graph,
            iters,
            emit_certificate,
            dim,
        } => {
            let g = load_graph(graph)?;
            let out = solve_lambda2_star(
                &g,
                &SolveOptions {
                    iters: *iters,
                    seed: cli.seed,
                    tol: cli.tol,
                    ..Default::default()
                },
            )?;
            let dual = extract_dual_embedding(&g, &out.reweighting, *dim)?;
            let feasible = dual.cert.verify(&g).feasible;
            if let Some(path) = emit_certificate {
                let doc = Certificate::Gamma(dual.cert.clone()).to_doc(&g);
                std::fs::write(path, serde_json::to_string_pretty(&doc)?)?;
            }
            emit(
                cli,
                "lambda2star.json",
                &json!({
                    "config": config,
                    "lambda2_star": out.value,
                    "converged": out.trace.converged,
                    "final_gap": out.trace.final_gap,
                    "iterations": out.trace.lambda2.len(),
                    "certificate_value": dual.cert.value(),
                    "certificate_dim": dual.cert.d,
                    "certificate_feasible": feasible,
                    "warning": dual.warning,
                }),
            )?;
            Ok(if feasible { 0 } else { 1 })
        }

        Command::Partition {
            graph,
            dim,
            dimred,
            trials,
        } => {
            let g = load_graph(graph)?;
            let opts = PipelineOptions {
                dim: *dim,
                method: method_of(*dimred),
                trials: *trials,
                seed: cli.seed,
                solve: SolveOptions {
                    seed: cli.seed,
                    tol: cli.tol,
                    ..Default::default()
                },
                ..Default::default()
            };
            let (cut, full, line, lambda, _) = vsep_core::rounding::certificate_cut(&g, &opts)?;
            let ok = full.verify(&g).feasible && line.verify(&g).feasible;
            emit(
                cli,
                "partition.json",
                &json!({
                    "config": config,
                    "lambda2_star": lambda,
                    "gamma_full": full.value(),
                    "gamma_one": line.value(),
                    "cut": { "set": cut.set, "boundary": cut.boundary, "ratio": cut.ratio },
                }),
            )?;
            Ok(if ok { 0 } else { 1 })
        }

        Command::Separator {
            graph,
            alpha,
            dim,
            dimred,
            trials,
        } => {
            let g = load_graph(graph)?;
            let opts = PipelineOptions {
                dim: *dim,
                method: method_of(*dimred),
                trials: *trials,
                seed: cli.seed,
                alpha: *alpha,
                solve: SolveOptions {
                    seed: cli.seed,
                    tol: cli.tol,
                    ..Default::default()
                },
            };
            if g.is_connected() {
                let res = full_pipeline(&g, &opts)?;
                let valid = res.separator.validate(&g).is_ok();
                emit(
                    cli,
                    "separator.json",
                    &json!({
                        "config": config,
                        "audit": res.audit,
                        "s": res.separator.s,
                        "a": res.separator.a,
                        "b": res.separator.b,
                    }),
                )?;
                Ok(if valid && res.audit.chain_ok { 0 } else { 1 })
            } else {
                // disconnected inputs skip the spectral audit; components
                // that already pack need no cutting at all
                let sep = vsep_core::rounding::separator_for(&g, &opts)?;
                let valid = sep.validate(&g).is_ok();
                emit(
                    cli,
                    "separator.json",
                    &json!({
                        "config": config,
                        "audit": serde_json::Value::Null,
                        "s": sep.s,
                        "a": sep.a,
                        "b": sep.b,
                    }),
                )?;
                Ok(if valid { 0 } else { 1 })
            }
        }

        Command::Dimred {
            certificate,
            graph,
            method,
            trials,
        } => {
            let g = load_graph(graph)?;
            let doc: CertificateDoc = serde_json::from_str(&read(certificate)?)?;
            let Certificate::Gamma(cert) = Certificate::from_doc(&doc, &g)? else {
                return Err(Error::Precondition(
                    "dimension reduction expects an embedding certificate".into(),
                ));
            };
            let red = vsep_core::dimred::reduce(method_of(*method), &cert, &g, *trials, cli.seed)?;
            let feasible = red.verify(&g).feasible;
            let out_doc = Certificate::Gamma(red.clone()).to_doc(&g);
            emit(
                cli,
                "dimred.json",
                &json!({
                    "config": config,
                    "input_value": cert.value(),
                    "output_value": red.value(),
                    "certificate": out_doc,
                }),
            )?;
            Ok(if feasible { 0 } else { 1 })
        }

        Command::Transform { rotation, op, k } => {
            let r = load_rotation(rotation)?;
            let (out_rot, extra) = match op {
                TransformOp::Hexsub => {
                    let s = transforms::hexagonal_subdivide(&r, *k)?;
                    (s, json!({}))
                }
                TransformOp::DegreeReduce => {
                    let (s, map) = transforms::degree_reduce(&r)?;
                    (
                        s,
                        json!({ "patch_size": map.r, "patch_diameter_bound": map.l }),
                    )
                }
                TransformOp::Triangulate => (transforms::triangulate(&r)?, json!({})),
            };
            emit(
                cli,
                "transform.json",
                &json!({
                    "config": config,
                    "n": out_rot.graph().n(),
                    "m": out_rot.graph().m(),
                    "faces": out_rot.faces().len(),
                    "genus": out_rot.euler_genus()?,
                    "map": extra,
                }),
            )?;
            emit_text(cli, "transform.rot", &rotation_system_text(&out_rot))?;
            Ok(0)
        }

        Command::ReduceExpansion { graph, k } => {
            let g = load_graph(graph)?;
            let red = transforms::expansion_reduction(&g, *k)?;
            emit(
                cli,
                "reduce-expansion.json",
                &json!({
                    "config": config,
                    "k": k,
                    "n": red.graph.n(),
                    "m": red.graph.m(),
                }),
            )?;
            emit_text(cli, "reduced.el", &canonical_edge_list(&red.graph))?;
            Ok(0)
        }

        Command::Generate { family, n, k, d } => {
            match family {
                Family::Delaunay => {
                    let r = generate_random_triangulation(*n, cli.seed)?;
                    emit_text(cli, "generated.rot", &rotation_system_text(&r))?;
                    emit_text(cli, "generated.el", &canonical_edge_list(r.graph()))?;
                }
                Family::Knn => {
                    let points = vsep_core::geometry::random_points(*n, *d, cli.seed);
                    let g = knn_graph(&points, *k)?;
                    emit_text(cli, "generated.el", &canonical_edge_list(&g))?;
                    emit(cli, "points.json", &json!({ "config": config, "points": points }))?;
                }
                Family::Ballsys => {
                    let b = random_kply_system(*n, *k, cli.seed)?;
                    let g = intersection_graph(&b)?;
                    emit(cli, "ballsys.json", &json!({ "config": config, "system": b }))?;
                    emit_text(cli, "generated.el", &canonical_edge_list(&g))?;
                }
                Family::Grid => {
                    let side = (*n as f64).sqrt().round() as usize;
                    let g = vsep_core::generators::grid(side, side);
                    emit_text(cli, "generated.el", &canonical_edge_list(&g))?;
                }
                Family::Path => {
                    let g = vsep_core::generators::path(*n);
                    emit_text(cli, "generated.el", &canonical_edge_list(&g))?;
                }
                Family::Cycle => {
                    let g = vsep_core::generators::cycle(*n);
                    emit_text(cli, "generated.el", &canonical_edge_list(&g))?;
                }
                Family::Gnp => {
                    let g = vsep_core::generators::random_connected(*n, 2.5 / *n as f64, cli.seed);
                    emit_text(cli, "generated.el", &canonical_edge_list(&g))?;
                }
            }
            Ok(0)
        }

        Command::Pack { rotation } => {
            let r = load_rotation(rotation)?;
            let packed = circle_pack(&r)?;
            emit(
                cli,
                "ballsys.json",
                &json!({ "config": config, "system": packed }),
            )?;
            Ok(0)
        }

        Command::CertifyGeometry { ballsys, graph } => {
            let g = load_graph(graph)?;
            let wrapper: serde_json::Value = serde_json::from_str(&read(ballsys)?)?;
            let system: BallSystem = serde_json::from_value(
                wrapper.get("system").cloned().unwrap_or(wrapper),
            )?;
            let ball = ballsystem_to_certificate(&system, &g)?;
            let feasible = ball.verify(&g).feasible;
            let emb = ball_to_embedding(&ball, &g)?;
            let doc = Certificate::GammaDot(ball.clone()).to_doc(&g);
            emit(
                cli,
                "geometry-certificate.json",
                &json!({
                    "config": config,
                    "graph_hash": graph_hash(&g),
                    "ball_value": ball.value(),
                    "embedding_value": emb.value(),
                    "certificate": doc,
                }),
            )?;
            Ok(if feasible { 0 } else { 1 })
        }

        Command::Spread { graph, p, iters } => {
            let g = load_graph(graph)?;
            let out = vsep_core::spread::maximize_spread(&g, *p, *iters, cli.seed)?;
            emit(
                cli,
                "spread.json",
                &json!({ "config": config, "weights": out }),
            )?;
            Ok(0)
        }

        Command::Bench { family, sizes } => {
            let report = run_bench(*family, sizes, cli.seed, config.threads, cli.out.as_deref())?;
            match cli.format {
                Format::Json => emit(
                    cli,
                    "bench.json",
                    &json!({ "config": config, "report": report }),
                )?,
                Format::Tsv => {
                    let mut text = String::from(
                        "family\tn\tdelta\tlambda2_star\tgamma_one\tpsi_sweep\tseparator\tmillis\n",
                    );
                    for row in &report.rows {
                        text.push_str(&format!(
                            "{}\t{}\t{}\t{:.6e}\t{:.6e}\t{:.6e}\t{}\t{}\n",
                            row.family,
                            row.n,
                            row.delta,
                            row.lambda2_star,
                            row.gamma_one,
                            row.psi_sweep,
                            row.separator,
                            row.millis
                        ));
                    }
                    text.push_str(&format!(
                        "# separator_slope={:.3} gamma_slope={:.3}\n",
                        report.separator_slope, report.gamma_slope
                    ));
                    emit_text(cli, "bench.tsv", &text)?;
                }
            }
            Ok(0)
        }

        Command::Verify { certificate, graph } => {
            let g = load_graph(graph)?;
            let doc: CertificateDoc = serde_json::from_str(&read(certificate)?)?;
            let cert = Certificate::from_doc(&doc, &g)?;
            let report = cert.verify(&g);
            emit(
                cli,
                "verify.json",
                &json!({ "config": config, "report": report }),
            )?;
            Ok(if report.feasible { 0 } else { 1 })
        }
    }
}
