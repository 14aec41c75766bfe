use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use zalgebra_core::exact::{parse_rational, Rational};
use zalgebra_core::invariants::{ggs_check, hilbert_basis, transport, BasisKind};
use zalgebra_core::lie::{double, from_json, gl, sl, so_even, LieAlgebra, Splitting};
use zalgebra_core::poisson::{index_estimate, Sampling};
use zalgebra_core::weyl::{
    build_root_system, enumerate_weyl, molien_dims, restriction_check, satake_subspaces, w0_compute,
    RootType, SatakeDiagram,
};
use zalgebra_core::zalgebra::{borel_splitting, run_case, CaseParams, CaseReport, CASE_NAMES};

#[derive(Parser)]
#[command(name = "zalgebra", version, about = "Case studies for Poisson-commutative subalgebras of S(g)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Charpoly,
    TracePowers,
    So,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named case study.
    Case {
        name: String,
        /// Root system letter (A or D).
        #[arg(long = "type", default_value = "A")]
        kind: char,
        #[arg(long)]
        n: Option<usize>,
        /// t_1 rows in Cartan coordinates, e.g. "1,1" or "0,1,0;1,0,1".
        #[arg(long)]
        t1: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long)]
        dmax: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Degree criterion for a Hilbert basis and a subalgebra h.
    CheckGgs {
        /// Builder (sl3, gl4, so8, double-sl2) or structure-constant JSON file.
        #[arg(long)]
        algebra: String,
        /// "borel", "t1=<rows>" for a horospherical h, or basis indices/names.
        #[arg(long)]
        h: String,
        #[arg(long, value_enum, default_value = "charpoly")]
        basis: Basis,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// N_W(t_0), Z_W(t_0), W_0 and the restriction table for a Satake diagram.
    WeylW0 {
        #[arg(long = "type")]
        root_type: String,
        /// Arrows as i:j pairs, e.g. 1:5,2:4.
        #[arg(long, default_value = "")]
        arrows: String,
        #[arg(long)]
        dmax: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sampled index and b-value of an algebra.
    Index {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn parse_rows(text: &str) -> Result<Vec<Vec<Rational>>, String> {
    text.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|row| {
            row.split(',')
                .map(|x| parse_rational(x.trim()).ok_or_else(|| format!("bad number {x:?}")))
                .collect()
        })
        .collect()
}

fn load_algebra(name: &str) -> Result<LieAlgebra, String> {
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("custom");
        return from_json(label, &text).map_err(|e| e.to_string());
    }
    let (inner, doubled) = match name.strip_prefix("double-") {
        Some(rest) => (rest, true),
        None => (name, false),
    };
    let num = |prefix: &str| inner.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    let g = if let Some(n) = num("sl") {
        sl(n)
    } else if let Some(n) = num("gl") {
        gl(n)
    } else if let Some(m) = num("so").filter(|m| m % 2 == 0) {
        so_even(m / 2)
    } else {
        return Err(format!("unknown algebra {name:?}; use slN, glN, soN (N even), double-slN or a file"));
    }
    .map_err(|e| e.to_string())?;
    if doubled {
        double(&g).map_err(|e| e.to_string())
    } else {
        Ok(g)
    }
}

fn splitting_for(g: &LieAlgebra, h: &str) -> Result<Splitting, String> {
    if h == "borel" {
        return borel_splitting(g).map_err(|e| e.to_string());
    }
    if let Some(rows) = h.strip_prefix("t1=") {
        return Splitting::horospherical(g, &parse_rows(rows)?).map_err(|e| e.to_string());
    }
    let idx = h
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .ok()
                .or_else(|| g.index_of(tok))
                .ok_or_else(|| format!("unknown basis element {tok:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Splitting::with_complement(g, &idx).map_err(|e| e.to_string())
}

fn check_ggs(
    algebra: &str,
    h: &str,
    basis: Basis,
    seed: u64,
    trials: usize,
) -> Result<CaseReport, String> {
    let g = load_algebra(algebra)?;
    let s = splitting_for(&g, h)?;
    let kind = match basis {
        Basis::Charpoly => BasisKind::Charpoly,
        Basis::TracePowers => BasisKind::TracePowers,
        Basis::So => BasisKind::SoMinorsPfaffian,
    };
    let kind = if g.realization().is_some_and(|r| r.blocks.len() == 2) {
        BasisKind::DoubleExtended(Box::new(kind))
    } else {
        kind
    };
    let b = hilbert_basis(&g, &kind).map_err(|e| e.to_string())?;
    let tb = transport(&s, &b).map_err(|e| e.to_string())?;
    let r = ggs_check(&s, &tb, &Sampling::new(trials.max(1), seed)).map_err(|e| e.to_string())?;
    let mut rep = CaseReport::new("check-ggs", seed);
    rep.param("algebra", algebra);
    rep.param("h", h);
    rep.param("basis", &kind);
    rep.verdict("ggs_for_h", r.h_side.verdict);
    rep.verdict("criteria_consistent", r.h_side.consistent);
    rep.table(
        "rows",
        json!(r
            .rows
            .iter()
            .map(|row| json!({
                "generator": row.name,
                "degree": row.degree,
                "deg_r_top": row.deg_r_top,
                "deg_h_bottom": row.deg_h_bottom,
            }))
            .collect::<Vec<_>>()),
    );
    rep.table(
        "h_side",
        json!({
            "degree_sum": r.h_side.degree_sum,
            "dim_r": r.h_side.dim,
            "jacobian_rank": r.h_side.jacobian_rank,
        }),
    );
    if let Some(rs) = &r.r_side {
        rep.table(
            "r_side",
            json!({"degree_sum": rs.degree_sum, "dim_h": rs.dim, "verdict": rs.verdict}),
        );
    }
    Ok(rep)
}

fn parse_arrows(text: &str) -> Result<Vec<(usize, usize)>, String> {
    text.split(',')
        .filter(|a| !a.trim().is_empty())
        .map(|a| {
            let (i, j) = a.split_once(':').ok_or_else(|| format!("bad arrow {a:?}"))?;
            let p = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad node {x:?}"));
            Ok((p(i)?, p(j)?))
        })
        .collect()
}

fn weyl_w0(root_type: &str, arrows: &str, dmax: Option<u32>, seed: u64) -> Result<CaseReport, String> {
    let t: RootType = root_type.parse().map_err(|e: zalgebra_core::weyl::WeylError| e.to_string())?;
    let rs = build_root_system(t).map_err(|e| e.to_string())?;
    let d = SatakeDiagram::new(rs.rank, &parse_arrows(arrows)?).map_err(|e| e.to_string())?;
    let w = enumerate_weyl(&rs, 100_000).map_err(|e| e.to_string())?;
    let (t0, _) = satake_subspaces(&rs, &d).map_err(|e| e.to_string())?;
    let w0 = w0_compute(&w, &t0).map_err(|e| e.to_string())?;
    // the largest fundamental degree is the Coxeter number 2|Φ+|/rank
    let coxeter = (2 * rs.positive_roots.len() / rs.rank) as u32;
    let dmax = dmax.unwrap_or(coxeter);
    let ambient = molien_dims(&w, dmax);
    let r = restriction_check(&w, &t0, &w0, dmax, seed).map_err(|e| e.to_string())?;
    let mut rep = CaseReport::new("weyl-w0", seed);
    rep.param("type", rs.label());
    rep.param("arrows", arrows);
    rep.param("dmax", dmax);
    rep.verdict("weyl_order_matches_type", w.order() == rs.known_order());
    rep.verdict("z_divides_n", w0.z_order > 0 && w0.n_order % w0.z_order == 0);
    rep.verdict("w0_is_n_over_z", w0.w0_order * w0.z_order == w0.n_order);
    rep.verdict(
        "image_within_invariants",
        r.table.iter().all(|row| row.image_dim <= row.invariant_dim),
    );
    rep.table("ambient_invariant_dims", json!(ambient));
    rep.table(
        "orders",
        json!({"W": w0.w_order, "N": w0.n_order, "Z": w0.z_order, "W0": w0.w0_order}),
    );
    rep.table(
        "w0_order_statistics",
        json!(w0
            .order_statistics
            .iter()
            .map(|(o, c)| json!({"order": o, "count": c}))
            .collect::<Vec<_>>()),
    );
    rep.table(
        "restriction",
        json!({
            "first_failure_degree": r.first_failure_degree,
            "onto_up_to_dmax": r.verdict_up_to_dmax,
            "rows": r.table.iter().map(|row| json!({
                "degree": row.degree,
                "image_dim": row.image_dim,
                "invariant_dim": row.invariant_dim,
            })).collect::<Vec<_>>(),
        }),
    );
    Ok(rep)
}

fn index(algebra: &str, seed: u64, trials: usize) -> Result<CaseReport, String> {
    let g = load_algebra(algebra)?;
    let est = index_estimate(&g, &Sampling::new(trials.max(1), seed)).map_err(|e| e.to_string())?;
    let mut rep = CaseReport::new("index", seed);
    rep.param("algebra", algebra);
    rep.param("trials", trials);
    if let Some(l) = g.rank() {
        rep.verdict("index_is_rank", est.claimed_index == l);
    }
    rep.table(
        "index",
        json!({
            "dim": g.dim(),
            "index": est.claimed_index,
            "max_rank": est.certified_max_rank,
            "samples": est.samples,
            "b": zalgebra_core::exact::fmt_rational(&est.b_value),
        }),
    );
    Ok(rep)
}

fn emit(rep: &CaseReport, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", rep.to_json()),
        Format::Markdown => println!("{}", rep.to_markdown()),
    }
    match rep.first_failure() {
        None => ExitCode::SUCCESS,
        Some(name) => {
            eprintln!("assertion failed: {name}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match cli.command {
        Command::Case {
            name,
            kind,
            n,
            t1,
            seed,
            trials,
            dmax,
            format,
        } => {
            let run = || -> Result<CaseReport, String> {
                if !CASE_NAMES.contains(&name.as_str()) {
                    return Err(format!("unknown case {name:?}; expected one of {}", CASE_NAMES.join(", ")));
                }
                let params = CaseParams {
                    kind,
                    n,
                    t1: t1.as_deref().map(parse_rows).transpose()?,
                    seed,
                    trials,
                    dmax,
                    ..CaseParams::default()
                };
                run_case(&name, &params).map_err(|e| e.to_string())
            };
            (run(), format)
        }
        Command::CheckGgs {
            algebra,
            h,
            basis,
            seed,
            trials,
            format,
        } => (check_ggs(&algebra, &h, basis, seed, trials), format),
        Command::WeylW0 {
            root_type,
            arrows,
            dmax,
            seed,
            format,
        } => (weyl_w0(&root_type, &arrows, dmax, seed), format),
        Command::Index {
            algebra,
            seed,
            trials,
            format,
        } => (index(&algebra, seed, trials), format),
    };
    match result {
        Ok(rep) => emit(&rep, format),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
