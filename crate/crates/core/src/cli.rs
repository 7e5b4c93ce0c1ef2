//! Command implementations behind the binary: datum loading, the
//! individual computations, certificate rendering, and the verification
//! matrix. Output is byte-stable for fixed input; `machine` mode keeps a
//! line-oriented format for golden tests.

use std::collections::BTreeMap;
use std::path::Path;

use crate::algebra::{Algebra, Specialization};
use crate::batch::{self, ExecMode};
use crate::coeff_ring::phi_maps;
use crate::poly_rep::{self, display_in_basis};
use crate::root_datum::{Coweight, RootDatum};
use crate::{data, spherical_kl, Error, Result};

/// A parsed invocation: one command plus the datum and formatting options.
#[derive(Debug, Clone)]
pub struct CommandRequest {
    pub command: Command,
    pub datum: String,
    pub specialize: Option<String>,
    pub machine: bool,
    pub strict: bool,
}

#[derive(Debug, Clone)]
pub enum Command {
    Validate,
    Length { element: String },
    Word { element: String },
    Leq { lhs: String, rhs: String },
    Schur { lambda: String },
    Hl { lambda: String },
    Kl { lambda: String },
    Tensor { lambda: String, mu: String },
    Wtmult { lambda: String, mu: String },
    Verify { max_length: u64, sequential: bool },
}

/// Rendered output plus the aggregated check status.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    /// All requested checks passed (certificates valid, verify all green).
    pub checks_ok: bool,
    /// Whether the command performed theorem-level checks at all.
    pub has_checks: bool,
}

impl Report {
    fn plain(text: String) -> Report {
        Report { text, checks_ok: true, has_checks: false }
    }
}

/// Parse a comma-separated coweight of the given rank.
pub fn parse_coweight(text: &str, rank: usize) -> Result<Coweight> {
    let parts: Vec<&str> = text.split(',').map(|s| s.trim()).collect();
    if parts.len() != rank {
        return Err(Error::Usage(format!(
            "coweight {:?} has {} entries, datum rank is {}",
            text,
            parts.len(),
            rank
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<i64>()
                .map_err(|_| Error::Usage(format!("bad integer {:?} in coweight", p)))
        })
        .collect()
}

/// Parse `v=2,v0=-1` style specialization maps.
pub fn parse_specialization(text: &str) -> Result<BTreeMap<String, i64>> {
    let mut map = BTreeMap::new();
    for part in text.split(',') {
        let (sym, val) = part
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("bad specialization entry {:?}", part)))?;
        let n = val
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Usage(format!("bad exponent {:?}", val)))?;
        map.insert(sym.trim().to_string(), n);
    }
    Ok(map)
}

/// Load a datum from a path, falling back to the bundled data by name.
pub fn load_datum(spec: &str) -> Result<RootDatum> {
    let path = Path::new(spec);
    if path.exists() {
        return RootDatum::parse_file(path);
    }
    match spec {
        "gl2" => Ok(data::gl2()),
        "gl3" => Ok(data::gl3()),
        "sp2" => Ok(data::sp2()),
        "sp4" => Ok(data::sp4()),
        "g2" => Ok(data::g2()),
        _ => Err(Error::Usage(format!(
            "no datum file {:?} (bundled names: gl2, gl3, sp2, sp4, g2)",
            spec
        ))),
    }
}

fn build_algebra(req: &CommandRequest) -> Result<Algebra> {
    let datum = load_datum(&req.datum)?;
    let spec = match &req.specialize {
        None => Specialization::Generic,
        Some(text) => Specialization::Single(parse_specialization(text)?),
    };
    Algebra::new(datum, spec)
}

fn coweight_text(tau: &[i64]) -> String {
    format!("[{}]", tau.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Execute one request.
pub fn run(req: &CommandRequest) -> Result<Report> {
    let alg = build_algebra(req)?;
    match &req.command {
        Command::Validate => cmd_validate(&alg, req),
        Command::Length { element } => {
            let w = alg.weyl.parse_element(element)?;
            Ok(Report::plain(format!("length {}", alg.weyl.length(&w))))
        }
        Command::Word { element } => {
            let w = alg.weyl.parse_element(element)?;
            let rw = alg.weyl.reduced_word(&w);
            let letters: Vec<&str> =
                rw.letters.iter().map(|&i| alg.weyl.nodes[i].name.as_str()).collect();
            Ok(Report::plain(format!(
                "residue {}\nletters {}",
                alg.weyl.element_text(&rw.residue),
                if letters.is_empty() { "-".to_string() } else { letters.join(" ") }
            )))
        }
        Command::Leq { lhs, rhs } => {
            let u = alg.weyl.parse_element(lhs)?;
            let w = alg.weyl.parse_element(rhs)?;
            Ok(Report::plain(format!("leq {}", alg.weyl.bruhat_leq(&u, &w))))
        }
        Command::Schur { lambda } => {
            let lam = parse_coweight(lambda, alg.rank())?;
            let s = poly_rep::schur(&alg, &lam)?;
            Ok(Report::plain(format!(
                "s{} = {}",
                coweight_text(&lam),
                s.display(&alg.params.symbols)
            )))
        }
        Command::Hl { lambda } => {
            let lam = parse_coweight(lambda, alg.rank())?;
            let p = poly_rep::hall_littlewood(&alg, &lam)?;
            let expansion = poly_rep::expand_in_schur(&alg, &p)?;
            let body = display_in_basis(expansion.iter().rev(), &alg.params.symbols, "s");
            let mut text = format!("P{} = {}", coweight_text(&lam), body);
            if !req.machine {
                text.push_str(&format!(
                    "\nmonomials: {}",
                    p.display(&alg.params.symbols)
                ));
            }
            Ok(Report::plain(text))
        }
        Command::Kl { lambda } => {
            let lam = parse_coweight(lambda, alg.rank())?;
            let cert = spherical_kl::kl_spherical(&alg, &lam)?;
            let text = spherical_kl::render_certificate(&alg, &cert, req.machine);
            Ok(Report {
                text: text.trim_end().to_string(),
                checks_ok: cert.valid(),
                has_checks: true,
            })
        }
        Command::Tensor { lambda, mu } => {
            let lam = parse_coweight(lambda, alg.rank())?;
            let m = parse_coweight(mu, alg.rank())?;
            let t = spherical_kl::tensor_multiplicities(&alg, &lam, &m)?;
            let body = t
                .iter()
                .rev()
                .map(|(nu, c)| format!("{}:{}", coweight_text(nu), c))
                .collect::<Vec<_>>()
                .join("  ");
            Ok(Report::plain(body))
        }
        Command::Wtmult { lambda, mu } => {
            let lam = parse_coweight(lambda, alg.rank())?;
            let m = parse_coweight(mu, alg.rank())?;
            let w = spherical_kl::weight_multiplicity(&alg, &lam, &m)?;
            Ok(Report::plain(format!("{}", w)))
        }
        Command::Verify { max_length, sequential } => {
            let mode = if *sequential { ExecMode::Sequential } else { ExecMode::Parallel };
            let outcomes = batch::verify_suite(&alg, *max_length, mode);
            let mut text = String::new();
            let mut all_ok = true;
            for o in &outcomes {
                all_ok &= o.pass;
                text.push_str(&format!(
                    "CHECK {:<32} {}  ({})\n",
                    o.name,
                    if o.pass { "PASS" } else { "FAIL" },
                    o.detail
                ));
            }
            text.push_str(&format!(
                "verify: {}/{} checks passed",
                outcomes.iter().filter(|o| o.pass).count(),
                outcomes.len()
            ));
            Ok(Report { text, checks_ok: all_ok, has_checks: true })
        }
    }
}

fn cmd_validate(alg: &Algebra, req: &CommandRequest) -> Result<Report> {
    let sys = &alg.weyl.sys;
    let mut text = String::new();
    text.push_str(&format!("rank {}\n", sys.rank));
    text.push_str(&format!("simple-roots {}\n", sys.simples));
    text.push_str(&format!("positive-roots {}\n", sys.positive.len()));
    let types: Vec<&str> =
        sys.component_types.iter().map(|t| t.name.as_str()).collect();
    text.push_str(&format!("components {}\n", types.join(",")));
    text.push_str(&format!("finite-weyl-order {}\n", alg.weyl.wf.size()));

    let n_classes = alg.class_labels.len();
    for c in 0..n_classes {
        let members: Vec<&str> = alg
            .weyl
            .nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| alg.node_class[*i] == c)
            .map(|(_, n)| n.name.as_str())
            .collect();
        text.push_str(&format!(
            "class {} = {{{}}} parameter {}\n",
            c,
            members.join(","),
            alg.class_labels[c]
        ));
    }
    let special: Vec<String> =
        alg.special_roots().iter().map(|&i| format!("s{}", i + 1)).collect();
    text.push_str(&format!(
        "special-roots {}\n",
        if special.is_empty() { "-".to_string() } else { special.join(",") }
    ));
    let cone = alg.lpp_cone();
    let rep = phi_maps(&cone);
    text.push_str(&format!(
        "positive-part admissible={} injective={:?} surjective={:?}\n",
        cone.generators_admissible(),
        rep.injective,
        rep.surjective
    ));
    if !req.machine {
        text.push_str(&format!("note: {}\n", rep.note));
    }
    Ok(Report::plain(text.trim_end().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(command: Command, datum: &str) -> CommandRequest {
        CommandRequest {
            command,
            datum: datum.to_string(),
            specialize: None,
            machine: true,
            strict: false,
        }
    }

    #[test]
    fn parse_coweight_examples() {
        assert_eq!(parse_coweight("0,0", 2).unwrap(), vec![0, 0]);
        assert_eq!(parse_coweight("2,0", 2).unwrap(), vec![2, 0]);
        assert_eq!(parse_coweight("-1", 1).unwrap(), vec![-1]);
        assert!(parse_coweight("1,2", 1).is_err());
        assert!(parse_coweight("x", 1).is_err());
    }

    #[test]
    fn hl_example_output() {
        let r = run(&req(Command::Hl { lambda: "2,0".into() }, "gl2")).unwrap();
        assert_eq!(r.text, "P[2,0] = s[2,0] - v^2 s[1,1]");
    }

    #[test]
    fn tensor_example_output() {
        let r = run(&req(
            Command::Tensor { lambda: "1,0".into(), mu: "1,0".into() },
            "gl2",
        ))
        .unwrap();
        assert_eq!(r.text, "[2,0]:1  [1,1]:1");
    }

    #[test]
    fn kl_trivial_certificate() {
        let r = run(&req(Command::Kl { lambda: "0,0".into() }, "gl2")).unwrap();
        assert!(r.checks_ok);
        assert!(r.text.contains("selfdual=true leading=true positivity=true valid=true"));
    }

    #[test]
    fn length_and_word_commands() {
        let r = run(&req(Command::Length { element: "t[1,0]*s1".into() }, "gl2")).unwrap();
        assert_eq!(r.text, "length 0");
        let r = run(&req(Command::Word { element: "s1*t[1,0]".into() }, "gl2")).unwrap();
        assert_eq!(r.text, "residue t[1,0]*s1\nletters a1 s1");
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let r = run(&req(Command::Schur { lambda: "1".into() }, "gl2"));
        assert!(matches!(r, Err(Error::Usage(_))));
    }
}
