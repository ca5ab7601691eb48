//! The `taftcleft` command line.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cleft::{CleftAlgebra, CleftData};
use crate::error::{Error, Result};
use crate::identities::{build_pa, build_qu, enumerate_comodule_maps, evaluate, ZPolynomial};
use crate::iso::{iso_classes, iso_decider, IsoContext, ISO_METHODS};
use crate::ring::{
    check_hypotheses, cyclotomic_polynomial, cyclotomic_roots, parse_ring_spec, ring_structure,
    Elem, FiniteRing,
};
use crate::taft::{TaftAlgebra, TaftParams};
use crate::verify::{checked_taft, verify_theorem, VerifyOptions, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(
    name = "taftcleft",
    version,
    about = "Taft algebras, cleft extensions and their polynomial identities over finite rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Ring, e.g. `Z/5`, `GF(2^2)`, `F_5[t]/(t^2)`, `Z/5 x Z/5`
    pub ring: String,
    /// Order N of the grouplike g
    #[arg(long = "N")]
    pub n: usize,
    /// Root q of the N-th cyclotomic polynomial; defaults to the first one
    #[arg(long)]
    pub q: Option<String>,
    /// Also write the report as JSON
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Unit exponent, nilpotency index, idempotents, roots of Phi_N and hypotheses
    RingInfo {
        #[command(flatten)]
        common: Common,
    },
    /// Isomorphism classes of the cleft extensions with b = 0
    Classify {
        #[command(flatten)]
        common: Common,
        /// Isomorphism decider
        #[arg(long, default_value = "criterion", value_parser = clap::builder::PossibleValuesParser::new(ISO_METHODS))]
        iso_method: String,
    },
    /// Check whether a polynomial is an identity of one cleft extension
    IdentityCheck {
        #[command(flatten)]
        common: Common,
        /// Unit u with v_g^N = u
        #[arg(long)]
        u: String,
        /// v_x^N = a
        #[arg(long)]
        a: String,
        /// v_x v_g = q v_g v_x + b v_g^2
        #[arg(long, default_value = "0")]
        b: String,
        /// Check P_a built from the datum's a
        #[arg(long, group = "which")]
        pa: bool,
        /// Check Q_u built from the datum's u
        #[arg(long, group = "which")]
        qu: bool,
        /// Polynomial such as `(X*G - 4*G*X)^2 - 4*G^2*X^2`
        #[arg(long, group = "which")]
        poly: Option<String>,
        /// File holding a polynomial
        #[arg(long, group = "which")]
        file: Option<PathBuf>,
    },
    /// Compare identity fingerprints with isomorphism over every pair of data
    VerifyTheorem {
        #[command(flatten)]
        common: Common,
        /// Degree bound; defaults to max(2N, alpha + beta)
        #[arg(long)]
        degree: Option<usize>,
        /// Isomorphism decider
        #[arg(long, default_value = "criterion", value_parser = clap::builder::PossibleValuesParser::new(ISO_METHODS))]
        iso_method: String,
        /// Compute fingerprints for every datum instead of only for pairs
        /// not separated by P_a or Q_u
        #[arg(long)]
        no_fast_path: bool,
    },
}

/// Text for stdout, a JSON document and the exit code.
pub struct Outcome {
    pub text: Vec<String>,
    pub json: Value,
    pub code: i32,
}

fn load_ring(spec: &str) -> Result<Arc<FiniteRing>> {
    Ok(Arc::new(parse_ring_spec(spec)?))
}

fn choose_q(ring: &FiniteRing, n: usize, q: Option<&str>) -> Result<Elem> {
    if n < 2 {
        return Err(Error::BadOrder { n, min: 2 });
    }
    let roots = cyclotomic_roots(ring, n);
    match q {
        Some(s) => {
            let q = ring.parse_elem(s)?;
            if roots.contains(&q) {
                Ok(q)
            } else {
                Err(Error::NotCyclotomicRoot(ring.format(q)))
            }
        }
        None => roots.first().copied().ok_or_else(|| {
            Error::NotCyclotomicRoot(format!("no root of Phi_{n} in {}", ring.name()))
        }),
    }
}

fn with_schema(command: &str, mut body: Value) -> Value {
    let obj = body.as_object_mut().expect("object");
    obj.insert("schema".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!(command));
    body
}

pub fn cmd_ring_info(c: &Common) -> Result<Outcome> {
    let ring = load_ring(&c.ring)?;
    if c.n < 2 {
        return Err(Error::BadOrder { n: c.n, min: 2 });
    }
    let s = ring_structure(&ring);
    let phi = cyclotomic_polynomial(c.n);
    let roots = cyclotomic_roots(&ring, c.n);
    let chosen: Vec<Elem> = match &c.q {
        Some(q) => vec![choose_q(&ring, c.n, Some(q))?],
        None => roots.clone(),
    };
    let reports = chosen
        .iter()
        .map(|&q| check_hypotheses(&ring, c.n, q).map(|h| (q, h)))
        .collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().any(|(_, h)| h.ok);
    let fmt_list = |v: &[Elem]| {
        v.iter()
            .map(|&x| ring.format(x))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut text = vec![
        format!(
            "ring {}: {} elements, characteristic {}",
            ring.name(),
            ring.size(),
            s.characteristic
        ),
        format!(
            "units {}, alpha = {}, beta = {}",
            ring.units().len(),
            s.alpha,
            s.beta
        ),
        format!("primitive idempotents {{{}}}", fmt_list(&s.idempotents)),
        format!("Phi_{} coefficients {:?}", c.n, phi),
        format!("q candidates {{{}}}", fmt_list(&roots)),
    ];
    for (q, h) in &reports {
        text.push(format!(
            "q = {}: N unit {}, gcd(N, char) = {}, order(q) = {}, 1 - q unit {}, N | alpha {} => {}",
            ring.format(*q),
            h.n_is_unit,
            h.gcd_n_char,
            h.order_of_q,
            h.one_minus_q_is_unit,
            h.alpha % c.n as u64 == 0,
            if h.ok { "ok" } else { "fail" }
        ));
    }
    text.push(format!("hypotheses {}", if ok { "ok" } else { "fail" }));
    let json = with_schema(
        "ring-info",
        json!({
            "ring": ring.name(),
            "N": c.n,
            "size": ring.size(),
            "characteristic": s.characteristic,
            "units": ring.units().len(),
            "alpha": s.alpha,
            "beta": s.beta,
            "idempotents": s.idempotents.iter().map(|&e| ring.to_json(e)).collect::<Vec<_>>(),
            "cyclotomic_polynomial": phi,
            "q_candidates": roots.iter().map(|&e| ring.to_json(e)).collect::<Vec<_>>(),
            "hypotheses": reports.iter().map(|(q, h)| json!({"q": ring.to_json(*q), "report": h})).collect::<Vec<_>>(),
            "hypotheses_ok": ok,
        }),
    );
    Ok(Outcome {
        text,
        json,
        code: 0,
    })
}

pub fn cmd_classify(c: &Common, iso_method: &str) -> Result<Outcome> {
    let ring = load_ring(&c.ring)?;
    let q = choose_q(&ring, c.n, c.q.as_deref())?;
    let (taft, _) = checked_taft(ring.clone(), c.n, q)?;
    let ctx = IsoContext::new(taft);
    let decider = iso_decider(iso_method)?;
    let classes = iso_classes(&ctx, decider.as_ref())?;
    let mut text = vec![format!(
        "{} N={} q={}: {} classes of cleft data (u, a) with b = 0",
        ring.name(),
        c.n,
        ring.format(q),
        classes.len()
    )];
    for (i, class) in classes.iter().enumerate() {
        let members: Vec<String> = class
            .iter()
            .map(|d| format!("({}, {})", ring.format(d.u), ring.format(d.a)))
            .collect();
        text.push(format!("class {}: {}", i + 1, members.join(" ")));
    }
    let json = with_schema(
        "classify",
        json!({
            "ring": ring.name(),
            "N": c.n,
            "q": ring.to_json(q),
            "iso_method": decider.name(),
            "class_count": classes.len(),
            "classes": classes
                .iter()
                .map(|cl| cl.iter().map(|d| json!({"u": ring.to_json(d.u), "a": ring.to_json(d.a)})).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
    );
    Ok(Outcome {
        text,
        json,
        code: 0,
    })
}

pub enum Which {
    Pa,
    Qu,
    Poly(String),
}

pub fn cmd_identity_check(c: &Common, u: &str, a: &str, b: &str, which: Which) -> Result<Outcome> {
    let ring = load_ring(&c.ring)?;
    let q = choose_q(&ring, c.n, c.q.as_deref())?;
    let taft = Arc::new(TaftAlgebra::new(TaftParams::new(ring.clone(), c.n, q)?));
    let d = CleftData::new(
        ring.parse_elem(u)?,
        ring.parse_elem(a)?,
        ring.parse_elem(b)?,
    );
    let alg = CleftAlgebra::new(taft, d)?;
    let (label, p) = match which {
        Which::Pa => ("P_a".to_string(), build_pa(&ring, c.n, q, d.a)),
        Which::Qu => {
            let s = ring_structure(&ring);
            (
                "Q_u".to_string(),
                build_qu(&ring, c.n, d.u, s.alpha, s.beta)?,
            )
        }
        Which::Poly(src) => (src.trim().to_string(), ZPolynomial::parse(&ring, &src)?),
    };
    let width = p
        .symbols()
        .iter()
        .map(|s| s.copy as usize)
        .max()
        .unwrap_or(1);
    let maps = enumerate_comodule_maps(&alg, width)?;
    let mut witness = None;
    for f in &maps {
        let value = evaluate(&alg, &p, f)?;
        if !value.is_zero(&ring) {
            witness = Some((f.clone(), value));
            break;
        }
    }
    let holds = witness.is_none();
    let mut text = vec![
        format!(
            "B = B_{} over {} (N={}, q={})",
            d.format(&ring),
            ring.name(),
            c.n,
            ring.format(q)
        ),
        format!("P = {}", p.format(&ring)),
    ];
    match &witness {
        None => text.push(format!(
            "identity holds: all {} comodule maps vanish",
            maps.len()
        )),
        Some((f, v)) => text.push(format!(
            "not an identity: map {} gives {}",
            f.format(&ring),
            alg.render(v)
        )),
    }
    let json = with_schema(
        "identity-check",
        json!({
            "ring": ring.name(),
            "N": c.n,
            "q": ring.to_json(q),
            "data": d.to_json(&ring),
            "polynomial": label,
            "expanded": p.format(&ring),
            "maps_checked": if holds { maps.len() } else { maps.iter().position(|f| Some(f) == witness.as_ref().map(|w| &w.0)).map_or(0, |i| i + 1) },
            "maps_total": maps.len(),
            "identity": holds,
            "witness": witness.as_ref().map(|(f, v)| json!({"map": f.to_json(&ring), "value": v.to_json(&ring)})),
        }),
    );
    Ok(Outcome {
        text,
        json,
        code: if holds { 0 } else { 1 },
    })
}

pub fn cmd_verify_theorem(
    c: &Common,
    degree: Option<usize>,
    iso_method: &str,
    fast_path: bool,
) -> Result<Outcome> {
    let ring = load_ring(&c.ring)?;
    let q = choose_q(&ring, c.n, c.q.as_deref())?;
    let opts = VerifyOptions {
        degree,
        iso_method: iso_method.to_string(),
        fast_path,
    };
    let report = verify_theorem(ring, c.n, q, &opts)?;
    let json = with_schema("verify-theorem", report.to_json());
    Ok(Outcome {
        text: report.summary_lines(),
        json,
        code: if report.ok() { 0 } else { 1 },
    })
}

pub fn execute(cli: &Cli) -> Result<(Outcome, Option<PathBuf>)> {
    match &cli.command {
        Command::RingInfo { common } => Ok((cmd_ring_info(common)?, common.json.clone())),
        Command::Classify { common, iso_method } => {
            Ok((cmd_classify(common, iso_method)?, common.json.clone()))
        }
        Command::IdentityCheck {
            common,
            u,
            a,
            b,
            pa,
            qu,
            poly,
            file,
        } => {
            let which = if *pa {
                Which::Pa
            } else if *qu {
                Which::Qu
            } else if let Some(p) = poly {
                Which::Poly(p.clone())
            } else if let Some(path) = file {
                let src =
                    std::fs::read_to_string(path).map_err(|e| Error::MalformedPolynomial {
                        input: path.display().to_string(),
                        reason: e.to_string(),
                    })?;
                Which::Poly(src)
            } else {
                Which::Pa
            };
            Ok((
                cmd_identity_check(common, u, a, b, which)?,
                common.json.clone(),
            ))
        }
        Command::VerifyTheorem {
            common,
            degree,
            iso_method,
            no_fast_path,
        } => Ok((
            cmd_verify_theorem(common, *degree, iso_method, !no_fast_path)?,
            common.json.clone(),
        )),
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 for a negative result (counterexamples, failed identity), 2 on error.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok((outcome, json_path)) => {
            let mut out = std::io::stdout().lock();
            for line in &outcome.text {
                if writeln!(out, "{line}").is_err() {
                    break;
                }
            }
            if let Some(path) = json_path {
                let body =
                    serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n";
                if let Err(e) = std::fs::write(&path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
