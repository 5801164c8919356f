//! Command-line front end. Every command prints JSON records, one per line,
//! on standard output; errors go to standard error as a JSON record.
//!
//! Exit codes: 0 success or equal, 1 definite negative, 2 input or type
//! error, 3 budget exhausted.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decide::{arrow_exists_lc, arrow_exists_lcmu, equal, scopes, Verdict};
use crate::error::Error;
use crate::relgraph::Relation;
use crate::rewrite::{enumerate_arrows, equivalent_bounded, normalize, sweep, Budget, Outcome};
use crate::semantics::graph_membership_report;
use crate::syntax::{parse_arrow, parse_object};
use crate::terms::Theory;

#[derive(Debug, Parser)]
#[command(
    name = "coherence",
    version,
    about = "Decide equality of canonical arrows by their graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    Lc,
    Lcmu,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the graph of a term and its membership in the target category.
    Graph {
        #[arg(long)]
        theory: Theory,
        /// Print a two-row diagram in DOT format instead.
        #[arg(long)]
        dot: bool,
        term: String,
    },
    /// Decide whether two terms are equal.
    Eq {
        #[arg(long)]
        theory: Theory,
        f: String,
        g: String,
    },
    /// Decide whether an arrow A -> B exists over a family of endofunctors.
    Exists {
        #[arg(long)]
        lemma: Lemma,
        src: String,
        tgt: String,
    },
    /// Split a relation into a coordinated triple.
    Decompose {
        /// A record {"src": n, "tgt": m, "pairs": [[i, j], ...]}.
        #[arg(long)]
        rel: String,
    },
    /// Search for a chain of equations between two terms.
    Oracle {
        #[arg(long)]
        theory: Theory,
        /// Maximum number of visited terms.
        #[arg(long, default_value_t = Budget::default().max_visited)]
        budget: usize,
        f: String,
        g: String,
    },
    /// Print the stage factorization of a term.
    Normalize {
        #[arg(long)]
        theory: Theory,
        term: String,
    },
    /// Check every equation of a theory on ground instances.
    AxiomsCheck {
        #[arg(long)]
        theory: Theory,
        #[arg(long, default_value_t = 3)]
        max_measure: usize,
        /// Instances per equation.
        #[arg(long, default_value_t = 60)]
        cap: usize,
    },
    /// List every term between two objects up to a size.
    Enumerate {
        #[arg(long)]
        theory: Theory,
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
        #[arg(long)]
        max_size: usize,
    },
}

/// The result of running a command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn records(code: i32, records: &[Value]) -> Report {
        let mut stdout = String::new();
        for r in records {
            writeln!(stdout, "{r}").expect("writing to a string");
        }
        Report {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn text(code: i32, stdout: String) -> Report {
        Report {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Report {
        let code = match e {
            Error::NormalizationBudgetExceeded(_) => 3,
            _ => 2,
        };
        let record = json!({ "error": error_kind(e), "message": e.to_string() });
        Report {
            code,
            stdout: String::new(),
            stderr: format!("{record}\n"),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ForeignFunctor(..) => "foreign_functor",
        Error::CompositionMismatch { .. } => "composition_mismatch",
        Error::IllegalConstant(..) => "illegal_constant",
        Error::NotExpandable(..) => "not_expandable",
        Error::MalformedConstant { .. } => "malformed_constant",
        Error::ArityMismatch { .. } => "arity_mismatch",
        Error::PairOutOfRange(..) => "pair_out_of_range",
        Error::MalformedTriple(_) => "malformed_triple",
        Error::NotDiversified(_) => "not_diversified",
        Error::TypeMismatch(_) => "type_mismatch",
        Error::NormalizationBudgetExceeded(_) => "budget_exceeded",
        Error::NormalizationStuck(_) => "normalization_stuck",
        Error::Syntax { .. } => "syntax",
        Error::UnknownConstant(_) => "unknown_constant",
    }
}

/// Two-row diagram: source occurrences on top, target occurrences below.
pub fn dot(rel: &Relation) -> String {
    let mut s = String::from("digraph G {\n  rankdir=TB;\n");
    let row = |s: &mut String, prefix: &str, n: usize| {
        s.push_str("  { rank=same;");
        for i in 0..n {
            write!(s, " {prefix}{i} [label=\"{i}\"];").expect("writing to a string");
        }
        s.push_str(" }\n");
    };
    row(&mut s, "s", rel.src());
    row(&mut s, "t", rel.tgt());
    for (i, j) in rel.pairs() {
        writeln!(s, "  s{i} -> t{j} [arrowhead=none];").expect("writing to a string");
    }
    s.push_str("}\n");
    s
}

fn relation_record(rel: &Relation) -> Value {
    serde_json::to_value(rel).expect("relations serialize")
}

fn try_run(cmd: &Command) -> Result<Report, Error> {
    Ok(match cmd {
        Command::Graph {
            theory,
            dot: as_dot,
            term,
        } => {
            let f = parse_arrow(term, *theory)?;
            let (rel, member) = graph_membership_report(&f, *theory)?;
            if *as_dot {
                Report::text(0, dot(&rel))
            } else {
                let mut rec = relation_record(&rel);
                rec["category"] = json!(theory.target_category().to_string());
                rec["member"] = json!(member);
                Report::records(0, &[rec])
            }
        }
        Command::Eq { theory, f, g } => {
            let v = equal(
                &parse_arrow(f, *theory)?,
                &parse_arrow(g, *theory)?,
                *theory,
            )?;
            let code = match v {
                Verdict::Equal => 0,
                Verdict::NotEqual { .. } => 1,
                Verdict::TypeMismatch { .. } => 2,
            };
            let mut rec = serde_json::to_value(&v).expect("verdicts serialize");
            rec["message"] = json!(v.to_string());
            Report::records(code, &[rec])
        }
        Command::Exists { lemma, src, tgt } => {
            let (a, b) = (parse_object(src)?, parse_object(tgt)?);
            let (name, exists) = match lemma {
                Lemma::Lc => ("lc", arrow_exists_lc(&a, &b)?),
                Lemma::Lcmu => ("lcmu", arrow_exists_lcmu(&a, &b)?),
            };
            let rec = json!({
                "lemma": name,
                "src": a.to_string(),
                "tgt": b.to_string(),
                "exists": exists,
                "scopes": { "src": scopes(&a), "tgt": scopes(&b) },
            });
            Report::records(if exists { 0 } else { 1 }, &[rec])
        }
        Command::Decompose { rel } => {
            let r: Relation = serde_json::from_str(rel).map_err(|e| Error::Syntax {
                line: e.line(),
                column: e.column(),
                message: format!("relation record: {e}"),
            })?;
            let t = r.decompose();
            let ok = t.is_coordinated()? && t.recompose()? == r;
            let mut rec = serde_json::to_value(&t).expect("triples serialize");
            rec["check"] = json!(if ok { "ok" } else { "failed" });
            Report::records(if ok { 0 } else { 1 }, &[rec])
        }
        Command::Oracle {
            theory,
            budget,
            f,
            g,
        } => {
            let (f, g) = (parse_arrow(f, *theory)?, parse_arrow(g, *theory)?);
            let budget = Budget {
                max_visited: *budget,
                ..Budget::default()
            };
            let out = equivalent_bounded(&f, &g, *theory, budget)?;
            let code = match out {
                Outcome::Equivalent { .. } => 0,
                Outcome::Unknown { .. } => 3,
            };
            Report::records(
                code,
                &[serde_json::to_value(&out).expect("outcomes serialize")],
            )
        }
        Command::Normalize { theory, term } => {
            let n = normalize(&parse_arrow(term, *theory)?, *theory)?;
            Report::records(
                0,
                &[serde_json::to_value(&n).expect("factorizations serialize")],
            )
        }
        Command::AxiomsCheck {
            theory,
            max_measure,
            cap,
        } => {
            let checks = sweep(*theory, *max_measure, *cap);
            let all = checks.iter().all(|c| c.passed());
            let recs: Vec<Value> = checks
                .iter()
                .map(|c| {
                    let mut v = serde_json::to_value(c).expect("checks serialize");
                    v["passed"] = json!(c.passed());
                    v
                })
                .collect();
            Report::records(if all { 0 } else { 1 }, &recs)
        }
        Command::Enumerate {
            theory,
            src,
            tgt,
            max_size,
        } => {
            let (a, b) = (parse_object(src)?, parse_object(tgt)?);
            let terms: Vec<String> = enumerate_arrows(&a, &b, *theory, *max_size)
                .iter()
                .map(|f| f.to_string())
                .collect();
            let rec = json!({ "src": a.to_string(), "tgt": b.to_string(), "count": terms.len(), "terms": terms });
            Report::records(0, &[rec])
        }
    })
}

pub fn run(cmd: &Command) -> Report {
    try_run(cmd).unwrap_or_else(|e| Report::error(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Report {
        let mut full = vec!["coherence"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).unwrap().command)
    }

    #[test]
    fn eq_exit_codes() {
        let r = go(&[
            "eq",
            "--theory",
            "LS",
            "mu{p*q} . T[psiL{p,q}] . psiR{T(p),q}",
            "mu{p*q} . T[psiR{p,q}] . psiL{p,T(q)}",
        ]);
        assert_eq!(r.code, 0);
        assert!(r.stdout.contains("\"equal\""));
        let r = go(&["eq", "--theory", "CS", "T[bang{p}]", "eta{I} . bang{T(p)}"]);
        assert_eq!(r.code, 1);
        assert!(r.stdout.contains("\"pair\":[0,0]"), "{}", r.stdout);
        let r = go(&["eq", "--theory", "LLS", "id{p}", "id{q}"]);
        assert_eq!(r.code, 2);
    }

    #[test]
    fn decompose_example() {
        let r = go(&[
            "decompose",
            "--rel",
            r#"{"src":2,"tgt":2,"pairs":[[0,0],[0,1],[1,0]]}"#,
        ]);
        assert_eq!(r.code, 0);
        let v: Value = serde_json::from_str(r.stdout.trim()).unwrap();
        assert_eq!(v["nu"], json!([0, 0, 1]));
        assert_eq!(v["mu"], json!([0, 0, 1]));
        assert_eq!(v["beta"], json!([0, 2, 1]));
        assert_eq!(v["check"], "ok");
        let r = go(&["decompose", "--rel", r#"{"src":1,"tgt":1,"pairs":[[0,3]]}"#]);
        assert_eq!(r.code, 2);
        assert!(r.stderr.contains("error"));
    }

    #[test]
    fn errors_are_records_on_stderr() {
        let r = go(&["graph", "--theory", "LLS", "psi{p,}"]);
        assert_eq!(r.code, 2);
        assert!(r.stdout.is_empty());
        let v: Value = serde_json::from_str(r.stderr.trim()).unwrap();
        assert_eq!(v["error"], "syntax");
    }

    #[test]
    fn graph_and_dot() {
        let r = go(&["graph", "--theory", "LLS", "mu{p}"]);
        assert_eq!(r.stdout, "{\"category\":\"Delta\",\"member\":true,\"pairs\":[[0,0],[1,0]],\"src\":2,\"tgt\":1}\n");
        let r = go(&["graph", "--theory", "CS", "--dot", "diag{p}"]);
        assert!(r.stdout.starts_with("digraph"));
        assert_eq!(r.stdout.matches("->").count(), 2);
    }

    #[test]
    fn oracle_and_normalize() {
        let r = go(&[
            "oracle",
            "--theory",
            "LLS",
            "--budget",
            "1000",
            "mu{p} . T[eta{p}]",
            "id{T(p)}",
        ]);
        assert_eq!(r.code, 0, "{}", r.stdout);
        let r = go(&[
            "oracle",
            "--theory",
            "CS",
            "--budget",
            "5",
            "T[bang{p}]",
            "eta{I} . bang{T(p)}",
        ]);
        assert_eq!(r.code, 3);
        let r = go(&[
            "normalize",
            "--theory",
            "LLS",
            "psiL{p,q} . (eta{p} * id{q})",
        ]);
        assert_eq!(r.code, 0);
        assert!(r.stdout.contains("eta{p * q}"));
    }

    #[test]
    fn exists_enumerate_and_axioms() {
        let r = go(&["exists", "--lemma", "lc", "E1(p) * q", "E1(p * q)"]);
        assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
        let r = go(&["exists", "--lemma", "lc", "E1(p * q)", "E1(p) * q"]);
        assert_eq!(r.code, 1);
        let r = go(&[
            "enumerate",
            "--theory",
            "LLS",
            "--src",
            "T(p)",
            "--tgt",
            "T(p)",
            "--max-size",
            "3",
        ]);
        assert!(r.stdout.contains("mu{p} . eta{T(p)}"));
        let r = go(&[
            "axioms-check",
            "--theory",
            "Lc",
            "--max-measure",
            "2",
            "--cap",
            "10",
        ]);
        assert_eq!(r.code, 0);
        assert!(r.stdout.lines().count() > 5);
    }

    #[test]
    fn output_is_stable() {
        let args = ["normalize", "--theory", "MSco", "delta{p*q} . psi{p,q}"];
        assert_eq!(go(&args), go(&args));
    }
}
