use std::fmt::Write;
use std::path::Path;

use mpss_core::exec::Exec;
use mpss_core::fundamental::{abelianization, hurewicz_check_in, pi1_infty_abelianization, pi1_presentation};
use mpss_core::glueing::{
    degenerate_gamma_factor_check, is_r_cofibration, mayer_vietoris_check, pushout_mv_check, MvReport,
};
use mpss_core::graph::{DirectedGraph, Distance};
use mpss_core::linalg::AbelianGroupInvariants;
use mpss_core::mpss::{
    magnitude_homology, page_in, page_table, path_homology, reachability_homology, render_page_table,
};
use mpss_core::nerve::FilteredChainComplex;
use serde_json::{json, Value};

use crate::input::{parse_map, read_graph};
use crate::{Cli, Command, Failure};

pub struct Output {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub text: String,
    pub verified: bool,
}

fn describe(path: Option<&Path>, g: &DirectedGraph) -> Value {
    json!({
        "path": path.map_or("-".to_string(), |p| p.display().to_string()),
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
    })
}

fn group_json(g: &AbelianGroupInvariants) -> Value {
    serde_json::to_value(g).expect("plain data")
}

fn level(r: Option<usize>) -> String {
    r.map_or("∞".to_string(), |r| r.to_string())
}

fn group_output(command: &'static str, input: Value, g: &AbelianGroupInvariants) -> Output {
    Output { command, input, result: group_json(g), text: format!("{g}\n"), verified: true }
}

fn mv_output(command: &'static str, input: Value, rep: &MvReport) -> Output {
    let mut text = String::new();
    for (k, g) in &rep.groups {
        let _ = writeln!(text, "{k}: {g}");
    }
    let _ = writeln!(text, "separability: {:?}", rep.separability);
    if let Some(w) = &rep.witness {
        let _ = writeln!(text, "witness: {} / {}", w.upper.join(" "), w.lower.join(" "));
    }
    let _ = writeln!(text, "exact in the middle: {}", rep.exact_mid);
    let _ = writeln!(text, "surjective on the right: {}", rep.surjective_right);
    Output { command, input, result: rep.to_json(), text, verified: rep.ok() }
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let load = |p: Option<&Path>| read_graph(p, cli.format);
    Ok(match &cli.command {
        Command::Dist(a) => {
            let g = load(a.input.as_deref())?;
            let rows: Vec<Vec<Value>> = (0..g.num_vertices())
                .map(|x| {
                    (0..g.num_vertices())
                        .map(|y| match g.distance(x, y) {
                            Distance::Finite(d) => json!(d),
                            Distance::Infinite => Value::Null,
                        })
                        .collect()
                })
                .collect();
            let cell = |d: Distance| d.finite().map_or("∞".to_string(), |d| d.to_string());
            let width = g.names().iter().map(|n| n.chars().count()).max().unwrap_or(1).max(2);
            let mut text = format!("{:width$}", "");
            for n in g.names() {
                let _ = write!(text, " {n:>width$}");
            }
            text.push('\n');
            for x in 0..g.num_vertices() {
                let _ = write!(text, "{:width$}", g.name(x));
                for y in 0..g.num_vertices() {
                    let _ = write!(text, " {:>width$}", cell(g.distance(x, y)));
                }
                text.push('\n');
            }
            Output {
                command: "dist",
                input: describe(a.input.as_deref(), &g),
                result: json!({ "vertices": g.names(), "distances": rows }),
                text,
                verified: true,
            }
        }
        Command::Page { graph, r, p, q, caps } => {
            let g = load(graph.input.as_deref())?;
            if *r == 0 {
                return Err(Failure::Input("r must be at least 1".into()));
            }
            let n = (p + q).max(0) as usize;
            let c = FilteredChainComplex::build(
                &g,
                caps.nmax.unwrap_or(n + 1),
                caps.pmax.unwrap_or(p.max(&0).unsigned_abs() + *r as u64),
            );
            let page = page_in(&c, *r, *p, *q)?;
            let mut input = describe(graph.input.as_deref(), &g);
            input["r"] = json!(r);
            input["p"] = json!(p);
            input["q"] = json!(q);
            group_output("page", input, page.invariants())
        }
        Command::PageTable { graph, r, pmax, nmax, sequential } => {
            let g = load(graph.input.as_deref())?;
            if *r == 0 || *pmax < 0 || *nmax < 0 {
                return Err(Failure::Input("need r >= 1, pmax >= 0 and nmax >= 0".into()));
            }
            let c = FilteredChainComplex::build(&g, *nmax as usize + 1, (*pmax + *r as i64 - 1).max(0) as u64);
            let exec = if *sequential { Exec::Sequential } else { Exec::Parallel };
            let cells = page_table(&c, *r, 0..=*pmax, 0..=*nmax, exec)?;
            let mut input = describe(graph.input.as_deref(), &g);
            input["r"] = json!(r);
            input["pmax"] = json!(pmax);
            input["nmax"] = json!(nmax);
            Output {
                command: "page-table",
                input,
                result: serde_json::to_value(&cells).expect("plain data"),
                text: render_page_table(&cells),
                verified: true,
            }
        }
        Command::Magnitude { graph, p, n } => {
            let g = load(graph.input.as_deref())?;
            let mut input = describe(graph.input.as_deref(), &g);
            input["p"] = json!(p);
            input["n"] = json!(n);
            group_output("magnitude", input, &magnitude_homology(&g, *p, *n)?)
        }
        Command::PathHomology { graph, p } => {
            let g = load(graph.input.as_deref())?;
            let mut input = describe(graph.input.as_deref(), &g);
            input["p"] = json!(p);
            group_output("path-homology", input, &path_homology(&g, *p)?)
        }
        Command::Reachability { graph, n } => {
            let g = load(graph.input.as_deref())?;
            let mut input = describe(graph.input.as_deref(), &g);
            input["n"] = json!(n);
            group_output("reachability", input, &reachability_homology(&g, *n)?)
        }
        Command::Pi1 { graph, r, base } => {
            let g = load(graph.input.as_deref())?;
            let p = pi1_presentation(&g, base, *r)?;
            let ab = abelianization(&p);
            let mut input = describe(graph.input.as_deref(), &g);
            input["r"] = json!(r);
            input["base"] = json!(base);
            let mut result = p.to_json();
            result["abelianization"] = group_json(&ab);
            let mut text = format!("generators: {}\n", p.generators.join(" "));
            let _ = writeln!(text, "relators: {}", p.relators.len());
            let _ = writeln!(text, "abelianization: {ab}");
            Output { command: "pi1", input, result, text, verified: true }
        }
        Command::HurewiczCheck { graph, r, base, caps } => {
            let g = load(graph.input.as_deref())?;
            let c = FilteredChainComplex::build(&g, caps.nmax.unwrap_or(2), caps.pmax.unwrap_or(*r as u64));
            let rep = hurewicz_check_in(&c, &g, base, *r)?;
            let mut input = describe(graph.input.as_deref(), &g);
            input["r"] = json!(r);
            input["base"] = json!(base);
            let text = format!(
                "abelianization: {}\nE^{r}_(1,0): {}\ngroups agree: {}\nmap verified: {}\n",
                rep.abelianization,
                rep.page,
                rep.groups_agree,
                rep.loops_are_cycles && rep.relators_vanish && rep.surjective && rep.kernel_is_relator_lattice
            );
            let verified = rep.ok();
            Output {
                command: "hurewicz-check",
                input,
                result: serde_json::to_value(&rep).expect("plain data"),
                text,
                verified,
            }
        }
        Command::Pi1Infty { graph, base, max_r } => {
            let g = load(graph.input.as_deref())?;
            let rep = pi1_infty_abelianization(&g, base, *max_r)?;
            let mut input = describe(graph.input.as_deref(), &g);
            input["base"] = json!(base);
            let text = format!("RH_1: {}\nstabilized at r = {}\n", rep.rh1, rep.stabilized_at);
            Output {
                command: "pi1-infty",
                input,
                result: serde_json::to_value(&rep).expect("plain data"),
                text,
                verified: true,
            }
        }
        Command::CofibrationCheck { graph, r, subgraph } => {
            let r = &r.0;
            let x = load(graph.input.as_deref())?;
            let a = load(Some(subgraph))?;
            let mut input = describe(graph.input.as_deref(), &x);
            input["r"] = json!(level(*r));
            input["subgraph"] = describe(Some(subgraph), &a);
            match is_r_cofibration(&a, &x, *r)? {
                Ok(w) => {
                    let mut text = format!("A ⊆ X is an {}-cofibration\n", level(*r));
                    for (v, p) in &w.retraction {
                        let _ = writeln!(text, "π({v}) = {p}");
                    }
                    Output {
                        command: "cofibration-check",
                        input,
                        result: json!({ "cofibration": true, "witness": w }),
                        text,
                        verified: true,
                    }
                }
                Err(why) => Output {
                    command: "cofibration-check",
                    input,
                    text: format!("not an {}-cofibration: {why}\n", level(*r)),
                    result: json!({ "cofibration": false, "refutation": why }),
                    verified: false,
                },
            }
        }
        Command::GammaCheck { r, x, y, budget } => {
            let (gx, gy) = (load(Some(x))?, load(Some(y))?);
            let input = json!({ "x": describe(Some(x), &gx), "y": describe(Some(y), &gy), "r": r });
            let found = degenerate_gamma_factor_check(&gx, &gy, *r, *budget)?;
            let text = match &found {
                None => format!("every degenerate Γ_{r} factors through X or Y\n"),
                Some(w) => format!("Γ_{r} through neither side: {} / {}\n", w.upper.join(" "), w.lower.join(" ")),
            };
            Output {
                command: "gamma-check",
                input,
                verified: found.is_none(),
                result: json!({ "factors": found.is_none(), "witness": found }),
                text,
            }
        }
        Command::MvCheck { r, x, y, budget, assume_separable } => {
            let (gx, gy) = (load(Some(x))?, load(Some(y))?);
            let input = json!({ "x": describe(Some(x), &gx), "y": describe(Some(y), &gy), "r": r });
            let rep = mayer_vietoris_check(&gx, &gy, *r, (!assume_separable).then_some(*budget))?;
            mv_output("mv-check", input, &rep)
        }
        Command::PushoutMv { graph, r, s, subgraph, y, map } => {
            let x = load(graph.input.as_deref())?;
            let a = load(Some(subgraph))?;
            let gy = load(Some(y))?;
            let phi = parse_map(map, &a, &gy)?;
            let mut input = describe(graph.input.as_deref(), &x);
            input["subgraph"] = describe(Some(subgraph), &a);
            input["y"] = describe(Some(y), &gy);
            input["r"] = json!(r);
            input["s"] = json!(s);
            let rep = pushout_mv_check(&x, &phi, *r, *s)?;
            mv_output("pushout-mv", input, &rep)
        }
        Command::DumpComplex { graph, pmax, nmax } => {
            let g = load(graph.input.as_deref())?;
            let c = FilteredChainComplex::build(&g, *nmax, *pmax);
            let dump = c.dump(&g);
            let mut input = describe(graph.input.as_deref(), &g);
            input["pmax"] = json!(pmax);
            input["nmax"] = json!(nmax);
            let dims: Vec<usize> = (0..=*nmax).map(|n| c.dim(n)).collect();
            Output {
                command: "dump-complex",
                input,
                result: json!({ "dimensions": dims, "dump": dump }),
                text: dump,
                verified: true,
            }
        }
    })
}
