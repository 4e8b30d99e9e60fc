use serde_json::{json, Value};

use bihyper::constructions::{product_bihypergraph, reduced_vertex_set, DimsSpec};
use bihyper::solver::{
    verify_edge_maximality, verify_product_colorings, verify_reduced_equivalence, ProductReport, SpectrumSource,
};
use bihyper::ChromaticSpectrum;

use crate::{parse_set, sorted_dims, Failure, Global, Outcome, Verify, VERIFY_CAP};

struct Verdict {
    check: &'static str,
    claim: &'static str,
    instance: String,
    ok: bool,
    summary: String,
    details: Value,
}

fn report(g: &Global, v: Verdict) -> Outcome {
    if g.json() {
        let mut obj = json!({
            "check": v.check,
            "claim": v.claim,
            "instance": v.instance,
            "verified": v.ok,
            "summary": v.summary,
        });
        if let (Value::Object(map), Value::Object(extra)) = (&mut obj, v.details) {
            map.extend(extra);
        }
        println!("{obj}");
    } else {
        println!("check: {} ({})", v.check, v.claim);
        println!("instance: {}", v.instance);
        println!("{}: {}", if v.ok { "VERIFIED" } else { "FAILED" }, v.summary);
    }
    if v.ok {
        Ok(())
    } else {
        Err(Failure::Refuted)
    }
}

fn strictly_decreasing(d: &DimsSpec) -> Result<(), Failure> {
    if d.as_slice().windows(2).any(|w| w[0] <= w[1]) {
        return Err(Failure::Usage(format!("this check needs strictly decreasing dimensions, got {d}")));
    }
    Ok(())
}

fn product_verdict(check: &'static str, claim: &'static str, r: &ProductReport, extra_ok: bool) -> Verdict {
    let ok = r.verified() && extra_ok;
    let summary = if ok {
        format!(
            "R(H)={}, strict colorings are exactly the {} coordinate colorings",
            r.spectrum,
            r.spectrum.total().unwrap_or(0)
        )
    } else {
        format!(
            "R(H)={} but expected {}; coordinate colorings {}",
            r.spectrum,
            r.predicted,
            if r.partitions_are_coordinate_colorings { "match" } else { "do not match" }
        )
    };
    Verdict {
        check,
        claim,
        instance: format!("dims={} vertices={} bi-edges={}", r.dims, r.vertices, r.edges),
        ok,
        summary,
        details: json!({
            "dims": r.dims.as_slice(),
            "spectrum": spectrum_map(&r.spectrum),
            "expected": spectrum_map(&r.predicted),
            "outside_hypotheses": r.outside_hypotheses,
        }),
    }
}

fn spectrum_map(s: &ChromaticSpectrum) -> Value {
    let map: serde_json::Map<String, Value> = s.nonzero().map(|(k, r)| (k.to_string(), json!(r))).collect();
    Value::Object(map)
}

fn reduced_verdict(check: &'static str, claim: &'static str, d: &DimsSpec, g: &Global) -> Outcome {
    let cfg = g.config(VERIFY_CAP)?;
    let r = verify_reduced_equivalence(d, &cfg)?;
    let reference = match r.reference_source {
        SpectrumSource::Enumerated => String::new(),
        SpectrumSource::Predicted => format!(
            " (R(H) predicted: product has {} vertices, above the cap of {})",
            d.box_size().map_or("too many".to_string(), |n| n.to_string()),
            cfg.max_vertices
        ),
    };
    let summary = if r.equal {
        format!("R(H*)=R(H)={}{reference}, |X*|={}", r.reduced, r.reduced_vertices)
    } else {
        format!("R(H*)={} differs from R(H)={}{reference}, |X*|={}", r.reduced, r.reference, r.reduced_vertices)
    };
    report(
        g,
        Verdict {
            check,
            claim,
            instance: format!("dims={d} |X*|={} bi-edges={}", r.reduced_vertices, r.reduced_edges),
            ok: r.equal,
            summary,
            details: json!({
                "dims": d.as_slice(),
                "reduced_vertices": r.reduced_vertices,
                "reduced_spectrum": spectrum_map(&r.reduced),
                "reference_spectrum": spectrum_map(&r.reference),
                "reference_source": r.reference_source.to_string(),
            }),
        },
    )
}

pub fn run(g: &Global, v: Verify) -> Outcome {
    match v {
        Verify::Lemma21 { n1, n2 } => {
            let d = DimsSpec::product(vec![n1, n2])?;
            strictly_decreasing(&d)?;
            let r = verify_product_colorings(&d, &g.config(VERIFY_CAP)?)?;
            report(
                g,
                product_verdict(
                    "lemma21",
                    "H(n1,n2) with n1 > n2 >= 3 has feasible set {n1,n2} and r_n1 = r_n2 = 1",
                    &r,
                    true,
                ),
            )
        }
        Verify::Thm22 { dims } => {
            let d = DimsSpec::product(sorted_dims(dims))?;
            strictly_decreasing(&d)?;
            let r = verify_product_colorings(&d, &g.config(VERIFY_CAP)?)?;
            report(
                g,
                product_verdict(
                    "thm22",
                    "for n1 > ... > ns >= 3 the strict colorings of H are exactly the coordinate colorings",
                    &r,
                    true,
                ),
            )
        }
        Verify::Thm23 { set } => {
            let target = parse_set(&set)?;
            let d = target.dims()?;
            let r = verify_product_colorings(&d, &g.config(VERIFY_CAP)?)?;
            let hits = target.entries().iter().all(|&(n, s)| r.spectrum.r(n) == s as u64)
                && r.spectrum.feasible_set() == target.entries().iter().rev().map(|&(n, _)| n).collect::<Vec<_>>();
            report(
                g,
                product_verdict(
                    "thm23",
                    "repeating n_i exactly s_i times gives feasible set S with r_n_i = s_i",
                    &r,
                    hits,
                ),
            )
        }
        Verify::Thm24 { dims, mode } => {
            let d = DimsSpec::product(sorted_dims(dims))?;
            let cfg = g.config(VERIFY_CAP)?;
            if matches!(mode, crate::Mode::Enumerate) {
                let size = d.box_size().unwrap_or(usize::MAX);
                if size > cfg.max_vertices {
                    return Err(bihyper::Error::VertexCapExceeded {
                        what: "enumeration-mode maximality",
                        size,
                        cap: cfg.max_vertices,
                    }
                    .into());
                }
            }
            let r = verify_edge_maximality(&d, mode.into(), &cfg)?;
            let h_edges = product_bihypergraph(&d).c_edges().len();
            let mut summary = format!(
                "{} non-edge triples tested in {} mode, {} failures",
                r.tested_triples,
                r.mode,
                r.failures.len()
            );
            if r.mode == bihyper::solver::MaximalityMode::Enumerate {
                summary.push_str(&format!(", {} left no strict coloring", r.emptied));
            }
            if r.outside_hypotheses {
                summary.push_str(" (dims outside stated hypotheses: fewer than two distinct values)");
            }
            let failures: Vec<String> = r.failures.iter().map(|t| format!("{{{},{},{}}}", t[0], t[1], t[2])).collect();
            report(
                g,
                Verdict {
                    check: "thm24",
                    claim: "adding any triple that is not a bi-edge changes the chromatic spectrum",
                    instance: format!("dims={d} vertices={} bi-edges={h_edges}", r.vertices),
                    ok: r.verified(),
                    summary,
                    details: json!({
                        "dims": d.as_slice(),
                        "mode": r.mode.to_string(),
                        "tested_triples": r.tested_triples,
                        "failures": failures,
                        "monotonicity_violations": r.monotonicity_violations.len(),
                        "outside_hypotheses": r.outside_hypotheses,
                    }),
                },
            )
        }
        Verify::Lemma31 { n1, n2 } => {
            let d = DimsSpec::reduced(vec![n1, n2])?;
            reduced_verdict(
                "lemma31",
                "for n1 >= n2 > 3 the reduced H*(n1,n2) has the same spectrum as H(n1,n2)",
                &d,
                g,
            )
        }
        Verify::Thm32 { dims } => {
            let d = DimsSpec::reduced(sorted_dims(dims))?;
            reduced_verdict("thm32", "the reduced sub-hypergraph H* has the same feasible set and spectrum as H", &d, g)
        }
        Verify::SizeBound { dims, max_entry, max_s } => {
            let claim = "|X*| = 2 n1 + n2 + s - 2";
            let mut checked = Vec::new();
            if dims.is_empty() {
                let mut stack: Vec<Vec<usize>> = (4..=max_entry).map(|n| vec![n]).collect();
                while let Some(d) = stack.pop() {
                    if d.len() < max_s {
                        for n in 4..=*d.last().expect("nonempty") {
                            let mut e = d.clone();
                            e.push(n);
                            stack.push(e);
                        }
                    }
                    if let Ok(spec) = DimsSpec::reduced(d) {
                        checked.push(spec);
                    }
                }
                checked.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
            } else {
                checked.push(DimsSpec::reduced(sorted_dims(dims))?);
            }
            let mut bad = Vec::new();
            for d in &checked {
                let size = reduced_vertex_set(d)?.len();
                if size != d.reduced_size() {
                    bad.push(format!("{d}: |X*|={size}, formula {}", d.reduced_size()));
                }
            }
            let instance = match checked.as_slice() {
                [one] => format!("dims={one} formula={}", one.reduced_size()),
                many => format!("sweep of {} reduced dims, entries <= {max_entry}, s <= {max_s}", many.len()),
            };
            report(
                g,
                Verdict {
                    check: "size-bound",
                    claim,
                    instance,
                    ok: bad.is_empty(),
                    summary: if bad.is_empty() {
                        format!("{} dims checked, all match", checked.len())
                    } else {
                        bad.join("; ")
                    },
                    details: json!({ "checked": checked.len(), "mismatches": bad }),
                },
            )
        }
    }
}
