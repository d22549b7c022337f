use eigenlpf::analysis::{
    congruence_density, lpf_density, natural_density_over_n, odd_prime_power_suite, pafp_suite,
    sato_tate_test, theorem6_report, wieferich_scan, DensityReport,
};
use serde_json::{json, Value};

use crate::cache::ensure_table;
use crate::config::{ReportKind, RunConfig};
use crate::emit::{object, split_rows, to_value, Table};
use crate::{Failure, EXIT_INVARIANT};

fn density_tables(kind: &str, report: &DensityReport) -> Vec<Table> {
    let (rows, summary) = split_rows(to_value(report), "failing");
    let mut out = vec![Table {
        kind: kind.into(),
        rows,
        summary,
    }];
    if !report.failing_overflow.is_empty() {
        out.push(Table {
            kind: format!("{kind}-overflow"),
            rows: report.failing_overflow.iter().map(to_value).collect(),
            summary: json!({ "count": report.failing_overflow.len() }),
        });
    }
    out
}

/// Build the tables for one report kind; the flag is set when an embedded
/// invariant fails.
pub fn build(cfg: &RunConfig, kind: ReportKind) -> Result<(Vec<Table>, bool), Failure> {
    let form = cfg.form_descriptor()?;
    let name = kind.name();
    let mut failed = false;
    let tables = match kind {
        ReportKind::SatoTate => {
            let t = ensure_table(cfg, form, cfg.x_max)?;
            let r = sato_tate_test(&t, cfg.x_max, cfg.bins)?;
            let rows = r
                .bins
                .iter()
                .map(|b| {
                    object(vec![
                        ("bin_lo", json!(b.lo)),
                        ("bin_hi", json!(b.hi)),
                        ("empirical", json!(b.empirical)),
                        ("expected", json!(b.expected)),
                    ])
                })
                .collect();
            let (_, summary) = split_rows(to_value(&r), "bins");
            vec![Table {
                kind: name.into(),
                rows,
                summary,
            }]
        }
        ReportKind::LpfDensity => {
            let t = ensure_table(cfg, form, cfg.x_max)?;
            let r = lpf_density(&t, cfg.x_max, cfg.threshold_spec()?, &cfg.factorizer())?;
            density_tables(name, &r)
        }
        ReportKind::NaturalDensity => {
            let t = ensure_table(cfg, form, cfg.x_max)?;
            let r = natural_density_over_n(&t, cfg.x_max, cfg.threshold_spec()?, &cfg.factorizer())?;
            density_tables(name, &r)
        }
        ReportKind::Congruence => {
            let t = ensure_table(cfg, form, cfg.x_max)?;
            let r = congruence_density(&t, cfg.x_max, cfg.d)?;
            let Value::Object(mut row) = to_value(&r) else {
                unreachable!()
            };
            let summary = object(vec![
                ("form", row.shift_remove("form").unwrap()),
                ("x_max", row.shift_remove("x_max").unwrap()),
            ]);
            vec![Table {
                kind: name.into(),
                rows: vec![Value::Object(row)],
                summary,
            }]
        }
        ReportKind::PrimePower => {
            let t = ensure_table(cfg, form, cfg.x_max)?;
            let r = odd_prime_power_suite(&t, cfg.x_max, cfg.m_max, cfg.epsilon, &cfg.factorizer())?;
            failed = r.failures > 0;
            let (rows, summary) = split_rows(to_value(&r), "rows");
            vec![Table {
                kind: name.into(),
                rows,
                summary,
            }]
        }
        ReportKind::Theorem6 => {
            let p_max = cfg.p_list.iter().copied().max().unwrap_or(2);
            let t = ensure_table(cfg, form, p_max)?;
            let rows = theorem6_report(&t, &cfg.p_list, &cfg.n_list, &cfg.classify_options())?;
            let summary = json!({
                "form": form.name(),
                "p_list": cfg.p_list,
                "n_list": cfg.n_list,
                "rows": rows.len(),
                "above_shape": rows.iter().filter(|r| r.above_shape).count(),
                "inexact": rows.iter().filter(|r| !r.zero && !r.lpf.exact).count(),
            });
            vec![Table {
                kind: name.into(),
                rows: rows.iter().map(to_value).collect(),
                summary,
            }]
        }
        ReportKind::Wieferich => {
            let t = ensure_table(cfg, form, cfg.p)?;
            let s = wieferich_scan(&t, cfg.p, cfg.norm_limit)?;
            failed = !(s.all_at_least_one && s.paths_agree);
            let (rows, summary) = split_rows(to_value(&s), "rows");
            vec![Table {
                kind: name.into(),
                rows,
                summary,
            }]
        }
        ReportKind::Pafp => {
            let t = ensure_table(cfg, form, cfg.p)?;
            let r = pafp_suite(
                &t,
                cfg.p,
                cfg.n_max,
                cfg.norm_limit,
                cfg.n_floor,
                &cfg.classify_options(),
            )?;
            failed = !(r.scan.all_at_least_one && r.scan.paths_agree);
            let (scan_rows, scan_summary) = split_rows(to_value(&r.scan), "rows");
            let mut whole = to_value(&r);
            whole.as_object_mut().unwrap().shift_remove("scan");
            let (rows, summary) = split_rows(whole, "rows");
            vec![
                Table {
                    kind: "pafp-wieferich".into(),
                    rows: scan_rows,
                    summary: scan_summary,
                },
                Table {
                    kind: "pafp-bound".into(),
                    rows,
                    summary,
                },
            ]
        }
    };
    Ok((tables, failed))
}

pub fn cmd_report(cfg: &RunConfig, kind: ReportKind) -> Result<u8, Failure> {
    let (tables, failed) = build(cfg, kind)?;
    for t in &tables {
        let path = t.write(cfg)?;
        println!("wrote {}", path.display());
    }
    if failed {
        eprintln!("error: {} report contains invariant failures", kind.name());
        return Ok(EXIT_INVARIANT);
    }
    Ok(0)
}
