//! One function per subcommand; each returns the machine record plus the
//! pre-rendered command-specific formats.

use std::fmt::Write as _;

use serde_json::json;

use suclass::counting::{
    count_special_enumeration_with_ceiling, count_special_exact_order,
    count_special_exact_order_enumeration, count_special_exact_order_series,
    count_special_formula, count_special_pq, count_special_prime, cross_check_with_ceiling,
    CountMethod, CountReport,
};
use suclass::numtheory::{catalan, catalan_congruence, primes_up_to, wilson_check};
use suclass::orbits::{
    center_class_exists, congruence_pq, count_subgroup_classes_burnside_with_ceiling,
    count_subgroup_classes_with_ceiling, spcg_closed_form_pp,
    subgroup_class_representatives_with_ceiling, verify_distinct_generators,
};
use suclass::series::special_count_coefficients;
use suclass::spectra::ExponentTuple;
use suclass::{BigUint, Error, Result};

use crate::output::{CommandOutput, OutputRecord, EXIT_DISAGREEMENT, EXIT_OK};
use crate::{MethodArg, SequenceArg, SuiteArg};

fn tuple_words(t: &ExponentTuple) -> String {
    t.exponents()
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn series_coefficient(n: u64, m: u64) -> Result<BigUint> {
    let mut coeffs = special_count_coefficients(m, n)?;
    Ok(coeffs.pop().expect("coefficients reach index n"))
}

pub fn count(
    n: u64,
    m: u64,
    exact_order: bool,
    methods: &[MethodArg],
    ceiling: u64,
) -> Result<CommandOutput> {
    let mut method_counts: Vec<(CountMethod, BigUint)> = Vec::new();
    for &meth in methods {
        let entry = match (exact_order, meth) {
            (false, MethodArg::Formula) => {
                (CountMethod::ClosedForm, count_special_formula(n, m)?)
            }
            (false, MethodArg::Enum) => (
                CountMethod::Enumeration,
                count_special_enumeration_with_ceiling(n, m, ceiling)?,
            ),
            (false, MethodArg::Series) => (CountMethod::Series, series_coefficient(n, m)?),
            (true, MethodArg::Formula) => (
                CountMethod::ExactOrderVariant,
                count_special_exact_order(n, m)?,
            ),
            (true, MethodArg::Enum) => (
                CountMethod::Enumeration,
                count_special_exact_order_enumeration(n, m, ceiling)?,
            ),
            (true, MethodArg::Series) => {
                (CountMethod::Series, count_special_exact_order_series(n, m)?)
            }
        };
        method_counts.push(entry);
    }
    let report = CountReport::from_methods(n, m, method_counts);

    let methods_used: Vec<String> = report
        .method_counts
        .iter()
        .map(|(meth, _)| meth.as_str().to_string())
        .collect();
    let results = json!({
        "n": n,
        "m": m,
        "exact_order": exact_order,
        "count": report.count.to_string(),
        "agreement": report.agreement,
        "methods": report
            .method_counts
            .iter()
            .map(|(meth, c)| json!({"method": meth.as_str(), "count": c.to_string()}))
            .collect::<Vec<_>>(),
    });

    let mut csv = String::from("n,m,method,count\n");
    let mut table = format!(
        "special classes in SU({n}) of order {} {m}\n",
        if exact_order { "exactly" } else { "dividing" }
    );
    for (meth, c) in &report.method_counts {
        writeln!(csv, "{n},{m},{},{}", meth.as_str(), c).unwrap();
        writeln!(table, "  {:<20} {}", meth.as_str(), c).unwrap();
    }
    writeln!(table, "agreement: {}", report.agreement).unwrap();

    Ok(CommandOutput {
        record: OutputRecord::new(
            "count",
            vec![
                ("n", n.to_string()),
                ("m", m.to_string()),
                ("exact_order", exact_order.to_string()),
            ],
            results,
            methods_used,
        ),
        table,
        csv: Some(csv),
        bfile: None,
        exit: if report.agreement { EXIT_OK } else { EXIT_DISAGREEMENT },
    })
}

pub fn subgroups(
    n: u64,
    m: u64,
    exclude_center: bool,
    reps: bool,
    burnside: bool,
    ceiling: u64,
) -> Result<CommandOutput> {
    let full = count_subgroup_classes_with_ceiling(n, m, ceiling)?;
    let center_present = center_class_exists(n, m);
    let displayed = if exclude_center && center_present {
        &full.spcg - 1u32
    } else {
        full.spcg.clone()
    };

    let rep_list = if reps {
        let list = subgroup_class_representatives_with_ceiling(n, m, exclude_center, ceiling)?;
        if BigUint::from(list.len() as u64) != displayed {
            return Err(Error::Internal(format!(
                "representative count {} disagrees with orbit count {displayed}",
                list.len()
            )));
        }
        Some(list)
    } else {
        None
    };

    let mut methods_used = vec!["orbit_enumeration".to_string()];
    let mut agreement = true;
    let mut burnside_value: Option<BigUint> = None;
    if burnside {
        let b = count_subgroup_classes_burnside_with_ceiling(n, m, ceiling)?;
        let adjusted = if exclude_center && center_present {
            b - 1u32
        } else {
            b
        };
        agreement = adjusted == displayed;
        burnside_value = Some(adjusted);
        methods_used.push("burnside".to_string());
    }

    let mut results = json!({
        "n": n,
        "m": m,
        "spcg": displayed.to_string(),
        "includes_center": !exclude_center,
        "agreement": agreement,
    });
    if let Some(b) = &burnside_value {
        results["burnside"] = json!(b.to_string());
    }
    if let Some(list) = &rep_list {
        results["representatives"] =
            json!(list.iter().map(|t| t.exponents().to_vec()).collect::<Vec<_>>());
    }

    let mut table = format!(
        "special cyclic subgroup classes of order {m} in SU({n}){}\n  count: {displayed}\n",
        if exclude_center { " (center excluded)" } else { "" }
    );
    if let Some(b) = &burnside_value {
        writeln!(table, "  burnside: {b}").unwrap();
        writeln!(table, "  agreement: {agreement}").unwrap();
    }
    let csv = if let Some(list) = &rep_list {
        let mut s = String::from("index,tuple\n");
        for (i, t) in list.iter().enumerate() {
            writeln!(s, "{},{}", i + 1, tuple_words(t)).unwrap();
            writeln!(table, "  {t}").unwrap();
        }
        s
    } else {
        format!("n,m,spcg,includes_center\n{n},{m},{displayed},{}\n", !exclude_center)
    };

    Ok(CommandOutput {
        record: OutputRecord::new(
            "subgroups",
            vec![
                ("n", n.to_string()),
                ("m", m.to_string()),
                ("exclude_center", exclude_center.to_string()),
                ("reps", reps.to_string()),
                ("burnside", burnside.to_string()),
            ],
            results,
            methods_used,
        ),
        table,
        csv: Some(csv),
        bfile: None,
        exit: if agreement { EXIT_OK } else { EXIT_DISAGREEMENT },
    })
}

struct Instance {
    label: String,
    expected: String,
    actual: String,
    pass: bool,
}

pub fn verify(suite: SuiteArg, bound: u64, ceiling: u64) -> Result<CommandOutput> {
    let mut instances: Vec<Instance> = Vec::new();
    match suite {
        SuiteArg::Catalan => {
            for p in primes_up_to(bound) {
                let r = catalan_congruence(p)?;
                let divisible = (catalan(p - 1) + 1u32) % p == BigUint::from(0u32);
                instances.push(Instance {
                    label: format!("p={p}"),
                    expected: format!("{} (mod {p}) and p | 1+C", p - 1),
                    actual: format!(
                        "{} (mod {p}) and divisibility {}",
                        r.value(),
                        if divisible { "holds" } else { "fails" }
                    ),
                    pass: r.value() == p - 1 && divisible,
                });
            }
        }
        SuiteArg::Wilson => {
            for p in primes_up_to(bound) {
                let r = wilson_check(p)?;
                instances.push(Instance {
                    label: format!("p={p}"),
                    expected: format!("{} (mod {p})", p - 1),
                    actual: r.to_string(),
                    pass: r.value() == p - 1,
                });
            }
        }
        SuiteArg::PqCongruence => {
            for p in primes_up_to(bound) {
                for q in primes_up_to(p.saturating_sub(1)) {
                    if (p - 1) % q != 0 {
                        continue;
                    }
                    let r = congruence_pq(p, q)?;
                    instances.push(Instance {
                        label: format!("p={p} q={q}"),
                        expected: format!("1 (mod {q})"),
                        actual: r.to_string(),
                        pass: r.value() == 1,
                    });
                }
            }
        }
        SuiteArg::FreeOrbits => {
            let primes = primes_up_to(bound);
            for &p in &primes {
                for &q in &primes {
                    if (q - 1) % p == 0 {
                        continue;
                    }
                    let free = verify_distinct_generators(p, q)?;
                    instances.push(Instance {
                        label: format!("p={p} q={q}"),
                        expected: "free".to_string(),
                        actual: if free { "free".into() } else { "not free".into() },
                        pass: free,
                    });
                }
            }
        }
        SuiteArg::FormulaVsOracle => {
            for n in 1..=bound {
                for m in 1..=bound {
                    let report = cross_check_with_ceiling(n, m, ceiling)?;
                    let actual = report
                        .method_counts
                        .iter()
                        .map(|(_, c)| c.to_string())
                        .collect::<Vec<_>>()
                        .join("/");
                    instances.push(Instance {
                        label: format!("n={n} m={m}"),
                        expected: report.count.to_string(),
                        actual,
                        pass: report.agreement,
                    });
                }
            }
        }
    }

    let failures = instances.iter().filter(|i| !i.pass).count();
    let suite_name = suite.as_str();

    let results = json!({
        "suite": suite_name,
        "bound": bound,
        "checked": instances.len(),
        "failures": failures,
        "instances": instances
            .iter()
            .map(|i| json!({
                "instance": i.label,
                "expected": i.expected,
                "actual": i.actual,
                "pass": i.pass,
            }))
            .collect::<Vec<_>>(),
    });

    let mut csv = String::from("instance,expected,actual,pass\n");
    let mut table = format!("verify {suite_name} up to {bound}\n");
    for i in &instances {
        writeln!(csv, "{},{},{},{}", i.label, i.expected, i.actual, i.pass).unwrap();
        writeln!(
            table,
            "  {} {} (expected {}, got {})",
            if i.pass { "PASS" } else { "FAIL" },
            i.label,
            i.expected,
            i.actual
        )
        .unwrap();
    }
    writeln!(table, "{} checked, {failures} failed", instances.len()).unwrap();

    Ok(CommandOutput {
        record: OutputRecord::new(
            "verify",
            vec![("suite", suite_name.to_string()), ("bound", bound.to_string())],
            results,
            vec![suite_name.to_string()],
        ),
        table,
        csv: Some(csv),
        bfile: None,
        exit: if failures == 0 { EXIT_OK } else { EXIT_DISAGREEMENT },
    })
}

pub fn series(m: u64, order: u64) -> Result<CommandOutput> {
    let coeffs = special_count_coefficients(m, order)?;

    let results = json!({
        "m": m,
        "order": order,
        "coefficients": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });

    let mut csv = String::from("n,coefficient\n");
    let mut bfile = String::new();
    let mut table = format!("G(x) for m = {m}, truncated at x^{order}\n");
    for (i, c) in coeffs.iter().enumerate() {
        writeln!(csv, "{i},{c}").unwrap();
        writeln!(bfile, "{i} {c}").unwrap();
        writeln!(table, "  x^{i}: {c}").unwrap();
    }

    Ok(CommandOutput {
        record: OutputRecord::new(
            "series",
            vec![("m", m.to_string()), ("order", order.to_string())],
            results,
            vec!["series".to_string()],
        ),
        table,
        csv: Some(csv),
        bfile: Some(bfile),
        exit: EXIT_OK,
    })
}

pub fn export(sequence: SequenceArg, bound: u64) -> Result<CommandOutput> {
    let mut terms: Vec<(u64, String)> = Vec::new();
    for p in primes_up_to(bound) {
        let value = match sequence {
            SequenceArg::SpcgPp => spcg_closed_form_pp(p)?.to_string(),
            SequenceArg::NprimePp => count_special_pq(p, p)?.to_string(),
            SequenceArg::CatalanResidues => catalan_congruence(p)?.value().to_string(),
        };
        terms.push((p, value));
    }
    let name = sequence.as_str();

    let results = json!({
        "sequence": name,
        "bound": bound,
        "terms": terms
            .iter()
            .map(|(p, v)| json!({"p": p, "value": v}))
            .collect::<Vec<_>>(),
    });

    let mut csv = String::from("p,value\n");
    let mut bfile = String::new();
    let mut table = format!("{name} over primes p ≤ {bound}\n");
    for (p, v) in &terms {
        writeln!(csv, "{p},{v}").unwrap();
        writeln!(bfile, "{p} {v}").unwrap();
        writeln!(table, "  p={p}: {v}").unwrap();
    }

    Ok(CommandOutput {
        record: OutputRecord::new(
            "export",
            vec![("sequence", name.to_string()), ("bound", bound.to_string())],
            results,
            vec!["closed_form".to_string()],
        ),
        table,
        csv: Some(csv),
        bfile: Some(bfile),
        exit: EXIT_OK,
    })
}

pub fn homotopy_classes(n: u64, p: u64) -> Result<CommandOutput> {
    let value = count_special_prime(n, p)?;

    let results = json!({
        "n": n,
        "p": p,
        "count": value.to_string(),
    });

    let table = format!(
        "special homotopy classes of maps B(Z/{p}) -> BSU({n})\n  count: {value}\n"
    );
    let csv = format!("n,p,count\n{n},{p},{value}\n");

    Ok(CommandOutput {
        record: OutputRecord::new(
            "homotopy-classes",
            vec![("n", n.to_string()), ("p", p.to_string())],
            results,
            vec!["closed_form".to_string()],
        ),
        table,
        csv: Some(csv),
        bfile: None,
        exit: EXIT_OK,
    })
}
