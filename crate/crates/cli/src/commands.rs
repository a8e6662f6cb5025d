use std::fmt::Write as _;

use cwsmod_core::oracle::Oracle;
use cwsmod_core::{
    stabilizer_to_cws, CodeDocument, CwsCode, DetectionReport, Error, GeneratorSet, OperatorSpec,
    PauliOperator, StabilizerCertificate, ValidationReport,
};
use serde::Deserialize;
use serde_json::{json, Value};

/// Outcome of a command: whether the checked property holds plus both
/// renderings of the report.
pub struct Report {
    pub holds: bool,
    pub json: Value,
    pub text: String,
}

/// Where detection errors come from.
pub enum ErrorSource {
    File(String),
    AllWeight(usize),
    Document,
}

/// `--errors` accepts a bare array of operators or an object with `errors`.
#[derive(Deserialize)]
#[serde(untagged)]
enum ErrorsFile {
    List(Vec<OperatorSpec>),
    Object { errors: Vec<OperatorSpec> },
}

pub fn parse_errors_file(text: &str) -> Result<Vec<OperatorSpec>, Error> {
    let parsed: ErrorsFile = serde_json::from_str(text)?;
    Ok(match parsed {
        ErrorsFile::List(list) | ErrorsFile::Object { errors: list } => list,
    })
}

fn require_code(doc: &CodeDocument) -> Result<CwsCode, Error> {
    let gens = doc.generator_set()?;
    let codewords = doc
        .codeword_operators()?
        .ok_or_else(|| Error::InvalidCode("the document has no codewords".into()))?;
    CwsCode::new(gens, codewords)
}

fn one_based(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
}

fn validation_json(report: &ValidationReport) -> Value {
    json!({
        "valid": report.is_valid(),
        "abelian": report.abelian,
        "noncommuting_pairs": one_based(&report.noncommuting_pairs),
        "identity_multiples_trivial": report.identity_multiples_trivial,
        "identity_multiple_phases": report.identity_multiple_phases,
        "order": report.order,
        "module_order": report.module_order,
        "r_in_bounds": report.r_in_bounds,
        "warnings": report.warnings,
    })
}

fn validation_text(out: &mut String, report: &ValidationReport) {
    let verdict = if report.is_valid() {
        "valid"
    } else {
        "invalid"
    };
    let _ = writeln!(out, "stabilizer: {verdict}, order {}", report.order);
    for (i, j) in one_based(&report.noncommuting_pairs) {
        let _ = writeln!(out, "  generators {i} and {j} do not commute");
    }
    for k in &report.identity_multiple_phases {
        let _ = writeln!(out, "  group contains q^{k} I");
    }
    for w in &report.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }
}

fn certificate_json(cert: &StabilizerCertificate) -> Value {
    serde_json::to_value(cert).expect("certificates serialize")
}

fn certificate_text(out: &mut String, cert: &StabilizerCertificate) {
    let _ = writeln!(out, "#<R(W)>: {}", cert.card_rw);
    let _ = writeln!(out, "#(<R(W)> ∩ <R(S)>): {}", cert.card_intersection);
    let _ = writeln!(out, "ratio: {}", cert.ratio);
    let _ = writeln!(out, "K: {}", cert.k);
    let _ = writeln!(out, "#C_S(W): {}", cert.centralizer_order);
    let verdict = if cert.is_stabilizer {
        "stabilizer code"
    } else {
        "not a stabilizer code"
    };
    let _ = writeln!(out, "verdict: {verdict}");
}

fn detection_json(report: &DetectionReport) -> Value {
    let verdicts: Vec<Value> = report
        .verdicts
        .iter()
        .map(|v| {
            json!({
                "error": v.error.to_string(),
                "classical": v.classical.entries(),
                "detected": v.detected,
                "witnesses": one_based(&v.witnesses),
            })
        })
        .collect();
    json!({
        "all_detected": report.all_detected(),
        "count": report.verdicts.len(),
        "undetected": report.verdicts.iter().filter(|v| !v.detected).count(),
        "verdicts": verdicts,
        "warnings": report.warnings,
    })
}

fn detection_text(out: &mut String, report: &DetectionReport) {
    for v in &report.verdicts {
        if v.detected {
            let _ = writeln!(out, "{}: detected (Cl = {})", v.error, v.classical);
        } else {
            let pairs: Vec<String> = one_based(&v.witnesses)
                .iter()
                .map(|(i, j)| format!("({i}, {j})"))
                .collect();
            let _ = writeln!(
                out,
                "{}: NOT detected (Cl = {}), witnesses {}",
                v.error,
                v.classical,
                pairs.join(" ")
            );
        }
    }
    let undetected = report.verdicts.iter().filter(|v| !v.detected).count();
    let _ = writeln!(
        out,
        "{} errors, {undetected} undetected",
        report.verdicts.len()
    );
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
}

fn resolve_errors(
    doc: &CodeDocument,
    code: &CwsCode,
    source: &ErrorSource,
) -> Result<Vec<PauliOperator>, Error> {
    match source {
        ErrorSource::File(text) => doc.resolve_operators(&parse_errors_file(text)?, "errors"),
        ErrorSource::AllWeight(w) => Ok(PauliOperator::all_up_to_weight(
            code.modulus(),
            code.n(),
            *w,
        )),
        ErrorSource::Document => Ok(doc.error_operators()?.unwrap_or_default()),
    }
}

pub fn validate(doc: &CodeDocument, limit: usize) -> Result<Report, Error> {
    let gens = doc.generator_set()?;
    let report = gens.validate_with_limit(limit)?;
    let mut text = String::new();
    validation_text(&mut text, &report);
    let mut holds = report.is_valid();
    let code_json = match doc.codeword_operators()? {
        None => Value::Null,
        Some(_) if !report.is_valid() => json!({"valid": false, "error": "stabilizer is invalid"}),
        Some(words) => match CwsCode::new(gens, words) {
            Ok(code) => {
                let classical: Vec<Vec<u64>> = code
                    .classical_code()?
                    .iter()
                    .map(|c| c.entries().to_vec())
                    .collect();
                let _ = writeln!(text, "code: valid, K = {}", code.k());
                json!({"valid": true, "k": code.k(), "classical_code": classical})
            }
            Err(Error::InvalidCode(msg)) => {
                holds = false;
                let _ = writeln!(text, "code: invalid, {msg}");
                json!({"valid": false, "error": msg})
            }
            Err(e) => return Err(e),
        },
    };
    Ok(Report {
        holds,
        json: json!({
            "command": "validate",
            "holds": holds,
            "stabilizer": validation_json(&report),
            "code": code_json,
        }),
        text,
    })
}

pub fn is_stabilizer(doc: &CodeDocument) -> Result<Report, Error> {
    let code = require_code(doc)?;
    let cert = code.is_stabilizer_code();
    let mut text = String::new();
    certificate_text(&mut text, &cert);
    Ok(Report {
        holds: cert.is_stabilizer,
        json: json!({"command": "is-stabilizer", "certificate": certificate_json(&cert)}),
        text,
    })
}

pub fn detect(doc: &CodeDocument, source: &ErrorSource) -> Result<Report, Error> {
    let code = require_code(doc)?;
    let errors = resolve_errors(doc, &code, source)?;
    let report = code.detects_errors(&errors)?;
    let mut text = String::new();
    detection_text(&mut text, &report);
    Ok(Report {
        holds: report.all_detected(),
        json: json!({"command": "detect", "detection": detection_json(&report)}),
        text,
    })
}

fn generators_text(out: &mut String, gens: &GeneratorSet) {
    for g in gens.generators() {
        let _ = writeln!(out, "{g}");
    }
}

pub fn extend(doc: &CodeDocument) -> Result<Report, Error> {
    let gens = doc.generator_set()?;
    match gens.extend_to_maximal() {
        Ok(maximal) => {
            let mut text = String::new();
            let _ = writeln!(
                text,
                "added {} generators, |S| = {}",
                maximal.len() - gens.len(),
                maximal.group_order()?
            );
            generators_text(&mut text, &maximal);
            let out = CodeDocument::from_generators(&maximal);
            Ok(Report {
                holds: true,
                json: serde_json::to_value(&out).expect("documents serialize"),
                text,
            })
        }
        Err(Error::PhaseUnrealizable) => Ok(Report {
            holds: false,
            json: json!({"command": "extend", "error": Error::PhaseUnrealizable.to_string()}),
            text: format!("{}\n", Error::PhaseUnrealizable),
        }),
        Err(e) => Err(e),
    }
}

pub fn to_cws(doc: &CodeDocument) -> Result<Report, Error> {
    let gens = doc.generator_set()?;
    match stabilizer_to_cws(&gens) {
        Ok(code) => {
            let mut text = String::from("stabilizer:\n");
            generators_text(&mut text, code.stabilizer());
            let _ = writeln!(text, "codewords (K = {}):", code.k());
            for w in code.codewords() {
                let _ = writeln!(text, "{w}");
            }
            Ok(Report {
                holds: true,
                json: serde_json::to_value(CodeDocument::from_code(&code))
                    .expect("documents serialize"),
                text,
            })
        }
        Err(Error::PhaseUnrealizable) => Ok(Report {
            holds: false,
            json: json!({"command": "to-cws", "error": Error::PhaseUnrealizable.to_string()}),
            text: format!("{}\n", Error::PhaseUnrealizable),
        }),
        Err(e) => Err(e),
    }
}

pub fn analyze(doc: &CodeDocument, limit: usize, source: &ErrorSource) -> Result<Report, Error> {
    let gens = doc.generator_set()?;
    let validation = gens.validate_with_limit(limit)?;
    let mut text = String::new();
    validation_text(&mut text, &validation);
    let mut result = json!({
        "command": "analyze",
        "stabilizer": validation_json(&validation),
    });
    if !validation.is_valid() {
        result["holds"] = json!(false);
        return Ok(Report {
            holds: false,
            json: result,
            text,
        });
    }
    let dimension = gens.stabilized_dimension()?;
    let _ = writeln!(text, "stabilized dimension: {dimension}");
    result["stabilized_dimension"] = json!(dimension);
    if let Some(words) = doc.codeword_operators()? {
        let code = match CwsCode::new(gens, words) {
            Ok(code) => code,
            Err(Error::InvalidCode(msg)) => {
                let _ = writeln!(text, "code: invalid, {msg}");
                result["code"] = json!({"valid": false, "error": msg});
                result["holds"] = json!(false);
                return Ok(Report {
                    holds: false,
                    json: result,
                    text,
                });
            }
            Err(e) => return Err(e),
        };
        let cert = code.is_stabilizer_code();
        let classical = code.classical_code()?;
        let _ = writeln!(text, "classical code:");
        for c in &classical {
            let _ = writeln!(text, "  ({c})");
        }
        certificate_text(&mut text, &cert);
        let flags = json!({
            "w_is_group": code.w_is_group(),
            "cls_w_is_group": code.cls_w_is_group()?,
            "w_is_operator_group": code.w_is_operator_group(),
        });
        let _ = writeln!(
            text,
            "R(W) group: {}, Cl_S(W) group: {}, W operator group: {}",
            flags["w_is_group"], flags["cls_w_is_group"], flags["w_is_operator_group"]
        );
        let errors = resolve_errors(doc, &code, source)?;
        let mut code_json = json!({
            "valid": true,
            "k": code.k(),
            "classical_code": classical.iter().map(|c| c.entries().to_vec()).collect::<Vec<_>>(),
            "certificate": certificate_json(&cert),
            "flags": flags,
        });
        if !errors.is_empty() {
            let report = code.detects_errors(&errors)?;
            detection_text(&mut text, &report);
            code_json["detection"] = detection_json(&report);
        }
        result["code"] = code_json;
    }
    result["holds"] = json!(true);
    Ok(Report {
        holds: true,
        json: result,
        text,
    })
}

pub fn oracle(doc: &CodeDocument, source: &ErrorSource) -> Result<Report, Error> {
    let oracle = Oracle::default();
    let gens = doc.generator_set()?;
    let mut text = String::new();
    let sta1 = oracle.verify_sta1(&gens)?;
    let _ = writeln!(
        text,
        "stabilized dimension: oracle {:.6}, symbolic {} ({})",
        sta1.trace,
        sta1.expected,
        if sta1.holds { "agree" } else { "DISAGREE" }
    );
    let mut agree = sta1.holds;
    let mut result = json!({
        "command": "oracle",
        "stabilized_dimension": {
            "oracle": format!("{:.6}", sta1.trace),
            "symbolic": sta1.expected,
            "agree": sta1.holds,
        },
    });
    if doc.codewords.is_some() {
        let code = require_code(doc)?;
        let cert = code.is_stabilizer_code();
        let verdict = oracle.oracle_is_stabilizer(&code)?;
        let stab_agree = verdict.is_stabilizer == cert.is_stabilizer
            && verdict.centralizer_order == cert.centralizer_order;
        agree &= stab_agree;
        let _ = writeln!(
            text,
            "stabilizer verdict: oracle {}, symbolic {} ({})",
            verdict.is_stabilizer,
            cert.is_stabilizer,
            if stab_agree { "agree" } else { "DISAGREE" }
        );
        let _ = writeln!(
            text,
            "#C_S(W): oracle {}, symbolic {}; centralizer trace {:.6}",
            verdict.centralizer_order, cert.centralizer_order, verdict.centralizer_trace
        );
        result["stabilizer"] = json!({
            "oracle": verdict.is_stabilizer,
            "symbolic": cert.is_stabilizer,
            "oracle_centralizer_order": verdict.centralizer_order,
            "symbolic_centralizer_order": cert.centralizer_order,
            "agree": stab_agree,
        });
        let errors = resolve_errors(doc, &code, source)?;
        if !errors.is_empty() {
            let symbolic = code.detects_errors(&errors)?;
            let dense = oracle.oracle_detects(&code, &errors)?;
            let disagreements: Vec<String> = symbolic
                .verdicts
                .iter()
                .zip(&dense)
                .filter(|(s, o)| s.detected != o.detected)
                .map(|(s, _)| s.error.to_string())
                .collect();
            agree &= disagreements.is_empty();
            let _ = writeln!(
                text,
                "detection: {} errors, {} disagreements",
                errors.len(),
                disagreements.len()
            );
            for e in &disagreements {
                let _ = writeln!(text, "  DISAGREE on {e}");
            }
            result["detection"] = json!({
                "count": errors.len(),
                "disagreements": disagreements,
            });
        }
    }
    result["agree"] = json!(agree);
    Ok(Report {
        holds: agree,
        json: result,
        text,
    })
}
