//! Command dispatch for the `toric-chow` binary.
//!
//! [`run`] turns a parsed input and a [`Command`] into a JSON document; the
//! same input always produces the same bytes. [`exit_code`] classifies errors.

use serde_json::{json, Value};

use crate::chow::ChowQuotient;
use crate::document::{self, ConeDoc, DatumDoc, FanDoc, Input, MatrixDoc, MonoidDoc, SublatticeDoc, VecText};
use crate::family::{UniversalFamily, WallKind, WallStructure};
use crate::lattice::Int;
use crate::polyhedra::{validate_fan, Fan};
use crate::stack::{stabilizer_invariants, validate_stack_datum, StackMorphism, ToricStackDatum};
use crate::verify::{run_checks, CheckReport, CheckSelection, Verdict};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Quotient,
    Multiplicities,
    Cycle { cone: usize },
    Family,
    Fiber { cone: usize },
    Check(CheckSelection),
    All,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::UnknownCone { .. } | Error::NotMaximalCone { .. } => EXIT_USAGE,
        e if e.is_validation() => EXIT_VALIDATION,
        _ => EXIT_INTERNAL,
    }
}

/// Parses `text` and runs `cmd`, returning the output document.
pub fn run_text(cmd: &Command, text: &str, saturate: bool) -> Result<String> {
    let input = document::parse_input(text, saturate)?;
    run(cmd, &input)
}

pub fn run(cmd: &Command, input: &Input) -> Result<String> {
    let body = match cmd {
        Command::Validate => validate(input)?,
        Command::Quotient => quotient(&chow(input)?),
        Command::Multiplicities => multiplicities(&chow(input)?),
        Command::Cycle { cone } => cycle(&chow(input)?, *cone)?,
        Command::Family => family(&UniversalFamily::new(&chow(input)?)?),
        Command::Fiber { cone } => {
            let fam = UniversalFamily::new(&chow(input)?)?;
            fiber(&fam, *cone, input.options.bound.unwrap_or(8))?
        }
        Command::Check(sel) => {
            let fam = UniversalFamily::new(&chow(input)?)?;
            let sel = CheckSelection { bound: input.options.bound.unwrap_or(sel.bound), ..*sel };
            checks(&run_checks(&fam, &sel)?)
        }
        Command::All => all(input)?,
    };
    let doc = json!({
        "format_version": document::FORMAT_VERSION,
        "command": command_name(cmd),
        "input": document::input_document(&input.fan, &input.sublattice),
        "result": body,
    });
    Ok(document::to_text(&doc))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate => "validate",
        Command::Quotient => "quotient",
        Command::Multiplicities => "multiplicities",
        Command::Cycle { .. } => "cycle",
        Command::Family => "family",
        Command::Fiber { .. } => "fiber",
        Command::Check(_) => "check",
        Command::All => "all",
    }
}

fn chow(input: &Input) -> Result<ChowQuotient> {
    ChowQuotient::new(&input.fan, &input.sublattice)
}

fn text(v: &[Int]) -> VecText {
    VecText(v.to_vec())
}

fn validate(input: &Input) -> Result<Value> {
    validate_fan(&input.fan).into_result()?;
    if !input.fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let datum = ToricStackDatum::variety(&input.fan)?;
    let report = validate_stack_datum(&datum);
    if !report.is_valid() {
        return Err(Error::InvalidFan(format!("{:?}", report.violations)));
    }
    Ok(json!({
        "verdict": Verdict::Pass.to_string(),
        "fan_cones": input.fan.len(),
        "maximal_cones": input.fan.maximal_indices().len(),
        "complete": true,
        "sublattice_rank": input.sublattice.rank(),
        "sublattice_saturated": input.sublattice.is_saturated(),
    }))
}

fn quotient(cq: &ChowQuotient) -> Value {
    let g = cq.quotient_fan();
    let cones: Vec<Value> = cq
        .cones()
        .iter()
        .enumerate()
        .map(|(k, qc)| {
            json!({
                "index": k,
                "cone": ConeDoc::new(&g.cones()[k]),
                "sample": text(&qc.psi),
                "class": qc.class,
                "n_zero": qc.n_zero,
                "monoid": MonoidDoc::new(&qc.monoid),
            })
        })
        .collect();
    json!({
        "projection": MatrixDoc::new(cq.projection().matrix()),
        "sublattice": SublatticeDoc::new(cq.sublattice()),
        "quotient_fan": FanDoc::new(g),
        "cones": cones,
        "diagnostics": cq.diagnostics(),
    })
}

fn multiplicities(cq: &ChowQuotient) -> Value {
    let f = cq.fan();
    let rows: Vec<Value> = (0..f.len())
        .map(|i| {
            let m = match cq.multiplicity(i) {
                Ok(n) => Value::String(n.to_string()),
                Err(_) => Value::Null,
            };
            json!({ "cone": i, "rays": ConeDoc::new(&f.cones()[i]).rays, "multiplicity": m })
        })
        .collect();
    json!({ "multiplicities": rows })
}

fn cycle(cq: &ChowQuotient, kappa: usize) -> Result<Value> {
    let c = cq.cycle(kappa)?;
    let terms: Vec<Value> = c
        .terms
        .iter()
        .map(|(s, m)| {
            json!({ "cone": s, "rays": ConeDoc::new(&cq.fan().cones()[*s]).rays, "multiplicity": m.to_string() })
        })
        .collect();
    Ok(json!({ "kappa": kappa, "terms": terms }))
}

fn morphism(m: &StackMorphism) -> Value {
    json!({
        "lattice_map": MatrixDoc::new(&m.lattice_map),
        "cone_assignment": m.cone_assignment.cone_assignment,
    })
}

fn family(fam: &UniversalFamily) -> Value {
    let f = fam.fan();
    let iota: Vec<usize> = (0..f.len()).map(|i| fam.iota(i).expect("index in range")).collect();
    let tau: Vec<usize> = (0..f.len()).map(|i| fam.base_cone(i).expect("index in range")).collect();
    json!({
        "datum": DatumDoc::new(fam.datum()),
        "to_target": morphism(fam.to_target()),
        "to_base": morphism(fam.to_base()),
        "iota": iota,
        "tau": tau,
    })
}

fn fiber(fam: &UniversalFamily, kappa: usize, bound: u32) -> Result<Value> {
    let g = fam.chow().quotient_fan();
    g.cone(kappa)?;
    let fc = fam.fiber(kappa)?;
    let walls = fc
        .walls
        .iter()
        .map(|w| {
            let kind = match w.kind {
                WallKind::Boundary { face } => json!({ "boundary": { "face": face } }),
                WallKind::Internal { first, second } => json!({ "internal": { "first": first, "second": second } }),
            };
            let structure = match fam.wall_structure(kappa, w.cone, bound)? {
                WallStructure::Product { face, u } => json!({ "product": { "face": face, "u": text(&u) } }),
                WallStructure::FiberProduct { first, second, u, c_on_basis } => {
                    let c: Vec<Value> =
                        c_on_basis.iter().map(|(v, c)| json!({ "v": text(v), "c": c.to_string() })).collect();
                    json!({ "fiber_product": { "first": first, "second": second, "u": text(&u), "c": c } })
                }
            };
            Ok(json!({ "cone": w.cone, "u": text(&w.u), "kind": kind, "structure": structure }))
        })
        .collect::<Result<Vec<_>>>()?;
    let pres = fam.basic_monoid(kappa)?;
    let relations: Vec<Value> = pres
        .relations
        .iter()
        .map(|r| json!({ "wall": r.wall, "i": r.i, "j": r.j, "u": text(&r.u) }))
        .collect();
    let tropical = pres.tropical_moduli_cone();
    Ok(json!({
        "kappa": kappa,
        "cone": ConeDoc::new(&g.cones()[kappa]),
        "components": fc.components,
        "component_labels": fc.component_labels,
        "walls": walls,
        "higher": fc.higher,
        "edges": fc.edges,
        "connected": fc.is_connected(),
        "notes": fc.notes,
        "dot": fc.to_dot(),
        "basic_monoid": {
            "components": pres.components,
            "relations": relations,
            "tuple_rank": pres.tuple_rank,
            "embedding": MatrixDoc::new(&pres.embedding),
            "rank": pres.rank(),
            "monoid": MonoidDoc::new(&pres.monoid),
        },
        "tropical_cone": ConeDoc::new(&tropical),
    }))
}

fn check_doc(r: &CheckReport) -> Value {
    let params: serde_json::Map<String, Value> =
        r.parameters.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "name": r.name,
        "verdict": r.verdict.to_string(),
        "witnesses": r.witnesses,
        "parameters": params,
    })
}

fn checks(reports: &[CheckReport]) -> Value {
    let overall = reports.iter().map(|r| r.verdict).max().unwrap_or(Verdict::Pass);
    json!({ "verdict": overall.to_string(), "checks": reports.iter().map(check_doc).collect::<Vec<_>>() })
}

fn stabilizers(d: &ToricStackDatum) -> Result<Vec<Vec<String>>> {
    (0..d.fan().len())
        .map(|i| Ok(stabilizer_invariants(d, i)?.iter().map(Int::to_string).collect()))
        .collect()
}

fn all(input: &Input) -> Result<Value> {
    let validation = validate(input)?;
    let cq = chow(input)?;
    let fam = UniversalFamily::new(&cq)?;
    let g: &Fan = cq.quotient_fan();
    let cycles = (0..g.len()).map(|k| cycle(&cq, k)).collect::<Result<Vec<_>>>()?;
    let bound = input.options.bound.unwrap_or(8);
    let fibers = g
        .maximal_indices()
        .into_iter()
        .map(|k| fiber(&fam, k, bound))
        .collect::<Result<Vec<_>>>()?;
    let reports = run_checks(&fam, &CheckSelection { bound, ..CheckSelection::default() })?;
    Ok(json!({
        "validate": validation,
        "quotient": quotient(&cq),
        "stack": {
            "datum": DatumDoc::new(&cq.stack_datum()?),
            "stabilizers": stabilizers(&cq.stack_datum()?)?,
        },
        "multiplicities": multiplicities(&cq)["multiplicities"],
        "cycles": cycles,
        "family": family(&fam),
        "fibers": fibers,
        "checks": checks(&reports),
    }))
}
