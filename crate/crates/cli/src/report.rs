//! Analysis reports in machine-readable (JSON) and text form.
//!
//! All facet and ray indices in reports are 1-based. JSON objects are
//! key-sorted; see `docs/report-schema.md` for the layout.

use std::fmt::Write as _;

use momentcone_core::{
    check_good, consistency_check, reeb_vector, validate, witness_for_face, BigInt, BigRational, Cone, ConeSpec,
    FacetSet, FinAbGroup, GoodnessReport, HomotopyReport, MomentWitness, ReebVector, Result, ValidationReport,
};
use serde_json::{json, Number, Value};

use crate::exit;

pub const SCHEMA: &str = "momentcone-report/1";

#[derive(Clone, Copy, Debug, Default)]
pub struct Sections {
    pub faces: bool,
    pub witnesses: bool,
}

/// Everything computed for one cone.
#[derive(Debug)]
pub struct Analysis {
    pub validation: ValidationReport,
    pub reeb: Option<ReebVector>,
    pub goodness: Option<GoodnessReport>,
    pub homotopy: Option<HomotopyReport>,
    pub witnesses: Option<Vec<MomentWitness>>,
}

/// Runs the pipeline: validation, then goodness, then (for good cones) the
/// homotopy report. Errors only on internal inconsistencies.
pub fn analyze(spec: &ConeSpec, sections: Sections) -> Result<Analysis> {
    let validation = validate(spec);
    let mut analysis = Analysis {
        validation,
        reeb: None,
        goodness: None,
        homotopy: None,
        witnesses: None,
    };
    let Some(cone) = analysis.validation.cone() else {
        return Ok(analysis);
    };
    analysis.reeb = Some(reeb_vector(cone)?);
    let goodness = check_good(cone);
    if goodness.good() {
        analysis.homotopy = Some(consistency_check(cone)?);
    }
    analysis.goodness = Some(goodness);
    if sections.witnesses {
        analysis.witnesses = Some(witnesses(cone)?);
    }
    Ok(analysis)
}

pub fn witnesses(cone: &Cone) -> Result<Vec<MomentWitness>> {
    cone.lattice()
        .faces()
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| witness_for_face(cone, f))
        .collect()
}

impl Analysis {
    pub fn cone(&self) -> Option<&Cone> {
        self.validation.cone()
    }

    pub fn exit_code(&self) -> i32 {
        match (&self.goodness, self.validation.ok()) {
            (_, false) => exit::INVALID,
            (Some(g), true) if !g.good() => exit::NOT_GOOD,
            _ => exit::OK,
        }
    }

    pub fn to_json(&self, sections: Sections) -> Value {
        let v = &self.validation;
        let mut report = json!({
            "schema": SCHEMA,
            "name": v.spec.name(),
            "dim": v.spec.dim(),
            "num_normals": v.spec.num_normals(),
            "normals": v.spec.normals().iter().map(|mu| int_vec(mu)).collect::<Vec<_>>(),
            "validation": validation_json(v),
            "reeb_vector": self.reeb.as_ref().map(|x| int_vec(&x.0)),
            "goodness": self.goodness.as_ref().map(goodness_json),
            "homotopy": self.homotopy.as_ref().map(homotopy_json),
        });
        let obj = report.as_object_mut().expect("report is an object");
        if sections.faces {
            obj.insert("faces".into(), self.cone().map_or(Value::Null, lattice_json));
        }
        if sections.witnesses {
            obj.insert(
                "witnesses".into(),
                self.witnesses
                    .as_ref()
                    .map_or(Value::Null, |ws| Value::Array(ws.iter().map(witness_json).collect())),
            );
        }
        report
    }

    pub fn to_text(&self, sections: Sections) -> String {
        let v = &self.validation;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "cone {} (n = {}, N = {})",
            v.spec.name().unwrap_or("-"),
            v.spec.dim(),
            v.spec.num_normals()
        );
        for (j, mu) in v.spec.normals().iter().enumerate() {
            let _ = writeln!(out, "  mu_{} = {}", j + 1, tuple(mu));
        }
        if !v.normalized.is_empty() {
            let idx: Vec<String> = v.normalized.iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(out, "primitivized normals: {}", idx.join(", "));
        }
        let _ = writeln!(out, "validation: {}", v.summary());
        if let Some(x) = &self.reeb {
            let _ = writeln!(out, "reeb vector: {}", tuple(&x.0));
        }
        if let Some(g) = &self.goodness {
            if g.good() {
                let _ = writeln!(out, "good: yes");
            } else {
                let _ = writeln!(out, "good: no");
                for viol in &g.violations {
                    let _ = writeln!(out, "  {} fails at face {} (codim {})", viol.condition, viol.face, viol.codim);
                }
            }
        }
        if let Some(h) = &self.homotopy {
            let _ = writeln!(out, "pi1 = {}", h.pi1);
            let _ = writeln!(out, "pi2 = {}", FinAbGroup::free(h.pi2_rank));
            let _ = writeln!(out, "pi0(T) = {}, pi1(T) = {}", h.pi0_t, FinAbGroup::free(h.pi1_t_rank));
            let members: Vec<String> = h.arrangement.minimal_members().iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "arrangement minimal members: {}", members.join(" "));
            let _ = writeln!(out, "oracle order: {}", h.oracle_order);
        }
        if sections.faces {
            if let Some(cone) = self.cone() {
                out.push_str(&lattice_text(cone));
            }
        }
        if sections.witnesses {
            if let Some(ws) = &self.witnesses {
                out.push_str(&witnesses_text(ws));
            }
        }
        out
    }
}

pub fn int(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

pub fn int_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn rational_vec(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn indices(s: &FacetSet) -> Value {
    json!(s.to_one_based())
}

fn tuple<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn validation_json(v: &ValidationReport) -> Value {
    json!({
        "ok": v.ok(),
        "normalized": v.normalized.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "failures": v.failures.iter().map(|f| json!({
            "code": f.code.as_str(),
            "indices": f.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn goodness_json(g: &GoodnessReport) -> Value {
    json!({
        "good": g.good(),
        "violations": g.violations.iter().map(|v| json!({
            "face": indices(&v.face),
            "codim": v.codim,
            "condition": v.condition.number(),
        })).collect::<Vec<_>>(),
    })
}

pub fn group_json(g: &FinAbGroup) -> Value {
    json!({
        "invariant_factors": int_vec(g.invariant_factors()),
        "free_rank": g.free_rank(),
        "order": g.order().as_ref().map(int),
        "display": g.to_string(),
    })
}

fn homotopy_json(h: &HomotopyReport) -> Value {
    json!({
        "pi1": group_json(&h.pi1),
        "pi2_rank": h.pi2_rank,
        "pi0_T": group_json(&h.pi0_t),
        "pi1_T_rank": h.pi1_t_rank,
        "arrangement": {
            "minimal_members": h.arrangement.minimal_members().iter().map(indices).collect::<Vec<_>>(),
            "codims": h.arrangement.codims(),
        },
        "oracle_order": int(&h.oracle_order),
    })
}

pub fn lattice_json(cone: &Cone) -> Value {
    let lattice = cone.lattice();
    let n = lattice.dim();
    json!({
        "rays": lattice.rays().iter().map(|r| json!({
            "generator": int_vec(&r.generator),
            "active": indices(&r.active),
        })).collect::<Vec<_>>(),
        "faces": lattice.faces().iter().map(|f| json!({
            "active": indices(&f.active),
            "dim": f.dim,
            "codim": f.codim(n),
            "rays": f.rays.iter().map(|r| r + 1).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn lattice_text(cone: &Cone) -> String {
    let lattice = cone.lattice();
    let n = lattice.dim();
    let mut out = String::new();
    let _ = writeln!(out, "rays ({}):", lattice.rays().len());
    for (i, r) in lattice.rays().iter().enumerate() {
        let _ = writeln!(out, "  r{} = {} on facets {}", i + 1, tuple(&r.generator), r.active);
    }
    let _ = writeln!(out, "faces ({}):", lattice.faces().len());
    for f in lattice.faces() {
        let rays: Vec<String> = f.rays.iter().map(|r| format!("r{}", r + 1)).collect();
        let _ = writeln!(
            out,
            "  codim {} dim {} active {} rays [{}]",
            f.codim(n),
            f.dim,
            f.active,
            rays.join(" ")
        );
    }
    out
}

pub fn witness_json(w: &MomentWitness) -> Value {
    json!({
        "face": indices(&w.face.active),
        "eta": rational_vec(&w.eta),
        "m": rational_vec(&w.m),
    })
}

pub fn witnesses_text(ws: &[MomentWitness]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "witnesses ({}):", ws.len());
    for w in ws {
        let _ = writeln!(out, "  face {}: eta = {}, |z|^2 = {}", w.face.active, tuple(&w.eta), tuple(&w.m));
    }
    out
}
