//! Output documents: one text rendering and one JSON rendering of the same
//! content, both byte-stable.

use qdiff::braided::BraidedPresentation;
use qdiff::comeasure::BialgebraPresentation;
use qdiff::graded::TruncatedGradedPresentation;
use qdiff::report::Report;
use serde_json::{json, Map, Value};
use std::fmt::Write;

/// A claim checked against the built ideal, shown under a heading.
pub struct Golden {
    pub group: String,
    pub claim: String,
    pub passed: bool,
}

#[derive(Default)]
pub struct Doc {
    pub title: String,
    pub body: Vec<String>,
    pub json: Map<String, Value>,
    pub golden: Vec<Golden>,
    pub reports: Vec<Report>,
}

impl Doc {
    pub fn new(title: impl Into<String>) -> Self {
        Doc { title: title.into(), ..Doc::default() }
    }

    pub fn passed(&self) -> bool {
        self.golden.iter().all(|g| g.passed) && self.reports.iter().all(|r| r.passed)
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.body.push(s.into());
    }

    pub fn bialgebra(&mut self, bp: &BialgebraPresentation) {
        let pres = bp.base.to_json();
        let gens = bp.generators();
        self.line(format!("field: {}", pres.field));
        self.line(format!("variant: {:?}", bp.variant));
        let names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
        self.line(format!("generators ({}): {}", names.len(), names.join(" ")));
        self.line(format!("relations ({}):", pres.relations.len()));
        for r in &pres.relations {
            self.line(format!("  {r} = 0"));
        }
        self.line("coproduct:");
        let mut coproduct = Map::new();
        let mut counit = Map::new();
        for (g, gen) in gens.iter().enumerate() {
            let d = bp.coproduct_string(g as u32);
            self.line(format!("  D({}) = {d}", gen.name));
            coproduct.insert(gen.name.clone(), json!(d));
            counit.insert(gen.name.clone(), json!(bp.counit[g].to_string()));
        }
        let eps: Vec<String> = gens.iter().zip(&bp.counit).map(|(g, e)| format!("e({})={e}", g.name)).collect();
        self.line(format!("counit: {}", eps.join(" ")));
        self.json.insert("field".into(), json!(pres.field));
        self.json.insert("variant".into(), json!(format!("{:?}", bp.variant)));
        self.json.insert("generators".into(), json!(pres.generators.iter().map(|g| json!({"name": g.name, "weight": g.weight})).collect::<Vec<_>>()));
        self.json.insert("relations".into(), json!(pres.relations));
        self.json.insert("coproduct".into(), Value::Object(coproduct));
        self.json.insert("counit".into(), Value::Object(counit));
    }

    pub fn graded(&mut self, tg: &TruncatedGradedPresentation) {
        self.bialgebra(&tg.bialgebra);
        self.line(format!("truncation: {}", tg.degree));
        if tg.formal {
            self.line("formal: the (0,0) coproduct is a series cut off at the truncation");
        }
        self.line("derived generators:");
        let mut derived = Map::new();
        for (k, v) in tg.derived_table() {
            self.line(format!("  {k} = {v}"));
            derived.insert(k, json!(v));
        }
        self.json.insert("truncation".into(), json!(tg.degree));
        self.json.insert("formal".into(), json!(tg.formal));
        self.json.insert("derived".into(), Value::Object(derived));
    }

    pub fn braided(&mut self, bp: &BraidedPresentation) {
        self.bialgebra(&bp.bialgebra);
        let j = bp.to_json();
        self.line("braiding:");
        for rule in &j.braiding {
            self.line(format!("  Psi({} (x) {}) = {}", rule.left, rule.right, rule.image));
        }
        let rules: Vec<Value> = j.braiding.iter().map(|r| json!({"left": r.left, "right": r.right, "image": r.image})).collect();
        self.json.insert("braiding".into(), json!(rules));
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        for l in &self.body {
            writeln!(out, "{l}").unwrap();
        }
        let mut group: Option<&str> = None;
        for g in &self.golden {
            if group != Some(g.group.as_str()) {
                writeln!(out, "{}:", g.group).unwrap();
                group = Some(g.group.as_str());
            }
            writeln!(out, "  [{}] {}", if g.passed { "ok" } else { "FAIL" }, g.claim).unwrap();
        }
        for r in &self.reports {
            write!(out, "{r}").unwrap();
            if !out.ends_with('\n') {
                out.push('\n');
            }
        }
        writeln!(out, "result: {}", if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        let mut m = self.json.clone();
        m.insert("name".into(), json!(self.title));
        if !self.golden.is_empty() {
            let g: Vec<Value> = self.golden.iter().map(|g| json!({"group": g.group, "claim": g.claim, "passed": g.passed})).collect();
            m.insert("golden".into(), json!(g));
        }
        if !self.reports.is_empty() {
            let r: Vec<Value> = self.reports.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
            m.insert("reports".into(), json!(r));
            m.insert("passed".into(), json!(self.passed()));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
        s.push('\n');
        s
    }
}
