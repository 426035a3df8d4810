//! Browser bindings: load a `.gsg` table, reduce words with a step trace,
//! draw the Σ Cayley table, and run the transfer and Green checks.
//!
//! All results cross the boundary as JSON strings. The logic lives in
//! [`Session`] so it can be tested without a JS runtime.

use gamma_sigma::ideals::check_green_theorem;
use gamma_sigma::instances;
use gamma_sigma::rewrite::reduce_traced;
use gamma_sigma::simple::{check_transfer, TransferMode};
use gamma_sigma::{funcomp, parse_gsg, to_gsg, GammaSemigroup, Sigma, SigmaElement, Word};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest Σ the page will tabulate.
pub const MAX_TABLE: usize = 400;

#[derive(Serialize)]
struct Preset {
    name: String,
    gsg: String,
}

#[derive(Serialize)]
struct TraceStep {
    rule: String,
    position: usize,
    after: String,
}

#[derive(Serialize)]
struct Trace {
    input: String,
    steps: Vec<TraceStep>,
    normal_form: String,
    element: String,
    shape: &'static str,
}

#[derive(Serialize)]
struct TableView {
    size: usize,
    labels: Vec<String>,
    shapes: Vec<&'static str>,
    /// Row-major product indices.
    product: Vec<usize>,
}

#[derive(Serialize)]
struct DerivedView {
    gamma: usize,
    completely_simple: bool,
    group: bool,
    zero: Option<usize>,
    kernel_size: usize,
}

#[derive(Serialize)]
struct GreenEntry {
    x: usize,
    premise: bool,
    group: Option<bool>,
}

#[derive(Serialize)]
struct Report {
    s: usize,
    gamma: usize,
    gamma0: usize,
    sigma_size: usize,
    premise_cs: bool,
    premise_group: bool,
    transfer_cs: bool,
    transfer_group: bool,
    derived: Vec<DerivedView>,
    sigma_prime_cs: Option<bool>,
    green: Vec<GreenEntry>,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// Named instances as `.gsg` text.
pub fn preset_list() -> String {
    let presets: Vec<Preset> = instances::catalogue()
        .into_iter()
        .map(|(name, gs)| Preset {
            name: name.to_string(),
            gsg: to_gsg(&gs),
        })
        .collect();
    json(&presets)
}

pub fn funcomp_text(a: usize, b: usize) -> Result<String, String> {
    funcomp(a, b).map(|gs| to_gsg(&gs)).map_err(|e| e.to_string())
}

#[derive(Debug)]
pub struct Session {
    gs: GammaSemigroup,
    sigma: Option<Sigma>,
}

impl Session {
    pub fn load(text: &str) -> Result<Session, String> {
        let gs = parse_gsg(text).map_err(|e| e.to_string())?;
        let report = gs.validate();
        if !report.is_ok() {
            let first = report.violations.first().map(|v| v.to_string()).unwrap_or_default();
            return Err(format!(
                "not a Γ-semigroup ({} violations): {first}",
                report.violations.len()
            ));
        }
        Ok(Session { gs, sigma: None })
    }

    fn sigma(&mut self) -> Result<&Sigma, String> {
        if self.sigma.is_none() {
            let sigma = Sigma::with_cap(&self.gs, MAX_TABLE);
            sigma.semigroup().map_err(|e| e.to_string())?;
            self.sigma = Some(sigma);
        }
        Ok(self.sigma.as_ref().unwrap())
    }

    pub fn reduce(&self, tokens: &str) -> Result<String, String> {
        let w: Word = tokens
            .parse()
            .map_err(|e: gamma_sigma::rewrite::WordError| e.to_string())?;
        w.check(&self.gs).map_err(|e| e.to_string())?;
        let (nf, steps) = reduce_traced(&self.gs, &w);
        let element = gamma_sigma::sigma::classify_normal_form(&self.gs, &nf).map_err(|e| e.to_string())?;
        Ok(json(&Trace {
            input: w.to_string(),
            steps: steps
                .iter()
                .map(|s| TraceStep {
                    rule: s.redex.rule.to_string(),
                    position: s.redex.position,
                    after: s.after.to_string(),
                })
                .collect(),
            normal_form: nf.to_string(),
            element: element.to_string(),
            shape: element.shape(),
        }))
    }

    pub fn table(&mut self) -> Result<String, String> {
        let sigma = self.sigma()?;
        let elems: Vec<SigmaElement> = sigma.elements().collect();
        let table = sigma.semigroup().map_err(|e| e.to_string())?;
        Ok(json(&TableView {
            size: elems.len(),
            labels: elems.iter().map(|e| e.to_string()).collect(),
            shapes: elems.iter().map(|e| e.shape()).collect(),
            product: table.table().to_vec(),
        }))
    }

    pub fn report(&mut self) -> Result<String, String> {
        let (n, m, g0) = (self.gs.s_size(), self.gs.gamma_size(), self.gs.gamma0());
        let sigma = self.sigma()?;
        let cs = check_transfer(sigma, TransferMode::CompletelySimple).map_err(|e| e.to_string())?;
        let group = check_transfer(sigma, TransferMode::Group).map_err(|e| e.to_string())?;
        let green = check_green_theorem(sigma).map_err(|e| e.to_string())?;
        Ok(json(&Report {
            s: n,
            gamma: m,
            gamma0: g0,
            sigma_size: sigma.len(),
            premise_cs: cs.premise,
            premise_group: group.premise,
            transfer_cs: cs.passed(),
            transfer_group: group.passed(),
            derived: cs
                .derived
                .iter()
                .map(|d| DerivedView {
                    gamma: d.gamma,
                    completely_simple: d.completely_simple,
                    group: d.group,
                    zero: d.zero,
                    kernel_size: d.kernel_size,
                })
                .collect(),
            sigma_prime_cs: cs.sigma_prime.map(|p| p.completely_simple),
            green: green
                .entries
                .iter()
                .map(|e| GreenEntry {
                    x: e.x,
                    premise: e.premise.is_some(),
                    group: e.group.map(|g| g && e.sigma_group == Some(true)),
                })
                .collect(),
        }))
    }
}

#[wasm_bindgen]
pub fn presets() -> String {
    preset_list()
}

#[wasm_bindgen]
pub fn funcomp_gsg(a: usize, b: usize) -> Result<String, JsError> {
    funcomp_text(a, b).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub struct Explorer {
    inner: Session,
}

#[wasm_bindgen]
impl Explorer {
    #[wasm_bindgen(constructor)]
    pub fn new(gsg: &str) -> Result<Explorer, JsError> {
        Session::load(gsg)
            .map(|inner| Explorer { inner })
            .map_err(|e| JsError::new(&e))
    }

    pub fn reduce(&self, tokens: &str) -> Result<String, JsError> {
        self.inner.reduce(tokens).map_err(|e| JsError::new(&e))
    }

    pub fn table(&mut self) -> Result<String, JsError> {
        self.inner.table().map_err(|e| JsError::new(&e))
    }

    pub fn report(&mut self) -> Result<String, JsError> {
        self.inner.report().map_err(|e| JsError::new(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    const E4: &str = "S 2\nGAMMA 1\nTABLE 0\n0 1\n1 0\n";

    #[test]
    fn presets_load() {
        let list = parse(&preset_list());
        let arr = list.as_array().unwrap();
        assert!(arr.len() >= 6);
        for p in arr {
            Session::load(p["gsg"].as_str().unwrap()).unwrap();
        }
    }

    #[test]
    fn reduce_trace() {
        let s = Session::load(E4).unwrap();
        let t = parse(&s.reduce("s1 g0 s1").unwrap());
        assert_eq!(t["element"], "x0");
        assert_eq!(t["shape"], "x");
        assert_eq!(t["steps"].as_array().unwrap().len(), 1);
        assert!(s.reduce("s5").is_err());
        assert!(s.reduce("").is_err());
    }

    #[test]
    fn table_view() {
        let mut s = Session::load(&to_gsg(&instances::e3())).unwrap();
        let t = parse(&s.table().unwrap());
        assert_eq!(t["size"], 9);
        assert_eq!(t["product"].as_array().unwrap().len(), 81);
        assert_eq!(t["labels"][0], "x0");
    }

    #[test]
    fn report_on_null_sandwich() {
        let mut s = Session::load(&to_gsg(&instances::null_sandwich())).unwrap();
        let r = parse(&s.report().unwrap());
        assert_eq!(r["premise_cs"], false);
        assert_eq!(r["transfer_cs"], true);
        assert!(r["derived"].as_array().unwrap().is_empty());
    }

    #[test]
    fn report_on_e4_prime() {
        let mut s = Session::load(&to_gsg(&instances::e4_prime())).unwrap();
        let r = parse(&s.report().unwrap());
        assert_eq!(r["premise_group"], true);
        assert_eq!(r["transfer_group"], true);
        assert_eq!(r["sigma_prime_cs"], true);
        assert_eq!(r["derived"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Session::load("S 2\nGAMMA 1\nTABLE 0\n1 1\n1 0\n")
            .unwrap_err()
            .contains("violations"));
        assert!(Session::load("S 2\n").is_err());
        let mut big = Session::load(&funcomp_text(2, 3).unwrap()).unwrap();
        assert!(big.table().is_err());
        assert!(funcomp_text(0, 1).is_err());
    }
}
