//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes plain arguments and returns a JSON string.
//! The JSON-producing cores are ordinary Rust functions so they can be
//! tested natively; the `#[wasm_bindgen]` wrappers only convert errors.

use std::collections::BTreeMap;

use cremona::io::parse_matrix;
use cremona::{census, FamilySpec, MonomialMap, Walk, WalkConfig};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Enumerations above this many combinations are refused in the browser.
pub const MAX_BROWSER_COMBINATIONS: u64 = 50_000_000;
pub const MAX_BROWSER_STEPS: usize = 500_000;

#[derive(Serialize)]
pub struct MapReport {
    pub n: usize,
    pub degree: i64,
    pub reduced: Vec<Vec<i64>>,
    pub lattice_det: i64,
    pub birational: bool,
    pub inverse: Option<Vec<Vec<i64>>>,
    pub d_prime: Option<i64>,
    pub predicted_d_prime: Option<i64>,
}

#[derive(Serialize)]
pub struct HistogramReport {
    pub n: usize,
    pub d: i64,
    pub total_combinations: u64,
    pub surviving: u64,
    pub rows: Vec<(i64, u64)>,
    pub gaps: Vec<i64>,
}

#[derive(Serialize)]
pub struct WalkReport {
    pub n: usize,
    pub steps: usize,
    pub operations: u64,
    pub restarts: u64,
    /// `(d, d', count)`, sorted.
    pub pairs: Vec<(i64, i64, u64)>,
}

fn describe(f: &MonomialMap, predicted: Option<i64>) -> Result<MapReport, String> {
    let lattice_det = f.lattice_det().map_err(|e| e.to_string())?;
    let birational = lattice_det.abs() == 1;
    let inverse = if birational {
        Some(f.invert().map_err(|e| e.to_string())?)
    } else {
        None
    };
    Ok(MapReport {
        n: f.n(),
        degree: f.degree(),
        reduced: f.log_matrix().to_rows(),
        lattice_det,
        birational,
        d_prime: inverse.as_ref().map(|r| r.inverse_degree),
        inverse: inverse.map(|r| r.inverse.log_matrix().to_rows()),
        predicted_d_prime: predicted,
    })
}

pub fn inspect(text: &str) -> Result<MapReport, String> {
    let m = parse_matrix(text).map_err(|e| e.to_string())?;
    let f = MonomialMap::from_log_matrix(m).map_err(|e| e.to_string())?;
    describe(&f, None)
}

pub fn family(name: &str, n: usize, d: i64) -> Result<MapReport, String> {
    let spec = FamilySpec::new(name.parse().map_err(|e: cremona::Error| e.to_string())?, n, d)
        .map_err(|e| e.to_string())?;
    let f = spec.build().map_err(|e| e.to_string())?;
    describe(&f, Some(spec.predicted_inverse_degree().map_err(|e| e.to_string())?))
}

pub fn histogram(n: usize, d: i64) -> Result<HistogramReport, String> {
    let c = census::Census::new(n, d).map_err(|e| e.to_string())?;
    if c.total_combinations() > MAX_BROWSER_COMBINATIONS {
        return Err(format!(
            "{} combinations is too many for the browser; use the command-line tool",
            c.total_combinations()
        ));
    }
    let r = c.enumerate(1).map_err(|e| e.to_string())?;
    Ok(HistogramReport {
        n,
        d,
        total_combinations: r.total_combinations,
        surviving: r.surviving,
        rows: r.histogram.rows(),
        gaps: r.gaps,
    })
}

pub fn walk(n: usize, steps: usize, seed: u64, d_max: i64, max_multiple: i64) -> Result<WalkReport, String> {
    if steps > MAX_BROWSER_STEPS {
        return Err(format!("at most {MAX_BROWSER_STEPS} steps in the browser"));
    }
    let config = WalkConfig { n, max_multiple, d_max, steps, seed };
    let mut w = Walk::new(config).map_err(|e| e.to_string())?;
    let mut occupancy: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for s in w.by_ref() {
        *occupancy.entry((s.d, s.d_prime)).or_default() += 1;
    }
    let stats = w.stats();
    Ok(WalkReport {
        n,
        steps,
        operations: stats.operations,
        restarts: stats.degree_restarts + stats.overflow_restarts,
        pairs: occupancy.into_iter().map(|((d, dp), c)| (d, dp, c)).collect(),
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    r.map(|v| serde_json::to_string(&v).expect("reports serialize"))
        .map_err(|e| JsError::new(&e))
}

/// Reduces, checks and inverts a log-matrix given as text.
#[wasm_bindgen(js_name = inspectMatrix)]
pub fn inspect_matrix(text: &str) -> Result<String, JsError> {
    to_js(inspect(text))
}

#[wasm_bindgen(js_name = familyMap)]
pub fn family_map(name: &str, n: usize, d: i32) -> Result<String, JsError> {
    to_js(family(name, n, i64::from(d)))
}

/// Inverse-degree histogram of all degree-`d` maps on P^n.
#[wasm_bindgen(js_name = inverseDegreeHistogram)]
pub fn inverse_degree_histogram(n: usize, d: i32) -> Result<String, JsError> {
    to_js(histogram(n, i64::from(d)))
}

/// Occupancy of `(d, d')` pairs along a seeded GL_n(Z) walk.
#[wasm_bindgen(js_name = walkOccupancy)]
pub fn walk_occupancy(n: usize, steps: usize, seed: u32, d_max: i32, max_multiple: i32) -> Result<String, JsError> {
    to_js(walk(n, steps, u64::from(seed), i64::from(d_max), i64::from(max_multiple)))
}
