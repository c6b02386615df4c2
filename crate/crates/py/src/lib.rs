//! Python bindings: `import endotriv`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use endotriv::cli::args::{parse_field, parse_group};
use endotriv::cli::compute_t_report;
use endotriv::exactlin::{smith_normal_form as snf, ZMatrix};
use endotriv::modrep::{self, ModuleRecipe};
use endotriv::picard;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Report for a problem file's JSON text. Returns `(report_json, ambiguous)`.
#[pyfunction]
#[pyo3(signature = (problem_json, verify = false))]
pub fn compute_t(problem_json: &str, verify: bool) -> PyResult<(String, bool)> {
    let (report, _, ambiguous) = compute_t_report(problem_json.as_bytes(), verify).map_err(err)?;
    Ok((serde_json::to_string(&report).map_err(err)?, ambiguous))
}

#[pyfunction]
#[pyo3(signature = (group, field, module = "syzygy(trivial)"))]
pub fn is_endotrivial(group: &str, field: &str, module: &str) -> PyResult<bool> {
    let g = parse_group(group).map_err(err)?;
    let k = parse_field(field).map_err(err)?;
    let m = ModuleRecipe::parse(module).map_err(err)?.build(&g, &k).map_err(err)?;
    modrep::is_endotrivial(&m).map_err(err)
}

/// `dim Ĥ⁰(G; k)`.
#[pyfunction]
pub fn tate_h0(group: &str, field: &str) -> PyResult<usize> {
    let g = parse_group(group).map_err(err)?;
    let k = parse_field(field).map_err(err)?;
    Ok(modrep::tate_h0(&g, &k).dim)
}

/// Invariant factors of an integer matrix.
#[pyfunction]
pub fn smith_normal_form(rows: Vec<Vec<i64>>) -> PyResult<Vec<String>> {
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    let m = ZMatrix::from_rows(&rows);
    Ok(snf(&m).invariant_factors().iter().map(|d| d.to_string()).collect())
}

/// `(structure, invariant_factors)` of the registry entry; 0 means Z.
#[pyfunction]
pub fn t_group(group: &str, field: &str) -> PyResult<(String, Vec<u64>)> {
    let g = parse_group(group).map_err(err)?;
    let k = parse_field(field).map_err(err)?;
    let t = picard::t_group(&g, &k).map_err(err)?;
    Ok((t.structure.to_string(), t.structure.factors().to_vec()))
}

#[pymodule]
#[pyo3(name = "endotriv")]
fn endotriv_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(compute_t, m)?)?;
    m.add_function(wrap_pyfunction!(is_endotrivial, m)?)?;
    m.add_function(wrap_pyfunction!(tate_h0, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(t_group, m)?)?;
    Ok(())
}
