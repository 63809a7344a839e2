//! Python bindings: run .sm programs and call the main invariants directly.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use intermul::dsl::{self, Overrides};
use intermul::field::FieldSpec;
use intermul::homology;
use intermul::module::FPModule;
use intermul::multiplicity;
use intermul::resolution::free_resolution;
use intermul::ring::{parse_polynomial, MonomialOrder, Polynomial, QuotientRing};
use intermul::EngineError;

fn err(e: EngineError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn build_pair(
    vars: Vec<String>,
    p: Vec<String>,
    q: Vec<String>,
) -> PyResult<(FPModule, FPModule)> {
    let spec = intermul::ring::RingSpec::new(FieldSpec::QQ, vars, MonomialOrder::Grevlex)
        .map_err(err)?;
    let ring = QuotientRing::polynomial(&spec);
    let parse = |gens: Vec<String>| -> PyResult<Vec<Polynomial>> {
        gens.iter()
            .map(|t| parse_polynomial(&spec, t).map_err(err))
            .collect()
    };
    let m = FPModule::cyclic(&ring, parse(p)?).map_err(err)?;
    let n = FPModule::cyclic(&ring, parse(q)?).map_err(err)?;
    Ok((m, n))
}

/// Runs a .sm program; returns (records as JSON strings, exit code).
#[pyfunction]
#[pyo3(signature = (src, field=None, order=None))]
fn run_program(src: &str, field: Option<&str>, order: Option<&str>) -> PyResult<(Vec<String>, i32)> {
    let field = match field {
        None => None,
        Some("qq") => Some(FieldSpec::QQ),
        Some(s) => match s.strip_prefix("fp:").and_then(|p| p.parse::<u32>().ok()) {
            Some(p) => Some(FieldSpec::prime_field(p).map_err(err)?),
            None => return Err(PyValueError::new_err(format!("field must be qq or fp:P, got '{s}'"))),
        },
    };
    let order = match order {
        None => None,
        Some("grevlex") => Some(MonomialOrder::Grevlex),
        Some("lex") => Some(MonomialOrder::Lex),
        Some(s) => return Err(PyValueError::new_err(format!("order must be grevlex or lex, got '{s}'"))),
    };
    let session = dsl::parse_program(src, &Overrides { field, order }).map_err(err)?;
    let out = dsl::run_session(&session);
    Ok((out.records.iter().map(|r| r.to_string()).collect(), out.exit))
}

/// chi of the cyclic pair (S/p, S/q) over QQ[vars] with grevlex.
#[pyfunction]
fn chi(vars: Vec<String>, p: Vec<String>, q: Vec<String>) -> PyResult<i64> {
    let (m, n) = build_pair(vars, p, q)?;
    multiplicity::chi(&m, &n).map_err(err)
}

/// Tor lengths of (S/p, S/q) up to homological degree `upto`.
#[pyfunction]
fn tor_lengths(vars: Vec<String>, p: Vec<String>, q: Vec<String>, upto: usize) -> PyResult<Vec<u64>> {
    let (m, n) = build_pair(vars, p, q)?;
    Ok(homology::tor(&m, &n, upto).map_err(err)?.lengths)
}

/// Betti ranks of the minimal free resolution of S/p, up to length `max_len`.
#[pyfunction]
fn betti_ranks(vars: Vec<String>, p: Vec<String>, max_len: usize) -> PyResult<Vec<usize>> {
    let spec = intermul::ring::RingSpec::new(FieldSpec::QQ, vars, MonomialOrder::Grevlex)
        .map_err(err)?;
    let ring = QuotientRing::polynomial(&spec);
    let gens: Vec<Polynomial> = p
        .iter()
        .map(|t| parse_polynomial(&spec, t).map_err(err))
        .collect::<PyResult<_>>()?;
    let m = FPModule::cyclic(&ring, gens).map_err(err)?;
    let res = free_resolution(&m, max_len).map_err(err)?;
    Ok(res.betti_table().ranks())
}

/// Full Serre-pair report for (S/p, S/q) as a JSON string.
#[pyfunction]
fn verify(vars: Vec<String>, p: Vec<String>, q: Vec<String>) -> PyResult<String> {
    let (m, n) = build_pair(vars, p, q)?;
    let report = multiplicity::verify_serre_pair(&m, &n).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn intermul_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run_program, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(tor_lengths, m)?)?;
    m.add_function(wrap_pyfunction!(betti_ranks, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
