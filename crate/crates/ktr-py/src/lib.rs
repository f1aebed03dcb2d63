//! Python bindings: `Instance` wraps a reliability instance with the three
//! solvers; module functions expose the edge-cover reduction.

use ktr_core::error::Error;
use ktr_core::exact::ktr_exact_report;
use ktr_core::fmt::{emit_bipartite, emit_instance, emit_reduction, parse_instance, ParsedInput};
use ktr_core::gen::generate_instance;
use ktr_core::hardness::{self, BipartiteGraph};
use ktr_core::model::ReliabilityInstance;
use ktr_core::oracle::{ktr_brute, ktr_monte_carlo, MC_PRNG};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_reliability(text: &str) -> PyResult<ReliabilityInstance> {
    match parse_instance(text).map_err(to_py_err)? {
        ParsedInput::Instance(inst) => Ok(inst),
        ParsedInput::Bipartite(_) => Err(PyValueError::new_err(
            "expected a PCA or CHD instance, got a BIP graph",
        )),
    }
}

fn parse_graph(text: &str) -> PyResult<BipartiteGraph> {
    match parse_instance(text).map_err(to_py_err)? {
        ParsedInput::Bipartite(b) => Ok(b),
        ParsedInput::Instance(_) => Err(PyValueError::new_err(
            "expected a BIP graph, got a reliability instance",
        )),
    }
}

/// A reliability instance: an intersection model, per-vertex failure
/// probabilities, and a target set.
#[pyclass(module = "ktr_py", skip_from_py_object)]
struct Instance {
    inner: ReliabilityInstance,
}

#[pymethods]
impl Instance {
    /// Parse a PCA or CHD text instance.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Instance {
            inner: parse_reliability(text)?,
        })
    }

    /// Generate a random proper circular-arc instance, deterministic per seed.
    #[staticmethod]
    #[pyo3(signature = (n, k, reach=3, seed=0))]
    fn generate(n: u32, k: u32, reach: u32, seed: u64) -> PyResult<Self> {
        Ok(Instance {
            inner: generate_instance(n, k, reach, seed).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn targets(&self) -> Vec<u32> {
        self.inner.targets().to_vec()
    }

    #[getter]
    fn q(&self) -> Vec<f64> {
        self.inner.q().to_vec()
    }

    /// Exact reliability (proper circular-arc instances only).
    fn exact(&self) -> PyResult<f64> {
        Ok(ktr_exact_report(&self.inner).map_err(to_py_err)?.value)
    }

    /// Exact reliability plus the inner-loop step counter.
    fn exact_with_steps(&self) -> PyResult<(f64, u64)> {
        let report = ktr_exact_report(&self.inner).map_err(to_py_err)?;
        Ok((report.value, report.steps))
    }

    /// Exhaustive reliability over all failure subsets.
    fn brute(&self) -> PyResult<f64> {
        ktr_brute(&self.inner).map_err(to_py_err)
    }

    /// Seeded Monte Carlo estimate; returns (estimate, standard_error).
    #[pyo3(signature = (samples, seed=0))]
    fn monte_carlo(&self, samples: u64, seed: u64) -> PyResult<(f64, f64)> {
        let est = ktr_monte_carlo(&self.inner, samples, seed).map_err(to_py_err)?;
        Ok((est.estimate, est.std_error))
    }

    /// The same instance with all circle positions shifted clockwise.
    fn rotated(&self, shift: u32) -> Self {
        Instance {
            inner: self.inner.rotated(shift),
        }
    }

    /// Serialize back to PCA/CHD text.
    fn to_text(&self) -> String {
        emit_instance(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, k={})",
            self.inner.vertex_count(),
            self.inner.target_count()
        )
    }
}

/// Number of edge covers of a BIP-format bipartite graph.
#[pyfunction]
fn count_edge_covers(text: &str) -> PyResult<u64> {
    hardness::count_edge_covers(&parse_graph(text)?).map_err(to_py_err)
}

/// Compile a BIP-format bipartite graph into its circle representation,
/// returned as CHD text with a role map in comments.
#[pyfunction]
fn reduce_bipartite(text: &str) -> PyResult<String> {
    let red = hardness::build_circle_rep(&parse_graph(text)?).map_err(to_py_err)?;
    Ok(emit_reduction(&red))
}

/// Certify |EC(B)| = |SS(C)| = R * 2^|E(B)| on a BIP-format graph; returns
/// (edge_covers, success_sets, reliability, pass).
#[pyfunction]
fn verify_reduction(text: &str) -> PyResult<(u64, u64, f64, bool)> {
    let report = hardness::verify_identity(&parse_graph(text)?).map_err(to_py_err)?;
    Ok((
        report.edge_covers,
        report.success_sets,
        report.reliability,
        report.pass,
    ))
}

/// Serialize a bipartite graph given as an edge list.
#[pyfunction]
fn bipartite_text(left: u32, right: u32, edges: Vec<(u32, u32)>) -> PyResult<String> {
    let b = BipartiteGraph::new(left, right, edges).map_err(to_py_err)?;
    Ok(emit_bipartite(&b))
}

#[pymodule]
fn ktr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(count_edge_covers, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(verify_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_text, m)?)?;
    m.add("MC_PRNG", MC_PRNG)?;
    Ok(())
}
