use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use enrich_core::enriched;
use enrich_core::fan;
use enrich_core::io;
use enrich_core::moduli;
use enrich_core::toric;
use enrich_core::verify;
use enrich_core::{cone, corpus, Error, Preorder, WeightedGraph};

create_exception!(enrich, GuardError, PyValueError);

fn to_py(e: Error) -> PyErr {
    if e.is_guard() {
        GuardError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// A weighted multigraph with labelled edges.
#[pyclass(name = "Graph", module = "enrich", frozen)]
struct PyGraph {
    inner: WeightedGraph,
}

#[pymethods]
impl PyGraph {
    /// Parses the text format (`name: u v` lines) or JSON.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        io::parse_graph(text).map(|inner| Self { inner }).map_err(to_py)
    }

    /// A built-in example graph by name.
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        corpus::weighted_by_name(name)
            .map(|inner| Self { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown corpus graph {name:?}")))
    }

    #[staticmethod]
    fn corpus_names() -> Vec<&'static str> {
        corpus::names()
    }

    #[getter]
    fn edges(&self) -> Vec<String> {
        self.inner.graph().edge_list().iter().map(|e| e.to_string()).collect()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.graph().vertices().iter().map(|v| v.to_string()).collect()
    }

    #[getter]
    fn genus(&self) -> PyResult<usize> {
        self.inner.genus().map_err(to_py)
    }

    fn is_stable(&self) -> bool {
        self.inner.is_stable()
    }

    fn is_biconnected(&self) -> bool {
        self.inner.graph().is_biconnected()
    }

    /// Edge sets of the bonds.
    fn bonds(&self) -> PyResult<Vec<Vec<String>>> {
        let bonds = self.inner.graph().bonds().map_err(to_py)?;
        Ok(bonds
            .iter()
            .map(|b| b.edges.iter().map(|e| e.to_string()).collect())
            .collect())
    }

    /// Every enriched structure, or only the generic ones.
    #[pyo3(signature = (generic = false))]
    fn enriched(&self, generic: bool) -> PyResult<Vec<PyEnriched>> {
        let g = self.inner.graph();
        let all = if generic {
            enriched::enumerate_generic(g)
        } else {
            enriched::enumerate_enriched(g)
        };
        Ok(all.map_err(to_py)?.into_iter().map(|inner| PyEnriched { inner }).collect())
    }

    fn is_enriched(&self, preorder: &str) -> PyResult<bool> {
        let g = self.inner.graph();
        let p = Preorder::parse(g.edge_list(), preorder).map_err(to_py)?;
        enriched::is_enriched(g, &p).map_err(to_py)
    }

    /// The enriched structure whose open cone contains the point.
    /// Coordinates are ints or fraction strings such as `"3/2"`.
    fn locate(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<PyEnriched> {
        let x = point
            .iter()
            .map(|c| {
                let s = c.str()?.to_string();
                s.trim()
                    .parse::<BigRational>()
                    .map_err(|_| PyValueError::new_err(format!("not a rational: {s}")))
            })
            .collect::<PyResult<Vec<_>>>()?;
        fan::locate(self.inner.graph(), &x)
            .map(|inner| PyEnriched { inner })
            .map_err(to_py)
    }

    /// The fan of the graph as JSON; the quotient fan when `quotient` is set.
    #[pyo3(signature = (quotient = false, via_star = false))]
    fn fan_json(&self, quotient: bool, via_star: bool) -> PyResult<String> {
        let g = self.inner.graph();
        let f = match (quotient, via_star) {
            (true, _) => fan::sigma_y(g),
            (false, true) => fan::fan_via_star(g),
            (false, false) => fan::fan_sigma(g),
        };
        Ok(json_text(&f.map_err(to_py)?.to_json()))
    }

    /// Relations among the bond coordinates, one rendered equation each.
    fn toric_equations(&self) -> PyResult<Vec<String>> {
        Ok(toric::equations(self.inner.graph()).map_err(to_py)?.rendered())
    }

    fn kernel_ok(&self) -> PyResult<bool> {
        toric::verify_kernel(self.inner.graph()).map_err(to_py)
    }

    fn to_text(&self) -> String {
        io::to_text(&self.inner)
    }

    fn to_dot(&self) -> String {
        io::to_dot(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.graph().num_vertices(),
            self.inner.graph().num_edges()
        )
    }
}

/// A graph with an enriched preorder on its edges.
#[pyclass(name = "EnrichedGraph", module = "enrich", frozen)]
struct PyEnriched {
    inner: enriched::EnrichedGraph,
}

#[pymethods]
impl PyEnriched {
    #[getter]
    fn preorder(&self) -> String {
        self.inner.preorder().describe()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn is_generic(&self) -> bool {
        self.inner.is_generic()
    }

    /// Ray generators of the closed cone, one coordinate per edge.
    fn rays(&self) -> Vec<Vec<i64>> {
        cone::ray_generators(&self.inner)
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).expect("small ray entry")).collect())
            .collect()
    }

    /// Pairs of contracted edges and target preorder.
    fn specializations(&self) -> PyResult<Vec<(Vec<String>, String)>> {
        let sps = enriched::specializations_of(&self.inner).map_err(to_py)?;
        Ok(sps
            .iter()
            .map(|sp| {
                (
                    sp.contracted.iter().map(|e| e.to_string()).collect(),
                    sp.target.preorder().describe(),
                )
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("EnrichedGraph({:?}, rank {})", self.inner.preorder().describe(), self.inner.rank())
    }
}

/// Cells of the tropical moduli space of genus `g` as JSON.
#[pyfunction]
fn moduli_cells(g: usize) -> PyResult<String> {
    Ok(json_text(&moduli::enumerate_cells(g).map_err(to_py)?.cells_json()))
}

/// Runs the invariant suite; returns whether it passed and the report text.
#[pyfunction]
#[pyo3(signature = (seed = verify::DEFAULT_SEED))]
fn verify_all(py: Python<'_>, seed: u64) -> (bool, String) {
    let report = py.detach(|| verify::verify_all(seed));
    (report.passed(), report.to_text())
}

#[pymodule]
fn enrich(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyEnriched>()?;
    m.add_function(wrap_pyfunction!(moduli_cells, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add("GuardError", m.py().get_type::<GuardError>())?;
    Ok(())
}
