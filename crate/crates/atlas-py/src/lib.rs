//! Python bindings. Structured results cross the boundary as JSON text; each
//! wrapper exposes a `json` field or returns the document the CLI prints.

use std::collections::BTreeSet;
use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use c1_atlas::catalog::{Catalog as CoreCatalog, TgTable};
use c1_atlas::rootsys::{Root, RootSystem as CoreRootSystem, RootSystemType};
use c1_atlas::shapeops::SolvableModel;
use c1_atlas::{classify, cli, hasse, nilcon, verify};

fn err(e: c1_atlas::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(x: &T) -> PyResult<String> {
    serde_json::to_string(x).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn coeffs(x: &Root) -> Vec<i32> {
    x.coeffs().to_vec()
}

fn root_of(sys: &CoreRootSystem, v: Vec<i32>) -> PyResult<Root> {
    if v.len() != sys.rank() {
        return Err(PyValueError::new_err(format!(
            "expected {} coefficients, got {}",
            sys.rank(),
            v.len()
        )));
    }
    Ok(Root::new(v))
}

/// A root system; roots are lists of simple-root coefficients.
#[pyclass(frozen)]
struct RootSystem {
    inner: CoreRootSystem,
}

#[pymethods]
impl RootSystem {
    #[new]
    #[pyo3(signature = (rtype, rank=None))]
    fn new(rtype: &str, rank: Option<usize>) -> PyResult<Self> {
        let t = RootSystemType::parse(rtype, rank).map_err(err)?;
        Ok(Self {
            inner: CoreRootSystem::new(t),
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.rtype().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn positive_roots(&self) -> Vec<Vec<i32>> {
        self.inner.positives().iter().map(coeffs).collect()
    }

    fn is_root(&self, x: Vec<i32>) -> PyResult<bool> {
        Ok(self.inner.is_root(&root_of(&self.inner, x)?))
    }

    /// Level `level` of the grading defined by `α_j`.
    #[pyo3(signature = (j, level=1))]
    fn grading(&self, j: usize, level: u32) -> PyResult<Vec<Vec<i32>>> {
        if j == 0 || j > self.inner.rank() {
            return Err(err(c1_atlas::Error::BadIndex(j)));
        }
        let g = self.inner.grading(&self.inner.complement(j));
        Ok(g.level(level).iter().map(coeffs).collect())
    }

    /// The `beta`-string through `lam`, lowest term first.
    fn root_string(&self, lam: Vec<i32>, beta: Vec<i32>) -> PyResult<Vec<Vec<i32>>> {
        let l = root_of(&self.inner, lam)?;
        let b = root_of(&self.inner, beta)?;
        Ok(self.inner.root_string(&l, &b).map_err(err)?.iter().map(coeffs).collect())
    }

    #[pyo3(signature = (j, dot=false))]
    fn hasse(&self, j: usize, dot: bool) -> PyResult<String> {
        let h = hasse::hasse(&self.inner, j).map_err(err)?;
        Ok(if dot { h.render_dot() } else { h.render_text() })
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.rtype())
    }
}

#[pyclass(frozen, get_all)]
struct Verdict {
    space: String,
    j: usize,
    status: String,
    survivor: bool,
    witness: String,
    note: String,
    json: String,
}

impl Verdict {
    fn wrap(v: &nilcon::NCVerdict) -> PyResult<Self> {
        Ok(Self {
            space: v.space.clone(),
            j: v.j,
            status: v.status.to_string(),
            survivor: v.status.is_survivor(),
            witness: v.witness.to_string(),
            note: v.note.clone(),
            json: to_json(v)?,
        })
    }
}

#[pymethods]
impl Verdict {
    fn __repr__(&self) -> String {
        format!("Verdict({} j={}: {})", self.space, self.j, self.status)
    }
}

/// The catalog of irreducible spaces, built in or loaded from JSON.
#[pyclass(frozen)]
struct Catalog {
    inner: CoreCatalog,
    tg: Option<TgTable>,
}

#[pymethods]
impl Catalog {
    #[new]
    #[pyo3(signature = (path=None, tg_table=None))]
    fn new(path: Option<PathBuf>, tg_table: Option<PathBuf>) -> PyResult<Self> {
        let inner = match path {
            Some(p) => CoreCatalog::from_path(&p).map_err(err)?,
            None => CoreCatalog::builtin(),
        };
        let tg = tg_table.as_deref().map(TgTable::from_path).transpose().map_err(err)?;
        Ok(Self { inner, tg })
    }

    fn names(&self) -> Vec<String> {
        self.inner.entries().iter().map(|e| e.name.clone()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.entries().len()
    }

    fn entry_json(&self, name: &str) -> PyResult<String> {
        to_json(self.inner.get(name).map_err(err)?)
    }

    fn root_system(&self, name: &str) -> PyResult<RootSystem> {
        Ok(RootSystem {
            inner: self.inner.get(name).map_err(err)?.root_system(),
        })
    }

    fn analyze(&self, space: &str, j: usize) -> PyResult<Verdict> {
        let e = self.inner.get(space).map_err(err)?;
        Verdict::wrap(&nilcon::analyze(e, j).map_err(err)?)
    }

    #[pyo3(signature = (min_rank=2))]
    fn analyze_all(&self, py: Python<'_>, min_rank: usize) -> PyResult<Vec<Verdict>> {
        let v = py.detach(|| nilcon::analyze_all(&self.inner, min_rank)).map_err(err)?;
        v.iter().map(Verdict::wrap).collect()
    }

    /// Action families on the product of the named spaces, as JSON.
    fn classify(&self, spaces: Vec<String>) -> PyResult<String> {
        let names: Vec<&str> = spaces.iter().map(String::as_str).collect();
        to_json(&classify::classify_names(&self.inner, &names, self.tg.as_ref()).map_err(err)?)
    }

    fn classify_text(&self, spaces: Vec<String>) -> PyResult<String> {
        let names: Vec<&str> = spaces.iter().map(String::as_str).collect();
        Ok(classify::classify_names(&self.inner, &names, self.tg.as_ref())
            .map_err(err)?
            .render_text())
    }

    /// Runs the invariant suite; returns `(all_passed, report)`.
    fn verify(&self, py: Python<'_>) -> (bool, String) {
        let r = py.detach(|| verify::run_all(&self.inner));
        (r.iter().all(|c| c.passed), verify::render_text(&r))
    }
}

/// Shape operators of the orbit of `h_{j,w}` in a named matrix model
/// (`A2split`, `G2split`, `G2complex`, ...), as JSON. `w` is a list of
/// level-one roots; empty means `w = 0`.
#[pyfunction]
#[pyo3(signature = (model, j, w=Vec::new()))]
fn shape(model: &str, j: usize, w: Vec<Vec<i32>>) -> PyResult<String> {
    let m = SolvableModel::named(model).map_err(err)?;
    let w_arg = if w.is_empty() {
        "zero".to_string()
    } else {
        w.iter()
            .map(|v| v.iter().map(i32::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    };
    to_json(&cli::shape_report(model, &m, j, &w_arg).map_err(err)?)
}

#[pyfunction]
fn boundary_component(space: &str, phi: Vec<usize>) -> PyResult<String> {
    let cat = CoreCatalog::builtin();
    let e = cat.get(space).map_err(err)?;
    let phi: BTreeSet<usize> = phi.into_iter().collect();
    to_json(&c1_atlas::catalog::boundary_component(e, &phi).map_err(err)?)
}

#[pymodule]
fn c1_atlas_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RootSystem>()?;
    m.add_class::<Catalog>()?;
    m.add_class::<Verdict>()?;
    m.add_function(wrap_pyfunction!(shape, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_component, m)?)?;
    Ok(())
}
