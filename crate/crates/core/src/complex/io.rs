use serde::{Deserialize, Serialize};

use super::{Boundary, CellComplex, FaceTag, Handle, VertexId, Walk};
use crate::error::{Error, Result};

pub const FORMAT_NAME: &str = "highgenus-surface";
pub const FORMAT_VERSION: &str = "1.0";

/// Plain-table image of a complex. Tables appear in id order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct ComplexRecord {
    vertex_count: usize,
    edges: Vec<[VertexId; 2]>,
    faces: Vec<Walk>,
    face_tags: Vec<FaceTag>,
    boundaries: Vec<Boundary>,
    handles: Vec<Handle>,
    next_boundary_id: usize,
}

impl From<&CellComplex> for ComplexRecord {
    fn from(c: &CellComplex) -> Self {
        ComplexRecord {
            vertex_count: c.vertex_count,
            edges: c.edges.clone(),
            faces: c.faces.clone(),
            face_tags: c.face_tags.clone(),
            boundaries: c.boundaries.clone(),
            handles: c.handles.clone(),
            next_boundary_id: c.next_boundary_id,
        }
    }
}

impl TryFrom<ComplexRecord> for CellComplex {
    type Error = Error;

    fn try_from(r: ComplexRecord) -> Result<Self> {
        if r.face_tags.len() != r.faces.len() {
            return Err(Error::Format(
                "face tag table length differs from face table".into(),
            ));
        }
        let min_next = r.boundaries.iter().map(|b| b.id + 1).max().unwrap_or(0);
        let c = CellComplex {
            vertex_count: r.vertex_count,
            edges: r.edges,
            faces: r.faces,
            face_tags: r.face_tags,
            boundaries: r.boundaries,
            handles: r.handles,
            next_boundary_id: r.next_boundary_id.max(min_next),
        };
        c.check_structure()
            .map_err(|e| Error::Format(e.to_string()))?;
        Ok(c)
    }
}

/// Versioned surface file: the complex plus the parameters and seed that
/// produced it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub format: String,
    pub version: String,
    /// Construction parameters, echoed verbatim.
    pub blueprint: serde_json::Value,
    pub seed: Option<u64>,
    complex: ComplexRecord,
}

impl SurfaceFile {
    pub fn new(complex: &CellComplex, blueprint: serde_json::Value, seed: Option<u64>) -> Self {
        SurfaceFile {
            format: FORMAT_NAME.to_string(),
            version: FORMAT_VERSION.to_string(),
            blueprint,
            seed,
            complex: complex.into(),
        }
    }

    pub fn complex(&self) -> Result<CellComplex> {
        self.complex.clone().try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Parses a surface file. Files with a different major version are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let head: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let format = head
            .get("format")
            .and_then(|v| v.as_str())
            .unwrap_or_default();
        if format != FORMAT_NAME {
            return Err(Error::Format(format!("unknown format {format:?}")));
        }
        let version = head
            .get("version")
            .and_then(|v| v.as_str())
            .unwrap_or_default();
        let major = |s: &str| s.split('.').next().map(str::to_string);
        if major(version) != major(FORMAT_VERSION) {
            return Err(Error::UnsupportedVersion(version.to_string()));
        }
        let file: SurfaceFile =
            serde_json::from_value(head).map_err(|e| Error::Format(e.to_string()))?;
        file.complex()?;
        Ok(file)
    }
}
