//! Graded modules presented by per-degree dimensions and multiplication maps.
//!
//! A table describes a module over the symmetric algebra of an n-dimensional
//! space V by giving, for every degree q in a window [q_min, q_max], the
//! dimension of the graded piece and, for every basis vector of V, the matrix
//! of multiplication into the next degree. Degrees below q_min are zero by
//! convention; degrees above q_max are unknown and operations that would need
//! them fail loudly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::{rational_from_str, rational_to_string};

#[derive(Clone, Debug)]
pub struct GradedModuleTable {
    n: usize,
    q_min: i64,
    q_max: i64,
    dims: Vec<usize>,
    /// mult[q - q_min][j]: multiplication by the j-th basis vector of V,
    /// a (dim M_{q+1}) x (dim M_q) matrix, for q_min <= q < q_max.
    mult: Vec<Vec<RationalMatrix>>,
}

impl GradedModuleTable {
    pub fn new(
        n: usize,
        q_min: i64,
        q_max: i64,
        dims: Vec<usize>,
        mult: Vec<Vec<RationalMatrix>>,
    ) -> Result<Self> {
        if q_max < q_min {
            return Err(Error::invalid(format!(
                "empty degree window: q_min = {q_min}, q_max = {q_max}"
            )));
        }
        let width = (q_max - q_min + 1) as usize;
        if dims.len() != width {
            return Err(Error::schema(
                "dims",
                format!("expected {width} entries for the window, found {}", dims.len()),
            ));
        }
        if mult.len() != width - 1 {
            return Err(Error::schema(
                "mult",
                format!("expected {} degree slots, found {}", width - 1, mult.len()),
            ));
        }
        for (qi, maps) in mult.iter().enumerate() {
            if maps.len() != n {
                return Err(Error::schema(
                    format!("mult[{qi}]"),
                    format!("expected {n} matrices (one per basis vector), found {}", maps.len()),
                ));
            }
            for (j, m) in maps.iter().enumerate() {
                if m.rows() != dims[qi + 1] || m.cols() != dims[qi] {
                    return Err(Error::schema(
                        format!("mult[{qi}][{j}]"),
                        format!(
                            "expected shape {}x{}, found {}x{}",
                            dims[qi + 1],
                            dims[qi],
                            m.rows(),
                            m.cols()
                        ),
                    ));
                }
            }
        }
        let table = GradedModuleTable {
            n,
            q_min,
            q_max,
            dims,
            mult,
        };
        table.check_commutativity()?;
        Ok(table)
    }

    /// Multiplication by distinct basis vectors must commute; that is what
    /// makes the table a module over the symmetric algebra.
    fn check_commutativity(&self) -> Result<()> {
        for qi in 0..self.mult.len().saturating_sub(1) {
            for i in 0..self.n {
                for j in i + 1..self.n {
                    let ij = self.mult[qi + 1][i].mul(&self.mult[qi][j])?;
                    let ji = self.mult[qi + 1][j].mul(&self.mult[qi][i])?;
                    if ij != ji {
                        return Err(Error::schema(
                            format!("mult[{qi}]"),
                            format!(
                                "multiplication maps for basis vectors {i} and {j} do not commute at degree {}",
                                self.q_min + qi as i64
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q_min(&self) -> i64 {
        self.q_min
    }

    pub fn q_max(&self) -> i64 {
        self.q_max
    }

    /// dim M_q: zero below the window, unknown above it.
    pub fn dim(&self, q: i64) -> Result<usize> {
        if q < self.q_min {
            Ok(0)
        } else if q > self.q_max {
            Err(Error::DegreeOutOfWindow {
                q,
                q_min: self.q_min,
                q_max: self.q_max,
            })
        } else {
            Ok(self.dims[(q - self.q_min) as usize])
        }
    }

    /// Multiplication by the j-th basis vector, M_q -> M_{q+1}. For q below
    /// the window this is the unique map from the zero space.
    pub fn mult(&self, q: i64, j: usize) -> Result<RationalMatrix> {
        assert!(j < self.n, "basis index out of range");
        if q + 1 > self.q_max {
            return Err(Error::DegreeOutOfWindow {
                q: q + 1,
                q_min: self.q_min,
                q_max: self.q_max,
            });
        }
        if q < self.q_min {
            return Ok(RationalMatrix::zero(self.dim(q + 1)?, 0));
        }
        Ok(self.mult[(q - self.q_min) as usize][j].clone())
    }

    /// Extends the module by `extra` annihilating generators: the ambient
    /// space becomes V + U with dim U = extra and U acting by zero.
    pub fn extend_by_annihilators(&self, extra: usize) -> GradedModuleTable {
        let mut mult = self.mult.clone();
        for (qi, maps) in mult.iter_mut().enumerate() {
            for _ in 0..extra {
                maps.push(RationalMatrix::zero(self.dims[qi + 1], self.dims[qi]));
            }
        }
        GradedModuleTable {
            n: self.n + extra,
            q_min: self.q_min,
            q_max: self.q_max,
            dims: self.dims.clone(),
            mult,
        }
    }

    pub fn to_json(&self) -> String {
        let file = ModuleFile {
            n: self.n,
            q_min: self.q_min,
            q_max: self.q_max,
            dims: self.dims.clone(),
            mult: self
                .mult
                .iter()
                .map(|maps| {
                    maps.iter()
                        .map(|m| {
                            m.entries()
                                .map(|(r, c, v)| (r, c, rational_to_string(v)))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("module serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModuleFile = serde_json::from_str(text)
            .map_err(|e| Error::schema("module", e.to_string()))?;
        let mut mult = Vec::with_capacity(file.mult.len());
        for (qi, maps) in file.mult.iter().enumerate() {
            let mut row = Vec::with_capacity(maps.len());
            for (j, triplets) in maps.iter().enumerate() {
                let rows = *file.dims.get(qi + 1).ok_or_else(|| {
                    Error::schema("dims", format!("missing entry {} for mult[{qi}]", qi + 1))
                })?;
                let cols = file.dims[qi];
                let mut parsed = Vec::with_capacity(triplets.len());
                for (k, (r, c, val)) in triplets.iter().enumerate() {
                    let v = rational_from_str(val).map_err(|e| {
                        Error::schema(format!("mult[{qi}][{j}][{k}]"), e.to_string())
                    })?;
                    parsed.push((*r, *c, v));
                }
                let m = RationalMatrix::from_triplets(rows, cols, parsed)
                    .map_err(|e| Error::schema(format!("mult[{qi}][{j}]"), e.to_string()))?;
                row.push(m);
            }
            mult.push(row);
        }
        GradedModuleTable::new(file.n, file.q_min, file.q_max, file.dims, mult)
    }
}

/// On-disk schema: sparse matrices as triplet lists [row, col, "num/den"].
#[derive(Serialize, Deserialize)]
struct ModuleFile {
    n: usize,
    q_min: i64,
    q_max: i64,
    dims: Vec<usize>,
    mult: Vec<Vec<Vec<(usize, usize, String)>>>,
}
