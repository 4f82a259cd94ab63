//! Moment-cone presentations and their validation.
//!
//! A cone is given by inward facet normals `μ_1, …, μ_N ∈ Z^n` and is the set
//! `C = {η : ⟨η, μ_j⟩ ≥ 0 for all j}`. [`validate`] checks that the
//! presentation is one the homotopy computation applies to and yields a
//! [`Cone`], which caches the extreme rays and the face lattice.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::faces::{self, FaceLattice, Ray};
use crate::linalg::{content, dot, primitive_part, IntMatrix};

/// An unvalidated cone presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeSpec {
    name: Option<String>,
    dim: usize,
    normals: Vec<Vec<BigInt>>,
}

impl ConeSpec {
    /// Every normal must have exactly `dim` coordinates.
    pub fn new(name: Option<String>, dim: usize, normals: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some((index, v)) = normals.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(Error::NormalLength {
                index,
                found: v.len(),
                expected: dim,
            });
        }
        Ok(Self { name, dim, normals })
    }

    pub fn from_i64(dim: usize, normals: &[&[i64]]) -> Result<Self> {
        Self::new(
            None,
            dim,
            normals
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_normals(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    /// The `n × N` matrix whose columns are the normals, or `None` if either
    /// dimension is zero.
    pub fn normal_matrix(&self) -> Option<IntMatrix> {
        IntMatrix::from_columns(&self.normals).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FailureCode {
    DimensionTooSmall,
    ZeroNormal,
    DuplicateNormal,
    NotStrictlyConvex,
    RedundantNormal,
}

impl FailureCode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DimensionTooSmall => "DimensionTooSmall",
            Self::ZeroNormal => "ZeroNormal",
            Self::DuplicateNormal => "DuplicateNormal",
            Self::NotStrictlyConvex => "NotStrictlyConvex",
            Self::RedundantNormal => "RedundantNormal",
        }
    }
}

impl fmt::Display for FailureCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One failed check, with the 0-based indices of the normals involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationFailure {
    pub code: FailureCode,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    /// 0-based indices of normals that were divided by their gcd.
    pub normalized: Vec<usize>,
    pub failures: Vec<ValidationFailure>,
    /// The presentation after primitivization.
    pub spec: ConeSpec,
    cone: Option<Cone>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn cone(&self) -> Option<&Cone> {
        self.cone.as_ref()
    }

    pub fn into_cone(self) -> Result<Cone> {
        match self.cone {
            Some(cone) => Ok(cone),
            None => Err(Error::InvalidCone(Box::new(self))),
        }
    }

    pub fn summary(&self) -> String {
        if self.ok() {
            return "ok".into();
        }
        let parts: Vec<String> = self
            .failures
            .iter()
            .map(|f| {
                let idx: Vec<String> = f.indices.iter().map(|i| (i + 1).to_string()).collect();
                if idx.is_empty() {
                    f.code.to_string()
                } else {
                    format!("{} at {}", f.code, idx.join(","))
                }
            })
            .collect();
        parts.join("; ")
    }
}

/// A validated cone together with its extreme rays and face lattice.
#[derive(Clone, Debug)]
pub struct Cone {
    spec: ConeSpec,
    lattice: FaceLattice,
}

impl Cone {
    /// Validates `raw`, returning the cone or the failing report as an error.
    pub fn new(raw: &ConeSpec) -> Result<Self> {
        validate(raw).into_cone()
    }

    pub fn spec(&self) -> &ConeSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn num_normals(&self) -> usize {
        self.spec.normals.len()
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.spec.normals
    }

    pub fn normal_matrix(&self) -> IntMatrix {
        self.spec.normal_matrix().expect("validated cone has n >= 2 and N >= n")
    }

    pub fn rays(&self) -> &[Ray] {
        self.lattice.rays()
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }
}

/// Runs the validation checks in a fixed order:
///
/// 1. `n ≥ 2`
/// 2. no zero normals
/// 3. primitivization (recorded, not a failure)
/// 4. no equal or antipodal pairs
/// 5. the normals span `Q^n`
/// 6. every normal supports a facet of dimension `n - 1`
///
/// Checks 1–5 always run. Check 6 needs extreme rays, so it only runs when
/// 1–5 passed.
pub fn validate(raw: &ConeSpec) -> ValidationReport {
    let n = raw.dim;
    let mut failures = Vec::new();

    if n < 2 {
        failures.push(ValidationFailure {
            code: FailureCode::DimensionTooSmall,
            indices: vec![],
        });
    }

    for (i, v) in raw.normals.iter().enumerate() {
        if v.iter().all(Zero::is_zero) {
            failures.push(ValidationFailure {
                code: FailureCode::ZeroNormal,
                indices: vec![i],
            });
        }
    }

    let mut normalized = Vec::new();
    let normals: Vec<Vec<BigInt>> = raw
        .normals
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let g = content(v);
            if !g.is_zero() && !g.is_one() {
                normalized.push(i);
            }
            primitive_part(v)
        })
        .collect();

    for i in 0..normals.len() {
        if normals[i].iter().all(Zero::is_zero) {
            continue;
        }
        for j in i + 1..normals.len() {
            let neg: Vec<BigInt> = normals[j].iter().map(|x| -x).collect();
            if normals[i] == normals[j] || normals[i] == neg {
                failures.push(ValidationFailure {
                    code: FailureCode::DuplicateNormal,
                    indices: vec![i, j],
                });
            }
        }
    }

    let spec = ConeSpec {
        name: raw.name.clone(),
        dim: n,
        normals,
    };

    if n > 0 {
        let rank = spec.normal_matrix().map_or(0, |m| m.rank());
        if rank < n {
            failures.push(ValidationFailure {
                code: FailureCode::NotStrictlyConvex,
                indices: vec![],
            });
        }
    }

    let mut cone = None;
    if failures.is_empty() {
        let rays = faces::extreme_rays(&spec);
        for j in 0..spec.normals.len() {
            let on_facet: Vec<Vec<BigInt>> = rays
                .iter()
                .filter(|r| r.active.contains(j))
                .map(|r| r.generator.clone())
                .collect();
            let facet_dim = IntMatrix::from_rows(on_facet).map_or(0, |m| m.rank());
            if facet_dim != n - 1 {
                failures.push(ValidationFailure {
                    code: FailureCode::RedundantNormal,
                    indices: vec![j],
                });
            }
        }
        if failures.is_empty() {
            let lattice = faces::enumerate_faces(&spec, rays);
            cone = Some(Cone {
                spec: spec.clone(),
                lattice,
            });
        }
    }

    log::debug!(
        "validated cone {:?}: {} failure(s), {} normal(s) primitivized",
        spec.name,
        failures.len(),
        normalized.len()
    );

    ValidationReport {
        normalized,
        failures,
        spec,
        cone,
    }
}

/// An integral vector pairing strictly positively with every nonzero point of
/// the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReebVector(pub Vec<BigInt>);

/// Returns `X = Σ μ_j` after checking `⟨r, X⟩ > 0` on every extreme ray.
pub fn reeb_vector(cone: &Cone) -> Result<ReebVector> {
    let n = cone.dim();
    let mut x = vec![BigInt::zero(); n];
    for mu in cone.normals() {
        for (xi, m) in x.iter_mut().zip(mu) {
            *xi += m;
        }
    }
    for ray in cone.rays() {
        let p = dot(&ray.generator, &x);
        if !p.is_positive() {
            return Err(Error::InternalInvariantViolation(format!(
                "candidate Reeb vector {x:?} pairs to {p} with ray {:?}",
                ray.generator
            )));
        }
    }
    Ok(ReebVector(x))
}
