//! Linear maps on an algebra and {g,h}-derivation checkers.
//!
//! A triple `(f, g, h)` is a {g,h}-derivation when both
//! `f(ab) = g(a)b + a h(b)` and `f(ab) = h(a)b + a g(b)` hold for all
//! `a, b`; it is a Jordan {g,h}-derivation when
//! `f(a∘b) = g(a)∘b + a∘h(b)` holds, with `a∘b = ab + ba`. Both
//! identities are bilinear, so checking every basis pair is exhaustive.

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rational::Rational;

/// A linear map on algebra coordinates, stored as a square matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    mat: Matrix,
}

impl LinearMap {
    pub fn from_matrix(mat: Matrix) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::NotSquare {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        Ok(LinearMap { mat })
    }

    /// Map sending `e_j` to `cols[j]`.
    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        LinearMap::from_matrix(Matrix::from_columns(cols)?)
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap {
            mat: Matrix::identity(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LinearMap {
            mat: Matrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        self.mat.apply(v)
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinearMap) -> Result<Self> {
        Ok(LinearMap {
            mat: self.mat.mul(&other.mat)?,
        })
    }

    pub fn add(&self, other: &LinearMap) -> Result<Self> {
        Ok(LinearMap {
            mat: self.mat.add(&other.mat)?,
        })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<Self> {
        Ok(LinearMap {
            mat: self.mat.sub(&other.mat)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LinearMap {
            mat: self.mat.scale(c),
        }
    }

    /// `k`-fold composition power; `pow(0)` is the identity.
    pub fn pow(&self, k: usize) -> Self {
        let mut out = LinearMap::identity(self.dim());
        for _ in 0..k {
            out = out.compose(self).expect("equal dims");
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap({})", self.mat)
    }
}

#[derive(Serialize, Deserialize)]
struct LinearMapWire {
    dim: usize,
    mat: Vec<Vec<Rational>>,
}

impl Serialize for LinearMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LinearMapWire {
            dim: self.dim(),
            mat: self.mat.to_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = LinearMapWire::deserialize(deserializer)?;
        let mat = Matrix::from_rows(wire.mat).map_err(de::Error::custom)?;
        if mat.rows() != wire.dim || mat.cols() != wire.dim {
            return Err(de::Error::custom(Error::DimMismatch {
                context: "linear map matrix",
                expected: wire.dim,
                found: mat.rows().max(mat.cols()),
            }));
        }
        LinearMap::from_matrix(mat).map_err(de::Error::custom)
    }
}

/// The maps `(f, g, h)` of a candidate {g,h}-derivation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "MapTripleWire", into = "MapTripleWire")]
pub struct MapTriple {
    f: LinearMap,
    g: LinearMap,
    h: LinearMap,
}

#[derive(Serialize, Deserialize, Clone)]
struct MapTripleWire {
    f: LinearMap,
    g: LinearMap,
    h: LinearMap,
}

impl TryFrom<MapTripleWire> for MapTriple {
    type Error = Error;
    fn try_from(w: MapTripleWire) -> Result<Self> {
        MapTriple::new(w.f, w.g, w.h)
    }
}

impl From<MapTriple> for MapTripleWire {
    fn from(t: MapTriple) -> Self {
        MapTripleWire {
            f: t.f,
            g: t.g,
            h: t.h,
        }
    }
}

impl MapTriple {
    pub fn new(f: LinearMap, g: LinearMap, h: LinearMap) -> Result<Self> {
        if g.dim() != f.dim() || h.dim() != f.dim() {
            return Err(Error::DimMismatch {
                context: "map triple",
                expected: f.dim(),
                found: g.dim().max(h.dim()),
            });
        }
        Ok(MapTriple { f, g, h })
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn f(&self) -> &LinearMap {
        &self.f
    }

    pub fn g(&self) -> &LinearMap {
        &self.g
    }

    pub fn h(&self) -> &LinearMap {
        &self.h
    }
}

/// Which defining identity a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhIdentity {
    /// `f(ab) = g(a)b + a h(b)`
    Primary,
    /// `f(ab) = h(a)b + a g(b)`
    Mirrored,
    /// `f(a∘b) = g(a)∘b + a∘h(b)`
    Jordan,
}

impl fmt::Display for GhIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GhIdentity::Primary => write!(f, "f(ab) = g(a)b + a h(b)"),
            GhIdentity::Mirrored => write!(f, "f(ab) = h(a)b + a g(b)"),
            GhIdentity::Jordan => write!(f, "f(a∘b) = g(a)∘b + a∘h(b)"),
        }
    }
}

/// First counterexample found by a triple checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhViolation {
    pub identity: GhIdentity,
    /// Basis indices `(i, j)` of the failing pair `(e_i, e_j)`.
    pub pair: (usize, usize),
    pub lhs: Vector,
    pub rhs: Vector,
}

fn check_triple_dims(t: &MapTriple, alg: &Algebra) -> Result<()> {
    if t.dim() != alg.dim() {
        return Err(Error::DimMismatch {
            context: "triple vs algebra",
            expected: alg.dim(),
            found: t.dim(),
        });
    }
    Ok(())
}

/// Scans basis pairs in row-major order and reports the first violated
/// {g,h}-derivation identity, or `None` when both identities hold
/// everywhere.
pub fn first_gh_violation(t: &MapTriple, alg: &Algebra) -> Result<Option<GhViolation>> {
    check_triple_dims(t, alg)?;
    let d = alg.dim();
    for i in 0..d {
        for j in 0..d {
            let a = alg.basis_element(i);
            let b = alg.basis_element(j);
            let lhs = t.f().apply(&alg.mul(&a, &b)?)?;
            let ga_b = alg.mul(&t.g().apply(&a)?, &b)?;
            let a_hb = alg.mul(&a, &t.h().apply(&b)?)?;
            let rhs = ga_b.add(&a_hb)?;
            if lhs != rhs {
                return Ok(Some(GhViolation {
                    identity: GhIdentity::Primary,
                    pair: (i, j),
                    lhs,
                    rhs,
                }));
            }
            let ha_b = alg.mul(&t.h().apply(&a)?, &b)?;
            let a_gb = alg.mul(&a, &t.g().apply(&b)?)?;
            let rhs = ha_b.add(&a_gb)?;
            if lhs != rhs {
                return Ok(Some(GhViolation {
                    identity: GhIdentity::Mirrored,
                    pair: (i, j),
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

/// True iff both {g,h}-derivation identities hold on all basis pairs.
pub fn is_gh_derivation(t: &MapTriple, alg: &Algebra) -> Result<bool> {
    Ok(first_gh_violation(t, alg)?.is_none())
}

/// Reports the first violated Jordan identity, or `None`.
pub fn first_jordan_gh_violation(t: &MapTriple, alg: &Algebra) -> Result<Option<GhViolation>> {
    check_triple_dims(t, alg)?;
    let d = alg.dim();
    for i in 0..d {
        for j in 0..d {
            let a = alg.basis_element(i);
            let b = alg.basis_element(j);
            let lhs = t.f().apply(&alg.jordan(&a, &b)?)?;
            let ga_b = alg.jordan(&t.g().apply(&a)?, &b)?;
            let a_hb = alg.jordan(&a, &t.h().apply(&b)?)?;
            let rhs = ga_b.add(&a_hb)?;
            if lhs != rhs {
                return Ok(Some(GhViolation {
                    identity: GhIdentity::Jordan,
                    pair: (i, j),
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

/// True iff the Jordan identity holds on all basis pairs.
pub fn is_jordan_gh_derivation(t: &MapTriple, alg: &Algebra) -> Result<bool> {
    Ok(first_jordan_gh_violation(t, alg)?.is_none())
}

/// The triple `(d_x + (λ+μ)I, d_x + λI, d_x + μI)` built from an inner
/// derivation plus scalar shifts. On a unital algebra the result always
/// passes [`is_gh_derivation`].
pub fn gh_from_inner_plus_scalar(
    alg: &Algebra,
    x: &Vector,
    lambda: &Rational,
    mu: &Rational,
) -> Result<MapTriple> {
    if alg.unit().is_none() {
        return Err(Error::MissingUnit {
            algebra: alg.name().to_string(),
        });
    }
    let dx = alg.inner_derivation(x)?;
    let id = LinearMap::identity(alg.dim());
    let f = dx.add(&id.scale(&(lambda + mu)))?;
    let g = dx.add(&id.scale(lambda))?;
    let h = dx.add(&id.scale(mu))?;
    MapTriple::new(f, g, h)
}
