//! Finite-dimensional associative algebras given by structure constants.
//!
//! An algebra of dimension `d` is the table `c[i][j][k]` with
//! `e_i e_j = sum_k c[i][j][k] e_k`, an optional unit vector, and a
//! tri-state semiprimeness tag. Elements are plain coordinate vectors;
//! the algebra is passed explicitly to every product.

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::maps::LinearMap;
use crate::matrix::{Matrix, Vector};
use crate::rational::Rational;

/// Whether the algebra is known to be semiprime. This is constructor
/// metadata, not a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semiprimeness {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Semiprimeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semiprimeness::Yes => write!(f, "yes"),
            Semiprimeness::No => write!(f, "no"),
            Semiprimeness::Unknown => write!(f, "unknown"),
        }
    }
}

/// A finite-dimensional associative algebra over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    dim: usize,
    // flattened structure constants, index (i*dim + j)*dim + k
    sc: Vec<Rational>,
    unit: Option<Vector>,
    semiprime: Semiprimeness,
    basis_names: Vec<String>,
}

impl Algebra {
    /// Builds an algebra from a nested structure-constant tensor.
    ///
    /// Validates the tensor shape and, when a unit is declared, the unit
    /// axiom on every basis vector. Associativity is deliberately not
    /// enforced here; use [`Algebra::check_associativity`] so that broken
    /// tensors can be constructed and rejected in tests.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        sc: Vec<Vec<Vec<Rational>>>,
        unit: Option<Vector>,
        semiprime: Semiprimeness,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::NotPositive {
                what: "algebra dimension",
            });
        }
        let shape_ok = sc.len() == dim
            && sc
                .iter()
                .all(|p| p.len() == dim && p.iter().all(|q| q.len() == dim));
        if !shape_ok {
            return Err(Error::BadShape {
                context: "structure constant tensor",
            });
        }
        if let Some(u) = &unit {
            if u.dim() != dim {
                return Err(Error::DimMismatch {
                    context: "unit vector",
                    expected: dim,
                    found: u.dim(),
                });
            }
        }
        let flat: Vec<Rational> = sc.into_iter().flatten().flatten().collect();
        let alg = Algebra {
            name: name.into(),
            dim,
            sc: flat,
            unit,
            semiprime,
            basis_names: (1..=dim).map(|i| format!("e_{i}")).collect(),
        };
        alg.check_unit_axiom()?;
        Ok(alg)
    }

    /// Overrides the default `e_1 .. e_d` basis labels.
    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimMismatch {
                context: "basis names",
                expected: self.dim,
                found: names.len(),
            });
        }
        self.basis_names = names;
        Ok(self)
    }

    fn check_unit_axiom(&self) -> Result<()> {
        let Some(u) = &self.unit else { return Ok(()) };
        for j in 0..self.dim {
            let ej = self.basis_element(j);
            let left = self.mul(u, &ej)?;
            let right = self.mul(&ej, u)?;
            if left != ej || right != ej {
                return Err(Error::BadUnit { index: j });
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn semiprime(&self) -> Semiprimeness {
        self.semiprime
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis_names[i]
    }

    pub fn basis_element(&self, i: usize) -> Vector {
        Vector::basis(self.dim, i)
    }

    /// Structure constant `c[i][j][k]`.
    pub fn sc(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.sc[(i * self.dim + j) * self.dim + k]
    }

    /// Product of two elements by bilinear extension of the table.
    pub fn mul(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        if x.dim() != self.dim || y.dim() != self.dim {
            return Err(Error::DimMismatch {
                context: "algebra product",
                expected: self.dim,
                found: if x.dim() != self.dim { x.dim() } else { y.dim() },
            });
        }
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.sc(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&xy * c);
                    }
                }
            }
        }
        Ok(Vector::new(out))
    }

    /// Jordan product `x ∘ y = xy + yx`.
    pub fn jordan(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.mul(x, y)?.add(&self.mul(y, x)?)
    }

    /// True iff `(e_i e_j) e_k = e_i (e_j e_k)` for all basis triples.
    pub fn check_associativity(&self) -> bool {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut lhs = Rational::zero();
                        let mut rhs = Rational::zero();
                        for m in 0..d {
                            lhs = lhs + self.sc(i, j, m) * self.sc(m, k, l);
                            rhs = rhs + self.sc(j, k, m) * self.sc(i, m, l);
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Matrix of the inner derivation `a ↦ xa − ax`.
    pub fn inner_derivation(&self, x: &Vector) -> Result<LinearMap> {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| {
                let ej = self.basis_element(j);
                self.mul(x, &ej)?.sub(&self.mul(&ej, x)?)
            })
            .collect::<Result<_>>()?;
        LinearMap::from_matrix(Matrix::from_columns(&cols)?)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.name, self.dim)
    }
}

/// The full matrix algebra `M_n(Q)` on the matrix-unit basis `e_pq`,
/// sorted row-major by `(p, q)`. Semiprime.
pub fn matrix_algebra(n: usize) -> Algebra {
    assert!(n >= 1, "matrix_algebra requires n >= 1");
    let d = n * n;
    let idx = |p: usize, q: usize| p * n + q;
    let mut sc = vec![vec![vec![Rational::zero(); d]; d]; d];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    if q == r {
                        sc[idx(p, q)][idx(r, s)][idx(p, s)] = Rational::one();
                    }
                }
            }
        }
    }
    let mut unit = Vector::zeros(d);
    let mut names = Vec::with_capacity(d);
    for p in 0..n {
        for q in 0..n {
            names.push(format!("e_{}{}", p + 1, q + 1));
        }
    }
    unit = (0..n).fold(unit, |u, p| {
        u.add(&Vector::basis(d, idx(p, p))).expect("same dim")
    });
    Algebra::new(format!("M{n}"), d, sc, Some(unit), Semiprimeness::Yes)
        .expect("matrix algebra construction")
        .with_basis_names(names)
        .expect("matrix algebra basis names")
}

/// The upper-triangular matrices `T_n(Q)` on `e_pq` with `p <= q`,
/// sorted row-major. Not semiprime for `n >= 2`: the strictly upper
/// part is a nonzero nilpotent ideal.
pub fn upper_triangular(n: usize) -> Algebra {
    assert!(n >= 2, "upper_triangular requires n >= 2");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (p..n).map(move |q| (p, q)))
        .collect();
    let d = pairs.len();
    let idx = |p: usize, q: usize| pairs.iter().position(|&pq| pq == (p, q)).unwrap();
    let mut sc = vec![vec![vec![Rational::zero(); d]; d]; d];
    for &(p, q) in &pairs {
        for &(r, s) in &pairs {
            if q == r {
                sc[idx(p, q)][idx(r, s)][idx(p, s)] = Rational::one();
            }
        }
    }
    let mut unit = Vector::zeros(d);
    for p in 0..n {
        unit = unit.add(&Vector::basis(d, idx(p, p))).expect("same dim");
    }
    let names = pairs
        .iter()
        .map(|&(p, q)| format!("e_{}{}", p + 1, q + 1))
        .collect();
    Algebra::new(format!("T{n}"), d, sc, Some(unit), Semiprimeness::No)
        .expect("upper triangular construction")
        .with_basis_names(names)
        .expect("upper triangular basis names")
}

/// The dual numbers `Q[eps]/(eps^2)` on the basis `{1, eps}`. Not
/// semiprime: `(eps)` is a nonzero nilpotent ideal.
pub fn dual_numbers() -> Algebra {
    let mut sc = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
    sc[0][0][0] = Rational::one();
    sc[0][1][1] = Rational::one();
    sc[1][0][1] = Rational::one();
    // eps * eps = 0
    let unit = Vector::basis(2, 0);
    Algebra::new("dual", 2, sc, Some(unit), Semiprimeness::No)
        .expect("dual numbers construction")
        .with_basis_names(vec!["1".into(), "eps".into()])
        .expect("dual numbers basis names")
}

/// Resolves a built-in algebra name: `M<n>` (n >= 1), `T<n>` (n >= 2),
/// or `dual`.
pub fn builtin(name: &str) -> Option<Algebra> {
    if name == "dual" {
        return Some(dual_numbers());
    }
    if let Some(n) = name.strip_prefix('M') {
        let n: usize = n.parse().ok()?;
        if n >= 1 {
            return Some(matrix_algebra(n));
        }
    }
    if let Some(n) = name.strip_prefix('T') {
        let n: usize = n.parse().ok()?;
        if n >= 2 {
            return Some(upper_triangular(n));
        }
    }
    None
}

#[derive(Serialize, Deserialize)]
struct AlgebraWire {
    name: String,
    dim: usize,
    unit: Option<Vec<Rational>>,
    semiprime: Semiprimeness,
    sc: Vec<Vec<Vec<Rational>>>,
}

impl Serialize for Algebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.dim;
        let mut sc = vec![vec![vec![Rational::zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    sc[i][j][k] = self.sc(i, j, k).clone();
                }
            }
        }
        AlgebraWire {
            name: self.name.clone(),
            dim: d,
            unit: self.unit.as_ref().map(|u| u.entries().to_vec()),
            semiprime: self.semiprime,
            sc,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = AlgebraWire::deserialize(deserializer)?;
        Algebra::new(
            wire.name,
            wire.dim,
            wire.sc,
            wire.unit.map(Vector::new),
            wire.semiprime,
        )
        .map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle for M_n: interpret coordinates as an actual
    /// n x n matrix and use generic matrix multiplication.
    fn coords_as_matrix(n: usize, v: &Vector) -> Matrix {
        let rows = (0..n)
            .map(|p| (0..n).map(|q| v[p * n + q].clone()).collect())
            .collect();
        Matrix::from_rows(rows).unwrap()
    }

    fn matrix_as_coords(n: usize, m: &Matrix) -> Vector {
        let mut entries = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                entries.push(m.get(p, q).clone());
            }
        }
        Vector::new(entries)
    }

    #[test]
    fn matrix_algebra_dims() {
        assert_eq!(matrix_algebra(2).dim(), 4);
        assert_eq!(matrix_algebra(3).dim(), 9);
        assert_eq!(matrix_algebra(1).dim(), 1);
    }

    #[test]
    fn m2_products_match_matrix_multiplication() {
        // structure constants vs the independent 2x2 multiplication route,
        // on every basis pair
        let alg = matrix_algebra(2);
        for i in 0..4 {
            for j in 0..4 {
                let ei = alg.basis_element(i);
                let ej = alg.basis_element(j);
                let via_sc = alg.mul(&ei, &ej).unwrap();
                let via_mats = matrix_as_coords(
                    2,
                    &coords_as_matrix(2, &ei).mul(&coords_as_matrix(2, &ej)).unwrap(),
                );
                assert_eq!(via_sc, via_mats, "basis pair ({i}, {j})");
            }
        }
    }

    #[test]
    fn m2_unit_products() {
        // e_12 * e_21 = e_11 and the unit axiom
        let alg = matrix_algebra(2);
        let e12 = alg.basis_element(1);
        let e21 = alg.basis_element(2);
        assert_eq!(alg.mul(&e12, &e21).unwrap(), alg.basis_element(0));
        let unit = alg.unit().unwrap().clone();
        for i in 0..4 {
            let ei = alg.basis_element(i);
            assert_eq!(alg.mul(&unit, &ei).unwrap(), ei);
            assert_eq!(alg.mul(&ei, &unit).unwrap(), ei);
        }
    }

    #[test]
    fn m1_is_commutative_rationals() {
        let alg = matrix_algebra(1);
        assert_eq!(alg.dim(), 1);
        let two = Vector::new(vec![Rational::from(2)]);
        let three = Vector::new(vec![Rational::from(3)]);
        assert_eq!(alg.mul(&two, &three).unwrap(), alg.mul(&three, &two).unwrap());
        assert_eq!(
            alg.mul(&two, &three).unwrap(),
            Vector::new(vec![Rational::from(6)])
        );
    }

    #[test]
    fn jordan_examples_on_m2() {
        let alg = matrix_algebra(2);
        let e11 = alg.basis_element(0);
        let e12 = alg.basis_element(1);
        let e21 = alg.basis_element(2);
        let e22 = alg.basis_element(3);
        // idempotent doubles
        assert_eq!(alg.jordan(&e11, &e11).unwrap(), e11.scale(&Rational::from(2)));
        // e_12 ∘ e_21 = e_11 + e_22
        assert_eq!(alg.jordan(&e12, &e21).unwrap(), e11.add(&e22).unwrap());
        // symmetry
        assert_eq!(alg.jordan(&e12, &e21).unwrap(), alg.jordan(&e21, &e12).unwrap());
    }

    #[test]
    fn dual_numbers_relation() {
        let alg = dual_numbers();
        let eps = alg.basis_element(1);
        assert!(alg.mul(&eps, &eps).unwrap().is_zero());
        assert_eq!(alg.mul(alg.unit().unwrap(), &eps).unwrap(), eps);
    }

    #[test]
    fn upper_triangular_shape() {
        let alg = upper_triangular(2);
        assert_eq!(alg.dim(), 3);
        // e_12 is strictly upper, so e_12 * e_12 = 0
        let e12 = alg.basis_element(1);
        assert!(alg.mul(&e12, &e12).unwrap().is_zero());
        assert_eq!(alg.semiprime(), Semiprimeness::No);
    }

    #[test]
    fn shipped_constructors_are_associative() {
        assert!(matrix_algebra(1).check_associativity());
        assert!(matrix_algebra(2).check_associativity());
        assert!(matrix_algebra(3).check_associativity());
        assert!(upper_triangular(2).check_associativity());
        assert!(upper_triangular(3).check_associativity());
        assert!(dual_numbers().check_associativity());
    }

    #[test]
    fn broken_tensor_fails_associativity() {
        // e_1 e_1 = e_2 and e_2 e_2 = e_1 gives (e_1 e_1) e_2 = e_1 but
        // e_1 (e_1 e_2) = 0
        let mut sc = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        sc[0][0][1] = Rational::one();
        sc[1][1][0] = Rational::one();
        let alg = Algebra::new("broken", 2, sc, None, Semiprimeness::Unknown).unwrap();
        assert!(!alg.check_associativity());
    }

    #[test]
    fn bad_unit_rejected() {
        let mut sc = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        sc[0][0][0] = Rational::one();
        // e_2 is not a unit for this table
        let res = Algebra::new(
            "bad",
            2,
            sc,
            Some(Vector::basis(2, 1)),
            Semiprimeness::Unknown,
        );
        assert!(matches!(res, Err(Error::BadUnit { .. })));
    }

    #[test]
    fn inner_derivation_of_unit_is_zero() {
        let alg = matrix_algebra(2);
        let d = alg.inner_derivation(alg.unit().unwrap()).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn inner_derivation_by_e12() {
        // d_{e_12}(e_21) = e_12 e_21 - e_21 e_12 = e_11 - e_22
        let alg = matrix_algebra(2);
        let d = alg.inner_derivation(&alg.basis_element(1)).unwrap();
        let image = d.apply(&alg.basis_element(2)).unwrap();
        let expected = alg
            .basis_element(0)
            .sub(&alg.basis_element(3))
            .unwrap();
        assert_eq!(image, expected);
    }

    #[test]
    fn inner_derivation_satisfies_leibniz() {
        for alg in [matrix_algebra(2), upper_triangular(2), dual_numbers()] {
            for x_idx in 0..alg.dim() {
                let x = alg.basis_element(x_idx);
                let d = alg.inner_derivation(&x).unwrap();
                for i in 0..alg.dim() {
                    for j in 0..alg.dim() {
                        let a = alg.basis_element(i);
                        let b = alg.basis_element(j);
                        let lhs = d.apply(&alg.mul(&a, &b).unwrap()).unwrap();
                        let rhs = alg
                            .mul(&d.apply(&a).unwrap(), &b)
                            .unwrap()
                            .add(&alg.mul(&a, &d.apply(&b).unwrap()).unwrap())
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("M2").unwrap().dim(), 4);
        assert_eq!(builtin("M3").unwrap().dim(), 9);
        assert_eq!(builtin("T2").unwrap().dim(), 3);
        assert_eq!(builtin("dual").unwrap().dim(), 2);
        assert!(builtin("M0").is_none());
        assert!(builtin("T1").is_none());
        assert!(builtin("X9").is_none());
    }

    #[test]
    fn json_roundtrip_preserves_products() {
        let alg = matrix_algebra(2);
        let json = serde_json::to_string(&alg).unwrap();
        let back: Algebra = serde_json::from_str(&json).unwrap();
        assert_eq!(back.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    alg.mul(&alg.basis_element(i), &alg.basis_element(j)).unwrap(),
                    back.mul(&back.basis_element(i), &back.basis_element(j)).unwrap()
                );
            }
        }
        assert_eq!(back.semiprime(), Semiprimeness::Yes);
    }

    #[test]
    fn json_schema_shape() {
        let alg = dual_numbers();
        let v: serde_json::Value = serde_json::to_value(&alg).unwrap();
        assert_eq!(v["name"], "dual");
        assert_eq!(v["dim"], 2);
        assert_eq!(v["semiprime"], "no");
        assert_eq!(v["unit"][0], "1");
        assert_eq!(v["sc"][0][1][1], "1");
        assert_eq!(v["sc"][1][1][0], "0");
    }
}
