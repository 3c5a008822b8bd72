//! Integer compositions, the suffix-sum coefficient formula, and formal
//! noncommutative polynomials in the generator symbols `F_1, F_2, ...`.
//!
//! A word `r_1 r_2 ... r_i` denotes the composed product
//! `F_{r_1} F_{r_2} ... F_{r_i}` in exactly the written order; the order
//! is load-bearing because the generators do not commute (the expansion
//! of order 3 carries `1/6 F1 F2` but `1/3 F2 F1`).

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::maps::LinearMap;
use crate::rational::Rational;

/// An ordered tuple of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::NotPositive {
                what: "composition part",
            });
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn compositions_with_len(n: usize, len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if len == 1 {
        prefix.push(n);
        out.push(Composition {
            parts: prefix.clone(),
        });
        prefix.pop();
        return;
    }
    for first in 1..=(n - len + 1) {
        prefix.push(first);
        compositions_with_len(n - first, len - 1, prefix, out);
        prefix.pop();
    }
}

/// All `2^(n-1)` compositions of `n`, ordered by part count ascending and
/// then lexicographically by parts.
pub fn compositions(n: usize) -> Result<Vec<Composition>> {
    if n == 0 {
        return Err(Error::NotPositive {
            what: "composition target",
        });
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    let mut prefix = Vec::with_capacity(n);
    for len in 1..=n {
        compositions_with_len(n, len, &mut prefix, &mut out);
    }
    Ok(out)
}

/// The coefficient `a_{r_1,...,r_i}`: the product of reciprocals of the
/// suffix sums `r_j + ... + r_i`.
pub fn coefficient(c: &Composition) -> Rational {
    let mut remaining = c.sum();
    let mut coeff = Rational::one();
    for p in c.parts() {
        coeff = coeff * Rational::recip_of(remaining).expect("suffix sums are positive");
        remaining -= p;
    }
    coeff
}

/// A word in the noncommuting generators; the empty word is the identity.
///
/// The derived ordering is lexicographic on the word, which is the order
/// the expansions are conventionally written in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NCMonomial {
    word: Vec<usize>,
}

impl NCMonomial {
    pub fn identity() -> Self {
        NCMonomial { word: Vec::new() }
    }

    pub fn from_word(word: Vec<usize>) -> Result<Self> {
        if word.iter().any(|&r| r == 0) {
            return Err(Error::NotPositive {
                what: "generator index",
            });
        }
        Ok(NCMonomial { word })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// The word with one generator prepended.
    fn prepend(&self, idx: usize) -> Self {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(idx);
        word.extend_from_slice(&self.word);
        NCMonomial { word }
    }
}

impl fmt::Display for NCMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "I");
        }
        for (i, r) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "F{r}")?;
        }
        Ok(())
    }
}

/// A finite rational combination of words; zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<NCMonomial, Rational>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        NCPolynomial::default()
    }

    /// The polynomial `1·I`.
    pub fn identity() -> Self {
        let mut p = NCPolynomial::zero();
        p.add_term(NCMonomial::identity(), Rational::one());
        p
    }

    pub fn add_term(&mut self, mono: NCMonomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic word order.
    pub fn terms(&self) -> impl Iterator<Item = (&NCMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, mono: &NCMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (m, k) in self.terms() {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    /// Left multiplication by the generator `F_idx`.
    pub fn prepend_generator(&self, idx: usize) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (m, c) in self.terms() {
            out.add_term(m.prepend(idx), c.clone());
        }
        out
    }

    /// Deterministic text rendering, e.g. `1/2 F1 F1 + 1/2 F2`.
    pub fn render_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .map(|(m, c)| {
                if c.is_one() {
                    m.to_string()
                } else {
                    format!("{c} {m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

#[derive(Serialize)]
struct TermWire<'a> {
    word: &'a [usize],
    coeff: &'a Rational,
}

impl Serialize for NCPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in self.terms() {
            seq.serialize_element(&TermWire {
                word: m.word(),
                coeff: c,
            })?;
        }
        seq.end()
    }
}

/// The closed-form expansion of `f_n` in the generators: the sum over
/// all compositions `(r_1,...,r_i)` of `n` of
/// `a_{r_1,...,r_i} F_{r_1}...F_{r_i}`. For `n = 0` this is the identity.
pub fn expand_f(n: usize) -> NCPolynomial {
    if n == 0 {
        return NCPolynomial::identity();
    }
    let mut out = NCPolynomial::zero();
    for c in compositions(n).expect("n >= 1") {
        let coeff = coefficient(&c);
        let mono = NCMonomial::from_word(c.parts().to_vec()).expect("parts are positive");
        out.add_term(mono, coeff);
    }
    out
}

/// The same expansion computed by running the recursion
/// `(m + 1) f_{m+1} = sum_{k=0}^{m} F_{k+1} f_{m-k}` symbolically with
/// the generators free.
pub fn expand_via_recursion(n: usize) -> NCPolynomial {
    let mut fs: Vec<NCPolynomial> = vec![NCPolynomial::identity()];
    for m in 0..n {
        let mut sum = NCPolynomial::zero();
        for k in 0..=m {
            sum = sum.add(&fs[m - k].prepend_generator(k + 1));
        }
        let next = sum.scale(&Rational::recip_of(m + 1).expect("m + 1 >= 1"));
        fs.push(next);
    }
    fs.pop().expect("nonempty")
}

/// Evaluates a polynomial at concrete maps. Generators absent from
/// `assign` are the zero map, so words mentioning them contribute
/// nothing; the empty word is the identity on `dim`.
pub fn evaluate(
    p: &NCPolynomial,
    assign: &BTreeMap<usize, LinearMap>,
    dim: usize,
) -> Result<LinearMap> {
    for (idx, m) in assign {
        if m.dim() != dim {
            return Err(Error::DimMismatch {
                context: "polynomial evaluation assignment",
                expected: dim,
                found: m.dim(),
            });
        }
        debug_assert!(*idx >= 1);
    }
    let mut acc = LinearMap::zero(dim);
    'terms: for (mono, coeff) in p.terms() {
        let mut prod = LinearMap::identity(dim);
        for r in mono.word() {
            match assign.get(r) {
                Some(m) => prod = prod.compose(m)?,
                None => continue 'terms,
            }
        }
        acc = acc.add(&prod.scale(coeff))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_algebra;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn factorial(n: usize) -> i64 {
        (1..=n as i64).product()
    }

    #[test]
    fn compositions_of_one() {
        let cs = compositions(1).unwrap();
        assert_eq!(cs, vec![comp(&[1])]);
    }

    #[test]
    fn compositions_of_zero_rejected() {
        assert!(compositions(0).is_err());
    }

    #[test]
    fn compositions_of_four_in_declared_order() {
        let cs = compositions(4).unwrap();
        let expected: Vec<Composition> = [
            vec![4],
            vec![1, 3],
            vec![2, 2],
            vec![3, 1],
            vec![1, 1, 2],
            vec![1, 2, 1],
            vec![2, 1, 1],
            vec![1, 1, 1, 1],
        ]
        .into_iter()
        .map(|p| Composition::new(p).unwrap())
        .collect();
        assert_eq!(cs, expected);
    }

    #[test]
    fn composition_counts_match_formula() {
        for n in 1..=10 {
            let cs = compositions(n).unwrap();
            assert_eq!(cs.len(), 1 << (n - 1), "n = {n}");
            // every enumerated tuple actually sums to n, with no repeats
            let set: std::collections::HashSet<_> = cs.iter().cloned().collect();
            assert_eq!(set.len(), cs.len());
            assert!(cs.iter().all(|c| c.sum() == n));
        }
    }

    #[test]
    fn coefficient_table_for_four() {
        let table = [
            (vec![4], r(1, 4)),
            (vec![1, 3], r(1, 12)),
            (vec![3, 1], r(1, 4)),
            (vec![2, 2], r(1, 8)),
            (vec![1, 1, 2], r(1, 24)),
            (vec![1, 2, 1], r(1, 12)),
            (vec![2, 1, 1], r(1, 8)),
            (vec![1, 1, 1, 1], r(1, 24)),
        ];
        for (parts, expected) in table {
            assert_eq!(coefficient(&comp(&parts)), expected, "parts {parts:?}");
        }
    }

    #[test]
    fn coefficient_of_singleton() {
        assert_eq!(coefficient(&comp(&[1])), Rational::one());
        assert_eq!(coefficient(&comp(&[7])), r(1, 7));
    }

    #[test]
    fn expand_order_zero_is_identity() {
        let p = expand_f(0);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient_of(&NCMonomial::identity()), Rational::one());
        assert_eq!(p.render_text(), "I");
    }

    #[test]
    fn expand_order_two() {
        let p = expand_f(2);
        assert_eq!(p.num_terms(), 2);
        assert_eq!(
            p.coefficient_of(&NCMonomial::from_word(vec![1, 1]).unwrap()),
            r(1, 2)
        );
        assert_eq!(
            p.coefficient_of(&NCMonomial::from_word(vec![2]).unwrap()),
            r(1, 2)
        );
        assert_eq!(p.render_text(), "1/2 F1 F1 + 1/2 F2");
    }

    #[test]
    fn expand_order_three() {
        let p = expand_f(3);
        let expected = [
            (vec![1, 1, 1], r(1, 6)),
            (vec![1, 2], r(1, 6)),
            (vec![2, 1], r(1, 3)),
            (vec![3], r(1, 3)),
        ];
        assert_eq!(p.num_terms(), expected.len());
        for (word, c) in expected {
            assert_eq!(
                p.coefficient_of(&NCMonomial::from_word(word.clone()).unwrap()),
                c,
                "word {word:?}"
            );
        }
        assert_eq!(
            p.render_text(),
            "1/6 F1 F1 F1 + 1/6 F1 F2 + 1/3 F2 F1 + 1/3 F3"
        );
    }

    #[test]
    fn expand_order_four() {
        let p = expand_f(4);
        let expected = [
            (vec![1, 1, 1, 1], r(1, 24)),
            (vec![1, 1, 2], r(1, 24)),
            (vec![1, 2, 1], r(1, 12)),
            (vec![1, 3], r(1, 12)),
            (vec![2, 1, 1], r(1, 8)),
            (vec![2, 2], r(1, 8)),
            (vec![3, 1], r(1, 4)),
            (vec![4], r(1, 4)),
        ];
        assert_eq!(p.num_terms(), 8);
        for (word, c) in expected {
            assert_eq!(
                p.coefficient_of(&NCMonomial::from_word(word.clone()).unwrap()),
                c,
                "word {word:?}"
            );
        }
    }

    #[test]
    fn recursion_route_matches_closed_form() {
        for n in 0..=10 {
            assert_eq!(expand_via_recursion(n), expand_f(n), "n = {n}");
        }
    }

    #[test]
    fn suffix_identity() {
        // (n+1) a_{r_1,...,r_i} = a_{r_2,...,r_i} for compositions of n+1
        for n in 0..=9 {
            for c in compositions(n + 1).unwrap() {
                let lhs = Rational::from((n + 1) as i64) * coefficient(&c);
                let rest = &c.parts()[1..];
                let rhs = if rest.is_empty() {
                    Rational::one()
                } else {
                    coefficient(&Composition::new(rest.to_vec()).unwrap())
                };
                assert_eq!(lhs, rhs, "composition {c}");
            }
        }
    }

    #[test]
    fn coefficient_mass_is_one() {
        for n in 1..=10 {
            let direct: Rational = compositions(n)
                .unwrap()
                .iter()
                .map(coefficient)
                .sum();
            assert_eq!(direct, Rational::one(), "n = {n}");
        }
        // independent route: run the recursion with every generator mapped
        // to the scalar 1, so each f_n collapses to its coefficient mass
        let mut mass = vec![Rational::one()];
        for m in 0..10usize {
            let sum: Rational = (0..=m).map(|k| mass[m - k].clone()).sum();
            mass.push(sum * Rational::recip_of(m + 1).unwrap());
        }
        for (n, s) in mass.iter().enumerate() {
            assert_eq!(*s, Rational::one(), "recursion mass at n = {n}");
        }
    }

    #[test]
    fn all_ones_word_coefficient() {
        for n in 1..=10 {
            let c = Composition::new(vec![1; n]).unwrap();
            assert_eq!(coefficient(&c), r(1, factorial(n)));
        }
    }

    #[test]
    fn term_count_and_positivity() {
        for n in 1..=10 {
            let p = expand_f(n);
            assert_eq!(p.num_terms(), 1 << (n - 1));
            assert!(p.terms().all(|(_, c)| c.is_positive()));
        }
    }

    #[test]
    fn evaluate_single_generator() {
        let alg = matrix_algebra(2);
        let dx = alg.inner_derivation(&alg.basis_element(1)).unwrap();
        let assign: BTreeMap<usize, LinearMap> = [(1, dx.clone())].into();
        assert_eq!(evaluate(&expand_f(1), &assign, 4).unwrap(), dx);
    }

    #[test]
    fn evaluate_collapses_to_divided_power() {
        // with only F_1 assigned, every word with a part >= 2 vanishes and
        // expand_f(n) evaluates to F^n / n!
        let alg = matrix_algebra(2);
        let f = alg.inner_derivation(&alg.basis_element(2)).unwrap();
        let assign: BTreeMap<usize, LinearMap> = [(1, f.clone())].into();
        for n in 0..=5 {
            let got = evaluate(&expand_f(n), &assign, 4).unwrap();
            let expected = f.pow(n).scale(&r(1, factorial(n)));
            assert_eq!(got, expected, "n = {n}");
        }
    }

    #[test]
    fn evaluate_with_empty_assignment() {
        // every generator is the zero map, so only the empty word survives
        let assign = BTreeMap::new();
        assert!(evaluate(&expand_f(2), &assign, 3).unwrap().is_zero());
        assert!(evaluate(&expand_f(0), &assign, 3).unwrap().is_identity());
    }

    #[test]
    fn evaluate_checks_dimensions() {
        let assign: BTreeMap<usize, LinearMap> = [(1, LinearMap::identity(2))].into();
        assert!(evaluate(&expand_f(1), &assign, 3).is_err());
    }

    #[test]
    fn polynomial_terms_are_canonical() {
        let mut p = NCPolynomial::zero();
        let w = NCMonomial::from_word(vec![2, 1]).unwrap();
        p.add_term(w.clone(), r(1, 2));
        p.add_term(w.clone(), r(-1, 2));
        assert!(p.is_zero());
        p.add_term(w.clone(), r(1, 3));
        p.add_term(w, r(1, 6));
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.render_text(), "1/2 F2 F1");
    }

    #[test]
    fn json_rendering_shape() {
        let v = serde_json::to_value(expand_f(2)).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"word": [1, 1], "coeff": "1/2"},
                {"word": [2], "coeff": "1/2"},
            ])
        );
    }

    #[test]
    fn zero_generator_index_rejected() {
        assert!(NCMonomial::from_word(vec![0]).is_err());
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
    }
}
