//! Axiom checkers. Every failed check carries the lexicographically smallest
//! failing basis tuple together with both sides of the equation.

use num_traits::One;
use serde::Serialize;

use super::{add3, FiniteAlgebra, FiniteBialgebra, FiniteCoalgebra, LinearOperator, Tensor3};
use crate::scalars::{render_terms, DenseMatrix, SparseTensor, SparseVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub basis: Vec<usize>,
    pub names: Vec<String>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub ok: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn passed(&self, axiom: &str) -> Option<bool> {
        self.get(axiom).map(|c| c.ok)
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    fn push(&mut self, axiom: &str, witness: Option<Witness>) {
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            ok: witness.is_none(),
            witness,
        });
    }
}

fn witness(names: &[String], basis: Vec<usize>, left: String, right: String) -> Witness {
    Witness {
        names: basis
            .iter()
            .map(|&i| names.get(i).cloned().unwrap_or_else(|| format!("e{i}")))
            .collect(),
        basis,
        left,
        right,
    }
}

fn render3(t: &Tensor3, names: &[String]) -> String {
    let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("e{i}"));
    render_terms(
        t.iter()
            .map(|((i, j, l), c)| (format!("{}⊗{}⊗{}", name(*i), name(*j), name(*l)), c)),
    )
}

/// Associativity and unitarity.
pub fn check_algebra(a: &FiniteAlgebra) -> AxiomReport {
    let d = a.dim();
    let names = a.names();
    let mut report = AxiomReport::default();

    let mut assoc = None;
    'outer: for i in 0..d {
        for j in 0..d {
            let ij = a.product(i, j);
            for k in 0..d {
                let left = a.multiply(ij, &SparseVector::basis(k));
                let right = a.multiply(&SparseVector::basis(i), a.product(j, k));
                if left != right {
                    assoc = Some(witness(
                        names,
                        vec![i, j, k],
                        left.render(names),
                        right.render(names),
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.push("associativity", assoc);

    let mut unitarity = None;
    for i in 0..d {
        let e = SparseVector::basis(i);
        let left = a.multiply(a.unit(), &e);
        let right = a.multiply(&e, a.unit());
        if left != e || right != e {
            let bad = if left != e { left } else { right };
            unitarity = Some(witness(names, vec![i], bad.render(names), e.render(names)));
            break;
        }
    }
    report.push("unitarity", unitarity);
    report
}

fn comult_left(c: &FiniteCoalgebra, i: usize) -> Tensor3 {
    // (Δ ⊗ id) ∘ Δ
    let mut out = Tensor3::new();
    for ((p, q), a) in c.coproduct(i).iter() {
        for ((r, s), b) in c.coproduct(p).iter() {
            add3(&mut out, (r, s, q), a * b);
        }
    }
    out
}

fn comult_right(c: &FiniteCoalgebra, i: usize) -> Tensor3 {
    // (id ⊗ Δ) ∘ Δ
    let mut out = Tensor3::new();
    for ((p, q), a) in c.coproduct(i).iter() {
        for ((r, s), b) in c.coproduct(q).iter() {
            add3(&mut out, (p, r, s), a * b);
        }
    }
    out
}

/// Coassociativity and counitarity.
pub fn check_coalgebra(c: &FiniteCoalgebra) -> AxiomReport {
    let d = c.dim();
    let names = c.names();
    let mut report = AxiomReport::default();

    let mut coassoc = None;
    for i in 0..d {
        let left = comult_left(c, i);
        let right = comult_right(c, i);
        if left != right {
            coassoc = Some(witness(
                names,
                vec![i],
                render3(&left, names),
                render3(&right, names),
            ));
            break;
        }
    }
    report.push("coassociativity", coassoc);

    let mut counit = None;
    for i in 0..d {
        let mut left = SparseVector::new();
        let mut right = SparseVector::new();
        for ((p, q), a) in c.coproduct(i).iter() {
            left.add_term(q, a * c.counit(p));
            right.add_term(p, a * c.counit(q));
        }
        let e = SparseVector::basis(i);
        if left != e || right != e {
            let bad = if left != e { left } else { right };
            counit = Some(witness(names, vec![i], bad.render(names), e.render(names)));
            break;
        }
    }
    report.push("counitarity", counit);
    report
}

/// The m-weak conditions (bi2) `Δ∘η = η⊗η`, (bi3) `ε∘∇ = ε⊗ε`, (bi4) `ε∘η = 1`.
pub fn check_mweak(b: &FiniteBialgebra) -> AxiomReport {
    let (a, c) = (&b.algebra, &b.coalgebra);
    let names = b.names();
    let d = b.dim();
    let mut report = AxiomReport::default();

    let left = c.comultiply(a.unit());
    let right = a.unit().tensor(a.unit());
    let bi2 =
        (left != right).then(|| witness(names, vec![], left.render(names), right.render(names)));
    report.push("bi2", bi2);

    let mut bi3 = None;
    'outer: for i in 0..d {
        for j in 0..d {
            let left = c.apply_counit(a.product(i, j));
            let right = c.counit(i) * c.counit(j);
            if left != right {
                bi3 = Some(witness(
                    names,
                    vec![i, j],
                    left.to_string(),
                    right.to_string(),
                ));
                break 'outer;
            }
        }
    }
    report.push("bi3", bi3);

    let eu = c.apply_counit(a.unit());
    let bi4 = (!eu.is_one()).then(|| witness(names, vec![], eu.to_string(), "1".into()));
    report.push("bi4", bi4);
    report
}

/// (bi1): `(∇⊗∇) ∘ T ∘ (Δ⊗Δ) = Δ ∘ ∇` on every basis pair.
pub fn check_strong(b: &FiniteBialgebra) -> AxiomReport {
    let (a, c) = (&b.algebra, &b.coalgebra);
    let names = b.names();
    let d = b.dim();
    let mut found = None;
    'outer: for i in 0..d {
        for j in 0..d {
            let mut left = SparseTensor::new();
            for ((p, q), x) in c.coproduct(i).iter() {
                for ((r, s), y) in c.coproduct(j).iter() {
                    let coeff = x * y;
                    left.add_scaled(&a.product(p, r).tensor(a.product(q, s)), &coeff);
                }
            }
            let right = c.comultiply(a.product(i, j));
            if left != right {
                found = Some(witness(
                    names,
                    vec![i, j],
                    left.render(names),
                    right.render(names),
                ));
                break 'outer;
            }
        }
    }
    let mut report = AxiomReport::default();
    report.push("bi1", found);
    report
}

/// Whether `∇ : A ⊗ A → A` is an algebra morphism for the tensor-product
/// algebra structure on `A ⊗ A`.
pub fn multiplication_is_algebra_morphism(a: &FiniteAlgebra) -> bool {
    let d = a.dim();
    // ∇(∇̄((e_i⊗e_j)(e_k⊗e_l))) = (e_i e_k)(e_j e_l) must equal (e_i e_j)(e_k e_l)
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let left = a.multiply(a.product(i, k), a.product(j, l));
                    let right = a.multiply(a.product(i, j), a.product(k, l));
                    if left != right {
                        return false;
                    }
                }
            }
        }
    }
    a.multiply(a.unit(), a.unit()) == *a.unit()
}

/// Grouplike elements (`Δ(b) = b⊗b`, `ε(b) = 1`) among the basis vectors and
/// the unit, in that order, without repetition.
pub fn grouplike_elements(b: &FiniteBialgebra) -> Vec<SparseVector> {
    let c = &b.coalgebra;
    let mut candidates: Vec<SparseVector> = (0..b.dim()).map(SparseVector::basis).collect();
    candidates.push(b.algebra.unit().clone());
    let mut out: Vec<SparseVector> = Vec::new();
    for v in candidates {
        if out.contains(&v) {
            continue;
        }
        if c.comultiply(&v) == v.tensor(&v) && c.apply_counit(&v).is_one() {
            out.push(v);
        }
    }
    out
}

/// Linear independence by rank.
pub fn vectors_independent(vs: &[SparseVector], dim: usize) -> bool {
    let mut m = DenseMatrix::zeros(dim, vs.len());
    for (c, v) in vs.iter().enumerate() {
        m.set_column(c, v);
    }
    m.rank() == vs.len()
}

/// Antimorphism equations for an antipode candidate:
/// `S∘∇ = ∇^op∘(S⊗S)` and `Δ^op∘S = (S⊗S)∘Δ`.
pub fn check_antimorphism(b: &FiniteBialgebra, s: &LinearOperator) -> AxiomReport {
    let (a, c) = (&b.algebra, &b.coalgebra);
    let names = b.names();
    let d = b.dim();
    let mut report = AxiomReport::default();

    let mut alg = None;
    'outer: for i in 0..d {
        for j in 0..d {
            let left = s.apply(a.product(i, j));
            let right = a.multiply(&s.image(j), &s.image(i));
            if left != right {
                alg = Some(witness(
                    names,
                    vec![i, j],
                    left.render(names),
                    right.render(names),
                ));
                break 'outer;
            }
        }
    }
    report.push("algebra antimorphism", alg);

    let mut coalg = None;
    for i in 0..d {
        let left = c.comultiply(&s.image(i)).twisted();
        let mut right = SparseTensor::new();
        for ((p, q), x) in c.coproduct(i).iter() {
            right.add_scaled(&s.image(p).tensor(&s.image(q)), x);
        }
        if left != right {
            coalg = Some(witness(
                names,
                vec![i],
                left.render(names),
                right.render(names),
            ));
            break;
        }
    }
    report.push("coalgebra antimorphism", coalg);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::*;
    use crate::scalars::int;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn quaternions_are_an_algebra() {
        assert!(check_algebra(&quaternion_fixture().algebra).all_ok());
    }

    #[test]
    fn matrix_algebra_passes() {
        for n in 1..=3 {
            let m = matrix_bialgebra(n).unwrap();
            assert!(check_algebra(&m.algebra).all_ok());
            assert!(check_coalgebra(&m.coalgebra).all_ok());
        }
    }

    #[test]
    fn broken_unit_reports_witness() {
        // e0 e0 = e1, e1 absorbing, unit claimed to be e0
        let mult = vec![
            SparseVector::basis(1),
            SparseVector::basis(1),
            SparseVector::basis(1),
            SparseVector::basis(1),
        ];
        let a = FiniteAlgebra::new(names(&["a", "b"]), mult, SparseVector::basis(0)).unwrap();
        let report = check_algebra(&a);
        let unit = report.get("unitarity").unwrap();
        assert!(!unit.ok);
        assert_eq!(unit.witness.as_ref().unwrap().basis, vec![0]);
        assert_eq!(report.passed("associativity"), Some(true));
    }

    #[test]
    fn diagonal_and_complex_coalgebras_pass() {
        let diag = diagonal_coalgebra(names(&["x", "y", "z"]));
        assert!(check_coalgebra(&diag).all_ok());
        assert!(check_coalgebra(&complex_coalgebra_fixture()).all_ok());
    }

    #[test]
    fn matrix_coalgebra_not_cocommutative() {
        let m = matrix_bialgebra(2).unwrap();
        assert!(!m.coalgebra.is_cocommutative());
        assert!(matrix_bialgebra(1).unwrap().coalgebra.is_cocommutative());
    }

    #[test]
    fn quaternion_bi1_witness_is_i_i() {
        let report = check_strong(&quaternion_fixture());
        let bi1 = report.get("bi1").unwrap();
        assert!(!bi1.ok);
        let w = bi1.witness.as_ref().unwrap();
        assert_eq!(w.names, vec!["i", "i"]);
        // (−1)⊗(−1) = 1⊗1 on the left, Δ(−1) = −1⊗1 on the right
        assert_eq!(w.left, "1⊗1");
        assert_eq!(w.right, "-1⊗1");
    }

    #[test]
    fn quaternion_counit_is_not_multiplicative() {
        // ε(b) = 1 on every basis element, so ε(i·i) = −1 ≠ ε(i)ε(i)
        let report = check_mweak(&quaternion_fixture());
        assert_eq!(report.passed("bi2"), Some(true));
        assert_eq!(report.passed("bi4"), Some(true));
        let bi3 = report.get("bi3").unwrap();
        assert!(!bi3.ok);
        assert_eq!(bi3.witness.as_ref().unwrap().names, vec!["i", "i"]);
    }

    #[test]
    fn zero_counit_on_unit_fails_bi4() {
        let q = quaternion_fixture();
        let d = q.dim();
        let comult = (0..d).map(|i| q.coalgebra.coproduct(i).clone()).collect();
        let counit = vec![int(0), int(1), int(1), int(1)];
        let c = FiniteCoalgebra::new(q.names().to_vec(), comult, counit).unwrap();
        let b = FiniteBialgebra::new(q.algebra.clone(), c).unwrap();
        assert_eq!(check_mweak(&b).passed("bi4"), Some(false));
    }

    #[test]
    fn matrix_bialgebra_compatibility() {
        let m1 = matrix_bialgebra(1).unwrap();
        assert!(check_strong(&m1).all_ok());
        assert!(check_mweak(&m1).all_ok());
        for n in 2..=3 {
            let m = matrix_bialgebra(n).unwrap();
            let strong = check_strong(&m);
            let w = strong.get("bi1").unwrap().witness.as_ref().unwrap();
            assert_eq!(w.names, ["B11", "B11"]);
            assert_eq!(w.left, "B11⊗B11");
            let weak = check_mweak(&m);
            assert_eq!(weak.passed("bi2"), Some(false));
            assert_eq!(weak.passed("bi3"), Some(false));
            assert_eq!(weak.passed("bi4"), Some(false));
        }
    }

    #[test]
    fn eckmann_hilton_equivalence() {
        let fixtures = [
            quaternion_fixture().algebra,
            matrix_bialgebra(2).unwrap().algebra,
            cyclic_group_algebra(3).unwrap().algebra,
            symmetric_group_s3().algebra,
        ];
        for a in &fixtures {
            assert_eq!(multiplication_is_algebra_morphism(a), a.is_commutative());
        }
    }

    #[test]
    fn grouplikes_of_quaternions_are_the_basis() {
        let q = quaternion_fixture();
        let g = grouplike_elements(&q);
        assert_eq!(g.len(), 4);
        assert!(vectors_independent(&g, 4));
    }
}
