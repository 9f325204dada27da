//! Coxeter matrices and Coxeter transformations.
//!
//! `Φ = -(c^-tr) * c` and `Φ^-1 = -(c^-1) * c^tr`; on row vectors
//! `Φ(x) = -(x * c^-tr) * c` and `Φ⁻(y) = -(y * c^-1) * c^tr`, always with
//! this grouping.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::cartan::{dim_injective, CartanPair};
use crate::error::{Error, Result};
use crate::lazymatrix::{apply_vector, multiply, LazyIntMatrix, LazyVector, Side, Support};
use crate::presentation::Presentation;
use crate::vertex::{IndexWindow, SparseVector, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxDirection {
    Forward,
    Inverse,
}

/// Which generating family a coefficient vector refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generators {
    /// `dim E(a)`, rows of the Cartan matrix.
    Injectives,
    /// `dim Ê(a)`, columns of the Cartan matrix.
    OpInjectives,
}

/// An argument of a Coxeter transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoxInput {
    Sparse(SparseVector),
    /// `sum_a coeffs[a] * generator(a)`.
    Combination {
        coeffs: SparseVector,
        generators: Generators,
    },
}

#[derive(Debug, Clone)]
pub struct CoxeterOperator {
    pub pair: CartanPair,
    cartan_tr: LazyIntMatrix,
    inverse_tr: LazyIntMatrix,
}

impl CoxeterOperator {
    pub fn new(p: &Presentation) -> Result<CoxeterOperator> {
        let pair = CartanPair::new(p)?;
        Ok(CoxeterOperator {
            cartan_tr: pair.cartan.transpose(),
            inverse_tr: pair.inverse.transpose(),
            pair,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pair.presentation
    }

    pub fn matrix(&self, direction: CoxDirection) -> LazyIntMatrix {
        match direction {
            CoxDirection::Forward => multiply(&self.inverse_tr.negate(), &self.pair.cartan),
            CoxDirection::Inverse => multiply(&self.pair.inverse.negate(), &self.cartan_tr),
        }
    }

    /// Evaluates `Φ(x)` or `Φ⁻(x)`.
    ///
    /// For a combination of the generators that the transformation sends to
    /// the other family, the intermediate product is exactly the coefficient
    /// vector; it is checked at the coefficient support and its neighbors.
    pub fn apply(&self, x: &CoxInput, direction: CoxDirection) -> Result<LazyVector> {
        let (first, second) = match direction {
            CoxDirection::Forward => (&self.inverse_tr, &self.pair.cartan),
            CoxDirection::Inverse => (&self.pair.inverse, &self.cartan_tr),
        };
        match x {
            CoxInput::Sparse(v) => {
                let mid = apply_vector(&LazyVector::from_sparse(v), first)?;
                let mid = mid.to_sparse()?.ok_or(Error::NotInDomain)?;
                Ok(apply_vector(&LazyVector::from_sparse(&mid), second)?.neg())
            }
            CoxInput::Combination { coeffs, generators } => {
                let lazy = self.combination(coeffs, *generators)?;
                let shortcut = matches!(
                    (direction, generators),
                    (CoxDirection::Forward, Generators::OpInjectives) | (CoxDirection::Inverse, Generators::Injectives)
                );
                if let Some(v) = lazy.to_sparse()? {
                    if !shortcut {
                        return self.apply(&CoxInput::Sparse(v), direction);
                    }
                }
                if shortcut {
                    let mid = apply_vector(&lazy, first)?;
                    let mut probe: Vec<VertexId> = coeffs.support().cloned().collect();
                    probe = self.presentation().ball(&probe, 1)?;
                    for k in &probe {
                        if mid.get(k)? != coeffs.get(k) {
                            return Err(Error::NotInDomain);
                        }
                    }
                    let image = match generators {
                        Generators::OpInjectives => Generators::Injectives,
                        Generators::Injectives => Generators::OpInjectives,
                    };
                    return Ok(self.combination(coeffs, image)?.neg());
                }
                let mid = apply_vector(&lazy, first)?;
                Ok(apply_vector(&mid, second)?.neg())
            }
        }
    }

    /// `sum_a coeffs[a] * generator(a)` as a lazy vector.
    pub fn combination(&self, coeffs: &SparseVector, generators: Generators) -> Result<LazyVector> {
        let side = match generators {
            Generators::Injectives => Side::Left,
            Generators::OpInjectives => Side::Right,
        };
        let mut acc = LazyVector::from_sparse(&SparseVector::zero());
        for (a, c) in coeffs.iter() {
            let g = dim_injective(self.presentation(), a, side)?;
            acc = acc.add(&g.scaled(c.clone()));
        }
        Ok(acc)
    }

    /// Checks `Φ(dim Ê(a)) = -dim E(a)` and `Φ⁻(dim E(a)) = -dim Ê(a)` at the
    /// coordinates of `sample`, evaluating the defining products directly.
    /// The intermediate vector is read on `sample`, which must contain `a`.
    pub fn verify_generator_identities(&self, a: &VertexId, sample: &IndexWindow) -> Result<bool> {
        let p = self.presentation();
        let col = dim_injective(p, a, Side::Right)?;
        let row = dim_injective(p, a, Side::Left)?;
        let checks = [
            (&col, &self.inverse_tr, &self.pair.cartan, &row),
            (&row, &self.pair.inverse, &self.cartan_tr, &col),
        ];
        for (x, first, second, expected) in checks {
            let mid = apply_vector(x, first)?.restrict(sample)?;
            let out = apply_vector(&LazyVector::from_sparse(&mid), second)?.neg();
            for v in sample {
                if out.get(v)? != -expected.get(v)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Coefficients of a finitely supported `x` in one of the generating
    /// families, or `NotInSubgroup`.
    pub fn decompose(&self, x: &SparseVector, generators: Generators) -> Result<SparseVector> {
        let (inv, cart, name) = match generators {
            Generators::Injectives => (&self.pair.inverse, &self.pair.cartan, "injective dimension vectors"),
            Generators::OpInjectives => (&self.inverse_tr, &self.cartan_tr, "op-injective dimension vectors"),
        };
        let lambda = apply_vector(&LazyVector::from_sparse(x), inv)?
            .to_sparse()?
            .ok_or(Error::NotInSubgroup(name))?;
        let back = apply_vector(&LazyVector::from_sparse(&lambda), cart)?;
        let mut coords: BTreeSet<VertexId> = x.support().cloned().collect();
        coords.extend(lambda.support().cloned());
        match back.support() {
            Support::Finite(s) => coords.extend(s.iter().cloned()),
            _ => {
                let seed: Vec<VertexId> = coords.iter().cloned().collect();
                coords.extend(self.presentation().ball(&seed, 2)?);
            }
        }
        for v in &coords {
            if back.get(v)? != x.get(v) {
                return Err(Error::NotInSubgroup(name));
            }
        }
        Ok(lambda)
    }
}

/// Convenience: `Φ` or `Φ⁻` on a finitely supported vector, restricted to `w`.
pub fn apply_on_window(
    op: &CoxeterOperator,
    x: &SparseVector,
    direction: CoxDirection,
    w: &IndexWindow,
) -> Result<Vec<BigInt>> {
    op.apply(&CoxInput::Sparse(x.clone()), direction)?.evaluate(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn v(n: i64) -> VertexId {
        VertexId::Int(n)
    }

    fn lit(s: &str) -> SparseVector {
        SparseVector::parse_literal(s).unwrap()
    }

    #[test]
    fn a_infinity_shift() {
        let op = CoxeterOperator::new(&Presentation::a_infinity()).unwrap();
        let y = op
            .apply(&CoxInput::Sparse(lit("1@1,1@2")), CoxDirection::Forward)
            .unwrap();
        assert_eq!(y.to_sparse().unwrap().unwrap(), lit("1@2,1@3"));
        let zero = op
            .apply(&CoxInput::Sparse(SparseVector::zero()), CoxDirection::Forward)
            .unwrap();
        assert_eq!(zero.to_sparse().unwrap().unwrap(), SparseVector::zero());
    }

    #[test]
    fn za_infinity_shift_both_ways() {
        let z = Presentation::za_infinity();
        let op = CoxeterOperator::new(&z).unwrap();
        let w = z.window("-3..8").unwrap();
        let x = lit("1@0,2@3,-1@5");
        let f = op.apply(&CoxInput::Sparse(x.clone()), CoxDirection::Forward).unwrap();
        assert_eq!(f.restrict(&w).unwrap(), lit("1@1,2@4,-1@6"));
        let b = op.apply(&CoxInput::Sparse(x), CoxDirection::Inverse).unwrap();
        assert_eq!(b.restrict(&w).unwrap(), lit("1@-1,2@2,-1@4"));
    }

    #[test]
    fn generator_identities() {
        let a = Presentation::a_infinity();
        let op = CoxeterOperator::new(&a).unwrap();
        assert!(op
            .verify_generator_identities(&v(0), &a.window("0..10").unwrap())
            .unwrap());
        let d = Presentation::d_infinity();
        let op = CoxeterOperator::new(&d).unwrap();
        assert!(op
            .verify_generator_identities(&v(1), &d.window("-1..6").unwrap())
            .unwrap());
        let a2 = parse_presentation("kind quiver\narrow 0 1").unwrap();
        let op = CoxeterOperator::new(&a2).unwrap();
        for x in [v(0), v(1)] {
            assert!(op.verify_generator_identities(&x, &a2.window("0..1").unwrap()).unwrap());
        }
    }

    #[test]
    fn combination_input() {
        let a = Presentation::a_infinity();
        let op = CoxeterOperator::new(&a).unwrap();
        let x = CoxInput::Combination {
            coeffs: SparseVector::unit(v(0)),
            generators: Generators::OpInjectives,
        };
        let y = op.apply(&x, CoxDirection::Forward).unwrap();
        assert_eq!(y.to_sparse().unwrap().unwrap(), lit("-1@0"));
    }

    #[test]
    fn decomposition() {
        let op = CoxeterOperator::new(&Presentation::a_infinity()).unwrap();
        assert_eq!(
            op.decompose(&lit("1@3"), Generators::Injectives).unwrap(),
            lit("1@3,-1@2")
        );
        let e5 = lit("1@0,1@1,1@2,1@3,1@4,1@5");
        assert_eq!(op.decompose(&e5, Generators::Injectives).unwrap(), lit("1@5"));
    }
}
