use std::collections::BTreeMap;

use super::{PolyError, SparsePolynomial, Var};

/// A linear specialization of variables: each source variable maps to a
/// polynomial of degree at most one in the target variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    images: BTreeMap<Var, SparsePolynomial>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(vars: impl IntoIterator<Item = Var>) -> Self {
        Substitution {
            images: vars.into_iter().map(|v| (v, SparsePolynomial::var(v))).collect(),
        }
    }

    /// Sets the image of `v`. Images of degree above one are rejected.
    pub fn set(&mut self, v: Var, image: SparsePolynomial) -> Result<&mut Self, PolyError> {
        let degree = image.total_degree().unwrap_or(0);
        if degree > 1 {
            return Err(PolyError::NonLinearImage { var: v.name(), degree });
        }
        self.images.insert(v, image);
        Ok(self)
    }

    pub fn with(mut self, v: Var, image: SparsePolynomial) -> Result<Self, PolyError> {
        self.set(v, image)?;
        Ok(self)
    }

    pub fn image(&self, v: Var) -> Option<&SparsePolynomial> {
        self.images.get(&v)
    }

    pub fn images(&self) -> impl Iterator<Item = (Var, &SparsePolynomial)> {
        self.images.iter().map(|(v, p)| (*v, p))
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `true` when every image is homogeneous linear (no constants, not zero).
    pub fn is_homogeneous_linear(&self) -> bool {
        self.images.values().all(|p| p.degree() == Some(1))
    }

    /// The substitution `after ∘ self`: apply `self` first, then `after`.
    pub fn then(&self, after: &Substitution) -> Result<Substitution, PolyError> {
        let mut images = BTreeMap::new();
        for (v, p) in &self.images {
            images.insert(*v, p.substitute(after)?);
        }
        Ok(Substitution { images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{make_determinant, Rational};

    #[test]
    fn identity_leaves_polynomial_unchanged() {
        let det = make_determinant(3).unwrap();
        let id = Substitution::identity(det.variables());
        assert_eq!(det.substitute(&id).unwrap(), det);
    }

    #[test]
    fn zeroing_off_diagonal_of_det2() {
        let det = make_determinant(2).unwrap();
        let a = Substitution::identity(det.variables())
            .with(Var::x(1, 2), SparsePolynomial::zero())
            .unwrap()
            .with(Var::x(2, 1), SparsePolynomial::zero())
            .unwrap();
        let expected = &SparsePolynomial::var(Var::x(1, 1)) * &SparsePolynomial::var(Var::x(2, 2));
        assert_eq!(det.substitute(&a).unwrap(), expected);
    }

    #[test]
    fn rejects_nonlinear_images_and_unmapped_variables() {
        let sq = SparsePolynomial::var(Var::ELL).pow(2);
        assert!(matches!(
            Substitution::new().with(Var::ELL, sq),
            Err(PolyError::NonLinearImage { degree: 2, .. })
        ));
        let p = SparsePolynomial::var(Var::ELL1);
        assert!(matches!(p.substitute(&Substitution::new()), Err(PolyError::UnmappedVariable(_))));
    }

    #[test]
    fn affine_images_are_accepted() {
        let img = &SparsePolynomial::var(Var::ELL) + &SparsePolynomial::constant(Rational::from_integer(2.into()));
        let s = Substitution::new().with(Var::ELL1, img).unwrap();
        assert!(!s.is_homogeneous_linear());
    }
}
