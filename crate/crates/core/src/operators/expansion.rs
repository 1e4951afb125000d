use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::space::SpaceParams;
use crate::arith::{BigRational, GaussianRational, MultiIndex, RadicalCoefficient};
use crate::error::Result;

/// A finite combination `Σ c_α e_α`. Keys are kept in lexicographic order and
/// no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    space: SpaceParams,
    coeffs: BTreeMap<MultiIndex, RadicalCoefficient>,
}

impl BasisExpansion {
    pub fn zero(space: SpaceParams) -> Self {
        BasisExpansion {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    /// `e_α`
    pub fn basis(space: SpaceParams, alpha: MultiIndex) -> Result<Self> {
        space.check_index(&alpha)?;
        let mut v = Self::zero(space);
        v.coeffs.insert(alpha, RadicalCoefficient::one());
        Ok(v)
    }

    pub fn from_terms(
        space: SpaceParams,
        terms: impl IntoIterator<Item = (MultiIndex, RadicalCoefficient)>,
    ) -> Result<Self> {
        let mut v = Self::zero(space);
        for (alpha, c) in terms {
            space.check_index(&alpha)?;
            v.accumulate(alpha, &c)?;
        }
        Ok(v)
    }

    pub fn space(&self) -> SpaceParams {
        self.space
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &RadicalCoefficient)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `e_α` (zero when absent).
    pub fn coefficient(&self, alpha: &MultiIndex) -> RadicalCoefficient {
        self.coeffs.get(alpha).cloned().unwrap_or_else(RadicalCoefficient::zero)
    }

    /// Adds `c · e_α`; fails when `c` and the stored coefficient are unlike
    /// radicals.
    pub(crate) fn accumulate(&mut self, alpha: MultiIndex, c: &RadicalCoefficient) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let merged = match self.coeffs.remove(&alpha) {
            Some(old) => old.checked_add(c)?,
            None => c.clone(),
        };
        if !merged.is_zero() {
            self.coeffs.insert(alpha, merged);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &BasisExpansion) -> Result<BasisExpansion> {
        self.space.check_dim(other.space.n)?;
        let mut out = self.clone();
        for (alpha, c) in &other.coeffs {
            out.accumulate(alpha.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &BasisExpansion) -> Result<BasisExpansion> {
        self.checked_add(&other.scale(&GaussianRational::from_int(-1)))
    }

    pub fn scale(&self, k: &GaussianRational) -> BasisExpansion {
        let mut out = Self::zero(self.space);
        if k.is_zero() {
            return out;
        }
        out.coeffs = self.coeffs.iter().map(|(a, c)| (a.clone(), c.scale(k))).collect();
        out
    }

    /// `Σ_α |c_α|²`, exact.
    pub fn squared_norm(&self) -> BigRational {
        self.coeffs.values().fold(BigRational::zero(), |acc, c| acc + c.norm_sqr())
    }
}

impl fmt::Display for BasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (alpha, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·e[{alpha}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> SpaceParams {
        SpaceParams::new(1, 0).unwrap()
    }

    fn int(k: i64) -> RadicalCoefficient {
        RadicalCoefficient::from_rational(GaussianRational::from_int(k))
    }

    #[test]
    fn parseval() {
        let v = BasisExpansion::from_terms(sp(), [(MultiIndex::from([0]), int(2)), (MultiIndex::from([1]), int(3))]).unwrap();
        assert_eq!(v.squared_norm(), BigRational::from_integer(13.into()));
        let e = BasisExpansion::basis(sp(), MultiIndex::from([7])).unwrap();
        assert_eq!(e.squared_norm(), BigRational::from_integer(1.into()));
        assert!(BasisExpansion::zero(sp()).squared_norm().is_zero());
    }

    #[test]
    fn cancellation_removes_entries() {
        let e = BasisExpansion::basis(sp(), MultiIndex::from([2])).unwrap();
        let z = e.checked_sub(&e).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn wrong_dimension_rejected() {
        assert!(BasisExpansion::basis(sp(), MultiIndex::from([1, 1])).is_err());
    }
}
