use crate::poly::Poly;

use super::{FamilySpec, GfpError};

/// Memoized recurrence values `G_0, G_1, ...` of one family.
///
/// A cache has a single owner; verification workers each build their own.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    family: FamilySpec,
    terms: Vec<Poly>,
}

impl SequenceCache {
    pub fn new(family: FamilySpec) -> Self {
        let terms = vec![family.p0.clone(), family.p1.clone()];
        SequenceCache { family, terms }
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    /// Number of memoized terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `G_n` by unrolling `G_n = d G_{n-1} + g G_{n-2}`.
    pub fn term(&mut self, n: i64) -> Result<&Poly, GfpError> {
        let idx = usize::try_from(n).map_err(|_| GfpError::NegativeIndex(n))?;
        while self.terms.len() <= idx {
            let k = self.terms.len();
            let next =
                &(&self.family.d * &self.terms[k - 1]) + &(&self.family.g * &self.terms[k - 2]);
            self.terms.push(next);
        }
        Ok(&self.terms[idx])
    }

    /// `G_0 ..= G_n`.
    pub fn terms_through(&mut self, n: i64) -> Result<&[Poly], GfpError> {
        self.term(n)?;
        Ok(&self.terms[..=n as usize])
    }
}
