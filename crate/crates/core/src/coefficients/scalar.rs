use smallvec::SmallVec;

/// An element of a graded coefficient ring.
///
/// Stored as `(degree, code)` pairs sorted by degree with no zero codes;
/// the meaning of a code is fixed by the owning [`CoefficientRing`](super::CoefficientRing).
/// The ring key identifies that owner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedScalar {
    pub(crate) key: u64,
    pub(crate) parts: SmallVec<[(i32, u64); 2]>,
}

impl GradedScalar {
    pub(crate) fn zero_with(key: u64) -> Self {
        GradedScalar {
            key,
            parts: SmallVec::new(),
        }
    }

    pub(crate) fn homogeneous(key: u64, degree: i32, code: u64) -> Self {
        let mut parts = SmallVec::new();
        if code != 0 {
            parts.push((degree, code));
        }
        GradedScalar { key, parts }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Degrees carrying a nonzero component, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.parts.iter().map(|&(d, _)| d)
    }

    /// The degree if the scalar is nonzero and homogeneous.
    pub fn degree(&self) -> Option<i32> {
        match self.parts.as_slice() {
            [(d, _)] => Some(*d),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parts.len() <= 1
    }

    /// Homogeneous components, ascending in degree.
    pub fn components(&self) -> impl Iterator<Item = GradedScalar> + '_ {
        self.parts.iter().map(move |&(d, c)| GradedScalar::homogeneous(self.key, d, c))
    }

    pub fn component(&self, degree: i32) -> GradedScalar {
        let code = self.parts.iter().find(|(d, _)| *d == degree).map(|&(_, c)| c).unwrap_or(0);
        GradedScalar::homogeneous(self.key, degree, code)
    }

    /// Raw `(degree, code)` pairs.
    pub fn raw_parts(&self) -> &[(i32, u64)] {
        &self.parts
    }
}
