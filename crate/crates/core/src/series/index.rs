use std::fmt;

/// Largest number of formal variables a series may carry (x, y and one auxiliary).
pub const MAX_VARS: usize = 3;

/// Exponent vector of a monomial. Ordered lexicographically by exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    exps: [u32; MAX_VARS],
    arity: u8,
}

impl MultiIndex {
    /// Panics if more than [`MAX_VARS`] exponents are given.
    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        MultiIndex {
            exps: e,
            arity: exps.len() as u8,
        }
    }

    pub fn zero(arity: usize) -> Self {
        MultiIndex::new(&[0; MAX_VARS][..arity])
    }

    pub fn unit(arity: usize, var: usize) -> Self {
        let mut m = MultiIndex::zero(arity);
        m.exps[var] = 1;
        m
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps[..self.arity()]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn get(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub(crate) fn plus(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps) {
            *a += b;
        }
        out
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exps().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_order() {
        let a = MultiIndex::new(&[2, 1]);
        assert_eq!(a.total_degree(), 3);
        assert!(MultiIndex::new(&[1, 5]) < MultiIndex::new(&[2, 0]));
        assert_eq!(a.to_string(), "(2,1)");
        assert_eq!(a.plus(&MultiIndex::unit(2, 1)), MultiIndex::new(&[2, 2]));
    }
}
