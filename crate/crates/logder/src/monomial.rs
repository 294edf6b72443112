//! Graded monomial bases for `k[x,y,z]`, ordered graded-lexicographically
//! within each degree. The fixed order makes every coefficient vector in the
//! engine reproducible across runs.

/// The ordered monomial basis of the degree-`t` piece of `k[x,y,z]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    degree: usize,
    exps: Vec<(usize, usize, usize)>,
}

impl MonomialBasis {
    pub fn new(degree: usize) -> Self {
        let t = degree;
        let mut exps = Vec::with_capacity(dimension(t));
        for i in (0..=t).rev() {
            for j in (0..=t - i).rev() {
                exps.push((i, j, t - i - j));
            }
        }
        MonomialBasis { degree, exps }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(usize, usize, usize)] {
        &self.exps
    }

    pub fn exponent(&self, idx: usize) -> (usize, usize, usize) {
        self.exps[idx]
    }

    /// Position of `x^i y^j z^k` in the graded-lex order; inverse of
    /// [`MonomialBasis::exponent`].
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert_eq!(i + j + k, self.degree);
        index_of(self.degree, i, j)
    }
}

/// `dim k[x,y,z]_t = C(t+2, 2)`.
pub fn dimension(t: usize) -> usize {
    (t + 1) * (t + 2) / 2
}

/// Closed-form graded-lex position of `x^i y^j z^(t-i-j)` in degree `t`.
pub fn index_of(t: usize, i: usize, j: usize) -> usize {
    let m = t - i;
    m * (m + 1) / 2 + (m - j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_and_one() {
        let b0 = MonomialBasis::new(0);
        assert_eq!(b0.exponents(), &[(0, 0, 0)]);
        let b1 = MonomialBasis::new(1);
        assert_eq!(b1.exponents(), &[(1, 0, 0), (0, 1, 0), (0, 0, 1)]);
    }

    #[test]
    fn degree_four_count() {
        assert_eq!(MonomialBasis::new(4).len(), 15);
        assert_eq!(dimension(4), 15);
    }

    #[test]
    fn index_is_inverse_of_exponent() {
        for t in 0..=9 {
            let b = MonomialBasis::new(t);
            assert_eq!(b.len(), dimension(t));
            for (idx, &(i, j, k)) in b.exponents().iter().enumerate() {
                assert_eq!(i + j + k, t);
                assert_eq!(b.index(i, j, k), idx);
            }
        }
    }
}
