use super::real::Real;

/// Neumaier-compensated sum of `terms` in the order given.
///
/// Works at the widest precision among the terms (or `min_prec`, whichever
/// is larger); the empty sum is zero at `min_prec`.
pub fn sum_ordered<'a, I>(terms: I, min_prec: usize) -> Real
where
    I: IntoIterator<Item = &'a Real>,
{
    let mut sum = Real::zero(min_prec);
    let mut comp = Real::zero(min_prec);
    for t in terms {
        let p = sum.prec().max(t.prec());
        let next = sum.add_prec(t, p);
        // recover the low-order part lost by the addition
        let lost = if sum.abs() >= t.abs() {
            sum.sub_prec(&next, p).add_prec(t, p)
        } else {
            t.sub_prec(&next, p).add_prec(&sum, p)
        };
        comp = comp.add_prec(&lost, p);
        sum = next;
    }
    let p = sum.prec();
    sum.add_prec(&comp, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn empty_is_zero() {
        assert!(sum_ordered(&Vec::new(), 128).is_zero());
    }

    #[test]
    fn cancelling_pair() {
        let terms = vec![Real::one(128), Real::from_i64(-1, 128)];
        assert!(sum_ordered(&terms, 128).is_zero());
    }

    #[test]
    fn powers_of_two_are_exact() {
        let terms = vec![Real::pow2(-200, 256); 1 << 10];
        assert!(sum_ordered(&terms, 256).bit_eq(&Real::pow2(-190, 256)));
    }

    #[test]
    fn compensation_recovers_small_terms() {
        // 1 + 2^-100 repeated: plain 64-bit summation drops every small term
        let mut terms = vec![Real::one(64)];
        terms.extend(core::iter::repeat(Real::pow2(-100, 64)).take(8));
        terms.push(Real::from_i64(-1, 64));
        let s = sum_ordered(&terms, 64);
        assert_eq!(s, Real::pow2(-97, 64));
    }
}
