//! Monomials with bounded nonnegative exponents packed into one `u128`.
//!
//! The total degree sits in the top field and the exponent of variable 0 in
//! the next one, so integer order on keys is the graded-lex order of
//! [`Monomial`]. Every field carries one spare bit, so adding two keys whose
//! fields are within the bounds never carries into a neighbour.

use smallvec::SmallVec;

use super::Monomial;

pub(crate) struct Packing {
    shifts: Vec<u32>,
    bounds: Vec<u32>,
    deg_shift: u32,
    deg_bound: u64,
}

fn field_width(bound: u64) -> u32 {
    (64 - bound.leading_zeros()) + 1
}

impl Packing {
    /// Layout for monomials with exponent `i` at most `bounds[i]` and total
    /// degree at most `deg_bound`; `None` when it needs more than 128 bits.
    pub(crate) fn new(bounds: &[u32], deg_bound: u64) -> Option<Packing> {
        let mut shift = 0u32;
        let mut shifts = vec![0; bounds.len()];
        for i in (0..bounds.len()).rev() {
            shifts[i] = shift;
            shift += field_width(bounds[i] as u64);
        }
        let deg_shift = shift;
        if deg_shift + field_width(deg_bound) > 128 {
            return None;
        }
        Some(Packing { shifts, bounds: bounds.to_vec(), deg_shift, deg_bound })
    }

    /// Layout covering every monomial of the given exponent vectors.
    pub(crate) fn covering<'a>(monomials: impl Iterator<Item = &'a Monomial>) -> Option<Packing> {
        let mut bounds: Vec<u32> = Vec::new();
        let mut deg = 0u64;
        for m in monomials {
            let e = m.exponents();
            if bounds.len() < e.len() {
                bounds.resize(e.len(), 0);
            }
            let mut d = 0u64;
            for (b, &x) in bounds.iter_mut().zip(e) {
                let x = u32::try_from(x).ok()?;
                *b = (*b).max(x);
                d += x as u64;
            }
            deg = deg.max(d);
        }
        Packing::new(&bounds, deg)
    }

    pub(crate) fn pack(&self, m: &Monomial) -> u128 {
        let mut key = 0u128;
        let mut deg = 0u128;
        for (i, &e) in m.exponents().iter().enumerate() {
            key |= (e as u128) << self.shifts[i];
            deg += e as u128;
        }
        key | deg << self.deg_shift
    }

    fn field(&self, key: u128, i: usize) -> u32 {
        let width = self.shifts.get(i.wrapping_sub(1)).copied().unwrap_or(self.deg_shift) - self.shifts[i];
        ((key >> self.shifts[i]) & ((1u128 << width) - 1)) as u32
    }

    pub(crate) fn unpack(&self, key: u128) -> Monomial {
        let e: SmallVec<[i32; 8]> = (0..self.shifts.len()).map(|i| self.field(key, i) as i32).collect();
        Monomial::from_exponents(&e)
    }

    /// `m / d` when every exponent of `d` is at most that of `m` and the
    /// quotient stays within the bounds.
    pub(crate) fn quotient(&self, m: u128, d: u128) -> Option<u128> {
        let mut q = 0u128;
        for i in 0..self.shifts.len() {
            let (a, b) = (self.field(m, i), self.field(d, i));
            if a < b || a - b > self.bounds[i] {
                return None;
            }
            q |= ((a - b) as u128) << self.shifts[i];
        }
        let (dm, dd) = (m >> self.deg_shift, d >> self.deg_shift);
        if dm < dd || (dm - dd) as u64 > self.deg_bound {
            return None;
        }
        Some(q | (dm - dd) << self.deg_shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_arithmetic_match_monomials() {
        let ms: Vec<Monomial> = [[2, 0, 1], [0, 3, 0], [1, 1, 1], [0, 0, 3], [3, 0, 0], [0, 0, 0]]
            .iter()
            .map(|e| Monomial::from_exponents(e))
            .collect();
        let p = Packing::covering(ms.iter()).unwrap();
        for a in &ms {
            assert_eq!(&p.unpack(p.pack(a)), a);
            for b in &ms {
                assert_eq!(a.cmp(b), p.pack(a).cmp(&p.pack(b)), "{a:?} {b:?}");
                let prod = p.pack(a) + p.pack(b);
                assert_eq!(p.unpack(prod), a.mul(b));
                assert_eq!(p.quotient(prod, p.pack(b)), Some(p.pack(a)));
            }
        }
        assert_eq!(p.quotient(p.pack(&ms[1]), p.pack(&ms[0])), None);
    }

    #[test]
    fn too_wide_layouts_are_refused() {
        assert!(Packing::new(&[u32::MAX; 4], 1 << 40).is_none());
        assert!(Packing::new(&[255; 12], 4000).is_some());
    }
}
