use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

use crate::gf::{Elem, Field};

/// Tallies of field operations, one per operation actually performed
/// (products by zero or one included).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpCounts {
    /// GF(q^m) + GF(q^m)
    pub ext_add: u64,
    /// GF(q^m) x GF(q^m)
    pub ext_mul: u64,
    /// GF(q) + GF(q)
    pub base_add: u64,
    /// GF(q) x GF(q)
    pub base_mul: u64,
    /// GF(q^m) x GF(q)
    pub ext_base_mul: u64,
}

impl OpCounts {
    pub fn is_zero(&self) -> bool {
        *self == OpCounts::default()
    }

    /// Rough bit-operation estimate under schoolbook arithmetic, with
    /// `w = ceil(log2 q)`: an addition costs `m w`, a full product `(m w)^2`
    /// and a mixed product `m w^2`. Informational only.
    pub fn bit_cost_estimate(&self, field: &Field) -> u64 {
        let q = field.characteristic() as u64;
        let w = 64 - (q - 1).leading_zeros() as u64;
        let w = w.max(1);
        let m = field.degree() as u64;
        self.ext_add * m * w
            + self.ext_mul * (m * w) * (m * w)
            + self.ext_base_mul * m * w * w
            + self.base_add * w
            + self.base_mul * w * w
    }
}

impl Add for OpCounts {
    type Output = OpCounts;

    fn add(self, o: OpCounts) -> OpCounts {
        OpCounts {
            ext_add: self.ext_add + o.ext_add,
            ext_mul: self.ext_mul + o.ext_mul,
            base_add: self.base_add + o.base_add,
            base_mul: self.base_mul + o.base_mul,
            ext_base_mul: self.ext_base_mul + o.ext_base_mul,
        }
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, o: OpCounts) {
        *self = *self + o;
    }
}

impl Mul<u64> for OpCounts {
    type Output = OpCounts;

    fn mul(self, k: u64) -> OpCounts {
        OpCounts {
            ext_add: self.ext_add * k,
            ext_mul: self.ext_mul * k,
            base_add: self.base_add * k,
            base_mul: self.base_mul * k,
            ext_base_mul: self.ext_base_mul * k,
        }
    }
}

impl Sum for OpCounts {
    fn sum<I: Iterator<Item = OpCounts>>(iter: I) -> OpCounts {
        iter.fold(OpCounts::default(), Add::add)
    }
}

/// Inner product over a single field, tallying every product and every
/// accumulation after the first term.
pub(crate) fn counted_dot(field: &Field, a: &[Elem], b: &[Elem], counts: &mut OpCounts) -> Elem {
    let mut acc = Elem::ZERO;
    for (t, (&x, &y)) in a.iter().zip(b).enumerate() {
        let term = field.mul(x, y);
        counts.ext_mul += 1;
        if t == 0 {
            acc = term;
        } else {
            acc = field.add(acc, term);
            counts.ext_add += 1;
        }
    }
    acc
}
