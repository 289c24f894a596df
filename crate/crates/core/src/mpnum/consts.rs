//! Process-wide cache of π and ln 2.
//!
//! Values are computed once per precision class (powers of two starting at
//! 512 bits) and rounded down on request, so a given requested precision
//! always receives the same bits.

use alloc::boxed::Box;

use astro_float::Consts;
use once_cell::race::OnceBox;

use super::real::{Real, RM};

const CLASSES: usize = 20;
const BASE_CLASS_BITS: usize = 512;

static PI: [OnceBox<Real>; CLASSES] = [const { OnceBox::new() }; CLASSES];
static LN2: [OnceBox<Real>; CLASSES] = [const { OnceBox::new() }; CLASSES];

fn class_of(prec: usize) -> usize {
    let mut class = 0;
    let mut cap = BASE_CLASS_BITS;
    while cap < prec && class + 1 < CLASSES {
        cap <<= 1;
        class += 1;
    }
    class
}

fn class_bits(class: usize) -> usize {
    BASE_CLASS_BITS << class
}

fn cached(slot: &[OnceBox<Real>; CLASSES], prec: usize, which: fn(&mut Consts, usize) -> Real) -> Real {
    let class = class_of(prec);
    let v = slot[class].get_or_init(|| {
        let mut cc = Consts::new().expect("constant cache allocation");
        Box::new(which(&mut cc, class_bits(class) + 64))
    });
    v.with_prec(prec)
}

/// π rounded to `prec` bits.
pub fn pi(prec: usize) -> Real {
    cached(&PI, prec, |cc, p| Real(cc.pi(p, RM)))
}

/// ln 2 rounded to `prec` bits.
pub fn ln2(prec: usize) -> Real {
    cached(&LN2, prec, |cc, p| Real(cc.ln_2(p, RM)))
}
