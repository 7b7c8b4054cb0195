//! Properties decided by a fixed number of nested loops over generators and points.

use alloc::vec::Vec;

use crate::report::{GroupViolation, Property, PropertyReport, Witness};
use crate::transformation::{GeneratorSet, Transformation};

fn non_commuting(gens: &GeneratorSet) -> Option<Witness> {
    let a = gens.generators();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            for q in 0..gens.degree() as u32 {
                if a[j].apply(a[i].apply(q)) != a[i].apply(a[j].apply(q)) {
                    return Some(Witness::NonCommutingGenerators { i, j, point: q });
                }
            }
        }
    }
    None
}

fn non_idempotent(gens: &GeneratorSet) -> Option<Witness> {
    for (generator, a) in gens.generators().iter().enumerate() {
        for q in 0..gens.degree() as u32 {
            if a.apply(a.apply(q)) != a.apply(q) {
                return Some(Witness::NonIdempotentGenerator { generator, point: q });
            }
        }
    }
    None
}

/// `S` is commutative iff its generators pairwise commute.
pub fn is_commutative(gens: &GeneratorSet) -> PropertyReport {
    let witness = non_commuting(gens);
    PropertyReport::structural(Property::Commutative, witness.is_none(), witness)
}

/// Idempotent, pairwise commuting generators.
pub fn is_semilattice(gens: &GeneratorSet) -> PropertyReport {
    let witness = non_idempotent(gens).or_else(|| non_commuting(gens));
    PropertyReport::structural(Property::Semilattice, witness.is_none(), witness)
}

fn image_mask(a: &Transformation) -> Vec<bool> {
    let mut mask = alloc::vec![false; a.degree()];
    for p in a.as_slice() {
        mask[*p as usize] = true;
    }
    mask
}

fn group_violation(gens: &GeneratorSet) -> Option<GroupViolation> {
    let a = gens.generators();
    let n = gens.degree() as u32;
    let masks: Vec<Vec<bool>> = a.iter().map(image_mask).collect();
    for j in 1..a.len() {
        for point in 0..n {
            let (x, y) = (masks[0][point as usize], masks[j][point as usize]);
            if x != y {
                let (first, second) = if x { (0, j) } else { (j, 0) };
                return Some(GroupViolation::DifferentImages { first, second, point });
            }
        }
    }
    for (generator, g) in a.iter().enumerate() {
        let image = g.image();
        for (x, &p) in image.iter().enumerate() {
            for &q in &image[x + 1..] {
                if g.apply(p) == g.apply(q) {
                    return Some(GroupViolation::NotPermutationOnImage { generator, p, q });
                }
            }
        }
    }
    for j in 1..a.len() {
        for p in 0..n {
            for q in p + 1..n {
                let same0 = a[0].apply(p) == a[0].apply(q);
                let samej = a[j].apply(p) == a[j].apply(q);
                if same0 != samej {
                    let (first, second) = if same0 { (0, j) } else { (j, 0) };
                    return Some(GroupViolation::DifferentKernels { first, second, p, q });
                }
            }
        }
    }
    None
}

/// `S` is a group iff all generators share one image, permute it, and share one kernel.
pub fn is_group(gens: &GeneratorSet) -> PropertyReport {
    let violation = group_violation(gens);
    PropertyReport::structural(Property::Group, violation.is_none(), violation.map(Witness::Group))
}
