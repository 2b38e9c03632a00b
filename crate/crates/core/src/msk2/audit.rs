use serde::Serialize;

use crate::error::Result;
use crate::msk2::presentation::{check_split, ElementTables, MsFamily, MsOptions};
use crate::zrings::{IdealData, PresentedRing};

/// Instances of one family: those in the stated range, how many of them use an
/// undefined symbol, and how many more the maximal reading adds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyAudit {
    pub family: MsFamily,
    pub stated: usize,
    pub undefined_in_stated: usize,
    pub beyond_stated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationAudit {
    pub families: Vec<FamilyAudit>,
    /// The symmetry instances are closed under swapping the arguments.
    pub symmetric_closed: bool,
    /// Shifting a coordinate by its additive order never changes a symbol.
    pub coordinates_identified: bool,
}

impl RelationAudit {
    pub fn passed(&self) -> bool {
        self.symmetric_closed && self.coordinates_identified && self.families.iter().all(|f| f.undefined_in_stated == 0)
    }
}

pub fn relation_audit(w: &PresentedRing, j: &IdealData, options: &MsOptions) -> Result<RelationAudit> {
    let t = ElementTables::new(w, j, options.max_size)?;
    check_split(w, j, &t)?;
    let n = t.len();
    let inj = |x: usize| t.in_ideal[x];

    let mut sym = FamilyAudit { family: MsFamily::Symmetry, stated: 0, undefined_in_stated: 0, beyond_stated: 0 };
    let mut symmetric_closed = true;
    for a in 0..n {
        for b in 0..n {
            if inj(a) || inj(b) {
                sym.stated += 1;
                if !(t.defined(a, b) && t.defined(b, a)) {
                    sym.undefined_in_stated += 1;
                }
                symmetric_closed &= inj(b) || inj(a);
            }
        }
    }

    let mut add = FamilyAudit { family: MsFamily::Additivity, stated: 0, undefined_in_stated: 0, beyond_stated: 0 };
    let mut leib = FamilyAudit { family: MsFamily::Leibniz, stated: 0, undefined_in_stated: 0, beyond_stated: 0 };
    for a in 0..n {
        for b in 0..n {
            let ab = t.mul(a, b);
            for c in 0..n {
                let s = t.sub(t.add(b, c), t.mul(ab, c));
                let all = t.defined(a, b) && t.defined(a, c) && t.defined(a, s);
                if inj(a) || (inj(b) && inj(c)) {
                    add.stated += 1;
                    add.undefined_in_stated += usize::from(!all);
                } else if all {
                    add.beyond_stated += 1;
                }
                let all = t.defined(a, t.mul(b, c)) && t.defined(ab, c) && t.defined(t.mul(a, c), b);
                if inj(a) || inj(b) || inj(c) {
                    leib.stated += 1;
                    leib.undefined_in_stated += usize::from(!all);
                } else if all {
                    leib.beyond_stated += 1;
                }
            }
        }
    }

    let mut coordinates_identified = true;
    for x in &t.elements {
        let k = t.index(x);
        for (i, o) in w.orders().iter().enumerate() {
            let mut y = x.clone();
            y[i] += o;
            coordinates_identified &= t.index(&y) == k && w.eq(&y, x);
        }
    }
    Ok(RelationAudit { families: vec![sym, add, leib], symmetric_closed, coordinates_identified })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers_have_no_undefined_terms() {
        let w = PresentedRing::truncated_poly_mod(2, 2);
        let j = IdealData::generated_by(&w, &[w.basis_elem(1)]);
        let a = relation_audit(&w, &j, &MsOptions::default()).unwrap();
        assert!(a.passed(), "{a:?}");
        assert_eq!(a.families[0].stated, 12);
    }
}
