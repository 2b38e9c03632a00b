//! JSON forms of groups and maps. Integers are written as decimal strings so
//! that no consumer has to care about machine word widths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpab::{AbHom, FpAbGroup};
use crate::lambda::AdamsData;
use crate::matrix::{Int, IntMatrix};
use crate::sring::ArrowObject;
use crate::zrings::{Poly, Presentation, PresentedRing};

pub mod int_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::matrix::Int;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse::<Int>().map_err(serde::de::Error::custom)).collect()
    }
}

pub fn matrix_to_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

pub fn matrix_from_strings(cols: usize, rows: &[Vec<String>]) -> Result<IntMatrix> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(Error::Parse(format!("row {i} has {} entries, expected {cols}", r.len())));
        }
        let row: std::result::Result<Vec<Int>, _> = r.iter().map(|s| s.trim().parse::<Int>()).collect();
        out.push(row.map_err(|e| Error::Parse(format!("row {i}: {e}")))?);
    }
    Ok(IntMatrix::from_rows(cols, out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub generators: usize,
    pub relations: Vec<Vec<String>>,
}

impl GroupJson {
    pub fn from_group(g: &FpAbGroup) -> Self {
        GroupJson { generators: g.ngens(), relations: matrix_to_strings(&g.relation_matrix()) }
    }

    pub fn to_group(&self) -> Result<FpAbGroup> {
        let m = matrix_from_strings(self.generators, &self.relations)?;
        Ok(FpAbGroup::from_matrix(self.generators, &m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub source: GroupJson,
    pub target: GroupJson,
    pub matrix: Vec<Vec<String>>,
}

impl HomJson {
    pub fn from_hom(h: &AbHom) -> Self {
        HomJson {
            source: GroupJson::from_group(h.source()),
            target: GroupJson::from_group(h.target()),
            matrix: matrix_to_strings(h.matrix()),
        }
    }

    pub fn to_hom(&self) -> Result<AbHom> {
        let s = self.source.to_group()?;
        let t = self.target.to_group()?;
        let m = matrix_from_strings(s.ngens(), &self.matrix)?;
        if self.matrix.is_empty() && t.ngens() > 0 {
            return AbHom::new(&s, &t, IntMatrix::zeros(t.ngens(), s.ngens()));
        }
        AbHom::new(&s, &t, m)
    }
}

/// One term `c · x^e` of a relator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub variables: Vec<String>,
    pub relators: Vec<Vec<TermJson>>,
    pub monomials: Vec<Vec<u32>>,
    pub variable_elements: Vec<Vec<String>>,
}

/// A ring by basis labels, additive orders and multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub name: String,
    pub basis: Vec<String>,
    pub orders: Vec<String>,
    pub one: Vec<String>,
    /// `table[i][k]`: coordinates of `b_i b_k`.
    pub table: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub presentation: Option<PresentationJson>,
}

fn parse_ints(v: &[String]) -> Result<Vec<Int>> {
    v.iter().map(|s| s.trim().parse::<Int>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))).collect()
}

impl RingJson {
    pub fn from_ring(r: &PresentedRing) -> Self {
        let presentation = r.presentation().map(|p| PresentationJson {
            variables: p.variables.clone(),
            relators: p
                .relators
                .iter()
                .map(|f| f.terms().map(|(m, c)| TermJson { exponents: m.clone(), coeff: c.to_string() }).collect())
                .collect(),
            monomials: p.monomials.clone(),
            variable_elements: p.var_elems.iter().map(|v| int_strings(v)).collect(),
        });
        RingJson {
            name: r.name().to_string(),
            basis: r.labels().to_vec(),
            orders: int_strings(r.orders()),
            one: int_strings(&r.one()),
            table: r.table().iter().map(|row| row.iter().map(|v| int_strings(v)).collect()).collect(),
            presentation,
        }
    }

    pub fn to_ring(&self) -> Result<PresentedRing> {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|v| parse_ints(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let presentation = match &self.presentation {
            None => None,
            Some(p) => {
                let nv = p.variables.len();
                let mut relators = Vec::new();
                for terms in &p.relators {
                    let mut f = Poly::zero(nv);
                    for t in terms {
                        let c = t.coeff.trim().parse::<Int>().map_err(|e| Error::Parse(format!("{:?}: {e}", t.coeff)))?;
                        f = f.add(&Poly::monomial(t.exponents.clone(), c));
                    }
                    relators.push(f);
                }
                let var_elems = p.variable_elements.iter().map(|v| parse_ints(v)).collect::<Result<_>>()?;
                Some(Presentation { variables: p.variables.clone(), relators, monomials: p.monomials.clone(), var_elems })
            }
        };
        PresentedRing::from_table(self.name.clone(), self.basis.clone(), parse_ints(&self.orders)?, table, parse_ints(&self.one)?, presentation)
    }
}

/// Adams data next to its ring: `ψ` as a matrix, `θ` on the basis (it is not additive), `φ` on `Ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdamsJson {
    pub ring: RingJson,
    pub p: u32,
    pub psi: Vec<Vec<String>>,
    pub theta_on_basis: Vec<Vec<String>>,
    pub phi: HomJson,
}

impl AdamsJson {
    pub fn from_data(d: &AdamsData) -> Result<Self> {
        let r = d.ring();
        let theta_on_basis = (0..r.dim()).map(|i| d.theta(&r.basis_elem(i)).map(|v| int_strings(&v))).collect::<Result<_>>()?;
        Ok(AdamsJson {
            ring: RingJson::from_ring(r),
            p: d.p(),
            psi: matrix_to_strings(d.psi().matrix()),
            theta_on_basis,
            phi: HomJson::from_hom(d.phi()),
        })
    }
}

/// `D: M → N` with `t` on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub name: String,
    pub p: u32,
    pub m: GroupJson,
    pub n: GroupJson,
    pub t_m: Vec<Vec<String>>,
    pub t_n: Vec<Vec<String>>,
    pub d: Vec<Vec<String>>,
}

impl ArrowJson {
    pub fn from_arrow(x: &ArrowObject) -> Self {
        ArrowJson {
            name: x.name.clone(),
            p: x.p(),
            m: GroupJson::from_group(x.m()),
            n: GroupJson::from_group(x.n()),
            t_m: matrix_to_strings(x.t_m().matrix()),
            t_n: matrix_to_strings(x.t_n().matrix()),
            d: matrix_to_strings(x.d().matrix()),
        }
    }

    pub fn to_arrow(&self) -> Result<ArrowObject> {
        let (m, n) = (self.m.to_group()?, self.n.to_group()?);
        let sq = |rows: &[Vec<String>], r: usize, c: usize| -> Result<IntMatrix> {
            if rows.is_empty() {
                Ok(IntMatrix::zeros(r, c))
            } else {
                matrix_from_strings(c, rows)
            }
        };
        ArrowObject::from_matrices(
            self.name.clone(),
            self.p,
            &m,
            sq(&self.t_m, m.ngens(), m.ngens())?,
            &n,
            sq(&self.t_n, n.ngens(), n.ngens())?,
            sq(&self.d, n.ngens(), m.ngens())?,
        )
    }
}

pub fn int_strings(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn group_json_uses_decimal_strings() {
        let g = FpAbGroup::cyclic_sum(&[int(4), int(0)]);
        let j = serde_json::to_string(&GroupJson::from_group(&g)).unwrap();
        assert_eq!(j, r#"{"generators":2,"relations":[["4","0"]]}"#);
        let back: GroupJson = serde_json::from_str(&j).unwrap();
        assert!(back.to_group().unwrap().is_isomorphic(&g));
    }

    #[test]
    fn hom_json_checks_well_definedness() {
        let bad = HomJson {
            source: GroupJson { generators: 1, relations: vec![vec!["2".into()]] },
            target: GroupJson { generators: 1, relations: vec![vec!["4".into()]] },
            matrix: vec![vec!["1".into()]],
        };
        assert!(bad.to_hom().is_err());
    }

    #[test]
    fn ring_and_arrow_round_trip() {
        for r in [PresentedRing::cyclic_group_ring(3), PresentedRing::truncated_poly_mod(2, 4)] {
            let j = RingJson::from_ring(&r);
            let back: RingJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
            let r2 = back.to_ring().unwrap();
            assert_eq!(r2.table(), r.table());
            assert_eq!(RingJson::from_ring(&r2), j);
        }
        let x = ArrowObject::truncation(3, 2);
        let j = ArrowJson::from_arrow(&x);
        let y = j.to_arrow().unwrap();
        assert_eq!(y.d().matrix(), x.d().matrix());
        let d = crate::lambda::adams_catalog(crate::lambda::AdamsRing::TruncatedPoly { n: 2 }, 2).unwrap();
        let a = AdamsJson::from_data(&d).unwrap();
        assert_eq!(a.theta_on_basis[1], ["0", "0"]);
    }
}
