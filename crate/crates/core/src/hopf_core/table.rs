//! Hopf G-coalgebras given by explicit structure constants over a finite group.
//!
//! JSON layout:
//!
//! ```json
//! {
//!   "scalar_modulus": 4,
//!   "group": {"elements": ["+", "-"], "mul_table": [[0, 1], [1, 0]], "unit": 0, "inv": [0, 1]},
//!   "algebras": {"+": {"dim": 2, "labels": ["1", "t"], "unit": [1, 0], "mul": [[1, 1, 0, 1]]}},
//!   "coproduct": {"+,+": [[1, 0], [0, 0], [0, 0], [0, 1]]},
//!   "counit": [1, 1],
//!   "antipode": {"+": [[1, 0], [0, 1]]},
//!   "pivot": {"+": [1, 0]}
//! }
//! ```
//!
//! `mul` lists `[i, j, k, c]` meaning `b_i b_j` has coefficient `c` on `b_k`.
//! Coproduct keys are `"a,b"`; matrices are lists of rows with the standard
//! column convention. A scalar is an integer, a rational string such as
//! `"-3/4"`, a list of power-basis coordinates, or `{"N": .., "coeffs": ..}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use super::{Elem, GradedAlgebraData, HopfGFamily};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::CycNumber;

/// A group element: its index in the group table plus its display name.
#[derive(Debug, Clone)]
pub struct TableGrade {
    pub index: usize,
    name: Arc<str>,
}

impl PartialEq for TableGrade {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for TableGrade {}

impl PartialOrd for TableGrade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TableGrade {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index.cmp(&other.index)
    }
}

impl std::hash::Hash for TableGrade {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.index.hash(state);
    }
}

impl fmt::Display for TableGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone)]
pub struct TableFamily {
    modulus: u32,
    names: Vec<Arc<str>>,
    mul_table: Vec<Vec<usize>>,
    unit: usize,
    inv: Vec<usize>,
    algebras: HashMap<usize, Arc<GradedAlgebraData>>,
    coproducts: HashMap<(usize, usize), Arc<Matrix>>,
    counit: Arc<Elem>,
    antipodes: HashMap<usize, Arc<Matrix>>,
    pivots: HashMap<usize, Arc<Elem>>,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn field<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| schema(format!("{ctx}: missing \"{key}\"")))
}

fn as_index(v: &Value, ctx: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| schema(format!("{ctx}: expected a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(format!("{ctx}: expected an array")))
}

fn parse_rational(v: &Value, ctx: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| BigRational::from_integer(BigInt::from(x)))
            .ok_or_else(|| schema(format!("{ctx}: numbers must be integers; use \"p/q\" strings"))),
        Value::String(s) => {
            let parsed = match s.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.trim().parse().map_err(|_| schema(format!("{ctx}: bad rational {s:?}")))?;
                    let q: BigInt = q.trim().parse().map_err(|_| schema(format!("{ctx}: bad rational {s:?}")))?;
                    if q == BigInt::from(0) {
                        return Err(schema(format!("{ctx}: zero denominator")));
                    }
                    BigRational::new(p, q)
                }
                None => BigRational::from_integer(
                    s.trim().parse().map_err(|_| schema(format!("{ctx}: bad rational {s:?}")))?,
                ),
            };
            Ok(parsed)
        }
        _ => Err(schema(format!("{ctx}: expected a rational"))),
    }
}

fn parse_scalar(v: &Value, modulus: u32, ctx: &str) -> Result<CycNumber> {
    match v {
        Value::Array(coords) => {
            let coeffs = coords
                .iter()
                .map(|c| parse_rational(c, ctx))
                .collect::<Result<Vec<_>>>()?;
            Ok(CycNumber::from_coeffs(modulus, &coeffs))
        }
        Value::Object(_) => {
            let x: CycNumber =
                serde_json::from_value(v.clone()).map_err(|e| schema(format!("{ctx}: {e}")))?;
            if x.modulus() == modulus {
                Ok(x)
            } else {
                x.embed(modulus).map_err(|e| schema(format!("{ctx}: {e}")))
            }
        }
        _ => Ok(CycNumber::from_rational(modulus, &parse_rational(v, ctx)?)),
    }
}

fn parse_vector(v: &Value, len: usize, modulus: u32, ctx: &str) -> Result<Elem> {
    let arr = as_array(v, ctx)?;
    if arr.len() != len {
        return Err(schema(format!("{ctx}: expected {len} entries, found {}", arr.len())));
    }
    arr.iter().map(|x| parse_scalar(x, modulus, ctx)).collect()
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, modulus: u32, ctx: &str) -> Result<Matrix> {
    let arr = as_array(v, ctx)?;
    if arr.len() != rows {
        return Err(schema(format!("{ctx}: expected {rows} rows, found {}", arr.len())));
    }
    let dense = arr
        .iter()
        .map(|row| parse_vector(row, cols, modulus, ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_dense(modulus, &dense))
}

impl TableFamily {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| schema(format!("invalid JSON: {e}")))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let modulus = field(v, "scalar_modulus", "root")?
            .as_u64()
            .filter(|&n| n >= 1 && n <= u32::MAX as u64)
            .ok_or_else(|| schema("scalar_modulus must be a positive integer"))? as u32;

        let group = field(v, "group", "root")?;
        let names: Vec<String> = as_array(field(group, "elements", "group")?, "group.elements")?
            .iter()
            .map(|x| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(schema("group.elements: expected strings")),
            })
            .collect::<Result<_>>()?;
        let order = names.len();
        if order == 0 {
            return Err(schema("group.elements is empty"));
        }
        let mul_table: Vec<Vec<usize>> = as_array(field(group, "mul_table", "group")?, "group.mul_table")?
            .iter()
            .map(|row| {
                let row = as_array(row, "group.mul_table")?;
                row.iter().map(|x| as_index(x, "group.mul_table")).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if mul_table.len() != order
            || mul_table.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order))
        {
            return Err(schema("group.mul_table must be a square table of element indices"));
        }
        let unit = as_index(field(group, "unit", "group")?, "group.unit")?;
        let inv: Vec<usize> = as_array(field(group, "inv", "group")?, "group.inv")?
            .iter()
            .map(|x| as_index(x, "group.inv"))
            .collect::<Result<_>>()?;
        if unit >= order || inv.len() != order || inv.iter().any(|&x| x >= order) {
            return Err(schema("group.unit/group.inv out of range"));
        }
        for a in 0..order {
            if mul_table[a][unit] != a || mul_table[unit][a] != a || mul_table[a][inv[a]] != unit {
                return Err(schema(format!("group laws fail at element {}", names[a])));
            }
            for b in 0..order {
                for c in 0..order {
                    if mul_table[mul_table[a][b]][c] != mul_table[a][mul_table[b][c]] {
                        return Err(schema("group multiplication is not associative"));
                    }
                }
            }
        }
        let index_of = |name: &str| -> Result<usize> {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| schema(format!("unknown grade {name:?}")))
        };

        let mut algebras = HashMap::new();
        let algs = field(v, "algebras", "root")?
            .as_object()
            .ok_or_else(|| schema("algebras: expected an object"))?;
        for (key, a) in algs {
            let g = index_of(key)?;
            let ctx = format!("algebras.{key}");
            let dim = as_index(field(a, "dim", &ctx)?, &ctx)?;
            if dim == 0 {
                return Err(schema(format!("{ctx}: dim must be positive")));
            }
            let labels = match a.get("labels") {
                Some(l) => {
                    let l = as_array(l, &ctx)?;
                    if l.len() != dim {
                        return Err(schema(format!("{ctx}: labels length differs from dim")));
                    }
                    l.iter()
                        .map(|x| x.as_str().map(String::from).ok_or_else(|| schema(format!("{ctx}: labels must be strings"))))
                        .collect::<Result<Vec<_>>>()?
                }
                None => (0..dim).map(|i| format!("b{i}")).collect(),
            };
            let unit_v = parse_vector(field(a, "unit", &ctx)?, dim, modulus, &format!("{ctx}.unit"))?;
            let mut table: Vec<SparseVec> = vec![Vec::new(); dim * dim];
            for entry in as_array(field(a, "mul", &ctx)?, &ctx)? {
                let e = as_array(entry, &ctx)?;
                if e.len() != 4 {
                    return Err(schema(format!("{ctx}.mul: entries are [i, j, k, coeff]")));
                }
                let (i, j, k) = (
                    as_index(&e[0], &ctx)?,
                    as_index(&e[1], &ctx)?,
                    as_index(&e[2], &ctx)?,
                );
                if i >= dim || j >= dim || k >= dim {
                    return Err(schema(format!("{ctx}.mul: index out of range")));
                }
                let c = parse_scalar(&e[3], modulus, &ctx)?;
                let slot = &mut table[i * dim + j];
                match slot.iter_mut().find(|(kk, _)| *kk == k) {
                    Some((_, x)) => *x += &c,
                    None => slot.push((k, c)),
                }
            }
            for slot in &mut table {
                slot.retain(|(_, x)| !x.is_zero());
                slot.sort_by_key(|(k, _)| *k);
            }
            algebras.insert(g, Arc::new(GradedAlgebraData::new(modulus, labels, unit_v, table)?));
        }
        let dim_of = |g: usize| -> Result<usize> {
            algebras
                .get(&g)
                .map(|a| a.dim())
                .ok_or_else(|| schema(format!("no algebra given for grade {}", names[g])))
        };

        let mut coproducts = HashMap::new();
        let cops = field(v, "coproduct", "root")?
            .as_object()
            .ok_or_else(|| schema("coproduct: expected an object"))?;
        for (key, m) in cops {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| schema(format!("coproduct key {key:?} must be \"a,b\"")))?;
            let (a, b) = (index_of(a.trim())?, index_of(b.trim())?);
            let ab = mul_table[a][b];
            let ctx = format!("coproduct.{key}");
            let mat = parse_matrix(m, dim_of(a)? * dim_of(b)?, dim_of(ab)?, modulus, &ctx)?;
            coproducts.insert((a, b), Arc::new(mat));
        }

        let counit = Arc::new(parse_vector(field(v, "counit", "root")?, dim_of(unit)?, modulus, "counit")?);

        let mut antipodes = HashMap::new();
        let ants = field(v, "antipode", "root")?
            .as_object()
            .ok_or_else(|| schema("antipode: expected an object"))?;
        for (key, m) in ants {
            let a = index_of(key)?;
            let ctx = format!("antipode.{key}");
            antipodes.insert(a, Arc::new(parse_matrix(m, dim_of(inv[a])?, dim_of(a)?, modulus, &ctx)?));
        }

        let mut pivots = HashMap::new();
        let pivs = field(v, "pivot", "root")?
            .as_object()
            .ok_or_else(|| schema("pivot: expected an object"))?;
        for (key, g) in pivs {
            let a = index_of(key)?;
            let ctx = format!("pivot.{key}");
            pivots.insert(a, Arc::new(parse_vector(g, dim_of(a)?, modulus, &ctx)?));
        }

        Ok(TableFamily {
            modulus,
            names: names.iter().map(|n| Arc::from(n.as_str())).collect(),
            mul_table,
            unit,
            inv,
            algebras,
            coproducts,
            counit,
            antipodes,
            pivots,
        })
    }

    fn grade(&self, index: usize) -> TableGrade {
        TableGrade {
            index,
            name: self.names[index].clone(),
        }
    }

    pub fn grades(&self) -> Vec<TableGrade> {
        (0..self.names.len()).map(|i| self.grade(i)).collect()
    }

    pub fn grade_name(&self, g: &TableGrade) -> &str {
        &self.names[g.index]
    }

    pub fn grade_by_name(&self, name: &str) -> Option<TableGrade> {
        self.names.iter().position(|n| &**n == name).map(|i| self.grade(i))
    }

    fn missing(&self, what: &str, g: &str) -> Error {
        Error::WindowIncomplete(format!("{what} for grade {g} not provided"))
    }
}

impl HopfGFamily for TableFamily {
    type Grade = TableGrade;

    fn modulus(&self) -> u32 {
        self.modulus
    }

    fn unit_grade(&self) -> TableGrade {
        self.grade(self.unit)
    }

    fn compose(&self, a: &TableGrade, b: &TableGrade) -> TableGrade {
        self.grade(self.mul_table[a.index][b.index])
    }

    fn inverse(&self, a: &TableGrade) -> TableGrade {
        self.grade(self.inv[a.index])
    }

    fn contains(&self, a: &TableGrade) -> bool {
        self.algebras.contains_key(&a.index)
    }

    fn algebra(&self, a: &TableGrade) -> Result<Arc<GradedAlgebraData>> {
        self.algebras
            .get(&a.index)
            .cloned()
            .ok_or_else(|| self.missing("algebra", &self.names[a.index]))
    }

    fn coproduct(&self, a: &TableGrade, b: &TableGrade) -> Result<Arc<Matrix>> {
        self.coproducts
            .get(&(a.index, b.index))
            .cloned()
            .ok_or_else(|| self.missing("coproduct", &format!("{},{}", self.names[a.index], self.names[b.index])))
    }

    fn counit(&self) -> Result<Arc<Elem>> {
        Ok(self.counit.clone())
    }

    fn antipode(&self, a: &TableGrade) -> Result<Arc<Matrix>> {
        self.antipodes
            .get(&a.index)
            .cloned()
            .ok_or_else(|| self.missing("antipode", &self.names[a.index]))
    }

    fn pivot(&self, a: &TableGrade) -> Result<Arc<Elem>> {
        self.pivots
            .get(&a.index)
            .cloned()
            .ok_or_else(|| self.missing("pivot", &self.names[a.index]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf_core::{check_all_axioms, check_coalgebra};

    pub(crate) const Z2_GROUP_ALGEBRA: &str = r#"{
        "scalar_modulus": 1,
        "group": {"elements": ["1"], "mul_table": [[0]], "unit": 0, "inv": [0]},
        "algebras": {"1": {"dim": 2, "labels": ["e", "g"], "unit": [1, 0],
                           "mul": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]]}},
        "coproduct": {"1,1": [[1,0],[0,0],[0,0],[0,1]]},
        "counit": [1, 1],
        "antipode": {"1": [[1,0],[0,1]]},
        "pivot": {"1": [1, 0]}
    }"#;

    #[test]
    fn group_algebra_passes() {
        let f = TableFamily::from_json_str(Z2_GROUP_ALGEBRA).unwrap();
        let one = f.unit_grade();
        let r = check_all_axioms(&f, &one, &one).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
    }

    #[test]
    fn corrupted_coproduct_fails_with_witness() {
        let bad = Z2_GROUP_ALGEBRA.replace("[[1,0],[0,0],[0,0],[0,1]]", "[[1,0],[0,0],[0,0],[0,2]]");
        let f = TableFamily::from_json_str(&bad).unwrap();
        let one = f.unit_grade();
        let r = check_coalgebra(&f, &one, &one, &one).unwrap();
        assert!(!r.all_passed());
        assert!(r.failures()[0].witness.as_deref().unwrap().contains("g"));
    }

    #[test]
    fn missing_antipode_is_a_schema_error() {
        let v: Value = serde_json::from_str(Z2_GROUP_ALGEBRA).unwrap();
        let mut v = v.as_object().unwrap().clone();
        v.remove("antipode");
        let err = TableFamily::from_json(&Value::Object(v)).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }

    #[test]
    fn scalar_formats() {
        let a = parse_scalar(&serde_json::json!("3/4"), 4, "t").unwrap();
        assert_eq!(a, CycNumber::from_rational(4, &crate::scalar::rational(3, 4)));
        let i = parse_scalar(&serde_json::json!([0, 1]), 4, "t").unwrap();
        assert_eq!(i, crate::scalar::make_root_of_unity(4, 1));
        assert!(parse_scalar(&serde_json::json!(1.5), 4, "t").is_err());
    }
}
