//! Built-in models: the conic and quartic examples, the ideals `I1`-`I10`
//! of the ML-degree table, the tensor examples and a few small extras.
//!
//! The table ideals are numbered as published, which skips `I9`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VariableSet};
use crate::variety::{Model, PolyMatrix};

/// Whether a model describes `X` or its dual `X*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Primal,
    Dual,
}

impl Role {
    pub fn name(&self) -> &'static str {
        match self {
            Role::Primal => "primal",
            Role::Dual => "dual",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "primal" | "X" => Ok(Role::Primal),
            "dual" | "X*" => Ok(Role::Dual),
            _ => Err(Error::InvalidInput(format!("unknown role `{s}`, expected primal or dual"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub role: Role,
    pub description: &'static str,
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    /// Generators are a codimension-many subset meant for the Lagrange
    /// system; they cut out the variety only after saturation by a coordinate.
    pub lagrange_subset: bool,
    /// Data shipped with the model.
    pub data: Option<Vec<&'static str>>,
    /// Published ML degree of `X`.
    pub ml_degree: Option<usize>,
    /// Where `ml_degree` comes from.
    pub provenance: &'static str,
    pub notes: Vec<&'static str>,
}

impl ZooEntry {
    pub fn model(&self) -> Result<Model> {
        let gens: Vec<&str> = self.generators.iter().map(|s| s.as_str()).collect();
        let m = Model::parse(&self.vars, &gens)?;
        Ok(if self.lagrange_subset { m.with_codim(gens.len()) } else { m })
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Generators from the `r`-minors of a matrix of polynomial strings.
fn minors_of(vars: &[&str], rows: &[&[&str]], r: usize) -> Vec<String> {
    let vs = VariableSet::new(vars).expect("zoo variable names are distinct");
    let rows: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|row| row.iter().map(|e| Polynomial::parse(&vs, e).expect("zoo entries parse")).collect())
        .collect();
    let m = PolyMatrix::new(&vs, rows).expect("zoo matrices are rectangular");
    m.minors(r).iter().map(|g| g.to_string()).collect()
}

fn entry(name: &'static str, role: Role, description: &'static str, vars: &[&str], gens: Vec<String>) -> ZooEntry {
    ZooEntry {
        name,
        role,
        description,
        vars: names(vars),
        generators: gens,
        lagrange_subset: false,
        data: None,
        ml_degree: None,
        provenance: "",
        notes: Vec::new(),
    }
}

const Q4: [&str; 4] = ["q0", "q1", "q2", "q3"];
const Q5: [&str; 5] = ["q0", "q1", "q2", "q3", "q4"];
const SYM: [&str; 6] = ["q11", "q12", "q13", "q22", "q23", "q33"];
const QUARTIC_F: &str = "2*p0*p1*p2 + p1^2*p2 + p1*p2^2 - p0^2*p12 + p1*p2*p12";
const QUARTIC_G: &str =
    "q0^4 - 8*q0^3*q12 - 8*q0^2*q1*q2 + 16*q0^2*q1*q12 + 16*q0^2*q2*q12 - 32*q0*q1*q2*q12 + 16*q1^2*q2^2";

fn table(name: &'static str, description: &'static str, vars: &[&str], gens: Vec<String>, degree: usize) -> ZooEntry {
    ZooEntry {
        ml_degree: Some(degree),
        provenance: "published ML-degree table (dual method)",
        ..entry(name, Role::Dual, description, vars, gens)
    }
}

/// Every built-in model, in listing order.
pub fn entries() -> Vec<ZooEntry> {
    let rc_data = vec!["2/40", "13/40", "5/40", "20/40"];
    vec![
        ZooEntry {
            ml_degree: Some(1),
            provenance: "unique critical point, closed form",
            ..entry("conic", Role::Primal, "plane conic 4 p0 p2 - p1^2", &["p0", "p1", "p2"], strings(&["4*p0*p2 - p1^2"]))
        },
        ZooEntry {
            ml_degree: Some(1),
            provenance: "unique critical point, closed form",
            ..entry("conic-dual", Role::Dual, "dual of the conic, q0 q2 - q1^2", &["q0", "q1", "q2"], strings(&["q0*q2 - q1^2"]))
        },
        ZooEntry {
            ml_degree: Some(3),
            provenance: "worked example with data (2,13,5,20)/40",
            ..entry("quartic", Role::Primal, "cubic surface f whose dual is a quartic", &["p0", "p1", "p2", "p12"], strings(&[QUARTIC_F]))
        },
        ZooEntry {
            ml_degree: Some(3),
            provenance: "worked example with data (2,13,5,20)/40",
            ..entry("quartic-dual", Role::Dual, "quartic dual g of the cubic surface f", &["q0", "q1", "q2", "q12"], strings(&[QUARTIC_G]))
        },
        ZooEntry {
            data: Some(rc_data),
            ml_degree: Some(3),
            provenance: "worked example with data (2,13,5,20)/40",
            notes: vec!["tables normalize ps = 1 and bs = -1; here u+ = 1 so the chart bs = -u+ agrees"],
            ..entry("rcmodel", Role::Primal, "the cubic surface f with data (2,13,5,20)/40", &["p0", "p1", "p2", "p12"], strings(&[QUARTIC_F]))
        },
        ZooEntry {
            ml_degree: Some(2),
            provenance: "a generic line in P2 meets the four boundary lines in distinct points",
            ..entry("hyperplane", Role::Primal, "hyperplane p0 + 2 p1 + 3 p2; its dual is a point", &["p0", "p1", "p2"], strings(&["p0 + 2*p1 + 3*p2"]))
        },
        table("I1", "smooth quadric surface", &Q4, strings(&["q0^2 + 2*q1^2 + 3*q2^2 + 5*q3^2"]), 14),
        table("I2", "twisted cubic", &Q4, strings(&["q2^2 - q1*q3", "q1*q2 - q0*q3", "q1^2 - q0*q2"]), 4),
        table("I3", "Fermat cubic surface", &Q4, strings(&["q0^3 + q1^3 + q2^3 + q3^3"]), 57),
        table("I4", "quadric surface", &Q4, strings(&["30*q0^2 + 15*q1^2 + 10*q2^2 + 6*q3^2"]), 14),
        table(
            "I5",
            "discriminant of a binary cubic",
            &Q4,
            strings(&["q1^2*q2^2 - 4*q0*q2^3 - 4*q1^3*q3 + 18*q0*q1*q2*q3 - 27*q0^2*q3^2"]),
            3,
        ),
        table("I6", "quartic threefold", &Q5, strings(&["q0^4 + q1*q2*q3^2 - q4^4"]), 22),
        table(
            "I7",
            "2x2 minors of a symmetric 3x3 matrix with doubled diagonal",
            &SYM,
            minors_of(&SYM, &[&["2*q11", "q12", "q13"], &["q12", "2*q22", "q23"], &["q13", "q23", "2*q33"]], 2),
            13,
        ),
        table(
            "I8",
            "2x2 minors of a symmetric 3x3 matrix",
            &SYM,
            minors_of(&SYM, &[&["q11", "q12", "q13"], &["q12", "q22", "q23"], &["q13", "q23", "q33"]], 2),
            6,
        ),
        table(
            "I10",
            "determinant of the 3x3 Hankel matrix",
            &Q5,
            minors_of(&Q5, &[&["q0", "q1", "q2"], &["q1", "q2", "q3"], &["q2", "q3", "q4"]], 3),
            3,
        ),
        ZooEntry {
            lagrange_subset: true,
            ml_degree: Some(13),
            provenance: "13 critical points of the Lagrange system",
            notes: vec![
                "four flattening minors; they cut out X* after saturating by q111",
                "corrected: the published list repeats g1 as g4, replaced by q101*q110 - q100*q111",
            ],
            ..entry(
                "222",
                Role::Dual,
                "dual of the 2x2x2 hyperdeterminant (Segre P1xP1xP1)",
                &["q000", "q001", "q010", "q011", "q100", "q101", "q110", "q111"],
                strings(&[
                    "q011*q101 - q001*q111",
                    "q011*q110 - q010*q111",
                    "q001*q110 - q000*q111",
                    "q101*q110 - q100*q111",
                ]),
            )
        },
        ZooEntry {
            lagrange_subset: true,
            ml_degree: Some(71),
            provenance: "published exact and numerical computations, hours of server time",
            notes: vec![
                "seven of the 24 flattening minors; they cut out X* after saturating by q112",
                "coordinates follow the column order of the multiplier matrix",
                "construction only: the count 71 is far beyond a desk budget",
            ],
            ..entry(
                "223",
                Role::Dual,
                "dual of the 2x2x3 hyperdeterminant (Segre P1xP1xP2)",
                &["q101", "q011", "q100", "q010", "q001", "q000", "q002", "q012", "q102", "q110", "q111", "q112"],
                strings(&[
                    "q102*q111 - q101*q112",
                    "q102*q110 - q100*q112",
                    "q002*q111 - q001*q112",
                    "q012*q102 - q002*q112",
                    "q012*q111 - q011*q112",
                    "q012*q110 - q010*q112",
                    "q002*q110 - q000*q112",
                ]),
            )
        },
    ]
}

pub fn get(name: &str) -> Option<ZooEntry> {
    entries().into_iter().find(|e| e.name == name)
}

/// Names of the table ideals run by default in a benchmark (the rest are
/// stretch goals).
pub const TABLE_DEFAULT: [&str; 6] = ["I1", "I2", "I4", "I5", "I8", "I10"];
pub const TABLE_STRETCH: [&str; 3] = ["I3", "I6", "I7"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_models_parse() {
        let all = entries();
        assert!(all.len() >= 12);
        for (i, e) in all.iter().enumerate() {
            assert!(all[..i].iter().all(|f| f.name != e.name), "{}", e.name);
            e.model().unwrap();
        }
        assert!(get("I9").is_none());
    }

    #[test]
    fn hankel_determinant() {
        let e = get("I10").unwrap();
        assert_eq!(e.generators.len(), 1);
        let vs = VariableSet::new(&Q5).unwrap();
        let want = Polynomial::parse(&vs, "q0*q2*q4 - q0*q3^2 - q1^2*q4 + 2*q1*q2*q3 - q2^3").unwrap();
        let got = Polynomial::parse(&vs, &e.generators[0]).unwrap();
        assert!(got == want || got == -&want);
    }

    #[test]
    fn doubled_diagonal_minors() {
        let e = get("I7").unwrap();
        let vs = VariableSet::new(&SYM).unwrap();
        let gens: Vec<Polynomial> = e.generators.iter().map(|g| Polynomial::parse(&vs, g).unwrap()).collect();
        let want = Polynomial::parse(&vs, "q12*q23 - 2*q13*q22").unwrap();
        assert!(gens.iter().any(|g| *g == want || *g == -&want));
        assert!(gens.iter().all(|g| g.total_degree() == Some(2)));
    }
}
