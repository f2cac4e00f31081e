//! Concrete [`GroupAction`] implementations.
//!
//! [`DavisAction`] borrows a built coset ball and restricts the checks
//! to cubes with the requested margin of complete stars around them.
//! [`ExplicitAction`] stores a finite group acting on a finite complex
//! through explicit vertex permutations, one per element; it is the
//! input format for handcrafted counterexamples.

use super::GroupAction;
use crate::cube::{ComplexError, Cube, CubeComplex, CubeId};
use crate::graphprod::{DavisBall, NormalWord};
use crate::group::{GroupOps, Subgroup};
use serde_json::Value;
use thiserror::Error;

pub struct DavisAction<'a> {
    ball: &'a DavisBall,
    margin: u32,
}

impl<'a> DavisAction<'a> {
    pub fn new(ball: &'a DavisBall, margin: u32) -> Self {
        DavisAction { ball, margin }
    }
}

impl GroupOps for DavisAction<'_> {
    type Elem = NormalWord;

    fn id(&self) -> NormalWord {
        self.ball.product().id()
    }

    fn mul(&self, a: &NormalWord, b: &NormalWord) -> NormalWord {
        self.ball.product().mul(a, b)
    }

    fn inv(&self, a: &NormalWord) -> NormalWord {
        self.ball.product().inv(a)
    }

    fn render(&self, a: &NormalWord) -> String {
        self.ball.product().render(a)
    }
}

impl GroupAction for DavisAction<'_> {
    fn complex(&self) -> &CubeComplex {
        self.ball.complex()
    }

    fn interior_cubes(&self) -> Vec<CubeId> {
        self.ball.interior_cubes(self.margin)
    }

    fn stabiliser(&self, c: CubeId) -> Subgroup<NormalWord> {
        self.ball.cube_stabiliser(c)
    }

    fn act_vertex(&self, g: &NormalWord, v: u32) -> Option<u32> {
        self.ball.act_vertex(g, v)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("group table: {0}")]
    Group(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("element {element}: {message}")]
    BadPermutation { element: usize, message: String },
    #[error("element {element} maps cube {cube:?} to {image:?}, which is not a cube")]
    NotCubical {
        element: usize,
        cube: Vec<u32>,
        image: Vec<u32>,
    },
}

/// A finite group given by its full multiplication table, acting on a
/// finite complex by vertex permutations. Element 0 is the identity.
/// All cubes count as interior: the complex is assumed complete.
#[derive(Debug)]
pub struct ExplicitAction {
    complex: CubeComplex,
    mul: Vec<Vec<u32>>,
    inv: Vec<u32>,
    names: Vec<String>,
    perms: Vec<Vec<u32>>,
}

impl ExplicitAction {
    /// Validates the table, the permutations, the homomorphism law, and
    /// that every element maps cubes to cubes.
    pub fn new(
        complex: CubeComplex,
        mul: Vec<Vec<u32>>,
        names: Option<Vec<String>>,
        perms: Vec<Vec<u32>>,
    ) -> Result<ExplicitAction, ActionError> {
        let inv = crate::group::validate_table(&mul).map_err(ActionError::Group)?;
        let order = mul.len();
        let names = match names {
            Some(ns) => {
                if ns.len() != order {
                    return Err(ActionError::Group(format!(
                        "{} element names for {} elements",
                        ns.len(),
                        order
                    )));
                }
                ns
            }
            None => (0..order)
                .map(|k| if k == 0 { "1".into() } else { format!("g{k}") })
                .collect(),
        };
        if perms.len() != order {
            return Err(ActionError::Group(format!(
                "{} permutations for {} elements",
                perms.len(),
                order
            )));
        }
        let n = complex.vertex_count() as usize;
        for (g, perm) in perms.iter().enumerate() {
            if perm.len() != n {
                return Err(ActionError::BadPermutation {
                    element: g,
                    message: format!("acts on {} vertices, complex has {}", perm.len(), n),
                });
            }
            let mut seen = vec![false; n];
            for &img in perm {
                if img as usize >= n || seen[img as usize] {
                    return Err(ActionError::BadPermutation {
                        element: g,
                        message: "not a permutation of the vertices".into(),
                    });
                }
                seen[img as usize] = true;
            }
        }
        if perms[0].iter().enumerate().any(|(v, &img)| img as usize != v) {
            return Err(ActionError::BadPermutation {
                element: 0,
                message: "the identity element must fix every vertex".into(),
            });
        }
        for g in 0..order {
            for h in 0..order {
                let gh = mul[g][h] as usize;
                for v in 0..n {
                    let one = perms[gh][v];
                    let two = perms[g][perms[h][v] as usize];
                    if one != two {
                        return Err(ActionError::BadPermutation {
                            element: g,
                            message: format!(
                                "composition with element {h} disagrees with the table at vertex {v}"
                            ),
                        });
                    }
                }
            }
        }
        let action = ExplicitAction { complex, mul, inv, names, perms };
        for g in 0..order {
            for id in 0..action.complex.cubes().len() {
                let cube = action.complex.cube(id);
                if action.act_cube(g as u32, id).is_none() {
                    let image: Vec<u32> = {
                        let mut img: Vec<u32> = cube
                            .vertices()
                            .iter()
                            .map(|&v| action.perms[g][v as usize])
                            .collect();
                        img.sort_unstable();
                        img
                    };
                    return Err(ActionError::NotCubical {
                        element: g,
                        cube: cube.vertices().to_vec(),
                        image,
                    });
                }
            }
        }
        Ok(action)
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    /// Image of a stored cube, by permuting its vertex set.
    pub fn act_cube(&self, g: u32, c: CubeId) -> Option<CubeId> {
        let image: Vec<u32> = self
            .complex
            .cube(c)
            .vertices()
            .iter()
            .map(|&v| self.perms[g as usize][v as usize])
            .collect();
        self.complex.cube_id(&Cube::new(image))
    }
}

impl GroupOps for ExplicitAction {
    type Elem = u32;

    fn id(&self) -> u32 {
        0
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul[*a as usize][*b as usize]
    }

    fn inv(&self, a: &u32) -> u32 {
        self.inv[*a as usize]
    }

    fn render(&self, a: &u32) -> String {
        self.names[*a as usize].clone()
    }
}

impl GroupAction for ExplicitAction {
    fn complex(&self) -> &CubeComplex {
        &self.complex
    }

    fn interior_cubes(&self) -> Vec<CubeId> {
        (0..self.complex.cubes().len()).collect()
    }

    fn stabiliser(&self, c: CubeId) -> Subgroup<u32> {
        let elems: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| self.act_cube(g, c) == Some(c))
            .collect();
        Subgroup::from_elements(elems)
    }

    fn act_vertex(&self, g: &u32, v: u32) -> Option<u32> {
        Some(self.perms[*g as usize][v as usize])
    }
}

/// Reads an explicit action from JSON:
///
/// ```json
/// {
///   "complex": {"vertices": 4, "edges": [[0,1],[1,2],[2,3],[3,0]],
///               "maximal_cubes": [[0,1,2,3]]},
///   "group": {"table": [[0,1],[1,0]], "element_names": ["1", "s"]},
///   "action": [[0,1,2,3], [3,2,1,0]]
/// }
/// ```
pub fn parse_explicit_action(input: &str) -> Result<ExplicitAction, ActionError> {
    let root: Value = serde_json::from_str(input).map_err(|e| ActionError::Json(e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| ActionError::Field {
        field: "<root>".into(),
        message: "expected a JSON object".into(),
    })?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "complex" | "group" | "action") {
            return Err(ActionError::Field {
                field: key.clone(),
                message: "unknown field (expected complex, group, action)".into(),
            });
        }
    }

    let complex_obj = obj
        .get("complex")
        .and_then(|c| c.as_object())
        .ok_or_else(|| ActionError::Field {
            field: "complex".into(),
            message: "expected an object".into(),
        })?;
    for key in complex_obj.keys() {
        if !matches!(key.as_str(), "vertices" | "edges" | "maximal_cubes") {
            return Err(ActionError::Field {
                field: format!("complex.{key}"),
                message: "unknown field (expected vertices, edges, maximal_cubes)".into(),
            });
        }
    }
    let vertices = complex_obj
        .get("vertices")
        .and_then(|n| n.as_u64())
        .ok_or_else(|| ActionError::Field {
            field: "complex.vertices".into(),
            message: "expected a nonnegative integer".into(),
        })? as u32;
    let mut edges = Vec::new();
    if let Some(val) = complex_obj.get("edges") {
        let arr = val.as_array().ok_or_else(|| ActionError::Field {
            field: "complex.edges".into(),
            message: "expected an array of pairs".into(),
        })?;
        for (k, pair) in arr.iter().enumerate() {
            let row = parse_u32_row(pair, &format!("complex.edges[{k}]"))?;
            if row.len() != 2 {
                return Err(ActionError::Field {
                    field: format!("complex.edges[{k}]"),
                    message: format!("expected two endpoints, got {}", row.len()),
                });
            }
            edges.push((row[0], row[1]));
        }
    }
    let mut maximal = Vec::new();
    if let Some(val) = complex_obj.get("maximal_cubes") {
        let arr = val.as_array().ok_or_else(|| ActionError::Field {
            field: "complex.maximal_cubes".into(),
            message: "expected an array of vertex lists".into(),
        })?;
        for (k, cube) in arr.iter().enumerate() {
            maximal.push(parse_u32_row(cube, &format!("complex.maximal_cubes[{k}]"))?);
        }
    }
    let complex = CubeComplex::assemble(vertices, &edges, &maximal)?;

    let group_obj = obj
        .get("group")
        .and_then(|g| g.as_object())
        .ok_or_else(|| ActionError::Field {
            field: "group".into(),
            message: "expected an object".into(),
        })?;
    for key in group_obj.keys() {
        if !matches!(key.as_str(), "table" | "element_names") {
            return Err(ActionError::Field {
                field: format!("group.{key}"),
                message: "unknown field (expected table, element_names)".into(),
            });
        }
    }
    let table_val = group_obj.get("table").ok_or_else(|| ActionError::Field {
        field: "group.table".into(),
        message: "missing".into(),
    })?;
    let table_arr = table_val.as_array().ok_or_else(|| ActionError::Field {
        field: "group.table".into(),
        message: "expected an array of rows".into(),
    })?;
    let mut table = Vec::with_capacity(table_arr.len());
    for (i, row) in table_arr.iter().enumerate() {
        table.push(parse_u32_row(row, &format!("group.table[{i}]"))?);
    }
    let names = match group_obj.get("element_names") {
        None => None,
        Some(val) => {
            let arr = val.as_array().ok_or_else(|| ActionError::Field {
                field: "group.element_names".into(),
                message: "expected an array of strings".into(),
            })?;
            let mut names = Vec::with_capacity(arr.len());
            for (i, n) in arr.iter().enumerate() {
                names.push(
                    n.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| ActionError::Field {
                            field: format!("group.element_names[{i}]"),
                            message: "expected a string".into(),
                        })?,
                );
            }
            Some(names)
        }
    };

    let action_arr = obj
        .get("action")
        .and_then(|a| a.as_array())
        .ok_or_else(|| ActionError::Field {
            field: "action".into(),
            message: "expected an array of vertex permutations".into(),
        })?;
    let mut perms = Vec::with_capacity(action_arr.len());
    for (g, perm) in action_arr.iter().enumerate() {
        perms.push(parse_u32_row(perm, &format!("action[{g}]"))?);
    }

    ExplicitAction::new(complex, table, names, perms)
}

fn parse_u32_row(val: &Value, field: &str) -> Result<Vec<u32>, ActionError> {
    let arr = val.as_array().ok_or_else(|| ActionError::Field {
        field: field.into(),
        message: "expected an array of integers".into(),
    })?;
    arr.iter()
        .enumerate()
        .map(|(j, x)| {
            x.as_u64().map(|x| x as u32).ok_or_else(|| ActionError::Field {
                field: format!("{field}[{j}]"),
                message: "expected a nonnegative integer".into(),
            })
        })
        .collect()
}
