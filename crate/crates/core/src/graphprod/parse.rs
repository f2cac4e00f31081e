//! JSON front end for graph products.
//!
//! ```json
//! {
//!   "vertices": [
//!     {"name": "a", "group": {"cyclic": 2}},
//!     {"name": "b", "group": {"table": [[0, 1], [1, 0]],
//!                              "element_names": ["1", "s"]}}
//!   ],
//!   "edges": [["a", "b"]]
//! }
//! ```
//!
//! A group is either `{"cyclic": n}` or an explicit multiplication
//! table with element 0 as identity; tables are fully validated.

use super::{GraphProduct, GraphProductError, VertexGroup};
use serde_json::Value;

pub fn parse_graph_product(input: &str) -> Result<GraphProduct, GraphProductError> {
    let root: Value =
        serde_json::from_str(input).map_err(|e| GraphProductError::Json(e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| GraphProductError::Field {
        field: "<root>".into(),
        message: "expected a JSON object".into(),
    })?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "vertices" | "edges") {
            return Err(GraphProductError::Field {
                field: key.clone(),
                message: "unknown field (expected vertices, edges)".into(),
            });
        }
    }

    let verts_val = obj
        .get("vertices")
        .ok_or_else(|| GraphProductError::Field {
            field: "vertices".into(),
            message: "missing".into(),
        })?
        .as_array()
        .ok_or_else(|| GraphProductError::Field {
            field: "vertices".into(),
            message: "expected an array".into(),
        })?;

    let mut groups = Vec::new();
    for (k, v) in verts_val.iter().enumerate() {
        let field = format!("vertices[{k}]");
        let entry = v.as_object().ok_or_else(|| GraphProductError::Field {
            field: field.clone(),
            message: "expected an object with fields name and group".into(),
        })?;
        for key in entry.keys() {
            if !matches!(key.as_str(), "name" | "group") {
                return Err(GraphProductError::Field {
                    field: format!("{field}.{key}"),
                    message: "unknown field (expected name, group)".into(),
                });
            }
        }
        let name = entry
            .get("name")
            .and_then(|n| n.as_str())
            .ok_or_else(|| GraphProductError::Field {
                field: format!("{field}.name"),
                message: "expected a string".into(),
            })?;
        if name.is_empty() {
            return Err(GraphProductError::Field {
                field: format!("{field}.name"),
                message: "empty name".into(),
            });
        }
        let group = entry
            .get("group")
            .and_then(|g| g.as_object())
            .ok_or_else(|| GraphProductError::Field {
                field: format!("{field}.group"),
                message: "expected an object".into(),
            })?;
        let vg = if let Some(n) = group.get("cyclic") {
            if group.len() != 1 {
                return Err(GraphProductError::Field {
                    field: format!("{field}.group"),
                    message: "cyclic groups take no other fields".into(),
                });
            }
            let n = n.as_u64().filter(|&n| n >= 1).ok_or_else(|| {
                GraphProductError::Field {
                    field: format!("{field}.group.cyclic"),
                    message: "expected a positive integer".into(),
                }
            })?;
            VertexGroup::cyclic(name, n as u32)
        } else if let Some(table) = group.get("table") {
            for key in group.keys() {
                if !matches!(key.as_str(), "table" | "element_names") {
                    return Err(GraphProductError::Field {
                        field: format!("{field}.group.{key}"),
                        message: "unknown field (expected table, element_names)".into(),
                    });
                }
            }
            let table = parse_table(table, &format!("{field}.group.table"))?;
            let names = match group.get("element_names") {
                None => None,
                Some(ns) => Some(parse_names(ns, &format!("{field}.group.element_names"))?),
            };
            VertexGroup::from_table(name, table, names).map_err(|message| {
                GraphProductError::BadGroup { vertex: name.to_string(), message }
            })?
        } else {
            return Err(GraphProductError::Field {
                field: format!("{field}.group"),
                message: "expected either cyclic or table".into(),
            });
        };
        groups.push(vg);
    }

    let mut edges = Vec::new();
    if let Some(edges_val) = obj.get("edges") {
        let arr = edges_val.as_array().ok_or_else(|| GraphProductError::Field {
            field: "edges".into(),
            message: "expected an array of vertex-name pairs".into(),
        })?;
        for (k, pair) in arr.iter().enumerate() {
            let field = format!("edges[{k}]");
            let pair = pair.as_array().ok_or_else(|| GraphProductError::Field {
                field: field.clone(),
                message: "expected a pair of vertex names".into(),
            })?;
            if pair.len() != 2 {
                return Err(GraphProductError::Field {
                    field,
                    message: format!("expected two names, got {}", pair.len()),
                });
            }
            let mut idx = [0usize; 2];
            for (slot, name_val) in pair.iter().enumerate() {
                let name = name_val.as_str().ok_or_else(|| GraphProductError::Field {
                    field: format!("{field}[{slot}]"),
                    message: "expected a string".into(),
                })?;
                idx[slot] = groups
                    .iter()
                    .position(|g| g.name() == name)
                    .ok_or_else(|| GraphProductError::UnknownVertex(name.to_string()))?;
            }
            edges.push((idx[0], idx[1]));
        }
    }

    GraphProduct::new(groups, &edges)
}

fn parse_table(val: &Value, field: &str) -> Result<Vec<Vec<u32>>, GraphProductError> {
    let rows = val.as_array().ok_or_else(|| GraphProductError::Field {
        field: field.into(),
        message: "expected an array of rows".into(),
    })?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| GraphProductError::Field {
            field: format!("{field}[{i}]"),
            message: "expected an array of integers".into(),
        })?;
        let mut r = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            let x = x.as_u64().ok_or_else(|| GraphProductError::Field {
                field: format!("{field}[{i}][{j}]"),
                message: "expected a nonnegative integer".into(),
            })?;
            r.push(x as u32);
        }
        out.push(r);
    }
    Ok(out)
}

fn parse_names(val: &Value, field: &str) -> Result<Vec<String>, GraphProductError> {
    let arr = val.as_array().ok_or_else(|| GraphProductError::Field {
        field: field.into(),
        message: "expected an array of strings".into(),
    })?;
    arr.iter()
        .enumerate()
        .map(|(i, n)| {
            n.as_str().map(str::to_string).ok_or_else(|| {
                GraphProductError::Field {
                    field: format!("{field}[{i}]"),
                    message: "expected a string".into(),
                }
            })
        })
        .collect()
}
