use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value};

use crate::dgalg::Cobar;
use crate::dgmod::{FiniteModule, RightModule};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::{Field, Scalar};
use crate::simplicial::{Generator, RawFace, SimplicialSet};

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

/// Escapes a key for use as a JSON-pointer segment.
fn segment(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(at, "expected an object"))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(at, "expected an array"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{at}/{}", segment(key)), "missing field"))
}

fn string(v: &Value, at: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| schema(at, "expected a string"))
}

fn integer(v: &Value, at: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(at, "expected an integer"))
}

fn natural(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| schema(at, "expected a nonnegative integer"))
}

fn scalar(field: Field, v: &Value, at: &str) -> Result<Scalar> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|n| field.int(n))
            .ok_or_else(|| schema(at, "numbers must be integers; write fractions as strings like \"1/2\"")),
        Value::String(s) => field.parse_scalar(s).map_err(|e| schema(at, e.to_string())),
        _ => Err(schema(at, "expected a number or a fraction string")),
    }
}

fn emit_scalar(c: &Scalar) -> Value {
    match c.to_i64() {
        Some(n) => json!(n),
        None => json!(c.to_string()),
    }
}

fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| schema("", format!("invalid JSON: {e}")))
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn set_to_json(k: &SimplicialSet) -> Value {
    let generators: Vec<Value> = k
        .generators()
        .iter()
        .map(|g| json!({"id": g.id, "dim": g.dim}))
        .collect();
    let mut faces = Map::new();
    for (id, fs) in k.raw_faces() {
        let list: Vec<Value> = fs.iter().map(|f| json!({"base": f.base, "degen": f.degen})).collect();
        faces.insert(id, Value::Array(list));
    }
    json!({"generators": generators, "faces": faces})
}

pub fn set_from_json(v: &Value) -> Result<SimplicialSet> {
    let root = object(v, "")?;
    let mut generators = Vec::new();
    let mut seen = HashMap::new();
    for (i, g) in array(field(root, "generators", "")?, "/generators")?.iter().enumerate() {
        let at = format!("/generators/{i}");
        let obj = object(g, &at)?;
        let id = string(field(obj, "id", &at)?, &format!("{at}/id"))?;
        let dim = natural(field(obj, "dim", &at)?, &format!("{at}/dim"))?;
        if seen.insert(id.clone(), dim).is_some() {
            return Err(schema(format!("{at}/id"), format!("duplicate generator {id:?}")));
        }
        generators.push(Generator { id, dim });
    }
    let mut faces = HashMap::new();
    let face_map = object(field(root, "faces", "")?, "/faces")?;
    for (id, list) in face_map {
        let at = format!("/faces/{}", segment(id));
        let Some(&dim) = seen.get(id) else {
            return Err(schema(at, format!("faces given for unknown generator {id:?}")));
        };
        let list = array(list, &at)?;
        if list.len() != dim + 1 {
            return Err(schema(at, format!("a {dim}-simplex needs {} faces, found {}", dim + 1, list.len())));
        }
        let mut fs = Vec::new();
        for (j, f) in list.iter().enumerate() {
            let fat = format!("{at}/{j}");
            let obj = object(f, &fat)?;
            let base = string(field(obj, "base", &fat)?, &format!("{fat}/base"))?;
            let Some(&base_dim) = seen.get(&base) else {
                return Err(schema(format!("{fat}/base"), format!("unknown generator {base:?}")));
            };
            let degen_at = format!("{fat}/degen");
            let degen = array(field(obj, "degen", &fat)?, &degen_at)?
                .iter()
                .enumerate()
                .map(|(k, d)| natural(d, &format!("{degen_at}/{k}")))
                .collect::<Result<Vec<_>>>()?;
            if base_dim + degen.len() + 1 != dim {
                return Err(schema(fat, format!("face has dimension {} but should have {}", base_dim + degen.len(), dim - 1)));
            }
            fs.push(RawFace { base, degen });
        }
        faces.insert(id.clone(), fs);
    }
    for g in &generators {
        if g.dim > 0 && !faces.contains_key(&g.id) {
            return Err(schema(format!("/faces/{}", segment(&g.id)), "missing faces"));
        }
    }
    SimplicialSet::new(generators, faces).map_err(|e| schema("/faces", e.to_string()))
}

pub fn emit_set(k: &SimplicialSet) -> String {
    render(&set_to_json(k))
}

pub fn parse_set(text: &str) -> Result<SimplicialSet> {
    set_from_json(&parse_text(text)?)
}

fn triples(columns: &[Vector], ids: &[String]) -> Vec<Value> {
    let mut out = Vec::new();
    for (src, col) in columns.iter().enumerate() {
        for (&tgt, c) in col.iter() {
            out.push(json!([ids[src], ids[tgt], emit_scalar(c)]));
        }
    }
    out
}

/// Module JSON; triples `[src, tgt, c]` mean the image of `src` has
/// coefficient `c` on `tgt`.
pub fn module_to_json(m: &FiniteModule, over: &str) -> Value {
    let coalgebra = m.cobar().coalgebra();
    let generators: Vec<Value> = m
        .ids()
        .iter()
        .zip(m.degrees())
        .map(|(id, d)| json!({"id": id, "degree": d}))
        .collect();
    let mut action = Map::new();
    for (&letter, images) in m.action() {
        let t = triples(images, m.ids());
        if !t.is_empty() {
            action.insert(coalgebra.label(letter).to_string(), Value::Array(t));
        }
    }
    json!({
        "over": over,
        "generators": generators,
        "differential": triples(m.differential(), m.ids()),
        "action": action,
    })
}

fn read_triples(
    field_: Field,
    v: &Value,
    at: &str,
    index: &HashMap<String, usize>,
    n: usize,
) -> Result<Vec<Vector>> {
    let mut columns = vec![Vector::zero(); n];
    let mut seen = std::collections::HashSet::new();
    for (i, t) in array(v, at)?.iter().enumerate() {
        let tat = format!("{at}/{i}");
        let parts = array(t, &tat)?;
        if parts.len() != 3 {
            return Err(schema(tat, "expected [source, target, coefficient]"));
        }
        let lookup = |j: usize| -> Result<usize> {
            let pat = format!("{tat}/{j}");
            let id = string(&parts[j], &pat)?;
            index
                .get(&id)
                .copied()
                .ok_or_else(|| schema(pat, format!("unknown module generator {id:?}")))
        };
        let (src, tgt) = (lookup(0)?, lookup(1)?);
        if !seen.insert((src, tgt)) {
            return Err(schema(tat, "duplicate entry"));
        }
        columns[src].add_term(tgt, scalar(field_, &parts[2], &format!("{tat}/2"))?);
    }
    Ok(columns)
}

/// Reads a module over the cobar algebra of `k`; returns it with the
/// declared name of the simplicial set.
pub fn module_from_json(v: &Value, k: &SimplicialSet, cobar: &Cobar) -> Result<(FiniteModule, String)> {
    let f = cobar.field();
    let root = object(v, "")?;
    let over = string(field(root, "over", "")?, "/over")?;
    let mut ids = Vec::new();
    let mut degrees = Vec::new();
    let mut index = HashMap::new();
    for (i, g) in array(field(root, "generators", "")?, "/generators")?.iter().enumerate() {
        let at = format!("/generators/{i}");
        let obj = object(g, &at)?;
        let id = string(field(obj, "id", &at)?, &format!("{at}/id"))?;
        if index.insert(id.clone(), i).is_some() {
            return Err(schema(format!("{at}/id"), format!("duplicate generator {id:?}")));
        }
        ids.push(id);
        degrees.push(integer(field(obj, "degree", &at)?, &format!("{at}/degree"))?);
    }
    let n = ids.len();
    let diff = read_triples(f, field(root, "differential", "")?, "/differential", &index, n)?;
    let mut action = BTreeMap::new();
    for (sid, t) in object(field(root, "action", "")?, "/action")? {
        let at = format!("/action/{}", segment(sid));
        let letter = k
            .lookup(sid)
            .ok()
            .filter(|&c| cobar.is_letter(c))
            .ok_or_else(|| schema(&at, format!("{sid:?} is not a simplex of positive dimension")))?;
        action.insert(letter, read_triples(f, t, &at, &index, n)?);
    }
    let m = FiniteModule::new(cobar.clone(), ids, degrees, diff, action).map_err(|e| schema("", e.to_string()))?;
    Ok((m, over))
}

pub fn emit_module(m: &FiniteModule, over: &str) -> String {
    render(&module_to_json(m, over))
}

pub fn parse_module(text: &str, k: &SimplicialSet, cobar: &Cobar) -> Result<(FiniteModule, String)> {
    module_from_json(&parse_text(text)?, k, cobar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::app::fixtures::{cobar_of, fixture_set, ModuleFixture, SET_FIXTURES};

    #[test]
    fn sets_round_trip() {
        for name in SET_FIXTURES {
            let k = fixture_set(name).unwrap();
            let text = emit_set(&k);
            let back = parse_set(&text).unwrap();
            assert_eq!(emit_set(&back), text, "{name}");
        }
    }

    #[test]
    fn modules_round_trip() {
        let f5 = Field::prime(5).unwrap();
        for (set, m) in [
            ("sphere_min2", ModuleFixture::Hopf),
            ("circle", ModuleFixture::Monodromy(-1)),
            ("pinched", ModuleFixture::Trivial),
        ] {
            let k = fixture_set(set).unwrap();
            for field in [Field::Rational, f5] {
                let om = cobar_of(&k, field).unwrap();
                let text = emit_module(&m.build(&k, &om).unwrap(), set);
                let (back, over) = parse_module(&text, &k, &om).unwrap();
                assert_eq!(over, set);
                assert_eq!(emit_module(&back, &over), text);
            }
        }
    }

    #[test]
    fn errors_carry_pointers() {
        let bad = r#"{"generators":[{"id":"v","dim":0},{"id":"e","dim":"one"}],"faces":{}}"#;
        match parse_set(bad) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/generators/1/dim"),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"generators":[{"id":"v","dim":0},{"id":"e","dim":1}],"faces":{"e":[{"base":"v","degen":[]},{"base":"w","degen":[]}]}}"#;
        match parse_set(bad) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/faces/e/1/base"),
            other => panic!("{other:?}"),
        }
        let k = fixture_set("circle").unwrap();
        let om = cobar_of(&k, Field::Rational).unwrap();
        let bad = r#"{"over":"circle","generators":[{"id":"m","degree":0}],"differential":[],"action":{"sigma":[["m","x",1]]}}"#;
        match parse_module(bad, &k, &om) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/action/sigma/0/1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractions_are_strings() {
        let k = fixture_set("circle").unwrap();
        let om = cobar_of(&k, Field::Rational).unwrap();
        let text = r#"{"over":"circle","generators":[{"id":"m","degree":0}],"differential":[],"action":{"sigma":[["m","m","-1/2"]]}}"#;
        let (m, _) = parse_module(text, &k, &om).unwrap();
        assert!(emit_module(&m, "circle").contains("\"-1/2\""));
    }
}
