//! Browser bindings: walk enumeration, motives and the mirror check. Every
//! function returns a JSON string or throws the error message.

use charstack::motive::{mirror_check, naive_motive, stack_dimension, stringy_motive, HandleTwists, StackSpec, TwistSpec};
use charstack::rootsys::{Isogeny, RootDatum};
use charstack::walks::{enumerate_walks, InstructionWord};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn err(e: charstack::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn datum(ty: &str) -> Result<RootDatum, JsValue> {
    RootDatum::parse(ty, Isogeny::SimplyConnected).map_err(err)
}

/// Levis separated by `;`, each a comma word or `-` for the empty one.
fn stack(ty: &str, g: usize, k: usize, levis: &str, f: &str) -> Result<StackSpec, JsValue> {
    let d = datum(ty)?;
    if k == 0 {
        return Err(JsValue::from_str("k must be at least 1"));
    }
    let mut ls = Vec::new();
    for l in levis.split(';').map(str::trim).filter(|l| !l.is_empty()) {
        let mut v = if l == "-" { vec![] } else { d.parse_word(l).map_err(err)? };
        v.sort_unstable();
        v.dedup();
        ls.push(v);
    }
    if ls.len() > k - 1 {
        return Err(JsValue::from_str("more Levis than nice punctures"));
    }
    ls.resize(k - 1, vec![]);
    let twist = TwistSpec::parse(&d, f).map_err(err)?;
    Ok(StackSpec::new(d, g, ls).map_err(err)?.with_twist(twist).with_handle_twists(HandleTwists::AssumeIdentity))
}

/// Cells beyond this many are refused so the page stays responsive.
const PAGE_CELLS: u128 = 20_000;

fn guard(spec: &StackSpec) -> Result<(), JsValue> {
    let cells = charstack::motive::CellEnumerator::new(spec).map_err(err)?;
    if cells.len() > PAGE_CELLS {
        return Err(JsValue::from_str(&format!("{} cells; the page stops at {PAGE_CELLS}", cells.len())));
    }
    Ok(())
}

#[wasm_bindgen]
pub fn walks(ty: &str, word: &str, from: &str) -> Result<String, JsValue> {
    let d = datum(ty)?;
    let w = InstructionWord::new(d.parse_word(word).map_err(err)?);
    if w.len() > 16 {
        return Err(JsValue::from_str("words longer than 16 letters are refused"));
    }
    let start = d.parse_element(from).map_err(err)?;
    let list = enumerate_walks(&d, &w, &start, None).map_err(err)?;
    Ok(json!({"count": list.len(), "walks": list.iter().map(|x| x.to_json(&d)).collect::<Vec<_>>()}).to_string())
}

#[wasm_bindgen]
pub fn motive(ty: &str, g: usize, k: usize, levis: &str, f: &str) -> Result<String, JsValue> {
    let spec = stack(ty, g, k, levis, f)?;
    guard(&spec)?;
    let naive = naive_motive(&spec).map_err(err)?;
    let st = stringy_motive(&spec).map_err(err)?;
    Ok(json!({
        "dimension": stack_dimension(&spec),
        "naive": naive.to_string(),
        "stringy": st.class.to_string(),
        "validity": st.validity.tag(),
        "identity_twist_convention": st.identity_convention,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn mirror(ty: &str, g: usize, k: usize, levis: &str, f: &str) -> Result<String, JsValue> {
    let spec = stack(ty, g, k, levis, f)?;
    guard(&spec)?;
    let (r, dual) = mirror_check(&spec).map_err(err)?;
    Ok(json!({
        "dual_type": dual.cartan_type().to_string(),
        "lhs": r.lhs.class.to_string(),
        "rhs": r.rhs.class.to_string(),
        "equal": r.equal(),
        "validity": r.validity().tag(),
    })
    .to_string())
}
