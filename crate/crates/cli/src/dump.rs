//! `fock-dump`: matrix elements `⟨row|O|col⟩` on the states `|λ,p⟩`, `|λ| ≤ energy`.

use qcrystal_core::fock::{apply_bilinear, apply_transfer, BasisState, Bilinear, FockVector, PlusMinus, Side};
use qcrystal_core::partitions::enumerate_partitions;
use qcrystal_core::series::format_rational;
use qcrystal_core::{Error, Rational};
use serde_json::json;
use num_traits::{One, Zero};

use crate::{DumpArgs, Failure, Format, EXIT_USAGE};

#[derive(Debug, Clone)]
enum Op {
    Bilinear(Bilinear),
    Transfer(PlusMinus),
}

fn ints(inner: &str, n: usize) -> Option<Vec<i32>> {
    let v: Vec<i32> = inner.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    (v.len() == n).then_some(v)
}

fn parse_op(s: &str) -> Option<Op> {
    let s = s.trim();
    match s {
        "L0" => return Some(Op::Bilinear(Bilinear::L0)),
        "W0" => return Some(Op::Bilinear(Bilinear::W0)),
        "G+" => return Some(Op::Transfer(PlusMinus::Plus)),
        "G-" => return Some(Op::Transfer(PlusMinus::Minus)),
        _ => {}
    }
    let (name, rest) = s.split_once('(')?;
    let inner = rest.strip_suffix(')')?;
    match name {
        "J" => ints(inner, 1).map(|v| Op::Bilinear(Bilinear::J(v[0]))),
        "H" => ints(inner, 1).filter(|v| v[0] >= 1).map(|v| Op::Bilinear(Bilinear::H(v[0]))),
        "V" => ints(inner, 2).map(|v| Op::Bilinear(Bilinear::V { k: v[0], m: v[1] })),
        _ => None,
    }
}

fn column(op: &Op, state: &BasisState, zeta: &Rational, energy: u32) -> Result<FockVector<Rational>, Error> {
    let v = FockVector::basis(Side::Ket, state.clone(), &Rational::one());
    match op {
        Op::Bilinear(b) => Ok(apply_bilinear(&v, b, zeta, Some(energy))),
        Op::Transfer(sign) => apply_transfer(&v, *sign, zeta, Some(energy)),
    }
}

pub fn fock_dump(a: &DumpArgs) -> Result<u8, Failure> {
    let op = parse_op(&a.op).ok_or_else(|| Failure(EXIT_USAGE, format!("invalid operator {:?}", a.op)))?;
    if a.zeta.is_zero() {
        return Err(Failure(EXIT_USAGE, "zeta must be nonzero".into()));
    }
    let states: Vec<BasisState> =
        enumerate_partitions(a.energy).into_iter().map(|l| BasisState::new(l, a.p)).collect();
    let diagonal = matches!(op, Op::Bilinear(Bilinear::L0 | Bilinear::W0 | Bilinear::H(_)));
    let mut entries = Vec::new();
    for col in &states {
        let image = column(&op, col, &a.zeta, a.energy)?;
        for row in &states {
            let c = image.coeff(row);
            // diagonal operators list every eigenvalue, zero included
            if !c.is_zero() || (diagonal && row == col) {
                entries.push((row, col, c));
            }
        }
    }
    let text = match a.out.format {
        Format::Json => {
            let basis: Vec<_> = states.iter().map(|s| s.shape.parts().to_vec()).collect();
            let rows: Vec<_> = entries
                .iter()
                .map(|(r, c, v)| json!({ "row": r.shape.parts(), "col": c.shape.parts(), "value": format_rational(v) }))
                .collect();
            let v = json!({
                "operator": a.op,
                "p": a.p,
                "energy": a.energy,
                "zeta": format_rational(&a.zeta),
                "basis": basis,
                "entries": rows,
            });
            serde_json::to_string_pretty(&v).expect("dump serializes") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("row,col,value\n");
            for (r, c, v) in &entries {
                s.push_str(&format!("\"{}\",\"{}\",\"{}\"\n", r.shape, c.shape, format_rational(v)));
            }
            s
        }
    };
    a.out.emit(&text).map_err(|e| Failure(EXIT_USAGE, e))?;
    Ok(0)
}
