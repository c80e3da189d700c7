use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Monomial, PolyError};

/// Monomial order.
///
/// `GrevLex` compares weighted degree (ring grading) first, then reverse
/// lexicographically. `Block(k)` is the product order used for elimination: the
/// first `k` variables are compared first by graded reverse lex on that block,
/// ties are broken by graded reverse lex on the remaining variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "split")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(usize),
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::GrevLex
    }
}

impl MonomialOrder {
    pub fn validate(&self, nvars: usize) -> Result<(), PolyError> {
        match *self {
            MonomialOrder::Block(k) if k == 0 || k >= nvars => Err(PolyError::BadOrder(format!(
                "block split {k} must satisfy 0 < k < {nvars}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0, weights),
            MonomialOrder::Block(k) => grevlex(&a.0[..k], &b.0[..k], &weights[..k])
                .then_with(|| grevlex(&a.0[k..], &b.0[k..], &weights[k..])),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}

fn grevlex(a: &[u16], b: &[u16], w: &[u32]) -> Ordering {
    let da: u32 = a.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum();
    let db: u32 = b.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                // smaller exponent in the last differing variable wins
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}
