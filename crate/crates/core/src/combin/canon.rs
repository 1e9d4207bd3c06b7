//! Canonical codes for oriented maps, identified up to reflection.

use std::fmt;

use super::poly::CombPolyhedron;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// 64-bit FNV-1a digest, for compact report columns.
    pub fn short(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &b in &self.0 {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.short())
    }
}

/// Breadth-first code from the dart `v0 -> rot[v0][i0]`, walking rotations
/// forwards or backwards.
fn bfs_code(rot: &[Vec<usize>], v0: usize, i0: usize, forward: bool, best: Option<&[u32]>) -> Option<Vec<u32>> {
    let n = rot.len();
    let mut label = vec![u32::MAX; n];
    let mut entry = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut code = Vec::with_capacity(rot.iter().map(Vec::len).sum::<usize>() + n);
    label[v0] = 0;
    entry[v0] = i0;
    order.push(v0);
    let mut head = 0;
    let mut less = false;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let deg = rot[v].len();
        for k in 0..deg {
            let idx = if forward { (entry[v] + k) % deg } else { (entry[v] + deg - k) % deg };
            let w = rot[v][idx];
            if label[w] == u32::MAX {
                label[w] = order.len() as u32;
                entry[w] = rot[w].iter().position(|&x| x == v).expect("symmetric rotation");
                order.push(w);
            }
            code.push(label[w] + 1);
            if !less {
                if let Some(b) = best {
                    let c = code.len() - 1;
                    match code[c].cmp(&b[c]) {
                        std::cmp::Ordering::Greater => return None,
                        std::cmp::Ordering::Less => less = true,
                        _ => {}
                    }
                }
            }
        }
        code.push(0);
        if !less {
            if let Some(b) = best {
                let c = code.len() - 1;
                if code[c] > b[c] {
                    return None;
                }
                less = code[c] < b[c];
            }
        }
    }
    Some(code)
}

pub fn canonical_code(p: &CombPolyhedron) -> Result<CanonicalCode> {
    let report = p.validate();
    if !report.ok() {
        return Err(Error::InvalidInput(report.failures.join("; ")));
    }
    let rot = p.rotations()?;
    let mut best: Option<Vec<u32>> = None;
    for forward in [true, false] {
        for v0 in 0..rot.len() {
            for i0 in 0..rot[v0].len() {
                if let Some(c) = bfs_code(&rot, v0, i0, forward, best.as_deref()) {
                    if best.as_ref().map_or(true, |b| c < *b) {
                        best = Some(c);
                    }
                }
            }
        }
    }
    let best = best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(2 * best.len() + 2);
    bytes.extend_from_slice(&(p.vertex_count as u16).to_be_bytes());
    for x in best {
        bytes.extend_from_slice(&(x as u16).to_be_bytes());
    }
    Ok(CanonicalCode(bytes))
}
