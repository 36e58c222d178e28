//! Perfect matchings of slots, optionally required to connect their vertices.

use crate::error::{Error, Result};

/// A perfect matching of slot indices `0..2m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    /// Whether the matching connects every vertex that owns a slot.
    pub connected: bool,
}

/// All perfect matchings of the slots, where `slot_vertex[i]` is the vertex
/// owning slot `i`. With `require_connected`, only matchings whose quotient
/// multigraph on the owning vertices is connected are returned.
pub fn enumerate_pairings(slot_vertex: &[usize], require_connected: bool) -> Result<Vec<Pairing>> {
    if slot_vertex.len() % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "cannot pair an odd number of slots ({})",
            slot_vertex.len()
        )));
    }
    let mut out = Vec::new();
    let mut free: Vec<usize> = (0..slot_vertex.len()).collect();
    let mut cur = Vec::new();
    rec(&mut free, &mut cur, &mut |pairs| {
        let connected = is_connected(slot_vertex, pairs);
        if connected || !require_connected {
            out.push(Pairing { pairs: pairs.to_vec(), connected });
        }
    });
    Ok(out)
}

fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, f: &mut dyn FnMut(&[(usize, usize)])) {
    if free.is_empty() {
        f(cur);
        return;
    }
    let a = free.remove(0);
    for i in 0..free.len() {
        let b = free.remove(i);
        cur.push((a, b));
        rec(free, cur, f);
        cur.pop();
        free.insert(i, b);
    }
    free.insert(0, a);
}

fn is_connected(slot_vertex: &[usize], pairs: &[(usize, usize)]) -> bool {
    let mut verts: Vec<usize> = slot_vertex.to_vec();
    verts.sort();
    verts.dedup();
    if verts.len() <= 1 {
        return true;
    }
    let idx = |v: usize| verts.binary_search(&v).unwrap();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in pairs {
        let (x, y) = (find(&mut parent, idx(slot_vertex[a])), find(&mut parent, idx(slot_vertex[b])));
        parent[x] = y;
    }
    let r = find(&mut parent, 0);
    (0..verts.len()).all(|v| find(&mut parent, v) == r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::odd_double_factorial;

    #[test]
    fn examples() {
        assert_eq!(enumerate_pairings(&[0, 0, 0, 0], false).unwrap().len(), 3);
        assert_eq!(enumerate_pairings(&[0, 1], true).unwrap().len(), 1);
        assert_eq!(enumerate_pairings(&[0, 0, 1, 1], true).unwrap().len(), 2);
        assert!(enumerate_pairings(&[0, 0, 1], false).is_err());
    }

    #[test]
    fn counts_are_double_factorials() {
        for m in 0..=6usize {
            let n = enumerate_pairings(&vec![0; 2 * m], false).unwrap().len();
            assert_eq!(num_bigint::BigInt::from(n), odd_double_factorial(2 * m).unwrap());
        }
    }
}
