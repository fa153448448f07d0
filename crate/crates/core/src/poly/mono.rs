use smallvec::SmallVec;
use std::cmp::Ordering;

/// Exponent vector.
pub type Mono = SmallVec<[u32; 12]>;

pub fn one(nvars: usize) -> Mono {
    SmallVec::from_elem(0, nvars)
}

pub fn var(nvars: usize, i: usize) -> Mono {
    let mut m = one(nvars);
    m[i] = 1;
    m
}

pub fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a / b`, assuming `b | a`.
pub fn div(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

pub fn is_one(m: &[u32]) -> bool {
    m.iter().all(|&e| e == 0)
}

/// Monomial orders used by the engine.
///
/// `Block(mask)` compares the variables in `mask` first (grevlex restricted to them),
/// breaking ties with grevlex on the remaining variables. Any monomial involving a masked
/// variable is larger than every monomial free of them, so it is an elimination order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(u64),
}

fn grevlex_masked(a: &[u32], b: &[u32], mask: u64, invert: bool) -> Ordering {
    let sel = |i: usize| ((mask >> i) & 1 == 1) != invert;
    let da: u32 = (0..a.len()).filter(|&i| sel(i)).map(|i| a[i]).sum();
    let db: u32 = (0..b.len()).filter(|&i| sel(i)).map(|i| b[i]).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if sel(i) && a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let (da, db) = (degree(a), degree(b));
                if da != db {
                    return da.cmp(&db);
                }
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block(mask) => grevlex_masked(a, b, *mask, false)
                .then_with(|| grevlex_masked(a, b, *mask, true)),
        }
    }
}

pub fn mask_of(vars: &[usize]) -> u64 {
    vars.iter().fold(0u64, |m, &v| {
        assert!(v < 64, "at most 64 variables supported");
        m | (1u64 << v)
    })
}

pub fn uses_mask(m: &[u32], mask: u64) -> bool {
    m.iter()
        .enumerate()
        .any(|(i, &e)| e > 0 && (mask >> i) & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        // x^2 > xy > y^2 > xz in grevlex with x > y > z
        let x2: Mono = smallvec![2, 0, 0];
        let xy: Mono = smallvec![1, 1, 0];
        let y2: Mono = smallvec![0, 2, 0];
        let xz: Mono = smallvec![1, 0, 1];
        assert_eq!(o.cmp(&x2, &xy), Ordering::Greater);
        assert_eq!(o.cmp(&xy, &y2), Ordering::Greater);
        assert_eq!(o.cmp(&y2, &xz), Ordering::Greater);
    }

    #[test]
    fn block_eliminates() {
        let o = MonomialOrder::Block(mask_of(&[2]));
        let big: Mono = smallvec![0, 0, 1];
        let small: Mono = smallvec![5, 5, 0];
        assert_eq!(o.cmp(&big, &small), Ordering::Greater);
    }
}
