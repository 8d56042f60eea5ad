//! Free products of cyclic groups in syllable normal form.
//!
//! `orders[j] == 0` marks an infinite cyclic factor. A normal form alternates
//! factors and every exponent lies in `1..orders[j]` (or is nonzero for an
//! infinite factor).

use super::element::Syllable;

fn normalize_exp(order: u32, exp: i64) -> i32 {
    if order == 0 {
        exp as i32
    } else {
        exp.rem_euclid(order as i64) as i32
    }
}

/// Appends one syllable to a normal form, merging with the last one.
pub(crate) fn push(out: &mut Vec<Syllable>, orders: &[u32], syl: Syllable) {
    let order = orders[syl.factor as usize];
    if let Some(last) = out.last_mut() {
        if last.factor == syl.factor {
            let e = normalize_exp(order, last.exp as i64 + syl.exp as i64);
            if e == 0 {
                out.pop();
            } else {
                last.exp = e;
            }
            return;
        }
    }
    let e = normalize_exp(order, syl.exp as i64);
    if e != 0 {
        out.push(Syllable {
            factor: syl.factor,
            exp: e,
        });
    }
}

pub(crate) fn from_letters(orders: &[u32], letters: &[i32]) -> Vec<Syllable> {
    let mut out = Vec::new();
    for &l in letters {
        let factor = l.unsigned_abs() - 1;
        push(
            &mut out,
            orders,
            Syllable {
                factor,
                exp: l.signum(),
            },
        );
    }
    out
}

/// Product of two normal forms. Cancellation can cascade across the junction.
pub(crate) fn multiply(orders: &[u32], x: &[Syllable], y: &[Syllable]) -> Vec<Syllable> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    out.extend_from_slice(x);
    let mut rest = y.iter();
    for syl in rest.by_ref() {
        let before = out.len();
        let merged_with_last = out.last().map(|l| l.factor == syl.factor).unwrap_or(false);
        push(&mut out, orders, *syl);
        // Once a syllable lands without annihilating, the tail of `y` is
        // already alternating and can be copied verbatim.
        if !merged_with_last || out.len() == before {
            break;
        }
    }
    out.extend(rest.copied());
    out
}

pub(crate) fn invert(orders: &[u32], x: &[Syllable]) -> Vec<Syllable> {
    x.iter()
        .rev()
        .map(|s| Syllable {
            factor: s.factor,
            exp: normalize_exp(orders[s.factor as usize], -(s.exp as i64)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MODULAR: [u32; 2] = [2, 3];

    fn syl(factor: u32, exp: i32) -> Syllable {
        Syllable { factor, exp }
    }

    #[test]
    fn relations_collapse() {
        // b b b -> e
        assert!(from_letters(&MODULAR, &[2, 2, 2]).is_empty());
        // a a -> e
        assert!(from_letters(&MODULAR, &[1, 1]).is_empty());
        // b^-1 -> b^2
        assert_eq!(from_letters(&MODULAR, &[-2]), vec![syl(1, 2)]);
    }

    #[test]
    fn cascading_cancellation() {
        // (ab)(b^2 a) = a b^3 a = e
        let ab = [syl(0, 1), syl(1, 1)];
        let bba = [syl(1, 2), syl(0, 1)];
        assert!(multiply(&MODULAR, &ab, &bba).is_empty());
        // (ab)(b a) = a b^2 a
        let ba = [syl(1, 1), syl(0, 1)];
        assert_eq!(
            multiply(&MODULAR, &ab, &ba),
            vec![syl(0, 1), syl(1, 2), syl(0, 1)]
        );
    }

    #[test]
    fn infinite_factor_keeps_sign() {
        let orders = [0, 2];
        assert_eq!(from_letters(&orders, &[-1, -1]), vec![syl(0, -2)]);
        assert_eq!(invert(&orders, &[syl(0, 3), syl(1, 1)]), vec![syl(1, 1), syl(0, -3)]);
    }
}
