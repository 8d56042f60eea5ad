//! Free groups: reduced words over signed generator indices.

pub(crate) fn reduce(letters: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Product of two reduced words: cancel across the junction only.
pub(crate) fn multiply(x: &[i32], y: &[i32]) -> Vec<i32> {
    let mut k = 0;
    while k < x.len() && k < y.len() && x[x.len() - 1 - k] == -y[k] {
        k += 1;
    }
    let mut out = Vec::with_capacity(x.len() + y.len() - 2 * k);
    out.extend_from_slice(&x[..x.len() - k]);
    out.extend_from_slice(&y[k..]);
    out
}

pub(crate) fn invert(x: &[i32]) -> Vec<i32> {
    x.iter().rev().map(|&l| -l).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        // a b b^-1 a -> a a
        assert_eq!(reduce([1, 2, -2, 1]), vec![1, 1]);
        assert_eq!(reduce([1, -1, 2, -2]), Vec::<i32>::new());
    }

    #[test]
    fn junction_cancellation() {
        assert_eq!(multiply(&[1, 2], &[-2, -1, 2]), vec![2]);
        assert_eq!(multiply(&[1], &[-1]), Vec::<i32>::new());
        assert_eq!(invert(&[1, 2]), vec![-2, -1]);
    }
}
