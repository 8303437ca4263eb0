//! Strictly increasing index tuples and their lexicographic ranks.

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All increasing `p`-tuples from `0..n`, in lexicographic order.
pub fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, p));
    if p > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - p + i {
                cur[i] += 1;
                for j in i + 1..p {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Position of an increasing tuple in [`combinations`]`(n, idx.len())`.
pub fn rank(n: usize, idx: &[usize]) -> usize {
    let p = idx.len();
    let mut r = 0;
    let mut start = 0;
    for (i, &c) in idx.iter().enumerate() {
        for j in start..c {
            r += binomial(n - 1 - j, p - 1 - i);
        }
        start = c + 1;
    }
    r
}

/// Sorts `idx` and returns the parity sign of the sorting permutation, or
/// `None` if an index repeats.
pub fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// `"(1,3)"`: the 1-based display form of an index tuple.
pub fn label(idx: &[usize]) -> String {
    let inner: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", inner.join(","))
}
