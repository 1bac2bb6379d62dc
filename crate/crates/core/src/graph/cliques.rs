//! Maximal clique enumeration: Bron-Kerbosch with pivoting on bitset
//! candidate/excluded sets.

use super::{bits_to_vec, BitIter, Graph};

/// All maximal cliques, each sorted, the list sorted lexicographically.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let words = g.words_per_row();
    let mut p = vec![u64::MAX; words];
    mask_trailing(&mut p, g.n_vertices());
    let x = vec![0u64; words];
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, p, x, &mut out);
    out.sort_unstable();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    p: Vec<u64>,
    mut x: Vec<u64>,
    out: &mut Vec<Vec<usize>>,
) {
    if all_zero(&p) {
        if all_zero(&x) {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
        }
        return;
    }
    // pivot: vertex of P ∪ X with the most neighbours inside P
    let pivot = BitIter::new(&p)
        .chain(BitIter::new(&x))
        .max_by_key(|&u| count_and(g.row(u), &p))
        .unwrap();
    let mut todo = p.clone();
    for (t, rw) in todo.iter_mut().zip(g.row(pivot)) {
        *t &= !rw;
    }
    let mut p = p;
    for v in bits_to_vec(&todo) {
        let row = g.row(v);
        let next_p: Vec<u64> = p.iter().zip(row).map(|(a, b)| a & b).collect();
        let next_x: Vec<u64> = x.iter().zip(row).map(|(a, b)| a & b).collect();
        r.push(v);
        bron_kerbosch(g, r, next_p, next_x, out);
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
}

fn all_zero(words: &[u64]) -> bool {
    words.iter().all(|&w| w == 0)
}

fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

fn mask_trailing(words: &mut [u64], n: usize) {
    for (i, w) in words.iter_mut().enumerate() {
        let lo = i * 64;
        if lo >= n {
            *w = 0;
        } else if n - lo < 64 {
            *w &= (1u64 << (n - lo)) - 1;
        }
    }
}
