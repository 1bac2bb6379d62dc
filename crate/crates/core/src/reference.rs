//! Reference constructors: Johnson graphs, rook grids and their
//! complements, and the halved antipodal Johnson quotient.

use crate::graph::Graph;
use crate::{Error, Result, DEFAULT_VERTEX_CAP};

/// J(v, k): vertices are the k-subsets of {0..v}, adjacent when the
/// intersection has size k−1. Subsets enumerated in lexicographic order
/// and labelled by their sorted member lists.
pub fn johnson(v: usize, k: usize) -> Result<Graph> {
    if k == 0 || k >= v {
        return Err(Error::InvalidParameter(format!(
            "johnson needs 1 ≤ k < v, got ({v},{k})"
        )));
    }
    if v > 63 {
        return Err(Error::Capacity("johnson ground set capped at 63".into()));
    }
    let subsets = combinations(v, k);
    if subsets.len() > DEFAULT_VERTEX_CAP {
        return Err(Error::Capacity(format!(
            "J({v},{k}) has {} vertices, cap is {DEFAULT_VERTEX_CAP}",
            subsets.len()
        )));
    }
    let masks: Vec<u64> = subsets.iter().map(|s| subset_mask(s)).collect();
    let g = Graph::from_fn(masks.len(), |i, j| {
        (masks[i] & masks[j]).count_ones() as usize == k - 1
    });
    g.with_labels(subsets.iter().map(|s| subset_label(s)).collect())
}

/// K_m □ K_n on vertices (i,j) in row-major order.
pub fn rook_grid(m: usize, n: usize) -> Graph {
    Graph::from_fn(m * n, move |u, v| u / n == v / n || u % n == v % n)
        .with_labels(
            (0..m * n)
                .map(|u| format!("({},{})", u / n, u % n))
                .collect(),
        )
        .expect("label count matches")
}

/// Complement of K_n □ K_n on the same labelled vertex set.
pub fn rook_complement(n: usize) -> Graph {
    rook_grid(n, n).complement()
}

/// Quotient of J(2k, k) identifying complementary k-sets. Vertices are
/// the k-subsets containing 0; blocks adjacent when some pair of
/// representatives meets in k−1 points, i.e. |S∩T| ∈ {1, k−1}.
pub fn halved_antipodal_johnson(v: usize, k: usize) -> Result<Graph> {
    if v != 2 * k || k < 2 {
        return Err(Error::InvalidParameter(format!(
            "halved quotient needs v = 2k with k ≥ 2, got ({v},{k})"
        )));
    }
    if v > 63 {
        return Err(Error::Capacity("ground set capped at 63".into()));
    }
    let subsets: Vec<Vec<usize>> = combinations(v, k)
        .into_iter()
        .filter(|s| s[0] == 0)
        .collect();
    if subsets.len() > DEFAULT_VERTEX_CAP {
        return Err(Error::Capacity(format!(
            "quotient has {} vertices, cap is {DEFAULT_VERTEX_CAP}",
            subsets.len()
        )));
    }
    let masks: Vec<u64> = subsets.iter().map(|s| subset_mask(s)).collect();
    let g = Graph::from_fn(masks.len(), |i, j| {
        let meet = (masks[i] & masks[j]).count_ones() as usize;
        meet == k - 1 || meet == 1
    });
    g.with_labels(subsets.iter().map(|s| subset_label(s)).collect())
}

fn combinations(v: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + v - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn subset_mask(s: &[usize]) -> u64 {
    s.iter().fold(0u64, |acc, &x| acc | 1 << x)
}

fn subset_label(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, is_rook_grid};

    #[test]
    fn johnson_basics() {
        let j63 = johnson(6, 3).unwrap();
        assert_eq!(j63.n_vertices(), 20);
        assert_eq!(j63.regular_degree(), Some(9));

        let j105 = johnson(10, 5).unwrap();
        assert_eq!(j105.n_vertices(), 252);
        assert_eq!(j105.regular_degree(), Some(25));

        // J(4,2) is the octahedron: locally a 4-cycle
        let j42 = johnson(4, 2).unwrap();
        assert_eq!(j42.n_vertices(), 6);
        assert_eq!(j42.regular_degree(), Some(4));
        let nb = j42.neighbors(0);
        let local = j42.induced(&nb).unwrap();
        assert_eq!(
            local.cycle_decomposition().unwrap().lengths(),
            &[4],
            "octahedron neighbourhoods are 4-cycles"
        );

        assert!(johnson(6, 0).is_err());
        assert!(johnson(6, 6).is_err());
    }

    #[test]
    fn johnson_labels_are_sorted_member_lists() {
        let j = johnson(4, 2).unwrap();
        assert_eq!(j.label(0), Some("{0,1}"));
        assert_eq!(j.label(5), Some("{2,3}"));
    }

    #[test]
    fn rook_constructions() {
        assert!(is_rook_grid(&rook_grid(5, 5), 5, 5));
        let c4 = rook_complement(4);
        assert_eq!(c4.n_vertices(), 16);
        assert_eq!(c4.regular_degree(), Some(9));
        // complement of the 3x3 grid is again a 3x3 grid
        assert!(are_isomorphic(&rook_complement(3), &rook_grid(3, 3)).unwrap());
    }

    #[test]
    fn halved_johnson_shapes() {
        let h = halved_antipodal_johnson(8, 4).unwrap();
        assert_eq!(h.n_vertices(), 35);
        assert_eq!(h.regular_degree(), Some(16));
        // quotient of J(6,3) collapses to K_10
        let h63 = halved_antipodal_johnson(6, 3).unwrap();
        assert_eq!(h63.n_vertices(), 10);
        assert!(h63.is_complete());
        // vertex count is always C(2k,k)/2
        let h105 = halved_antipodal_johnson(10, 5).unwrap();
        assert_eq!(h105.n_vertices(), 126);
        assert!(halved_antipodal_johnson(9, 4).is_err());
    }
}
