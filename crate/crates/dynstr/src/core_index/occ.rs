//! Merge-sort tree over suffix-array entries: given a rank range, report the
//! occurrence positions nearest to a query position.

/// Static merge-sort tree over a sequence of positions.
#[derive(Debug, Clone)]
pub struct PositionTree {
    size: usize,
    nodes: Vec<Vec<u32>>,
}

impl PositionTree {
    pub fn new(vals: &[u32]) -> Self {
        let size = vals.len().next_power_of_two().max(1);
        let mut nodes = vec![Vec::new(); 2 * size];
        for (i, &v) in vals.iter().enumerate() {
            nodes[size + i] = vec![v];
        }
        for i in (1..size).rev() {
            let (a, b) = (&nodes[2 * i], &nodes[2 * i + 1]);
            let mut m = Vec::with_capacity(a.len() + b.len());
            let (mut x, mut y) = (0, 0);
            while x < a.len() || y < b.len() {
                if y == b.len() || (x < a.len() && a[x] <= b[y]) {
                    m.push(a[x]);
                    x += 1;
                } else {
                    m.push(b[y]);
                    y += 1;
                }
            }
            nodes[i] = m;
        }
        PositionTree { size, nodes }
    }

    fn cover(&self, lo: usize, hi: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let (mut l, mut r) = (lo + self.size, hi + self.size + 1);
        while l < r {
            if l & 1 == 1 {
                out.push(l);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                out.push(r);
            }
            l /= 2;
            r /= 2;
        }
        out
    }

    /// Smallest value `>= x` among entries `lo..=hi`.
    pub fn succ(&self, lo: usize, hi: usize, x: usize) -> Option<usize> {
        self.cover(lo, hi)
            .into_iter()
            .filter_map(|i| {
                let v = &self.nodes[i];
                let k = v.partition_point(|&y| (y as usize) < x);
                v.get(k).map(|&y| y as usize)
            })
            .min()
    }

    /// Largest value `<= x` among entries `lo..=hi`.
    pub fn pred(&self, lo: usize, hi: usize, x: usize) -> Option<usize> {
        self.cover(lo, hi)
            .into_iter()
            .filter_map(|i| {
                let v = &self.nodes[i];
                let k = v.partition_point(|&y| (y as usize) <= x);
                (k > 0).then(|| v[k - 1] as usize)
            })
            .max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn succ_and_pred_match_scan() {
        let vals: Vec<u32> = (0..37u32).map(|i| (i * 17 + 5) % 41).collect();
        let t = PositionTree::new(&vals);
        for lo in 0..vals.len() {
            for hi in lo..vals.len() {
                for x in 0..45 {
                    let s = vals[lo..=hi].iter().filter(|&&v| v as usize >= x).min().map(|&v| v as usize);
                    let p = vals[lo..=hi].iter().filter(|&&v| v as usize <= x).max().map(|&v| v as usize);
                    assert_eq!(t.succ(lo, hi, x), s);
                    assert_eq!(t.pred(lo, hi, x), p);
                }
            }
        }
    }
}
