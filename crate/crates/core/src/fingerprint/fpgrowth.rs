//! FP-tree construction and conditional-pattern-base recursion over dense
//! integer items. Item `0` is the most frequent; transactions are given as
//! ascending item lists, which is the tree's path order.

const ROOT: usize = 0;

struct Node {
    item: u32,
    count: u64,
    parent: usize,
    children: Vec<usize>,
}

pub(crate) struct FpTree {
    nodes: Vec<Node>,
    /// Node indices per item.
    header: Vec<Vec<usize>>,
    item_counts: Vec<u64>,
}

impl FpTree {
    pub(crate) fn new(n_items: usize) -> Self {
        FpTree {
            nodes: vec![Node {
                item: u32::MAX,
                count: 0,
                parent: usize::MAX,
                children: Vec::new(),
            }],
            header: vec![Vec::new(); n_items],
            item_counts: vec![0; n_items],
        }
    }

    pub(crate) fn insert(&mut self, path: &[u32], weight: u64) {
        let mut cur = ROOT;
        for &item in path {
            self.item_counts[item as usize] += weight;
            let found = self.nodes[cur]
                .children
                .iter()
                .copied()
                .find(|&c| self.nodes[c].item == item);
            cur = match found {
                Some(c) => {
                    self.nodes[c].count += weight;
                    c
                }
                None => {
                    let idx = self.nodes.len();
                    self.nodes.push(Node {
                        item,
                        count: weight,
                        parent: cur,
                        children: Vec::new(),
                    });
                    self.nodes[cur].children.push(idx);
                    self.header[item as usize].push(idx);
                    idx
                }
            };
        }
    }

    fn prefix_path(&self, mut node: usize) -> Vec<u32> {
        let mut path = Vec::new();
        node = self.nodes[node].parent;
        while node != ROOT {
            path.push(self.nodes[node].item);
            node = self.nodes[node].parent;
        }
        path.reverse();
        path
    }

    /// Appends every itemset with count >= `floor` and at most `max_len`
    /// items (extending `suffix`) to `out`. Itemsets come out sorted
    /// ascending.
    pub(crate) fn mine(&self, floor: u64, max_len: usize, suffix: &[u32], out: &mut Vec<(Vec<u32>, u64)>) {
        let n_items = self.header.len();
        for item in (0..n_items).rev() {
            let count = self.item_counts[item];
            if count == 0 || count < floor {
                continue;
            }
            let mut itemset = Vec::with_capacity(suffix.len() + 1);
            itemset.push(item as u32);
            itemset.extend_from_slice(suffix);
            out.push((itemset.clone(), count));
            if itemset.len() >= max_len {
                continue;
            }

            let base: Vec<(Vec<u32>, u64)> = self.header[item]
                .iter()
                .map(|&n| (self.prefix_path(n), self.nodes[n].count))
                .filter(|(p, _)| !p.is_empty())
                .collect();
            let mut cond_counts = vec![0u64; n_items];
            for (p, w) in &base {
                for &i in p {
                    cond_counts[i as usize] += w;
                }
            }
            let mut cond = FpTree::new(n_items);
            let mut any = false;
            for (p, w) in &base {
                let kept: Vec<u32> = p
                    .iter()
                    .copied()
                    .filter(|&i| cond_counts[i as usize] >= floor)
                    .collect();
                if !kept.is_empty() {
                    cond.insert(&kept, *w);
                    any = true;
                }
            }
            if any {
                cond.mine(floor, max_len, &itemset, out);
            }
        }
    }
}

/// All itemsets of size 1..=`max_len` with count >= `floor` (floor >= 1).
pub(crate) fn frequent_itemsets(
    transactions: &[Vec<u32>],
    n_items: usize,
    floor: u64,
    max_len: usize,
) -> Vec<(Vec<u32>, u64)> {
    let floor = floor.max(1);
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    let mut global = vec![0u64; n_items];
    for t in transactions {
        for &i in t {
            global[i as usize] += 1;
        }
    }
    let mut tree = FpTree::new(n_items);
    for t in transactions {
        let kept: Vec<u32> = t.iter().copied().filter(|&i| global[i as usize] >= floor).collect();
        if !kept.is_empty() {
            tree.insert(&kept, 1);
        }
    }
    tree.mine(floor, max_len, &[], &mut out);
    out
}
