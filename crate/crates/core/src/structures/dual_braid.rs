use super::classical_braid::{compose, invert};
use crate::structure::{ShadowAlgebra, SimplePayload, StructureKind};

/// Dual braid structure: the shadow group is `S_n` with reflection length,
/// `δ` the cycle `i ↦ i+1 mod n`. Simples are the non-crossing partitions,
/// realised as permutations whose cycles are the blocks traversed in
/// increasing order.
pub(crate) struct DualBraid {
    n: usize,
}

impl DualBraid {
    pub(crate) fn new(n: usize) -> Self {
        DualBraid { n }
    }
}

pub(crate) fn set_partitions(n: usize) -> Vec<Vec<Vec<u8>>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i as u8);
            rec(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i as u8]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

fn crosses(x: &[u8], y: &[u8]) -> bool {
    for &a in x {
        for &b in x {
            if a >= b {
                continue;
            }
            let inside = |c: u8| a < c && c < b;
            if y.iter().any(|&c| inside(c)) && y.iter().any(|&c| !inside(c)) {
                return true;
            }
        }
    }
    false
}

pub(crate) fn is_non_crossing(blocks: &[Vec<u8>]) -> bool {
    for i in 0..blocks.len() {
        for j in 0..blocks.len() {
            if i != j && crosses(&blocks[i], &blocks[j]) {
                return false;
            }
        }
    }
    true
}

fn normalize(mut blocks: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    for b in blocks.iter_mut() {
        b.sort_unstable();
    }
    blocks.retain(|b| !b.is_empty());
    blocks.sort();
    blocks
}

fn to_permutation(n: usize, blocks: &[Vec<u8>]) -> Vec<u8> {
    let mut p: Vec<u8> = (0..n as u8).collect();
    for b in blocks {
        for k in 0..b.len() {
            p[b[k] as usize] = b[(k + 1) % b.len()];
        }
    }
    p
}

fn to_blocks(p: &[u8]) -> Vec<Vec<u8>> {
    let mut seen = vec![false; p.len()];
    let mut blocks = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut block = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            block.push(i as u8);
            i = p[i] as usize;
        }
        blocks.push(block);
    }
    normalize(blocks)
}

fn labels(n: usize, blocks: &[Vec<u8>]) -> Vec<usize> {
    let mut lab = vec![0; n];
    for (k, b) in blocks.iter().enumerate() {
        for &x in b {
            lab[x as usize] = k;
        }
    }
    lab
}

fn merge_until_non_crossing(mut blocks: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    'again: loop {
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if crosses(&blocks[i], &blocks[j]) || crosses(&blocks[j], &blocks[i]) {
                    let moved = std::mem::take(&mut blocks[j]);
                    blocks[i].extend(moved);
                    blocks = normalize(blocks);
                    continue 'again;
                }
            }
        }
        return blocks;
    }
}

/// Kreweras complement of a non-crossing partition of `0..n`.
///
/// Interleave primed points `i'` just after each `i`. Two primed points `i'`
/// and `j'` share a block of the complement iff the chord between them does
/// not separate any block of the input.
pub fn kreweras_complement(n: usize, blocks: &[Vec<u8>]) -> Vec<Vec<u8>> {
    // Chord i'-j' (i < j) cuts off the points i+1..=j.
    let compatible = |i: usize, j: usize| {
        blocks.iter().all(|b| {
            let inside = b
                .iter()
                .filter(|&&x| (x as usize) > i && (x as usize) <= j)
                .count();
            inside == 0 || inside == b.len()
        })
    };
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if compatible(i, j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<u8>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        by_root.entry(r).or_default().push(i as u8);
    }
    normalize(by_root.into_values().collect())
}

impl ShadowAlgebra for DualBraid {
    type Elem = Vec<u8>;

    fn kind(&self) -> StructureKind {
        StructureKind::DualBraid
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn descriptor(&self) -> String {
        format!("braid:dual:n={}", self.n)
    }

    fn delta_pure(&self) -> bool {
        true
    }

    fn identity(&self) -> Vec<u8> {
        (0..self.n as u8).collect()
    }

    fn delta(&self) -> Vec<u8> {
        (0..self.n).map(|i| ((i + 1) % self.n) as u8).collect()
    }

    // Band generators a_{ij}, i < j, in lexicographic order.
    fn atoms(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(to_permutation(self.n, &[vec![i as u8, j as u8]]));
            }
        }
        out
    }

    fn simples(&self) -> Vec<Vec<u8>> {
        set_partitions(self.n)
            .into_iter()
            .filter(|b| is_non_crossing(b))
            .map(|b| to_permutation(self.n, &b))
            .collect()
    }

    fn compose(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        compose(a, b)
    }

    fn inverse(&self, a: &Vec<u8>) -> Vec<u8> {
        invert(a)
    }

    fn length(&self, a: &Vec<u8>) -> u32 {
        (self.n - to_blocks(a).len()) as u32
    }

    // Common refinement.
    fn native_meet_prefix(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        let (la, lb) = (labels(self.n, &to_blocks(a)), labels(self.n, &to_blocks(b)));
        let mut groups: std::collections::BTreeMap<(usize, usize), Vec<u8>> = Default::default();
        for i in 0..self.n {
            groups.entry((la[i], lb[i])).or_default().push(i as u8);
        }
        to_permutation(self.n, &normalize(groups.into_values().collect()))
    }

    fn native_meet_suffix(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        self.native_meet_prefix(a, b)
    }

    // Non-crossing closure of the common coarsening.
    fn native_join_prefix(&self, a: &Vec<u8>, b: &Vec<u8>) -> Option<Vec<u8>> {
        let mut blocks = to_blocks(a);
        for bb in to_blocks(b) {
            let touching: Vec<usize> = (0..blocks.len())
                .filter(|&k| blocks[k].iter().any(|x| bb.contains(x)))
                .collect();
            let mut merged: Vec<u8> = bb.clone();
            for &k in touching.iter().rev() {
                merged.extend(blocks.remove(k));
            }
            merged.sort_unstable();
            merged.dedup();
            blocks.push(merged);
        }
        let closed = merge_until_non_crossing(normalize(blocks));
        Some(to_permutation(self.n, &closed))
    }

    fn native_join_suffix(&self, a: &Vec<u8>, b: &Vec<u8>) -> Option<Vec<u8>> {
        self.native_join_prefix(a, b)
    }

    fn payload(&self, a: &Vec<u8>) -> SimplePayload {
        SimplePayload::Partition(to_blocks(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::dual;

    fn interval(alg: &DualBraid) -> Vec<Vec<u8>> {
        let delta = alg.delta();
        let top = alg.length(&delta);
        let mut out: Vec<Vec<u8>> = crate::structures::classical_braid::permutations(alg.n)
            .into_iter()
            .filter(|p| alg.length(p) + alg.length(&compose(&invert(p), &delta)) == top)
            .collect();
        out.sort();
        out
    }

    #[test]
    fn non_crossing_partitions_are_the_interval_below_delta() {
        for n in 2..=6 {
            let alg = DualBraid::new(n);
            let mut nc = alg.simples();
            nc.sort();
            assert_eq!(nc, interval(&alg), "n={n}");
        }
    }

    #[test]
    fn catalan_counts() {
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        for (n, &c) in catalan.iter().enumerate().skip(2) {
            assert_eq!(DualBraid::new(n).simples().len(), c);
        }
    }

    #[test]
    fn complement_is_kreweras() {
        // With the primed point i' read as i, ∂ is exactly the Kreweras map.
        for n in 3..=6 {
            let st = dual(n).unwrap();
            for s in st.simples() {
                let SimplePayload::Partition(blocks) = st.payload(s) else {
                    unreachable!()
                };
                assert_eq!(
                    st.payload(st.complement(s)),
                    &SimplePayload::Partition(kreweras_complement(n, blocks)),
                    "n={n} s={blocks:?}"
                );
            }
        }
    }

    #[test]
    fn kreweras_twice_n_times_is_identity() {
        for n in 3..=5 {
            let st = dual(n).unwrap();
            for s in st.simples() {
                let mut t = s;
                for _ in 0..2 * n {
                    t = st.complement(t);
                }
                assert_eq!(t, s);
                assert_eq!(st.complement(st.complement(s)), st.tau(s));
            }
        }
    }

    #[test]
    fn tau_is_rotation() {
        let n = 5;
        let st = dual(n).unwrap();
        for s in st.simples() {
            let SimplePayload::Partition(blocks) = st.payload(s) else {
                unreachable!()
            };
            let SimplePayload::Partition(rot) = st.payload(st.tau(s)) else {
                unreachable!()
            };
            let by_plus = normalize(
                blocks
                    .iter()
                    .map(|b| b.iter().map(|&x| ((x as usize + 1) % n) as u8).collect())
                    .collect(),
            );
            let by_minus = normalize(
                blocks
                    .iter()
                    .map(|b| {
                        b.iter()
                            .map(|&x| ((x as usize + n - 1) % n) as u8)
                            .collect()
                    })
                    .collect(),
            );
            assert!(rot == &by_plus || rot == &by_minus);
        }
    }
}
