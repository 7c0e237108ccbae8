use crate::structure::{ShadowAlgebra, SimplePayload, StructureKind};

/// Permutation braids: the shadow group is `S_n` with Coxeter length
/// (inversion count) and `Δ` the order-reversing permutation.
pub(crate) struct ClassicalBraid {
    n: usize,
}

impl ClassicalBraid {
    pub(crate) fn new(n: usize) -> Self {
        ClassicalBraid { n }
    }

    fn transposition(&self, i: usize) -> Vec<u8> {
        let mut p: Vec<u8> = (0..self.n as u8).collect();
        p.swap(i, i + 1);
        p
    }
}

pub(crate) fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub(crate) fn invert(a: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl ShadowAlgebra for ClassicalBraid {
    type Elem = Vec<u8>;

    fn kind(&self) -> StructureKind {
        StructureKind::ClassicalBraid
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn descriptor(&self) -> String {
        format!("braid:classical:n={}", self.n)
    }

    fn delta_pure(&self) -> bool {
        true
    }

    fn identity(&self) -> Vec<u8> {
        (0..self.n as u8).collect()
    }

    fn delta(&self) -> Vec<u8> {
        (0..self.n as u8).rev().collect()
    }

    fn atoms(&self) -> Vec<Vec<u8>> {
        (0..self.n - 1).map(|i| self.transposition(i)).collect()
    }

    fn simples(&self) -> Vec<Vec<u8>> {
        permutations(self.n)
    }

    fn compose(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        compose(a, b)
    }

    fn inverse(&self, a: &Vec<u8>) -> Vec<u8> {
        invert(a)
    }

    fn length(&self, a: &Vec<u8>) -> u32 {
        let mut inv = 0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i] > a[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    // Greedy: peel atoms that divide both from the left. σᵢ ⪯ p iff the value
    // i+1 occurs before the value i in one-line notation.
    fn native_meet_prefix(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut out = self.identity();
        'peel: loop {
            let (pa, pb) = (invert(&a), invert(&b));
            for i in 0..self.n - 1 {
                if pa[i + 1] < pa[i] && pb[i + 1] < pb[i] {
                    let t = self.transposition(i);
                    out = compose(&out, &t);
                    a = compose(&t, &a);
                    b = compose(&t, &b);
                    continue 'peel;
                }
            }
            return out;
        }
    }

    // σᵢ is a suffix of p iff p has a descent at position i.
    fn native_meet_suffix(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut out = self.identity();
        'peel: loop {
            for i in 0..self.n - 1 {
                if a[i] > a[i + 1] && b[i] > b[i + 1] {
                    let t = self.transposition(i);
                    out = compose(&t, &out);
                    a = compose(&a, &t);
                    b = compose(&b, &t);
                    continue 'peel;
                }
            }
            return out;
        }
    }

    fn payload(&self, a: &Vec<u8>) -> SimplePayload {
        SimplePayload::Permutation(a.clone())
    }
}
