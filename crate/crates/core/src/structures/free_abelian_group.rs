use crate::structure::{ShadowAlgebra, SimplePayload, StructureKind};

/// `ℤⁿ` with the L1 length, `Δ = (1,…,1)`; simples are the 0/1 vectors.
pub(crate) struct FreeAbelian {
    n: usize,
}

impl FreeAbelian {
    pub(crate) fn new(n: usize) -> Self {
        FreeAbelian { n }
    }
}

impl ShadowAlgebra for FreeAbelian {
    type Elem = Vec<i8>;

    fn kind(&self) -> StructureKind {
        StructureKind::FreeAbelian
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn descriptor(&self) -> String {
        format!("zn:n={}", self.n)
    }

    // The centre is all of ℤⁿ, which is ⟨Δ⟩ only in rank one.
    fn delta_pure(&self) -> bool {
        self.n == 1
    }

    fn identity(&self) -> Vec<i8> {
        vec![0; self.n]
    }

    fn delta(&self) -> Vec<i8> {
        vec![1; self.n]
    }

    fn atoms(&self) -> Vec<Vec<i8>> {
        (0..self.n)
            .map(|i| {
                let mut v = vec![0; self.n];
                v[i] = 1;
                v
            })
            .collect()
    }

    fn simples(&self) -> Vec<Vec<i8>> {
        (0..1u32 << self.n)
            .map(|m| (0..self.n).map(|i| ((m >> i) & 1) as i8).collect())
            .collect()
    }

    fn compose(&self, a: &Vec<i8>, b: &Vec<i8>) -> Vec<i8> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inverse(&self, a: &Vec<i8>) -> Vec<i8> {
        a.iter().map(|x| -x).collect()
    }

    fn length(&self, a: &Vec<i8>) -> u32 {
        a.iter().map(|x| x.unsigned_abs() as u32).sum()
    }

    fn native_meet_prefix(&self, a: &Vec<i8>, b: &Vec<i8>) -> Vec<i8> {
        a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
    }

    fn native_meet_suffix(&self, a: &Vec<i8>, b: &Vec<i8>) -> Vec<i8> {
        self.native_meet_prefix(a, b)
    }

    fn native_join_prefix(&self, a: &Vec<i8>, b: &Vec<i8>) -> Option<Vec<i8>> {
        Some(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect())
    }

    fn native_join_suffix(&self, a: &Vec<i8>, b: &Vec<i8>) -> Option<Vec<i8>> {
        self.native_join_prefix(a, b)
    }

    fn payload(&self, a: &Vec<i8>) -> SimplePayload {
        SimplePayload::Bits(a.iter().map(|&x| x as u8).collect())
    }
}
