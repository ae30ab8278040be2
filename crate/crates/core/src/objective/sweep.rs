//! Gray-code enumeration of all assignments.
//!
//! An assignment `z ∈ F₂ⁿ` is encoded as a `u64` whose bit `i` is entry `i`.
//! The cube is cut into `2^t` chunks on the top `t` entries; each chunk is
//! walked in Gray order so a step XORs a single column of `B` into the residual
//! `Bz ⊕ v`. Chunk results are merged in chunk order, so output never depends
//! on the thread count.

use crate::ensembles::XorSatInstance;
use crate::error::{Error, Result};
use rayon::prelude::*;

const MAX_PREFIX_BITS: usize = 6;
const MAX_WORDS: usize = 16;

/// Lexicographic key with entry 0 most significant.
pub(crate) fn lex_key(z: u64, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        z.reverse_bits() >> (64 - n)
    }
}

struct Packed<const W: usize> {
    cols: Vec<[u64; W]>,
    v: [u64; W],
}

impl<const W: usize> Packed<W> {
    fn new(inst: &XorSatInstance) -> Self {
        let pack = |words: &[u64]| {
            let mut a = [0u64; W];
            a[..words.len()].copy_from_slice(words);
            a
        };
        Self {
            cols: inst.b().columns().iter().map(|c| pack(c.words())).collect(),
            v: pack(inst.v().words()),
        }
    }

    /// Calls `f(z, violated)` for every `z` whose top `n - low` bits equal `chunk`.
    #[inline]
    fn walk(&self, low: usize, chunk: u64, mut f: impl FnMut(u64, u32)) {
        let mut z = chunk << low;
        let mut r = self.v;
        let mut rest = z;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            xor_into(&mut r, &self.cols[j]);
        }
        f(z, popcount(&r));
        for s in 1u64..(1u64 << low) {
            let j = s.trailing_zeros() as usize;
            z ^= 1 << j;
            xor_into(&mut r, &self.cols[j]);
            f(z, popcount(&r));
        }
    }
}

#[inline]
fn xor_into<const W: usize>(r: &mut [u64; W], c: &[u64; W]) {
    for (a, b) in r.iter_mut().zip(c) {
        *a ^= b;
    }
}

#[inline]
fn popcount<const W: usize>(r: &[u64; W]) -> u32 {
    r.iter().map(|w| w.count_ones()).sum()
}

fn split(n: usize) -> (usize, usize) {
    let t = n.min(MAX_PREFIX_BITS);
    (t, n - t)
}

fn check(inst: &XorSatInstance) -> Result<usize> {
    let words = inst.m().div_ceil(64);
    if words > MAX_WORDS {
        return Err(Error::CapExceeded {
            what: "clauses for enumeration",
            requested: inst.m() as u128,
            cap: (MAX_WORDS * 64) as u128,
        });
    }
    if inst.n() > 40 {
        return Err(Error::CapExceeded {
            what: "variables for enumeration",
            requested: inst.n() as u128,
            cap: 40,
        });
    }
    Ok(words)
}

fn fold_w<const W: usize, A, I, F, M>(inst: &XorSatInstance, init: &I, visit: &F, merge: &M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, u64, u32) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    let packed = Packed::<W>::new(inst);
    let (t, low) = split(inst.n());
    let parts: Vec<A> = (0..1u64 << t)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = init();
            packed.walk(low, chunk, |z, viol| visit(&mut acc, z, viol));
            acc
        })
        .collect();
    let mut it = parts.into_iter();
    let first = it.next().expect("at least one chunk");
    it.fold(first, merge)
}

/// Folds `visit(acc, z, |Bz ⊕ v|)` over the whole cube.
pub(crate) fn fold<A, I, F, M>(inst: &XorSatInstance, init: I, visit: F, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, u64, u32) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    Ok(match check(inst)? {
        1 => fold_w::<1, _, _, _, _>(inst, &init, &visit, &merge),
        2 => fold_w::<2, _, _, _, _>(inst, &init, &visit, &merge),
        3 | 4 => fold_w::<4, _, _, _, _>(inst, &init, &visit, &merge),
        5..=8 => fold_w::<8, _, _, _, _>(inst, &init, &visit, &merge),
        _ => fold_w::<16, _, _, _, _>(inst, &init, &visit, &merge),
    })
}

fn table_w<const W: usize>(inst: &XorSatInstance) -> Vec<u16> {
    let packed = Packed::<W>::new(inst);
    let (_, low) = split(inst.n());
    let mut out = vec![0u16; 1usize << inst.n()];
    out.par_chunks_mut(1usize << low)
        .enumerate()
        .for_each(|(chunk, slice)| {
            let base = (chunk as u64) << low;
            packed.walk(low, chunk as u64, |z, viol| {
                slice[(z - base) as usize] = viol as u16
            });
        });
    out
}

/// `|Bz ⊕ v|` for every `z`, indexed by the code of `z`.
pub(crate) fn violation_table(inst: &XorSatInstance) -> Result<Vec<u16>> {
    Ok(match check(inst)? {
        1 => table_w::<1>(inst),
        2 => table_w::<2>(inst),
        3 | 4 => table_w::<4>(inst),
        5..=8 => table_w::<8>(inst),
        _ => table_w::<16>(inst),
    })
}
