use super::{walsh_hadamard, DqiPolynomial, DqiState};
use crate::caps;
use crate::ensembles::XorSatInstance;
use crate::error::{invalid, Error, Result};
use crate::f2::{BitVec, DecodeTable};
use crate::scalar::Real;

/// Residual weight allowed on `y ≠ 0` after uncomputation.
const GARBAGE_TOL: f64 = 1e-12;

/// Simulates the two-register pipeline on `m + n` qubits and returns the
/// final `n`-qubit state.
///
/// Index layout: `y` occupies the low `m` bits, the syndrome register the high
/// `n` bits. `table` must decode `H = Bᵀ` up to weight at least `poly.ell`.
pub fn dqi_pipeline_trace<T: Real>(
    inst: &XorSatInstance,
    poly: &DqiPolynomial<T>,
    table: &DecodeTable,
) -> Result<DqiState<T>> {
    let (m, n) = (inst.m(), inst.n());
    super::check_poly(inst, poly)?;
    if table.n_checks() != n || table.n_bits() != m {
        return Err(invalid(format!(
            "decode table is {}x{}, instance needs {n}x{m}",
            table.n_checks(),
            table.n_bits()
        )));
    }
    if table.ell() < poly.ell {
        return Err(invalid(format!(
            "decode table radius {} below polynomial degree {}",
            table.ell(),
            poly.ell
        )));
    }
    caps::check_dense(
        "pipeline registers",
        m + n,
        caps::PIPELINE_MAX_QUBITS,
        std::mem::size_of::<T>() as u128,
    )?;

    let y_mask = (1u64 << m) - 1;
    let cols: Vec<u64> = inst.b().row_vecs().iter().map(BitVec::to_u64).collect();
    let bty = |y: u64| -> u64 {
        let mut s = 0u64;
        let mut rest = y;
        while rest != 0 {
            s ^= cols[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        s
    };
    let v_code = inst.v().to_u64();

    // Dicke-weighted preparation with the phase (−1)^{v·y}.
    let norm = poly.w_coeffs.iter().map(|&w| w * w).sum::<T>().sqrt();
    if !(norm > T::zero()) {
        return Err(Error::Degenerate("all expansion coefficients vanish"));
    }
    let mut state = vec![T::zero(); 1usize << (m + n)];
    for y in 0..=y_mask {
        let k = y.count_ones() as usize;
        if k > poly.ell {
            continue;
        }
        let a = poly.c_coeffs[k] / norm;
        state[y as usize] = if (y & v_code).count_ones() % 2 == 1 {
            -a
        } else {
            a
        };
    }

    // |y⟩|s⟩ → |y⟩|s ⊕ Bᵀy⟩
    let mut next = vec![T::zero(); state.len()];
    for (idx, &a) in state.iter().enumerate() {
        if a == T::zero() {
            continue;
        }
        let idx = idx as u64;
        let y = idx & y_mask;
        let s = (idx >> m) ^ bty(y);
        next[(y | (s << m)) as usize] = a;
    }
    std::mem::swap(&mut state, &mut next);

    // |y⟩|s⟩ → |y ⊕ D(s)⟩|s⟩; undecodable syndromes never carry amplitude.
    next.iter_mut().for_each(|a| *a = T::zero());
    let mut decoded: Vec<Option<u64>> = vec![None; 1usize << n];
    for (idx, &a) in state.iter().enumerate() {
        if a == T::zero() {
            continue;
        }
        let idx = idx as u64;
        let s = idx >> m;
        let e = match decoded[s as usize] {
            Some(e) => e,
            None => {
                let syndrome = BitVec::from_u64(n, s);
                let e = table
                    .lookup(&syndrome)
                    .ok_or(Error::UnknownSyndrome(syndrome))?
                    .to_u64();
                decoded[s as usize] = Some(e);
                e
            }
        };
        next[(((idx & y_mask) ^ e) | (s << m)) as usize] += a;
    }
    std::mem::swap(&mut state, &mut next);

    let garbage: f64 = state
        .iter()
        .enumerate()
        .filter(|(idx, _)| (*idx as u64) & y_mask != 0)
        .map(|(_, &a)| (a * a).as_f64())
        .sum();
    if garbage > GARBAGE_TOL {
        return Err(Error::Degenerate("y register not returned to zero"));
    }

    let mut out: Vec<T> = (0..1usize << n).map(|s| state[s << m]).collect();
    walsh_hadamard(&mut out);
    let scale = T::lit(2f64.powf(-(n as f64) / 2.0));
    out.iter_mut().for_each(|a| *a *= scale);
    DqiState::from_unnormalized(n, out)
}

#[cfg(test)]
mod tests {
    use super::super::dqi_state_direct;
    use super::*;
    use crate::ensembles::{sample_gallager, sample_instance};
    use crate::rng::stream;

    #[test]
    fn pipeline_matches_direct_state() {
        // First seed whose parity-check matrix has distinct columns.
        let (inst, table) = (0..100)
            .find_map(|seed| {
                let h = sample_gallager(8, 3, 4, &mut stream(seed)).unwrap();
                let inst = sample_instance(&h, &mut stream(seed + 1000));
                let table = DecodeTable::build(&inst.b().transpose(), 1).ok()?;
                Some((inst, table))
            })
            .unwrap();
        let poly = DqiPolynomial::from_poly(vec![0.2f64, 1.0], inst.m(), 1).unwrap();
        let piped = dqi_pipeline_trace(&inst, &poly, &table).unwrap();
        let direct = dqi_state_direct(&inst, &poly).unwrap();
        assert!(piped.aligned_deviation(&direct).unwrap() < 1e-12);
    }

    #[test]
    fn short_table_is_rejected() {
        let h = sample_gallager(8, 3, 4, &mut stream(5)).unwrap();
        let inst = sample_instance(&h, &mut stream(6));
        let table = DecodeTable::build(&inst.b().transpose(), 0).unwrap();
        let poly = DqiPolynomial::from_poly(vec![0.2f64, 1.0], inst.m(), 1).unwrap();
        assert!(dqi_pipeline_trace(&inst, &poly, &table).is_err());
    }
}
