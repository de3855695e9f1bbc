// SPDX-License-Identifier: Apache-2.0

//! Phase polynomials and TODD.
//!
//! A polynomial with columns `a_i` and coefficients `k_i` is the diagonal
//! operator `|x⟩ ↦ ω^{Σ k_i·(a_i·x)}|x⟩`, `ω = e^{iπ/4}`. It is the same
//! thing as a group of diagonal rotations `(Z_{a_i}, k_i·π/4)` up to global
//! phase. A `(cliff, poly)` pair applies `cliff` first.

use indexmap::IndexMap;
use log::{debug, info};

use super::clifford::CliffordTableau;
use super::pauli::{PauliRotation, PauliString};
use super::{Tableau, TableauElement, TableauError};
use crate::circuit::{Gate, Phase};
use crate::gf2::{BitVec, BooleanMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasePolynomial {
    n: usize,
    columns: Vec<BitVec>,
    /// Units of π/4, in `0..8`.
    coeffs: Vec<u8>,
}

impl PhasePolynomial {
    pub fn new(n: usize) -> Self {
        PhasePolynomial {
            n,
            columns: Vec::new(),
            coeffs: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.columns
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// `n × m` matrix whose column `i` is the parity support of term `i`.
    pub fn gadget_matrix(&self) -> BooleanMatrix {
        BooleanMatrix::from_columns(self.n, &self.columns).unwrap_or_else(|_| BooleanMatrix::zeros(self.n, 0))
    }

    /// Zero columns and zero coefficients are ignored.
    pub fn push(&mut self, support: BitVec, coeff: u8) -> Result<(), TableauError> {
        if support.len() != self.n {
            return Err(TableauError::QubitMismatch(self.n, support.len()));
        }
        if !support.is_zero() && coeff % 8 != 0 {
            self.columns.push(support);
            self.coeffs.push(coeff % 8);
        }
        Ok(())
    }

    pub fn is_proper(&self) -> bool {
        self.coeffs.iter().all(|k| k % 2 == 1)
    }

    /// Fails on non-diagonal rotations and on angles that are not multiples
    /// of π/4.
    pub fn from_rotations(n: usize, rs: &[PauliRotation]) -> Result<Self, TableauError> {
        let mut p = PhasePolynomial::new(n);
        for r in rs {
            if !r.is_diagonal() {
                return Err(TableauError::Format(format!("rotation `{r}` is not diagonal")));
            }
            let k = r.angle().quarters().ok_or(TableauError::NotCliffordT(r.angle()))?;
            p.push(r.pauli().z_bits().clone(), k)?;
        }
        Ok(p)
    }

    pub fn to_rotations(&self) -> Vec<PauliRotation> {
        self.columns
            .iter()
            .zip(&self.coeffs)
            .filter_map(|(c, &k)| PauliRotation::new(PauliString::z_parity(c), Phase::from_quarters(k as i64)))
            .collect()
    }

    /// Exponent of `ω` on basis state `x` (bit `q` of `x` is qubit `q`).
    pub fn evaluate(&self, x: &BitVec) -> u8 {
        let s: u32 = self
            .columns
            .iter()
            .zip(&self.coeffs)
            .filter(|(c, _)| c.dot(x))
            .map(|(_, &k)| k as u32)
            .sum();
        (s % 8) as u8
    }

    fn merged(&self) -> IndexMap<BitVec, u8> {
        let mut m: IndexMap<BitVec, u8> = IndexMap::new();
        for (c, &k) in self.columns.iter().zip(&self.coeffs) {
            *m.entry(c.clone()).or_insert(0) += k;
        }
        m
    }
}

/// Merges equal columns, then moves every even term into `cliff` as a
/// diagonal Clifford rotation applied after it.
pub fn properize(cliff: &CliffordTableau, poly: &PhasePolynomial) -> (CliffordTableau, PhasePolynomial) {
    let mut cliff = cliff.clone();
    let mut out = PhasePolynomial::new(poly.n);
    for (c, k) in poly.merged() {
        let k = k % 8;
        if c.is_zero() || k == 0 {
            continue;
        }
        if k % 2 == 0 {
            let r = PauliRotation::from_parts(PauliString::z_parity(&c), Phase::from_quarters(k as i64));
            cliff.apply_rotation(&r).expect("even coefficients are Clifford");
        } else {
            out.columns.push(c);
            out.coeffs.push(k);
        }
    }
    (cliff, out)
}

/// The symmetric cubic form `Sig[a][b][c] = Σ_i A[a][i]·A[b][i]·A[c][i] mod 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    n: usize,
    bits: Vec<bool>,
}

impl Signature {
    fn index(&self, a: usize, b: usize, c: usize) -> usize {
        let mut v = [a, b, c];
        v.sort_unstable();
        (v[0] * self.n + v[1]) * self.n + v[2]
    }

    /// Symmetric in its arguments.
    pub fn get(&self, a: usize, b: usize, c: usize) -> bool {
        self.bits[self.index(a, b, c)]
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }
}

pub fn signature(poly: &PhasePolynomial) -> Result<Signature, TableauError> {
    if !poly.is_proper() {
        return Err(TableauError::NotProper);
    }
    Ok(signature_of_columns(poly.n, &poly.columns))
}

fn signature_of_columns(n: usize, columns: &[BitVec]) -> Signature {
    let mut sig = Signature {
        n,
        bits: vec![false; n * n * n],
    };
    for col in columns {
        let ones: Vec<usize> = col.iter_ones().collect();
        for (i, &a) in ones.iter().enumerate() {
            for (j, &b) in ones.iter().enumerate().skip(i) {
                for &c in &ones[j..] {
                    let idx = (a * n + b) * n + c;
                    sig.bits[idx] ^= true;
                }
            }
        }
    }
    sig
}

/// Drops pairs of equal columns and zero columns.
fn cancel_pairs(columns: Vec<BitVec>) -> Vec<BitVec> {
    let mut count: IndexMap<BitVec, usize> = IndexMap::new();
    for c in columns {
        *count.entry(c).or_insert(0) += 1;
    }
    count
        .into_iter()
        .filter(|(c, k)| k % 2 == 1 && !c.is_zero())
        .map(|(c, _)| c)
        .collect()
}

/// One step of TODD. For column pairs `(a, b)` in index order, with
/// `z = A_a ⊕ A_b`, looks for `y` with `A·y = 0` and, for every qubit
/// triple `α < β < γ`,
/// `Σ_i y_i·(z_α·A_β,i·A_γ,i ⊕ z_β·A_α,i·A_γ,i ⊕ z_γ·A_α,i·A_β,i) = 0`,
/// and `y_a ≠ y_b`. Adding `z` to every column selected by `y` (and
/// appending `z` when `|y|` is odd) then keeps the signature and makes
/// columns `a` and `b` cancel. Coefficients of the result are all 1; the
/// first strict reduction wins.
pub fn todd_once(poly: &PhasePolynomial) -> PhasePolynomial {
    let n = poly.n;
    let a = &poly.columns;
    let m = a.len();
    let rows_a: Vec<BitVec> = (0..n)
        .map(|r| {
            let mut row = BitVec::zeros(m);
            for (i, col) in a.iter().enumerate() {
                if col.get(r) {
                    row.set(i, true);
                }
            }
            row
        })
        .collect();
    let mut products = vec![vec![BitVec::zeros(m); n]; n];
    for b in 0..n {
        for c in b + 1..n {
            products[b][c] = rows_a[b].and(&rows_a[c]);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let mut z = a[i].clone();
            z.xor_assign(&a[j]);
            let mut rows = rows_a.clone();
            for al in 0..n {
                for be in al + 1..n {
                    for ga in be + 1..n {
                        let mut row = BitVec::zeros(m);
                        if z.get(al) {
                            row.xor_assign(&products[be][ga]);
                        }
                        if z.get(be) {
                            row.xor_assign(&products[al][ga]);
                        }
                        if z.get(ga) {
                            row.xor_assign(&products[al][be]);
                        }
                        if !row.is_zero() {
                            rows.push(row);
                        }
                    }
                }
            }
            let kernel = BooleanMatrix::from_bitvecs(m, rows).expect("rows have m columns").kernel_basis();
            let Some(y) = kernel.into_iter().find(|y| y.get(i) != y.get(j)) else {
                continue;
            };
            let mut cols: Vec<BitVec> = a
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let mut c = c.clone();
                    if y.get(k) {
                        c.xor_assign(&z);
                    }
                    c
                })
                .collect();
            if y.count_ones() % 2 == 1 {
                cols.push(z.clone());
            }
            let cols = cancel_pairs(cols);
            if cols.len() < m {
                debug!("todd_once: pair ({i}, {j}) reduces {m} -> {}", cols.len());
                let coeffs = vec![1; cols.len()];
                return PhasePolynomial {
                    n,
                    columns: cols,
                    coeffs,
                };
            }
        }
    }
    poly.clone()
}

/// Linear and quadratic coefficients of `Σ k_i·(a_i·x) mod 8` after
/// expanding each parity: `a·x = Σ x_j − 2·Σ x_j·x_l + 4·Σ x_j·x_l·x_m`.
fn low_order_terms(poly: &PhasePolynomial) -> (Vec<i64>, Vec<Vec<i64>>) {
    let n = poly.n;
    let mut lin = vec![0i64; n];
    let mut quad = vec![vec![0i64; n]; n];
    for (c, &k) in poly.columns.iter().zip(&poly.coeffs) {
        let ones: Vec<usize> = c.iter_ones().collect();
        for (i, &a) in ones.iter().enumerate() {
            lin[a] += k as i64;
            for &b in &ones[i + 1..] {
                quad[a][b] -= 2 * k as i64;
            }
        }
    }
    (lin, quad)
}

/// Composes `cliff` with the diagonal Clifford `D` such that
/// `before = after·D`; the result is the Clifford to pair with `after`.
pub fn apply_clifford_correction(
    cliff: &CliffordTableau,
    before: &PhasePolynomial,
    after: &PhasePolynomial,
) -> Result<CliffordTableau, TableauError> {
    if before.n != after.n {
        return Err(TableauError::QubitMismatch(before.n, after.n));
    }
    if signature_of_columns(before.n, &odd_columns(before)) != signature_of_columns(after.n, &odd_columns(after)) {
        return Err(TableauError::SignatureMismatch);
    }
    let n = before.n;
    let (lb, qb) = low_order_terms(before);
    let (la, qa) = low_order_terms(after);
    let mut cliff = cliff.clone();
    let mut apply = |g: Gate| cliff.apply_gate(&g).expect("correction gates are Clifford");
    for a in 0..n {
        for b in a + 1..n {
            match (qb[a][b] - qa[a][b]).rem_euclid(8) {
                0 => {}
                4 => apply(Gate::cz(a, b)),
                _ => return Err(TableauError::SignatureMismatch),
            }
        }
        match (lb[a] - la[a]).rem_euclid(8) {
            0 => {}
            2 => apply(Gate::s(a)),
            4 => apply(Gate::z(a)),
            6 => apply(Gate::sdg(a)),
            _ => return Err(TableauError::SignatureMismatch),
        }
    }
    Ok(cliff)
}

fn odd_columns(p: &PhasePolynomial) -> Vec<BitVec> {
    p.columns
        .iter()
        .zip(&p.coeffs)
        .filter(|(_, k)| *k % 2 == 1)
        .map(|(c, _)| c.clone())
        .collect()
}

/// Properize, repeat [`todd_once`] while the column count drops, then
/// correct the Clifford for the difference.
pub fn todd(cliff: &CliffordTableau, poly: &PhasePolynomial) -> (CliffordTableau, PhasePolynomial) {
    let (cliff, proper) = properize(cliff, poly);
    let mut cur = proper.clone();
    loop {
        let next = todd_once(&cur);
        if next.len() >= cur.len() {
            break;
        }
        cur = next;
    }
    if cur.len() == proper.len() {
        return (cliff, proper);
    }
    info!("todd: {} -> {} terms", proper.len(), cur.len());
    let cliff = apply_clifford_correction(&cliff, &proper, &cur).expect("TODD preserves the signature");
    (cliff, cur)
}

/// Runs TODD on every group of diagonal π/4-multiple rotations, pairing it
/// with the Clifford element right before it. Other groups pass through.
pub fn optimize_phase_polynomials(t: &Tableau) -> Tableau {
    let n = t.n_qubits();
    let mut out = Tableau::new(n);
    let mut pending: Option<CliffordTableau> = None;
    for e in t.elements() {
        match e {
            TableauElement::Clifford(c) => {
                pending = Some(match pending.take() {
                    Some(p) => p.then(c),
                    None => c.clone(),
                });
            }
            TableauElement::Rotations(rs) => match PhasePolynomial::from_rotations(n, rs) {
                Ok(poly) => {
                    let c = pending.take().unwrap_or_else(|| CliffordTableau::identity(n));
                    let (c, poly) = todd(&c, &poly);
                    if !c.is_identity() {
                        out.elements_mut().push(TableauElement::Clifford(c));
                    }
                    out.elements_mut().push(TableauElement::Rotations(poly.to_rotations()));
                }
                Err(_) => {
                    if let Some(c) = pending.take() {
                        out.elements_mut().push(TableauElement::Clifford(c));
                    }
                    out.elements_mut().push(e.clone());
                }
            },
        }
    }
    if let Some(c) = pending {
        out.elements_mut().push(TableauElement::Clifford(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::QuantumCircuit;
    use crate::tensor::circuits_equivalent;
    use proptest::prelude::*;

    fn support(n: usize, qs: &[usize]) -> BitVec {
        let mut v = BitVec::zeros(n);
        for &q in qs {
            v.set(q, true);
        }
        v
    }

    fn poly(n: usize, terms: &[(&[usize], u8)]) -> PhasePolynomial {
        let mut p = PhasePolynomial::new(n);
        for (qs, k) in terms {
            p.push(support(n, qs), *k).unwrap();
        }
        p
    }

    /// CCZ on the given qubits: `ω^{4·x_a·x_b·x_c}`.
    fn ccz(n: usize, q: [usize; 3], into: &mut PhasePolynomial) {
        for mask in 1..8u32 {
            let qs: Vec<usize> = (0..3).filter(|b| mask >> b & 1 == 1).map(|b| q[b]).collect();
            let k = if qs.len() % 2 == 1 { 1 } else { 7 };
            into.push(support(n, &qs), k).unwrap();
        }
    }

    fn pair_circuit(cliff: &CliffordTableau, p: &PhasePolynomial) -> QuantumCircuit {
        let n = p.n_qubits();
        let mut t = Tableau::new(n);
        t.push(TableauElement::Clifford(cliff.clone())).unwrap();
        t.push(TableauElement::Rotations(p.to_rotations())).unwrap();
        t.to_circuit()
    }

    fn equivalent(a: (&CliffordTableau, &PhasePolynomial), b: (&CliffordTableau, &PhasePolynomial)) -> bool {
        circuits_equivalent(&pair_circuit(a.0, a.1), &pair_circuit(b.0, b.1)).unwrap().equivalent
    }

    /// Signature by brute force: fit the cubic part of the phase function
    /// through Möbius inversion over all inputs.
    fn brute_cubic(p: &PhasePolynomial) -> Vec<(usize, usize, usize)> {
        let n = p.n_qubits();
        let f = |mask: u32| {
            let x = BitVec::from_bools(&(0..n).map(|q| mask >> q & 1 == 1).collect::<Vec<_>>());
            p.evaluate(&x) as i64
        };
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let s = (1u32 << a) | (1 << b) | (1 << c);
                    let mut coef = 0i64;
                    for sub in 0..8u32 {
                        let mut m = 0u32;
                        for (bit, q) in [a, b, c].iter().enumerate() {
                            if sub >> bit & 1 == 1 {
                                m |= 1 << q;
                            }
                        }
                        let sign = if (3 - (m & s).count_ones()) % 2 == 0 { 1 } else { -1 };
                        coef += sign * f(m);
                    }
                    if coef.rem_euclid(8) == 4 {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn properize_absorbs_even_terms() {
        let p = poly(1, &[(&[0], 2)]);
        let (c, q) = properize(&CliffordTableau::identity(1), &p);
        assert!(q.is_empty());
        let mut s = CliffordTableau::identity(1);
        s.apply_gate(&Gate::s(0)).unwrap();
        assert_eq!(c, s);
        let p = poly(2, &[(&[0, 1], 1), (&[0, 1], 1)]);
        let (c, q) = properize(&CliffordTableau::identity(2), &p);
        assert!(q.is_empty());
        assert!(equivalent((&c, &q), (&CliffordTableau::identity(2), &p)));
    }

    #[test]
    fn signature_examples() {
        assert!(signature(&PhasePolynomial::new(3)).unwrap().is_zero());
        let s = signature(&poly(3, &[(&[1], 1)])).unwrap();
        assert!(s.get(1, 1, 1));
        assert_eq!(s.bits.iter().filter(|&&b| b).count(), 1);
        assert!(matches!(signature(&poly(1, &[(&[0], 2)])), Err(TableauError::NotProper)));
        let mut p = PhasePolynomial::new(3);
        ccz(3, [0, 1, 2], &mut p);
        let s = signature(&p).unwrap();
        assert!(s.get(0, 1, 2) && s.get(2, 0, 1));
        assert_eq!(brute_cubic(&p), vec![(0, 1, 2)]);
    }

    #[test]
    fn single_ccz_is_not_reduced() {
        let mut p = PhasePolynomial::new(3);
        ccz(3, [0, 1, 2], &mut p);
        assert_eq!(todd_once(&p), p);
        let (c, q) = todd(&CliffordTableau::identity(3), &p);
        assert_eq!(q.len(), 7);
        assert!(equivalent((&c, &q), (&CliffordTableau::identity(3), &p)));
    }

    #[test]
    fn two_independent_cczs_shrink() {
        let mut p = PhasePolynomial::new(6);
        ccz(6, [0, 1, 2], &mut p);
        ccz(6, [3, 4, 5], &mut p);
        assert_eq!(p.len(), 14);
        let id = CliffordTableau::identity(6);
        let (c, q) = todd(&id, &p);
        println!("two CCZs: {} terms", q.len());
        assert!(q.len() < 14);
        assert!(equivalent((&c, &q), (&id, &p)));
    }

    #[test]
    fn no_smaller_polynomial_matches_ccz() {
        // every subset of the 7 nonzero columns with at most 6 elements
        let mut p = PhasePolynomial::new(3);
        ccz(3, [0, 1, 2], &mut p);
        let target = signature(&p).unwrap();
        let all: Vec<BitVec> = (1..8u32)
            .map(|m| BitVec::from_bools(&[(m & 1) == 1, (m & 2) == 2, (m & 4) == 4]))
            .collect();
        for mask in 0u32..128 {
            if mask.count_ones() > 6 {
                continue;
            }
            let cols: Vec<BitVec> = (0..7).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
            assert_ne!(signature_of_columns(3, &cols), target, "mask {mask:07b}");
        }
    }

    #[test]
    fn empty_and_identity_inputs() {
        let p = PhasePolynomial::new(2);
        assert_eq!(todd_once(&p), p);
        let (c, q) = todd(&CliffordTableau::identity(2), &p);
        assert!(c.is_identity() && q.is_empty());
        let c = apply_clifford_correction(&CliffordTableau::identity(2), &p, &p).unwrap();
        assert!(c.is_identity());
    }

    #[test]
    fn correction_for_merged_pair_is_s() {
        let before = poly(2, &[(&[0, 1], 2)]);
        let after = PhasePolynomial::new(2);
        let c = apply_clifford_correction(&CliffordTableau::identity(2), &before, &after).unwrap();
        let (expected, _) = properize(&CliffordTableau::identity(2), &before);
        assert_eq!(c, expected);
        let t = poly(1, &[(&[0], 1)]);
        assert!(matches!(
            apply_clifford_correction(&CliffordTableau::identity(1), &t, &PhasePolynomial::new(1)),
            Err(TableauError::SignatureMismatch)
        ));
    }

    fn random_poly(n: usize, m: usize, seed: u64) -> PhasePolynomial {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut p = PhasePolynomial::new(n);
        for _ in 0..m {
            let bits: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            p.push(BitVec::from_bools(&bits), rng.gen_range(0..8)).unwrap();
        }
        p
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn properize_preserves_semantics(n in 1usize..4, m in 0usize..10, seed in any::<u64>()) {
            let p = random_poly(n, m, seed);
            let id = CliffordTableau::identity(n);
            let (c, q) = properize(&id, &p);
            prop_assert!(q.is_proper());
            prop_assert!(equivalent((&c, &q), (&id, &p)));
        }

        #[test]
        fn signature_ignores_order_and_clifford_shifts(n in 1usize..5, m in 0usize..10, seed in any::<u64>()) {
            let p = properize(&CliffordTableau::identity(n), &random_poly(n, m, seed)).1;
            let mut q = p.clone();
            q.columns.reverse();
            q.coeffs.reverse();
            for k in &mut q.coeffs {
                *k = (*k + 2) % 8;
            }
            prop_assert_eq!(signature(&p).unwrap(), signature(&q).unwrap());
        }

        #[test]
        fn todd_preserves_semantics(n in 2usize..5, m in 0usize..14, seed in any::<u64>()) {
            let p = random_poly(n, m, seed);
            let id = CliffordTableau::identity(n);
            let (pc, pp) = properize(&id, &p);
            let once = todd_once(&pp);
            prop_assert!(once.len() <= pp.len());
            prop_assert_eq!(signature(&once).unwrap(), signature(&pp).unwrap());
            let corrected = apply_clifford_correction(&pc, &pp, &once).unwrap();
            prop_assert!(equivalent((&corrected, &once), (&id, &p)));
            let (c, q) = todd(&id, &p);
            prop_assert!(q.len() <= pp.len());
            prop_assert!(equivalent((&c, &q), (&id, &p)));
        }
    }
}
