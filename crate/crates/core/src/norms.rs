//! Lattice L² inner product and norm with the step weight ε.

use num_complex::Complex64 as C64;

/// ⟨a|b⟩ = Σ_p (conj(a0)·b0 + conj(a1)·b1)·ε in fixed left-to-right order.
pub fn inner_product(a0: &[C64], a1: &[C64], b0: &[C64], b1: &[C64], epsilon: f64) -> C64 {
    assert_eq!(a0.len(), b0.len());
    assert_eq!(a1.len(), b1.len());
    let mut acc = C64::default();
    for (x, y) in a0.iter().zip(b0) {
        acc += x.conj() * y;
    }
    for (x, y) in a1.iter().zip(b1) {
        acc += x.conj() * y;
    }
    acc * epsilon
}

/// ‖Ψ‖ = [Σ_p (|ψ⁰(X_p)|² + |ψ¹(X_p)|²)·ε]^{1/2}.
pub fn lattice_norm(c0: &[C64], c1: &[C64], epsilon: f64) -> f64 {
    let s: f64 = c0
        .iter()
        .map(|z| z.norm_sqr())
        .chain(c1.iter().map(|z| z.norm_sqr()))
        .sum();
    (s * epsilon).sqrt()
}
