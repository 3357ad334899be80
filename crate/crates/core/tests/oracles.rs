//! Values recomputed by hand-written formulas that share no code with the
//! library.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use weylkit::weyl::{weyl_character, weyl_dimension};
use weylkit::{build_root_system, Dataset, Weight};

/// Positive roots of G2 in fundamental coordinates, α₁ short.
const POSITIVE_ROOTS: [(i64, i64); 6] = [(2, -1), (-3, 2), (-1, 1), (1, 0), (3, -1), (0, 1)];

/// Closed-form Weyl dimension for G2 with α₁ short.
fn g2_dimension(a: i64, b: i64) -> i64 {
    (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) * (a + 3 * b + 4) * (2 * a + 3 * b + 5) / 120
}

/// Weights of St = L(ρ) from `Π_{α>0} (e^{α/2} + e^{-α/2})`.
fn steinberg_weights() -> BTreeMap<(i64, i64), i64> {
    let mut out = BTreeMap::new();
    for mask in 0u32..64 {
        let (mut a, mut b) = (1, 1);
        for (i, (x, y)) in POSITIVE_ROOTS.iter().enumerate() {
            if mask & (1 << i) != 0 {
                a -= x;
                b -= y;
            }
        }
        *out.entry((a, b)).or_insert(0) += 1;
    }
    out
}

fn w(a: i64, b: i64) -> Weight {
    Weight::new(vec![a, b])
}

#[test]
fn closed_form_dimensions() {
    let rs = build_root_system("G2").unwrap();
    for a in 0..=8 {
        for b in 0..=8 {
            assert_eq!(weyl_dimension(&rs, &w(a, b)).unwrap(), BigInt::from(g2_dimension(a, b)), "({a},{b})");
        }
    }
    assert_eq!(
        [(1, 0), (0, 1), (1, 1), (2, 1), (0, 2), (2, 2), (3, 1)].map(|(a, b)| g2_dimension(a, b)),
        [7, 14, 64, 189, 77, 729, 448]
    );
}

#[test]
fn steinberg_character_from_the_root_product() {
    let rs = build_root_system("G2").unwrap();
    let st = weyl_character(&rs, &w(1, 1)).unwrap();
    let expected = steinberg_weights();
    assert_eq!(st.support_len(), expected.len());
    for ((a, b), m) in &expected {
        assert_eq!(st.multiplicity(&w(*a, *b)), BigInt::from(*m), "({a},{b})");
    }
    let fixed: i64 = expected
        .iter()
        .filter(|((a, b), _)| a % 2 == 0 && b % 2 == 0)
        .map(|(_, m)| m)
        .sum();
    assert_eq!(fixed, 16);
    assert_eq!(st.torus_fixed_dimension(2, 1), BigInt::from(fixed));
}

#[test]
fn adjoint_module_has_two_fixed_weights() {
    // L(0,1) is the adjoint module: the twelve roots and a two-dimensional
    // zero weight space; no nonzero root lies in 2X.
    let ds = Dataset::builtin().unwrap();
    let l01 = ds.table().simple_character(&w(0, 1)).unwrap();
    assert_eq!(l01.multiplicity(&w(0, 0)), BigInt::from(2));
    for (x, y) in POSITIVE_ROOTS {
        assert_eq!(l01.multiplicity(&w(x, y)), BigInt::from(1));
        assert_eq!(l01.multiplicity(&w(-x, -y)), BigInt::from(1));
        assert!(x % 2 != 0 || y % 2 != 0);
    }
    assert_eq!(l01.torus_fixed_dimension(2, 1), BigInt::from(2));
}

#[test]
fn pim_dimensions_fill_the_restricted_enveloping_algebra() {
    // Σ dim Q₁(λ)·dim L(λ) = dim u(g) = p^{dim g} = 2^14.
    let ds = Dataset::builtin().unwrap();
    let q = ds.pim_dimensions().unwrap();
    let total: BigInt = q
        .iter()
        .map(|(lam, d)| d * ds.table().simple_character(lam).unwrap().dimension())
        .sum();
    assert_eq!(total, BigInt::from(1 << 14));
    // By hand from the four tensor identities.
    let q01 = 64 * 6;
    let q10 = 64 * 14 - 2 * 64;
    let q00 = 64 * 64 - 2 * q01 - 16 * 64;
    assert_eq!((q00, q10, q01), (2304, 768, 384));
    assert_eq!(q[&w(0, 0)], BigInt::from(q00));
    assert_eq!(q[&w(1, 0)], BigInt::from(q10));
    assert_eq!(q[&w(0, 1)], BigInt::from(q01));
}

#[test]
fn highest_short_coroot_pairing() {
    // α₀ = 2α₁ + α₂ and α₀∨ = 2α₁∨ + 3α₂∨, so ⟨(a,b), α₀∨⟩ = 2a + 3b.
    let rs = build_root_system("G2").unwrap();
    for a in 0..=4 {
        for b in 0..=4 {
            assert_eq!(rs.coroot_pairing(&w(a, b), rs.highest_short_root()).unwrap(), 2 * a + 3 * b);
        }
    }
}

#[test]
fn costandard_composition_factors() {
    // ∇(1,0) is the 7-dimensional module: L(1,0) is its six short roots
    // and k accounts for the zero weight.
    let ds = Dataset::builtin().unwrap();
    let l10 = ds.table().simple_character(&w(1, 0)).unwrap();
    assert_eq!(l10.dimension(), BigInt::from(6));
    assert_eq!(l10.multiplicity(&w(0, 0)), BigInt::from(0));
    for (x, y) in [(1, 0), (-1, 1), (2, -1)] {
        assert_eq!(l10.multiplicity(&w(x, y)), BigInt::from(1));
        assert_eq!(l10.multiplicity(&w(-x, -y)), BigInt::from(1));
    }
}
