//! Checks against facts that do not go through the Borel presentation.

use c2rp::charclasses::{sw_series, Bundle};
use c2rp::wcalg::RawWMonomial;
use c2rp::{GContext, WContext};

/// Schubert cells of `G_2(R^(n+1))` in dimension `d`: partitions
/// `l1 >= l2 >= 0` with `l1 <= n - 1` and `l1 + l2 = d`.
fn schubert_cells(n: usize, d: usize) -> usize {
    (0..n).filter(|&l1| d >= l1 && d - l1 <= l1).count()
}

#[test]
fn dimensions_count_schubert_cells() {
    for n in 2..=60 {
        let g = GContext::new(n).unwrap();
        for d in 0..=2 * n {
            assert_eq!(g.dim(d), schubert_cells(n, d), "n={n} d={d}");
        }
    }
}

/// `chi(G_2(R^m)) = floor(m/2)`, and `w_top(tau) = chi mod 2` times the top class.
#[test]
fn top_tangent_class_is_euler_characteristic() {
    for n in 2..=60 {
        let w = WContext::new(n).unwrap();
        let g_top = 2 * n - 2;
        let tg = sw_series(&w, Bundle::TauG, g_top).unwrap();
        let chi_odd = n.div_ceil(2) % 2 == 1;
        assert_eq!(!tg.classes[g_top].is_zero(), chi_odd, "n={n}");
        // W_n is a closed odd-dimensional manifold, so chi = 0.
        let tw = sw_series(&w, Bundle::TauW, w.top_degree()).unwrap();
        assert!(tw.classes[w.top_degree()].is_zero(), "n={n}");
    }
}

/// `G_(3,2) = RP^2`, with `w(RP^2) = (1 + a)^3 = 1 + a + a^2`.
#[test]
fn projective_plane() {
    let w = WContext::new(2).unwrap();
    let tg = sw_series(&w, Bundle::TauG, 2).unwrap();
    let red = |s: &str| w.reduce_raw(s.parse::<RawWMonomial>().unwrap());
    assert_eq!(tg.classes[1], red("x"));
    assert_eq!(tg.classes[2], red("x^2"));
    assert!(!red("x^2").is_zero());
    assert!(red("x^3").is_zero());
}

/// Orientability: `w_1(tau G) = 0` iff `n + 1` is even.
#[test]
fn orientability() {
    for n in 2..=40 {
        let w = WContext::new(n).unwrap();
        let tg = sw_series(&w, Bundle::TauG, 1).unwrap();
        assert_eq!(tg.classes[1].is_zero(), (n + 1) % 2 == 0, "n={n}");
    }
}
