use powercol_core::bounds::*;
use powercol_core::density::max_average_degree;
use powercol_core::families::{complete_ary_tree, cycle, path};
use powercol_core::oracles::{chromatic_oracle, treedepth_oracle, OracleLimits};
use powercol_core::ordering::{wcol_exact, Reach};
use powercol_core::power::graph_power;
use powercol_core::{ratio, Graph};

#[test]
fn mad_examples() {
    let k4_minus = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    assert_eq!(max_average_degree(&k4_minus).unwrap().mad, ratio(5, 2));
    assert_eq!(max_average_degree(&cycle(5).unwrap().graph).unwrap().mad, ratio(2, 1));
}

#[test]
fn tree_depth_and_wcol_of_paths() {
    let limits = OracleLimits::default();
    let p7 = path(7).unwrap().graph;
    assert_eq!(treedepth_oracle(&p7, &limits).unwrap(), 3);
    assert_eq!(wcol_exact(&p7, Reach::Infinite, 12).unwrap().0, 3);
    for k in 1..=3 {
        let p = path(9).unwrap().graph;
        assert!(wcol_exact(&p, Reach::Finite(k), 12).unwrap().0 <= k + 1);
    }
}

#[test]
fn tree_power_lower_bound() {
    let limits = OracleLimits::default();
    for (delta, p, l) in [(3, 2, 4), (3, 4, 10), (4, 2, 5), (4, 4, 17)] {
        let t = complete_ary_tree(delta, p / 2).unwrap().graph;
        assert_eq!(t.n() as i128, l);
        assert_eq!(tree_lower_bound(delta, p).unwrap(), l);
        let tp = graph_power(&t, p).unwrap();
        assert!(tp.is_complete());
        assert_eq!(chromatic_oracle(&tp, &limits).unwrap() as i128, l);
    }
}

#[test]
fn stated_formula_values() {
    assert_eq!(wcol_bound(WcolClass::TreeWidth { t: 1 }, 3).unwrap(), 4);
    assert_eq!(wcol_bound(WcolClass::Planar, 1).unwrap(), 8);
    assert_eq!(wcol_bound(WcolClass::Genus { g: 0 }, 1).unwrap(), 8);
    assert_eq!(arb_power_bound(3, 2, 1).unwrap(), 24);
    assert_eq!(square_col_bound(1, 10), 13);
    let rows = ratio_table(3, [2], |_| Some(1)).unwrap();
    assert_eq!(value_as_rational(rows[0].wcol_ratio.as_ref().unwrap()), Some(ratio(3, 1)));
}

#[test]
fn chordal_estimate_increases() {
    let rows = ratio_table(4, 2..=20, |_| None).unwrap();
    let est: Vec<_> =
        rows.iter().map(|r| value_as_rational(r.chordal_estimate_sq.as_ref().unwrap()).unwrap()).collect();
    assert!(est.windows(2).all(|w| w[0] < w[1]));
    for r in &rows {
        let ratio = value_as_rational(r.chordal_ratio.as_ref().unwrap()).unwrap();
        let e = value_as_rational(r.chordal_estimate_sq.as_ref().unwrap()).unwrap();
        assert!(ratio * ratio >= e, "p = {}", r.p);
    }
}

#[test]
fn planar_power_ratio_is_polynomial() {
    for delta in [3, 4, 6, 10] {
        let q = |p: usize| Some(wcol_bound(WcolClass::Planar, p.div_ceil(2)).unwrap() as usize);
        let rows = ratio_table(delta, 1..=20, q).unwrap();
        let c = value_as_rational(rows[0].wcol_ratio.as_ref().unwrap()).unwrap();
        for r in &rows {
            let v = value_as_rational(r.wcol_ratio.as_ref().unwrap()).unwrap();
            let p5 = powercol_core::Rational::from_integer((r.p as i128).pow(5));
            assert!(v <= c * p5, "delta = {delta}, p = {}", r.p);
        }
    }
}
