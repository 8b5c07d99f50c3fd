use expwell_core::oracle::{fd_eigenvalues, fd_eigenvector, fd_spectrum, sturm_count, FdGrid};
use expwell_core::solver::{
    solve_state, wavefunction, Coupling, EnergyParameter, MatchedSolution, Parity,
};
use std::f64::consts::SQRT_2;

fn cpl(g: f64) -> Coupling {
    Coupling::new(g).unwrap()
}

fn sign_changes(v: &[f64], floor: f64) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for &x in v {
        if x.abs() > floor {
            if last != 0.0 && x.signum() != last {
                count += 1;
            }
            last = x.signum();
        }
    }
    count
}

#[test]
fn ground_state_at_root_two() {
    let g = cpl(SQRT_2);
    let grid = FdGrid::new(g, 40.0, 16001).unwrap();
    let r = fd_spectrum(g, &grid, 0).unwrap();
    assert_eq!(r.energies.len(), 1);
    assert!((r.energies[0] + 0.8172).abs() < 1e-4);
    assert!(r.extrapolated[0] > -0.81721 && r.extrapolated[0] < -0.81720);
    assert!(r.richardson_error[0] < 1e-5);
}

#[test]
fn vanishing_well() {
    let g = cpl(1e-4);
    let grid = FdGrid::new(g, 40.0, 4001).unwrap();
    let r = fd_spectrum(g, &grid, 3).unwrap();
    assert!(r.energies.len() <= 1);
    for e in r.energies {
        assert!(e < 0.0 && e > -1e-6);
    }
}

#[test]
fn energies_increase_and_are_negative() {
    let g = cpl(5.0);
    let grid = FdGrid::new(g, 40.0, 4001).unwrap();
    let r = fd_spectrum(g, &grid, 20).unwrap();
    assert_eq!(r.energies.len(), 6);
    for w in r.energies.windows(2) {
        assert!(w[0] < w[1]);
    }
    assert!(r.energies.iter().all(|&e| e < 0.0));
}

#[test]
fn sturm_count_matches_enumeration() {
    let g = cpl(3.0);
    let grid = FdGrid::new(g, 30.0, 2001).unwrap();
    let levels = fd_eigenvalues(g, &grid, 50).unwrap();
    for i in 0..=40 {
        let sigma = -9.0 + 9.0 * i as f64 / 40.0;
        let enumerated = levels.iter().filter(|&&e| e < sigma).count();
        assert_eq!(sturm_count(g, &grid, sigma), enumerated, "sigma = {sigma}");
    }
    assert_eq!(sturm_count(g, &grid, -9.0), 0);
}

#[test]
fn second_order_convergence() {
    let g = cpl(2.0);
    let grids = [
        FdGrid::new(g, 30.0, 1001).unwrap(),
        FdGrid::new(g, 30.0, 2003).unwrap(),
        FdGrid::new(g, 30.0, 4007).unwrap(),
    ];
    let e: Vec<f64> = grids
        .iter()
        .map(|gr| fd_eigenvalues(g, gr, 0).unwrap()[0])
        .collect();
    let ratio = (e[0] - e[1]) / (e[1] - e[2]);
    assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn deep_levels_do_not_feel_the_walls() {
    let g = cpl(5.0);
    let small = FdGrid::new(g, 30.0, 2999).unwrap();
    let large = FdGrid::new(g, 60.0, 5999).unwrap();
    assert!((small.spacing() - large.spacing()).abs() < 1e-15);
    let a = fd_eigenvalues(g, &small, 10).unwrap();
    let b = fd_eigenvalues(g, &large, 10).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10, "{x} vs {y}");
    }
}

#[test]
fn eigenvector_shapes() {
    let g = cpl(SQRT_2);
    let grid = FdGrid::new(g, 40.0, 4001).unwrap();
    let v0 = fd_eigenvector(g, &grid, 0).unwrap();
    assert!(v0.iter().all(|&(_, y)| y > 0.0));
    let n = v0.len();
    for i in 0..n / 2 {
        let (a, b) = (v0[i].1, v0[n - 1 - i].1);
        assert!((a - b).abs() <= 1e-8 * a.abs().max(1e-300) + 1e-14);
    }
    let v1 = fd_eigenvector(g, &grid, 1).unwrap();
    let vals: Vec<f64> = v1.iter().map(|p| p.1).collect();
    assert_eq!(sign_changes(&vals, 1e-12), 1);
    assert!(vals[grid.center()].abs() < 1e-8);
}

#[test]
fn eigenvector_matches_analytic_wavefunction() {
    let g = cpl(SQRT_2);
    let grid = FdGrid::new(g, 40.0, 16001).unwrap();
    let v = fd_eigenvector(g, &grid, 0).unwrap();
    let s = solve_state(g, 0, 1e-12).unwrap();
    let sol = MatchedSolution::new(EnergyParameter::new(s.k).unwrap(), g, Parity::Even).unwrap();
    let c = grid.center();
    let scale = v[c].1 / wavefunction(&sol, 0.0).unwrap();
    let mut worst = 0.0f64;
    for &(x, y) in &v[c..] {
        if x > 10.0 {
            break;
        }
        worst = worst.max((y - scale * wavefunction(&sol, x).unwrap()).abs());
    }
    assert!(worst <= 1e-4, "worst deviation {worst:e}");
}

#[test]
fn missing_level_is_an_error() {
    let g = cpl(1.0);
    let grid = FdGrid::new(g, 30.0, 1001).unwrap();
    assert!(fd_eigenvector(g, &grid, 3).is_err());
}
