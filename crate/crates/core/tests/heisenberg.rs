use ncgabor::heisenberg::{
    gabor_matrix_element, gabor_matrix_element_fourier, gaussian_window, h_fourier, h_fourier_naive, normalized_window,
    weak_reconstruct_pair, HPoint, HeisenbergConfig, HeisenbergGrid, LineGrid, SchrodingerRep,
};
use ncgabor::linalg::{self, C64};
use ncgabor::random;

/// `<f, f>` against its Gabor-side reconstruction for the Gaussian.
fn weak_ratio(cfg: &HeisenbergConfig) -> C64 {
    let grid = cfg.grid().unwrap();
    let psi = normalized_window(gaussian_window, &grid).unwrap();
    let f = grid.sample(&psi);
    let (direct, via) =
        weak_reconstruct_pair(&f, &f, &psi, &grid, &cfg.outer_grid().unwrap(), &cfg.line().unwrap(), &cfg.lambdas().unwrap())
            .unwrap();
    via / direct
}

#[test]
fn weak_reconstruction_converges_under_refinement() {
    let desk = HeisenbergConfig::weak_desk();
    let coarse = weak_ratio(&desk);
    assert!((coarse - 1.0).norm() <= 0.15, "desk ratio {coarse}");
    let fine = weak_ratio(&desk.refined());
    assert!((fine - 1.0).norm() < (coarse - 1.0).norm(), "desk {coarse}, refined {fine}");
}

#[test]
fn matrix_element_routes_agree_on_random_inputs() {
    let grid = HeisenbergGrid::cube(2.5, 8).unwrap();
    let line = LineGrid::balanced(16).unwrap();
    let mut rng = random::rng(90);
    let f = random::complex_vec(grid.len(), &mut rng);
    let g = random::complex_vec(line.len(), &mut rng);
    let k = random::complex_vec(line.len(), &mut rng);
    for (lambda, h) in [(0.75, HPoint::new(0.2, 0.1, -0.3)), (-2.25, HPoint::new(-1.0, 0.5, 0.4))] {
        let rep = SchrodingerRep::new(lambda, line.clone()).unwrap();
        let a = gabor_matrix_element(&f, gaussian_window, h, &grid, &rep, &g, &k).unwrap();
        let b = gabor_matrix_element_fourier(&f, gaussian_window, h, &grid, &rep, &g, &k).unwrap();
        assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()), "{a} vs {b}");
    }
}

#[test]
fn fast_transform_matches_naive_sum() {
    let grid = HeisenbergGrid::new([2.0, 1.5, 2.5], [6, 8, 4]).unwrap();
    let line = LineGrid::balanced(16).unwrap();
    let mut rng = random::rng(91);
    let f = random::complex_vec(grid.len(), &mut rng);
    for lambda in [-3.0, 0.3, 1.7] {
        let rep = SchrodingerRep::new(lambda, line.clone()).unwrap();
        let fast = h_fourier(&f, &grid, &rep).unwrap();
        let slow = h_fourier_naive(&f, &grid, &rep).unwrap();
        assert!(linalg::max_abs_diff(&fast, &slow) <= 1e-12 * (1.0 + slow.camax()));
    }
}
