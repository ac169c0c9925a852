use goldfish_core::equilibria::*;
use goldfish_core::polynomials::{rat, rat_int, IntegerPolynomial, Rational};
use goldfish_core::{Complex64, Error};
use num_traits::Zero;
use proptest::prelude::*;

mod common;
use common::printed::printed;

fn r(n: i64) -> Rational {
    rat_int(n)
}

fn all_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn a_samples() -> Vec<Rational> {
    vec![r(1), r(2), rat(1, 2)]
}

#[test]
fn iso_nu0_mu0_vanishes() {
    let c = EquilibriumConfig::iso(0, 0, 5, &r(0)).unwrap();
    assert!(all_zero(&c.cbar));
    assert!(all_zero(&equilibrium_residual(&c, ResidualSystem::Iso)));
}

#[test]
fn iso_nu3_core() {
    let sol = solve_iso_recursion(3, &r(0)).unwrap();
    assert_eq!(sol.coeffs, vec![r(1), r(-6), r(14), r(-14)]);
    assert!(all_zero(&iso_recursion_residual(&sol)));
}

#[test]
fn iso_nu0_mu2_n3() {
    let c = EquilibriumConfig::iso(0, 2, 3, &r(0)).unwrap();
    assert_eq!(c.cbar, vec![r(-2), r(1), r(0)]);
}

#[test]
fn known_cores() {
    let cases: Vec<(u32, Vec<Rational>)> = vec![
        (0, vec![r(1)]),
        (1, vec![r(1), r(1)]),
        (4, vec![r(1), r(-5), r(10), r(-10), r(5)]),
    ];
    for (nu, want) in cases {
        assert_eq!(solve_iso_recursion(nu, &r(0)).unwrap().coeffs, want, "nu = {nu}");
    }
    let s = rat(3, 7);
    let five = solve_iso_recursion(5, &s).unwrap();
    assert_eq!(five.coeffs, vec![r(1), r(-5), r(10), r(-10), r(5), s.clone()]);
    assert_eq!(five.free_index, Some(5));
}

#[test]
fn recursion_holds_for_allowed_nu() {
    for nu in [0, 1, 3, 4, 5] {
        for f in nu5_samples() {
            let sol = solve_iso_recursion(nu, &f).unwrap();
            assert_eq!(sol.coeffs[0], r(1));
            assert!(all_zero(&iso_recursion_residual(&sol)), "nu = {nu}");
        }
    }
}

#[test]
fn nu_two_is_rejected() {
    assert_eq!(iso_phi1(2), Err(Error::NuTwoExcluded));
    assert_eq!(EquilibriumConfig::iso(2, 3, 4, &r(0)), Err(Error::NuTwoExcluded));
}

#[test]
fn large_nu_contradicts_at_m5() {
    for nu in (6..=20).filter(|&nu| nu != 8) {
        assert_eq!(
            solve_iso_recursion(nu, &r(1)),
            Err(Error::RecursionContradiction { nu, m: 5 }),
            "nu = {nu}"
        );
    }
}

// nu = 8 passes the recursion (the m = 4 step kills phi_4) and gives
// equilibria, but it is not among the admissible cells, so the enumerator
// never builds it.
#[test]
fn nu8_recursion_has_a_one_parameter_solution() {
    let s = r(14);
    let sol = solve_iso_recursion(8, &s).unwrap();
    let want = vec![r(1), r(-6), r(14), r(-14), r(0), r(14), r(-14), r(6), r(-1)];
    assert_eq!(sol.coeffs, want);
    assert!(all_zero(&iso_recursion_residual(&sol)));
    assert!(EquilibriumConfig::iso(8, 8, 8, &s).is_err());

    // phi (z - i)^(mu - 8) z^(N - mu) still solves the isochronous system
    for n in 8..=11usize {
        for mu in 8..=n {
            let mut seq = sol.coeffs.clone();
            for _ in 8..mu {
                let mut next = seq.clone();
                next.push(r(0));
                for k in 1..next.len() {
                    next[k] -= &seq[k - 1];
                }
                seq = next;
            }
            seq.resize(n + 1, r(0));
            assert!(all_zero(&iso_residual(&seq[1..])), "N = {n}, mu = {mu}");
        }
    }
}

#[test]
fn mu_below_nu_is_rejected() {
    assert!(matches!(
        EquilibriumConfig::iso(3, 2, 4, &r(0)),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        EquilibriumConfig::iso(0, 5, 4, &r(0)),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn every_iso_config_is_an_equilibrium() {
    for n in 1..=9 {
        let list = enumerate_iso_equilibria(n, &nu5_samples());
        let cells: usize = [0usize, 1, 3, 4, 5]
            .iter()
            .map(|&nu| {
                if nu <= n {
                    (n - nu + 1) * if nu == 5 { 4 } else { 1 }
                } else {
                    0
                }
            })
            .sum();
        assert_eq!(list.len(), cells);
        for c in &list {
            assert!(all_zero(&equilibrium_residual(c, ResidualSystem::Iso)), "{c:?}");
        }
    }
}

#[test]
fn perturbed_iso_config_fails() {
    let mut c = EquilibriumConfig::iso(0, 2, 3, &r(0)).unwrap();
    c.cbar[0] += rat(1, 10);
    assert!(!all_zero(&equilibrium_residual(&c, ResidualSystem::Iso)));
}

#[test]
fn closed_forms_match_expansion() {
    for n in 1..=12 {
        for nu in [0u32, 1, 3, 4, 5] {
            for mu in nu..=n as u32 {
                for c in nu5_samples() {
                    let got = iso_cbar(nu, mu, n, &c).unwrap();
                    let want = cmbar_closed_form(nu, &r(mu as i64), n, &c).unwrap();
                    assert_eq!(got, want, "nu = {nu}, mu = {mu}, N = {n}");
                }
            }
        }
    }
}

#[test]
fn closed_form_rejects_nu_two() {
    assert_eq!(cmbar_closed_form(2, &r(3), 4, &r(0)), Err(Error::NuTwoExcluded));
}

#[test]
fn n2_families() {
    let a = r(1);
    let list = enumerate_altgold_equilibria(2, &a, &free_samples());
    let binomial: Vec<_> = list.iter().filter(|c| c.family == Family::AltgoldBinomial).collect();
    assert!(binomial.iter().any(|c| c.cbar == vec![r(0), r(-1)]));
    for c in list.iter().filter(|c| c.family == Family::AltgoldNu2) {
        let c1 = &c.cbar[0];
        assert_eq!(c.cbar[1], (c1 * c1 - r(1)) / r(3));
    }
}

#[test]
fn binomial_extremes_reproduce_special_solutions() {
    for n in 1..=8 {
        for a in a_samples() {
            let top = EquilibriumConfig::altgold_binomial(n as u32, n, &a).unwrap();
            let bottom = EquilibriumConfig::altgold_binomial(0, n, &a).unwrap();
            for m in 1..=n {
                let b = binom(&r(n as i64), m as i64) * num_traits::pow(a.clone(), m);
                let sign = if m % 2 == 0 { r(1) } else { r(-1) };
                assert_eq!(top.cbar[m - 1], &sign * &b);
                assert_eq!(bottom.cbar[m - 1], b);
            }
            assert!(all_zero(&equilibrium_residual(&top, ResidualSystem::Altgold)));
            assert!(all_zero(&equilibrium_residual(&bottom, ResidualSystem::Altgold)));
        }
    }
}

#[test]
fn binomial_matches_closed_form() {
    for n in 1..=10 {
        for a in a_samples() {
            for mu in 0..=n as u32 {
                let c = EquilibriumConfig::altgold_binomial(mu, n, &a).unwrap();
                assert_eq!(c.cbar, binomial_closed_form(mu, n, &a));
            }
        }
    }
}

#[test]
fn n5_nu2_member_is_exact() {
    let c = EquilibriumConfig::altgold_nu2(1, 5, &r(1), &r(2)).unwrap();
    assert!(all_zero(&equilibrium_residual(&c, ResidualSystem::Altgold)));
}

#[test]
fn every_altgold_config_is_an_equilibrium() {
    for n in 1..=9 {
        for a in a_samples() {
            let list = enumerate_altgold_equilibria(n, &a, &free_samples());
            for c in &list {
                assert!(c.nu + c.mu <= n as u32);
                assert!(all_zero(&equilibrium_residual(c, ResidualSystem::Altgold)), "{c:?}");
            }
        }
    }
}

#[test]
fn altgold_ranges_are_checked() {
    assert!(EquilibriumConfig::altgold_nu2(3, 4, &r(1), &r(0)).is_err());
    assert!(EquilibriumConfig::altgold_nu5plus(4, 0, 6, &r(1), &r(0)).is_err());
    assert!(EquilibriumConfig::altgold_nu5plus(5, 2, 6, &r(1), &r(0)).is_err());
}

#[test]
fn printed_families_are_equilibria() {
    for (name, n, f) in printed() {
        for a in [r(1), rat(1, 2)] {
            for c1 in free_samples() {
                let cbar = f(&a, &c1);
                assert_eq!(cbar.len(), n);
                assert!(all_zero(&altgold_residual(&cbar, &a)), "{name}");
            }
        }
    }
}

#[test]
fn printed_families_appear_in_enumeration() {
    for (name, n, f) in printed() {
        for a in [r(1), rat(1, 2)] {
            let list = enumerate_altgold_equilibria(n, &a, &free_samples());
            let hits = list.iter().filter(|c| c.cbar == f(&a, &c.cbar[0])).count();
            assert!(hits >= 1, "{name} at a = {a}");
        }
    }
}

#[test]
fn chi_solution_satisfies_its_recursion() {
    for nu in [1u32, 3, 4, 5, 6, 7, 8] {
        for c5 in free_samples() {
            let sol = solve_chi_recursion(nu, &r(0), &c5).unwrap();
            assert_eq!(sol.coeffs[1], r(-(nu as i64)));
            assert!(all_zero(&chi_recursion_residual(&sol)), "nu = {nu}");
        }
    }
    let two = solve_chi_recursion(2, &r(3), &r(0)).unwrap();
    assert_eq!(two.coeffs, vec![r(1), r(3), r(4)]);
    assert_eq!(two.free_index, Some(1));
    assert!(all_zero(&chi_recursion_residual(&two)));
}

fn pow(p: &IntegerPolynomial, k: usize) -> IntegerPolynomial {
    (0..k).fold(IntegerPolynomial::one(), |acc, _| &acc * p)
}

// a^nu chi(z/a + 1) times the binomial factors reproduces the nu >= 5 family
#[test]
fn chi_core_reproduces_nu5plus_family() {
    for n in 5..=9usize {
        for a in a_samples() {
            for nu in 5..=n as u32 {
                for mu in 0..=(n as u32 - nu) {
                    for c in free_samples() {
                        let sol = solve_chi_recursion(nu, &r(0), &(&c / r(60))).unwrap();
                        let zp = IntegerPolynomial::linear(-a.clone());
                        let zm = IntegerPolynomial::linear(a.clone());
                        let mut phi = IntegerPolynomial::zero();
                        for (m, chi) in sol.coeffs.iter().enumerate() {
                            let term = &IntegerPolynomial::constant(chi * num_traits::pow(a.clone(), m))
                                * &pow(&zp, nu as usize - m);
                            phi = &phi + &term;
                        }
                        let psi = &(&pow(&zm, mu as usize) * &pow(&zp, n - mu as usize - nu as usize)) * &phi;
                        let cfg = EquilibriumConfig::altgold_nu5plus(nu, mu, n, &a, &c).unwrap();
                        assert_eq!(cfg.plain_polynomial().unwrap(), psi, "N = {n}, nu = {nu}, mu = {mu}");
                    }
                }
            }
        }
    }
}

#[test]
fn genuineness_examples() {
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.0, 0.0);
    assert_eq!(genuineness_of_roots(&[z, i]).unwrap().verdict, Genuineness::Genuine);
    assert_eq!(genuineness_of_roots(&[i, i]).unwrap().verdict, Genuineness::Degenerate);

    let triple = genuineness_check(&EquilibriumConfig::iso(0, 3, 3, &r(0)).unwrap()).unwrap();
    assert_eq!(triple.verdict, Genuineness::Degenerate);
    assert_eq!(triple.necessary_condition, Some(false));
    assert_eq!(triple.roots.len(), 1);
    assert_eq!(triple.roots[0].1, 3);
    assert!((triple.roots[0].0 - i).norm() < 1e-6);
}

#[test]
fn distinct_binomial_roots_only_when_simple() {
    let c = EquilibriumConfig::altgold_binomial(1, 2, &r(1)).unwrap();
    assert_eq!(genuineness_check(&c).unwrap().verdict, Genuineness::Genuine);
    let c = EquilibriumConfig::altgold_binomial(1, 3, &r(1)).unwrap();
    let rep = genuineness_check(&c).unwrap();
    assert_eq!(rep.verdict, Genuineness::Degenerate);
    assert_eq!(rep.necessary_condition, None);
}

proptest! {
    // the residual is polynomial in the free constants, so random rationals
    // must vanish too
    #[test]
    fn random_free_constants_stay_exact(p in -50i64..50, q in 1i64..20, an in 1i64..6, ad in 1i64..4, mu in 0u32..3) {
        let c = rat(p, q);
        let a = rat(an, ad);
        let nu2 = EquilibriumConfig::altgold_nu2(mu, 5, &a, &c).unwrap();
        prop_assert!(all_zero(&equilibrium_residual(&nu2, ResidualSystem::Altgold)));
        let nu5 = EquilibriumConfig::altgold_nu5plus(5, mu.min(1), 6, &a, &c).unwrap();
        prop_assert!(all_zero(&equilibrium_residual(&nu5, ResidualSystem::Altgold)));
        let iso = EquilibriumConfig::iso(5, 5 + mu, 8, &c).unwrap();
        prop_assert!(all_zero(&equilibrium_residual(&iso, ResidualSystem::Iso)));
    }
}
