//! The equilibrium families printed for N = 2..5, as functions of
//! `(a, c_1)`.

use goldfish_core::polynomials::{rat, rat_int, Rational};

fn r(n: i64) -> Rational {
    rat_int(n)
}

pub type Printed = fn(&Rational, &Rational) -> Vec<Rational>;

pub fn printed() -> Vec<(&'static str, usize, Printed)> {
    fn t(n: i64, d: i64) -> Rational {
        rat(n, d)
    }
    vec![
        ("N2a", 2, |a, _| vec![r(0), -(a * a)]),
        ("N2b", 2, |a, c| vec![c.clone(), (c * c - a * a) / r(3)]),
        ("N3+", 3, |a, c| {
            vec![
                c.clone(),
                c * c / r(3) + a * c / r(3) - a * a,
                a * c * c / r(3) - t(2, 3) * a * a * c,
            ]
        }),
        ("N3-", 3, |a, c| {
            vec![
                c.clone(),
                c * c / r(3) - a * c / r(3) - a * a,
                -(a * c * c) / r(3) - t(2, 3) * a * a * c,
            ]
        }),
        ("N4a", 4, |a, c| {
            let a2 = a * a;
            vec![
                c.clone(),
                c * c / r(3) - t(4, 3) * &a2,
                -(&a2 * c),
                -(&a2 * c * c) / r(3) + &a2 * &a2 / r(3),
            ]
        }),
        ("cN4+", 4, |a, c| {
            let a2 = a * a;
            vec![
                c.clone(),
                c * c / r(3) + t(2, 3) * a * c - r(2) * &a2,
                t(2, 3) * a * c * c - t(5, 3) * &a2 * c,
                &a2 * c * c / r(3) - t(4, 3) * &a2 * a * c + &a2 * &a2,
            ]
        }),
        ("cN4-", 4, |a, c| {
            let a2 = a * a;
            vec![
                c.clone(),
                c * c / r(3) - t(2, 3) * a * c - r(2) * &a2,
                -t(2, 3) * a * c * c - t(5, 3) * &a2 * c,
                &a2 * c * c / r(3) + t(4, 3) * &a2 * a * c + &a2 * &a2,
            ]
        }),
        ("N5a+", 5, |a, c| five_a(a, c, &r(1))),
        ("N5a-", 5, |a, c| five_a(a, c, &r(-1))),
        ("cN5+", 5, |a, c| five_b(a, c, &r(1))),
        ("cN5-", 5, |a, c| five_b(a, c, &r(-1))),
    ]
}

fn five_a(a: &Rational, c: &Rational, s: &Rational) -> Vec<Rational> {
    let a2 = a * a;
    let a3 = &a2 * a;
    vec![
        c.clone(),
        c * c / r(3) + s * a * c / r(3) - r(2) * &a2,
        s * a * c * c / r(3) - rat(5, 3) * &a2 * c,
        -(&a2 * c * c) / r(3) - s * &a3 * c / r(3) + &a2 * &a2,
        -(s * &a3 * c * c) / r(3) + rat(2, 3) * &a2 * &a2 * c,
    ]
}

fn five_b(a: &Rational, c: &Rational, s: &Rational) -> Vec<Rational> {
    let a2 = a * a;
    let a3 = &a2 * a;
    let a4 = &a2 * &a2;
    vec![
        c.clone(),
        c * c / r(3) + s * a * c - rat(10, 3) * &a2,
        s * a * c * c - r(3) * &a2 * c,
        &a2 * c * c - s * r(5) * &a3 * c + r(5) * &a4,
        s * &a3 * c * c / r(3) - r(2) * &a4 * c + s * rat(8, 3) * &a4 * a,
    ]
}
