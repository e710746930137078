//! Spot checks of the tabulated unit witnesses for the family
//! `y^2 = x^p + t^{2ap} + s^{2ap}`: for every `j` prime to `a` in a row's
//! range, the listed `t` is a unit mod `2ap` with `sum fr(t alpha) = 1`.

use delsarte_core::rational::Rational;
use delsarte_core::shioda::{family_fr_sum, FamilyParams};
use num_integer::Integer;
use num_traits::ToPrimitive;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

struct Row {
    intervals: fn(i64) -> Vec<(Rational, Rational)>,
    congruence: Option<(u64, u64)>,
    t: fn(i64, i64) -> Rational,
}

fn row(intervals: fn(i64) -> Vec<(Rational, Rational)>, congruence: Option<(u64, u64)>, t: fn(i64, i64) -> Rational) -> Row {
    Row { intervals, congruence, t }
}

/// `j` values in the row's range, and whether the listed `t` works for each.
fn check(row: &Row, p: u64, a: u64) -> Vec<(u64, bool)> {
    let f = FamilyParams::new(p, a).unwrap();
    let n = f.modulus();
    let t = (row.t)(a as i64, p as i64);
    assert!(t.is_integer(), "t = {t} for p={p} a={a}");
    let t = t.to_integer().to_u64().unwrap();
    let ivs = (row.intervals)(p as i64);
    (1..n)
        .filter(|j| j.gcd(&a) == 1)
        .filter(|j| row.congruence.is_none_or(|(m, c)| j % m == c))
        .filter(|&j| {
            let x = r(j as i64, n as i64);
            ivs.iter().any(|(lo, hi)| &x > lo && &x < hi)
        })
        .map(|j| (j, t.gcd(&n) == 1 && family_fr_sum(&f, 1, j, t) == Some(r(1, 1))))
        .collect()
}

fn assert_rows(rows: &[Row], params: &[(u64, u64)]) {
    for (k, rw) in rows.iter().enumerate() {
        for &(p, a) in params {
            let res = check(rw, p, a);
            assert!(!res.is_empty(), "row {k} empty for p={p} a={a}");
            let bad: Vec<u64> = res.iter().filter(|x| !x.1).map(|x| x.0).collect();
            assert!(bad.is_empty(), "row {k}, p={p} a={a}: listed t fails for j in {bad:?}");
        }
    }
}

fn below_half(p: i64) -> Vec<(Rational, Rational)> {
    vec![(r(0, 1), r(p - 2, 2 * p))]
}

#[test]
fn four_divides_a() {
    let rows = [
        row(below_half, None, |_, _| r(1, 1)),
        row(|p| vec![(r(1, 2), r(p - 1, p))], None, |a, p| r(1 + a * p, 1)),
        row(|p| vec![(r(0, 1), r(p - 4, 4 * p)), (r(3, 4), r(1, 1))], Some((4, 1)), |a, p| r(2 + a * p, 2)),
        row(|p| vec![(r(1, 4), r(3 * p - 4, 4 * p))], Some((4, 1)), |a, p| r(2 + 3 * a * p, 2)),
        row(|p| vec![(r(0, 1), r(p - 4, 4 * p)), (r(3, 4), r(1, 1))], Some((4, 3)), |a, p| r(2 + 3 * a * p, 2)),
        row(|p| vec![(r(1, 4), r(3 * p - 4, 4 * p))], Some((4, 3)), |a, p| r(2 + a * p, 2)),
    ];
    assert_rows(&rows, &[(5, 4), (11, 4), (13, 8), (7, 12)]);
}

#[test]
fn two_divides_a_once() {
    let rows = [
        row(below_half, None, |_, _| r(1, 1)),
        row(|p| vec![(r(1, 2), r(p - 1, p))], None, |a, p| r(1 + a * p, 1)),
        row(
            |p| vec![(r(0, 1), r(1, 8) - r(1, p)), (r(3, 8), r(5, 8) - r(1, p)), (r(7, 8), r(1, 1))],
            Some((4, 1)),
            |a, p| r(4 + a * p, 2),
        ),
        row(|p| vec![(r(3, 8), r(5, 8) - r(1, p))], Some((4, 3)), |a, p| r(4 + 3 * a * p, 2)),
    ];
    assert_rows(&rows, &[(11, 2), (13, 2), (11, 6), (13, 18)]);
}

#[test]
fn nine_divides_a() {
    let rows = [
        row(below_half, None, |_, _| r(1, 1)),
        row(|p| vec![(r(1, 3), r(5, 6) - r(1, p))], Some((3, 2)), |a, p| r(3 + 2 * a * p, 3)),
        row(|p| vec![(r(1, 3), r(5, 6) - r(1, p))], Some((3, 1)), |a, p| r(3 + 4 * a * p, 3)),
        // Only the upper piece of the two-piece rows; see below.
        row(|_| vec![(r(2, 3), r(1, 1))], Some((3, 2)), |a, p| r(3 + 4 * a * p, 3)),
        row(|_| vec![(r(2, 3), r(1, 1))], Some((3, 1)), |a, p| r(3 + 2 * a * p, 3)),
    ];
    assert_rows(&rows, &[(7, 9), (11, 9), (13, 18)]);
}

/// On `(0, 1/3 - 1/p)` the listed `1 + 4ap/3` (j = 2 mod 3) and `1 + 2ap/3`
/// (j = 1 mod 3) are not witnesses for every `j`. Those `j` also lie in
/// `(0, (p-2)/2p)`, where `t = 1` works, so no vector is left uncovered.
#[test]
fn nine_divides_a_lower_piece() {
    for (p, a) in [(7u64, 9u64), (11, 9), (13, 18)] {
        let pieces = [
            row(|p| vec![(r(0, 1), r(1, 3) - r(1, p))], Some((3, 2)), |a, p| r(3 + 4 * a * p, 3)),
            row(|p| vec![(r(0, 1), r(1, 3) - r(1, p))], Some((3, 1)), |a, p| r(3 + 2 * a * p, 3)),
        ];
        for pc in &pieces {
            let res = check(pc, p, a);
            let failing = res.iter().filter(|x| !x.1).count();
            assert!(failing > 0, "listed t now works everywhere for p={p} a={a}");
            let fallback = row(below_half, pc.congruence, |_, _| r(1, 1));
            let covered: Vec<u64> = check(&fallback, p, a).into_iter().filter(|x| x.1).map(|x| x.0).collect();
            for (j, ok) in res {
                assert!(ok || covered.contains(&j), "p={p} a={a} j={j} has no witness");
            }
        }
    }
}

#[test]
fn a_three_p_one_mod_three() {
    let rows = [
        row(below_half, None, |_, _| r(1, 1)),
        row(|p| vec![(r(1, 3), r(5, 6) - r(1, p))], Some((3, 1)), |_, p| r(1 + 4 * p, 1)),
        row(|p| vec![(r(8, 9), r(19, 18) - r(1, p))], Some((3, 1)), |_, p| r(3 + 2 * p, 1)),
        row(|p| vec![(r(7, 9), r(17, 18) - r(1, p))], Some((3, 1)), |_, p| r(3 + 4 * p, 1)),
        row(|_| vec![(r(2, 3), r(1, 1))], Some((3, 2)), |_, p| r(1 + 4 * p, 1)),
        row(|p| vec![(r(4, 9), r(11, 18) - r(1, p))], Some((3, 2)), |_, p| r(3 + 2 * p, 1)),
        row(|p| vec![(r(5, 9), r(13, 18) - r(1, p))], Some((3, 2)), |_, p| r(3 + 4 * p, 1)),
    ];
    assert_rows(&rows, &[(19, 3), (31, 3), (37, 3)]);
}

#[test]
fn a_three_p_two_mod_three() {
    let rows = [
        row(below_half, None, |_, _| r(1, 1)),
        row(|_| vec![(r(2, 3), r(1, 1))], Some((3, 1)), |_, p| r(1 + 2 * p, 1)),
        row(|p| vec![(r(5, 9), r(13, 18) - r(1, p))], Some((3, 1)), |_, p| r(3 + 2 * p, 1)),
        row(|p| vec![(r(4, 9), r(11, 18) - r(1, p))], Some((3, 1)), |_, p| r(3 + 4 * p, 1)),
        row(|p| vec![(r(1, 3), r(5, 6) - r(1, p))], Some((3, 2)), |_, p| r(1 + 2 * p, 1)),
        row(|p| vec![(r(7, 9), r(17, 18) - r(1, p))], Some((3, 2)), |_, p| r(3 + 2 * p, 1)),
        row(|p| vec![(r(8, 9), r(19, 18) - r(1, p))], Some((3, 2)), |_, p| r(3 + 4 * p, 1)),
    ];
    assert_rows(&rows, &[(23, 3), (29, 3), (41, 3)]);
}
