use std::time::Instant;

use mendel_core::algebra::{factorize, AbelianGroup};
use mendel_core::enumeration::{
    abelian_groups, count_affine, count_affine_direct, count_non_affine, EnumerationConfig,
};
use mendel_core::moufang::{is_commutative_moufang, mendelsohn_automorphisms, nucleus, LoopTable};
use mendel_core::quasigroup::CayleyTable;
use mendel_core::Budget;

fn partitions(n: u32) -> u64 {
    // Euler's recurrence, independent of the library's partition generator.
    let n = n as i64;
    let mut p = vec![0i64; n as usize + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut s = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            s += sign * p[(m - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                s += sign * p[(m - g2) as usize];
            }
        }
        p[m as usize] = s;
    }
    p[n as usize] as u64
}

/// `a(p^r)` from the module structure of `(G, k)`: over `p ≡ 1 (mod 3)` the
/// group splits into the two eigen-parts, over `p ≡ 2 (mod 3)` it is a module
/// over the unramified quadratic extension, and over `p = 3` over the
/// ramified one.
fn oracle(p: u64, r: u32) -> u64 {
    match p % 3 {
        0 => partitions(r),
        1 => (0..=r).map(|i| partitions(i) * partitions(r - i)).sum(),
        _ if r.is_multiple_of(2) => partitions(r / 2),
        _ => 0,
    }
}

fn config() -> EnumerationConfig {
    EnumerationConfig::default()
}

#[test]
fn prime_powers_match_module_count() {
    for (p, r) in [
        (2u64, 1u32),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 6),
        (3, 1),
        (3, 2),
        (3, 3),
        (3, 4),
        (5, 2),
        (5, 3),
        (7, 1),
        (7, 2),
        (7, 3),
        (11, 2),
        (13, 2),
        (19, 1),
    ] {
        let v = p.pow(r);
        let report = count_affine(v, &config()).unwrap();
        assert_eq!(report.a, oracle(p, r), "a({p}^{r})");
    }
}

#[test]
fn counts_are_multiplicative() {
    let c = config();
    for v in [21u64, 39, 49 * 3, 63, 91, 117, 147, 171, 189, 273] {
        let expected: u64 = factorize(v)
            .into_iter()
            .map(|(p, e)| oracle(p, e))
            .product();
        assert_eq!(count_affine(v, &c).unwrap().a, expected, "a({v})");
    }
    for v in [21u64, 39, 63] {
        assert_eq!(
            count_affine_direct(v, &c).unwrap().a,
            count_affine(v, &c).unwrap().a,
            "a({v})"
        );
    }
    assert_eq!(count_affine(15, &c).unwrap().a, 0);
    assert_eq!(count_affine(1, &c).unwrap().a, 1);
}

#[test]
fn report_lists_every_group() {
    let r = count_affine(49, &config()).unwrap();
    let text = r.to_string();
    assert!(text.lines().any(|l| l == "GROUP 7x7 classes=3"), "{text}");
    assert!(text.lines().any(|l| l == "GROUP 49 classes=2"), "{text}");
    assert_eq!(text.lines().last(), Some("a(49)=5"));
    assert_eq!(abelian_groups(49).unwrap().len(), 2);
}

/// The nonassociative commutative Moufang loop of order 81 on `Z_3^4`.
fn cml81() -> LoopTable {
    let g = AbelianGroup::new(&[3, 3, 3, 3]).unwrap();
    let table = CayleyTable::from_fn(81, |x, y| {
        let (a, b) = (g.decode(x), g.decode(y));
        let t = (a[2] + 3 - b[2]) * (a[0] * b[1] + 9 - a[1] * b[0]);
        let s: Vec<u64> = (0..4)
            .map(|i| (a[i] + b[i] + if i == 3 { t } else { 0 }) % 3)
            .collect();
        g.encode(&s)
    })
    .unwrap();
    LoopTable::new(table, 0).unwrap()
}

#[test]
fn non_affine_quasigroups_of_order_81() {
    let l = cml81();
    assert!(is_commutative_moufang(&l));
    assert_eq!(nucleus(&l).len(), 3);
    let ks = mendelsohn_automorphisms(&l, usize::MAX);
    assert!(!ks.is_empty());
    let start = Instant::now();
    let b = count_non_affine(&[l], 81, &Budget::default()).unwrap();
    eprintln!(
        "b(81) in {:?} over {} automorphisms",
        start.elapsed(),
        ks.len()
    );
    assert_eq!(b, 2);
}
