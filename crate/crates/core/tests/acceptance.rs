//! Acceptance suite: one PASS/FAIL line per criterion, with its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mendel_core::algebra::{factorize, is_prime, roots_of_f, AbelianGroup, GroupAutomorphism};
use mendel_core::constructions::{
    anti_double, char2_mendelsohn, field_mendelsohn, netto_sts, projective_sts, spectrum_construct,
    spectrum_member, steiner_affine,
};
use mendel_core::designs::{
    find_mitre, is_proper, mts_to_quasigroup, quasigroup_to_mts, quasigroup_to_sts,
    sts_to_quasigroup, UnorderedTripleSystem,
};
use mendel_core::enumeration::{
    count_affine, count_affine_direct, is_self_converse, kepka_nemec_iso, EnumerationConfig, Solver,
};
use mendel_core::quasigroup::{
    belousov_distributive, converse, is_antidistributive, is_isomorphic, predicate_suite,
    AntiDistributiveMode, CayleyTable,
};
use mendel_core::Budget;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a(v: u64, config: &EnumerationConfig) -> Result<u64, String> {
    count_affine(v, config)
        .map(|r| r.a)
        .map_err(|e| format!("a({v}): {e}"))
}

fn enumeration_ground_truths() -> Outcome {
    let c = EnumerationConfig::default();
    let expected = [
        (3, 1),
        (9, 2),
        (7, 2),
        (49, 5),
        (13, 2),
        (169, 5),
        (4, 1),
        (25, 1),
        (5, 0),
        (8, 0),
        (11, 0),
    ];
    for (v, want) in expected {
        let got = a(v, &c)?;
        ensure(got == want, || format!("a({v}) = {got}, expected {want}"))?;
    }
    Ok(())
}

fn affine_counts() -> Outcome {
    let c = EnumerationConfig::default();
    for (v, want) in [(16, 2), (27, 3), (81, 5), (64, 3)] {
        let got = a(v, &c)?;
        ensure(got == want, || format!("a({v}) = {got}, expected {want}"))?;
    }
    Ok(())
}

fn affine_counts_brute_cross_check() -> Outcome {
    let c = EnumerationConfig {
        solver: Solver::Brute,
        ..EnumerationConfig::default()
    };
    for (v, want) in [(16, 2), (27, 3), (81, 5)] {
        let got = a(v, &c)?;
        ensure(got == want, || {
            format!("brute a({v}) = {got}, expected {want}")
        })?;
    }
    Ok(())
}

fn root_counting() -> Outcome {
    for p in (2..=10_000u64).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut d = 1;
        while q <= 10_000 {
            let roots = roots_of_f(p, d);
            let want = match p % 3 {
                1 => 2,
                0 if d == 1 => 1,
                _ => 0,
            };
            ensure(roots.len() == want, || {
                format!("{p}^{d}: {} roots, lemma says {want}", roots.len())
            })?;
            let trial: Vec<u64> = (0..q).filter(|&k| (k * k + 1 + q - k) % q == 0).collect();
            ensure(roots == trial, || {
                format!("{p}^{d}: {roots:?} vs trial {trial:?}")
            })?;
            q *= p;
            d += 1;
        }
    }
    Ok(())
}

fn check_mendelsohn(name: &str, q: &CayleyTable) -> Outcome {
    let r = predicate_suite(q);
    ensure(
        r.is_idempotent() && r.is_semisymmetric() && r.is_medial(),
        || format!("{name}: report {r:?}"),
    )?;
    quasigroup_to_mts(q)
        .map(drop)
        .map_err(|e| format!("{name}: quasigroup_to_mts: {e}"))
}

fn construction_validity() -> Outcome {
    for q in [7u64, 13, 19, 25, 31, 37, 43, 49] {
        let (p, d) = factorize(q).into_iter().next().unwrap();
        let t = field_mendelsohn(p, d).map_err(|e| e.to_string())?;
        check_mendelsohn(&format!("field {q}"), &t)?;
    }
    for d in 1..=3 {
        check_mendelsohn(
            &format!("char2 {d}"),
            &char2_mendelsohn(d).map_err(|e| e.to_string())?,
        )?;
        check_mendelsohn(
            &format!("steiner {d}"),
            &steiner_affine(d).map_err(|e| e.to_string())?,
        )?;
    }
    for v in (1..=100).filter(|&v| spectrum_member(v)) {
        let t = spectrum_construct(v).map_err(|e| e.to_string())?;
        ensure(t.order() == v as usize, || {
            format!("spectrum {v}: order {}", t.order())
        })?;
        check_mendelsohn(&format!("spectrum {v}"), &t)?;
    }
    Ok(())
}

fn spectrum_equivalence() -> Outcome {
    let n = 2000u64;
    let mut loeschian = vec![false; n as usize + 1];
    for x in 0..=45u64 {
        for y in 0..=45u64 {
            let v = x * x + x * y + y * y;
            if (x, y) != (0, 0) && v <= n {
                loeschian[v as usize] = true;
            }
        }
    }
    for v in 1..=n {
        ensure(spectrum_member(v) == loeschian[v as usize], || {
            format!(
                "v = {v}: criterion {} vs search {}",
                spectrum_member(v),
                loeschian[v as usize]
            )
        })?;
    }
    Ok(())
}

fn fano() -> UnorderedTripleSystem {
    projective_sts(3).unwrap()
}

fn ag23() -> UnorderedTripleSystem {
    quasigroup_to_sts(&steiner_affine(2).unwrap()).unwrap()
}

fn doubling() -> Outcome {
    let strict = AntiDistributiveMode::Strict;
    let cases = [
        ("Fano", fano(), 15, true),
        ("PG(3,2)", projective_sts(4).unwrap(), 31, true),
        ("AG(2,3)", ag23(), 19, false),
    ];
    for (name, sts, v, anti) in cases {
        let d = anti_double(&sts).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.order() == v, || format!("{name}: order {}", d.order()))?;
        ensure(is_proper(&d), || {
            format!("{name}: doubled system is not proper")
        })?;
        let q = mts_to_quasigroup(&d);
        let got = is_antidistributive(&q, strict).map_err(|e| e.to_string())?;
        ensure(got.is_anti() == anti, || {
            format!("{name}: anti-distributivity {got:?}")
        })?;
    }
    Ok(())
}

fn mitre_duality() -> Outcome {
    let cases = [
        ("Fano", fano()),
        ("AG(2,3)", ag23()),
        ("PG(3,2)", projective_sts(4).unwrap()),
        ("Netto(19)", netto_sts(19, 1).unwrap()),
    ];
    for (name, sts) in cases {
        let mitre = find_mitre(&sts);
        let q = sts_to_quasigroup(&sts);
        let anti = is_antidistributive(&q, AntiDistributiveMode::Strict)
            .map_err(|e| e.to_string())?
            .is_anti();
        ensure(mitre.is_none() == anti, || {
            format!("{name}: mitre {mitre:?}, anti-distributive {anti}")
        })?;
    }
    let expect_none = [true, false, true, true];
    for ((name, sts), none) in [
        ("Fano", fano()),
        ("AG(2,3)", ag23()),
        ("PG(3,2)", projective_sts(4).unwrap()),
        ("Netto(19)", netto_sts(19, 1).unwrap()),
    ]
    .into_iter()
    .zip(expect_none)
    {
        ensure(find_mitre(&sts).is_none() == none, || {
            format!("{name}: unexpected mitre status")
        })?;
    }
    Ok(())
}

fn converse_structure() -> Outcome {
    let budget = Budget::default();
    for p in [7u64, 13] {
        let report = count_affine(p, &EnumerationConfig::default()).map_err(|e| e.to_string())?;
        let reps = &report.per_group[0].representatives;
        ensure(reps.len() == 2, || {
            format!("a({p}) has {} classes", reps.len())
        })?;
        let tables: Vec<CayleyTable> = reps
            .iter()
            .map(|k| mendel_core::constructions::affine_mendelsohn(k).unwrap())
            .collect();
        let iso = is_isomorphic(&tables[0], &tables[1], &budget).map_err(|e| e.to_string())?;
        ensure(iso.is_none(), || {
            format!("p = {p}: the two classes are isomorphic")
        })?;
        for k in reps {
            let sc = is_self_converse(k, &budget).map_err(|e| e.to_string())?;
            ensure(!sc, || {
                format!("p = {p}: k = {:?} is self-converse", k.rows())
            })?;
        }
        let (k0, k1) = (&reps[0], &reps[1]);
        ensure(k0.one_minus().unwrap() == *k1, || {
            format!("p = {p}: I - k0 != k1")
        })?;
        ensure(converse(&tables[0]) == tables[1], || {
            format!("p = {p}: converse of the first class is not the second")
        })?;
        ensure(converse(&tables[1]) == tables[0], || {
            format!("p = {p}: converse of the second class is not the first")
        })?;
    }
    Ok(())
}

fn oracle_agreement() -> Outcome {
    let budget = Budget::default();
    let config = EnumerationConfig::default();
    for v in 1..=27u64 {
        let report = count_affine_direct(v, &config).map_err(|e| e.to_string())?;
        let mut ks: Vec<GroupAutomorphism> = Vec::new();
        for g in &report.per_group {
            for k in &g.representatives {
                ks.push(k.clone());
                // A conjugate copy, so that some off-diagonal pairs agree.
                if let Some(psi) = shear(g.group.clone()) {
                    ks.push(k.conjugate_by(&psi).unwrap());
                }
            }
        }
        let tables: Vec<CayleyTable> = ks
            .iter()
            .map(|k| mendel_core::constructions::affine_mendelsohn(k).unwrap())
            .collect();
        for i in 0..ks.len() {
            for j in 0..ks.len() {
                let kn = kepka_nemec_iso(&ks[i], &ks[j], &budget).map_err(|e| e.to_string())?;
                let iso = is_isomorphic(&tables[i], &tables[j], &budget)
                    .map_err(|e| e.to_string())?
                    .is_some();
                ensure(kn == iso, || {
                    format!("v = {v}: pair ({i}, {j}) Kepka-Nemec {kn}, table search {iso}")
                })?;
            }
        }
    }
    Ok(())
}

/// `e_0 -> e_0 + e_1` when the first two factors agree.
fn shear(g: AbelianGroup) -> Option<GroupAutomorphism> {
    let f = g.factors();
    if f.len() < 2 || f[0] != f[1] {
        return None;
    }
    let m = f.len();
    let rows: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| i64::from(i == j || (i, j) == (1, 0)))
                .collect()
        })
        .collect();
    GroupAutomorphism::new(&g, &rows).ok()
}

fn belousov() -> Outcome {
    let mut tables: Vec<(String, CayleyTable)> = Vec::new();
    for q in [7u64, 13, 19, 25] {
        let (p, d) = factorize(q).into_iter().next().unwrap();
        tables.push((format!("field {q}"), field_mendelsohn(p, d).unwrap()));
    }
    for d in 1..=2 {
        tables.push((format!("char2 {d}"), char2_mendelsohn(d).unwrap()));
    }
    for d in 1..=3 {
        tables.push((format!("steiner {d}"), steiner_affine(d).unwrap()));
    }
    for v in (1..=27).filter(|&v| spectrum_member(v)) {
        tables.push((format!("spectrum {v}"), spectrum_construct(v).unwrap()));
    }
    tables.push((
        "double Fano".into(),
        mts_to_quasigroup(&anti_double(&fano()).unwrap()),
    ));
    tables.push((
        "double AG(2,3)".into(),
        mts_to_quasigroup(&anti_double(&ag23()).unwrap()),
    ));
    tables.push(("Fano".into(), sts_to_quasigroup(&fano())));
    tables.push((
        "PG(3,2)".into(),
        sts_to_quasigroup(&projective_sts(4).unwrap()),
    ));
    tables.push((
        "Netto(7)".into(),
        sts_to_quasigroup(&netto_sts(7, 1).unwrap()),
    ));
    tables.push((
        "Netto(19)".into(),
        sts_to_quasigroup(&netto_sts(19, 1).unwrap()),
    ));
    tables.push(("AG(2,3)".into(), sts_to_quasigroup(&ag23())));
    let config = EnumerationConfig::default();
    for v in 1..=27u64 {
        let report = count_affine(v, &config).map_err(|e| e.to_string())?;
        for g in &report.per_group {
            for (i, k) in g.representatives.iter().enumerate() {
                let t = mendel_core::constructions::affine_mendelsohn(k).unwrap();
                tables.push((format!("Aff {} #{i}", g.group.label()), t));
            }
        }
    }
    for (name, q) in &tables {
        let r = predicate_suite(q);
        ensure(r.is_mendelsohn(), || format!("{name} is not Mendelsohn"))?;
        let b = belousov_distributive(q);
        ensure(r.is_distributive() == b.holds(), || {
            format!(
                "{name}: distributive {} but 3-generated check {b:?}",
                r.is_distributive()
            )
        })?;
    }
    Ok(())
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: "1",
            name: "enumeration ground truths",
            limit: Duration::from_secs(10),
            run: enumeration_ground_truths,
        },
        Criterion {
            id: "2",
            name: "affine class counts, structured solver",
            limit: Duration::from_secs(30),
            run: affine_counts,
        },
        Criterion {
            id: "2b",
            name: "affine class counts, column-scan cross-check",
            limit: Duration::from_secs(600),
            run: affine_counts_brute_cross_check,
        },
        Criterion {
            id: "3",
            name: "root counting up to 10^4",
            limit: Duration::from_secs(5),
            run: root_counting,
        },
        Criterion {
            id: "4",
            name: "construction validity",
            limit: Duration::from_secs(60),
            run: construction_validity,
        },
        Criterion {
            id: "5",
            name: "spectrum equivalence up to 2000",
            limit: Duration::from_secs(1),
            run: spectrum_equivalence,
        },
        Criterion {
            id: "6",
            name: "anti-distributive doubling",
            limit: Duration::from_secs(5),
            run: doubling,
        },
        Criterion {
            id: "7",
            name: "mitre and anti-distributivity duality",
            limit: Duration::from_secs(10),
            run: mitre_duality,
        },
        Criterion {
            id: "8",
            name: "converse structure for p = 7, 13",
            limit: Duration::from_secs(1),
            run: converse_structure,
        },
        Criterion {
            id: "9",
            name: "Kepka-Nemec agrees with table isomorphism",
            limit: Duration::from_secs(60),
            run: oracle_agreement,
        },
        Criterion {
            id: "10",
            name: "Belousov 3-generated criterion",
            limit: Duration::from_secs(120),
            run: belousov,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(()) if took <= c.limit => Ok(()),
            Ok(()) => Err(format!("took {took:.2?}, limit {:?}", c.limit)),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(()) => println!(
                "PASS {:>3} {} ({took:.2?}, limit {:?})",
                c.id, c.name, c.limit
            ),
            Err(e) => {
                failed += 1;
                println!(
                    "FAIL {:>3} {} ({took:.2?}, limit {:?}): {e}",
                    c.id, c.name, c.limit
                );
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
