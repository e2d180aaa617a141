//! Acceptance run: one line per criterion, nonzero exit if any is red.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::time::{Duration, Instant};

use dpsurgery::actions::{build_cover_plan, exotic_action_certificate, CHECK_COVER, CHECK_GROUP};
use dpsurgery::configuration::{complement_h1, nodal, rational, spheres, spheres_presentation, tori, tori_presentation};
use dpsurgery::knot::{braid_alexander, braid_presentation, braid_to_diagram, knot_family, BraidWord, LaurentPoly};
use dpsurgery::presentation::{
    abelianization, coset_enumerate, smith_normal_form, verify_abelian_isomorphism, AbelianGroup, Bounds, IntMatrix,
    Letter, Presentation, VerdictStatus,
};
use dpsurgery::report::Status;
use dpsurgery::scenario::run_builtin;
use dpsurgery::surgery::{
    case_presentation, surgered_presentation, verify_group_preserved, CaseParams,
};
use dpsurgery::sw::{knot_surgery_transform, FormalSW};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors of Z_m + Z_n by hand: `gcd`, then `lcm`, dropping ones.
fn two_cyclic(m: u64, n: u64) -> Vec<u64> {
    let g = gcd(m, n);
    [g, m * n / g].into_iter().filter(|&x| x > 1).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let err = |e: dpsurgery::configuration::ConfigError| e.to_string();
    let h = complement_h1(&nodal(2, 3).map_err(err)?).map_err(err)?;
    ensure(h.free_rank() == 1 && h.torsion().is_empty(), || format!("nodal(2,3): {h}"))?;
    let h = complement_h1(&nodal(2, 4).map_err(err)?).map_err(err)?;
    ensure(h.free_rank() == 1 && h.torsion() == [2], || format!("nodal(2,4): {h}"))?;
    let mut cells = 2;
    for p in 1..=3 {
        for q in 1..=4u64 {
            let h = complement_h1(&rational(p, q as u32).map_err(err)?).map_err(err)?;
            let want: Vec<u64> = Some(q).filter(|&q| q > 1).into_iter().collect();
            ensure(h.free_rank() == 0 && h.torsion() == want, || format!("rational({p},{q}): {h}"))?;
            cells += 1;
        }
    }
    for m in 1..=4u64 {
        for n in 1..=4u64 {
            let h = complement_h1(&spheres(m as u32, n as u32).map_err(err)?).map_err(err)?;
            ensure(h.free_rank() == 0 && h.torsion() == two_cyclic(m, n), || format!("spheres({m},{n}): {h}"))?;
            cells += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("{cells} configurations exact in {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let bounds = Bounds { max_cosets: 100_000, ..Bounds::default() };
    let mut slowest = Duration::ZERO;
    for m in 1..=3u32 {
        for n in 1..=3u32 {
            let target = AbelianGroup::from_cyclic_orders(0, &[m as u64, n as u64]);
            for (name, p) in [("spheres", spheres_presentation(m, n)), ("tori", tori_presentation(m, n))] {
                let p = p.map_err(|e| e.to_string())?;
                let start = Instant::now();
                let v = verify_abelian_isomorphism(&p, &target, &bounds);
                let index = coset_enumerate(&p, &[], bounds.max_cosets).map_err(|e| e.to_string())?.index();
                let t = start.elapsed();
                slowest = slowest.max(t);
                ensure(v.status == VerdictStatus::Isomorphic, || format!("{name}({m},{n}): {}", v.summary()))?;
                ensure(index == Some((m * n) as usize), || format!("{name}({m},{n}): order {index:?}"))?;
                ensure(t < Duration::from_secs(10), || format!("{name}({m},{n}) took {t:?}"))?;
            }
        }
    }
    Ok(format!("18 presentations isomorphic, orders mn, slowest {slowest:.2?}"))
}

fn matrix_cells() -> Vec<CaseParams> {
    let mut v = vec![CaseParams::f1(1, 0), CaseParams::f1(2, 0)];
    for q in [2, 3, 5] {
        v.push(CaseParams::f2(1, q, 1).expect("valid"));
    }
    for (m, n) in [(3, 2), (5, 2), (2, 3)] {
        v.push(CaseParams::f3(m, n, 1).expect("valid"));
    }
    v
}

fn knots() -> [BraidWord; 2] {
    [BraidWord::trefoil(), BraidWord::figure_eight()]
}

fn criterion_3() -> Outcome {
    let bounds = Bounds::default();
    let mut red = Vec::new();
    let (mut iso, mut inconclusive) = (0, 0);
    for case in matrix_cells() {
        for knot in knots() {
            let k = braid_presentation(&knot).map_err(|e| e.to_string())?;
            match verify_group_preserved(&case, &k, &bounds) {
                Ok(v) => match v.status {
                    VerdictStatus::Isomorphic => iso += 1,
                    VerdictStatus::Inconclusive => {
                        inconclusive += 1;
                        red.push(format!("{case} {knot}: inconclusive"));
                    }
                    VerdictStatus::NotIsomorphic => red.push(format!("{case} {knot}: {}", v.summary())),
                },
                Err(e) => {
                    let p = case_presentation(&case, &k);
                    let v = verify_abelian_isomorphism(&p, &case.target(), &bounds);
                    red.push(format!("{case} {knot}: {e}; group is {} against {}", v.status, case.target()));
                }
            }
        }
    }
    let control = CaseParams::f2(1, 4, 1).expect("valid");
    for knot in knots() {
        let k = braid_presentation(&knot).map_err(|e| e.to_string())?;
        let z4 = AbelianGroup::cyclic(4);
        let amalgam = surgered_presentation(&control.base_presentation(), &k, 1).map_err(|e| e.to_string())?;
        for p in [case_presentation(&control, &k), amalgam] {
            if verify_abelian_isomorphism(&p, &z4, &bounds).status == VerdictStatus::Isomorphic {
                red.push(format!("control {control} {knot}: isomorphic to Z_4"));
            }
        }
        if matches!(verify_group_preserved(&control, &k, &bounds), Ok(v) if v.is_isomorphic()) {
            red.push(format!("control {control} {knot}: group preserved"));
        }
    }
    if red.is_empty() {
        Ok(format!("{iso} cells isomorphic, 0 inconclusive, control never Z_4"))
    } else {
        Err(format!("{iso} isomorphic, {inconclusive} inconclusive; {}", red.join("; ")))
    }
}

fn criterion_4() -> Outcome {
    let cap = Bounds::default().max_cosets;
    let mut compared = 0;
    for case in matrix_cells() {
        for knot in knots() {
            let k = braid_presentation(&knot).map_err(|e| e.to_string())?;
            let case_p = case_presentation(&case, &k);
            let amalgam = surgered_presentation(&case.base_presentation(), &k, case.twist()).map_err(|e| e.to_string())?;
            let (a, b) = (abelianization(&case_p), abelianization(&amalgam));
            ensure(a == b, || format!("{case} {knot}: abelianizations {a} vs {b}"))?;
            if a.free_rank() == 0 {
                let order = |p: &Presentation| coset_enumerate(p, &[], cap).map(|o| o.index()).map_err(|e| e.to_string());
                let (x, y) = (order(&case_p)?, order(&amalgam)?);
                ensure(x.is_some() && x == y, || format!("{case} {knot}: orders {x:?} vs {y:?}"))?;
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} cells agree (orders enumerated where finite)"))
}

fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let (mut sign, mut prev) = (1, 1i128);
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            combinations(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

/// Knot determinant from the Fox coloring matrix: gcd of maximal minors
/// after deleting one arc column.
fn coloring_determinant(b: &BraidWord) -> i128 {
    let d = braid_to_diagram(b).expect("knot");
    if d.arcs() <= 1 {
        return 1;
    }
    let rows: Vec<Vec<i128>> = d
        .crossings()
        .iter()
        .map(|c| {
            let mut r = vec![0i128; d.arcs()];
            r[c.over] += 2;
            r[c.under_in] -= 1;
            r[c.under_out] -= 1;
            r[1..].to_vec()
        })
        .collect();
    let k = d.arcs() - 1;
    combinations(rows.len(), k).into_iter().fold(0, |g, pick| {
        let det = bareiss(pick.iter().map(|&i| rows[i].clone()).collect()).abs();
        let (mut x, mut y) = (g, det);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    })
}

fn random_knot(rng: &mut ChaCha8Rng) -> BraidWord {
    loop {
        let strands = rng.gen_range(2..=4usize);
        let len = rng.gen_range(1..=9);
        let letters = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let b = BraidWord::new(strands, letters).expect("in range");
        if b.closure_is_knot() {
            return b;
        }
    }
}

fn criterion_5() -> Outcome {
    let p = |s: &str| s.parse::<LaurentPoly>().expect("poly");
    let alex = |b: &BraidWord| braid_alexander(b).map_err(|e| e.to_string());
    for (b, want) in [
        (BraidWord::unknot(), p("1")),
        (BraidWord::trefoil(), p("t^-1 - 1 + t")),
        (BraidWord::figure_eight(), p("-t^-1 + 3 - t")),
    ] {
        let d = alex(&b)?;
        ensure(d == want, || format!("{b}: {d}, expected {want}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..50 {
        let b = random_knot(&mut rng);
        let d = alex(&b)?;
        let det = coloring_determinant(&b);
        ensure(d.value_at_one() == 1, || format!("{b}: {d} at 1"))?;
        ensure(d.is_palindromic(), || format!("{b}: {d} not palindromic"))?;
        ensure(i128::from(d.value_at_minus_one().abs()) == det, || format!("{b}: |{d}(-1)| vs coloring {det}"))?;
    }
    let family = knot_family(10).map_err(|e| e.to_string())?;
    let sets: Vec<Vec<i64>> = family.iter().map(|(_, d)| d.coefficient_multiset()).collect();
    for (i, s) in sets.iter().enumerate() {
        ensure(s.len() == 2 * i + 3, || format!("K{}: multiset size {}", i + 1, s.len()))?;
        ensure(!sets[..i].contains(s), || format!("K{} repeats a multiset", i + 1))?;
    }
    Ok("references exact, 50 random closures consistent, K1..K10 sizes 3..21 distinct".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    for case in ["i", "ii", "iii"] {
        let r = run_builtin("theorem-1-1", &[format!("case={case}"), "count=10".into()], None)
            .map_err(|e| e.to_string())?;
        let lines: Vec<_> = r.lines().collect();
        let with = |suffix: &str| lines.iter().filter(|l| l.name.ends_with(suffix)).collect::<Vec<_>>();
        let pairs: Vec<_> = lines.iter().filter(|l| l.name.starts_with("distinguish(")).collect();
        ensure(pairs.len() == 45, || format!("case {case}: {} pairs", pairs.len()))?;
        ensure(pairs.iter().all(|l| l.verdict == "smoothly-inequivalent"), || format!("case {case}: a pair is not distinguished"))?;
        let emb = with(" embedding");
        ensure(emb.len() == 10 && emb.iter().all(|l| l.verdict == "standard"), || {
            format!("case {case}: tags {:?}", emb.iter().map(|l| &l.verdict).collect::<Vec<_>>())
        })?;
        let untouched = with(" untouched");
        ensure(untouched.len() == 10 && untouched.iter().all(|l| l.status == Status::Positive), || {
            format!("case {case}: second component changed")
        })?;
        let groups = with(": group preserved");
        ensure(groups.len() == 10 && groups.iter().all(|l| l.verdict == "isomorphic"), || {
            format!("case {case}: group verdicts {:?}", groups.iter().map(|l| &l.verdict).collect::<Vec<_>>())
        })?;
        ensure(r.sections.iter().any(|s| s.notes.iter().any(|n| n.contains("cited"))), || {
            format!("case {case}: no topological citation")
        })?;
        ensure(r.exit_code() == 0, || format!("case {case}: exit {}", r.exit_code()))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("3 cases x 45 pairs inequivalent, tags Standard, groups preserved in {t:.2?}"))
}

fn criterion_7() -> Outcome {
    let bounds = Bounds::default();
    let certificate = |m: i64, n: i64, k: i64| {
        let c = tori(m as u32, n as u32).map_err(|e| e.to_string())?;
        let plan = build_cover_plan(&c, m, n, &bounds).map_err(|e| e.to_string())?;
        exotic_action_certificate(&plan, k, 5, &bounds).map_err(|e| e.to_string())
    };
    for (m, n, k) in [(3, 2, 1), (5, 2, 1), (2, 3, 1), (4, 3, 1)] {
        let cert = certificate(m, n, k)?;
        ensure(cert.passed(), || format!("{}: failed {:?}", cert.name(), names(&cert)))?;
    }
    for ((m, n, k), check) in [((3, 2, 3), CHECK_COVER), ((2, 3, 2), CHECK_GROUP)] {
        let cert = certificate(m, n, k)?;
        ensure(!cert.passed() && names(&cert).contains(&check.to_string()), || {
            format!("{}: failed {:?}, expected {check}", cert.name(), names(&cert))
        })?;
    }
    Ok("4 certificates pass; (3,2,3) fails cover, (2,3,2) fails group".into())
}

fn names(c: &dpsurgery::actions::ActionCertificate) -> Vec<String> {
    c.failed_checks().iter().map(|x| x.name.clone()).collect()
}

/// Concrete group: permutations of `0..deg`, with generator images.
fn cayley_matches(p: &Presentation, gens: &[Vec<usize>]) -> Result<usize, String> {
    let table = coset_enumerate(p, &[], 10_000).map_err(|e| e.to_string())?;
    let table = table.table().ok_or("enumeration did not close")?.clone();
    let compose = |a: &Vec<usize>, b: &Vec<usize>| a.iter().map(|&i| b[i]).collect::<Vec<usize>>();
    let inverse = |a: &Vec<usize>| {
        let mut v = vec![0; a.len()];
        for (i, &j) in a.iter().enumerate() {
            v[j] = i;
        }
        v
    };
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(id.clone(), 0)]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let coset = seen[&x];
        for (g, img) in gens.iter().enumerate() {
            for (letter, img) in [(Letter::gen(g), img.clone()), (Letter::gen(g).inverted(), inverse(img))] {
                let y = compose(&x, &img);
                let target = table.act(coset, letter);
                match seen.get(&y) {
                    Some(&c) if c != target => return Err(format!("coset {coset} and element {y:?} disagree in {}", p.to_text())),
                    Some(_) => {}
                    None => {
                        seen.insert(y.clone(), target);
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    let images: BTreeMap<usize, ()> = seen.values().map(|&c| (c, ())).collect();
    if seen.len() != table.index() || images.len() != table.index() {
        return Err(format!("group order {} vs index {}", seen.len(), table.index()));
    }
    Ok(seen.len())
}

/// Right multiplication by `(k, f)` on the elements `(a, e)` of the dihedral
/// group of order `2n`, indexed `a + n e`.
fn dihedral_right(n: usize, k: usize, f: usize) -> Vec<usize> {
    (0..2 * n)
        .map(|x| {
            let (a, e) = (x % n, x / n);
            let b = if e == 0 { (a + k) % n } else { (a + n - k) % n };
            b + n * (e ^ f)
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..200 {
        let (r, c) = (rng.gen_range(1..=4usize), rng.gen_range(1..=4usize));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let f = smith_normal_form(&IntMatrix::from_rows(rows.clone())).invariant_factors();
        let mut prod = 1i128;
        for i in 1..=r.min(c) {
            let mut g = 0i128;
            for ri in combinations(r, i) {
                for ci in combinations(c, i) {
                    let minor = ri.iter().map(|&a| ci.iter().map(|&b| i128::from(rows[a][b])).collect()).collect();
                    let (mut x, mut y) = (g, bareiss(minor).abs());
                    while y != 0 {
                        (x, y) = (y, x % y);
                    }
                    g = x;
                }
            }
            prod *= i128::from(f.get(i - 1).copied().unwrap_or(0));
            ensure(prod == g, || format!("trial {trial}: {rows:?} factors {f:?}, d_{i} = {g}"))?;
        }
    }
    let cycle = |n: usize| (0..n).map(|i| (i + 1) % n).collect::<Vec<_>>();
    let mut groups = 0;
    for n in 1..=24usize {
        let p = Presentation::parse(&format!("gens: a ; rels: a^{n} ;")).map_err(|e| e.to_string())?;
        ensure(cayley_matches(&p, &[cycle(n)])? == n, || format!("Z_{n}"))?;
        groups += 1;
    }
    for n in 2..=12usize {
        let p = Presentation::parse(&format!("gens: r s ; rels: r^{n} , s^2 , (s r)^2 ;")).map_err(|e| e.to_string())?;
        ensure(cayley_matches(&p, &[dihedral_right(n, 1, 0), dihedral_right(n, 0, 1)])? == 2 * n, || format!("D_{n}"))?;
        groups += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x51d);
    let poly = |rng: &mut ChaCha8Rng| loop {
        let len = rng.gen_range(1..=5);
        let p = LaurentPoly::new(rng.gen_range(-3..=3), (0..len).map(|_| rng.gen_range(-4..=4)).collect());
        if !p.is_zero() {
            return p;
        }
    };
    let schoolbook = |a: &[i64], b: &[i64]| {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let square = |p: &LaurentPoly| {
        let mut v = vec![0i64; 2 * p.coefficients().len() - 1];
        for (i, &c) in p.coefficients().iter().enumerate() {
            v[2 * i] = c;
        }
        (2 * p.min_degree(), v)
    };
    for trial in 0..100 {
        let (d1, d2) = (poly(&mut rng), poly(&mut rng));
        let sw = FormalSW::new(poly(&mut rng), true, "k").map_err(|e| e.to_string())?;
        let twice = knot_surgery_transform(&knot_surgery_transform(&sw, &d1), &d2);
        let (s1, v1) = square(&d1);
        let (s2, v2) = square(&d2);
        let want = LaurentPoly::new(
            sw.value().min_degree() + s1 + s2,
            schoolbook(&schoolbook(sw.value().coefficients(), &v1), &v2),
        );
        ensure(*twice.value() == want, || format!("trial {trial}: {} vs {want}", twice.value()))?;
        let once = knot_surgery_transform(&sw, &(&d1 * &d2));
        ensure(once == twice, || format!("trial {trial}: product transform differs"))?;
    }
    Ok(format!("200 SNF oracles, {groups} Cayley tables, 100 products exact"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("homology of complements", criterion_1),
        ("presentation collapse", criterion_2),
        ("case verification matrix", criterion_3),
        ("amalgam agrees with case presentation", criterion_4),
        ("Alexander engine", criterion_5),
        ("families of exotic configurations", criterion_6),
        ("exotic action certificates", criterion_7),
        ("algebra kernel oracles", criterion_8),
    ];
    let mut red = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                red += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} {tag} {name}: {detail}", i + 1);
    }
    println!("{} of {} criteria pass", criteria.len() - red, criteria.len());
    if red > 0 {
        std::process::exit(1);
    }
}

