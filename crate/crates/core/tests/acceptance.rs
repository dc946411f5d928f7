//! End-to-end acceptance run. Prints one `PASS`/`FAIL` line per criterion
//! and exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use quiddity::enumeration::{
    classify_irreducible, count_restricted, enumerate_quiddities, extend_word, irreducible_classes,
    max_irreducible_size,
    char0_witness, Alphabet, Budget, SearchOptions,
};
use quiddity::geometry::{enumerate_triangulations, triangulation_quiddity, verify_dissection_parities};
use quiddity::morphism::{crt_value_table, frobenius_closure_check, transfer_classification, MorphismSpec};
use quiddity::reduction::{is_reducible, is_reducible_bounded, BoundedOutcome, Reducibility};
use quiddity::ring::parse_ring_spec;
use quiddity::{Element, Mat2, RingSpec, Tuple};

type Check = Result<String, String>;
type Classes = BTreeMap<usize, Vec<Tuple>>;

fn ring(s: &str) -> RingSpec {
    parse_ring_spec(s).expect("ring literal")
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Canonical classes of hand-written tuple literals, grouped by size.
fn golden(r: &RingSpec, literals: &[&str]) -> Classes {
    let mut out: BTreeMap<usize, BTreeSet<Tuple>> = BTreeMap::new();
    for lit in literals {
        let t = Tuple::parse(r, lit).unwrap_or_else(|e| panic!("{lit}: {e}"));
        out.entry(t.len()).or_default().insert(t.canonical_form());
    }
    out.into_iter().map(|(n, s)| (n, s.into_iter().collect())).collect()
}

fn nonempty(c: &Classes) -> Classes {
    c.iter().filter(|(_, v)| !v.is_empty()).map(|(&n, v)| (n, v.clone())).collect()
}

fn show(c: &Classes) -> String {
    c.iter()
        .map(|(n, v)| format!("{n}: [{}]", v.iter().map(|t| format!("({t})")).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join("; ")
}

fn classify_matches(name: &str, max: usize, expected: &Classes) -> Result<usize, String> {
    let rep = classify_irreducible(&ring(name), max, &opts()).map_err(|e| e.to_string())?;
    ensure(rep.is_complete(), || format!("{name}: search incomplete"))?;
    let got = nonempty(&rep.sizes);
    ensure(&got == expected, || format!("{name}: got {} expected {}", show(&got), show(expected)))?;
    Ok(rep.class_count())
}

fn z_lists() -> Vec<(&'static str, Vec<&'static str>)> {
    let z2 = vec!["1,1,1", "0,0,0,0"];
    let z3 = vec!["1,1,1", "-1,-1,-1", "0,0,0,0"];
    let mut z4 = z3.clone();
    z4.extend(["0,2,0,2", "2,0,2,0", "2,2,2,2"]);
    let z5 = vec![
        "1,1,1", "4,4,4", "0,0,0,0", "0,2,0,3", "2,2,2,2,2", "3,3,3,3,3",
        "3,2,2,3,2,2", "2,3,3,2,3,3", "2,3,2,3,2,3",
    ];
    vec![("Z/2", z2), ("Z/3", z3), ("Z/4", z4), ("Z/5", z5), ("Z/6", z6_list())]
}

fn z6_list() -> Vec<&'static str> {
    vec![
        "1,1,1", "5,5,5", "0,0,0,0", "2,4,2,4", "2,3,4,3", "0,2,0,4", "0,3,0,3",
        "2,2,2,2,2,2", "3,3,3,3,3,3", "4,4,4,4,4,4",
    ]
}

const KLEIN: &[&str] = &[
    "(1,1),(1,1),(1,1)",
    "(0,0),(0,0),(0,0),(0,0)",
    "(0,0),(0,1),(0,0),(0,1)",
    "(0,0),(1,0),(0,0),(1,0)",
    "(1,0),(0,1),(1,0),(0,1)",
    "(1,0),(1,0),(1,0),(1,0),(1,0),(1,0)",
    "(0,1),(0,1),(0,1),(0,1),(0,1),(0,1)",
];

const Z2XZ3: &[&str] = &[
    "(1,1),(1,1),(1,1)",
    "(1,-1),(1,-1),(1,-1)",
    "(0,0),(0,0),(0,0),(0,0)",
    "(0,0),(0,1),(0,0),(0,-1)",
    "(0,0),(1,0),(0,0),(1,0)",
    "(0,1),(0,-1),(0,1),(0,-1)",
    "(1,0),(0,-1),(1,0),(0,1)",
    "(1,0),(1,0),(1,0),(1,0),(1,0),(1,0)",
    "(0,1),(0,1),(0,1),(0,1),(0,1),(0,1)",
    "(0,-1),(0,-1),(0,-1),(0,-1),(0,-1),(0,-1)",
];

const F4: &[&str] = &[
    "1,1,1",
    "0,0,0,0",
    "0,X,0,X",
    "0,X+1,0,X+1",
    "X,X,X,X,X",
    "X+1,X+1,X+1,X+1,X+1",
    "X,X+1,X,X+1,X,X+1",
    "X,X,X+1,X+1,X,X,X+1,X+1",
    "X,X,X+1,X,X,X+1,X,X,X+1",
    "X+1,X+1,X,X+1,X+1,X,X+1,X+1,X",
];

const POWER_SET: &[&str] = &[
    "{a,b},{a,b},{a,b}",
    "{a},{b},{a},{b}",
    "{},{},{},{}",
    "{a},{},{a},{}",
    "{b},{},{b},{}",
    "{a},{a},{a},{a},{a},{a}",
    "{b},{b},{b},{b},{b},{b}",
];

fn c1_small_moduli() -> Check {
    let mut counts = Vec::new();
    for (name, list) in z_lists() {
        let expected = golden(&ring(name), &list);
        counts.push(format!("{name}={}", classify_matches(name, 8, &expected)?));
    }
    ensure(counts[2] == "Z/4=5", || format!("Z/4 should collapse to 5 classes: {}", counts[2]))?;
    Ok(counts.join(" "))
}

fn c2_products() -> Check {
    let a = classify_matches("Z/2xZ/2", 8, &golden(&ring("Z/2xZ/2"), KLEIN))?;
    let b = classify_matches("Z/2xZ/3", 8, &golden(&ring("Z/2xZ/3"), Z2XZ3))?;
    let rep = classify_irreducible(&ring("Z/2xZ/4"), 8, &opts()).map_err(|e| e.to_string())?;
    ensure(rep.is_complete(), || "Z/2xZ/4 incomplete".into())?;
    let sizes = rep.nonempty_sizes();
    ensure(sizes == [3, 4, 6], || format!("Z/2xZ/4 nonempty sizes {sizes:?}"))?;
    Ok(format!("Z/2xZ/2={a} Z/2xZ/3={b} Z/2xZ/4 sizes {sizes:?}"))
}

fn c3_f4() -> Check {
    let count = classify_matches("F4", 10, &golden(&ring("F4"), F4))?;
    let lmax = max_irreducible_size(&ring("F4"), 10, &opts()).map_err(|e| e.to_string())?;
    ensure(lmax.exhausted_to == 10, || format!("exhausted to {}", lmax.exhausted_to))?;
    ensure(lmax.observed_max() == Some(9), || format!("observed max {:?}", lmax.observed_max()))?;
    Ok(format!("{count} classes, max size 9"))
}

fn c4_restricted() -> Check {
    let z4 = ring("Z/4");
    for n in (2..=14).step_by(2) {
        let c = count_restricted(Alphabet::ZeroTwo, n).map_err(|e| e.to_string())?;
        ensure(c == 1 << (n - 2), || format!("{{0,2}} n={n}: {c}"))?;
    }
    for n in [6, 9, 12] {
        let c = count_restricted(Alphabet::PlusMinusOne, n).map_err(|e| e.to_string())?;
        ensure(c == 1 << (n - 2), || format!("{{1,-1}} n={n}: {c}"))?;
    }
    let mut words = 0;
    for alphabet in [Alphabet::ZeroTwo, Alphabet::PlusMinusOne] {
        let letters = alphabet.letters();
        for k in (0..=10).filter(|&k| alphabet.admits_size(k + 2)) {
            for code in 0u32..1 << k {
                let w: Vec<Element> = (0..k).map(|i| letters[(code >> i) as usize & 1].clone()).collect();
                let ext = extend_word(alphabet, &w).map_err(|e| e.to_string())?;
                let mut brute = 0;
                for x in &letters {
                    for y in &letters {
                        let mut full = vec![x.clone()];
                        full.extend(w.iter().cloned());
                        full.push(y.clone());
                        let t = Tuple::new(z4.clone(), full).map_err(|e| e.to_string())?;
                        if t.verify().map_err(|e| e.to_string())?.is_quiddity() {
                            brute += 1;
                        }
                    }
                }
                ensure(ext.len() == 1 && brute == 1, || format!("{alphabet} word {w:?}: {} / {brute}", ext.len()))?;
                words += 1;
            }
        }
    }
    Ok(format!("{words} words extend uniquely"))
}

fn minus_identity(r: &RingSpec) -> Mat2<Element> {
    let m1 = r.from_int(-1).unwrap();
    Mat2 { a: m1.clone(), b: r.zero(), c: r.zero(), d: m1 }
}

fn c5_minus_identity() -> Check {
    let mut triangulations = 0;
    for name in ["Z/5", "F4", "Z/2xZ/3", "Z[100]"] {
        let r = ring(name);
        let target = minus_identity(&r);
        for n in 4..=12 {
            let mut v = vec![1, n as i64 - 2, 1];
            v.resize(n, 2);
            let m = Tuple::from_ints(&r, &v).and_then(|t| t.m_matrix()).map_err(|e| e.to_string())?;
            ensure(m == target, || format!("{name} n={n}"))?;
        }
        for n in 3..=9 {
            for d in enumerate_triangulations(n).map_err(|e| e.to_string())? {
                let t = triangulation_quiddity(&d, &r).map_err(|e| e.to_string())?;
                ensure(t.m_matrix().map_err(|e| e.to_string())? == target, || format!("{name} triangulation {t}"))?;
                triangulations += 1;
            }
        }
    }
    Ok(format!("{triangulations} triangulation quiddities"))
}

fn c6_dissection_parities() -> Check {
    let mut total = 0;
    for n in 3..=9 {
        let rep = verify_dissection_parities(n).map_err(|e| e.to_string())?;
        ensure(rep.holds(), || format!("n={n}: {rep:?}"))?;
        total += rep.decompositions;
    }
    Ok(format!("{total} decompositions"))
}

fn c7_char0() -> Check {
    let r = ring("Z[50]xZ[50]");
    for n in 4..=10 {
        let t = char0_witness(&r, n).map_err(|e| e.to_string())?;
        ensure(t.verify().map_err(|e| e.to_string())?.is_quiddity(), || format!("n={n} does not verify"))?;
        let b = is_reducible_bounded(&t, 12).map_err(|e| e.to_string())?;
        ensure(b.outcome == BoundedOutcome::NoWitnessWithinBound, || format!("n={n}: {:?}", b.outcome))?;
    }
    Ok("bounded evidence: no reduction with entries in [-12,12] for n=4..10".into())
}

fn pins() -> Result<(), String> {
    let table = crt_value_table(2, 3).map_err(|e| e.to_string())?;
    let r2 = ring("Z/2");
    let r3 = ring("Z/3");
    for ((a, b), v) in [((0, 0), 0), ((0, 1), 4), ((0, -1), 2), ((1, 0), 3), ((1, 1), 1), ((1, -1), 5)] {
        let x = Element::Tuple(vec![r2.from_int(a).unwrap(), r3.from_int(b).unwrap()]);
        let hit = table.iter().find(|(d, _)| *d == x).ok_or("missing CRT entry")?;
        ensure(hit.1 == Element::Residue(v), || format!("CRT({a},{b}) = {:?}", hit.1))?;
    }
    Ok(())
}

fn c8_morphisms() -> Check {
    pins()?;
    let prod = classify_irreducible(&ring("Z/2xZ/3"), 8, &opts()).map_err(|e| e.to_string())?;
    let moved = transfer_classification(&"crt:2,3".parse().unwrap(), &prod).map_err(|e| e.to_string())?;
    let z6 = golden(&ring("Z/6"), &z6_list());
    ensure(nonempty(&moved.sizes) == z6, || format!("CRT image {}", show(&moved.sizes)))?;

    let f4 = classify_irreducible(&ring("F4"), 10, &opts()).map_err(|e| e.to_string())?;
    ensure(frobenius_closure_check(&f4).map_err(|e| e.to_string())?, || "F4 not Frobenius-stable".into())?;

    let klein = classify_irreducible(&ring("Z/2xZ/2"), 8, &opts()).map_err(|e| e.to_string())?;
    let pset = transfer_classification(&MorphismSpec::PowerSet(2), &klein).map_err(|e| e.to_string())?;
    let expected = golden(&ring("P(2)"), POWER_SET);
    ensure(nonempty(&pset.sizes) == expected, || format!("power-set image {}", show(&pset.sizes)))?;

    // F4 and Z/2xZ/2 share their additive group, but not their classes
    ensure(f4.ring != klein.ring, || "rings coincide".into())?;
    let f4_sizes = nonempty(&f4.sizes).keys().copied().collect::<Vec<_>>();
    let klein_sizes = nonempty(&klein.sizes).keys().copied().collect::<Vec<_>>();
    ensure(f4_sizes != klein_sizes, || "class size profiles agree".into())?;
    ensure(f4.sizes[&5].len() == 2 && klein.sizes[&5].is_empty(), || "size-5 control".into())?;
    Ok(format!("F4 sizes {f4_sizes:?} vs Z/2xZ/2 sizes {klein_sizes:?}"))
}

fn naive_quiddities(r: &RingSpec, n: usize) -> BTreeSet<Tuple> {
    let els = r.elements().unwrap();
    let mut out = BTreeSet::new();
    if n == 0 {
        return out;
    }
    let total = els.len().pow(n as u32);
    for mut code in 0..total {
        let mut xs = Vec::with_capacity(n);
        for _ in 0..n {
            xs.push(els[code % els.len()].clone());
            code /= els.len();
        }
        let t = Tuple::new(r.clone(), xs).unwrap();
        if t.verify().unwrap().is_quiddity() {
            out.insert(t);
        }
    }
    out
}

fn c9_oracles() -> Check {
    let mut checked = 0;
    for name in ["Z/2", "Z/3", "Z/4", "F4", "Z/2xZ/2", "P(2)"] {
        let r = ring(name);
        for n in 1..=6 {
            let fast: BTreeSet<Tuple> = enumerate_quiddities(&r, n, &opts()).map_err(|e| e.to_string())?.into_iter().collect();
            ensure(fast == naive_quiddities(&r, n), || format!("{name} n={n}: enumerators differ"))?;
        }
    }
    for name in ["Z/2", "Z/3", "Z/4", "Z/2xZ/2"] {
        let r = ring(name);
        let all: Vec<BTreeSet<Tuple>> = (0..=6).map(|n| naive_quiddities(&r, n)).collect();
        let mut irreducible: Classes = BTreeMap::new();
        for n in 3..=6 {
            let mut composed = BTreeSet::new();
            for m in 3..n {
                for c in &all[m] {
                    for b in &all[n + 2 - m] {
                        composed.insert(c.oplus(b).map_err(|e| e.to_string())?.canonical_form());
                    }
                }
            }
            let mut irr = BTreeSet::new();
            for t in &all[n] {
                let fast = is_reducible(t).map_err(|e| e.to_string())?;
                let slow = composed.contains(&t.canonical_form());
                ensure(fast.is_reducible() == slow, || format!("{name}: {t} fast {fast:?} oracle {slow}"))?;
                if let Reducibility::Reducible(w) = &fast {
                    w.check(t).map_err(|e| format!("{name}: witness for {t}: {e}"))?;
                }
                if !slow {
                    irr.insert(t.canonical_form());
                }
                checked += 1;
            }
            irreducible.insert(n, irr.into_iter().collect());
        }
        let zero = Tuple::from_ints(&r, &[0, 0]).unwrap();
        ensure(is_reducible(&zero).unwrap() == Reducibility::Conventional, || "(0,0)".into())?;
        for (&n, expected) in &irreducible {
            let pruned = irreducible_classes(&r, n, &opts()).map_err(|e| e.to_string())?;
            ensure(&pruned == expected, || format!("{name} n={n}: pruned search {pruned:?}"))?;
        }
    }
    Ok(format!("{checked} quiddities cross-checked"))
}

fn c10_maximal_size() -> Check {
    let r = ring("Z/2xZ/5");
    let o = SearchOptions { budget: Budget::UNLIMITED, ..opts() };
    let rep = max_irreducible_size(&r, 13, &o).map_err(|e| e.to_string())?;
    ensure(rep.exhausted_to == 13, || format!("exhausted to {}", rep.exhausted_to))?;
    ensure(rep.observed_max() == Some(12), || format!("observed max {:?}", rep.observed_max()))?;
    Ok(format!("max size 12 ({} classes), sizes <= 13 exhausted", rep.counts[&12]))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("1 classification over Z/2..Z/6, sizes <= 8", c1_small_moduli),
        ("2 classification over Z/2xZ/2, Z/2xZ/3, Z/2xZ/4", c2_products),
        ("3 classification over F4, sizes <= 10", c3_f4),
        ("4 restricted Z/4 alphabets", c4_restricted),
        ("5 -Id for fans and triangulations", c5_minus_identity),
        ("6 (3|4) decompositions vs mod-2 solutions, n <= 9", c6_dissection_parities),
        ("7 characteristic-zero witnesses", c7_char0),
        ("8 morphism transfers", c8_morphisms),
        ("9 oracle equivalences", c9_oracles),
        ("10 maximal irreducible size over Z/2xZ/5", c10_maximal_size),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
