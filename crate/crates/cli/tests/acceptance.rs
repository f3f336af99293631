//! Acceptance gate: each test reproduces one reference quantity or identity
//! end to end and prints a single PASS line on success.

use std::process::Command;

use autorbit::exhaustive;
use autorbit_core::{
    admissible_auts, count_minimal, degree_monotone_count, degree_one_chain_set, depends_on,
    enumerate_w1, enumerate_w2, family_word, is_minimal, level_set, minimize, predicted_count,
    verify_lower_bound, ChainConvention, CutAut, CyclicWord, FamilyKind, FamilySpec, Letter,
    PermAut, Predicted, SearchLimits, W2Options,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const BLOCKS4_U: &str = "x1^2 x2^3 x3^4 x4^5";
const BLOCKS4_V: &str = "x1 x2^3 x1 x3^4 x4^5";
const MIXED4_U: &str = "x1^2 x2^3 x3^2 x4 x3^-1 x4 x3 x4^3";
const MIXED4_V: &str = "x1^2 x3^2 x2^3 x4 x3^-1 x4 x3 x4^3";

fn limits() -> SearchLimits {
    SearchLimits::default()
}

#[test]
fn sharp_rank2_family_counts_are_exact() {
    for ell in 3..=30 {
        let spec = FamilySpec::new(FamilyKind::F2Max, 2, ell).unwrap();
        let p = predicted_count(&spec).unwrap();
        let len = p.word.len() as u64;
        assert_eq!(len as usize, ell + 6);
        assert_eq!(p.value, Predicted::Exact(8 * (len - 5)));
        let n = count_minimal(&p.word, limits()).unwrap();
        assert_eq!(n as u64, 8 * (len - 5), "ell={ell}");
    }
    eprintln!("PASS: sharp rank-2 family has exactly 8(|u|-5) minimal words for ell=3..=30");
}

#[test]
fn square_family_counts_and_chain_orbits_are_exact() {
    for ell in 3..=30 {
        let spec = FamilySpec::new(FamilyKind::F2Square, 2, ell).unwrap();
        let p = predicted_count(&spec).unwrap();
        let len = p.word.len() as u64;
        let n = count_minimal(&p.word, limits()).unwrap();
        assert_eq!(n as u64, 4 * (len - 1), "ell={ell}");
        let lambda = degree_one_chain_set(&p.word).unwrap();
        assert_eq!(lambda.len() as u64, len - 1, "ell={ell}");
    }
    for l1 in 1..=5usize {
        for l2 in 1..=5usize {
            if l1 == l2 {
                continue;
            }
            let word =
                CyclicWord::parse(&format!("x1 x2^{l1} x1^-1 x2^{l2}"), 2).unwrap();
            let lambda = degree_one_chain_set(&word).unwrap();
            assert_eq!(lambda.len(), 1, "l1={l1} l2={l2}");
        }
    }
    eprintln!(
        "PASS: square family has 4(|u|-1) minimal words and chain orbit |u|-1; \
         mixed conjugate words have chain orbit 1"
    );
}

#[test]
fn rank3_cubic_family_counts_are_exact() {
    for (ell, frozen) in [(3usize, 17280usize), (4, 26400), (5, 38016)] {
        let spec = FamilySpec::new(FamilyKind::F3Cubic, 3, ell).unwrap();
        let p = predicted_count(&spec).unwrap();
        assert_eq!(p.word.len(), ell + 8);
        assert_eq!(p.value, Predicted::Exact(frozen as u64));
        let n = count_minimal(&p.word, limits()).unwrap();
        assert_eq!(n, frozen, "ell={ell}");
    }
    eprintln!(
        "PASS: rank-3 family counts equal 48|u|^3 - 480|u|^2 + 1104|u| - 672 for ell=3,4,5"
    );
}

#[test]
fn exhaustive_rank2_scan_stays_under_global_bound() {
    for len in 9..=12 {
        let scan = exhaustive::bound_scan(len, limits()).unwrap();
        assert!(scan.checked > 0, "len={len}: no qualifying words");
        assert!(
            scan.max_count <= 8 * len - 40,
            "len={len}: {} exceeds {}",
            scan.max_count,
            8 * len - 40
        );
    }
    eprintln!(
        "PASS: every qualifying rank-2 word of length 9..=12 has at most 8|u|-40 minimal words"
    );
}

#[test]
fn rational_lower_bound_holds_at_sample_points() {
    for (rank, ell) in [(2usize, 5usize), (2, 9), (3, 3), (3, 6)] {
        let check = verify_lower_bound(rank, ell, limits()).unwrap();
        assert!(check.holds, "rank={rank} ell={ell}");
        assert!(
            (check.count as u128) * check.bound_denominator >= check.bound_numerator,
            "rank={rank} ell={ell}: {} < {}/{}",
            check.count,
            check.bound_numerator,
            check.bound_denominator
        );
    }
    eprintln!(
        "PASS: minimal-word count meets the (l/(2n-3))^(2n-3) lower bound at all sample points"
    );
}

fn analyze_json(word: &str) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_autorbit"))
        .args(["analyze", word, "--format", "json"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "analyze {word}");
    serde_json::from_slice(&out.stdout).expect("analyze emits JSON")
}

#[test]
fn analyze_command_reproduces_structure_fixtures() {
    let u = analyze_json(BLOCKS4_U);
    assert_eq!(u["minimized"], false);
    assert_eq!(u["components"].as_array().unwrap().len(), 4);
    assert_eq!(u["profile"]["total"], 4);

    let v = analyze_json(BLOCKS4_V);
    assert_eq!(v["minimized"], false);
    assert_eq!(v["profile"]["per_generator"]["x1"], 2);
    assert_eq!(v["profile"]["total"], 5);

    let u = analyze_json(MIXED4_U);
    assert_eq!(u["minimized"], false);
    let components = u["components"].as_array().unwrap();
    assert_eq!(components.len(), 3);
    let joined = components.iter().any(|c| {
        let c = c.as_array().unwrap();
        c.iter().any(|l| l == "x3") && c.iter().any(|l| l == "x4")
    });
    assert!(joined, "x3 and x4 should share a component");
    assert_eq!(u["profile"]["total"], 4);

    let v = analyze_json(MIXED4_V);
    assert_eq!(v["minimized"], false);
    assert_eq!(v["profile"]["per_generator"]["x3"], 2);
    assert_eq!(v["profile"]["per_generator"]["x4"], 2);
    assert_eq!(v["profile"]["total"], 6);

    eprintln!("PASS: analyze command reproduces all four structure fixtures");
}

#[test]
fn degree_zero_chain_count_is_one_for_square_words() {
    for ell in 3..=10 {
        let word = CyclicWord::parse(&format!("x1^2 x2^{ell}"), 2).unwrap();
        let m0 =
            degree_monotone_count(&word, 0, ChainConvention::RequireStep, limits()).unwrap();
        assert_eq!(m0, 1, "ell={ell}");
    }
    eprintln!("PASS: degree-0 chain set is a single word for x1^2 x2^ell, ell=3..=10");
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> CyclicWord {
    loop {
        let len = rng.random_range(2..=max_len);
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                let g = rng.random_range(1..=rank);
                if rng.random_bool(0.5) {
                    Letter::positive(g)
                } else {
                    Letter::positive(g).inverse()
                }
            })
            .collect();
        let word = CyclicWord::new(rank, letters).unwrap();
        if word.len() >= 2 {
            return word;
        }
    }
}

#[test]
fn randomized_identity_and_closure_suites_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0A07B17);
    let perms: Vec<Vec<PermAut>> = (0..=4)
        .map(|r| if r >= 2 { enumerate_w1(r) } else { Vec::new() })
        .collect();
    let cuts: Vec<Vec<CutAut>> = (0..=4)
        .map(|r| {
            if r >= 2 {
                enumerate_w2(r, W2Options::all())
            } else {
                Vec::new()
            }
        })
        .collect();

    // Complement identity: a cut and its complement act identically.
    let mut cases = 0usize;
    for _ in 0..1000 {
        let rank = rng.random_range(2..=4);
        let w = random_word(&mut rng, rank, 20);
        let cut = cuts[rank].choose(&mut rng).unwrap();
        assert_eq!(
            cut.apply(&w).unwrap(),
            cut.complement().apply(&w).unwrap(),
            "complement identity on {w}"
        );
        cases += 1;
    }
    assert!(cases >= 1000);

    // Inverse identity, for both kinds of automorphism.
    cases = 0;
    for _ in 0..1000 {
        let rank = rng.random_range(2..=4);
        let w = random_word(&mut rng, rank, 20);
        let cut = cuts[rank].choose(&mut rng).unwrap();
        assert_eq!(
            cut.inverse().apply(&cut.apply(&w).unwrap()).unwrap(),
            w,
            "cut inverse identity on {w}"
        );
        let perm = perms[rank].choose(&mut rng).unwrap();
        assert_eq!(
            perm.inverse().apply(&perm.apply(&w).unwrap()).unwrap(),
            w,
            "permutation inverse identity on {w}"
        );
        cases += 2;
    }
    assert!(cases >= 1000);

    // Signed permutations preserve length.
    cases = 0;
    for _ in 0..1000 {
        let rank = rng.random_range(2..=4);
        let w = random_word(&mut rng, rank, 20);
        let perm = perms[rank].choose(&mut rng).unwrap();
        assert_eq!(perm.apply(&w).unwrap().len(), w.len());
        cases += 1;
    }
    assert!(cases >= 1000);

    // Minimization is a fixed point on its own output.
    cases = 0;
    for _ in 0..1000 {
        let rank = rng.random_range(2..=4);
        let w = random_word(&mut rng, rank, 20);
        let (m, _) = minimize(&w);
        let (m2, chain) = minimize(&m);
        assert_eq!(m2, m);
        assert!(chain.is_empty());
        assert!(is_minimal(&m));
        cases += 1;
    }
    assert!(cases >= 1000);

    // Minimal length is invariant under random 6-step automorphism chains.
    cases = 0;
    for _ in 0..1000 {
        let rank = rng.random_range(2..=4);
        let w = random_word(&mut rng, rank, 14);
        let base = minimize(&w).0.len();
        let mut current = w.clone();
        for _ in 0..6 {
            // Cap intermediate growth so the walk stays cheap; a cut can
            // triple the length in the worst case.
            let mut stepped = false;
            for _ in 0..60 {
                if rng.random_bool(0.5) {
                    let perm = perms[rank].choose(&mut rng).unwrap();
                    current = perm.apply(&current).unwrap();
                    stepped = true;
                    break;
                }
                let cut = cuts[rank].choose(&mut rng).unwrap();
                if cut.image_length(&current) <= 600 {
                    current = cut.apply(&current).unwrap();
                    stepped = true;
                    break;
                }
            }
            if !stepped {
                break;
            }
        }
        assert_eq!(
            minimize(&current).0.len(),
            base,
            "minimal length changed along a chain from {w}"
        );
        cases += 1;
    }
    assert!(cases >= 1000);

    // Level sets are closed under length-preserving images.
    cases = 0;
    let cubic = FamilySpec::new(FamilyKind::F3Cubic, 3, 3).unwrap();
    let big = level_set(&family_word(&cubic), limits()).unwrap();
    let members: Vec<&CyclicWord> = big.members().iter().collect();
    for _ in 0..100 {
        let m = *members.choose(&mut rng).unwrap();
        for perm in &perms[3] {
            let image = perm.apply(m).unwrap();
            assert!(big.contains(&image), "missing permuted {image}");
            cases += 1;
        }
        for cut in &cuts[3] {
            if cut.image_length(m) == m.len() {
                let image = cut.apply(m).unwrap();
                assert!(big.contains(&image), "missing cut image {image}");
                cases += 1;
            }
        }
    }
    let square = FamilySpec::new(FamilyKind::F2Square, 2, 9).unwrap();
    let small = level_set(&family_word(&square), limits()).unwrap();
    for m in small.members() {
        for cut in &cuts[2] {
            if cut.image_length(m) == m.len() {
                assert!(small.contains(&cut.apply(m).unwrap()));
                cases += 1;
            }
        }
    }
    assert!(cases >= 1000);

    // Dependence is symmetric and sign-insensitive, on the fixture words and
    // on random minimal rank-3 words.
    cases = 0;
    let mut words: Vec<CyclicWord> = [BLOCKS4_U, BLOCKS4_V, MIXED4_U, MIXED4_V]
        .iter()
        .map(|t| CyclicWord::parse(t, 4).unwrap())
        .collect();
    for _ in 0..50 {
        let w = random_word(&mut rng, 3, 12);
        words.push(minimize(&w).0);
    }
    for w in &words {
        let set = level_set(w, limits()).unwrap();
        let admissible = admissible_auts(&set);
        for i in 1..=w.rank() {
            for j in i + 1..=w.rank() {
                let xi = Letter::positive(i);
                let xj = Letter::positive(j);
                let mut values = Vec::new();
                for x in [xi, xi.inverse()] {
                    for y in [xj, xj.inverse()] {
                        values.push(depends_on(x, y, &admissible).unwrap());
                        values.push(depends_on(y, x, &admissible).unwrap());
                        cases += 2;
                    }
                }
                assert!(
                    values.iter().all(|&v| v == values[0]),
                    "dependence not symmetric for x{i}, x{j} on {w}"
                );
            }
        }
    }
    assert!(cases >= 1000);

    eprintln!("PASS: all randomized identity, closure, and dependence suites hold");
}
