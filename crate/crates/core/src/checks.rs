//! Named property suites, run by `stiefel check`.
//!
//! Every suite compares the library against something computed another way:
//! Pascal's triangle for binomials, an exhaustive rewriter that tries every
//! rewrite order, subset enumeration for bases and kernels, polynomial
//! expansion for the projective squares. Randomized suites are driven by a
//! single seed and are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::class::Presentation;
use crate::coeff::{binom_mod, Bidegree, CoeffRing, FieldProfile, MCoefficient, MotivicBase};
use crate::error::Result;
use crate::json::{element_from_json, element_to_json};
use crate::maps::{comparison_map, immersion_pullback, projection_pullback, symmetry_pullback, Symmetry};
use crate::steenrod::{apply_operation, OperationSpec};
use crate::stiefel::{random_element, random_homogeneous, Element, Monomial, StiefelPresentation};
use crate::target::{is_reduced, sq_projective, total_square_oracle, PGmElement, PGmPresentation};

pub const SUITES: &[&str] = &[
    "binomial",
    "coefficients",
    "presentation",
    "rank",
    "commutativity",
    "associativity",
    "distributivity",
    "confluence",
    "operations",
    "cartan-oracle",
    "target-ring",
    "comparison",
    "naturality",
    "kernel",
    "maps",
    "json-roundtrip",
];

const RANDOM_CASES: usize = 1000;

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<16} {} cases, {} failures", self.name, self.cases, self.failures.len())?;
        if let Some(first) = self.failures.first() {
            write!(f, " (first: {first})")?;
        }
        Ok(())
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => self.check(false, || format!("{}: {e}", what())),
        }
    }

    fn finish(self, name: &'static str) -> SuiteReport {
        SuiteReport { name, cases: self.cases, failures: self.failures }
    }
}

/// Runs one named suite, or `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let name = *SUITES.iter().find(|&&s| s == name)?;
    let tally = match name {
        "binomial" => binomial(),
        "coefficients" => coefficients(seed),
        "presentation" => presentation(),
        "rank" => rank(),
        "commutativity" => commutativity(seed),
        "associativity" => associativity(seed),
        "distributivity" => distributivity(seed),
        "confluence" => confluence(),
        "operations" => operations(seed),
        "cartan-oracle" => cartan_oracle(),
        "target-ring" => target_ring(seed),
        "comparison" => comparison(),
        "naturality" => naturality(),
        "kernel" => kernel(),
        "maps" => maps(),
        "json-roundtrip" => json_roundtrip(seed),
        _ => unreachable!("listed in SUITES"),
    };
    Some(tally.finish(name))
}

/// Runs every suite on its own thread; reports come back in [`SUITES`] order.
pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            SUITES.iter().map(|&name| scope.spawn(move || run_suite(name, seed).expect("known suite"))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

fn z_base() -> MotivicBase {
    MotivicBase::new(CoeffRing::Integers, FieldProfile::default())
}

fn f2_base() -> MotivicBase {
    MotivicBase::new(CoeffRing::IntegersMod(2), FieldProfile::default())
}

fn pres(n: u32, m: u32, base: MotivicBase) -> StiefelPresentation {
    StiefelPresentation::new(n, m, base.coeff, base.profile).expect("valid bounds")
}

fn random_pres(rng: &mut ChaCha8Rng, max_n: u32, base: MotivicBase) -> StiefelPresentation {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(0..=n);
    pres(n, m, base)
}

fn pascal_mod(max: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max + 1);
    for a in 0..=max {
        let mut row = vec![0u64; max + 1];
        row[0] = 1 % p;
        for b in 1..=a {
            row[b] = (rows[a - 1][b - 1] + rows[a - 1][b]) % p;
        }
        rows.push(row);
    }
    rows
}

fn binomial() -> Tally {
    let mut t = Tally::new();
    for p in [2u64, 3, 5, 7] {
        let table = pascal_mod(200, p);
        for (a, row) in table.iter().enumerate() {
            for (b, &expected) in row.iter().enumerate() {
                t.check_result(binom_mod(a as u64, b as u64, p).map(|v| v == expected), || {
                    format!("C({a},{b}) mod {p}")
                });
            }
        }
    }
    t
}

fn random_mcoefficient(rng: &mut ChaCha8Rng, base: MotivicBase) -> MCoefficient {
    let terms: Vec<(u32, i64)> = (0..3).map(|k| (k, rng.random_range(-5..=5))).collect();
    MCoefficient::from_terms(base, terms)
}

fn coefficients(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..RANDOM_CASES {
        let base =
            if case % 2 == 0 { z_base() } else { MotivicBase::new(CoeffRing::IntegersMod(6), FieldProfile::default()) };
        let (x, y, z) = (
            random_mcoefficient(&mut rng, base),
            random_mcoefficient(&mut rng, base),
            random_mcoefficient(&mut rng, base),
        );
        let laws = (|| -> Result<bool> {
            let assoc = x.mul(&y)?.mul(&z)? == x.mul(&y.mul(&z)?)?;
            let comm = x.mul(&y)? == y.mul(&x)?;
            let dist = x.mul(&y.add(&z)?)? == x.mul(&y)?.add(&x.mul(&z)?)?;
            let double = x.add(&x)?;
            let doubled =
                double.terms().all(|(k, _)| k == 0) && double.coefficient(0) == base.coeff.reduce(2 * x.coefficient(0));
            Ok(assoc && comm && dist && doubled)
        })();
        t.check_result(laws, || format!("case {case}: {x:?} {y:?} {z:?}"));
    }
    t
}

fn presentation() -> Tally {
    let mut t = Tally::new();
    let bases = [
        z_base(),
        f2_base(),
        MotivicBase::new(CoeffRing::Integers, FieldProfile::new(true, None)),
        MotivicBase::new(CoeffRing::IntegersMod(2), FieldProfile::new(true, None)),
    ];
    for base in bases {
        for n in 1..=8 {
            for m in 0..=n {
                let p = pres(n, m, base);
                if m == 0 {
                    continue;
                }
                for i in p.generators() {
                    let ok = (|| -> Result<bool> {
                        let r = p.generator(i)?;
                        let sq = r.mul(&r)?;
                        let expected = match (2 * i - 1 <= n, base.profile.minus_one_is_square) {
                            (true, false) => p.generator(2 * i - 1)?.scale(&MCoefficient::minus_one_power(base, 1))?,
                            _ => Element::zero(p),
                        };
                        let torsion = base.coeff != CoeffRing::Integers || sq.scale_int(2)?.is_zero();
                        Ok(sq == expected && torsion)
                    })();
                    t.check_result(ok, || format!("rho_{i}^2 in W({n},{m}) over {base:?}"));
                }
            }
        }
    }
    t
}

fn rank() -> Tally {
    let mut t = Tally::new();
    for n in 1..=12 {
        let p = pres(n, n, z_base());
        let count = p.monomials().len();
        t.check(count == 1 << n && p.poincare_polynomial().total() == 1 << n, || format!("rank of GL({n})"));
    }
    for n in 1..=8 {
        for m in 0..=n {
            let p = pres(n, m, z_base());
            let mut histogram: BTreeMap<Bidegree, u64> = BTreeMap::new();
            for mono in p.monomials() {
                *histogram.entry(mono.bidegree()).or_default() += 1;
            }
            // Expand prod (1 + T^{(2i-1,i)}) by brute force over subsets of the index range.
            let lo = n - m + 1;
            let mut expansion: BTreeMap<Bidegree, u64> = BTreeMap::new();
            for mask in 0u32..1 << m {
                let bd = (0..m).filter(|b| mask >> b & 1 == 1).fold(Bidegree::ZERO, |acc, b| {
                    let i = (lo + b) as i64;
                    acc + Bidegree::new(2 * i - 1, i)
                });
                *expansion.entry(bd).or_default() += 1;
            }
            let poly = p.poincare_polynomial();
            t.check(poly.0 == histogram && poly.0 == expansion, || format!("Poincaré polynomial of W({n},{m})"));
        }
    }
    t
}

fn degree_sign(x: &Element, y: &Element) -> i64 {
    let (Some(a), Some(b)) = (x.homogeneous_bidegree(), y.homogeneous_bidegree()) else { return 1 };
    if (a.p * b.p) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn commutativity(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..RANDOM_CASES {
        let p = random_pres(&mut rng, 6, z_base());
        let x = random_homogeneous(&p, rng.random());
        let y = random_homogeneous(&p, rng.random());
        let ok = (|| -> Result<bool> { Ok(x.mul(&y)? == y.mul(&x)?.scale_int(degree_sign(&x, &y))?) })();
        t.check_result(ok, || format!("case {case}: {x:?} * {y:?}"));
    }
    t
}

fn associativity(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    for case in 0..RANDOM_CASES {
        let base = if case % 2 == 0 { z_base() } else { f2_base() };
        let p = random_pres(&mut rng, 6, base);
        let (x, y, z) = (
            random_element(&p, None, rng.random()),
            random_element(&p, None, rng.random()),
            random_element(&p, None, rng.random()),
        );
        let ok = (|| -> Result<bool> { Ok(x.mul(&y)?.mul(&z)? == x.mul(&y.mul(&z)?)?) })();
        t.check_result(ok, || format!("case {case} in {}", p.describe()));
    }
    t
}

fn distributivity(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    for case in 0..RANDOM_CASES {
        let p = random_pres(&mut rng, 6, z_base());
        let (x, y, z) = (
            random_element(&p, None, rng.random()),
            random_element(&p, None, rng.random()),
            random_element(&p, None, rng.random()),
        );
        let ok = (|| -> Result<bool> {
            let left = x.mul(&y.add(&z)?)? == x.mul(&y)?.add(&x.mul(&z)?)?;
            let right = y.add(&z)?.mul(&x)? == y.mul(&x)?.add(&z.mul(&x)?)?;
            Ok(left && right)
        })();
        t.check_result(ok, || format!("case {case} in {}", p.describe()));
    }
    t
}

/// Every normal form reachable from `word` by any sequence of elementary rewrites.
///
/// Moves: swap an adjacent inverted pair (sign flips), or replace an adjacent
/// pair `rho_i rho_i` by `{-1} rho_{2i-1}` (or `0`), moving `{-1}` to the
/// front past the generators before it.
pub fn all_rewrite_outcomes(pres: &StiefelPresentation, word: &[u32]) -> BTreeSet<Option<(bool, u32, Vec<u32>)>> {
    fn explore(n: u32, word: Vec<u32>, negative: bool, k: u32, out: &mut BTreeSet<Option<(bool, u32, Vec<u32>)>>) {
        if word.windows(2).all(|w| w[0] < w[1]) {
            out.insert(Some((negative, k, word)));
            return;
        }
        for pos in 0..word.len() - 1 {
            let (a, b) = (word[pos], word[pos + 1]);
            if a > b {
                let mut next = word.clone();
                next.swap(pos, pos + 1);
                explore(n, next, !negative, k, out);
            } else if a == b {
                if 2 * a - 1 > n {
                    out.insert(None);
                    continue;
                }
                let mut next = word.clone();
                next.splice(pos..pos + 2, [2 * a - 1]);
                explore(n, next, negative ^ (pos % 2 == 1), k + 1, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    explore(pres.n(), word.to_vec(), false, 0, &mut out);
    out
}

fn outcome_class(pres: &StiefelPresentation, outcome: &Option<(bool, u32, Vec<u32>)>) -> Result<Element> {
    match outcome {
        None => Ok(Element::zero(*pres)),
        Some((negative, k, word)) => {
            let c = MCoefficient::from_terms(pres.base(), [(*k, if *negative { -1 } else { 1 })]);
            Element::from_terms(*pres, [(Monomial::new(word.clone())?, c)])
        }
    }
}

fn words(gens: &[u32], max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in gens {
                let mut v: Vec<u32> = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn confluence() -> Tally {
    let mut t = Tally::new();
    for base in [z_base(), f2_base()] {
        for n in 1..=6 {
            for m in 1..=n {
                let p = pres(n, m, base);
                let gens: Vec<u32> = p.generators().collect();
                for word in words(&gens, 4) {
                    let ok = (|| -> Result<bool> {
                        let classes = all_rewrite_outcomes(&p, &word)
                            .iter()
                            .map(|o| outcome_class(&p, o))
                            .collect::<Result<Vec<_>>>()?;
                        let normal = p.word(&word)?;
                        Ok(classes.iter().all(|c| c == &normal))
                    })();
                    t.check_result(ok, || format!("word {word:?} in W({n},{m})"));
                }
            }
        }
    }
    t
}

fn operations(seed: u64) -> Tally {
    let mut t = Tally::new();
    for n in 1..=10u32 {
        for p in [2u64, 3, 5] {
            let base = MotivicBase::new(CoeffRing::IntegersMod(p), FieldProfile::default());
            let gl = pres(n, n, base);
            for j in 1..=n {
                for i in 0..=10u32 {
                    let op =
                        if p == 2 { OperationSpec::sq(2 * i) } else { OperationSpec::power(i, p).expect("odd prime") };
                    let target = if p == 2 { (j + i) as u64 } else { i as u64 * p + j as u64 - i as u64 };
                    let ok = (|| -> Result<bool> {
                        let got = apply_operation(&op, &gl.generator(j)?)?;
                        let table = pascal_mod(10, p);
                        let c = if (i as usize) <= (j - 1) as usize { table[(j - 1) as usize][i as usize] } else { 0 };
                        let expected = if target <= n as u64 {
                            gl.generator(target as u32)?.scale_int(c as i64)?
                        } else {
                            Element::zero(gl)
                        };
                        Ok(got == expected)
                    })();
                    t.check_result(ok, || format!("{op}(rho_{j}) in GL({n})"));
                }
            }
        }
    }
    // Additivity and bidegree bookkeeping on random classes.
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    for case in 0..RANDOM_CASES {
        let p = [2u64, 3][case % 2];
        let base = MotivicBase::new(CoeffRing::IntegersMod(p), FieldProfile::default());
        let gl = random_pres(&mut rng, 6, base);
        let i = rng.random_range(0..=3);
        let op = if p == 2 {
            OperationSpec::sq(rng.random_range(0..=6))
        } else {
            OperationSpec::power(i, p).expect("odd prime")
        };
        let x = random_element(&gl, None, rng.random());
        let y = random_homogeneous(&gl, rng.random());
        let ok = (|| -> Result<bool> {
            let additive =
                apply_operation(&op, &x.add(&y)?)? == apply_operation(&op, &x)?.add(&apply_operation(&op, &y)?)?;
            let image = apply_operation(&op, &y)?;
            let shifted = match y.homogeneous_bidegree() {
                Some(bd) => image.bidegrees().iter().all(|&b| b == bd + op.bidegree_shift()),
                None => image.is_zero(),
            };
            Ok(additive && shifted)
        })();
        t.check_result(ok, || format!("case {case}: {op} in {}", gl.describe()));
    }
    t
}

fn cartan_oracle() -> Tally {
    let mut t = Tally::new();
    for n in 1..=25 {
        let p = PGmPresentation::new(n, CoeffRing::IntegersMod(2), FieldProfile::default()).expect("n >= 1");
        for j in 0..=12 {
            let total = total_square_oracle(j, &p);
            for i in 0..=12 {
                let ok = (|| -> Result<bool> {
                    let sq = sq_projective(i, j, &p)?;
                    let key = p.eta_power(j + i);
                    let from_oracle = match key.terms().next() {
                        Some((k, _)) => PGmElement::from_terms(p, [(*k, total.clone()?.coefficient(k))])?,
                        None => PGmElement::zero(p),
                    };
                    Ok(sq == from_oracle)
                })();
                t.check_result(ok, || format!("Sq^{}(eta^{j}) in P^{}", 2 * i, n - 1));
            }
        }
    }
    t
}

fn target_ring(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    let random_pgm = |rng: &mut ChaCha8Rng, p: &PGmPresentation| -> PGmElement {
        let terms: Vec<_> = (0..rng.random_range(0..=3))
            .map(|_| {
                let key = crate::target::PGmMonomial { sigma: rng.random_bool(0.5), eta: rng.random_range(0..p.n()) };
                (key, random_mcoefficient(rng, p.base()))
            })
            .collect();
        PGmElement::from_terms(*p, terms).expect("valid keys")
    };
    for case in 0..RANDOM_CASES {
        let n = rng.random_range(1..=6);
        let p = PGmPresentation::new(n, CoeffRing::Integers, FieldProfile::default()).expect("n >= 1");
        let (x, y, z) = (random_pgm(&mut rng, &p), random_pgm(&mut rng, &p), random_pgm(&mut rng, &p));
        let ok = (|| -> Result<bool> {
            let assoc = x.mul(&y)?.mul(&z)? == x.mul(&y.mul(&z)?)?;
            let mut comm = true;
            for (bx, px) in x.homogeneous_parts() {
                for (by, py) in y.homogeneous_parts() {
                    let sign = if (bx.p * by.p) % 2 == 0 { 1 } else { -1 };
                    comm &= px.mul(&py)? == py.mul(&px)?.scale_int(sign)?;
                }
            }
            let reduced: PGmElement =
                PGmElement::from_terms(p, z.terms().filter(|(k, _)| k.sigma).map(|(k, c)| (*k, c.clone())))?;
            let ideal = is_reduced(&x.mul(&reduced)?) && is_reduced(&reduced.mul(&x)?);
            Ok(assoc && comm && ideal)
        })();
        t.check_result(ok, || format!("case {case} in {}", p.describe()));
    }
    t
}

fn comparison() -> Tally {
    let mut t = Tally::new();
    for base in [z_base(), f2_base()] {
        for n in 1..=10 {
            let ok = (|| -> Result<Vec<(u32, bool)>> {
                let f = comparison_map(n, base)?;
                let src = f.source();
                let tgt = f.target();
                let mut out = Vec::new();
                for j in 1..=n {
                    let rho = src.generator(j)?;
                    let image_ok = f.apply(&rho)? == tgt.term(true, j - 1);
                    let bd = StiefelPresentation::generator_bidegree(j);
                    let src_free: Vec<_> =
                        src.basis_in_bidegree(bd).into_iter().filter(|l| l.minus_one_power == 0).collect();
                    let tgt_free: Vec<_> =
                        tgt.basis_in_bidegree(bd).into_iter().filter(|l| l.minus_one_power == 0).collect();
                    let rank_one = src_free.len() == 1
                        && src_free[0].key.indices() == [j]
                        && tgt_free.len() == 1
                        && tgt_free[0].key == crate::target::PGmMonomial { sigma: true, eta: j - 1 };
                    let well_defined = if 2 * j - 1 <= n {
                        f.apply(&rho.mul(&rho)?)? == f.apply(&rho)?.mul(&f.apply(&rho)?)?
                    } else {
                        true
                    };
                    out.push((j, image_ok && rank_one && well_defined));
                }
                Ok(out)
            })();
            match ok {
                Ok(results) => {
                    for (j, good) in results {
                        t.check(good, || format!("f_{n}^*(rho_{j})"));
                    }
                }
                Err(e) => t.check(false, || format!("comparison map for n = {n}: {e}")),
            }
        }
    }
    t
}

fn naturality() -> Tally {
    let mut t = Tally::new();
    for n in 1..=8 {
        for (prime, max_i) in [(2u64, 8u32), (3, 4)] {
            let base = MotivicBase::new(CoeffRing::IntegersMod(prime), FieldProfile::default());
            let f = match comparison_map(n, base) {
                Ok(f) => f,
                Err(e) => {
                    t.check(false, || format!("comparison map n = {n}: {e}"));
                    continue;
                }
            };
            for j in 1..=n {
                for i in 0..=max_i {
                    let op = if prime == 2 {
                        OperationSpec::sq(2 * i)
                    } else {
                        OperationSpec::power(i, prime).expect("odd")
                    };
                    let ok = (|| -> Result<bool> {
                        let rho = f.source().generator(j)?;
                        let left = f.apply(&apply_operation(&op, &rho)?)?;
                        let right = apply_operation(&op, &f.apply(&rho)?)?;
                        Ok(left == right)
                    })();
                    t.check_result(ok, || format!("{op} and f_{n}^* on rho_{j}"));
                }
            }
        }
    }
    t
}

fn kernel() -> Tally {
    let mut t = Tally::new();
    for base in [z_base(), f2_base()] {
        for n in 2..=8 {
            let f = match immersion_pullback(n, n, base) {
                Ok(f) => f,
                Err(e) => {
                    t.check(false, || format!("imm({n},{n}): {e}"));
                    continue;
                }
            };
            let src = f.source();
            for p in 0..=20i64 {
                for q in 0..=p {
                    let bd = Bidegree::new(p, q);
                    let ok = (|| -> Result<bool> {
                        let kernel = f.kernel_basis(bd)?;
                        let ideal: Vec<Element> = src
                            .basis_in_bidegree(bd)
                            .into_iter()
                            .filter(|l| l.key.contains(n))
                            .map(|l| {
                                Element::from_terms(
                                    src,
                                    [(l.key, MCoefficient::minus_one_power(src.base(), l.minus_one_power))],
                                )
                            })
                            .collect::<Result<_>>()?;
                        Ok(kernel.len() == ideal.len() && ideal.iter().all(|x| kernel.contains(x)))
                    })();
                    t.check_result(ok, || format!("ker imm({n},{n}) in {bd}"));
                }
            }
        }
    }
    t
}

fn maps() -> Tally {
    let mut t = Tally::new();
    let base = z_base();
    for n in 1..=8 {
        for m_big in 0..=n {
            for m_small in 0..=m_big {
                let ok = (|| -> Result<bool> {
                    let f = projection_pullback(n, m_small, m_big, base)?;
                    let images: Vec<Vec<(Monomial, MCoefficient)>> = f
                        .source()
                        .monomials()
                        .into_iter()
                        .map(|w| {
                            let x = Element::from_terms(f.source(), [(w, MCoefficient::one(base))])?;
                            Ok(f.apply(&x)?.terms().map(|(k, c)| (k.clone(), c.clone())).collect())
                        })
                        .collect::<Result<_>>()?;
                    let keys: BTreeSet<&Monomial> = images.iter().filter_map(|v| v.first().map(|(k, _)| k)).collect();
                    let injective =
                        keys.len() == images.len() && images.iter().all(|v| v.len() == 1 && v[0].1.is_one());
                    // Projection then immersion agrees with immersion then projection.
                    let square = if m_small >= 1 && n >= 2 {
                        let left = f.then(&immersion_pullback(n, m_big, base)?)?;
                        let right = immersion_pullback(n, m_small, base)?.then(&projection_pullback(
                            n - 1,
                            m_small - 1,
                            m_big - 1,
                            base,
                        )?)?;
                        left.images().eq(right.images())
                    } else {
                        true
                    };
                    Ok(injective && square)
                })();
                t.check_result(ok, || format!("proj({n},{m_small},{m_big})"));
            }
            if m_big >= 1 {
                let ok = (|| -> Result<bool> {
                    let perm: Vec<usize> = (0..m_big as usize).rev().collect();
                    let a = symmetry_pullback(n, m_big, Symmetry::Permutation(perm), base)?;
                    let b = symmetry_pullback(n, m_big, Symmetry::NegateFirstColumn, base)?;
                    Ok(a.is_identity() && b.is_identity() && a.then(&b)?.is_identity())
                })();
                t.check_result(ok, || format!("symmetries of W({n},{m_big})"));
            }
        }
    }
    t
}

fn json_roundtrip(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(5));
    let bases = [
        z_base(),
        f2_base(),
        MotivicBase::new(CoeffRing::IntegersMod(6), FieldProfile::default()),
        MotivicBase::new(CoeffRing::Integers, FieldProfile::new(true, None)),
    ];
    for case in 0..RANDOM_CASES {
        let p = random_pres(&mut rng, 8, bases[case % bases.len()]);
        let x = random_element(&p, None, rng.random());
        let ok = (|| -> Result<bool> {
            let s = element_to_json(&x);
            let back = element_from_json(&s)?;
            Ok(back == x && element_to_json(&back) == s)
        })();
        t.check_result(ok, || format!("case {case} in {}", p.describe()));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 0).is_none());
    }

    #[test]
    fn rewrite_explorer_agrees_with_word() {
        let p = StiefelPresentation::general_linear(5, CoeffRing::Integers, FieldProfile::default()).unwrap();
        let outcomes = all_rewrite_outcomes(&p, &[2, 3, 2]);
        assert_eq!(outcomes.len(), 1);
        let c = MCoefficient::minus_one_power(p.base(), 2);
        let expected = p.generator(5).unwrap().scale(&c).unwrap();
        assert_eq!(outcome_class(&p, outcomes.first().unwrap()).unwrap(), expected);
        assert_eq!(p.word(&[2, 3, 2]).unwrap(), p.word(&[2, 2, 3]).unwrap().scale_int(-1).unwrap());
    }

    #[test]
    fn every_suite_passes() {
        for report in run_all(7) {
            assert!(report.passed(), "{report}");
            assert!(report.cases > 0, "{report}");
        }
    }
}
