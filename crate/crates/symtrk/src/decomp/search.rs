//! Brute-force search for rank-R decompositions.
//!
//! A candidate is a tuple of R nonzero field elements; it succeeds when all
//! m slice targets are expressible over F_q in the rank-one terms it spans.
//! Candidates form a deterministic stream per strategy, an optional hint
//! tuple occupying stream index 0. The stream is cut into fixed-size blocks
//! and blocks run on independent workers; the reported hit is always the
//! success with the smallest stream index, so results do not depend on the
//! worker count or on scheduling.

use super::construct::solve_slices;
use super::DecompError;
use crate::field::{Elt, Field};
use crate::multtensor::DecompositionCertificate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Subsets of exponents of the first primitive element, in
    /// lexicographic order.
    Powers,
    /// Uniform tuples of nonzero elements from a seeded generator.
    Random,
    /// All subsets of the scaling-class representatives, in lexicographic
    /// order; sweeping the whole space proves nonexistence.
    Exhaustive,
}

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub rank: usize,
    pub strategy: SearchStrategy,
    /// Maximum number of candidates to test, the hint included.
    pub budget: u64,
    /// Seed for the random strategy.
    pub seed: u64,
    /// Worker threads; 0 uses the global default.
    pub workers: usize,
    /// Largest field the search agrees to enumerate.
    pub cap: u128,
    /// Exponent tuple (powers of the stream's xi) tried first.
    pub hint: Option<Vec<u64>>,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            rank: 1,
            strategy: SearchStrategy::Exhaustive,
            budget: 1 << 20,
            seed: 0,
            workers: 0,
            cap: 1 << 24,
            hint: None,
        }
    }
}

#[derive(Debug)]
pub enum SearchOutcome {
    /// `index` is the stream position of the winning candidate; everything
    /// before it failed.
    Found {
        certificate: DecompositionCertificate,
        index: u64,
    },
    /// The whole candidate space was swept without a hit: no rank-R
    /// decomposition exists.
    Exhausted { tested: u64 },
    /// The budget ran out before the space did.
    BudgetExhausted { tested: u64 },
}

const BLOCK: u64 = 64;

/// Lexicographic k-subsets of 0..n as a stepping iterator.
struct Combos {
    n: u64,
    k: usize,
    cur: Vec<u64>,
    done: bool,
}

impl Combos {
    fn new(n: u64, k: usize) -> Combos {
        Combos {
            n,
            k,
            cur: (0..k as u64).collect(),
            done: (k as u64) > n,
        }
    }

    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let k = self.k;
        let mut j = k;
        while j > 0 {
            j -= 1;
            if self.cur[j] < self.n - (k - j) as u64 {
                self.cur[j] += 1;
                for t in j + 1..k {
                    self.cur[t] = self.cur[t - 1] + 1;
                }
                return true;
            }
        }
        self.done = true;
        false
    }
}

/// C(n, k) saturating at u128::MAX.
fn binom_saturating(n: u128, k: u64) -> u128 {
    let k = k as u128;
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul(n - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Element indices of the scaling-class representatives: the first member
/// of each class {lambda a : lambda in F_q^*} in enumeration order.
fn class_representatives(field: &Field) -> Vec<u128> {
    let total = field.order();
    let base = field.base();
    let q = base.order();
    let mut seen = vec![0u64; (total as usize + 63) / 64];
    let mut reps = Vec::new();
    for idx in 1..total {
        let word = (idx / 64) as usize;
        let bit = 1u64 << (idx % 64);
        if seen[word] & bit != 0 {
            continue;
        }
        reps.push(idx);
        let a = field.element(idx);
        for s in 1..q {
            let member = field.index_of(&field.mul(&a, &field.embed(&base.element(s))));
            seen[(member / 64) as usize] |= 1u64 << (member % 64);
        }
    }
    reps
}

fn certificate_from(
    field: &Field,
    xi: &Elt,
    alphas: Vec<Elt>,
    coefficients: crate::matrix::MatrixGf,
) -> DecompositionCertificate {
    DecompositionCertificate {
        field: field.clone(),
        xi: xi.clone(),
        scalars: vec![field.one(); alphas.len()],
        alphas,
        coefficients,
    }
}

/// Searches for a rank-R decomposition of multiplication in this field.
pub fn search(field: &Field, params: &SearchParams) -> Result<SearchOutcome, DecompError> {
    let total = field.order();
    if total > params.cap {
        return Err(DecompError::CapExceeded { needed: total });
    }
    let xi = match params.strategy {
        SearchStrategy::Powers => field.primitive_element()?,
        _ => field.find_generator(),
    };

    let mut tested: u64 = 0;
    let mut budget = params.budget;
    if let Some(hint) = &params.hint {
        if budget == 0 {
            return Ok(SearchOutcome::BudgetExhausted { tested: 0 });
        }
        budget -= 1;
        tested += 1;
        let alphas: Vec<Elt> = hint.iter().map(|&e| field.pow(&xi, e as u128)).collect();
        if let Some(c) = solve_slices(field, &xi, &alphas)? {
            return Ok(SearchOutcome::Found {
                certificate: certificate_from(field, &xi, alphas, c),
                index: 0,
            });
        }
    }

    let body = || -> Result<SearchOutcome, DecompError> {
        match params.strategy {
            SearchStrategy::Random => {
                random_scan(field, &xi, params.rank, params.seed, budget, tested)
            }
            SearchStrategy::Powers => {
                // pool entry e is the element xi^e, stored by index
                let mut pool = Vec::with_capacity((total - 1) as usize);
                let mut p = field.one();
                for _ in 0..total - 1 {
                    pool.push(field.index_of(&p));
                    p = field.mul(&p, &xi);
                }
                combo_scan(field, &xi, &pool, params.rank, budget, tested, false)
            }
            SearchStrategy::Exhaustive => {
                let reps = class_representatives(field);
                combo_scan(field, &xi, &reps, params.rank, budget, tested, true)
            }
        }
    };
    if params.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(params.workers)
            .build()
            .expect("worker pool");
        pool.install(body)
    } else {
        body()
    }
}

/// Lexicographic sweep over k-subsets of an element-index pool. `complete`
/// marks pools (the scaling-class representatives) whose full sweep proves
/// nonexistence; k is clamped to the pool size, extra slots never help.
fn combo_scan(
    field: &Field,
    xi: &Elt,
    pool: &[u128],
    rank: usize,
    budget: u64,
    already_tested: u64,
    complete: bool,
) -> Result<SearchOutcome, DecompError> {
    let n = pool.len() as u64;
    let k = rank.min(pool.len());
    let space = binom_saturating(n as u128, k as u64);
    let todo = space.min(budget as u128) as u64;
    if todo == 0 {
        return Ok(SearchOutcome::BudgetExhausted {
            tested: already_tested,
        });
    }

    // sequential pre-pass: record the combination at every block boundary
    let mut starts = Vec::with_capacity(((todo + BLOCK - 1) / BLOCK) as usize);
    let mut it = Combos::new(n, k);
    let mut pos: u64 = 0;
    starts.push(it.cur.clone());
    while pos + BLOCK < todo {
        for _ in 0..BLOCK {
            it.advance();
        }
        pos += BLOCK;
        starts.push(it.cur.clone());
    }

    let hit = starts
        .par_iter()
        .enumerate()
        .find_map_first(|(bi, start)| {
            let lo = bi as u64 * BLOCK;
            let len = BLOCK.min(todo - lo);
            let mut state = Combos {
                n,
                k,
                cur: start.clone(),
                done: false,
            };
            for off in 0..len {
                let alphas: Vec<Elt> = state
                    .cur
                    .iter()
                    .map(|&e| field.element(pool[e as usize]))
                    .collect();
                match solve_slices(field, xi, &alphas) {
                    Ok(Some(c)) => return Some(Ok((lo + off, alphas, c))),
                    Ok(None) => {}
                    Err(e) => return Some(Err(e)),
                }
                if !state.advance() {
                    break;
                }
            }
            None
        });

    match hit {
        Some(Ok((off, alphas, c))) => Ok(SearchOutcome::Found {
            certificate: certificate_from(field, xi, alphas, c),
            index: already_tested + off,
        }),
        Some(Err(e)) => Err(e),
        None => {
            let tested = already_tested + todo;
            Ok(if complete && space <= budget as u128 {
                SearchOutcome::Exhausted { tested }
            } else {
                SearchOutcome::BudgetExhausted { tested }
            })
        }
    }
}

fn random_scan(
    field: &Field,
    xi: &Elt,
    rank: usize,
    seed: u64,
    budget: u64,
    already_tested: u64,
) -> Result<SearchOutcome, DecompError> {
    let total = field.order();
    let blocks = (budget + BLOCK - 1) / BLOCK;
    let hit = (0..blocks)
        .into_par_iter()
        .find_map_first(|bi| {
            let lo = bi * BLOCK;
            let len = BLOCK.min(budget - lo);
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(bi);
            for off in 0..len {
                let alphas: Vec<Elt> = (0..rank)
                    .map(|_| field.element(rng.gen_range(1..total)))
                    .collect();
                match solve_slices(field, xi, &alphas) {
                    Ok(Some(c)) => return Some(Ok((lo + off, alphas, c))),
                    Ok(None) => {}
                    Err(e) => return Some(Err(e)),
                }
            }
            None
        });
    match hit {
        Some(Ok((off, alphas, c))) => Ok(SearchOutcome::Found {
            certificate: certificate_from(field, xi, alphas, c),
            index: already_tested + off,
        }),
        Some(Err(e)) => Err(e),
        None => Ok(SearchOutcome::BudgetExhausted {
            tested: already_tested + budget,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(rank: usize, strategy: SearchStrategy) -> SearchParams {
        SearchParams {
            rank,
            strategy,
            ..SearchParams::default()
        }
    }

    #[test]
    fn combos_cover_the_space_in_order() {
        let mut it = Combos::new(5, 3);
        let mut all = vec![it.cur.clone()];
        while it.advance() {
            all.push(it.cur.clone());
        }
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[1], vec![0, 1, 3]);
        assert_eq!(all[9], vec![2, 3, 4]);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all, "lexicographic and duplicate-free");

        let mut empty = Combos::new(2, 3);
        assert!(empty.done && !empty.advance());
    }

    #[test]
    fn binomials_saturate() {
        assert_eq!(binom_saturating(5, 3), 10);
        assert_eq!(binom_saturating(3, 5), 0);
        assert_eq!(binom_saturating(63, 5), 7028847);
        assert_eq!(binom_saturating(1 << 24, 9), u128::MAX);
    }

    #[test]
    fn class_representative_counts() {
        // (q^m - 1)/(q - 1) classes
        for (q, m) in [(2u64, 2usize), (2, 4), (3, 2), (4, 2), (5, 2), (3, 3)] {
            let f = Field::standard(q, m).unwrap();
            let reps = class_representatives(&f);
            let expect = (f.order() - 1) / (f.base_size() - 1);
            assert_eq!(reps.len() as u128, expect, "(q, m) = ({q}, {m})");
            // each rep is the smallest index in its class
            for &r in &reps {
                let a = f.element(r);
                let base = f.base();
                for s in 1..f.base_size() {
                    let member = f.mul(&a, &f.embed(&base.element(s)));
                    assert!(f.index_of(&member) >= r);
                }
            }
        }
    }

    #[test]
    fn exhaustive_finds_rank3_and_refutes_rank2_for_f4() {
        let f = Field::standard(2, 2).unwrap();
        match search(&f, &params(3, SearchStrategy::Exhaustive)).unwrap() {
            SearchOutcome::Found { certificate, index } => {
                // only one 3-subset of the 3 classes exists
                assert_eq!(index, 0);
                assert_eq!(certificate.rank(), 3);
                certificate.verify().unwrap();
            }
            other => panic!("expected a hit, got {other:?}"),
        }
        match search(&f, &params(2, SearchStrategy::Exhaustive)).unwrap() {
            SearchOutcome::Exhausted { tested } => assert_eq!(tested, 3),
            other => panic!("expected definitive exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn exhaustive_refutes_rank5_for_q2_m3() {
        let f = Field::standard(2, 3).unwrap();
        match search(&f, &params(5, SearchStrategy::Exhaustive)).unwrap() {
            SearchOutcome::Exhausted { tested } => assert_eq!(tested, 21),
            other => panic!("expected definitive exhaustion, got {other:?}"),
        }
        match search(&f, &params(6, SearchStrategy::Exhaustive)).unwrap() {
            SearchOutcome::Found { certificate, .. } => {
                assert_eq!(certificate.rank(), 6);
                certificate.verify().unwrap();
            }
            other => panic!("expected a hit, got {other:?}"),
        }
    }

    #[test]
    fn budget_cuts_off_before_exhaustion() {
        let f = Field::standard(2, 3).unwrap();
        let p = SearchParams {
            budget: 4,
            ..params(5, SearchStrategy::Exhaustive)
        };
        match search(&f, &p).unwrap() {
            SearchOutcome::BudgetExhausted { tested } => assert_eq!(tested, 4),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn hint_is_stream_index_zero() {
        let f = Field::standard(2, 4).unwrap();
        let p = SearchParams {
            hint: Some(vec![0, 1, 4, 5, 6, 9, 10, 11, 14]),
            ..params(9, SearchStrategy::Powers)
        };
        match search(&f, &p).unwrap() {
            SearchOutcome::Found { certificate, index } => {
                assert_eq!(index, 0);
                assert_eq!(certificate.rank(), 9);
                certificate.verify().unwrap();
            }
            other => panic!("expected the hint to win, got {other:?}"),
        }
    }

    #[test]
    fn random_strategy_is_seed_deterministic() {
        let f = Field::standard(2, 2).unwrap();
        let p = SearchParams {
            seed: 7,
            budget: 512,
            ..params(3, SearchStrategy::Random)
        };
        let (i1, a1) = match search(&f, &p).unwrap() {
            SearchOutcome::Found { certificate, index } => {
                certificate.verify().unwrap();
                (index, certificate.alphas.clone())
            }
            other => panic!("random search should hit rank 3 in F_4, got {other:?}"),
        };
        let mut p2 = p.clone();
        p2.workers = 3;
        match search(&f, &p2).unwrap() {
            SearchOutcome::Found { certificate, index } => {
                assert_eq!(index, i1);
                assert_eq!(certificate.alphas, a1);
            }
            other => panic!("expected the same hit, got {other:?}"),
        }
    }

    #[test]
    fn worker_count_does_not_change_the_winner() {
        let f = Field::standard(3, 2).unwrap();
        let mut single = params(3, SearchStrategy::Exhaustive);
        single.workers = 1;
        let mut many = params(3, SearchStrategy::Exhaustive);
        many.workers = 4;
        let i1 = match search(&f, &single).unwrap() {
            SearchOutcome::Found { index, .. } => index,
            other => panic!("expected a hit, got {other:?}"),
        };
        let i2 = match search(&f, &many).unwrap() {
            SearchOutcome::Found { index, .. } => index,
            other => panic!("expected a hit, got {other:?}"),
        };
        assert_eq!(i1, i2);
    }

    #[test]
    fn cap_guard() {
        let f = Field::standard(2, 2).unwrap();
        let p = SearchParams {
            cap: 3,
            ..params(3, SearchStrategy::Exhaustive)
        };
        assert!(matches!(
            search(&f, &p),
            Err(DecompError::CapExceeded { needed: 4 })
        ));
    }

    #[test]
    fn powers_strategy_finds_m2_quickly() {
        let f = Field::standard(3, 2).unwrap();
        match search(&f, &params(3, SearchStrategy::Powers)).unwrap() {
            SearchOutcome::Found { certificate, .. } => {
                certificate.verify().unwrap();
            }
            other => panic!("expected a hit, got {other:?}"),
        }
    }
}
