//! Independent brute-force oracles for the graded quotient dimensions.

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use x3top::ncalg::{graded_dim_quotient_nc, Alphabet, NcElement};
use x3top::rational::int;
use x3top::series::{loop_space_ranks, loop_space_ranks_log};

fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..n).map(move |g| [w.clone(), vec![g]].concat())).collect();
    }
    out
}

fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let piv = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &piv;
                for j in c..cols {
                    let v = &rows[rank][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the degree-d piece of the free algebra on n degree-one letters modulo the
/// two-sided ideal of quadratic relations, by spanning u r v directly.
fn brute_force(n: usize, rels: &[Vec<((usize, usize), i64)>], d: usize) -> usize {
    let basis = words(n, d);
    let index = |w: &[usize]| basis.iter().position(|b| b == w).unwrap();
    let mut rows = Vec::new();
    if d >= 2 {
        for k in 0..=d - 2 {
            for u in words(n, k) {
                for v in words(n, d - 2 - k) {
                    for rel in rels {
                        let mut row = vec![BigRational::zero(); basis.len()];
                        for ((a, b), c) in rel {
                            let w = [u.clone(), vec![*a, *b], v.clone()].concat();
                            row[index(&w)] += BigRational::from_integer((*c).into());
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    basis.len() - dense_rank(rows)
}

fn element(rel: &[((usize, usize), i64)]) -> NcElement {
    rel.iter().fold(NcElement::zero(), |acc, ((a, b), c)| acc.add(&NcElement::word(vec![*a, *b]).scale(&int(*c))))
}

#[test]
fn exterior_and_free_examples() {
    let one = Alphabet::degree_one(&["x"]);
    let sq = vec![vec![((0, 0), 1)]];
    assert_eq!(graded_dim_quotient_nc(&one, &[element(&sq[0])], 4), vec![1, 1, 0, 0, 0]);
    assert_eq!(brute_force(1, &sq, 2), 0);
    let two = Alphabet::degree_one(&["x", "y"]);
    assert_eq!(graded_dim_quotient_nc(&two, &[], 3), vec![1, 2, 4, 8]);
    assert!(BigRational::one() > BigRational::zero());
}

#[test]
fn loop_space_ranks_agree_with_log_oracle() {
    let pbw: Vec<i64> = loop_space_ranks(12).into_iter().map(|x| x as i64).collect();
    assert_eq!(pbw, loop_space_ranks_log(12));
}

fn relation() -> impl Strategy<Value = Vec<((usize, usize), i64)>> {
    prop::collection::vec(((0usize..3, 0usize..3), -2i64..=2), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn quotient_dims_match_brute_force(rels in prop::collection::vec(relation(), 0..3)) {
        let alphabet = Alphabet::degree_one(&["a", "b", "c"]);
        let elems: Vec<NcElement> = rels.iter().map(|r| element(r)).filter(|e| !e.is_zero()).collect();
        let got = graded_dim_quotient_nc(&alphabet, &elems, 4);
        for d in 0..=4 {
            prop_assert_eq!(got[d], brute_force(3, &rels, d), "degree {}", d);
        }
    }
}
