#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "sykclt/clifford.hpp"
#include "sykclt/errors.hpp"
#include "sykclt/rng.hpp"

using namespace sykclt;

namespace {

IndexSet random_set(int n, Rng& rng) {
    const std::uint64_t mask = n == 64 ? ~0ULL : (1ULL << n) - 1;
    return IndexSet(rng() & mask, n);
}

// dense realization of phase * Psi_support
DenseOperator dense(const MajoranaWord& w) { return w.phase.value() * dense_word(w.support); }

double max_abs(const DenseOperator& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace

TEST(IndexSet, BasicAccessors) {
    const IndexSet a({1, 3, 4}, 6);
    EXPECT_EQ(a.size(), 3);
    EXPECT_TRUE(a.contains(3));
    EXPECT_FALSE(a.contains(2));
    EXPECT_EQ(a.elements(), (std::vector<int>{1, 3, 4}));
    EXPECT_EQ(a.size(), std::popcount(a.bits()));
    EXPECT_THROW(IndexSet({7}, 6), ArgumentError);
}

TEST(IndexSet, LexOrder) {
    EXPECT_TRUE(lex_less(IndexSet({1, 2}, 4), IndexSet({1, 3}, 4)));
    EXPECT_TRUE(lex_less(IndexSet({1, 4}, 4), IndexSet({2, 3}, 4)));
    EXPECT_FALSE(lex_less(IndexSet({2, 3}, 4), IndexSet({1, 4}, 4)));
}

TEST(WordProduct, SpecExamples) {
    const MajoranaWord id(IndexSet(0, 4));
    const MajoranaWord a(IndexSet({1, 2}, 4));
    const MajoranaWord b(IndexSet({2, 3}, 4));

    EXPECT_EQ(word_product(id, a), a);
    const auto ab = word_product(a, b);
    EXPECT_EQ(ab.support, IndexSet({1, 3}, 4));
    EXPECT_EQ(ab.phase, Phase::one());
    const auto aa = word_product(a, a);
    EXPECT_TRUE(aa.support.empty());
    EXPECT_EQ(aa.phase, Phase::minus_one());
}

TEST(WordProduct, MismatchedNThrows) {
    EXPECT_THROW(word_product(MajoranaWord(IndexSet({1}, 4)), MajoranaWord(IndexSet({1}, 6))), DimensionError);
}

TEST(WordProduct, CommutationRatio) {
    Rng rng = substream(1, 0);
    for (int t = 0; t < 2000; ++t) {
        const IndexSet a = random_set(12, rng);
        const IndexSet b = random_set(12, rng);
        const auto ab = word_product(MajoranaWord(a), MajoranaWord(b));
        const auto ba = word_product(MajoranaWord(b), MajoranaWord(a));
        EXPECT_EQ(ab.support, a.symmetric_difference(b));
        const int exponent = a.size() * b.size() - a.intersection(b).size();
        EXPECT_EQ(ab.phase, ba.phase * (exponent % 2 ? Phase::minus_one() : Phase::one()));
    }
}

TEST(WordProduct, MatchesDenseRealization) {
    Rng rng = substream(2, 0);
    for (int n : {2, 4, 6, 8, 10}) {
        for (int t = 0; t < 60; ++t) {
            const MajoranaWord a(random_set(n, rng), Phase::i_power(static_cast<int>(rng() % 4)));
            const MajoranaWord b(random_set(n, rng), Phase::i_power(static_cast<int>(rng() % 4)));
            const DenseOperator expected = dense(a) * dense(b);
            EXPECT_LT(max_abs(dense(word_product(a, b)) - expected), 1e-12) << a.support.to_string() << " "
                                                                             << b.support.to_string();
        }
    }
}

TEST(Trace, SpecExamples) {
    EXPECT_EQ(normalized_trace(MajoranaWord(IndexSet(0, 4))), std::complex<double>(1.0, 0.0));
    EXPECT_EQ(normalized_trace(MajoranaWord(IndexSet({1, 2}, 4))), std::complex<double>(0.0, 0.0));

    const std::vector<IndexSet> twice{IndexSet({1, 2}, 4), IndexSet({1, 2}, 4)};
    EXPECT_EQ(product_trace(twice), std::complex<double>(-1.0, 0.0));
    const DenseOperator d = dense_word(twice[0]) * dense_word(twice[1]);
    EXPECT_NEAR(d.trace().real() / 4.0, -1.0, 1e-14);

    const std::vector<IndexSet> disjoint{IndexSet({1, 2}, 4), IndexSet({3, 4}, 4)};
    EXPECT_EQ(product_trace(disjoint), std::complex<double>(0.0, 0.0));
    EXPECT_EQ(product_trace(std::span<const IndexSet>()), std::complex<double>(1.0, 0.0));
}

TEST(Trace, EveryNonemptyWordIsTracelessDense) {
    const int n = 8;
    for (std::uint64_t bits = 1; bits < 256; ++bits) {
        const DenseOperator w = dense_word(IndexSet(bits, n));
        EXPECT_LT(std::abs(w.trace()), 1e-12);
        EXPECT_EQ(normalized_trace(MajoranaWord(IndexSet(bits, n))), std::complex<double>(0.0, 0.0));
    }
}

TEST(Trace, ProductTraceMatchesDenseTrace) {
    Rng rng = substream(3, 0);
    for (int n : {4, 6, 8, 10}) {
        const double dim = std::pow(2.0, n / 2);
        for (int t = 0; t < 40; ++t) {
            std::vector<IndexSet> words;
            const int k = 1 + static_cast<int>(rng() % 5);
            DenseOperator prod = DenseOperator::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
            for (int j = 0; j < k; ++j) {
                words.push_back(random_set(n, rng));
                prod = prod * dense_word(words.back());
            }
            // force a trace-carrying tuple every other round
            if (t % 2 == 0) {
                const MajoranaWord folded = fold_product(words);
                words.push_back(folded.support);
                prod = prod * dense_word(folded.support);
            }
            const auto expected = prod.trace() / dim;
            const auto got = product_trace(words);
            EXPECT_LT(std::abs(got - expected), 1e-12);
            EXPECT_LE(std::abs(got), 1.0);
        }
    }
}

TEST(DenseMajorana, PauliPairAtTwo) {
    const DenseOperator p1 = dense_majorana(1, 2);
    const DenseOperator p2 = dense_majorana(2, 2);
    const DenseOperator id = DenseOperator::Identity(2, 2);
    EXPECT_LT(max_abs(p1 - p1.adjoint()), 1e-15);
    EXPECT_LT(max_abs(p2 - p2.adjoint()), 1e-15);
    EXPECT_LT(max_abs(p1 * p1 - id), 1e-15);
    EXPECT_LT(max_abs(p1 * p2 + p2 * p1), 1e-15);
}

TEST(DenseMajorana, AnticommutationAtEight) {
    const int n = 8;
    const DenseOperator id = DenseOperator::Identity(16, 16);
    std::vector<DenseOperator> psi;
    for (int j = 1; j <= n; ++j) psi.push_back(dense_majorana(j, n));
    for (int i = 0; i < n; ++i) {
        EXPECT_LT(max_abs(psi[i] - psi[i].adjoint()), 1e-15);
        for (int j = 0; j < n; ++j) {
            const DenseOperator anti = psi[i] * psi[j] + psi[j] * psi[i];
            EXPECT_LT(max_abs(anti - (i == j ? 2.0 : 0.0) * id), 1e-14) << i << "," << j;
        }
    }
}

TEST(DenseMajorana, WordPairsAtEight) {
    Rng rng = substream(4, 0);
    for (int t = 0; t < 1000; ++t) {
        const MajoranaWord a(random_set(8, rng));
        const MajoranaWord b(random_set(8, rng));
        EXPECT_LT(max_abs(dense(word_product(a, b)) - dense(a) * dense(b)), 1e-12);
    }
}

TEST(DenseMajorana, OverCapAndRangeErrors) {
    EXPECT_THROW(dense_majorana(1, 18), ResourceError);
    EXPECT_NO_THROW(dense_majorana(1, 18, 18));
    EXPECT_THROW(dense_majorana(0, 4), ArgumentError);
    EXPECT_THROW(dense_majorana(5, 4), ArgumentError);
}

TEST(JordanWigner, PauliFormMatchesKroneckerWord) {
    Rng rng = substream(5, 0);
    for (int n : {2, 4, 6, 8}) {
        for (int t = 0; t < 30; ++t) {
            const IndexSet a = random_set(n, rng);
            EXPECT_LT(max_abs(dense_from_pauli(jordan_wigner(a)) - dense_word(a)), 1e-14) << a.to_string();
        }
    }
}

TEST(JordanWigner, PauliProductMatchesWordProduct) {
    Rng rng = substream(6, 0);
    for (int t = 0; t < 500; ++t) {
        const IndexSet a = random_set(10, rng);
        const IndexSet b = random_set(10, rng);
        const MajoranaWord w = word_product(MajoranaWord(a), MajoranaWord(b));
        const PauliForm p = jordan_wigner(a) * jordan_wigner(b);
        const PauliForm expected = jordan_wigner(w.support);
        EXPECT_EQ(p.x, expected.x);
        EXPECT_EQ(p.z, expected.z);
        EXPECT_EQ(p.phase, expected.phase * w.phase);
    }
}

TEST(PiSign, SpecExamples) {
    const PairPartition noncrossing({{1, 2}, {3, 4}});
    const PairPartition crossing({{1, 3}, {2, 4}});
    const std::vector<IndexSet> r{IndexSet({1, 2}, 4), IndexSet({2, 3}, 4)};
    EXPECT_EQ(pi_sign_identity(noncrossing, r, 2), 1);
    EXPECT_EQ(pi_sign_identity(crossing, r, 2), -1);
    EXPECT_THROW(pi_sign_identity(crossing, r, 3), ArgumentError);
}

TEST(PiSign, AgreesWithProductTrace) {
    // i^{qk/2} times the trace of the pi-ordered word sequence
    Rng rng = substream(7, 0);
    const std::vector<PairPartition> partitions{
        PairPartition({{1, 3}, {2, 4}}),
        PairPartition({{1, 2}, {3, 4}}),
        PairPartition({{1, 4}, {2, 5}, {3, 6}}),
        PairPartition({{1, 5}, {2, 3}, {4, 6}}),
        PairPartition({{1, 6}, {2, 4}, {3, 8}, {5, 7}}),
    };
    for (int q : {2, 4}) {
        const int n = 8;
        for (const auto& pi : partitions) {
            const int k = pi.order();
            for (int t = 0; t < 100; ++t) {
                std::vector<IndexSet> assignment;
                for (std::size_t b = 0; b < pi.blocks().size(); ++b) {
                    std::vector<int> pool{1, 2, 3, 4, 5, 6, 7, 8};
                    std::shuffle(pool.begin(), pool.end(), rng);
                    pool.resize(static_cast<std::size_t>(q));
                    assignment.push_back(IndexSet::from_elements(pool, n));
                }
                const auto words = arrange_by_partition(pi, assignment);
                const auto tr = Phase::i_power(q * k / 2).value() * product_trace(words);
                EXPECT_NEAR(tr.real(), pi_sign_identity(pi, assignment, q), 1e-15);
                EXPECT_NEAR(tr.imag(), 0.0, 1e-15);
            }
        }
    }
}
