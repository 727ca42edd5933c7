#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "chainlattice/errors.hpp"
#include "chainlattice/supersaturation.hpp"
#include "oracles.hpp"

using namespace chainlattice;

namespace {

Family layers(int n, std::initializer_list<int> sizes)
{
    Family F(n);
    for (int s : sizes) {
        F = F | Family::layer(n, s);
    }
    return F;
}

Family random_family(std::mt19937_64& rng, int n, unsigned percent)
{
    Family F(n);
    for (SubsetCode c = 0; c < (SubsetCode{1} << n); ++c) {
        if (rng() % 100 < percent) {
            F.insert(c);
        }
    }
    return F;
}

std::vector<SubsetCode> pair(int n, const char* lo, const char* hi)
{
    return {parse_subset(lo, n), parse_subset(hi, n)};
}

}  // namespace

TEST(MiddleLayers, Examples)
{
    EXPECT_EQ(middle_layers(4, 1), Family::layer(4, 2));
    EXPECT_EQ(middle_layers(4, 2), layers(4, {2, 3}));
    EXPECT_EQ(middle_layers(7, 8), Family::full(7));
    EXPECT_THROW(middle_layers(4, 0), DomainError);
    EXPECT_THROW(middle_layers(4, 6), DomainError);
    for (int n = 1; n <= 10; ++n) {
        for (int d = 1; d <= n + 1; ++d) {
            EXPECT_EQ(middle_layers(n, d).size(), sigma(n, d));
        }
    }
}

TEST(Measured, SizeAndSet)
{
    MeasuredSubhypergraph f(4, 5, 2);
    EXPECT_EQ(size_of(f), 0);
    const auto e = pair(4, "1", "1,2");
    f.set(e, Rational(1, 2));
    EXPECT_EQ(size_of(f), Rational(1, 2));
    EXPECT_THROW(f.set(e, Rational(3, 2)), DomainError);
    f.set(e, Rational(0));
    EXPECT_TRUE(f.explicit_values().empty());

    const auto g = MeasuredSubhypergraph::indicator(Family::full(3), 4, 2);
    EXPECT_EQ(size_of(g), Rational(static_cast<long>(oracle::count_chains(Family::full(3), 2))));
}

TEST(Measured, WeightedMeasureMatchesWeightedSumForIndicators)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Family F = random_family(rng, 5, 50);
        const auto f = MeasuredSubhypergraph::indicator(F, 6, 2);
        for (const auto& a : step_vectors(1, 5)) {
            EXPECT_EQ(f.weighted_measure(Family::full(5), a), weighted_sum(F, a));
        }
    }
}

TEST(LayerFamilies, CompressionVerdictsAtTen)
{
    const int n = 10;
    const StepVector a({2});
    const StepVector b({1});
    const Family F1 = layers(n, {4, 6});
    const Family F2 = layers(n, {4, 6, 7});
    const Family F3 = layers(n, {4, 6, 7, 8});
    const Family P = Family::full(n);
    const auto f1 = MeasuredSubhypergraph::indicator(F1, n + 1, 2);
    const auto f2 = MeasuredSubhypergraph::indicator(F2, n + 1, 2);
    const auto f3 = MeasuredSubhypergraph::indicator(F3, n + 1, 2);

    EXPECT_TRUE(is_compressed(f1, P, a));
    EXPECT_TRUE(is_completely_compressed(f1, P));
    EXPECT_TRUE(is_compressed(f2, P, a));
    EXPECT_FALSE(is_compressed(f2, P, b));
    EXPECT_FALSE(is_compressed(f3, P, a));

    EXPECT_EQ(f2.measure(pair(n, "1,2,3,4,5,6", "1,2,3,4,5,6,7")), 1);
    EXPECT_EQ(f2.measure(pair(n, "1,2,3,4", "1,2,3,4,5")), 0);
    EXPECT_EQ(f3.measure(pair(n, "1,2,3,4,5,6", "1,2,3,4,5,6,7,8")), 1);
    EXPECT_EQ(f3.measure(pair(n, "1,2,3,4,5", "1,2,3,4,5,6,7")), 0);
}

TEST(Compress, PreservesSizeAndCompresses)
{
    const int n = 10;
    const Family P = Family::full(n);
    const auto f2 = MeasuredSubhypergraph::indicator(layers(n, {4, 6, 7}), n + 1, 2);
    const auto g = compress(f2, P, StepVector({1}));
    EXPECT_EQ(size_of(g), size_of(f2));
    EXPECT_TRUE(is_compressed(g, P, StepVector({1})));
    EXPECT_EQ(compress(g, P, StepVector({1})), g);
}

TEST(Compress, CenteredIndicatorsAreCompletelyCompressed)
{
    for (int n = 3; n <= 6; ++n) {
        for (std::size_t Q = 0; Q <= (std::size_t{1} << n); Q += 3) {
            const auto f = MeasuredSubhypergraph::indicator(centered_family(n, Q), n + 1, 3);
            EXPECT_TRUE(is_completely_compressed(f, Family::full(n))) << n << " " << Q;
            EXPECT_EQ(fully_compress(f, Family::full(n)), f);
        }
    }
}

TEST(Compress, RandomFractionalMeasures)
{
    std::mt19937_64 rng(21);
    const int n = 5;
    const Family P = Family::full(n);
    for (int trial = 0; trial < 30; ++trial) {
        MeasuredSubhypergraph f(n, n + 1, 2);
        for (const auto& c : oracle::all_chains(P, 2)) {
            if (rng() % 4 == 0) {
                f.set(c, Rational(static_cast<long>(rng() % 5), 4));
            }
        }
        const Family F = random_family(rng, n, 70);
        for (const auto& a : step_vectors(1, n)) {
            const auto g = compress(f, F, a);
            EXPECT_EQ(size_of(g), size_of(f));
            EXPECT_TRUE(is_compressed(g, F, a));
        }
        const auto full = fully_compress(f, P);
        EXPECT_EQ(size_of(full), size_of(f));
        EXPECT_TRUE(is_completely_compressed(full, P));
    }
}

TEST(ChainOrderTest, RejectsChainsOutsideTheClass)
{
    const ChainOrder order{Family::full(4), StepVector({1})};
    const Chain x(4, pair(4, "1,2", "1,2,3"));
    const Chain y(4, pair(4, "1", "1,2"));
    EXPECT_TRUE(chain_less(x, y, order) != chain_less(y, x, order));
    EXPECT_FALSE(chain_less(x, x, order));
    EXPECT_THROW(chain_less(Chain(4, pair(4, "1", "1,2,3")), x, order), DomainError);
}

TEST(QGoodness, Examples)
{
    for (int n = 3; n <= 6; ++n) {
        for (std::size_t Q = 0; Q <= (std::size_t{1} << n); ++Q) {
            const auto f = MeasuredSubhypergraph::indicator(centered_family(n, Q), n + 1, 2);
            EXPECT_TRUE(is_q_good(f, Q).good);
        }
    }
    MeasuredSubhypergraph zero(4, 5, 2);
    const auto report = is_q_good(zero, sigma(4, 1) + 1);
    EXPECT_FALSE(report.good);
    ASSERT_TRUE(report.witness.has_value());
    EXPECT_EQ(report.lhs, 0);
    EXPECT_GT(report.rhs, 0);
    EXPECT_TRUE(is_q_good(zero, sigma(4, 1)).good);
}

TEST(HatF, EmptyRemovalReproducesCenteredIndicator)
{
    for (int n = 4; n <= 7; ++n) {
        const int d = n + 1;
        for (std::size_t M = 1; M <= (std::size_t{1} << n); ++M) {
            const auto h = hat_f(Family(n), M, d, 2);
            const auto g = MeasuredSubhypergraph::indicator(centered_family(n, M), d, 2);
            for (const auto& c : oracle::all_chains(Family::full(n), 2)) {
                ASSERT_EQ(h.measure(c), g.measure(c)) << n << " " << M;
            }
        }
    }
}

TEST(HatF, OneMiddleSetRemovedAtSix)
{
    const int n = 6;
    const int d = 7;
    Family C(n);
    C.insert(parse_subset("1,2,3", n));
    const std::size_t M = sigma(n, 2) + 5;  // r = 3, so C may sit in P_{6,2}
    const auto h = hat_f(C, M, d, 2);
    const Family allowed = h.host() - C;
    for (const auto& c : oracle::all_chains(Family::full(n), 2)) {
        if (!allowed.contains(c[0]) || !allowed.contains(c[1])) {
            ASSERT_EQ(h.measure(c), 0);
        }
    }
    const Family G = centered_family(n, M);
    for (const auto& a : step_vectors(1, n)) {
        EXPECT_EQ(h.weighted_measure(allowed, a), weighted_sum(G, a)) << a.str();
        EXPECT_TRUE(is_compressed(h, allowed, a));
    }
    EXPECT_TRUE(is_q_good(h, M, allowed).good);
}

TEST(HatF, Preconditions)
{
    Family C(6);
    C.insert(0);  // outside the middle layers for small d
    EXPECT_THROW(hat_f(C, 30, 3, 2), DomainError);
    EXPECT_THROW(hat_f(Family(6), 0, 3, 2), DomainError);
    Family mid(6);
    mid.insert(parse_subset("1,2,3", 6));
    EXPECT_THROW(hat_f(mid, 10, 7, 2), DomainError);  // r = 1
}

TEST(Supersat, ExhaustiveAtThreeAndRandomAtSix)
{
    for (SubsetCode mask = 0; mask < 256; ++mask) {
        Family F(3);
        for (SubsetCode c = 0; c < 8; ++c) {
            if ((mask >> c) & 1u) {
                F.insert(c);
            }
        }
        for (int len = 1; len <= 3; ++len) {
            for (const auto& a : step_vectors(static_cast<std::size_t>(len), 3)) {
                ASSERT_TRUE(verify_supersat(F, a).ok);
            }
        }
    }
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const Family F = random_family(rng, 6, static_cast<unsigned>(20 + trial));
        for (const auto& a : step_vectors(1, 6)) {
            EXPECT_TRUE(verify_supersat(F, a).ok);
        }
    }
    const auto eq = verify_supersat(centered_family(6, 30), StepVector({1}));
    EXPECT_EQ(eq.lhs, eq.rhs);
}

TEST(Supersat, PairsAboveMiddleLayer)
{
    const int n = 6;
    const std::size_t N = binomial(n, 3);
    std::mt19937_64 rng(4);
    const auto inner = middle_layers(n, 2).codes();
    for (int trial = 0; trial < 30; ++trial) {
        auto codes = inner;
        std::shuffle(codes.begin(), codes.end(), rng);
        const std::size_t x = 1 + rng() % (inner.size() - N);
        codes.resize(N + x);
        const Family F = Family::from_codes(n, codes);
        EXPECT_GE(weighted_sum(F, StepVector({1})), Rational(static_cast<long>(x)));
    }
}

TEST(Parameters, DParamAndBound)
{
    EXPECT_EQ(d_param(5, 2), 6);
    EXPECT_EQ(d_param(1, 1), 1);
    EXPECT_EQ(missing_sets_bound(6, 2, 3), 1);
    EXPECT_THROW(d_param(0, 2), DomainError);
}

TEST(CompositionCodes, RoundTripAndInjective)
{
    std::set<std::uint32_t> seen;
    for (int len = 1; len <= 8; ++len) {
        for (const auto& a : step_vectors(static_cast<std::size_t>(len), 8)) {
            const auto code = composition_code(a);
            EXPECT_LT(code, 1u << 8);
            EXPECT_TRUE(seen.insert(code).second);
            EXPECT_EQ(composition_from_code(code), a);
        }
    }
}

TEST(CompositionCodes, StepProfileMatchesWeightedSums)
{
    std::mt19937_64 rng(13);
    const int n = 5;
    for (int trial = 0; trial < 10; ++trial) {
        const Family F = random_family(rng, n, 60);
        const auto profile = scaled_step_profile(F);
        for (int len = 1; len <= n; ++len) {
            for (const auto& a : step_vectors(static_cast<std::size_t>(len), n)) {
                Rational total = 0;
                for_each_phi_star(F, a, [&](std::span<const SubsetCode> sets) { total += weight(Chain(n, {sets.begin(), sets.end()})); });
                const auto scaled = profile[composition_code(a)];
                Rational got(BigInt(static_cast<unsigned long>(scaled)), factorial(n));
                got.canonicalize();
                EXPECT_EQ(got, total);
            }
        }
    }
}
