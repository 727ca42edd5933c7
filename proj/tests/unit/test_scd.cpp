#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "chainlattice/errors.hpp"
#include "chainlattice/scd.hpp"
#include "oracles.hpp"

using namespace chainlattice;

namespace {

// Canonical form of an SCD given as chain id per code: the sorted list of chains.
std::set<std::vector<SubsetCode>> as_chain_set(const std::vector<int>& ids)
{
    std::map<int, std::vector<SubsetCode>> byId;
    for (SubsetCode c = 0; c < ids.size(); ++c) {
        byId[ids[c]].push_back(c);
    }
    std::set<std::vector<SubsetCode>> out;
    for (auto& [id, sets] : byId) {
        std::sort(sets.begin(), sets.end(), [](SubsetCode a, SubsetCode b) { return cardinality(a) < cardinality(b); });
        out.insert(sets);
    }
    return out;
}

std::set<std::vector<SubsetCode>> as_chain_set(const SCD& X)
{
    return {X.chains().begin(), X.chains().end()};
}

}  // namespace

TEST(DbtkScd, InvariantsAndChainCount)
{
    for (int n = 1; n <= 14; ++n) {
        const SCD X = dbtk_scd(n);  // the constructor re-validates every invariant
        EXPECT_EQ(X.chain_count(), binomial(n, n / 2));
    }
}

TEST(DbtkScd, ChainLengthProfileAtFour)
{
    const SCD X = dbtk_scd(4);
    std::map<std::size_t, int> lengths;
    for (const auto& c : X.chains()) {
        ++lengths[c.size()];
    }
    EXPECT_EQ(lengths, (std::map<std::size_t, int>{{1, 2}, {3, 3}, {5, 1}}));
}

TEST(DbtkScd, ChainThroughExamples)
{
    EXPECT_EQ(chain_through(4, 0).str(), "- < 1 < 1,2 < 1,2,3 < 1,2,3,4");
    const Chain c = chain_through(4, parse_subset("2", 4));
    EXPECT_TRUE(std::find(c.sets().begin(), c.sets().end(), parse_subset("2", 4)) != c.sets().end());
    EXPECT_EQ(LevelDistance::of(4, cardinality(c.bottom())), LevelDistance::of(4, cardinality(c.top())));
}

TEST(DbtkScd, ChainThroughAgreesWithConstructionAtTwelve)
{
    const int n = 12;
    const SCD X = dbtk_scd(n);
    for (SubsetCode A = 0; A < (SubsetCode{1} << n); ++A) {
        const Chain c = chain_through(n, A);
        ASSERT_EQ(c, X.chain(X.chain_of(A))) << format_subset(A);
        ASSERT_EQ(dbtk_bottom(n, A), c.bottom());
    }
}

TEST(ScdValidation, RejectsBrokenDecompositions)
{
    EXPECT_THROW(SCD(2, {{0, 1, 3}}), DomainError);                 // misses {2}
    EXPECT_THROW(SCD(2, {{0, 1, 3}, {2}, {2}}), DomainError);       // overlap
    EXPECT_THROW(SCD(2, {{0, 3}, {1}, {2}}), DomainError);          // skips a level
    EXPECT_NO_THROW(SCD(3, {{0, 1, 3, 7}, {2, 6}, {4, 5}}));
}

TEST(ScdEnumeration, CountsMatchOracle)
{
    for (int n = 1; n <= 4; ++n) {
        const auto ours = enumerate_all_scds(n);
        const auto theirs = oracle::all_scds(n);
        ASSERT_EQ(ours.size(), theirs.size()) << n;
        std::set<std::set<std::vector<SubsetCode>>> a, b;
        for (const auto& X : ours) {
            a.insert(as_chain_set(X));
        }
        for (const auto& ids : theirs) {
            b.insert(as_chain_set(ids));
        }
        EXPECT_EQ(a, b);
    }
    EXPECT_EQ(enumerate_all_scds(3).size(), 6u);
    EXPECT_EQ(enumerate_all_scds(4).size(), 240u);
    EXPECT_THROW(enumerate_all_scds(5), ResourceError);
}

TEST(ScdEnumeration, ExactFractionEqualsWeight)
{
    const auto all = enumerate_all_scds(3);
    for (const auto& chain : oracle::all_chains_any_length(Family::full(3))) {
        const Chain c(3, chain);
        std::size_t hits = 0;
        for (const auto& X : all) {
            hits += contains_chain(X, c) ? 1 : 0;
        }
        Rational fraction(static_cast<long>(hits), static_cast<long>(all.size()));
        fraction.canonicalize();
        EXPECT_EQ(fraction, weight(c)) << c.str();
    }
}

TEST(PermutedScd, IsAnScdAndPreservesStructure)
{
    const SCD X = dbtk_scd(5);
    const std::vector<int> perm{2, 0, 4, 1, 3};
    const SCD Y = permuted_scd(X, perm);
    EXPECT_EQ(Y.chain_count(), X.chain_count());
    for (std::size_t i = 0; i < X.chain_count(); ++i) {
        const auto& src = X.chains()[i];
        EXPECT_EQ(Y.chain_of(permute_code(src.front(), perm)), Y.chain_of(permute_code(src.back(), perm)));
    }
    EXPECT_THROW(permuted_scd(X, std::vector<int>{0, 0, 1, 2, 3}), DomainError);
}

TEST(SampleScd, DeterministicAndValid)
{
    const SCD a = sample_scd(8, 42);
    const SCD b = sample_scd(8, 42);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.chain_count(), binomial(8, 4));
}

TEST(McWeight, MatchesExactWeightWithinFourSigma)
{
    const Chain c = Chain::parse("1,2 < 1,2,3", 3);
    const McWeight mc = mc_weight(c, 100000, 7, 1);
    const double w = weight(c).get_d();
    const double sigma = std::sqrt(w * (1 - w) / 100000.0);
    EXPECT_NEAR(mc.frequency.get_d(), w, 4 * sigma);
    EXPECT_EQ(mc.trials, 100000u);
}

TEST(McWeight, IndependentOfWorkerCount)
{
    const Chain c = Chain::parse("1 < 1,2 < 1,2,3", 6);
    const McWeight one = mc_weight(c, 200000, 11, 1);
    const McWeight four = mc_weight(c, 200000, 11, 4);
    EXPECT_EQ(one.hits, four.hits);
}
