#include <gtest/gtest.h>

#include "chainlattice/errors.hpp"
#include "chainlattice/io.hpp"
#include "chainlattice/supersaturation.hpp"

using namespace chainlattice;

TEST(FamilyJson, RoundTrip)
{
    const Family F = centered_family(5, 13);
    EXPECT_EQ(family_from_json(family_to_json(F)), F);
    const Family G = family_from_json(R"({"n": 4, "sets": [[1,2],[1,2,3],[]]})");
    EXPECT_EQ(G.size(), 3u);
    EXPECT_TRUE(G.contains(0));
    EXPECT_TRUE(G.contains(parse_subset("1,2,3", 4)));
}

TEST(FamilyJson, Errors)
{
    EXPECT_THROW(family_from_json(R"({"n": 4, "sets": [[2,1]]})"), ParseError);
    EXPECT_THROW(family_from_json(R"({"n": 4, "sets": [[1],[1]]})"), ParseError);
    EXPECT_THROW(family_from_json(R"({"n": 4, "sets": [[5]]})"), ParseError);
    try {
        family_from_json("{\"n\": 4,\n\"sets\": [[1,2]\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
    }
}

TEST(FamilyText, RoundTripAndComments)
{
    const Family F = centered_family(4, 9);
    EXPECT_EQ(family_from_text(family_to_text(F), 4), F);
    const Family G = family_from_text("# header\n\n1,2\n-\n", 4);
    EXPECT_EQ(G.size(), 2u);
    EXPECT_EQ(family_from_any("1,2\n", 4), family_from_text("1,2\n", 4));
    EXPECT_EQ(family_from_any(family_to_json(F), std::nullopt), F);
    EXPECT_THROW(family_from_text("1,x\n", 4), ParseError);
}

TEST(ScdJson, RoundTrip)
{
    const SCD X = dbtk_scd(5);
    EXPECT_EQ(scd_from_json(scd_to_json(X)), X);
    EXPECT_THROW(scd_from_json(R"({"n": 2, "chains": [[0, 1, 3]]})"), ParseError);
}

TEST(MeasuredJson, RoundTrip)
{
    auto f = MeasuredSubhypergraph::indicator(centered_family(4, 9), 5, 2);
    f.set(std::vector<SubsetCode>{1, 3}, Rational(2, 7));
    EXPECT_EQ(msh_from_json(msh_to_json(f)), f);
    MeasuredSubhypergraph z(4, 3, 2);
    EXPECT_EQ(msh_from_json(msh_to_json(z)), z);
}

TEST(GridJson, RoundTrip)
{
    const auto F = m_centered_family(5, 3, 40, GridConvention::OneBased);
    EXPECT_EQ(grid_from_json(grid_to_json(F)), F);
}

TEST(Rationals, Parse)
{
    EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
    EXPECT_EQ(parse_rational("3"), 3);
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("half"), ParseError);
    EXPECT_THROW(read_file("/nonexistent/file.json"), ParseError);
}
