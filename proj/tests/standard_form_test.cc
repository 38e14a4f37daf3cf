#include "qeclab/standard_form.hpp"

#include <gtest/gtest.h>

#include "test_codes.hpp"

using namespace qeclab;
using qeclab::testing::eight_one_three;

TEST(standard_form, already_standard_input_is_unchanged) {
    // {X0X1, Z0Z1} is already in standard shape up to the Z-block pivoting: r=1, l=1
    StabilizerCode code;
    code.n = 2;
    code.k = 0;
    code.generators = {parse_pauli("XX", 2), parse_pauli("ZZ", 2)};
    auto sf = standard_form(ExtendedCheckMatrix::from_code(code));
    EXPECT_EQ(sf.r, 1);
    EXPECT_EQ(sf.l, 1);
    EXPECT_TRUE(sf.shape_ok());
    EXPECT_EQ(sf.qubit_permutation, (std::vector<int>{0, 1}));
    EXPECT_EQ(format_pauli(sf.std_generators[0]), "XX");
    EXPECT_EQ(format_pauli(sf.std_generators[1]), "ZZ");
}

TEST(standard_form, table1_code) {
    auto code = eight_one_three();
    auto sf = standard_form(ExtendedCheckMatrix::from_code(code));
    EXPECT_EQ(sf.r, 7);
    EXPECT_EQ(sf.l, 0);
    EXPECT_TRUE(sf.shape_ok());

    // group equality including phases, both directions
    std::vector<PauliOperator> back;
    for (const auto& m : sf.std_generators) back.push_back(sf.to_original(m));
    GroupBasis orig(code.generators, code.n);
    GroupBasis std_group(back, code.n);
    for (const auto& g : code.generators)
        EXPECT_TRUE(std_group.contains(g, /*up_to_phase=*/false)) << format_pauli(g);
    for (const auto& m : back)
        EXPECT_TRUE(orig.contains(m, /*up_to_phase=*/false)) << format_pauli(m);
}

TEST(standard_form, phases_land_in_plus_minus_one) {
    auto sf = standard_form(ExtendedCheckMatrix::from_code(eight_one_three()));
    for (int ph : sf.std_phases()) EXPECT_TRUE(ph == 0 || ph == 2) << ph;
}

TEST(standard_form, rank_deficient_input_throws) {
    StabilizerCode code;
    code.n = 2;
    code.k = 0;
    code.generators = {parse_pauli("XX", 2), parse_pauli("XX", 2)};
    EXPECT_THROW(standard_form(ExtendedCheckMatrix::from_code(code)), std::invalid_argument);
}

TEST(standard_form, derive_logicals_match_published_up_to_stabilizer) {
    auto code = eight_one_three();
    auto sf = standard_form(ExtendedCheckMatrix::from_code(code));
    auto [xbars, zbars] = derive_logicals(sf);
    ASSERT_EQ(xbars.size(), 1u);
    ASSERT_EQ(zbars.size(), 1u);

    for (const auto& g : code.generators) {
        EXPECT_EQ(symplectic_product(g, xbars[0]), 0);
        EXPECT_EQ(symplectic_product(g, zbars[0]), 0);
    }
    EXPECT_EQ(symplectic_product(xbars[0], zbars[0]), 1);

    GroupBasis basis(code.generators, code.n);
    EXPECT_TRUE(basis.contains((xbars[0] * code.logical_x[0]).unsigned_op()));
    EXPECT_TRUE(basis.contains((zbars[0] * code.logical_z[0]).unsigned_op()));
}

TEST(standard_form, derive_logicals_single_generator) {
    StabilizerCode code;
    code.n = 2;
    code.k = 1;
    code.generators = {parse_pauli("XX", 2)};
    auto sf = standard_form(ExtendedCheckMatrix::from_code(code));
    auto [xbars, zbars] = derive_logicals(sf);
    ASSERT_EQ(xbars.size(), 1u);
    EXPECT_EQ(symplectic_product(xbars[0], code.generators[0]), 0);
    EXPECT_EQ(symplectic_product(zbars[0], code.generators[0]), 0);
    EXPECT_EQ(symplectic_product(xbars[0], zbars[0]), 1);
}

TEST(standard_form, k0_has_no_logicals) {
    StabilizerCode code;
    code.n = 2;
    code.k = 0;
    code.generators = {parse_pauli("XX", 2), parse_pauli("ZZ", 2)};
    auto [xbars, zbars] = derive_logicals(standard_form(ExtendedCheckMatrix::from_code(code)));
    EXPECT_TRUE(xbars.empty());
    EXPECT_TRUE(zbars.empty());
}

TEST(standard_form, non_css_toy_keeps_group_signs) {
    // {YY, XX} generates {I, XX, YY, -ZZ}; the standard form must carry the
    // -1 on its pure-Z row
    StabilizerCode code;
    code.n = 2;
    code.k = 0;
    code.generators = {parse_pauli("YY", 2), parse_pauli("XX", 2)};
    auto sf = standard_form(ExtendedCheckMatrix::from_code(code));
    EXPECT_EQ(sf.r, 1);
    EXPECT_EQ(sf.l, 1);
    ASSERT_TRUE(sf.shape_ok());
    EXPECT_EQ(format_pauli(sf.std_generators[1]), "-ZZ");
}
