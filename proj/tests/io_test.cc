#include "qeclab/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_codes.hpp"

using namespace qeclab;

namespace {

std::string repo_path(const std::string& rel) { return std::string(QECLAB_REPO_DIR) + "/" + rel; }

}  // namespace

TEST(codefile, shipped_definition_loads_and_validates) {
    auto file = load_code_definition(repo_path("codes/eight_one_three.code"));
    EXPECT_EQ(file.name, "bare-813");
    EXPECT_EQ(file.n, 8);
    EXPECT_EQ(file.k, 1);
    ASSERT_EQ(file.stabilizers.size(), 7u);

    auto code = file.to_code();
    EXPECT_TRUE(validate(code).ok());

    auto expected = qeclab::testing::eight_one_three();
    for (int i = 0; i < 7; ++i) EXPECT_EQ(code.generators[i], expected.generators[i]);
    EXPECT_EQ(code.logical_x[0], expected.logical_x[0]);
    EXPECT_EQ(code.logical_z[0], expected.logical_z[0]);

    auto ft = file.schedule("ft");
    ASSERT_TRUE(ft.has_value());
    EXPECT_EQ(*ft, qeclab::testing::ft_schedule(code));

    auto table1 = file.schedule("table1");
    ASSERT_TRUE(table1.has_value());
    EXPECT_EQ(*table1, ascending_schedule(code));

    EXPECT_FALSE(file.schedule("nope").has_value());
}

TEST(codefile, round_trip) {
    auto file = load_code_definition(repo_path("codes/eight_one_three.code"));
    std::istringstream in(file.format());
    auto again = parse_code_definition(in);
    EXPECT_EQ(again.name, file.name);
    EXPECT_EQ(again.n, file.n);
    EXPECT_EQ(again.k, file.k);
    EXPECT_EQ(again.stabilizers, file.stabilizers);
    EXPECT_EQ(again.logical_x, file.logical_x);
    EXPECT_EQ(again.logical_z, file.logical_z);
    EXPECT_EQ(again.schedules, file.schedules);
    EXPECT_EQ(again.format(), file.format());
}

TEST(codefile, parse_errors_carry_line_numbers) {
    std::istringstream bad1("name: x\nn: 2\nk 0\n");
    try {
        parse_code_definition(bad1);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line_number, 3);
    }

    std::istringstream bad2("n: 2\nk: 0\nstabilizer: XQ\n");
    try {
        parse_code_definition(bad2);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line_number, 3);
        EXPECT_NE(std::string(e.what()).find("not a Pauli letter"), std::string::npos);
    }

    std::istringstream bad3("  Z0 X1\nn: 1\nk: 0\n");
    try {
        parse_code_definition(bad3);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line_number, 1);
    }
}

TEST(codefile, trivial_code_with_no_stabilizers) {
    std::istringstream in("name: trivial\nn: 1\nk: 1\n");
    auto file = parse_code_definition(in);
    auto code = file.to_code();
    EXPECT_TRUE(validate(code).ok());
    EXPECT_TRUE(code.generators.empty());
}

TEST(compact_pauli, parse) {
    auto p = parse_pauli_compact("Z1 X3 X4", 8);
    EXPECT_EQ(format_pauli(p), "IZIXXIII");
    EXPECT_TRUE(parse_pauli_compact("I", 4).is_identity_bits());
    EXPECT_THROW(parse_pauli_compact("Q1", 4), std::invalid_argument);
    EXPECT_THROW(parse_pauli_compact("X", 4), std::invalid_argument);
}

TEST(json_export, lookup_table_is_deterministic_and_well_formed) {
    auto code = qeclab::testing::eight_one_three();
    auto sched = qeclab::testing::ft_schedule(code);
    auto table = build_lookup_table(code, sched);
    auto j1 = syndrome_table_json(code, sched, table);
    auto j2 = syndrome_table_json(code, sched, table);
    EXPECT_EQ(j1.dump(), j2.dump());

    EXPECT_EQ(j1.at("code"), "bare-813");
    EXPECT_EQ(j1.at("lookup").at("0000000").at("correction"), "IIIIIIII");
    EXPECT_EQ(j1.at("lookup").at("1110010").at("correction"), "XIIIIIII");
    EXPECT_EQ(j1.at("single_qubit").at("X0"), "1110010");
    // every lookup entry's correction reproduces its key
    for (auto& [syn, entry] : j1.at("lookup").items()) {
        auto e = parse_pauli(entry.at("correction").get<std::string>(), 8);
        EXPECT_EQ(syndrome_of(code, e).to_string(), syn);
    }
}

TEST(csv, header_and_row_shape) {
    EXPECT_EQ(csv_header(),
              "p,noise,method,shots,batches,logical_mean,logical_min,logical_max,total_mean,"
              "total_min,total_max,fidelity_mean");
    ErrorRatePoint pt;
    pt.p = 1e-3;
    pt.shots = 100;
    pt.batches = 2;
    pt.logical_mean = 0.25;
    std::string row = csv_row(pt, NoiseKind::StandardDepolarizing, Method::Practical);
    EXPECT_NE(row.find("std-dep"), std::string::npos);
    EXPECT_NE(row.find("practical"), std::string::npos);

    std::istringstream in(csv_header() + "\n" + row + "\n");
    auto rows = parse_results_csv(in);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].p, 1e-3);
    EXPECT_EQ(rows[0].shots, 100);
}

TEST(csv, rejects_wrong_header) {
    std::istringstream in("nope\n");
    EXPECT_THROW(parse_results_csv(in), ParseError);
}
