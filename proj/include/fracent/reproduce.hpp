#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fracent {

struct PrintedNumber {
    double value = 0.0;
    // one unit in the last printed digit
    double unit = 0.0;
    int significant = 0;
};

// "0.298" -> 0.298 / 1e-3 / 3; "8.7e-6" -> 8.7e-6 / 1e-7 / 2
PrintedNumber parse_printed(const std::string& text);

// |v - p| < one unit in the last printed digit
bool matches_printed(double v, const PrintedNumber& p);
// half-unit rule at the given number of significant figures
bool matches_sig_figs(double v, double p, int figures);

struct CellOutcome {
    std::string id;
    std::string quantity;
    std::optional<double> computed;  // empty when the integral diverged
    std::string printed;
    std::string status;  // match, mismatch, diverged, discrepant, ...
    bool expected_discrepant = false;
    bool pass = false;
    std::string note;
};

struct FixtureReport {
    std::string fixture;
    std::string title;
    std::vector<CellOutcome> cells;
    int passed = 0;
    int failed = 0;
};

// fixture name such as "table1" or "example_4_3"; data_dir holds expectations/ and the CSV data
FixtureReport reproduce_fixture(const std::string& data_dir, const std::string& fixture);

// "1".."6" -> table<N>, "2.1" -> example_2_1, "2.4" -> table3 (same law and cells)
std::string fixture_for_table(const std::string& table);
std::string fixture_for_example(const std::string& example);

std::string default_data_dir();

} // namespace fracent
