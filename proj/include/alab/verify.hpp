#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alab {

struct CheckResult {
    std::string name;
    bool pass;
    double measured;
    double threshold;
    std::string detail;
};

// Gradient-oracle equivalence: analytic derivatives (all APALU partials,
// every baseline derivative, and composite tape gradients) against central
// finite differences.
std::vector<CheckResult> verify_gradients();

// Range, continuity, strict monotonicity, exact algebraic identities, and
// the bounded / non-vanishing derivative window scans.
std::vector<CheckResult> verify_properties();

// Function-fitting demonstrations: a width-32 single-hidden-layer network
// reaching small train MSE on sin, plus a second continuous target.
std::vector<CheckResult> verify_approximation();

std::vector<CheckResult> verify_suite(const std::string& suite); // gradients|properties|approximation|all

// Prints one verdict line per check; returns the number of failures.
int print_results(const std::vector<CheckResult>& results, std::ostream& os);

} // namespace alab
