#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ho/verification.hpp"

namespace ho {

/// A scalar property with a one-sided threshold (slopes, convergence orders, ratios).
struct PropertyCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct SuiteReport {
    explicit SuiteReport(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    std::vector<IdentityReport> reports;
    std::vector<PropertyCheck> properties;

    void add(IdentityReport r);
    /// value <= threshold when `at_most`, value >= threshold otherwise.
    void check(std::string what, double value, double threshold, bool at_most);
    const IdentityReport* report(const std::string& name) const;
};

struct SuiteOptions {
    /// Overrides the coupling sweep of a suite with a single value.
    std::optional<double> g;
    /// Three-particle cases of the duality suite (the slow ones).
    bool three_particles = true;
};

const std::vector<std::string>& suite_names();

/// Runs a named suite. Throws DomainError for an unknown name or a coupling
/// outside the suite's range; convergence failures propagate.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace ho
