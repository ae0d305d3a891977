#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace qil {

enum class PropertyId {
    a, b, b_prime, c, d, e, e_prime, f, g, h,
    holevo, dpi, zeroth, second_first_step, chi_identity, observer_agreement,
};

std::string property_name(PropertyId id);
PropertyId property_from_name(const std::string& name);

struct PropertyCheckConfig {
    PropertyId id = PropertyId::a;
    std::size_t trials = 500;
    std::vector<std::size_t> dims = {2, 2, 2, 3, 4};  // per-subsystem dim pool
    std::vector<std::size_t> ranks = {1, 2, 0};       // 0 = full rank
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
};

struct PropertyResult {
    PropertyId id = PropertyId::a;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double worst_margin = 0;       // signed; negative beyond tolerance = violation
    std::uint64_t worst_seed = 0;  // trial seed reproducing worst_margin
    double tolerance = 0;
    std::string error;             // nonempty if the check itself failed

    nlohmann::json to_json() const;
};

struct SuiteReport {
    std::vector<PropertyResult> results;
    bool pass = false;

    nlohmann::json to_json() const;
};

/// Signed margin of a single trial; negative means the asserted relation is
/// violated by that amount. Deterministic in trial_seed, so the worst trial
/// can be replayed from the report.
double evaluate_property_margin(PropertyId id, std::uint64_t trial_seed,
                                const PropertyCheckConfig& cfg);

PropertyResult check_property(const PropertyCheckConfig& cfg);

SuiteReport run_suite(const std::vector<PropertyCheckConfig>& configs);

/// One config per property id, seeded by splitting `seed` per property.
/// trials_override = 0 keeps each property's default trial count.
std::vector<PropertyCheckConfig> default_suite(std::uint64_t seed,
                                               std::size_t trials_override = 0,
                                               double tolerance = 1e-9);

}  // namespace qil
