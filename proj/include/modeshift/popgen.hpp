#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "modeshift/config.hpp"
#include "modeshift/mode.hpp"
#include "modeshift/rng.hpp"

namespace modeshift {

struct PopgenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense n-dimensional contingency table with named dimensions and categories.
// Cells are stored row-major in dimension order.
struct SeedTable {
    std::vector<std::string> dimension_names;
    std::vector<std::vector<std::string>> categories;  // per dimension
    std::vector<double> cells;                         // non-negative weights

    std::size_t cell_count() const;
    std::size_t dimension_size(std::size_t d) const { return categories[d].size(); }
    // Index of the category along dimension d for flat cell index `cell`.
    std::size_t coordinate(std::size_t cell, std::size_t d) const;
};

// Target counts per category, one vector per dimension of the seed table.
struct MarginalSet {
    std::vector<std::vector<double>> targets;  // [dimension][category]
};

struct IpfResult {
    std::vector<double> weights;
    bool converged = false;
    int iterations = 0;
    double total_absolute_error = 0.0;
    // Per-sweep total absolute error, for monotonicity checks.
    std::vector<double> error_history;
};

// Classical iterative proportional fitting. Zero seed cells stay zero. A
// positive target over an all-zero slice raises PopgenError naming the slice.
IpfResult ipf_fit(const SeedTable& seed, const MarginalSet& targets, double tol, int max_iter);

// Truncate-replicate-sample integerisation: floor every weight, then top up
// round(total) - sum(floors) units by systematic sampling over the fractional
// parts (inclusion probability proportional to fractional part). Totals are
// preserved exactly: sum(counts) == llround(sum(weights)).
std::vector<std::int64_t> trs_integerise(const std::vector<double>& weights, RngStream& rng);

// logistic(intercept + sum of matching term coefficients)
double bicycle_ownership_probability(const PopgenConfig& cfg,
                                     const std::map<std::string, std::string>& attributes);

// Rejection-samples from the mode's distance distribution until the draw
// falls in (0, bound]. Bounds: walk 10 km, cycle 40 km, others 80 km.
double sample_commute_distance(TransportMode mode, const DistanceSpec& spec, RngStream& rng);

double distance_bound_m(TransportMode mode);

// Total ordered partition of (0, inf): local up to 4943 m, city up to
// 20059 m, beyond above that.
CommuteCategory classify_commute(double distance_m);

struct SynthAgentRecord {
    std::int64_t id = 0;
    std::map<std::string, std::string> attributes;  // seed-table dimensions
    bool bicycle_owner = false;
    bool car_owner = false;
    double commute_distance_m = 0.0;
    CommuteCategory commute_category = CommuteCategory::Local;
    TransportMode initial_mode = TransportMode::Walk;
};

// Built-in toy seed table and consistent marginals scaled to agent_count,
// used when the config names no input files.
SeedTable builtin_seed_table();
MarginalSet builtin_marginals(const SeedTable& seed, int agent_count);

// Full pipeline: IPF -> TRS -> expansion -> ownership -> distance ->
// category -> initial mode (with ownership repair). Deterministic given the
// master seed.
std::vector<SynthAgentRecord> synthesize_population(const ScenarioConfig& cfg);

// Delimited-file round trip. Column layout: id, one column per seed
// dimension, bicycle_owner, car_owner, commute_distance_m, commute_category,
// initial_mode.
void write_population(const std::vector<SynthAgentRecord>& records, const std::string& path);
std::vector<SynthAgentRecord> read_population(const std::string& path);

SeedTable read_seed_table(const std::string& path);
MarginalSet read_marginals(const SeedTable& seed, const std::string& path);

}  // namespace modeshift
