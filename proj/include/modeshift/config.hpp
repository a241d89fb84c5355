#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modeshift/mode.hpp"

namespace modeshift {

struct Subculture {
    std::string id;
    ModeVector<double> desirability;  // each in [0, 1]
};

enum class InterventionKind : std::uint8_t { None, CarFreeDays };

// Recurring ban of one mode on a fixed weekday from start_day onward.
// Day 0 is a Monday; weekday w matches days with day % 7 == w.
struct InterventionSpec {
    InterventionKind kind = InterventionKind::CarFreeDays;
    TransportMode banned_mode = TransportMode::Car;
    int weekday = 2;  // Wednesday
    int start_day = 365;

    bool bans(TransportMode m, int day) const {
        return kind == InterventionKind::CarFreeDays && m == banned_mode && day >= start_day &&
               day % 7 == weekday;
    }
};

struct WeatherConfig {
    // Row-stochastic transition matrix indexed [from][to] with
    // Wet = 0, Dry = 1.
    std::array<std::array<double, 2>, 2> transition = {{{0.5, 0.5}, {0.18, 0.82}}};
    Weather initial = Weather::Dry;
    ModeVector<double> modifier_wet = make_mode_vector(1.5, 2.0, 1.1, 1.0);
    ModeVector<double> modifier_dry = make_mode_vector(1.0, 1.0, 1.0, 1.0);
    // Optional: estimate `transition` from a daily-rainfall file at load time.
    std::string rainfall_file;
    double rain_threshold_mm = 4.4;

    const ModeVector<double>& modifier(Weather w) const {
        return w == Weather::Wet ? modifier_wet : modifier_dry;
    }
};

struct NeighbourhoodConfig {
    std::string id;
    ModeVector<double> supportiveness;        // each in [0, 1]
    ModeVector<double> capacity;              // journeys per day before congestion
};

struct NetworkConfig {
    int small_world_k = 10;
    double small_world_beta = 0.1;
    int ba_m0 = 3;
    int ba_m = 3;
    // When false, neighbour networks are generated once and shared across
    // replicates; only the global small-world network is regenerated.
    bool regenerate_neighbour_networks = true;
};

// Commute-distance distribution for one mode, in metres.
struct DistanceSpec {
    enum class Kind : std::uint8_t { LogNormal, GaussianMixture2 };
    Kind kind = Kind::LogNormal;
    // LogNormal
    double mu = 0.0;
    double sigma = 1.0;
    // GaussianMixture2
    double weight1 = 0.5;
    double mean1 = 0.0, sd1 = 1.0;
    double mean2 = 0.0, sd2 = 1.0;
};

// One additive term of the bicycle-access logistic model.
struct LogisticTerm {
    std::string dimension;
    std::string category;
    double coefficient = 0.0;
};

struct PopgenConfig {
    // Empty paths select the built-in toy seed table and marginals.
    std::string seed_table_path;
    std::string marginals_path;
    double ipf_tolerance = 1e-7;
    int ipf_max_iterations = 200;
    double bicycle_intercept = -0.1403;
    std::vector<LogisticTerm> bicycle_terms;
    // Car ownership comes from this seed dimension; the named category means
    // "no car".
    std::string car_usage_dimension = "car_usage";
    std::string car_none_category = "none";
    ModeVector<DistanceSpec> distance;
    // Mix used to pick which mode's distance distribution a record draws from.
    ModeVector<double> provisional_mode_mix = make_mode_vector(0.22, 0.03, 0.45, 0.30);
    // Per commute category, the initial-mode shares (rows sum to 1).
    std::array<ModeVector<double>, kCategoryCount> mode_shares_by_category;
};

enum class WeatherCostMode : std::uint8_t {
    // cost factor = 1 + sensitivity * resolve * (modifier - 1)
    Interpolated,
    // cost factor = sensitivity * resolve * modifier
    Literal,
};

struct EngineConfig {
    // Deterministic tie-break: earlier modes win ties in ranks and choices.
    std::array<TransportMode, kModeCount> tie_break = {
        TransportMode::Walk, TransportMode::Cycle, TransportMode::PublicTransport,
        TransportMode::Car};
    WeatherCostMode weather_cost_mode = WeatherCostMode::Interpolated;
};

struct AnalysisConfig {
    int burn_in_days = 365;          // excluded after the intervention day
    int moving_average_window = 14;  // for report output
};

struct ScenarioConfig {
    int agent_count = 111166;
    int neighbourhood_count = 20;
    int total_days = 1825;
    std::uint64_t master_seed = 42;
    int network_replicates = 200;
    std::vector<Subculture> subcultures;
    WeatherConfig weather;
    // Indexed by CommuteCategory; entries in [0, 1].
    std::array<ModeVector<double>, kCategoryCount> distance_cost;
    std::vector<NeighbourhoodConfig> neighbourhoods;
    InterventionSpec intervention;
    NetworkConfig network;
    PopgenConfig popgen;
    EngineConfig engine;
    AnalysisConfig analysis;
};

// Fully-populated defaults. Neighbourhood capacities scale with the expected
// residents per neighbourhood (agent_count / neighbourhood_count).
ScenarioConfig default_config(int agent_count = 111166);

std::vector<NeighbourhoodConfig> default_neighbourhoods(int count, int agent_count);

using ValidationReport = std::vector<std::string>;

// Pure: collects invariant violations, never mutates. Empty report = valid.
ValidationReport validate_config(const ScenarioConfig& cfg);

}  // namespace modeshift
