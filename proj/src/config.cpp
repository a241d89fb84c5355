#include "modeshift/config.hpp"

#include <cmath>

namespace modeshift {

namespace {

DistanceSpec lognormal_with_mean(double mean_m, double sigma) {
    DistanceSpec s;
    s.kind = DistanceSpec::Kind::LogNormal;
    s.sigma = sigma;
    s.mu = std::log(mean_m) - 0.5 * sigma * sigma;
    return s;
}

}  // namespace

std::vector<NeighbourhoodConfig> default_neighbourhoods(int count, int agent_count) {
    std::vector<NeighbourhoodConfig> out;
    out.reserve(count);
    const double residents = static_cast<double>(agent_count) / count;
    for (int i = 0; i < count; ++i) {
        NeighbourhoodConfig nb;
        nb.id = "n" + std::string(i < 10 ? "0" : "") + std::to_string(i);
        nb.supportiveness = make_mode_vector(0.85, 0.55, 0.75, 0.65);
        // Per-capita capacity; car is the scarce mode.
        nb.capacity = make_mode_vector(1.0, 1.0, 1.0, 0.35).scaled(residents);
        out.push_back(std::move(nb));
    }
    return out;
}

ScenarioConfig default_config(int agent_count) {
    ScenarioConfig cfg;
    cfg.agent_count = agent_count;

    cfg.subcultures = {
        // A: cycling > driving > walking > public transport
        {"A", make_mode_vector(0.7, 0.9, 0.6, 0.8)},
        // B: driving > public transport > walking > cycling
        {"B", make_mode_vector(0.5, 0.3, 0.7, 0.9)},
        // C: walking = cycling > public transport > driving
        {"C", make_mode_vector(0.9, 0.9, 0.7, 0.4)},
    };

    cfg.distance_cost[static_cast<int>(CommuteCategory::Local)] =
        make_mode_vector(0.1, 0.1, 0.2, 0.2);
    cfg.distance_cost[static_cast<int>(CommuteCategory::City)] =
        make_mode_vector(0.9, 0.5, 0.2, 0.3);
    cfg.distance_cost[static_cast<int>(CommuteCategory::Beyond)] =
        make_mode_vector(1.0, 0.9, 0.3, 0.3);

    cfg.neighbourhoods = default_neighbourhoods(cfg.neighbourhood_count, agent_count);

    // Distance distributions (metres). Means follow the shipped summary
    // statistics; cycling is bimodal.
    cfg.popgen.distance[TransportMode::Walk] = lognormal_with_mean(2640.0, 0.80);
    cfg.popgen.distance[TransportMode::Car] = lognormal_with_mean(9360.0, 0.70);
    cfg.popgen.distance[TransportMode::PublicTransport] = lognormal_with_mean(10720.0, 0.65);
    DistanceSpec cycle;
    cycle.kind = DistanceSpec::Kind::GaussianMixture2;
    cycle.weight1 = 0.55;
    cycle.mean1 = 5200.0;
    cycle.sd1 = 1600.0;
    cycle.mean2 = 10800.0;
    cycle.sd2 = 2400.0;
    cfg.popgen.distance[TransportMode::Cycle] = cycle;

    cfg.popgen.mode_shares_by_category[static_cast<int>(CommuteCategory::Local)] =
        make_mode_vector(0.215, 0.035, 0.315, 0.435);
    cfg.popgen.mode_shares_by_category[static_cast<int>(CommuteCategory::City)] =
        make_mode_vector(0.002, 0.028, 0.711, 0.259);
    cfg.popgen.mode_shares_by_category[static_cast<int>(CommuteCategory::Beyond)] =
        make_mode_vector(0.000, 0.008, 0.452, 0.540);

    cfg.popgen.bicycle_terms = {
        {"sex", "female", -0.15},
        {"sex", "male", 0.15},
        {"age_group", "16_34", 0.25},
        {"age_group", "35_54", 0.05},
        {"age_group", "55_plus", -0.30},
    };

    return cfg;
}

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

void check_unit_vector(ValidationReport& rep, const ModeVector<double>& v,
                       const std::string& what) {
    for (TransportMode m : all_modes) {
        if (!in_unit(v[m]))
            rep.push_back(what + "." + std::string(mode_name(m)) + " outside [0,1]");
    }
}

}  // namespace

ValidationReport validate_config(const ScenarioConfig& cfg) {
    ValidationReport rep;

    if (cfg.agent_count < 1) rep.push_back("agent_count must be positive");
    if (cfg.neighbourhood_count < 1) rep.push_back("neighbourhood_count must be positive");
    if (cfg.total_days < 1) rep.push_back("total_days must be positive");
    if (cfg.network_replicates < 1) rep.push_back("network_replicates must be positive");

    for (int row = 0; row < 2; ++row) {
        double sum = 0.0;
        for (int col = 0; col < 2; ++col) {
            if (cfg.weather.transition[row][col] < 0.0)
                rep.push_back("weather.transition entry negative");
            sum += cfg.weather.transition[row][col];
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            rep.push_back("weather.transition row " + std::to_string(row) +
                          " not stochastic (sums to " + std::to_string(sum) + ")");
    }
    for (TransportMode m : all_modes) {
        if (cfg.weather.modifier_wet[m] < 0.0 || cfg.weather.modifier_dry[m] < 0.0)
            rep.push_back("weather modifier negative for " + std::string(mode_name(m)));
    }

    if (cfg.subcultures.empty()) rep.push_back("at least one subculture required");
    for (const auto& sc : cfg.subcultures)
        check_unit_vector(rep, sc.desirability, "subculture " + sc.id + " desirability");

    for (int c = 0; c < kCategoryCount; ++c)
        check_unit_vector(rep, cfg.distance_cost[c],
                          "distance_cost." +
                              std::string(category_name(static_cast<CommuteCategory>(c))));

    if (static_cast<int>(cfg.neighbourhoods.size()) != cfg.neighbourhood_count)
        rep.push_back("neighbourhoods list size != neighbourhood_count");
    for (const auto& nb : cfg.neighbourhoods) {
        check_unit_vector(rep, nb.supportiveness, "neighbourhood " + nb.id + " supportiveness");
        for (TransportMode m : all_modes) {
            if (nb.capacity[m] < 0.0)
                rep.push_back("neighbourhood " + nb.id + " capacity negative for " +
                              std::string(mode_name(m)));
        }
    }

    if (cfg.intervention.kind != InterventionKind::None) {
        if (cfg.intervention.weekday < 0 || cfg.intervention.weekday > 6)
            rep.push_back("intervention.weekday outside 0..6");
        if (cfg.intervention.start_day >= cfg.total_days)
            rep.push_back("intervention after end (start_day >= total_days)");
        if (cfg.intervention.start_day < 1)
            rep.push_back("intervention.start_day must be >= 1 (day 0 is the initial state)");
    }

    if (cfg.network.small_world_k < 2 || cfg.network.small_world_k % 2 != 0)
        rep.push_back("network.small_world_k must be even and >= 2");
    if (cfg.network.small_world_k >= cfg.agent_count)
        rep.push_back("network.small_world_k must be < agent_count");
    if (cfg.network.small_world_beta < 0.0 || cfg.network.small_world_beta > 1.0)
        rep.push_back("network.small_world_beta outside [0,1]");
    if (cfg.network.ba_m < 1 || cfg.network.ba_m > cfg.network.ba_m0)
        rep.push_back("network requires 1 <= ba_m <= ba_m0");

    for (int c = 0; c < kCategoryCount; ++c) {
        const auto& shares = cfg.popgen.mode_shares_by_category[c];
        double sum = 0.0;
        for (TransportMode m : all_modes) {
            if (shares[m] < 0.0) rep.push_back("popgen mode share negative");
            sum += shares[m];
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            rep.push_back("popgen.mode_shares_by_category." +
                          std::string(category_name(static_cast<CommuteCategory>(c))) +
                          " does not sum to 1");
    }
    if (!(cfg.popgen.provisional_mode_mix.sum() > 0.0))
        rep.push_back("popgen.provisional_mode_mix must have positive total");
    for (TransportMode m : all_modes) {
        const DistanceSpec& d = cfg.popgen.distance[m];
        if (d.kind == DistanceSpec::Kind::LogNormal) {
            if (!(d.sigma > 0.0)) rep.push_back("distance spec sigma must be > 0");
        } else {
            if (!(d.sd1 > 0.0) || !(d.sd2 > 0.0)) rep.push_back("distance mixture sd must be > 0");
            if (!in_unit(d.weight1)) rep.push_back("distance mixture weight1 outside [0,1]");
        }
    }
    if (!(cfg.popgen.ipf_tolerance > 0.0)) rep.push_back("popgen.ipf_tolerance must be > 0");
    if (cfg.popgen.ipf_max_iterations < 1)
        rep.push_back("popgen.ipf_max_iterations must be positive");

    {
        // tie_break must be a permutation of the four modes
        std::array<int, kModeCount> seen{};
        for (TransportMode m : cfg.engine.tie_break) ++seen[static_cast<int>(m)];
        for (int i = 0; i < kModeCount; ++i)
            if (seen[i] != 1) {
                rep.push_back("engine.tie_break is not a permutation of the four modes");
                break;
            }
    }

    if (cfg.analysis.burn_in_days < 0) rep.push_back("analysis.burn_in_days must be >= 0");
    if (cfg.analysis.moving_average_window < 1)
        rep.push_back("analysis.moving_average_window must be >= 1");

    return rep;
}

}  // namespace modeshift
