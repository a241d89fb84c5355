#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modeshift/config.hpp"
#include "modeshift/graph.hpp"
#include "modeshift/mode.hpp"
#include "modeshift/popgen.hpp"
#include "modeshift/weather.hpp"

namespace modeshift {

struct DailyTrace {
    int run_id = 0;
    std::string scenario;
    int day = 0;
    int weekday = 0;  // day % 7, day 0 is a Monday
    Weather weather = Weather::Dry;
    ModeVector<std::int64_t> counts;

    std::int64_t active_count() const {
        return counts[TransportMode::Walk] + counts[TransportMode::Cycle];
    }
    std::int64_t total_count() const { return counts.sum(); }
};

// Replicate-independent simulation inputs: agent attributes, ownership,
// neighbourhood and subculture assignment, and the initial habit state.
// Structure-of-arrays so the daily loop streams through memory.
struct SimulationState {
    int agent_count = 0;

    std::vector<std::uint8_t> subculture;       // index into cfg.subcultures
    std::vector<std::int32_t> neighbourhood;
    std::vector<std::uint8_t> category;         // CommuteCategory
    std::vector<double> weather_sensitivity;
    std::vector<double> consistency;
    std::vector<double> social_connectivity;
    std::vector<double> subculture_connectivity;
    std::vector<double> neighbourhood_connectivity;
    std::vector<double> habit_decay;
    std::vector<std::uint8_t> bicycle_owner;
    std::vector<std::uint8_t> car_owner;
    std::vector<std::uint8_t> initial_mode;

    // Agents of each neighbourhood in ascending id order; positions are the
    // node ids of that neighbourhood's neighbour network.
    std::vector<std::vector<std::int32_t>> residents;
};

// Random assignment of neighbourhood, subculture, and unit-interval
// attributes; habit starts as the one-hot of the initial mode (implicitly:
// habit state lives inside the runners). Streams are keyed per agent, so the
// state is identical for every replicate and thread count.
SimulationState init_state(const std::vector<SynthAgentRecord>& population,
                           const ScenarioConfig& cfg);

struct ReplicateNetworks {
    Graph global;                  // small-world network over all agents
    std::vector<Graph> neighbour;  // one preferential-attachment graph per neighbourhood
};

// Replicate r regenerates the global network from stream ("net-global", r)
// and, unless cfg.network.regenerate_neighbour_networks is false, the
// neighbour networks from ("net-nbhd", r * neighbourhood_count + g).
ReplicateNetworks generate_networks(const SimulationState& state, const ScenarioConfig& cfg,
                                    int replicate);

struct Scenario {
    std::string id;
    bool apply_intervention = false;
};

inline Scenario control_scenario() { return {"control", false}; }
inline Scenario intervention_scenario() { return {"cfd", true}; }

// Runs the daily decision loop for cfg.total_days days. Day 0 records the
// initial modes; each later day applies the synchronous update (decisions
// read day t-1 choices, congestion, and resolve inputs). The agent loop is
// OpenMP-parallel when `parallel` is set; traces are identical for any
// thread count.
std::vector<DailyTrace> run_scenario(const SimulationState& state,
                                     const ReplicateNetworks& networks,
                                     const WeatherSequence& weather, const ScenarioConfig& cfg,
                                     const Scenario& scenario, int run_id, bool parallel = true);

// Trace file round trip. Columns:
// run_id,scenario,day,weekday,weather,n_walk,n_cycle,n_pt,n_car
void write_traces(const std::vector<DailyTrace>& traces, const std::string& path);
std::vector<DailyTrace> read_traces(const std::string& path);

}  // namespace modeshift
