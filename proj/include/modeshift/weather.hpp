#pragma once

#include <array>
#include <string>
#include <vector>

#include "modeshift/mode.hpp"
#include "modeshift/rng.hpp"

namespace modeshift {

using WeatherSequence = std::vector<Weather>;

// Labels each day Wet iff rainfall strictly exceeds the threshold, then counts
// empirical transition frequencies. A row with no observed transitions gets
// add-one smoothing (uniform for a two-state chain).
std::array<std::array<double, 2>, 2> estimate_transitions(const std::vector<double>& daily_rain_mm,
                                                          double threshold_mm = 4.4);

// Day 0 is `initial`; each later day is drawn from the previous day's row.
WeatherSequence generate_sequence(const std::array<std::array<double, 2>, 2>& transition,
                                  Weather initial, int days, RngStream& rng);

// Two-column delimited rainfall file: date, mm. The date column is carried
// only for audit; ordering in the file is the day ordering.
std::vector<double> read_rainfall_file(const std::string& path);

void write_weather_sequence(const WeatherSequence& seq, const std::string& path);

}  // namespace modeshift
