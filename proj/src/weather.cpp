#include "modeshift/weather.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace modeshift {

std::array<std::array<double, 2>, 2> estimate_transitions(const std::vector<double>& daily_rain_mm,
                                                          double threshold_mm) {
    if (daily_rain_mm.size() < 2)
        throw std::invalid_argument("estimate_transitions: need at least two days of rainfall");

    auto label = [&](double mm) { return mm > threshold_mm ? Weather::Wet : Weather::Dry; };

    std::array<std::array<double, 2>, 2> counts{};
    for (std::size_t i = 1; i < daily_rain_mm.size(); ++i) {
        const int from = static_cast<int>(label(daily_rain_mm[i - 1]));
        const int to = static_cast<int>(label(daily_rain_mm[i]));
        counts[from][to] += 1.0;
    }

    std::array<std::array<double, 2>, 2> matrix{};
    for (int row = 0; row < 2; ++row) {
        const double total = counts[row][0] + counts[row][1];
        if (total == 0.0) {
            matrix[row][0] = matrix[row][1] = 0.5;  // add-one on zero counts
        } else {
            matrix[row][0] = counts[row][0] / total;
            matrix[row][1] = counts[row][1] / total;
        }
    }
    return matrix;
}

WeatherSequence generate_sequence(const std::array<std::array<double, 2>, 2>& transition,
                                  Weather initial, int days, RngStream& rng) {
    WeatherSequence seq;
    seq.reserve(days);
    Weather state = initial;
    for (int d = 0; d < days; ++d) {
        if (d > 0) {
            const double p_wet = transition[static_cast<int>(state)][0];
            state = rng.next_double() < p_wet ? Weather::Wet : Weather::Dry;
        }
        seq.push_back(state);
    }
    return seq;
}

std::vector<double> read_rainfall_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rainfall file '" + path + "'");
    std::vector<double> mm;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("rainfall file '" + path + "': expected 'date,mm' rows");
        mm.push_back(std::stod(line.substr(comma + 1)));
    }
    return mm;
}

void write_weather_sequence(const WeatherSequence& seq, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write weather sequence to '" + path + "'");
    out << "day,weather\n";
    for (std::size_t d = 0; d < seq.size(); ++d)
        out << d << ',' << weather_name(seq[d]) << '\n';
}

}  // namespace modeshift
