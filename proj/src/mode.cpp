#include "modeshift/mode.hpp"

namespace modeshift {

std::string_view mode_name(TransportMode m) {
    switch (m) {
        case TransportMode::Walk: return "walk";
        case TransportMode::Cycle: return "cycle";
        case TransportMode::PublicTransport: return "public_transport";
        case TransportMode::Car: return "car";
    }
    return "?";
}

std::string_view weather_name(Weather w) { return w == Weather::Wet ? "wet" : "dry"; }

std::string_view category_name(CommuteCategory c) {
    switch (c) {
        case CommuteCategory::Local: return "local";
        case CommuteCategory::City: return "city";
        case CommuteCategory::Beyond: return "beyond";
    }
    return "?";
}

std::optional<TransportMode> parse_mode(std::string_view s) {
    for (TransportMode m : all_modes)
        if (s == mode_name(m)) return m;
    return std::nullopt;
}

std::optional<Weather> parse_weather(std::string_view s) {
    if (s == "wet") return Weather::Wet;
    if (s == "dry") return Weather::Dry;
    return std::nullopt;
}

std::optional<CommuteCategory> parse_category(std::string_view s) {
    if (s == "local") return CommuteCategory::Local;
    if (s == "city") return CommuteCategory::City;
    if (s == "beyond") return CommuteCategory::Beyond;
    return std::nullopt;
}

}  // namespace modeshift
