#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace modeshift {

// The four commute modes. Walk and Cycle count as active travel.
enum class TransportMode : std::uint8_t { Walk = 0, Cycle = 1, PublicTransport = 2, Car = 3 };

inline constexpr int kModeCount = 4;

inline constexpr std::array<TransportMode, kModeCount> all_modes = {
    TransportMode::Walk, TransportMode::Cycle, TransportMode::PublicTransport, TransportMode::Car};

constexpr bool is_active_mode(TransportMode m) {
    return m == TransportMode::Walk || m == TransportMode::Cycle;
}

enum class Weather : std::uint8_t { Wet = 0, Dry = 1 };

enum class CommuteCategory : std::uint8_t { Local = 0, City = 1, Beyond = 2 };

inline constexpr int kCategoryCount = 3;

std::string_view mode_name(TransportMode m);
std::string_view weather_name(Weather w);
std::string_view category_name(CommuteCategory c);

std::optional<TransportMode> parse_mode(std::string_view s);
std::optional<Weather> parse_weather(std::string_view s);
std::optional<CommuteCategory> parse_category(std::string_view s);

// One value per transport mode, indexable by the mode itself. Total by
// construction: every mode always has an entry.
template <typename V>
struct ModeVector {
    std::array<V, kModeCount> values{};

    constexpr V& operator[](TransportMode m) { return values[static_cast<std::size_t>(m)]; }
    constexpr const V& operator[](TransportMode m) const {
        return values[static_cast<std::size_t>(m)];
    }

    constexpr V sum() const {
        V total{};
        for (const V& v : values) total += v;
        return total;
    }

    constexpr ModeVector scaled(V factor) const {
        ModeVector out;
        for (int i = 0; i < kModeCount; ++i) out.values[i] = values[i] * factor;
        return out;
    }

    constexpr ModeVector cwise_mul(const ModeVector& other) const {
        ModeVector out;
        for (int i = 0; i < kModeCount; ++i) out.values[i] = values[i] * other.values[i];
        return out;
    }

    friend constexpr ModeVector operator+(const ModeVector& a, const ModeVector& b) {
        ModeVector out;
        for (int i = 0; i < kModeCount; ++i) out.values[i] = a.values[i] + b.values[i];
        return out;
    }

    friend constexpr bool operator==(const ModeVector& a, const ModeVector& b) {
        return a.values == b.values;
    }
};

template <typename V>
constexpr ModeVector<V> make_mode_vector(V walk, V cycle, V public_transport, V car) {
    ModeVector<V> v;
    v[TransportMode::Walk] = walk;
    v[TransportMode::Cycle] = cycle;
    v[TransportMode::PublicTransport] = public_transport;
    v[TransportMode::Car] = car;
    return v;
}

}  // namespace modeshift
