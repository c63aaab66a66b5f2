#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ecadr {

/// Simulated time in integer microseconds.
using Micros = std::int64_t;

/// Access categories. The numeric order [BK, BE, VI, VO] is the index order of
/// every per-AC array in the project.
enum class Ac : std::uint8_t { BK = 0, BE = 1, VI = 2, VO = 3 };

inline constexpr std::size_t kNumAcs = 4;
inline constexpr std::array<Ac, kNumAcs> kAllAcs = {Ac::BK, Ac::BE, Ac::VI, Ac::VO};

template <typename T>
using PerAc = std::array<T, kNumAcs>;

constexpr std::size_t index(Ac ac) { return static_cast<std::size_t>(ac); }

/// Higher value wins an internal (virtual) collision: VO > VI > BE > BK.
constexpr int priority(Ac ac) { return static_cast<int>(ac); }

constexpr bool is_delay_sensitive(Ac ac) { return ac == Ac::VO || ac == Ac::VI; }

/// Case-insensitive key for enum names; drops '_', '-', '/' and spaces.
std::string normalize_token(std::string_view s);

std::string_view to_string(Ac ac);
std::optional<Ac> parse_ac(std::string_view s);

enum class Protocol : std::uint8_t { CsmaCa, Eca, EcaDr };

std::string_view to_string(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view s);

enum class TrafficProfile : std::uint8_t { Saturated, Unsaturated };

std::string_view to_string(TrafficProfile p);
std::optional<TrafficProfile> parse_profile(std::string_view s);

}  // namespace ecadr
