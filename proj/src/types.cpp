#include "ecadr/types.hpp"

#include <algorithm>
#include <cctype>

namespace ecadr {

// Lower-case and drop separators so "EcaDr", "eca_dr" and "ECA-DR" all match.
std::string normalize_token(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '-' || c == '/' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string_view to_string(Ac ac) {
  switch (ac) {
    case Ac::BK: return "BK";
    case Ac::BE: return "BE";
    case Ac::VI: return "VI";
    case Ac::VO: return "VO";
  }
  return "?";
}

std::optional<Ac> parse_ac(std::string_view s) {
  const auto n = normalize_token(s);
  for (Ac ac : kAllAcs) {
    if (n == normalize_token(to_string(ac))) return ac;
  }
  return std::nullopt;
}

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::CsmaCa: return "CsmaCa";
    case Protocol::Eca: return "Eca";
    case Protocol::EcaDr: return "EcaDr";
  }
  return "?";
}

std::optional<Protocol> parse_protocol(std::string_view s) {
  const auto n = normalize_token(s);
  if (n == "csmaca" || n == "dcf") return Protocol::CsmaCa;
  if (n == "eca" || n == "csmaeca") return Protocol::Eca;
  if (n == "ecadr" || n == "csmaecadr") return Protocol::EcaDr;
  return std::nullopt;
}

std::string_view to_string(TrafficProfile p) {
  return p == TrafficProfile::Saturated ? "Saturated" : "Unsaturated";
}

std::optional<TrafficProfile> parse_profile(std::string_view s) {
  const auto n = normalize_token(s);
  if (n == "saturated") return TrafficProfile::Saturated;
  if (n == "unsaturated") return TrafficProfile::Unsaturated;
  return std::nullopt;
}

}  // namespace ecadr
