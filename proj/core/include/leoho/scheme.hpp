#pragma once

#include <array>
#include <string_view>

namespace leoho {

/// Handover signaling schemes. Proposed is the core-decoupled Xn handover;
/// the others route a path-switch exchange to some anchor.
enum class Scheme { Proposed, NTN, NTN_GS, NTN_SMN };

inline constexpr std::array<Scheme, 4> kAllSchemes{Scheme::Proposed, Scheme::NTN, Scheme::NTN_GS,
                                                   Scheme::NTN_SMN};

std::string_view to_string(Scheme s);
/// Accepts "Proposed", "NTN", "NTN-GS", "NTN-SMN" (case-insensitive). Throws on anything else.
Scheme parse_scheme(std::string_view text);

}  // namespace leoho
