#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace topamp {

enum class Errc {
    puncture_collision,
    endpoint_mismatch,
    not_composable,
    invalid_class,
    degenerate_target,
    nonpositive_time,
    mixed_endpoints,
    coincidence,
    invalid_step,
    zero_angular_velocity,
    min_distance_violated,
    invalid_argument,
};

constexpr std::string_view to_string(Errc e) noexcept {
    switch (e) {
    case Errc::puncture_collision: return "PunctureCollision";
    case Errc::endpoint_mismatch: return "EndpointMismatch";
    case Errc::not_composable: return "NotComposable";
    case Errc::invalid_class: return "InvalidClass";
    case Errc::degenerate_target: return "DegenerateTarget";
    case Errc::nonpositive_time: return "NonpositiveTime";
    case Errc::mixed_endpoints: return "MixedEndpoints";
    case Errc::coincidence: return "Coincidence";
    case Errc::invalid_step: return "InvalidStep";
    case Errc::zero_angular_velocity: return "ZeroAngularVelocity";
    case Errc::min_distance_violated: return "MinDistanceViolated";
    case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI) can branch on the kind without string matching.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace topamp
