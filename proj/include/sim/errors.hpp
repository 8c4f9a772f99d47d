#pragma once

#include <stdexcept>
#include <string>

namespace sim {

// A formula or guard was evaluated outside its regime of validity
// (e.g. strong-confinement ratio with eta >= 0.3).
struct regime_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical routine could not reach the requested accuracy. Carries the
// best estimate obtained so far.
struct accuracy_error : std::runtime_error {
    accuracy_error(const std::string& what, double best)
        : std::runtime_error(what), best_estimate(best) {}
    double best_estimate;
};

// Scenario / configuration file problem; message carries line numbers.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sim
