#pragma once

#include <string>
#include <vector>

#include "kgs/harness.hpp"

namespace kgs {

/// "1,10,100" -> {1, 10, 100}.
std::vector<double> parse_number_list(const std::string& text, const std::string& what);

/// "4:10" -> {4, 10}.
std::pair<int, int> parse_dyadic_range(const std::string& text);

/// Applies a JSON config document on top of `base`. Unknown keys are
/// rejected. Recognised keys: scheme, c, tau, tau_dyadic, n, dim, T,
/// theta_psi, theta_z, seed, norm_r, dealias, out.
RunConfig apply_config_json(const std::string& text, RunConfig base);
RunConfig load_config(const std::string& path, RunConfig base);

/// JSON echo of a configuration (as embedded in reports).
std::string config_json(const RunConfig& cfg);

}  // namespace kgs
