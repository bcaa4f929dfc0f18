#ifndef FOLIAGE_SCENARIO_HPP
#define FOLIAGE_SCENARIO_HPP

#include <stdexcept>
#include <string>

#include "foliage/verifier.hpp"

namespace foliage {

/// Malformed or invalid scenario input. The message carries the file,
/// line and column, and names the offending key.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario files are YAML documents:
//
//   name: rotation                 # optional, defaults to the file stem
//   dimension: 2
//   variables: [x, y]              # optional aliases
//   box: [[-2, 2], [-2, 2]]
//   generators: ["x*dx", "x*dy", "y*dx", "y*dy"]
//   field_x: "x*dy - y*dx"
//   degree_bound: 1                # optional
//   horizon: 1                     # optional, default 1
//   samples:
//     points: [[0.5, 0.25]]
//     grid: {counts: [3, 3], lo: [-1, -1], hi: [1, 1]}   # lo/hi default to box
//   integrator: {method: dopri45, step: 1e-3, abs_tol: 1e-10, rel_tol: 1e-10, max_steps: 1000000}
//   tolerances: {residual_tol: 1e-6, agreement_tol: 1e-6}
//
// `samples` may also be a plain list of points.

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin);

}  // namespace foliage

#endif  // FOLIAGE_SCENARIO_HPP
