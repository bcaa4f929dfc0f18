#ifndef FOLIAGE_EXECUTION_HPP
#define FOLIAGE_EXECUTION_HPP

namespace foliage {

/// Selects the OpenMP kernel or the serial reference loop. Both produce
/// identical results; the serial path is kept for testing and benchmarking.
enum class Execution { serial, parallel };

}  // namespace foliage

#endif  // FOLIAGE_EXECUTION_HPP
