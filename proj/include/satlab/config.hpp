#ifndef SATLAB_CONFIG_HPP_
#define SATLAB_CONFIG_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace satlab {

// Raised when an exhaustive enumeration would exceed its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace config {

inline constexpr std::size_t default_class_cap = 16;  // distinct domain columns
inline constexpr std::size_t default_graph_cap = 20;  // |V| + |T_good| columns
inline constexpr const char* prng_algorithm = "mt19937_64";

// SATLAB_CAP=N overrides both caps.
std::size_t class_cap();
std::size_t graph_cap();

// Worker threads for trial pools; SATLAB_THREADS=N overrides.
std::size_t worker_count();

}  // namespace config
}  // namespace satlab

#endif  // SATLAB_CONFIG_HPP_
