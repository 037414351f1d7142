#ifndef SATLAB_SUITES_HPP_
#define SATLAB_SUITES_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "satlab/core.hpp"
#include "satlab/io.hpp"

namespace satlab {

struct SuiteReport {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // ordered by trial
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
};

// Random class of trial t in a seeded suite: |X| in 2..6, |H| in 1..12.
HypothesisClass suite_class(std::uint64_t seed, std::size_t trial);

// Largest "nice" eps not above `bound` that is still below 1/2.
Rational eps_at_most(const Rational& bound);

SuiteReport preservation_suite(std::uint64_t seed, std::size_t trials);
SuiteReport backtrack_suite(std::uint64_t seed, std::size_t trials);
SuiteReport duality_suite(std::uint64_t seed, std::size_t trials);
SuiteReport symmetry_suite(std::uint64_t seed, std::size_t trials);
SuiteReport regimes_suite(std::uint64_t seed, std::size_t trials);
SuiteReport extraction_suite(std::uint64_t seed, std::size_t trials);

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t trials);

std::string to_csv(const SuiteReport& r);
Json to_json(const SuiteReport& r);

}  // namespace satlab

#endif  // SATLAB_SUITES_HPP_
