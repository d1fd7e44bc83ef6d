#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace graphtron {

struct PropertyResult {
  std::string name;
  bool passed = true;
  // Informational results are reported but never fail the suite.
  bool informational = false;
  std::string detail;
};

struct ValidationOptions {
  std::size_t rounds = 10000;
  std::size_t regularity_samples = 10000;
  std::size_t gradient_points = 1000;
  std::size_t monte_carlo_samples = 1000000;
  std::size_t random_graphs = 100;
  std::uint64_t seed = 2021;
};

std::vector<PropertyResult> run_property_suite(const ValidationOptions& options = {});

// One line per property; returns 0 iff every asserted property passed.
int print_property_report(std::ostream& out, const std::vector<PropertyResult>& results);

}  // namespace graphtron
