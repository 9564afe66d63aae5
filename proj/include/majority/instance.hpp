#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "majority/random.hpp"
#include "majority/types.hpp"

namespace majority {

/// Hidden assignment of opaque color ids to n balls.
///
/// Only the comparison oracle and ground-truth auditors read colors; the
/// algorithms see ball indices and equality answers. Color ids are compared
/// for equality only.
class Instance {
 public:
  explicit Instance(std::vector<ColorId> colors);

  std::size_t size() const { return colors_.size(); }
  ColorId color(Ball x) const { return colors_[x]; }
  const std::vector<ColorId>& colors() const { return colors_; }

 private:
  std::vector<ColorId> colors_;
};

namespace dist {
struct Binary {
  double p = 0.5;
};
// Explicit fractions plus `rest` colors sharing the leftover mass evenly.
struct Profile {
  std::vector<double> fractions;
  std::size_t rest = 0;
};
// Exact class sizes; must sum to n.
struct Counts {
  std::vector<std::size_t> counts;
};
struct Distinct {};
// Each ball gets one of k colors uniformly; k == 0 means k = n.
struct Uniform {
  std::size_t k = 0;
};
}  // namespace dist

using DistSpec = std::variant<dist::Binary, dist::Profile, dist::Counts, dist::Distinct, dist::Uniform>;

// Grammar: binary:p=0.5 | profile:0.48,rest=100 | profile:5,3 | distinct | uniform:k=n | uniform:k=7
DistSpec parse_dist_spec(std::string_view text);
std::string to_string(const DistSpec& spec);

// Builds an instance of n balls drawn from spec. Throws ParseError for
// fractions that do not sum to 1 or counts that do not sum to n.
Instance generate(const DistSpec& spec, std::size_t n, RandomStream& rng);

// Line 1: n. Lines 2..n+1: one unsigned color id per line.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& instance);

// Color class sizes, largest first.
std::vector<std::size_t> color_counts(const Instance& instance);

}  // namespace majority
