#include "majority/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace majority {

Instance::Instance(std::vector<ColorId> colors) : colors_(std::move(colors)) {
  if (colors_.empty()) throw ContractViolation("Instance: n must be at least 1");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s, std::string_view what) {
  std::string owned(s);
  char* end = nullptr;
  const double v = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(v)) {
    throw ParseError("invalid number for " + std::string(what) + ": '" + owned + "'");
  }
  return v;
}

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("invalid count for " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

// Splits n into integer parts proportional to weights (largest remainder).
std::vector<std::size_t> apportion(const std::vector<double>& weights, std::size_t n) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::size_t> counts(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = weights[i] / total * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; assigned < n; ++r, ++assigned) ++counts[remainders[r % remainders.size()].second];
  return counts;
}

Instance from_counts(const std::vector<std::size_t>& counts, RandomStream& rng) {
  std::vector<ColorId> colors;
  for (std::size_t c = 0; c < counts.size(); ++c) colors.insert(colors.end(), counts[c], static_cast<ColorId>(c));
  shuffle(colors, rng);
  return Instance(std::move(colors));
}

}  // namespace

DistSpec parse_dist_spec(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string_view kind = trim(text.substr(0, colon));
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : trim(text.substr(colon + 1));

  if (kind == "distinct") {
    if (!args.empty()) throw ParseError("distinct takes no arguments");
    return dist::Distinct{};
  }
  if (kind == "binary") {
    dist::Binary b;
    if (!args.empty()) {
      if (args.substr(0, 2) != "p=") throw ParseError("binary expects p=<prob>");
      b.p = parse_double(args.substr(2), "binary p");
    }
    if (b.p < 0.0 || b.p > 1.0) throw ParseError("binary p must lie in [0, 1]");
    return b;
  }
  if (kind == "uniform") {
    dist::Uniform u;
    if (!args.empty()) {
      if (args.substr(0, 2) != "k=") throw ParseError("uniform expects k=<colors> or k=n");
      const auto value = args.substr(2);
      u.k = value == "n" ? 0 : parse_size(value, "uniform k");
      if (value != "n" && u.k == 0) throw ParseError("uniform k must be positive");
    }
    return u;
  }
  if (kind == "profile") {
    if (args.empty()) throw ParseError("profile needs at least one entry");
    dist::Profile profile;
    bool has_rest = false;
    bool all_integers = true;
    std::vector<std::string_view> entries;
    for (const auto part : split(args, ',')) {
      if (part.substr(0, 5) == "rest=") {
        profile.rest = parse_size(part.substr(5), "profile rest");
        has_rest = true;
        continue;
      }
      if (part.find_first_of(".eE") != std::string_view::npos) all_integers = false;
      entries.push_back(part);
    }
    if (entries.empty()) throw ParseError("profile needs at least one explicit entry");
    if (all_integers && !has_rest) {
      dist::Counts counts;
      for (const auto e : entries) counts.counts.push_back(parse_size(e, "profile count"));
      return counts;
    }
    for (const auto e : entries) {
      const double f = parse_double(e, "profile fraction");
      if (f < 0.0) throw ParseError("profile fractions must be non-negative");
      profile.fractions.push_back(f);
    }
    if (has_rest && profile.rest == 0) throw ParseError("profile rest must be positive");
    return profile;
  }
  throw ParseError("unknown distribution '" + std::string(kind) + "'");
}

std::string to_string(const DistSpec& spec) {
  struct Visitor {
    std::string operator()(const dist::Binary& b) const {
      std::ostringstream os;
      os << "binary:p=" << b.p;
      return os.str();
    }
    std::string operator()(const dist::Profile& p) const {
      std::ostringstream os;
      os << "profile:";
      for (std::size_t i = 0; i < p.fractions.size(); ++i) os << (i ? "," : "") << p.fractions[i];
      if (p.rest) os << ",rest=" << p.rest;
      return os.str();
    }
    std::string operator()(const dist::Counts& c) const {
      std::ostringstream os;
      os << "profile:";
      for (std::size_t i = 0; i < c.counts.size(); ++i) os << (i ? "," : "") << c.counts[i];
      return os.str();
    }
    std::string operator()(const dist::Distinct&) const { return "distinct"; }
    std::string operator()(const dist::Uniform& u) const {
      return u.k == 0 ? std::string("uniform:k=n") : "uniform:k=" + std::to_string(u.k);
    }
  };
  return std::visit(Visitor{}, spec);
}

Instance generate(const DistSpec& spec, std::size_t n, RandomStream& rng) {
  if (n == 0) throw ContractViolation("generate: n must be at least 1");
  struct Visitor {
    std::size_t n;
    RandomStream& rng;

    Instance operator()(const dist::Binary& b) const {
      std::vector<ColorId> colors(n);
      for (auto& c : colors) c = rng.bernoulli(b.p) ? 1 : 0;
      return Instance(std::move(colors));
    }
    Instance operator()(const dist::Profile& p) const {
      const double explicit_mass = std::accumulate(p.fractions.begin(), p.fractions.end(), 0.0);
      constexpr double kTolerance = 1e-9;
      std::vector<double> weights = p.fractions;
      if (p.rest == 0) {
        if (std::abs(explicit_mass - 1.0) > kTolerance) {
          throw ParseError("profile fractions sum to " + std::to_string(explicit_mass) + ", expected 1");
        }
      } else {
        if (explicit_mass > 1.0 + kTolerance) {
          throw ParseError("profile fractions exceed 1 before the rest colors");
        }
        const double share = std::max(0.0, 1.0 - explicit_mass) / static_cast<double>(p.rest);
        weights.insert(weights.end(), p.rest, share);
      }
      return from_counts(apportion(weights, n), rng);
    }
    Instance operator()(const dist::Counts& c) const {
      const std::size_t total = std::accumulate(c.counts.begin(), c.counts.end(), std::size_t{0});
      if (total != n) {
        throw ParseError("profile counts sum to " + std::to_string(total) + " but n = " + std::to_string(n));
      }
      return from_counts(c.counts, rng);
    }
    Instance operator()(const dist::Distinct&) const {
      std::vector<ColorId> colors(n);
      std::iota(colors.begin(), colors.end(), ColorId{0});
      shuffle(colors, rng);
      return Instance(std::move(colors));
    }
    Instance operator()(const dist::Uniform& u) const {
      const std::size_t k = u.k == 0 ? n : u.k;
      std::vector<ColorId> colors(n);
      for (auto& c : colors) c = static_cast<ColorId>(rng.below(k));
      return Instance(std::move(colors));
    }
  };
  return std::visit(Visitor{n, rng}, spec);
}

Instance read_instance(std::istream& in) {
  std::string line;
  auto next_line = [&](std::size_t lineno) {
    while (std::getline(in, line)) {
      if (!trim(line).empty()) return;
    }
    throw ParseError("instance file truncated at line " + std::to_string(lineno));
  };
  next_line(1);
  const std::size_t n = parse_size(trim(line), "instance size");
  if (n == 0) throw ParseError("instance size must be at least 1");
  std::vector<ColorId> colors;
  colors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    next_line(i + 2);
    const std::size_t c = parse_size(trim(line), "color id");
    if (c > std::numeric_limits<ColorId>::max()) throw ParseError("color id out of range: " + line);
    colors.push_back(static_cast<ColorId>(c));
  }
  while (std::getline(in, line)) {
    if (!trim(line).empty()) throw ParseError("instance file has more than n color lines");
  }
  return Instance(std::move(colors));
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << instance.size() << '\n';
  for (const auto c : instance.colors()) out << c << '\n';
}

std::vector<std::size_t> color_counts(const Instance& instance) {
  std::unordered_map<ColorId, std::size_t> counts;
  for (const auto c : instance.colors()) ++counts[c];
  std::vector<std::size_t> out;
  out.reserve(counts.size());
  for (const auto& [color, count] : counts) out.push_back(count);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace majority
