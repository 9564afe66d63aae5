#include "majority/oracle.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <string>

namespace majority {

bool CountingOracle::cmp(Ball x, Ball y) {
  const std::size_t n = instance_->size();
  if (x >= n || y >= n) {
    throw ContractViolation("cmp(" + std::to_string(x) + ", " + std::to_string(y) +
                            ") out of range for n = " + std::to_string(n));
  }
  ++comparisons_;
  const bool equal = instance_->color(x) == instance_->color(y);
  if (record_) transcript_.push_back({x, y, equal});
  return equal;
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw ParseError("transcript stream truncated");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

constexpr char kMagic[4] = {'M', 'J', 'T', 'R'};

}  // namespace

void write_transcript_text(std::ostream& out, std::size_t n, std::span<const ComparisonRecord> records) {
  out << "# transcript n=" << n << " records=" << records.size() << '\n';
  for (const auto& r : records) out << r.left << ' ' << r.right << ' ' << (r.equal ? 1 : 0) << '\n';
}

void write_transcript_binary(std::ostream& out, std::size_t n, std::span<const ComparisonRecord> records) {
  out.write(kMagic, 4);
  put_le<std::uint32_t>(out, 1);
  put_le<std::uint64_t>(out, n);
  put_le<std::uint64_t>(out, records.size());
  for (const auto& r : records) {
    put_le<std::uint32_t>(out, r.left);
    put_le<std::uint32_t>(out, r.right);
    put_le<std::uint8_t>(out, r.equal ? 1 : 0);
  }
}

Transcript read_transcript_binary(std::istream& in, std::size_t* n_out) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4)) throw ParseError("not a transcript stream");
  if (get_le<std::uint32_t>(in) != 1) throw ParseError("unsupported transcript version");
  const auto n = get_le<std::uint64_t>(in);
  const auto count = get_le<std::uint64_t>(in);
  Transcript records;
  records.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 20)));
  for (std::uint64_t i = 0; i < count; ++i) {
    ComparisonRecord r;
    r.left = get_le<std::uint32_t>(in);
    r.right = get_le<std::uint32_t>(in);
    r.equal = get_le<std::uint8_t>(in) != 0;
    records.push_back(r);
  }
  if (n_out) *n_out = static_cast<std::size_t>(n);
  return records;
}

}  // namespace majority
