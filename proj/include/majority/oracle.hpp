#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "majority/instance.hpp"
#include "majority/types.hpp"

namespace majority {

struct ComparisonRecord {
  Ball left = 0;
  Ball right = 0;
  bool equal = false;

  friend bool operator==(const ComparisonRecord&, const ComparisonRecord&) = default;
};

using Transcript = std::vector<ComparisonRecord>;

/// The only gateway to colors during an algorithm run.
///
/// Every call to cmp() costs one comparison, including repeated pairs and
/// self-comparisons; nothing is memoized. Recording the transcript is
/// optional because it costs memory proportional to the comparison count.
/// One oracle belongs to one run; the instance is shared read-only.
class CountingOracle {
 public:
  explicit CountingOracle(const Instance& instance, bool record = false)
      : instance_(&instance), record_(record) {}

  bool cmp(Ball x, Ball y);

  std::size_t size() const { return instance_->size(); }
  std::uint64_t comparisons() const { return comparisons_; }
  bool recording() const { return record_; }
  const Transcript& transcript() const { return transcript_; }
  Transcript take_transcript() { return std::move(transcript_); }

 private:
  const Instance* instance_;
  bool record_;
  std::uint64_t comparisons_ = 0;
  Transcript transcript_;
};

// Text form: a header line "# transcript n=<n> records=<count>" followed by
// one "<left> <right> <0|1>" line per comparison.
void write_transcript_text(std::ostream& out, std::size_t n, std::span<const ComparisonRecord> records);

// Binary form, little-endian: magic "MJTR", u32 version (1), u64 n,
// u64 record count, then per record u32 left, u32 right, u8 equal.
void write_transcript_binary(std::ostream& out, std::size_t n, std::span<const ComparisonRecord> records);
Transcript read_transcript_binary(std::istream& in, std::size_t* n_out = nullptr);

}  // namespace majority
