#pragma once

#include <span>
#include <vector>

#include "majority/certify.hpp"
#include "majority/oracle.hpp"

namespace majority {

/// Candidate-and-verify majority vote over the balls in `balls`.
///
/// Pass one keeps a candidate and a counter; adopting a new candidate when
/// the counter is zero costs nothing. Pass two counts the candidate against
/// every other ball and is skipped when pass one ends with the counter at
/// zero. At most 2(|balls| - 1) comparisons. The certificate for a no-majority
/// answer is assembled from the unequal pairs pass one cancels out.
///
/// When `candidate_class` is given and the answer is a majority, it receives
/// one flag per position of `balls` marking the majority class.
Verdict boyer_moore(CountingOracle& oracle, std::span<const Ball> balls,
                    std::vector<char>* candidate_class = nullptr);

}  // namespace majority
