#pragma once

#include <vector>

#include "hilbchow/emit.hpp"
#include "hilbchow/pipeline.hpp"

namespace hilbchow {

// The per-input invariant suite behind `hilbchow verify`. Every check is
// run; failures carry a diagnostic detail string.
std::vector<CheckResult> verify_variety(const VarietyData& x, const PipelineConfig& cfg);

// Oracle comparison checks for a stage rank table (dimension 1 and 2 only).
std::vector<CheckResult> oracle_checks(const VarietyData& x, const std::string& stage,
                                       const RankTable& ranks);

}  // namespace hilbchow
