#pragma once

#include <ostream>
#include <vector>

#include <json.hpp>

#include "holosym/classification.hpp"
#include "holosym/geometry.hpp"
#include "holosym/verification.hpp"

namespace holosym {

using Json = nlohmann::ordered_json;

/// {manifold, point, flags{...}, fitted{...}, residuals{...}, in_U,
///  samples_used, tol, seed, samples}; absent fitted values are null.
Json to_json(const ClassificationReport& report);

/// {suite_id, cases_run, max_residual, tolerance, pass, details[{label, value, residual}]}
Json to_json(const SuiteResult& result);

Json to_json(const CatalogEntry& entry);

/// One block per point, one row per property of the symmetry hierarchy.
void write_text(std::ostream& out, const ClassificationReport& report, int index);

void write_text(std::ostream& out, const SuiteResult& result, bool with_details);

}  // namespace holosym
