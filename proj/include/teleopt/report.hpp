// JSON ingestion of covariance-matrix documents and emission of analysis
// reports; shared between the CLI and the tests.
#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "teleopt/optimize.hpp"

namespace teleopt {

using json = nlohmann::json;

/// Input document: exactly one of "cm" (4x4, row-major, nested or flat) or
/// "blocks" ({A, B, C} as 2x2 arrays), plus an optional "label".
struct CmDocument {
    TwoModeCM state;
    std::string label;
};
CmDocument parse_cm_document(const json& j, double tol = 1e-9);

struct AnalyzeOptions {
    bool oracle = false;
    std::uint64_t seed = 1;
    int oracle_starts = 32;
    double tol = 1e-9;
};

/// Full analysis pipeline: spectra, invariants, bounds, omega_theta (null
/// for separable states), the optimal-TGCP section, and optionally the
/// brute-force oracle.
json analyze_report(const TwoModeCM& state, const std::string& label,
                    const AnalyzeOptions& opts = {});

json mat2_to_json(const Mat2& m);
Mat2 mat2_from_json(const json& j);

/// Shortest round-trip decimal representation, locale-independent.
std::string format_double(double x);

const char* side_name(Side s);

}  // namespace teleopt
