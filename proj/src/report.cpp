#include "teleopt/report.hpp"

#include <charconv>

#include "teleopt/errors.hpp"

namespace teleopt {

std::string format_double(double x) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

json mat2_to_json(const Mat2& m) {
    return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

Mat2 mat2_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw InvalidInputError("expected a 2x2 array");
    Mat2 m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const json& cell = j[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (!cell.is_number()) throw InvalidInputError("matrix entries must be numbers");
            m(r, c) = cell.get<double>();
        }
    return m;
}

namespace {

Mat4 mat4_from_json(const json& j) {
    Mat4 m;
    if (j.is_array() && j.size() == 16) {
        for (size_t i = 0; i < 16; ++i) {
            if (!j[i].is_number()) throw InvalidInputError("matrix entries must be numbers");
            m.e[i] = j[i].get<double>();
        }
        return m;
    }
    if (j.is_array() && j.size() == 4) {
        for (int r = 0; r < 4; ++r) {
            const json& row = j[static_cast<size_t>(r)];
            if (!row.is_array() || row.size() != 4)
                throw InvalidInputError("\"cm\" rows must have 4 entries");
            for (int c = 0; c < 4; ++c) {
                if (!row[static_cast<size_t>(c)].is_number())
                    throw InvalidInputError("matrix entries must be numbers");
                m(r, c) = row[static_cast<size_t>(c)].get<double>();
            }
        }
        return m;
    }
    throw InvalidInputError("\"cm\" must be a 4x4 nested array or a flat array of 16 reals");
}

}  // namespace

CmDocument parse_cm_document(const json& j, double tol) {
    if (!j.is_object()) throw InvalidInputError("input document must be a JSON object");
    const bool has_cm = j.contains("cm");
    const bool has_blocks = j.contains("blocks");
    if (has_cm == has_blocks)
        throw InvalidInputError("input document must contain exactly one of \"cm\" or \"blocks\"");

    Mat4 v;
    if (has_cm) {
        v = mat4_from_json(j.at("cm"));
    } else {
        const json& blocks = j.at("blocks");
        if (!blocks.is_object() || !blocks.contains("A") || !blocks.contains("B") ||
            !blocks.contains("C"))
            throw InvalidInputError("\"blocks\" must contain A, B and C");
        const Mat2 a = mat2_from_json(blocks.at("A"));
        const Mat2 b = mat2_from_json(blocks.at("B"));
        const Mat2 c = mat2_from_json(blocks.at("C"));
        v = Mat4::from_blocks(a, c, c.transposed(), b);
    }

    CmDocument doc{TwoModeCM::from_matrix(v, tol), ""};
    if (j.contains("label")) {
        if (!j.at("label").is_string()) throw InvalidInputError("\"label\" must be a string");
        doc.label = j.at("label").get<std::string>();
    }
    return doc;
}

const char* side_name(Side s) {
    switch (s) {
        case Side::a:
            return "a";
        case Side::b:
            return "b";
        default:
            return "none";
    }
}

json analyze_report(const TwoModeCM& state, const std::string& label,
                    const AnalyzeOptions& opts) {
    const PtSpectrum spec = pt_spectrum(state);
    const ChannelInvariants inv = invariants(state);
    const OptimizationReport opt = optimal_tgcp(state);

    json rep;
    rep["schema_version"] = "1";
    rep["label"] = label;
    rep["nu"] = spec.nu;
    rep["mu"] = spec.mu;
    rep["log_negativity"] = log_negativity(state);
    rep["entangled"] = opt.entangled;
    rep["invariants"] = {{"a", inv.a},
                         {"b", inv.b},
                         {"c", inv.c},
                         {"sign_detC", inv.sign_det_c},
                         {"v", inv.v}};
    rep["fidelity_unoptimized"] = opt.f_unoptimized;
    rep["bounds"] = {{"lower", opt.bounds.lower}, {"upper", opt.bounds.upper}};
    if (opt.entangled) {
        const OmegaThetaResult om = omega_theta(state);
        rep["omega_theta"] = {
            {"theta", om.theta}, {"epsilon", om.epsilon}, {"fidelity", om.fidelity}};
    } else {
        rep["omega_theta"] = nullptr;
    }
    rep["optimal"] = {{"fidelity", opt.f_opt},
                      {"eta", opt.tau_star},
                      {"lambda", opt.lambda_star},
                      {"attenuation_side", side_name(opt.attenuation_side)},
                      {"tau", opt.tau_star},
                      {"S_a", mat2_to_json(opt.optimal_map.s_a)},
                      {"G_a", mat2_to_json(opt.optimal_map.g_a)},
                      {"S_b", mat2_to_json(opt.optimal_map.s_b)},
                      {"G_b", mat2_to_json(opt.optimal_map.g_b)}};
    if (opts.oracle) {
        BruteForceOptions bf;
        bf.seed = opts.seed;
        bf.starts = opts.oracle_starts;
        const BruteForceResult oracle = brute_force_optimal(state, bf);
        rep["oracle"] = {{"fidelity", oracle.fidelity},
                         {"starts", oracle.starts},
                         {"seed", oracle.seed}};
    }
    return rep;
}

}  // namespace teleopt
