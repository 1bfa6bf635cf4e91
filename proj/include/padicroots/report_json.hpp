#pragma once

#include <string>

#include "json.hpp" // vendored single-header JSON library

#include "padicroots/acceptance.hpp"
#include "padicroots/moments.hpp"
#include "padicroots/simulate.hpp"

#ifndef PADICROOTS_VERSION
#define PADICROOTS_VERSION "0.0.0-dev"
#endif

namespace padic {

// Insertion-ordered so serialized reports are byte-stable by construction.
using Json = nlohmann::ordered_json;

/// Exact rational as {"num", "den"} decimal strings; never a float.
inline Json rational_json(const Rational& q) {
    return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

inline Json estimate_json(const EstimateReport& rep) {
    Json j;
    j["mean"] = rep.mean;
    j["stderr"] = rep.std_error;
    j["mean_exact"] = rational_json(rep.mean_exact);
    j["samples_used"] = rep.samples_used;
    j["samples_rejected"] = rep.samples_rejected;
    j["samples_uncertified"] = rep.samples_uncertified;
    j["bias_bound"] = rep.bias_bound;
    j["target"] = rep.target ? rational_json(*rep.target) : Json(nullptr);
    j["z_score"] = rep.z_score ? Json(*rep.z_score) : Json(nullptr);
    j["sum_zd"] = rep.sum_zd.get_str();
    j["sum_zd_sq"] = rep.sum_zd_sq.get_str();
    j["sum_n"] = rep.sum_n.get_str();
    j["sum_n_sq"] = rep.sum_n_sq.get_str();
    j["sum_z2"] = rep.sum_z2.get_str();
    j["seed"] = rep.seed;
    j["worker_count"] = rep.worker_count;
    return j;
}

inline Json tail_json(const TailReport& rep) {
    Json j;
    j["threshold"] = rep.threshold;
    j["hit_count"] = rep.hit_count;
    j["fraction"] = rep.fraction;
    j["split_count"] = rep.split_count;
    j["max_root_count"] = rep.max_root_count;
    j["samples_used"] = rep.samples_used;
    j["samples_rejected"] = rep.samples_rejected;
    j["samples_uncertified"] = rep.samples_uncertified;
    j["tau"] = rep.tau ? rational_json(*rep.tau) : Json(nullptr);
    j["seed"] = rep.seed;
    j["worker_count"] = rep.worker_count;
    return j;
}

inline Json distribution_json(const CoeffDistribution& dist) {
    Json j;
    switch (dist.kind()) {
    case DistKind::finite_support: {
        j["kind"] = "finite_support";
        Json values = Json::array();
        Json probabilities = Json::array();
        for (std::size_t i = 0; i < dist.values().size(); ++i) {
            values.push_back(dist.values()[i].get_str());
            probabilities.push_back(rational_json(dist.probabilities()[i]));
        }
        j["values"] = values;
        j["probabilities"] = probabilities;
        break;
    }
    case DistKind::haar:
        j["kind"] = "haar";
        j["precision"] = dist.precision();
        break;
    case DistKind::haar_multiple_of_p:
        j["kind"] = "haar_multiple_of_p";
        j["precision"] = dist.precision();
        break;
    case DistKind::upsilon:
        j["kind"] = "upsilon";
        j["level"] = dist.level();
        break;
    }
    return j;
}

inline Json experiment_params_json(const ExperimentConfig& cfg) {
    Json j;
    j["distribution"] = distribution_json(cfg.distribution);
    j["degree"] = cfg.degree;
    j["d"] = cfg.d;
    j["sample_count"] = cfg.sample_count;
    j["seed"] = cfg.seed;
    j["worker_count"] = cfg.worker_count;
    j["condition"] = cfg.condition == Condition::unit_constant_term ? "unit_constant_term" : "none";
    j["henselian_level"] = cfg.henselian_level;
    return j;
}

/// Stable outer schema shared by every CLI command.
inline Json cli_envelope(const std::string& command, Json prime, Json params, Json result, Json seed) {
    Json j;
    j["command"] = command;
    j["prime"] = std::move(prime);
    j["params"] = std::move(params);
    j["result"] = std::move(result);
    j["seed"] = std::move(seed);
    j["version"] = PADICROOTS_VERSION;
    return j;
}

/// The exact report a `simulate` run emits; also what the determinism
/// criterion byte-compares across repeated runs.
inline Json simulate_envelope(const std::string& mode, const ExperimentConfig& cfg, const EstimateReport& rep) {
    Json params = experiment_params_json(cfg);
    params["mode"] = mode;
    return cli_envelope("simulate", Json(cfg.distribution.prime().value()), std::move(params),
                        estimate_json(rep), Json(rep.seed));
}

inline Json criterion_result_json(const CriterionResult& r) {
    Json j;
    j["criterion"] = r.id;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["seconds"] = r.seconds;
    j["detail"] = r.detail;
    return j;
}

/// Stable-moment rows with the generating-series cross-check, for `moments`.
inline Json moments_json(MomentTable& table, unsigned long d_max) {
    Json rows = Json::array();
    for (unsigned long d = 0; d <= d_max; ++d) {
        Json row;
        row["d"] = d;
        row["alpha"] = rational_json(table.alpha_stable(d));
        row["beta"] = rational_json(table.beta_stable(d));
        row["gamma"] = rational_json(table.gamma(d));
        rows.push_back(std::move(row));
    }
    Json j;
    j["rows"] = std::move(rows);
    j["series_identity_check"] = series_identity_check(table, d_max);
    return j;
}

/// Rectangular alpha/beta table export, exact integers in decimal.
inline std::string moment_table_csv(MomentTable& table, unsigned long d_max) {
    std::string out = "n,d,alpha_num,alpha_den,beta_num,beta_den\n";
    table.ensure(2 * d_max, d_max);
    for (unsigned long n = 0; n <= 2 * d_max; ++n) {
        for (unsigned long d = 0; d <= d_max; ++d) {
            const auto [alpha, beta] = table.alpha_beta(n, d);
            out += std::to_string(n);
            out += ',';
            out += std::to_string(d);
            out += ',';
            out += alpha.get_num().get_str();
            out += ',';
            out += alpha.get_den().get_str();
            out += ',';
            out += beta.get_num().get_str();
            out += ',';
            out += beta.get_den().get_str();
            out += '\n';
        }
    }
    return out;
}

} // namespace padic
