#include "falconer/reports.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace falconer::reports {

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string config_line(const Json& config) { return "# config " + config.dump() + "\n"; }

Json perm_json(const Perm3& p) {
    static const char* names[3] = {"x", "y", "z"};
    Json j = Json::object();
    for (int slot = 0; slot < 3; ++slot) j[names[slot]] = names[p[slot]];
    return j;
}

}  // namespace

std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string classify_report(const Json& config, const Quadratic3& f, const Classification& cls) {
    Json j;
    j["config"] = config;
    j["input"] = f.to_mpoly().to_string();
    j["verdict"] = verdict_name(cls.verdict);
    j["depends_on"] = Json::object();
    j["depends_on"]["x"] = cls.depends[0];
    j["depends_on"]["y"] = cls.depends[1];
    j["depends_on"]["z"] = cls.depends[2];
    if (cls.witness) {
        Json w;
        if (cls.witness->additive) {
            w["additive"] = true;
        } else {
            w["additive"] = false;
            w["alpha"] = cls.witness->alpha.to_string();
            w["beta"] = cls.witness->beta.to_string();
            w["gamma"] = cls.witness->gamma.to_string();
            w["inner"] = Json::array({cls.witness->h1.to_string(), cls.witness->k1.to_string(),
                                      cls.witness->l1.to_string()});
        }
        j["witness"] = w;
        j["witness_verified"] = verify_witness(f, *cls.witness);
    }
    if (cls.lemma_case) j["lemma_case"] = lemma_case_name(*cls.lemma_case);
    if (cls.permutation) j["permutation"] = perm_json(*cls.permutation);
    return dump(j);
}

std::string reduction_report(const Json& config, const Quadratic3& original,
                             const Classification& cls, const Quadratic3& lemma_shape,
                             const Reduction& red) {
    Json j;
    j["config"] = config;
    j["input"] = original.to_mpoly().to_string();
    j["lemma_case"] = lemma_case_name(red.lemma_case);
    if (cls.permutation) {
        j["permutation"] = perm_json(*cls.permutation);
        j["lemma_shape"] = lemma_shape.to_mpoly().to_string();
    }
    j["psi"] = red.psi.to_string();
    j["f1"] = Json::array(
        {red.f1[0].to_string(), red.f1[1].to_string(), red.f1[2].to_string()});
    j["f2"] = Json::array(
        {red.f2[0].to_string(), red.f2[1].to_string(), red.f2[2].to_string()});
    j["monge_ampere"] = red.ma_det.to_string();
    j["bad_set"] = red.bad_set ? Json(red.bad_set->to_string()) : Json(nullptr);
    j["identity_check"] = red.identity_defect(lemma_shape).is_zero();
    return dump(j);
}

std::string curvature_report(const Json& config, const MPoly& psi, const SplitSpec& split,
                             const MPoly& det) {
    Json j;
    j["config"] = config;
    j["psi"] = psi.to_string();
    j["split"] = Json::array();
    for (const auto& s : split.slots) j["split"].push_back(s);
    j["determinant"] = det.to_string();
    j["nonvanishing_constant"] = det.is_constant() && !det.is_zero();
    return dump(j);
}

std::string census_csv(const Json& config, const ff::CensusReport& report) {
    std::ostringstream out;
    out << config_line(config);
    out << "p,N,family,seed,trial,image_size,ratio,ratio_exact\n";
    for (const auto& r : report.rows) {
        out << r.p << ',' << r.n << ',' << ff::family_name(r.family) << ',' << r.seed << ','
            << r.trial << ',' << r.image_size << ',' << format_fixed6(r.ratio) << ','
            << r.ratio_exact << '\n';
    }
    return out.str();
}

std::string census_json(const Json& config, const ff::CensusReport& report) {
    Json j;
    j["config"] = config;
    j["rows"] = Json::array();
    for (const auto& r : report.rows) {
        Json row;
        row["p"] = r.p;
        row["N"] = r.n;
        row["family"] = ff::family_name(r.family);
        row["seed"] = r.seed;
        row["trial"] = r.trial;
        row["image_size"] = r.image_size;
        row["ratio"] = format_fixed6(r.ratio);
        row["ratio_exact"] = r.ratio_exact;
        j["rows"].push_back(row);
    }
    return dump(j);
}

std::string cover_report(const Json& config, std::uint64_t q, std::uint64_t set_size,
                         bool full_cover) {
    Json j;
    j["config"] = config;
    j["q"] = q;
    j["set_size"] = set_size;
    j["full_cover"] = full_cover;
    double threshold = 2.0 * std::pow(static_cast<double>(q), 0.75);
    j["cover_threshold_2q34"] = format_fixed6(threshold);
    j["meets_threshold"] = static_cast<double>(set_size) >= threshold;
    return dump(j);
}

std::string measure_report(const Json& config, const Rational& measure) {
    Json j;
    j["config"] = config;
    j["measure"] = measure.to_string();
    j["measure_float"] = format_fixed6(measure.to_double());
    return dump(j);
}

std::string epsmass_csv(const Json& config, const std::vector<Rational>& eps_values,
                        const std::vector<fractal::NearZeroMass>& rows) {
    std::ostringstream out;
    out << config_line(config);
    out << "epsilon,mass,ratio,ratio_float\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        out << eps_values[k].to_string() << ',' << rows[k].mass.to_string() << ','
            << rows[k].ratio.to_string() << ',' << format_fixed6(rows[k].ratio.to_double())
            << '\n';
    }
    return out.str();
}

std::string epsmass_json(const Json& config, const std::vector<Rational>& eps_values,
                         const std::vector<fractal::NearZeroMass>& rows) {
    Json j;
    j["config"] = config;
    j["rows"] = Json::array();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        Json row;
        row["epsilon"] = eps_values[k].to_string();
        row["mass"] = rows[k].mass.to_string();
        row["ratio"] = rows[k].ratio.to_string();
        row["ratio_float"] = format_fixed6(rows[k].ratio.to_double());
        j["rows"].push_back(row);
    }
    return dump(j);
}

std::string sharpness_csv(const Json& config, const std::vector<fractal::SharpnessRow>& rows) {
    std::ostringstream out;
    out << config_line(config);
    out << "depth,measure,measure_float\n";
    for (const auto& r : rows) {
        out << r.depth << ',' << r.measure.to_string() << ','
            << format_fixed6(r.measure.to_double()) << '\n';
    }
    return out.str();
}

std::string sharpness_json(const Json& config, const std::vector<fractal::SharpnessRow>& rows) {
    Json j;
    j["config"] = config;
    j["rows"] = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["depth"] = r.depth;
        row["measure"] = r.measure.to_string();
        row["measure_float"] = format_fixed6(r.measure.to_double());
        j["rows"].push_back(row);
    }
    return dump(j);
}

std::string threshold_report(const Json& config, const fractal::ThresholdChain& chain,
                             const Rational& threshold) {
    Json j;
    j["config"] = config;
    j["chain"] = chain.describe();
    j["threshold"] = threshold.to_string();
    j["threshold_float"] = format_fixed6(threshold.to_double());
    return dump(j);
}

}  // namespace falconer::reports
