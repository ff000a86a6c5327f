#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "falconer/finite_field.hpp"
#include "falconer/fractal.hpp"
#include "falconer/quadratic.hpp"
#include "falconer/reduction.hpp"

namespace falconer::reports {

using Json = nlohmann::json;

std::string format_fixed6(double v);

/// JSON verdict for one classified quadratic, witness included and
/// re-verified when present.
std::string classify_report(const Json& config, const Quadratic3& f, const Classification& cls);

/// Reduction data in canonical polynomial strings plus the exact
/// identity check psi(F1, F2) = f - f'.
std::string reduction_report(const Json& config, const Quadratic3& original,
                             const Classification& cls, const Quadratic3& lemma_shape,
                             const Reduction& red);

std::string curvature_report(const Json& config, const MPoly& psi, const SplitSpec& split,
                             const MPoly& det);

/// CSV census: one `# config` header line, a column header, one row per
/// trial sorted by image size.
std::string census_csv(const Json& config, const ff::CensusReport& report);
std::string census_json(const Json& config, const ff::CensusReport& report);

std::string cover_report(const Json& config, std::uint64_t q, std::uint64_t set_size,
                         bool full_cover);

std::string measure_report(const Json& config, const Rational& measure);

std::string epsmass_csv(const Json& config, const std::vector<Rational>& eps_values,
                        const std::vector<fractal::NearZeroMass>& rows);
std::string epsmass_json(const Json& config, const std::vector<Rational>& eps_values,
                         const std::vector<fractal::NearZeroMass>& rows);

std::string sharpness_csv(const Json& config, const std::vector<fractal::SharpnessRow>& rows);
std::string sharpness_json(const Json& config, const std::vector<fractal::SharpnessRow>& rows);

std::string threshold_report(const Json& config, const fractal::ThresholdChain& chain,
                             const Rational& threshold);

}  // namespace falconer::reports
