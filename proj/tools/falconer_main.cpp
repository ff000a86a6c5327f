// falconer: classify trivariate quadratics, build their bilinear
// reductions, check rotational-curvature determinants, and run the
// finite-field and fractal measure experiments. Every run is
// reproducible from the config header echoed into its report.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "falconer/errors.hpp"
#include "falconer/finite_field.hpp"
#include "falconer/fractal.hpp"
#include "falconer/quadratic.hpp"
#include "falconer/reduction.hpp"
#include "falconer/reports.hpp"

namespace {

using falconer::reports::Json;

struct CommonOpts {
    std::string out;     // empty = stdout
    std::string format;  // empty = subcommand default (json, csv for tables)
    unsigned threads = 1;
};

// verdict-style subcommands are json-only; tables default to csv
void require_json_only(const CommonOpts& common) {
    if (!common.format.empty() && common.format != "json")
        throw falconer::ValidationError("this subcommand only emits json");
}

bool want_json(const CommonOpts& common) {
    if (common.format.empty() || common.format == "csv") return false;
    if (common.format == "json") return true;
    throw falconer::ValidationError("unknown format " + common.format +
                                    " (expected json or csv)");
}

void emit(const CommonOpts& common, const std::string& report) {
    if (common.out.empty()) {
        std::cout << report;
        return;
    }
    std::ofstream file(common.out, std::ios::binary);
    if (!file) throw falconer::ValidationError("cannot open output file " + common.out);
    file << report;
}

std::vector<falconer::Rational> parse_eps_list(const std::string& text) {
    std::vector<falconer::Rational> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string piece =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (!piece.empty()) out.push_back(falconer::Rational::from_string(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw falconer::ValidationError("empty epsilon list");
    return out;
}

falconer::SplitSpec parse_split(const std::string& text) {
    falconer::SplitSpec split;
    std::size_t pos = 0;
    int slot = 0;
    while (pos <= text.size() && slot < 6) {
        std::size_t comma = text.find(',', pos);
        std::string piece =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (piece.empty()) throw falconer::ValidationError("empty name in split");
        split.slots[slot++] = piece;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (slot != 6) throw falconer::ValidationError("split needs six comma-separated names");
    return split;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic image-set laboratory: classification, bilinear reductions, "
                 "curvature determinants, finite-field censuses, and fractal measure "
                 "estimates with exact rational reporting"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--out", common.out, "write the report to this file instead of stdout");
    app.add_option("--format", common.format,
                   "json or csv (default: json for verdicts, csv for tables)")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", common.threads, "worker threads (output is identical for any value)")
        ->check(CLI::Range(1u, 64u));

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "classify a trivariate quadratic");
    std::string classify_poly;
    classify_cmd->add_option("polynomial", classify_poly, "e.g. \"x*y + z\"")->required();

    // reduction
    auto* reduction_cmd =
        app.add_subcommand("reduction", "build the bilinear reduction of a Falconer-type quadratic");
    std::string reduction_poly;
    reduction_cmd->add_option("polynomial", reduction_poly, "e.g. \"x*y + x*z + y*z\"")->required();

    // curvature
    auto* curvature_cmd =
        app.add_subcommand("curvature", "bordered determinant of a phase function");
    std::string curvature_psi, curvature_split;
    curvature_cmd->add_option("--psi", curvature_psi, "e.g. \"u1*v1 - u2*v2 + u3 - v3\"")
        ->required();
    curvature_cmd->add_option("--split", curvature_split,
                              "six names for the slots u1,u2,u3,v1,v2,v3");

    // ff-census
    auto* census_cmd = app.add_subcommand("ff-census", "seeded image-size census over F_p");
    std::string census_poly, census_family = "uniform-random";
    std::uint64_t census_p = 1009, census_n = 127, census_trials = 10, census_seed = 1;
    std::uint64_t census_budget = falconer::ff::kDefaultBudget;
    census_cmd->add_option("polynomial", census_poly)->required();
    census_cmd->add_option("--prime", census_p, "prime modulus");
    census_cmd->add_option("--size", census_n, "set size N");
    census_cmd->add_option("--trials", census_trials);
    census_cmd->add_option("--seed", census_seed);
    census_cmd->add_option("--family", census_family, "uniform-random | interval | geometric");
    census_cmd->add_option("--budget", census_budget, "cap on |A||B||C| per trial");

    // ff-cover
    auto* cover_cmd =
        app.add_subcommand("ff-cover", "does the squared-distance image of A cover all of F_q?");
    std::uint64_t cover_q = 101, cover_size = 65, cover_start = 0;
    cover_cmd->add_option("--prime", cover_q, "prime modulus");
    cover_cmd->add_option("--size", cover_size, "|A|, taken as consecutive residues");
    cover_cmd->add_option("--start", cover_start, "first residue of A");

    // fractal-measure
    auto* measure_cmd = app.add_subcommand(
        "fractal-measure", "exact image measure over covers, or the near-zero mass table");
    std::string measure_poly, cov_a = "cantor:3:0,2:4", cov_b = "cantor:2:0,1:0",
                cov_c = "cantor:2:0,1:0", measure_eps;
    std::uint64_t measure_budget = falconer::fractal::kDefaultBoxBudget;
    measure_cmd->add_option("polynomial", measure_poly)->required();
    measure_cmd->add_option("--set-a", cov_a, "cover spec: cantor:<b>:<digits>:<depth> or point:<q>");
    measure_cmd->add_option("--set-b", cov_b);
    measure_cmd->add_option("--set-c", cov_c);
    measure_cmd->add_option("--epsilon", measure_eps,
                            "comma-separated epsilons; switches to the near-zero mass table");
    measure_cmd->add_option("--budget", measure_budget, "cap on box count");

    // sharpness
    auto* sharp_cmd =
        app.add_subcommand("sharpness", "decay table for the boundary configuration of xy+z");
    std::uint32_t sharp_depth = 10;
    sharp_cmd->add_option("--depth", sharp_depth, "maximum cover depth");

    // thresholds
    auto* thresh_cmd = app.add_subcommand("thresholds", "exact dimension-threshold arithmetic");
    std::string chain_name = "distance-a3", chain_file;
    thresh_cmd->add_option("--chain", chain_name, "distance-a3 | equal-dims | trivial");
    thresh_cmd->add_option("--chain-file", chain_file, "JSON chain description");

    // let --out/--format/--threads appear after the subcommand too
    for (CLI::App* sub : {classify_cmd, reduction_cmd, curvature_cmd, census_cmd, cover_cmd,
                          measure_cmd, sharp_cmd, thresh_cmd}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);

        if (*classify_cmd) {
            require_json_only(common);
            auto f = falconer::Quadratic3::from_string(classify_poly);
            auto cls = falconer::classify(f);
            Json config{{"subcommand", "classify"}, {"polynomial", classify_poly}};
            emit(common, falconer::reports::classify_report(config, f, cls));
        } else if (*reduction_cmd) {
            require_json_only(common);
            auto f = falconer::Quadratic3::from_string(reduction_poly);
            auto cls = falconer::classify(f);
            falconer::Quadratic3 shaped =
                cls.permutation ? falconer::permuted(f, *cls.permutation) : f;
            auto red = falconer::build_reduction(shaped, cls);
            Json config{{"subcommand", "reduction"}, {"polynomial", reduction_poly}};
            emit(common, falconer::reports::reduction_report(config, f, cls, shaped, red));
        } else if (*curvature_cmd) {
            require_json_only(common);
            auto psi = falconer::parse_poly(curvature_psi);
            falconer::SplitSpec split = curvature_split.empty()
                                            ? falconer::SplitSpec::identity()
                                            : parse_split(curvature_split);
            auto det = falconer::monge_ampere(psi, split);
            Json config{{"subcommand", "curvature"}, {"psi", curvature_psi}};
            if (!curvature_split.empty()) config["split"] = curvature_split;
            emit(common, falconer::reports::curvature_report(config, psi, split, det));
        } else if (*census_cmd) {
            auto f = falconer::Quadratic3::from_string(census_poly);
            falconer::ff::PrimeField field(census_p);
            auto family = falconer::ff::family_from_name(census_family);
            auto report = falconer::ff::expander_census(f, field, census_n, census_trials, family,
                                                        census_seed, census_budget, common.threads);
            Json config{{"subcommand", "ff-census"}, {"polynomial", census_poly},
                        {"prime", census_p},         {"size", census_n},
                        {"trials", census_trials},   {"seed", census_seed},
                        {"family", census_family},   {"budget", census_budget}};
            emit(common, want_json(common)
                             ? falconer::reports::census_json(config, report)
                             : falconer::reports::census_csv(config, report));
        } else if (*cover_cmd) {
            require_json_only(common);
            falconer::ff::PrimeField field(cover_q);
            if (cover_size > cover_q)
                throw falconer::ValidationError("set size exceeds field size");
            std::vector<std::uint64_t> elems(cover_size);
            for (std::uint64_t k = 0; k < cover_size; ++k) elems[k] = (cover_start + k) % cover_q;
            auto A = falconer::ff::FFSet::from_unsorted(std::move(elems), field);
            bool full = falconer::ff::cover_check_distance(A, field);
            Json config{{"subcommand", "ff-cover"},
                        {"prime", cover_q},
                        {"size", cover_size},
                        {"start", cover_start}};
            emit(common, falconer::reports::cover_report(config, cover_q, A.size(), full));
        } else if (*measure_cmd) {
            auto f = falconer::Quadratic3::from_string(measure_poly);
            if (measure_eps.empty()) {
                require_json_only(common);
                auto A = falconer::fractal::parse_cover_spec(cov_a);
                auto B = falconer::fractal::parse_cover_spec(cov_b);
                auto C = falconer::fractal::parse_cover_spec(cov_c);
                auto measure =
                    falconer::fractal::image_measure(f, A, B, C, measure_budget, common.threads);
                Json config{{"subcommand", "fractal-measure"},
                            {"polynomial", measure_poly},
                            {"set_a", cov_a},
                            {"set_b", cov_b},
                            {"set_c", cov_c},
                            {"budget", measure_budget}};
                emit(common, falconer::reports::measure_report(config, measure));
            } else {
                auto eps = parse_eps_list(measure_eps);
                falconer::fractal::SixCovers covers{
                    falconer::fractal::parse_cover_spec(cov_a, true),
                    falconer::fractal::parse_cover_spec(cov_b, true),
                    falconer::fractal::parse_cover_spec(cov_c, true),
                    falconer::fractal::parse_cover_spec(cov_a, true),
                    falconer::fractal::parse_cover_spec(cov_b, true),
                    falconer::fractal::parse_cover_spec(cov_c, true)};
                auto rows = falconer::fractal::near_zero_mass_table(f, covers, eps, measure_budget,
                                                                    common.threads);
                Json config{{"subcommand", "fractal-measure"},
                            {"polynomial", measure_poly},
                            {"set_a", cov_a},
                            {"set_b", cov_b},
                            {"set_c", cov_c},
                            {"epsilon", measure_eps},
                            {"budget", measure_budget}};
                emit(common, want_json(common)
                                 ? falconer::reports::epsmass_json(config, eps, rows)
                                 : falconer::reports::epsmass_csv(config, eps, rows));
            }
        } else if (*sharp_cmd) {
            auto rows = falconer::fractal::sharpness_demo(sharp_depth);
            Json config{{"subcommand", "sharpness"}, {"depth", sharp_depth}};
            emit(common, want_json(common)
                             ? falconer::reports::sharpness_json(config, rows)
                             : falconer::reports::sharpness_csv(config, rows));
        } else if (*thresh_cmd) {
            require_json_only(common);
            falconer::fractal::ThresholdChain chain;
            Json config{{"subcommand", "thresholds"}};
            if (!chain_file.empty()) {
                std::ifstream in(chain_file);
                if (!in) throw falconer::ValidationError("cannot read chain file " + chain_file);
                std::string text((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
                chain = falconer::fractal::ThresholdChain::from_json_text(text);
                config["chain_file"] = chain_file;
            } else {
                chain = falconer::fractal::ThresholdChain::preset(chain_name);
                config["chain"] = chain_name;
            }
            auto threshold = falconer::fractal::dimension_threshold(chain);
            emit(common, falconer::reports::threshold_report(config, chain, threshold));
        }
        return 0;
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage message
        return 2;
    } catch (const falconer::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "hint: polynomials use identifiers as variables, '^' for powers, and\n"
                  << "      integer or integer/integer coefficients, e.g. \"x*y + 1/2*z^2\"\n";
        return 2;
    } catch (const falconer::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
