// Acceptance suite: runs every acceptance criterion end to end and prints
// one [PASS]/[FAIL] line per criterion. Exit code is the failure count.
#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "falconer/finite_field.hpp"
#include "falconer/fractal.hpp"
#include "falconer/quadratic.hpp"
#include "falconer/reduction.hpp"
#include "falconer/reports.hpp"
#include "falconer/rng.hpp"

using namespace falconer;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int number, bool ok, const std::string& detail, double elapsed, double limit) {
    bool in_time = elapsed <= limit;
    bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s [%.1fs, limit %.0fs]\n", pass ? "PASS" : "FAIL", number,
                detail.c_str(), elapsed, limit);
    std::fflush(stdout);
}

Quadratic3 F(const char* text) { return Quadratic3::from_string(text); }

// census artifacts carried from criterion 4 into the determinism check
struct CensusArtifact {
    std::string report_threads4;
    reports::Json config;
    Quadratic3 f;
    ff::SetFamily family;
};

struct EpsMassArtifact {
    std::vector<Rational> eps;
    std::vector<fractal::NearZeroMass> rows_threads4;
    reports::Json config;
};

// ---------------------------------------------------------------- criterion 1
void criterion1_grid_agreement() {
    auto start = std::chrono::steady_clock::now();
    constexpr int kLo = -2, kHi = 2, kBase = kHi - kLo + 1;
    std::uint64_t total = 1;
    for (int k = 0; k < 9; ++k) total *= kBase;

    unsigned workers = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::uint64_t> checked(workers, 0), mismatched(workers, 0);
    std::vector<std::thread> pool;
    std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = std::min<std::uint64_t>(w * chunk, total);
        std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
        pool.emplace_back([&, w, lo, hi] {
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                std::uint64_t rest = idx;
                int c[9];
                for (int k = 0; k < 9; ++k) {
                    c[k] = kLo + static_cast<int>(rest % kBase);
                    rest /= kBase;
                }
                Quadratic3 q;
                q.a = c[0]; q.b = c[1]; q.c = c[2];
                q.d = c[3]; q.e = c[4]; q.g = c[5];
                q.h = c[6]; q.i = c[7]; q.j = c[8];
                auto dep = depends_on_all(q);
                if (!dep[0] || !dep[1] || !dep[2]) continue;
                ++checked[w];
                if (classify(q).is_degenerate() != oracle_is_degenerate(q)) ++mismatched[w];
            }
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t n_checked = 0, n_bad = 0;
    for (unsigned w = 0; w < workers; ++w) {
        n_checked += checked[w];
        n_bad += mismatched[w];
    }
    report(1, n_bad == 0,
           "classifier vs oracle on the exhaustive {-2..2}^9 grid: " + std::to_string(n_checked) +
               " dependence-filtered candidates of " + std::to_string(total) + ", " +
               std::to_string(n_bad) + " disagreements",
           seconds_since(start), 300.0);
}

// ---------------------------------------------------------------- criterion 2
void criterion2_exact_constants() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;

    ok &= classify(F("(x+y+z)^2")).verdict == Verdict::DegenerateSquare;
    ok &= classify(F("x^2 + y^2 + z^2")).verdict == Verdict::DegenerateAdditive;

    MPoly case1 = parse_poly("(u1-v1)^2 - (u2-v2)^2 + u3 - v3");
    MPoly bilinear = parse_poly("u1*v1 - u2*v2 + u3 - v3");
    bool det4 = monge_ampere(case1) == parse_poly("4");
    bool det1 = monge_ampere(bilinear) == parse_poly("1");
    ok &= det4 && det1;

    Rational threshold =
        fractal::dimension_threshold(fractal::ThresholdChain::preset("distance-a3"));
    ok &= threshold == Rational(BigInt(4), BigInt(7));

    report(2, ok,
           "exact constants: square/additive verdicts, bordered determinants 4 and 1, "
           "threshold " + threshold.to_string(),
           seconds_since(start), 60.0);
}

// ---------------------------------------------------------------- criterion 3
void criterion3_identity() {
    auto start = std::chrono::steady_clock::now();
    SplitMix64 rng(2024);
    int built = 0;
    int defects = 0;
    while (built < 1000) {
        Quadratic3 q;
        Rational* slots[9] = {&q.a, &q.b, &q.c, &q.d, &q.e, &q.g, &q.h, &q.i, &q.j};
        for (Rational* slot : slots) {
            long long den = 1 + static_cast<long long>(rng.next() % 3);
            long long num = static_cast<long long>(rng.next() % (10 * den + 1)) - 5 * den;
            *slot = Rational(BigInt(num), BigInt(den));
        }
        auto dep = depends_on_all(q);
        if (!dep[0] || !dep[1] || !dep[2]) continue;
        Classification cls = classify(q);
        if (cls.verdict != Verdict::FalconerType) continue;
        ++built;
        Quadratic3 shaped = cls.permutation ? permuted(q, *cls.permutation) : q;
        Reduction red = build_reduction(shaped, cls);
        if (!red.identity_defect(shaped).is_zero()) ++defects;
        if (!(red.ma_det == parse_poly("1"))) ++defects;
    }
    report(3, defects == 0,
           "psi(F1,F2) - (f - f') vanished exactly for 1000 seeded Falconer-type quadratics, " +
               std::to_string(defects) + " defects",
           seconds_since(start), 60.0);
}

// ---------------------------------------------------------------- criterion 4
void criterion4_census(std::vector<CensusArtifact>& artifacts) {
    auto start = std::chrono::steady_clock::now();
    const std::uint64_t p = 1009, n = 127, trials = 50, seed = 1;
    ff::PrimeField field(p);
    bool ok = true;
    double min_ratio_overall = 1e9;

    for (const char* poly : {"x*y + z", "(x-y)^2 + z", "x*y + x*z"}) {
        Quadratic3 f = F(poly);
        auto rep = ff::expander_census(f, field, n, trials, ff::SetFamily::UniformRandom, seed,
                                       ff::kDefaultBudget, 4);
        for (const auto& row : rep.rows) min_ratio_overall = std::min(min_ratio_overall, row.ratio);
        if (!(rep.rows.front().ratio >= 0.5)) ok = false;  // rows sorted ascending
        reports::Json config{{"subcommand", "ff-census"}, {"polynomial", poly},
                             {"prime", p},                {"size", n},
                             {"trials", trials},          {"seed", seed},
                             {"family", "uniform-random"}};
        artifacts.push_back(
            {reports::census_csv(config, rep), config, f, ff::SetFamily::UniformRandom});
    }

    Quadratic3 degenerate = F("(x+y+z)^2");
    auto rep = ff::expander_census(degenerate, field, n, trials, ff::SetFamily::Interval, seed,
                                   ff::kDefaultBudget, 4);
    std::uint64_t max_image = 0;
    for (const auto& row : rep.rows) max_image = std::max(max_image, row.image_size);
    if (max_image > 3 * n - 2) ok = false;
    reports::Json config{{"subcommand", "ff-census"}, {"polynomial", "(x+y+z)^2"},
                         {"prime", p},                {"size", n},
                         {"trials", trials},          {"seed", seed},
                         {"family", "interval"}};
    artifacts.push_back({reports::census_csv(config, rep), config, degenerate,
                         ff::SetFamily::Interval});

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "p=1009 N=127 x 50 trials seed 1: min ratio %.6f >= 0.5 across the three "
                  "expanders; degenerate interval image max %llu <= %llu",
                  min_ratio_overall, static_cast<unsigned long long>(max_image),
                  static_cast<unsigned long long>(3 * n - 2));
    report(4, ok, buf, seconds_since(start), 120.0);
}

// ---------------------------------------------------------------- criterion 5
void criterion5_cover() {
    auto start = std::chrono::steady_clock::now();
    ff::PrimeField field(101);
    std::vector<std::uint64_t> first65(65);
    for (std::uint64_t k = 0; k < 65; ++k) first65[k] = k;
    bool full = ff::cover_check_distance(ff::FFSet(std::move(first65), field), field);
    report(5, full,
           "squared-distance image of {0..64} covers all of F_101 (|A|=65 >= 2*101^{3/4})",
           seconds_since(start), 1.0);
}

// ---------------------------------------------------------------- criterion 6
void criterion6_sharpness() {
    auto start = std::chrono::steady_clock::now();
    auto rows = fractal::sharpness_demo(10);
    bool ok = rows.size() == 10;
    for (std::uint32_t k = 0; ok && k < rows.size(); ++k)
        ok &= rows[k].measure == Rational::pow(Rational(BigInt(2), BigInt(3)), k + 1);
    Rational at10 = rows.back().measure;
    ok &= at10 == Rational(BigInt(1024), BigInt(59049));
    ok &= at10 < Rational(BigInt(1), BigInt(50));
    report(6, ok, "decay table equals (2/3)^n exactly; at n=10: " + at10.to_string() + " < 1/50",
           seconds_since(start), 60.0);
}

// ---------------------------------------------------------------- criterion 7
void criterion7_epsmass(EpsMassArtifact& artifact) {
    auto start = std::chrono::steady_clock::now();
    Quadratic3 f = F("x*y + z");
    auto cover_a = fractal::cantor_cover({3, {0, 2}, 6}, true);
    auto cover_bc = fractal::cantor_cover({2, {0, 1}, 6}, true);
    fractal::SixCovers covers{cover_a, cover_bc, cover_bc, cover_a, cover_bc, cover_bc};
    for (std::uint32_t k = 4; k <= 8; ++k)
        artifact.eps.push_back(Rational(BigInt(1), BigInt::pow(BigInt(2), k)));

    artifact.rows_threads4 =
        fractal::near_zero_mass_table(f, covers, artifact.eps, fractal::kDefaultBoxBudget, 4);
    artifact.config = reports::Json{{"subcommand", "fractal-measure"},
                                    {"polynomial", "x*y + z"},
                                    {"set_a", "cantor:3:0,2:6"},
                                    {"set_b", "cantor:2:0,1:6"},
                                    {"set_c", "cantor:2:0,1:6"},
                                    {"epsilon", "1/16,1/32,1/64,1/128,1/256"}};

    Rational rmin = artifact.rows_threads4[0].ratio, rmax = rmin;
    for (const auto& row : artifact.rows_threads4) {
        if (row.ratio < rmin) rmin = row.ratio;
        if (rmax < row.ratio) rmax = row.ratio;
    }
    Rational spread = rmax / rmin;
    bool ok = !(Rational(8) < spread);
    report(7, ok,
           "near-zero mass ratios across eps in {2^-4..2^-8}: max/min = " +
               reports::format_fixed6(spread.to_double()) + " <= 8",
           seconds_since(start), 180.0);
}

// ---------------------------------------------------------------- criterion 8
void criterion8_determinism(const std::vector<CensusArtifact>& census,
                            const EpsMassArtifact& epsmass) {
    auto start = std::chrono::steady_clock::now();
    bool deterministic = true;

    ff::PrimeField field(1009);
    for (const auto& artifact : census) {
        for (unsigned threads : {1u, 8u}) {
            auto again = ff::expander_census(artifact.f, field, 127, 50, artifact.family, 1,
                                             ff::kDefaultBudget, threads);
            if (reports::census_csv(artifact.config, again) != artifact.report_threads4)
                deterministic = false;
        }
    }

    Quadratic3 f = F("x*y + z");
    auto cover_a = fractal::cantor_cover({3, {0, 2}, 6}, true);
    auto cover_bc = fractal::cantor_cover({2, {0, 1}, 6}, true);
    fractal::SixCovers covers{cover_a, cover_bc, cover_bc, cover_a, cover_bc, cover_bc};
    std::string reference = reports::epsmass_csv(epsmass.config, epsmass.eps,
                                                 epsmass.rows_threads4);
    for (unsigned threads : {1u, 8u}) {
        auto again = fractal::near_zero_mass_table(f, covers, epsmass.eps,
                                                   fractal::kDefaultBoxBudget, threads);
        if (reports::epsmass_csv(epsmass.config, epsmass.eps, again) != reference)
            deterministic = false;
    }

    report(8, deterministic,
           "census and near-zero-mass reports byte-identical across 1, 4, and 8 threads",
           seconds_since(start), 600.0);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion1_grid_agreement();
    criterion2_exact_constants();
    criterion3_identity();
    std::vector<CensusArtifact> census_artifacts;
    criterion4_census(census_artifacts);
    criterion5_cover();
    criterion6_sharpness();
    EpsMassArtifact epsmass;
    criterion7_epsmass(epsmass);
    criterion8_determinism(census_artifacts, epsmass);
    if (failures == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", failures);
    }
    return failures;
}
