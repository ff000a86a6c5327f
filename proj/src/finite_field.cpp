#include "falconer/finite_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

#include "falconer/errors.hpp"

namespace falconer::ff {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t modulus) : p(modulus) {
    if (!is_prime_u64(p)) throw ValidationError(std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const { return powmod(a, e, p); }

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    if (a % p == 0) throw ValidationError("inverse of zero mod " + std::to_string(p));
    return powmod(a % p, p - 2, p);
}

std::uint64_t PrimeField::smallest_primitive_root() const {
    if (p == 2) return 1;
    std::uint64_t phi = p - 1;
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t m = phi;
    for (std::uint64_t q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            prime_factors.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint64_t q : prime_factors) {
            if (powmod(g, phi / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

FFSet::FFSet(std::vector<std::uint64_t> sorted_elems, const PrimeField& field)
    : elems_(std::move(sorted_elems)) {
    for (std::size_t k = 0; k < elems_.size(); ++k) {
        if (elems_[k] >= field.p) throw ValidationError("set element out of range");
        if (k > 0 && elems_[k] <= elems_[k - 1])
            throw ValidationError("set elements must be strictly increasing");
    }
}

FFSet FFSet::from_unsorted(std::vector<std::uint64_t> elems, const PrimeField& field) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return FFSet(std::move(elems), field);
}

bool FFSet::contains(std::uint64_t v) const {
    return std::binary_search(elems_.begin(), elems_.end(), v);
}

QuadraticMod QuadraticMod::reduce(const Quadratic3& f, const PrimeField& field) {
    auto red = [&](const Rational& r) -> std::uint64_t {
        std::uint64_t den = r.den().mod_u64(field.p);
        if (den == 0)
            throw ValidationError("coefficient denominator divisible by p=" +
                                  std::to_string(field.p));
        std::uint64_t num = r.num().mod_u64(field.p);
        return field.mul(num, field.inv(den));
    };
    return QuadraticMod{red(f.a), red(f.b), red(f.c), red(f.d), red(f.e),
                        red(f.g), red(f.h), red(f.i), red(f.j), red(f.k0)};
}

std::uint64_t QuadraticMod::eval(std::uint64_t x, std::uint64_t y, std::uint64_t z,
                                 const PrimeField& F) const {
    std::uint64_t v = F.mul(a, F.mul(x, y));
    v = F.add(v, F.mul(b, F.mul(x, z)));
    v = F.add(v, F.mul(c, F.mul(y, z)));
    v = F.add(v, F.mul(d, F.mul(x, x)));
    v = F.add(v, F.mul(e, F.mul(y, y)));
    v = F.add(v, F.mul(g, F.mul(z, z)));
    v = F.add(v, F.mul(h, x));
    v = F.add(v, F.mul(i, y));
    v = F.add(v, F.mul(j, z));
    return F.add(v, k0);
}

namespace {

// One p-bit membership bitmap per worker keeps the hot loop branch-free;
// hash sets only when p is too large to map.
constexpr std::uint64_t kBitmapLimit = 1ull << 31;

class Bitmap {
  public:
    explicit Bitmap(std::uint64_t n) : words_((n + 63) / 64, 0) {}
    void set(std::uint64_t i) { words_[i >> 6] |= 1ull << (i & 63); }
    bool get(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void merge(const Bitmap& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    }
    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
        return c;
    }
    std::vector<std::uint64_t> to_sorted() const {
        std::vector<std::uint64_t> out;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(w));
                out.push_back(static_cast<std::uint64_t>(k) * 64 + bit);
                w &= w - 1;
            }
        }
        return out;
    }

  private:
    std::vector<std::uint64_t> words_;
};

void image_chunk_bitmap(const QuadraticMod& f, const FFSet& A, const FFSet& B, const FFSet& C,
                        const PrimeField& F, std::size_t x_begin, std::size_t x_end,
                        Bitmap& bits) {
    for (std::size_t ix = x_begin; ix < x_end; ++ix) {
        std::uint64_t x = A.elems()[ix];
        std::uint64_t dx2hx = F.add(F.mul(f.d, F.mul(x, x)), F.add(F.mul(f.h, x), f.k0));
        std::uint64_t bx = F.mul(f.b, x);
        std::uint64_t ax = F.mul(f.a, x);
        for (std::uint64_t y : B.elems()) {
            // f = c2 z^2 + c1 z + c0 for fixed (x, y)
            std::uint64_t c1 = F.add(bx, F.add(F.mul(f.c, y), f.j));
            std::uint64_t c0 = F.add(
                dx2hx, F.add(F.mul(ax, y), F.add(F.mul(f.e, F.mul(y, y)), F.mul(f.i, y))));
            for (std::uint64_t z : C.elems()) {
                std::uint64_t v = F.add(F.mul(F.add(F.mul(f.g, z), c1), z), c0);
                bits.set(v);
            }
        }
    }
}

}  // namespace

FFSet image_set(const QuadraticMod& f, const FFSet& A, const FFSet& B, const FFSet& C,
                const PrimeField& field, std::uint64_t budget, unsigned threads) {
    unsigned __int128 work = static_cast<unsigned __int128>(A.size()) * B.size() * C.size();
    if (work > budget) {
        throw BudgetError("image_set triple loop",
                          static_cast<std::uint64_t>(std::min<unsigned __int128>(
                              work, ~static_cast<std::uint64_t>(0))),
                          budget);
    }
    if (field.p <= kBitmapLimit) {
        // per-thread bitmaps only while they stay cheap to replicate
        if (threads > 1 && field.p > (1ull << 26)) threads = 1;
        if (threads <= 1 || A.size() < 2 * threads) {
            Bitmap bits(field.p);
            image_chunk_bitmap(f, A, B, C, field, 0, A.size(), bits);
            return FFSet(bits.to_sorted(), field);
        }
        std::vector<Bitmap> partial(threads, Bitmap(field.p));
        std::vector<std::thread> pool;
        std::size_t chunk = (A.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = std::min<std::size_t>(t * chunk, A.size());
            std::size_t hi = std::min<std::size_t>(lo + chunk, A.size());
            pool.emplace_back([&, t, lo, hi] {
                image_chunk_bitmap(f, A, B, C, field, lo, hi, partial[t]);
            });
        }
        for (auto& th : pool) th.join();
        for (unsigned t = 1; t < threads; ++t) partial[0].merge(partial[t]);
        return FFSet(partial[0].to_sorted(), field);
    }
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t x : A.elems()) {
        for (std::uint64_t y : B.elems()) {
            for (std::uint64_t z : C.elems()) seen.insert(f.eval(x, y, z, field));
        }
    }
    std::vector<std::uint64_t> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return FFSet(std::move(out), field);
}

SetFamily family_from_name(const std::string& name) {
    if (name == "uniform-random") return SetFamily::UniformRandom;
    if (name == "interval") return SetFamily::Interval;
    if (name == "geometric") return SetFamily::Geometric;
    throw ValidationError("unknown set family: " + name +
                          " (expected uniform-random, interval, or geometric)");
}

std::string family_name(SetFamily f) {
    switch (f) {
        case SetFamily::UniformRandom: return "uniform-random";
        case SetFamily::Interval: return "interval";
        case SetFamily::Geometric: return "geometric";
    }
    return "?";
}

FFSet draw_set(SetFamily family, std::uint64_t n, const PrimeField& field, SplitMix64& rng) {
    if (n > field.p) throw ValidationError("set size exceeds field size");
    switch (family) {
        case SetFamily::UniformRandom: {
            std::set<std::uint64_t> picked;
            while (picked.size() < n) picked.insert(rng.below(field.p));
            return FFSet(std::vector<std::uint64_t>(picked.begin(), picked.end()), field);
        }
        case SetFamily::Interval: {
            std::uint64_t start = rng.below(field.p);
            std::vector<std::uint64_t> elems(n);
            for (std::uint64_t k = 0; k < n; ++k)
                elems[k] = start + k >= field.p ? start + k - field.p : start + k;
            return FFSet::from_unsorted(std::move(elems), field);
        }
        case SetFamily::Geometric: {
            if (n >= field.p)
                throw ValidationError("geometric family needs size below p (0 is not a power)");
            std::uint64_t g = field.smallest_primitive_root();
            std::uint64_t phi = field.p - 1;
            std::uint64_t exponent;
            do {
                exponent = 1 + rng.below(phi - 1);
            } while (std::gcd(exponent, phi) != 1);
            std::uint64_t gen = field.pow(g, exponent);
            std::vector<std::uint64_t> elems(n);
            std::uint64_t cur = 1;
            for (std::uint64_t k = 0; k < n; ++k) {
                elems[k] = cur;
                cur = field.mul(cur, gen);
            }
            return FFSet::from_unsorted(std::move(elems), field);
        }
    }
    throw std::logic_error("unhandled family");
}

namespace {

std::string exact_ratio_string(std::uint64_t image_size, std::uint64_t n, std::uint64_t p) {
    unsigned __int128 n3 = static_cast<unsigned __int128>(n) * n * n;
    unsigned __int128 p2 = static_cast<unsigned __int128>(p) * p;
    if (n3 >= p2) {
        std::uint64_t g = std::gcd(image_size, p);
        return std::to_string(image_size / g) + "/" + std::to_string(p / g);
    }
    // bound is N^{3/2}: the exact ratio is sqrt(image_size^2 / N^3)
    BigInt num = BigInt(static_cast<long long>(image_size)) *
                 BigInt(static_cast<long long>(image_size));
    BigInt den = BigInt(static_cast<long long>(n)) * BigInt(static_cast<long long>(n)) *
                 BigInt(static_cast<long long>(n));
    Rational q(num, den);
    return "sqrt(" + q.to_string() + ")";
}

double ratio_value(std::uint64_t image_size, std::uint64_t n, std::uint64_t p) {
    double bound = std::min(std::pow(static_cast<double>(n), 1.5), static_cast<double>(p));
    return static_cast<double>(image_size) / bound;
}

}  // namespace

CensusReport expander_census(const Quadratic3& f, const PrimeField& field, std::uint64_t n,
                             std::uint64_t trials, SetFamily family, std::uint64_t seed,
                             std::uint64_t budget, unsigned threads) {
    if (n > field.p) throw ValidationError("N exceeds p");
    if (trials < 1) throw ValidationError("trials must be at least 1");
    QuadraticMod fm = QuadraticMod::reduce(f, field);

    std::vector<CensusRow> rows(trials);
    auto run_trial = [&](std::uint64_t t) {
        SplitMix64 rng = SplitMix64::stream(seed, t);
        FFSet A = draw_set(family, n, field, rng);
        FFSet B = draw_set(family, n, field, rng);
        FFSet C = draw_set(family, n, field, rng);
        FFSet img = image_set(fm, A, B, C, field, budget, 1);
        rows[t] = CensusRow{field.p,  n,
                            family,   seed,
                            t,        img.size(),
                            ratio_value(img.size(), n, field.p),
                            exact_ratio_string(img.size(), n, field.p)};
    };

    if (threads <= 1 || trials == 1) {
        for (std::uint64_t t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (trials + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            std::uint64_t lo = std::min<std::uint64_t>(w * chunk, trials);
            std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, trials);
            pool.emplace_back([&, lo, hi] {
                for (std::uint64_t t = lo; t < hi; ++t) run_trial(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    CensusReport report;
    report.rows = std::move(rows);
    std::sort(report.rows.begin(), report.rows.end(), [](const CensusRow& a, const CensusRow& b) {
        if (a.image_size != b.image_size) return a.image_size < b.image_size;
        return a.trial < b.trial;
    });
    return report;
}

bool cover_check_distance(const FFSet& A, const PrimeField& field) {
    // histogram of (x - y)^2 values
    Bitmap diffs(field.p);
    for (std::uint64_t x : A.elems()) {
        for (std::uint64_t y : A.elems()) {
            std::uint64_t d = field.sub(x, y);
            diffs.set(field.mul(d, d));
        }
    }
    std::vector<std::uint64_t> present = diffs.to_sorted();
    // p-length merge: union of shifted copies of the histogram support
    Bitmap covered(field.p);
    std::uint64_t count = 0;
    for (std::uint64_t d1 : present) {
        for (std::uint64_t d2 : present) {
            std::uint64_t s = field.add(d1, d2);
            if (!covered.get(s)) {
                covered.set(s);
                if (++count == field.p) return true;
            }
        }
        if (count == field.p) return true;
    }
    return count == field.p;
}

}  // namespace falconer::ff
