#include "rig/hypergeom.hpp"

#include <cmath>
#include <stdexcept>

namespace rig::hypergeom {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_abk(long a, long b, long k) {
    require(k >= 1, "hypergeom: k must be >= 1");
    require(a >= 0 && a <= k, "hypergeom: a outside [0, k]");
    require(b >= 0 && b <= k, "hypergeom: b outside [0, k]");
}

void check_abhk(long a, long b, long h, long k) {
    check_abk(a, b, k);
    require(h >= 0, "hypergeom: h must be >= 0");
    require(b + h <= k, "hypergeom: b + h exceeds k (B and H must be disjoint subsets)");
}

// falling factorial (x)_r = x (x-1) ... (x-r+1); (x)_0 = 1
BigInt falling(long x, long r) {
    BigInt out = 1;
    for (long i = 0; i < r; ++i) out *= BigInt(x - i);
    return out;
}

double log_binomial(double n, double r) {
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

constexpr long kExactLimit = 10000;

}  // namespace

BigInt binomial(long n, long r) {
    if (r < 0 || r > n || n < 0) return 0;
    r = std::min(r, n - r);
    // small cases come from a shared Pascal table; the grid sweeps live here
    static const auto table = [] {
        constexpr long N = 128;
        std::vector<std::vector<BigInt>> t(N + 1);
        for (long i = 0; i <= N; ++i) {
            t[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i) + 1);
            t[static_cast<std::size_t>(i)][0] = 1;
            for (long j = 1; j <= i; ++j)
                t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    (j == i) ? BigInt(1)
                             : t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                                   t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
        }
        return t;
    }();
    if (n <= 128) return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
    BigInt out = 1;
    for (long i = 1; i <= r; ++i) {
        out *= BigInt(n - r + i);
        out /= BigInt(i);
    }
    return out;
}

Rational p_hit_exact(long a, long b, long k) {
    check_abk(a, b, k);
    return 1 - Rational(binomial(k - b, a), binomial(k, a));
}

Rational p_one_exact(long a, long b, long k) {
    check_abk(a, b, k);
    return Rational(BigInt(b) * binomial(k - b, a - 1), binomial(k, a));
}

Rational p_two_exact(long a, long b, long k) {
    return p_hit_exact(a, b, k) - p_one_exact(a, b, k);
}

Rational p_one_avoid_exact(long a, long b, long h, long k) {
    check_abhk(a, b, h, k);
    return Rational(BigInt(b) * binomial(k - b - h, a - 1), binomial(k, a));
}

Rational p_one_hit_exact(long a, long b, long h, long k) {
    return p_one_exact(a, b, k) - p_one_avoid_exact(a, b, h, k);
}

Rational p_one_exact_falling(long a, long b, long k) {
    check_abk(a, b, k);
    if (a == 0) return 0;
    // a * P(A ∩ B = {x1}) with P(A ∩ B = {x1}) = b (k-b)_{a-1} / (k)_a
    return Rational(BigInt(a) * BigInt(b) * falling(k - b, a - 1), falling(k, a));
}

Rational p_one_avoid_exact_factored(long a, long b, long h, long k) {
    check_abhk(a, b, h, k);
    const Rational one = p_one_exact(a, b, k);
    if (one == 0 || h == 0) return one;  // empty avoid set never blocks
    // p1(a,b,k) * (1 - p(a-1,h,k-b)); a >= 1 and a-1 <= k-b whenever p1 > 0
    return one * (1 - p_hit_exact(a - 1, h, k - b));
}

Rational p_one_hit_exact_factored(long a, long b, long h, long k) {
    check_abhk(a, b, h, k);
    const Rational one = p_one_exact(a, b, k);
    if (one == 0 || h == 0) return 0;
    return one * p_hit_exact(a - 1, h, k - b);
}

double p_hit(long a, long b, long k) {
    if (k <= kExactLimit) return p_hit_exact(a, b, k).convert_to<double>();
    check_abk(a, b, k);
    if (a == 0 || b == 0) return 0.0;
    if (k - b < a) return 1.0;  // A cannot fit outside B
    return -std::expm1(log_binomial(static_cast<double>(k - b), static_cast<double>(a)) -
                       log_binomial(static_cast<double>(k), static_cast<double>(a)));
}

double p_one(long a, long b, long k) {
    if (k <= kExactLimit) return p_one_exact(a, b, k).convert_to<double>();
    check_abk(a, b, k);
    if (a == 0 || b == 0 || k - b < a - 1) return 0.0;
    return std::exp(std::log(static_cast<double>(b)) +
                    log_binomial(static_cast<double>(k - b), static_cast<double>(a - 1)) -
                    log_binomial(static_cast<double>(k), static_cast<double>(a)));
}

double p_two(long a, long b, long k) {
    if (k <= kExactLimit) return p_two_exact(a, b, k).convert_to<double>();
    return p_hit(a, b, k) - p_one(a, b, k);
}

double p_one_avoid(long a, long b, long h, long k) {
    if (k <= kExactLimit) return p_one_avoid_exact(a, b, h, k).convert_to<double>();
    check_abhk(a, b, h, k);
    if (a == 0 || b == 0 || k - b - h < a - 1) return 0.0;
    return std::exp(std::log(static_cast<double>(b)) +
                    log_binomial(static_cast<double>(k - b - h), static_cast<double>(a - 1)) -
                    log_binomial(static_cast<double>(k), static_cast<double>(a)));
}

double p_one_hit(long a, long b, long h, long k) {
    if (k <= kExactLimit) return p_one_hit_exact(a, b, h, k).convert_to<double>();
    return p_one(a, b, k) - p_one_avoid(a, b, h, k);
}

std::vector<BoundReport> check_lemma1(const IntersectionQuery& q) {
    require(q.k >= 4, "check_lemma1: k must be >= 4");
    require(q.h >= 0, "check_lemma1: h must be >= 0");
    require(q.a >= 0 && q.a <= q.k && q.b >= 0 && q.b <= q.k, "check_lemma1: a or b outside [0, k]");
    require(q.a + q.b <= q.k, "check_lemma1: requires a + b <= k");

    const Rational kappa(BigInt(q.a) * q.b, BigInt(q.k));
    const Rational kappa_p = (q.a == q.k) ? Rational(0) : Rational(BigInt(q.a) * q.b, BigInt(q.k - q.a));
    std::vector<BoundReport> out;

    auto add = [&out](std::string name, Rational value, Rational lower, Rational upper) {
        BoundReport r;
        r.name = std::move(name);
        r.vacuous = lower < 0;
        r.holds = lower <= value && value <= upper;
        r.value = std::move(value);
        r.lower = std::move(lower);
        r.upper = std::move(upper);
        out.push_back(std::move(r));
    };

    const Rational one = p_one_exact(q.a, q.b, q.k);
    const Rational hit = p_hit_exact(q.a, q.b, q.k);
    add("p_one", one, kappa * (1 - kappa_p), hit);
    add("p_hit", hit, one, kappa);
    add("p_two", p_two_exact(q.a, q.b, q.k), 0, kappa * kappa / 2);

    if (q.a + q.b + q.h <= q.k) {
        const Rational kappa_pp =
            (q.h == 0) ? Rational(0) : Rational(BigInt(q.a - 1) * q.h, BigInt(q.k - q.b));
        add("p_one_avoid", p_one_avoid_exact(q.a, q.b, q.h, q.k),
            kappa * (1 - kappa_p - kappa_pp), kappa);
        add("p_one_hit", p_one_hit_exact(q.a, q.b, q.h, q.k), 0, kappa_pp * kappa);
    }
    return out;
}

EnumeratedProbabilities enumerate_oracle(long a, long b, long h, long k) {
    check_abhk(a, b, h, k);
    require(k <= 20, "enumerate_oracle: k too large (k <= 20)");

    // A runs over all size-a subsets of {0..k-1}; B = {0..b-1}, H = {b..b+h-1}
    unsigned long long n_hit = 0, n_one = 0, n_two = 0, n_one_avoid = 0, n_one_hit = 0, n_total = 0;
    std::vector<long> pick(static_cast<std::size_t>(a));
    for (long i = 0; i < a; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
        long in_b = 0;
        bool hits_h = false;
        for (long x : pick) {
            if (x < b) ++in_b;
            else if (x < b + h) hits_h = true;
        }
        ++n_total;
        if (in_b >= 1) ++n_hit;
        if (in_b == 1) {
            ++n_one;
            if (hits_h) ++n_one_hit;
            else ++n_one_avoid;
        }
        if (in_b >= 2) ++n_two;

        // next combination in lexicographic order
        if (a == 0) break;
        long i = a - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == k - a + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (long j = i + 1; j < a; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }

    const BigInt total = n_total;
    return EnumeratedProbabilities{Rational(BigInt(n_hit), total), Rational(BigInt(n_one), total),
                                   Rational(BigInt(n_two), total), Rational(BigInt(n_one_avoid), total),
                                   Rational(BigInt(n_one_hit), total)};
}

}  // namespace rig::hypergeom
