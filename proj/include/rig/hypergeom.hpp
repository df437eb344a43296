#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rig::hypergeom {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Query for the intersection probabilities of a uniform random size-a subset
// A of a k-element ground set against fixed disjoint subsets B (size b) and
// H (size h, 0 when unused).
struct IntersectionQuery {
    long a = 0;
    long b = 0;
    long h = 0;
    long k = 0;
};

// C(n, r) as an exact integer; 0 whenever r < 0 or r > n.
BigInt binomial(long n, long r);

// Exact closed forms (rational arithmetic).
Rational p_hit_exact(long a, long b, long k);        // P(A hits B)
Rational p_one_exact(long a, long b, long k);        // P(|A ∩ B| = 1)
Rational p_two_exact(long a, long b, long k);        // P(|A ∩ B| >= 2)
Rational p_one_avoid_exact(long a, long b, long h, long k);  // P(|A ∩ B| = 1, A misses H)
Rational p_one_hit_exact(long a, long b, long h, long k);    // P(|A ∩ B| = 1, A hits H)

// Alternate evaluation routes from the falling-factorial and factorization
// identities; must agree exactly with the closed forms.
Rational p_one_exact_falling(long a, long b, long k);
Rational p_one_avoid_exact_factored(long a, long b, long h, long k);
Rational p_one_hit_exact_factored(long a, long b, long h, long k);

// Double-precision front ends: exact rational path for k <= 10^4, log-gamma
// evaluation beyond (relative error well under 1e-10).
double p_hit(long a, long b, long k);
double p_one(long a, long b, long k);
double p_two(long a, long b, long k);
double p_one_avoid(long a, long b, long h, long k);
double p_one_hit(long a, long b, long h, long k);

// One verified inequality: holds is exactly (lower <= value <= upper) in
// rational arithmetic. A lower bound with negative left side is vacuous and
// reported as holding.
struct BoundReport {
    std::string name;
    Rational value;
    Rational lower;
    Rational upper;
    bool holds = false;
    bool vacuous = false;
};

// Evaluates every applicable inequality for the query, with
// kappa  = ab/k, kappa' = ab/(k-a), kappa'' = (a-1)h/(k-b):
//   kappa(1-kappa') <= p_one <= p_hit <= kappa        (needs a+b <= k)
//   p_two <= kappa^2/2                                (needs a+b <= k)
//   kappa(1-kappa'-kappa'') <= p_one_avoid <= kappa   (needs a+b+h <= k)
//   p_one_hit <= kappa''*kappa                        (needs a+b+h <= k)
// The last bound's coefficient is read as kappa'' (the factorization
// identity forces that choice). Requires k >= 4.
std::vector<BoundReport> check_lemma1(const IntersectionQuery& q);

// Brute-force oracle: exhaustive enumeration of all size-a subsets (k <= 20).
struct EnumeratedProbabilities {
    Rational hit;
    Rational one;
    Rational two;
    Rational one_avoid;
    Rational one_hit;
};
EnumeratedProbabilities enumerate_oracle(long a, long b, long h, long k);

}  // namespace rig::hypergeom
