#pragma once

#include <vector>

#include "zplot/padic.hpp"
#include "zplot/rational.hpp"

namespace zplot {

// Closed-form description of the limit plot of z -> a*z + q on the torus:
// a link of knot_count cables with slope a, one intercept representative per
// cable.  Offsets e_r = (-p^r q) mod 1 share a cable iff r1 = r2 (mod m).
struct LinkPrediction {
    mpq_class slope;
    std::vector<mpq_class> intercepts;   // smallest-r representative per cable
    unsigned long knot_count = 1;
    std::vector<mpq_class> full_offsets;  // all of C(q mod 1), in r-order
    mpz_class m;                          // b' / gcd(b, b')
};

struct PsiFamily {
    mpq_class slope;
    std::vector<mpq_class> phases;  // p^k * q mod 1 for k < knot_count
};

// Slope-0 prediction: one parallel per element of C(q).
LinkPrediction predict_const(const PadicRational& q);

// Single cable through the origin with slope c.
LinkPrediction predict_linear(const PadicRational& c);

LinkPrediction predict_affine(const PadicRational& a, const PadicRational& q);

PsiFamily psi_family(const PadicRational& a, const PadicRational& q);

}  // namespace zplot
