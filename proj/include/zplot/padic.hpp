#pragma once

#include <vector>

#include "zplot/rational.hpp"
#include "zplot/words.hpp"

namespace zplot {

// Shortest pre-period and period of an eventually periodic digit stream.
// Both words are least significant digit first; the period is never empty.
struct PeriodForm {
    Word preperiod;
    Word period;
};

// z = c + d/(p^t - 1) with c integer, 0 <= d <= p^t - 2, t the period length.
struct CanonicalForm {
    mpz_class c;
    mpz_class d;
    unsigned long t;
};

// The finite set {(-p^l * q) mod 1 : 0 <= l < t}, kept in l-order.
struct CSet {
    std::vector<mpq_class> elements;
    mpq_class source;
};

// First n digits of the canonical p-adic expansion, least significant first.
Word digits(const PadicRational& z, int n);

PeriodForm period_form(const PadicRational& z);

CanonicalForm crep(const PadicRational& z);

// Smallest l >= 1 with p^l = 1 (mod b); returns 1 for b = 1.
// Rejects b not coprime to p.
unsigned long mult_ord(int p, const mpz_class& b);

CSet cset(const PadicRational& q);

// Purely periodic base-p expansion of z mod 1, most significant digit first:
// z mod 1 = 0.(w)^inf with |w| = period length.
Word mod1_expansion(const PadicRational& z);

}  // namespace zplot
