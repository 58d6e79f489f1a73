#pragma once

#include <cstdint>
#include <optional>

#include "zplot/padic.hpp"
#include "zplot/transducer.hpp"

namespace zplot {

// Common-denominator form of z -> a*z + b: a = alpha/beta, b = gamma/beta,
// with beta the lcm of the two reduced denominators (so gcd(beta, p) = 1).
struct AffineParams {
    mpz_class alpha;
    mpz_class gamma;
    mpz_class beta;
    int p;

    AffineParams(const PadicRational& a, const PadicRational& b);
    AffineParams(mpz_class alpha_, mpz_class gamma_, mpz_class beta_, int p_);

    mpq_class slope() const { return mpq_class(alpha) / mpq_class(beta); }
    mpq_class offset() const { return mpq_class(gamma) / mpq_class(beta); }
};

// Bounded-carry synthesis of the machine computing z -> a*z + b.
// States are the carries r reachable from gamma under
//   y = (alpha*x + r) * beta^{-1} mod p,   r' = (alpha*x + r - beta*y) / p.
// A carry escaping 4*(|alpha|+|gamma|+beta) indicates a construction bug and
// aborts loudly.
Transducer synth_affine(const PadicRational& a, const PadicRational& b);
Transducer synth_affine(const AffineParams& params);

// ((alpha*X + gamma) * beta^{-1}) mod p^k for X = nm(zdigits); pure modular
// arithmetic, independent of any machine.
mpz_class affine_eval_mod(const AffineParams& params, const Word& zdigits);
std::uint64_t affine_eval_mod_u64(const AffineParams& params, std::uint64_t x, int k);

struct LipschitzReport {
    bool pass = true;
    std::uint64_t trials = 0;
    // Set on failure: two inputs agreeing on `prefix` digits whose outputs do not.
    std::optional<std::pair<Word, Word>> counterexample;
    int prefix = 0;
};

// Samples word pairs sharing random-length prefixes and checks outputs share
// prefixes at least as long.  Completeness plus causality force a pass for
// any well-formed machine; the check validates the harness.
LipschitzReport lipschitz_check(const Transducer& t, std::uint64_t trials, std::uint64_t seed);

}  // namespace zplot
