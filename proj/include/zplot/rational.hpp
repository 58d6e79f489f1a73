#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace zplot {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline mpz_class floor_q(const mpq_class& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

// Fractional part, always in [0,1).
inline mpq_class mod1(const mpq_class& q) {
    mpq_class r = q - mpq_class(floor_q(q));
    return r;
}

// Strict "num/den" syntax: optional sign, digits, optional "/digits".
inline mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    if (i == s.size()) throw std::invalid_argument("rational: missing digits");
    std::size_t slash = std::string::npos;
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] == '/') {
            if (slash != std::string::npos) throw std::invalid_argument("rational: two slashes");
            slash = j;
        } else if (s[j] < '0' || s[j] > '9') {
            throw std::invalid_argument("rational: invalid character");
        }
    }
    if (slash != std::string::npos && (slash == i || slash + 1 == s.size()))
        throw std::invalid_argument("rational: malformed fraction");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("rational: parse failure");
    q.canonicalize();
    if (q.get_den() <= 0) throw std::invalid_argument("rational: zero denominator");
    return q;
}

inline std::string format_rational(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// An element of Z_p ∩ Q: irreducible fraction whose denominator is coprime to p.
struct PadicRational {
    mpq_class value;
    int p;

    PadicRational(mpq_class v, int prime) : value(std::move(v)), p(prime) {
        if (!is_prime(prime)) throw std::invalid_argument("PadicRational: p must be prime");
        value.canonicalize();
        if (mpz_divisible_ui_p(value.get_den_mpz_t(), static_cast<unsigned long>(prime)))
            throw std::invalid_argument("PadicRational: denominator not coprime to p");
    }
    PadicRational(long num, long den, int prime) : PadicRational(mpq_class(num, den), prime) {}

    const mpz_class& num() const { return value.get_num(); }
    const mpz_class& den() const { return value.get_den(); }
};

}  // namespace zplot
