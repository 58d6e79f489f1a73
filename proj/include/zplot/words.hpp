#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace zplot {

// A digit word over {0,..,p-1}, index 0 = least significant digit.
using Digit = std::uint8_t;
using Word = std::vector<Digit>;

inline std::uint64_t pow_u64(std::uint64_t p, int k) {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > (UINT64_MAX >> 3) / p)
            throw std::overflow_error("pow_u64: p^k does not fit in 64 bits");
        r *= p;
    }
    return r;
}

inline mpz_class pow_mpz(int p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

// True once k base-p digits fit comfortably in an int64 value.
inline bool fits_u64(int p, int k) {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > (std::uint64_t(1) << 62) / static_cast<unsigned>(p)) return false;
        r *= static_cast<unsigned>(p);
    }
    return true;
}

inline std::uint64_t nm_u64(const Word& w, int p) {
    std::uint64_t v = 0;
    for (std::size_t i = w.size(); i-- > 0;) v = v * static_cast<unsigned>(p) + w[i];
    return v;
}

inline Word wrd_u64(std::uint64_t x, int p, int k) {
    Word w(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        w[static_cast<std::size_t>(i)] = static_cast<Digit>(x % static_cast<unsigned>(p));
        x /= static_cast<unsigned>(p);
    }
    return w;
}

inline mpz_class nm_mpz(const Word& w, int p) {
    mpz_class v = 0;
    for (std::size_t i = w.size(); i-- > 0;) v = v * p + w[i];
    return v;
}

inline Word wrd_mpz(mpz_class x, int p, int k) {
    Word w(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        mpz_class r = x % p;
        w[static_cast<std::size_t>(i)] = static_cast<Digit>(r.get_ui());
        x /= p;
    }
    return w;
}

// User-facing rendering, most significant digit first.
inline std::string format_word_msb(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (std::size_t i = w.size(); i-- > 0;) s += static_cast<char>('0' + w[i]);
    return s;
}

inline Word parse_word_msb(const std::string& s, int p) {
    Word w(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[s.size() - 1 - i];
        if (c < '0' || c > '9') throw std::invalid_argument("digit word: invalid character");
        int d = c - '0';
        if (d >= p) throw std::invalid_argument("digit word: digit out of range for base");
        w[i] = static_cast<Digit>(d);
    }
    return w;
}

inline Word reversed(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

}  // namespace zplot
