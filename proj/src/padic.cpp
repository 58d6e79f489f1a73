#include "zplot/padic.hpp"

#include <map>
#include <stdexcept>

namespace zplot {

namespace {

// Digit solve for a/b: the next digit is a*b^{-1} mod p, the tail is
// ((a - digit*b)/p)/b.  Numerator states determine the digit stream, so the
// stream is eventually periodic exactly when a state recurs.
struct DigitStream {
    mpz_class a;
    mpz_class b;
    int p;
    unsigned long inv_b;  // b^{-1} mod p

    explicit DigitStream(const PadicRational& z)
        : a(z.num()), b(z.den()), p(z.p) {
        mpz_class binv;
        mpz_class pz(p);
        if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw std::logic_error("DigitStream: denominator not invertible mod p");
        inv_b = binv.get_ui();
    }

    Digit next() {
        unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p));
        unsigned long d = (r * inv_b) % static_cast<unsigned long>(p);
        a -= static_cast<long>(d) * b;
        mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(p));
        return static_cast<Digit>(d);
    }
};

}  // namespace

Word digits(const PadicRational& z, int n) {
    if (n < 0) throw std::invalid_argument("digits: negative count");
    DigitStream st(z);
    Word w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = st.next();
    return w;
}

PeriodForm period_form(const PadicRational& z) {
    DigitStream st(z);
    std::map<mpz_class, std::size_t> seen;
    Word emitted;
    for (;;) {
        auto [it, fresh] = seen.emplace(st.a, emitted.size());
        if (!fresh) {
            std::size_t r = it->second;
            PeriodForm f;
            f.preperiod.assign(emitted.begin(), emitted.begin() + static_cast<long>(r));
            f.period.assign(emitted.begin() + static_cast<long>(r), emitted.end());
            return f;
        }
        emitted.push_back(st.next());
    }
}

unsigned long mult_ord(int p, const mpz_class& b) {
    if (b < 1) throw std::invalid_argument("mult_ord: b must be positive");
    if (b == 1) return 1;
    mpz_class g;
    mpz_class pz(p);
    mpz_gcd(g.get_mpz_t(), pz.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw std::invalid_argument("mult_ord: b not coprime to p");
    mpz_class acc = pz % b;
    unsigned long l = 1;
    while (acc != 1) {
        acc = (acc * p) % b;
        ++l;
    }
    return l;
}

CanonicalForm crep(const PadicRational& z) {
    CanonicalForm f;
    f.t = mult_ord(z.p, z.den());
    f.c = floor_q(z.value);
    mpq_class frac = z.value - mpq_class(f.c);
    mpz_class modulus = pow_mpz(z.p, static_cast<long>(f.t)) - 1;
    mpq_class d = frac * mpq_class(modulus);
    if (d.get_den() != 1) throw std::logic_error("crep: period length does not clear denominator");
    f.d = d.get_num();
    return f;
}

CSet cset(const PadicRational& q) {
    CSet s;
    s.source = q.value;
    unsigned long t = mult_ord(q.p, q.den());
    const mpz_class& b = q.den();
    mpz_class r = (-q.num()) % b;
    if (r < 0) r += b;
    for (unsigned long l = 0; l < t; ++l) {
        s.elements.emplace_back(mpq_class(r, b));
        s.elements.back().canonicalize();
        r = (r * q.p) % b;
    }
    return s;
}

Word mod1_expansion(const PadicRational& z) {
    CanonicalForm f = crep(z);
    Word w = wrd_mpz(f.d, z.p, static_cast<int>(f.t));
    return reversed(std::move(w));
}

}  // namespace zplot
