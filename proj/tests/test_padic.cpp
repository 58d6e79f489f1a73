#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "zplot/padic.hpp"
#include "zplot/prng.hpp"

using namespace zplot;

namespace {

PadicRational rat(long num, long den, int p) { return PadicRational(num, den, p); }

// Deterministic random element of Z_p ∩ Q with |num| <= 1000, den <= 1000.
PadicRational random_rat(SplitMix64& rng, int p) {
    for (;;) {
        long num = static_cast<long>(rng.next() % 2001) - 1000;
        long den = static_cast<long>(rng.next() % 1000) + 1;
        if (den % p == 0) continue;
        return PadicRational(num, den, p);
    }
}

}  // namespace

TEST_CASE("digit expansions of known rationals") {
    CHECK(digits(rat(1, 3, 2), 5) == Word{1, 1, 0, 1, 0});
    CHECK(digits(rat(0, 1, 2), 4) == Word{0, 0, 0, 0});
    CHECK(digits(rat(-1, 1, 3), 4) == Word{2, 2, 2, 2});
    CHECK(digits(rat(5, 1, 2), 0).empty());
}

TEST_CASE("digits satisfy num = den * value (mod p^n)") {
    SplitMix64 rng(41);
    for (int p : {2, 3, 5}) {
        for (int iter = 0; iter < 80; ++iter) {
            PadicRational z = random_rat(rng, p);
            int n = 1 + static_cast<int>(rng.next() % 40);
            Word w = digits(z, n);
            mpz_class x = nm_mpz(w, p);
            mpz_class modulus = pow_mpz(p, n);
            mpz_class residue = (z.num() - z.den() * x) % modulus;
            CHECK(residue == 0);
            for (Digit d : w) CHECK(d < p);
        }
    }
}

TEST_CASE("period form of known rationals") {
    PeriodForm f = period_form(rat(1, 3, 2));
    CHECK(f.preperiod == Word{1});
    CHECK(f.period == Word{1, 0});

    f = period_form(rat(2, 7, 2));
    CHECK(f.preperiod == Word{0, 1});
    CHECK(f.period == Word{1, 1, 0});

    f = period_form(rat(5, 1, 2));
    CHECK(f.preperiod == Word{1, 0, 1});
    CHECK(f.period == Word{0});

    f = period_form(rat(0, 1, 2));
    CHECK(f.preperiod.empty());
    CHECK(f.period == Word{0});
}

TEST_CASE("period form agrees with the digit stream and is minimal") {
    SplitMix64 rng(43);
    for (int p : {2, 3, 5}) {
        for (int iter = 0; iter < 60; ++iter) {
            PadicRational z = random_rat(rng, p);
            PeriodForm f = period_form(z);
            std::size_t r = f.preperiod.size(), t = f.period.size();
            REQUIRE(t >= 1);

            Word w = digits(z, static_cast<int>(r + 3 * t));
            for (std::size_t i = 0; i < w.size(); ++i) {
                Digit expect = i < r ? f.preperiod[i] : f.period[(i - r) % t];
                CHECK(w[i] == expect);
            }

            // Minimality oracle: no divisor of t yields the same period word,
            // and the pre-period cannot be shortened.
            for (std::size_t d = 1; d < t; ++d) {
                if (t % d != 0) continue;
                bool repeats = true;
                for (std::size_t i = 0; i < t && repeats; ++i)
                    repeats = f.period[i] == f.period[i % d];
                CHECK_FALSE(repeats);
            }
            if (r > 0) CHECK(f.preperiod.back() != f.period.back());
        }
    }
}

TEST_CASE("period length equals the multiplicative order of p") {
    SplitMix64 rng(47);
    for (int p : {2, 3, 5}) {
        int done = 0;
        while (done < 200) {
            PadicRational z = random_rat(rng, p);
            if (z.den() == 1) continue;
            ++done;
            CHECK(period_form(z).period.size() == mult_ord(p, z.den()));
        }
    }
}

TEST_CASE("multiplicative orders") {
    CHECK(mult_ord(2, 7) == 3);
    CHECK(mult_ord(2, 1) == 1);
    CHECK(mult_ord(2, 3) == 2);
    CHECK(mult_ord(3, 80) == 4);
    CHECK_THROWS_AS(mult_ord(2, 6), std::invalid_argument);
    CHECK_THROWS_AS(mult_ord(2, 0), std::invalid_argument);
}

TEST_CASE("canonical c + d/(p^t-1) form") {
    CanonicalForm f = crep(rat(1, 3, 2));
    CHECK(f.c == 0);
    CHECK(f.d == 1);
    CHECK(f.t == 2);

    f = crep(rat(1, 1, 2));
    CHECK(f.c == 1);
    CHECK(f.d == 0);
    CHECK(f.t == 1);

    f = crep(rat(2, 7, 2));
    CHECK(f.c == 0);
    CHECK(f.d == 2);
    CHECK(f.t == 3);
}

TEST_CASE("crep reconstructs the rational exactly") {
    SplitMix64 rng(53);
    for (int p : {2, 3, 5}) {
        for (int iter = 0; iter < 60; ++iter) {
            PadicRational z = random_rat(rng, p);
            CanonicalForm f = crep(z);
            CHECK(f.t == period_form(z).period.size());
            CHECK(f.d >= 0);
            mpz_class modulus = pow_mpz(p, static_cast<long>(f.t)) - 1;
            CHECK(f.d <= modulus - 1);
            mpq_class back = mpq_class(f.c) + mpq_class(f.d, modulus);
            back.canonicalize();
            CHECK(back == z.value);
        }
    }
}

TEST_CASE("cluster point sets of known rationals") {
    CSet s = cset(rat(2, 7, 2));
    REQUIRE(s.elements.size() == 3);
    CHECK(s.elements[0] == mpq_class(5, 7));
    CHECK(s.elements[1] == mpq_class(3, 7));
    CHECK(s.elements[2] == mpq_class(6, 7));

    s = cset(rat(5, 1, 2));
    REQUIRE(s.elements.size() == 1);
    CHECK(s.elements[0] == 0);

    s = cset(rat(1, 3, 2));
    REQUIRE(s.elements.size() == 2);
    CHECK(s.elements[0] == mpq_class(2, 3));
    CHECK(s.elements[1] == mpq_class(1, 3));
}

TEST_CASE("cset is closed under multiplication by p mod 1") {
    SplitMix64 rng(59);
    for (int p : {2, 3, 5}) {
        for (int iter = 0; iter < 40; ++iter) {
            PadicRational q = random_rat(rng, p);
            CSet s = cset(q);
            CHECK(s.elements.size() == period_form(q).period.size());
            std::set<mpq_class> all(s.elements.begin(), s.elements.end());
            CHECK(all.size() == s.elements.size());
            for (const mpq_class& e : s.elements) CHECK(all.count(mod1(e * p)) == 1);
        }
    }
}

TEST_CASE("csets of two rationals are identical or disjoint") {
    SplitMix64 rng(61);
    for (int p : {2, 3, 5}) {
        for (int iter = 0; iter < 60; ++iter) {
            CSet s1 = cset(random_rat(rng, p));
            CSet s2 = cset(random_rat(rng, p));
            std::set<mpq_class> a(s1.elements.begin(), s1.elements.end());
            std::set<mpq_class> b(s2.elements.begin(), s2.elements.end());
            std::size_t common = 0;
            for (const mpq_class& e : a) common += b.count(e);
            bool identical = a == b;
            bool disjoint = common == 0;
            CHECK((identical || disjoint));
        }
    }
}

TEST_CASE("purely periodic expansion of z mod 1") {
    CHECK(mod1_expansion(rat(1, 3, 2)) == Word{0, 1});
    CHECK(mod1_expansion(rat(0, 1, 2)) == Word{0});
    CHECK(mod1_expansion(rat(-2, 7, 2)) == Word{1, 0, 1});
}

TEST_CASE("mod1 expansion matches the crep digits and the real value") {
    SplitMix64 rng(67);
    for (int p : {2, 3, 5}) {
        for (int iter = 0; iter < 40; ++iter) {
            PadicRational z = random_rat(rng, p);
            Word w = mod1_expansion(z);
            CanonicalForm f = crep(z);
            REQUIRE(w.size() == f.t);
            // 0.(w)^inf = nm(w reversed... ) : MSB-first word w has value
            // sum w[i] p^{-i-1} repeated, i.e. nm(reverse(w)) / (p^t - 1).
            mpz_class num = nm_mpz(reversed(w), p);
            mpz_class den = pow_mpz(p, static_cast<long>(f.t)) - 1;
            mpq_class val(num, den);
            val.canonicalize();
            CHECK(val == mod1(z.value));
        }
    }
}

TEST_CASE("type invariants are enforced") {
    CHECK_THROWS_AS(rat(1, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(rat(1, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(rat(1, 3, 1), std::invalid_argument);
    PadicRational z = rat(2, -4, 3);  // normalizes sign and gcd
    CHECK(z.num() == -1);
    CHECK(z.den() == 2);
}
