#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "l2a/poly.hpp"

using namespace l2a;

namespace {
Poly P(int vars, const std::string& s) { return Poly::parse(vars, s); }

// Tiny deterministic generator for the property checks below.
struct Rng {
    unsigned long long state;
    unsigned long long next() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 2685821657736338717ull;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<unsigned long long>(n)); }
};

Poly random_poly(Rng& rng, int vars, int max_deg) {
    Poly p(vars);
    int terms = 1 + rng.below(3);
    for (int t = 0; t < terms; ++t) {
        Mono m(vars, 0);
        int deg = rng.below(max_deg + 1);
        for (int d = 0; d < deg && vars > 0; ++d) m[rng.below(vars)] += 1;
        int num = rng.below(7) - 3;
        int den = 1 + rng.below(2);
        p += Poly::from_terms(vars, {{m, Rational(num, den)}});
    }
    return p;
}
}  // namespace

TEST_CASE("rational literals") {
    CHECK(render_rational(parse_rational("3/4")) == "3/4");
    CHECK(render_rational(parse_rational("-6/4")) == "-3/2");
    CHECK(render_rational(Rational(0)) == "0");
    CHECK_THROWS_AS(parse_rational("3/0"), std::invalid_argument);
}

TEST_CASE("arithmetic examples") {
    // (x+1)(x-1) = x^2 - 1
    CHECK(P(1, "x0 + 1") * P(1, "x0 - 1") == P(1, "x0^2 - 1"));
    // 2/3 x + 1/3 x = x
    CHECK(P(1, "2/3*x0") + P(1, "1/3*x0") == P(1, "x0"));
    // p * 0 = 0
    CHECK((P(2, "x0^2*x1 + 5") * Poly(2)).is_zero());
}

TEST_CASE("partial derivatives") {
    CHECK(P(2, "x0^2*x1").partial(0) == P(2, "2*x0*x1"));
    CHECK(P(2, "x0^2").partial(1).is_zero());
    CHECK(P(1, "1/3*x0^3").partial(0) == P(1, "x0^2"));
    CHECK_THROWS_AS(P(1, "x0").partial(1), std::out_of_range);
}

TEST_CASE("is_zero on identities") {
    CHECK((P(1, "x0^2") - P(1, "x0") * P(1, "x0")).is_zero());
    CHECK_FALSE((P(2, "x0") - P(2, "x1")).is_zero());
    Poly lhs = P(2, "x0 + x1") * P(2, "x0 + x1");
    CHECK((lhs - P(2, "x0^2 + 2*x0*x1 + x1^2")).is_zero());
}

TEST_CASE("over a point") {
    Poly c = Poly::constant(0, Rational(5, 2));
    CHECK(c.render() == "5/2");
    CHECK(Poly::parse(0, "5/2") == c);
    CHECK((c * c).render() == "25/4");
    CHECK_THROWS(Poly::parse(0, "x0"));
}

TEST_CASE("render/parse round-trip is bit-exact") {
    Rng rng{0x9e3779b97f4a7c15ull};
    for (int i = 0; i < 200; ++i) {
        int vars = rng.below(4);
        Poly p = random_poly(rng, vars, 3);
        CHECK(Poly::parse(vars, p.render()) == p);
    }
}

TEST_CASE("ring properties on random triples") {
    Rng rng{1234567};
    for (int i = 0; i < 60; ++i) {
        int vars = 1 + rng.below(3);
        Poly a = random_poly(rng, vars, 2), b = random_poly(rng, vars, 2), c = random_poly(rng, vars, 2);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        Rational s(3, 2);
        CHECK((a + b).scaled(s) == a.scaled(s) + b.scaled(s));
        // mixed partials commute
        if (vars >= 2) CHECK(a.partial(0).partial(1) == a.partial(1).partial(0));
    }
}

TEST_CASE("compose substitutes variables") {
    Poly p = P(2, "x0^2 + x1");
    std::vector<Poly> args = {P(1, "x0 + 1"), P(1, "2*x0")};
    CHECK(p.compose(args) == P(1, "x0^2 + 4*x0 + 1"));
}

TEST_CASE("degree guard") {
    Poly::set_degree_limit(4);
    Poly x = P(1, "x0^3");
    CHECK_THROWS_AS(x * x, DegreeLimitExceeded);
    Poly::set_degree_limit(0);
    CHECK((x * x).degree() == 6);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(P(1, "3/x0"), PolyParseError);
    CHECK_THROWS_AS(P(1, ""), PolyParseError);
    CHECK_THROWS_AS(P(1, "x1 + 1"), PolyParseError);
    CHECK_THROWS_AS(P(1, "x0 & x0"), PolyParseError);
    try {
        P(1, "3/x0");
    } catch (const PolyParseError& e) {
        CHECK(e.position == 2);
    }
}
