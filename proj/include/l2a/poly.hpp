#pragma once

#include <map>
#include <string>
#include <vector>

#include "l2a/rational.hpp"

namespace l2a {

// Exponent vector of a monomial; length equals the chart dimension.
using Mono = std::vector<int>;

// Graded lexicographic order, highest first: higher total degree wins,
// ties broken lexicographically on the exponent vector.
struct GrlexDesc {
    bool operator()(const Mono& a, const Mono& b) const;
};

int mono_degree(const Mono& m);

// Thrown when an intermediate result exceeds the configured degree bound.
struct DegreeLimitExceeded : std::runtime_error {
    explicit DegreeLimitExceeded(int degree, int limit);
    int degree;
    int limit;
};

// Thrown on malformed polynomial text; `position` is a byte offset.
struct PolyParseError : std::invalid_argument {
    PolyParseError(const std::string& what, std::size_t position);
    std::size_t position;
};

/// Exact multivariate polynomial over the rationals in variables x0..x{n-1}.
/// A chart dimension of 0 means "over a point": constants only, and every
/// derivative vanishes. Terms are kept in canonical graded-lex order with no
/// zero coefficients stored, so operator== is bit-exact structural equality.
class Poly {
public:
    Poly() : vars_(0) {}
    explicit Poly(int vars) : vars_(vars) {}

    static Poly constant(int vars, const Rational& c);
    static Poly variable(int vars, int index);
    static Poly from_terms(int vars, std::map<Mono, Rational, GrlexDesc> terms);

    int vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Total degree; -1 for the zero polynomial.
    int degree() const;
    const std::map<Mono, Rational, GrlexDesc>& terms() const { return terms_; }

    Poly operator-() const;
    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);

    Poly scaled(const Rational& c) const;
    Poly partial(int var_index) const;

    // Substitutes args[i] for xi; args live in a common chart.
    Poly compose(const std::vector<Poly>& args) const;

    bool operator==(const Poly& rhs) const { return vars_ == rhs.vars_ && terms_ == rhs.terms_; }
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    std::string render() const;
    static Poly parse(int vars, const std::string& text);

    // 0 disables the guard. Applies to products, where blowup happens.
    static void set_degree_limit(int limit);
    static int degree_limit();

private:
    void insert_term(const Mono& m, const Rational& c);
    int vars_;
    std::map<Mono, Rational, GrlexDesc> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p.scaled(c); }

}  // namespace l2a
