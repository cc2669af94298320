#include "l2a/poly.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>

namespace l2a {

namespace {
std::atomic<int> g_degree_limit{0};
}

int mono_degree(const Mono& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

bool GrlexDesc::operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    return a > b;  // lexicographic, descending
}

DegreeLimitExceeded::DegreeLimitExceeded(int degree_, int limit_)
    : std::runtime_error("polynomial degree " + std::to_string(degree_) +
                         " exceeds the configured limit " + std::to_string(limit_)),
      degree(degree_),
      limit(limit_) {}

PolyParseError::PolyParseError(const std::string& what, std::size_t pos)
    : std::invalid_argument(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}

void Poly::set_degree_limit(int limit) { g_degree_limit.store(limit); }
int Poly::degree_limit() { return g_degree_limit.load(); }

Poly Poly::constant(int vars, const Rational& c) {
    Poly p(vars);
    if (c != 0) p.terms_.emplace(Mono(vars, 0), c);
    return p;
}

Poly Poly::variable(int vars, int index) {
    if (index < 0 || index >= vars)
        throw std::out_of_range("variable index " + std::to_string(index) + " out of range for chart dimension " +
                                std::to_string(vars));
    Poly p(vars);
    Mono m(vars, 0);
    m[index] = 1;
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

Poly Poly::from_terms(int vars, std::map<Mono, Rational, GrlexDesc> terms) {
    Poly p(vars);
    for (auto& [m, c] : terms) {
        if (static_cast<int>(m.size()) != vars) throw std::invalid_argument("monomial length != chart dimension");
        if (c != 0) p.terms_.emplace(m, c);
    }
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    return mono_degree(terms_.begin()->first);  // leading term has maximal degree
}

void Poly::insert_term(const Mono& m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator-() const {
    Poly r(vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (vars_ != rhs.vars_) throw std::invalid_argument("chart-dimension mismatch in polynomial addition");
    for (const auto& [m, c] : rhs.terms_) insert_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (vars_ != rhs.vars_) throw std::invalid_argument("chart-dimension mismatch in polynomial subtraction");
    for (const auto& [m, c] : rhs.terms_) insert_term(m, -c);
    return *this;
}

Poly Poly::operator+(const Poly& rhs) const {
    Poly r = *this;
    r += rhs;
    return r;
}

Poly Poly::operator-(const Poly& rhs) const {
    Poly r = *this;
    r -= rhs;
    return r;
}

Poly Poly::operator*(const Poly& rhs) const {
    if (vars_ != rhs.vars_) throw std::invalid_argument("chart-dimension mismatch in polynomial multiplication");
    Poly r(vars_);
    const int limit = degree_limit();
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            Mono m(vars_);
            for (int i = 0; i < vars_; ++i) m[i] = ma[i] + mb[i];
            if (limit > 0) {
                int d = mono_degree(m);
                if (d > limit) throw DegreeLimitExceeded(d, limit);
            }
            r.insert_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(vars_);
    if (c == 0) return r;
    for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
    return r;
}

Poly Poly::partial(int var_index) const {
    if (var_index < 0 || var_index >= vars_)
        throw std::out_of_range("partial-derivative index " + std::to_string(var_index) +
                                " out of range for chart dimension " + std::to_string(vars_));
    Poly r(vars_);
    for (const auto& [m, c] : terms_) {
        if (m[var_index] == 0) continue;
        Mono d = m;
        d[var_index] -= 1;
        r.insert_term(d, c * m[var_index]);
    }
    return r;
}

Poly Poly::compose(const std::vector<Poly>& args) const {
    if (static_cast<int>(args.size()) != vars_)
        throw std::invalid_argument("substitution needs one argument per variable");
    int out_vars = args.empty() ? 0 : args[0].vars();
    for (const auto& a : args)
        if (a.vars() != out_vars) throw std::invalid_argument("substitution arguments live in different charts");
    Poly result(out_vars);
    for (const auto& [m, c] : terms_) {
        Poly term = Poly::constant(out_vars, c);
        for (int i = 0; i < vars_; ++i)
            for (int e = 0; e < m[i]; ++e) term = term * args[i];
        result += term;
    }
    return result;
}

std::string Poly::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_vars = mono_degree(m) > 0;
        if (!has_vars || a != 1) {
            out << render_rational(a);
            if (has_vars) out << "*";
        }
        bool first_var = true;
        for (int i = 0; i < vars_; ++i) {
            if (m[i] == 0) continue;
            if (!first_var) out << "*";
            first_var = false;
            out << "x" << i;
            if (m[i] > 1) out << "^" << m[i];
        }
    }
    return out.str();
}

namespace {

struct Parser {
    const std::string& s;
    int vars;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    std::string read_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw PolyParseError("expected an integer", pos);
        return s.substr(start, pos - start);
    }

    Rational read_rational() {
        std::string num = read_integer();
        skip_ws();
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            std::string den = read_integer();
            if (Rational(BigInt(den)) == 0) throw PolyParseError("zero denominator", pos);
            return Rational(BigInt(num), BigInt(den));
        }
        return Rational(BigInt(num));
    }

    // One factor: a rational literal or x<i>[^<e>].
    void read_factor(Rational& coeff, Mono& mono) {
        skip_ws();
        if (pos >= s.size()) throw PolyParseError("expected a factor", pos);
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coeff *= read_rational();
            return;
        }
        if (c == 'x') {
            ++pos;
            std::size_t idx_pos = pos;
            std::string idx = read_integer();
            int i = std::stoi(idx);
            if (i < 0 || i >= vars)
                throw PolyParseError("variable x" + idx + " out of range for chart dimension " + std::to_string(vars),
                                     idx_pos);
            int e = 1;
            skip_ws();
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                e = std::stoi(read_integer());
            }
            mono[i] += e;
            return;
        }
        throw PolyParseError(std::string("unexpected character '") + c + "'", pos);
    }

    Poly parse() {
        Poly result(vars);
        if (eof()) throw PolyParseError("empty polynomial", pos);
        bool first = true;
        while (!eof()) {
            int sign = 1;
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                sign = (c == '-') ? -1 : 1;
            } else if (!first) {
                throw PolyParseError("expected '+' or '-' between terms", pos);
            }
            first = false;
            Rational coeff(sign);
            Mono mono(vars, 0);
            read_factor(coeff, mono);
            while (true) {
                skip_ws();
                if (pos < s.size() && s[pos] == '*') {
                    ++pos;
                    read_factor(coeff, mono);
                } else {
                    break;
                }
            }
            Poly term(vars);
            if (coeff != 0) term = Poly::from_terms(vars, {{mono, coeff}});
            result += term;
        }
        return result;
    }
};

}  // namespace

Poly Poly::parse(int vars, const std::string& text) {
    Parser p{text, vars};
    return p.parse();
}

}  // namespace l2a
