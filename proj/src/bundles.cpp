#include "l2a/bundles.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace l2a {

bool Section::is_zero() const {
    for (const auto& c : comps)
        if (!c.is_zero()) return false;
    return true;
}

Section Section::operator+(const Section& rhs) const {
    require_same_bundle(bundle, rhs.bundle, "section addition");
    Section r = *this;
    for (std::size_t i = 0; i < comps.size(); ++i) r.comps[i] += rhs.comps[i];
    return r;
}

Section Section::operator-(const Section& rhs) const {
    require_same_bundle(bundle, rhs.bundle, "section subtraction");
    Section r = *this;
    for (std::size_t i = 0; i < comps.size(); ++i) r.comps[i] -= rhs.comps[i];
    return r;
}

Section Section::operator-() const {
    Section r = *this;
    for (auto& c : r.comps) c = -c;
    return r;
}

Section Section::scaled(const Poly& f) const {
    Section r = *this;
    for (auto& c : r.comps) c = c * f;
    return r;
}

Section Section::scaled(const Rational& c) const {
    Section r = *this;
    for (auto& p : r.comps) p = p.scaled(c);
    return r;
}

std::string Section::render() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) out << ", ";
        out << comps[i].render();
    }
    out << "]";
    return out.str();
}

Section zero_section(const Bundle& b) {
    return Section(b, std::vector<Poly>(b.rank, Poly(b.chart_dim)));
}

Section frame_section(const Bundle& b, int index) {
    Section s = zero_section(b);
    if (index < 0 || index >= b.rank) throw std::out_of_range("frame index out of range");
    s.comps[index] = Poly::constant(b.chart_dim, 1);
    return s;
}

Poly section_pairing(const Section& s, const Section& t) {
    if (s.bundle.dualized() != t.bundle)
        throw BundleMismatch("section_pairing: bundles are not mutual duals (" + s.bundle.display() + " vs " +
                             t.bundle.display() + ")");
    Poly acc(s.bundle.chart_dim);
    for (int i = 0; i < s.bundle.rank; ++i) acc += s.comps[i] * t.comps[i];
    return acc;
}

HomField HomField::zero(const Bundle& src, const Bundle& dst) {
    if (src.chart_dim != dst.chart_dim) throw BundleMismatch("HomField: bundles over different charts");
    HomField h{src, dst, {}};
    h.m.assign(dst.rank, std::vector<Poly>(src.rank, Poly(src.chart_dim)));
    return h;
}

HomField HomField::identity(const Bundle& b) {
    HomField h = zero(b, b);
    for (int i = 0; i < b.rank; ++i) h.m[i][i] = Poly::constant(b.chart_dim, 1);
    return h;
}

Section HomField::apply(const Section& s) const {
    require_same_bundle(src, s.bundle, "hom_apply");
    Section out = zero_section(dst);
    for (int i = 0; i < dst.rank; ++i)
        for (int j = 0; j < src.rank; ++j) out.comps[i] += m[i][j] * s.comps[j];
    return out;
}

HomField HomField::transpose() const {
    HomField h = zero(dst.dualized(), src.dualized());
    for (int i = 0; i < dst.rank; ++i)
        for (int j = 0; j < src.rank; ++j) h.m[j][i] = m[i][j];
    return h;
}

HomField HomField::compose(const HomField& inner) const {
    require_same_bundle(src, inner.dst, "hom composition");
    HomField h = zero(inner.src, dst);
    for (int i = 0; i < dst.rank; ++i)
        for (int j = 0; j < inner.src.rank; ++j)
            for (int k = 0; k < src.rank; ++k) h.m[i][j] += m[i][k] * inner.m[k][j];
    return h;
}

HomField HomField::operator+(const HomField& rhs) const {
    require_same_bundle(src, rhs.src, "hom addition");
    require_same_bundle(dst, rhs.dst, "hom addition");
    HomField h = *this;
    for (int i = 0; i < dst.rank; ++i)
        for (int j = 0; j < src.rank; ++j) h.m[i][j] += rhs.m[i][j];
    return h;
}

HomField HomField::operator-(const HomField& rhs) const { return *this + (-rhs); }

HomField HomField::operator-() const {
    HomField h = *this;
    for (auto& row : h.m)
        for (auto& p : row) p = -p;
    return h;
}

HomField HomField::scaled(const Poly& f) const {
    HomField h = *this;
    for (auto& row : h.m)
        for (auto& p : row) p = p * f;
    return h;
}

bool HomField::is_zero() const {
    for (const auto& row : m)
        for (const auto& p : row)
            if (!p.is_zero()) return false;
    return true;
}

std::vector<std::vector<int>> increasing_tuples(int rank, int arity) {
    std::vector<std::vector<int>> out;
    if (arity < 0 || arity > rank) return out;
    std::vector<int> t(arity);
    for (int i = 0; i < arity; ++i) t[i] = i;
    if (arity == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(t);
        int i = arity - 1;
        while (i >= 0 && t[i] == rank - arity + i) --i;
        if (i < 0) break;
        ++t[i];
        for (int j = i + 1; j < arity; ++j) t[j] = t[j - 1] + 1;
    }
    return out;
}

namespace {
// Sorts indices, returns the permutation sign, or 0 on a repeated index.
int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] == idx[i + 1]) return 0;
    return sign;
}
}  // namespace

VForm VForm::zero(int arity, const Bundle& arg, const Bundle& value) {
    if (arg.chart_dim != value.chart_dim) throw BundleMismatch("VForm: bundles over different charts");
    return VForm{arity, arg, value, {}};
}

Section VForm::at(std::vector<int> indices) const {
    if (static_cast<int>(indices.size()) != arity) throw std::invalid_argument("VForm::at: wrong arity");
    int sign = sort_sign(indices);
    if (sign == 0) return zero_section(value);
    auto it = entries.find(indices);
    if (it == entries.end()) return zero_section(value);
    Section s(value, it->second);
    return sign == 1 ? s : -s;
}

void VForm::set(std::vector<int> idx, Section v) {
    require_same_bundle(v.bundle, value, "VForm::set");
    if (static_cast<int>(idx.size()) != arity) throw std::invalid_argument("VForm::set: wrong arity");
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] >= idx[i + 1]) throw std::invalid_argument("VForm::set: indices must be strictly increasing");
    if (v.is_zero())
        entries.erase(idx);
    else
        entries[std::move(idx)] = std::move(v.comps);
}

Section VForm::eval(const std::vector<Section>& args) const {
    if (static_cast<int>(args.size()) != arity) throw std::invalid_argument("VForm::eval: wrong number of arguments");
    for (const auto& a : args) require_same_bundle(a.bundle, arg, "VForm::eval");
    Section acc = zero_section(value);
    // Multilinear expansion over frame tuples; entries are antisymmetric.
    std::vector<int> idx(arity, 0);
    std::function<void(int, const Poly&)> rec = [&](int slot, const Poly& coeff) {
        if (coeff.is_zero()) return;
        if (slot == arity) {
            Section v = at(idx);
            if (!v.is_zero()) acc = acc + v.scaled(coeff);
            return;
        }
        for (int i = 0; i < arg.rank; ++i) {
            idx[slot] = i;
            rec(slot + 1, coeff * args[slot].comps[i]);
        }
    };
    rec(0, Poly::constant(arg.chart_dim, 1));
    return acc;
}

VForm VForm::operator+(const VForm& rhs) const {
    require_same_bundle(arg, rhs.arg, "VForm addition");
    require_same_bundle(value, rhs.value, "VForm addition");
    if (arity != rhs.arity) throw std::invalid_argument("VForm addition: arity mismatch");
    VForm r = *this;
    for (const auto& [idx, comps] : rhs.entries) {
        Section sum = r.at(idx) + Section(value, comps);
        if (sum.is_zero())
            r.entries.erase(idx);
        else
            r.entries[idx] = sum.comps;
    }
    return r;
}

VForm VForm::operator-(const VForm& rhs) const { return *this + (-rhs); }

VForm VForm::operator-() const {
    VForm r = *this;
    for (auto& [idx, comps] : r.entries)
        for (auto& p : comps) p = -p;
    return r;
}

VForm VForm::scaled(const Rational& c) const {
    VForm r = *this;
    if (c == 0) {
        r.entries.clear();
        return r;
    }
    for (auto& [idx, comps] : r.entries)
        for (auto& p : comps) p = p.scaled(c);
    return r;
}

bool VForm::is_zero() const {
    for (const auto& [idx, comps] : entries)
        for (const auto& p : comps)
            if (!p.is_zero()) return false;
    return true;
}

bool operator==(const VForm& a, const VForm& b) {
    if (a.arity != b.arity || a.arg != b.arg || a.value != b.value) return false;
    return (a - b).is_zero();
}

VForm vform_from_full_table(int arity, const Bundle& arg, const Bundle& value,
                            const std::function<Section(const std::vector<int>&)>& values) {
    VForm f = VForm::zero(arity, arg, value);
    for (const auto& idx : increasing_tuples(arg.rank, arity)) {
        Section v = values(idx);
        if (!v.is_zero()) f.set(idx, v);
    }
    // Verify antisymmetry: every tuple must match the sign-expanded stored value.
    std::vector<int> tuple(arity, 0);
    std::function<void(int)> rec = [&](int slot) {
        if (slot == arity) {
            Section direct = values(tuple);
            if (!(direct - f.at(tuple)).is_zero())
                throw std::invalid_argument("vform_from_full_table: value table is not antisymmetric");
            return;
        }
        for (int i = 0; i < arg.rank; ++i) {
            tuple[slot] = i;
            rec(slot + 1);
        }
    };
    rec(0);
    return f;
}

}  // namespace l2a
