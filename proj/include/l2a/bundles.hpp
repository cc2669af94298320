#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "l2a/poly.hpp"

namespace l2a {

struct Chart {
    int dim = 0;  // 0 is allowed: the base is a point
    std::string coordinate_name(int i) const { return "x" + std::to_string(i); }
    friend bool operator==(const Chart& a, const Chart& b) { return a.dim == b.dim; }
};

// A trivialized vector bundle over a chart. The dual is the same record with
// the `dual` flag flipped, so the double dual is identified with the original.
struct Bundle {
    int chart_dim = 0;
    int rank = 0;
    std::string label;
    bool dual = false;

    Bundle dualized() const { return {chart_dim, rank, label, !dual}; }
    std::string display() const { return dual ? label + "^*" : label; }

    friend bool operator==(const Bundle& a, const Bundle& b) {
        return a.chart_dim == b.chart_dim && a.rank == b.rank && a.label == b.label && a.dual == b.dual;
    }
    friend bool operator!=(const Bundle& a, const Bundle& b) { return !(a == b); }
};

inline Bundle make_bundle(int chart_dim, int rank, std::string label) {
    return Bundle{chart_dim, rank, std::move(label), false};
}

struct BundleMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require_same_bundle(const Bundle& a, const Bundle& b, const char* where) {
    if (a != b)
        throw BundleMismatch(std::string(where) + ": bundle mismatch (" + a.display() + " vs " + b.display() + ")");
}

/// A section of a trivialized bundle: one Poly per frame element. A section
/// of Q^* (a covector on Q) is a Section whose bundle has the dual flag set.
struct Section {
    Bundle bundle;
    std::vector<Poly> comps;

    Section() = default;
    Section(Bundle b, std::vector<Poly> c) : bundle(std::move(b)), comps(std::move(c)) {}

    bool is_zero() const;
    Section operator+(const Section& rhs) const;
    Section operator-(const Section& rhs) const;
    Section operator-() const;
    Section scaled(const Poly& f) const;
    Section scaled(const Rational& c) const;
    friend bool operator==(const Section& a, const Section& b) { return a.bundle == b.bundle && a.comps == b.comps; }

    std::string render() const;
};

using Covector = Section;  // by convention: a Section whose bundle is dualized

Section zero_section(const Bundle& b);
Section frame_section(const Bundle& b, int index);

// Canonical pairing of a bundle with its dual: sum of componentwise products.
// The arguments may come in either order; their bundles must be mutual duals.
Poly section_pairing(const Section& s, const Section& t);

/// Bundle map between trivialized bundles, stored as a dst.rank x src.rank
/// matrix of Poly. The transpose maps dual to dual with the matrix transposed.
struct HomField {
    Bundle src;
    Bundle dst;
    std::vector<std::vector<Poly>> m;  // [dst index][src index]

    static HomField zero(const Bundle& src, const Bundle& dst);
    static HomField identity(const Bundle& b);

    Section apply(const Section& s) const;
    HomField transpose() const;
    HomField compose(const HomField& inner) const;  // (*this) o inner
    HomField operator+(const HomField& rhs) const;
    HomField operator-(const HomField& rhs) const;
    HomField operator-() const;
    HomField scaled(const Poly& f) const;
    bool is_zero() const;
    friend bool operator==(const HomField& a, const HomField& b) {
        return a.src == b.src && a.dst == b.dst && a.m == b.m;
    }
};

/// Alternating k-form on a bundle with values in another bundle. Only entries
/// at strictly increasing frame-index tuples are stored; evaluation expands
/// signs, so antisymmetry holds by construction.
struct VForm {
    int arity = 0;
    Bundle arg;
    Bundle value;
    std::map<std::vector<int>, std::vector<Poly>> entries;  // increasing tuples -> value components

    static VForm zero(int arity, const Bundle& arg, const Bundle& value);

    // Value at a frame tuple (any index order; repeated indices give zero).
    Section at(std::vector<int> indices) const;
    Section eval(const std::vector<Section>& args) const;

    void set(std::vector<int> increasing_indices, Section value_section);

    VForm operator+(const VForm& rhs) const;
    VForm operator-(const VForm& rhs) const;
    VForm operator-() const;
    VForm scaled(const Rational& c) const;
    bool is_zero() const;
    friend bool operator==(const VForm& a, const VForm& b);
};

// Builds a form from values supplied on every frame tuple, verifying that the
// table is totally antisymmetric; throws std::invalid_argument if not.
VForm vform_from_full_table(int arity, const Bundle& arg, const Bundle& value,
                            const std::function<Section(const std::vector<int>&)>& values);

// Enumerates strictly increasing index tuples 0 <= i1 < ... < ik < rank.
std::vector<std::vector<int>> increasing_tuples(int rank, int arity);

}  // namespace l2a
