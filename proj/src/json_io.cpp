#include "l2a/json_io.hpp"

#include <fstream>
#include <sstream>

namespace l2a {

std::string kind_name(InstanceKind k) {
    switch (k) {
        case InstanceKind::SplitLie2: return "split_lie2";
        case InstanceKind::TwoRep: return "two_rep";
        case InstanceKind::MatchedPair: return "matched_pair";
        case InstanceKind::Courant: return "courant";
        case InstanceKind::Morphism: return "morphism";
        case InstanceKind::Shift: return "shift";
        case InstanceKind::LieAlgebroid: return "lie_algebroid";
    }
    throw std::logic_error("kind_name: bad kind");
}

InstanceKind kind_from_name(const std::string& s) {
    if (s == "split_lie2") return InstanceKind::SplitLie2;
    if (s == "two_rep") return InstanceKind::TwoRep;
    if (s == "matched_pair") return InstanceKind::MatchedPair;
    if (s == "courant") return InstanceKind::Courant;
    if (s == "morphism") return InstanceKind::Morphism;
    if (s == "shift") return InstanceKind::Shift;
    if (s == "lie_algebroid") return InstanceKind::LieAlgebroid;
    throw SchemaError("$.kind", "unknown instance kind '" + s + "'");
}

namespace {

constexpr int kSchemaVersion = 1;

// --- writers ---------------------------------------------------------------

Json bundle_to_json(const Bundle& b) {
    Json j;
    j["label"] = b.label;
    j["rank"] = b.rank;
    if (b.dual) j["dual"] = true;
    return j;
}

Json polys_to_json(const std::vector<Poly>& v) {
    Json j = Json::array();
    for (const auto& p : v) j.push_back(p.render());
    return j;
}

Json matrix_to_json(const std::vector<std::vector<Poly>>& m) {
    Json j = Json::array();
    for (const auto& row : m) j.push_back(polys_to_json(row));
    return j;
}

Json cube_to_json(const std::vector<std::vector<std::vector<Poly>>>& c) {
    Json j = Json::array();
    for (const auto& m : c) j.push_back(matrix_to_json(m));
    return j;
}

Json vform_to_json(const VForm& f) {
    Json j = Json::array();
    for (const auto& [idx, comps] : f.entries) {
        Json e;
        e["indices"] = idx;
        e["value"] = polys_to_json(comps);
        j.push_back(e);
    }
    return j;
}

Json hom2_to_json(const Hom2Form& h) {
    Json j = Json::array();
    for (const auto& [idx, m] : h.entries) {
        Json e;
        e["indices"] = Json::array({idx.first, idx.second});
        e["matrix"] = matrix_to_json(m);
        j.push_back(e);
    }
    return j;
}

// --- cursor-based readers ----------------------------------------------------

struct Cur {
    const Json& j;
    std::string path;

    Cur field(const std::string& key) const {
        auto it = j.find(key);
        if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
        return Cur{*it, path + "." + key};
    }
    bool has(const std::string& key) const { return j.contains(key); }
    Cur at(std::size_t i) const {
        if (!j.is_array() || i >= j.size()) throw SchemaError(path, "expected an array element " + std::to_string(i));
        return Cur{j[i], path + "[" + std::to_string(i) + "]"};
    }
    std::size_t size() const {
        if (!j.is_array()) throw SchemaError(path, "expected an array");
        return j.size();
    }
    int as_int() const {
        if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
        return j.get<int>();
    }
    std::uint64_t as_u64() const {
        if (!j.is_number_integer() && !j.is_number_unsigned()) throw SchemaError(path, "expected an integer");
        return j.get<std::uint64_t>();
    }
    bool as_bool() const {
        if (!j.is_boolean()) throw SchemaError(path, "expected a boolean");
        return j.get<bool>();
    }
    std::string as_string() const {
        if (!j.is_string()) throw SchemaError(path, "expected a string");
        return j.get<std::string>();
    }
    Poly as_poly(int vars) const {
        std::string s = as_string();
        try {
            return Poly::parse(vars, s);
        } catch (const PolyParseError& e) {
            throw SchemaError(path, std::string("polynomial parse error: ") + e.what());
        }
    }
};

Bundle bundle_from(const Cur& c, int chart_dim) {
    Bundle b;
    b.chart_dim = chart_dim;
    b.label = c.field("label").as_string();
    b.rank = c.field("rank").as_int();
    if (b.rank < 0) throw SchemaError(c.path + ".rank", "rank must be nonnegative");
    b.dual = c.has("dual") && c.field("dual").as_bool();
    return b;
}

std::vector<Poly> polys_from(const Cur& c, int vars, int expect) {
    if (static_cast<int>(c.size()) != expect)
        throw SchemaError(c.path, "expected " + std::to_string(expect) + " entries");
    std::vector<Poly> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(c.at(i).as_poly(vars));
    return out;
}

std::vector<std::vector<Poly>> matrix_from(const Cur& c, int vars, int rows, int cols) {
    if (static_cast<int>(c.size()) != rows) throw SchemaError(c.path, "expected " + std::to_string(rows) + " rows");
    std::vector<std::vector<Poly>> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(polys_from(c.at(i), vars, cols));
    return out;
}

std::vector<std::vector<std::vector<Poly>>> cube_from(const Cur& c, int vars, int d0, int d1, int d2) {
    if (static_cast<int>(c.size()) != d0) throw SchemaError(c.path, "expected " + std::to_string(d0) + " slices");
    std::vector<std::vector<std::vector<Poly>>> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(matrix_from(c.at(i), vars, d1, d2));
    return out;
}

VForm vform_from(const Cur& c, int arity, const Bundle& arg, const Bundle& value) {
    VForm f = VForm::zero(arity, arg, value);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Cur e = c.at(i);
        Cur idxc = e.field("indices");
        std::vector<int> idx;
        for (std::size_t t = 0; t < idxc.size(); ++t) idx.push_back(idxc.at(t).as_int());
        if (static_cast<int>(idx.size()) != arity) throw SchemaError(idxc.path, "wrong index tuple length");
        for (int v : idx)
            if (v < 0 || v >= arg.rank) throw SchemaError(idxc.path, "frame index out of range");
        for (std::size_t t = 0; t + 1 < idx.size(); ++t)
            if (idx[t] >= idx[t + 1]) throw SchemaError(idxc.path, "indices must be strictly increasing");
        Section val(value, polys_from(e.field("value"), arg.chart_dim, value.rank));
        f.set(idx, val);
    }
    return f;
}

Hom2Form hom2_from(const Cur& c, const Bundle& arg, const Bundle& hsrc, const Bundle& hdst) {
    Hom2Form h = Hom2Form::zero(arg, hsrc, hdst);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Cur e = c.at(i);
        Cur idxc = e.field("indices");
        if (idxc.size() != 2) throw SchemaError(idxc.path, "expected two indices");
        int a = idxc.at(0).as_int(), b = idxc.at(1).as_int();
        if (a < 0 || b < 0 || a >= arg.rank || b >= arg.rank) throw SchemaError(idxc.path, "frame index out of range");
        if (a >= b) throw SchemaError(idxc.path, "indices must be strictly increasing");
        HomField hf{hsrc, hdst, matrix_from(e.field("matrix"), arg.chart_dim, hdst.rank, hsrc.rank)};
        h.set(a, b, hf);
    }
    return h;
}

Anchor anchor_from(const Cur& c, const Bundle& b) {
    Anchor a = Anchor::zero(b);
    a.mat = matrix_from(c, b.chart_dim, b.rank, b.chart_dim);
    return a;
}

// --- per-kind payloads -------------------------------------------------------

void split_lie2_to_json(Json& j, const SplitLie2Data& d) {
    j["chart_dim"] = d.q.chart_dim;
    j["Q"] = bundle_to_json(d.q);
    j["B"] = bundle_to_json(d.b);
    j["anchor"] = matrix_to_json(d.rho.mat);
    j["l"] = matrix_to_json(d.l.m);
    j["bracket"] = cube_to_json(d.bracket.symbols);
    j["nabla"] = cube_to_json(d.nabla.symbols);
    j["omega"] = vform_to_json(d.omega);
}

SplitLie2Data split_lie2_from(const Cur& c) {
    int n = c.field("chart_dim").as_int();
    if (n < 0) throw SchemaError(c.path + ".chart_dim", "chart dimension must be nonnegative");
    SplitLie2Data d;
    d.q = bundle_from(c.field("Q"), n);
    d.b = bundle_from(c.field("B"), n);
    d.rho = anchor_from(c.field("anchor"), d.q);
    d.l = HomField::zero(d.b.dualized(), d.q);
    d.l.m = matrix_from(c.field("l"), n, d.q.rank, d.b.rank);
    d.bracket = DullBracket::zero(d.rho, true);
    d.bracket.symbols = cube_from(c.field("bracket"), n, d.q.rank, d.q.rank, d.q.rank);
    d.nabla = LinearConnection::zero(d.rho, d.b);
    d.nabla.symbols = cube_from(c.field("nabla"), n, d.q.rank, d.b.rank, d.b.rank);
    d.omega = vform_from(c.field("omega"), 3, d.q, d.b.dualized());
    d.validate_structure();
    return d;
}

void two_rep_to_json(Json& j, const TwoRepData& t) {
    j["chart_dim"] = t.e0.chart_dim;
    j["A"] = bundle_to_json(t.algebroid.bundle());
    j["E0"] = bundle_to_json(t.e0);
    j["E1"] = bundle_to_json(t.e1);
    j["anchor"] = matrix_to_json(t.algebroid.anchor().mat);
    j["bracket"] = cube_to_json(t.algebroid.bracket.symbols);
    j["partial"] = matrix_to_json(t.partial.m);
    j["nabla0"] = cube_to_json(t.nabla0.symbols);
    j["nabla1"] = cube_to_json(t.nabla1.symbols);
    j["R"] = hom2_to_json(t.r);
}

TwoRepData two_rep_from(const Cur& c) {
    int n = c.field("chart_dim").as_int();
    TwoRepData t;
    Bundle a = bundle_from(c.field("A"), n);
    t.e0 = bundle_from(c.field("E0"), n);
    t.e1 = bundle_from(c.field("E1"), n);
    Anchor an = anchor_from(c.field("anchor"), a);
    t.algebroid.bracket = DullBracket::zero(an, true);
    t.algebroid.bracket.symbols = cube_from(c.field("bracket"), n, a.rank, a.rank, a.rank);
    t.partial = HomField::zero(t.e0, t.e1);
    t.partial.m = matrix_from(c.field("partial"), n, t.e1.rank, t.e0.rank);
    t.nabla0 = LinearConnection::zero(an, t.e0);
    t.nabla0.symbols = cube_from(c.field("nabla0"), n, a.rank, t.e0.rank, t.e0.rank);
    t.nabla1 = LinearConnection::zero(an, t.e1);
    t.nabla1.symbols = cube_from(c.field("nabla1"), n, a.rank, t.e1.rank, t.e1.rank);
    t.r = hom2_from(c.field("R"), a, t.e1, t.e0);
    t.validate_structure();
    return t;
}

void matched_pair_to_json(Json& j, const MatchedPairData& m) {
    j["chart_dim"] = m.c.chart_dim;
    j["A"] = bundle_to_json(m.a.bundle());
    j["B"] = bundle_to_json(m.b.bundle());
    j["C"] = bundle_to_json(m.c);
    j["anchorA"] = matrix_to_json(m.a.anchor().mat);
    j["bracketA"] = cube_to_json(m.a.bracket.symbols);
    j["anchorB"] = matrix_to_json(m.b.anchor().mat);
    j["bracketB"] = cube_to_json(m.b.bracket.symbols);
    j["partialA"] = matrix_to_json(m.partial_a.m);
    j["partialB"] = matrix_to_json(m.partial_b.m);
    j["nablaAB"] = cube_to_json(m.nabla_ab.symbols);
    j["nablaAC"] = cube_to_json(m.nabla_ac.symbols);
    j["nablaBA"] = cube_to_json(m.nabla_ba.symbols);
    j["nablaBC"] = cube_to_json(m.nabla_bc.symbols);
    j["RA"] = hom2_to_json(m.ra);
    j["RB"] = hom2_to_json(m.rb);
}

MatchedPairData matched_pair_from(const Cur& c) {
    int n = c.field("chart_dim").as_int();
    MatchedPairData m;
    Bundle a = bundle_from(c.field("A"), n);
    Bundle b = bundle_from(c.field("B"), n);
    m.c = bundle_from(c.field("C"), n);
    Anchor aa = anchor_from(c.field("anchorA"), a);
    m.a.bracket = DullBracket::zero(aa, true);
    m.a.bracket.symbols = cube_from(c.field("bracketA"), n, a.rank, a.rank, a.rank);
    Anchor ab = anchor_from(c.field("anchorB"), b);
    m.b.bracket = DullBracket::zero(ab, true);
    m.b.bracket.symbols = cube_from(c.field("bracketB"), n, b.rank, b.rank, b.rank);
    m.partial_a = HomField::zero(m.c, a);
    m.partial_a.m = matrix_from(c.field("partialA"), n, a.rank, m.c.rank);
    m.partial_b = HomField::zero(m.c, b);
    m.partial_b.m = matrix_from(c.field("partialB"), n, b.rank, m.c.rank);
    m.nabla_ab = LinearConnection::zero(aa, b);
    m.nabla_ab.symbols = cube_from(c.field("nablaAB"), n, a.rank, b.rank, b.rank);
    m.nabla_ac = LinearConnection::zero(aa, m.c);
    m.nabla_ac.symbols = cube_from(c.field("nablaAC"), n, a.rank, m.c.rank, m.c.rank);
    m.nabla_ba = LinearConnection::zero(ab, a);
    m.nabla_ba.symbols = cube_from(c.field("nablaBA"), n, b.rank, a.rank, a.rank);
    m.nabla_bc = LinearConnection::zero(ab, m.c);
    m.nabla_bc.symbols = cube_from(c.field("nablaBC"), n, b.rank, m.c.rank, m.c.rank);
    m.ra = hom2_from(c.field("RA"), a, b, m.c);
    m.rb = hom2_from(c.field("RB"), b, a, m.c);
    m.validate_structure();
    return m;
}

void courant_to_json(Json& j, const CourantData& cd, const Instance& inst) {
    j["chart_dim"] = cd.e.chart_dim;
    j["E"] = bundle_to_json(cd.e);
    j["scalar"] = cd.scalar;
    if (!cd.scalar) j["V"] = bundle_to_json(cd.v);
    j["anchor"] = matrix_to_json(cd.rho.mat);
    j["pairing"] = cube_to_json(cd.pairing);
    j["bracket"] = cube_to_json(cd.bracket);
    if (!cd.scalar) j["rho_tilde"] = cube_to_json(cd.rho_tilde);
    Json d0 = Json::array();
    for (const auto& s : cd.d0) d0.push_back(polys_to_json(s.comps));
    j["D0"] = d0;
    Json z = Json::array();
    for (const auto& row : cd.zeta) {
        Json zr = Json::array();
        for (const auto& s : row) zr.push_back(polys_to_json(s.comps));
        z.push_back(zr);
    }
    j["zeta"] = z;
    if (inst.metric_connection) j["metric_connection"] = cube_to_json(*inst.metric_connection);
}

CourantData courant_from(const Cur& c, Instance& inst) {
    int n = c.field("chart_dim").as_int();
    CourantData cd;
    cd.e = bundle_from(c.field("E"), n);
    cd.scalar = c.field("scalar").as_bool();
    cd.v = cd.scalar ? scalar_bundle(n) : bundle_from(c.field("V"), n);
    cd.rho = anchor_from(c.field("anchor"), cd.e);
    cd.pairing = cube_from(c.field("pairing"), n, cd.e.rank, cd.e.rank, cd.v.rank);
    cd.bracket = cube_from(c.field("bracket"), n, cd.e.rank, cd.e.rank, cd.e.rank);
    if (cd.scalar) {
        cd.rho_tilde.assign(cd.e.rank, std::vector<std::vector<Poly>>(1, std::vector<Poly>(1, Poly(n))));
    } else {
        cd.rho_tilde = cube_from(c.field("rho_tilde"), n, cd.e.rank, cd.v.rank, cd.v.rank);
    }
    bool has_d = c.has("D0") && c.has("zeta");
    if (has_d) {
        Cur d0c = c.field("D0");
        if (static_cast<int>(d0c.size()) != cd.v.rank) throw SchemaError(d0c.path, "expected one section per V frame");
        for (std::size_t k = 0; k < d0c.size(); ++k)
            cd.d0.push_back(Section(cd.e, polys_from(d0c.at(k), n, cd.e.rank)));
        Cur zc = c.field("zeta");
        if (static_cast<int>(zc.size()) != n) throw SchemaError(zc.path, "expected one row per chart coordinate");
        for (std::size_t a = 0; a < zc.size(); ++a) {
            Cur row = zc.at(a);
            if (static_cast<int>(row.size()) != cd.v.rank)
                throw SchemaError(row.path, "expected one section per V frame");
            std::vector<Section> r;
            for (std::size_t k = 0; k < row.size(); ++k) r.push_back(Section(cd.e, polys_from(row.at(k), n, cd.e.rank)));
            cd.zeta.push_back(std::move(r));
        }
    } else if (cd.scalar) {
        // derive D = rho^* o d from the (constant, invertible) Gram matrix
        cd.d0 = {zero_section(cd.e)};
        cd.zeta.assign(n, std::vector<Section>(1, zero_section(cd.e)));
        try {
            for (int a = 0; a < n; ++a) {
                std::vector<Poly> theta(n, Poly(n));
                theta[a] = Poly::constant(n, 1);
                cd.zeta[a][0] = cd.raise(cd.rho.pullback(theta));
            }
        } catch (const std::invalid_argument& e) {
            throw SchemaError(c.path, std::string("cannot derive the D-map: ") + e.what());
        }
    } else {
        throw SchemaError(c.path, "V-valued courant instances must carry D0 and zeta tables");
    }
    if (c.has("metric_connection"))
        inst.metric_connection = cube_from(c.field("metric_connection"), n, n, cd.e.rank, cd.e.rank);
    cd.validate_structure();
    return cd;
}

void morphism_to_json(Json& j, const Morphism& m) {
    j["src_chart_dim"] = m.src_dim;
    j["dst_chart_dim"] = m.dst_dim;
    j["rank_q_src"] = m.rank_q_src;
    j["rank_q_dst"] = m.rank_q_dst;
    j["rank_b_src"] = m.rank_b_src;
    j["rank_b_dst"] = m.rank_b_dst;
    j["mu0"] = polys_to_json(m.mu0);
    j["muQ"] = matrix_to_json(m.mu_q);
    j["muB"] = matrix_to_json(m.mu_b);
    j["mu12"] = vform_to_json(m.mu12);
}

Morphism morphism_from(const Cur& c) {
    Morphism m;
    m.src_dim = c.field("src_chart_dim").as_int();
    m.dst_dim = c.field("dst_chart_dim").as_int();
    m.rank_q_src = c.field("rank_q_src").as_int();
    m.rank_q_dst = c.field("rank_q_dst").as_int();
    m.rank_b_src = c.field("rank_b_src").as_int();
    m.rank_b_dst = c.field("rank_b_dst").as_int();
    m.mu0 = polys_from(c.field("mu0"), m.src_dim, m.dst_dim);
    m.mu_q = matrix_from(c.field("muQ"), m.src_dim, m.rank_q_dst, m.rank_q_src);
    m.mu_b = matrix_from(c.field("muB"), m.src_dim, m.rank_b_dst, m.rank_b_src);
    Bundle arg{m.src_dim, m.rank_q_src, "Q1", false};
    Bundle val{m.src_dim, m.rank_b_dst, "mu0*B2", true};
    m.mu12 = vform_from(c.field("mu12"), 2, arg, val);
    m.validate_shape();
    return m;
}

void shift_to_json(Json& j, const VForm& phi) {
    j["chart_dim"] = phi.arg.chart_dim;
    j["Q"] = bundle_to_json(phi.arg);
    j["B"] = bundle_to_json(phi.value.dualized());
    j["phi"] = vform_to_json(phi);
}

VForm shift_from(const Cur& c) {
    int n = c.field("chart_dim").as_int();
    Bundle q = bundle_from(c.field("Q"), n);
    Bundle b = bundle_from(c.field("B"), n);
    return vform_from(c.field("phi"), 2, q, b.dualized());
}

void lie_algebroid_to_json(Json& j, const LieAlgebroidData& a) {
    j["chart_dim"] = a.bundle().chart_dim;
    j["bundle"] = bundle_to_json(a.bundle());
    j["anchor"] = matrix_to_json(a.anchor().mat);
    j["bracket"] = cube_to_json(a.bracket.symbols);
}

LieAlgebroidData lie_algebroid_from(const Cur& c) {
    int n = c.field("chart_dim").as_int();
    Bundle b = bundle_from(c.field("bundle"), n);
    Anchor an = anchor_from(c.field("anchor"), b);
    LieAlgebroidData a;
    a.bracket = DullBracket::zero(an, true);
    a.bracket.symbols = cube_from(c.field("bracket"), n, b.rank, b.rank, b.rank);
    return a;
}

}  // namespace

Json instance_to_json(const Instance& inst) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind_name(inst.kind);
    j["name"] = inst.name;
    if (inst.seed) j["seed"] = inst.seed;
    switch (inst.kind) {
        case InstanceKind::SplitLie2: split_lie2_to_json(j, inst.split_lie2); break;
        case InstanceKind::TwoRep: two_rep_to_json(j, inst.two_rep); break;
        case InstanceKind::MatchedPair: matched_pair_to_json(j, inst.matched_pair); break;
        case InstanceKind::Courant: courant_to_json(j, inst.courant, inst); break;
        case InstanceKind::Morphism: morphism_to_json(j, inst.morphism); break;
        case InstanceKind::Shift: shift_to_json(j, inst.shift_phi); break;
        case InstanceKind::LieAlgebroid: lie_algebroid_to_json(j, inst.lie_algebroid); break;
    }
    return j;
}

Instance instance_from_json(const Json& j) {
    Cur root{j, "$"};
    int version = root.field("schema_version").as_int();
    if (version != kSchemaVersion)
        throw SchemaError("$.schema_version", "unsupported schema version " + std::to_string(version));
    Instance inst;
    inst.kind = kind_from_name(root.field("kind").as_string());
    inst.name = root.has("name") ? root.field("name").as_string() : "";
    inst.seed = root.has("seed") ? root.field("seed").as_u64() : 0;
    switch (inst.kind) {
        case InstanceKind::SplitLie2: inst.split_lie2 = split_lie2_from(root); break;
        case InstanceKind::TwoRep: inst.two_rep = two_rep_from(root); break;
        case InstanceKind::MatchedPair: inst.matched_pair = matched_pair_from(root); break;
        case InstanceKind::Courant: inst.courant = courant_from(root, inst); break;
        case InstanceKind::Morphism: inst.morphism = morphism_from(root); break;
        case InstanceKind::Shift: inst.shift_phi = shift_from(root); break;
        case InstanceKind::LieAlgebroid: inst.lie_algebroid = lie_algebroid_from(root); break;
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("JSON parse error in '" + path + "': " + e.what());
    }
    return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << instance_to_json(inst).dump(2) << "\n";
}

Json report_to_json(const Report& rep, const std::string& instance_name) {
    static const char* keys[] = {"i", "j", "k", "l", "m", "n"};
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["check"] = rep.check;
    j["instance"] = instance_name;
    j["passed"] = rep.passed();
    j["axioms_checked"] = rep.axioms_checked;
    Json v = Json::array();
    for (const auto& viol : rep.violations) {
        Json e;
        e["axiom"] = viol.axiom;
        Json w;
        for (std::size_t i = 0; i < viol.witness.size() && i < 6; ++i) w[keys[i]] = viol.witness[i];
        e["witness"] = w;
        e["residual"] = viol.residual;
        v.push_back(e);
    }
    j["violations"] = v;
    return j;
}

std::string report_to_text(const Report& rep, const std::string& instance_name) {
    std::ostringstream out;
    out << rep.check << " on " << instance_name << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& v : rep.violations) {
        out << "  " << v.axiom << " at (";
        for (std::size_t i = 0; i < v.witness.size(); ++i) {
            if (i) out << ",";
            out << v.witness[i];
        }
        out << "): " << v.residual << "\n";
    }
    return out.str();
}

}  // namespace l2a
