#include "l2a/generate.hpp"

namespace l2a {

Section random_section(Rng& rng, const Bundle& b, int max_deg) {
    Section s = zero_section(b);
    for (int i = 0; i < b.rank; ++i) s.comps[i] = random_poly(rng, b.chart_dim, max_deg);
    return s;
}

DullBracket random_table_bracket(Rng& rng, int rank, int chart_dim, bool random_anchor) {
    Bundle q = make_bundle(chart_dim, rank, "Q");
    Anchor a = Anchor::zero(q);
    if (random_anchor)
        for (int i = 0; i < rank; ++i)
            for (int c = 0; c < chart_dim; ++c) a.mat[i][c] = random_poly(rng, chart_dim, 1);
    DullBracket db = DullBracket::zero(a, false);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            for (int k = 0; k < rank; ++k) db.symbols[i][j][k] = random_poly(rng, chart_dim, 1);
    return db;
}

LinearConnection random_connection(Rng& rng, const Anchor& a, const Bundle& module, int max_deg) {
    LinearConnection cn = LinearConnection::zero(a, module);
    for (int i = 0; i < a.bundle.rank; ++i)
        for (int j = 0; j < module.rank; ++j)
            for (int k = 0; k < module.rank; ++k) cn.symbols[i][j][k] = random_poly(rng, module.chart_dim, max_deg);
    return cn;
}

VForm random_two_form(Rng& rng, const Bundle& q, const Bundle& value_dual_b, int max_deg) {
    VForm f = VForm::zero(2, q, value_dual_b);
    for (const auto& idx : increasing_tuples(q.rank, 2)) {
        Section v = random_section(rng, value_dual_b, max_deg);
        if (!v.is_zero()) f.set(idx, v);
    }
    return f;
}

DullBracket so3_bracket() {
    Bundle q = make_bundle(0, 3, "Q");
    DullBracket db = DullBracket::zero(Anchor::zero(q), true);
    auto set = [&](int i, int j, int k, int sign) {
        db.symbols[i][j][k] = Poly::constant(0, sign);
        db.symbols[j][i][k] = Poly::constant(0, -sign);
    };
    set(0, 1, 2, 1);
    set(1, 2, 0, 1);
    set(2, 0, 1, 1);
    return db;
}

LieAlgebroidData so3_algebroid() {
    LieAlgebroidData a;
    a.bracket = so3_bracket();
    a.bracket.anchor.bundle.label = "A";
    return a;
}

DullBracket tangent_bracket(int dim) {
    Bundle tm = make_bundle(dim, dim, "TM");
    Anchor a = Anchor::zero(tm);
    for (int i = 0; i < dim; ++i) a.mat[i][i] = Poly::constant(dim, 1);
    return DullBracket::zero(a, true);
}

LieAlgebroidData tangent_algebroid(int dim) {
    LieAlgebroidData a;
    a.bracket = tangent_bracket(dim);
    return a;
}

LieAlgebroidData abelian_algebroid(const Bundle& b) {
    LieAlgebroidData a;
    a.bracket = DullBracket::zero(Anchor::zero(b), true);
    return a;
}

SplitLie2Data string_lie2() {
    SplitLie2Data d = zero_split_lie2(0, 3, 1);
    d.bracket = so3_bracket();
    d.bracket.anchor.bundle.label = "Q";
    d.rho = d.bracket.anchor;
    d.nabla.anchor = d.rho;
    Bundle bs = d.b.dualized();
    d.omega.set({0, 1, 2}, frame_section(bs, 0));
    return d;
}

SplitLie2Data so3_b0_lie2() {
    SplitLie2Data d = zero_split_lie2(0, 3, 0);
    d.bracket = so3_bracket();
    d.bracket.anchor.bundle.label = "Q";
    d.rho = d.bracket.anchor;
    d.nabla.anchor = d.rho;
    return d;
}

TwoRepData tangent_two_rep(int dim, int rank, const std::vector<std::vector<std::vector<Poly>>>& gamma) {
    TwoRepData t;
    t.algebroid = tangent_algebroid(dim);
    t.algebroid.bracket.anchor.bundle.label = "A";
    t.e0 = make_bundle(dim, rank, "E0");
    t.e1 = make_bundle(dim, rank, "E1");
    t.partial = HomField::zero(t.e0, t.e1);
    for (int i = 0; i < rank; ++i) t.partial.m[i][i] = Poly::constant(dim, 1);
    t.nabla0 = LinearConnection::zero(t.algebroid.anchor(), t.e0);
    t.nabla0.symbols = gamma;
    t.nabla1 = LinearConnection::zero(t.algebroid.anchor(), t.e1);
    t.nabla1.symbols = gamma;
    t.r = Hom2Form::zero(t.algebroid.bundle(), t.e1, t.e0);
    // R = R_nabla, transported along Id: E0 -> E1
    for (const auto& p : increasing_tuples(dim, 2)) {
        HomField h = HomField::zero(t.e1, t.e0);
        bool nz = false;
        for (int v = 0; v < rank; ++v) {
            Section col = conn_curvature(t.nabla0, t.algebroid.bracket, frame_section(t.algebroid.bundle(), p[0]),
                                         frame_section(t.algebroid.bundle(), p[1]), frame_section(t.e0, v));
            for (int u = 0; u < rank; ++u) {
                h.m[u][v] = col.comps[u];
                nz = nz || !col.comps[u].is_zero();
            }
        }
        if (nz) t.r.set(p[0], p[1], h);
    }
    return t;
}

TwoRepData tangent_two_rep_random(Rng& rng, int dim, int rank, int max_deg) {
    std::vector<std::vector<std::vector<Poly>>> gamma(
        dim, std::vector<std::vector<Poly>>(rank, std::vector<Poly>(rank, Poly(dim))));
    for (int a = 0; a < dim; ++a)
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) gamma[a][i][j] = random_poly(rng, dim, max_deg);
    return tangent_two_rep(dim, rank, gamma);
}

MatchedPairData sl2_matched_pair() {
    // sl(2) split as span{e} (+) span{h, f}: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    MatchedPairData m;
    Bundle ab = make_bundle(0, 1, "A");
    Bundle bb = make_bundle(0, 2, "B");
    m.c = make_bundle(0, 0, "C");
    m.a = abelian_algebroid(ab);
    m.b.bracket = DullBracket::zero(Anchor::zero(bb), true);
    m.b.bracket.symbols[0][1][1] = Poly::constant(0, -2);  // [h,f] = -2f
    m.b.bracket.symbols[1][0][1] = Poly::constant(0, 2);
    m.partial_a = HomField::zero(m.c, ab);
    m.partial_b = HomField::zero(m.c, bb);
    m.nabla_ab = LinearConnection::zero(m.a.anchor(), bb);
    m.nabla_ab.symbols[0][1][0] = Poly::constant(0, 1);  // nabla_e f = h
    m.nabla_ac = LinearConnection::zero(m.a.anchor(), m.c);
    m.nabla_ba = LinearConnection::zero(m.b.anchor(), ab);
    m.nabla_ba.symbols[0][0][0] = Poly::constant(0, 2);  // nabla_h e = 2e
    m.nabla_bc = LinearConnection::zero(m.b.anchor(), m.c);
    m.ra = Hom2Form::zero(ab, bb, m.c);
    m.rb = Hom2Form::zero(bb, ab, m.c);
    return m;
}

MatchedPairData zero_matched_pair() {
    MatchedPairData m;
    Bundle ab = make_bundle(0, 1, "A");
    Bundle bb = make_bundle(0, 1, "B");
    m.c = make_bundle(0, 1, "C");
    m.a = abelian_algebroid(ab);
    m.b = abelian_algebroid(bb);
    m.partial_a = HomField::zero(m.c, ab);
    m.partial_b = HomField::zero(m.c, bb);
    m.nabla_ab = LinearConnection::zero(m.a.anchor(), bb);
    m.nabla_ac = LinearConnection::zero(m.a.anchor(), m.c);
    m.nabla_ba = LinearConnection::zero(m.b.anchor(), ab);
    m.nabla_bc = LinearConnection::zero(m.b.anchor(), m.c);
    m.ra = Hom2Form::zero(ab, bb, m.c);
    m.rb = Hom2Form::zero(bb, ab, m.c);
    return m;
}

namespace {

MatchedPairData blank_matched(int rank_a, int rank_b, int rank_c) {
    MatchedPairData m;
    Bundle ab = make_bundle(0, rank_a, "A");
    Bundle bb = make_bundle(0, rank_b, "B");
    m.c = make_bundle(0, rank_c, "C");
    m.a = abelian_algebroid(ab);
    m.b = abelian_algebroid(bb);
    m.partial_a = HomField::zero(m.c, ab);
    m.partial_b = HomField::zero(m.c, bb);
    m.nabla_ab = LinearConnection::zero(m.a.anchor(), bb);
    m.nabla_ac = LinearConnection::zero(m.a.anchor(), m.c);
    m.nabla_ba = LinearConnection::zero(m.b.anchor(), ab);
    m.nabla_bc = LinearConnection::zero(m.b.anchor(), m.c);
    m.ra = Hom2Form::zero(ab, bb, m.c);
    m.rb = Hom2Form::zero(bb, ab, m.c);
    return m;
}

Poly one0() { return Poly::constant(0, 1); }

}  // namespace

MatchedMutant matched_mutant(int k) {
    MatchedMutant out;
    out.failing = "M" + std::to_string(k);
    switch (k) {
        case 1: {
            // A, B rank 1 trivial, C rank 2, partial_A = (c1 -> a); mutating
            // nabla^{AC} by c1 -> c2 breaks only the symmetrized condition.
            MatchedPairData m = blank_matched(1, 1, 2);
            m.partial_a.m[0][0] = one0();
            out.base = m;
            m.nabla_ac.symbols[0][0][1] = one0();
            out.mutant = m;
            return out;
        }
        case 2:
        case 3: {
            // The 2-dimensional nonabelian algebra acting on itself; adding
            // the flat non-adjoint correction F breaks only equivariance.
            MatchedPairData m = (k == 2) ? blank_matched(2, 1, 2) : blank_matched(1, 2, 2);
            auto& alg = (k == 2) ? m.a : m.b;
            auto& conn = (k == 2) ? m.nabla_ac : m.nabla_bc;
            auto& part = (k == 2) ? m.partial_a : m.partial_b;
            alg.bracket.symbols[0][1][1] = one0();   // [a1, a2] = a2
            alg.bracket.symbols[1][0][1] = -one0();
            part.m[0][0] = one0();
            part.m[1][1] = one0();
            // adjoint action: ad_{a1} = diag(0, 1), ad_{a2} = -E_{21}
            conn.symbols[0][1][1] = one0();
            conn.symbols[1][0][1] = -one0();
            out.base = m;
            // F with gamma = (0, -1): F_{a1} a2 = -a2, F_{a2} a1 = a2
            conn.symbols[0][1][1] = conn.symbols[0][1][1] - one0();
            conn.symbols[1][0][1] = conn.symbols[1][0][1] + one0();
            out.mutant = m;
            return out;
        }
        case 4: {
            // A rank 2 abelian, C rank 2, partial_A = (c1 -> a1); R_A valued
            // in ker(partial_A) breaks only the curvature coupling.
            MatchedPairData m = blank_matched(2, 1, 2);
            m.partial_a.m[0][0] = one0();
            out.base = m;
            HomField h = HomField::zero(m.b.bundle(), m.c);
            h.m[1][0] = one0();  // b -> c2
            m.ra.set(0, 1, h);
            out.mutant = m;
            return out;
        }
        case 5:
        case 6: {
            // so(3) on one side, rank-1 trivial other side, C = 0; a
            // non-derivation action breaks only the derivation condition.
            MatchedPairData m = blank_matched(k == 5 ? 3 : 1, k == 5 ? 1 : 3, 0);
            auto& alg = (k == 5) ? m.a : m.b;
            alg.bracket = so3_bracket();
            alg.bracket.anchor.bundle.label = (k == 5) ? "A" : "B";
            if (k == 5)
                m.nabla_ba.anchor = m.b.anchor(), m.nabla_ba.module = m.a.bundle();
            out.base = m;
            auto& conn = (k == 5) ? m.nabla_ba : m.nabla_ab;
            conn.symbols[0][0][0] = one0();
            out.mutant = m;
            return out;
        }
        case 7: {
            // Nontrivial B-action on C plus a constant R_A: only the
            // d_{nabla} R compatibility fails.
            MatchedPairData m = blank_matched(2, 2, 1);
            m.nabla_bc.symbols[1][0][0] = one0();  // b2 acts as the identity on C
            out.base = m;
            HomField h = HomField::zero(m.b.bundle(), m.c);
            h.m[0][0] = one0();  // b1 -> c1
            m.ra.set(0, 1, h);
            out.mutant = m;
            return out;
        }
        default:
            throw std::invalid_argument("matched_mutant: k must be in 1..7");
    }
}

std::vector<std::string> catalog_names() {
    return {"so3",          "sl2_matched",  "zero_matched", "string_so3", "so3_b0",      "allzero_lie2",
            "tangent_two_rep", "tangent_two_rep_r2", "standard_r1",  "standard_r2", "drinfeld_so3", "quadratic_so3"};
}

Instance catalog_instance(const std::string& name) {
    Instance inst;
    inst.name = name;
    if (name == "so3") {
        inst.kind = InstanceKind::LieAlgebroid;
        inst.lie_algebroid = so3_algebroid();
        return inst;
    }
    if (name == "sl2_matched") {
        inst.kind = InstanceKind::MatchedPair;
        inst.matched_pair = sl2_matched_pair();
        return inst;
    }
    if (name == "zero_matched") {
        inst.kind = InstanceKind::MatchedPair;
        inst.matched_pair = zero_matched_pair();
        return inst;
    }
    if (name == "string_so3") {
        inst.kind = InstanceKind::SplitLie2;
        inst.split_lie2 = string_lie2();
        return inst;
    }
    if (name == "so3_b0") {
        inst.kind = InstanceKind::SplitLie2;
        inst.split_lie2 = so3_b0_lie2();
        return inst;
    }
    if (name == "allzero_lie2") {
        inst.kind = InstanceKind::SplitLie2;
        inst.split_lie2 = zero_split_lie2(0, 1, 1);
        return inst;
    }
    if (name == "tangent_two_rep") {
        inst.kind = InstanceKind::TwoRep;
        std::vector<std::vector<std::vector<Poly>>> g(1, std::vector<std::vector<Poly>>(1, std::vector<Poly>(1)));
        g[0][0][0] = Poly::variable(1, 0);
        inst.two_rep = tangent_two_rep(1, 1, g);
        return inst;
    }
    if (name == "tangent_two_rep_r2") {
        // curved: Gamma = x1 dx0 on a rank-1 bundle over R^2
        inst.kind = InstanceKind::TwoRep;
        std::vector<std::vector<std::vector<Poly>>> g(2, std::vector<std::vector<Poly>>(1, std::vector<Poly>(1, Poly(2))));
        g[0][0][0] = Poly::variable(2, 1);
        inst.two_rep = tangent_two_rep(2, 1, g);
        return inst;
    }
    if (name == "standard_r1") {
        inst.kind = InstanceKind::Courant;
        inst.courant = standard_courant(Chart{1});
        return inst;
    }
    if (name == "standard_r2") {
        inst.kind = InstanceKind::Courant;
        inst.courant = standard_courant(Chart{2});
        return inst;
    }
    if (name == "drinfeld_so3") {
        inst.kind = InstanceKind::Courant;
        LieAlgebroidData so3 = so3_algebroid();
        inst.courant = drinfeld_double(so3, abelian_algebroid(so3.bundle().dualized()));
        return inst;
    }
    if (name == "quadratic_so3") {
        inst.kind = InstanceKind::Courant;
        std::vector<std::vector<Rational>> gram(3, std::vector<Rational>(3, Rational(0)));
        for (int i = 0; i < 3; ++i) gram[i][i] = 1;
        inst.courant = quadratic_lie_algebra(so3_algebroid(), gram);
        return inst;
    }
    throw std::invalid_argument("unknown catalog instance '" + name + "'");
}

namespace {

void bump(Poly& p) { p += Poly::constant(p.vars(), 1); }

void mutate_cube(std::vector<std::vector<std::vector<Poly>>>& cube, Rng& rng) {
    if (cube.empty() || cube[0].empty() || cube[0][0].empty())
        throw std::invalid_argument("mutation target table is empty for this instance");
    int i = rng.below(static_cast<int>(cube.size()));
    int j = rng.below(static_cast<int>(cube[0].size()));
    int k = rng.below(static_cast<int>(cube[0][0].size()));
    bump(cube[i][j][k]);
}

void mutate_matrix(std::vector<std::vector<Poly>>& m, Rng& rng) {
    if (m.empty() || m[0].empty()) throw std::invalid_argument("mutation target table is empty for this instance");
    bump(m[rng.below(static_cast<int>(m.size()))][rng.below(static_cast<int>(m[0].size()))]);
}

void mutate_vform(VForm& f, Rng& rng) {
    auto tuples = increasing_tuples(f.arg.rank, f.arity);
    if (tuples.empty() || f.value.rank == 0)
        throw std::invalid_argument("mutation target table is empty for this instance");
    const auto& idx = tuples[rng.below(static_cast<int>(tuples.size()))];
    Section v = f.at(idx);
    bump(v.comps[rng.below(f.value.rank)]);
    f.set(idx, v);
}

void mutate_hom2(Hom2Form& h, Rng& rng) {
    auto tuples = increasing_tuples(h.arg.rank, 2);
    if (tuples.empty() || h.hsrc.rank == 0 || h.hdst.rank == 0)
        throw std::invalid_argument("mutation target table is empty for this instance");
    const auto& idx = tuples[rng.below(static_cast<int>(tuples.size()))];
    HomField hf = h.at(idx[0], idx[1]);
    bump(hf.m[rng.below(h.hdst.rank)][rng.below(h.hsrc.rank)]);
    h.set(idx[0], idx[1], hf);
}

void mutate_instance(Instance& inst, const std::string& target, Rng& rng) {
    switch (inst.kind) {
        case InstanceKind::SplitLie2: {
            auto& d = inst.split_lie2;
            if (target == "bracket") return mutate_cube(d.bracket.symbols, rng);
            if (target == "nabla") return mutate_cube(d.nabla.symbols, rng);
            if (target == "omega") return mutate_vform(d.omega, rng);
            if (target == "l") return mutate_matrix(d.l.m, rng);
            if (target == "anchor") return mutate_matrix(d.rho.mat, rng);
            break;
        }
        case InstanceKind::TwoRep: {
            auto& t = inst.two_rep;
            if (target == "partial") return mutate_matrix(t.partial.m, rng);
            if (target == "nabla0") return mutate_cube(t.nabla0.symbols, rng);
            if (target == "nabla1") return mutate_cube(t.nabla1.symbols, rng);
            if (target == "R") return mutate_hom2(t.r, rng);
            break;
        }
        case InstanceKind::MatchedPair: {
            auto& m = inst.matched_pair;
            if (target == "nablaAB") return mutate_cube(m.nabla_ab.symbols, rng);
            if (target == "nablaAC") return mutate_cube(m.nabla_ac.symbols, rng);
            if (target == "nablaBA") return mutate_cube(m.nabla_ba.symbols, rng);
            if (target == "nablaBC") return mutate_cube(m.nabla_bc.symbols, rng);
            if (target == "RA") return mutate_hom2(m.ra, rng);
            if (target == "RB") return mutate_hom2(m.rb, rng);
            if (target == "partialA") return mutate_matrix(m.partial_a.m, rng);
            if (target == "partialB") return mutate_matrix(m.partial_b.m, rng);
            break;
        }
        case InstanceKind::Courant: {
            auto& c = inst.courant;
            if (target == "bracket") return mutate_cube(c.bracket, rng);
            break;
        }
        case InstanceKind::LieAlgebroid: {
            auto& a = inst.lie_algebroid;
            if (target == "bracket") return mutate_cube(a.bracket.symbols, rng);
            if (target == "anchor") return mutate_matrix(a.bracket.anchor.mat, rng);
            break;
        }
        default:
            break;
    }
    throw std::invalid_argument("unsupported mutation target '" + target + "' for kind " + kind_name(inst.kind));
}

int clamp(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

Instance gen_instance(const GenOptions& opt) {
    if (opt.chart_dim < 0 || opt.chart_dim > 3)
        throw std::invalid_argument("gen_instance: chart_dim must be between 0 and 3");
    if (opt.rank < 0 || opt.rank > 6 || opt.rank_b < 0 || opt.rank_b > 6)
        throw std::invalid_argument("gen_instance: ranks must be between 0 and 6");
    Rng rng(opt.seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    Instance inst;
    inst.seed = opt.seed;
    inst.name = opt.kind + "#" + std::to_string(opt.seed);

    if (opt.kind == "lie_algebroid") {
        inst.kind = InstanceKind::LieAlgebroid;
        switch (rng.below(3)) {
            case 0: inst.lie_algebroid = so3_algebroid(); break;
            case 1: inst.lie_algebroid = tangent_algebroid(clamp(opt.chart_dim, 1, 3)); break;
            default: inst.lie_algebroid = abelian_algebroid(make_bundle(opt.chart_dim, clamp(opt.rank, 1, 6), "A"));
        }
    } else if (opt.kind == "two_rep") {
        inst.kind = InstanceKind::TwoRep;
        inst.two_rep = tangent_two_rep_random(rng, clamp(opt.chart_dim, 1, 3), clamp(opt.rank, 1, 6), 2);
    } else if (opt.kind == "matched_pair") {
        inst.kind = InstanceKind::MatchedPair;
        switch (rng.below(4)) {
            case 0: inst.matched_pair = sl2_matched_pair(); break;
            case 1: inst.matched_pair = zero_matched_pair(); break;
            default:
                inst.matched_pair =
                    embed_two_rep(tangent_two_rep_random(rng, clamp(opt.chart_dim, 1, 2), clamp(opt.rank, 1, 3), 1));
        }
    } else if (opt.kind == "rep_lie2") {
        inst.kind = InstanceKind::SplitLie2;
        if (rng.below(2) == 0) {
            // any connection over a 1-dimensional chart is flat
            LieAlgebroidData a = tangent_algebroid(1);
            Bundle b = make_bundle(1, clamp(opt.rank, 1, 6), "B");
            inst.split_lie2 = rep_lie2(a, random_connection(rng, a.anchor(), b, 2));
        } else {
            LieAlgebroidData a = so3_algebroid();
            Bundle b = make_bundle(0, clamp(opt.rank, 1, 6), "B");
            inst.split_lie2 = rep_lie2(a, LinearConnection::zero(a.anchor(), b));
        }
    } else if (opt.kind == "semidirect") {
        inst.kind = InstanceKind::SplitLie2;
        inst.split_lie2 =
            semidirect_lie2(tangent_two_rep_random(rng, clamp(opt.chart_dim, 1, 2), clamp(opt.rank, 1, 3), 1));
    } else if (opt.kind == "bicross") {
        inst.kind = InstanceKind::SplitLie2;
        GenOptions sub = opt;
        sub.kind = "matched_pair";
        sub.mutate.clear();
        inst.split_lie2 = bicrossproduct(gen_instance(sub).matched_pair);
    } else if (opt.kind == "shifted") {
        inst.kind = InstanceKind::SplitLie2;
        GenOptions sub = opt;
        sub.kind = (opt.seed % 2 == 0) ? "semidirect" : "rep_lie2";
        sub.mutate.clear();
        SplitLie2Data d = gen_instance(sub).split_lie2;
        inst.split_lie2 = shift_splitting(d, random_two_form(rng, d.q, d.b.dualized(), 1));
    } else if (opt.kind == "standard_courant") {
        inst.kind = InstanceKind::Courant;
        inst.courant = standard_courant(Chart{clamp(opt.chart_dim, 0, 3)});
    } else if (opt.kind == "drinfeld") {
        inst.kind = InstanceKind::Courant;
        if (rng.below(2) == 0) {
            LieAlgebroidData a = so3_algebroid();
            inst.courant = drinfeld_double(a, abelian_algebroid(a.bundle().dualized()));
        } else {
            LieAlgebroidData a = tangent_algebroid(clamp(opt.chart_dim, 1, 2));
            inst.courant = drinfeld_double(a, abelian_algebroid(a.bundle().dualized()));
        }
    } else if (opt.kind == "shift") {
        inst.kind = InstanceKind::Shift;
        Bundle q = make_bundle(opt.chart_dim, clamp(opt.rank, 0, 6), "Q");
        Bundle b = make_bundle(opt.chart_dim, clamp(opt.rank_b, 0, 6), "B");
        inst.shift_phi = random_two_form(rng, q, b.dualized(), 1);
    } else {
        throw std::invalid_argument("gen_instance: unsupported kind '" + opt.kind + "'");
    }

    if (!opt.mutate.empty()) {
        Rng mrng(opt.seed ^ 0xa5a5a5a5deadbeefull);
        mutate_instance(inst, opt.mutate, mrng);
        inst.name += "!" + opt.mutate;
    }
    return inst;
}

}  // namespace l2a
