#include "nilwkb/toymodel/toymodel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "nilwkb/error.hpp"

namespace nilwkb::toymodel {

using algebra::Poly2;
using algebra::RationalFunctionMatrix;
using algebra::UPoly;

ParabolicWeights::ParabolicWeights(std::array<mpq_class, 4> r) : rho(std::move(r)) {
    const mpq_class half(1, 2);
    for (int i = 0; i < 4; ++i)
        if (!(rho[i] > 0 && rho[i] < half))
            throw Error(ErrorKind::InvalidWeights, "weight rho" + std::to_string(i + 1) + " = " + rho[i].get_str() +
                                                       " is not in (0, 1/2)");
}

ParabolicWeights ParabolicWeights::parse(const std::string& csv) {
    std::array<mpq_class, 4> r;
    std::stringstream ss(csv);
    std::string cell;
    int k = 0;
    while (std::getline(ss, cell, ',')) {
        if (k >= 4) throw Error(ErrorKind::ParseError, "expected four weights");
        r[k++] = algebra::parse_rational(cell);
    }
    if (k != 4) throw Error(ErrorKind::ParseError, "expected four weights");
    return ParabolicWeights(r);
}

bool WeightReport::all_pass() const {
    return std::all_of(families.begin(), families.end(), [](const auto& f) { return f.pass; });
}

WeightReport check_weight_inequalities(const ParabolicWeights& w) {
    const auto& r = w.rho;
    WeightReport rep;
    auto name = [](int i) { return "rho" + std::to_string(i + 1); };

    auto& one = rep.families[0];
    one.name = "(i) rho_s1 < rho_s2 + rho_s3 + rho_s4 < 1 + rho_s1";
    // Only σ(1) matters; the other three enter through their sum.
    for (int i = 0; i < 4; ++i) {
        mpq_class rest = r[0] + r[1] + r[2] + r[3] - r[i];
        one.checked += 2;
        if (!(r[i] < rest)) {
            one.pass = false;
            one.witnesses.push_back(name(i) + " = " + r[i].get_str() + " >= sum of others = " + rest.get_str());
        }
        if (!(rest < 1 + r[i])) {
            one.pass = false;
            one.witnesses.push_back("sum of others = " + rest.get_str() + " >= 1 + " + name(i));
        }
    }

    auto& two = rep.families[1];
    two.name = "(ii) rho_s1 + rho4 < rho_s2 + rho_s3";
    for (int i = 0; i < 3; ++i) {
        mpq_class lhs = r[i] + r[3], rhs = r[0] + r[1] + r[2] - r[i];
        ++two.checked;
        if (!(lhs < rhs)) {
            two.pass = false;
            two.witnesses.push_back(name(i) + " + rho4 = " + lhs.get_str() + " >= " + rhs.get_str());
        }
    }

    auto& three = rep.families[2];
    three.name = "(iii) rho1 + rho2 + rho3 + rho4 < 1";
    mpq_class sum = r[0] + r[1] + r[2] + r[3];
    three.checked = 1;
    if (!(sum < 1)) {
        three.pass = false;
        three.witnesses.push_back("sum = " + sum.get_str() + " >= 1");
    }
    return rep;
}

mpq_class pdeg(int line_degree, const std::array<bool, 4>& incidence, const ParabolicWeights& w) {
    mpq_class v(line_degree);
    for (int i = 0; i < 4; ++i) v += incidence[i] ? w.rho[i] : mpq_class(-w.rho[i]);
    return v;
}

std::vector<PdegEntry> pdeg_table(const ParabolicWeights& w) {
    std::vector<PdegEntry> out;
    for (int deg : {0, -1})
        for (int mask = 0; mask < 16; ++mask) {
            std::array<bool, 4> inc{};
            for (int i = 0; i < 4; ++i) inc[i] = (mask >> i) & 1;
            out.push_back({deg, inc, pdeg(deg, inc, w)});
        }
    return out;
}

std::string puncture_name(const Puncture& p) { return p ? p->to_string() : "inf"; }

bool same_line(const Line& a, const Line& b) { return a[0] * b[1] == a[1] * b[0]; }

const char* to_string(ToyKind k) {
    switch (k) {
    case ToyKind::PhiP: return "phi_p";
    case ToyKind::Phi0: return "phi_0";
    case ToyKind::Phi1: return "phi_1";
    case ToyKind::PhiInf: return "phi_inf";
    case ToyKind::Custom: return "custom";
    }
    return "?";
}

ToyKind parse_toy_kind(const std::string& s) {
    for (ToyKind k : {ToyKind::PhiP, ToyKind::Phi0, ToyKind::Phi1, ToyKind::PhiInf, ToyKind::Custom})
        if (s == to_string(k)) return k;
    throw Error(ErrorKind::ParseError, "unknown toy field '" + s + "'");
}

namespace {

int lowest_order(const UPoly& p) {
    for (int k = 0; k <= p.degree(); ++k)
        if (!p.coeff(k).is_zero()) return k;
    return 1 << 20; // zero polynomial
}

BiRational z_minus(const GaussianRational& a) { return BiRational(Poly2::z() - Poly2(a)); }

BiRational from_upoly(const UPoly& p) { return BiRational(Poly2::from_z(p)); }

GaussianMatrix zero2() { return GaussianMatrix(2, std::vector<GaussianRational>(2)); }

bool is_zero(const GaussianMatrix& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

bool kills(const GaussianMatrix& m, const Line& l) {
    return (m[0][0] * l[0] + m[0][1] * l[1]).is_zero() && (m[1][0] * l[0] + m[1][1] * l[1]).is_zero();
}

GaussianMatrix residue_matrix(const RationalFunctionMatrix& m, const Puncture& at) {
    GaussianMatrix r = zero2();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (at) {
                r[i][j] = residue_at(m(i, j), *at);
            } else {
                // f(z)dz = −f(1/w)dw/w².
                BiRational g = m(i, j).invert_chart() * BiRational(GaussianRational(-1), Poly2::monomial(2, 0));
                r[i][j] = residue_at(g, GaussianRational(0));
            }
        }
    return r;
}

// w with g·L4 = (w, 1) for the frame sending L1, L2, L3 to (0,1), (1,1), (1,0).
std::optional<GaussianRational> normalized_w(const std::array<Line, 4>& l) {
    // Solve α·L3 + β·L1 = L2.
    GaussianRational det = l[2][0] * l[0][1] - l[0][0] * l[2][1];
    if (det.is_zero()) throw Error(ErrorKind::InvalidArgument, "flags at 0 and infinity coincide");
    GaussianRational alpha = (l[1][0] * l[0][1] - l[0][0] * l[1][1]) / det;
    GaussianRational beta = (l[2][0] * l[1][1] - l[1][0] * l[2][1]) / det;
    // Coordinates of L4 in the basis (α·L3, β·L1).
    GaussianRational c1 = l[2][0] * alpha, c2 = l[0][0] * beta, d1 = l[2][1] * alpha, d2 = l[0][1] * beta;
    GaussianRational dd = c1 * d2 - c2 * d1;
    GaussianRational x1 = (l[3][0] * d2 - c2 * l[3][1]) / dd;
    GaussianRational x2 = (c1 * l[3][1] - l[3][0] * d1) / dd;
    if (x2.is_zero()) return std::nullopt;
    return x1 / x2;
}

} // namespace

GaussianRational residue_at(const BiRational& f, const GaussianRational& z0) {
    if (f.is_zero()) return GaussianRational(0);
    UPoly n = f.num().as_z_poly().taylor_shift(z0), d = f.den().as_z_poly().taylor_shift(z0);
    int k = lowest_order(d);
    if (k == 0) return GaussianRational(0);
    std::vector<GaussianRational> dc(d.coeffs().begin() + k, d.coeffs().end());
    auto dcoef = [&](int i) { return i < static_cast<int>(dc.size()) ? dc[i] : GaussianRational(0); };
    std::vector<GaussianRational> q(k);
    for (int j = 0; j < k; ++j) {
        GaussianRational acc = n.coeff(j);
        for (int i = 1; i <= j; ++i) acc = acc - dcoef(i) * q[j - i];
        q[j] = acc / dc[0];
    }
    return q[k - 1];
}

int pole_order(const BiRational& f, const GaussianRational& z0) {
    if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "pole order of the zero function");
    return lowest_order(f.den().as_z_poly().taylor_shift(z0)) - lowest_order(f.num().as_z_poly().taylor_shift(z0));
}

int pole_order_at_infinity(const BiRational& f, int form_degree) {
    return pole_order(f.invert_chart(), GaussianRational(0)) + 2 * form_degree;
}

ToyHiggsField build_toy_higgs(ToyKind kind, const GaussianRational& p, const UPoly& custom_a, const UPoly& custom_b) {
    if (p.is_zero() || p == GaussianRational(1))
        throw Error(ErrorKind::BadPuncture, "the fourth puncture must differ from 0 and 1");
    ToyHiggsField h;
    h.kind = kind;
    h.p = p;
    const GaussianRational zero(0), one(1);
    BiRational z = BiRational::z();
    BiRational delta = z * z_minus(one) * z_minus(p);
    h.flags.p = p;
    h.flags.lines = {Line{zero, one}, Line{one, one}, Line{one, zero}, Line{p, one}};
    h.vanishing_residue = {false, false, false, false};
    switch (kind) {
    case ToyKind::PhiP:
        h.matrix = RationalFunctionMatrix{{z, -(z * z)}, {BiRational(1), -z}};
        h.matrix = (BiRational(1) / delta) * h.matrix;
        h.flags.w = p;
        break;
    case ToyKind::Phi0:
        h.matrix = RationalFunctionMatrix{{0, 0}, {BiRational(1) / (z * z_minus(p)), 0}};
        h.flags.lines[3] = h.flags.lines[0];
        h.flags.w = zero;
        h.vanishing_residue = {false, true, true, false};
        break;
    case ToyKind::Phi1: {
        BiRational c = BiRational(1) / (z_minus(one) * z_minus(p));
        h.matrix = RationalFunctionMatrix{{c, -c}, {c, -c}};
        h.flags.lines[3] = h.flags.lines[1];
        h.flags.w = one;
        h.vanishing_residue = {true, false, true, false};
        break;
    }
    case ToyKind::PhiInf:
        h.matrix = RationalFunctionMatrix{{0, BiRational(1) / z_minus(p)}, {0, 0}};
        h.flags.lines[3] = h.flags.lines[2];
        h.flags.w = std::nullopt;
        h.vanishing_residue = {true, true, false, false};
        break;
    case ToyKind::Custom: {
        if (custom_a.degree() > 1 || custom_b.degree() > 1)
            throw Error(ErrorKind::InvalidArgument, "custom a and b must have degree at most 1");
        GaussianRational A = custom_a.coeff(1), B = custom_a.coeff(0), C = custom_b.coeff(1), D = custom_b.coeff(0);
        if ((A * D - B * C).is_zero())
            throw Error(ErrorKind::InvalidArgument, "custom a and b must be linearly independent");
        BiRational a = from_upoly(custom_a), b = from_upoly(custom_b);
        h.matrix = (BiRational(1) / delta) * RationalFunctionMatrix{{a * b, -(a * a)}, {b * b, -(a * b)}};
        // The kernel of the residue at each puncture is the line (a, b) there.
        h.flags.lines = {Line{custom_a.eval(zero), custom_b.eval(zero)}, Line{custom_a.eval(one), custom_b.eval(one)},
                         Line{A, C}, Line{custom_a.eval(p), custom_b.eval(p)}};
        h.flags.w = normalized_w(h.flags.lines);
        break;
    }
    }

    if (!(h.matrix * h.matrix).is_zero() || !h.matrix.trace().is_zero())
        throw Error(ErrorKind::NotNilpotent, "toy Higgs field is not nilpotent and traceless");
    const std::array<Puncture, 4> at = {zero, one, std::nullopt, p};
    for (int i = 0; i < 4; ++i) {
        GaussianMatrix r = residue_matrix(h.matrix, at[i]);
        bool vanishes = is_zero(r);
        if (vanishes != h.vanishing_residue[i])
            throw Error(ErrorKind::InvalidArgument, "residue at " + puncture_name(at[i]) + " disagrees with its declaration");
        if (!vanishes && !kills(r, h.flags.lines[i]))
            throw Error(ErrorKind::InvalidArgument, "residue at " + puncture_name(at[i]) + " does not kill its flag");
    }
    return h;
}

std::vector<ResidueEntry> residues(const ToyHiggsField& h) {
    std::vector<ResidueEntry> out;
    for (const Puncture& at : {Puncture(GaussianRational(0)), Puncture(GaussianRational(1)), Puncture(), Puncture(h.p)})
        out.push_back({at, residue_matrix(h.matrix, at)});
    return out;
}

ConnectionFamily skeleton_family(const ToyHiggsField& h) {
    return ConnectionFamily(h.form(), MatrixOneForm(2), MatrixOneForm(2),
                            {GaussianRational(0), GaussianRational(1), h.p});
}

ConnectionFamily aligned_family(const ToyHiggsField& h) {
    int col = h.matrix(0, 0).is_zero() && h.matrix(1, 0).is_zero() ? 1 : 0;
    UPoly a, b;
    if (h.matrix(1, col).is_zero()) {
        a = UPoly::constant(1);
        b = UPoly();
    } else {
        BiRational r = h.matrix(0, col) / h.matrix(1, col);
        a = r.num().as_z_poly();
        b = r.den().as_z_poly();
    }
    UPoly x, y;
    if (b.is_zero()) {
        // v = (1, 0): complete with (0, 1).
        y = UPoly::constant(1);
    } else if (a.is_zero()) {
        x = UPoly::constant(-1) * UPoly::exact_div(UPoly::constant(1), b);
    } else {
        auto [g, s, t] = UPoly::ext_gcd(a, b);
        if (g.degree() != 0) throw Error(ErrorKind::InvalidArgument, "kernel components are not coprime");
        GaussianRational inv = g.coeff(0).inverse();
        y = inv * s;
        x = inv * (-t);
    }
    RationalFunctionMatrix g{{from_upoly(a), from_upoly(x)}, {from_upoly(b), from_upoly(y)}};
    return connection::gauge_transform(skeleton_family(h), g);
}

BiRational toy_quadratic_differential(const GaussianRational& c, const GaussianRational& p) {
    if (c.is_zero()) return BiRational(0);
    BiRational z = BiRational::z();
    return BiRational(c) / (z * z_minus(GaussianRational(1)) * z_minus(p));
}

MatrixOneForm parabolic_model_connection(const mpq_class& rho) {
    if (rho < 0 || rho >= mpq_class(1, 2)) throw Error(ErrorKind::InvalidWeights, "model weight must lie in [0, 1/2)");
    BiRational half_rho(GaussianRational(rho / 2));
    RationalFunctionMatrix d = RationalFunctionMatrix{{half_rho, 0}, {0, -half_rho}};
    BiRational inv_z = BiRational(1) / BiRational::z(), inv_zb = BiRational(1) / BiRational::zbar();
    return MatrixOneForm(inv_z * d, -(inv_zb * d));
}

bool ConeGraph::is_affine_d4() const {
    if (nodes.size() != 9 || edges.size() != 8 || components.size() != 5) return false;
    std::map<std::string, int> degree;
    for (const auto& n : nodes) degree[n.id] = 0;
    for (const auto& e : edges) {
        if (!degree.count(e.from) || !degree.count(e.to)) return false;
        ++degree[e.from], ++degree[e.to];
    }
    int hubs = 0, mids = 0, leaves = 0;
    for (const auto& [id, d] : degree) (d == 4 ? hubs : d == 2 ? mids : d == 1 ? leaves : hubs += 100)++;
    if (hubs != 1 || mids != 4 || leaves != 4) return false;
    // Component graph: one sphere meeting four others, each met once.
    std::map<std::string, int> comp_of;
    for (std::size_t c = 0; c < components.size(); ++c)
        for (const auto& id : components[c]) comp_of[id] = static_cast<int>(c);
    std::set<std::pair<int, int>> meets;
    for (const auto& e : edges) {
        int a = comp_of.at(e.from), b = comp_of.at(e.to);
        if (a != b) meets.insert({std::min(a, b), std::max(a, b)});
    }
    std::map<int, int> cdeg;
    for (auto [a, b] : meets) ++cdeg[a], ++cdeg[b];
    int star = 0, arms = 0;
    for (auto [c, d] : cdeg) (d == 4 ? star : d == 1 ? arms : star += 100)++;
    return meets.size() == 4 && star == 1 && arms == 4;
}

ConeGraph nilpotent_cone_graph(const GaussianRational& p, const ParabolicWeights& w) {
    if (p.is_zero() || p == GaussianRational(1))
        throw Error(ErrorKind::BadPuncture, "the fourth puncture must differ from 0 and 1");
    auto rep = check_weight_inequalities(w);
    if (!rep.all_pass()) {
        std::string why;
        for (const auto& f : rep.families)
            if (!f.pass) why += (why.empty() ? "" : "; ") + f.name + ": " + f.witnesses.front();
        throw Error(ErrorKind::UnstableWeights, why);
    }
    ConeGraph g;
    g.nodes.push_back({"central", "central", "stable parabolic bundles with phi = 0, parametrized by w", true, ""});
    struct Arm {
        std::string key, w, tip;
    };
    const std::vector<Arm> arms = {{"0", "0", "limit zeta -> inf of the phi_0 orbit"},
                                   {"1", "1", "limit zeta -> inf of the phi_1 orbit"},
                                   {"inf", "inf", "limit zeta -> inf of the phi_inf orbit"},
                                   {"p", p.to_string(), "uniformization point (limit of the phi_p orbit)"}};
    g.components.push_back({"central"});
    for (const auto& a : arms) {
        std::string fam = "family_" + a.key, tip = "tip_" + a.key;
        g.nodes.push_back({fam, "family", "C*-orbit of phi_" + a.key, false, a.w});
        g.nodes.push_back({tip, "tip", a.tip, true, ""});
        g.edges.push_back({"central", fam, "w = " + a.w});
        g.edges.push_back({fam, tip, "zeta -> inf"});
        g.components.push_back({fam, tip});
        g.central_attachments.push_back(a.w);
    }
    return g;
}

} // namespace nilwkb::toymodel
