#include "nilwkb/io/json_io.hpp"

#include <fstream>
#include <sstream>

namespace nilwkb::io {

using algebra::Poly2;
using algebra::parse_rational;
using algebra::rational_to_string;
using cplx = std::complex<double>;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

mpq_class rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    bad("expected an exact rational string, got " + j.dump());
}

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad("expected a point [x, y], got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

Json poly_json(const Poly2& p) {
    Json out = Json::array();
    for (const auto& [mono, c] : p.terms())
        out.push_back(Json::array({mono.first, mono.second, rational_to_string(c.re()), rational_to_string(c.im())}));
    return out;
}

Poly2 poly_from_json(const Json& j) {
    if (!j.is_array()) bad("polynomial must be a list of monomials");
    Poly2 p;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 4 || !t[0].is_number_integer() || !t[1].is_number_integer())
            bad("monomial must be [i, j, re, im], got " + t.dump());
        int i = t[0].get<int>(), k = t[1].get<int>();
        if (i < 0 || k < 0) bad("negative monomial exponent");
        p += Poly2::monomial(i, k, GaussianRational(rational_from_json(t[2]), rational_from_json(t[3])));
    }
    return p;
}

Json rational_list(const std::vector<mpq_class>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(rational_to_string(q));
    return out;
}

Json corners_json(const std::vector<surface::Corner>& cs) {
    Json out = Json::array();
    for (const auto& c : cs) out.push_back(Json::array({c.polygon, c.vertex}));
    return out;
}

Json pieces_json(const std::vector<surface::FlowPiece>& ps) {
    Json out = Json::array();
    for (const auto& p : ps)
        out.push_back({{"polygon", p.polygon}, {"entry", complex_json(p.entry)}, {"exit", complex_json(p.exit)},
                       {"parity", p.parity}});
    return out;
}

Json matrix_numbers(const algebra::GaussianMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        out.push_back(r);
    }
    return out;
}

Json line_json(const toymodel::Line& l) { return Json::array({to_json(l[0]), to_json(l[1])}); }

} // namespace

Json to_json(const GaussianRational& q) { return Json::array({rational_to_string(q.re()), rational_to_string(q.im())}); }

GaussianRational gaussian_from_json(const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) bad("complex rational must be [re, im]");
        return {rational_from_json(j[0]), rational_from_json(j[1])};
    }
    return GaussianRational(rational_from_json(j));
}

Json to_json(const BiRational& f) { return {{"num", poly_json(f.num())}, {"den", poly_json(f.den())}}; }

BiRational birational_from_json(const Json& j) {
    if (j.is_string() || j.is_number_integer() || j.is_array()) return BiRational(gaussian_from_json(j));
    Poly2 num = poly_from_json(need(j, "num"));
    Poly2 den = j.contains("den") ? poly_from_json(j.at("den")) : Poly2(1);
    if (den.is_zero()) bad("zero denominator");
    return BiRational(num, den);
}

Json to_json(const RationalFunctionMatrix& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        out.push_back(row);
    }
    return out;
}

RationalFunctionMatrix matrix_from_json(const Json& j, int rank) {
    if (!j.is_array() || static_cast<int>(j.size()) != rank) bad("matrix must have " + std::to_string(rank) + " rows");
    RationalFunctionMatrix m(rank, rank);
    for (int i = 0; i < rank; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != rank)
            bad("matrix row must have " + std::to_string(rank) + " entries");
        for (int k = 0; k < rank; ++k) m(i, k) = birational_from_json(j[i][k]);
    }
    return m;
}

Json to_json(const MatrixOneForm& f) { return {{"dz", to_json(f.dz_part())}, {"dzbar", to_json(f.dzbar_part())}}; }

MatrixOneForm form_from_json(const Json& j, int rank) {
    if (j.is_null()) return MatrixOneForm(rank);
    if (!j.is_object()) bad("a 1-form must be an object with 'dz' and/or 'dzbar'");
    auto part = [&](const char* key) {
        return j.contains(key) && !j.at(key).is_null() ? matrix_from_json(j.at(key), rank)
                                                       : RationalFunctionMatrix(rank, rank);
    };
    return MatrixOneForm(part("dz"), part("dzbar"));
}

Json to_json(const ConnectionFamily& f) {
    Json out;
    out["schema"] = kSchema;
    out["rank"] = f.rank();
    Json exps = Json::array();
    for (const auto& t : f.terms()) exps.push_back(Json::array({rational_to_string(t.exponent), t.label}));
    bool labels_unique = true;
    for (std::size_t a = 0; a < f.terms().size(); ++a)
        for (std::size_t b = a + 1; b < f.terms().size(); ++b) labels_unique &= f.terms()[a].label != f.terms()[b].label;
    if (f.is_standard() && labels_unique) {
        out["phi"] = to_json(f.phi());
        out["conn"] = to_json(f.conn());
        out["psi"] = to_json(f.psi());
    }
    Json punct = Json::array();
    for (const auto& p : f.punctures()) punct.push_back(to_json(p));
    out["punctures"] = punct;
    out["exponents"] = exps;
    if (!(f.is_standard() && labels_unique)) {
        Json terms = Json::array();
        for (const auto& t : f.terms())
            terms.push_back({{"label", t.label}, {"exponent", rational_to_string(t.exponent)}, {"form", to_json(t.form)}});
        out["terms"] = terms;
    }
    return out;
}

ConnectionFamily family_from_json(const Json& j) {
    if (j.contains("schema") && j.at("schema") != kSchema) bad("unsupported schema " + j.at("schema").dump());
    const Json& rj = need(j, "rank");
    if (!rj.is_number_integer() || rj.get<int>() < 1) bad("rank must be a positive integer");
    int rank = rj.get<int>();
    std::vector<GaussianRational> punctures;
    if (j.contains("punctures"))
        for (const auto& p : j.at("punctures")) punctures.push_back(gaussian_from_json(p));

    if (j.contains("terms")) {
        std::vector<connection::FamilyTerm> terms;
        for (const auto& t : j.at("terms")) {
            const Json& label = need(t, "label");
            if (!label.is_string()) bad("term label must be a string");
            terms.push_back({label.get<std::string>(), rational_from_json(need(t, "exponent")),
                             form_from_json(need(t, "form"), rank)});
        }
        return ConnectionFamily(rank, std::move(terms), std::move(punctures));
    }

    std::vector<connection::FamilyTerm> terms;
    std::map<std::string, mpq_class> exps = {{"phi", -1}, {"conn", 0}, {"psi", 1}};
    if (j.contains("exponents"))
        for (const auto& e : j.at("exponents")) {
            if (!e.is_array() || e.size() != 2 || !e[1].is_string()) bad("exponent entry must be [exponent, label]");
            std::string label = e[1].get<std::string>();
            if (!exps.count(label)) bad("exponent given for unknown label '" + label + "'; use 'terms'");
            exps[label] = rational_from_json(e[0]);
        }
    for (const char* label : {"phi", "conn", "psi"})
        terms.push_back({label, exps[label], form_from_json(j.contains(label) ? j.at(label) : Json(), rank)});
    return ConnectionFamily(rank, std::move(terms), std::move(punctures));
}

Json to_json(const connection::FlatnessReport& r) {
    Json res = Json::array();
    for (const auto& x : r.residuals)
        res.push_back({{"name", x.name},
                       {"exponent", rational_to_string(x.exponent)},
                       {"zero", x.value.is_zero()},
                       {"value", to_json(x.value)}});
    return {{"schema", kSchema}, {"is_flat", r.is_flat}, {"residuals", res}};
}

Json to_json(const gauge::NilpotentType& t) {
    return {{"schema", kSchema},
            {"partition", t.partition},
            {"transpose", t.transpose},
            {"nilpotency_index", t.nilpotency_index}};
}

Json to_json(const gauge::GaugeProfile& p) {
    return {{"exponents", rational_list(p.exponents)}, {"block_m", p.block_m}, {"m", p.m}};
}

Json to_json(const gauge::SecondaryData& s) {
    Json res = Json::array();
    for (const auto& [e, f] : s.residual_terms) res.push_back({{"exponent", rational_to_string(e)}, {"form", to_json(f)}});
    auto q = gauge::k_differentials(s.Phi, 2);
    return {{"schema", kSchema},
            {"m", s.m},
            {"leading_exponent", rational_to_string(s.leading_exponent)},
            {"splitting", s.splitting},
            {"profile", to_json(s.profile)},
            {"Phi", to_json(s.Phi)},
            {"tr_Phi2", to_json(q.at(0))},
            {"diag_connection", to_json(s.diag_connection)},
            {"residual_terms", res},
            {"leading_is_dominant", s.leading_is_dominant}};
}

Json to_json(const holonomy::ParamPath& p) {
    Json segs = Json::array();
    for (const auto& s : p.segments()) {
        if (const auto* l = std::get_if<holonomy::LineSegment>(&s))
            segs.push_back({{"type", "line"}, {"from", complex_json(l->from)}, {"to", complex_json(l->to)}});
        else {
            const auto& a = std::get<holonomy::ArcSegment>(s);
            segs.push_back({{"type", "arc"},
                            {"center", complex_json(a.center)},
                            {"radius", a.radius},
                            {"angles", Json::array({a.angle0, a.angle1})}});
        }
    }
    return {{"segments", segs}, {"closed", p.closed()}};
}

holonomy::ParamPath path_from_json(const Json& j) {
    const Json& segs = need(j, "segments");
    if (!segs.is_array() || segs.empty()) bad("path needs at least one segment");
    std::vector<holonomy::Segment> out;
    for (const auto& s : segs) {
        std::string type = need(s, "type").get<std::string>();
        if (type == "line") {
            out.push_back(holonomy::LineSegment{complex_from_json(need(s, "from")), complex_from_json(need(s, "to"))});
        } else if (type == "arc") {
            const Json& ang = need(s, "angles");
            if (!ang.is_array() || ang.size() != 2) bad("arc angles must be [a0, a1]");
            out.push_back(holonomy::ArcSegment{complex_from_json(need(s, "center")), need(s, "radius").get<double>(),
                                               ang[0].get<double>(), ang[1].get<double>()});
        } else {
            bad("unknown segment type '" + type + "'");
        }
    }
    bool closed = j.contains("closed") && j.at("closed").get<bool>();
    return holonomy::ParamPath(out, closed);
}

Json to_json(const holonomy::WkbFit& f) {
    Json cands = Json::array();
    for (const auto& c : f.candidates)
        cands.push_back({{"exponent", rational_to_string(c.exponent)},
                         {"Z", complex_json(c.Z)},
                         {"offset", complex_json(c.offset)},
                         {"residual", c.residual}});
    return {{"schema", kSchema},
            {"exponent_p", f.exponent_p},
            {"exponent_exact", rational_to_string(f.exponent_exact)},
            {"Z", complex_json(f.Z)},
            {"offset", complex_json(f.offset)},
            {"residual", f.residual},
            {"tail_size", f.tail_size},
            {"candidates", cands},
            {"free_fit", {{"exponent", f.free_exponent}, {"residual", f.free_residual}}},
            {"modulus_fit", {{"re_Z", f.modulus_re_Z}, {"offset", f.modulus_offset}, {"residual", f.modulus_residual}}}};
}

Json to_json(const surface::PolygonSurface& s) {
    Json polys = Json::array();
    for (const auto& p : s.polygons()) {
        Json poly = Json::array();
        for (cplx v : p) poly.push_back(complex_json(v));
        polys.push_back(poly);
    }
    Json ids = Json::array();
    for (const auto& id : s.identifications())
        ids.push_back(Json::array({Json::array({id.a.polygon, id.a.edge}), Json::array({id.b.polygon, id.b.edge}), id.sign}));
    return {{"schema", kSchema}, {"polygons", polys}, {"identifications", ids}};
}

surface::PolygonSurface surface_from_json(const Json& j) {
    std::vector<std::vector<cplx>> polys;
    for (const auto& p : need(j, "polygons")) {
        std::vector<cplx> poly;
        for (const auto& v : p) poly.push_back(complex_from_json(v));
        polys.push_back(poly);
    }
    auto edge = [](const Json& e) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            bad("edge reference must be [polygon, edge]");
        return surface::EdgeRef{e[0].get<int>(), e[1].get<int>()};
    };
    std::vector<surface::Identification> ids;
    for (const auto& id : need(j, "identifications")) {
        if (!id.is_array() || id.size() != 3) bad("identification must be [[p, e], [p', e'], sign]");
        int sign = 0;
        if (id[2].is_number_integer()) {
            sign = id[2].get<int>();
        } else if (id[2].is_string()) {
            std::string s = id[2].get<std::string>();
            sign = (s == "+" || s == "+1" || s == "1") ? 1 : (s == "-" || s == "-1") ? -1 : 0;
        }
        if (sign != 1 && sign != -1) bad("gluing sign must be +1 or -1, got " + id[2].dump());
        ids.push_back({edge(id[0]), edge(id[1]), sign});
    }
    return surface::PolygonSurface(polys, ids);
}

Json to_json(const surface::SingularityReport& r) {
    Json classes = Json::array();
    for (const auto& c : r.vertex_classes)
        classes.push_back({{"angle_pi", c.angle_pi},
                           {"order", c.order},
                           {"representative", complex_json(c.representative)},
                           {"corners", corners_json(c.corners)}});
    int poles = 0;
    for (const auto& c : r.vertex_classes) poles += c.angle_pi == 1;
    return {{"schema", kSchema},
            {"V", r.V},
            {"E", r.E},
            {"F", r.F},
            {"chi", r.chi},
            {"genus", r.genus},
            {"order_sum", r.order_sum()},
            {"simple_poles", poles},
            {"exact_angles", r.exact_angles},
            {"vertex_classes", classes}};
}

Json to_json(const surface::FlatTrajectory& t) {
    return {{"schema", kSchema},
            {"theta", t.theta},
            {"total_length", t.total_length},
            {"terminated", surface::to_string(t.terminated)},
            {"end", {{"polygon", t.end.polygon}, {"position", complex_json(t.end.position)}, {"parity", t.end.parity}}},
            {"crossings", t.crossings},
            {"pieces", pieces_json(t.pieces)}};
}

Json to_json(const surface::WkbLoop& l) {
    return {{"schema", kSchema},
            {"theta", l.theta},
            {"start", {{"polygon", l.start.polygon}, {"point", complex_json(l.start.point)}}},
            {"period_Z", complex_json(l.period_Z)},
            {"abs_Z", std::abs(l.period_Z)},
            {"is_wkb", l.is_wkb},
            {"margin", l.margin},
            {"connector", {complex_json(l.connector_from), complex_json(l.connector_to)}},
            {"crossings", l.crossings},
            {"pieces", pieces_json(l.pieces)}};
}

Json to_json(const toymodel::WeightReport& r) {
    Json fams = Json::array();
    for (const auto& f : r.families)
        fams.push_back({{"name", f.name}, {"pass", f.pass}, {"checked", f.checked}, {"witnesses", f.witnesses}});
    return {{"schema", kSchema}, {"all_pass", r.all_pass()}, {"families", fams}};
}

Json to_json(const std::vector<toymodel::PdegEntry>& table) {
    Json rows = Json::array();
    for (const auto& e : table) {
        Json inc = Json::array();
        for (int i = 0; i < 4; ++i)
            if (e.incidence[i]) inc.push_back(i + 1);
        rows.push_back({{"degree", e.degree}, {"flags", inc}, {"pdeg", rational_to_string(e.value)}, {"negative", e.value < 0}});
    }
    return {{"schema", kSchema}, {"entries", rows}};
}

Json to_json(const toymodel::ToyHiggsField& h) {
    Json lines = Json::array();
    for (const auto& l : h.flags.lines) lines.push_back(line_json(l));
    Json vanish = Json::array();
    const char* names[4] = {"0", "1", "inf", "p"};
    for (int i = 0; i < 4; ++i)
        if (h.vanishing_residue[i]) vanish.push_back(names[i]);
    return {{"schema", kSchema},
            {"kind", toymodel::to_string(h.kind)},
            {"p", to_json(h.p)},
            {"matrix", to_json(h.matrix)},
            {"flags", lines},
            {"w", h.flags.w ? to_json(*h.flags.w) : Json("inf")},
            {"vanishing_residues", vanish}};
}

Json to_json(const std::vector<toymodel::ResidueEntry>& res) {
    Json out = Json::array();
    for (const auto& e : res) out.push_back({{"at", toymodel::puncture_name(e.at)}, {"residue", matrix_numbers(e.residue)}});
    return {{"schema", kSchema}, {"residues", out}};
}

Json to_json(const toymodel::ConeGraph& g) {
    Json nodes = Json::array(), edges = Json::array();
    for (const auto& n : g.nodes) {
        Json node = {{"id", n.id}, {"kind", n.kind}, {"label", n.label}, {"vhs", n.vhs}};
        if (!n.attachment.empty()) node["w"] = n.attachment;
        nodes.push_back(node);
    }
    for (const auto& e : g.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
    return {{"schema", kSchema},
            {"nodes", nodes},
            {"edges", edges},
            {"components", g.components},
            {"central_attachments", g.central_attachments},
            {"affine_d4", g.is_affine_d4()}};
}

Json error_json(const Error& e) {
    return {{"schema", kSchema}, {"error", to_string(e.kind())}, {"message", e.what()}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + p.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, p.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + p.string());
    out << text;
}

} // namespace nilwkb::io
