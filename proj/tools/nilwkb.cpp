#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "nilwkb/connection/flatness.hpp"
#include "nilwkb/gauge/gauge.hpp"
#include "nilwkb/holonomy/fit.hpp"
#include "nilwkb/holonomy/spectral.hpp"
#include "nilwkb/holonomy/transport.hpp"
#include "nilwkb/io/json_io.hpp"
#include "nilwkb/surface/surface.hpp"
#include "nilwkb/toymodel/toymodel.hpp"

using namespace nilwkb;
using io::Json;
using cplx = std::complex<double>;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    return out;
}

algebra::GaussianRational parse_gaussian(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() == 1) return algebra::GaussianRational(algebra::parse_rational(parts[0]));
    if (parts.size() == 2) return {algebra::parse_rational(parts[0]), algebra::parse_rational(parts[1])};
    throw Error(ErrorKind::ParseError, "expected 're' or 're,im', got '" + s + "'");
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& c : split(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(c, &used));
            if (used != c.size()) throw std::invalid_argument(c);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "expected a comma-separated integer list, got '" + s + "'");
        }
    }
    return out;
}

double parse_real(const std::string& text) {
    // Accepts a decimal, an exact rational "p/q", and either followed by "/2pi".
    std::string s = text;
    double factor = 1.0;
    for (const std::string suffix : {"/(2pi)", "/2pi"})
        if (s.size() > suffix.size() && s.ends_with(suffix)) {
            s.resize(s.size() - suffix.size());
            factor = 1.0 / (2.0 * std::numbers::pi);
            break;
        }
    try {
        return algebra::parse_rational(s).get_d() * factor;
    } catch (const Error&) {
    }
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size()) return v * factor;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::ParseError, "cannot read a number from '" + text + "'");
}

holonomy::LabelScales parse_scales(const std::vector<std::string>& items) {
    holonomy::LabelScales out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::ParseError, "scale must be label=value, got '" + item + "'");
        out[item.substr(0, eq)] = parse_real(item.substr(eq + 1));
    }
    return out;
}

cplx parse_point(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 2) throw Error(ErrorKind::ParseError, "expected a point x,y, got '" + s + "'");
    return {parse_real(parts[0]), parse_real(parts[1])};
}

algebra::UPoly parse_upoly(const std::string& s) {
    std::vector<algebra::GaussianRational> c;
    for (const auto& x : split(s, ',')) c.push_back(algebra::GaussianRational(algebra::parse_rational(x)));
    return algebra::UPoly(c);
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        io::write_text_file(path, text);
}

struct Failure {
    std::string kind, message;
};

std::uint64_t g_seed = 0x5eed;

gauge::SecondaryData run_secondary(const connection::ConnectionFamily& f, const std::string& blocks) {
    std::vector<int> split_type = blocks.empty() ? gauge::jordan_type(f.phi(), g_seed).partition : parse_ints(blocks);
    return gauge::secondary_higgs(f, split_type, g_seed);
}

// Surface input: a JSON file or one of the built-in generators.
struct SurfaceSource {
    std::string file;
    int staircase = 0;
    int rectangles = 0;
    std::string style = "left";
    bool half = false;
    bool torus = false;

    void attach(CLI::App* app, bool with_file) {
        if (with_file) app->add_option("surface", file, "surface JSON file");
        app->add_option("--staircase", staircase, "genus parameter n of a generated staircase");
        app->add_option("--rectangles", rectangles, "explicit rectangle count (overrides the genus mapping)");
        app->add_option("--style", style, "staircase style")->check(CLI::IsMember({"left", "right"}));
        app->add_flag("--half", half, "half-translation staircase with folded ends");
        app->add_flag("--torus", torus, "the unit square torus");
    }

    surface::PolygonSurface build() const {
        if (!file.empty()) return io::surface_from_json(io::read_json_file(file));
        if (torus) return surface::flat_torus();
        if (staircase <= 0 && rectangles <= 0)
            throw Error(ErrorKind::InvalidArgument, "give a surface file, --torus, or --staircase n");
        auto st = style == "left" ? surface::StaircaseStyle::Left : surface::StaircaseStyle::Right;
        int count = rectangles;
        if (count <= 0) {
            // Counts chosen so the surface has genus n.
            if (half)
                count = st == surface::StaircaseStyle::Left ? 2 * staircase + 1 : 2 * staircase;
            else
                count = st == surface::StaircaseStyle::Left ? 2 * staircase : 2 * staircase - 1;
        }
        return half ? surface::half_staircase(count, st) : surface::staircase(count, st);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nilwkb: nilpotent WKB toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // lets -o and --seed follow the subcommand
    app.add_option("--seed", g_seed, "seed for generic-point sampling in exact rank computations");
    std::string out_path;
    app.add_option("-o,--output", out_path, "write the primary output here instead of stdout");

    std::optional<Failure> soft_failure; // exit 1 after printing a report
    std::function<void()> action;

    // flatness
    std::string family_file;
    auto* flat = app.add_subcommand("flatness", "exact flatness check of a family");
    flat->add_option("family", family_file, "family JSON")->required();
    flat->callback([&] {
        action = [&] {
            auto rep = connection::check_flatness(io::family_from_json(io::read_json_file(family_file)));
            emit(io::dump(io::to_json(rep)), out_path);
            if (!rep.is_flat) soft_failure = Failure{"NotFlat", "family is not flat"};
        };
    });

    // secondary, jordan, cyclic, kdiff, reality
    std::string blocks;
    auto* sec = app.add_subcommand("secondary", "secondary Higgs field via the diagonal gauge");
    sec->add_option("family", family_file, "family JSON")->required();
    sec->add_option("--blocks", blocks, "Jordan type n_1,...,n_k of the splitting (default: computed)");
    sec->callback([&] {
        action = [&] {
            auto f = io::family_from_json(io::read_json_file(family_file));
            emit(io::dump(io::to_json(run_secondary(f, blocks))), out_path);
        };
    });

    std::string label = "phi";
    auto* jor = app.add_subcommand("jordan", "Jordan type of the leading nilpotent field");
    jor->add_option("family", family_file, "family JSON")->required();
    jor->add_option("--label", label, "term label to analyse");
    jor->callback([&] {
        action = [&] {
            auto f = io::family_from_json(io::read_json_file(family_file));
            emit(io::dump(io::to_json(gauge::jordan_type(f.term(label), g_seed))), out_path);
        };
    });

    int cyclic_m = 0;
    auto* cyc = app.add_subcommand("cyclic", "m-cyclicity of the secondary field");
    cyc->add_option("family", family_file, "family JSON")->required();
    cyc->add_option("--blocks", blocks, "Jordan type of the splitting");
    cyc->add_option("--m", cyclic_m, "m to test (default: the computed m)");
    cyc->callback([&] {
        action = [&] {
            auto s = run_secondary(io::family_from_json(io::read_json_file(family_file)), blocks);
            int m = cyclic_m > 0 ? cyclic_m : s.m;
            Json j = {{"schema", io::kSchema}, {"m", m}, {"computed_m", s.m}, {"m_cyclic", gauge::is_m_cyclic(s.Phi, s.profile, m)}};
            emit(io::dump(j), out_path);
        };
    });

    int up_to = 0;
    bool raw_phi = false;
    auto* kd = app.add_subcommand("kdiff", "k-differentials Tr(Phi^k)");
    kd->add_option("family", family_file, "family JSON")->required();
    kd->add_option("--blocks", blocks, "Jordan type of the splitting");
    kd->add_option("--up-to", up_to, "largest k (default: rank)");
    kd->add_flag("--raw", raw_phi, "use the leading field itself instead of the secondary field");
    kd->callback([&] {
        action = [&] {
            auto f = io::family_from_json(io::read_json_file(family_file));
            auto field = raw_phi ? f.phi() : run_secondary(f, blocks).Phi;
            int k_max = up_to > 0 ? up_to : f.rank();
            Json list = Json::array();
            auto diffs = gauge::k_differentials(field, k_max);
            for (std::size_t i = 0; i < diffs.size(); ++i)
                list.push_back({{"k", static_cast<int>(i) + 2}, {"value", io::to_json(diffs[i])}, {"text", diffs[i].to_string()}});
            emit(io::dump(Json{{"schema", io::kSchema}, {"differentials", list}}), out_path);
        };
    });

    auto* real = app.add_subcommand("reality", "sign relation between det(-conj psi) and det(phi)");
    real->add_option("family", family_file, "family JSON")->required();
    real->callback([&] {
        action = [&] {
            auto f = io::family_from_json(io::read_json_file(family_file));
            Json j = {{"schema", io::kSchema}, {"obstructed", gauge::reality_obstruction(f.phi(), f.psi())}};
            emit(io::dump(j), out_path);
        };
    });

    // holonomy
    std::string path_file, eps_spec = "0.5:0.001:geometric:12";
    std::vector<std::string> scales;
    holonomy::TransportOptions topts;
    int threads = 0;
    auto* hol = app.add_subcommand("holonomy", "transport along a path over an epsilon grid (CSV)");
    hol->add_option("family", family_file, "family JSON")->required();
    hol->add_option("path", path_file, "path JSON")->required();
    hol->add_option("--eps", eps_spec, "start:end[:geometric|linear]:count");
    hol->add_option("--rel-tol", topts.rel_tol, "relative step tolerance");
    hol->add_option("--clearance", topts.clearance, "minimum distance to punctures");
    hol->add_option("--max-steps", topts.max_steps, "step budget per transport");
    hol->add_option("--scale", scales, "numeric multiplier label=value (value may end in /2pi)");
    hol->add_option("--threads", threads, "worker threads (default: NILWKB_THREADS or hardware)");
    hol->callback([&] {
        action = [&] {
            auto f = io::family_from_json(io::read_json_file(family_file));
            auto path = io::path_from_json(io::read_json_file(path_file));
            holonomy::NumericFamily nf(f, parse_scales(scales));
            auto samples = holonomy::transport_grid(nf, path, holonomy::parse_eps_grid(eps_spec), topts, threads);
            std::ostringstream csv;
            holonomy::write_samples_csv(csv, samples);
            emit(csv.str(), out_path);
        };
    });

    // period and wkbcheck share the field selection
    bool use_secondary = false;
    auto add_field_opts = [&](CLI::App* c) {
        c->add_option("family", family_file, "family JSON")->required();
        c->add_option("path", path_file, "path JSON")->required();
        c->add_option("--label", label, "term label whose form is tracked");
        c->add_flag("--secondary", use_secondary, "track the secondary field instead");
        c->add_option("--blocks", blocks, "Jordan type for --secondary");
        c->add_option("--scale", scales, "numeric multiplier label=value");
    };
    auto scaled_field = [&] {
        auto f = io::family_from_json(io::read_json_file(family_file));
        auto sc = parse_scales(scales);
        std::string key = use_secondary ? "Phi" : label;
        cplx scale = sc.count(key) ? sc.at(key) : cplx(1.0);
        return holonomy::ScaledForm{use_secondary ? run_secondary(f, blocks).Phi : f.term(label), scale};
    };
    auto* per = app.add_subcommand("period", "integral of the leading eigenvalue branch along a path");
    add_field_opts(per);
    per->callback([&] {
        action = [&] {
            auto field = scaled_field();
            auto path = io::path_from_json(io::read_json_file(path_file));
            cplx z = holonomy::period(field, path);
            emit(io::dump(Json{{"schema", io::kSchema}, {"Z", {z.real(), z.imag()}}}), out_path);
        };
    });
    auto* wc = app.add_subcommand("wkbcheck", "WKB-curve predicate along a path");
    add_field_opts(wc);
    wc->callback([&] {
        action = [&] {
            auto field = scaled_field();
            auto path = io::path_from_json(io::read_json_file(path_file));
            auto r = holonomy::is_wkb_curve(field, path);
            emit(io::dump(Json{{"schema", io::kSchema}, {"is_wkb", r.is_wkb}, {"margin", r.margin}}), out_path);
        };
    });

    // wkbfit
    std::string samples_file, exponents;
    holonomy::FitOptions fopts;
    auto* fit = app.add_subcommand("wkbfit", "fit exp(Z eps^-p) to trace samples");
    fit->add_option("samples", samples_file, "CSV written by the holonomy command")->required();
    fit->add_option("--exponents", exponents, "candidate exponents, e.g. 1,1/2,1/3 (default 1,1/2)");
    fit->add_option("--tail-fraction", fopts.tail_fraction, "fraction of smallest-epsilon samples fitted");
    fit->callback([&] {
        action = [&] {
            std::ifstream in(samples_file);
            if (!in) throw Error(ErrorKind::ParseError, "cannot open " + samples_file);
            auto samples = holonomy::read_samples_csv(in);
            std::vector<mpq_class> cands;
            if (exponents.empty())
                cands = holonomy::default_exponents(2);
            else
                for (const auto& c : split(exponents, ',')) cands.push_back(algebra::parse_rational(c));
            emit(io::dump(io::to_json(holonomy::wkb_fit(samples, cands, fopts))), out_path);
        };
    });

    // surface
    auto* surf = app.add_subcommand("surface", "half-translation surfaces");
    surf->require_subcommand(1);
    SurfaceSource src;
    auto* sval = surf->add_subcommand("validate", "vertex classes, cone angles, genus");
    src.attach(sval, true);
    sval->callback([&] { action = [&] { emit(io::dump(io::to_json(surface::validate(src.build()))), out_path); }; });

    auto* sgen = surf->add_subcommand("generate", "emit a generated staircase as surface JSON");
    src.attach(sgen, false);
    sgen->callback([&] { action = [&] { emit(io::dump(io::to_json(src.build())), out_path); }; });

    double theta = 0.0, max_length = 100.0;
    int start_polygon = 0;
    std::string start_point = "0.5,0.5", csv_path, convention = "imaginary";
    auto add_flow_opts = [&](CLI::App* c) {
        src.attach(c, true);
        c->add_option("--theta", theta, "direction angle in radians");
        c->add_option("--polygon", start_polygon, "start polygon index");
        c->add_option("--point", start_point, "start point x,y");
        c->add_option("--max-length", max_length, "flow length budget");
    };
    auto* strace = surf->add_subcommand("trace", "straight-line flow in a direction");
    add_flow_opts(strace);
    strace->add_option("--csv", csv_path, "also write trajectory points as CSV");
    strace->callback([&] {
        action = [&] {
            auto s = src.build();
            auto t = surface::trace_flow(s, {start_polygon, parse_point(start_point)}, theta, max_length);
            if (!csv_path.empty()) {
                std::ostringstream csv;
                csv << "piece,polygon,x,y\n";
                char buf[128];
                for (std::size_t k = 0; k < t.pieces.size(); ++k)
                    for (cplx z : {t.pieces[k].entry, t.pieces[k].exit}) {
                        std::snprintf(buf, sizeof buf, "%zu,%d,%.17g,%.17g\n", k, t.pieces[k].polygon, z.real(), z.imag());
                        csv << buf;
                    }
                io::write_text_file(csv_path, csv.str());
            }
            emit(io::dump(io::to_json(t)), out_path);
        };
    });
    auto* sloop = surf->add_subcommand("wkbloop", "closed WKB loop through a start point");
    add_flow_opts(sloop);
    sloop->add_option("--convention", convention, "axis of the WKB predicate")
        ->check(CLI::IsMember({"imaginary", "real"}));
    sloop->callback([&] {
        action = [&] {
            auto s = src.build();
            surface::LoopOptions lo;
            lo.max_length = max_length;
            lo.convention = convention == "real" ? surface::Convention::Real : surface::Convention::Imaginary;
            auto loop = surface::find_wkb_loop(s, {start_polygon, parse_point(start_point)}, theta, lo);
            Json j = io::to_json(loop);
            j["lift_check"] = surface::lift_check(s, loop);
            emit(io::dump(j), out_path);
        };
    });

    // toy model
    auto* toy = app.add_subcommand("toy", "parabolic toy model on the four-punctured sphere");
    toy->require_subcommand(1);
    std::string rho = "1/4,1/4,1/4,1/8", p_text = "2", kind_text, a_text, b_text, emit_path;
    bool aligned = false;

    auto* tstab = toy->add_subcommand("stability", "weight inequalities");
    tstab->add_option("--rho", rho, "four weights in (0, 1/2)");
    tstab->callback([&] {
        action = [&] {
            auto rep = toymodel::check_weight_inequalities(toymodel::ParabolicWeights::parse(rho));
            emit(io::dump(io::to_json(rep)), out_path);
            if (!rep.all_pass()) soft_failure = Failure{"UnstableWeights", "weight inequalities fail"};
        };
    });

    auto* tpdeg = toy->add_subcommand("pdeg", "parabolic degrees of all incidence patterns");
    tpdeg->add_option("--rho", rho, "four weights in (0, 1/2)");
    tpdeg->callback([&] {
        action = [&] { emit(io::dump(io::to_json(toymodel::pdeg_table(toymodel::ParabolicWeights::parse(rho)))), out_path); };
    });

    auto build_field = [&] {
        return toymodel::build_toy_higgs(toymodel::parse_toy_kind(kind_text), parse_gaussian(p_text),
                                         a_text.empty() ? algebra::UPoly() : parse_upoly(a_text),
                                         b_text.empty() ? algebra::UPoly() : parse_upoly(b_text));
    };
    auto add_field = [&](CLI::App* c) {
        c->add_option("kind", kind_text, "phi_p, phi_0, phi_1, phi_inf or custom")->required();
        c->add_option("--p", p_text, "fourth puncture 're' or 're,im'");
        c->add_option("--a", a_text, "custom: coefficients of a, constant first");
        c->add_option("--b", b_text, "custom: coefficients of b, constant first");
    };
    auto* thiggs = toy->add_subcommand("higgs", "toy Higgs field with its flags");
    add_field(thiggs);
    thiggs->add_option("--emit", emit_path, "write the field as a connection family");
    thiggs->add_flag("--aligned", aligned, "emit the kernel-aligned gauge of the family");
    thiggs->callback([&] {
        action = [&] {
            auto h = build_field();
            if (!emit_path.empty()) {
                auto fam = aligned ? toymodel::aligned_family(h) : toymodel::skeleton_family(h);
                io::write_text_file(emit_path, io::dump(io::to_json(fam)));
            }
            emit(io::dump(io::to_json(h)), out_path);
        };
    });
    auto* tres = toy->add_subcommand("residues", "exact residues at 0, 1, inf, p");
    add_field(tres);
    tres->callback([&] { action = [&] { emit(io::dump(io::to_json(toymodel::residues(build_field()))), out_path); }; });

    auto* tcone = toy->add_subcommand("cone", "nilpotent cone incidence graph");
    tcone->add_option("--p", p_text, "fourth puncture");
    tcone->add_option("--rho", rho, "four weights");
    tcone->add_option("--emit", emit_path, "also write the graph here");
    tcone->callback([&] {
        action = [&] {
            auto g = toymodel::nilpotent_cone_graph(parse_gaussian(p_text), toymodel::ParabolicWeights::parse(rho));
            std::string text = io::dump(io::to_json(g));
            if (!emit_path.empty()) io::write_text_file(emit_path, text);
            emit(text, out_path);
        };
    });

    try {
        app.parse(argc, argv);
        action();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << io::dump(Json{{"schema", io::kSchema}, {"error", "ParseError"}, {"message", e.what()}});
        return 1;
    } catch (const Error& e) {
        std::cerr << io::dump(io::error_json(e));
        return is_budget_error(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << io::dump(Json{{"schema", io::kSchema}, {"error", "InvalidArgument"}, {"message", e.what()}});
        return 1;
    }
    if (soft_failure) {
        std::cerr << io::dump(Json{{"schema", io::kSchema}, {"error", soft_failure->kind}, {"message", soft_failure->message}});
        return 1;
    }
    return 0;
}
