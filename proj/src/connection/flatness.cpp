#include "nilwkb/connection/flatness.hpp"

namespace nilwkb::connection {

using algebra::exterior_d;
using algebra::wedge;
using algebra::wedge_bracket;

std::map<mpq_class, RationalFunctionMatrix> curvature_expansion(const ConnectionFamily& f) {
    auto terms = f.expansion();
    std::map<mpq_class, RationalFunctionMatrix> out;
    auto add = [&](const mpq_class& e, const RationalFunctionMatrix& m) {
        auto [it, fresh] = out.try_emplace(e, RationalFunctionMatrix(f.rank(), f.rank()));
        it->second += m;
    };
    for (const auto& [e, x] : terms) add(e, exterior_d(x));
    for (auto a = terms.begin(); a != terms.end(); ++a) {
        add(2 * a->first, wedge(a->second, a->second));
        for (auto b = std::next(a); b != terms.end(); ++b)
            add(a->first + b->first, wedge_bracket(a->second, b->second));
    }
    return out;
}

FlatnessReport check_flatness(const ConnectionFamily& f) {
    FlatnessReport report;
    if (f.is_standard()) {
        MatrixOneForm phi = f.phi(), a = f.conn(), psi = f.psi();
        report.residuals.push_back({"[phi^phi]", -2, wedge_bracket(phi, phi)});
        report.residuals.push_back({"[psi^psi]", 2, wedge_bracket(psi, psi)});
        report.residuals.push_back({"D phi", -1, exterior_d(phi) + wedge_bracket(a, phi)});
        report.residuals.push_back({"D psi", 1, exterior_d(psi) + wedge_bracket(a, psi)});
        report.residuals.push_back(
            {"F_D + [phi^psi]", 0, exterior_d(a) + wedge(a, a) + wedge_bracket(phi, psi)});
    } else {
        for (auto& [e, m] : curvature_expansion(f)) report.residuals.push_back({"order " + e.get_str(), e, m});
    }
    report.is_flat = true;
    for (const auto& r : report.residuals)
        if (!r.value.is_zero()) report.is_flat = false;
    return report;
}

} // namespace nilwkb::connection
