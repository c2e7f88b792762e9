#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "nilwkb/algebra/form.hpp"
#include "nilwkb/holonomy/path.hpp"

namespace nilwkb::holonomy {

// A 1-form with a numeric prefactor, e.g. diag(−i, i)dz/z scaled by 1/(2π).
struct ScaledForm {
    algebra::MatrixOneForm form;
    cplx scale = 1.0;
};

struct TrackOptions {
    int samples = 512;
    // Fixes the starting sheets: branch k starts at the eigenvalue nearest seed[k].
    std::optional<std::vector<cplx>> seed;
    double branch_tol = 1e-12;
};

// Eigenvalues of γ*Φ (coefficient of dt) continued along the path. Branch 0 has
// the largest real part at t = 0 unless a seed says otherwise.
class EigenTrack {
public:
    EigenTrack(ScaledForm phi, ParamPath path, const TrackOptions& opts = {});

    int branches() const { return n_; }
    const std::vector<double>& times() const { return t_; }
    const std::vector<std::vector<cplx>>& values() const { return mu_; }
    // Branch k at an arbitrary t, continued from the nearest recorded sample.
    cplx value(int k, double t) const;
    // Unordered eigenvalues of γ*Φ at t.
    std::vector<cplx> eigenvalues_at(double t) const;
    const ParamPath& path() const { return path_; }

private:
    std::vector<cplx> matched(const std::vector<cplx>& prev, double t) const;
    double discriminant(double t) const;
    void check_branch_points() const;

    ScaledForm phi_;
    ParamPath path_;
    int n_;
    double branch_tol_;
    std::vector<double> t_;
    std::vector<std::vector<cplx>> mu_;
};

// Unordered spectrum of a numeric matrix; for traceless 2×2 uses ±sqrt(½ tr P²).
std::vector<cplx> spectrum(const Eigen::MatrixXcd& p);

struct WkbCurveResult {
    bool is_wkb = false;
    // Smallest consecutive real-part gap (SL2: min Re μ) along the path.
    double margin = 0.0;
};

WkbCurveResult is_wkb_curve(const ScaledForm& phi, const ParamPath& path, const TrackOptions& opts = {});

// ∫_γ μ₀ dt for the leading branch, by adaptive Gauss–Kronrod (7, 15).
cplx period(const ScaledForm& phi, const ParamPath& path, const TrackOptions& opts = {}, double abs_tol = 1e-10);
cplx period(const EigenTrack& track, double abs_tol = 1e-10);

} // namespace nilwkb::holonomy
