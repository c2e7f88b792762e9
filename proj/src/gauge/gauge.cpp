#include "nilwkb/gauge/gauge.hpp"

#include <algorithm>
#include <numeric>

#include "nilwkb/error.hpp"

namespace nilwkb::gauge {

using connection::FamilyTerm;

std::vector<int> conjugate_partition(const std::vector<int>& p) {
    std::vector<int> t;
    int largest = p.empty() ? 0 : *std::max_element(p.begin(), p.end());
    for (int i = 1; i <= largest; ++i)
        t.push_back(static_cast<int>(std::count_if(p.begin(), p.end(), [i](int x) { return x >= i; })));
    return t;
}

NilpotentType jordan_type(const MatrixOneForm& phi, std::uint64_t seed) {
    if (!phi.dzbar_part().is_zero()) throw Error(ErrorKind::InvalidArgument, "Higgs field must be of type (1,0)");
    const RationalFunctionMatrix& p = phi.dz_part();
    int n = p.rows();
    if (p.is_zero()) throw Error(ErrorKind::ZeroHiggsField, "Higgs field is zero");
    if (!p.pow(n).is_zero()) throw Error(ErrorKind::NotNilpotent, "phi^n is not zero");

    GaussianRational at = algebra::generic_points(1, seed ^ 0x9e3779b97f4a7c15ULL)[0];
    std::vector<int> ranks{n};
    RationalFunctionMatrix power = RationalFunctionMatrix::identity(n);
    while (ranks.back() > 0) {
        power = power * p;
        ranks.push_back(algebra::matrix_rank_exact(power, at, true, seed));
    }
    NilpotentType t;
    for (std::size_t j = 1; j < ranks.size(); ++j) t.partition.push_back(ranks[j - 1] - ranks[j]);
    t.nilpotency_index = static_cast<int>(t.partition.size());
    t.transpose = conjugate_partition(t.partition);
    return t;
}

namespace {

std::vector<int> block_index(const std::vector<int>& blocks, int n) {
    int total = 0;
    for (int b : blocks) {
        if (b <= 0) throw Error(ErrorKind::BadBlocks, "block sizes must be positive");
        total += b;
    }
    if (total != n) throw Error(ErrorKind::BadBlocks, "block sizes do not sum to the rank");
    std::vector<int> idx;
    for (std::size_t k = 0; k < blocks.size(); ++k)
        for (int r = 0; r < blocks[k]; ++r) idx.push_back(static_cast<int>(k));
    return idx;
}

void add_entry(std::map<mpq_class, MatrixOneForm>& out, const mpq_class& e, int n, int i, int j,
               const BiRational& dz, const BiRational& dzbar) {
    auto [it, fresh] = out.try_emplace(e, MatrixOneForm(n));
    it->second.dz_part()(i, j) += dz;
    it->second.dzbar_part()(i, j) += dzbar;
}

template <class Map>
void drop_zero(Map& m) {
    for (auto it = m.begin(); it != m.end();) {
        if (it->second.is_zero())
            it = m.erase(it);
        else
            ++it;
    }
}

mpq_class rational_gcd(const mpq_class& a, const mpq_class& b) {
    if (sgn(a) == 0) return abs(b);
    if (sgn(b) == 0) return abs(a);
    mpz_class num = gcd(mpz_class(a.get_num() * b.get_den()), mpz_class(b.get_num() * a.get_den()));
    mpq_class g(num, mpz_class(a.get_den() * b.get_den()));
    g.canonicalize();
    return abs(g);
}

} // namespace

std::map<int, MatrixOneForm> graded_decompose(const MatrixOneForm& a, const std::vector<int>& blocks) {
    int n = a.size();
    std::vector<int> idx = block_index(blocks, n);
    std::map<int, MatrixOneForm> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& dz = a.dz_part()(i, j);
            const auto& dzb = a.dzbar_part()(i, j);
            if (dz.is_zero() && dzb.is_zero()) continue;
            auto [it, fresh] = out.try_emplace(idx[j] - idx[i], MatrixOneForm(n));
            it->second.dz_part()(i, j) = dz;
            it->second.dzbar_part()(i, j) = dzb;
        }
    return out;
}

GaugeProfile sl2_profile() { return {{mpq_class(-1, 4), mpq_class(1, 4)}, {2}, 2}; }

GaugeProfile gn_profile(int n) {
    GaugeProfile p;
    for (int j = 1; j <= n; ++j) {
        mpq_class e(2 * j - 1 - n, 2);
        e.canonicalize();
        p.exponents.push_back(e);
    }
    p.block_m = {1};
    p.m = 1;
    return p;
}

GaugeProfile cyclic_profile(int n, int m) {
    GaugeProfile p;
    for (int j = 1; j <= n; ++j) {
        mpq_class e(2 * j - 1 - n, 2 * m);
        e.canonicalize();
        p.exponents.push_back(e);
    }
    p.block_m = {m};
    p.m = m;
    return p;
}

GaugeProfile inverse_profile(const GaugeProfile& p) {
    GaugeProfile q = p;
    for (auto& e : q.exponents) e = -e;
    return q;
}

std::map<mpq_class, MatrixOneForm> gauge_conjugate(const MatrixOneForm& x, const GaugeProfile& profile) {
    int n = x.size();
    if (static_cast<int>(profile.exponents.size()) != n)
        throw Error(ErrorKind::DimensionMismatch, "profile length differs from rank");
    std::map<mpq_class, MatrixOneForm> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& dz = x.dz_part()(i, j);
            const auto& dzb = x.dzbar_part()(i, j);
            if (dz.is_zero() && dzb.is_zero()) continue;
            add_entry(out, profile.exponents[j] - profile.exponents[i], n, i, j, dz, dzb);
        }
    return out;
}

ConnectionFamily gauge_conjugate(const ConnectionFamily& f, const GaugeProfile& profile) {
    if (static_cast<int>(profile.exponents.size()) != f.rank())
        throw Error(ErrorKind::DimensionMismatch, "profile length differs from rank");
    std::vector<FamilyTerm> terms;
    for (const auto& t : f.terms())
        for (auto& [shift, piece] : gauge_conjugate(t.form, profile))
            terms.push_back({t.label, t.exponent + shift, piece});
    return ConnectionFamily(f.rank(), std::move(terms), f.punctures());
}

SecondaryData secondary_higgs(const ConnectionFamily& f, const std::vector<int>& splitting, std::uint64_t seed) {
    int n = f.rank();
    if (!f.is_standard()) throw Error(ErrorKind::InvalidArgument, "secondary_higgs expects exponents (-1, 0, 1)");
    MatrixOneForm phi = f.phi();
    NilpotentType type = jordan_type(phi, seed);
    std::vector<int> vj = block_index(splitting, n);
    if (splitting != type.partition)
        throw Error(ErrorKind::BadBlocks, "splitting does not match the Jordan type of phi");

    // Chain i (zero-based) has one line in each V_j with j < length; pos[i][j] is its frame index.
    std::vector<int> offsets(splitting.size() + 1, 0);
    for (std::size_t j = 0; j < splitting.size(); ++j) offsets[j + 1] = offsets[j] + splitting[j];
    std::vector<int> lengths = conjugate_partition(splitting);
    std::vector<std::vector<int>> pos(lengths.size());
    std::vector<int> chain_of(n), level_of(n);
    for (std::size_t i = 0; i < lengths.size(); ++i)
        for (int j = 0; j < lengths[i]; ++j) {
            int p = offsets[j] + static_cast<int>(i);
            pos[i].push_back(p);
            chain_of[p] = static_cast<int>(i);
            level_of[p] = j;
        }

    const RationalFunctionMatrix& pz = phi.dz_part();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (pz(r, c).is_zero()) continue;
            if (chain_of[r] != chain_of[c] || level_of[c] != level_of[r] + 1)
                throw Error(ErrorKind::BadBlocks, "phi is not aligned with the supplied splitting");
        }

    MatrixOneForm a = f.conn();
    auto conn_entry_nonzero = [&](int r, int c) {
        return !a.dz_part()(r, c).is_zero() || !a.dzbar_part()(r, c).is_zero();
    };
    std::vector<int> block_m(lengths.size(), 1);
    for (std::size_t i = 0; i < lengths.size(); ++i)
        for (int t = 2; t <= lengths[i]; ++t)
            for (int col = 0; col + t - 1 < lengths[i]; ++col)
                if (conn_entry_nonzero(pos[i][col + t - 1], pos[i][col])) block_m[i] = std::max(block_m[i], t);
    int m = *std::max_element(block_m.begin(), block_m.end());
    if (m == 1)
        throw Error(ErrorKind::FixedPointDetected,
                    "all lower graded pieces of the connection vanish; the family is a fixed point");

    SecondaryData s;
    s.m = m;
    s.splitting = splitting;
    s.leading_exponent = mpq_class(1 - m, m);
    s.leading_exponent.canonicalize();
    s.profile.block_m = block_m;
    s.profile.m = m;
    s.profile.exponents.assign(n, 0);
    for (int p = 0; p < n; ++p) {
        int i = chain_of[p];
        mpq_class e(2 * (level_of[p] + 1) - 1 - lengths[i], 2 * block_m[i]);
        e.canonicalize();
        s.profile.exponents[p] = e;
    }

    s.Phi = MatrixOneForm(n);
    s.diag_connection = MatrixOneForm(n);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (block_m[i] != m) continue;
        for (int j = 0; j + 1 < lengths[i]; ++j) {
            int r = pos[i][j], c = pos[i][j + 1];
            s.Phi.dz_part()(r, c) = pz(r, c);
        }
        for (int col = 0; col + m - 1 < lengths[i]; ++col) {
            int r = pos[i][col + m - 1], c = pos[i][col];
            s.Phi.dz_part()(r, c) += a.dz_part()(r, c);
            s.Phi.dzbar_part()(r, c) += a.dzbar_part()(r, c);
        }
    }
    if (!s.Phi.dzbar_part().is_zero())
        throw Error(ErrorKind::NotHolomorphic, "secondary Higgs field has a (0,1) part; is the family flat?");
    for (int p = 0; p < n; ++p) {
        s.diag_connection.dz_part()(p, p) = a.dz_part()(p, p);
        s.diag_connection.dzbar_part()(p, p) = a.dzbar_part()(p, p);
    }

    auto gauged = gauge_conjugate(f, s.profile).expansion();
    auto take = [&](const mpq_class& e, const MatrixOneForm& x) {
        auto [it, fresh] = gauged.try_emplace(e, MatrixOneForm(n));
        it->second = it->second - x;
    };
    take(s.leading_exponent, s.Phi);
    take(0, s.diag_connection);
    drop_zero(gauged);
    for (auto& [e, x] : gauged) {
        s.residual_terms.emplace_back(e, x);
        if (e < s.leading_exponent) s.leading_is_dominant = false;
    }
    return s;
}

ConnectionFamily reassemble(const SecondaryData& s, const ConnectionFamily& original) {
    std::vector<FamilyTerm> terms;
    terms.push_back({"Phi", s.leading_exponent, s.Phi});
    terms.push_back({"diag", 0, s.diag_connection});
    for (const auto& [e, x] : s.residual_terms) terms.push_back({"residual", e, x});
    return ConnectionFamily(original.rank(), std::move(terms), original.punctures());
}

bool is_m_cyclic(const MatrixOneForm& phi, const GaugeProfile& profile, int m) {
    int n = phi.size();
    if (static_cast<int>(profile.exponents.size()) != n || m < 1) return false;
    mpq_class unit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) unit = rational_gcd(unit, profile.exponents[j] - profile.exponents[i]);
    if (sgn(unit) == 0) return false;
    bool any = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (phi.dz_part()(i, j).is_zero() && phi.dzbar_part()(i, j).is_zero()) continue;
            any = true;
            mpq_class w = (profile.exponents[j] - profile.exponents[i]) / unit;
            w.canonicalize();
            if (w.get_den() != 1) return false;
            mpz_class r = w.get_num() - 1;
            mpz_class mod = r % m;
            if (mod != 0) return false;
        }
    return any;
}

std::vector<BiRational> k_differentials(const MatrixOneForm& phi, int up_to) {
    if (!phi.dzbar_part().is_zero()) throw Error(ErrorKind::InvalidArgument, "Higgs field must be of type (1,0)");
    const RationalFunctionMatrix& p = phi.dz_part();
    if (!p.is_square()) throw Error(ErrorKind::DimensionMismatch, "Higgs field must be square");
    std::vector<BiRational> out;
    RationalFunctionMatrix power = p;
    for (int k = 2; k <= up_to; ++k) {
        power = power * p;
        out.push_back(power.trace());
    }
    return out;
}

bool reality_obstruction(const MatrixOneForm& phi, const MatrixOneForm& psi) {
    if (phi.size() != 2 || psi.size() != 2)
        throw Error(ErrorKind::DimensionMismatch, "reality obstruction is defined for rank 2");
    BiRational det_phi = phi.dz_part().det();
    BiRational det_conj = (-psi.dzbar_part().conj_swap()).det();
    return !det_phi.is_zero() && det_conj == -det_phi;
}

} // namespace nilwkb::gauge
