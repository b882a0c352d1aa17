#include "srlab/perturbation.hpp"

#include <cmath>

#include "srlab/ode.hpp"

namespace srlab {

void BlockSet::add(const Sector& s) {
    s.validate();
    sectors.push_back(s);
    offsets.push_back(total);
    total += s.size();
}

int BlockSet::find(HalfInt j, HalfInt jp, HalfInt k) const {
    for (std::size_t i = 0; i < sectors.size(); ++i)
        if (sectors[i].j == j && sectors[i].jp == jp && sectors[i].k == k) return static_cast<int>(i);
    return -1;
}

PerturbationEngine::PerturbationEngine(int n1, int n2)
    : j1_(HalfInt::from_twice(n1)), j2_(HalfInt::from_twice(n2)), jmax_(HalfInt::from_twice(n1 + n2)),
      big_j_(jmax_.value() + 0.5), table_(j1_, j2_) {
    if (n1 < 0 || n2 < 0 || n1 + n2 < 1)
        throw InvalidQuantumNumber("PerturbationEngine: need n1, n2 >= 0, n1 + n2 >= 1");
}

double PerturbationEngine::l1_element(HalfInt j, HalfInt l, HalfInt m, HalfInt r, HalfInt jp, HalfInt lp,
                                      HalfInt mp, HalfInt rp) const {
    const HalfInt cap = j1_ + j2_;
    for (HalfInt x : {j, l, jp, lp})
        if (x > cap || x < abs(j1_ - j2_)) return 0.0;

    auto a1 = [&](HalfInt bj, HalfInt bm, HalfInt kj, HalfInt km) {
        return table_.ladder(bj, bm, kj, km, LadderOp::minus_1);
    };
    auto b1 = [&](HalfInt bj, HalfInt bm, HalfInt kj, HalfInt km) {
        return table_.ladder(bj, bm, kj, km, LadderOp::plus_minus_1);
    };
    auto a2 = [&](HalfInt bj, HalfInt bm, HalfInt kj, HalfInt km) {
        return table_.ladder(bj, bm, kj, km, LadderOp::minus_2);
    };
    auto b2 = [&](HalfInt bj, HalfInt bm, HalfInt kj, HalfInt km) {
        return table_.ladder(bj, bm, kj, km, LadderOp::plus_minus_2);
    };

    double term = 2.0 * (a1(j, m, l, r) * a1(jp, mp, lp, rp) - a2(j, m, l, r) * a2(jp, mp, lp, rp));
    if (j == l && m == r) term -= b1(lp, rp, jp, mp) - b2(lp, rp, jp, mp);
    if (jp == lp && mp == rp) term -= b1(j, m, l, r) - b2(j, m, l, r);
    return term / big_j_;
}

double PerturbationEngine::closed_form_l1_jmax(HalfInt n, HalfInt r, HalfInt j1, HalfInt jmax) {
    const double jm = jmax.value();
    const double nv = n.value();
    const double prefactor = 2.0 * (2.0 * j1.value() - jm) / (jm * (jm + 0.5));
    double bracket = 0.0;
    if (n == r - HalfInt::whole(1)) bracket += jm + jm * jm - nv - nv * nv;
    if (n == r) bracket -= jm + jm * jm + nv - nv * nv;
    return prefactor * bracket;
}

Eigen::VectorXcd PerturbationEngine::top_state() const {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(jmax_.twice() + 1);
    psi[psi_index(jmax_)] = 1.0;
    return psi;
}

std::vector<HalfInt> PerturbationEngine::target_js() const {
    std::vector<HalfInt> js;
    const HalfInt lo = abs(j1_ - j2_);
    for (int step = 0; step <= 2; ++step) {
        const HalfInt j = jmax_ - HalfInt::whole(step);
        if (j >= lo && j.valid_j()) js.push_back(j);
    }
    return js;
}

BlockSet PerturbationEngine::layout_rho0(const Eigen::VectorXcd& psi0) const {
    if (psi0.size() != jmax_.twice() + 1)
        throw InvalidQuantumNumber("psi0 must have 2 jmax + 1 amplitudes");
    BlockSet set;
    // one sector per coherence offset 2k present in the initial dyad
    for (int tk = -jmax_.twice(); tk <= jmax_.twice(); ++tk) {
        const HalfInt k = HalfInt::from_twice(tk);
        const Sector s{jmax_, jmax_, k};
        if (s.m_lo() > s.m_hi()) continue;
        bool nonzero = false;
        for (HalfInt m = s.m_lo(); m <= s.m_hi(); m += HalfInt::whole(1)) {
            const auto v = psi0[psi_index(m + k)] * std::conj(psi0[psi_index(m - k)]);
            if (v != std::complex<double>(0.0, 0.0)) nonzero = true;
        }
        if (nonzero) set.add(s);
    }
    return set;
}

BlockSet PerturbationEngine::layout_rho1(const BlockSet& layout0) const {
    BlockSet set;
    const auto js = target_js();
    for (const auto& s0 : layout0.sectors)
        for (HalfInt j : js)
            for (HalfInt jp : js) {
                const Sector s{j, jp, s0.k};
                if (s.m_lo() > s.m_hi()) continue;
                set.add(s);
            }
    return set;
}

Eigen::VectorXcd PerturbationEngine::initial_rho0(const Eigen::VectorXcd& psi0,
                                                  const BlockSet& layout0) const {
    Eigen::VectorXcd rho0 = Eigen::VectorXcd::Zero(layout0.total);
    for (std::size_t b = 0; b < layout0.sectors.size(); ++b) {
        const Sector& s = layout0.sectors[b];
        for (HalfInt m = s.m_lo(); m <= s.m_hi(); m += HalfInt::whole(1))
            rho0[layout0.offsets[b] + s.index_of(m)] =
                psi0[psi_index(m + s.k)] * std::conj(psi0[psi_index(m - s.k)]);
    }
    return rho0;
}

Eigen::SparseMatrix<std::complex<double>>
PerturbationEngine::assemble_l1(const BlockSet& layout0, const BlockSet& layout1) const {
    std::vector<Eigen::Triplet<std::complex<double>>> triplets;
    for (std::size_t tb = 0; tb < layout1.sectors.size(); ++tb) {
        const Sector& t = layout1.sectors[tb];
        const int sb = layout0.find(jmax_, jmax_, t.k);
        if (sb < 0) continue;
        const Sector& s = layout0.sectors[static_cast<std::size_t>(sb)];
        for (HalfInt m = t.m_lo(); m <= t.m_hi(); m += HalfInt::whole(1)) {
            for (HalfInt n : {m, m + HalfInt::whole(1)}) {
                if (!s.contains(n)) continue;
                const double c =
                    l1_element(t.j, jmax_, m + t.k, n + t.k, t.jp, jmax_, m - t.k, n - t.k);
                if (c == 0.0) continue;
                triplets.emplace_back(layout1.offsets[tb] + t.index_of(m),
                                      layout0.offsets[static_cast<std::size_t>(sb)] + s.index_of(n), c);
            }
        }
    }
    Eigen::SparseMatrix<std::complex<double>> l1(layout1.total, layout0.total);
    l1.setFromTriplets(triplets.begin(), triplets.end());
    return l1;
}

namespace {

// block-diagonal free evolution coefficients for a whole BlockSet
struct FreeCoeffs {
    std::vector<double> a, b; // indexed like the flat vector
    std::vector<int> block_start, block_size;

    FreeCoeffs(const BlockSet& set, double J) {
        a.resize(set.total);
        b.resize(set.total);
        for (std::size_t s = 0; s < set.sectors.size(); ++s) {
            block_start.push_back(set.offsets[s]);
            block_size.push_back(set.sectors[s].size());
            for (int i = 0; i < set.sectors[s].size(); ++i) {
                const HalfInt m = HalfInt::from_twice(set.sectors[s].m_lo().twice() + 2 * i);
                const auto rc = rate_coeffs(set.sectors[s], m, J);
                a[set.offsets[s] + i] = rc.a;
                b[set.offsets[s] + i] = rc.b;
            }
        }
    }

    void apply(const Eigen::VectorXcd& y, Eigen::VectorXcd& dy, int shift = 0) const {
        for (std::size_t s = 0; s < block_start.size(); ++s) {
            const int o = block_start[s];
            const int n = block_size[s];
            for (int i = 0; i < n; ++i) {
                dy[shift + o + i] = -b[o + i] * y[shift + o + i];
                if (i + 1 < n) dy[shift + o + i] += a[o + i + 1] * y[shift + o + i + 1];
            }
        }
    }
};

double jz_of_blocks(const BlockSet& set, const Eigen::VectorXcd& flat, const HalfInt* only_j = nullptr) {
    double jz = 0.0;
    for (std::size_t s = 0; s < set.sectors.size(); ++s) {
        const Sector& sec = set.sectors[s];
        if (!(sec.j == sec.jp) || sec.k.twice() != 0) continue;
        if (only_j && !(sec.j == *only_j)) continue;
        for (int i = 0; i < sec.size(); ++i) {
            const HalfInt m = HalfInt::from_twice(sec.m_lo().twice() + 2 * i);
            jz += m.value() * flat[set.offsets[s] + i].real();
        }
    }
    return jz;
}

// Gauss-Legendre 8-point nodes/weights on [-1, 1]
constexpr double gl_nodes[8] = {-0.9602898564975362, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975362};
constexpr double gl_weights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};

} // namespace

PerturbationEngine::Result PerturbationEngine::evolve(const Eigen::VectorXcd& psi0,
                                                      const std::vector<double>& tau_grid,
                                                      double rtol) const {
    Result result;
    result.layout0 = layout_rho0(psi0);
    result.layout1 = layout_rho1(result.layout0);
    const FreeCoeffs free0(result.layout0, big_j_);
    const FreeCoeffs free1(result.layout1, big_j_);
    const auto l1 = assemble_l1(result.layout0, result.layout1);

    const int n0 = result.layout0.total;
    const int n1 = result.layout1.total;
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n0 + n1);
    y.head(n0) = initial_rho0(psi0, result.layout0);

    auto deriv = [&](const Eigen::VectorXcd& yy, Eigen::VectorXcd& dy) {
        free0.apply(yy, dy, 0);
        // shifted in-place view of the rho1 part
        for (std::size_t s = 0; s < free1.block_start.size(); ++s) {
            const int o = n0 + free1.block_start[s];
            const int len = free1.block_size[s];
            for (int i = 0; i < len; ++i) {
                dy[o + i] = -free1.b[free1.block_start[s] + i] * yy[o + i];
                if (i + 1 < len) dy[o + i] += free1.a[free1.block_start[s] + i + 1] * yy[o + i + 1];
            }
        }
        dy.tail(n1) += l1 * yy.head(n0);
    };

    OdeOptions opt;
    opt.rtol = rtol;
    double t = 0.0;
    for (double tau : tau_grid) {
        if (tau < t) throw OutOfSectorRange("evolve: tau grid must be ascending");
        if (tau > t) integrate_dopri5(y, tau - t, deriv, opt);
        t = tau;
        result.taus.push_back(tau);
        result.jz0.push_back(jz_of_blocks(result.layout0, y.head(n0)));
        result.jz1.push_back(jz_of_blocks(result.layout1, y.tail(n1)));
    }
    result.rho0 = y.head(n0);
    result.rho1 = y.tail(n1);
    return result;
}

double PerturbationEngine::jz_zeroth(const Eigen::VectorXcd& psi0, double tau) const {
    return evolve(psi0, {tau}).jz0.back();
}

double PerturbationEngine::jz_first(const Eigen::VectorXcd& psi0, double tau) const {
    return evolve(psi0, {tau}).jz1.back();
}

double PerturbationEngine::jz1_contribution(const Result& result, HalfInt j) {
    return jz_of_blocks(result.layout1, result.rho1, &j);
}

Eigen::VectorXcd PerturbationEngine::rho1_quadrature(const Eigen::VectorXcd& psi0, double tau,
                                                     BlockSet& layout, int panels) const {
    const BlockSet layout0 = layout_rho0(psi0);
    layout = layout_rho1(layout0);
    const auto l1 = assemble_l1(layout0, layout);
    const Eigen::VectorXcd rho0_init = initial_rho0(psi0, layout0);

    auto free_propagate = [this](const BlockSet& set, const Eigen::VectorXcd& flat, double dt) {
        Eigen::VectorXcd out(flat.size());
        for (std::size_t s = 0; s < set.sectors.size(); ++s) {
            BlockDensity b{set.sectors[s], flat.segment(set.offsets[s], set.sectors[s].size())};
            out.segment(set.offsets[s], set.sectors[s].size()) =
                propagate_block(b, dt, big_j_).values;
        }
        return out;
    };

    Eigen::VectorXcd rho1 = Eigen::VectorXcd::Zero(layout.total);
    const double panel_width = tau / panels;
    for (int p = 0; p < panels; ++p) {
        const double left = p * panel_width;
        for (int g = 0; g < 8; ++g) {
            const double tp = left + 0.5 * panel_width * (gl_nodes[g] + 1.0);
            const double w = 0.5 * panel_width * gl_weights[g];
            const Eigen::VectorXcd kicked = l1 * free_propagate(layout0, rho0_init, tp);
            rho1 += w * free_propagate(layout, kicked, tau - tp);
        }
    }
    return rho1;
}

double PerturbationEngine::jz_first_top_quadrature(double tau, int panels) const {
    const Sector prob{jmax_, jmax_, HalfInt::whole(0)};
    const double jm = jmax_.value();
    const int dim = prob.size();
    SectorPropagatorCache cache(prob, big_j_);

    // populations from the fully excited start
    auto populations = [&](double t) { return cache.at(t).col(dim - 1).eval(); };

    double jz1 = 0.0;
    const double panel_width = tau / panels;
    for (int p = 0; p < panels; ++p) {
        const double left = p * panel_width;
        for (int g = 0; g < 8; ++g) {
            const double tp = left + 0.5 * panel_width * (gl_nodes[g] + 1.0);
            const double w = 0.5 * panel_width * gl_weights[g];
            const Eigen::VectorXd pop = populations(tp);
            Eigen::VectorXd kicked = Eigen::VectorXd::Zero(dim);
            for (int i = 0; i < dim; ++i) {
                const double n = -jm + i;
                double v = -(jm + jm * jm + n - n * n) * pop[i];
                if (i + 1 < dim) v += (jm + jm * jm - n - n * n) * pop[i + 1];
                kicked[i] = v;
            }
            const Eigen::VectorXd evolved = cache.at(tau - tp) * kicked;
            double jz = 0.0;
            for (int i = 0; i < dim; ++i) jz += (-jm + i) * evolved[i];
            jz1 += w * jz;
        }
    }
    const double prefactor = 2.0 * (2.0 * j1_.value() - jm) / (jm * (jm + 0.5));
    return prefactor * jz1;
}

} // namespace srlab
