// core_model.hpp: Jaynes-Cummings effective Hamiltonian per excitation sector
//
// H_eff = (ω − iκ/2) a†a + Ω σ+σ- + g (a†σ- + σ+a) commutes with the excitation
// number a†a + σ+σ-, so each sector n ≥ 1 is a 2×2 non-Hermitian block in the
// ordered basis {|n, g⟩, |n−1, e⟩}. Everything here is header-only and
// templated on the real scalar so the same code runs in double and long double.
//
// Branch convention: E± = tr/2 ± sqrt(D) with the principal square root. A
// discriminant with vanishing imaginary part is normalized to +0i, so above an
// exceptional point "+" is the less damped root. Sweeps relabel branches by
// nearest-neighbour continuity instead (see sweep_spectrum).

#pragma once

#include "jcqed/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace jcqed {

using Complex = std::complex<double>;

template <typename Real>
using ComplexEnergy = std::complex<Real>;

inline constexpr double default_ep_tolerance = 1e-9;

// Spectral operations refuse sectors whose gap is below this multiple of the
// EP tolerance (times the sector scale).
inline constexpr double spectral_exclusion_factor = 100.0;

// Four real parameters of the local system. Frequencies and rates share one
// (arbitrary) unit; the waveguide group velocity is 1.
template <typename Real>
struct BasicSystemParams {
    Real omega{1};  // cavity frequency
    Real Omega{1};  // atomic transition frequency
    Real g{0};      // atom-cavity coupling, ≥ 0
    Real kappa{0};  // cavity-waveguide coupling, ≥ 0

    void validate() const {
        using std::isfinite;
        if (!isfinite(omega) || !isfinite(Omega) || !isfinite(g) || !isfinite(kappa))
            throw InvalidArgument("system parameters must be finite");
        if (g < 0) throw InvalidArgument("coupling g must be non-negative");
        if (kappa < 0) throw InvalidArgument("decay rate kappa must be non-negative");
    }

    // ω = Ω up to a relative 1e-12 (parsed and gridded values are not bit-exact).
    bool resonant() const {
        using std::abs;
        const Real scale = std::max({abs(omega), abs(Omega), std::numeric_limits<Real>::min()});
        return abs(omega - Omega) <= Real(1e-12) * scale;
    }
};

using SystemParams = BasicSystemParams<double>;

template <typename Real>
struct BasicExcitationSector {
    using Scalar = std::complex<Real>;
    using Matrix = Eigen::Matrix<Scalar, 2, 2>;

    int n{1};
    Matrix h_matrix{Matrix::Zero()};
    Scalar e_plus{};
    Scalar e_minus{};
    Matrix right_vecs{Matrix::Identity()};  // columns (plus, minus), unit Euclidean norm
    Matrix left_vecs{Matrix::Identity()};   // rows (plus, minus), left_i · right_j = δ_ij; NaN at an EP
    bool is_ep{false};
    Real ep_tolerance{Real(default_ep_tolerance)};
    Real scale{0};                          // max(|E+|, |E-|, κ)

    Scalar gap() const { return e_plus - e_minus; }

    Scalar energy(int branch) const { return branch == 0 ? e_plus : e_minus; }

    bool in_exclusion_zone(Real factor = Real(spectral_exclusion_factor)) const {
        return std::abs(gap()) < factor * ep_tolerance * scale;
    }
};

using ExcitationSector = BasicExcitationSector<double>;

namespace detail {

inline void require_sector_index(int n) {
    if (n < 1) throw InvalidArgument("excitation number n must be >= 1, got " + std::to_string(n));
}

template <typename Real>
std::complex<Real> normalize_signed_zero(std::complex<Real> z) {
    if (z.imag() == Real(0)) return {z.real(), Real(0)};
    return z;
}

} // namespace detail

// ((ω − iκ/2 − Ω)/2)² + n g², evaluated as the product
// (δ + i(√n g − κ/4)) (δ − i(√n g + κ/4)), δ = (ω − Ω)/2, which is exact at
// the resonant exceptional point κ = 4√n g.
template <typename Real>
std::complex<Real> sector_discriminant(const BasicSystemParams<Real>& p, int n) {
    detail::require_sector_index(n);
    using std::sqrt;
    const Real delta = (p.omega - p.Omega) / 2;
    const Real root_ng = sqrt(Real(n)) * p.g;
    const Real quarter_kappa = p.kappa / 4;
    const std::complex<Real> a{delta, root_ng - quarter_kappa};
    const std::complex<Real> b{delta, -(root_ng + quarter_kappa)};
    return detail::normalize_signed_zero(a * b);
}

template <typename Real>
typename BasicExcitationSector<Real>::Matrix sector_matrix(const BasicSystemParams<Real>& p, int n) {
    detail::require_sector_index(n);
    using Scalar = std::complex<Real>;
    const Scalar z{p.omega, -p.kappa / 2};
    const Scalar coupling{std::sqrt(Real(n)) * p.g, 0};
    typename BasicExcitationSector<Real>::Matrix h;
    h << Real(n) * z, coupling,
         coupling, Real(n - 1) * z + Scalar{p.Omega, 0};
    return h;
}

// Closed-form (E+, E-) with the isolated-evaluation branch convention.
template <typename Real>
std::pair<std::complex<Real>, std::complex<Real>> sector_eigenvalues(const BasicSystemParams<Real>& p, int n) {
    const std::complex<Real> z{p.omega, -p.kappa / 2};
    const std::complex<Real> center = (Real(2 * n - 1) * z + p.Omega) / Real(2);
    const std::complex<Real> root = std::sqrt(sector_discriminant(p, n));
    return {center + root, center - root};
}

// E+ − E- = 2 sqrt(D).
template <typename Real>
std::complex<Real> discriminant_gap(const BasicSystemParams<Real>& p, int n) {
    return Real(2) * std::sqrt(sector_discriminant(p, n));
}

namespace detail {

template <typename Real>
Eigen::Matrix<std::complex<Real>, 2, 1> right_eigenvector(const Eigen::Matrix<std::complex<Real>, 2, 2>& h,
                                                          std::complex<Real> e, int fallback_axis) {
    using Vec = Eigen::Matrix<std::complex<Real>, 2, 1>;
    Vec from_row0{h(0, 1), e - h(0, 0)};
    Vec from_row1{e - h(1, 1), h(1, 0)};
    Vec v = from_row0.norm() >= from_row1.norm() ? from_row0 : from_row1;
    const Real scale = std::max({h.norm(), std::abs(e), std::numeric_limits<Real>::min()});
    if (v.norm() <= std::numeric_limits<Real>::epsilon() * scale) {
        // h − e vanishes: every vector is an eigenvector.
        v = Vec::Unit(fallback_axis);
    }
    return v / v.norm();
}

} // namespace detail

template <typename Real>
BasicExcitationSector<Real> build_sector(const BasicSystemParams<Real>& p, int n,
                                         Real ep_tolerance = Real(default_ep_tolerance)) {
    p.validate();
    detail::require_sector_index(n);
    if (!(ep_tolerance > 0)) throw InvalidArgument("ep_tolerance must be positive");

    BasicExcitationSector<Real> s;
    s.n = n;
    s.ep_tolerance = ep_tolerance;
    s.h_matrix = sector_matrix(p, n);
    std::tie(s.e_plus, s.e_minus) = sector_eigenvalues(p, n);
    s.scale = std::max({std::abs(s.e_plus), std::abs(s.e_minus), p.kappa, std::numeric_limits<Real>::min()});
    s.is_ep = std::abs(s.gap()) < ep_tolerance * s.scale;

    s.right_vecs.col(0) = detail::right_eigenvector(s.h_matrix, s.e_plus, 0);
    s.right_vecs.col(1) = detail::right_eigenvector(s.h_matrix, s.e_minus, 1);
    if (s.is_ep) {
        s.left_vecs.setConstant(std::complex<Real>(std::numeric_limits<Real>::quiet_NaN(),
                                                    std::numeric_limits<Real>::quiet_NaN()));
    } else {
        s.left_vecs = s.right_vecs.inverse();
    }
    return s;
}

// κ at which sector n is defective: requires ω = Ω and g > 0.
template <typename Real>
Real exceptional_point_kappa(const BasicSystemParams<Real>& p, int n) {
    detail::require_sector_index(n);
    if (!p.resonant()) throw DomainError("EP requires resonance (omega == Omega)");
    if (!(p.g > 0)) throw DomainError("EP requires g > 0");
    return Real(4) * (std::sqrt(Real(n)) * p.g);
}

// ---------------------------------------------------------------- sweeps

template <typename Real>
struct BasicSpectrumRow {
    int n{1};
    Real omega{};
    Real kappa{};
    std::complex<Real> e_plus{};
    std::complex<Real> e_minus{};
};

using SpectrumRow = BasicSpectrumRow<double>;

namespace detail {

template <typename Real>
void require_grid(const std::vector<Real>& grid, const char* name) {
    if (grid.empty()) throw InvalidArgument(std::string(name) + " grid must be non-empty");
    if (grid.size() < 2) return;
    const bool ascending = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool ok = ascending ? grid[i] > grid[i - 1] : grid[i] < grid[i - 1];
        if (!ok) throw InvalidArgument(std::string(name) + " grid must be strictly monotone");
    }
}

// Greedy nearest-neighbour relabelling against the previous point.
template <typename Real>
void pair_with(std::complex<Real> prev_plus, std::complex<Real> prev_minus,
               std::complex<Real>& plus, std::complex<Real>& minus) {
    const Real keep = std::abs(plus - prev_plus) + std::abs(minus - prev_minus);
    const Real swap = std::abs(minus - prev_plus) + std::abs(plus - prev_minus);
    if (swap < keep) std::swap(plus, minus);
}

} // namespace detail

// Rows are ordered omega-major, then n, then kappa. Branches are continued
// along kappa; the first kappa point of each omega row is continued from the
// previous omega row.
template <typename Real>
std::vector<BasicSpectrumRow<Real>> sweep_spectrum(const BasicSystemParams<Real>& base,
                                                   const std::vector<int>& n_list,
                                                   const std::vector<Real>& omega_grid,
                                                   const std::vector<Real>& kappa_grid) {
    if (n_list.empty()) throw InvalidArgument("n list must be non-empty");
    for (int n : n_list) detail::require_sector_index(n);
    detail::require_grid(omega_grid, "omega");
    detail::require_grid(kappa_grid, "kappa");

    std::vector<BasicSpectrumRow<Real>> rows;
    rows.reserve(n_list.size() * omega_grid.size() * kappa_grid.size());
    std::vector<std::pair<std::complex<Real>, std::complex<Real>>> row_start(n_list.size());

    for (std::size_t io = 0; io < omega_grid.size(); ++io) {
        for (std::size_t in = 0; in < n_list.size(); ++in) {
            const int n = n_list[in];
            for (std::size_t ik = 0; ik < kappa_grid.size(); ++ik) {
                BasicSystemParams<Real> p = base;
                p.omega = omega_grid[io];
                p.kappa = kappa_grid[ik];
                p.validate();
                auto [plus, minus] = sector_eigenvalues(p, n);
                if (ik > 0) {
                    const auto& prev = rows.back();
                    detail::pair_with(prev.e_plus, prev.e_minus, plus, minus);
                } else if (io > 0) {
                    detail::pair_with(row_start[in].first, row_start[in].second, plus, minus);
                }
                if (ik == 0) row_start[in] = {plus, minus};
                rows.push_back({n, p.omega, p.kappa, plus, minus});
            }
        }
    }
    return rows;
}

template <typename Real>
std::vector<BasicSpectrumRow<Real>> sweep_spectrum(const BasicSystemParams<Real>& base,
                                                   const std::vector<int>& n_list,
                                                   const std::vector<Real>& kappa_grid) {
    return sweep_spectrum(base, n_list, std::vector<Real>{base.omega}, kappa_grid);
}

} // namespace jcqed
