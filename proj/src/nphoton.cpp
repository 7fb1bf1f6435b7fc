// nphoton.cpp: pair and single decays, permutation sums

#include "jcqed/nphoton.hpp"

#include "jcqed/boundstate.hpp"
#include "jcqed/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace jcqed {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_count(std::size_t n, int cap, const char* who) {
    if (n < 2) throw InvalidArgument(std::string(who) + ": need at least two photons");
    if (n > static_cast<std::size_t>(cap))
        throw ComplexityLimit(std::string(who) + ": at most " + std::to_string(cap) + " photons");
}

void require_separation(double x) {
    if (!(x >= 0)) throw InvalidArgument("auxiliary decays need a non-negative separation");
}

// Single-excitation poles away from the exclusion zone.
std::array<Complex, 2> single_poles(const SystemParams& params) {
    params.validate();
    const ExcitationSector s1 = build_sector(params, 1);
    if (s1.in_exclusion_zone())
        throw DegenerateSpectrum("single-excitation sector is at an exceptional point; use envelope_resonant");
    return {s1.e_plus, s1.e_minus};
}

Complex two_decay(const SpectralKernel& kernel, double k1, double k2, double x) {
    const auto& e = kernel.amplitudes().e1;
    const double total = k1 + k2;
    const Complex bp = kernel.g2_numerator(total - e[0], k1, total);
    const Complex bm = kernel.g2_numerator(total - e[1], k1, total);
    return (bp * std::exp(-kI * e[0] * x) - bm * std::exp(-kI * e[1] * x)) / (e[1] - e[0]);
}

Complex single_decay(const SystemParams& params, const std::array<Complex, 2>& e, double k, double x) {
    const Complex plus = single_photon_numerator(params, e[0]) * std::exp(-kI * e[0] * x) / (k - e[0]);
    const Complex minus = single_photon_numerator(params, e[1]) * std::exp(-kI * e[1] * x) / (k - e[1]);
    return (plus - minus) / (e[1] - e[0]);
}

// Calls term(order) for every ordering of coords consistent with descending
// values and returns the average; with distinct coordinates that is the one
// surviving ordering.
Complex permutation_sum(std::span<const double> coords, PermutationSum mode,
                        const std::function<Complex(const std::vector<double>&)>& term) {
    std::vector<double> ordered(coords.begin(), coords.end());
    if (mode == PermutationSum::ordered) {
        std::sort(ordered.begin(), ordered.end(), std::greater<>());
        return term(ordered);
    }
    std::vector<std::size_t> q(coords.size());
    std::iota(q.begin(), q.end(), std::size_t{0});
    Complex sum{};
    int surviving = 0;
    do {
        bool descending = true;
        for (std::size_t i = 0; i + 1 < q.size() && descending; ++i) descending = coords[q[i]] >= coords[q[i + 1]];
        if (!descending) continue;
        for (std::size_t i = 0; i < q.size(); ++i) ordered[i] = coords[q[i]];
        sum += term(ordered);
        ++surviving;
    } while (std::next_permutation(q.begin(), q.end()));
    return sum / static_cast<double>(surviving);
}

double factorial(std::size_t n) {
    double out = 1.0;
    for (std::size_t i = 2; i <= n; ++i) out *= static_cast<double>(i);
    return out;
}

} // namespace

double g_tau(const SystemParams& params, double tau) {
    const DampingRegime regime = resonant_regime(params);
    const double t = std::abs(tau);
    const double c = params.kappa / 4;
    const double g = params.g;
    switch (regime) {
    case DampingRegime::critical:
        return t * std::exp(-g * t);
    case DampingRegime::underdamped: {
        const double s = std::sqrt((g - c) * (g + c));
        return std::sin(s * t) / s * std::exp(-c * t);
    }
    case DampingRegime::overdamped: {
        const double s = std::sqrt((c - g) * (c + g));
        return (std::exp(-(c - s) * t) - std::exp(-(c + s) * t)) / (2.0 * s);
    }
    }
    return 0.0;
}

Complex aux_two_decay(const SystemParams& params, double k1, double k2, double x) {
    require_separation(x);
    single_poles(params);
    return two_decay(SpectralKernel(params), k1, k2, x);
}

Complex aux_single_decay(const SystemParams& params, double k_next, double x) {
    require_separation(x);
    return single_decay(params, single_poles(params), k_next, x);
}

NPhotonEnvelope envelope_resonant(const SystemParams& params, std::span<const double> coords, PermutationSum mode) {
    require_count(coords.size(), max_resonant_photons, "envelope_resonant");
    resonant_regime(params);

    NPhotonEnvelope env;
    env.n = static_cast<int>(coords.size());
    env.coordinates.assign(coords.begin(), coords.end());
    env.resonant = true;
    env.value = permutation_sum(coords, mode, [&](const std::vector<double>& x) {
        double v = f_tau(params, x[0] - x[1]);
        for (std::size_t j = 1; j + 1 < x.size(); ++j) v *= g_tau(params, x[j] - x[j + 1]);
        return Complex{v, 0.0};
    });
    return env;
}

NPhotonEnvelope envelope_general(const SystemParams& params, std::span<const double> k_list,
                                 std::span<const double> coords, PermutationSum mode) {
    require_count(coords.size(), max_general_photons, "envelope_general");
    if (k_list.size() != coords.size())
        throw InvalidArgument("envelope_general: one frequency per coordinate required");
    const std::array<Complex, 2> e = single_poles(params);
    const SpectralKernel kernel(params);
    const std::size_t n = coords.size();

    // Σ_R over frequency assignments is independent of the coordinate order.
    std::vector<std::vector<double>> assignments;
    std::vector<double> r(k_list.begin(), k_list.end());
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    do {
        for (std::size_t i = 0; i < n; ++i) r[i] = k_list[idx[i]];
        assignments.push_back(r);
    } while (std::next_permutation(idx.begin(), idx.end()));

    NPhotonEnvelope env;
    env.n = static_cast<int>(n);
    env.coordinates.assign(coords.begin(), coords.end());
    const Complex sum = permutation_sum(coords, mode, [&](const std::vector<double>& x) {
        Complex total{};
        for (const auto& k : assignments) {
            Complex term = two_decay(kernel, k[0], k[1], x[0] - x[1]) * std::exp(kI * (k[0] + k[1]) * x[0]);
            for (std::size_t j = 1; j + 1 < n; ++j)
                term *= single_decay(params, e, k[j + 1], x[j] - x[j + 1]) * std::exp(kI * k[j + 1] * x[j]);
            total += term;
        }
        return total;
    });
    const double dim = static_cast<double>(n);
    env.value = std::sqrt(factorial(n)) / std::pow(2.0 * std::numbers::pi, dim / 2) * sum;
    return env;
}

} // namespace jcqed
