// numerics.cpp: Gauss-Kronrod adaptive quadrature, PV pairing, exponential fits

#include "jcqed/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace jcqed {

namespace {

// QUADPACK 15-point Kronrod abscissae on [-1, 1] (positive half, center last)
// and the embedded 7-point Gauss weights for the odd Kronrod nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    const ComplexIntegrand* f{nullptr};
    double a{0.0};
    double b{0.0};
    Complex value{};
    double error{0.0};

    bool operator<(const Segment& other) const { return error < other.error; }
};

void apply_rule(Segment& s) {
    const double center = 0.5 * (s.a + s.b);
    const double half = 0.5 * (s.b - s.a);
    const ComplexIntegrand& f = *s.f;

    const Complex fc = f(center);
    Complex kronrod = fc * kWgk[7];
    Complex gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const Complex sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    s.value = kronrod * half;
    s.error = std::abs((kronrod - gauss) * half);
}

QuadResult integrate_segments(std::vector<Segment> initial, double rel_tol, double abs_tol, int max_subdivisions) {
    std::priority_queue<Segment> heap;
    Complex total{};
    double total_error = 0.0;
    for (auto& s : initial) {
        apply_rule(s);
        total += s.value;
        total_error += s.error;
        heap.push(s);
    }

    QuadResult result;
    int subdivisions = 0;
    auto tolerance = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };

    while (total_error > tolerance() && subdivisions < max_subdivisions && !heap.empty()) {
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval exhausted at double resolution; keep its estimate.
            heap.push(worst);
            break;
        }
        Segment left{worst.f, worst.a, mid};
        Segment right{worst.f, mid, worst.b};
        apply_rule(left);
        apply_rule(right);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum from the leaves so the running total carries no drift.
    total = {};
    total_error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_error += heap.top().error;
        heap.pop();
    }
    result.value = total;
    result.error_estimate = total_error;
    result.subdivisions = subdivisions;
    result.converged = total_error <= std::max(abs_tol, rel_tol * std::abs(total));
    return result;
}

void split_into(std::vector<Segment>& out, const ComplexIntegrand* f, double a, double b, int pieces) {
    if (!(b > a)) return;
    pieces = std::max(pieces, 1);
    const double h = (b - a) / pieces;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == pieces) ? b : a + (i + 1) * h;
        out.push_back({f, lo, hi});
    }
}

} // namespace

void QuadConfig::validate() const {
    if (!(half_width > 0) || !std::isfinite(half_width)) throw InvalidArgument("quadrature half_width must be positive");
    if (!(rel_tol > 0 && rel_tol < 1)) throw InvalidArgument("quadrature rel_tol must lie in (0, 1)");
    if (abs_tol < 0) throw InvalidArgument("quadrature abs_tol must be non-negative");
    if (max_subdivisions < 1) throw InvalidArgument("max_subdivisions must be positive");
    if (initial_segments < 1) throw InvalidArgument("initial_segments must be positive");
}

QuadResult integrate_interval(const ComplexIntegrand& f, double a, double b, double rel_tol, double abs_tol,
                              int max_subdivisions) {
    if (!(b > a)) throw InvalidArgument("integration interval must satisfy a < b");
    std::vector<Segment> segs;
    split_into(segs, &f, a, b, 1);
    return integrate_segments(std::move(segs), rel_tol, abs_tol, max_subdivisions);
}

QuadResult adaptive_integrate(const ComplexIntegrand& f, const QuadConfig& config) {
    config.validate();
    const double a = config.center - config.half_width;
    const double b = config.center + config.half_width;
    std::vector<Segment> segs;

    if (!config.pv_point || !(*config.pv_point > a && *config.pv_point < b)) {
        split_into(segs, &f, a, b, config.initial_segments);
        return integrate_segments(std::move(segs), config.rel_tol, config.abs_tol, config.max_subdivisions);
    }

    const double c = *config.pv_point;
    const double r = std::min(c - a, b - c);
    const ComplexIntegrand paired = [&f, c](double t) { return f(c + t) + f(c - t); };
    split_into(segs, &paired, 0.0, r, std::max(1, config.initial_segments / 2));
    split_into(segs, &f, a, c - r, std::max(1, config.initial_segments / 4));
    split_into(segs, &f, c + r, b, std::max(1, config.initial_segments / 4));
    return integrate_segments(std::move(segs), config.rel_tol, config.abs_tol, config.max_subdivisions);
}

ExpRateFit fit_exp_rate(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw InvalidArgument("fit_exp_rate: xs and ys differ in length");
    if (xs.size() < 8) throw InvalidArgument("fit_exp_rate: need at least 8 points");
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    std::vector<double> logy(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!(ys[i] > 0) || !std::isfinite(ys[i])) throw InvalidArgument("fit_exp_rate: ys must be positive and finite");
        logy[i] = std::log(ys[i]);
        mx += xs[i];
        my += logy[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (logy[i] - my);
        syy += (logy[i] - my) * (logy[i] - my);
    }
    if (!(sxx > 0)) throw InvalidArgument("fit_exp_rate: degenerate abscissae");

    const double slope = sxy / sxx;
    ExpRateFit fit;
    fit.rate = -slope;
    fit.intercept = my - slope * mx;
    const double ss_res = std::max(0.0, syy - slope * sxy);
    fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

std::vector<DecayMode> fit_decay_modes(std::span<const Complex> samples, double step, const ModeFitOptions& options) {
    const auto m = static_cast<Eigen::Index>(samples.size());
    if (m < 6) throw InsufficientData("fit_decay_modes: need at least 6 samples");
    if (!(step > 0)) throw InvalidArgument("fit_decay_modes: step must be positive");

    const Eigen::Index pencil = m / 2;
    const Eigen::Index rows = m - pencil;
    const Eigen::Index cols = pencil + 1;
    Eigen::MatrixXcd hankel(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) hankel(i, j) = samples[static_cast<std::size_t>(i + j)];

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(hankel, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (!(sv(0) > 0)) throw InsufficientData("fit_decay_modes: signal is identically zero");

    Eigen::Index order = 0;
    while (order < sv.size() && sv(order) > options.rank_tol * sv(0)) ++order;
    order = std::min<Eigen::Index>({order, options.max_order, cols - 1});

    const Eigen::MatrixXcd v = svd.matrixV().leftCols(order);
    const Eigen::MatrixXcd w1 = v.topRows(cols - 1).adjoint();
    const Eigen::MatrixXcd w2 = v.bottomRows(cols - 1).adjoint();
    const Eigen::MatrixXcd pencil_matrix = w2 * w1.completeOrthogonalDecomposition().pseudoInverse();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(pencil_matrix, false);
    const Eigen::VectorXcd poles = eig.eigenvalues();

    Eigen::MatrixXcd vandermonde(m, order);
    for (Eigen::Index k = 0; k < order; ++k) {
        Complex power{1.0, 0.0};
        for (Eigen::Index i = 0; i < m; ++i) {
            vandermonde(i, k) = power;
            power *= poles(k);
        }
    }
    Eigen::VectorXcd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) rhs(i) = samples[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd amplitudes = vandermonde.colPivHouseholderQr().solve(rhs);

    std::vector<DecayMode> modes;
    modes.reserve(static_cast<std::size_t>(order));
    for (Eigen::Index k = 0; k < order; ++k) {
        DecayMode mode;
        mode.pole = poles(k);
        mode.amplitude = amplitudes(k);
        const double modulus = std::abs(mode.pole);
        mode.rate = modulus > 0 ? -std::log(modulus) / step : std::numeric_limits<double>::infinity();
        mode.frequency = std::arg(mode.pole) / step;
        mode.weight = std::abs(mode.amplitude) * vandermonde.col(k).norm();
        modes.push_back(mode);
    }
    std::sort(modes.begin(), modes.end(), [](const DecayMode& x, const DecayMode& y) {
        if (x.rate != y.rate) return x.rate < y.rate;
        return x.frequency < y.frequency;
    });
    return modes;
}

double slowest_decay_rate(const std::vector<DecayMode>& modes, double significance) {
    if (modes.empty()) throw InsufficientData("slowest_decay_rate: no modes");
    double max_weight = 0.0;
    for (const auto& m : modes) max_weight = std::max(max_weight, m.weight);
    double slowest = std::numeric_limits<double>::infinity();
    for (const auto& m : modes)
        if (m.weight >= significance * max_weight) slowest = std::min(slowest, m.rate);
    return slowest;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
    if (count == 0) throw InvalidArgument("linspace: count must be positive");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double h = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * h;
    out.back() = stop;
    return out;
}

std::vector<double> range_grid(double start, double stop, double step) {
    if (!(step > 0) || !std::isfinite(step)) throw InvalidArgument("range step must be positive");
    if (!(stop >= start)) throw InvalidArgument("range stop must not precede start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
    return out;
}

} // namespace jcqed
