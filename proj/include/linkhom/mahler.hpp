#pragma once

// Mahler measure: exp of the mean of log|f| over the unit torus.
//  - one variable: Jensen product |c_n| * prod max(|r_j|, 1) over the roots,
//    found by simultaneous (Durand-Kerner) iteration;
//  - several variables: plain averaging over half-step-offset uniform grids,
//    doubling the grid until two successive estimates agree;
//  - exponents on a single integer line reduce to the one-variable case by
//    a monomial change of basis, which leaves the measure unchanged.
// Roots within 1e-9 of the unit circle count exactly 1 in the product:
// integer polynomials at these degrees either have unit roots exactly or
// roots separated from the circle by far more than root-finder error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "linkhom/laurent.hpp"

namespace linkhom {

struct MahlerOptions {
    double tol = 5e-3;            // quadrature stop: successive log estimates
    std::uint64_t seed = 0x1b873593u;  // root-finder start perturbations
};

struct MahlerResult {
    double value = 1.0;
    double log_value = 0.0;
    std::string method;        // "roots" | "quadrature" | "line-reduction"
    double error_bound = 0.0;  // absolute, on log_value
    // diagnostics
    std::vector<int> grid_sizes;     // quadrature ladder actually used
    double max_root_residual = 0.0;  // roots path
    int sweeps = 0;                  // root-finder iterations
    long long discarded_points = 0;  // grid points with |f| below threshold
    bool tolerance_reached = true;
};

namespace detail {

// simultaneous root iteration on a monic polynomial given by ascending
// complex coefficients (size n+1, leading coefficient excluded)
struct RootSet {
    std::vector<Complex> roots;
    double max_residual = 0.0;
    double max_correction = 0.0;
    int sweeps = 0;
};

inline RootSet durand_kerner(const std::vector<Complex>& monic_coeffs,
                             std::uint64_t seed) {
    const int n = static_cast<int>(monic_coeffs.size());
    RootSet rs;
    if (n == 0) return rs;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    rs.roots.resize(n);
    for (int j = 0; j < n; ++j) {
        double radius = 1.0 + 0.08 * jitter(rng);
        double angle = 2.0 * M_PI * (j + 0.27) / n + 0.05 * jitter(rng) / n;
        rs.roots[j] = std::polar(radius, angle);
    }
    auto eval_monic = [&](Complex z) {
        Complex v(1.0, 0.0);
        for (int k = n - 1; k >= 0; --k) v = v * z + monic_coeffs[k];
        return v;
    };
    const int max_sweeps = 500;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_step = 0.0;
        for (int j = 0; j < n; ++j) {
            Complex denom(1.0, 0.0);
            for (int k = 0; k < n; ++k)
                if (k != j) denom *= rs.roots[j] - rs.roots[k];
            if (denom == Complex(0.0, 0.0)) {
                rs.roots[j] += Complex(1e-8, 1e-8);
                max_step = 1.0;
                continue;
            }
            Complex step = eval_monic(rs.roots[j]) / denom;
            rs.roots[j] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        rs.sweeps = sweep + 1;
        if (max_step < 1e-14) break;
    }
    rs.max_residual = 0.0;
    rs.max_correction = 0.0;
    for (int j = 0; j < n; ++j) {
        double scale = std::pow(std::max(1.0, std::abs(rs.roots[j])), n);
        double resid = std::abs(eval_monic(rs.roots[j])) / scale;
        rs.max_residual = std::max(rs.max_residual, resid);
        Complex denom(1.0, 0.0);
        for (int k = 0; k < n; ++k)
            if (k != j) denom *= rs.roots[j] - rs.roots[k];
        if (denom != Complex(0.0, 0.0))
            rs.max_correction = std::max(
                rs.max_correction,
                std::abs(eval_monic(rs.roots[j]) / denom));
    }
    return rs;
}

// fixed-order pairwise summation, reproducible regardless of threading
inline double pairwise_sum(std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += v[k];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace detail

inline MahlerResult mahler_univariate(const LaurentPoly& f,
                                      const MahlerOptions& opts = {}) {
    if (f.dim() != 1) throw DimensionMismatch("mahler_univariate needs d = 1");
    if (f.is_zero()) throw Error("Mahler measure of the zero polynomial");
    MahlerResult res;
    res.method = "roots";
    const LaurentPoly g = f.normalize();  // unit factors have measure 1
    const int deg = g.terms().rbegin()->first[0];
    std::vector<BigInt> coeffs(deg + 1, BigInt(0));
    for (const auto& [e, c] : g.terms()) coeffs[e[0]] = c;
    const double lead = std::abs(static_cast<double>(coeffs[deg]));
    if (deg == 0) {
        res.value = lead;
        res.log_value = std::log(lead);
        return res;
    }
    std::vector<Complex> monic(deg);
    for (int k = 0; k < deg; ++k)
        monic[k] = Complex(static_cast<double>(coeffs[k]) /
                               static_cast<double>(coeffs[deg]),
                           0.0);
    detail::RootSet rs = detail::durand_kerner(monic, opts.seed);
    res.sweeps = rs.sweeps;
    res.max_root_residual = rs.max_residual;
    if (rs.max_residual > 1e-13)
        throw ConvergenceError(
            "root iteration did not converge (max scaled residual " +
            std::to_string(rs.max_residual) + ")");
    double log_m = std::log(lead);
    double err = 1e-15 * deg;
    // clustered roots approximate a multiple root; the iteration resolves
    // the cluster center far better than the individual members, and the
    // contribution to log M is the cluster product, so charge diameter^2
    // (first order cancels) unless the cluster sits near the circle.
    std::vector<int> cluster(deg, -1);
    int nclusters = 0;
    for (int j = 0; j < deg; ++j) {
        if (cluster[j] >= 0) continue;
        cluster[j] = nclusters;
        for (int k = j + 1; k < deg; ++k)
            if (std::abs(rs.roots[j] - rs.roots[k]) < 1e-5)
                cluster[k] = nclusters;
        ++nclusters;
    }
    std::vector<double> diam(nclusters, 0.0);
    std::vector<int> csize(nclusters, 0);
    for (int j = 0; j < deg; ++j) {
        ++csize[cluster[j]];
        for (int k = j + 1; k < deg; ++k)
            if (cluster[j] == cluster[k])
                diam[cluster[j]] = std::max(
                    diam[cluster[j]], std::abs(rs.roots[j] - rs.roots[k]));
    }
    for (int j = 0; j < deg; ++j) {
        const Complex& r = rs.roots[j];
        double mod = std::abs(r);
        if (std::abs(mod - 1.0) < 1e-9) continue;  // snap to the circle
        int c = cluster[j];
        double cluster_err =
            csize[c] > 1
                ? (std::abs(mod - 1.0) < 1e-5 ? diam[c] : 20.0 * diam[c] * diam[c])
                : rs.max_correction / mod;
        if (mod > 1.0) {
            log_m += std::log(mod);
            err += cluster_err;
        }
    }
    res.log_value = log_m;
    res.value = std::exp(log_m);
    res.error_bound = err;
    return res;
}

inline MahlerResult mahler_multivariate(const LaurentPoly& f, double tol) {
    const int d = f.dim();
    if (d < 2) throw DimensionMismatch("mahler_multivariate needs d >= 2");
    if (f.is_zero()) throw Error("Mahler measure of the zero polynomial");
    if (tol <= 0) throw Error("tolerance must be positive");
    MahlerResult res;
    res.method = "quadrature";

    const auto& terms = f.terms();
    const std::size_t T = terms.size();
    std::vector<double> coeff(T);
    std::vector<ExponentVec> exps(T);
    {
        std::size_t idx = 0;
        for (const auto& [e, c] : terms) {
            exps[idx] = e;
            coeff[idx] = static_cast<double>(c);
            ++idx;
        }
    }

    double prev = 0.0;
    bool have_prev = false;
    const long long max_points = 150'000'000;
    for (int K : {64, 128, 256, 512, 1024, 2048}) {
        double points = std::pow(static_cast<double>(K), d);
        if (points > static_cast<double>(max_points)) break;
        const long long total = static_cast<long long>(points);
        // per-term phase tables per axis: exp(2*pi*i*(k+1/2)*e/K)
        std::vector<std::vector<Complex>> table(T);
        for (std::size_t t = 0; t < T; ++t) {
            table[t].resize(static_cast<std::size_t>(d) * K);
            for (int ax = 0; ax < d; ++ax)
                for (int k = 0; k < K; ++k)
                    table[t][static_cast<std::size_t>(ax) * K + k] =
                        std::polar(1.0, 2.0 * M_PI * (k + 0.5) *
                                            exps[t][ax] / K);
        }
        std::vector<double> partial;
        partial.reserve(static_cast<std::size_t>(total / K) + 1);
        std::vector<int> digit(d, 0);
        long long discarded = 0;
        for (long long outer = 0; outer < total / K; ++outer) {
            // decode the fixed leading d-1 digits
            long long rem = outer;
            for (int ax = d - 2; ax >= 0; --ax) {
                digit[ax] = static_cast<int>(rem % K);
                rem /= K;
            }
            std::vector<Complex> base(T);
            for (std::size_t t = 0; t < T; ++t) {
                Complex b(coeff[t], 0.0);
                for (int ax = 0; ax < d - 1; ++ax)
                    b *= table[t][static_cast<std::size_t>(ax) * K + digit[ax]];
                base[t] = b;
            }
            double row_sum = 0.0;
            const int last = d - 1;
            for (int k = 0; k < K; ++k) {
                Complex v(0.0, 0.0);
                for (std::size_t t = 0; t < T; ++t)
                    v += base[t] *
                         table[t][static_cast<std::size_t>(last) * K + k];
                double mag = std::abs(v);
                if (mag < 1e-300) {
                    ++discarded;
                    continue;
                }
                row_sum += std::log(mag);
            }
            partial.push_back(row_sum);
        }
        double est = detail::pairwise_sum(partial, 0, partial.size()) /
                     static_cast<double>(total - discarded);
        res.grid_sizes.push_back(K);
        res.discarded_points = discarded;
        if (have_prev) {
            double diff = std::abs(est - prev);
            res.error_bound = diff;
            if (diff < tol) {
                res.log_value = est;
                res.value = std::exp(est);
                return res;
            }
        }
        prev = est;
        have_prev = true;
    }
    res.log_value = prev;
    res.value = std::exp(prev);
    res.tolerance_reached = false;
    return res;
}

namespace detail {

// When every exponent vector lies on one integer line e0 + k*v (v primitive),
// f is u^{e0} * g(u^v); report g as a one-variable polynomial.
inline bool line_reduce(const LaurentPoly& f, LaurentPoly& out) {
    const auto& terms = f.terms();
    if (terms.size() <= 1) {
        out = LaurentPoly::constant(1, terms.empty() ? BigInt(0)
                                                     : terms.begin()->second);
        return true;
    }
    const int d = f.dim();
    const ExponentVec& e0 = terms.begin()->first;
    ExponentVec v(d, 0);
    bool have_dir = false;
    for (const auto& [e, c] : terms) {
        ExponentVec diff(d);
        bool zero = true;
        for (int k = 0; k < d; ++k) {
            diff[k] = e[k] - e0[k];
            if (diff[k] != 0) zero = false;
        }
        if (zero) continue;
        if (!have_dir) {
            int g = 0;
            for (int k = 0; k < d; ++k) g = std::gcd(g, std::abs(diff[k]));
            for (int k = 0; k < d; ++k) v[k] = diff[k] / g;
            have_dir = true;
        }
    }
    if (!have_dir) return false;
    LaurentPoly g1(1);
    for (const auto& [e, c] : terms) {
        // solve e - e0 == k*v for integer k
        int k_val = 0;
        bool found = false;
        for (int k = 0; k < d; ++k)
            if (v[k] != 0) {
                if ((e[k] - e0[k]) % v[k] != 0) return false;
                k_val = (e[k] - e0[k]) / v[k];
                found = true;
                break;
            }
        if (!found) return false;
        for (int k = 0; k < d; ++k)
            if (e[k] - e0[k] != k_val * v[k]) return false;
        g1 += LaurentPoly::monomial(1, {k_val}, c);
    }
    out = g1;
    return true;
}

}  // namespace detail

inline MahlerResult mahler(const LaurentPoly& f, const MahlerOptions& opts = {}) {
    if (f.is_zero()) throw Error("Mahler measure of the zero polynomial");
    if (f.dim() == 1) return mahler_univariate(f, opts);
    LaurentPoly reduced(1);
    if (detail::line_reduce(f, reduced)) {
        MahlerResult r = mahler_univariate(reduced, opts);
        r.method = "line-reduction";
        return r;
    }
    return mahler_multivariate(f, opts.tol);
}

}  // namespace linkhom
