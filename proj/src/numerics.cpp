#include "frullani/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace frullani::num {

namespace {

// QUADPACK G7/K15 nodes and weights (positive half).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kKronrodNodes[i];
        double fv = (i == 7) ? f(c) : f(c - dx) + f(c + dx);
        if (!std::isfinite(fv)) fv = 0.0;  // integrable endpoint spikes
        kron += kKronrodWeights[i] * fv;
        // the embedded G7 rule lives on the odd Kronrod nodes (the
        // centre node, index 7, is one of them)
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fv;
    }
    kron *= h;
    gauss *= h;
    double err = std::pow(200.0 * std::abs(kron - gauss), 1.5);
    err = std::min(err, std::abs(kron - gauss) * 200.0);
    return Panel{lo, hi, kron, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, double tol, int max_panels) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be > 0");
    if (std::isinf(lo) && std::isinf(hi)) {
        auto left = integrate([&f](double x) { return f(-x); }, 0.0, kInf, tol,
                              max_panels);
        auto right = integrate(f, 0.0, kInf, tol, max_panels);
        return {left.value + right.value,
                left.error_estimate + right.error_estimate,
                left.evaluations + right.evaluations};
    }
    if (std::isinf(lo)) {
        auto res = integrate([&f](double x) { return f(-x); }, -hi, kInf, tol,
                             max_panels);
        return res;
    }
    if (std::isinf(hi)) {
        // x = lo + t/(1-t), dx = dt/(1-t)^2 maps (lo, inf) to (0, 1)
        auto g = [&f, lo](double t) {
            const double om = 1.0 - t;
            return f(lo + t / om) / (om * om);
        };
        return integrate(g, 0.0, 1.0, tol, max_panels);
    }
    if (lo == hi) return {0.0, 0.0, 1};

    long evals = 15;
    std::priority_queue<Panel> panels;
    panels.push(gk15(f, lo, hi));
    double total = panels.top().value;
    double total_err = panels.top().error;
    int n_panels = 1;
    while (total_err > tol * std::max(1.0, std::abs(total)) &&
           n_panels < max_panels) {
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            panels.push(worst);  // interval below double resolution
            break;
        }
        Panel left = gk15(f, worst.lo, mid);
        Panel right = gk15(f, mid, worst.hi);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        n_panels += 1;
    }
    QuadratureResult res{total, std::max(total_err, 0.0), evals};
    if (n_panels >= max_panels &&
        total_err > 100.0 * tol * std::max(1.0, std::abs(total))) {
        throw QuadratureError("integrate: subdivision limit reached", res);
    }
    return res;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol, int max_iter) {
    if (lo > hi) std::swap(lo, hi);
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw std::invalid_argument("find_root: bracket does not straddle a root");
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 0; it < max_iter; ++it) {
        if (hi - lo <= tol) break;
        // secant/Newton proposal from the current point
        const double h = std::max(1e-7 * (hi - lo), 1e-12);
        const double deriv = (f(x + h) - f(x - h)) / (2.0 * h);
        double next;
        if (deriv != 0.0 && std::isfinite(deriv)) {
            next = x - fx / deriv;
        } else {
            next = 0.5 * (lo + hi);
        }
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double fn = f(next);
        if (fn == 0.0) return next;
        if (flo * fn < 0.0) {
            hi = next;
            fhi = fn;
        } else {
            lo = next;
            flo = fn;
        }
        x = next;
        fx = fn;
        if (std::abs(fx) < 1e-300) break;
    }
    return std::clamp(x, lo, hi);
}

namespace {

struct Simplex {
    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
};

double diameter(const Simplex& s) {
    double d = 0.0;
    for (std::size_t i = 1; i < s.pts.size(); ++i)
        for (std::size_t j = 0; j < s.pts[0].size(); ++j)
            d = std::max(d, std::abs(s.pts[i][j] - s.pts[0][j]));
    return d;
}

OptimResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                        std::vector<double> x0, double tol, long max_iter,
                        double step) {
    const std::size_t n = x0.size();
    Simplex s;
    s.pts.push_back(x0);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = x0;
        p[i] += (p[i] != 0.0 ? step * std::abs(p[i]) : step);
        s.pts.push_back(p);
    }
    s.vals.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) s.vals[i] = f(s.pts[i]);

    long iter = 0;
    auto order = [&s, n]() {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&s](std::size_t a, std::size_t b) { return s.vals[a] < s.vals[b]; });
        Simplex t;
        for (auto i : idx) {
            t.pts.push_back(s.pts[i]);
            t.vals.push_back(s.vals[i]);
        }
        s = std::move(t);
    };
    order();
    bool converged = false;
    while (iter < max_iter) {
        ++iter;
        if (diameter(s) <= tol &&
            std::abs(s.vals[n] - s.vals[0]) <= tol * (1.0 + std::abs(s.vals[0]))) {
            converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += s.pts[i][j] / n;

        auto blend = [&centroid, &s, n](double coef) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coef * (s.pts[n][j] - centroid[j]);
            return p;
        };
        auto refl = blend(-1.0);
        double frefl = f(refl);
        if (frefl < s.vals[0]) {
            auto exp_pt = blend(-2.0);
            double fexp = f(exp_pt);
            if (fexp < frefl) {
                s.pts[n] = exp_pt;
                s.vals[n] = fexp;
            } else {
                s.pts[n] = refl;
                s.vals[n] = frefl;
            }
        } else if (frefl < s.vals[n - 1]) {
            s.pts[n] = refl;
            s.vals[n] = frefl;
        } else {
            auto contr = blend(frefl < s.vals[n] ? -0.5 : 0.5);
            double fcontr = f(contr);
            if (fcontr < std::min(frefl, s.vals[n])) {
                s.pts[n] = contr;
                s.vals[n] = fcontr;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        s.pts[i][j] = s.pts[0][j] + 0.5 * (s.pts[i][j] - s.pts[0][j]);
                    s.vals[i] = f(s.pts[i]);
                }
            }
        }
        order();
    }
    return OptimResult{s.pts[0], s.vals[0], converged, iter};
}

}  // namespace

OptimResult minimize(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, double tol, long max_iter) {
    OptimResult first = nelder_mead(f, x0, tol, max_iter, 0.1);
    // mandatory perturbed restart: a start at a stationary point must
    // not be able to pin the simplex there
    std::vector<double> shifted = first.argmin;
    for (std::size_t i = 0; i < shifted.size(); ++i)
        shifted[i] += 0.05 * (1.0 + std::abs(shifted[i])) * ((i % 2 == 0) ? 1.0 : -1.0);
    OptimResult second = nelder_mead(f, shifted, tol, max_iter, 0.05);
    OptimResult& best = (second.min_value < first.min_value) ? second : first;
    best.iterations = first.iterations + second.iterations;
    best.converged = first.converged && second.converged;
    if (best.min_value > f(x0)) {  // contract: never worse than the start
        best.argmin = x0;
        best.min_value = f(x0);
    }
    return best;
}

std::vector<std::vector<double>>
fd_hessian(const std::function<double(const std::vector<double>&)>& f,
           const std::vector<double>& x, double h) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> hess(n, std::vector<double>(n, 0.0));
    auto eval = [&f](const std::vector<double>& p, std::size_t i) {
        double v = f(p);
        if (!std::isfinite(v))
            throw std::runtime_error("fd_hessian: non-finite value perturbing coordinate " +
                                     std::to_string(i));
        return v;
    };
    const double f0 = eval(x, 0);
    std::vector<double> hi(n);
    for (std::size_t i = 0; i < n; ++i) hi[i] = h * std::max(1.0, std::abs(x[i]));
    for (std::size_t i = 0; i < n; ++i) {
        auto p = x;
        p[i] = x[i] + hi[i];
        const double fp = eval(p, i);
        p[i] = x[i] - hi[i];
        const double fm = eval(p, i);
        hess[i][i] = (fp - 2.0 * f0 + fm) / (hi[i] * hi[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            auto q = x;
            q[i] = x[i] + hi[i];
            q[j] = x[j] + hi[j];
            const double fpp = eval(q, j);
            q[j] = x[j] - hi[j];
            const double fpm = eval(q, j);
            q[i] = x[i] - hi[i];
            const double fmm = eval(q, j);
            q[j] = x[j] + hi[j];
            const double fmp = eval(q, j);
            hess[i][j] = hess[j][i] =
                (fpp - fpm - fmp + fmm) / (4.0 * hi[i] * hi[j]);
        }
    }
    return hess;
}

std::vector<std::vector<double>>
invert_spd(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    // Cholesky a = L L^T
    std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0.0)
                    throw std::runtime_error("invert_spd: matrix not positive definite");
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    // invert by solving L L^T X = I column by column
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (std::size_t k = 0; k < i; ++k) s -= l[i][k] * y[k];
            y[i] = s / l[i][i];
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t k = ii + 1; k < n; ++k) s -= l[k][ii] * inv[k][col];
            inv[ii][col] = s / l[ii][ii];
        }
    }
    return inv;
}

std::uint64_t RandomStream::scramble(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t RandomStream::next_bits() {
    // splitmix64: counter-based, so position maps 1:1 onto output
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double RandomStream::uniform() {
    ++position_;
    return (next_bits() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

McMoment mc_moment(const std::function<double()>& sampler, int k, long n) {
    if (n < 2) throw std::invalid_argument("mc_moment: n must be >= 2");
    double mean = 0.0, m2 = 0.0;
    for (long i = 1; i <= n; ++i) {
        double v = sampler();
        double p = 1.0;
        for (int j = 0; j < k; ++j) p *= v;
        const double d = p - mean;
        mean += d / static_cast<double>(i);
        m2 += d * (p - mean);
    }
    const double var = m2 / static_cast<double>(n - 1);
    return McMoment{mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace frullani::num
