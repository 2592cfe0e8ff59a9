#pragma once

// Foundation numerics: adaptive quadrature, safeguarded root finding,
// Nelder-Mead minimization, finite-difference Hessians and seedable
// random streams. Everything here is deterministic given its inputs.

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace frullani::num {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Thrown when subdivision runs out; carries the best estimate so far.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, QuadratureResult best)
        : std::runtime_error(msg), best_estimate(best) {}
    QuadratureResult best_estimate;
};

// Adaptive Gauss-Kronrod (G7/K15) panel subdivision. `hi` may be +inf,
// in which case the tail is mapped onto a finite interval by
// x = lo + t/(1-t). Integrable endpoint singularities are handled by
// subdivision toward the endpoint.
QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, double tol = 1e-10,
                           int max_panels = 4000);

// Safeguarded Newton/secant on a bracketing interval. The returned root
// never leaves [lo, hi]; a bisection step replaces any proposal that
// would.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12, int max_iter = 200);

struct OptimResult {
    std::vector<double> argmin;
    double min_value = 0.0;
    bool converged = false;
    long iterations = 0;
};

// Derivative-free Nelder-Mead with one mandatory perturbed restart from
// the first converged point, so a start at an interior stationary point
// can still escape.
OptimResult minimize(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, double tol = 1e-8,
                     long max_iter = 20000);

// Central-difference Hessian, symmetric by construction. Throws
// std::runtime_error naming the coordinate if f is non-finite at a
// probe point.
std::vector<std::vector<double>>
fd_hessian(const std::function<double(const std::vector<double>&)>& f,
           const std::vector<double>& x, double h = 1e-4);

// Symmetric positive-definite solve / inverse for small matrices
// (observed-information covariances). Throws on non-SPD input.
std::vector<std::vector<double>>
invert_spd(const std::vector<std::vector<double>>& a);

// Counting PRNG wrapper: identical seed => identical sequence. Normal
// draws are built from the uniform stream (Box-Muller, no caching) so
// the position counter stays meaningful.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), state_(seed) {
        // splitmix-style scramble so nearby seeds decorrelate
        state_ = scramble(state_);
    }

    double uniform();                 // [0, 1)
    double normal();                  // N(0,1), consumes two uniforms
    std::uint64_t seed() const { return seed_; }
    std::uint64_t position() const { return position_; }

  private:
    static std::uint64_t scramble(std::uint64_t z);
    std::uint64_t next_bits();

    std::uint64_t seed_;
    std::uint64_t state_;
    std::uint64_t position_ = 0;
};

struct McMoment {
    double estimate = 0.0;
    double std_error = 0.0;
};

// Sample mean of k-th powers with its standard error.
McMoment mc_moment(const std::function<double()>& sampler, int k, long n);

}  // namespace frullani::num
