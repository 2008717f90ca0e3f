#include "emtime/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "emtime/error.hpp"

namespace emtime {

namespace {

struct Panel {
    double a, m, b;
    double fa, fm, fb;
    double whole;
};

class Simpson {
public:
    Simpson(const std::function<double(double)>& f, const SimpsonOptions& options) : f_(f), opt_(options) {}

    double eval(double x) {
        const double y = f_(x);
        ++evaluations_;
        if (!std::isfinite(y)) {
            throw QuadratureError("adaptive_simpson: integrand is not finite at x=" + std::to_string(x));
        }
        return y;
    }

    void integrate(const Panel& p, double tol, int depth) {
        const double lm = 0.5 * (p.a + p.m);
        const double rm = 0.5 * (p.m + p.b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = (p.m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
        const double right = (p.b - p.m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
        const double delta = left + right - p.whole;

        const bool converged = depth >= opt_.min_depth && std::abs(delta) <= 15.0 * tol;
        // Stop splitting when the midpoint no longer separates the endpoints.
        const bool exhausted = depth >= opt_.max_depth || !(p.a < lm && lm < p.m && p.m < rm && rm < p.b);
        if (converged || exhausted) {
            if (!converged) hit_limit_ = true;
            value_ += left + right + delta / 15.0;
            error_ += std::abs(delta) / 15.0;
            magnitude_ += std::abs(left) + std::abs(right);
            return;
        }
        integrate({p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1);
        integrate({p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1);
    }

    QuadratureResult run(double a, double b) {
        const double m = 0.5 * (a + b);
        const double fa = eval(a), fm = eval(m), fb = eval(b);
        integrate({a, m, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)}, opt_.tol, 0);
        const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * magnitude_;
        return {value_, error_ + rounding, evaluations_};
    }

    bool hit_limit() const noexcept { return hit_limit_; }

private:
    const std::function<double(double)>& f_;
    SimpsonOptions opt_;
    double value_ = 0.0;
    double error_ = 0.0;
    double magnitude_ = 0.0;
    long evaluations_ = 0;
    bool hit_limit_ = false;
};

} // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const SimpsonOptions& options) {
    if (!(options.tol > 0.0)) throw InvalidArgument("adaptive_simpson: tolerance must be positive");
    if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("adaptive_simpson: infinite bounds");
    if (a == b) return {0.0, 0.0, 0};
    if (b < a) {
        QuadratureResult r = adaptive_simpson(f, b, a, options);
        r.value = -r.value;
        return r;
    }
    Simpson simpson(f, options);
    QuadratureResult result = simpson.run(a, b);
    if (simpson.hit_limit() && result.error_estimate > options.tol) {
        throw QuadratureError("adaptive_simpson: error estimate " + std::to_string(result.error_estimate) +
                              " exceeds tolerance " + std::to_string(options.tol) + " at maximum depth");
    }
    return result;
}

} // namespace emtime
