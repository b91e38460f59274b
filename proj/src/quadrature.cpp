#include "probalab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace probalab::quad {
namespace {

constexpr int kMinDepth = 6;
// The substituted integrand is read at w = kEdge instead of the endpoint,
// where the density itself may be infinite.
constexpr double kEdge = 1e-7;

struct Context {
  const Integrand& f;
  const Options& opt;
  long evals = 0;
  bool converged = true;

  double eval(double x) {
    ++evals;
    const double y = f(x);
    return std::isfinite(y) ? y : 0.0;
  }
};

double simpson_step(Context& ctx, double a, double fa, double m, double fm, double b, double fb,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = ctx.eval(lm);
  const double frm = ctx.eval(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= kMinDepth && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= ctx.opt.max_depth || ctx.evals > ctx.opt.max_evals || m - a <= 0.0 || b - m <= 0.0) {
    ctx.converged = false;
    return left + right + delta / 15.0;
  }
  return simpson_step(ctx, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(ctx, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
}

double finite_range(Context& ctx, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = ctx.eval(a);
  const double fm = ctx.eval(m);
  const double fb = ctx.eval(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(ctx, a, fa, m, fm, b, fb, whole, tol, 0);
}

// [a, +inf) through x = a + scale * t / (1 - t).
double upper_tail(const Integrand& f, double a, const Options& opt, Context& outer) {
  const double scale = opt.scale;
  const Integrand mapped = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double s = 1.0 - t;
    return scale * f(a + scale * t / s) / (s * s);
  };
  Context ctx{mapped, opt};
  const double v = finite_range(ctx, 0.0, 1.0, opt.abs_tol);
  outer.evals += ctx.evals;
  outer.converged = outer.converged && ctx.converged;
  return v;
}

double lower_tail(const Integrand& f, double b, const Options& opt, Context& outer) {
  const Integrand mirrored = [&](double x) { return f(2.0 * b - x); };
  return upper_tail(mirrored, b, opt, outer);
}

}  // namespace

namespace {

// Integral over [e, e + dir h] through x = e + dir h w^m. The power m comes
// from the local exponent of f at the endpoint so that the w integrand
// vanishes linearly at w = 0 when f ~ (x - e)^p, p > -1.
Result endpoint_head(const Integrand& f, double e, double dir, double h, const Options& plain) {
  const double d1 = 1e-6 * h;
  const double f1 = std::abs(f(e + dir * d1));
  const double f2 = std::abs(f(e + dir * 2.0 * d1));
  double m = 2.0;
  if (std::isfinite(f1) && std::isfinite(f2) && f1 > 0.0 && f2 > 0.0) {
    const double p = std::log2(f2 / f1);
    m = p > -1.0 ? std::clamp(2.0 / (p + 1.0), 2.0, 16.0) : 16.0;
  }
  return integrate(
      [&](double w) {
        w = std::max(w, kEdge);
        const double wm = std::pow(w, m);
        return m * h * (wm / w) * f(e + dir * h * wm);
      },
      0.0, 1.0, plain);
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
  if (a > b) {
    Result r = integrate(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  if (opt.soften_endpoints && a < b) {
    Options plain = opt;
    plain.soften_endpoints = false;
    const bool lo_fin = std::isfinite(a);
    const bool hi_fin = std::isfinite(b);
    if (lo_fin || hi_fin) {
      double h = opt.scale;
      if (lo_fin && hi_fin) h = 0.5 * (b - a);
      Result total{0.0, true, 0};
      const auto add = [&](const Result& r) {
        total.value += r.value;
        total.evals += r.evals;
        total.converged = total.converged && r.converged;
      };
      if (lo_fin) add(endpoint_head(f, a, 1.0, h, plain));
      if (hi_fin) add(endpoint_head(f, b, -1.0, h, plain));
      const double inner_lo = lo_fin ? a + h : a;
      const double inner_hi = hi_fin ? b - h : b;
      if (inner_lo < inner_hi) add(integrate(f, inner_lo, inner_hi, plain));
      return total;
    }
  }
  Context ctx{f, opt};
  double value = 0.0;
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) {
    value = finite_range(ctx, a, b, opt.abs_tol);
  } else if (!lo_inf) {
    value = upper_tail(f, a, opt, ctx);
  } else if (!hi_inf) {
    value = lower_tail(f, b, opt, ctx);
  } else {
    Options half = opt;
    half.abs_tol = 0.5 * opt.abs_tol;
    value = lower_tail(f, opt.center, half, ctx) + upper_tail(f, opt.center, half, ctx);
  }
  return {value, ctx.converged, ctx.evals};
}

Result integrate_piecewise(const Integrand& f, double a, double b, std::span<const double> breaks,
                           const Options& opt) {
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b && std::isfinite(x)) cuts.push_back(x);
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(b);

  Options panel = opt;
  panel.abs_tol = opt.abs_tol / static_cast<double>(cuts.size() - 1);
  Result total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Result r = integrate(f, cuts[i], cuts[i + 1], panel);
    total.value += r.value;
    total.evals += r.evals;
    total.converged = total.converged && r.converged;
  }
  return total;
}

double simpson_panels(const Integrand& f, double a, double b, double max_width) {
  if (a == b) return 0.0;
  const auto panels = static_cast<long>(std::ceil(std::abs(b - a) / max_width));
  const double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (long i = 0; i < panels; ++i) {
    sum += 4.0 * f(a + (static_cast<double>(i) + 0.5) * h);
    if (i > 0) sum += 2.0 * f(a + static_cast<double>(i) * h);
  }
  return sum * h / 6.0;
}

double bisect_first_true(const std::function<bool(double)>& pred, double lo, double hi, double tol) {
  while (hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi)) * 0.5) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace probalab::quad
